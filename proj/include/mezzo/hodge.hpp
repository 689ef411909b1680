#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "mezzo/cochain_complex.hpp"
#include "mezzo/errors.hpp"
#include "mezzo/simplicial.hpp"

namespace mezzo::hodge {

enum class InnerProductKind { identity, diagonal_weights, custom };

inline const char* to_string(InnerProductKind k) {
  switch (k) {
    case InnerProductKind::identity: return "identity";
    case InnerProductKind::diagonal_weights: return "diagonal-weights";
    case InnerProductKind::custom: return "custom";
  }
  return "unknown";
}

/// One symmetric positive-definite Gram matrix per cochain degree.
class InnerProductFamily {
 public:
  static InnerProductFamily identity(const std::vector<std::size_t>& dims) {
    InnerProductFamily ip;
    ip.kind_ = InnerProductKind::identity;
    for (auto n : dims) ip.gram_.push_back(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
    return ip;
  }

  static InnerProductFamily diagonal(const std::vector<std::vector<double>>& weights) {
    InnerProductFamily ip;
    ip.kind_ = InnerProductKind::diagonal_weights;
    for (std::size_t k = 0; k < weights.size(); ++k) {
      Eigen::VectorXd w(static_cast<Eigen::Index>(weights[k].size()));
      for (std::size_t i = 0; i < weights[k].size(); ++i) {
        if (!(weights[k][i] > 0.0) || !std::isfinite(weights[k][i]))
          throw Error(ErrorKind::metric, "weight " + std::to_string(i) + " in degree " + std::to_string(k) +
                                             " is not positive");
        w(static_cast<Eigen::Index>(i)) = weights[k][i];
      }
      ip.gram_.push_back(w.asDiagonal());
    }
    return ip;
  }

  static InnerProductFamily custom(std::vector<Eigen::MatrixXd> grams) {
    InnerProductFamily ip;
    ip.kind_ = InnerProductKind::custom;
    for (std::size_t k = 0; k < grams.size(); ++k) {
      const auto& m = grams[k];
      if (m.rows() != m.cols()) throw Error(ErrorKind::metric, "Gram matrix in degree " + std::to_string(k) + " is not square");
      const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
      if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw Error(ErrorKind::metric, "Gram matrix in degree " + std::to_string(k) + " is not symmetric");
      if (m.rows() > 0 && Eigen::LLT<Eigen::MatrixXd>(m).info() != Eigen::Success)
        throw Error(ErrorKind::metric, "Gram matrix in degree " + std::to_string(k) + " is not positive definite");
    }
    ip.gram_ = std::move(grams);
    return ip;
  }

  InnerProductKind kind() const noexcept { return kind_; }
  std::size_t degrees() const noexcept { return gram_.size(); }

  const Eigen::MatrixXd& at(std::size_t k) const {
    if (k >= gram_.size()) throw Error(ErrorKind::range, "inner product has no degree " + std::to_string(k));
    return gram_[k];
  }

  /// Every degree multiplied by the same factor.
  InnerProductFamily scaled(double factor) const {
    if (!(factor > 0)) throw Error(ErrorKind::metric, "scale factor must be positive");
    InnerProductFamily ip = *this;
    for (auto& g : ip.gram_) g *= factor;
    return ip;
  }

  /// Combinatorial counterpart of scaling the link metric g -> c² g on an
  /// n-dimensional link: degree k picks up c^(n-2k), so every Laplacian is
  /// divided by c².
  InnerProductFamily metric_rescaled(double c, std::size_t top_degree) const {
    if (!(c > 0)) throw Error(ErrorKind::metric, "metric scale must be positive");
    InnerProductFamily ip = *this;
    for (std::size_t k = 0; k < ip.gram_.size(); ++k)
      ip.gram_[k] *= std::pow(c, static_cast<double>(top_degree) - 2.0 * static_cast<double>(k));
    return ip;
  }

  void check_against(const CochainComplex& complex) const {
    if (gram_.size() != complex.length())
      throw Error(ErrorKind::metric, "inner product covers " + std::to_string(gram_.size()) + " degrees, complex has " +
                                         std::to_string(complex.length()));
    for (std::size_t k = 0; k < gram_.size(); ++k)
      if (static_cast<std::size_t>(gram_[k].rows()) != complex.dims[k])
        throw Error(ErrorKind::metric, "inner product size mismatch in degree " + std::to_string(k));
  }

 private:
  InnerProductKind kind_ = InnerProductKind::identity;
  std::vector<Eigen::MatrixXd> gram_;
};

inline InnerProductFamily identity_for(const CochainComplex& c) { return InnerProductFamily::identity(c.dims); }

namespace detail {

inline Eigen::MatrixXd to_eigen(const QMatrix& m, Eigen::Index rows, Eigen::Index cols) {
  if (m.rows() == 0 || m.cols() == 0) return Eigen::MatrixXd::Zero(rows, cols);
  return m.to_eigen();
}

inline Eigen::MatrixXd coboundary(const CochainComplex& c, std::size_t k) {
  const auto n = static_cast<Eigen::Index>(c.dims[k]);
  const auto m = static_cast<Eigen::Index>(k + 1 < c.length() ? c.dims[k + 1] : 0);
  return to_eigen(c.coboundary(k), m, n);
}

struct SqrtPair {
  Eigen::MatrixXd root;
  Eigen::MatrixXd inverse_root;
};

inline SqrtPair sqrt_pair(const Eigen::MatrixXd& gram) {
  if (gram.rows() == 0) return {gram, gram};
  if (gram.isDiagonal()) {
    Eigen::VectorXd d = gram.diagonal().cwiseSqrt();
    return {d.asDiagonal(), d.cwiseInverse().asDiagonal()};
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  return {es.operatorSqrt(), es.operatorInverseSqrt()};
}

/// M-orthogonal projection onto span(A) for full-column-rank A.
inline Eigen::VectorXd project(const Eigen::MatrixXd& a, const Eigen::MatrixXd& gram, const Eigen::VectorXd& u) {
  if (a.cols() == 0) return Eigen::VectorXd::Zero(u.size());
  Eigen::MatrixXd normal = a.transpose() * gram * a;
  return a * normal.ldlt().solve(a.transpose() * gram * u);
}

}  // namespace detail

/// Δ_k = d_{k-1} d*_{k-1} + d*_k d_k with d*_k = M_k⁻¹ d_kᵀ M_{k+1}.
inline Eigen::MatrixXd laplacian(const CochainComplex& complex, const InnerProductFamily& ip, std::size_t k) {
  if (k >= complex.length()) throw Error(ErrorKind::range, "degree " + std::to_string(k) + " out of range");
  ip.check_against(complex);
  const auto n = static_cast<Eigen::Index>(complex.dims[k]);
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  const Eigen::MatrixXd& mk = ip.at(k);
  Eigen::LDLT<Eigen::MatrixXd> mk_inv(mk);
  if (k > 0) {
    Eigen::MatrixXd down = detail::coboundary(complex, k - 1);
    Eigen::MatrixXd adj = Eigen::LDLT<Eigen::MatrixXd>(ip.at(k - 1)).solve(down.transpose() * mk);
    lap += down * adj;
  }
  if (k + 1 < complex.length()) {
    Eigen::MatrixXd up = detail::coboundary(complex, k);
    if (n > 0) lap += mk_inv.solve(up.transpose() * ip.at(k + 1) * up);
  }
  return lap;
}

inline Eigen::MatrixXd laplacian(const SimplicialComplex& k_complex, const InnerProductFamily& ip, std::size_t k) {
  require_degree(k_complex, k);
  return laplacian(cochain_complex(k_complex), ip, k);
}

/// Eigenvalues of Δ_k for one degree, ascending.
struct SpectrumRow {
  std::size_t degree = 0;
  std::vector<double> eigenvalues;
  std::size_t zero_count = 0;   // eigenvalues with |μ| <= threshold·λ_max
  std::size_t betti = 0;        // exact kernel dimension
};

struct SpectrumTable {
  std::vector<SpectrumRow> rows;
  double zero_threshold = 1e-8;
};

struct Eigensystem {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;  // columns M-orthonormal in original coordinates
  std::size_t zero_count = 0;
};

/// Spectral decomposition of the M-symmetrized Laplacian M^{1/2} Δ M^{-1/2}.
inline Eigensystem eigensystem(const CochainComplex& complex, const InnerProductFamily& ip, std::size_t k,
                               double zero_threshold = 1e-8) {
  Eigen::MatrixXd lap = laplacian(complex, ip, k);
  Eigensystem out;
  if (lap.rows() == 0) {
    out.values = Eigen::VectorXd(0);
    out.vectors = Eigen::MatrixXd(0, 0);
    return out;
  }
  auto roots = detail::sqrt_pair(ip.at(k));
  Eigen::MatrixXd sym = roots.root * lap * roots.inverse_root;
  sym = 0.5 * (sym + sym.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  if (es.info() != Eigen::Success) {
    double residual = (sym * es.eigenvectors() - es.eigenvectors() * es.eigenvalues().asDiagonal()).norm();
    throw Error(ErrorKind::numeric, "eigensolver did not converge in degree " + std::to_string(k) +
                                        " (residual " + std::to_string(residual) + ")");
  }
  out.values = es.eigenvalues();
  out.vectors = roots.inverse_root * es.eigenvectors();
  const double lambda_max = std::max(0.0, out.values.maxCoeff());
  for (Eigen::Index i = 0; i < out.values.size(); ++i)
    if (std::abs(out.values(i)) <= zero_threshold * lambda_max) ++out.zero_count;
  return out;
}

/// Numerical kernel dimension of Δ_k in every degree (no exact cross-check).
inline std::vector<std::size_t> harmonic_dims(const CochainComplex& complex, const InnerProductFamily& ip,
                                              double zero_threshold = 1e-8) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < complex.length(); ++k) out.push_back(eigensystem(complex, ip, k, zero_threshold).zero_count);
  return out;
}

/// Spectrum of one degree. The numerical kernel must match the exact Betti
/// number; a disagreement is a numeric error rather than a silent miscount.
inline SpectrumRow spectrum(const CochainComplex& complex, const InnerProductFamily& ip, std::size_t k,
                            double zero_threshold = 1e-8) {
  Eigensystem es = eigensystem(complex, ip, k, zero_threshold);
  SpectrumRow row;
  row.degree = k;
  row.eigenvalues.assign(es.values.data(), es.values.data() + es.values.size());
  row.zero_count = es.zero_count;
  row.betti = cohomology_dims(complex)[k];
  if (row.zero_count != row.betti)
    throw Error(ErrorKind::numeric, "numerical kernel of the degree-" + std::to_string(k) + " Laplacian has dimension " +
                                        std::to_string(row.zero_count) + " but the Betti number is " +
                                        std::to_string(row.betti));
  // numerical zeros are reported as exact zeros
  for (std::size_t i = 0; i < row.zero_count; ++i) row.eigenvalues[i] = 0.0;
  std::sort(row.eigenvalues.begin(), row.eigenvalues.end());
  return row;
}

inline SpectrumTable spectra(const CochainComplex& complex, const InnerProductFamily& ip, double zero_threshold = 1e-8) {
  SpectrumTable t;
  t.zero_threshold = zero_threshold;
  for (std::size_t k = 0; k < complex.length(); ++k) t.rows.push_back(spectrum(complex, ip, k, zero_threshold));
  return t;
}

inline SpectrumRow spectrum(const SimplicialComplex& k_complex, const InnerProductFamily& ip, std::size_t k,
                            double zero_threshold = 1e-8) {
  require_degree(k_complex, k);
  return spectrum(cochain_complex(k_complex), ip, k, zero_threshold);
}

struct KodairaSplit {
  Eigen::VectorXd harmonic;
  Eigen::VectorXd exact;
  Eigen::VectorXd coexact;
  double residual = 0;       // ‖u − (h + e + c)‖ / ‖u‖
  double orthogonality = 0;  // max |⟨x, y⟩| / ‖u‖² over the three pairs
};

/// Harmonic ⊕ exact ⊕ coexact splitting of a k-cochain. The three pieces are
/// computed by independent projections (kernel eigenvectors, im d_{k-1},
/// im d*_k), so the reconstruction residual is a real check.
inline KodairaSplit kodaira_decompose(const CochainComplex& complex, const InnerProductFamily& ip, std::size_t k,
                                      const Eigen::VectorXd& u, double zero_threshold = 1e-8) {
  if (k >= complex.length()) throw Error(ErrorKind::range, "degree " + std::to_string(k) + " out of range");
  if (static_cast<std::size_t>(u.size()) != complex.dims[k]) throw Error(ErrorKind::range, "cochain length mismatch");
  const Eigen::MatrixXd& gram = ip.at(k);
  const auto n = static_cast<Eigen::Index>(complex.dims[k]);

  Eigensystem es = eigensystem(complex, ip, k, zero_threshold);
  Eigen::MatrixXd kernel = es.vectors.leftCols(static_cast<Eigen::Index>(es.zero_count));

  Eigen::MatrixXd exact_basis = detail::to_eigen(column_space(complex.incoming(k)), n, 0);
  Eigen::MatrixXd coexact_basis(n, 0);
  if (k + 1 < complex.length()) {
    Eigen::MatrixXd rows = detail::to_eigen(column_space(complex.coboundary(k).transpose()), n, 0);
    coexact_basis = Eigen::LDLT<Eigen::MatrixXd>(gram).solve(rows);
  }

  KodairaSplit s;
  s.harmonic = kernel * (kernel.transpose() * gram * u);
  s.exact = detail::project(exact_basis, gram, u);
  s.coexact = detail::project(coexact_basis, gram, u);

  auto norm2 = [&](const Eigen::VectorXd& x) { return x.dot(gram * x); };
  const double uu = norm2(u);
  if (uu == 0.0) return s;
  Eigen::VectorXd diff = u - s.harmonic - s.exact - s.coexact;
  s.residual = std::sqrt(norm2(diff) / uu);
  s.orthogonality = std::max({std::abs(s.harmonic.dot(gram * s.exact)), std::abs(s.harmonic.dot(gram * s.coexact)),
                              std::abs(s.exact.dot(gram * s.coexact))}) /
                    uu;
  return s;
}

/// Harmonic projections of the canonical cohomology representatives: a basis
/// of the harmonic k-cochains whose coordinates match the rational basis.
inline Eigen::MatrixXd harmonic_basis(const CochainComplex& complex, const InnerProductFamily& ip, std::size_t k,
                                      double zero_threshold = 1e-8) {
  CohomologyBasis basis = cohomology_basis(complex, k);
  const auto n = static_cast<Eigen::Index>(complex.dims[k]);
  Eigen::MatrixXd reps = detail::to_eigen(basis.representatives, n, static_cast<Eigen::Index>(basis.betti));
  Eigensystem es = eigensystem(complex, ip, k, zero_threshold);
  if (es.zero_count != basis.betti)
    throw Error(ErrorKind::numeric, "numerical harmonic space has the wrong dimension in degree " + std::to_string(k));
  Eigen::MatrixXd kernel = es.vectors.leftCols(static_cast<Eigen::Index>(es.zero_count));
  return kernel * (kernel.transpose() * ip.at(k) * reps);
}

/// Hodge star between harmonic spaces of a closed oriented triangulation.
///
/// The duality map S defined by ⟨a ⌣ S b, [K]⟩ = ⟨a, b⟩ is replaced by the
/// orthogonal factor U of its polar decomposition S = U |S|. U is an isometry,
/// U_{n-k} U_k = (-1)^{k(n-k)} and ⟨a ⌣ U a, [K]⟩ > 0; U is exactly the
/// duality map of the harmonic metric G' = G |S|⁻¹ (equal to G when the
/// cochain inner products are already compatible with the cup pairing).
struct HodgeStar {
  std::size_t degree = 0;
  std::size_t dimension = 0;
  Eigen::MatrixXd matrix;         // (n-k)-cochains x k-cochains
  Eigen::MatrixXd harmonic_map;   // U in harmonic coordinates, b_{n-k} x b_k
  Eigen::MatrixXd gram;           // G on ℋ^k in harmonic coordinates
  Eigen::MatrixXd star_gram;      // G' on ℋ^k in harmonic coordinates
};

inline Eigen::MatrixXd rational_pairing(const SimplicialComplex& complex, const FundamentalClass& fc, std::size_t k,
                                        int orientation) {
  const auto n = static_cast<std::size_t>(complex.dimension());
  CohomologyBasis a = cohomology_basis(complex, k);
  CohomologyBasis b = cohomology_basis(complex, n - k);
  Eigen::MatrixXd q(static_cast<Eigen::Index>(a.betti), static_cast<Eigen::Index>(b.betti));
  for (std::size_t i = 0; i < a.betti; ++i)
    for (std::size_t j = 0; j < b.betti; ++j) {
      auto prod = cup_product(complex, k, a.representatives.column(i), n - k, b.representatives.column(j));
      q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = orientation * to_double(fc.evaluate(prod));
    }
  return q;
}

inline HodgeStar hodge_star_matrix(const SimplicialComplex& complex, const InnerProductFamily& ip, std::size_t k,
                                   int orientation = 1, double zero_threshold = 1e-8) {
  require_degree(complex, k);
  FundamentalClass fc = fundamental_class(complex);
  const auto n = static_cast<std::size_t>(complex.dimension());
  CochainComplex cc = cochain_complex(complex);
  ip.check_against(cc);

  Eigen::MatrixXd hk = harmonic_basis(cc, ip, k, zero_threshold);
  Eigen::MatrixXd hd = harmonic_basis(cc, ip, n - k, zero_threshold);
  HodgeStar star;
  star.degree = k;
  star.dimension = n;
  star.matrix = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(cc.dims[n - k]), static_cast<Eigen::Index>(cc.dims[k]));
  if (hk.cols() == 0) return star;

  Eigen::MatrixXd gk = hk.transpose() * ip.at(k) * hk;
  Eigen::MatrixXd gd = hd.transpose() * ip.at(n - k) * hd;
  Eigen::MatrixXd q = rational_pairing(complex, fc, k, orientation);
  Eigen::MatrixXd s = q.fullPivLu().solve(gk);

  Eigen::MatrixXd rk = Eigen::LLT<Eigen::MatrixXd>(gk).matrixU();
  Eigen::MatrixXd rd = Eigen::LLT<Eigen::MatrixXd>(gd).matrixU();
  Eigen::MatrixXd s_tilde = rd * s * rk.inverse();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(s_tilde, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::MatrixXd u_tilde = svd.matrixU() * svd.matrixV().transpose();
  Eigen::MatrixXd p_tilde_inv =
      svd.matrixV() * svd.singularValues().cwiseInverse().asDiagonal() * svd.matrixV().transpose();

  star.harmonic_map = rd.inverse() * u_tilde * rk;
  star.gram = gk;
  star.star_gram = rk.transpose() * p_tilde_inv * rk;
  Eigen::MatrixXd coords = gk.ldlt().solve(hk.transpose() * ip.at(k));
  star.matrix = hd * star.harmonic_map * coords;
  return star;
}

}  // namespace mezzo::hodge
