#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mezzo/errors.hpp"
#include "mezzo/hodge.hpp"
#include "mezzo/mezzoperversity.hpp"
#include "mezzo/rational.hpp"
#include "mezzo/refined.hpp"
#include "mezzo/space.hpp"
#include "mezzo/strata.hpp"

/// Indicial roots of the edge operator at a stratum with link Z of dimension f:
///   harmonic:    {-k, k-f : H^k(Z) ≠ 0}
///   nonharmonic: -f/2 ± 1/2 ± sqrt((k - f/2 ± 1/2)² + μ),  μ ∈ Spec(Δ_k) \ {0}
/// The three signs are taken independently. Eigenvalues enter as the exact
/// rationals equal to their double values, so every root is a + s·sqrt(r)
/// with a, r rational and comparisons are exact.
namespace mezzo::indicial {

struct Root {
  Rational rational_part;
  int sqrt_sign = 0;  // 0 when the root is rational
  Rational radicand;  // 0 when the root is rational; never a perfect square otherwise
  bool harmonic = true;
  std::size_t degree = 0;
  double mu = 0.0;
  int outer_sign = 0, sqrt_choice = 0, inner_sign = 0;
  std::size_t multiplicity = 1;

  double value() const {
    double v = to_double(rational_part);
    if (sqrt_sign != 0) v += sqrt_sign * std::sqrt(to_double(radicand));
    return v;
  }

  bool same_value(const Root& o) const {
    return rational_part == o.rational_part && radicand == o.radicand && (radicand == 0 || sqrt_sign == o.sqrt_sign);
  }

  /// Sign of value() - x, exact.
  int compare(const Rational& x) const {
    const Rational d = x - rational_part;
    if (sqrt_sign == 0) return -sign(d);
    if (sqrt_sign > 0) {
      if (d < 0) return 1;
      return sign(radicand - d * d);
    }
    if (d >= 0) return -1;
    return -sign(radicand - d * d);
  }

  std::string symbolic() const {
    if (sqrt_sign == 0) return to_string(rational_part);
    return to_string(rational_part) + (sqrt_sign > 0 ? " + " : " - ") + "sqrt(" + to_string(radicand) + ")";
  }
};

inline Root make_root(Rational a, int s, Rational r) {
  Root root;
  Rational sq;
  if (s == 0 || r == 0) {
    root.rational_part = a;
  } else if (rational_sqrt(r, sq)) {
    root.rational_part = a + Rational(s) * sq;
  } else {
    root.rational_part = a;
    root.sqrt_sign = s;
    root.radicand = r;
  }
  return root;
}

struct RootSet {
  std::size_t f = 0;
  std::vector<Root> harmonic;     // distinct values, multiplicities recorded
  std::vector<Root> nonharmonic;  // distinct values, provenance of the first occurrence

  std::vector<Root> all() const {
    std::vector<Root> out = harmonic;
    out.insert(out.end(), nonharmonic.begin(), nonharmonic.end());
    return out;
  }
};

inline void add_root(std::vector<Root>& roots, const Root& r) {
  for (auto& existing : roots)
    if (existing.same_value(r)) {
      existing.multiplicity += r.multiplicity;
      return;
    }
  roots.push_back(r);
}

inline void sort_roots(std::vector<Root>& roots) {
  std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) { return a.value() < b.value(); });
}

/// Counts |μ| <= threshold·λ_max as zero.
inline std::size_t zero_count(const std::vector<double>& eigenvalues, double threshold) {
  double top = 0.0;
  for (double mu : eigenvalues) top = std::max(top, std::abs(mu));
  std::size_t z = 0;
  for (double mu : eigenvalues)
    if (std::abs(mu) <= threshold * top) ++z;
  return z;
}

/// Roots from a per-degree spectrum table of the link (degrees 0..f). When
/// betti is given, the zero multiplicities must match it.
inline RootSet indicial_roots(const hodge::SpectrumTable& table, std::size_t f,
                              const std::optional<std::vector<std::size_t>>& betti = std::nullopt) {
  if (table.rows.size() != f + 1)
    throw Error(ErrorKind::consistency, "spectrum table has " + std::to_string(table.rows.size()) +
                                            " degrees, link dimension " + std::to_string(f) + " needs " +
                                            std::to_string(f + 1));
  RootSet set;
  set.f = f;
  const Rational half(1, 2);
  const Rational center = Rational(static_cast<long>(f)) / 2;
  for (std::size_t k = 0; k <= f; ++k) {
    const auto& row = table.rows[k];
    for (double mu : row.eigenvalues)
      if (mu < -table.zero_threshold * std::max(1.0, std::abs(mu)))
        throw Error(ErrorKind::consistency, "negative eigenvalue in degree " + std::to_string(k));
    const std::size_t zeros = zero_count(row.eigenvalues, table.zero_threshold);
    if (betti && (*betti)[k] != zeros)
      throw Error(ErrorKind::consistency, "degree " + std::to_string(k) + " has " + std::to_string(zeros) +
                                              " zero eigenvalues, refined betti number is " +
                                              std::to_string((*betti)[k]));
    if (zeros > 0) {
      for (Rational value : {Rational(-static_cast<long>(k)), Rational(static_cast<long>(k)) - Rational(static_cast<long>(f))}) {
        Root r = make_root(value, 0, 0);
        r.degree = k;
        r.multiplicity = zeros;
        add_root(set.harmonic, r);
      }
    }
    double top = 0.0;
    for (double mu : row.eigenvalues) top = std::max(top, std::abs(mu));
    for (double mu : row.eigenvalues) {
      if (std::abs(mu) <= table.zero_threshold * top) continue;
      const Rational exact_mu = exact_rational(mu);
      for (int inner : {1, -1}) {
        const Rational c = Rational(static_cast<long>(k)) - center + Rational(inner) * half;
        const Rational radicand = c * c + exact_mu;
        for (int outer : {1, -1})
          for (int s : {1, -1}) {
            Root r = make_root(-center + Rational(outer) * half, s, radicand);
            r.harmonic = false;
            r.degree = k;
            r.mu = mu;
            r.outer_sign = outer;
            r.sqrt_choice = s;
            r.inner_sign = inner;
            add_root(set.nonharmonic, r);
          }
      }
    }
  }
  sort_roots(set.harmonic);
  sort_roots(set.nonharmonic);
  return set;
}

/// Roots lying in the closed interval [lo, hi], exactly.
inline std::vector<Root> roots_in(const RootSet& set, const Rational& lo, const Rational& hi) {
  std::vector<Root> out;
  for (const auto& r : set.all())
    if (r.compare(lo) >= 0 && r.compare(hi) <= 0) out.push_back(r);
  sort_roots(out);
  return out;
}

struct Violation {
  std::size_t degree = 0;
  double mu = 0.0;
};

/// Suitable scaling of the link metric.
///
/// f even: every nonzero μ in degrees |j - f/2| <= 1 must exceed 3/4 (strict).
/// f odd:  every nonzero μ in degrees j = (f ± 1)/2 must be at least 1.
/// s_star_infimum is threshold / min μ (1 when passing); s_star is the factor
/// actually recommended (slightly above the infimum when the inequality is
/// strict). Scaling eigenvalues by s corresponds to metric rescale 1/sqrt(s).
struct ScalingReport {
  bool suitably_scaled = true;
  bool vacuous = false;
  double threshold = 0.75;
  bool strict = true;
  std::vector<std::size_t> relevant_degrees;
  std::vector<Violation> violations;
  double min_relevant_mu = std::numeric_limits<double>::infinity();
  double s_star_infimum = 1.0;
  double s_star = 1.0;
  double metric_rescale = 1.0;
  Rational window_lo, window_hi;
  bool window_ok = true;
  std::vector<Root> window_roots;
  std::string note;
};

constexpr double kStrictMargin = 1e-6;

inline ScalingReport suitably_scaled(const hodge::SpectrumTable& table, std::size_t f) {
  ScalingReport rep;
  const bool even = f % 2 == 0;
  rep.threshold = even ? 0.75 : 1.0;
  rep.strict = even;
  for (std::size_t j = 0; j <= f; ++j) {
    const long twice_offset = 2 * static_cast<long>(j) - static_cast<long>(f);
    if ((even && std::abs(twice_offset) <= 2) || (!even && std::abs(twice_offset) == 1)) rep.relevant_degrees.push_back(j);
  }
  for (std::size_t j : rep.relevant_degrees) {
    const auto& eig = table.rows.at(j).eigenvalues;
    double top = 0.0;
    for (double mu : eig) top = std::max(top, std::abs(mu));
    for (double mu : eig) {
      if (std::abs(mu) <= table.zero_threshold * top) continue;
      rep.min_relevant_mu = std::min(rep.min_relevant_mu, mu);
      const bool ok = rep.strict ? mu > rep.threshold : mu >= rep.threshold;
      if (!ok) rep.violations.push_back({j, mu});
    }
  }
  if (!std::isfinite(rep.min_relevant_mu)) {
    rep.vacuous = true;
    rep.note = "no nonzero eigenvalues in the relevant degrees; criterion holds vacuously";
  }
  rep.suitably_scaled = rep.violations.empty();
  if (!rep.suitably_scaled) {
    rep.s_star_infimum = rep.threshold / rep.min_relevant_mu;
    rep.s_star = rep.strict ? rep.s_star_infimum * (1.0 + kStrictMargin) : rep.s_star_infimum;
    while (rep.min_relevant_mu * rep.s_star < rep.threshold)
      rep.s_star = std::nextafter(rep.s_star, std::numeric_limits<double>::infinity());
    rep.metric_rescale = 1.0 / std::sqrt(rep.s_star);
    rep.note = rep.strict ? "strict inequality: any s > s_star_infimum passes" : "s >= s_star_infimum passes";
  }
  const Rational center = Rational(static_cast<long>(f)) / 2;
  const Rational half(1, 2);
  rep.window_lo = -center - half;
  rep.window_hi = -center + half;
  RootSet roots = indicial_roots(table, f);
  rep.window_roots = roots_in(roots, rep.window_lo, rep.window_hi);
  for (const auto& r : rep.window_roots) {
    bool allowed = even ? r.compare(-center) == 0 : (r.compare(-center - half) == 0 || r.compare(-center + half) == 0);
    if (!allowed) rep.window_ok = false;
  }
  return rep;
}

/// Multiplies every eigenvalue by s (the effect of metric rescale 1/sqrt(s)).
inline hodge::SpectrumTable scaled(hodge::SpectrumTable table, double s) {
  for (auto& row : table.rows)
    for (auto& mu : row.eigenvalues) mu *= s;
  return table;
}

struct WeightGap {
  Rational delta;
  Rational line;  // δ - (f+1)/2
  double eta_plus = std::numeric_limits<double>::infinity();
  double eta_minus = std::numeric_limits<double>::infinity();
  bool plus_infinite = true;
  bool minus_infinite = true;
};

/// η⁺ = (nearest root above the line) - line, η⁻ = line - (nearest root
/// below). An empty side gives +∞.
inline WeightGap weight_gaps(const RootSet& roots, const Rational& delta) {
  WeightGap gap;
  gap.delta = delta;
  gap.line = delta - Rational(static_cast<long>(roots.f + 1), 2);
  const double line = to_double(gap.line);
  for (const auto& r : roots.all()) {
    const int c = r.compare(gap.line);
    if (c == 0)
      throw Error(ErrorKind::resonance, "weight line " + to_string(gap.line) + " meets the indicial root " + r.symbolic());
    const double d = std::abs(r.value() - line);
    if (c > 0) {
      gap.eta_plus = std::min(gap.eta_plus, d);
      gap.plus_infinite = false;
    } else {
      gap.eta_minus = std::min(gap.eta_minus, d);
      gap.minus_infinite = false;
    }
  }
  return gap;
}

/// Spectra of the refined link model of a stratum (chain complex of the
/// link with the assignments of its own strata).
inline hodge::SpectrumTable stratum_spectra(const Stratum& stratum, const Mezzoperversity& m,
                                            const hodge::InnerProductFamily* ip = nullptr,
                                            double zero_threshold = 1e-8) {
  const std::string scope = link_scope(stratum);
  CochainComplex model = refined::chain_model(*stratum.link, m.restricted(scope), scope);
  if (ip) {
    ip->check_against(model);
    return hodge::spectra(model, *ip, zero_threshold);
  }
  return hodge::spectra(model, hodge::identity_for(model), zero_threshold);
}

}  // namespace mezzo::indicial
