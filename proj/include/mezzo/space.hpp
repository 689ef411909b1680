#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "mezzo/errors.hpp"
#include "mezzo/qmatrix.hpp"
#include "mezzo/simplicial.hpp"

namespace mezzo {

/// Holonomy of the flat connection on the vertical middle cohomology: one
/// invertible matrix per generator of the base fundamental group, acting on
/// coordinates in the canonical middle-degree basis of the link.
struct MonodromyRep {
  std::vector<QMatrix> generators;

  bool trivial() const {
    for (const auto& g : generators)
      if (!(g == QMatrix::identity(g.rows()))) return false;
    return true;
  }
};

enum class SpaceKind { closed, cone, suspension, flat_cone_bundle };

inline const char* to_string(SpaceKind k) {
  switch (k) {
    case SpaceKind::closed: return "closed";
    case SpaceKind::cone: return "cone";
    case SpaceKind::suspension: return "suspension";
    case SpaceKind::flat_cone_bundle: return "flat_cone_bundle";
  }
  return "unknown";
}

class StratifiedSpace;
using SpacePtr = std::shared_ptr<const StratifiedSpace>;

/// Recursive description of a stratified pseudomanifold.
///
/// Closed(K) is a smooth closed manifold triangulated by K. Cone(Z),
/// Suspension(Z) and FlatConeBundle(Z, T) add one singular stratum with link
/// Z; the link must itself be a closed space (Closed or Suspension). The
/// bundle is the flat C(Z)-bundle over a circle with holonomy T.
class StratifiedSpace : public std::enable_shared_from_this<StratifiedSpace> {
 public:
  static SpacePtr closed(SimplicialComplex complex, int orientation = 1) {
    if (complex.empty()) throw Error(ErrorKind::structure, "closed space needs a nonempty complex");
    if (orientation != 1 && orientation != -1) throw Error(ErrorKind::structure, "orientation must be +1 or -1");
    auto s = std::shared_ptr<StratifiedSpace>(new StratifiedSpace(SpaceKind::closed));
    s->dimension_ = static_cast<std::size_t>(complex.dimension());
    s->complex_ = std::move(complex);
    s->orientation_ = orientation;
    return s;
  }

  static SpacePtr cone(SpacePtr link) { return with_link(SpaceKind::cone, std::move(link), 1); }
  static SpacePtr suspension(SpacePtr link) { return with_link(SpaceKind::suspension, std::move(link), 1); }

  static SpacePtr flat_cone_bundle(SpacePtr link, MonodromyRep monodromy) {
    for (std::size_t g = 0; g < monodromy.generators.size(); ++g) {
      const QMatrix& t = monodromy.generators[g];
      if (t.rows() != t.cols())
        throw Error(ErrorKind::structure, "monodromy generator " + std::to_string(g) + " is not square");
      if (rank(t) != t.rows())
        throw Error(ErrorKind::structure, "monodromy generator " + std::to_string(g) + " is not invertible");
    }
    if (!monodromy.generators.empty()) {
      const std::size_t n = monodromy.generators.front().rows();
      for (const auto& t : monodromy.generators)
        if (t.rows() != n) throw Error(ErrorKind::structure, "monodromy generators differ in size");
    }
    auto s = with_link_mutable(SpaceKind::flat_cone_bundle, std::move(link), 2);
    s->monodromy_ = std::move(monodromy);
    return s;
  }

  SpaceKind kind() const noexcept { return kind_; }
  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t depth() const noexcept { return depth_; }

  /// Closed and Suspension are compact without boundary and may serve as links.
  bool is_closed_space() const noexcept { return kind_ == SpaceKind::closed || kind_ == SpaceKind::suspension; }

  const SimplicialComplex& complex() const {
    if (kind_ != SpaceKind::closed) throw Error(ErrorKind::structure, "only closed spaces carry a complex");
    return complex_;
  }

  /// +1 or -1; a suspension inherits the orientation of its link.
  int orientation() const noexcept { return kind_ == SpaceKind::closed ? orientation_ : (link_ ? link_->orientation() : 1); }

  const SpacePtr& link() const {
    if (!link_) throw Error(ErrorKind::structure, "closed space has no link");
    return link_;
  }

  const MonodromyRep& monodromy() const { return monodromy_; }

  /// Id prefix used for this node's own stratum and for strata inherited from its link.
  std::string prefix() const {
    switch (kind_) {
      case SpaceKind::cone: return "cone";
      case SpaceKind::suspension: return "suspension";
      case SpaceKind::flat_cone_bundle: return "bundle";
      case SpaceKind::closed: break;
    }
    return "";
  }

  /// Id of the stratum this node adds ("" for Closed).
  std::string own_stratum_id() const {
    switch (kind_) {
      case SpaceKind::cone: return "cone.apex";
      case SpaceKind::suspension: return "suspension.poles";
      case SpaceKind::flat_cone_bundle: return "bundle.base";
      case SpaceKind::closed: break;
    }
    return "";
  }

  /// Prefix under which strata of the link appear in this space.
  std::string link_prefix() const { return prefix() + ".link."; }

  /// Changes orientation of every Closed leaf.
  SpacePtr reversed() const {
    switch (kind_) {
      case SpaceKind::closed: return closed(complex_, -orientation_);
      case SpaceKind::cone: return cone(link_->reversed());
      case SpaceKind::suspension: return suspension(link_->reversed());
      case SpaceKind::flat_cone_bundle: return flat_cone_bundle(link_->reversed(), monodromy_);
    }
    return nullptr;
  }

 private:
  explicit StratifiedSpace(SpaceKind kind) : kind_(kind) {}

  static std::shared_ptr<StratifiedSpace> with_link_mutable(SpaceKind kind, SpacePtr link, std::size_t extra_dim) {
    if (!link) throw Error(ErrorKind::structure, "missing link");
    if (!link->is_closed_space())
      throw Error(ErrorKind::structure, std::string("link of a ") + to_string(kind) +
                                            " must be a closed space (closed or suspension), got " +
                                            to_string(link->kind()));
    auto s = std::shared_ptr<StratifiedSpace>(new StratifiedSpace(kind));
    s->dimension_ = link->dimension() + extra_dim;
    s->depth_ = link->depth() + 1;
    s->link_ = std::move(link);
    return s;
  }

  static SpacePtr with_link(SpaceKind kind, SpacePtr link, std::size_t extra_dim) {
    return with_link_mutable(kind, std::move(link), extra_dim);
  }

  SpaceKind kind_;
  std::size_t dimension_ = 0;
  std::size_t depth_ = 0;
  SimplicialComplex complex_;
  int orientation_ = 1;
  SpacePtr link_;
  MonodromyRep monodromy_;
};

/// A singular stratum. Suspension poles form one stratum with two components.
struct Stratum {
  std::string id;
  std::size_t depth = 0;
  SpacePtr link;
  std::size_t link_dim = 0;
  std::size_t components = 1;
  SpacePtr owner;  // node that introduced the stratum
};

namespace detail {

inline void collect_strata(const StratifiedSpace& space, const std::string& scope, std::vector<Stratum>& out) {
  if (space.kind() == SpaceKind::closed) return;
  const SpacePtr& link = space.link();
  out.push_back({scope + space.own_stratum_id(), link->depth() + 1, link, link->dimension(),
                 space.kind() == SpaceKind::suspension ? std::size_t{2} : std::size_t{1}, space.shared_from_this()});
  collect_strata(*link, scope + space.link_prefix(), out);
}

}  // namespace detail

/// Singular strata ordered by increasing depth, ties broken by id. Strata of
/// a link reappear under "<prefix>.link." with their own (shallower) depth.
inline std::vector<Stratum> enumerate_strata(const StratifiedSpace& space) {
  std::vector<Stratum> out;
  detail::collect_strata(space, "", out);
  std::stable_sort(out.begin(), out.end(), [](const Stratum& a, const Stratum& b) {
    return a.depth != b.depth ? a.depth < b.depth : a.id < b.id;
  });
  return out;
}

}  // namespace mezzo
