#pragma once

#include <map>
#include <string>

#include "mezzo/qmatrix.hpp"

namespace mezzo {

/// Stratum id -> subspace W of the middle-degree refined cohomology of the
/// link. Columns of each matrix are coordinates of a basis of W in the
/// canonical rational basis of that cohomology.
struct Mezzoperversity {
  std::map<std::string, QMatrix> assignments;

  const QMatrix* find(const std::string& id) const {
    auto it = assignments.find(id);
    return it == assignments.end() ? nullptr : &it->second;
  }

  /// Assignments whose id starts with prefix, with the prefix stripped.
  Mezzoperversity restricted(const std::string& prefix) const {
    Mezzoperversity out;
    for (const auto& [id, w] : assignments)
      if (id.compare(0, prefix.size(), prefix) == 0) out.assignments.emplace(id.substr(prefix.size()), w);
    return out;
  }

  /// Inverse of restricted(): every id gets the prefix prepended.
  Mezzoperversity prefixed(const std::string& prefix) const {
    Mezzoperversity out;
    for (const auto& [id, w] : assignments) out.assignments.emplace(prefix + id, w);
    return out;
  }

  /// Same stratum ids and the same subspaces (not necessarily the same bases).
  friend bool equivalent(const Mezzoperversity& a, const Mezzoperversity& b) {
    if (a.assignments.size() != b.assignments.size()) return false;
    for (const auto& [id, w] : a.assignments) {
      const QMatrix* v = b.find(id);
      if (!v || w.rows() != v->rows() || !same_span(w, *v)) return false;
    }
    return true;
  }
};

}  // namespace mezzo
