#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mezzo/errors.hpp"
#include "mezzo/mezzoperversity.hpp"
#include "mezzo/qmatrix.hpp"
#include "mezzo/space.hpp"
#include "mezzo/strata.hpp"

namespace mezzo {

struct StratumCheck {
  std::string id;
  std::size_t depth = 0;
  std::size_t link_dim = 0;
  bool witt = true;
  std::size_t ambient = 0;
  std::optional<std::size_t> w_dim;
  bool rank_ok = true;
  bool flat_ok = true;
  bool compatible = true;  // ambient computable from the shallower assignments
};

struct ValidationIssue {
  ErrorKind kind;
  std::string stratum;
  std::string message;
  std::optional<std::size_t> generator;
};

struct ValidationReport {
  std::vector<StratumCheck> strata;
  std::vector<ValidationIssue> issues;

  bool valid() const { return issues.empty(); }
};

namespace detail {

inline const MonodromyRep* stratum_monodromy(const Stratum& s) {
  return s.owner->kind() == SpaceKind::flat_cone_bundle ? &s.owner->monodromy() : nullptr;
}

}  // namespace detail

/// Checks every stratum in depth order: presence, shape, rank and flatness of
/// its subspace against the ambient computed from the shallower assignments.
inline ValidationReport validate(const StratifiedSpace& space, const Mezzoperversity& m) {
  ValidationReport report;
  const auto strata = enumerate_strata(space);
  std::set<std::string> known;
  for (const auto& s : strata) known.insert(s.id);
  for (const auto& [id, w] : m.assignments)
    if (!known.count(id)) report.issues.push_back({ErrorKind::reference, id, "unknown stratum id " + id, std::nullopt});

  for (const auto& s : strata) {
    StratumCheck check;
    check.id = s.id;
    check.depth = s.depth;
    check.link_dim = s.link_dim;
    const QMatrix* w = m.find(s.id);
    WittStatus status;
    try {
      status = witt_status(s, m);
    } catch (const Error& e) {
      check.compatible = false;
      report.issues.push_back({ErrorKind::dependency, s.id, e.what(), std::nullopt});
      report.strata.push_back(check);
      continue;
    }
    check.witt = status.witt;
    check.ambient = status.middle_dim;
    if (w) check.w_dim = w->cols();

    if (status.witt) {
      if (w)
        report.issues.push_back({ErrorKind::superfluous_assignment, s.id,
                                 "stratum " + s.id + " is Witt and takes no subspace", std::nullopt});
    } else if (!w) {
      report.issues.push_back({ErrorKind::incompleteness, s.id,
                               "non-Witt stratum " + s.id + " has no assigned subspace (middle dimension " +
                                   std::to_string(status.middle_dim) + ")",
                               std::nullopt});
    } else if (w->cols() > 0 && w->rows() != status.middle_dim) {
      check.compatible = false;
      report.issues.push_back({ErrorKind::structure, s.id,
                               "subspace at " + s.id + " has vectors of length " + std::to_string(w->rows()) +
                                   ", ambient middle cohomology has dimension " + std::to_string(status.middle_dim),
                               std::nullopt});
    } else if (w->cols() > 0 && rank(*w) != w->cols()) {
      check.rank_ok = false;
      report.issues.push_back(
          {ErrorKind::rank, s.id, "subspace basis at " + s.id + " is not linearly independent", std::nullopt});
    }

    if (const MonodromyRep* rep = detail::stratum_monodromy(s)) {
      const std::size_t ambient = status.witt ? 0 : status.middle_dim;
      for (std::size_t g = 0; g < rep->generators.size(); ++g) {
        const QMatrix& t = rep->generators[g];
        if (t.rows() != ambient) {
          report.issues.push_back({ErrorKind::structure, s.id,
                                   "monodromy generator " + std::to_string(g) + " at " + s.id + " has size " +
                                       std::to_string(t.rows()) + ", middle cohomology has dimension " +
                                       std::to_string(ambient),
                                   g});
          continue;
        }
        if (w && check.rank_ok && check.compatible && w->cols() > 0 && !is_invariant(t, *w)) {
          check.flat_ok = false;
          report.issues.push_back({ErrorKind::flatness, s.id,
                                   "subspace at " + s.id + " is not invariant under monodromy generator " +
                                       std::to_string(g),
                                   g});
        }
      }
    }
    report.strata.push_back(check);
  }
  return report;
}

/// Throws the first issue of the report as a typed error.
inline void require_valid(const StratifiedSpace& space, const Mezzoperversity& m) {
  ValidationReport report = validate(space, m);
  if (report.valid()) return;
  const ValidationIssue& issue = report.issues.front();
  if (issue.kind == ErrorKind::flatness) throw FlatnessError(issue.stratum, *issue.generator, issue.message);
  throw StratumError(issue.kind, issue.stratum, issue.message);
}

enum class Extreme { zero, full };

/// Zero (upper-middle) or full (lower-middle) subspace at every non-Witt stratum.
inline Mezzoperversity extreme_mezzoperversity(const StratifiedSpace& space, Extreme which) {
  Mezzoperversity m;
  for (const auto& s : enumerate_strata(space)) {
    WittStatus status = witt_status(s, m);
    if (status.witt) continue;
    m.assignments.emplace(s.id, which == Extreme::zero ? QMatrix(status.middle_dim, 0)
                                                       : QMatrix::identity(status.middle_dim));
  }
  return m;
}

}  // namespace mezzo
