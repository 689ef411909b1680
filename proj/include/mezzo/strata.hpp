#pragma once

#include <cstddef>
#include <string>

#include "mezzo/errors.hpp"
#include "mezzo/mezzoperversity.hpp"
#include "mezzo/refined.hpp"
#include "mezzo/space.hpp"

namespace mezzo {

struct WittStatus {
  bool witt = true;
  std::size_t middle_dim = 0;  // dim of the middle refined cohomology of the link (0 when witt)
};

/// Ids of a stratum's link strata carry this prefix.
inline std::string link_scope(const Stratum& s) {
  const std::string own = s.owner->own_stratum_id();
  return s.id.substr(0, s.id.size() - own.size()) + s.owner->link_prefix();
}

/// Witt iff f is odd or the middle refined cohomology of the link vanishes.
/// prior holds assignments by global stratum id; only those of strata inside
/// the link are read.
inline WittStatus witt_status(const Stratum& stratum, const Mezzoperversity& prior) {
  if (stratum.link_dim % 2 == 1) return {true, 0};
  const std::string scope = link_scope(stratum);
  std::size_t mid = 0;
  try {
    mid = refined::middle_dimension(*stratum.link, prior.restricted(scope), scope);
  } catch (const StratumError& e) {
    throw StratumError(ErrorKind::dependency, e.stratum(),
                       "Witt status of " + stratum.id + " depends on stratum " + e.stratum() + ": " + e.what());
  } catch (const FlatnessError& e) {
    throw StratumError(ErrorKind::dependency, e.stratum(),
                       "Witt status of " + stratum.id + " depends on stratum " + e.stratum() + ": " + e.what());
  }
  return {mid == 0, mid};
}

}  // namespace mezzo
