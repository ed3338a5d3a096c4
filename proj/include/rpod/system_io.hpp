#ifndef RPOD_SYSTEM_IO_HPP
#define RPOD_SYSTEM_IO_HPP

#include <filesystem>

#include "rpod/manifest.hpp"
#include "rpod/rom.hpp"
#include "rpod/snapshots.hpp"
#include "rpod/state_space.hpp"

namespace rpod {

// A system on disk is three Matrix Market files bound by a manifest:
//   format = rpod-system/1
//   n, p, q, dt, description
//   a = <stem>_A.mtx   (coordinate real)
//   b = <stem>_B.mtx   (array real)
//   c = <stem>_C.mtx   (coordinate real)
// File references are relative to the manifest location.
std::filesystem::path save_system(const std::filesystem::path& directory, const std::string& stem,
                                  const StateSpaceSystem& sys);
StateSpaceSystem load_system(const std::filesystem::path& manifest_file);

// Reduced models round-trip the triple plus the provenance needed to
// re-evaluate them: method, modal flag, truncation, singular spectrum, seed,
// snapshot counts. Modal triples are stored as complex arrays.
std::filesystem::path save_rom(const std::filesystem::path& directory, const std::string& stem,
                               const ReducedOrderModel& rom);
ReducedOrderModel load_rom(const std::filesystem::path& manifest_file);

// Ensembles store their columns plus a sidecar with times, kind and seed.
std::filesystem::path save_ensemble(const std::filesystem::path& directory,
                                    const std::string& stem, const SnapshotEnsemble& ens);
SnapshotEnsemble load_ensemble(const std::filesystem::path& manifest_file);

}  // namespace rpod

#endif
