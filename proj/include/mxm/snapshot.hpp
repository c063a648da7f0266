#pragma once

// Binary field snapshots.
//
// Layout (little-endian): magic "MXMT", u32 version, u32 n, f64 box_len,
// u32 component count, then each component as n^3 f64 values, x fastest.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mxm/grid.hpp"

namespace mxm {

inline constexpr std::uint32_t kSnapshotVersion = 1;

struct Snapshot {
  Grid3 grid;
  std::vector<ScalarField> components;
};

void write_snapshot(std::ostream& out, const Grid3& grid,
                    std::span<const ScalarField* const> components);
Snapshot read_snapshot(std::istream& in);

/// Writes u1, u2 (six components) followed by the zero extension of v.
void write_state_snapshot(const std::string& path, const EMState& u, const MatterState& v,
                          const DomainMask& mask);

}  // namespace mxm
