#include "mxm/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace mxm {

namespace {

static_assert(std::endian::native == std::endian::little,
              "snapshot IO assumes a little-endian host");

template <typename T>
void put(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T take(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw std::runtime_error("snapshot: truncated header");
  return value;
}

}  // namespace

void write_snapshot(std::ostream& out, const Grid3& grid,
                    std::span<const ScalarField* const> components) {
  out.write("MXMT", 4);
  put<std::uint32_t>(out, kSnapshotVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(grid.n()));
  put<double>(out, grid.box_len());
  put<std::uint32_t>(out, static_cast<std::uint32_t>(components.size()));
  for (const ScalarField* f : components) {
    require_same_grid(grid, f->grid(), "snapshot component");
    out.write(reinterpret_cast<const char*>(f->data()),
              static_cast<std::streamsize>(f->size() * sizeof(double)));
  }
  if (!out) throw std::runtime_error("snapshot: write failed");
}

Snapshot read_snapshot(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "MXMT", 4) != 0) {
    throw std::runtime_error("snapshot: bad magic");
  }
  const auto version = take<std::uint32_t>(in);
  if (version != kSnapshotVersion) throw std::runtime_error("snapshot: unsupported version");
  const auto n = take<std::uint32_t>(in);
  const auto box_len = take<double>(in);
  const auto count = take<std::uint32_t>(in);
  Snapshot snap{Grid3(static_cast<int>(n), box_len), {}};
  for (std::uint32_t c = 0; c < count; ++c) {
    ScalarField f(snap.grid);
    in.read(reinterpret_cast<char*>(f.data()),
            static_cast<std::streamsize>(f.size() * sizeof(double)));
    if (!in) throw std::runtime_error("snapshot: truncated data");
    snap.components.push_back(std::move(f));
  }
  return snap;
}

void write_state_snapshot(const std::string& path, const EMState& u, const MatterState& v,
                          const DomainMask& mask) {
  const auto matter = extend_by_zero(v, mask);
  std::vector<const ScalarField*> comps;
  for (int c = 0; c < 6; ++c) comps.push_back(&u.component(c));
  for (const auto& f : matter) comps.push_back(&f);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("snapshot: cannot open " + path);
  write_snapshot(out, u.grid(), comps);
}

}  // namespace mxm
