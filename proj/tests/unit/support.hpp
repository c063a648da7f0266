#pragma once

#include <cmath>
#include <random>

#include "mxm/evolution.hpp"
#include "mxm/grid.hpp"
#include "mxm/spectral.hpp"

namespace testing {

inline mxm::EMState random_em(const mxm::FourierWorkspace& ws, std::uint64_t seed, int band = 3) {
  mxm::EMState u(ws.grid());
  u.u1 = mxm::random_band_limited_vector(ws, 2 * seed, band);
  u.u2 = mxm::random_band_limited_vector(ws, 2 * seed + 1, band);
  return u;
}

inline mxm::EMState diff(const mxm::EMState& a, const mxm::EMState& b) {
  mxm::EMState d = a;
  for (int c = 0; c < 6; ++c) {
    for (std::size_t i = 0; i < d.component(c).size(); ++i) d.component(c)[i] -= b.component(c)[i];
  }
  return d;
}

inline double max_abs(const mxm::ScalarField& f) {
  double m = 0.0;
  for (double x : f.values()) m = std::max(m, std::abs(x));
  return m;
}

inline double max_abs(const mxm::VectorField3& f) {
  return std::max({max_abs(f[0]), max_abs(f[1]), max_abs(f[2])});
}

inline double max_abs(const mxm::EMState& u) { return std::max(max_abs(u.u1), max_abs(u.u2)); }

inline double max_diff(const mxm::MatterState& a, const mxm::MatterState& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.flat().size(); ++i) m = std::max(m, std::abs(a.flat()[i] - b.flat()[i]));
  return m;
}

/// Unit-modulus texture on the voxels of `mask`.
inline mxm::MatterState texture(const mxm::Grid3& g, const mxm::DomainMask& mask) {
  mxm::MatterState v(3, mask.voxel_count());
  for (std::size_t q = 0; q < mask.voxel_count(); ++q) {
    const auto x = g.position(mask.voxels()[q]);
    const double th = 0.8 + 0.3 * std::sin(2.0 * x[0]), ph = 1.3 * x[1];
    v.value(0, q) = std::sin(th) * std::cos(ph);
    v.value(1, q) = std::sin(th) * std::sin(ph);
    v.value(2, q) = std::cos(th);
  }
  return v;
}

inline mxm::MatterState random_matter(std::size_t dim, std::size_t count, std::uint64_t seed,
                                      double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  mxm::MatterState v(dim, count);
  for (auto& x : v.flat()) x = scale * normal(rng);
  return v;
}

/// Central box [3n/8, 5n/8)^3.
inline mxm::DomainMask central_box(const mxm::Grid3& g) {
  const int a = 3 * g.n() / 8, b = 5 * g.n() / 8;
  return mxm::DomainMask::box(g, {a, a, a}, {b, b, b});
}

}  // namespace testing
