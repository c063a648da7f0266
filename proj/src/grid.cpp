#include "mxm/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mxm/errors.hpp"
#include "mxm/kernels.hpp"
#include "mxm/parallel.hpp"

namespace mxm {

Grid3::Grid3(int n, double box_len) : n_(n), box_len_(box_len) {
  if (n < 8 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("grid: n must be a power of two >= 8, got " +
                                std::to_string(n));
  }
  if (!(box_len > 0.0) || !std::isfinite(box_len)) {
    throw std::invalid_argument("grid: box_len must be positive");
  }
}

Vec3 Grid3::position(std::size_t idx) const {
  const auto c = coords(idx);
  const double h = spacing();
  return {c[0] * h, c[1] * h, c[2] * h};
}

ScalarField::ScalarField(const Grid3& grid, double value)
    : grid_(grid), data_(grid.size(), value) {}

void ScalarField::fill(double value) { std::fill(data_.begin(), data_.end(), value); }

bool ScalarField::is_constant() const {
  return std::all_of(data_.begin(), data_.end(), [&](double x) { return x == data_[0]; });
}

Coefficients::Coefficients(ScalarField k1, ScalarField k2)
    : kappa1(std::move(k1)), kappa2(std::move(k2)) {
  require_same_grid(kappa1.grid(), kappa2.grid(), "coefficients");
  double lo = kappa1[0];
  for (const ScalarField* f : {&kappa1, &kappa2}) {
    for (double x : f->values()) {
      if (!std::isfinite(x)) throw std::invalid_argument("coefficients: non-finite value");
      lo = std::min(lo, x);
    }
  }
  if (!(lo > 0.0)) {
    throw std::invalid_argument("coefficients: kappa must be bounded below by c > 0");
  }
  lower_bound = lo;
}

Coefficients Coefficients::constant(const Grid3& grid, double k1, double k2) {
  return Coefficients(ScalarField(grid, k1), ScalarField(grid, k2));
}

DomainMask::DomainMask(const Grid3& grid, std::vector<std::uint8_t> inside)
    : grid_(grid), inside_(std::move(inside)) {
  if (inside_.size() != grid_.size()) throw GridMismatch("mask size");
  const int n = grid_.n();
  const int margin = n / 8;
  std::array<int, 3> lo{n, n, n}, hi{-1, -1, -1};
  for (std::size_t idx = 0; idx < inside_.size(); ++idx) {
    if (!inside_[idx]) continue;
    voxels_.push_back(idx);
    const auto c = grid_.coords(idx);
    for (int a = 0; a < 3; ++a) {
      lo[a] = std::min(lo[a], c[a]);
      hi[a] = std::max(hi[a], c[a]);
    }
  }
  if (voxels_.empty()) throw std::invalid_argument("domain mask: empty");
  for (int a = 0; a < 3; ++a) {
    if (lo[a] < margin || hi[a] > n - 1 - margin) {
      throw std::invalid_argument("domain mask: bounding box closer than n/8 cells to the "
                                  "periodic boundary");
    }
  }
}

DomainMask DomainMask::box(const Grid3& grid, std::array<int, 3> lo, std::array<int, 3> hi) {
  std::vector<std::uint8_t> inside(grid.size(), 0);
  const int n = grid.n();
  for (int a = 0; a < 3; ++a) {
    if (lo[a] < 0 || hi[a] > n || lo[a] >= hi[a]) {
      throw std::invalid_argument("domain mask: invalid box extent");
    }
  }
  for (int k = lo[2]; k < hi[2]; ++k)
    for (int j = lo[1]; j < hi[1]; ++j)
      for (int i = lo[0]; i < hi[0]; ++i) inside[grid.index(i, j, k)] = 1;
  return DomainMask(grid, std::move(inside));
}

DomainMask DomainMask::ball(const Grid3& grid, Vec3 center, double radius) {
  std::vector<std::uint8_t> inside(grid.size(), 0);
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const auto c = grid.coords(idx);
    const Vec3 p{c[0] + 0.5 - center[0], c[1] + 0.5 - center[1], c[2] + 0.5 - center[2]};
    if (dot(p, p) <= radius * radius) inside[idx] = 1;
  }
  return DomainMask(grid, std::move(inside));
}

MatterState::MatterState(std::size_t dim, std::size_t voxel_count, double value)
    : dim_(dim), count_(voxel_count), data_(dim * voxel_count, value) {}

void MatterState::get(std::size_t p, std::span<double> out) const {
  for (std::size_t c = 0; c < dim_; ++c) out[c] = data_[c * count_ + p];
}

void MatterState::put(std::size_t p, std::span<const double> in) {
  for (std::size_t c = 0; c < dim_; ++c) data_[c * count_ + p] = in[c];
}

double MatterState::modulus(std::size_t p) const {
  double s = 0.0;
  for (std::size_t c = 0; c < dim_; ++c) s += data_[c * count_ + p] * data_[c * count_ + p];
  return std::sqrt(s);
}

void require_same_grid(const Grid3& a, const Grid3& b, const char* what) {
  if (!(a == b)) throw GridMismatch(what);
}

double inner(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid(), b.grid(), "inner");
  const auto& k = kernels::active();
  const double* x = a.data();
  const double* y = b.data();
  const double sum = reduce_sum(a.size(), kDefaultGrain, [&](std::size_t lo, std::size_t hi) {
    return k.dot(x + lo, y + lo, hi - lo);
  });
  return a.grid().cell_volume() * sum;
}

double inner(const VectorField3& a, const VectorField3& b) {
  return inner(a[0], b[0]) + inner(a[1], b[1]) + inner(a[2], b[2]);
}

double l2_norm(const VectorField3& a) { return std::sqrt(inner(a, a)); }

double weighted_inner(const EMState& a, const EMState& b, const Coefficients& kappa) {
  require_same_grid(a.grid(), b.grid(), "weighted_inner");
  require_same_grid(a.grid(), kappa.grid(), "weighted_inner coefficients");
  const auto& k = kernels::active();
  double total = 0.0;
  for (int c = 0; c < 6; ++c) {
    const double* w = (c < 3 ? kappa.kappa1 : kappa.kappa2).data();
    const double* x = a.component(c).data();
    const double* y = b.component(c).data();
    total += reduce_sum(a.grid().size(), kDefaultGrain, [&](std::size_t lo, std::size_t hi) {
      return k.weighted_dot(w + lo, x + lo, y + lo, hi - lo);
    });
  }
  return a.grid().cell_volume() * total;
}

double weighted_norm(const EMState& a, const Coefficients& kappa) {
  return std::sqrt(weighted_inner(a, a, kappa));
}

double l2_norm(const MatterState& v, const Grid3& grid) {
  const auto flat = v.flat();
  return std::sqrt(grid.cell_volume() *
                   kernels::active().dot(flat.data(), flat.data(), flat.size()));
}

double sup_norm(const MatterState& v) {
  double m = 0.0;
  for (std::size_t p = 0; p < v.voxel_count(); ++p) m = std::max(m, v.modulus(p));
  return m;
}

std::vector<ScalarField> extend_by_zero(const MatterState& v, const DomainMask& mask) {
  if (v.voxel_count() != mask.voxel_count()) throw GridMismatch("matter state vs mask");
  std::vector<ScalarField> out;
  out.reserve(v.dim());
  const auto voxels = mask.voxels();
  for (std::size_t c = 0; c < v.dim(); ++c) {
    ScalarField f(mask.grid());
    const auto comp = v.component(c);
    for (std::size_t p = 0; p < voxels.size(); ++p) f[voxels[p]] = comp[p];
    out.push_back(std::move(f));
  }
  return out;
}

MatterState restrict_to_domain(std::span<const ScalarField> f, const DomainMask& mask) {
  MatterState v(f.size(), mask.voxel_count());
  const auto voxels = mask.voxels();
  for (std::size_t c = 0; c < f.size(); ++c) {
    require_same_grid(f[c].grid(), mask.grid(), "restrict_to_domain");
    auto comp = v.component(c);
    for (std::size_t p = 0; p < voxels.size(); ++p) comp[p] = f[c][voxels[p]];
  }
  return v;
}

}  // namespace mxm
