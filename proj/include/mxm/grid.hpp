#pragma once

// Grid geometry and field containers for the periodic computational box.
//
// Storage order is x-fastest: index(i, j, k) = i + n * (j + n * k).
// Quadrature is the midpoint rule: integral ~= cell_volume * sum.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mxm/vec3.hpp"

namespace mxm {

class Grid3 {
 public:
  /// n must be a power of two >= 8; box_len > 0.
  Grid3(int n, double box_len);

  int n() const { return n_; }
  double box_len() const { return box_len_; }
  double spacing() const { return box_len_ / n_; }
  double cell_volume() const {
    const double h = spacing();
    return h * h * h;
  }
  std::size_t size() const {
    return static_cast<std::size_t>(n_) * n_ * n_;
  }
  std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>(i) +
           static_cast<std::size_t>(n_) * (static_cast<std::size_t>(j) +
                                            static_cast<std::size_t>(n_) * k);
  }
  std::array<int, 3> coords(std::size_t idx) const {
    const auto n = static_cast<std::size_t>(n_);
    return {static_cast<int>(idx % n), static_cast<int>((idx / n) % n),
            static_cast<int>(idx / (n * n))};
  }
  /// Physical position of grid point idx (points sit at i * spacing).
  Vec3 position(std::size_t idx) const;

  bool operator==(const Grid3& other) const {
    return n_ == other.n_ && box_len_ == other.box_len_;
  }

 private:
  int n_;
  double box_len_;
};

class ScalarField {
 public:
  explicit ScalarField(const Grid3& grid, double value = 0.0);

  const Grid3& grid() const { return grid_; }
  std::size_t size() const { return data_.size(); }
  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }
  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  void fill(double value);
  bool is_constant() const;

 private:
  Grid3 grid_;
  std::vector<double> data_;
};

/// Three scalar components on one grid.
struct VectorField3 {
  explicit VectorField3(const Grid3& grid)
      : c{ScalarField(grid), ScalarField(grid), ScalarField(grid)} {}

  const Grid3& grid() const { return c[0].grid(); }
  ScalarField& operator[](int a) { return c[a]; }
  const ScalarField& operator[](int a) const { return c[a]; }
  Vec3 at(std::size_t idx) const { return {c[0][idx], c[1][idx], c[2][idx]}; }
  void set(std::size_t idx, const Vec3& value) {
    c[0][idx] = value[0];
    c[1][idx] = value[1];
    c[2][idx] = value[2];
  }

  std::array<ScalarField, 3> c;
};

/// The electromagnetic pair u = (u1, u2); H and E in the concrete models.
struct EMState {
  explicit EMState(const Grid3& grid) : u1(grid), u2(grid) {}

  const Grid3& grid() const { return u1.grid(); }
  VectorField3& slot(int i) { return i == 1 ? u1 : u2; }
  const VectorField3& slot(int i) const { return i == 1 ? u1 : u2; }
  /// Component c in [0, 6): u1 x,y,z then u2 x,y,z.
  ScalarField& component(int c) { return c < 3 ? u1[c] : u2[c - 3]; }
  const ScalarField& component(int c) const { return c < 3 ? u1[c] : u2[c - 3]; }

  VectorField3 u1;
  VectorField3 u2;
};

/// Positive coefficient pair (kappa1, kappa2) = (mu, epsilon).
struct Coefficients {
  Coefficients(ScalarField kappa1, ScalarField kappa2);
  static Coefficients constant(const Grid3& grid, double kappa1, double kappa2);

  const Grid3& grid() const { return kappa1.grid(); }
  const ScalarField& kappa(int i) const { return i == 1 ? kappa1 : kappa2; }
  bool is_constant() const { return kappa1.is_constant() && kappa2.is_constant(); }

  ScalarField kappa1;
  ScalarField kappa2;
  double lower_bound;  // min over both fields, > 0
};

/// Voxel mask for the bounded matter region. Its bounding box keeps a margin of
/// at least n/8 cells from the periodic boundary.
class DomainMask {
 public:
  DomainMask(const Grid3& grid, std::vector<std::uint8_t> inside);

  /// Axis-aligned box of cells [lo, hi) in grid indices.
  static DomainMask box(const Grid3& grid, std::array<int, 3> lo, std::array<int, 3> hi);
  /// Cells whose centre lies within `radius` (grid units) of `center`.
  static DomainMask ball(const Grid3& grid, Vec3 center, double radius);

  const Grid3& grid() const { return grid_; }
  bool contains(std::size_t idx) const { return inside_[idx] != 0; }
  std::span<const std::size_t> voxels() const { return voxels_; }
  std::size_t voxel_count() const { return voxels_.size(); }

 private:
  Grid3 grid_;
  std::vector<std::uint8_t> inside_;
  std::vector<std::size_t> voxels_;
};

/// d-component real field on the voxels of a DomainMask, component-major:
/// value(c, p) for component c and voxel p.
class MatterState {
 public:
  MatterState(std::size_t dim, std::size_t voxel_count, double value = 0.0);

  std::size_t dim() const { return dim_; }
  std::size_t voxel_count() const { return count_; }
  std::span<double> component(std::size_t c) {
    return {data_.data() + c * count_, count_};
  }
  std::span<const double> component(std::size_t c) const {
    return {data_.data() + c * count_, count_};
  }
  double& value(std::size_t c, std::size_t p) { return data_[c * count_ + p]; }
  double value(std::size_t c, std::size_t p) const { return data_[c * count_ + p]; }
  std::span<double> flat() { return data_; }
  std::span<const double> flat() const { return data_; }

  /// Gathers the d components at voxel p.
  void get(std::size_t p, std::span<double> out) const;
  void put(std::size_t p, std::span<const double> in);
  /// Euclidean norm |v(p)|.
  double modulus(std::size_t p) const;

 private:
  std::size_t dim_;
  std::size_t count_;
  std::vector<double> data_;
};

void require_same_grid(const Grid3& a, const Grid3& b, const char* what);

/// <a, b>_kappa = sum dV (kappa1 a1.b1 + kappa2 a2.b2).
double weighted_inner(const EMState& a, const EMState& b, const Coefficients& kappa);
double weighted_norm(const EMState& a, const Coefficients& kappa);

/// Unweighted L2 quantities.
double inner(const ScalarField& a, const ScalarField& b);
double inner(const VectorField3& a, const VectorField3& b);
double l2_norm(const VectorField3& a);
/// L2(Omega) norm of a matter state, using the cell volume of `grid`.
double l2_norm(const MatterState& v, const Grid3& grid);
/// max over voxels of |v(p)|.
double sup_norm(const MatterState& v);

/// Extension by zero outside the mask; one ScalarField per component.
std::vector<ScalarField> extend_by_zero(const MatterState& v, const DomainMask& mask);
MatterState restrict_to_domain(std::span<const ScalarField> f, const DomainMask& mask);

}  // namespace mxm
