#pragma once

// Matter models F(x, v, u) = F0(x, v) + F1(x, v) u coupled to the fields
// through l = (l1, l2), plus the structural checks the coupled system relies
// on (F(x, 0, u) = 0, F.v <= K |v|^2, decoupling on one field slot).

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "mxm/grid.hpp"
#include "mxm/kernels.hpp"
#include "mxm/vec3.hpp"

namespace mxm {

/// Local data available to a model at one voxel.
struct PointContext {
  Vec3 x{0.0, 0.0, 0.0};
  double kappa1 = 1.0;
  double kappa2 = 1.0;
};

class MatterModel {
 public:
  virtual ~MatterModel() = default;

  virtual std::string name() const = 0;
  virtual std::size_t dim() const = 0;
  /// Decoupling index j in {1, 2}: F reads only u_j and l_{3-j} = 0.
  virtual int field_slot() const = 0;
  /// K with F(x, v, u).v <= K |v|^2 for all (v, u).
  virtual double growth_constant() const = 0;

  /// out = F(x, v, u); u = (u1, u2).
  virtual void eval(const PointContext& ctx, std::span<const double> v, const Vec6& u,
                    std::span<double> out) const = 0;
  /// l1(x) v and l2(x) v.
  virtual void couple(const PointContext& ctx, std::span<const double> v, Vec3& l1v,
                      Vec3& l2v) const = 0;

  /// F over every voxel. `u` holds the six field components sampled at the
  /// voxels (component-major, like MatterState).
  virtual void eval_domain(std::span<const PointContext> ctx, const MatterState& v,
                           const MatterState& u, MatterState& out) const;
};

/// F0(x, v) = F(x, v, 0).
std::vector<double> eval_F0(const MatterModel& model, const PointContext& ctx,
                            std::span<const double> v);
/// F1(x, v) as a d x 6 matrix (columns F(x, v, e_k) - F(x, v, 0)).
Eigen::MatrixXd eval_F1(const MatterModel& model, const PointContext& ctx,
                        std::span<const double> v);

// ---------------------------------------------------------------------------
// Landau-Lifschitz

struct LandauLifschitzParams {
  double gamma = 1.0;
  double alpha = 0.1;
  double anisotropy = 0.0;  // Ka >= 0, potential (Ka/2)(M.e)^2
  Vec3 easy_axis{0.0, 0.0, 1.0};
  Vec3 h_ext{0.0, 0.0, 0.0};
  double coupling = 1.0;    // scales l1 = -coupling * mu; 0 decouples the fields
};

/// dM/dt = gamma M x H_T - alpha M x (M x H_T), H_T = H + Ka (M.e) e + H_ext.
/// d = 3, j = 1, l1 = -mu, l2 = 0.
class LandauLifschitzModel final : public MatterModel {
 public:
  explicit LandauLifschitzModel(LandauLifschitzParams params);

  const LandauLifschitzParams& params() const { return p_; }
  kernels::LLParams kernel_params() const;

  std::string name() const override { return "landau_lifschitz"; }
  std::size_t dim() const override { return 3; }
  int field_slot() const override { return 1; }
  double growth_constant() const override { return 0.0; }
  void eval(const PointContext& ctx, std::span<const double> v, const Vec6& u,
            std::span<double> out) const override;
  void couple(const PointContext& ctx, std::span<const double> v, Vec3& l1v,
              Vec3& l2v) const override;
  void eval_domain(std::span<const PointContext> ctx, const MatterState& v,
                   const MatterState& u, MatterState& out) const override;

  /// Total field H_T for field h and magnetisation m.
  Vec3 total_field(const Vec3& m, const Vec3& h) const;
  /// Anisotropy potential (Ka/2)(m.e)^2.
  double anisotropy_potential(const Vec3& m) const;

 private:
  LandauLifschitzParams p_;
};

// ---------------------------------------------------------------------------
// N-level Bloch

/// Real packing of a Hermitian N x N matrix into N^2 reals: the diagonal,
/// then sqrt(2) Re and sqrt(2) Im of each upper-triangle entry (row-major),
/// so |v|^2 equals the squared Frobenius norm.
std::vector<double> pack_rho(const Eigen::MatrixXcd& rho, double hermitian_tol = 1e-12);
Eigen::MatrixXcd unpack_rho(std::span<const double> v, int levels);

struct BlochParams {
  int levels = 2;
  Eigen::MatrixXcd hamiltonian;           // Lambda, Hermitian
  std::array<Eigen::MatrixXcd, 3> dipole; // Gamma, each component Hermitian
  double transverse_rate = 0.0;           // Q(rho) = -rate * rho_offdiag
  Eigen::MatrixXd pauli_rates;            // optional W(a, b): rate b -> a
  double density = 1.0;                   // scales l2; 0 decouples the fields
};

/// i drho/dt = [Lambda - E.Gamma, rho] + i Q(rho); d = N^2, j = 2, l1 = 0,
/// l2 v = -density * Tr(Gamma rho).
class BlochModel final : public MatterModel {
 public:
  explicit BlochModel(BlochParams params);

  const BlochParams& params() const { return p_; }
  int levels() const { return p_.levels; }

  std::string name() const override { return "bloch"; }
  std::size_t dim() const override {
    return static_cast<std::size_t>(p_.levels) * static_cast<std::size_t>(p_.levels);
  }
  int field_slot() const override { return 2; }
  double growth_constant() const override { return growth_; }
  void eval(const PointContext& ctx, std::span<const double> v, const Vec6& u,
            std::span<double> out) const override;
  void couple(const PointContext& ctx, std::span<const double> v, Vec3& l1v,
              Vec3& l2v) const override;

  /// Right-hand side in matrix form for field E.
  Eigen::MatrixXcd rhs_matrix(const Eigen::MatrixXcd& rho, const Vec3& e) const;

 private:
  BlochParams p_;
  double growth_;
};

// ---------------------------------------------------------------------------
// Test model with a genuine growth rate

/// F = rate v + gamma v x u1, d = 3, j = 1, l1 = -coupling * mu.
/// F.v = rate |v|^2, so the pointwise bound e^{rate t} is sharp.
class LinearGrowthModel final : public MatterModel {
 public:
  LinearGrowthModel(double rate, double gamma, double coupling = 1.0);

  std::string name() const override { return "linear_growth"; }
  std::size_t dim() const override { return 3; }
  int field_slot() const override { return 1; }
  double growth_constant() const override { return rate_; }
  void eval(const PointContext& ctx, std::span<const double> v, const Vec6& u,
            std::span<double> out) const override;
  void couple(const PointContext& ctx, std::span<const double> v, Vec3& l1v,
              Vec3& l2v) const override;

 private:
  double rate_;
  double gamma_;
  double coupling_;
};

// ---------------------------------------------------------------------------
// Structural checks

struct StructureFailure {
  std::string check;
  std::vector<double> v;
  Vec6 u{};
  double value = 0.0;
};

struct StructureReport {
  std::size_t samples = 0;
  double k_empirical = 0.0;  // max F.v / |v|^2 over samples
  double c_f = 0.0;          // sup |F_j| + |d_v F_j| over samples
  std::vector<StructureFailure> failures;

  bool ok() const { return failures.empty(); }
};

/// Monte-Carlo over v in B_radius, u in B_radius and the supplied points
/// (a default context when empty).
StructureReport check_structure(const MatterModel& model, std::size_t sample_count,
                                double radius = 1.0, std::uint64_t seed = 1,
                                std::span<const PointContext> points = {});

}  // namespace mxm
