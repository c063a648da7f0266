#include <cmath>
#include <stdexcept>

#include "mxm/matter.hpp"

namespace mxm {

LandauLifschitzModel::LandauLifschitzModel(LandauLifschitzParams params) : p_(params) {
  if (p_.gamma == 0.0) throw std::invalid_argument("landau_lifschitz: gamma must be nonzero");
  if (p_.alpha < 0.0) throw std::invalid_argument("landau_lifschitz: alpha must be >= 0");
  if (p_.anisotropy < 0.0) {
    throw std::invalid_argument("landau_lifschitz: anisotropy must be >= 0");
  }
  if (std::abs(norm(p_.easy_axis) - 1.0) > 1e-12) {
    throw std::invalid_argument("landau_lifschitz: easy axis must be a unit vector");
  }
}

kernels::LLParams LandauLifschitzModel::kernel_params() const {
  return {p_.gamma,
          p_.alpha,
          p_.anisotropy,
          {p_.easy_axis[0], p_.easy_axis[1], p_.easy_axis[2]},
          {p_.h_ext[0], p_.h_ext[1], p_.h_ext[2]}};
}

Vec3 LandauLifschitzModel::total_field(const Vec3& m, const Vec3& h) const {
  const double kme = p_.anisotropy * dot(m, p_.easy_axis);
  Vec3 t;
  for (int a = 0; a < 3; ++a) t[a] = (h[a] + kme * p_.easy_axis[a]) + p_.h_ext[a];
  return t;
}

double LandauLifschitzModel::anisotropy_potential(const Vec3& m) const {
  const double me = dot(m, p_.easy_axis);
  return 0.5 * p_.anisotropy * me * me;
}

void LandauLifschitzModel::eval(const PointContext&, std::span<const double> v, const Vec6& u,
                                std::span<double> out) const {
  const auto kp = kernel_params();
  kernels::scalar().ll_rhs(kp, &v[0], &v[1], &v[2], &u[0], &u[1], &u[2], &out[0], &out[1],
                           &out[2], 1);
}

void LandauLifschitzModel::couple(const PointContext& ctx, std::span<const double> v, Vec3& l1v,
                                  Vec3& l2v) const {
  for (int a = 0; a < 3; ++a) l1v[a] = -p_.coupling * ctx.kappa1 * v[a];
  l2v = {0.0, 0.0, 0.0};
}

void LandauLifschitzModel::eval_domain(std::span<const PointContext>, const MatterState& v,
                                       const MatterState& u, MatterState& out) const {
  const auto kp = kernel_params();
  kernels::active().ll_rhs(kp, v.component(0).data(), v.component(1).data(),
                           v.component(2).data(), u.component(0).data(), u.component(1).data(),
                           u.component(2).data(), out.component(0).data(),
                           out.component(1).data(), out.component(2).data(), v.voxel_count());
}

}  // namespace mxm
