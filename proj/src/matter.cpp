#include "mxm/matter.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace mxm {

void MatterModel::eval_domain(std::span<const PointContext> ctx, const MatterState& v,
                              const MatterState& u, MatterState& out) const {
  const std::size_t d = dim();
  std::vector<double> vp(d), fp(d);
  Vec6 up{};
  for (std::size_t p = 0; p < v.voxel_count(); ++p) {
    v.get(p, vp);
    for (std::size_t c = 0; c < 6; ++c) up[c] = u.value(c, p);
    eval(ctx[p], vp, up, fp);
    out.put(p, fp);
  }
}

std::vector<double> eval_F0(const MatterModel& model, const PointContext& ctx,
                            std::span<const double> v) {
  std::vector<double> out(model.dim());
  model.eval(ctx, v, Vec6{}, out);
  return out;
}

Eigen::MatrixXd eval_F1(const MatterModel& model, const PointContext& ctx,
                        std::span<const double> v) {
  const auto d = static_cast<Eigen::Index>(model.dim());
  const auto f0 = eval_F0(model, ctx, v);
  Eigen::MatrixXd m(d, 6);
  std::vector<double> f(model.dim());
  for (int k = 0; k < 6; ++k) {
    Vec6 e{};
    e[k] = 1.0;
    model.eval(ctx, v, e, f);
    for (Eigen::Index i = 0; i < d; ++i) m(i, k) = f[i] - f0[i];
  }
  return m;
}

// ---------------------------------------------------------------------------

LinearGrowthModel::LinearGrowthModel(double rate, double gamma, double coupling)
    : rate_(rate), gamma_(gamma), coupling_(coupling) {
  if (rate < 0.0) throw std::invalid_argument("linear growth: rate must be >= 0");
}

void LinearGrowthModel::eval(const PointContext&, std::span<const double> v, const Vec6& u,
                             std::span<double> out) const {
  const Vec3 m{v[0], v[1], v[2]};
  const Vec3 h{u[0], u[1], u[2]};
  const Vec3 c = cross(m, h);
  for (int a = 0; a < 3; ++a) out[a] = rate_ * m[a] + gamma_ * c[a];
}

void LinearGrowthModel::couple(const PointContext& ctx, std::span<const double> v, Vec3& l1v,
                               Vec3& l2v) const {
  for (int a = 0; a < 3; ++a) l1v[a] = -coupling_ * ctx.kappa1 * v[a];
  l2v = {0.0, 0.0, 0.0};
}

// ---------------------------------------------------------------------------

namespace {

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double e : x) s += e * e;
  return s;
}

std::vector<double> random_in_ball(std::mt19937_64& rng, std::size_t d, double radius) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<double> x(d);
  for (double& e : x) e = normal(rng);
  const double n = std::sqrt(norm2(x));
  const double r = radius * std::pow(uniform(rng), 1.0 / static_cast<double>(d));
  for (double& e : x) e *= n > 0.0 ? r / n : 0.0;
  return x;
}

// Frobenius norm of the central-difference Jacobian of g at v.
template <typename G>
double jacobian_norm(G&& g, std::vector<double> v, std::size_t out_dim) {
  const double h = 1e-6;
  double s = 0.0;
  std::vector<double> plus(out_dim), minus(out_dim);
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double keep = v[k];
    v[k] = keep + h;
    g(v, plus);
    v[k] = keep - h;
    g(v, minus);
    v[k] = keep;
    for (std::size_t i = 0; i < out_dim; ++i) {
      const double dfd = (plus[i] - minus[i]) / (2.0 * h);
      s += dfd * dfd;
    }
  }
  return std::sqrt(s);
}

}  // namespace

StructureReport check_structure(const MatterModel& model, std::size_t sample_count, double radius,
                                std::uint64_t seed, std::span<const PointContext> points) {
  StructureReport report;
  const std::size_t d = model.dim();
  const int j = model.field_slot();
  const PointContext fallback{};
  std::mt19937_64 rng(seed);
  std::vector<double> f(d), g(d), f0(d), fa(d), fb(d), fab(d);
  const std::vector<double> zero(d, 0.0);

  const auto fail = [&](const char* check, std::span<const double> v, const Vec6& u,
                        double value) {
    report.failures.push_back({check, std::vector<double>(v.begin(), v.end()), u, value});
  };

  for (std::size_t s = 0; s < sample_count; ++s) {
    const PointContext& ctx = points.empty() ? fallback : points[s % points.size()];
    const auto v = random_in_ball(rng, d, radius);
    const auto u_vec = random_in_ball(rng, 6, radius);
    const auto w_vec = random_in_ball(rng, 6, radius);
    Vec6 u{}, w{};
    std::copy(u_vec.begin(), u_vec.end(), u.begin());
    std::copy(w_vec.begin(), w_vec.end(), w.begin());

    // F(x, 0, u) = 0
    model.eval(ctx, zero, u, f);
    const double f_zero = std::sqrt(norm2(f));
    if (f_zero != 0.0) fail("zero_state", zero, u, f_zero);

    // F.v <= K |v|^2
    model.eval(ctx, v, u, f);
    const double v2 = norm2(v);
    double fv = 0.0;
    for (std::size_t i = 0; i < d; ++i) fv += f[i] * v[i];
    if (v2 > 0.0) report.k_empirical = std::max(report.k_empirical, fv / v2);
    if (fv > model.growth_constant() * v2 + 1e-12) fail("growth_bound", v, u, fv / v2);

    // Changing the unused slot leaves F unchanged, and l_{3-j} = 0.
    Vec6 swapped = u;
    const int off = j == 1 ? 3 : 0;
    for (int a = 0; a < 3; ++a) swapped[off + a] = w[off + a];
    model.eval(ctx, v, swapped, g);
    double diff = 0.0;
    for (std::size_t i = 0; i < d; ++i) diff = std::max(diff, std::abs(g[i] - f[i]));
    if (diff != 0.0) fail("decoupling", v, swapped, diff);
    Vec3 l1v{}, l2v{};
    model.couple(ctx, v, l1v, l2v);
    const double l_off = norm(j == 1 ? l2v : l1v);
    if (l_off != 0.0) fail("decoupling_coupling", v, u, l_off);

    // Affinity in u: F(u + w) - F(0) = (F(u) - F(0)) + (F(w) - F(0)).
    model.eval(ctx, v, Vec6{}, f0);
    model.eval(ctx, v, w, fb);
    Vec6 uw{};
    for (int k = 0; k < 6; ++k) uw[k] = u[k] + w[k];
    model.eval(ctx, v, uw, fab);
    double affine_err = 0.0, scale = 1.0;
    for (std::size_t i = 0; i < d; ++i) {
      affine_err = std::max(affine_err, std::abs((fab[i] - f0[i]) - ((f[i] - f0[i]) + (fb[i] - f0[i]))));
      scale = std::max({scale, std::abs(fab[i]), std::abs(f[i]), std::abs(fb[i])});
    }
    if (affine_err > 1e-12 * scale) fail("affinity", v, uw, affine_err);

    // C_F: sup |F_j(x, v)| + |d_v F_j(x, v)|
    const double f0_norm = std::sqrt(norm2(f0));
    const double df0 = jacobian_norm(
        [&](const std::vector<double>& x, std::vector<double>& out) {
          model.eval(ctx, x, Vec6{}, out);
        },
        v, d);
    const Eigen::MatrixXd f1 = eval_F1(model, ctx, v);
    const double df1 = jacobian_norm(
        [&](const std::vector<double>& x, std::vector<double>& out) {
          const Eigen::MatrixXd m = eval_F1(model, ctx, x);
          out.assign(m.data(), m.data() + m.size());
        },
        v, d * 6);
    report.c_f = std::max({report.c_f, f0_norm + df0, f1.norm() + df1});
    ++report.samples;
  }
  return report;
}

}  // namespace mxm
