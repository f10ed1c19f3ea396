#include "nhres/greens_indexes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nhres {

namespace {
constexpr double kPi = std::numbers::pi;
const cplx I(0.0, 1.0);

cplx psi(const AnyModel& model, double x, cplx k) {
  if (const auto* b = std::get_if<BoundaryModel>(&model)) return bm_scatter_eval(*b, x, k);
  return im_scatter(std::get<InteriorModel>(model), k, x);
}

cplx potential(const AnyModel& model, double x) {
  if (const auto* b = std::get_if<BoundaryModel>(&model)) return bm_potential(*b, x);
  return im_potential(std::get<InteriorModel>(model), x);
}

// one-sided derivative at x0 from f(x0 + j s h), j = 0..4
template <class F>
cplx one_sided(F f, double x0, double h, double s) {
  const double c[] = {-25.0, 48.0, -36.0, 16.0, -3.0};
  cplx d = 0.0;
  for (int j = 0; j < 5; ++j) d += c[j] * f(x0 + j * s * h);
  return s * d / (12.0 * h);
}

std::vector<cplx> moments(const AnyModel& model, cplx k0, double r, double x, double xp, const PoleOrderOptions& o) {
  std::vector<cplx> g(o.nodes);
  for (int i = 0; i < o.nodes; ++i) g[i] = green_at_k(model, x, xp, k0 + r * std::exp(I * (2 * kPi * i / o.nodes)));
  std::vector<cplx> m(o.max_moment + 1, 0.0);
  for (int j = 0; j <= o.max_moment; ++j) {
    cplx s = 0.0;
    for (int i = 0; i < o.nodes; ++i) s += std::exp(I * (2 * kPi * i * (j + 1) / o.nodes)) * g[i];
    m[j] = I * std::pow(r, j + 1) * s * (2 * kPi / o.nodes);
  }
  return m;
}

// smallest p with M_{p-1} != 0 and every later moment below tol |M_{p-1}| r^{j+1-p}; -1 if none
int order_from_moments(const std::vector<cplx>& m, double r, double tol) {
  const int J = static_cast<int>(m.size()) - 1;
  for (int p = 1; p <= J; ++p) {
    const double lead = std::abs(m[p - 1]);
    if (lead == 0.0) continue;
    bool ok = true;
    for (int j = p; j <= J && ok; ++j) ok = std::abs(m[j]) < tol * lead * std::pow(r, j + 1 - p);
    if (ok) return p;
  }
  return -1;
}
}  // namespace

cplx green_k(cplx E) {
  cplx k = std::sqrt(E);
  if (k.imag() < 0.0) k = -k;
  return k;
}

cplx green_at_k(const AnyModel& model, double x, double xp, cplx k) {
  if (k == cplx(0.0)) throw std::domain_error("green: k = 0");
  const double hi = std::max(x, xp), lo = std::min(x, xp);
  return (kPi * I / k) * psi(model, hi, k) * psi(model, lo, -k);
}

cplx green(const AnyModel& model, double x, double xp, cplx E) { return green_at_k(model, x, xp, green_k(E)); }

VerificationReport verify_green(const AnyModel& model, cplx E) {
  const double h = 1e-3;
  double worst_eq = 0.0, worst_jump = 0.0, worst_scale = 1.0;
  for (double xp : {-0.4, 0.2}) {
    for (double dx : {-1.3, 0.9, 2.1}) {
      const double x = xp + dx;
      auto G = [&](double t) { return green(model, t, xp, E); };
      const cplx d2 = (-G(x + 2 * h) + 16.0 * G(x + h) - 30.0 * G(x) + 16.0 * G(x - h) - G(x - 2 * h)) / (12.0 * h * h);
      const cplx res = -d2 + (potential(model, x) - E) * G(x);
      worst_eq = std::max(worst_eq, std::abs(res) / (1.0 + std::abs(G(x))));
    }
    auto right = [&](double t) { return green(model, t, xp, E); };
    const double hj = h / 4;
    const cplx dp = one_sided(right, xp, hj, 1.0), dm = one_sided(right, xp, hj, -1.0);
    // G' itself reaches 1e14 for large n and small |k|; -1 is then below double resolution
    const double scale = std::max({1.0, std::abs(dp), std::abs(dm)});
    worst_scale = std::max(worst_scale, scale);
    worst_jump = std::max(worst_jump, std::abs(dp - dm + 1.0) / scale);
  }
  const bool boundary = std::holds_alternative<BoundaryModel>(model);
  auto r = VerificationReport::numeric(boundary ? "greens.boundary_green" : "greens.interior_green",
                                       boundary ? "gf2" : "gf3", worst_eq, 1e-6);
  r.note("E_re", E.real()).note("E_im", E.imag());
  r.note("jump_scale", worst_scale);
  r.require("jump_residual", worst_jump);
  return r;
}

PoleOrderResult pole_order(const AnyModel& model, cplx k0, double r, const PoleOrderOptions& opt) {
  if (!(r > 0.0)) throw std::invalid_argument("pole_order: radius must be positive");
  if (opt.probes.empty()) throw std::invalid_argument("pole_order: no probe points");
  PoleOrderResult out;
  for (std::size_t i = 0; i < opt.probes.size(); ++i) {
    const auto [x, xp] = opt.probes[i];
    const auto m = moments(model, k0, r, x, xp, opt);
    if (i == 0)
      for (const auto& v : m) out.moment_abs.push_back(std::abs(v));
    const int p = order_from_moments(m, r, opt.tol);
    const int q = order_from_moments(m, r, opt.tol * 1e-2);
    if (p < 0 || p != q) throw AmbiguousOrderError("pole_order: contour moments do not separate");
    out.order = std::max(out.order, p);
  }
  return out;
}

VerificationReport verify_pole_order(const AnyModel& model, int expected, double r) {
  const bool boundary = std::holds_alternative<BoundaryModel>(model);
  const cplx k0 = boundary ? 0.0 : cplx(std::get<InteriorModel>(model).alpha);
  const int o1 = pole_order(model, k0, r).order;
  const int o2 = pole_order(model, k0, r / 2).order;
  auto rep = VerificationReport::numeric(boundary ? "greens.boundary_pole_order" : "greens.interior_pole_order",
                                         boundary ? "gf2" : "gf3", std::abs(o1 - expected), 0.0);
  rep.note("order", o1).note("order_half_radius", o2).note("radius", r);
  rep.require("radius_halving_change", std::abs(o2 - o1));
  return rep;
}

IndexTriple indexes(const AnyModel& model) {
  IndexTriple t;
  if (const auto* b = std::get_if<BoundaryModel>(&model)) {
    for (int l = 0; l < b->n; ++l) t.n1 += bm_classify(*b, l) == ChainClass::Normalizable;
    t.n2 = b->n > 0 ? static_cast<int>(eps_chain(*b, 0.5).series.size()) : 0;
    t.k_plane_order = pole_order(model, 0.0, 0.5).order;
    t.n3 = (t.k_plane_order - 1) / 2;  // E = 0 is a branch point; count in sqrt(E)
    return t;
  }
  const auto& m = std::get<InteriorModel>(model);
  // psi0 ~ 1/x is square integrable, psi1 is bounded and is not
  for (const auto& f : {tf_psi0(m), tf_psi1(m)}) t.n1 += f.decay_power > 0.5;
  t.n2 = 1;  // the interior limit scheme carries psi0 alone
  t.k_plane_order = pole_order(model, m.alpha, m.alpha / 4).order;
  // E - alpha^2 = (k - alpha)(k + alpha) is a local coordinate at k = alpha
  t.n3 = t.k_plane_order;
  return t;
}

IndexTriple expected_indexes(const AnyModel& model) {
  if (const auto* b = std::get_if<BoundaryModel>(&model)) return {(b->n + 1) / 2, b->n, b->n, 2 * b->n + 1};
  return {1, 1, 2, 2};
}

}  // namespace nhres
