#include "nhres/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

namespace nhres {

namespace {
using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
constexpr double kPi = std::numbers::pi;
const cplx I(0.0, 1.0);

struct Counted {
  const RealIntegrand& f;
  long* count;
  cplx operator()(double x) const {
    ++*count;
    cplx v = f(x);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw QuadratureError("non-finite integrand value at x = " + std::to_string(x));
    return v;
  }
};

cplx gk_single(const Counted& f, double a, double b, double* err, double* l1) {
  const cplx v = GK::integrate(f, a, b, 0, 0.0, err, l1);
  *err *= 0.5 * std::abs(b - a);  // boost leaves the non-adaptive error in [-1,1] units
  return v;
}

// below ~100 ulp of the panel's L1 norm the error estimate is roundoff; subdividing cannot help
constexpr double kRoundoff = 100.0 * std::numeric_limits<double>::epsilon();

struct Segment {
  double a, b;
  cplx v;
  double err, l1;
  int depth;
  bool operator<(const Segment& o) const { return err < o.err; }
};

// Global adaptive bisection: always split the worst segment. Segments at the roundoff floor, at max depth,
// or whose estimate stops shrinking after a few splits (evaluation noise) are frozen. Once the frozen
// error alone exceeds tol, the rest is refined only until it is negligible beside it.
void gk_global(const Counted& f, const std::vector<double>& edges, double tol, int max_depth, QuadResult& out) {
  std::priority_queue<Segment> active;
  double active_err = 0.0, frozen_err = 0.0;
  auto freeze = [&](const Segment& s) {
    out.value += s.v;
    out.l1 += s.l1;
    frozen_err += s.err;
  };
  auto settled = [&](const Segment& s) { return s.err <= kRoundoff * s.l1 || s.depth >= max_depth; };
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    Segment s{edges[i], edges[i + 1], 0.0, 0.0, 0.0, 0};
    s.v = gk_single(f, s.a, s.b, &s.err, &s.l1);
    if (settled(s)) freeze(s);
    else {
      active.push(s);
      active_err += s.err;
    }
  }
  while (!active.empty() && active_err > std::max(tol - frozen_err, 0.1 * frozen_err)) {
    const Segment s = active.top();
    active.pop();
    active_err -= s.err;
    const double mid = 0.5 * (s.a + s.b);
    Segment c[2] = {{s.a, mid, 0.0, 0.0, 0.0, s.depth + 1}, {mid, s.b, 0.0, 0.0, 0.0, s.depth + 1}};
    for (auto& k : c) k.v = gk_single(f, k.a, k.b, &k.err, &k.l1);
    const bool stalled = s.depth >= 6 && c[0].err + c[1].err > 0.8 * s.err;
    for (auto& k : c) {
      if (stalled || settled(k)) freeze(k);
      else {
        active.push(k);
        active_err += k.err;
      }
    }
    active_err = std::max(active_err, 0.0);
  }
  for (; !active.empty(); active.pop()) {
    out.value += active.top().v;
    out.l1 += active.top().l1;
  }
  out.error_estimate += active_err + frozen_err;
  if (active_err + frozen_err > tol) out.converged = false;
}

std::vector<double> panel_edges(double a, double b, const PanelPlan& plan, const std::vector<double>& breakpoints) {
  auto width = [&](double x) {
    return std::min(plan.h_cap, std::max(plan.h0, plan.growth * std::abs(x - plan.center)));
  };
  std::vector<double> e;
  const double c = std::clamp(plan.center, a, b);
  e.push_back(c);
  for (double x = c; x < b;) {
    x = std::min(b, x + width(x));
    e.push_back(x);
  }
  for (double x = c; x > a;) {
    x = std::max(a, x - width(x));
    e.push_back(x);
  }
  for (double p : breakpoints)
    if (p > a && p < b) e.push_back(p);
  std::sort(e.begin(), e.end());
  const double tiny = 1e-12 * std::max(1.0, b - a);
  std::vector<double> out;
  for (double x : e)
    if (out.empty() || x - out.back() > tiny) out.push_back(x);
  if (out.back() < b) out.back() = b;
  return out;
}

// finite differences of r(x) = f(x) e^{-ikx}
struct TailJet {
  cplx r, r1, r2;
};
TailJet tail_jet(const RealIntegrand& f, double k, double x, long& count) {
  const double h = std::max(1e-3, 1e-2 * std::abs(x));
  auto r = [&](double t) {
    ++count;
    return f(t) * std::exp(-I * k * t);
  };
  const cplx fm = r(x - h), f0 = r(x), fp = r(x + h);
  return {f0, (fp - fm) / (2.0 * h), (fp - 2.0 * f0 + fm) / (h * h)};
}
}  // namespace

QuadResult quad_gk(const RealIntegrand& f, double a, double b, double abs_tol, int max_depth) {
  QuadResult out;
  if (a == b) return out;
  Counted cf{f, &out.evaluations};
  gk_global(cf, {a, b}, abs_tol, max_depth, out);
  return out;
}

QuadResult quad_panels(const RealIntegrand& f, double a, double b, double abs_tol, const PanelPlan& plan,
                       const std::vector<double>& breakpoints) {
  QuadResult out;
  if (!(b > a)) return out;
  Counted cf{f, &out.evaluations};
  gk_global(cf, panel_edges(a, b, plan, breakpoints), abs_tol, 18, out);
  return out;
}

QuadResult quad_line(const RealIntegrand& f, double tol, double oscillation_k) {
  LineOptions opt;
  opt.tol = tol;
  opt.oscillation_k = oscillation_k;
  if (oscillation_k != 0.0) opt.plan.h_cap = std::min(opt.plan.h_cap, 2.0 * kPi / std::abs(oscillation_k));
  return quad_line(f, opt);
}

QuadResult quad_line(const RealIntegrand& f, const LineOptions& opt) {
  double X = opt.core_half_width;
  QuadResult out = quad_panels(f, -X, X, 0.5 * opt.tol, opt.plan, opt.breakpoints);
  const double k = opt.oscillation_k;

  if (k == 0.0) {
    auto right = [&](double t) { return f(X / t) * (X / (t * t)); };
    auto left = [&](double t) { return f(-X / t) * (X / (t * t)); };
    out += quad_gk(right, 0.0, 1.0, 0.25 * opt.tol);
    out += quad_gk(left, 0.0, 1.0, 0.25 * opt.tol);
    return out;
  }

  const cplx ik = I * k;
  for (;;) {
    TailJet jr = tail_jet(f, k, X, out.evaluations);
    TailJet jl = tail_jet(f, k, -X, out.evaluations);
    const double next = (std::abs(jr.r2) + std::abs(jl.r2)) / std::pow(std::abs(k), 3);
    const double bound = (std::abs(jr.r1) + std::abs(jl.r1)) / (k * k);
    if (std::max(next, bound) < 0.1 * opt.tol) {
      const cplx er = std::exp(ik * X), el = std::exp(-ik * X);
      out.value += er * (-jr.r / ik + jr.r1 / (ik * ik));
      out.value += el * (jl.r / ik - jl.r1 / (ik * ik));
      out.error_estimate += next;
      return out;
    }
    if (2.0 * X > opt.max_half_width)
      throw QuadratureError("quad_line: oscillatory tail expansion did not stabilise");
    out += quad_panels(f, X, 2.0 * X, 0.25 * opt.tol, opt.plan, opt.breakpoints);
    out += quad_panels(f, -2.0 * X, -X, 0.25 * opt.tol, opt.plan, opt.breakpoints);
    X *= 2.0;
  }
}

QuadResult quad_decaying(const RealIntegrand& f, double center, double tol, const PanelPlan& plan,
                         const std::vector<double>& breakpoints, double R0) {
  double R = R0;
  PanelPlan p = plan;
  p.center = center;
  QuadResult out = quad_panels(f, center - R, center + R, 0.5 * tol, p, breakpoints);
  for (int it = 0; it < 24; ++it) {
    QuadResult shell = quad_panels(f, center + R, center + 2 * R, 0.25 * tol, p, breakpoints);
    shell += quad_panels(f, center - 2 * R, center - R, 0.25 * tol, p, breakpoints);
    out += shell;
    R *= 2;
    if (std::abs(shell.value) < 0.1 * tol) return out;
  }
  throw QuadratureError("quad_decaying: integrand does not decay");
}

double smooth_window(double t) {
  t = std::abs(t);
  if (t <= 0.5) return 1.0;
  if (t >= 1.0) return 0.0;
  const double tau = 2.0 * t - 1.0;
  const double a = std::exp(-1.0 / tau), b = std::exp(-1.0 / (1.0 - tau));
  return b / (a + b);
}

RichardsonResult quad_periodic_richardson(const RealIntegrand& f, const RichardsonOptions& opt) {
  RichardsonResult res;
  PanelPlan plan = opt.plan;
  plan.center = opt.x0;
  QuadResult inner;  // unwindowed integral over |x - x0| < L/2
  double inner_radius = 0.0;
  double qerr = 0.0;
  for (int j = 0; j < opt.levels; ++j) {
    const double L = opt.n0 * std::ldexp(1.0, j) * opt.period;
    const double h = 0.5 * L;
    if (inner_radius == 0.0) {
      inner = quad_panels(f, opt.x0 - h, opt.x0 + h, 0.25 * opt.tol, plan, opt.breakpoints);
    } else {
      inner += quad_panels(f, opt.x0 + inner_radius, opt.x0 + h, 0.125 * opt.tol, plan, opt.breakpoints);
      inner += quad_panels(f, opt.x0 - h, opt.x0 - inner_radius, 0.125 * opt.tol, plan, opt.breakpoints);
    }
    inner_radius = h;
    auto fw = [&](double x) { return f(x) * smooth_window((x - opt.x0) / L); };
    QuadResult outer = quad_panels(fw, opt.x0 + h, opt.x0 + L, 0.125 * opt.tol, plan, opt.breakpoints);
    outer += quad_panels(fw, opt.x0 - L, opt.x0 - h, 0.125 * opt.tol, plan, opt.breakpoints);
    res.radii.push_back(L);
    res.raw.push_back(inner.value + outer.value);
    res.result.evaluations += outer.evaluations;
    res.result.converged = res.result.converged && inner.converged && outer.converged;
    qerr = inner.error_estimate + outer.error_estimate;
  }
  res.result.evaluations += inner.evaluations;

  // Richardson table in 1/L with ratio 2, order capped at max_order
  const int n = static_cast<int>(res.raw.size());
  std::vector<std::vector<cplx>> T(n);
  for (int j = 0; j < n; ++j) {
    T[j].push_back(res.raw[j]);
    for (int m = 1; m <= std::min(j, opt.max_order); ++m) {
      const double p = std::ldexp(1.0, m);
      T[j].push_back((p * T[j][m - 1] - T[j - 1][m - 1]) / (p - 1.0));
    }
  }
  const auto& last = T[n - 1];
  res.result.value = last.back();
  double extrap = 0.0;
  if (n >= 2) {
    const auto& prev = T[n - 2];
    extrap = std::abs(last.back() - prev[std::min<std::size_t>(prev.size(), last.size()) - 1]);
  }
  res.result.error_estimate = qerr + extrap;
  return res;
}

void ContourSpec::validate() const {
  if (!(A > 0.0) || !(eps > 0.0)) throw std::invalid_argument("ContourSpec: A and eps must be positive");
  if (eps >= A) throw std::invalid_argument("ContourSpec: eps must be below A");
  std::vector<double> c = centers;
  std::sort(c.begin(), c.end());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] - eps <= -A || c[i] + eps >= A) throw std::invalid_argument("ContourSpec: center too close to cutoff");
    if (i > 0 && c[i] - c[i - 1] <= 2 * eps) throw std::invalid_argument("ContourSpec: centers closer than 2 eps");
  }
}

QuadResult quad_arc(const ComplexIntegrand& f, double center, double eps, Deformation dir) {
  using GL = boost::math::quadrature::gauss<double, 20>;
  const double s = dir == Deformation::Up ? 1.0 : -1.0;
  QuadResult out;
  auto g = [&](double t) -> cplx {
    ++out.evaluations;
    const double th = kPi - t;
    const cplx k = center + eps * cplx(std::cos(th), s * std::sin(th));
    const cplx dk = eps * cplx(std::sin(th), -s * std::cos(th));
    cplx v = f(k);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw QuadratureError("pole on contour arc");
    return v * dk;
  };
  constexpr int panels = 16;
  cplx coarse = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double a = kPi * i / panels, b = kPi * (i + 1) / panels;
    out.value += GL::integrate(g, a, b);
  }
  for (int i = 0; i < panels / 2; ++i) coarse += GL::integrate(g, 2 * kPi * i / panels, 2 * kPi * (i + 1) / panels);
  out.error_estimate = std::abs(out.value - coarse);
  return out;
}

QuadResult quad_contour(const ComplexIntegrand& f, const ContourSpec& spec, double tol) {
  spec.validate();
  std::vector<double> c = spec.centers;
  std::sort(c.begin(), c.end());
  RealIntegrand fr = [&](double k) { return f(cplx(k, 0.0)); };
  PanelPlan plan{0.0, 0.25, 0.0, 0.5};
  QuadResult out;
  // quadrature nodes never touch the junctions, so probe them explicitly
  std::vector<double> junctions{-spec.A, spec.A};
  for (double ci : c) {
    junctions.push_back(ci - spec.eps);
    junctions.push_back(ci + spec.eps);
  }
  for (double k : junctions) {
    const cplx v = f(cplx(k, 0.0));
    ++out.evaluations;
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw QuadratureError("pole on contour at k = " + std::to_string(k));
  }
  double left = -spec.A;
  for (double ci : c) {
    out += quad_panels(fr, left, ci - spec.eps, tol / (2.0 * c.size() + 1), plan);
    out += quad_arc(f, ci, spec.eps, spec.direction);
    left = ci + spec.eps;
  }
  out += quad_panels(fr, left, spec.A, tol / (2.0 * c.size() + 1), plan);
  return out;
}

// ---------------------------------------------------------------- packets

cplx GaussianPacket::operator()(double k) const {
  cplx p = 0.0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) p = p * k + *it;
  const double s = (k - k0) / sigma;
  return p * std::exp(-s * s);
}

std::vector<cplx> GaussianPacket::taylor_at_zero(int order) const {
  // exp(a k + b k^2) series, times exp(-k0^2/sigma^2)
  const double a = 2.0 * k0 / (sigma * sigma), b = -1.0 / (sigma * sigma);
  std::vector<cplx> e(order + 1, 0.0);
  e[0] = std::exp(-k0 * k0 / (sigma * sigma));
  for (int n = 0; n < order; ++n) e[n + 1] = (a * e[n] + (n > 0 ? 2.0 * b * e[n - 1] : 0.0)) / double(n + 1);
  std::vector<cplx> out(order + 1, 0.0);
  for (int i = 0; i <= order; ++i)
    for (std::size_t j = 0; j < poly.size() && int(j) <= i; ++j) out[i] += poly[j] * e[i - j];
  return out;
}

cplx GaussianPacket::moment(int m, cplx y) const {
  // coefficients of k^m P(k) in powers of k, then in powers of s = k - k0
  std::vector<cplx> d(m + poly.size(), 0.0);
  for (std::size_t j = 0; j < poly.size(); ++j) d[j + m] = poly[j];
  const int deg = static_cast<int>(d.size()) - 1;
  std::vector<cplx> q(deg + 1, 0.0);
  for (int j = 0; j <= deg; ++j) {
    if (d[j] == cplx(0.0)) continue;
    for (int i = 0; i <= j; ++i) q[i] += d[j] * binomial(j, i).get_d() * std::pow(k0, j - i);
  }
  // M_0 = sigma sqrt(pi) e^{-sigma^2 y^2/4}, M_{j+1} = (sigma^2/2)(i y M_j + j M_{j-1})
  const double s2 = sigma * sigma;
  cplx Mprev = 0.0, M = sigma * std::sqrt(kPi) * std::exp(-s2 * y * y / 4.0);
  cplx sum = q[0] * M;
  for (int j = 0; j < deg; ++j) {
    cplx Mnext = 0.5 * s2 * (I * y * M + double(j) * Mprev);
    Mprev = M;
    M = Mnext;
    sum += q[j + 1] * M;
  }
  return sum * std::exp(I * k0 * y);
}

PacketTransform::PacketTransform(GaussianPacket g, ExpLaurent F, cplx z) : g_(std::move(g)), F_(std::move(F)), z_(z) {
  if (!(g_.sigma > 0.0)) throw std::invalid_argument("GaussianPacket: width must be positive");
  if (!F_.is_zero() && F_.min_k_power() < 0) throw std::invalid_argument("quad_packet: negative powers of k");
}

cplx PacketTransform::operator()(double x) const {
  const cplx u = x - z_;
  const cplx y = double(F_.phase_sign()) * u + double(F_.z_phase()) * z_;
  cplx sum = 0.0;
  for (const auto& [key, c] : F_.terms()) {
    cplx t = c.to_complex() * g_.moment(key.first, y);
    if (key.second != 0) t *= std::pow(u, key.second);
    sum += t;
  }
  if (F_.scale_power() != 0) sum *= std::pow(2.0 * kPi, -0.5 * F_.scale_power());
  return sum;
}

PacketTransform quad_packet(const GaussianPacket& g, const ExpLaurent& F, cplx z) { return {g, F, z}; }

}  // namespace nhres
