#include "nhres/biortho.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace nhres {

namespace {
constexpr double kPi = std::numbers::pi;
const cplx I(0.0, 1.0);

PanelPlan plan_for(double scale) { return PanelPlan{0.0, 0.5 / scale, 0.125, 2.0 / scale}; }

double packet_norm(const GaussianPacket& g) {
  auto f = [&](double k) { return cplx(std::norm(g(k))); };
  return std::sqrt(quad_gk(f, g.k0 - 12 * g.sigma, g.k0 + 12 * g.sigma, 1e-14).value.real());
}

QuadResult gaussian_line_integral(const RealIntegrand& f, double scale, double tol = 1e-11) {
  return quad_decaying(f, 0.0, tol, plan_for(scale), {}, 8.0 * scale);
}

// residual scale: the larger of the natural scale and the L1 norm of the integrand,
// below which cancellation makes the absolute value meaningless
double rel_scale(double natural, const QuadResult& q) { return std::max(natural, q.l1); }

// runs `compute` at cutoff scale 1 and 2, fills the report, adds the stability delta
template <class Compute, class Finish>
VerificationReport with_stability(const BiorthoOptions& opt, Compute compute, Finish finish) {
  const QuadResult q1 = compute(1.0);
  VerificationReport r = finish(q1);
  r.note("value_re", q1.value.real()).note("value_im", q1.value.imag());
  if (q1.l1 > 0.0) r.note("integrand_l1", q1.l1);
  if (opt.stability_check) {
    const QuadResult q2 = compute(2.0);
    const double delta = std::abs(q2.value - q1.value);
    r.require("stability_delta_rel", delta / rel_scale(std::max(1.0, std::abs(q1.value)), q1));
  }
  return r;
}
}  // namespace

ExpLaurent mutated_scatter(int n, double delta) {
  ExpLaurent f = bm_scatter(n);
  if (delta == 0.0 || n < 1) return f;
  ExpLaurent::Terms t = f.terms();
  t[{n - 1, -1}] *= RationalComplex(mpq_class(1.0 + delta));
  return {f.phase_sign(), f.z_phase(), f.scale_power(), std::move(t)};
}

VerificationReport overlap_zero(const BoundaryModel& model, int l, int lp, const BiorthoOptions& opt) {
  if (l < 0 || lp < 0 || l + lp > model.n - 1)
    throw std::invalid_argument("overlap_zero: requires l, l' >= 0 and l + l' <= n - 1");
  const ExpLaurent prod = bm_assoc(model, l) * bm_assoc(model, lp);
  auto f = [&](double x) { return prod.eval(x, 0.0, model.z); };
  auto compute = [&](double s) {
    LineOptions o;
    o.tol = 1e-12;
    o.core_half_width = 16.0 * s;
    o.plan = plan_for(s);
    return quad_line(f, o);
  };
  auto finish = [&](const QuadResult& q) {
    return VerificationReport::numeric("boundary.overlap_zero", "ort1", std::abs(q.value) / rel_scale(1.0, q),
                                       opt.tol_overlap)
        .note("n", model.n)
        .note("l", l)
        .note("l_prime", lp);
  };
  return with_stability(opt, compute, finish);
}

VerificationReport overlap_chain_scatter(const BoundaryModel& model, int l, const GaussianPacket& g,
                                         const BiorthoOptions& opt) {
  if (l < 0 || l > model.n - 1) throw std::invalid_argument("overlap_chain_scatter: requires 0 <= l <= n - 1");
  const ExpLaurent chain = bm_assoc(model, l);
  const PacketTransform T = quad_packet(g, bm_scatter(model), model.z);
  auto f = [&](double x) { return chain.eval(x, 0.0, model.z) * T(x); };
  const double gn = packet_norm(g);
  std::string rel = l == 0 ? "ort2" : (bm_classify(model, l) == ChainClass::Normalizable ? "ort3" : "ort3n");
  auto compute = [&](double s) { return gaussian_line_integral(f, s); };
  auto finish = [&](const QuadResult& q) {
    return VerificationReport::numeric("boundary.overlap_chain_scatter", rel, std::abs(q.value) / rel_scale(gn, q),
                                       opt.tol)
        .note("n", model.n)
        .note("l", l)
        .note("packet_norm", gn);
  };
  return with_stability(opt, compute, finish);
}

VerificationReport overlap_growing(const BoundaryModel& model, int l, const GaussianPacket& g,
                                   const BiorthoOptions& opt) {
  if (l < model.n) throw std::invalid_argument("overlap_growing: requires l >= n");
  const int j = 2 * l - 2 * model.n;
  const ExpLaurent chain = bm_assoc(model, l);
  // e^{-ikz} sits inside the k-smearing, as on the left-hand side of the relation
  const PacketTransform T = quad_packet(g, ExpLaurent::phase(0, -1) * bm_scatter(model), model.z);
  auto f = [&](double x) { return chain.eval(x, 0.0, model.z) * T(x); };
  const cplx target = g.taylor_at_zero(j)[j];  // g^{(j)}(0)/j!, j even
  const double natural = std::max(std::abs(target), packet_norm(g));
  auto compute = [&](double s) { return gaussian_line_integral(f, s); };
  auto finish = [&](const QuadResult& q) {
    return VerificationReport::numeric("boundary.overlap_growing", "ort7",
                                       std::abs(q.value - target) / rel_scale(natural, q), opt.tol)
        .note("n", model.n)
        .note("l", l)
        .note("derivative_order", j)
        .note("target_re", target.real())
        .note("convention", "e^{-ikz} inside the k-smearing");
  };
  return with_stability(opt, compute, finish);
}

cplx scatter_norm_target(int n, const GaussianPacket& g1, const GaussianPacket& g2) {
  const double lo = std::max(g1.k0 - 12 * g1.sigma, g2.k0 - 12 * g2.sigma);
  const double hi = std::min(g1.k0 + 12 * g1.sigma, g2.k0 + 12 * g2.sigma);
  if (!(hi > lo)) return 0.0;
  auto f = [&](double k) { return g1(k) * g2(k) * std::pow(k, 2 * n); };
  return quad_panels(f, lo, hi, 1e-14, PanelPlan{0.5 * (lo + hi), 0.05, 0.0, 0.05}).value;
}

namespace {
QuadResult scatter_norm_quad(const BoundaryModel& model, const GaussianPacket& g1, const GaussianPacket& g2,
                             double mutate, double cutoff_scale) {
  const ExpLaurent F = mutated_scatter(model.n, mutate);
  // (k')^n psi_n(x;-k') = (-1)^n [k^n psi_n](x;-k')
  const ExpLaurent Fm = RationalComplex(model.n % 2 ? -1 : 1) * el_reflect_k(F);
  const PacketTransform T1 = quad_packet(g1, F, model.z);
  const PacketTransform T2 = quad_packet(g2, Fm, model.z);
  auto f = [&](double x) { return T1(x) * T2(x); };
  return gaussian_line_integral(f, cutoff_scale);
}
}  // namespace

cplx scatter_norm_lhs(const BoundaryModel& model, const GaussianPacket& g1, const GaussianPacket& g2, double mutate,
                      double cutoff_scale) {
  return scatter_norm_quad(model, g1, g2, mutate, cutoff_scale).value;
}

VerificationReport scatter_norm(const BoundaryModel& model, const GaussianPacket& g1, const GaussianPacket& g2,
                                const BiorthoOptions& opt, double mutate) {
  const cplx target = scatter_norm_target(model.n, g1, g2);
  const double natural = std::max(std::abs(target), packet_norm(g1) * packet_norm(g2));
  auto compute = [&](double s) { return scatter_norm_quad(model, g1, g2, mutate, s); };
  auto finish = [&](const QuadResult& q) {
    auto r = VerificationReport::numeric("boundary.scatter_norm", "ort4",
                                         std::abs(q.value - target) / rel_scale(natural, q), opt.tol)
                 .note("n", model.n)
                 .note("target_re", target.real())
                 .note("target_im", target.imag());
    if (mutate != 0.0) r.note("mutation_delta", mutate);
    return r;
  };
  return with_stability(opt, compute, finish);
}

// ---------------------------------------------------------------- interior

std::string_view to_string(InteriorIdentity id) {
  switch (id) {
    case InteriorIdentity::Psi0Squared: return "psi0_squared";
    case InteriorIdentity::Psi0Psi1: return "psi0_psi1";
    case InteriorIdentity::Psi0Scatter: return "psi0_scatter";
    case InteriorIdentity::Psi1Scatter: return "psi1_scatter";
    case InteriorIdentity::ScatterNorm: return "scatter_norm";
  }
  return "?";
}

InteriorIdentity interior_identity_from_string(std::string_view s) {
  for (auto id : {InteriorIdentity::Psi0Squared, InteriorIdentity::Psi0Psi1, InteriorIdentity::Psi0Scatter,
                  InteriorIdentity::Psi1Scatter, InteriorIdentity::ScatterNorm})
    if (to_string(id) == s) return id;
  throw std::invalid_argument("unknown interior identity: " + std::string(s));
}

GaussianPacket interior_default_packet(const InteriorModel& model) { return GaussianPacket{model.alpha + 0.55, 0.1, {1.0}}; }

namespace {
// int g(k) k^m e^{iky} dk for m = 0,1,2 by fixed Gauss-Legendre panels
struct KMoments {
  cplx j0, j1, j2;
};
KMoments k_moments(const GaussianPacket& g, double y) {
  using GL = boost::math::quadrature::gauss<double, 20>;
  const double lo = g.k0 - 10 * g.sigma, hi = g.k0 + 10 * g.sigma;
  // about two oscillations per 20-point panel
  const int panels = 4 + static_cast<int>(std::ceil((hi - lo) * std::abs(y) / (4.0 * kPi)));
  const double h = (hi - lo) / panels;
  const auto& xs = GL::abscissa();
  const auto& ws = GL::weights();
  // node offsets are the same in every panel: e^{iky} = e^{icy} e^{i(k-c)y}
  std::vector<double> off;
  std::vector<cplx> ph;
  std::vector<double> wt;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (double sgn : {1.0, -1.0}) {
      if (sgn < 0 && xs[i] == 0.0) continue;
      off.push_back(sgn * 0.5 * h * xs[i]);
      ph.push_back(std::exp(I * off.back() * y));
      wt.push_back(0.5 * h * ws[i]);
    }
  KMoments r{0.0, 0.0, 0.0};
  for (int p = 0; p < panels; ++p) {
    const double c = lo + (p + 0.5) * h;
    const cplx pc = std::exp(I * c * y);
    cplx s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < off.size(); ++i) {
      const double k = c + off[i];
      const cplx w = wt[i] * g(k) * ph[i];
      s0 += w;
      s1 += w * k;
      s2 += w * k * k;
    }
    r.j0 += pc * s0;
    r.j1 += pc * s1;
    r.j2 += pc * s2;
  }
  return r;
}

// F_s(x) = int g(k) (k^2 - alpha^2) psi(x; s k) dk
cplx smeared_regularized(const InteriorModel& m, const GaussianPacket& g, double x, double s) {
  const WJet w = im_W_jet(m, x);
  const cplx u = w.w1 / w.w, v = w.w2 / w.w;
  const KMoments J = k_moments(g, s * x);
  return (J.j2 - m.alpha * m.alpha * J.j0 + I * s * u * J.j1 - 0.5 * v * J.j0) / std::sqrt(2.0 * kPi);
}
}  // namespace

VerificationReport interior_biortho(const InteriorModel& model, InteriorIdentity which, const GaussianPacket& g,
                                    const BiorthoOptions& opt) {
  const std::string id = "interior." + std::string(to_string(which));
  switch (which) {
    case InteriorIdentity::Psi0Squared:
    case InteriorIdentity::Psi0Psi1: {
      const bool sq = which == InteriorIdentity::Psi0Squared;
      auto f = [&](double x) { return im_psi0(model, x) * (sq ? im_psi0(model, x) : im_psi1(model, x)); };
      auto compute = [&](double s) {
        RichardsonOptions ro;
        ro.period = kPi / model.alpha;
        ro.n0 = static_cast<int>(8 * s);
        ro.levels = 6;
        ro.tol = 1e-12;
        ro.plan = PanelPlan{0.0, 0.25 / s, 0.0, 0.25 / s};
        QuadResult q = quad_periodic_richardson(f, ro).result;
        q.l1 = 0.0;  // no L1 scale for a conditionally convergent integral
        return q;
      };
      auto finish = [&](const QuadResult& q) {
        return VerificationReport::numeric(id, sq ? "ort11" : "ort11'", std::abs(q.value), opt.tol)
            .note("alpha", model.alpha);
      };
      return with_stability(opt, compute, finish);
    }
    case InteriorIdentity::Psi0Scatter:
    case InteriorIdentity::Psi1Scatter: {
      const bool p0 = which == InteriorIdentity::Psi0Scatter;
      const double gn = packet_norm(g);
      auto f = [&](double x) {
        return (p0 ? im_psi0(model, x) : im_psi1(model, x)) * smeared_regularized(model, g, x, 1.0);
      };
      auto compute = [&](double s) { return quad_decaying(f, 0.0, 1e-11, plan_for(s), {}, 16.0 * s); };
      auto finish = [&](const QuadResult& q) {
        return VerificationReport::numeric(id, p0 ? "ort11" : "ort11'", std::abs(q.value) / rel_scale(gn, q),
                                           opt.tol_interior)
            .note("alpha", model.alpha)
            .note("packet_k0", g.k0)
            .note("packet_width", g.sigma);
      };
      return with_stability(opt, compute, finish);
    }
    case InteriorIdentity::ScatterNorm: {
      const double a2 = model.alpha * model.alpha;
      auto tf = [&](double k) { return g(k) * g(k) * (k * k - a2) * (k * k - a2); };
      const cplx target =
          quad_panels(tf, g.k0 - 12 * g.sigma, g.k0 + 12 * g.sigma, 1e-14, PanelPlan{g.k0, 0.02, 0.0, 0.02}).value;
      const double natural = std::max(std::abs(target), packet_norm(g) * packet_norm(g));
      auto f = [&](double x) {
        return smeared_regularized(model, g, x, 1.0) * smeared_regularized(model, g, x, -1.0);
      };
      auto compute = [&](double s) { return quad_decaying(f, 0.0, 1e-11, plan_for(s), {}, 16.0 * s); };
      auto finish = [&](const QuadResult& q) {
        return VerificationReport::numeric(id, "ort12", std::abs(q.value - target) / rel_scale(natural, q),
                                           opt.tol_interior)
            .note("alpha", model.alpha)
            .note("target_re", target.real())
            .note("packet_k0", g.k0)
            .note("packet_width", g.sigma);
      };
      return with_stability(opt, compute, finish);
    }
  }
  throw std::invalid_argument("interior_biortho: unknown identity");
}

std::vector<VerificationReport> biortho_suite(const BoundaryModel& model, const BiorthoOptions& opt) {
  std::vector<VerificationReport> out;
  const int n = model.n;
  for (int l = 0; l < n; ++l)
    for (int lp = l; l + lp <= n - 1; ++lp) out.push_back(overlap_zero(model, l, lp, opt));
  const GaussianPacket g0{}, g1{1.0, 1.0, {1.0}};
  for (int l = 0; l < n; ++l) out.push_back(overlap_chain_scatter(model, l, g0, opt));
  for (int l = n; l <= n + 2; ++l) {
    out.push_back(overlap_growing(model, l, g0, opt));
    out.push_back(overlap_growing(model, l, g1, opt));
  }
  out.push_back(scatter_norm(model, g0, g0, opt));
  out.push_back(scatter_norm(model, g0, g1, opt));
  return out;
}

std::vector<VerificationReport> biortho_suite(const InteriorModel& model, const BiorthoOptions& opt) {
  std::vector<VerificationReport> out;
  const GaussianPacket bump = interior_default_packet(model);
  const GaussianPacket across{model.alpha, 0.5, {1.0}};
  out.push_back(interior_biortho(model, InteriorIdentity::Psi0Squared, bump, opt));
  out.push_back(interior_biortho(model, InteriorIdentity::Psi0Psi1, bump, opt));
  out.push_back(interior_biortho(model, InteriorIdentity::Psi0Scatter, across, opt));
  out.push_back(interior_biortho(model, InteriorIdentity::Psi1Scatter, across, opt));
  out.push_back(interior_biortho(model, InteriorIdentity::ScatterNorm, bump, opt));
  return out;
}

}  // namespace nhres
