#include "nhres/interior_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nhres {

namespace {
const cplx I(0.0, 1.0);
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

// u = W'/W, v = W''/W and their first two derivatives
struct LogJet {
  cplx u, u1, u2, v, v1, v2;
};

LogJet log_jet(const InteriorModel& m, double x) {
  const WJet j = im_W_jet(m, x);
  LogJet r;
  r.u = j.w1 / j.w;
  r.v = j.w2 / j.w;
  const cplx t3 = j.w3 / j.w;
  const cplx t4 = j.w4 / j.w;
  r.u1 = r.v - r.u * r.u;
  r.v1 = t3 - r.u * r.v;
  r.u2 = t3 - r.v * r.u - 2.0 * r.u * r.u1;
  r.v2 = t4 - r.u * t3 - r.u1 * r.v - r.u * r.v1;
  return r;
}

// f = N/W given N, N', N''
PointEval quotient(cplx n0, cplx n1, cplx n2, const WJet& j) {
  PointEval r;
  r.value = n0 / j.w;
  r.d1 = (n1 - r.value * j.w1) / j.w;
  r.d2 = (n2 - 2.0 * r.d1 * j.w1 - r.value * j.w2) / j.w;
  return r;
}

// (B0 + a u + b v) e^{ikx} / sqrt(2pi)
PointEval bracket_wave(const InteriorModel& m, cplx k, double x, cplx B0, cplx a, cplx b) {
  const LogJet L = log_jet(m, x);
  const cplx B = B0 + a * L.u + b * L.v;
  const cplx B1 = a * L.u1 + b * L.v1;
  const cplx B2 = a * L.u2 + b * L.v2;
  const cplx e = kInvSqrt2Pi * std::exp(I * k * x);
  return {e * B, e * (B1 + I * k * B), e * (B2 + 2.0 * I * k * B1 - k * k * B)};
}

void check_pole(const InteriorModel& m, cplx k) {
  if (k * k == cplx(m.alpha * m.alpha)) throw std::domain_error("im_scatter: pole at k = +-alpha");
}
}  // namespace

InteriorModel::InteriorModel(double alpha_, cplx z_) : alpha(alpha_), z(z_) {
  if (!(alpha > 0.0)) throw std::invalid_argument("InteriorModel: alpha must be positive");
  if (z.imag() == 0.0) throw std::invalid_argument("InteriorModel: Im z must be nonzero");
}

cplx im_W(const InteriorModel& m, double x) {
  return std::sin(2.0 * m.alpha * x) + 2.0 * m.alpha * (x - m.z);
}

WJet im_W_jet(const InteriorModel& m, double x) {
  const double a = m.alpha;
  const double s = std::sin(2.0 * a * x), c = std::cos(2.0 * a * x);
  return {s + 2.0 * a * (x - m.z), 2.0 * a * c + 2.0 * a, -4.0 * a * a * s, -8.0 * a * a * a * c,
          16.0 * a * a * a * a * s};
}

cplx im_potential(const InteriorModel& m, double x) {
  const double a = m.alpha;
  const cplx w = im_W(m, x);
  const double ca = std::cos(a * x);
  return 16.0 * a * a * (a * (x - m.z) * std::sin(2.0 * a * x) + 2.0 * ca * ca) / (w * w);
}

PointEval im_scatter_jet(const InteriorModel& m, cplx k, double x) {
  check_pole(m, k);
  const cplx d = k * k - m.alpha * m.alpha;
  return bracket_wave(m, k, x, 1.0, I * k / d, -0.5 / d);
}

cplx im_scatter(const InteriorModel& m, cplx k, double x) { return im_scatter_jet(m, k, x).value; }

PointEval im_scatter_regularized_jet(const InteriorModel& m, cplx k, double x) {
  return bracket_wave(m, k, x, k * k - m.alpha * m.alpha, I * k, -0.5);
}

cplx im_scatter_regularized(const InteriorModel& m, cplx k, double x) {
  return im_scatter_regularized_jet(m, k, x).value;
}

PointEval im_psi0_jet(const InteriorModel& m, double x) {
  const double a = m.alpha;
  const double c0 = std::pow(2.0 * a, 1.5);
  const double ca = std::cos(a * x), sa = std::sin(a * x);
  return quotient(c0 * ca, -a * c0 * sa, -a * a * c0 * ca, im_W_jet(m, x));
}

PointEval im_psi1_jet(const InteriorModel& m, double x) {
  const double a = m.alpha;
  const double ca = std::cos(a * x), sa = std::sin(a * x);
  const cplx u = x - m.z;
  const double s = 1.0 / std::sqrt(2.0 * a);
  const cplx n0 = 2.0 * a * u * sa + ca;
  const cplx n1 = a * sa + 2.0 * a * a * u * ca;
  const cplx n2 = 3.0 * a * a * ca - 2.0 * a * a * a * u * sa;
  return quotient(s * n0, s * n1, s * n2, im_W_jet(m, x));
}

cplx im_psi0(const InteriorModel& m, double x) { return im_psi0_jet(m, x).value; }
cplx im_psi1(const InteriorModel& m, double x) { return im_psi1_jet(m, x).value; }

cplx im_residual(const InteriorModel& m, double x, const PointEval& f, cplx E) {
  return -f.d2 + (im_potential(m, x) - E) * f.value;
}

}  // namespace nhres
