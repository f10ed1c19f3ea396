#pragma once

#include "nhres/exact_algebra.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

namespace nhres {

using RealIntegrand = std::function<cplx(double)>;
using ComplexIntegrand = std::function<cplx(cplx)>;

struct QuadResult {
  cplx value{0.0, 0.0};
  double error_estimate = 0.0;
  double l1 = 0.0;  // integral of |f|, scale for relative residuals
  long evaluations = 0;
  bool converged = true;

  QuadResult& operator+=(const QuadResult& o) {
    value += o.value;
    error_estimate += o.error_estimate;
    l1 += o.l1;
    evaluations += o.evaluations;
    converged = converged && o.converged;
    return *this;
  }
};

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Adaptive 21-point Gauss-Kronrod on [a,b] with an absolute tolerance.
QuadResult quad_gk(const RealIntegrand& f, double a, double b, double abs_tol, int max_depth = 18);

// Panels of width growing away from `center`: h(x) = min(h_cap, max(h0, growth*|x-center|)).
struct PanelPlan {
  double center = 0.0;
  double h0 = 0.5;
  double growth = 0.125;
  double h_cap = 4.0;
};

// Sum of quad_gk over the panel plan on [a,b]; breakpoints are honoured as panel edges.
QuadResult quad_panels(const RealIntegrand& f, double a, double b, double abs_tol, const PanelPlan& plan,
                       const std::vector<double>& breakpoints = {});

// Whole real line, f = e^{i k x} r(x). With k = 0 the tails are folded onto (0,1] by x = X/t
// (needs r = O(x^-2)); otherwise two integration-by-parts passes give the tails.
QuadResult quad_line(const RealIntegrand& f, double tol, double oscillation_k);

struct LineOptions {
  double tol = 1e-8;
  double oscillation_k = 0.0;
  double core_half_width = 16.0;
  double max_half_width = 1 << 20;
  PanelPlan plan{};
  std::vector<double> breakpoints;
};
QuadResult quad_line(const RealIntegrand& f, const LineOptions& opt);

// f decays fast around `center`: integrate [center-R, center+R], doubling R until the
// outermost panels contribute below tol.
QuadResult quad_decaying(const RealIntegrand& f, double center, double tol, const PanelPlan& plan,
                         const std::vector<double>& breakpoints = {}, double R0 = 8.0);

// Slowly decaying integrands: smooth window of radius L = N*period around x0 for N = n0, 2n0, ...,
// then Richardson extrapolation in 1/L.
struct RichardsonOptions {
  double x0 = 0.0;
  double period = 1.0;
  int n0 = 4;
  int levels = 4;
  int max_order = 3;
  double tol = 1e-9;
  PanelPlan plan{};
  std::vector<double> breakpoints;
};
struct RichardsonResult {
  QuadResult result;
  std::vector<double> radii;
  std::vector<cplx> raw;  // windowed integrals per radius
};
RichardsonResult quad_periodic_richardson(const RealIntegrand& f, const RichardsonOptions& opt);

// C-infinity step: 1 on [0,1/2], 0 on [1,inf)
double smooth_window(double t);

enum class Deformation { Up, Down };

struct ContourSpec {
  double A = 10.0;
  double eps = 0.1;
  Deformation direction = Deformation::Up;
  std::vector<double> centers{0.0};

  void validate() const;
};

// Semicircle k = c + eps[cos(pi-t) +- i sin(pi-t)], t in [0,pi].
QuadResult quad_arc(const ComplexIntegrand& f, double center, double eps, Deformation dir);
QuadResult quad_contour(const ComplexIntegrand& f, const ContourSpec& spec, double tol);

// g(k) = P(k) exp(-(k-k0)^2/sigma^2)
struct GaussianPacket {
  double k0 = 0.0;
  double sigma = 1.0;
  std::vector<cplx> poly{1.0};

  cplx operator()(double k) const;
  // Taylor coefficients of g at k = 0 up to `order`
  std::vector<cplx> taylor_at_zero(int order) const;
  // int g(k) k^m e^{iky} dk for complex y
  cplx moment(int m, cplx y) const;
};

// x -> int g(k) F(x;k) dk in closed form
class PacketTransform {
 public:
  PacketTransform(GaussianPacket g, ExpLaurent F, cplx z);
  cplx operator()(double x) const;

 private:
  GaussianPacket g_;
  ExpLaurent F_;
  cplx z_;
};

PacketTransform quad_packet(const GaussianPacket& g, const ExpLaurent& F, cplx z);

}  // namespace nhres
