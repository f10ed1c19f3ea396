#pragma once

#include "nhres/boundary_model.hpp"
#include "nhres/interior_model.hpp"
#include "nhres/report.hpp"
#include "nhres/resolution.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace nhres {

struct AmbiguousOrderError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// k = sqrt(E) with Im k >= 0
cplx green_k(cplx E);
// (pi i / k) psi(x_>; k) psi(x_<; -k); throws std::domain_error at the singular k
cplx green(const AnyModel& model, double x, double xp, cplx E);
// the same with k given directly
cplx green_at_k(const AnyModel& model, double x, double xp, cplx k);

// (h - E)G = 0 off the diagonal and the unit jump of dG/dx across it, by finite differences
VerificationReport verify_green(const AnyModel& model, cplx E);

struct PoleOrderOptions {
  double tol = 1e-9;   // vanishing threshold for moments, relative to the last nonzero one
  int max_moment = 24;
  int nodes = 512;     // trapezoid nodes on the circle
  std::vector<std::pair<double, double>> probes{{0.7, -0.4}, {1.3, 0.2}};
};

struct PoleOrderResult {
  int order = 0;
  std::vector<double> moment_abs;  // |M_j| at the first probe
};

// order of the pole of G(x, x'; k^2) at k = k0 from contour moments M_j = oint (k-k0)^j G dk;
// the largest order over the probe points, throws AmbiguousOrderError if tol and tol/100 disagree
PoleOrderResult pole_order(const AnyModel& model, cplx k0, double r, const PoleOrderOptions& opt = {});
// pole_order at r and r/2; reports the order and whether they agree
VerificationReport verify_pole_order(const AnyModel& model, int expected, double r);

struct IndexTriple {
  int n1 = 0;
  int n2 = 0;
  int n3 = 0;
  int k_plane_order = 0;  // raw k-plane order at the exceptional point
  friend bool operator==(const IndexTriple& a, const IndexTriple& b) {
    return a.n1 == b.n1 && a.n2 == b.n2 && a.n3 == b.n3;
  }
};

IndexTriple indexes(const AnyModel& model);
// closed forms: boundary (floor((n+1)/2), n, n), interior (1, 1, 2)
IndexTriple expected_indexes(const AnyModel& model);

}  // namespace nhres
