#pragma once

#include "nhres/exact_algebra.hpp"

namespace nhres {

struct InteriorModel {
  double alpha = 1.0;
  cplx z{0.0, 1.0};

  InteriorModel() = default;
  InteriorModel(double alpha_, cplx z_);
};

// value with first and second x-derivatives
struct PointEval {
  cplx value;
  cplx d1;
  cplx d2;
};

cplx im_W(const InteriorModel& m, double x);
// W, W', W'', W''', W''''
struct WJet {
  cplx w, w1, w2, w3, w4;
};
WJet im_W_jet(const InteriorModel& m, double x);

cplx im_potential(const InteriorModel& m, double x);

// psi(x;k); throws at k = +-alpha
cplx im_scatter(const InteriorModel& m, cplx k, double x);
PointEval im_scatter_jet(const InteriorModel& m, cplx k, double x);
// (k^2 - alpha^2) psi(x;k), finite for every k
cplx im_scatter_regularized(const InteriorModel& m, cplx k, double x);
PointEval im_scatter_regularized_jet(const InteriorModel& m, cplx k, double x);

cplx im_psi0(const InteriorModel& m, double x);
cplx im_psi1(const InteriorModel& m, double x);
PointEval im_psi0_jet(const InteriorModel& m, double x);
PointEval im_psi1_jet(const InteriorModel& m, double x);

// -f'' + V f - E f
cplx im_residual(const InteriorModel& m, double x, const PointEval& f, cplx E);

}  // namespace nhres
