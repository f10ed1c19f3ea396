#pragma once

#include "nhres/exact_algebra.hpp"

#include <string_view>

namespace nhres {

inline constexpr int kMaxBoundaryOrder = 8;

// h_n = -d^2/dx^2 + n(n+1)/(x-z)^2
struct BoundaryModel {
  int n = 0;
  cplx z{0.0, 1.0};

  BoundaryModel() = default;
  BoundaryModel(int n_, cplx z_);
};

enum class ChainClass { Normalizable, BoundedNonNormalizable, Growing };
std::string_view to_string(ChainClass c);

cplx bm_potential(const BoundaryModel& model, cplx x);
// n(n+1)(x-z)^{-2}
ExpLaurent bm_potential_exact(int n);

// psi_{nl}; scale power 1 stands for the 1/sqrt(2pi) prefactor.
ExpLaurent bm_assoc(const BoundaryModel& model, int l);
ExpLaurent bm_assoc(int n, int l);
// phi_{nl}, the growing chain started by (x-z)^{n+1}
ExpLaurent bm_growing(const BoundaryModel& model, int l);
ExpLaurent bm_growing(int n, int l);

// k^n psi_n(x;k) from the explicit sum
ExpLaurent bm_scatter(const BoundaryModel& model);
ExpLaurent bm_scatter(int n);
// same function from the ladder i^n q_n^+ ... q_1^+ e^{ikx}/sqrt(2pi)
ExpLaurent bm_scatter_ladder(const BoundaryModel& model);
ExpLaurent bm_scatter_ladder(int n);

// (n+m)!/(2^m m! (n-m)!)
RationalComplex bm_scatter_coefficient(int n, int m);

ChainClass bm_classify(const BoundaryModel& model, int l);
ChainClass bm_classify(int n, int l);

// psi_n(x;k) numerically (divides bm_scatter by k^n).
cplx bm_scatter_eval(const BoundaryModel& model, cplx x, cplx k);

}  // namespace nhres
