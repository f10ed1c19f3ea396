#pragma once

#include "nhres/boundary_model.hpp"
#include "nhres/exact_algebra.hpp"
#include "nhres/interior_model.hpp"
#include "nhres/quadrature.hpp"
#include "nhres/report.hpp"

#include <functional>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

namespace nhres {

// ---------------------------------------------------------------- schemes

enum class SchemeId { RES3, RES5, INT5, RES9, RES7, RES10, RES6, RES13, RES11, RES12, INT04 };
enum class ModelKind { Boundary, Interior };

std::string_view to_string(SchemeId s);
std::string_view to_string(ModelKind k);
SchemeId scheme_from_string(std::string_view s);  // case-insensitive, throws std::invalid_argument
ModelKind scheme_model(SchemeId s);
// RES3, RES9 and RES13 hold at every eps; the others only in the limit
bool scheme_is_exact(SchemeId s);
// RES9/RES7/RES10/RES6 are written for n = 2 only
bool scheme_requires_n2(SchemeId s);
const std::vector<SchemeId>& all_schemes();

// ---------------------------------------------------------------- coefficients

// C_{lmn} = (1/l) sum_j (-1)^j binom(l,j) binom(n-m-1+2j, l-1)
RationalComplex coeff_C(int l, int m, int n);
// beta_0 = 1 branch
std::vector<mpq_class> beta_seq(int count);

// ---------------------------------------------------------------- eps chain

// Functions of (x, x') that are finite sums c * t^k (x-z)^p (x'-z)^q, t = 1/eps^2,
// times an overall (2 pi)^{-1} and a common power of eps carried outside.
class Bivariate {
 public:
  using Key = std::tuple<int, int, int>;  // (k, p, q)
  using Terms = std::map<Key, RationalComplex>;

  Bivariate() = default;
  explicit Bivariate(Terms t);
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Bivariate& operator+=(const Bivariate& o);
  friend Bivariate operator*(const RationalComplex& c, const Bivariate& b);
  friend bool operator==(const Bivariate& a, const Bivariate& b) { return a.terms_ == b.terms_; }
  std::string str() const;

 private:
  void canonicalize();
  Terms terms_;
};

// psi_{nl}(x;eps) = i^{n+1} sqrt(2/eps) sum_j beta_j t^j psi_{n,l-j}(x)
struct EpsChain {
  int n = 0;
  double eps = 1.0;
  // series[l][j] = i^{n+1} beta_j psi_{n,l-j}, coefficient of sqrt(2/eps) t^j
  std::vector<std::vector<ExpLaurent>> series;

  cplx eval(int l, double x, cplx z) const;
  // exact: h_n psi_{n0}(eps) = 0, h_n psi_{nl}(eps) = psi_{n,l-1}(eps)
  bool chain_property_holds() const;
};

EpsChain eps_chain(const BoundaryModel& model, double eps);
EpsChain eps_chain(int n, double eps);

// outer product sum_l psi_{nl}(x;eps) psi_{n,n-1-l}(x';eps), times eps (both sides carry 1/eps)
Bivariate equ21_lhs(int n);
// -2(-1)^n sum_l eps^{-(2n-2l-1)} sum_m psi_{nm}(x) psi_{n,l-m}(x'), times eps
Bivariate equ21_rhs(int n);
VerificationReport verify_equ21(int n);
// sum_j alpha_j alpha_{l-j} = -2(-1)^n / ((2l+1) eps^{2l+1}) with alpha_j = sqrt2 i^{n+1} eps^{-2j-1/2} beta_j
VerificationReport verify_sys23(int n);

// ---------------------------------------------------------------- kernels

// P_j(D;a) = int_a^inf e^{ikD} k^{-j} dk, a > 0
cplx kernel_P(int j, double D, double a);
// I_j(D;eps) = int_{|k|>eps} e^{ikD} k^{-j} dk
cplx kernel_I(int j, double D, double eps);

// punctured k-integral of psi_n(x;k) psi_n(x';-k) minus the free delta part
cplx boundary_kernel_regular(int n, cplx z, double x, double xp, double eps);
cplx interior_kernel_regular(const InteriorModel& m, double x, double xp, double eps);
// the scheme's terms outside the k-integral
cplx scheme_out_term(SchemeId s, int n, cplx z, double x, double xp, double eps);
cplx scheme_out_term(SchemeId s, const InteriorModel& m, double x, double xp, double eps);

// ---------------------------------------------------------------- test functions

enum class DecayClass { Fast, Algebraic, Bounded };

struct TestFunction {
  std::string name;
  DecayClass decay = DecayClass::Fast;
  double decay_power = std::numeric_limits<double>::infinity();  // |f| ~ |x|^{-p}
  double center = 0.0;
  double width = 1.0;
  std::function<cplx(double)> f;

  cplx operator()(double x) const { return f(x); }
  // largest gamma with f in L2((1+|x|)^gamma), i.e. 2p - 1 (exclusive)
  double gamma_bound() const { return 2.0 * decay_power - 1.0; }
};

TestFunction tf_gaussian(double center = 0.0, double width = 1.0);
TestFunction tf_hermite_gaussian(int order, double center = 0.0, double width = 1.0);
// (1 + ((x-c)/w)^2)^{-p/2}
TestFunction tf_rational(double p, double center = 0.0, double width = 1.0);
TestFunction tf_chain(const BoundaryModel& m, int l);
TestFunction tf_scatter(const BoundaryModel& m, double k);
TestFunction tf_psi0(const InteriorModel& m);
TestFunction tf_psi1(const InteriorModel& m);

// "gaussian[:c,w]", "hermite:k[,c,w]", "rational:p[,c,w]", "psi_nl:l", "psi0", "psi1", "scatter:k"
TestFunction parse_test_function(std::string_view spec, const BoundaryModel* bm, const InteriorModel* im);

// ---------------------------------------------------------------- applying schemes

using AnyModel = std::variant<BoundaryModel, InteriorModel>;

struct ApplyOptions {
  double coupling_c = 50.0;  // initial x-window half-width L0 = c/eps for slowly decaying f
  double tol = 1e-10;        // absolute quadrature tolerance
  int levels = 4;            // window doublings for slowly decaying f
};

struct ApplyResult {
  cplx value;
  cplx target;  // f(x')
  double error = 0.0;  // |value - target|
  double quad_error = 0.0;
  long evaluations = 0;
};

ApplyResult apply_scheme(SchemeId s, const AnyModel& model, double eps, const TestFunction& f, double xp,
                         const ApplyOptions& opt = {});

struct SweepPoint {
  double eps;
  ApplyResult result;
};
std::vector<SweepPoint> sweep_scheme(SchemeId s, const AnyModel& model, const std::vector<double>& eps_grid,
                                     const TestFunction& f, double xp, const ApplyOptions& opt = {});
// trend verdict: errors shrink along the sweep (last below first, every ratio below 1 + slack)
bool errors_decrease(const std::vector<SweepPoint>& sweep, double slack = 0.05);

// ---------------------------------------------------------------- singular terms

struct Psi20Terms {
  cplx c1, c2;  // divided by psi_20(x')
};
Psi20Terms reproduce_psi20_terms(const BoundaryModel& model, double eps, double xp = 0.4);
cplx reproduce_psi0_term(const InteriorModel& model, double eps, double xp = 0.0);

VerificationReport psi1_expandability(const InteriorModel& model, double eps_min, double xp = 1.7,
                                      const ApplyOptions& opt = {});

// ---------------------------------------------------------------- base resolution on a contour

// int over the deformed path of psi(x;k) psi(x';-k) dk, |k| < A, semicircles of radius eps
cplx contour_kernel(const AnyModel& model, double x, double xp, double A, double eps, Deformation dir);
VerificationReport verify_deformation_invariance(const AnyModel& model, double A = 8.0, double eps = 0.25);

}  // namespace nhres
