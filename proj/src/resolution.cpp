#include "nhres/resolution.hpp"

#include <gsl/gsl_sf_expint.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace nhres {

namespace {
constexpr double kPi = std::numbers::pi;
const cplx I(0.0, 1.0);

struct SchemeInfo {
  SchemeId id;
  const char* name;
  ModelKind kind;
  bool exact;
  bool n2;
};

constexpr SchemeInfo kSchemes[] = {
    {SchemeId::RES3, "RES3", ModelKind::Boundary, true, false},
    {SchemeId::RES5, "RES5", ModelKind::Boundary, false, false},
    {SchemeId::INT5, "INT5", ModelKind::Boundary, false, false},
    {SchemeId::RES9, "RES9", ModelKind::Boundary, true, true},
    {SchemeId::RES7, "RES7", ModelKind::Boundary, false, true},
    {SchemeId::RES10, "RES10", ModelKind::Boundary, false, true},
    {SchemeId::RES6, "RES6", ModelKind::Boundary, false, true},
    {SchemeId::RES13, "RES13", ModelKind::Interior, true, false},
    {SchemeId::RES11, "RES11", ModelKind::Interior, false, false},
    {SchemeId::RES12, "RES12", ModelKind::Interior, false, false},
    {SchemeId::INT04, "INT04", ModelKind::Interior, false, false},
};

const SchemeInfo& info(SchemeId s) {
  for (const auto& e : kSchemes)
    if (e.id == s) return e;
  throw std::invalid_argument("unknown scheme");
}

double sgn(double v) { return (v > 0) - (v < 0); }

// kernels are bounded at x = x' but Ci diverges there; step off the diagonal
double off_diagonal(double D) { return D == 0.0 ? 1e-12 : D; }
}  // namespace

std::string_view to_string(SchemeId s) { return info(s).name; }
std::string_view to_string(ModelKind k) { return k == ModelKind::Boundary ? "boundary" : "interior"; }

SchemeId scheme_from_string(std::string_view s) {
  std::string u(s);
  for (auto& c : u) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (const auto& e : kSchemes)
    if (u == e.name) return e.id;
  throw std::invalid_argument("unknown scheme: " + std::string(s));
}

ModelKind scheme_model(SchemeId s) { return info(s).kind; }
bool scheme_is_exact(SchemeId s) { return info(s).exact; }
bool scheme_requires_n2(SchemeId s) { return info(s).n2; }

const std::vector<SchemeId>& all_schemes() {
  static const std::vector<SchemeId> v = [] {
    std::vector<SchemeId> out;
    for (const auto& e : kSchemes) out.push_back(e.id);
    return out;
  }();
  return v;
}

// ---------------------------------------------------------------- coefficients

RationalComplex coeff_C(int l, int m, int n) {
  if (n < 1 || l < 1 || l > 2 * n - 1 || m < 0 || m > std::min(l - 1, n - 1))
    throw std::invalid_argument("coeff_C: index out of range");
  mpz_class s = 0;
  for (int j = 0; j <= m; ++j) {
    mpz_class t = binomial(l, j) * binomial(n - m - 1 + 2 * j, l - 1);
    if (j % 2) s -= t;
    else s += t;
  }
  return RationalComplex(mpq_class(s, l));
}

std::vector<mpq_class> beta_seq(int count) {
  if (count < 1) throw std::invalid_argument("beta_seq: count must be positive");
  std::vector<mpq_class> b{mpq_class(1)};
  for (int l = 1; l < count; ++l) {
    mpq_class s(1, 2 * l + 1);
    for (int j = 1; j < l; ++j) s -= b[j] * b[l - j];
    s /= 2;
    s.canonicalize();
    b.push_back(s);
  }
  return b;
}

// ---------------------------------------------------------------- bivariate

Bivariate::Bivariate(Terms t) : terms_(std::move(t)) { canonicalize(); }

void Bivariate::canonicalize() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second.is_zero()) it = terms_.erase(it);
    else ++it;
  }
}

Bivariate& Bivariate::operator+=(const Bivariate& o) {
  for (const auto& [k, c] : o.terms_) terms_[k] += c;
  canonicalize();
  return *this;
}

Bivariate operator*(const RationalComplex& c, const Bivariate& b) {
  Bivariate r;
  for (const auto& [k, v] : b.terms_) r.terms_[k] = c * v;
  r.canonicalize();
  return r;
}

std::string Bivariate::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ") t^" << std::get<0>(k) << " X^" << std::get<1>(k) << " X'^" << std::get<2>(k);
  }
  return os.str();
}

namespace {
// psi_{nl}(x) psi_{nl'}(x') as a bivariate monomial with t-power k
Bivariate chain_product(int n, int l, int lp, int k, const RationalComplex& c) {
  const ExpLaurent a = bm_assoc(n, l), b = bm_assoc(n, lp);
  const auto& [ka, ca] = *a.terms().begin();
  const auto& [kb, cb] = *b.terms().begin();
  return Bivariate(Bivariate::Terms{{{k, ka.second, kb.second}, c * ca * cb}});
}

}  // namespace

// ---------------------------------------------------------------- eps chain

EpsChain eps_chain(int n, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps_chain: eps must be positive");
  if (n < 1) throw std::invalid_argument("eps_chain: requires n >= 1");
  EpsChain c;
  c.n = n;
  c.eps = eps;
  const auto beta = beta_seq(n);
  const RationalComplex pre = RationalComplex::i_pow(n + 1);
  for (int l = 0; l < n; ++l) {
    std::vector<ExpLaurent> row;
    for (int j = 0; j <= l; ++j) row.push_back(pre * RationalComplex(beta[j]) * bm_assoc(n, l - j));
    c.series.push_back(std::move(row));
  }
  return c;
}

EpsChain eps_chain(const BoundaryModel& model, double eps) { return eps_chain(model.n, eps); }

cplx EpsChain::eval(int l, double x, cplx z) const {
  const double t = 1.0 / (eps * eps);
  cplx s = 0.0;
  double tp = 1.0;
  for (const auto& term : series.at(l)) {
    s += tp * term.eval(x, 0.0, z);
    tp *= t;
  }
  return std::sqrt(2.0 / eps) * s;
}

bool EpsChain::chain_property_holds() const {
  // compare power by power in t
  for (int l = 0; l < n; ++l) {
    const auto& row = series[l];
    for (std::size_t j = 0; j < row.size(); ++j) {
      const ExpLaurent lhs = el_apply_h(row[j], n);
      const ExpLaurent rhs = (l >= 1 && j < series[l - 1].size()) ? series[l - 1][j] : ExpLaurent{};
      if (!(lhs == rhs)) return false;
    }
  }
  return true;
}

Bivariate equ21_lhs(int n) {
  // eps * i^{2n+2} (2/eps) sum beta_j beta_j' t^{j+j'} psi_{n,l-j}(x) psi_{n,n-1-l-j'}(x')
  const auto beta = beta_seq(n);
  const RationalComplex pre = RationalComplex(2) * RationalComplex::i_pow(2 * n + 2);
  Bivariate out;
  for (int l = 0; l < n; ++l)
    for (int j = 0; j <= l; ++j)
      for (int jp = 0; jp <= n - 1 - l; ++jp)
        out += chain_product(n, l - j, n - 1 - l - jp, j + jp, pre * RationalComplex(beta[j] * beta[jp]));
  return out;
}

Bivariate equ21_rhs(int n) {
  // eps * eps^{-(2n-2l-1)} = t^{n-l-1}
  Bivariate out;
  const RationalComplex sign(n % 2 ? 2 : -2);
  for (int l = 0; l < n; ++l)
    for (int m = 0; m <= l; ++m)
      out += chain_product(n, m, l - m, n - l - 1, sign / RationalComplex(2 * n - 2 * l - 1));
  return out;
}

VerificationReport verify_equ21(int n) {
  const Bivariate a = equ21_lhs(n), b = equ21_rhs(n);
  auto r = VerificationReport::exact("resolution.outer_product", "equ21", a == b);
  r.note("n", n);
  if (!(a == b)) r.note("lhs", a.str()).note("rhs", b.str());
  return r;
}

VerificationReport verify_sys23(int n) {
  // alpha_j alpha_{l-j} = 2 i^{2n+2} beta_j beta_{l-j} eps^{-(2l+1)}; compare coefficients of eps^{-(2l+1)}
  const auto beta = beta_seq(n);
  bool ok = true;
  for (int l = 0; l < n; ++l) {
    RationalComplex lhs = 0;
    for (int j = 0; j <= l; ++j) lhs += RationalComplex(2) * RationalComplex::i_pow(2 * n + 2) * RationalComplex(beta[j] * beta[l - j]);
    const RationalComplex rhs = RationalComplex(n % 2 ? 2 : -2) / RationalComplex(2 * l + 1);
    ok = ok && lhs == rhs;
    // exponent bookkeeping: -(2j + 1/2) - (2(l-j) + 1/2) = -(2l+1) for every j, nothing to check numerically
  }
  return VerificationReport::exact("resolution.beta_system", "sys23", ok).note("n", n);
}

// ---------------------------------------------------------------- kernels

cplx kernel_P(int j, double D, double a) {
  if (j < 1) throw std::invalid_argument("kernel_P: j >= 1");
  if (!(a > 0.0)) throw std::invalid_argument("kernel_P: a > 0");
  const double y = a * std::abs(D);
  if (y >= 40.0) {
    // asymptotic series from repeated integration by parts; upward recursion loses ~y^{j-1} here
    cplx term = I * std::pow(a, -j) / D, sum = 0.0;
    // stop at the smallest term, the series is only asymptotic
    for (int r = 0; std::abs(term) > 1e-18 * std::abs(sum) && j + r < y; ++r) {
      sum += term;
      term *= -I * double(j + r) / (a * D);
    }
    return std::exp(I * a * D) * sum;
  }
  cplx p = y > 0.0 ? cplx(-gsl_sf_Ci(y), sgn(D) * (kPi / 2 - gsl_sf_Si(y)))
                   : cplx(std::numeric_limits<double>::infinity(), 0.0);
  for (int q = 2; q <= j; ++q) {
    const cplx head = std::exp(I * a * D) * std::pow(a, 1 - q) / double(q - 1);
    p = D == 0.0 ? head : head + (I * D / double(q - 1)) * p;
  }
  return p;
}

cplx kernel_I(int j, double D, double eps) {
  D = off_diagonal(D);
  return kernel_P(j, D, eps) + (j % 2 ? -1.0 : 1.0) * kernel_P(j, -D, eps);
}

namespace {

// precomputed numbers for one boundary (n, z, eps)
class BoundaryKernel {
 public:
  BoundaryKernel(int n, cplx z, double eps) : n_(n), z_(z), eps_(eps) {
    if (n < 1) throw std::invalid_argument("boundary schemes need n >= 1");
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    for (int m = 0; m <= n; ++m) c_.push_back((bm_scatter_coefficient(n, m) * RationalComplex::i_pow(m)).to_complex());
    // RES3 blocks
    for (int l = 0; l < n; ++l) {
      std::vector<double> row;
      for (int m = 0; m <= std::min(2 * l, n - 1); ++m)
        row.push_back(coeff_C(2 * l + 1, m, n).to_complex().real() *
                      mpq_class(factorial(n + 2 * l + 1 - m), factorial(n - 1 - m)).get_d());
      odd_.push_back(row);
    }
    for (int l = 1; l < n; ++l) {
      std::vector<double> row;
      for (int m = 0; m <= std::min(2 * l - 1, n - 1); ++m)
        row.push_back(coeff_C(2 * l, m, n).to_complex().real() *
                      mpq_class(factorial(n + 2 * l - m), factorial(n - 1 - m)).get_d());
      even_.push_back(row);
    }
    chain_ = eps_chain(n, eps);
  }

  cplx regular(double x, double xp) const {
    const double D = off_diagonal(x - xp);
    const cplx X = x - z_, Xp = xp - z_;
    std::vector<cplx> a(2 * n_ + 1, 0.0);
    std::vector<cplx> xm(n_ + 1), xpm(n_ + 1);
    xm[0] = xpm[0] = 1.0;
    for (int m = 1; m <= n_; ++m) {
      xm[m] = xm[m - 1] / X;
      xpm[m] = xpm[m - 1] / Xp;
    }
    for (int m = 0; m <= n_; ++m)
      for (int mp = 0; mp <= n_; ++mp) a[m + mp] += c_[m] * c_[mp] * (mp % 2 ? -1.0 : 1.0) * xm[m] * xpm[mp];
    cplx v = -std::sin(eps_ * D) / (kPi * D);
    for (int j = 1; j <= 2 * n_; ++j) v += a[j] * kernel_I(j, D, eps_) / (2 * kPi);
    return v;
  }

  cplx res3_out(double x, double xp) const {
    const double D = off_diagonal(x - xp);
    const cplx X = x - z_, Xp = xp - z_, r = Xp / X;
    const double e = eps_;
    cplx s2 = 0.0;
    for (int l = 0; l < n_; ++l) {
      cplx inner = 0.0, rm = 1.0;
      for (double coef : odd_[l]) {
        inner += coef * rm;
        rm *= r;
      }
      s2 += std::pow(-0.25, l) / (std::pow(e, 2 * l) * std::pow(Xp, 2 * l)) * inner;
    }
    cplx s3 = 0.0;
    for (int l = 1; l < n_; ++l) {
      cplx inner = 0.0, rm = 1.0;
      for (double coef : even_[l - 1]) {
        inner += coef * rm;
        rm *= r;
      }
      s3 += std::pow(-0.25, l) / (std::pow(e, 2 * l) * std::pow(Xp, 2 * l)) * inner;
    }
    return std::sin(e * D) / (kPi * D) - std::cos(e * D) / (2 * kPi * e * X * Xp) * s2 +
           std::sin(e * D) / (kPi * X) * s3;
  }

  cplx pair(double x, double xp) const {
    cplx s = 0.0;
    for (int l = 0; l < n_; ++l) s += chain_.eval(l, x, z_) * chain_.eval(n_ - 1 - l, xp, z_);
    return s;
  }

  cplx out(SchemeId s, double x, double xp) const {
    const double D = off_diagonal(x - xp), e = eps_;
    const cplx X = x - z_, Xp = xp - z_;
    auto sinc = [&] { return std::sin(e * D) / (kPi * D); };
    auto t_sin2 = [&] { return 6.0 * std::pow(std::sin(e * D / 2), 2) / (kPi * e * X * Xp); };
    auto t_a = [&] {
      return 12.0 * D * std::pow(std::sin(e * D / 4), 2) * std::sin(e * D / 2) / (kPi * e * e * X * X * Xp * Xp);
    };
    auto t_b = [&] {
      const double q = e * D - 2.0 * std::sin(e * D / 2);
      return 3.0 * q * q / (2.0 * kPi * e * e * e * X * X * Xp * Xp);
    };
    switch (s) {
      case SchemeId::RES3: return res3_out(x, xp);
      case SchemeId::RES5: return res3_out(x, xp) - sinc();
      case SchemeId::INT5: return pair(x, xp);
      case SchemeId::RES9: return pair(x, xp) + sinc() + t_sin2() + t_a() + t_b();
      case SchemeId::RES7: return pair(x, xp) + t_sin2() + t_a() + t_b();
      case SchemeId::RES10: return pair(x, xp) + t_a() + t_b();
      case SchemeId::RES6: return pair(x, xp);
      default: throw std::invalid_argument("not a boundary scheme");
    }
  }

 private:
  int n_;
  cplx z_;
  double eps_;
  std::vector<cplx> c_;
  std::vector<std::vector<double>> odd_, even_;
  EpsChain chain_;
};

struct LogJet {
  cplx u, v;
};
LogJet log_jet(const InteriorModel& m, double x) {
  const WJet w = im_W_jet(m, x);
  return {w.w1 / w.w, w.w2 / w.w};
}

// P_1 and P_2 at one (D, a); P_j(-D; a) is the conjugate
std::pair<cplx, cplx> kernel_P12(double D, double a) {
  const cplx p1 = kernel_P(1, D, a);
  return {p1, std::exp(I * a * D) / a + I * D * p1};
}

class InteriorKernel {
 public:
  InteriorKernel(const InteriorModel& m, double eps) : m_(m), eps_(eps) {
    if (!(eps > 0.0) || !(eps < m.alpha)) throw std::invalid_argument("interior schemes need 0 < eps < alpha");
  }

  cplx regular(double x, double xp) const {
    const double D = off_diagonal(x - xp), al = m_.alpha;
    const LogJet a = log_jet(m_, x), b = log_jet(m_, xp);
    const cplx p0 = a.u * b.u - (a.v + b.v) / 2.0, p1 = a.u - b.u;
    const cplx q0 = al * al * a.u * b.u + a.v * b.v / 4.0, q1 = (b.u * a.v - a.u * b.v) / 2.0;
    const cplx bm1 = p0 / (2 * al) + I * p1 / 2.0 - q0 / (4 * al * al * al);
    const cplx bp1 = -p0 / (2 * al) + I * p1 / 2.0 + q0 / (4 * al * al * al);
    const cplx bm2 = q0 / (4 * al * al) + I * q1 / (4 * al);
    const cplx bp2 = q0 / (4 * al * al) - I * q1 / (4 * al);
    cplx v = -(2 / kPi) * std::cos(al * D) * std::sin(eps_ * D) / D;
    // int over the punctured line of e^{ikD}(k -+ al)^{-p}, p = 1, 2
    const auto [e1, e2] = kernel_P12(D, eps_);
    const auto [l1, l2] = kernel_P12(D, 2 * al - eps_);
    const auto [h1, h2] = kernel_P12(D, 2 * al + eps_);
    const cplx I1 = e1 - std::conj(e1), I2 = e2 + std::conj(e2);
    const cplx wp1 = l1 - h1, wp2 = l2 - h2;                           // pole at -al
    const cplx wm1 = -std::conj(l1 - h1), wm2 = std::conj(l2 - h2);  // pole at +al
    const cplx ph = std::exp(I * al * D);
    v += (ph * (bm1 * (I1 - wm1) + bm2 * (I2 - wm2)) + std::conj(ph) * (bp1 * (I1 - wp1) + bp2 * (I2 - wp2))) /
         (2 * kPi);
    return v;
  }

  cplx out(SchemeId s, double x, double xp) const {
    const double D = off_diagonal(x - xp), al = m_.alpha, e = eps_;
    const cplx f0 = im_psi0(m_, x) * im_psi0(m_, xp);
    const double s2 = std::pow(std::sin(e * D / 2), 2);
    switch (s) {
      case SchemeId::RES13: {
        const double d = 4 * al * al - e * e;
        cplx v = (2 / kPi) * std::cos(al * D) * std::sin(e * D) / D;
        v -= f0 / (kPi * al) *
             ((1 - 2 * s2) / e - e / d * std::cos(2 * al * D) * std::cos(e * D) -
              2 * al / d * std::sin(2 * al * D) * std::sin(e * D));
        // int_{2a-e}^{2a+e} cos(tD) dt / t
        const double ci = gsl_sf_Ci((2 * al + e) * std::abs(D)) - gsl_sf_Ci((2 * al - e) * std::abs(D));
        v -= (im_psi0(m_, x) * im_psi1(m_, xp) + im_psi1(m_, x) * im_psi0(m_, xp)) / kPi * ci;
        return v;
      }
      case SchemeId::RES11: return -(1 - 2 * s2) * f0 / (kPi * e * al);
      case SchemeId::RES12:
      case SchemeId::INT04: return -f0 / (kPi * e * al);
      default: throw std::invalid_argument("not an interior scheme");
    }
  }

 private:
  InteriorModel m_;
  double eps_;
};

}  // namespace

cplx boundary_kernel_regular(int n, cplx z, double x, double xp, double eps) {
  return BoundaryKernel(n, z, eps).regular(x, xp);
}

cplx interior_kernel_regular(const InteriorModel& m, double x, double xp, double eps) {
  return InteriorKernel(m, eps).regular(x, xp);
}

cplx scheme_out_term(SchemeId s, int n, cplx z, double x, double xp, double eps) {
  if (scheme_model(s) != ModelKind::Boundary) throw std::invalid_argument("scheme is not a boundary scheme");
  if (scheme_requires_n2(s) && n != 2) throw std::invalid_argument("scheme is written for n = 2");
  return BoundaryKernel(n, z, eps).out(s, x, xp);
}

cplx scheme_out_term(SchemeId s, const InteriorModel& m, double x, double xp, double eps) {
  if (scheme_model(s) != ModelKind::Interior) throw std::invalid_argument("scheme is not an interior scheme");
  return InteriorKernel(m, eps).out(s, x, xp);
}

// ---------------------------------------------------------------- test functions

TestFunction tf_gaussian(double center, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("test function width must be positive");
  TestFunction t;
  std::ostringstream os;
  os << "gaussian(" << center << "," << width << ")";
  t.name = os.str();
  t.center = center;
  t.width = width;
  t.f = [center, width](double x) {
    const double s = (x - center) / width;
    return cplx(std::exp(-s * s));
  };
  return t;
}

TestFunction tf_hermite_gaussian(int order, double center, double width) {
  if (order < 0) throw std::invalid_argument("hermite order must be nonnegative");
  TestFunction t = tf_gaussian(center, width);
  std::ostringstream os;
  os << "hermite" << order << "(" << center << "," << width << ")";
  t.name = os.str();
  t.f = [order, center, width](double x) {
    const double s = (x - center) / width;
    return cplx(std::hermite(static_cast<unsigned>(order), s) * std::exp(-s * s));
  };
  return t;
}

TestFunction tf_rational(double p, double center, double width) {
  if (!(p > 0.0) || !(width > 0.0)) throw std::invalid_argument("rational test function needs p > 0, width > 0");
  TestFunction t;
  std::ostringstream os;
  os << "rational" << p << "(" << center << "," << width << ")";
  t.name = os.str();
  t.decay = DecayClass::Algebraic;
  t.decay_power = p;
  t.center = center;
  t.width = width;
  t.f = [p, center, width](double x) {
    const double s = (x - center) / width;
    return cplx(std::pow(1.0 + s * s, -0.5 * p));
  };
  return t;
}

TestFunction tf_chain(const BoundaryModel& m, int l) {
  if (l < 0) throw std::invalid_argument("chain index must be nonnegative");
  TestFunction t;
  t.name = "psi_" + std::to_string(m.n) + std::to_string(l);
  const int p = m.n - 2 * l;
  t.decay_power = p;
  t.decay = p > 0 ? DecayClass::Algebraic : DecayClass::Bounded;
  const ExpLaurent e = bm_assoc(m, l);
  const cplx z = m.z;
  t.f = [e, z](double x) { return e.eval(x, 0.0, z); };
  return t;
}

TestFunction tf_scatter(const BoundaryModel& m, double k) {
  if (k == 0.0) throw std::invalid_argument("scattering test function needs k != 0");
  TestFunction t;
  std::ostringstream os;
  os << "psi_" << m.n << "(k=" << k << ")";
  t.name = os.str();
  t.decay = DecayClass::Bounded;
  t.decay_power = 0.0;
  t.f = [m, k](double x) { return bm_scatter_eval(m, x, k); };
  return t;
}

TestFunction tf_psi0(const InteriorModel& m) {
  TestFunction t;
  t.name = "psi0";
  t.decay = DecayClass::Algebraic;
  t.decay_power = 1.0;
  t.f = [m](double x) { return im_psi0(m, x); };
  return t;
}

TestFunction tf_psi1(const InteriorModel& m) {
  TestFunction t;
  t.name = "psi1";
  t.decay = DecayClass::Bounded;
  t.decay_power = 0.0;
  t.f = [m](double x) { return im_psi1(m, x); };
  return t;
}

namespace {
std::vector<double> parse_numbers(std::string_view s) {
  std::vector<double> out;
  std::string item;
  std::istringstream is{std::string(s)};
  while (std::getline(is, item, ',')) {
    std::size_t pos = 0;
    const double v = std::stod(item, &pos);
    if (pos != item.size()) throw std::invalid_argument("bad number: " + item);
    out.push_back(v);
  }
  return out;
}
}  // namespace

TestFunction parse_test_function(std::string_view spec, const BoundaryModel* bm, const InteriorModel* im) {
  const auto colon = spec.find(':');
  const std::string head(spec.substr(0, colon));
  std::vector<double> args;
  try {
    if (colon != std::string_view::npos) args = parse_numbers(spec.substr(colon + 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("bad test function arguments: " + std::string(spec));
  }
  auto arg = [&](std::size_t i, double def) { return i < args.size() ? args[i] : def; };
  if (head == "gaussian") return tf_gaussian(arg(0, 0.0), arg(1, 1.0));
  if (head == "hermite") return tf_hermite_gaussian(static_cast<int>(arg(0, 1)), arg(1, 0.0), arg(2, 1.0));
  if (head == "rational") return tf_rational(arg(0, 2.0), arg(1, 0.0), arg(2, 1.0));
  if (head == "psi_nl" || head == "chain") {
    if (!bm) throw std::invalid_argument("psi_nl test function needs the boundary model");
    return tf_chain(*bm, static_cast<int>(arg(0, 0)));
  }
  if (head == "scatter") {
    if (!bm) throw std::invalid_argument("scatter test function needs the boundary model");
    return tf_scatter(*bm, arg(0, 1.0));
  }
  if (head == "psi0" || head == "psi1") {
    if (!im) throw std::invalid_argument(head + " test function needs the interior model");
    return head == "psi0" ? tf_psi0(*im) : tf_psi1(*im);
  }
  throw std::invalid_argument("unknown test function: " + std::string(spec));
}

// ---------------------------------------------------------------- applying schemes

namespace {
QuadResult integrate_against(const RealIntegrand& g, const TestFunction& f, double xp, double eps, double min_period,
                             const ApplyOptions& opt) {
  const double hcap = std::min(2.0, min_period / 4.0);
  if (f.decay == DecayClass::Fast) {
    PanelPlan plan{f.center, std::min(0.25, f.width / 4.0), 0.125, hcap};
    const double R0 = 8.0 * f.width + std::abs(xp - f.center);
    return quad_decaying(g, f.center, opt.tol, plan, {xp}, R0);
  }
  RichardsonOptions ro;
  ro.x0 = xp;
  ro.period = 2.0 * kPi / eps;
  ro.n0 = std::max(1, static_cast<int>(std::ceil(opt.coupling_c / (2.0 * kPi))));
  ro.levels = opt.levels;
  ro.tol = opt.tol;
  ro.plan = PanelPlan{xp, 0.25, 0.125, hcap};
  ro.breakpoints = {xp};
  return quad_periodic_richardson(g, ro).result;
}
}  // namespace

ApplyResult apply_scheme(SchemeId s, const AnyModel& model, double eps, const TestFunction& f, double xp,
                         const ApplyOptions& opt) {
  ApplyResult r;
  r.target = f(xp);
  QuadResult q;
  if (scheme_model(s) == ModelKind::Boundary) {
    const auto* bm = std::get_if<BoundaryModel>(&model);
    if (!bm) throw std::invalid_argument("scheme needs the boundary model");
    if (scheme_requires_n2(s) && bm->n != 2) throw std::invalid_argument("scheme is written for n = 2");
    const BoundaryKernel K(bm->n, bm->z, eps);
    auto g = [&](double x) { return f(x) * (K.regular(x, xp) + K.out(s, x, xp)); };
    q = integrate_against(g, f, xp, eps, 2.0 * kPi / eps, opt);
  } else {
    const auto* im = std::get_if<InteriorModel>(&model);
    if (!im) throw std::invalid_argument("scheme needs the interior model");
    const InteriorKernel K(*im, eps);
    auto g = [&](double x) { return f(x) * (K.regular(x, xp) + K.out(s, x, xp)); };
    q = integrate_against(g, f, xp, eps, kPi / (im->alpha + eps), opt);
  }
  r.value = r.target + q.value;
  r.error = std::abs(r.value - r.target);
  r.quad_error = q.error_estimate;
  r.evaluations = q.evaluations;
  return r;
}

std::vector<SweepPoint> sweep_scheme(SchemeId s, const AnyModel& model, const std::vector<double>& eps_grid,
                                     const TestFunction& f, double xp, const ApplyOptions& opt) {
  std::vector<double> grid = eps_grid;
  std::sort(grid.begin(), grid.end(), std::greater<>());
  std::vector<SweepPoint> out;
  for (double e : grid) out.push_back({e, apply_scheme(s, model, e, f, xp, opt)});
  return out;
}

bool errors_decrease(const std::vector<SweepPoint>& sweep, double slack) {
  if (sweep.size() < 2) return false;
  for (std::size_t i = 1; i < sweep.size(); ++i)
    if (sweep[i].result.error > (1.0 + slack) * sweep[i - 1].result.error) return false;
  return sweep.back().result.error < sweep.front().result.error;
}

// ---------------------------------------------------------------- singular terms

Psi20Terms reproduce_psi20_terms(const BoundaryModel& model, double eps, double xp) {
  if (model.n != 2) throw std::invalid_argument("reproduce_psi20_terms: requires n = 2");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  const cplx z = model.z;
  const ExpLaurent p20 = bm_assoc(model, 0);
  const cplx norm = p20.eval(xp, 0.0, z);
  const cplx Xp = xp - z;
  auto ta = [&](double x) {
    const double D = x - xp;
    const cplx X = x - z;
    return 12.0 * D * std::pow(std::sin(eps * D / 4), 2) * std::sin(eps * D / 2) / (kPi * eps * eps * X * X * Xp * Xp) *
           p20.eval(x, 0.0, z);
  };
  auto tb = [&](double x) {
    const double D = x - xp, q = eps * D - 2.0 * std::sin(eps * D / 2);
    const cplx X = x - z;
    return 3.0 * q * q / (2.0 * kPi * eps * eps * eps * X * X * Xp * Xp) * p20.eval(x, 0.0, z);
  };
  RichardsonOptions ro;
  ro.x0 = xp;
  ro.period = 4.0 * kPi / eps;
  ro.n0 = 4;
  ro.levels = 5;
  ro.tol = 1e-11;
  ro.plan = PanelPlan{xp, 0.25, 0.125, std::max(0.25, ro.period / 32.0)};
  return {quad_periodic_richardson(ta, ro).result.value / norm, quad_periodic_richardson(tb, ro).result.value / norm};
}

cplx reproduce_psi0_term(const InteriorModel& model, double eps, double xp) {
  if (!(eps > 0.0) || !(eps < model.alpha)) throw std::invalid_argument("reproduce_psi0_term: needs 0 < eps < alpha");
  const double al = model.alpha;
  // the psi0(x') factor cancels against the normalization
  auto g = [&](double x) {
    const cplx p = im_psi0(model, x);
    return 2.0 / (kPi * eps * al) * std::pow(std::sin(eps * (x - xp) / 2), 2) * p * p;
  };
  RichardsonOptions ro;
  ro.x0 = xp;
  ro.period = 2.0 * kPi / eps;
  ro.n0 = 2;
  ro.levels = 4;
  ro.tol = 1e-9;
  ro.plan = PanelPlan{xp, 0.25, 0.125, kPi / (4.0 * al)};
  return quad_periodic_richardson(g, ro).result.value;
}

VerificationReport psi1_expandability(const InteriorModel& model, double eps_min, double xp, const ApplyOptions& opt) {
  std::vector<double> grid;
  for (double e = 0.4; e >= eps_min * (1.0 - 1e-9); e /= 2) grid.push_back(e);
  if (grid.empty()) throw std::invalid_argument("psi1_expandability: eps_min above 0.4");
  const TestFunction p1 = tf_psi1(model), gauss = tf_gaussian(0.0, 1.0);
  // O(1) errors are being measured; a loose tolerance keeps the small-eps windows affordable
  ApplyOptions o = opt;
  o.tol = std::max(opt.tol, 1e-6);
  double worst = 0.0, floor = INFINITY;
  VerificationReport r = VerificationReport::numeric("resolution.psi1_expandability", "res12", 0.0, 0.1);
  std::vector<double> e1s;
  for (double e : grid) {
    const double e1 = apply_scheme(SchemeId::RES12, model, e, p1, xp, o).error;
    const double eg = apply_scheme(SchemeId::RES12, model, e, gauss, xp, o).error;
    e1s.push_back(e1);
    floor = std::min(floor, e1);
    worst = std::max(worst, eg / e1);
    std::ostringstream key;
    key << "eps=" << format_number(e);
    r.note(key.str() + " psi1_error", e1).note(key.str() + " gaussian_error", eg);
  }
  r.note("psi1_floor", floor);
  r.require("max_control_over_psi1", worst);
  // the floor must not be drifting to zero: last error within a factor 2 of the previous one
  if (e1s.size() >= 2) r.note("last_step_ratio", e1s.back() / e1s[e1s.size() - 2]);
  return r;
}

// ---------------------------------------------------------------- contour form of the base resolution

cplx contour_kernel(const AnyModel& model, double x, double xp, double A, double eps, Deformation dir) {
  ContourSpec spec;
  spec.A = A;
  spec.eps = eps;
  spec.direction = dir;
  ComplexIntegrand f;
  if (const auto* bm = std::get_if<BoundaryModel>(&model)) {
    spec.centers = {0.0};
    f = [bm, x, xp](cplx k) { return bm_scatter_eval(*bm, x, k) * bm_scatter_eval(*bm, xp, -k); };
  } else {
    const auto& im = std::get<InteriorModel>(model);
    spec.centers = {-im.alpha, im.alpha};
    f = [im, x, xp](cplx k) { return im_scatter(im, k, x) * im_scatter(im, -k, xp); };
  }
  return quad_contour(f, spec, 1e-12).value;
}

VerificationReport verify_deformation_invariance(const AnyModel& model, double A, double eps) {
  const std::pair<double, double> pts[] = {{0.3, -0.2}, {1.1, 0.4}, {-2.0, 1.5}, {0.0, 0.0}};
  double worst = 0.0;
  for (auto [x, xp] : pts) {
    const cplx up = contour_kernel(model, x, xp, A, eps, Deformation::Up);
    const cplx down = contour_kernel(model, x, xp, A, eps, Deformation::Down);
    worst = std::max(worst, std::abs(up - down) / std::max(1.0, std::abs(up)));
  }
  const bool boundary = std::holds_alternative<BoundaryModel>(model);
  return VerificationReport::numeric("resolution.deformation_invariance", boundary ? "res1" : "res01", worst, 1e-8)
      .note("A", A)
      .note("eps", eps);
}

}  // namespace nhres
