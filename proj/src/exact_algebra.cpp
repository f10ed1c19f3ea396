#include "nhres/exact_algebra.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace nhres {

RationalComplex::RationalComplex(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

RationalComplex RationalComplex::ratio(long num, long den) {
  if (den == 0) throw std::invalid_argument("RationalComplex::ratio: zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return {q, 0};
}

RationalComplex RationalComplex::i() { return {0, 1}; }

RationalComplex RationalComplex::i_pow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

std::string RationalComplex::str() const {
  std::ostringstream os;
  if (sgn(im_) == 0) {
    os << re_.get_str();
  } else if (sgn(re_) == 0) {
    os << im_.get_str() << "i";
  } else {
    os << "(" << re_.get_str() << (sgn(im_) > 0 ? "+" : "") << im_.get_str() << "i)";
  }
  return os.str();
}

RationalComplex& RationalComplex::operator+=(const RationalComplex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

RationalComplex& RationalComplex::operator-=(const RationalComplex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

RationalComplex& RationalComplex::operator*=(const RationalComplex& o) {
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class i = re_ * o.im_ + im_ * o.re_;
  re_ = r;
  im_ = i;
  return *this;
}

RationalComplex operator/(const RationalComplex& a, const RationalComplex& b) {
  if (b.is_zero()) throw std::domain_error("RationalComplex: division by zero");
  mpq_class d = b.re_ * b.re_ + b.im_ * b.im_;
  mpq_class r = (a.re_ * b.re_ + a.im_ * b.im_) / d;
  mpq_class i = (a.im_ * b.re_ - a.re_ * b.im_) / d;
  return {r, i};
}

mpz_class factorial(int m) {
  if (m < 0) throw std::invalid_argument("factorial of negative integer");
  mpz_class r = 1;
  for (int j = 2; j <= m; ++j) r *= j;
  return r;
}

mpz_class binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

RationalComplex dfact(int m) {
  if (m >= 0) {
    mpz_class r = 1;
    for (int j = m; j > 1; j -= 2) r *= j;
    return {mpq_class(r), 0};
  }
  if (m == -1) return 1;
  if (m % 2 == 0) throw std::invalid_argument("dfact: negative even argument " + std::to_string(m));
  const int j = (-m - 1) / 2;
  RationalComplex denom = dfact(2 * j - 1);
  return RationalComplex(j % 2 == 0 ? 1 : -1) / denom;
}

// ---------------------------------------------------------------- ExpLaurent

ExpLaurent::ExpLaurent(int phase_sign, int z_phase, int scale_power, Terms terms)
    : sigma_(phase_sign), tau_(z_phase), scale_(scale_power), terms_(std::move(terms)) {
  if (sigma_ < -1 || sigma_ > 1) throw std::invalid_argument("ExpLaurent: phase sign outside {-1,0,1}");
  canonicalize();
}

ExpLaurent ExpLaurent::monomial(const RationalComplex& c, int k_power, int x_power, int phase_sign,
                                int z_phase, int scale_power) {
  Terms t;
  t.emplace(Key{k_power, x_power}, c);
  return {phase_sign, z_phase, scale_power, std::move(t)};
}

void ExpLaurent::canonicalize() {
  std::erase_if(terms_, [](const auto& kv) { return kv.second.is_zero(); });
  if (terms_.empty()) sigma_ = tau_ = scale_ = 0;
}

bool ExpLaurent::k_free() const {
  if (sigma_ != 0 || tau_ != 0) return is_zero();
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.first.first == 0; });
}

RationalComplex ExpLaurent::coefficient(int k_power, int x_power) const {
  auto it = terms_.find({k_power, x_power});
  return it == terms_.end() ? RationalComplex{} : it->second;
}

int ExpLaurent::min_k_power() const {
  int r = std::numeric_limits<int>::max();
  for (const auto& [key, c] : terms_) r = std::min(r, key.first);
  return r;
}

int ExpLaurent::max_k_power() const {
  int r = std::numeric_limits<int>::min();
  for (const auto& [key, c] : terms_) r = std::max(r, key.first);
  return r;
}

cplx ExpLaurent::eval_unscaled(cplx x, cplx k, cplx z) const {
  const cplx I(0, 1);
  const cplx u = x - z;
  cplx sum = 0;
  for (const auto& [key, c] : terms_) {
    cplx t = c.to_complex();
    if (key.first != 0) t *= std::pow(k, key.first);
    if (key.second != 0) t *= std::pow(u, key.second);
    sum += t;
  }
  if (sigma_ != 0 || tau_ != 0) sum *= std::exp(I * k * (double(sigma_) * u + double(tau_) * z));
  return sum;
}

cplx ExpLaurent::eval(cplx x, cplx k, cplx z) const {
  cplx v = eval_unscaled(x, k, z);
  if (scale_ != 0) v *= std::pow(2.0 * std::numbers::pi, -0.5 * scale_);
  return v;
}

ExpLaurent ExpLaurent::operator-() const {
  ExpLaurent r = *this;
  for (auto& [key, c] : r.terms_) c = -c;
  return r;
}

ExpLaurent operator+(const ExpLaurent& a, const ExpLaurent& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.sigma_ != b.sigma_ || a.tau_ != b.tau_ || a.scale_ != b.scale_)
    throw std::invalid_argument("ExpLaurent: adding values with different phase or scale");
  ExpLaurent r = a;
  for (const auto& [key, c] : b.terms_) r.terms_[key] += c;
  r.canonicalize();
  return r;
}

ExpLaurent operator*(const ExpLaurent& a, const ExpLaurent& b) {
  if (a.is_zero() || b.is_zero()) return {};
  ExpLaurent::Terms t;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_)
      t[{ka.first + kb.first, ka.second + kb.second}] += ca * cb;
  int sigma = a.sigma_ + b.sigma_;
  if (sigma < -1 || sigma > 1)
    throw std::invalid_argument("ExpLaurent: product phase e^{2ik(x-z)} is not representable");
  return {sigma, a.tau_ + b.tau_, a.scale_ + b.scale_, std::move(t)};
}

ExpLaurent operator*(const RationalComplex& c, const ExpLaurent& f) {
  ExpLaurent r = f;
  for (auto& [key, v] : r.terms_) v *= c;
  r.canonicalize();
  return r;
}

bool operator==(const ExpLaurent& a, const ExpLaurent& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return a.sigma_ == b.sigma_ && a.tau_ == b.tau_ && a.scale_ == b.scale_ && a.terms_ == b.terms_;
}

std::string ExpLaurent::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  if (scale_ != 0) os << "(2pi)^(" << -scale_ << "/2)*";
  if (sigma_ != 0) os << "e^(" << sigma_ << "ik(x-z))*";
  if (tau_ != 0) os << "e^(" << tau_ << "ikz)*";
  os << "[";
  bool first = true;
  for (const auto& [key, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.str();
    if (key.first != 0) os << "*k^" << key.first;
    if (key.second != 0) os << "*(x-z)^" << key.second;
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------- operators

ExpLaurent el_diff_x(const ExpLaurent& f) {
  if (f.is_zero()) return {};
  ExpLaurent::Terms t;
  const RationalComplex isig = RationalComplex(0, f.phase_sign());
  for (const auto& [key, c] : f.terms()) {
    const auto [m, p] = key;
    if (f.phase_sign() != 0) t[{m + 1, p}] += isig * c;
    if (p != 0) t[{m, p - 1}] += RationalComplex(p) * c;
  }
  return {f.phase_sign(), f.z_phase(), f.scale_power(), std::move(t)};
}

namespace {
ExpLaurent shift_x(const ExpLaurent& f, int dp, const RationalComplex& c) {
  ExpLaurent::Terms t;
  for (const auto& [key, v] : f.terms()) t[{key.first, key.second + dp}] = v * c;
  return {f.phase_sign(), f.z_phase(), f.scale_power(), std::move(t)};
}
}  // namespace

ExpLaurent el_apply_q_chi(const ExpLaurent& f, const RationalComplex& chi, QSign sign) {
  ExpLaurent d = el_diff_x(f);
  ExpLaurent lead = sign == QSign::Plus ? -d : d;
  return lead + shift_x(f, -1, chi);
}

ExpLaurent el_apply_q(const ExpLaurent& f, int n, QSign sign) {
  return el_apply_q_chi(f, RationalComplex(n), sign);
}

ExpLaurent el_apply_h_coupling(const ExpLaurent& f, const RationalComplex& coupling) {
  return -el_diff_x(el_diff_x(f)) + shift_x(f, -2, coupling);
}

ExpLaurent el_apply_h(const ExpLaurent& f, int n) {
  return el_apply_h_coupling(f, RationalComplex(long(n) * (n + 1)));
}

ExpLaurent el_apply_schrodinger(const ExpLaurent& f, const ExpLaurent& V) {
  if (!V.k_free() || V.scale_power() != 0)
    throw std::invalid_argument("el_apply_schrodinger: potential must be a plain Laurent polynomial");
  return -el_diff_x(el_diff_x(f)) + V * f;
}

ExpLaurent el_limit_k0_deriv(const ExpLaurent& f, int order) {
  if (order < 0) throw std::invalid_argument("el_limit_k0_deriv: negative order");
  if (f.is_zero()) return {};
  if (f.z_phase() != 0) throw std::invalid_argument("el_limit_k0_deriv: residual e^{ikz} phase; multiply it out first");
  if (f.min_k_power() < 0) throw std::invalid_argument("el_limit_k0_deriv: negative powers of k");
  // coefficient of k^order in e^{i sigma k (x-z)} * sum c k^m (x-z)^p, times order!
  ExpLaurent::Terms t;
  const int sigma = f.phase_sign();
  for (const auto& [key, c] : f.terms()) {
    const auto [m, p] = key;
    const int r = order - m;
    if (r < 0) continue;
    if (sigma == 0 && r != 0) continue;
    // (i sigma)^r (x-z)^r / r!
    RationalComplex ser = RationalComplex::i_pow(r) * RationalComplex(mpq_class(sigma == -1 && r % 2 ? -1 : 1));
    ser = ser / RationalComplex(mpq_class(factorial(r)));
    t[{0, p + r}] += c * ser;
  }
  ExpLaurent res(0, 0, f.scale_power(), std::move(t));
  return RationalComplex(mpq_class(factorial(order))) * res;
}

ExpLaurent el_reflect_k(const ExpLaurent& f) {
  ExpLaurent::Terms t;
  for (const auto& [key, c] : f.terms()) t[key] = key.first % 2 ? -c : c;
  return {-f.phase_sign(), -f.z_phase(), f.scale_power(), std::move(t)};
}

}  // namespace nhres
