#pragma once

#include <gmpxx.h>

#include <complex>
#include <map>
#include <string>
#include <utility>

namespace nhres {

using cplx = std::complex<double>;

// Complex number with exact rational parts.
class RationalComplex {
 public:
  RationalComplex() = default;
  RationalComplex(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  RationalComplex(mpq_class re, mpq_class im = 0);

  static RationalComplex ratio(long num, long den);
  static RationalComplex i();
  static RationalComplex i_pow(int k);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }
  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  RationalComplex conj() const { return {re_, -im_}; }
  cplx to_complex() const { return {re_.get_d(), im_.get_d()}; }
  std::string str() const;

  RationalComplex& operator+=(const RationalComplex& o);
  RationalComplex& operator-=(const RationalComplex& o);
  RationalComplex& operator*=(const RationalComplex& o);

  friend RationalComplex operator+(RationalComplex a, const RationalComplex& b) { return a += b; }
  friend RationalComplex operator-(RationalComplex a, const RationalComplex& b) { return a -= b; }
  friend RationalComplex operator*(RationalComplex a, const RationalComplex& b) { return a *= b; }
  friend RationalComplex operator/(const RationalComplex& a, const RationalComplex& b);
  RationalComplex operator-() const { return {-re_, -im_}; }
  friend bool operator==(const RationalComplex& a, const RationalComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const RationalComplex& a, const RationalComplex& b) { return !(a == b); }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

// Extended double factorial; negative odd arguments follow (-2j-1)!! = (-1)^j/(2j-1)!!.
RationalComplex dfact(int m);
mpz_class factorial(int m);
mpz_class binomial(int n, int k);  // 0 outside 0 <= k <= n

// f(x;k) = (2pi)^{-s/2} e^{i sigma k (x-z)} e^{i tau k z} sum c_{m,p} k^m (x-z)^p
class ExpLaurent {
 public:
  using Key = std::pair<int, int>;  // (power of k, power of x - z)
  using Terms = std::map<Key, RationalComplex>;

  ExpLaurent() = default;  // zero
  ExpLaurent(int phase_sign, int z_phase, int scale_power, Terms terms);

  static ExpLaurent monomial(const RationalComplex& c, int k_power, int x_power,
                             int phase_sign = 0, int z_phase = 0, int scale_power = 0);
  static ExpLaurent constant(const RationalComplex& c) { return monomial(c, 0, 0); }
  // e^{i sigma k (x-z)} e^{i tau k z}
  static ExpLaurent phase(int sigma, int tau) { return monomial(1, 0, 0, sigma, tau); }

  int phase_sign() const { return sigma_; }
  int z_phase() const { return tau_; }
  int scale_power() const { return scale_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool k_free() const;
  RationalComplex coefficient(int k_power, int x_power) const;
  int min_k_power() const;
  int max_k_power() const;

  cplx eval(cplx x, cplx k, cplx z) const;
  // Without the (2pi)^{-s/2} factor.
  cplx eval_unscaled(cplx x, cplx k, cplx z) const;

  ExpLaurent with_scale(int s) const { return {sigma_, tau_, s, terms_}; }

  ExpLaurent operator-() const;
  friend ExpLaurent operator+(const ExpLaurent& a, const ExpLaurent& b);
  friend ExpLaurent operator-(const ExpLaurent& a, const ExpLaurent& b) { return a + (-b); }
  friend ExpLaurent operator*(const ExpLaurent& a, const ExpLaurent& b);
  friend ExpLaurent operator*(const RationalComplex& c, const ExpLaurent& f);
  friend bool operator==(const ExpLaurent& a, const ExpLaurent& b);
  friend bool operator!=(const ExpLaurent& a, const ExpLaurent& b) { return !(a == b); }

  std::string str() const;

 private:
  void canonicalize();
  int sigma_ = 0;
  int tau_ = 0;
  int scale_ = 0;
  Terms terms_;
};

enum class QSign { Plus, Minus };

ExpLaurent el_diff_x(const ExpLaurent& f);
// q^{+-} f = -+ f' + (chi/(x-z)) f ; the ladder uses chi = n.
ExpLaurent el_apply_q(const ExpLaurent& f, int n, QSign sign);
ExpLaurent el_apply_q_chi(const ExpLaurent& f, const RationalComplex& chi, QSign sign);
// -f'' + coupling/(x-z)^2 f
ExpLaurent el_apply_h_coupling(const ExpLaurent& f, const RationalComplex& coupling);
ExpLaurent el_apply_h(const ExpLaurent& f, int n);
// -f'' + V f for an arbitrary Laurent potential V (k-free, sigma = tau = scale = 0)
ExpLaurent el_apply_schrodinger(const ExpLaurent& f, const ExpLaurent& V);
ExpLaurent el_limit_k0_deriv(const ExpLaurent& f, int order);
// k -> -k
ExpLaurent el_reflect_k(const ExpLaurent& f);

}  // namespace nhres
