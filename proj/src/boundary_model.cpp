#include "nhres/boundary_model.hpp"

#include <stdexcept>
#include <string>

namespace nhres {

BoundaryModel::BoundaryModel(int n_, cplx z_) : n(n_), z(z_) {
  if (n < 0) throw std::invalid_argument("BoundaryModel: n must be nonnegative");
  if (n > kMaxBoundaryOrder)
    throw std::invalid_argument("BoundaryModel: n above supported maximum " + std::to_string(kMaxBoundaryOrder));
  if (z.imag() == 0.0) throw std::invalid_argument("BoundaryModel: Im z must be nonzero");
}

std::string_view to_string(ChainClass c) {
  switch (c) {
    case ChainClass::Normalizable: return "Normalizable";
    case ChainClass::BoundedNonNormalizable: return "BoundedNonNormalizable";
    case ChainClass::Growing: return "Growing";
  }
  return "?";
}

cplx bm_potential(const BoundaryModel& model, cplx x) {
  const cplx u = x - model.z;
  if (u == cplx(0.0)) throw std::domain_error("bm_potential: x = z");
  return double(model.n) * (model.n + 1) / (u * u);
}

ExpLaurent bm_potential_exact(int n) {
  return ExpLaurent::monomial(RationalComplex(long(n) * (n + 1)), 0, -2);
}

ExpLaurent bm_assoc(int n, int l) {
  if (n < 0 || l < 0) throw std::invalid_argument("bm_assoc: negative index");
  RationalComplex c = RationalComplex::i_pow(3 * n) * dfact(2 * n - 2 * l - 1) / dfact(2 * l);  // (-i)^n = i^{3n}
  return ExpLaurent::monomial(c, 0, 2 * l - n, 0, 0, 1);
}

ExpLaurent bm_assoc(const BoundaryModel& model, int l) { return bm_assoc(model.n, l); }

ExpLaurent bm_growing(int n, int l) {
  if (n < 0 || l < 0) throw std::invalid_argument("bm_growing: negative index");
  RationalComplex c = RationalComplex(l % 2 ? -1 : 1) * dfact(2 * n + 1) / (dfact(2 * l) * dfact(2 * n + 2 * l + 1));
  return ExpLaurent::monomial(c, 0, n + 2 * l + 1);
}

ExpLaurent bm_growing(const BoundaryModel& model, int l) { return bm_growing(model.n, l); }

RationalComplex bm_scatter_coefficient(int n, int m) {
  mpz_class den = factorial(m) * factorial(n - m);
  den <<= m;
  return {mpq_class(factorial(n + m), den), 0};
}

ExpLaurent bm_scatter(int n) {
  if (n < 0) throw std::invalid_argument("bm_scatter: negative n");
  ExpLaurent::Terms t;
  for (int m = 0; m <= n; ++m) t[{n - m, -m}] = bm_scatter_coefficient(n, m) * RationalComplex::i_pow(m);
  return {1, 1, 1, std::move(t)};
}

ExpLaurent bm_scatter(const BoundaryModel& model) { return bm_scatter(model.n); }

ExpLaurent bm_scatter_ladder(int n) {
  if (n < 0) throw std::invalid_argument("bm_scatter_ladder: negative n");
  ExpLaurent f = ExpLaurent::monomial(1, 0, 0, 1, 1, 1);
  for (int j = 1; j <= n; ++j) f = RationalComplex::i() * el_apply_q(f, j, QSign::Plus);
  return f;
}

ExpLaurent bm_scatter_ladder(const BoundaryModel& model) { return bm_scatter_ladder(model.n); }

ChainClass bm_classify(int n, int l) {
  const int d = n - 2 * l;
  if (d >= 1) return ChainClass::Normalizable;
  if (d == 0) return ChainClass::BoundedNonNormalizable;
  return ChainClass::Growing;
}

ChainClass bm_classify(const BoundaryModel& model, int l) { return bm_classify(model.n, l); }

cplx bm_scatter_eval(const BoundaryModel& model, cplx x, cplx k) {
  if (k == cplx(0.0) && model.n > 0) throw std::domain_error("bm_scatter_eval: k = 0");
  return bm_scatter(model.n).eval(x, k, model.z) * std::pow(k, -model.n);
}

}  // namespace nhres
