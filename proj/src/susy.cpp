#include "nhres/susy.hpp"

#include <stdexcept>

namespace nhres {

bool TransformationChain::chain_relations_hold() const {
  for (std::size_t l = 0; l < functions.size(); ++l) {
    const ExpLaurent hf = el_apply_h(functions[l], base_n);
    if (l == 0 ? !hf.is_zero() : hf != functions[l - 1]) return false;
  }
  return true;
}

TransformationChain growing_chain(int n, int m) {
  if (n < 0 || m < 0) throw std::invalid_argument("growing_chain: negative index");
  TransformationChain c{n, ChainKind::Growing, {}};
  for (int l = 0; l <= m; ++l) c.functions.push_back(bm_growing(n, l));
  return c;
}

TransformationChain normalizable_chain(int n, int m) {
  if (n < 1 || m < 0) throw std::invalid_argument("normalizable_chain: needs n >= 1, m >= 0");
  if (bm_classify(n, m) != ChainClass::Normalizable)
    throw std::invalid_argument("normalizable_chain: psi_{n,m} is not normalizable, chain too long");
  TransformationChain c{n, ChainKind::Normalizable, {}};
  for (int l = 0; l <= m; ++l) c.functions.push_back(bm_assoc(n, l));
  return c;
}

namespace {
ExpLaurent det(const std::vector<std::vector<ExpLaurent>>& a) {
  const std::size_t n = a.size();
  if (n == 1) return a[0][0];
  ExpLaurent s;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<ExpLaurent>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<ExpLaurent> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(a[i][c]);
      minor.push_back(std::move(row));
    }
    const ExpLaurent t = a[0][j] * det(minor);
    s = j % 2 ? s - t : s + t;
  }
  return s;
}
}  // namespace

ExpLaurent wronskian(const std::vector<ExpLaurent>& functions) {
  if (functions.empty()) throw std::invalid_argument("wronskian: empty chain");
  for (const auto& f : functions)
    if (!f.k_free()) throw std::invalid_argument("wronskian: functions must be k-free");
  const std::size_t n = functions.size();
  std::vector<std::vector<ExpLaurent>> a(n);
  a[0] = functions;
  for (std::size_t i = 1; i < n; ++i)
    for (const auto& f : a[i - 1]) a[i].push_back(el_diff_x(f));
  return det(a);
}

ExpLaurent wronskian(const TransformationChain& chain) { return wronskian(chain.functions); }

ExpLaurent darboux_potential(const ExpLaurent& V, const std::vector<ExpLaurent>& functions) {
  const ExpLaurent W = wronskian(functions);
  if (W.terms().size() != 1 || W.phase_sign() != 0 || W.z_phase() != 0 || !W.k_free())
    throw NonLaurentWronskianError("darboux_potential: Wronskian is not a single Laurent monomial");
  const auto& [key, c] = *W.terms().begin();
  const int p = key.second;
  // W'/W, dividing term by term by c (x-z)^p; the scale prefactor cancels
  const ExpLaurent dW = el_diff_x(W);
  ExpLaurent::Terms q;
  for (const auto& [k, v] : dW.terms()) q[{k.first, k.second - p}] = v / c;
  const ExpLaurent log_deriv(0, 0, 0, std::move(q));
  return V + RationalComplex(-2) * el_diff_x(log_deriv);
}

ExpLaurent darboux_potential(const ExpLaurent& V, const TransformationChain& chain) {
  return darboux_potential(V, chain.functions);
}

VerificationReport verify_intertwining(int n, int chi_shift) {
  if (n < 1) throw std::invalid_argument("verify_intertwining: n >= 1");
  const RationalComplex chi(n + chi_shift);
  auto qp = [&](const ExpLaurent& f) { return el_apply_q_chi(f, chi, QSign::Plus); };
  auto qm = [&](const ExpLaurent& f) { return el_apply_q_chi(f, chi, QSign::Minus); };
  auto h = [](const ExpLaurent& f, int m) { return el_apply_h(f, m); };
  std::vector<ExpLaurent> basis;
  for (int p = -5; p <= 5; ++p) {
    basis.push_back(ExpLaurent::monomial(1, 0, p));
    basis.push_back(ExpLaurent::monomial(1, 1, p, 1, 1));
  }
  int failures = 0;
  for (const auto& f : basis) {
    failures += h(qp(f), n) != qp(h(f, n - 1));
    failures += qm(h(f, n)) != h(qm(f), n - 1);
    failures += h(f, n) != qp(qm(f));
    failures += h(f, n - 1) != qm(qp(f));
  }
  auto r = VerificationReport::exact("susy.intertwining", "int1", failures == 0);
  r.note("n", n).note("basis_size", static_cast<double>(basis.size())).note("failed_relations", failures);
  if (chi_shift != 0) r.note("chi_shift", chi_shift);
  return r;
}

MultiplicityDelta multiplicity_delta(const TransformationChain& chain) {
  const int n = chain.base_n, m = chain.length() - 1;
  if (m < 0) throw std::invalid_argument("multiplicity_delta: empty chain");
  MultiplicityDelta d;
  if (chain.kind == ChainKind::Growing) {
    d.target_n = n + m + 1;
  } else {
    if (bm_classify(n, m) != ChainClass::Normalizable)
      throw std::invalid_argument("multiplicity_delta: normalizable chain longer than allowed");
    d.target_n = n - m - 1;
  }
  const IndexTriple a = expected_indexes(BoundaryModel{n, {0.0, 1.0}});
  const int np = d.target_n;
  const IndexTriple b{(np + 1) / 2, np, np, 2 * np + 1};
  d.delta = {b.n1 - a.n1, b.n2 - a.n2, b.n3 - a.n3};
  if (m == 0 && d.delta[0] == 0)
    d.caveat = chain.kind == ChainKind::Growing ? "n1 unchanged: raising with m = 0 and odd n"
                                                : "n1 unchanged: lowering with m = 0 and even n";
  return d;
}

VerificationReport verify_darboux_endpoint(const TransformationChain& chain) {
  const MultiplicityDelta d = multiplicity_delta(chain);
  const bool ok = chain.chain_relations_hold() &&
                  darboux_potential(bm_potential_exact(chain.base_n), chain) == bm_potential_exact(d.target_n);
  auto r = VerificationReport::exact("susy.darboux_endpoint", "susy1", ok);
  r.note("n", chain.base_n)
      .note("m", chain.length() - 1)
      .note("kind", chain.kind == ChainKind::Growing ? "growing" : "normalizable")
      .note("target_n", d.target_n);
  return r;
}

VerificationReport verify_multiplicity_delta(const TransformationChain& chain) {
  const MultiplicityDelta d = multiplicity_delta(chain);
  const IndexTriple a = indexes(BoundaryModel{chain.base_n, {0.0, 1.0}});
  const IndexTriple b = indexes(BoundaryModel{d.target_n, {0.0, 1.0}});
  const int mismatch = std::abs(b.n1 - a.n1 - d.delta[0]) + std::abs(b.n2 - a.n2 - d.delta[1]) +
                       std::abs(b.n3 - a.n3 - d.delta[2]);
  auto r = VerificationReport::numeric("susy.multiplicity_delta", "susy2", mismatch, 0.0);
  r.note("n", chain.base_n).note("target_n", d.target_n);
  r.note("delta_n1", d.delta[0]).note("delta_n2", d.delta[1]).note("delta_n3", d.delta[2]);
  if (!d.caveat.empty()) r.note("caveat", d.caveat);
  return r;
}

}  // namespace nhres
