#include "nhres/suites.hpp"

#include <stdexcept>

namespace nhres {

namespace {
const BoundaryModel& boundary_of(const AnyModel& model, const char* suite) {
  const auto* b = std::get_if<BoundaryModel>(&model);
  if (!b) throw std::invalid_argument(std::string(suite) + " suite is defined for the boundary model only");
  return *b;
}

ExpLaurent scatter_under_test(int n, const SuiteOptions& opt) {
  return opt.mutate ? mutated_scatter(n, kMutationDelta) : bm_scatter(n);
}

VerificationReport exact(const std::string& id, const std::string& rel, int n, bool ok) {
  auto r = VerificationReport::exact(id, rel, ok);
  r.note("n", n);
  return r;
}
}  // namespace

std::vector<VerificationReport> algebra_suite(int n, const SuiteOptions& opt) {
  if (n < 1) throw std::invalid_argument("algebra_suite: n >= 1");
  std::vector<VerificationReport> out;
  const ExpLaurent F = scatter_under_test(n, opt);

  bool chain = el_apply_h(bm_assoc(n, 0), n).is_zero() && el_apply_h(bm_growing(n, 0), n).is_zero();
  for (int l = 1; l <= n + 1; ++l) {
    chain = chain && el_apply_h(bm_assoc(n, l), n) == bm_assoc(n, l - 1);
    chain = chain && el_apply_h(bm_growing(n, l), n) == bm_growing(n, l - 1);
  }
  out.push_back(exact("algebra.chain_relations", "saf", n, chain));
  out.push_back(exact("algebra.ladder_equals_sum", "psin", n, bm_scatter_ladder(n) == F));
  out.push_back(exact("algebra.eigen_equation", "eig", n,
                      el_apply_h(F, n) == ExpLaurent::monomial(1, 2, 0) * F));
  out.push_back(verify_intertwining(n));

  bool descent = true;
  for (int l = 1; l <= n; ++l)
    descent = descent && el_apply_q(bm_assoc(n, l), n, QSign::Minus) == RationalComplex(0, -1) * bm_assoc(n - 1, l - 1);
  out.push_back(exact("algebra.q_descent", "qp3", n, descent));

  bool limit = true;
  const ExpLaurent ez = ExpLaurent::phase(0, -1);
  for (int l = 0; l <= n; ++l) {
    const RationalComplex c = RationalComplex(n % 2 ? -1 : 1) / RationalComplex(mpq_class(factorial(2 * l)));
    limit = limit && c * el_limit_k0_deriv(ez * F, 2 * l) == bm_assoc(n, l);
  }
  out.push_back(exact("algebra.k0_limit", "psi8", n, limit));
  out.push_back(verify_sys23(n));
  out.push_back(verify_equ21(n));

  for (int m = 0; m <= 2 && n + m + 1 <= kMaxBoundaryOrder; ++m) out.push_back(verify_darboux_endpoint(growing_chain(n, m)));
  for (int m = 0; bm_classify(n, m) == ChainClass::Normalizable; ++m)
    out.push_back(verify_darboux_endpoint(normalizable_chain(n, m)));
  if (opt.mutate)
    for (auto& r : out) r.note("mutation", kMutationDelta);
  return out;
}

std::vector<VerificationReport> biortho_reports(const AnyModel& model, const SuiteOptions& opt) {
  if (const auto* b = std::get_if<BoundaryModel>(&model)) {
    auto out = biortho_suite(*b);
    if (opt.mutate) {
      const GaussianPacket g0{0.0, 1.0, {1}};
      auto r = scatter_norm(*b, g0, g0, {}, kMutationDelta);
      r.note("mutation", kMutationDelta);
      out.push_back(r);
    }
    return out;
  }
  return biortho_suite(std::get<InteriorModel>(model));
}

std::vector<VerificationReport> susy_suite(int n, const SuiteOptions& opt) {
  if (n < 1) throw std::invalid_argument("susy_suite: n >= 1");
  std::vector<VerificationReport> out;
  auto r = verify_intertwining(n, opt.mutate ? 1 : 0);
  out.push_back(r);
  for (int m = 0; m <= 2 && n + m + 1 <= kMaxBoundaryOrder; ++m) {
    out.push_back(verify_darboux_endpoint(growing_chain(n, m)));
    out.push_back(verify_multiplicity_delta(growing_chain(n, m)));
  }
  for (int m = 0; bm_classify(n, m) == ChainClass::Normalizable; ++m) {
    out.push_back(verify_darboux_endpoint(normalizable_chain(n, m)));
    out.push_back(verify_multiplicity_delta(normalizable_chain(n, m)));
  }
  // the two n1 exceptions, whatever n is
  out.push_back(verify_multiplicity_delta(growing_chain(3, 0)));
  out.push_back(verify_multiplicity_delta(normalizable_chain(2, 0)));
  if (n + 1 <= kMaxBoundaryOrder) {
    const ExpLaurent up = darboux_potential(bm_potential_exact(n), growing_chain(n, 0));
    const ExpLaurent back = darboux_potential(up, normalizable_chain(n + 1, 0));
    out.push_back(exact("susy.round_trip", "susy1", n, back == bm_potential_exact(n)));
  }
  return out;
}

std::vector<VerificationReport> greens_suite(const AnyModel& model, const SuiteOptions&) {
  std::vector<VerificationReport> out;
  out.push_back(verify_green(model, 2.0));  // E = 1 sits on the interior pole when alpha = 1
  out.push_back(verify_green(model, cplx(0.5, 0.3)));
  const IndexTriple want = expected_indexes(model);
  const bool boundary = std::holds_alternative<BoundaryModel>(model);
  const double r = boundary ? 0.5 : std::get<InteriorModel>(model).alpha / 4;
  out.push_back(verify_pole_order(model, want.k_plane_order, r));
  const IndexTriple got = indexes(model);
  auto rep = VerificationReport::numeric("greens.indexes", "idx",
                                         std::abs(got.n1 - want.n1) + std::abs(got.n2 - want.n2) +
                                             std::abs(got.n3 - want.n3),
                                         0.0);
  rep.note("n1", got.n1).note("n2", got.n2).note("n3", got.n3).note("k_plane_order", got.k_plane_order);
  out.push_back(rep);
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> v{"algebra", "biortho", "susy", "greens", "all"};
  return v;
}

std::vector<VerificationReport> run_suite(const std::string& name, const AnyModel& model, const SuiteOptions& opt) {
  std::vector<VerificationReport> out;
  auto append = [&](std::vector<VerificationReport> v) {
    for (auto& r : v) out.push_back(std::move(r));
  };
  const bool boundary = std::holds_alternative<BoundaryModel>(model);
  if (name == "algebra") append(algebra_suite(boundary_of(model, "algebra").n, opt));
  else if (name == "biortho") append(biortho_reports(model, opt));
  else if (name == "susy") append(susy_suite(boundary_of(model, "susy").n, opt));
  else if (name == "greens") append(greens_suite(model, opt));
  else if (name == "all") {
    if (boundary) append(algebra_suite(std::get<BoundaryModel>(model).n, opt));
    append(biortho_reports(model, opt));
    if (boundary) append(susy_suite(std::get<BoundaryModel>(model).n, opt));
    append(greens_suite(model, opt));
  } else {
    throw std::invalid_argument("unknown suite: " + name);
  }
  if (opt.tol > 0.0)
    for (auto& r : out)
      if (r.mode == CheckMode::Numeric && r.tolerance > 0.0) {
        r.tolerance = opt.tol;
        r.pass = r.residual <= r.tolerance;
      }
  return out;
}

}  // namespace nhres
