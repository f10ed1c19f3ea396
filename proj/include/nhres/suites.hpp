#pragma once

#include "nhres/biortho.hpp"
#include "nhres/greens_indexes.hpp"
#include "nhres/report.hpp"
#include "nhres/resolution.hpp"
#include "nhres/susy.hpp"

#include <string>
#include <vector>

namespace nhres {

// Relative coefficient error injected into k^n psi_n (and the q coefficient for susy) by --mutate.
inline constexpr double kMutationDelta = 1e-3;

struct SuiteOptions {
  bool mutate = false;
  double tol = 0.0;  // 0 keeps each check's own tolerance
};

// exact identities for one n: chain relations, ladder = explicit sum, eigen-equation, intertwining and
// factorization, q^- descent, k -> 0 limits, beta system, outer product, Darboux endpoints
std::vector<VerificationReport> algebra_suite(int n, const SuiteOptions& opt = {});
std::vector<VerificationReport> biortho_reports(const AnyModel& model, const SuiteOptions& opt = {});
// intertwining, Darboux endpoints, multiplicity deltas with the two n1 exceptions, raise/lower round trip
std::vector<VerificationReport> susy_suite(int n, const SuiteOptions& opt = {});
// Green function equation and jump, pole order stable under radius halving, index triple
std::vector<VerificationReport> greens_suite(const AnyModel& model, const SuiteOptions& opt = {});

// "algebra", "biortho", "susy", "greens" or "all"
std::vector<VerificationReport> run_suite(const std::string& name, const AnyModel& model, const SuiteOptions& opt = {});
const std::vector<std::string>& suite_names();

}  // namespace nhres
