#include "nhres/report.hpp"

#include <cmath>
#include <algorithm>
#include <cstdio>

namespace nhres {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

VerificationReport VerificationReport::exact(std::string id, std::string relation, bool identity_holds) {
  VerificationReport r;
  r.id = std::move(id);
  r.relation = std::move(relation);
  r.mode = CheckMode::ExactSymbolic;
  r.residual = identity_holds ? 0.0 : 1.0;
  r.tolerance = 0.0;
  r.pass = identity_holds;
  return r;
}

VerificationReport VerificationReport::numeric(std::string id, std::string relation, double residual,
                                               double tolerance) {
  VerificationReport r;
  r.id = std::move(id);
  r.relation = std::move(relation);
  r.mode = CheckMode::Numeric;
  r.residual = std::isfinite(residual) ? residual : INFINITY;
  r.tolerance = tolerance;
  r.pass = r.residual <= tolerance;
  return r;
}

VerificationReport& VerificationReport::note(std::string key, std::string value) {
  trace.emplace_back(std::move(key), std::move(value));
  return *this;
}

VerificationReport& VerificationReport::note(std::string key, double value) {
  return note(std::move(key), format_number(value));
}

VerificationReport& VerificationReport::require(std::string key, double value) {
  note(std::move(key), value);
  if (!std::isfinite(value)) value = INFINITY;
  residual = std::max(residual, value);
  pass = residual <= tolerance;
  return *this;
}

}  // namespace nhres
