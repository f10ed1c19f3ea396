#pragma once

#include <string>
#include <utility>
#include <vector>

namespace nhres {

enum class CheckMode { ExactSymbolic, Numeric };

struct VerificationReport {
  std::string id;        // e.g. "boundary.overlap_zero"
  std::string relation;  // short relation code, e.g. "ort1"
  CheckMode mode = CheckMode::Numeric;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::vector<std::pair<std::string, std::string>> trace;

  static VerificationReport exact(std::string id, std::string relation, bool identity_holds);
  static VerificationReport numeric(std::string id, std::string relation, double residual, double tolerance);

  VerificationReport& note(std::string key, std::string value);
  VerificationReport& note(std::string key, double value);
  // fold a second residual (e.g. a stability delta) into the verdict; keeps pass <=> residual <= tolerance
  VerificationReport& require(std::string key, double value);
};

std::string format_number(double v);

}  // namespace nhres
