#pragma once

#include "nhres/boundary_model.hpp"
#include "nhres/exact_algebra.hpp"
#include "nhres/greens_indexes.hpp"
#include "nhres/report.hpp"

#include <array>
#include <string>
#include <vector>

namespace nhres {

enum class ChainKind { Growing, Normalizable };

struct TransformationChain {
  int base_n = 0;
  ChainKind kind = ChainKind::Growing;
  std::vector<ExpLaurent> functions;  // f_0 .. f_m at E = 0

  int length() const { return static_cast<int>(functions.size()); }
  // h f_0 = 0 and h f_l = f_{l-1}, exactly
  bool chain_relations_hold() const;
};

// {phi_{n,0}, ..., phi_{n,m}}
TransformationChain growing_chain(int n, int m);
// {psi_{n,0}, ..., psi_{n,m}}; throws if psi_{n,m} is not normalizable
TransformationChain normalizable_chain(int n, int m);

// det [f_j^{(i)}], i, j = 0..m
ExpLaurent wronskian(const std::vector<ExpLaurent>& functions);
ExpLaurent wronskian(const TransformationChain& chain);

struct NonLaurentWronskianError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// V - 2 (ln W)'' computed as V - 2 (W'/W)'; W must be a single Laurent monomial
ExpLaurent darboux_potential(const ExpLaurent& V, const std::vector<ExpLaurent>& functions);
ExpLaurent darboux_potential(const ExpLaurent& V, const TransformationChain& chain);

// h_n q_n^+ = q_n^+ h_{n-1}, q_n^- h_n = h_{n-1} q_n^-, h_n = q_n^+ q_n^-, h_{n-1} = q_n^- q_n^+
// on a spanning set of monomials; chi_shift perturbs the q coefficient n -> n + chi_shift
VerificationReport verify_intertwining(int n, int chi_shift = 0);

struct MultiplicityDelta {
  int target_n = 0;
  std::array<int, 3> delta{};  // n1, n2, n3
  std::string caveat;          // set when the n1 step is zero by one of the two exceptions
};
MultiplicityDelta multiplicity_delta(const TransformationChain& chain);

// darboux_potential(chain) equals the h_{n'} potential exactly
VerificationReport verify_darboux_endpoint(const TransformationChain& chain);
// predicted deltas against indexes() recomputed on both ends
VerificationReport verify_multiplicity_delta(const TransformationChain& chain);

}  // namespace nhres
