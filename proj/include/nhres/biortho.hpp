#pragma once

#include "nhres/boundary_model.hpp"
#include "nhres/interior_model.hpp"
#include "nhres/quadrature.hpp"
#include "nhres/report.hpp"

#include <string_view>
#include <vector>

namespace nhres {

struct BiorthoOptions {
  double tol = 1e-6;           // relative, boundary relations
  double tol_overlap = 1e-8;   // plain overlaps of chain functions
  double tol_interior = 1e-5;  // interior smeared relations
  bool stability_check = true;  // rerun with doubled cutoff and halved panels
};

VerificationReport overlap_zero(const BoundaryModel& model, int l, int lp, const BiorthoOptions& opt = {});
VerificationReport overlap_chain_scatter(const BoundaryModel& model, int l, const GaussianPacket& g = {},
                                         const BiorthoOptions& opt = {});
VerificationReport overlap_growing(const BoundaryModel& model, int l, const GaussianPacket& g = {},
                                   const BiorthoOptions& opt = {});
// `mutate` scales the m = 1 coefficient of k^n psi_n by (1 + mutate) before pairing.
VerificationReport scatter_norm(const BoundaryModel& model, const GaussianPacket& g1, const GaussianPacket& g2,
                                const BiorthoOptions& opt = {}, double mutate = 0.0);

// Unscaled pieces, exposed for sensitivity studies.
cplx scatter_norm_lhs(const BoundaryModel& model, const GaussianPacket& g1, const GaussianPacket& g2,
                      double mutate = 0.0, double cutoff_scale = 1.0);
cplx scatter_norm_target(int n, const GaussianPacket& g1, const GaussianPacket& g2);

enum class InteriorIdentity { Psi0Squared, Psi0Psi1, Psi0Scatter, Psi1Scatter, ScatterNorm };
std::string_view to_string(InteriorIdentity id);
InteriorIdentity interior_identity_from_string(std::string_view s);

VerificationReport interior_biortho(const InteriorModel& model, InteriorIdentity which, const GaussianPacket& g,
                                    const BiorthoOptions& opt = {});
// the packet used for the smeared interior relations: concentrated in (alpha + 0.1, alpha + 1)
GaussianPacket interior_default_packet(const InteriorModel& model);

std::vector<VerificationReport> biortho_suite(const BoundaryModel& model, const BiorthoOptions& opt = {});
std::vector<VerificationReport> biortho_suite(const InteriorModel& model, const BiorthoOptions& opt = {});

// k^n psi_n with the m = 1 coefficient scaled by (1 + delta)
ExpLaurent mutated_scatter(int n, double delta);

}  // namespace nhres
