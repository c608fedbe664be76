#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "njl/bounds.hpp"
#include "njl/symmetry.hpp"

namespace njl::verify {

struct Check {
  std::string name;
  double error = 0.0;  // residual of the identity
  double tol = 0.0;
  bool ok = false;
};

Check make_check(std::string name, double error, double tol);

// Canonical anticommutation relations, charge-density algebra, Majorana
// algebra, number conservation, builder Hermiticity. Exact identities.
std::vector<Check> algebra_checks(const LatticeConfig& cfg, double tol = 1e-12);

// Every conjugation identity of the transformation unitaries, the reflection
// images, and the deformed-interaction transform, as matrix identities.
std::vector<Check> symmetry_checks(const LatticeConfig& cfg, const ModelParams& params,
                                   std::uint64_t seed, double tol = 1e-10);

// Free-fermion momentum structure at nu = 3: dispersion, Dirac form, gamma
// identities, chiral selection, the sgn rule.
std::vector<Check> continuum_checks(const LatticeConfig& cfg, double kappa, double m,
                                    double beta, double tol = 1e-10);

// Per-point bound battery; every report is theorem-backed.
std::vector<BoundReport> bound_battery(std::shared_ptr<const FockBasis> basis,
                                       const ModelParams& params, std::uint64_t seed,
                                       int gaussian_draws, double tol = 1e-8);

bool all_ok(const std::vector<Check>& checks);
bool all_ok(const std::vector<BoundReport>& reports);

}  // namespace njl::verify
