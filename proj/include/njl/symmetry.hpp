#pragma once

#include <random>
#include <vector>

#include "njl/polynomial.hpp"

namespace njl {

// All transformation unitaries need the full Fock basis; they do not preserve
// particle number (except the diagonal ones, kept on the same footing).
Operator build_particle_hole(std::shared_ptr<const FockBasis> basis);
Operator build_U1(std::shared_ptr<const FockBasis> basis);
Operator build_U1j(std::shared_ptr<const FockBasis> basis, int j);
Operator build_Uodd(std::shared_ptr<const FockBasis> basis);
Operator build_Utilde1(std::shared_ptr<const FockBasis> basis);
Operator build_Ufree(std::shared_ptr<const FockBasis> basis);  // nu = 3
// U_HA(j -> 1): makes direction j carry the boundary-only phase.
Operator build_gauge_move(std::shared_ptr<const FockBasis> basis, int j);
// U_BC(axis, l): flips the sign of psi on the slab l <= x_axis <= L.
Operator build_boundary_move(std::shared_ptr<const FockBasis> basis, int axis, int l);

// U† A U
Operator conjugated(const Operator& U, const Operator& A);

// Reflection across the hyperplane x_axis = offset + 1/2.
class ReflectionMap {
 public:
  explicit ReflectionMap(const LatticeConfig& cfg, int axis = 1, int offset = 0);

  const LatticeConfig& lattice() const { return cfg_; }
  int axis() const { return axis_; }
  int offset() const { return offset_; }

  bool in_minus(std::size_t site) const { return minus_[site]; }
  std::size_t reflect(std::size_t site) const { return image_[site]; }

  std::vector<std::size_t> minus_sites() const;

 private:
  LatticeConfig cfg_;
  int axis_;
  int offset_;
  std::vector<bool> minus_;
  std::vector<std::size_t> image_;
};

// Antilinear image: generators mapped site-wise through the reflection,
// coefficients conjugated, factor order preserved. Throws when the support
// straddles the hyperplane.
FermionPolynomial reflect_polynomial(const ReflectionMap& map,
                                     const FermionPolynomial& poly);

// rho(x) as a generator word (psi† psi - 1/2).
FermionPolynomial density_polynomial(std::size_t site);

// Random real-coefficient sum of even-degree generator words supported on the
// minus half-lattice.
FermionPolynomial random_even_polynomial(const ReflectionMap& map,
                                         std::mt19937_64& rng);

struct ReflectionSample {
  double trace_real = 0.0;
  double trace_imag = 0.0;
};

struct ReflectionPositivityReport {
  int samples = 0;
  double min_trace = 0.0;      // over the even-parity draws
  double max_abs_imag = 0.0;
  bool all_nonnegative = false;
  // odd-parity draws are logged, not asserted
  std::vector<ReflectionSample> odd_log;
};

ReflectionPositivityReport reflection_positivity_check(
    std::shared_ptr<const FockBasis> basis, const ReflectionMap& map, int samples,
    std::uint64_t seed, double tol = 1e-10);

}  // namespace njl
