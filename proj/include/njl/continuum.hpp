#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "njl/hamiltonian.hpp"

namespace njl::continuum {

// One-particle kernel of the nu=3 free Hamiltonian (explicit phase pattern,
// anti-periodic boundary conditions realized on the periodic container).
Eigen::MatrixXcd free_one_particle_matrix(const LatticeConfig& cfg, double kappa,
                                          double m);

// Full one-particle spectrum, ascending.
std::vector<double> one_particle_spectrum(const LatticeConfig& cfg, double kappa,
                                          double m);

// The closed form +-sqrt(4 kappa^2 sum_i sin^2 k_i + m^2) over the fermion
// grid, with the momentum-folding multiplicities (half of each eight-momentum
// orbit on each sign), ascending.
std::vector<double> folded_closed_form_spectrum(const LatticeConfig& cfg, double kappa,
                                                double m);

struct DispersionReport {
  double max_abs_diff = 0.0;
  bool ok = false;
};
DispersionReport dispersion_check(const LatticeConfig& cfg, double kappa, double m,
                                  double tol = 1e-10);

// 4x4 constants of the spinor assembly.
Eigen::Matrix4d assembly_up();    // U_u
Eigen::Matrix4d assembly_down();  // U_d
Eigen::Matrix4d gamma0();
Eigen::Matrix4d gamma5();
Eigen::Matrix4cd pauli_block(int i);  // antidiagonal sigma_i block
// gamma5^2 = 1, gamma5 gamma0 gamma5 = -gamma0, [gamma5, pauli blocks] = 0,
// U_u / U_d orthogonal; all exact.
bool gamma_identities_exact();

struct DiracFormReport {
  double matrix_residual = 0.0;      // |U T U^T - Dirac(k)| over up and down
  double eigenpair_residual = 0.0;   // max |D v - E v| over assembled eigenpairs
  double cross_block = 0.0;          // up-down coupling, should vanish
  std::array<double, 2> energies{};  // +-sqrt closed form at this k
};

// Momentum-space check at one fermion-grid momentum in the first folded zone
// (|k_i| <= pi/2). Throws on density-grid or out-of-zone momenta.
DiracFormReport dirac_form_check(const LatticeConfig& cfg, double kappa, double m,
                                 const Momentum& k);

struct ChiralSelectionReport {
  double max_opposite = 0.0;  // |<psi^(p+K1) psi(p+K2)>| over sgn-odd pairs
  double max_same = 0.0;      // over sgn-even pairs, for scale
  int pairs_checked = 0;
};

// Free-fermion two-point functions in the staggered Fourier frame at inverse
// temperature beta; the sgn-odd entries vanish exactly at m = 0.
ChiralSelectionReport chiral_selection_check(const LatticeConfig& cfg, double kappa,
                                             double beta, double m);

// sgn(K) = (-1)^{# pi components}, K in {0, pi}^3.
int sgn_of(const std::array<int, 3>& half_turns);  // entries 0 or 1

struct SgnRuleReport {
  int tuples_total = 0;       // all (K1..K4) combinations
  int conserving = 0;         // those with K1 + K3 = K2 + K4 mod 2pi
  int violations = 0;         // conserving tuples with sgn product != +1
  bool ok = false;
};
SgnRuleReport sgn_selection_rule();

struct QuadratureSpec {
  int base_resolution = 32;  // even; cells per axis at the coarsest level
  int levels = 4;            // each level doubles the resolution
};

struct IntegralEstimate {
  double value = 0.0;
  double error = 0.0;
  bool converged = false;
  double order = 0.0;  // observed convergence order of the ladder
  std::vector<std::pair<int, double>> ladder;

  // value when converged, throws otherwise
  double require_converged() const;
};

// Midpoint tensor quadrature of (2pi)^-nu Int dp / E_p (kind 'I') or
// 1/sqrt(E_p) (kind 'J') with Richardson extrapolation over the ladder.
// I with nu = 2 diverges and is reported as such.
IntegralEstimate bz_integral(char kind, int nu, const QuadratureSpec& spec = {});

struct RegionCertificate {
  double lower_bound = 0.0;       // on the squared long-range order parameter
  bool positive = false;
  double threshold_kappa_over_g;  // ground-state positivity threshold
  bool finite_beta = false;
};

// Lower bound 1/4 - I_nu/(2 beta g) - sqrt(|kappa| nu / g) J_nu (finite beta,
// nu >= 3) or 1/4 - sqrt(|kappa| nu / g) J_nu (beta = infinity, nu >= 2).
RegionCertificate theorem_region(double kappa, double g, std::optional<double> beta,
                                 int nu, const IntegralEstimate& i_nu,
                                 const IntegralEstimate& j_nu);
RegionCertificate theorem_region(double kappa, double g, std::optional<double> beta,
                                 int nu);

}  // namespace njl::continuum
