#pragma once

#include <random>
#include <vector>

#include "njl/fock.hpp"

namespace njl {

struct ModelParams {
  double kappa = 0.0;  // hopping amplitude
  double m = 0.0;      // staggered mass
  double g = 0.0;      // density-density coupling, >= 0
  double beta = 1.0;   // inverse temperature, > 0

  void validate() const;
};

// Real-valued deformation field h^(mu)(x).
class FieldH {
 public:
  explicit FieldH(const LatticeConfig& cfg);

  int nu() const { return nu_; }
  std::size_t volume() const { return volume_; }
  double at(int mu, std::size_t site) const;
  double& at(int mu, std::size_t site);
  bool is_zero() const;

  static FieldH random(const LatticeConfig& cfg, std::mt19937_64& rng,
                       double amplitude = 1.0);

 private:
  int nu_;
  std::size_t volume_;
  std::vector<double> values_;
};

// Hopping term H_K (all directions), with the staggered phases.
Operator build_hopping(std::shared_ptr<const FockBasis> basis, double kappa);
// Single direction H_{K,mu}.
Operator build_hopping_direction(std::shared_ptr<const FockBasis> basis, double kappa,
                                 int mu);
// O = sum_x (-1)^{sum x} rho(x)
Operator build_order_parameter(std::shared_ptr<const FockBasis> basis);
// g sum_{x,mu} rho(x) rho(x+e_mu)
Operator build_interaction(std::shared_ptr<const FockBasis> basis, double g);
// H(m) = H_K + m O + g sum rho rho
Operator build_hamiltonian(std::shared_ptr<const FockBasis> basis,
                           const ModelParams& params);
// H(m, h): hopping + mass + (g/2) sum_{x,mu} [rho(x) + rho(x+e_mu)
//          + (-1)^{sum x} h^(mu)(x)]^2, with the constant fixed so that
//          H(m, 0) agrees with build_hamiltonian entrywise.
Operator build_deformed(std::shared_ptr<const FockBasis> basis,
                        const ModelParams& params, const FieldH& field);
// The nu=3 free Hamiltonian with its explicit phase pattern and anti-periodic
// boundary conditions.
Operator build_free_nu3(std::shared_ptr<const FockBasis> basis, double kappa,
                        double m);
// sum_{x,y} n(x) G(x-y) (-1)^{par x + par y} n(y) with G the discrete Fourier
// transform of ghat; ghat is given on density_momenta(cfg) in that order.
Operator build_general_interaction(std::shared_ptr<const FockBasis> basis,
                                   const std::vector<double>& ghat,
                                   bool enforce_support = false,
                                   double eps0 = 0.0);

// One-particle kernel M of the kinetic term, H_K = sum_{x,y} M_xy psi†(x)psi(y).
Eigen::MatrixXcd one_particle_hopping(const LatticeConfig& cfg, double kappa);

}  // namespace njl
