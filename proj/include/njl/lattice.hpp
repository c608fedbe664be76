#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace njl {

// Hypercubic lattice [-L+1, L]^nu with periodic site identification.
//
// Flat site indices are row-major over coordinates shifted to [0, 2L), with
// the first coordinate most significant. This ordering is the global fermion
// ordering convention: every Jordan-Wigner string in the code refers to it.
class LatticeConfig {
 public:
  LatticeConfig(int nu, int half_length);

  int nu() const { return nu_; }
  int half_length() const { return half_length_; }
  int side() const { return 2 * half_length_; }
  std::size_t volume() const { return volume_; }

  std::size_t flat_index(std::span<const int> coords) const;
  std::vector<int> coords(std::size_t index) const;

  // Periodic neighbour in direction mu (1-based), step = +1 or -1.
  std::size_t neighbor(std::size_t index, int mu, int step = 1) const;
  // True when the +e_mu bond starting at `index` wraps around (x_mu == L).
  bool crosses_boundary(std::size_t index, int mu) const;

 private:
  int nu_;
  int half_length_;
  std::size_t volume_;
};

// (-1)^{x1 + ... + xnu}
int parity_sign(std::span<const int> coords);
int parity_sign(const LatticeConfig& cfg, std::size_t index);

// Staggered hopping exponent theta_mu(x) reduced mod 2. The exponent picks up
// an extra +1 at x_mu = L, which realizes the anti-periodic boundary.
int staggered_exponent(const LatticeConfig& cfg, std::span<const int> coords, int mu);
// (-1)^{theta_mu(x)}
int staggered_phase(const LatticeConfig& cfg, std::span<const int> coords, int mu);
int staggered_phase(const LatticeConfig& cfg, std::size_t index, int mu);

enum class MomentumGrid { density, fermion };

// A lattice momentum with components in (-pi, pi], stored by integer label.
//
// density grid:  k_i = pi*n/L with n in {-L+1, ..., L}; closed under negation
//                and contains Q = (pi, ..., pi). Used for density bilinears.
// fermion grid:  k_i = pi*(2n+1)/(2L) with n in {-L, ..., L-1}; satisfies
//                exp(i k 2L) = -1 (anti-periodic one-particle waves).
class Momentum {
 public:
  Momentum(MomentumGrid grid, std::vector<int> labels, int half_length);

  MomentumGrid grid() const { return grid_; }
  int dim() const { return static_cast<int>(labels_.size()); }
  int half_length() const { return half_length_; }
  const std::vector<int>& labels() const { return labels_; }

  double component(int i) const;
  std::vector<double> components() const;

  Momentum negated() const;
  Momentum shifted_by_pi(int axis) const;  // k -> k + pi e_axis, same grid
  Momentum shifted_by_Q() const;           // shift every component by pi
  bool is_Q() const;                       // density grid only

  double dot(std::span<const int> coords) const;

  bool operator==(const Momentum& other) const;

 private:
  MomentumGrid grid_;
  std::vector<int> labels_;
  int half_length_;
};

std::vector<Momentum> density_momenta(const LatticeConfig& cfg);
std::vector<Momentum> fermion_momenta(const LatticeConfig& cfg);
Momentum momentum_Q(const LatticeConfig& cfg);

// E_p = (1/2) sum_i (1 - cos p_i). E_0 = 0, E_Q = nu.
double dispersion(std::span<const double> components);
double dispersion(const Momentum& p);

}  // namespace njl
