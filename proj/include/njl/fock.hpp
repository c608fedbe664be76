#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "njl/lattice.hpp"
#include "njl/operator.hpp"

namespace njl {

// Occupation-number basis over the lattice sites: the full Fock space or one
// fixed particle-number sector. Bit i of a state is the occupation of flat
// site i; states are ordered by their integer encoding.
class FockBasis {
 public:
  static std::shared_ptr<const FockBasis> full(const LatticeConfig& cfg);
  static std::shared_ptr<const FockBasis> number_sector(const LatticeConfig& cfg,
                                                        int particles);

  const LatticeConfig& lattice() const { return cfg_; }
  std::optional<int> sector() const { return sector_; }
  bool is_full() const { return !sector_.has_value(); }
  int sites() const { return static_cast<int>(cfg_.volume()); }
  std::size_t dim() const;

  std::uint32_t state(std::size_t i) const;
  // Position of a bitstring in the basis, -1 when absent.
  std::ptrdiff_t index_of(std::uint32_t s) const;

 private:
  FockBasis(const LatticeConfig& cfg, std::optional<int> sector);

  LatticeConfig cfg_;
  std::optional<int> sector_;
  std::vector<std::uint32_t> states_;      // sector basis only
  std::vector<std::int32_t> lookup_;       // sector basis only
};

bool same_basis(const FockBasis& a, const FockBasis& b);

// Jordan-Wigner sign (-1)^{# occupied flat sites strictly below `site`}.
int jw_sign(std::uint32_t state, int site);

enum class MajoranaKind { xi, eta };

Operator annihilator(std::shared_ptr<const FockBasis> basis, std::size_t site);
Operator creator(std::shared_ptr<const FockBasis> basis, std::size_t site);
Operator number_op(std::shared_ptr<const FockBasis> basis, std::size_t site);
Operator total_number(std::shared_ptr<const FockBasis> basis);
// rho(x) = n(x) - 1/2
Operator charge_density(std::shared_ptr<const FockBasis> basis, std::size_t site);
// xi = psi† + psi, eta = i(psi† - psi); full basis only.
Operator majorana(std::shared_ptr<const FockBasis> basis, std::size_t site,
                  MajoranaKind kind);

}  // namespace njl
