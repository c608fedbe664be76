#include "njl/fock.hpp"

#include <bit>
#include <stdexcept>

namespace njl {

namespace {

constexpr int kMaxSites = 16;  // full dimension cap 2^16; block by sector beyond

}  // namespace

FockBasis::FockBasis(const LatticeConfig& cfg, std::optional<int> sector)
    : cfg_(cfg), sector_(sector) {
  const int v = sites();
  if (v > kMaxSites)
    throw std::runtime_error(
        "lattice exceeds the configured dimension cap (full dimension > 2^16)");
  if (!sector_) return;
  if (*sector_ < 0 || *sector_ > v)
    throw std::invalid_argument("particle number outside [0, sites]");
  const std::uint32_t total = 1u << v;
  lookup_.assign(total, -1);
  for (std::uint32_t s = 0; s < total; ++s) {
    if (std::popcount(s) == *sector_) {
      lookup_[s] = static_cast<std::int32_t>(states_.size());
      states_.push_back(s);
    }
  }
}

std::shared_ptr<const FockBasis> FockBasis::full(const LatticeConfig& cfg) {
  return std::shared_ptr<const FockBasis>(new FockBasis(cfg, std::nullopt));
}

std::shared_ptr<const FockBasis> FockBasis::number_sector(const LatticeConfig& cfg,
                                                          int particles) {
  return std::shared_ptr<const FockBasis>(new FockBasis(cfg, particles));
}

std::size_t FockBasis::dim() const {
  if (is_full()) return std::size_t{1} << sites();
  return states_.size();
}

std::uint32_t FockBasis::state(std::size_t i) const {
  if (i >= dim()) throw std::out_of_range("basis index out of range");
  if (is_full()) return static_cast<std::uint32_t>(i);
  return states_[i];
}

std::ptrdiff_t FockBasis::index_of(std::uint32_t s) const {
  if (is_full()) {
    if (s >= (std::uint32_t{1} << sites())) return -1;
    return static_cast<std::ptrdiff_t>(s);
  }
  if (s >= lookup_.size()) return -1;
  return lookup_[s];
}

bool same_basis(const FockBasis& a, const FockBasis& b) {
  return a.lattice().nu() == b.lattice().nu() &&
         a.lattice().half_length() == b.lattice().half_length() &&
         a.sector() == b.sector();
}

int jw_sign(std::uint32_t state, int site) {
  const std::uint32_t mask = (std::uint32_t{1} << site) - 1;
  return (std::popcount(state & mask) & 1) ? -1 : 1;
}

namespace {

void check_site(const FockBasis& basis, std::size_t site) {
  if (site >= static_cast<std::size_t>(basis.sites()))
    throw std::out_of_range("site index outside the lattice");
}

}  // namespace

Operator annihilator(std::shared_ptr<const FockBasis> basis, std::size_t site) {
  check_site(*basis, site);
  std::shared_ptr<const FockBasis> rows = basis;
  if (!basis->is_full()) {
    const int n = *basis->sector();
    if (n == 0)
      throw std::invalid_argument("sector mismatch: annihilator needs particles to remove");
    rows = FockBasis::number_sector(basis->lattice(), n - 1);
  }
  OperatorBuilder b(rows, basis);
  const std::uint32_t bit = std::uint32_t{1} << site;
  for (std::size_t c = 0; c < basis->dim(); ++c) {
    const std::uint32_t s = basis->state(c);
    if (!(s & bit)) continue;
    const auto r = rows->index_of(s ^ bit);
    b.add(static_cast<std::size_t>(r), c, cd(jw_sign(s, static_cast<int>(site)), 0.0));
  }
  return b.build("psi");
}

Operator creator(std::shared_ptr<const FockBasis> basis, std::size_t site) {
  check_site(*basis, site);
  std::shared_ptr<const FockBasis> rows = basis;
  if (!basis->is_full()) {
    const int n = *basis->sector();
    if (n == basis->sites())
      throw std::invalid_argument("sector mismatch: creator needs room for a particle");
    rows = FockBasis::number_sector(basis->lattice(), n + 1);
  }
  OperatorBuilder b(rows, basis);
  const std::uint32_t bit = std::uint32_t{1} << site;
  for (std::size_t c = 0; c < basis->dim(); ++c) {
    const std::uint32_t s = basis->state(c);
    if (s & bit) continue;
    const auto r = rows->index_of(s | bit);
    b.add(static_cast<std::size_t>(r), c, cd(jw_sign(s, static_cast<int>(site)), 0.0));
  }
  return b.build("psi†");
}

Operator number_op(std::shared_ptr<const FockBasis> basis, std::size_t site) {
  check_site(*basis, site);
  OperatorBuilder b(basis);
  const std::uint32_t bit = std::uint32_t{1} << site;
  for (std::size_t c = 0; c < basis->dim(); ++c)
    if (basis->state(c) & bit) b.add(c, c, 1.0);
  return b.build("n");
}

Operator total_number(std::shared_ptr<const FockBasis> basis) {
  OperatorBuilder b(basis);
  for (std::size_t c = 0; c < basis->dim(); ++c)
    b.add(c, c, cd(std::popcount(basis->state(c)), 0.0));
  return b.build("N");
}

Operator charge_density(std::shared_ptr<const FockBasis> basis, std::size_t site) {
  check_site(*basis, site);
  OperatorBuilder b(basis);
  const std::uint32_t bit = std::uint32_t{1} << site;
  for (std::size_t c = 0; c < basis->dim(); ++c)
    b.add(c, c, (basis->state(c) & bit) ? cd(0.5, 0.0) : cd(-0.5, 0.0));
  return b.build("rho");
}

Operator majorana(std::shared_ptr<const FockBasis> basis, std::size_t site,
                  MajoranaKind kind) {
  check_site(*basis, site);
  if (!basis->is_full())
    throw std::invalid_argument("Majorana operators mix particle-number sectors");
  OperatorBuilder b(basis);
  const std::uint32_t bit = std::uint32_t{1} << site;
  for (std::size_t c = 0; c < basis->dim(); ++c) {
    const std::uint32_t s = basis->state(c);
    const double sign = jw_sign(s, static_cast<int>(site));
    const std::size_t r = static_cast<std::size_t>(s ^ bit);
    if (kind == MajoranaKind::xi) {
      b.add(r, c, cd(sign, 0.0));
    } else {
      // i(psi† - psi): +i on empty sites, -i on occupied ones
      b.add(r, c, (s & bit) ? cd(0.0, -sign) : cd(0.0, sign));
    }
  }
  return b.build(kind == MajoranaKind::xi ? "xi" : "eta");
}

}  // namespace njl
