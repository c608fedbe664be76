#include "njl/polynomial.hpp"

#include <stdexcept>

namespace njl {

FermionPolynomial FermionPolynomial::identity(cd c) {
  FermionPolynomial p;
  p.add_term(c, {});
  return p;
}

void FermionPolynomial::add_term(cd coeff, std::vector<FermionFactor> word) {
  terms_.push_back(FermionTerm{coeff, std::move(word)});
}

bool FermionPolynomial::even_parity() const {
  for (const auto& t : terms_)
    if (t.word.size() % 2 != 0) return false;
  return true;
}

double action_max_abs(const FockBasis& basis, const FermionPolynomial& poly) {
  if (!basis.is_full())
    throw std::invalid_argument("generator words need the full Fock basis");
  double worst = 0.0;
  std::vector<std::pair<std::uint32_t, cd>> column;
  for (std::size_t c = 0; c < basis.dim(); ++c) {
    column.clear();
    for (const auto& term : poly.terms()) {
      std::uint32_t s = basis.state(c);
      double sign = 1.0;
      bool dead = false;
      for (auto it = term.word.rbegin(); it != term.word.rend(); ++it) {
        const std::uint32_t bit = std::uint32_t{1} << it->site;
        const bool occupied = (s & bit) != 0;
        if (it->dagger == occupied) {
          dead = true;
          break;
        }
        sign *= jw_sign(s, static_cast<int>(it->site));
        s ^= bit;
      }
      if (dead) continue;
      bool merged = false;
      for (auto& [state, amp] : column) {
        if (state == s) {
          amp += term.coeff * sign;
          merged = true;
          break;
        }
      }
      if (!merged) column.emplace_back(s, term.coeff * sign);
    }
    for (const auto& [state, amp] : column) worst = std::max(worst, std::abs(amp));
  }
  return worst;
}

Operator to_operator(std::shared_ptr<const FockBasis> basis,
                     const FermionPolynomial& poly, std::string label) {
  if (!basis->is_full())
    throw std::invalid_argument("generator words need the full Fock basis");
  OperatorBuilder b(basis);
  for (const auto& term : poly.terms()) {
    for (std::size_t c = 0; c < basis->dim(); ++c) {
      std::uint32_t s = basis->state(c);
      double sign = 1.0;
      bool dead = false;
      // apply the word right to left
      for (auto it = term.word.rbegin(); it != term.word.rend(); ++it) {
        const std::uint32_t bit = std::uint32_t{1} << it->site;
        const bool occupied = (s & bit) != 0;
        if (it->dagger == occupied) {  // psi† on occupied or psi on empty
          dead = true;
          break;
        }
        sign *= jw_sign(s, static_cast<int>(it->site));
        s ^= bit;
      }
      if (dead) continue;
      b.add(static_cast<std::size_t>(basis->index_of(s)), c, term.coeff * sign);
    }
  }
  return b.build(std::move(label));
}

}  // namespace njl
