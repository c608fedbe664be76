#pragma once

#include <vector>

#include "njl/fock.hpp"

namespace njl {

struct FermionFactor {
  std::size_t site;
  bool dagger;
};

// One ordered generator word with its coefficient; leftmost factor first.
struct FermionTerm {
  cd coeff;
  std::vector<FermionFactor> word;
};

// Finite linear combination of ordered products of psi / psi†. Used for
// operators that must be transported through the antilinear reflection, which
// acts on generator strings rather than on matrices.
class FermionPolynomial {
 public:
  FermionPolynomial() = default;

  static FermionPolynomial identity(cd c = cd(1.0, 0.0));

  void add_term(cd coeff, std::vector<FermionFactor> word);
  const std::vector<FermionTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  // true when every word has even length
  bool even_parity() const;

 private:
  std::vector<FermionTerm> terms_;
};

Operator to_operator(std::shared_ptr<const FockBasis> basis,
                     const FermionPolynomial& poly, std::string label = {});

// Largest matrix entry of the polynomial, computed by acting on every basis
// state without materializing the matrix.
double action_max_abs(const FockBasis& basis, const FermionPolynomial& poly);

}  // namespace njl
