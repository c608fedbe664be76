#pragma once

#include <memory>
#include <vector>

#include "njl/hamiltonian.hpp"

namespace njl {

struct SectorEigen {
  int particles = -1;            // -1 when the block is the whole space
  std::vector<int> members;      // basis rows of this block, ascending
  Eigen::VectorXd values;        // ascending
  Eigen::MatrixXcd vectors;      // columns matching `values`
};

class SpectralDecomposition {
 public:
  SpectralDecomposition(std::shared_ptr<const FockBasis> basis,
                        std::vector<SectorEigen> sectors);

  const std::shared_ptr<const FockBasis>& basis() const { return basis_; }
  const std::vector<SectorEigen>& sectors() const { return sectors_; }
  std::size_t dim() const;
  double ground_energy() const;
  std::vector<double> all_eigenvalues() const;  // ascending

  // max-entry error of per-block V Lambda V† against H
  double reconstruction_error(const Operator& H) const;

 private:
  std::shared_ptr<const FockBasis> basis_;
  std::vector<SectorEigen> sectors_;
};

struct DiagonalizeOptions {
  bool block_by_number = true;
  std::size_t max_block_dim = 16384;
  double hermiticity_tol = 1e-12;
};

SpectralDecomposition diagonalize(const Operator& H,
                                  const DiagonalizeOptions& opts = {});

// Thermal data over a decomposition; weights are exp(-beta (E - shift)) with
// the shift at the global ground energy, and z is the shifted partition sum.
// All expectation formulas divide by z, so the shift cancels.
struct ThermalState {
  std::shared_ptr<const SpectralDecomposition> dec;
  ModelParams params;
  double shift = 0.0;
  std::vector<Eigen::VectorXd> weights;
  double z = 0.0;

  double beta() const { return params.beta; }
  double log_partition() const;  // log of the true Z
};

ThermalState make_thermal(std::shared_ptr<const SpectralDecomposition> dec,
                          const ModelParams& params);

cd thermal_expectation(const ThermalState& state, const Operator& A);

// Equal-weight average over all eigenstates within degeneracy_tol of the
// global minimum.
double ground_expectation(const SpectralDecomposition& dec, const Operator& A,
                          double degeneracy_tol = 1e-8);

// Duhamel two-point function (A, B).
cd duhamel(const ThermalState& state, const Operator& A, const Operator& B);

}  // namespace njl
