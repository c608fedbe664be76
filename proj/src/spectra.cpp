#include "njl/spectra.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

namespace njl {

namespace {

Eigen::MatrixXcd extract_block(const Operator& op, const std::vector<int>& rows,
                               const std::vector<int>& cols) {
  Eigen::MatrixXcd out(rows.size(), cols.size());
  if (op.stored_dense()) {
    const DenseMatrix m = op.dense();
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < rows.size(); ++i)
        out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            m(rows[i], cols[j]);
    return out;
  }
  out.setZero();
  const SparseMatrix m = op.sparse();
  std::vector<int> row_pos(static_cast<std::size_t>(m.rows()), -1);
  for (std::size_t i = 0; i < rows.size(); ++i) row_pos[rows[i]] = static_cast<int>(i);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (SparseMatrix::InnerIterator it(m, cols[j]); it; ++it) {
      const int rp = row_pos[static_cast<std::size_t>(it.row())];
      if (rp >= 0) out(rp, static_cast<Eigen::Index>(j)) = it.value();
    }
  }
  return out;
}

bool conserves_number(const Operator& H) {
  const auto& basis = *H.col_basis();
  if (!basis.is_full()) return true;
  if (H.stored_dense()) {
    const DenseMatrix m = H.dense();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const int pc = std::popcount(basis.state(static_cast<std::size_t>(j)));
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        if (m(i, j) != cd(0.0, 0.0) &&
            std::popcount(basis.state(static_cast<std::size_t>(i))) != pc)
          return false;
      }
    }
    return true;
  }
  const SparseMatrix m = H.sparse();
  for (int j = 0; j < m.outerSize(); ++j) {
    const int pc = std::popcount(basis.state(static_cast<std::size_t>(j)));
    for (SparseMatrix::InnerIterator it(m, j); it; ++it) {
      if (it.value() != cd(0.0, 0.0) &&
          std::popcount(basis.state(static_cast<std::size_t>(it.row()))) != pc)
        return false;
    }
  }
  return true;
}

}  // namespace

SpectralDecomposition::SpectralDecomposition(std::shared_ptr<const FockBasis> basis,
                                             std::vector<SectorEigen> sectors)
    : basis_(std::move(basis)), sectors_(std::move(sectors)) {
  if (sectors_.empty()) throw std::invalid_argument("empty spectrum");
}

std::size_t SpectralDecomposition::dim() const {
  std::size_t d = 0;
  for (const auto& s : sectors_) d += s.members.size();
  return d;
}

double SpectralDecomposition::ground_energy() const {
  double e = std::numeric_limits<double>::infinity();
  for (const auto& s : sectors_)
    if (s.values.size() > 0) e = std::min(e, s.values(0));
  return e;
}

std::vector<double> SpectralDecomposition::all_eigenvalues() const {
  std::vector<double> out;
  out.reserve(dim());
  for (const auto& s : sectors_)
    for (Eigen::Index i = 0; i < s.values.size(); ++i) out.push_back(s.values(i));
  std::sort(out.begin(), out.end());
  return out;
}

double SpectralDecomposition::reconstruction_error(const Operator& H) const {
  double err = 0.0;
  for (const auto& s : sectors_) {
    const Eigen::MatrixXcd block = extract_block(H, s.members, s.members);
    const Eigen::MatrixXcd rebuilt =
        s.vectors * s.values.asDiagonal() * s.vectors.adjoint();
    err = std::max(err, (block - rebuilt).cwiseAbs().maxCoeff());
  }
  return err;
}

SpectralDecomposition diagonalize(const Operator& H, const DiagonalizeOptions& opts) {
  if (!H.is_square()) throw std::invalid_argument("diagonalize needs a square operator");
  const double scale = std::max(1.0, H.max_abs());
  if (H.hermiticity_error() > opts.hermiticity_tol * scale)
    throw std::invalid_argument("diagonalize needs a Hermitian operator");

  const auto basis = H.col_basis();
  std::map<int, std::vector<int>> groups;
  if (basis->sector()) {
    auto& g = groups[*basis->sector()];
    g.resize(basis->dim());
    for (std::size_t i = 0; i < basis->dim(); ++i) g[i] = static_cast<int>(i);
  } else if (opts.block_by_number && conserves_number(H)) {
    for (std::size_t i = 0; i < basis->dim(); ++i)
      groups[std::popcount(basis->state(i))].push_back(static_cast<int>(i));
  } else {
    auto& g = groups[-1];
    g.resize(basis->dim());
    for (std::size_t i = 0; i < basis->dim(); ++i) g[i] = static_cast<int>(i);
  }

  std::vector<SectorEigen> sectors;
  sectors.reserve(groups.size());
  for (auto& [n, members] : groups) {
    if (members.size() > opts.max_block_dim)
      throw std::runtime_error("diagonalization block exceeds the configured limit");
    const Eigen::MatrixXcd block = extract_block(H, members, members);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(block);
    if (solver.info() != Eigen::Success)
      throw std::runtime_error("eigensolver failed to converge");
    SectorEigen s;
    s.particles = n;
    s.members = std::move(members);
    s.values = solver.eigenvalues();
    s.vectors = solver.eigenvectors();
    sectors.push_back(std::move(s));
  }
  return SpectralDecomposition(basis, std::move(sectors));
}

double ThermalState::log_partition() const { return std::log(z) - params.beta * shift; }

ThermalState make_thermal(std::shared_ptr<const SpectralDecomposition> dec,
                          const ModelParams& params) {
  params.validate();
  ThermalState st;
  st.dec = std::move(dec);
  st.params = params;
  st.shift = st.dec->ground_energy();
  double z = 0.0;
  for (const auto& s : st.dec->sectors()) {
    Eigen::VectorXd w = (-params.beta * (s.values.array() - st.shift)).exp();
    z += w.sum();
    st.weights.push_back(std::move(w));
  }
  st.z = z;
  return st;
}

cd thermal_expectation(const ThermalState& state, const Operator& A) {
  if (!same_basis(*state.dec->basis(), *A.col_basis()) || !A.is_square())
    throw std::invalid_argument("operator basis does not match the thermal state");
  cd acc = 0.0;
  const auto& sectors = state.dec->sectors();
  for (std::size_t si = 0; si < sectors.size(); ++si) {
    const auto& s = sectors[si];
    const Eigen::MatrixXcd block = extract_block(A, s.members, s.members);
    const Eigen::MatrixXcd bv = block * s.vectors;
    for (Eigen::Index i = 0; i < s.values.size(); ++i)
      acc += state.weights[si](i) * s.vectors.col(i).dot(bv.col(i));
  }
  return acc / state.z;
}

double ground_expectation(const SpectralDecomposition& dec, const Operator& A,
                          double degeneracy_tol) {
  if (degeneracy_tol <= 0.0) throw std::invalid_argument("degeneracy tolerance must be > 0");
  if (!same_basis(*dec.basis(), *A.col_basis()) || !A.is_square())
    throw std::invalid_argument("operator basis does not match the decomposition");
  const double e0 = dec.ground_energy();
  cd acc = 0.0;
  int count = 0;
  for (const auto& s : dec.sectors()) {
    std::vector<Eigen::Index> picks;
    for (Eigen::Index i = 0; i < s.values.size(); ++i)
      if (s.values(i) <= e0 + degeneracy_tol) picks.push_back(i);
    if (picks.empty()) continue;
    const Eigen::MatrixXcd block = extract_block(A, s.members, s.members);
    for (Eigen::Index i : picks) {
      acc += s.vectors.col(i).dot(block * s.vectors.col(i));
      ++count;
    }
  }
  if (count == 0) throw std::logic_error("empty ground multiplet");
  return (acc / static_cast<double>(count)).real();
}

cd duhamel(const ThermalState& state, const Operator& A, const Operator& B) {
  const auto& dec = *state.dec;
  if (!same_basis(*dec.basis(), *A.col_basis()) || !same_basis(*dec.basis(), *B.col_basis()))
    throw std::invalid_argument("operator basis does not match the thermal state");
  const double beta = state.beta();
  const auto& sectors = dec.sectors();
  cd acc = 0.0;
  for (std::size_t a = 0; a < sectors.size(); ++a) {
    for (std::size_t b = 0; b < sectors.size(); ++b) {
      const auto& sa = sectors[a];
      const auto& sb = sectors[b];
      Eigen::MatrixXcd Aab = extract_block(A, sa.members, sb.members);
      if (Aab.size() == 0 || Aab.cwiseAbs().maxCoeff() == 0.0) continue;
      Eigen::MatrixXcd Bba = extract_block(B, sb.members, sa.members);
      const Eigen::MatrixXcd At = sa.vectors.adjoint() * Aab * sb.vectors;
      const Eigen::MatrixXcd Bt = sb.vectors.adjoint() * Bba * sa.vectors;
      for (Eigen::Index mi = 0; mi < sa.values.size(); ++mi) {
        const double em = sa.values(mi);
        const double wm = state.weights[a](mi);
        for (Eigen::Index ni = 0; ni < sb.values.size(); ++ni) {
          const double en = sb.values(ni);
          const double wn = state.weights[b](ni);
          double kernel;
          if (std::abs(em - en) < 1e-9 * std::max(1.0, std::abs(em))) {
            kernel = wm;  // degenerate-pair limit of the integrand
          } else {
            kernel = (wn - wm) / (beta * (em - en));
          }
          acc += At(mi, ni) * Bt(ni, mi) * kernel;
        }
      }
    }
  }
  return acc / state.z;
}

}  // namespace njl
