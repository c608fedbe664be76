#include "njl/operator.hpp"

#include <stdexcept>

#include "njl/fock.hpp"

namespace njl {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void check_same(const std::shared_ptr<const FockBasis>& a,
                const std::shared_ptr<const FockBasis>& b, const char* what) {
  require(a && b && same_basis(*a, *b), what);
}

}  // namespace

Operator::Operator(std::shared_ptr<const FockBasis> row_basis,
                   std::shared_ptr<const FockBasis> col_basis, DenseMatrix matrix,
                   std::string label)
    : row_basis_(std::move(row_basis)),
      col_basis_(std::move(col_basis)),
      label_(std::move(label)),
      mat_(std::move(matrix)) {
  require(row_basis_ && col_basis_, "operator needs bases");
  require(static_cast<std::size_t>(std::get<DenseMatrix>(mat_).rows()) == row_basis_->dim() &&
              static_cast<std::size_t>(std::get<DenseMatrix>(mat_).cols()) == col_basis_->dim(),
          "matrix shape does not match bases");
}

Operator::Operator(std::shared_ptr<const FockBasis> row_basis,
                   std::shared_ptr<const FockBasis> col_basis, SparseMatrix matrix,
                   std::string label)
    : row_basis_(std::move(row_basis)),
      col_basis_(std::move(col_basis)),
      label_(std::move(label)),
      mat_(std::move(matrix)) {
  require(row_basis_ && col_basis_, "operator needs bases");
  require(static_cast<std::size_t>(std::get<SparseMatrix>(mat_).rows()) == row_basis_->dim() &&
              static_cast<std::size_t>(std::get<SparseMatrix>(mat_).cols()) == col_basis_->dim(),
          "matrix shape does not match bases");
}

Operator Operator::identity(std::shared_ptr<const FockBasis> basis, std::string label) {
  const std::size_t d = basis->dim();
  if (d <= kDenseStorageLimit) {
    return Operator(basis, basis, DenseMatrix::Identity(d, d), std::move(label));
  }
  SparseMatrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  m.setIdentity();
  return Operator(basis, basis, std::move(m), std::move(label));
}

std::size_t Operator::rows() const { return row_basis_->dim(); }
std::size_t Operator::cols() const { return col_basis_->dim(); }

bool Operator::stored_dense() const { return std::holds_alternative<DenseMatrix>(mat_); }

DenseMatrix Operator::dense() const {
  if (stored_dense()) return std::get<DenseMatrix>(mat_);
  return DenseMatrix(std::get<SparseMatrix>(mat_));
}

SparseMatrix Operator::sparse() const {
  if (!stored_dense()) return std::get<SparseMatrix>(mat_);
  return std::get<DenseMatrix>(mat_).sparseView();
}

Eigen::VectorXcd Operator::apply(const Eigen::VectorXcd& v) const {
  require(static_cast<std::size_t>(v.size()) == cols(), "vector size mismatch");
  if (stored_dense()) return std::get<DenseMatrix>(mat_) * v;
  return std::get<SparseMatrix>(mat_) * v;
}

Operator Operator::adjoint() const {
  if (stored_dense()) {
    return Operator(col_basis_, row_basis_, DenseMatrix(std::get<DenseMatrix>(mat_).adjoint()),
                    label_.empty() ? label_ : label_ + "†");
  }
  SparseMatrix m = std::get<SparseMatrix>(mat_).adjoint();
  return Operator(col_basis_, row_basis_, std::move(m),
                  label_.empty() ? label_ : label_ + "†");
}

cd Operator::trace() const {
  require(is_square(), "trace needs a square operator");
  if (stored_dense()) return std::get<DenseMatrix>(mat_).trace();
  const auto& m = std::get<SparseMatrix>(mat_);
  cd t = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) t += m.coeff(i, i);
  return t;
}

double Operator::max_abs() const {
  if (stored_dense()) {
    const auto& m = std::get<DenseMatrix>(mat_);
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
  }
  const auto& m = std::get<SparseMatrix>(mat_);
  double mx = 0.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it)
      mx = std::max(mx, std::abs(it.value()));
  return mx;
}

double Operator::hermiticity_error() const {
  if (!is_square()) return std::numeric_limits<double>::infinity();
  if (stored_dense()) {
    const auto& m = std::get<DenseMatrix>(mat_);
    return m.size() == 0 ? 0.0 : (m - m.adjoint()).cwiseAbs().maxCoeff();
  }
  const auto& m = std::get<SparseMatrix>(mat_);
  SparseMatrix d = m - SparseMatrix(m.adjoint());
  double mx = 0.0;
  for (int k = 0; k < d.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(d, k); it; ++it)
      mx = std::max(mx, std::abs(it.value()));
  return mx;
}

Operator& Operator::operator+=(const Operator& other) {
  check_same(row_basis_, other.row_basis_, "operator sum: row basis mismatch");
  check_same(col_basis_, other.col_basis_, "operator sum: column basis mismatch");
  if (stored_dense() || other.stored_dense()) {
    mat_ = DenseMatrix(dense() + other.dense());
  } else {
    mat_ = SparseMatrix(std::get<SparseMatrix>(mat_) + other.sparse());
  }
  return *this;
}

Operator& Operator::operator-=(const Operator& other) {
  check_same(row_basis_, other.row_basis_, "operator difference: row basis mismatch");
  check_same(col_basis_, other.col_basis_, "operator difference: column basis mismatch");
  if (stored_dense() || other.stored_dense()) {
    mat_ = DenseMatrix(dense() - other.dense());
  } else {
    mat_ = SparseMatrix(std::get<SparseMatrix>(mat_) - other.sparse());
  }
  return *this;
}

Operator& Operator::operator*=(cd scale) {
  if (stored_dense()) {
    std::get<DenseMatrix>(mat_) *= scale;
  } else {
    std::get<SparseMatrix>(mat_) *= scale;
  }
  return *this;
}

Operator Operator::operator-() const {
  Operator out = *this;
  out *= cd(-1.0, 0.0);
  return out;
}

Operator operator*(const Operator& a, const Operator& b) {
  check_same(a.col_basis_, b.row_basis_, "operator product: inner basis mismatch");
  if (a.stored_dense() || b.stored_dense()) {
    return Operator(a.row_basis_, b.col_basis_, DenseMatrix(a.dense() * b.dense()));
  }
  SparseMatrix m = (std::get<SparseMatrix>(a.mat_) * std::get<SparseMatrix>(b.mat_)).pruned();
  return Operator(a.row_basis_, b.col_basis_, std::move(m));
}

double max_abs_diff(const Operator& a, const Operator& b) {
  Operator d = a;
  d -= b;
  return d.max_abs();
}

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

Operator anticommutator(const Operator& a, const Operator& b) { return a * b + b * a; }

OperatorBuilder::OperatorBuilder(std::shared_ptr<const FockBasis> row_basis,
                                 std::shared_ptr<const FockBasis> col_basis)
    : row_basis_(std::move(row_basis)), col_basis_(std::move(col_basis)) {
  require(row_basis_ && col_basis_, "builder needs bases");
  rows_ = row_basis_->dim();
  cols_ = col_basis_->dim();
}

OperatorBuilder::OperatorBuilder(std::shared_ptr<const FockBasis> basis)
    : OperatorBuilder(basis, basis) {}

void OperatorBuilder::add(std::size_t row, std::size_t col, cd value) {
  if (value == cd(0.0, 0.0)) return;
  entries_.emplace_back(static_cast<int>(row), static_cast<int>(col), value);
}

Operator OperatorBuilder::build(std::string label) {
  if (std::max(rows_, cols_) <= kDenseStorageLimit) {
    DenseMatrix m = DenseMatrix::Zero(rows_, cols_);
    for (const auto& t : entries_) m(t.row(), t.col()) += t.value();
    return Operator(row_basis_, col_basis_, std::move(m), std::move(label));
  }
  SparseMatrix m(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
  m.setFromTriplets(entries_.begin(), entries_.end());
  return Operator(row_basis_, col_basis_, std::move(m), std::move(label));
}

}  // namespace njl
