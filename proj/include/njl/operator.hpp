#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace njl {

class FockBasis;

using cd = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using SparseMatrix = Eigen::SparseMatrix<cd>;

// Operators at or below this dimension are stored dense, above it sparse.
inline constexpr std::size_t kDenseStorageLimit = 4096;

// A matrix over a Fock basis (rows and columns may live in different
// particle-number sectors, e.g. for annihilators). The label records what the
// matrix was built as.
class Operator {
 public:
  Operator(std::shared_ptr<const FockBasis> row_basis,
           std::shared_ptr<const FockBasis> col_basis, DenseMatrix matrix,
           std::string label = {});
  Operator(std::shared_ptr<const FockBasis> row_basis,
           std::shared_ptr<const FockBasis> col_basis, SparseMatrix matrix,
           std::string label = {});

  static Operator identity(std::shared_ptr<const FockBasis> basis,
                           std::string label = "1");

  const std::shared_ptr<const FockBasis>& row_basis() const { return row_basis_; }
  const std::shared_ptr<const FockBasis>& col_basis() const { return col_basis_; }
  std::size_t rows() const;
  std::size_t cols() const;
  bool is_square() const { return rows() == cols(); }

  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  bool stored_dense() const;
  DenseMatrix dense() const;
  SparseMatrix sparse() const;

  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;

  Operator adjoint() const;
  cd trace() const;
  double max_abs() const;
  // max-entry deviation from the conjugate transpose
  double hermiticity_error() const;

  Operator& operator+=(const Operator& other);
  Operator& operator-=(const Operator& other);
  Operator& operator*=(cd scale);
  Operator operator-() const;

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(Operator a, cd s) { return a *= s; }
  friend Operator operator*(cd s, Operator a) { return a *= s; }
  friend Operator operator*(const Operator& a, const Operator& b);

 private:
  std::shared_ptr<const FockBasis> row_basis_;
  std::shared_ptr<const FockBasis> col_basis_;
  std::string label_;
  std::variant<DenseMatrix, SparseMatrix> mat_;
};

double max_abs_diff(const Operator& a, const Operator& b);
Operator commutator(const Operator& a, const Operator& b);
Operator anticommutator(const Operator& a, const Operator& b);

// Triplet accumulator; picks dense or sparse storage when built.
class OperatorBuilder {
 public:
  OperatorBuilder(std::shared_ptr<const FockBasis> row_basis,
                  std::shared_ptr<const FockBasis> col_basis);
  explicit OperatorBuilder(std::shared_ptr<const FockBasis> basis);

  void add(std::size_t row, std::size_t col, cd value);
  Operator build(std::string label = {});

 private:
  std::shared_ptr<const FockBasis> row_basis_;
  std::shared_ptr<const FockBasis> col_basis_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Eigen::Triplet<cd>> entries_;
};

}  // namespace njl
