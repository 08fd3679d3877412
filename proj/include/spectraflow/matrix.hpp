#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace spectraflow {

// Dense row-major real matrix. Used both for general operators (a, a†) and
// for the real symmetric Hamiltonians; symmetry is checked where it matters.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  std::vector<double> column(std::size_t j) const;

  Matrix transposed() const;
  double trace() const;
  double frobenius_norm() const;
  double max_abs() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator*(double s, Matrix m);
Matrix operator*(const Matrix& lhs, const Matrix& rhs);
std::vector<double> operator*(const Matrix& m, std::span<const double> v);

// Kronecker product; lhs acts on the outer (slow) index.
Matrix kron(const Matrix& lhs, const Matrix& rhs);

// lhs·rhs − rhs·lhs
Matrix commutator(const Matrix& lhs, const Matrix& rhs);

// Largest |M(i,j) − M(j,i)|.
double symmetry_defect(const Matrix& m);

// True when symmetry_defect(m) <= rel_tol * max|M| (exact zero matrices pass).
bool is_symmetric(const Matrix& m, double rel_tol = 1e-12);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> v);

} // namespace spectraflow
