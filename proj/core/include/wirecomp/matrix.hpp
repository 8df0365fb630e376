#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wirecomp {

/// Raised when operand shapes do not line up. The message names both shapes.
struct DimensionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when a non-finite entry reaches a constructor.
struct ValueError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dense row-major matrix of doubles. Immutable in practice: every operation
/// returns a fresh value. Construction rejects NaN/infinity.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);  // zero-filled
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix row_vector(std::span<const double> v);
  static Matrix col_vector(std::span<const double> v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }
  void set(std::size_t r, std::size_t c, double v);

  const std::vector<double>& entries() const { return entries_; }
  std::string shape_str() const;

  bool operator==(const Matrix& other) const = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> entries_;
};

Matrix mat_mul(const Matrix& a, const Matrix& b);
Matrix mat_add(const Matrix& a, const Matrix& b);
Matrix mat_sub(const Matrix& a, const Matrix& b);
Matrix mat_scale(const Matrix& a, double k);
Matrix transpose(const Matrix& m);

inline Matrix operator*(const Matrix& a, const Matrix& b) { return mat_mul(a, b); }
inline Matrix operator+(const Matrix& a, const Matrix& b) { return mat_add(a, b); }
inline Matrix operator-(const Matrix& a, const Matrix& b) { return mat_sub(a, b); }

/// Block-diagonal assembly; the empty list yields the 0x0 matrix.
Matrix block_diag(std::span<const Matrix> blocks);
Matrix block_diag(std::initializer_list<Matrix> blocks);

/// Contiguous block m[r0..r1) x [c0..c1). Half-open ranges.
Matrix submatrix(const Matrix& m, std::size_t r0, std::size_t r1,
                 std::size_t c0, std::size_t c1);

Matrix hcat(std::span<const Matrix> parts);
Matrix vcat(std::span<const Matrix> parts);
Matrix hcat(std::initializer_list<Matrix> parts);
Matrix vcat(std::initializer_list<Matrix> parts);

/// Matrix-vector product (v as a column).
std::vector<double> mat_vec(const Matrix& m, std::span<const double> v);

struct ApproxReport {
  bool ok = true;
  double max_diff = 0.0;
  std::size_t row = 0;
  std::size_t col = 0;
};

constexpr double kDefaultTol = 1e-9;

/// Entrywise comparison; the report always carries the max absolute
/// difference and where it occurred.
ApproxReport approx_eq(const Matrix& a, const Matrix& b, double tol = kDefaultTol);

}  // namespace wirecomp
