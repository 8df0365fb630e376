#include "wirecomp/matrix.hpp"

#include <cmath>
#include <utility>

namespace wirecomp {

namespace {

void check_finite(const std::vector<double>& entries) {
  for (double v : entries) {
    if (!std::isfinite(v)) {
      throw ValueError("matrix entries must be finite (got NaN or infinity)");
    }
  }
}

std::string shape_of(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, 0.0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw DimensionError("entry count " + std::to_string(entries_.size()) +
                         " does not match shape " + shape_of(rows_, cols_));
  }
  check_finite(entries_);
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) {
      throw DimensionError("ragged rows in matrix literal");
    }
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
  check_finite(entries_);
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = 1.0;
  return m;
}

Matrix Matrix::row_vector(std::span<const double> v) {
  return Matrix(1, v.size(), std::vector<double>(v.begin(), v.end()));
}

Matrix Matrix::col_vector(std::span<const double> v) {
  return Matrix(v.size(), 1, std::vector<double>(v.begin(), v.end()));
}

void Matrix::set(std::size_t r, std::size_t c, double v) {
  if (r >= rows_ || c >= cols_) {
    throw DimensionError("index (" + std::to_string(r) + "," + std::to_string(c) +
                         ") out of range for " + shape_str());
  }
  if (!std::isfinite(v)) {
    throw ValueError("matrix entries must be finite (got NaN or infinity)");
  }
  entries_[r * cols_ + c] = v;
}

std::string Matrix::shape_str() const { return shape_of(rows_, cols_); }

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("mat_mul shape mismatch: " + a.shape_str() + " * " +
                         b.shape_str());
  }
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        out.set(i, j, out(i, j) + aik * b(k, j));
      }
    }
  }
  return out;
}

Matrix mat_add(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("mat_add shape mismatch: " + a.shape_str() + " + " +
                         b.shape_str());
  }
  Matrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.set(i, j, a(i, j) + b(i, j));
  return out;
}

Matrix mat_sub(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("mat_sub shape mismatch: " + a.shape_str() + " - " +
                         b.shape_str());
  }
  Matrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.set(i, j, a(i, j) - b(i, j));
  return out;
}

Matrix mat_scale(const Matrix& a, double k) {
  Matrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.set(i, j, k * a(i, j));
  return out;
}

Matrix transpose(const Matrix& m) {
  Matrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.set(j, i, m(i, j));
  return out;
}

Matrix block_diag(std::span<const Matrix> blocks) {
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  Matrix out(rows, cols);
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) out.set(r + i, c + j, b(i, j));
    r += b.rows();
    c += b.cols();
  }
  return out;
}

Matrix block_diag(std::initializer_list<Matrix> blocks) {
  return block_diag(std::span<const Matrix>(blocks.begin(), blocks.size()));
}

Matrix submatrix(const Matrix& m, std::size_t r0, std::size_t r1,
                 std::size_t c0, std::size_t c1) {
  if (r0 > r1 || c0 > c1 || r1 > m.rows() || c1 > m.cols()) {
    throw DimensionError("submatrix range [" + std::to_string(r0) + "," +
                         std::to_string(r1) + ")x[" + std::to_string(c0) + "," +
                         std::to_string(c1) + ") out of bounds for " +
                         m.shape_str());
  }
  Matrix out(r1 - r0, c1 - c0);
  for (std::size_t i = r0; i < r1; ++i)
    for (std::size_t j = c0; j < c1; ++j) out.set(i - r0, j - c0, m(i, j));
  return out;
}

Matrix hcat(std::span<const Matrix> parts) {
  if (parts.empty()) return Matrix();
  const std::size_t rows = parts.front().rows();
  std::size_t cols = 0;
  for (const auto& p : parts) {
    if (p.rows() != rows) {
      throw DimensionError("hcat row mismatch: " + parts.front().shape_str() +
                           " vs " + p.shape_str());
    }
    cols += p.cols();
  }
  Matrix out(rows, cols);
  std::size_t c = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < p.rows(); ++i)
      for (std::size_t j = 0; j < p.cols(); ++j) out.set(i, c + j, p(i, j));
    c += p.cols();
  }
  return out;
}

Matrix vcat(std::span<const Matrix> parts) {
  if (parts.empty()) return Matrix();
  const std::size_t cols = parts.front().cols();
  std::size_t rows = 0;
  for (const auto& p : parts) {
    if (p.cols() != cols) {
      throw DimensionError("vcat column mismatch: " + parts.front().shape_str() +
                           " vs " + p.shape_str());
    }
    rows += p.rows();
  }
  Matrix out(rows, cols);
  std::size_t r = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < p.rows(); ++i)
      for (std::size_t j = 0; j < p.cols(); ++j) out.set(r + i, j, p(i, j));
    r += p.rows();
  }
  return out;
}

Matrix hcat(std::initializer_list<Matrix> parts) {
  return hcat(std::span<const Matrix>(parts.begin(), parts.size()));
}

Matrix vcat(std::initializer_list<Matrix> parts) {
  return vcat(std::span<const Matrix>(parts.begin(), parts.size()));
}

std::vector<double> mat_vec(const Matrix& m, std::span<const double> v) {
  if (m.cols() != v.size()) {
    throw DimensionError("mat_vec shape mismatch: " + m.shape_str() +
                         " * vector of length " + std::to_string(v.size()));
  }
  std::vector<double> out(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

ApproxReport approx_eq(const Matrix& a, const Matrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("approx_eq shape mismatch: " + a.shape_str() + " vs " +
                         b.shape_str());
  }
  ApproxReport rep;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double d = std::abs(a(i, j) - b(i, j));
      if (d > rep.max_diff) {
        rep.max_diff = d;
        rep.row = i;
        rep.col = j;
      }
    }
  }
  rep.ok = rep.max_diff <= tol;
  return rep;
}

}  // namespace wirecomp
