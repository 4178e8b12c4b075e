#ifndef GAUDIN_MATRIX_HPP
#define GAUDIN_MATRIX_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "gaudin/rational.hpp"

namespace gaudin {

// Dense row-major matrix over the rationals. Every operation is exact.
struct Mat {
  std::size_t rows = 0, cols = 0;
  std::vector<Rat> a;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Rat(0)) {}

  static Mat identity(std::size_t n);

  Rat& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Rat& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator*(const Mat& o) const;
  Mat operator*(const Rat& c) const;
  Mat transpose() const;
  bool is_zero() const;
  Rat trace() const;

  std::string str() const;  // "[[1,2],[3,4]]" with exact rationals
};

// Stacks blocks vertically; all blocks must share a column count.
Mat vstack(const std::vector<Mat>& blocks);

// In-place reduced row echelon form; returns the pivot column indices.
std::vector<std::size_t> rref(Mat& M);

std::size_t rank(Mat M);

// Columns form a basis of the right kernel; (n x 0) when the kernel is zero.
Mat kernel_basis(const Mat& M);

// Exact solve A X = B. Throws std::domain_error when inconsistent; free
// variables (rank-deficient A) are set to zero.
Mat solve(const Mat& A, const Mat& B);

}  // namespace gaudin

#endif
