#include "gaudin/matrix.hpp"

#include <stdexcept>

namespace gaudin {

Mat Mat::identity(std::size_t n) {
  Mat I(n, n);
  for (std::size_t i = 0; i < n; ++i) I.at(i, i) = 1;
  return I;
}

Mat Mat::operator+(const Mat& o) const {
  if (rows != o.rows || cols != o.cols) throw std::invalid_argument("Mat+: shape mismatch");
  Mat r(rows, cols);
  for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] + o.a[i];
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  if (rows != o.rows || cols != o.cols) throw std::invalid_argument("Mat-: shape mismatch");
  Mat r(rows, cols);
  for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] - o.a[i];
  return r;
}

Mat Mat::operator*(const Mat& o) const {
  if (cols != o.rows) throw std::invalid_argument("Mat*: shape mismatch");
  Mat r(rows, o.cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k) {
      const Rat& v = at(i, k);
      if (v == 0) continue;
      for (std::size_t j = 0; j < o.cols; ++j) {
        if (o.at(k, j) == 0) continue;
        r.at(i, j) += v * o.at(k, j);
      }
    }
  return r;
}

Mat Mat::operator*(const Rat& c) const {
  Mat r(rows, cols);
  for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] * c;
  return r;
}

Mat Mat::transpose() const {
  Mat r(cols, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
  return r;
}

bool Mat::is_zero() const {
  for (const Rat& v : a)
    if (v != 0) return false;
  return true;
}

Rat Mat::trace() const {
  if (rows != cols) throw std::invalid_argument("trace: matrix not square");
  Rat t = 0;
  for (std::size_t i = 0; i < rows; ++i) t += at(i, i);
  return t;
}

std::string Mat::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < rows; ++i) {
    if (i) s += ",";
    s += "[";
    for (std::size_t j = 0; j < cols; ++j) {
      if (j) s += ",";
      s += rat_str(at(i, j));
    }
    s += "]";
  }
  return s + "]";
}

Mat vstack(const std::vector<Mat>& blocks) {
  if (blocks.empty()) return Mat();
  std::size_t c = blocks[0].cols, r = 0;
  for (const Mat& b : blocks) {
    if (b.cols != c) throw std::invalid_argument("vstack: column mismatch");
    r += b.rows;
  }
  Mat out(r, c);
  std::size_t off = 0;
  for (const Mat& b : blocks) {
    for (std::size_t i = 0; i < b.rows; ++i)
      for (std::size_t j = 0; j < c; ++j) out.at(off + i, j) = b.at(i, j);
    off += b.rows;
  }
  return out;
}

std::vector<std::size_t> rref(Mat& M) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < M.cols && r < M.rows; ++c) {
    std::size_t sel = r;
    while (sel < M.rows && M.at(sel, c) == 0) ++sel;
    if (sel == M.rows) continue;
    if (sel != r)
      for (std::size_t j = 0; j < M.cols; ++j) std::swap(M.at(sel, j), M.at(r, j));
    Rat inv = 1 / M.at(r, c);
    for (std::size_t j = c; j < M.cols; ++j) M.at(r, j) *= inv;
    for (std::size_t i = 0; i < M.rows; ++i) {
      if (i == r || M.at(i, c) == 0) continue;
      Rat f = M.at(i, c);
      for (std::size_t j = c; j < M.cols; ++j) M.at(i, j) -= f * M.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(Mat M) { return rref(M).size(); }

Mat kernel_basis(const Mat& M) {
  Mat R = M;
  std::vector<std::size_t> pivots = rref(R);
  std::vector<bool> is_pivot(M.cols, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < M.cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Mat K(M.cols, free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    std::size_t f = free_cols[k];
    K.at(f, k) = 1;
    for (std::size_t p = 0; p < pivots.size(); ++p) K.at(pivots[p], k) = -R.at(p, f);
  }
  return K;
}

Mat solve(const Mat& A, const Mat& B) {
  if (A.rows != B.rows) throw std::invalid_argument("solve: row mismatch");
  Mat aug(A.rows, A.cols + B.cols);
  for (std::size_t i = 0; i < A.rows; ++i) {
    for (std::size_t j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
    for (std::size_t j = 0; j < B.cols; ++j) aug.at(i, A.cols + j) = B.at(i, j);
  }
  std::vector<std::size_t> pivots = rref(aug);
  for (std::size_t c : pivots)
    if (c >= A.cols) throw std::domain_error("solve: inconsistent system");
  Mat X(A.cols, B.cols);
  for (std::size_t p = 0; p < pivots.size(); ++p)
    for (std::size_t j = 0; j < B.cols; ++j) X.at(pivots[p], j) = aug.at(p, A.cols + j);
  return X;
}

}  // namespace gaudin
