#include "kwb/intmat.hpp"

#include <sstream>
#include <stdexcept>

namespace kwb {

namespace {

Int abs_int(const Int &x) { return x < 0 ? Int(-x) : x; }

// Quotient q minimizing |a - q*b| (nearest rounding, b != 0).
Int nearest_quotient(const Int &a, const Int &b) {
  Int q = a / b; // truncating
  Int r = a - q * b;
  if (r != 0) {
    Int ar = abs_int(r) * 2;
    Int ab = abs_int(b);
    if (ar > ab || (ar == ab && ((r < 0) == (b < 0)))) {
      q += ((r < 0) == (b < 0)) ? 1 : -1;
    }
  }
  return q;
}

// Floor quotient: remainder in [0, |b|).
Int floor_quotient(const Int &a, const Int &b) {
  Int q = a / b;
  Int r = a - q * b;
  if (r < 0) q += (b > 0) ? -1 : 1;
  return q;
}

} // namespace

ZMat::ZMat(std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  a_.resize(rows_ * cols_);
  std::size_t i = 0;
  for (const auto &row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("ragged initializer");
    std::size_t j = 0;
    for (long long x : row) a_[i * cols_ + j++] = x;
    ++i;
  }
}

ZMat ZMat::identity(std::size_t n) {
  ZMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

ZMat ZMat::operator*(const ZMat &o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
  ZMat r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int &aik = (*this)(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
    }
  return r;
}

ZMat ZMat::operator+(const ZMat &o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum shape mismatch");
  ZMat r(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

ZMat ZMat::operator-(const ZMat &o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix diff shape mismatch");
  ZMat r(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

ZMat ZMat::operator-() const {
  ZMat r(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = -a_[i];
  return r;
}

ZMat ZMat::transpose() const {
  ZMat r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

bool ZMat::is_zero() const {
  for (const Int &x : a_)
    if (x != 0) return false;
  return true;
}

bool ZMat::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

ZMat ZMat::hstack(const ZMat &o) const {
  if (rows_ != o.rows_) throw std::invalid_argument("hstack row mismatch");
  ZMat r(rows_, cols_ + o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < o.cols_; ++j) r(i, cols_ + j) = o(i, j);
  }
  return r;
}

ZMat ZMat::vstack(const ZMat &o) const {
  if (cols_ != o.cols_) throw std::invalid_argument("vstack col mismatch");
  ZMat r(rows_ + o.rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
  for (std::size_t i = 0; i < o.rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(rows_ + i, j) = o(i, j);
  return r;
}

ZMat ZMat::block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const {
  ZMat r(r1 - r0, c1 - c0);
  for (std::size_t i = r0; i < r1; ++i)
    for (std::size_t j = c0; j < c1; ++j) r(i - r0, j - c0) = (*this)(i, j);
  return r;
}

void ZMat::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

void ZMat::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
}

void ZMat::add_row(std::size_t i, std::size_t j, const Int &q) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) += q * (*this)(j, c);
}

void ZMat::add_col(std::size_t i, std::size_t j, const Int &q) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, i) += q * (*this)(r, j);
}

void ZMat::negate_row(std::size_t i) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) = -(*this)(i, c);
}

void ZMat::negate_col(std::size_t i) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, i) = -(*this)(r, i);
}

std::string ZMat::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << "; ";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << " ";
      os << (*this)(i, j).str();
    }
  }
  os << "]";
  return os.str();
}

SmithForm smith_normal_form(const ZMat &a) {
  const std::size_t m = a.rows(), n = a.cols();
  SmithForm f{ZMat::identity(m), a, ZMat::identity(n)};
  ZMat &u = f.u, &d = f.d, &v = f.v;
  const std::size_t nmin = std::min(m, n);

  for (std::size_t k = 0; k < nmin; ++k) {
    for (;;) {
      // Pivot: smallest absolute nonzero entry in the trailing submatrix,
      // ties by row-major position.
      bool found = false;
      std::size_t pi = k, pj = k;
      Int best;
      for (std::size_t i = k; i < m; ++i)
        for (std::size_t j = k; j < n; ++j) {
          if (d(i, j) == 0) continue;
          Int av = abs_int(d(i, j));
          if (!found || av < best) {
            found = true;
            best = av;
            pi = i;
            pj = j;
          }
        }
      if (!found) {
        // trailing submatrix is zero
        goto done_pivot;
      }
      d.swap_rows(k, pi);
      u.swap_rows(k, pi);
      d.swap_cols(k, pj);
      v.swap_cols(k, pj);

      bool reduced = false;
      for (std::size_t i = k + 1; i < m; ++i) {
        if (d(i, k) == 0) continue;
        Int q = nearest_quotient(d(i, k), d(k, k));
        if (q != 0) {
          d.add_row(i, k, -q);
          u.add_row(i, k, -q);
        }
        if (d(i, k) != 0) reduced = true;
      }
      for (std::size_t j = k + 1; j < n; ++j) {
        if (d(k, j) == 0) continue;
        Int q = nearest_quotient(d(k, j), d(k, k));
        if (q != 0) {
          d.add_col(j, k, -q);
          v.add_col(j, k, -q);
        }
        if (d(k, j) != 0) reduced = true;
      }
      if (reduced) continue; // pivot shrank, iterate

      bool lone = true;
      for (std::size_t i = k + 1; i < m && lone; ++i)
        if (d(i, k) != 0) lone = false;
      for (std::size_t j = k + 1; j < n && lone; ++j)
        if (d(k, j) != 0) lone = false;
      if (!lone) continue;

      // pivot divides everything remaining?
      bool divides = true;
      std::size_t bi = 0, bj = 0;
      for (std::size_t i = k + 1; i < m && divides; ++i)
        for (std::size_t j = k + 1; j < n && divides; ++j)
          if (d(i, j) % d(k, k) != 0) {
            divides = false;
            bi = i;
            bj = j;
          }
      if (divides) break;
      // fold the offending row in and continue reducing
      d.add_row(k, bi, 1);
      u.add_row(k, bi, 1);
      (void)bj;
    }
    if (d(k, k) < 0) {
      d.negate_row(k);
      u.negate_row(k);
    }
  }
done_pivot:;
  return f;
}

Int bareiss_det(const ZMat &a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("det of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  ZMat m = a;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        m(i, j) = num / prev; // exact by Bareiss
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

ZMat hermite_row_basis(const ZMat &mat) {
  ZMat m = mat;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // gcd-reduce column c among rows >= r
    for (;;) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i) {
        if (m(i, c) == 0) continue;
        if (best == rows || abs_int(m(i, c)) < abs_int(m(best, c))) best = i;
      }
      if (best == rows) break; // column clear below r
      m.swap_rows(r, best);
      bool any = false;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (m(i, c) == 0) continue;
        Int q = nearest_quotient(m(i, c), m(r, c));
        m.add_row(i, r, -q);
        if (m(i, c) != 0) any = true;
      }
      if (!any) {
        if (m(r, c) < 0) m.negate_row(r);
        // normalize entries above the pivot into [0, pivot)
        for (std::size_t i = 0; i < r; ++i) {
          Int q = floor_quotient(m(i, c), m(r, c));
          if (q != 0) m.add_row(i, r, -q);
        }
        ++r;
        break;
      }
    }
  }
  return m.block(0, r, 0, cols);
}

bool hnf_contains_row(const ZMat &hnf, const std::vector<Int> &vec) {
  std::vector<Int> v = vec;
  const std::size_t cols = hnf.cols();
  if (v.size() != cols) throw std::invalid_argument("vector length mismatch");
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    if (row < hnf.rows() && hnf(row, c) != 0) {
      Int q = v[c] / hnf(row, c);
      if (v[c] - q * hnf(row, c) != 0) return false;
      for (std::size_t j = c; j < cols; ++j) v[j] -= q * hnf(row, j);
      ++row;
    } else if (v[c] != 0) {
      return false;
    }
  }
  for (const Int &x : v)
    if (x != 0) return false;
  return true;
}

bool row_lattice_subset(const ZMat &sub, const ZMat &sup) {
  ZMat h = hermite_row_basis(sup);
  for (std::size_t i = 0; i < sub.rows(); ++i) {
    std::vector<Int> v(sub.cols());
    for (std::size_t j = 0; j < sub.cols(); ++j) v[j] = sub(i, j);
    if (!hnf_contains_row(h, v)) return false;
  }
  return true;
}

std::optional<ZMat> solve_z(const ZMat &a, const ZMat &b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve_z shape mismatch");
  SmithForm f = smith_normal_form(a);
  ZMat ub = f.u * b;
  const std::size_t n = a.cols(), k = b.cols();
  const std::size_t nmin = std::min(a.rows(), n);
  ZMat y(n, k);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Int di = (i < nmin) ? f.d(i, i) : Int(0);
    for (std::size_t j = 0; j < k; ++j) {
      if (di == 0) {
        if (ub(i, j) != 0) return std::nullopt;
      } else {
        Int q = ub(i, j) / di;
        if (ub(i, j) - q * di != 0) return std::nullopt;
        y(i, j) = q;
      }
    }
  }
  return f.v * y;
}

ZMat kernel_z(const ZMat &a) {
  SmithForm f = smith_normal_form(a);
  const std::size_t n = a.cols();
  const std::size_t nmin = std::min(a.rows(), n);
  std::vector<std::size_t> free_cols;
  for (std::size_t i = 0; i < nmin; ++i)
    if (f.d(i, i) == 0) free_cols.push_back(i);
  for (std::size_t i = nmin; i < n; ++i) free_cols.push_back(i);
  ZMat ker(n, free_cols.size());
  for (std::size_t j = 0; j < free_cols.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) ker(i, j) = f.v(i, free_cols[j]);
  return ker;
}

ZMat column_basis(const ZMat &gens) {
  ZMat h = hermite_row_basis(gens.transpose());
  return h.transpose();
}

ZMat preimage_lattice(const ZMat &a, const ZMat &l_cols) {
  // { x : a x = l_cols y for some y }  =  projection of ker [a | -l_cols]
  ZMat stacked = a.hstack(-l_cols);
  ZMat ker = kernel_z(stacked);
  ZMat proj = ker.block(0, a.cols(), 0, ker.cols());
  return column_basis(proj);
}

} // namespace kwb
