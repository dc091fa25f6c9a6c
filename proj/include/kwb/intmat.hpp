#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace kwb {

using Int = boost::multiprecision::cpp_int;

/// Dense integer matrix with exact arbitrary-precision entries.
class ZMat {
public:
  ZMat() : rows_(0), cols_(0) {}
  ZMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  ZMat(std::initializer_list<std::initializer_list<long long>> rows);

  static ZMat identity(std::size_t n);
  static ZMat zero(std::size_t rows, std::size_t cols) { return ZMat(rows, cols); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Int &operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Int &operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  bool operator==(const ZMat &o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
  bool operator!=(const ZMat &o) const { return !(*this == o); }

  ZMat operator*(const ZMat &o) const;
  ZMat operator+(const ZMat &o) const;
  ZMat operator-(const ZMat &o) const;
  ZMat operator-() const;
  ZMat transpose() const;

  bool is_zero() const;
  bool is_identity() const;

  /// Stack o to the right (same row count).
  ZMat hstack(const ZMat &o) const;
  /// Stack o below (same column count).
  ZMat vstack(const ZMat &o) const;
  /// Submatrix rows [r0, r1), cols [c0, c1).
  ZMat block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const;

  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  /// row_i += q * row_j
  void add_row(std::size_t i, std::size_t j, const Int &q);
  /// col_i += q * col_j
  void add_col(std::size_t i, std::size_t j, const Int &q);
  void negate_row(std::size_t i);
  void negate_col(std::size_t i);

  std::string to_string() const;

private:
  std::size_t rows_, cols_;
  std::vector<Int> a_;
};

/// U * A * V = D with U, V unimodular and D diagonal satisfying the
/// divisibility chain d1 | d2 | ... ; D is unique, all d_i >= 0.
struct SmithForm {
  ZMat u;
  ZMat d;
  ZMat v;
};

/// Deterministic Smith normal form. Pivot rule: smallest absolute nonzero
/// entry of the working submatrix, ties broken by row-major position.
SmithForm smith_normal_form(const ZMat &a);

/// Exact determinant by fraction-free Bareiss elimination (square input).
Int bareiss_det(const ZMat &a);

/// Row-style Hermite normal form of the lattice spanned by the rows of m.
/// Zero rows are dropped; pivots are positive and entries above a pivot are
/// reduced into [0, pivot). Two row sets span the same lattice iff their
/// HNFs are identical.
ZMat hermite_row_basis(const ZMat &m);

/// Does the row lattice spanned by `basis` (in HNF) contain the row vector v?
bool hnf_contains_row(const ZMat &hnf_basis, const std::vector<Int> &v);

/// Does lattice(sub) lie inside lattice(sup)? Both given by generating rows.
bool row_lattice_subset(const ZMat &sub_gens, const ZMat &sup_gens);

/// One integer solution x of a x = b (b may have several columns), or nullopt.
std::optional<ZMat> solve_z(const ZMat &a, const ZMat &b);

/// Columns form a basis of { x : a x = 0 } over the integers.
ZMat kernel_z(const ZMat &a);

/// Basis (columns) of the lattice { x : a x lies in the column span of l }.
ZMat preimage_lattice(const ZMat &a, const ZMat &l_cols);

/// Basis (columns) of the lattice spanned by the columns of gens.
ZMat column_basis(const ZMat &gens);

} // namespace kwb
