#pragma once

#include "kwb/addcat.hpp"

#include <random>
#include <string>
#include <vector>

namespace kwb {

enum class ElemOpKind { RowAdd, ColAdd, RowSwapNeg, ColSwapNeg };

/// One elementary move. RowAdd: row_i += q * row_j. ColAdd: col_i += col_j * q.
/// RowSwapNeg/ColSwapNeg: swap lines i and j, then negate line i (stays in
/// the elementary group).
struct ElemOp {
  ElemOpKind kind;
  std::size_t i = 0, j = 0;
  RElem q;
};

struct ReduceResult {
  bool success = false;
  RElem unit;
  std::vector<ElemOp> log;
  std::string note;
};

/// Can matrix_k1_reduce work over this ring? True for Z, Z/p^k, Galois
/// fields, and single-variable polynomial / inverse-polynomial / Laurent
/// extensions of Z or a Galois field (untwisted).
bool reduction_supported(const RingPtr &ring);

/// Reduce a square matrix to diag(u, 1, ..., 1) by elementary row/column
/// operations, logging every move. Over the Euclidean members of the
/// supported family the procedure is complete; over Z[t] and Z[t,t^-1] it
/// is a norm-guided search that certifies trivialization operationally.
/// Failure (stall / visibly singular input) is reported, never miscomputed.
ReduceResult matrix_k1_reduce(const Mor &m, std::size_t max_steps = 4000);

/// Replay a log against a matrix (verification path for the reducer).
Mor replay_ops(const Mor &m, const std::vector<ElemOp> &log);

/// Random SL_n sample: a product of `length` elementary transvections with
/// small random parameters, plus signed swaps. Always has determinant one.
Mor random_sl(RingPtr ring, std::size_t n, std::mt19937 &rng, int length, int coeff_bound = 3, int exp_bound = 2);

} // namespace kwb
