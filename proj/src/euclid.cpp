#include "kwb/euclid.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace kwb {

namespace {

using NormVec = std::vector<Int>;

bool norm_less(const NormVec &a, const NormVec &b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Int iabs(const Int &x) { return x < 0 ? Int(-x) : x; }

Int nearest_q(const Int &a, const Int &b) {
  Int q = a / b;
  Int r = a - q * b;
  if (r != 0) {
    Int ar = iabs(r) * 2, ab = iabs(b);
    if (ar > ab || (ar == ab && ((r < 0) == (b < 0)))) q += ((r < 0) == (b < 0)) ? 1 : -1;
  }
  return q;
}

struct BaseInfo {
  bool field_like = false; // galois field or Z/p (prime)
  bool is_z = false;
  RingPtr ring;
};

// Classification of rings the reducer understands.
struct EuclidCtx {
  RingPtr ring;
  enum class Mode { Integers, ZModPk, FieldLike, ExtOverField, ExtOverZ } mode;
  Int p = 0; // ZModPk
  int kpow = 0;
  BaseInfo base;

  static std::optional<EuclidCtx> make(const RingPtr &r);

  NormVec norm(const RElem &x) const;
  std::vector<RElem> quotient_candidates(const RElem &a, const RElem &b) const;
};

bool modulus_prime(const Int &n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::optional<std::pair<Int, int>> prime_power(const Int &n) {
  if (n < 2) return std::nullopt;
  Int p = 2;
  while (p * p <= n && n % p != 0) ++p;
  if (n % p != 0) p = n;
  Int t = n;
  int k = 0;
  while (t % p == 0) {
    t /= p;
    ++k;
  }
  if (t != 1) return std::nullopt;
  return std::make_pair(p, k);
}

std::optional<EuclidCtx> EuclidCtx::make(const RingPtr &r) {
  EuclidCtx c;
  c.ring = r;
  switch (r->kind) {
  case RingKind::Integers:
    c.mode = Mode::Integers;
    return c;
  case RingKind::GaloisField:
    c.mode = Mode::FieldLike;
    return c;
  case RingKind::ZMod: {
    if (modulus_prime(r->modulus)) {
      c.mode = Mode::FieldLike;
      return c;
    }
    auto pp = prime_power(r->modulus);
    if (!pp) return std::nullopt;
    c.mode = Mode::ZModPk;
    c.p = pp->first;
    c.kpow = pp->second;
    return c;
  }
  default:
    break;
  }
  if (!r->is_extension() || !is_identity_aut(r->twist)) return std::nullopt;
  const RingPtr &b = r->base;
  if (b->kind == RingKind::GaloisField || (b->kind == RingKind::ZMod && modulus_prime(b->modulus))) {
    c.mode = Mode::ExtOverField;
    c.base = {true, false, b};
    return c;
  }
  if (b->kind == RingKind::Integers) {
    c.mode = Mode::ExtOverZ;
    c.base = {false, true, b};
    return c;
  }
  return std::nullopt;
}

int zmod_valuation(const Int &residue, const Int &p, int kpow) {
  if (residue == 0) return kpow;
  Int r = residue;
  int v = 0;
  while (r % p == 0) {
    r /= p;
    ++v;
  }
  return v;
}

NormVec EuclidCtx::norm(const RElem &x) const {
  switch (mode) {
  case Mode::Integers:
    return {0, iabs(std::get<Int>(x.storage())), 1};
  case Mode::ZModPk:
    return {zmod_valuation(std::get<Int>(x.storage()), p, kpow), 0, 0};
  case Mode::FieldLike:
    return {0, 0, 0};
  case Mode::ExtOverField: {
    auto sup = ring->support(x);
    return {Int(sup.back() - sup.front()), 0, 0};
  }
  case Mode::ExtOverZ: {
    auto sup = ring->support(x);
    Int sumabs = 0;
    for (int e : sup) sumabs += iabs(std::get<Int>(ring->coeff_at(x, e).storage()));
    // span first, then the mass at the two ends (integer Euclid on end
    // coefficients stays admissible even when middle terms inflate), then
    // total mass
    Int endmass = iabs(std::get<Int>(ring->coeff_at(x, sup.back()).storage()));
    if (sup.front() != sup.back()) endmass += iabs(std::get<Int>(ring->coeff_at(x, sup.front()).storage()));
    return {Int(sup.back() - sup.front()), endmass, sumabs, Int(sup.size())};
  }
  }
  return {};
}

std::vector<RElem> EuclidCtx::quotient_candidates(const RElem &a, const RElem &b) const {
  std::vector<RElem> out;
  switch (mode) {
  case Mode::Integers: {
    Int q = nearest_q(std::get<Int>(a.storage()), std::get<Int>(b.storage()));
    if (q != 0) out.push_back(ring->from_int(q));
    return out;
  }
  case Mode::ZModPk: {
    Int ra = std::get<Int>(a.storage()), rb = std::get<Int>(b.storage());
    int va = zmod_valuation(ra, p, kpow), vb = zmod_valuation(rb, p, kpow);
    if (vb > va) return out;
    Int pw = 1;
    for (int i = 0; i < vb; ++i) pw *= p;
    Int ub = rb / pw; // unit part
    auto uinv = ring->inverse(ring->from_int(ub));
    if (!uinv) return out;
    RElem q = ring->mul(ring->from_int(ra / pw), *uinv);
    if (!ring->is_zero(q)) out.push_back(q);
    return out;
  }
  case Mode::FieldLike: {
    auto binv = ring->inverse(b);
    if (binv) out.push_back(ring->mul(a, *binv));
    return out;
  }
  case Mode::ExtOverField: {
    auto sa = ring->support(a), sb = ring->support(b);
    const RingPtr &bs = ring->base;
    // kill the top term of a against the top term of b; for the
    // inverse-polynomial ring work from the bottom instead
    bool from_bottom = ring->kind == RingKind::NegPolynomial;
    int ea = from_bottom ? sa.front() : sa.back();
    int eb = from_bottom ? sb.front() : sb.back();
    int shift = ea - eb;
    if (ring->kind == RingKind::Polynomial && shift < 0) return out;
    if (ring->kind == RingKind::NegPolynomial && shift > 0) return out;
    auto cinv = bs->inverse(ring->coeff_at(b, eb));
    if (!cinv) return out;
    out.push_back(ring->monomial(bs->mul(ring->coeff_at(a, ea), *cinv), shift));
    return out;
  }
  case Mode::ExtOverZ: {
    auto sa = ring->support(a), sb = ring->support(b);
    const RingPtr &bs = ring->base;
    std::vector<int> b_ends = {sb.back()};
    if (sb.front() != sb.back()) b_ends.push_back(sb.front());
    std::map<std::pair<int, Int>, bool> seen;
    for (int ea : sa)
      for (int eb : b_ends) {
        int shift = ea - eb;
        if (ring->kind == RingKind::Polynomial && shift < 0) continue;
        if (ring->kind == RingKind::NegPolynomial && shift > 0) continue;
        Int ca = std::get<Int>(ring->coeff_at(a, ea).storage());
        Int cb = std::get<Int>(ring->coeff_at(b, eb).storage());
        for (Int q : {nearest_q(ca, cb), Int(ca / cb)}) {
          if (q == 0) continue;
          if (seen.emplace(std::make_pair(shift, q), true).second)
            out.push_back(ring->monomial(bs->from_int(q), shift));
        }
      }
    return out;
  }
  }
  return out;
}

// ---- matrix reduction driver ----

struct Reducer {
  EuclidCtx ctx;
  Mor m;
  std::vector<ElemOp> log;
  std::size_t max_steps;
  int strategy = 0; // 0: phase euclid, 1: global potential descent
  std::size_t steps = 0;

  const RingPtr &ring() const { return ctx.ring; }
  std::size_t n() const { return m.rows; }

  void apply(const ElemOp &op) {
    log.push_back(op);
    apply_to(m, op);
  }

  static void apply_to(Mor &w, const ElemOp &op) {
    const RingPtr &r = w.ring;
    switch (op.kind) {
    case ElemOpKind::RowAdd:
      for (std::size_t c = 0; c < w.cols; ++c) w.at(op.i, c) = r->add(w.at(op.i, c), r->mul(op.q, w.at(op.j, c)));
      break;
    case ElemOpKind::ColAdd:
      for (std::size_t rr = 0; rr < w.rows; ++rr)
        w.at(rr, op.i) = r->add(w.at(rr, op.i), r->mul(w.at(rr, op.j), op.q));
      break;
    case ElemOpKind::RowSwapNeg:
      for (std::size_t c = 0; c < w.cols; ++c) std::swap(w.at(op.i, c), w.at(op.j, c));
      for (std::size_t c = 0; c < w.cols; ++c) w.at(op.i, c) = r->neg(w.at(op.i, c));
      break;
    case ElemOpKind::ColSwapNeg:
      for (std::size_t rr = 0; rr < w.rows; ++rr) std::swap(w.at(rr, op.i), w.at(rr, op.j));
      for (std::size_t rr = 0; rr < w.rows; ++rr) w.at(rr, op.i) = r->neg(w.at(rr, op.i));
      break;
    }
  }

  Int entry_weight(const RElem &x) const {
    if (ring()->is_zero(x)) return 0;
    NormVec nv = ctx.norm(x);
    Int w = 1;
    Int scale = 1000000;
    for (const Int &c : nv) {
      w += c * scale;
      scale /= 1000;
      if (scale == 0) scale = 1;
    }
    return w;
  }

  Int potential(const Mor &w, std::size_t from) const {
    Int tot = 0;
    for (std::size_t i = from; i < w.rows; ++i)
      for (std::size_t j = from; j < w.cols; ++j) tot += entry_weight(w.at(i, j));
    return tot;
  }

  std::string fingerprint(const Mor &w, std::size_t from) const {
    std::string s;
    for (std::size_t i = from; i < w.rows; ++i)
      for (std::size_t j = from; j < w.cols; ++j) {
        s += ring()->to_string(w.at(i, j));
        s += '|';
      }
    return s;
  }

  // Best strict reduction of target entry against the pivot; returns the
  // chosen quotient.
  std::optional<RElem> best_quotient(const RElem &target, const RElem &pivot) const {
    NormVec cur = ctx.norm(target);
    std::optional<RElem> best;
    bool best_zero = false;
    NormVec best_norm;
    for (const RElem &q : ctx.quotient_candidates(target, pivot)) {
      RElem res = ring()->sub(target, ring()->mul(q, pivot));
      if (ring()->is_zero(res)) {
        best = q;
        best_zero = true;
        break;
      }
      NormVec nv = ctx.norm(res);
      if (norm_less(nv, cur) && (!best || norm_less(nv, best_norm))) {
        best = q;
        best_norm = nv;
      }
    }
    if (best && !best_zero && !norm_less(best_norm, cur)) return std::nullopt;
    return best;
  }

  bool tick() { return ++steps <= max_steps; }

  void move_min_to_pivot(std::size_t k) {
    std::size_t pi = k, pj = k;
    bool found = false;
    NormVec best;
    for (std::size_t i = k; i < n(); ++i)
      for (std::size_t j = k; j < n(); ++j) {
        if (ring()->is_zero(m.at(i, j))) continue;
        NormVec nv = ctx.norm(m.at(i, j));
        if (!found || norm_less(nv, best)) {
          found = true;
          best = nv;
          pi = i;
          pj = j;
        }
      }
    if (!found) throw std::runtime_error("zero block");
    if (pi != k) apply({ElemOpKind::RowSwapNeg, k, pi, ring()->zero()});
    if (pj != k) apply({ElemOpKind::ColSwapNeg, k, pj, ring()->zero()});
  }

  bool col_clear(std::size_t k) const {
    for (std::size_t i = k + 1; i < n(); ++i)
      if (!ring()->is_zero(m.at(i, k))) return false;
    return true;
  }
  bool row_clear(std::size_t k) const {
    for (std::size_t j = k + 1; j < n(); ++j)
      if (!ring()->is_zero(m.at(k, j))) return false;
    return true;
  }

  enum class PhaseOutcome { Clear, PivotSwapped, Stuck, OutOfBudget };

  // Euclid between the pivot and the entries of its column (row ops that
  // never touch the pivot row). A sub-pivot entry strictly decreases every
  // step; when one drops below the pivot it is swapped in, strictly
  // decreasing the pivot norm.
  PhaseOutcome column_phase(std::size_t k) {
    for (;;) {
      if (!tick()) return PhaseOutcome::OutOfBudget;
      std::size_t best_i = n();
      NormVec best;
      for (std::size_t i = k + 1; i < n(); ++i) {
        if (ring()->is_zero(m.at(i, k))) continue;
        NormVec nv = ctx.norm(m.at(i, k));
        if (best_i == n() || norm_less(nv, best)) {
          best_i = i;
          best = nv;
        }
      }
      if (best_i == n()) return PhaseOutcome::Clear;
      if (norm_less(best, ctx.norm(m.at(k, k)))) {
        apply({ElemOpKind::RowSwapNeg, k, best_i, ring()->zero()});
        return PhaseOutcome::PivotSwapped;
      }
      bool moved = false;
      for (std::size_t i = k + 1; i < n(); ++i) {
        if (ring()->is_zero(m.at(i, k))) continue;
        auto q = best_quotient(m.at(i, k), m.at(k, k));
        if (q) {
          apply({ElemOpKind::RowAdd, i, k, ring()->neg(*q)});
          moved = true;
        }
      }
      if (!moved) return PhaseOutcome::Stuck;
    }
  }

  PhaseOutcome row_phase(std::size_t k) {
    for (;;) {
      if (!tick()) return PhaseOutcome::OutOfBudget;
      std::size_t best_j = n();
      NormVec best;
      for (std::size_t j = k + 1; j < n(); ++j) {
        if (ring()->is_zero(m.at(k, j))) continue;
        NormVec nv = ctx.norm(m.at(k, j));
        if (best_j == n() || norm_less(nv, best)) {
          best_j = j;
          best = nv;
        }
      }
      if (best_j == n()) return PhaseOutcome::Clear;
      if (norm_less(best, ctx.norm(m.at(k, k)))) {
        apply({ElemOpKind::ColSwapNeg, k, best_j, ring()->zero()});
        return PhaseOutcome::PivotSwapped;
      }
      bool moved = false;
      for (std::size_t j = k + 1; j < n(); ++j) {
        if (ring()->is_zero(m.at(k, j))) continue;
        auto q = best_quotient(m.at(k, j), m.at(k, k));
        if (q) {
          apply({ElemOpKind::ColAdd, j, k, ring()->neg(*q)});
          moved = true;
        }
      }
      if (!moved) return PhaseOutcome::Stuck;
    }
  }

  std::vector<ElemOp> candidate_ops(const Mor &w, std::size_t k) const {
    std::vector<ElemOp> ops;
    for (std::size_t i = k; i < n(); ++i)
      for (std::size_t j = k; j < n(); ++j) {
        if (i == j) continue;
        for (std::size_t c = k; c < n(); ++c) {
          if (ring()->is_zero(w.at(i, c)) || ring()->is_zero(w.at(j, c))) continue;
          for (const RElem &q : ctx.quotient_candidates(w.at(i, c), w.at(j, c)))
            ops.push_back({ElemOpKind::RowAdd, i, j, ring()->neg(q)});
        }
        for (std::size_t c = k; c < n(); ++c) {
          if (ring()->is_zero(w.at(c, i)) || ring()->is_zero(w.at(c, j))) continue;
          for (const RElem &q : ctx.quotient_candidates(w.at(c, i), w.at(c, j)))
            ops.push_back({ElemOpKind::ColAdd, i, j, ring()->neg(q)});
        }
      }
    return ops;
  }

  // Potential-guided escape for the non-Euclidean cases; a tabu set of
  // visited states breaks cycles.
  std::vector<ElemOp> alignment_ops(std::size_t k) const {
    std::vector<ElemOp> ops;
    if (!ring()->is_extension()) return ops;
    int lo = (ring()->kind == RingKind::Polynomial) ? 0 : -2;
    int hi = (ring()->kind == RingKind::NegPolynomial) ? 0 : 2;
    for (std::size_t i = k; i < n(); ++i)
      for (std::size_t j = k; j < n(); ++j) {
        if (i == j) continue;
        for (int e = lo; e <= hi; ++e)
          for (int s : {1, -1}) {
            RElem q = ring()->monomial(ring()->base->from_int(s), e);
            ops.push_back({ElemOpKind::RowAdd, i, j, q});
            ops.push_back({ElemOpKind::ColAdd, i, j, q});
          }
      }
    return ops;
  }

  // One strictly potential-decreasing candidate op on the trailing
  // submatrix; monotone, so it cannot cycle.
  bool descend_step(std::size_t k) {
    if (!tick()) return false;
    Int cur = potential(m, k);
    std::optional<ElemOp> best_op;
    Int best_pot = cur;
    for (const ElemOp &op : candidate_ops(m, k)) {
      Mor w = m;
      apply_to(w, op);
      Int p = potential(w, k);
      if (p < best_pot) {
        best_pot = p;
        best_op = op;
      }
    }
    if (!best_op) return false;
    apply(*best_op);
    return true;
  }

  bool escape(std::size_t k, std::set<std::string> &seen) {
    Int cur = potential(m, k);
    // depth 1
    for (const ElemOp &op : candidate_ops(m, k)) {
      Mor w = m;
      apply_to(w, op);
      if (potential(w, k) < cur && seen.insert(fingerprint(w, k)).second) {
        apply(op);
        return true;
      }
    }
    // depth 2, allowing one non-improving intermediate move (quotient-based
    // or a raw monomial alignment)
    std::vector<ElemOp> first = candidate_ops(m, k);
    {
      auto extra = alignment_ops(k);
      first.insert(first.end(), extra.begin(), extra.end());
    }
    std::size_t budget = 0;
    for (const ElemOp &op1 : first) {
      Mor w1 = m;
      apply_to(w1, op1);
      for (const ElemOp &op2 : candidate_ops(w1, k)) {
        if (++budget > 20000) return false;
        Mor w2 = w1;
        apply_to(w2, op2);
        if (potential(w2, k) < cur && seen.insert(fingerprint(w2, k)).second) {
          apply(op1);
          apply(op2);
          return true;
        }
      }
    }
    return false;
  }

  // diag(a at i) unit, diag(b at j): four elementary moves turn the pair
  // into diag(1 at i, a*b at j).
  void whitehead_merge(std::size_t i, std::size_t j) {
    RElem a = m.at(i, i);
    auto ainv = ring()->inverse(a);
    if (!ainv) throw std::runtime_error("whitehead merge needs a unit");
    apply({ElemOpKind::RowAdd, i, j, a});
    apply({ElemOpKind::RowAdd, j, i, ring()->neg(*ainv)});
    apply({ElemOpKind::RowAdd, i, j, a});
    apply({ElemOpKind::RowSwapNeg, i, j, ring()->zero()});
  }

  ReduceResult run() {
    ReduceResult res = run_inner();
    res.log = log;
    return res;
  }

  ReduceResult run_inner() {
    ReduceResult res;
    res.unit = ring()->one();
    if (n() == 0) {
      res.success = true;
      return res;
    }
    try {
      for (std::size_t k = 0; k < n(); ++k) {
        std::set<std::string> seen;
        bool fresh_pivot = true;
        for (;;) {
          if (!tick()) {
            res.note = "reduction stalled: step budget exhausted at pivot " + std::to_string(k);
            return res;
          }
          if (fresh_pivot || ring()->is_zero(m.at(k, k))) {
            move_min_to_pivot(k);
            fresh_pivot = false;
          }
          if (strategy == 1) {
            if (col_clear(k) && row_clear(k)) break;
            if (descend_step(k)) continue;
            if (escape(k, seen)) {
              fresh_pivot = true;
              continue;
            }
            res.note = "reduction stalled (descent) at pivot " + std::to_string(k);
            return res;
          }
          PhaseOutcome c = column_phase(k);
          if (c == PhaseOutcome::OutOfBudget) {
            res.note = "reduction stalled: step budget exhausted at pivot " + std::to_string(k);
            return res;
          }
          if (c == PhaseOutcome::PivotSwapped) continue;
          if (c == PhaseOutcome::Clear) {
            PhaseOutcome r = row_phase(k);
            if (r == PhaseOutcome::OutOfBudget) {
              res.note = "reduction stalled: step budget exhausted at pivot " + std::to_string(k);
              return res;
            }
            if (r == PhaseOutcome::PivotSwapped) continue;
            if (r == PhaseOutcome::Clear) {
              if (col_clear(k) && row_clear(k)) break;
              continue;
            }
          }
          // stuck in a phase: heuristics
          if (escape(k, seen)) {
            fresh_pivot = true;
            continue;
          }
          res.note = "reduction stalled with nonunit pivot at position " + std::to_string(k);
          return res;
        }
      }
    } catch (const std::runtime_error &e) {
      res.note = std::string("singular: ") + e.what();
      return res;
    }
    // merge the diagonal into position 0
    for (std::size_t k = n(); k-- > 1;) {
      RElem d = m.at(k, k);
      if (ring()->equal(d, ring()->one())) continue;
      if (!ring()->is_unit(d)) {
        res.note = "nonunit diagonal entry at position " + std::to_string(k) + " (matrix not invertible)";
        return res;
      }
      try {
        whitehead_merge(k, k - 1);
      } catch (const std::runtime_error &e) {
        res.note = e.what();
        return res;
      }
    }
    RElem u = m.at(0, 0);
    if (!ring()->is_unit(u)) {
      res.note = "nonunit corner entry (matrix not invertible)";
      return res;
    }
    // sanity: matrix is diag(u, 1, ..., 1)
    for (std::size_t i = 0; i < n(); ++i)
      for (std::size_t j = 0; j < n(); ++j) {
        RElem want = (i == j) ? (i == 0 ? u : ring()->one()) : ring()->zero();
        if (!ring()->equal(m.at(i, j), want)) {
          res.note = "internal: reduction did not reach diagonal form";
          return res;
        }
      }
    res.success = true;
    res.unit = u;
    return res;
  }
};

} // namespace

bool reduction_supported(const RingPtr &ring) { return EuclidCtx::make(ring).has_value(); }

ReduceResult matrix_k1_reduce(const Mor &m, std::size_t max_steps) {
  if (m.rows != m.cols) throw std::invalid_argument("matrix_k1_reduce: non-square input");
  auto ctx = EuclidCtx::make(m.ring);
  if (!ctx) throw std::invalid_argument("matrix_k1_reduce: unsupported ring " + m.ring->name());
  // deterministic strategy ladder: complete for the Euclidean members on
  // the first rung, restarts only matter for the Z[t^...] search cases
  ReduceResult last;
  for (int strategy : {0, 1}) {
    Reducer red{*ctx, m, {}, max_steps, strategy};
    last = red.run();
    if (last.success) return last;
    if (last.note.rfind("singular", 0) == 0) return last;
  }
  return last;
}

Mor replay_ops(const Mor &m, const std::vector<ElemOp> &log) {
  Mor w = m;
  for (const ElemOp &op : log) Reducer::apply_to(w, op);
  return w;
}

Mor random_sl(RingPtr ring, std::size_t n, std::mt19937 &rng, int length, int coeff_bound, int exp_bound) {
  Mor m = Mor::identity(ring, n);
  if (n < 2) return m;
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> kindd(0, 9);
  std::uniform_int_distribution<int> coeff(-coeff_bound, coeff_bound);
  std::uniform_int_distribution<int> expd(-exp_bound, exp_bound);

  auto small_param = [&]() -> RElem {
    if (!ring->is_extension()) {
      Int c = coeff(rng);
      if (c == 0) c = 1;
      return ring->from_int(c);
    }
    int lo = (ring->kind == RingKind::Polynomial) ? 0 : -exp_bound;
    int hi = (ring->kind == RingKind::NegPolynomial) ? 0 : exp_bound;
    std::uniform_int_distribution<int> e(lo, hi);
    Int c = coeff(rng);
    if (c == 0) c = 1;
    RElem out = ring->monomial(ring->base->from_int(c), e(rng));
    if (kindd(rng) < 3) { // sometimes two terms
      Int c2 = coeff(rng);
      if (c2 != 0) out = ring->add(out, ring->monomial(ring->base->from_int(c2), e(rng)));
    }
    if (ring->is_zero(out)) out = ring->one();
    return out;
  };

  for (int s = 0; s < length; ++s) {
    std::size_t i = idx(rng), j = idx(rng);
    if (i == j) {
      j = (j + 1) % n;
    }
    int kind = kindd(rng);
    ElemOp op;
    if (kind < 4) {
      op = {ElemOpKind::RowAdd, i, j, small_param()};
    } else if (kind < 8) {
      op = {ElemOpKind::ColAdd, i, j, small_param()};
    } else if (kind < 9) {
      op = {ElemOpKind::RowSwapNeg, i, j, ring->zero()};
    } else {
      op = {ElemOpKind::ColSwapNeg, i, j, ring->zero()};
    }
    std::vector<ElemOp> one = {op};
    m = replay_ops(m, one);
  }
  return m;
}

} // namespace kwb
