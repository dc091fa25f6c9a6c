#pragma once

#include "kwb/intmat.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace kwb {

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

class RElem;

/// Ring automorphism with an explicit inverse.
struct RingAut {
  RingPtr ring;
  std::string name;
  std::function<RElem(const RElem &)> forward;
  std::function<RElem(const RElem &)> inverse;
};
using RingAutPtr = std::shared_ptr<const RingAut>;

RingAutPtr identity_aut(RingPtr ring);
/// x -> x^p on a Galois field.
RingAutPtr frobenius_aut(RingPtr field);
bool is_identity_aut(const RingAutPtr &aut);

enum class RingKind { Integers, ZMod, GaloisField, Polynomial, NegPolynomial, Laurent };

struct LaurentData; // sorted terms (exponent, base element), no zero coefficients

class RElem {
public:
  using Storage = std::variant<Int, std::vector<int>, std::shared_ptr<const LaurentData>>;

  RElem() = default;
  RElem(RingPtr ring, Storage v) : ring_(std::move(ring)), v_(std::move(v)) {}

  const RingPtr &ring() const { return ring_; }
  const Storage &storage() const { return v_; }

private:
  RingPtr ring_;
  Storage v_;
};

struct LaurentData {
  std::vector<std::pair<int, RElem>> terms;
};

/// A computable ring with exact arithmetic and decidable equality.
/// Extensions (polynomial / inverse-polynomial / Laurent) may carry a twist;
/// in the twisted case multiplication follows t*a = phi(a)*t, that is,
/// (a t^j)(b t^i) = a phi^j(b) t^{i+j}.
class Ring : public std::enable_shared_from_this<Ring> {
public:
  RingKind kind;
  Int modulus;               // ZMod
  int char_p = 0;            // GaloisField: q = p^deg
  int deg = 1;               //
  std::vector<int> min_poly; // monic irreducible over F_p, length deg+1
  RingPtr base;              // extensions
  std::string var;           //
  RingAutPtr twist;          // null for untwisted extensions

  static RingPtr integers();
  static RingPtr zmod(const Int &n);
  static RingPtr galois_field(const Int &q);
  static RingPtr polynomial(RingPtr base, const std::string &var, RingAutPtr twist = nullptr);
  static RingPtr neg_polynomial(RingPtr base, const std::string &var, RingAutPtr twist = nullptr);
  static RingPtr laurent(RingPtr base, const std::string &var, RingAutPtr twist = nullptr);

  bool is_extension() const {
    return kind == RingKind::Polynomial || kind == RingKind::NegPolynomial || kind == RingKind::Laurent;
  }
  bool commutative() const;
  bool same_as(const Ring &o) const;
  std::string name() const;

  RElem zero() const;
  RElem one() const;
  RElem from_int(const Int &n) const;
  RElem add(const RElem &a, const RElem &b) const;
  RElem sub(const RElem &a, const RElem &b) const;
  RElem neg(const RElem &a) const;
  RElem mul(const RElem &a, const RElem &b) const;
  bool is_zero(const RElem &a) const;
  bool equal(const RElem &a, const RElem &b) const;
  bool is_unit(const RElem &a) const;
  std::optional<RElem> inverse(const RElem &a) const;
  std::string to_string(const RElem &a) const;

  /// Monomial c * var^e in an extension ring (c in the base ring).
  RElem monomial(const RElem &coeff, int exp) const;
  /// The variable itself.
  RElem var_elem() const { return monomial(base->one(), 1); }
  /// Coefficient of var^e (base element).
  RElem coeff_at(const RElem &a, int exp) const;
  /// Exponents with nonzero coefficient, ascending.
  std::vector<int> support(const RElem &a) const;

  /// Random element for property tests; size_hint bounds degrees/terms.
  RElem sample(std::mt19937 &rng, int size_hint = 2) const;

  /// q for Galois fields (as Int).
  Int field_order() const;
  /// All elements of a finite base ring (GaloisField or ZMod).
  std::vector<RElem> enumerate_finite() const;

private:
  RElem normalize_laurent(std::vector<std::pair<int, RElem>> terms) const;
};

/// Product per the Laurent convolution, with the ring's own twist applied.
/// Validates that x and y live in the same extension ring.
RElem laurent_mul(const RElem &x, const RElem &y);

struct UnitMonomial {
  RElem unit; // base-ring unit
  int exponent = 0;
};

enum class UnitClassifyStatus { Classified, NotMonomialUnit, UnsupportedBase };

struct UnitClassification {
  UnitClassifyStatus status;
  std::optional<UnitMonomial> value;
};

/// Decide whether x = c * t^n with c a unit of the base ring. Over a field
/// or the integers this detects exactly the units of the Laurent ring; over
/// Z/p^k with k >= 2 the base is flagged unsupported.
UnitClassification classify_unit(const RElem &x);

enum class HomKind { IPlus, IMinus, IZero, JPlus, JMinus, Ev0Plus, Ev0Minus, VarEval };

/// Evaluable ring homomorphism handle for the structural square and
/// variable evaluation.
struct RingHom {
  RingPtr src, dst;
  HomKind kind;
  std::optional<RElem> eval_value; // VarEval
  RElem apply(const RElem &a) const;
};

/// Build one of the structural homomorphisms; throws when the ring pair is
/// not related by the named construction.
RingHom ring_hom(HomKind kind, RingPtr src, RingPtr dst);
RingHom ring_hom_var_eval(RingPtr src, const RElem &value);

std::string hom_kind_name(HomKind k);

} // namespace kwb
