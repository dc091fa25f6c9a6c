#pragma once

#include "kwb/rings.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kwb {

/// Morphism m -> n in the matrix category over a ring: an n x m matrix of
/// ring elements (rows = codomain rank, cols = domain rank).
struct Mor {
  RingPtr ring;
  std::size_t rows = 0, cols = 0;
  std::vector<RElem> a;

  Mor() = default;
  Mor(RingPtr r, std::size_t rows_, std::size_t cols_);
  static Mor identity(RingPtr r, std::size_t n);
  static Mor zero(RingPtr r, std::size_t rows_, std::size_t cols_);

  RElem &at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const RElem &at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  std::size_t domain() const { return cols; }
  std::size_t codomain() const { return rows; }
};

Mor compose(const Mor &g, const Mor &f); // matrix product g * f
Mor add(const Mor &f, const Mor &g);
Mor negate(const Mor &f);
Mor scale(const RElem &c, const Mor &f);
bool mor_equal(const Mor &f, const Mor &g);
bool mor_is_zero(const Mor &f);
/// Block sum (biproduct on morphisms).
Mor block_sum(const Mor &f, const Mor &g);
Mor sample_mor(RingPtr ring, std::size_t rows, std::size_t cols, std::mt19937 &rng, int size_hint = 2);
std::string mor_to_string(const Mor &f);

/// Determinant by cofactor expansion (square, commutative ring, small n).
RElem mor_det(const Mor &f);
/// Inverse via the adjugate when det is a unit.
std::optional<Mor> mor_inverse(const Mor &f);

/// Additive automorphism of the matrix category induced entrywise by a ring
/// automorphism; identity on objects.
struct CatAut {
  RingAutPtr ring_aut;
  std::string name() const { return ring_aut ? ring_aut->name : "id"; }
  Mor apply(const Mor &f) const;
  Mor apply_inverse(const Mor &f) const;
  Mor apply_power(const Mor &f, int k) const;
};

CatAut identity_cat_aut(RingPtr ring);
bool is_identity_cat_aut(const CatAut &aut);

/// Morphism in the Laurent category over matcat(ring): a finite formal sum
/// of matrix terms. When a twist is present the composition follows
/// g_j o Phi^j(f_i) on the t^{i+j} coefficient.
struct LaurentMor {
  RingPtr ring;
  std::size_t dom = 0, cod = 0;
  std::vector<std::pair<int, Mor>> terms; // ascending exponents, nonzero

  static LaurentMor zero(RingPtr r, std::size_t dom_, std::size_t cod_);
  static LaurentMor from_term(int exp, const Mor &m);
  static LaurentMor identity_t(RingPtr r, std::size_t n, int exp); // id * t^exp

  Mor coeff(int exp) const;
  std::vector<int> support() const;
};

LaurentMor normalize(RingPtr ring, std::size_t dom, std::size_t cod, std::vector<std::pair<int, Mor>> terms);
LaurentMor laurent_add(const LaurentMor &f, const LaurentMor &g);
LaurentMor laurent_negate(const LaurentMor &f);
bool laurent_equal(const LaurentMor &f, const LaurentMor &g);
bool laurent_is_zero(const LaurentMor &f);

/// Convolution composite g o f; pass a twist for the twisted category.
LaurentMor laurent_compose(const LaurentMor &g, const LaurentMor &f, const CatAut *twist = nullptr);

/// Is f invertible in the (possibly twisted) Laurent category? Handles
/// single-term morphisms with invertible matrix part, which is all the
/// structural checks need.
std::optional<LaurentMor> laurent_monomial_inverse(const LaurentMor &f, const CatAut *twist = nullptr);

// --- functors of the square and completion/interval embeddings ---

enum class CatFunctorKind { IPlus, IMinus, IZero, JPlus, JMinus, Ev0Plus, Ev0Minus, IdemEta, J0, J1 };

/// i_+/i_-/i_0: f |-> f * t^0 into the chosen subcategory.
LaurentMor functor_embed(CatFunctorKind kind, const Mor &f);
/// j_+/j_-: inclusion of A[t] or A[t^-1] into A[t,t^-1] (re-tag).
LaurentMor functor_include(CatFunctorKind kind, const LaurentMor &f);
/// ev_0^{+/-}: formal sum |-> coefficient of t^0.
Mor functor_ev0(const LaurentMor &f);

/// Object of the idempotent completion: (ambient rank, idempotent).
struct IdemObject {
  std::size_t ambient;
  Mor idempotent; // p with p*p = p
};

IdemObject idem_eta_object(RingPtr ring, std::size_t n);

struct IdemMor {
  IdemObject dom, cod;
  Mor f; // satisfies cod.p * f * dom.p = f
};

IdemMor idem_mor(const IdemObject &dom, const IdemObject &cod, const Mor &f);
IdemMor idem_compose(const IdemMor &g, const IdemMor &f);
IdemMor functor_idem_eta(RingPtr ring, const Mor &f);

/// A x I: objects are (rank, end) with end in {0,1}; since I is the
/// indiscrete groupoid on two objects, a morphism is just a morphism of A
/// together with its endpoints.
struct IntervalObj {
  std::size_t rank;
  int end; // 0 or 1
};

struct IntervalMor {
  IntervalObj dom, cod;
  Mor core;
};

IntervalMor interval_embed(int end, const Mor &f); // j_0 / j_1
IntervalMor interval_compose(const IntervalMor &g, const IntervalMor &f);

/// Additive functor A -> B described by its action on objects and
/// morphisms; MorT is the codomain's morphism type.
template <typename MorT> struct FunctorTo {
  std::function<std::size_t(std::size_t)> on_obj;
  std::function<MorT(const Mor &)> on_mor;
};

/// Natural isomorphism data: component at each object.
template <typename MorT> using NatIsoComponents = std::function<MorT(std::size_t)>;

struct NatIsoCheck {
  bool components_invertible = true;
  bool natural = true;
  std::string detail;
  bool ok() const { return components_invertible && natural; }
};

/// The functor H : A x I -> B induced by a natural isomorphism T: F0 => F1
/// (Lemma-style construction: H o j_i = F_i). Construction validates that T
/// is a natural isomorphism on sampled morphisms and fails otherwise.
struct LaurentIntervalFunctor {
  RingPtr ring; // target category base ring
  FunctorTo<LaurentMor> f0, f1;
  NatIsoComponents<LaurentMor> t;
  const CatAut *twist = nullptr;
  LaurentMor apply(const IntervalMor &m) const;
};

struct MatIntervalFunctor {
  RingPtr ring;
  FunctorTo<Mor> f0, f1;
  NatIsoComponents<Mor> t;
  Mor apply(const IntervalMor &m) const;
};

NatIsoCheck check_nat_iso_laurent(RingPtr base, const FunctorTo<LaurentMor> &f0, const FunctorTo<LaurentMor> &f1,
                                  const NatIsoComponents<LaurentMor> &t, std::mt19937 &rng, int samples = 24,
                                  const CatAut *twist = nullptr);
NatIsoCheck check_nat_iso_mat(RingPtr base, const FunctorTo<Mor> &f0, const FunctorTo<Mor> &f1,
                              const NatIsoComponents<Mor> &t, std::mt19937 &rng, int samples = 24);

/// Phi-nilpotent endomorphism object (A, nu: Phi(A) -> A). The witness n
/// certifies nu o Phi(nu) o ... o Phi^{n-1}(nu) = 0; without a witness the
/// constructor searches up to search_bound.
struct NilObject {
  RingPtr ring;
  std::size_t carrier;
  Mor endo;
  CatAut phi;
  std::size_t nilpotency_witness;
};

std::optional<NilObject> make_nil_object(RingPtr ring, std::size_t carrier, const Mor &endo, const CatAut &phi,
                                         std::optional<std::size_t> witness = std::nullopt,
                                         std::size_t search_bound = 16);

/// The 1-dimensional complex Phi(A) --(t - nu)--> A in A_Phi[t].
struct ChiComplex {
  std::size_t dim0, dim1; // A and Phi(A) (= A as object)
  LaurentMor differential;
};

ChiComplex chi_complex(const NilObject &nil);

struct EquivCheckReport {
  bool pass = true;
  std::size_t objects_checked = 0;
  std::size_t samples = 0;
  std::string detail;
};

/// matcat(R)[t,t^-1] vs matcat(R[t,t^-1]): the transposition functor is
/// additive, bijective on sampled hom-sets and respects composition.
EquivCheckReport matcat_laurent_equiv_check(RingPtr r, std::size_t size_bound, int samples_per_homset = 12,
                                            unsigned seed = 12001);

} // namespace kwb
