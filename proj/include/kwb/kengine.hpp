#pragma once

#include "kwb/abgroup.hpp"
#include "kwb/euclid.hpp"
#include "kwb/rings.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace kwb {

struct EngineError : std::runtime_error {
  explicit EngineError(const std::string &msg) : std::runtime_error(msg) {}
};

enum class RingClassKind { Field, Integers, LocalZModPk, ProductOfLocals, EuclideanDomain, LaurentOverField, Unsupported };

/// Deterministic classification of a ring for engine purposes.
struct RingClass {
  RingClassKind kind = RingClassKind::Unsupported;
  Int field_order;                // Field
  Int local_p;                    // LocalZModPk
  int local_k = 0;                //
  std::vector<Int> local_factors; // ProductOfLocals: the p_i^{k_i}; empty for the zero ring
  std::string detail;
};

RingClass classify_ring(const RingPtr &ring);

std::string ring_class_name(RingClassKind k);

/// One K-group value computed by the engine, with the meaning of its
/// canonical generators recorded.
struct KValue {
  int degree = 0;
  FgAbGroup group;
  std::string generator_semantics;
  bool flavors_coincide = true; // free vs idempotent-complete pi_0
};

bool k0_supported(const RingPtr &ring);
bool k1_supported(const RingPtr &ring);

/// K_0; the idempotent-complete flavor is the projective class group (a Z
/// summand per local factor), the free flavor is generated by [R^1].
KValue k0(const RingPtr &ring, bool idempotent_complete = true);

/// K_1 as the unit group, with SK_1 trivialization witnessed by reducing a
/// deterministic batch of random SL_n samples to the identity.
KValue k1(const RingPtr &ring);

/// Engine entry point by degree (idempotent-complete flavor).
bool engine_k_supported(const RingPtr &ring, int degree);
KValue engine_k(const RingPtr &ring, int degree);

/// Runs the elementary reducer over `samples` seeded random SL_2/SL_3
/// matrices; true when every sample reduces to the identity with the
/// expected unit. This is the operational SK_1 certificate.
bool certify_sk1(const RingPtr &ring, int samples, unsigned seed, int length = 8);

// --- canonical unit-group bookkeeping (used for induced maps) ---

struct UnitFactor {
  RingPtr factor_ring;           // CRT component (equals the ring when the base is not composite)
  Int component_modulus;         // 0 when not a CRT split
  std::vector<RElem> const_gens; // constant-unit generators, elements of factor_ring
  std::vector<Int> const_orders; // multiplicative orders of const_gens
  bool has_var = false;          // Laurent component contributes the class of t
};

struct UnitGroupDesc {
  std::vector<UnitFactor> factors;
  FgAbGroup group; // generators ordered factor by factor: consts then var
};

/// Unit-group description for a k1-supported ring.
UnitGroupDesc unit_group_desc(const RingPtr &ring);

/// Coordinates of a unit in the canonical generators of its factor
/// description (bounded discrete-log search; throws EngineError if the
/// element is not a classified unit).
std::vector<Int> express_unit(const UnitFactor &factor, const RElem &u);

/// Induced map on K_degree for one structural homomorphism of the square
/// (or var_eval), expressed in the engine's canonical generators.
GroupHom engine_structural_k_map(HomKind kind, const RingPtr &src, const RingPtr &dst, int degree);

/// Induced map for a Galois field embedding F_q -> F_{q^m}.
GroupHom engine_field_embed_k_map(const RingPtr &src, const RingPtr &dst, int degree);

} // namespace kwb
