#pragma once

#include "kwb/source.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kwb {

/// K-data of one base object and its three extensions at one degree.
struct DegreeSlice {
  FgAbGroup a, pos, neg, lau;
  GroupHom iplus, iminus, jplus, jminus, ev0p, ev0m;
  Provenance provenance = Provenance::Independent;

  DegreeSlice(FgAbGroup a_, FgAbGroup pos_, FgAbGroup neg_, FgAbGroup lau_, GroupHom ip, GroupHom im, GroupHom jp,
              GroupHom jm, GroupHom ep, GroupHom em)
      : a(std::move(a_)), pos(std::move(pos_)), neg(std::move(neg_)), lau(std::move(lau_)), iplus(std::move(ip)),
        iminus(std::move(im)), jplus(std::move(jp)), jminus(std::move(jm)), ev0p(std::move(ep)),
        ev0m(std::move(em)) {}

  GroupHom izero() const { return compose(jplus, iplus); }
};

struct StructuredKInstance {
  Expression base;
  std::string var;
  std::string twist; // empty = untwisted
  int lo = 0, hi = 0;
  std::map<int, DegreeSlice> slices;
  std::string validation; // empty when the composite identities hold

  bool valid() const { return validation.empty(); }
  const DegreeSlice &at(int degree) const;
};

/// Pull the four groups and six structure maps for each degree in
/// [lo, hi] and verify ev0 o i = id and j+ o i+ = j- o i-.
StructuredKInstance assemble_instance(const KSource &src, const Expression &base, int lo, int hi,
                                      const std::string &twist = "");

struct NkResult {
  SubgroupPart part;           // NK_i with its inclusion into K_i(A[t^{+/-}])
  GroupHom ambient_retraction; // K_i(A[t^{+/-}]) -> NK_i
  GroupHom splitting;          // K_i(A) + NK_i -> K_i(A[t^{+/-}])
  bool splitting_iso = false;
};

/// NK_i = ker K_i(ev_0^{+/-}) together with the canonical splitting induced
/// by ev0 o i = id.
NkResult nk(const StructuredKInstance &inst, int degree, bool positive);

struct BassStepResult {
  FgAbGroup group;   // cok(K_i(A[t]) + K_i(A[t^-1]) -> K_i(A[t,t^-1]))
  GroupHom boundary; // the projection from K_i(A[t,t^-1])
  Provenance provenance = Provenance::Independent;
};

BassStepResult bass_step(const KSource &src, const Expression &expr, int degree);

struct NegativeKLevel {
  int degree;
  std::optional<FgAbGroup> group;
  std::string provenance;
};

struct NegativeKResult {
  std::vector<NegativeKLevel> levels;
  bool complete = true;
  std::string gap;
};

/// Bass's inductive cokernel formula iterated to K_{-depth}.
NegativeKResult negative_k(const KSource &src, const Expression &base, int depth);

struct FundamentalSequenceResult {
  int degree = 0;
  FgAbGroup term1, term2, term3, term4;
  GroupHom alpha;    // (i_+, -i_-)
  GroupHom beta;     // j_+ + j_-
  GroupHom boundary; // onto the Bass cokernel
  std::optional<GroupHom> section;
  ExactnessReport spot2, spot3;
  bool spot1_injective = false;
  bool spot4_surjective = false;
  std::optional<FgAbGroup> declared_km1; // when a backend serves K_{i-1}(A)
  bool coker_matches_declared = true;
  bool pass = false;
  std::string failure; // first failing spot

  FundamentalSequenceResult(FgAbGroup t1, FgAbGroup t2, FgAbGroup t3, FgAbGroup t4, GroupHom a, GroupHom b,
                            GroupHom d)
      : term1(std::move(t1)), term2(std::move(t2)), term3(std::move(t3)), term4(std::move(t4)), alpha(std::move(a)),
        beta(std::move(b)), boundary(std::move(d)) {}
};

FundamentalSequenceResult fundamental_sequence(const KSource &src, const StructuredKInstance &inst, int degree);

struct BhsRestricted {
  DirectSum b_r; // K_i(A) + NK+ + NK-
  GroupHom to_laurent;
  NkResult nkp, nkm;
};

BhsRestricted bhs_restricted(const StructuredKInstance &inst, int degree);

struct BhsCheckResult {
  bool splitting_missing = false;
  bool is_iso = false;
  FgAbGroup lhs;
  std::optional<GroupHom> assembled;
  std::string verdict; // "pass" | "splitting missing" | "not an isomorphism"
};

/// Theorem-level check: K_{i-1} + K_i + NK+ + NK- -> K_i(A[t,t^-1]) with
/// components (s_{i-1}, K_i(i_0), j|NK+, j|NK-).
BhsCheckResult bhs_check(const KSource &src, const StructuredKInstance &inst, int degree);

struct ContractedDegreeReport {
  int degree;
  bool rho_found = false;
  std::optional<bool> bhs_iso; // checked for degree >= -c+1
  bool pass = false;
};

struct ContractednessReport {
  int c = 0;
  std::vector<ContractedDegreeReport> degrees;
  bool pass = false;
};

ContractednessReport contracted_check(const KSource &src, const StructuredKInstance &inst, int c);

struct TowerDegreeReport {
  int degree;
  int checked_up_to = 0; // last level computable from the source window
  bool stabilized = false;
  int level = 0; // first level from which the value is constant
  std::optional<FgAbGroup> stable_value;
  bool section_witness = false; // a section of the boundary at that level
};

struct TowerResult {
  int lo = 0, hi = 0, n_max = 0;
  // levels[n] holds the computable degrees only: pi_i(E[n]) consumes
  // source data up to degree i + n
  std::vector<std::map<int, FgAbGroup>> levels;
  std::vector<TowerDegreeReport> stabilization;
  bool all_stabilized = false; // over the degrees with at least one transition
  std::string gap;
};

/// The delooping tower E[0] -> E[1] -> ... realized degreewise via the
/// iterated Bass cokernel. With `connective` set (the K-theory case) E[0]
/// is the connective truncation of the source; without it E[0] serves the
/// source values in all degrees.
TowerResult shadow_tower(const KSource &src, const Expression &base, int lo, int hi, int n_max,
                         bool connective = true);

enum class ShadowKind { E, ZE, ZPlusE, ZMinusE, NPlusE, NMinusE, BrE, BE, SmashCircle, LE, OmegaLE, HE };

struct FunctorShadow {
  ShadowKind kind;
  std::string formula;
  std::map<int, FgAbGroup> graded;
};

FunctorShadow functor_shadow(const KSource &src, const Expression &base, ShadowKind kind, int lo, int hi);
std::string shadow_kind_name(ShadowKind k);

struct MappingTorusResult {
  FgAbGroup coker_piece; // cok(id - phi^{-1}) in degree i
  FgAbGroup ker_piece;   // ker(id - phi^{-1}) in degree i-1
  std::optional<FgAbGroup> resolved;
  std::string note;
};

/// Wang-sequence pieces of the mapping torus; the extension is resolved
/// only when forced (free kernel piece or a vanishing piece).
MappingTorusResult mapping_torus_pi(const GroupHom &phi_inv_at_i, const GroupHom &phi_inv_below);

enum class TwistedVerdict { Pass, Fail, ConsistentUpToExtension };

struct TwistedBhsResult {
  TwistedVerdict verdict = TwistedVerdict::Fail;
  std::string detail;
  MappingTorusResult torus;
};

TwistedBhsResult twisted_bhs_check(const KSource &src, const Expression &base, const std::string &twist, int degree);

struct NilCheckResult {
  bool pass = false;
  FgAbGroup lhs, rhs;
  std::string detail;
};

/// K_i(Nil) against K_i(A) + NK_{i+1}(A_Phi[t]).
NilCheckResult nil_decomposition_check(const FgAbGroup &k_nil, const FgAbGroup &k_a, const FgAbGroup &nk_shifted);

struct KhResult {
  bool stable = false;
  std::size_t stable_index = 0;
  std::optional<FgAbGroup> group;
  bool ev_mutually_inverse = false;
  bool nk_vanishes = false;
  std::vector<FgAbGroup> chain;
  std::string note;
};

/// Homotopy K-theory: the colimit of K_i along iterated polynomial
/// extensions, with the stabilization checks of the HE construction.
KhResult kh_groups(const KSource &src, const Expression &base, int degree, int n_bound);

enum class RingMapKind { Identity, FieldEmbed };

struct ColimitCheckResult {
  bool stable = false;
  bool match = false;
  std::optional<FgAbGroup> colim_value;
  std::optional<FgAbGroup> target;
  std::string note;
};

/// colim K_i of the stages against K_i of the final (colimit) ring.
ColimitCheckResult filtered_colimit_check(const std::vector<RingPtr> &stages, const std::vector<RingMapKind> &maps,
                                          int degree, std::size_t bound);

} // namespace kwb
