#pragma once

#include "kwb/intmat.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kwb {

/// Isomorphism type of a finitely generated abelian group:
/// Z^free_rank + Z/d1 + ... + Z/dk with 2 <= d1 | d2 | ... | dk.
struct CanonicalForm {
  std::size_t free_rank = 0;
  std::vector<Int> invariant_factors;

  bool operator==(const CanonicalForm &o) const {
    return free_rank == o.free_rank && invariant_factors == o.invariant_factors;
  }
  bool operator!=(const CanonicalForm &o) const { return !(*this == o); }

  bool is_trivial() const { return free_rank == 0 && invariant_factors.empty(); }
  /// Group order; nullopt when infinite.
  std::optional<Int> order() const;
  std::string to_string() const;
};

/// Finitely generated abelian group presented as Z^n modulo the row lattice
/// of an integer relations matrix. Equality of groups in the abstract sense
/// is equality of canonical forms.
class FgAbGroup {
public:
  FgAbGroup() : n_gens_(0), relations_(0, 0) { canonicalize(); }
  FgAbGroup(std::size_t n_gens, ZMat relations);

  static FgAbGroup trivial() { return FgAbGroup(); }
  static FgAbGroup free_group(std::size_t rank);
  static FgAbGroup cyclic(const Int &d);
  static FgAbGroup from_canonical(const CanonicalForm &cf);

  std::size_t num_generators() const { return n_gens_; }
  const ZMat &relations() const { return relations_; }
  const CanonicalForm &canonical() const { return canon_; }
  /// Relation lattice in Hermite row form (rows live in Z^n_gens).
  const ZMat &relation_hnf() const { return rel_hnf_; }

  bool is_trivial() const { return canon_.is_trivial(); }
  std::optional<Int> order() const { return canon_.order(); }
  bool isomorphic(const FgAbGroup &o) const { return canon_ == o.canon_; }
  /// Same presentation, not just same isomorphism type.
  bool same_presentation(const FgAbGroup &o) const {
    return n_gens_ == o.n_gens_ && rel_hnf_ == o.rel_hnf_;
  }

  std::string to_string() const { return canon_.to_string(); }

private:
  void canonicalize();

  std::size_t n_gens_;
  ZMat relations_;
  CanonicalForm canon_;
  ZMat rel_hnf_;
};

/// Homomorphism between presented groups. The matrix has shape
/// (codomain generators) x (domain generators) and acts on column
/// coordinate vectors.
class GroupHom {
public:
  GroupHom(FgAbGroup domain, FgAbGroup codomain, ZMat matrix);

  static GroupHom identity(const FgAbGroup &g);
  static GroupHom zero(const FgAbGroup &domain, const FgAbGroup &codomain);

  const FgAbGroup &domain() const { return domain_; }
  const FgAbGroup &codomain() const { return codomain_; }
  const ZMat &matrix() const { return matrix_; }

  bool is_well_defined() const;
  /// Homs agree when their matrices differ by codomain relations columnwise.
  bool equal_as_hom(const GroupHom &o) const;

  std::string to_string() const;

private:
  FgAbGroup domain_, codomain_;
  ZMat matrix_;
};

/// g after f; requires codomain(f) and domain(g) to share the presentation.
GroupHom compose(const GroupHom &g, const GroupHom &f);

struct SubgroupPart {
  FgAbGroup group;
  GroupHom embedding; // into the ambient group
};

struct QuotientPart {
  FgAbGroup group;
  GroupHom projection; // from the ambient group
};

/// Kernel with its inclusion.
SubgroupPart kernel(const GroupHom &f);

/// Cokernel (codomain / image) with the quotient projection. The cokernel
/// keeps the codomain's generators, so the projection matrix is the identity.
QuotientPart cokernel(const GroupHom &f);

/// Image of f as a subgroup of the codomain.
SubgroupPart image(const GroupHom &f);

/// r with r o f = id on the domain, if one exists over Z.
std::optional<GroupHom> has_retraction(const GroupHom &f);

/// s with f o s = id on the codomain, if one exists over Z.
std::optional<GroupHom> has_section(const GroupHom &f);

bool is_injective(const GroupHom &f);
bool is_surjective(const GroupHom &f);
bool is_isomorphism(const GroupHom &f);

struct ExactnessReport {
  bool image_in_kernel = false;
  bool kernel_in_image = false;
  bool exact() const { return image_in_kernel && kernel_in_image; }
};

/// Exactness of  A --f--> B --g--> C  at B (image vs kernel as subgroups).
ExactnessReport is_exact_at(const GroupHom &f, const GroupHom &g);

struct DirectSum {
  FgAbGroup group;
  std::vector<GroupHom> injections;
  std::vector<GroupHom> projections;
};

DirectSum direct_sum(const std::vector<FgAbGroup> &groups);

/// Assemble X -> sum from component maps X -> G_i.
GroupHom tuple_into_sum(const DirectSum &sum, const std::vector<GroupHom> &components);
/// Assemble sum -> Y from component maps G_i -> Y.
GroupHom sum_into(const DirectSum &sum, const std::vector<GroupHom> &components);

struct ColimResult {
  bool stable = false;
  std::size_t stable_index = 0;
  std::optional<FgAbGroup> value;
  std::string note;
};

/// Colimit of G_0 -> G_1 -> ... when the maps become isomorphisms at some
/// index <= bound; otherwise an explicit "unstable" result.
ColimResult colim_sequence(const std::vector<FgAbGroup> &groups, const std::vector<GroupHom> &maps,
                           std::size_t stabilization_bound);

/// Given injective incl: K -> G and q: X -> G with image inside the
/// subgroup, the factorization r: X -> K with incl o r = q.
std::optional<GroupHom> factor_through_injection(const GroupHom &incl, const GroupHom &q);

/// The subgroup generated by given columns (coordinates in the ambient
/// group's generators), with its embedding.
SubgroupPart subgroup_from_columns(const FgAbGroup &ambient, const ZMat &generator_cols);

struct CanonicalIso {
  GroupHom to_canonical;   // G -> from_canonical(canonical(G))
  GroupHom from_canonical; // inverse up to relations
};

/// Constructive isomorphism between a presented group and the group
/// presented directly by its canonical form (free part first).
CanonicalIso canonical_iso(const FgAbGroup &g);

} // namespace kwb
