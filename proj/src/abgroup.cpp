#include "kwb/abgroup.hpp"

#include <sstream>
#include <stdexcept>

namespace kwb {

std::optional<Int> CanonicalForm::order() const {
  if (free_rank > 0) return std::nullopt;
  Int o = 1;
  for (const Int &d : invariant_factors) o *= d;
  return o;
}

std::string CanonicalForm::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank == 1) {
    os << "Z";
    first = false;
  } else if (free_rank > 1) {
    os << "Z^" << free_rank;
    first = false;
  }
  for (const Int &d : invariant_factors) {
    if (!first) os << " + ";
    os << "Z/" << d.str();
    first = false;
  }
  return os.str();
}

FgAbGroup::FgAbGroup(std::size_t n_gens, ZMat relations) : n_gens_(n_gens), relations_(std::move(relations)) {
  if (relations_.rows() > 0 && relations_.cols() != n_gens_)
    throw std::invalid_argument("relations width must match generator count");
  if (relations_.rows() == 0) relations_ = ZMat(0, n_gens_);
  canonicalize();
}

FgAbGroup FgAbGroup::free_group(std::size_t rank) { return FgAbGroup(rank, ZMat(0, rank)); }

FgAbGroup FgAbGroup::cyclic(const Int &d) {
  ZMat rel(1, 1);
  rel(0, 0) = d;
  return FgAbGroup(1, rel);
}

FgAbGroup FgAbGroup::from_canonical(const CanonicalForm &cf) {
  std::size_t n = cf.free_rank + cf.invariant_factors.size();
  ZMat rel(cf.invariant_factors.size(), n);
  for (std::size_t i = 0; i < cf.invariant_factors.size(); ++i) rel(i, cf.free_rank + i) = cf.invariant_factors[i];
  return FgAbGroup(n, rel);
}

void FgAbGroup::canonicalize() {
  SmithForm f = smith_normal_form(relations_);
  CanonicalForm cf;
  std::size_t nonzero = 0;
  const std::size_t nmin = std::min(relations_.rows(), relations_.cols());
  for (std::size_t i = 0; i < nmin; ++i) {
    const Int &d = f.d(i, i);
    if (d == 0) continue;
    ++nonzero;
    if (d >= 2) cf.invariant_factors.push_back(d);
  }
  cf.free_rank = n_gens_ - nonzero;
  canon_ = std::move(cf);
  rel_hnf_ = hermite_row_basis(relations_);
}

GroupHom::GroupHom(FgAbGroup domain, FgAbGroup codomain, ZMat matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != codomain_.num_generators() || matrix_.cols() != domain_.num_generators())
    throw std::invalid_argument("hom matrix shape must be codomain x domain generators");
}

GroupHom GroupHom::identity(const FgAbGroup &g) {
  return GroupHom(g, g, ZMat::identity(g.num_generators()));
}

GroupHom GroupHom::zero(const FgAbGroup &domain, const FgAbGroup &codomain) {
  return GroupHom(domain, codomain, ZMat(codomain.num_generators(), domain.num_generators()));
}

bool GroupHom::is_well_defined() const {
  if (domain_.relations().rows() == 0) return true;
  // each mapped domain relation must lie in the codomain relation lattice
  ZMat mapped = matrix_ * domain_.relations().transpose(); // columns
  return solve_z(codomain_.relations().transpose(), mapped).has_value();
}

bool GroupHom::equal_as_hom(const GroupHom &o) const {
  if (!domain_.same_presentation(o.domain_) || !codomain_.same_presentation(o.codomain_)) return false;
  ZMat diff = matrix_ - o.matrix_;
  return solve_z(codomain_.relations().transpose(), diff).has_value();
}

std::string GroupHom::to_string() const {
  return domain_.to_string() + " -> " + codomain_.to_string() + " via " + matrix_.to_string();
}

GroupHom compose(const GroupHom &g, const GroupHom &f) {
  if (!f.codomain().same_presentation(g.domain())) throw std::invalid_argument("compose: middle group mismatch");
  GroupHom h(f.domain(), g.codomain(), g.matrix() * f.matrix());
  if (!h.is_well_defined()) throw std::logic_error("compose: result not well-defined");
  return h;
}

SubgroupPart subgroup_from_columns(const FgAbGroup &ambient, const ZMat &generator_cols) {
  // Lattice spanned by the columns and the ambient relations.
  ZMat gens = generator_cols.hstack(ambient.relations().transpose());
  ZMat basis = column_basis(gens); // n x k
  const std::size_t k = basis.cols();
  // Relations of the subgroup: coefficient vectors c with basis*c in the
  // ambient relation lattice.
  ZMat rel_cols = preimage_lattice(basis, ambient.relations().transpose());
  FgAbGroup sub(k, rel_cols.transpose());
  GroupHom incl(sub, ambient, basis);
  return {std::move(sub), std::move(incl)};
}

SubgroupPart kernel(const GroupHom &f) {
  if (!f.is_well_defined()) throw std::invalid_argument("kernel: hom is not well-defined");
  ZMat pre = preimage_lattice(f.matrix(), f.codomain().relations().transpose());
  return subgroup_from_columns(f.domain(), pre);
}

QuotientPart cokernel(const GroupHom &f) {
  if (!f.is_well_defined()) throw std::invalid_argument("cokernel: hom is not well-defined");
  const FgAbGroup &h = f.codomain();
  ZMat rel = h.relations().vstack(f.matrix().transpose());
  FgAbGroup q(h.num_generators(), rel);
  GroupHom proj(h, q, ZMat::identity(h.num_generators()));
  return {std::move(q), std::move(proj)};
}

SubgroupPart image(const GroupHom &f) {
  if (!f.is_well_defined()) throw std::invalid_argument("image: hom is not well-defined");
  return subgroup_from_columns(f.codomain(), f.matrix());
}

namespace {

// Solve X*M - R_dom^T*C = T  and  X*R_cod^T - R_dom^T*D = 0 for X, where X
// is (n_dom x n_cod) in the retraction case. Written generically: find X
// with X*A == T (mod rel_out columnwise) and X well-defined as a hom from
// the group with relations rel_in to the group with relations rel_out.
//
// Unknown layout: z = [vec(X) | vec(C) | vec(D)], row-major vecs.
std::optional<ZMat> solve_hom_equations(std::size_t out_gens, std::size_t in_gens, const ZMat &a, const ZMat &t,
                                        const ZMat &rel_out, const ZMat &rel_in) {
  const std::size_t nx = out_gens * in_gens;
  const std::size_t rco = rel_out.rows(); // relations of the output-side group
  const std::size_t rci = rel_in.rows();  // relations of the input-side group
  const std::size_t nc = rco * a.cols();
  const std::size_t nd = rco * rci;
  const std::size_t eq1 = out_gens * a.cols();
  const std::size_t eq2 = out_gens * rci;
  ZMat sys(eq1 + eq2, nx + nc + nd);
  ZMat rhs(eq1 + eq2, 1);
  auto xidx = [&](std::size_t i, std::size_t k) { return i * in_gens + k; };
  auto cidx = [&](std::size_t s, std::size_t j) { return nx + s * a.cols() + j; };
  auto didx = [&](std::size_t s, std::size_t j) { return nx + nc + s * rci + j; };

  // (1) sum_k X(i,k) a(k,j) - sum_s rel_out^T(i,s) C(s,j) = t(i,j)
  for (std::size_t i = 0; i < out_gens; ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      std::size_t row = i * a.cols() + j;
      for (std::size_t k = 0; k < in_gens; ++k)
        if (a(k, j) != 0) sys(row, xidx(i, k)) += a(k, j);
      for (std::size_t s = 0; s < rco; ++s)
        if (rel_out(s, i) != 0) sys(row, cidx(s, j)) -= rel_out(s, i);
      rhs(row, 0) = t(i, j);
    }
  // (2) sum_k X(i,k) rel_in^T(k,j) - sum_s rel_out^T(i,s) D(s,j) = 0
  for (std::size_t i = 0; i < out_gens; ++i)
    for (std::size_t j = 0; j < rci; ++j) {
      std::size_t row = eq1 + i * rci + j;
      for (std::size_t k = 0; k < in_gens; ++k)
        if (rel_in(j, k) != 0) sys(row, xidx(i, k)) += rel_in(j, k);
      for (std::size_t s = 0; s < rco; ++s)
        if (rel_out(s, i) != 0) sys(row, didx(s, j)) -= rel_out(s, i);
    }

  auto sol = solve_z(sys, rhs);
  if (!sol) return std::nullopt;
  ZMat x(out_gens, in_gens);
  for (std::size_t i = 0; i < out_gens; ++i)
    for (std::size_t k = 0; k < in_gens; ++k) x(i, k) = (*sol)(xidx(i, k), 0);
  return x;
}

} // namespace

std::optional<GroupHom> has_retraction(const GroupHom &f) {
  if (!f.is_well_defined()) throw std::invalid_argument("has_retraction: hom is not well-defined");
  const FgAbGroup &g = f.domain(), &h = f.codomain();
  // r: H -> G with r o f = id_G. X is n_G x n_H; X*M = I mod relations of G.
  auto x = solve_hom_equations(g.num_generators(), h.num_generators(), f.matrix(),
                               ZMat::identity(g.num_generators()), g.relations(), h.relations());
  if (!x) return std::nullopt;
  GroupHom r(h, g, *x);
  return r;
}

std::optional<GroupHom> has_section(const GroupHom &f) {
  if (!f.is_well_defined()) throw std::invalid_argument("has_section: hom is not well-defined");
  const FgAbGroup &g = f.domain(), &h = f.codomain();
  // s: H -> G with f o s = id_H. Y is n_G x n_H; M*Y = I mod relations of H.
  // Rewrite as Y^T * M^T = I mod ... to reuse the generic solver with the
  // unknown on the left: set X := Y^T? Simpler: solve directly.
  const std::size_t ng = g.num_generators(), nh = h.num_generators();
  const std::size_t rg = g.relations().rows(), rh = h.relations().rows();
  const std::size_t ny = ng * nh;
  const std::size_t nc = rh * nh; // M*Y - I = R_H^T C
  const std::size_t nd = rg * ng; // well-definedness: Y*R_H^T = R_G^T D ... careful with shapes
  // Unknowns: Y (ng x nh), C (rh x nh), D (rg x rh)
  const std::size_t ndd = rg * rh;
  ZMat sys(nh * nh + ng * rh, ny + nc + ndd);
  ZMat rhs(nh * nh + ng * rh, 1);
  (void)nd;
  auto yidx = [&](std::size_t i, std::size_t j) { return i * nh + j; };
  auto cidx = [&](std::size_t s, std::size_t j) { return ny + s * nh + j; };
  auto didx = [&](std::size_t s, std::size_t j) { return ny + nc + s * rh + j; };
  const ZMat &m = f.matrix();
  // (1) sum_k M(i,k) Y(k,j) - sum_s R_H^T(i,s) C(s,j) = delta_ij   (i,j over H gens)
  for (std::size_t i = 0; i < nh; ++i)
    for (std::size_t j = 0; j < nh; ++j) {
      std::size_t row = i * nh + j;
      for (std::size_t k = 0; k < ng; ++k)
        if (m(i, k) != 0) sys(row, yidx(k, j)) += m(i, k);
      for (std::size_t s = 0; s < rh; ++s)
        if (h.relations()(s, i) != 0) sys(row, cidx(s, j)) -= h.relations()(s, i);
      rhs(row, 0) = (i == j) ? 1 : 0;
    }
  // (2) sum_k Y(i,k) R_H^T(k,j) - sum_s R_G^T(i,s) D(s,j) = 0   (i over G gens, j over H relations)
  for (std::size_t i = 0; i < ng; ++i)
    for (std::size_t j = 0; j < rh; ++j) {
      std::size_t row = nh * nh + i * rh + j;
      for (std::size_t k = 0; k < nh; ++k)
        if (h.relations()(j, k) != 0) sys(row, yidx(i, k)) += h.relations()(j, k);
      for (std::size_t s = 0; s < rg; ++s)
        if (g.relations()(s, i) != 0) sys(row, didx(s, j)) -= g.relations()(s, i);
    }
  auto sol = solve_z(sys, rhs);
  if (!sol) return std::nullopt;
  ZMat y(ng, nh);
  for (std::size_t i = 0; i < ng; ++i)
    for (std::size_t j = 0; j < nh; ++j) y(i, j) = (*sol)(yidx(i, j), 0);
  return GroupHom(h, g, y);
}

bool is_injective(const GroupHom &f) { return kernel(f).group.is_trivial(); }
bool is_surjective(const GroupHom &f) { return cokernel(f).group.is_trivial(); }
bool is_isomorphism(const GroupHom &f) { return is_injective(f) && is_surjective(f); }

ExactnessReport is_exact_at(const GroupHom &f, const GroupHom &g) {
  if (!f.codomain().same_presentation(g.domain())) throw std::invalid_argument("is_exact_at: B mismatch");
  const FgAbGroup &b = f.codomain();
  ZMat im_rows = f.matrix().transpose().vstack(b.relations());
  ZMat ker_cols = preimage_lattice(g.matrix(), g.codomain().relations().transpose());
  ZMat ker_rows = ker_cols.transpose().vstack(b.relations());
  ExactnessReport rep;
  rep.image_in_kernel = row_lattice_subset(im_rows, ker_rows);
  rep.kernel_in_image = row_lattice_subset(ker_rows, im_rows);
  return rep;
}

DirectSum direct_sum(const std::vector<FgAbGroup> &groups) {
  std::size_t total_gens = 0, total_rels = 0;
  for (const auto &g : groups) {
    total_gens += g.num_generators();
    total_rels += g.relations().rows();
  }
  ZMat rel(total_rels, total_gens);
  std::size_t go = 0, ro = 0;
  for (const auto &g : groups) {
    for (std::size_t i = 0; i < g.relations().rows(); ++i)
      for (std::size_t j = 0; j < g.num_generators(); ++j) rel(ro + i, go + j) = g.relations()(i, j);
    go += g.num_generators();
    ro += g.relations().rows();
  }
  FgAbGroup sum(total_gens, rel);
  DirectSum res{sum, {}, {}};
  go = 0;
  for (const auto &g : groups) {
    ZMat inj(total_gens, g.num_generators());
    ZMat proj(g.num_generators(), total_gens);
    for (std::size_t j = 0; j < g.num_generators(); ++j) {
      inj(go + j, j) = 1;
      proj(j, go + j) = 1;
    }
    res.injections.emplace_back(g, sum, inj);
    res.projections.emplace_back(sum, g, proj);
    go += g.num_generators();
  }
  return res;
}

GroupHom tuple_into_sum(const DirectSum &sum, const std::vector<GroupHom> &components) {
  if (components.size() != sum.injections.size()) throw std::invalid_argument("tuple_into_sum arity");
  if (components.empty()) throw std::invalid_argument("tuple_into_sum: empty");
  const FgAbGroup &x = components.front().domain();
  ZMat m(sum.group.num_generators(), x.num_generators());
  std::size_t off = 0;
  for (std::size_t c = 0; c < components.size(); ++c) {
    const GroupHom &h = components[c];
    if (!h.domain().same_presentation(x)) throw std::invalid_argument("tuple_into_sum: domain mismatch");
    for (std::size_t i = 0; i < h.codomain().num_generators(); ++i)
      for (std::size_t j = 0; j < x.num_generators(); ++j) m(off + i, j) = h.matrix()(i, j);
    off += h.codomain().num_generators();
  }
  return GroupHom(x, sum.group, m);
}

GroupHom sum_into(const DirectSum &sum, const std::vector<GroupHom> &components) {
  if (components.size() != sum.projections.size()) throw std::invalid_argument("sum_into arity");
  if (components.empty()) throw std::invalid_argument("sum_into: empty");
  const FgAbGroup &y = components.front().codomain();
  ZMat m(y.num_generators(), sum.group.num_generators());
  std::size_t off = 0;
  for (std::size_t c = 0; c < components.size(); ++c) {
    const GroupHom &h = components[c];
    if (!h.codomain().same_presentation(y)) throw std::invalid_argument("sum_into: codomain mismatch");
    for (std::size_t i = 0; i < y.num_generators(); ++i)
      for (std::size_t j = 0; j < h.domain().num_generators(); ++j) m(i, off + j) = h.matrix()(i, j);
    off += h.domain().num_generators();
  }
  return GroupHom(sum.group, y, m);
}

ColimResult colim_sequence(const std::vector<FgAbGroup> &groups, const std::vector<GroupHom> &maps,
                           std::size_t stabilization_bound) {
  if (groups.empty()) throw std::invalid_argument("colim_sequence: no groups");
  if (maps.size() + 1 != groups.size()) throw std::invalid_argument("colim_sequence: need one map per step");
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (!maps[i].domain().same_presentation(groups[i]) || !maps[i].codomain().same_presentation(groups[i + 1]))
      throw std::invalid_argument("colim_sequence: maps do not compose along the sequence");
  }
  std::vector<bool> iso(maps.size());
  for (std::size_t i = 0; i < maps.size(); ++i) iso[i] = is_isomorphism(maps[i]);
  std::size_t k = maps.size();
  while (k > 0 && iso[k - 1]) --k;
  // all maps from index k on are isomorphisms
  ColimResult res;
  if (k <= stabilization_bound) {
    res.stable = true;
    res.stable_index = k;
    res.value = groups[k];
  } else {
    res.stable = false;
    res.stable_index = k;
    res.note = "sequence not stable within bound " + std::to_string(stabilization_bound);
  }
  return res;
}

CanonicalIso canonical_iso(const FgAbGroup &g) {
  const std::size_t n = g.num_generators();
  ZMat rt = g.relations().transpose(); // n x r
  SmithForm f = smith_normal_form(rt);
  const std::size_t nmin = std::min(rt.rows(), rt.cols());
  std::vector<std::size_t> free_rows, tors_rows;
  for (std::size_t i = 0; i < n; ++i) {
    Int d = (i < nmin) ? f.d(i, i) : Int(0);
    if (d == 0)
      free_rows.push_back(i);
    else if (d >= 2)
      tors_rows.push_back(i);
  }
  FgAbGroup can = FgAbGroup::from_canonical(g.canonical());
  std::vector<std::size_t> order = free_rows;
  order.insert(order.end(), tors_rows.begin(), tors_rows.end());
  ZMat sel(order.size(), n);
  for (std::size_t r = 0; r < order.size(); ++r) sel(r, order[r]) = 1;
  ZMat to_can = sel * f.u;
  auto uinv = solve_z(f.u, ZMat::identity(n));
  ZMat inj(n, order.size());
  for (std::size_t r = 0; r < order.size(); ++r) inj(order[r], r) = 1;
  ZMat from_can = *uinv * inj;
  CanonicalIso iso{GroupHom(g, can, to_can), GroupHom(can, g, from_can)};
  if (!iso.to_canonical.is_well_defined() || !iso.from_canonical.is_well_defined())
    throw std::logic_error("canonical iso construction failed");
  return iso;
}

std::optional<GroupHom> factor_through_injection(const GroupHom &incl, const GroupHom &q) {
  if (!incl.codomain().same_presentation(q.codomain()))
    throw std::invalid_argument("factor_through_injection: ambient mismatch");
  const FgAbGroup &k = incl.domain();
  const FgAbGroup &x = q.domain();
  const FgAbGroup &g = incl.codomain();
  // Solve incl.matrix * R + R_G^T * C = q.matrix over Z.
  ZMat lhs = incl.matrix().hstack(g.relations().transpose());
  auto sol = solve_z(lhs, q.matrix());
  if (!sol) return std::nullopt;
  ZMat r = sol->block(0, k.num_generators(), 0, x.num_generators());
  GroupHom res(x, k, r);
  if (!res.is_well_defined()) return std::nullopt;
  return res;
}

} // namespace kwb
