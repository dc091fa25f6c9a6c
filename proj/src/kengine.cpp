#include "kwb/kengine.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace kwb {

namespace {

bool is_zero_ring(const RingPtr &r) {
  if (r->kind == RingKind::ZMod) return r->modulus == 1;
  if (r->is_extension()) return is_zero_ring(r->base);
  return false;
}

std::vector<std::pair<Int, int>> factor_modulus(Int n) {
  std::vector<std::pair<Int, int>> fs;
  for (Int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    fs.emplace_back(p, k);
  }
  if (n > 1) fs.emplace_back(n, 1);
  return fs;
}

Int pow_int(const Int &p, int k) {
  Int r = 1;
  for (int i = 0; i < k; ++i) r *= p;
  return r;
}

// the innermost (non-extension) base of a tower
RingPtr tower_base(const RingPtr &r) { return r->is_extension() ? tower_base(r->base) : r; }

int tower_height(const RingPtr &r) { return r->is_extension() ? 1 + tower_height(r->base) : 0; }

bool tower_untwisted(const RingPtr &r) {
  if (!r->is_extension()) return true;
  return is_identity_aut(r->twist) && tower_untwisted(r->base);
}

// Rebuild the extension tower of `r` over a new innermost base.
RingPtr rebase_tower(const RingPtr &r, const RingPtr &new_base) {
  if (!r->is_extension()) return new_base;
  RingPtr below = rebase_tower(r->base, new_base);
  switch (r->kind) {
  case RingKind::Polynomial:
    return Ring::polynomial(below, r->var);
  case RingKind::NegPolynomial:
    return Ring::neg_polynomial(below, r->var);
  default:
    return Ring::laurent(below, r->var);
  }
}

// componentwise reduction of an element of a tower over Z/n to the tower
// over Z/p^k
RElem crt_project(const RElem &x, const RingPtr &target) {
  const RingPtr &src = x.ring();
  if (!src->is_extension()) {
    return target->from_int(std::get<Int>(x.storage()));
  }
  RElem out = target->zero();
  for (int e : src->support(x)) out = target->add(out, target->monomial(crt_project(src->coeff_at(x, e), target->base), e));
  return out;
}

Int mult_order(const RingPtr &r, const RElem &x, const Int &bound) {
  RElem acc = x;
  Int o = 1;
  while (!r->equal(acc, r->one())) {
    acc = r->mul(acc, x);
    ++o;
    if (o > bound) throw EngineError("order search exceeded bound");
  }
  return o;
}

// generators of the unit group of a finite base ring (field or Z/p^k)
void base_unit_gens(const RingPtr &r, std::vector<RElem> &gens, std::vector<Int> &orders) {
  if (r->kind == RingKind::GaloisField) {
    Int q = r->field_order();
    if (q == 2) return; // trivial unit group
    for (const RElem &x : r->enumerate_finite()) {
      if (r->is_zero(x)) continue;
      if (mult_order(r, x, q) == q - 1) {
        gens.push_back(x);
        orders.push_back(q - 1);
        return;
      }
    }
    throw EngineError("no primitive element found");
  }
  if (r->kind != RingKind::ZMod) throw EngineError("base_unit_gens: unexpected ring");
  const Int n = r->modulus;
  if (n == 1 || n == 2) return;
  auto fs = factor_modulus(n);
  if (fs.size() != 1) throw EngineError("base_unit_gens: modulus must be a prime power");
  Int p = fs[0].first;
  int k = fs[0].second;
  if (p == 2) {
    if (k == 2) {
      gens.push_back(r->from_int(3));
      orders.push_back(2);
      return;
    }
    // k >= 3: <-1> x <3>
    gens.push_back(r->from_int(n - 1));
    orders.push_back(2);
    gens.push_back(r->from_int(3));
    orders.push_back(pow_int(2, k - 2));
    return;
  }
  Int phi = pow_int(p, k - 1) * (p - 1);
  for (Int g = 2; g < n; ++g) {
    if (boost::multiprecision::gcd(g, n) != 1) continue;
    RElem x = r->from_int(g);
    if (mult_order(r, x, phi) == phi) {
      gens.push_back(x);
      orders.push_back(phi);
      return;
    }
  }
  throw EngineError("no primitive root found");
}

FgAbGroup group_from_desc(const std::vector<UnitFactor> &factors) {
  std::size_t ngens = 0;
  std::vector<Int> orders;
  for (const auto &f : factors) {
    for (const Int &o : f.const_orders) {
      orders.push_back(o);
      ++ngens;
    }
    if (f.has_var) {
      orders.push_back(0);
      ++ngens;
    }
  }
  ZMat rel(0, ngens);
  std::vector<std::size_t> finite_rows;
  for (std::size_t i = 0; i < orders.size(); ++i)
    if (orders[i] != 0) finite_rows.push_back(i);
  ZMat rels(finite_rows.size(), ngens);
  for (std::size_t r = 0; r < finite_rows.size(); ++r) rels(r, finite_rows[r]) = orders[finite_rows[r]];
  return FgAbGroup(ngens, rels);
}

// certification cache
std::mutex cert_mutex;
std::map<std::string, bool> cert_cache;

bool certified(const RingPtr &ring, int samples, unsigned seed) {
  std::string key = ring->name() + "#" + std::to_string(samples);
  {
    std::lock_guard<std::mutex> lk(cert_mutex);
    auto it = cert_cache.find(key);
    if (it != cert_cache.end()) return it->second;
  }
  bool ok = certify_sk1(ring, samples, seed);
  {
    std::lock_guard<std::mutex> lk(cert_mutex);
    cert_cache[key] = ok;
  }
  return ok;
}

} // namespace

RingClass classify_ring(const RingPtr &ring) {
  RingClass c;
  if (is_zero_ring(ring)) {
    c.kind = RingClassKind::ProductOfLocals;
    c.detail = "zero ring (empty product of local rings)";
    return c;
  }
  switch (ring->kind) {
  case RingKind::Integers:
    c.kind = RingClassKind::Integers;
    c.detail = "euclidean with absolute-value norm";
    return c;
  case RingKind::GaloisField:
    c.kind = RingClassKind::Field;
    c.field_order = ring->field_order();
    return c;
  case RingKind::ZMod: {
    auto fs = factor_modulus(ring->modulus);
    if (fs.size() == 1 && fs[0].second == 1) {
      c.kind = RingClassKind::Field;
      c.field_order = fs[0].first;
      return c;
    }
    if (fs.size() == 1) {
      c.kind = RingClassKind::LocalZModPk;
      c.local_p = fs[0].first;
      c.local_k = fs[0].second;
      return c;
    }
    c.kind = RingClassKind::ProductOfLocals;
    for (const auto &f : fs) c.local_factors.push_back(pow_int(f.first, f.second));
    return c;
  }
  default:
    break;
  }
  // extension towers
  if (!tower_untwisted(ring)) {
    c.detail = "twisted extension: engine defers to oracle data";
    return c;
  }
  RingPtr base = tower_base(ring);
  int height = tower_height(ring);
  bool base_field = base->kind == RingKind::GaloisField ||
                    (base->kind == RingKind::ZMod && factor_modulus(base->modulus).size() == 1 &&
                     factor_modulus(base->modulus)[0].second == 1);
  if (height == 1 && base_field) {
    if (ring->kind == RingKind::Laurent) {
      c.kind = RingClassKind::LaurentOverField;
      c.detail = "euclidean with degree-span norm";
    } else {
      c.kind = RingClassKind::EuclideanDomain;
      c.detail = "euclidean with degree norm";
    }
    return c;
  }
  if (height == 1 && base->kind == RingKind::Integers) {
    c.detail = "Z coefficient extension: K1 by unit classification plus operational SK1 certification";
    return c;
  }
  c.detail = "outside the independent engine (serve via bhs-extended or oracle sources)";
  return c;
}

std::string ring_class_name(RingClassKind k) {
  switch (k) {
  case RingClassKind::Field:
    return "Field";
  case RingClassKind::Integers:
    return "Integers";
  case RingClassKind::LocalZModPk:
    return "LocalZModPk";
  case RingClassKind::ProductOfLocals:
    return "ProductOfLocals";
  case RingClassKind::EuclideanDomain:
    return "EuclideanDomain";
  case RingClassKind::LaurentOverField:
    return "LaurentOverField";
  case RingClassKind::Unsupported:
    return "Unsupported";
  }
  return "?";
}

namespace {

// squarefree composite moduli split into field components
bool base_squarefree(const RingPtr &base) {
  if (base->kind != RingKind::ZMod) return false;
  for (const auto &f : factor_modulus(base->modulus))
    if (f.second != 1) return false;
  return true;
}

bool base_is_field_like(const RingPtr &base) {
  if (base->kind == RingKind::GaloisField) return true;
  if (base->kind == RingKind::ZMod) {
    auto fs = factor_modulus(base->modulus);
    return fs.size() == 1 && fs[0].second == 1;
  }
  return false;
}

} // namespace

bool k0_supported(const RingPtr &ring) {
  if (is_zero_ring(ring)) return true;
  if (!ring->is_extension())
    return ring->kind == RingKind::Integers || ring->kind == RingKind::GaloisField || ring->kind == RingKind::ZMod;
  if (!tower_untwisted(ring) || tower_height(ring) != 1) return false;
  RingPtr base = ring->base;
  return base_is_field_like(base) || base_squarefree(base);
}

bool k1_supported(const RingPtr &ring) {
  if (is_zero_ring(ring)) return true;
  if (!ring->is_extension())
    return ring->kind == RingKind::Integers || ring->kind == RingKind::GaloisField || ring->kind == RingKind::ZMod;
  if (!tower_untwisted(ring) || tower_height(ring) != 1) return false;
  RingPtr base = ring->base;
  return base_is_field_like(base) || base_squarefree(base) || base->kind == RingKind::Integers;
}

bool engine_k_supported(const RingPtr &ring, int degree) {
  if (degree == 0) return k0_supported(ring);
  if (degree == 1) return k1_supported(ring);
  return false;
}

KValue k0(const RingPtr &ring, bool idempotent_complete) {
  if (!k0_supported(ring)) throw EngineError("K0 engine does not support " + ring->name());
  KValue v;
  v.degree = 0;
  if (is_zero_ring(ring)) {
    v.group = FgAbGroup::trivial();
    v.generator_semantics = "zero ring";
    return v;
  }
  std::size_t local_count = 1;
  RingPtr base = ring->is_extension() ? ring->base : ring;
  if (base->kind == RingKind::ZMod) local_count = factor_modulus(base->modulus).size();
  if (!idempotent_complete || local_count == 1) {
    v.group = FgAbGroup::free_group(1);
    v.generator_semantics = "class of the free rank-1 module";
    v.flavors_coincide = (local_count == 1);
    return v;
  }
  v.group = FgAbGroup::free_group(local_count);
  v.generator_semantics = "rank-1 projective class per local factor (CRT order, ascending prime)";
  v.flavors_coincide = false;
  return v;
}

UnitGroupDesc unit_group_desc(const RingPtr &ring) {
  if (!k1_supported(ring)) throw EngineError("K1 engine does not support " + ring->name());
  UnitGroupDesc desc;
  if (is_zero_ring(ring)) {
    desc.group = FgAbGroup::trivial();
    return desc;
  }
  RingPtr base = ring->is_extension() ? ring->base : ring;
  std::vector<RingPtr> base_components;
  std::vector<Int> comp_moduli;
  if (base->kind == RingKind::ZMod && factor_modulus(base->modulus).size() > 1) {
    for (const auto &f : factor_modulus(base->modulus)) {
      base_components.push_back(Ring::zmod(pow_int(f.first, f.second)));
      comp_moduli.push_back(pow_int(f.first, f.second));
    }
  } else {
    base_components.push_back(base);
    comp_moduli.push_back(0);
  }
  for (std::size_t i = 0; i < base_components.size(); ++i) {
    UnitFactor f;
    f.component_modulus = comp_moduli[i];
    f.factor_ring = ring->is_extension() ? rebase_tower(ring, base_components[i]) : base_components[i];
    RingPtr comp_base = base_components[i];
    if (comp_base->kind == RingKind::Integers) {
      f.const_gens.push_back(comp_base->from_int(-1));
      f.const_orders.push_back(2);
    } else {
      base_unit_gens(comp_base, f.const_gens, f.const_orders);
    }
    if (ring->is_extension()) {
      // constants viewed inside the extension component
      std::vector<RElem> lifted;
      for (const RElem &g : f.const_gens) lifted.push_back(f.factor_ring->monomial(g, 0));
      f.const_gens = lifted;
      f.has_var = (ring->kind == RingKind::Laurent);
    }
    desc.factors.push_back(std::move(f));
  }
  desc.group = group_from_desc(desc.factors);
  return desc;
}

std::vector<Int> express_unit(const UnitFactor &factor, const RElem &u) {
  const RingPtr &fr = factor.factor_ring;
  RElem c = u;
  Int var_exp = 0;
  if (fr->is_extension()) {
    auto cls = classify_unit(u);
    if (cls.status != UnitClassifyStatus::Classified) throw EngineError("express_unit: not a monomial unit");
    c = cls.value->unit;
    var_exp = cls.value->exponent;
    if (!factor.has_var && var_exp != 0) throw EngineError("express_unit: variable exponent in a polynomial ring");
  }
  const RingPtr cb = fr->is_extension() ? fr->base : fr;
  // bounded discrete-log box search over the constant generators
  std::vector<RElem> cgens;
  for (const RElem &g : factor.const_gens) cgens.push_back(fr->is_extension() ? fr->coeff_at(g, 0) : g);
  std::vector<Int> exps(factor.const_gens.size(), 0);
  for (;;) {
    RElem prod = cb->one();
    for (std::size_t i = 0; i < cgens.size(); ++i)
      for (Int e = 0; e < exps[i]; ++e) prod = cb->mul(prod, cgens[i]);
    if (cb->equal(prod, c)) break;
    std::size_t i = 0;
    while (i < exps.size()) {
      exps[i] += 1;
      if (exps[i] < factor.const_orders[i]) break;
      exps[i] = 0;
      ++i;
    }
    if (i == exps.size()) throw EngineError("express_unit: discrete log failed");
    if (exps.empty()) throw EngineError("express_unit: nontrivial unit in trivial group");
  }
  std::vector<Int> out = exps;
  if (factor.has_var) out.push_back(var_exp);
  return out;
}

bool certify_sk1(const RingPtr &ring, int samples, unsigned seed, int length) {
  if (is_zero_ring(ring)) return true;
  // composite bases certify componentwise
  RingPtr base = ring->is_extension() ? ring->base : ring;
  if (base->kind == RingKind::ZMod && factor_modulus(base->modulus).size() > 1) {
    for (const auto &f : factor_modulus(base->modulus)) {
      RingPtr comp = Ring::zmod(pow_int(f.first, f.second));
      RingPtr comp_ring = ring->is_extension() ? rebase_tower(ring, comp) : comp;
      if (!certify_sk1(comp_ring, samples, seed, length)) return false;
    }
    return true;
  }
  if (!reduction_supported(ring)) return false;
  std::mt19937 rng(seed);
  for (int i = 0; i < samples; ++i) {
    std::size_t n = 2 + (i % 2);
    Mor m = random_sl(ring, n, rng, length);
    auto res = matrix_k1_reduce(m);
    if (!res.success) return false;
    if (!ring->equal(res.unit, ring->one())) return false;
    // the log must really take m to diag(1,...)
    Mor w = replay_ops(m, res.log);
    Mor want = Mor::identity(ring, n);
    if (!mor_equal(w, want)) return false;
  }
  return true;
}

KValue k1(const RingPtr &ring) {
  if (!k1_supported(ring)) throw EngineError("K1 engine does not support " + ring->name());
  KValue v;
  v.degree = 1;
  if (is_zero_ring(ring)) {
    v.group = FgAbGroup::trivial();
    v.generator_semantics = "zero ring";
    return v;
  }
  if (!certified(ring, 24, 0xC0FFEE)) throw EngineError("SK1 certification failed for " + ring->name());
  UnitGroupDesc desc = unit_group_desc(ring);
  v.group = desc.group;
  std::ostringstream sem;
  sem << "unit classes:";
  for (const auto &f : desc.factors) {
    for (const RElem &g : f.const_gens) sem << " " << f.factor_ring->to_string(g);
    if (f.has_var) sem << " " << f.factor_ring->var;
  }
  v.generator_semantics = sem.str();
  return v;
}

KValue engine_k(const RingPtr &ring, int degree) {
  if (degree == 0) return k0(ring, true);
  if (degree == 1) return k1(ring);
  throw EngineError("engine serves degrees 0 and 1 only");
}

GroupHom engine_structural_k_map(HomKind kind, const RingPtr &src, const RingPtr &dst, int degree) {
  if (degree == 0) {
    KValue a = k0(src, true), b = k0(dst, true);
    if (a.group.num_generators() != b.group.num_generators())
      throw EngineError("structural map: K0 factor mismatch");
    return GroupHom(a.group, b.group, ZMat::identity(a.group.num_generators()));
  }
  if (degree != 1) throw EngineError("structural maps served at degrees 0 and 1 only");
  UnitGroupDesc sd = unit_group_desc(src), dd = unit_group_desc(dst);
  if (sd.factors.size() != dd.factors.size()) throw EngineError("structural map: factor count mismatch");
  ZMat mat(dd.group.num_generators(), sd.group.num_generators());
  std::size_t col = 0, dst_row_base = 0;
  for (std::size_t fi = 0; fi < sd.factors.size(); ++fi) {
    const UnitFactor &sf = sd.factors[fi];
    const UnitFactor &df = dd.factors[fi];
    std::size_t dst_rows = df.const_gens.size() + (df.has_var ? 1 : 0);
    // the factor-level ring hom
    RingHom h = [&] {
      if (kind == HomKind::VarEval) {
        return ring_hom_var_eval(sf.factor_ring, sf.factor_ring->base->one());
      }
      return ring_hom(kind, sf.factor_ring, df.factor_ring);
    }();
    auto push_gen = [&](const RElem &gen) {
      RElem img = h.apply(gen);
      std::vector<Int> coords = express_unit(df, img);
      for (std::size_t r = 0; r < coords.size(); ++r) mat(dst_row_base + r, col) = coords[r];
      ++col;
    };
    for (const RElem &g : sf.const_gens) push_gen(g);
    if (sf.has_var) push_gen(sf.factor_ring->var_elem());
    dst_row_base += dst_rows;
  }
  GroupHom hom(sd.group, dd.group, mat);
  if (!hom.is_well_defined()) throw EngineError("structural map is not well-defined");
  return hom;
}

GroupHom engine_field_embed_k_map(const RingPtr &src, const RingPtr &dst, int degree) {
  if (src->kind != RingKind::GaloisField || dst->kind != RingKind::GaloisField)
    throw EngineError("field embedding needs Galois fields");
  if (src->char_p != dst->char_p || dst->deg % src->deg != 0)
    throw EngineError("no embedding " + src->name() + " -> " + dst->name());
  if (degree == 0) {
    KValue a = k0(src, true), b = k0(dst, true);
    return GroupHom(a.group, b.group, ZMat::identity(1));
  }
  if (degree != 1) throw EngineError("embedding maps served at degrees 0 and 1 only");
  // root of src's minimal polynomial inside dst
  RElem root = dst->zero();
  bool found = false;
  for (const RElem &x : dst->enumerate_finite()) {
    RElem acc = dst->zero();
    RElem power = dst->one();
    for (int i = 0; i < static_cast<int>(src->min_poly.size()); ++i) {
      acc = dst->add(acc, dst->mul(dst->from_int(src->min_poly[i]), power));
      power = dst->mul(power, x);
    }
    if (dst->is_zero(acc)) {
      root = x;
      found = true;
      break;
    }
  }
  if (!found) throw EngineError("embedding root not found");
  auto embed = [&](const RElem &a) {
    const auto &coeffs = std::get<std::vector<int>>(a.storage());
    RElem acc = dst->zero();
    RElem power = dst->one();
    for (int c : coeffs) {
      acc = dst->add(acc, dst->mul(dst->from_int(c), power));
      power = dst->mul(power, root);
    }
    return acc;
  };
  UnitGroupDesc sd = unit_group_desc(src), dd = unit_group_desc(dst);
  ZMat mat(dd.group.num_generators(), sd.group.num_generators());
  for (std::size_t j = 0; j < sd.factors[0].const_gens.size(); ++j) {
    std::vector<Int> coords = express_unit(dd.factors[0], embed(sd.factors[0].const_gens[j]));
    for (std::size_t r = 0; r < coords.size(); ++r) mat(r, j) = coords[r];
  }
  GroupHom hom(sd.group, dd.group, mat);
  if (!hom.is_well_defined()) throw EngineError("embedding map is not well-defined");
  return hom;
}

} // namespace kwb
