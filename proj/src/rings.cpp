#include "kwb/rings.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace kwb {

namespace {

// --- small polynomial helpers over F_p (coeff vectors, ascending) ---

int mod_p(long long x, int p) {
  int r = static_cast<int>(x % p);
  return r < 0 ? r + p : r;
}

std::vector<int> poly_trim(std::vector<int> a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

std::vector<int> poly_mul_fp(const std::vector<int> &a, const std::vector<int> &b, int p) {
  if (a.empty() || b.empty()) return {};
  std::vector<long long> c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += 1ll * a[i] * b[j];
  std::vector<int> r(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) r[i] = mod_p(c[i], p);
  return poly_trim(r);
}

// remainder of a mod m (m monic), over F_p
std::vector<int> poly_rem_fp(std::vector<int> a, const std::vector<int> &m, int p) {
  a = poly_trim(std::move(a));
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    int lead = a.back();
    std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i < m.size(); ++i) {
      std::size_t idx = shift + i;
      a[idx] = mod_p(a[idx] - 1ll * lead * m[i], p);
    }
    a = poly_trim(std::move(a));
  }
  return a;
}

bool poly_divides_fp(const std::vector<int> &d, const std::vector<int> &a, int p) {
  // d monic
  return poly_rem_fp(a, d, p).empty();
}

void next_poly(std::vector<int> &coeffs, int p) {
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (++coeffs[i] < p) return;
    coeffs[i] = 0;
  }
  coeffs.push_back(-1); // overflow marker
}

bool is_irreducible_fp(const std::vector<int> &m, int p) {
  const std::size_t k = m.size() - 1;
  if (k == 1) return true;
  for (std::size_t d = 1; 2 * d <= k; ++d) {
    std::vector<int> low(d, 0);
    for (;;) {
      std::vector<int> cand = low;
      cand.push_back(1); // monic of degree d
      if (poly_divides_fp(cand, m, p)) return false;
      next_poly(low, p);
      if (low.size() != d) break;
    }
  }
  return true;
}

std::vector<int> find_min_poly(int p, int k) {
  if (k == 1) return {0, 1};
  std::vector<int> low(k, 0);
  for (;;) {
    std::vector<int> cand = low;
    cand.push_back(1);
    if (is_irreducible_fp(cand, p)) return cand;
    next_poly(low, p);
    if (low.size() != static_cast<std::size_t>(k)) break;
  }
  throw std::logic_error("no irreducible polynomial found");
}

Int int_gcd(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

} // namespace

RingAutPtr identity_aut(RingPtr ring) {
  auto aut = std::make_shared<RingAut>();
  aut->ring = ring;
  aut->name = "id";
  aut->forward = [](const RElem &x) { return x; };
  aut->inverse = [](const RElem &x) { return x; };
  return aut;
}

RingAutPtr frobenius_aut(RingPtr field) {
  if (field->kind != RingKind::GaloisField) throw std::invalid_argument("frobenius needs a Galois field");
  auto aut = std::make_shared<RingAut>();
  aut->ring = field;
  aut->name = "frob";
  const int p = field->char_p;
  const int k = field->deg;
  auto pow_p = [field, p](const RElem &x) {
    RElem acc = field->one();
    for (int i = 0; i < p; ++i) acc = field->mul(acc, x); // x^p via repeated mult (p small)
    return acc;
  };
  aut->forward = pow_p;
  // inverse = frobenius applied k-1 times (order of frobenius is k)
  aut->inverse = [pow_p, k](const RElem &x) {
    RElem r = x;
    for (int i = 0; i < k - 1; ++i) r = pow_p(r);
    return r;
  };
  return aut;
}

bool is_identity_aut(const RingAutPtr &aut) { return !aut || aut->name == "id"; }

RingPtr Ring::integers() {
  auto r = std::make_shared<Ring>();
  r->kind = RingKind::Integers;
  return r;
}

RingPtr Ring::zmod(const Int &n) {
  if (n < 1) throw std::invalid_argument("zmod modulus must be >= 1");
  auto r = std::make_shared<Ring>();
  r->kind = RingKind::ZMod;
  r->modulus = n;
  return r;
}

RingPtr Ring::galois_field(const Int &q) {
  if (q < 2) throw std::invalid_argument("field order must be >= 2");
  // factor q = p^k
  Int qq = q;
  Int p = 2;
  while (p * p <= qq && qq % p != 0) ++p;
  if (qq % p != 0) p = qq;
  int k = 0;
  Int t = qq;
  while (t > 1) {
    if (t % p != 0) throw std::invalid_argument("field order must be a prime power");
    t /= p;
    ++k;
  }
  auto r = std::make_shared<Ring>();
  r->kind = RingKind::GaloisField;
  r->char_p = static_cast<int>(p);
  r->deg = k;
  r->min_poly = find_min_poly(r->char_p, k);
  return r;
}

RingPtr Ring::polynomial(RingPtr base, const std::string &var, RingAutPtr twist) {
  auto r = std::make_shared<Ring>();
  r->kind = RingKind::Polynomial;
  r->base = std::move(base);
  r->var = var;
  r->twist = std::move(twist);
  return r;
}

RingPtr Ring::neg_polynomial(RingPtr base, const std::string &var, RingAutPtr twist) {
  auto r = std::make_shared<Ring>();
  r->kind = RingKind::NegPolynomial;
  r->base = std::move(base);
  r->var = var;
  r->twist = std::move(twist);
  return r;
}

RingPtr Ring::laurent(RingPtr base, const std::string &var, RingAutPtr twist) {
  auto r = std::make_shared<Ring>();
  r->kind = RingKind::Laurent;
  r->base = std::move(base);
  r->var = var;
  r->twist = std::move(twist);
  return r;
}

bool Ring::commutative() const {
  if (is_extension()) return is_identity_aut(twist) && base->commutative();
  return true;
}

bool Ring::same_as(const Ring &o) const {
  if (kind != o.kind) return false;
  switch (kind) {
  case RingKind::Integers:
    return true;
  case RingKind::ZMod:
    return modulus == o.modulus;
  case RingKind::GaloisField:
    return char_p == o.char_p && deg == o.deg;
  default:
    break;
  }
  if (var != o.var) return false;
  bool t1 = is_identity_aut(twist), t2 = is_identity_aut(o.twist);
  if (t1 != t2) return false;
  if (!t1 && twist->name != o.twist->name) return false;
  return base->same_as(*o.base);
}

std::string Ring::name() const {
  switch (kind) {
  case RingKind::Integers:
    return "Z";
  case RingKind::ZMod:
    return "Zmod" + modulus.str();
  case RingKind::GaloisField: {
    Int q = field_order();
    return "F" + q.str();
  }
  case RingKind::Polynomial:
    return base->name() + (is_identity_aut(twist) ? "" : "_" + twist->name) + "[" + var + "]";
  case RingKind::NegPolynomial:
    return base->name() + (is_identity_aut(twist) ? "" : "_" + twist->name) + "[" + var + "^-1]";
  case RingKind::Laurent:
    return base->name() + (is_identity_aut(twist) ? "" : "_" + twist->name) + "[" + var + "," + var + "^-1]";
  }
  return "?";
}

Int Ring::field_order() const {
  if (kind != RingKind::GaloisField) throw std::logic_error("field_order on non-field");
  Int q = 1;
  for (int i = 0; i < deg; ++i) q *= char_p;
  return q;
}

RElem Ring::zero() const {
  switch (kind) {
  case RingKind::Integers:
    return RElem(shared_from_this(), Int(0));
  case RingKind::ZMod:
    return RElem(shared_from_this(), Int(0));
  case RingKind::GaloisField:
    return RElem(shared_from_this(), std::vector<int>(deg, 0));
  default:
    return RElem(shared_from_this(), std::make_shared<LaurentData>());
  }
}

RElem Ring::one() const { return from_int(1); }

RElem Ring::from_int(const Int &n) const {
  switch (kind) {
  case RingKind::Integers:
    return RElem(shared_from_this(), n);
  case RingKind::ZMod: {
    Int v = n % modulus;
    if (v < 0) v += modulus;
    return RElem(shared_from_this(), v);
  }
  case RingKind::GaloisField: {
    std::vector<int> c(deg, 0);
    Int v = n % char_p;
    if (v < 0) v += char_p;
    c[0] = static_cast<int>(v);
    return RElem(shared_from_this(), c);
  }
  default: {
    RElem c = base->from_int(n);
    if (base->is_zero(c)) return zero();
    auto d = std::make_shared<LaurentData>();
    d->terms.emplace_back(0, c);
    return RElem(shared_from_this(), d);
  }
  }
}

RElem Ring::normalize_laurent(std::vector<std::pair<int, RElem>> terms) const {
  std::sort(terms.begin(), terms.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
  auto d = std::make_shared<LaurentData>();
  for (auto &t : terms) {
    if (kind == RingKind::Polynomial && t.first < 0)
      throw std::invalid_argument("negative exponent in polynomial ring");
    if (kind == RingKind::NegPolynomial && t.first > 0)
      throw std::invalid_argument("positive exponent in inverse-polynomial ring");
    if (base->is_zero(t.second)) continue;
    if (!d->terms.empty() && d->terms.back().first == t.first) {
      RElem s = base->add(d->terms.back().second, t.second);
      if (base->is_zero(s))
        d->terms.pop_back();
      else
        d->terms.back().second = s;
    } else {
      d->terms.emplace_back(t.first, t.second);
    }
  }
  return RElem(shared_from_this(), d);
}

RElem Ring::monomial(const RElem &coeff, int exp) const {
  if (!is_extension()) throw std::logic_error("monomial on non-extension ring");
  if (!coeff.ring()->same_as(*base)) throw std::invalid_argument("monomial coefficient from wrong ring");
  return normalize_laurent({{exp, coeff}});
}

RElem Ring::coeff_at(const RElem &a, int exp) const {
  const auto &d = std::get<std::shared_ptr<const LaurentData>>(a.storage());
  for (const auto &t : d->terms)
    if (t.first == exp) return t.second;
  return base->zero();
}

std::vector<int> Ring::support(const RElem &a) const {
  const auto &d = std::get<std::shared_ptr<const LaurentData>>(a.storage());
  std::vector<int> s;
  for (const auto &t : d->terms) s.push_back(t.first);
  return s;
}

RElem Ring::add(const RElem &a, const RElem &b) const {
  switch (kind) {
  case RingKind::Integers:
    return RElem(shared_from_this(), std::get<Int>(a.storage()) + std::get<Int>(b.storage()));
  case RingKind::ZMod: {
    Int v = (std::get<Int>(a.storage()) + std::get<Int>(b.storage())) % modulus;
    return RElem(shared_from_this(), v);
  }
  case RingKind::GaloisField: {
    const auto &x = std::get<std::vector<int>>(a.storage());
    const auto &y = std::get<std::vector<int>>(b.storage());
    std::vector<int> c(deg);
    for (int i = 0; i < deg; ++i) c[i] = mod_p(x[i] + y[i], char_p);
    return RElem(shared_from_this(), c);
  }
  default: {
    const auto &x = std::get<std::shared_ptr<const LaurentData>>(a.storage());
    const auto &y = std::get<std::shared_ptr<const LaurentData>>(b.storage());
    std::vector<std::pair<int, RElem>> terms = x->terms;
    terms.insert(terms.end(), y->terms.begin(), y->terms.end());
    return normalize_laurent(std::move(terms));
  }
  }
}

RElem Ring::neg(const RElem &a) const {
  switch (kind) {
  case RingKind::Integers:
    return RElem(shared_from_this(), Int(-std::get<Int>(a.storage())));
  case RingKind::ZMod: {
    Int v = (modulus - std::get<Int>(a.storage())) % modulus;
    return RElem(shared_from_this(), v);
  }
  case RingKind::GaloisField: {
    const auto &x = std::get<std::vector<int>>(a.storage());
    std::vector<int> c(deg);
    for (int i = 0; i < deg; ++i) c[i] = mod_p(-x[i], char_p);
    return RElem(shared_from_this(), c);
  }
  default: {
    const auto &x = std::get<std::shared_ptr<const LaurentData>>(a.storage());
    std::vector<std::pair<int, RElem>> terms;
    for (const auto &t : x->terms) terms.emplace_back(t.first, base->neg(t.second));
    return normalize_laurent(std::move(terms));
  }
  }
}

RElem Ring::sub(const RElem &a, const RElem &b) const { return add(a, neg(b)); }

RElem Ring::mul(const RElem &a, const RElem &b) const {
  switch (kind) {
  case RingKind::Integers:
    return RElem(shared_from_this(), std::get<Int>(a.storage()) * std::get<Int>(b.storage()));
  case RingKind::ZMod: {
    Int v = (std::get<Int>(a.storage()) * std::get<Int>(b.storage())) % modulus;
    return RElem(shared_from_this(), v);
  }
  case RingKind::GaloisField: {
    const auto &x = std::get<std::vector<int>>(a.storage());
    const auto &y = std::get<std::vector<int>>(b.storage());
    std::vector<int> prod = poly_mul_fp(poly_trim(x), poly_trim(y), char_p);
    prod = poly_rem_fp(prod, min_poly, char_p);
    prod.resize(deg, 0);
    return RElem(shared_from_this(), prod);
  }
  default: {
    const auto &x = std::get<std::shared_ptr<const LaurentData>>(a.storage());
    const auto &y = std::get<std::shared_ptr<const LaurentData>>(b.storage());
    const bool twisted = !is_identity_aut(twist);
    std::vector<std::pair<int, RElem>> terms;
    for (const auto &tx : x->terms)
      for (const auto &ty : y->terms) {
        RElem cy = ty.second;
        if (twisted && tx.first != 0) {
          int j = tx.first;
          if (j > 0)
            for (int s = 0; s < j; ++s) cy = twist->forward(cy);
          else
            for (int s = 0; s < -j; ++s) cy = twist->inverse(cy);
        }
        terms.emplace_back(tx.first + ty.first, base->mul(tx.second, cy));
      }
    return normalize_laurent(std::move(terms));
  }
  }
}

bool Ring::is_zero(const RElem &a) const {
  switch (kind) {
  case RingKind::Integers:
  case RingKind::ZMod:
    return std::get<Int>(a.storage()) == 0;
  case RingKind::GaloisField: {
    for (int c : std::get<std::vector<int>>(a.storage()))
      if (c != 0) return false;
    return true;
  }
  default:
    return std::get<std::shared_ptr<const LaurentData>>(a.storage())->terms.empty();
  }
}

bool Ring::equal(const RElem &a, const RElem &b) const { return is_zero(sub(a, b)); }

bool Ring::is_unit(const RElem &a) const { return inverse(a).has_value(); }

std::optional<RElem> Ring::inverse(const RElem &a) const {
  switch (kind) {
  case RingKind::Integers: {
    const Int &v = std::get<Int>(a.storage());
    if (v == 1 || v == -1) return a;
    return std::nullopt;
  }
  case RingKind::ZMod: {
    if (modulus == 1) return a; // zero ring
    const Int &v = std::get<Int>(a.storage());
    if (int_gcd(v, modulus) != 1) return std::nullopt;
    // extended euclid
    Int r0 = modulus, r1 = v, s0 = 0, s1 = 1;
    while (r1 != 0) {
      Int q = r0 / r1;
      Int r2 = r0 - q * r1;
      Int s2 = s0 - q * s1;
      r0 = r1;
      r1 = r2;
      s0 = s1;
      s1 = s2;
    }
    Int inv = s0 % modulus;
    if (inv < 0) inv += modulus;
    return RElem(shared_from_this(), inv);
  }
  case RingKind::GaloisField: {
    if (is_zero(a)) return std::nullopt;
    // a^(q-2)
    Int e = field_order() - 2;
    RElem acc = one(), b = a;
    while (e > 0) {
      if (e % 2 == 1) acc = mul(acc, b);
      b = mul(b, b);
      e /= 2;
    }
    return acc;
  }
  default: {
    auto cls = classify_unit(a);
    if (cls.status != UnitClassifyStatus::Classified) return std::nullopt;
    int e = cls.value->exponent;
    if (kind == RingKind::Polynomial && e != 0) return std::nullopt;
    if (kind == RingKind::NegPolynomial && e != 0) return std::nullopt;
    auto cinv = base->inverse(cls.value->unit);
    if (!cinv) return std::nullopt;
    // (c t^e)^-1 = phi^{-e}(c^{-1}) t^{-e} under t a = phi(a) t
    RElem ci = *cinv;
    if (!is_identity_aut(twist) && e != 0) {
      if (e > 0)
        for (int s = 0; s < e; ++s) ci = twist->inverse(ci);
      else
        for (int s = 0; s < -e; ++s) ci = twist->forward(ci);
    }
    return monomial(ci, -e);
  }
  }
}

std::string Ring::to_string(const RElem &a) const {
  switch (kind) {
  case RingKind::Integers:
  case RingKind::ZMod:
    return std::get<Int>(a.storage()).str();
  case RingKind::GaloisField: {
    const auto &c = std::get<std::vector<int>>(a.storage());
    std::ostringstream os;
    bool first = true;
    for (int i = deg - 1; i >= 0; --i) {
      if (c[i] == 0) continue;
      if (!first) os << "+";
      if (i == 0 || c[i] != 1) os << c[i];
      if (i == 1)
        os << "x";
      else if (i > 1)
        os << "x^" << i;
      first = false;
    }
    if (first) os << "0";
    return os.str();
  }
  default: {
    const auto &d = std::get<std::shared_ptr<const LaurentData>>(a.storage());
    if (d->terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto &t : d->terms) {
      if (!first) os << " + ";
      os << "(" << base->to_string(t.second) << ")";
      if (t.first != 0) os << var << "^" << t.first;
      first = false;
    }
    return os.str();
  }
  }
}

RElem Ring::sample(std::mt19937 &rng, int size_hint) const {
  switch (kind) {
  case RingKind::Integers: {
    std::uniform_int_distribution<int> d(-9, 9);
    return from_int(d(rng));
  }
  case RingKind::ZMod: {
    std::uniform_int_distribution<long long> d(0, static_cast<long long>(modulus) - 1);
    return from_int(d(rng));
  }
  case RingKind::GaloisField: {
    std::uniform_int_distribution<int> d(0, char_p - 1);
    std::vector<int> c(deg);
    for (int i = 0; i < deg; ++i) c[i] = d(rng);
    return RElem(shared_from_this(), c);
  }
  default: {
    int lo = (kind == RingKind::Polynomial) ? 0 : -size_hint;
    int hi = (kind == RingKind::NegPolynomial) ? 0 : size_hint;
    std::uniform_int_distribution<int> nterms(0, 2);
    std::uniform_int_distribution<int> expd(lo, hi);
    std::vector<std::pair<int, RElem>> terms;
    int n = nterms(rng) + 1;
    for (int i = 0; i < n; ++i) terms.emplace_back(expd(rng), base->sample(rng, size_hint));
    return normalize_laurent(std::move(terms));
  }
  }
}

std::vector<RElem> Ring::enumerate_finite() const {
  std::vector<RElem> out;
  if (kind == RingKind::ZMod) {
    for (Int i = 0; i < modulus; ++i) out.push_back(from_int(i));
  } else if (kind == RingKind::GaloisField) {
    std::vector<int> c(deg, 0);
    for (;;) {
      out.push_back(RElem(shared_from_this(), c));
      int i = 0;
      while (i < deg) {
        if (++c[i] < char_p) break;
        c[i] = 0;
        ++i;
      }
      if (i == deg) break;
    }
  } else {
    throw std::logic_error("enumerate_finite on infinite ring");
  }
  return out;
}

RElem laurent_mul(const RElem &x, const RElem &y) {
  const RingPtr &r = x.ring();
  if (!r->is_extension()) throw std::invalid_argument("laurent_mul needs an extension ring");
  if (!r->same_as(*y.ring())) throw std::invalid_argument("laurent_mul: base-ring mismatch");
  return r->mul(x, y);
}

UnitClassification classify_unit(const RElem &x) {
  const RingPtr &r = x.ring();
  if (!r->is_extension()) throw std::invalid_argument("classify_unit needs an extension ring");
  const RingPtr &b = r->base;
  bool domain_base = b->kind == RingKind::Integers || b->kind == RingKind::GaloisField ||
                     (b->kind == RingKind::ZMod && [&] {
                       // prime modulus is a domain
                       Int n = b->modulus;
                       if (n < 2) return false;
                       for (Int d = 2; d * d <= n; ++d)
                         if (n % d == 0) return false;
                       return true;
                     }());
  bool zpk_base = false;
  if (b->kind == RingKind::ZMod && !domain_base) {
    // is the modulus a prime power?
    Int n = b->modulus;
    if (n >= 2) {
      Int p = 2;
      while (p * p <= n && n % p != 0) ++p;
      if (n % p == 0) {
        Int t = n;
        while (t % p == 0) t /= p;
        zpk_base = (t == 1);
      }
    }
  }
  if (!domain_base && !zpk_base) return {UnitClassifyStatus::UnsupportedBase, std::nullopt};

  auto sup = r->support(x);
  if (sup.size() != 1) {
    if (zpk_base) return {UnitClassifyStatus::UnsupportedBase, std::nullopt};
    return {UnitClassifyStatus::NotMonomialUnit, std::nullopt};
  }
  RElem c = r->coeff_at(x, sup[0]);
  if (!b->is_unit(c)) {
    if (zpk_base) return {UnitClassifyStatus::UnsupportedBase, std::nullopt};
    return {UnitClassifyStatus::NotMonomialUnit, std::nullopt};
  }
  return {UnitClassifyStatus::Classified, UnitMonomial{c, sup[0]}};
}

std::string hom_kind_name(HomKind k) {
  switch (k) {
  case HomKind::IPlus:
    return "i_plus";
  case HomKind::IMinus:
    return "i_minus";
  case HomKind::IZero:
    return "i_zero";
  case HomKind::JPlus:
    return "j_plus";
  case HomKind::JMinus:
    return "j_minus";
  case HomKind::Ev0Plus:
    return "ev0_plus";
  case HomKind::Ev0Minus:
    return "ev0_minus";
  case HomKind::VarEval:
    return "var_eval";
  }
  return "?";
}

RElem RingHom::apply(const RElem &a) const {
  switch (kind) {
  case HomKind::IPlus:
  case HomKind::IMinus:
  case HomKind::IZero:
    return dst->monomial(a, 0);
  case HomKind::JPlus:
  case HomKind::JMinus: {
    std::vector<std::pair<int, RElem>> terms;
    for (int e : src->support(a)) terms.emplace_back(e, src->coeff_at(a, e));
    RElem out = dst->zero();
    for (auto &t : terms) out = dst->add(out, dst->monomial(t.second, t.first));
    return out;
  }
  case HomKind::Ev0Plus:
  case HomKind::Ev0Minus:
    return src->coeff_at(a, 0);
  case HomKind::VarEval: {
    RElem acc = dst->zero();
    for (int e : src->support(a)) {
      RElem term = src->coeff_at(a, e);
      RElem v = dst->one();
      if (e >= 0) {
        for (int i = 0; i < e; ++i) v = dst->mul(v, *eval_value);
      } else {
        auto inv = dst->inverse(*eval_value);
        if (!inv) throw std::invalid_argument("var_eval at a non-unit with negative exponents");
        for (int i = 0; i < -e; ++i) v = dst->mul(v, *inv);
      }
      acc = dst->add(acc, dst->mul(term, v));
    }
    return acc;
  }
  }
  throw std::logic_error("unreachable");
}

RingHom ring_hom(HomKind kind, RingPtr src, RingPtr dst) {
  auto need = [&](bool ok, const char *msg) {
    if (!ok) throw std::invalid_argument(std::string("ring_hom: ") + msg);
  };
  switch (kind) {
  case HomKind::IPlus:
    need(dst->kind == RingKind::Polynomial && dst->base->same_as(*src), "i_plus needs src -> src[t]");
    break;
  case HomKind::IMinus:
    need(dst->kind == RingKind::NegPolynomial && dst->base->same_as(*src), "i_minus needs src -> src[t^-1]");
    break;
  case HomKind::IZero:
    need(dst->kind == RingKind::Laurent && dst->base->same_as(*src), "i_zero needs src -> src[t,t^-1]");
    break;
  case HomKind::JPlus:
    need(src->kind == RingKind::Polynomial && dst->kind == RingKind::Laurent && src->base->same_as(*dst->base) &&
             src->var == dst->var,
         "j_plus needs src[t] -> src[t,t^-1]");
    break;
  case HomKind::JMinus:
    need(src->kind == RingKind::NegPolynomial && dst->kind == RingKind::Laurent && src->base->same_as(*dst->base) &&
             src->var == dst->var,
         "j_minus needs src[t^-1] -> src[t,t^-1]");
    break;
  case HomKind::Ev0Plus:
    need(src->kind == RingKind::Polynomial && src->base->same_as(*dst), "ev0_plus needs src[t] -> src");
    break;
  case HomKind::Ev0Minus:
    need(src->kind == RingKind::NegPolynomial && src->base->same_as(*dst), "ev0_minus needs src[t^-1] -> src");
    break;
  case HomKind::VarEval:
    throw std::invalid_argument("use ring_hom_var_eval");
  }
  return RingHom{std::move(src), std::move(dst), kind, std::nullopt};
}

RingHom ring_hom_var_eval(RingPtr src, const RElem &value) {
  if (!src->is_extension()) throw std::invalid_argument("var_eval needs an extension ring");
  if (!is_identity_aut(src->twist)) throw std::invalid_argument("var_eval only on untwisted extensions");
  if (!value.ring()->same_as(*src->base)) throw std::invalid_argument("var_eval value must live in the base ring");
  return RingHom{src, src->base, HomKind::VarEval, value};
}

} // namespace kwb
