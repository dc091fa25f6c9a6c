#include "kwb/addcat.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace kwb {

Mor::Mor(RingPtr r, std::size_t rows_, std::size_t cols_) : ring(std::move(r)), rows(rows_), cols(cols_) {
  a.assign(rows * cols, ring->zero());
}

Mor Mor::identity(RingPtr r, std::size_t n) {
  Mor m(r, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = r->one();
  return m;
}

Mor Mor::zero(RingPtr r, std::size_t rows_, std::size_t cols_) { return Mor(std::move(r), rows_, cols_); }

Mor compose(const Mor &g, const Mor &f) {
  if (g.cols != f.rows) throw std::invalid_argument("compose: shape mismatch");
  Mor r(g.ring, g.rows, f.cols);
  for (std::size_t i = 0; i < g.rows; ++i)
    for (std::size_t k = 0; k < g.cols; ++k) {
      if (g.ring->is_zero(g.at(i, k))) continue;
      for (std::size_t j = 0; j < f.cols; ++j)
        r.at(i, j) = r.ring->add(r.at(i, j), g.ring->mul(g.at(i, k), f.at(k, j)));
    }
  return r;
}

Mor add(const Mor &f, const Mor &g) {
  if (f.rows != g.rows || f.cols != g.cols) throw std::invalid_argument("add: shape mismatch");
  Mor r(f.ring, f.rows, f.cols);
  for (std::size_t i = 0; i < f.a.size(); ++i) r.a[i] = f.ring->add(f.a[i], g.a[i]);
  return r;
}

Mor negate(const Mor &f) {
  Mor r(f.ring, f.rows, f.cols);
  for (std::size_t i = 0; i < f.a.size(); ++i) r.a[i] = f.ring->neg(f.a[i]);
  return r;
}

Mor scale(const RElem &c, const Mor &f) {
  Mor r(f.ring, f.rows, f.cols);
  for (std::size_t i = 0; i < f.a.size(); ++i) r.a[i] = f.ring->mul(c, f.a[i]);
  return r;
}

bool mor_equal(const Mor &f, const Mor &g) {
  if (f.rows != g.rows || f.cols != g.cols) return false;
  for (std::size_t i = 0; i < f.a.size(); ++i)
    if (!f.ring->equal(f.a[i], g.a[i])) return false;
  return true;
}

bool mor_is_zero(const Mor &f) {
  for (const auto &x : f.a)
    if (!f.ring->is_zero(x)) return false;
  return true;
}

Mor block_sum(const Mor &f, const Mor &g) {
  Mor r(f.ring, f.rows + g.rows, f.cols + g.cols);
  for (std::size_t i = 0; i < f.rows; ++i)
    for (std::size_t j = 0; j < f.cols; ++j) r.at(i, j) = f.at(i, j);
  for (std::size_t i = 0; i < g.rows; ++i)
    for (std::size_t j = 0; j < g.cols; ++j) r.at(f.rows + i, f.cols + j) = g.at(i, j);
  return r;
}

Mor sample_mor(RingPtr ring, std::size_t rows, std::size_t cols, std::mt19937 &rng, int size_hint) {
  Mor m(ring, rows, cols);
  for (auto &x : m.a) x = ring->sample(rng, size_hint);
  return m;
}

std::string mor_to_string(const Mor &f) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < f.rows; ++i) {
    if (i) os << "; ";
    for (std::size_t j = 0; j < f.cols; ++j) {
      if (j) os << ", ";
      os << f.ring->to_string(f.at(i, j));
    }
  }
  os << "]";
  return os.str();
}

RElem mor_det(const Mor &f) {
  if (f.rows != f.cols) throw std::invalid_argument("det: non-square");
  const std::size_t n = f.rows;
  if (n == 0) return f.ring->one();
  if (n == 1) return f.at(0, 0);
  RElem acc = f.ring->zero();
  // cofactor expansion along the first row (n is small everywhere we use this)
  for (std::size_t j = 0; j < n; ++j) {
    if (f.ring->is_zero(f.at(0, j))) continue;
    Mor minor(f.ring, n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t cc = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == j) continue;
        minor.at(i - 1, cc++) = f.at(i, c);
      }
    }
    RElem term = f.ring->mul(f.at(0, j), mor_det(minor));
    if (j % 2 == 1) term = f.ring->neg(term);
    acc = f.ring->add(acc, term);
  }
  return acc;
}

std::optional<Mor> mor_inverse(const Mor &f) {
  if (f.rows != f.cols) return std::nullopt;
  const std::size_t n = f.rows;
  RElem det = mor_det(f);
  auto dinv = f.ring->inverse(det);
  if (!dinv) return std::nullopt;
  Mor adj(f.ring, n, n);
  if (n == 0) return adj;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Mor minor(f.ring, n - 1, n - 1);
      std::size_t rr = 0;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == i) continue;
        std::size_t cc = 0;
        for (std::size_t c = 0; c < n; ++c) {
          if (c == j) continue;
          minor.at(rr, cc++) = f.at(r, c);
        }
        ++rr;
      }
      RElem cof = mor_det(minor);
      if ((i + j) % 2 == 1) cof = f.ring->neg(cof);
      adj.at(j, i) = f.ring->mul(cof, *dinv); // adjugate transpose
    }
  return adj;
}

Mor CatAut::apply(const Mor &f) const {
  if (!ring_aut) return f;
  Mor r(f.ring, f.rows, f.cols);
  for (std::size_t i = 0; i < f.a.size(); ++i) r.a[i] = ring_aut->forward(f.a[i]);
  return r;
}

Mor CatAut::apply_inverse(const Mor &f) const {
  if (!ring_aut) return f;
  Mor r(f.ring, f.rows, f.cols);
  for (std::size_t i = 0; i < f.a.size(); ++i) r.a[i] = ring_aut->inverse(f.a[i]);
  return r;
}

Mor CatAut::apply_power(const Mor &f, int k) const {
  Mor r = f;
  if (k > 0)
    for (int s = 0; s < k; ++s) r = apply(r);
  else
    for (int s = 0; s < -k; ++s) r = apply_inverse(r);
  return r;
}

CatAut identity_cat_aut(RingPtr ring) { return CatAut{identity_aut(std::move(ring))}; }

bool is_identity_cat_aut(const CatAut &aut) { return is_identity_aut(aut.ring_aut); }

LaurentMor LaurentMor::zero(RingPtr r, std::size_t dom_, std::size_t cod_) {
  LaurentMor m;
  m.ring = std::move(r);
  m.dom = dom_;
  m.cod = cod_;
  return m;
}

LaurentMor LaurentMor::from_term(int exp, const Mor &m) {
  return normalize(m.ring, m.cols, m.rows, {{exp, m}});
}

LaurentMor LaurentMor::identity_t(RingPtr r, std::size_t n, int exp) {
  return from_term(exp, Mor::identity(std::move(r), n));
}

Mor LaurentMor::coeff(int exp) const {
  for (const auto &t : terms)
    if (t.first == exp) return t.second;
  return Mor::zero(ring, cod, dom);
}

std::vector<int> LaurentMor::support() const {
  std::vector<int> s;
  for (const auto &t : terms) s.push_back(t.first);
  return s;
}

LaurentMor normalize(RingPtr ring, std::size_t dom, std::size_t cod, std::vector<std::pair<int, Mor>> terms) {
  std::sort(terms.begin(), terms.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
  LaurentMor out;
  out.ring = std::move(ring);
  out.dom = dom;
  out.cod = cod;
  for (auto &t : terms) {
    if (t.second.cols != dom || t.second.rows != cod) throw std::invalid_argument("laurent term shape mismatch");
    if (mor_is_zero(t.second)) continue;
    if (!out.terms.empty() && out.terms.back().first == t.first) {
      Mor s = add(out.terms.back().second, t.second);
      if (mor_is_zero(s))
        out.terms.pop_back();
      else
        out.terms.back().second = s;
    } else {
      out.terms.emplace_back(t.first, t.second);
    }
  }
  return out;
}

LaurentMor laurent_add(const LaurentMor &f, const LaurentMor &g) {
  if (f.dom != g.dom || f.cod != g.cod) throw std::invalid_argument("laurent_add: shape mismatch");
  auto terms = f.terms;
  terms.insert(terms.end(), g.terms.begin(), g.terms.end());
  return normalize(f.ring, f.dom, f.cod, std::move(terms));
}

LaurentMor laurent_negate(const LaurentMor &f) {
  auto terms = f.terms;
  for (auto &t : terms) t.second = negate(t.second);
  return normalize(f.ring, f.dom, f.cod, std::move(terms));
}

bool laurent_equal(const LaurentMor &f, const LaurentMor &g) {
  if (f.dom != g.dom || f.cod != g.cod || f.terms.size() != g.terms.size()) return false;
  for (std::size_t i = 0; i < f.terms.size(); ++i) {
    if (f.terms[i].first != g.terms[i].first) return false;
    if (!mor_equal(f.terms[i].second, g.terms[i].second)) return false;
  }
  return true;
}

bool laurent_is_zero(const LaurentMor &f) { return f.terms.empty(); }

LaurentMor laurent_compose(const LaurentMor &g, const LaurentMor &f, const CatAut *twist) {
  if (f.cod != g.dom) throw std::invalid_argument("laurent_compose: shape mismatch");
  std::vector<std::pair<int, Mor>> terms;
  const bool twisted = twist && !is_identity_cat_aut(*twist);
  for (const auto &tg : g.terms)
    for (const auto &tf : f.terms) {
      Mor rhs = tf.second;
      if (twisted && tg.first != 0) rhs = twist->apply_power(rhs, tg.first);
      terms.emplace_back(tg.first + tf.first, compose(tg.second, rhs));
    }
  return normalize(g.ring, f.dom, g.cod, std::move(terms));
}

std::optional<LaurentMor> laurent_monomial_inverse(const LaurentMor &f, const CatAut *twist) {
  if (f.dom != f.cod) return std::nullopt;
  if (f.terms.size() != 1) return std::nullopt;
  int e = f.terms[0].first;
  auto minv = mor_inverse(f.terms[0].second);
  if (!minv) return std::nullopt;
  Mor body = *minv;
  if (twist && !is_identity_cat_aut(*twist) && e != 0) body = twist->apply_power(body, -e);
  LaurentMor cand = LaurentMor::from_term(-e, body);
  // verify both composites in the possibly twisted category
  LaurentMor idm = LaurentMor::identity_t(f.ring, f.dom, 0);
  if (!laurent_equal(laurent_compose(cand, f, twist), idm)) return std::nullopt;
  if (!laurent_equal(laurent_compose(f, cand, twist), idm)) return std::nullopt;
  return cand;
}

LaurentMor functor_embed(CatFunctorKind kind, const Mor &f) {
  if (kind != CatFunctorKind::IPlus && kind != CatFunctorKind::IMinus && kind != CatFunctorKind::IZero)
    throw std::invalid_argument("functor_embed expects i_+, i_- or i_0");
  return LaurentMor::from_term(0, f);
}

LaurentMor functor_include(CatFunctorKind kind, const LaurentMor &f) {
  if (kind != CatFunctorKind::JPlus && kind != CatFunctorKind::JMinus)
    throw std::invalid_argument("functor_include expects j_+ or j_-");
  for (int e : f.support()) {
    if (kind == CatFunctorKind::JPlus && e < 0) throw std::invalid_argument("j_plus input has negative exponents");
    if (kind == CatFunctorKind::JMinus && e > 0) throw std::invalid_argument("j_minus input has positive exponents");
  }
  return f;
}

Mor functor_ev0(const LaurentMor &f) { return f.coeff(0); }

IdemObject idem_eta_object(RingPtr ring, std::size_t n) { return IdemObject{n, Mor::identity(std::move(ring), n)}; }

IdemMor idem_mor(const IdemObject &dom, const IdemObject &cod, const Mor &f) {
  Mor proj = compose(cod.idempotent, compose(f, dom.idempotent));
  if (!mor_equal(proj, f)) throw std::invalid_argument("idem_mor: q f p != f");
  return IdemMor{dom, cod, f};
}

IdemMor idem_compose(const IdemMor &g, const IdemMor &f) {
  if (f.cod.ambient != g.dom.ambient || !mor_equal(f.cod.idempotent, g.dom.idempotent))
    throw std::invalid_argument("idem_compose: object mismatch");
  return idem_mor(f.dom, g.cod, compose(g.f, f.f));
}

IdemMor functor_idem_eta(RingPtr ring, const Mor &f) {
  IdemObject d = idem_eta_object(ring, f.cols);
  IdemObject c = idem_eta_object(ring, f.rows);
  return idem_mor(d, c, f);
}

IntervalMor interval_embed(int end, const Mor &f) {
  if (end != 0 && end != 1) throw std::invalid_argument("interval end must be 0 or 1");
  return IntervalMor{{f.cols, end}, {f.rows, end}, f};
}

IntervalMor interval_compose(const IntervalMor &g, const IntervalMor &f) {
  if (f.cod.rank != g.dom.rank || f.cod.end != g.dom.end)
    throw std::invalid_argument("interval_compose: object mismatch");
  return IntervalMor{f.dom, g.cod, compose(g.core, f.core)};
}

LaurentMor LaurentIntervalFunctor::apply(const IntervalMor &m) const {
  const Mor &core = m.core;
  if (m.dom.end == 0 && m.cod.end == 0) return f0.on_mor(core);
  if (m.dom.end == 1 && m.cod.end == 1) return f1.on_mor(core);
  if (m.dom.end == 0 && m.cod.end == 1) return laurent_compose(t(m.cod.rank), f0.on_mor(core), twist);
  // (A,1) -> (B,0): compose with the inverse component
  auto tinv = laurent_monomial_inverse(t(m.dom.rank), twist);
  if (!tinv) throw std::logic_error("interval functor: component not invertible");
  return laurent_compose(f0.on_mor(core), *tinv, twist);
}

Mor MatIntervalFunctor::apply(const IntervalMor &m) const {
  const Mor &core = m.core;
  if (m.dom.end == 0 && m.cod.end == 0) return f0.on_mor(core);
  if (m.dom.end == 1 && m.cod.end == 1) return f1.on_mor(core);
  if (m.dom.end == 0 && m.cod.end == 1) return compose(t(m.cod.rank), f0.on_mor(core));
  auto tinv = mor_inverse(t(m.dom.rank));
  if (!tinv) throw std::logic_error("interval functor: component not invertible");
  return compose(f0.on_mor(core), *tinv);
}

NatIsoCheck check_nat_iso_laurent(RingPtr base, const FunctorTo<LaurentMor> &f0, const FunctorTo<LaurentMor> &f1,
                                  const NatIsoComponents<LaurentMor> &t, std::mt19937 &rng, int samples,
                                  const CatAut *twist) {
  NatIsoCheck rep;
  std::uniform_int_distribution<std::size_t> rk(1, 3);
  for (std::size_t n = 1; n <= 3 && rep.components_invertible; ++n) {
    if (!laurent_monomial_inverse(t(n), twist)) {
      rep.components_invertible = false;
      rep.detail = "component at rank " + std::to_string(n) + " is not invertible";
    }
  }
  if (!rep.components_invertible) return rep;
  for (int i = 0; i < samples; ++i) {
    std::size_t a = rk(rng), b = rk(rng);
    Mor f = sample_mor(base, b, a, rng);
    LaurentMor lhs = laurent_compose(t(b), f0.on_mor(f), twist);
    LaurentMor rhs = laurent_compose(f1.on_mor(f), t(a), twist);
    if (!laurent_equal(lhs, rhs)) {
      rep.natural = false;
      rep.detail = "naturality fails on a sampled morphism " + std::to_string(b) + "x" + std::to_string(a);
      return rep;
    }
  }
  return rep;
}

NatIsoCheck check_nat_iso_mat(RingPtr base, const FunctorTo<Mor> &f0, const FunctorTo<Mor> &f1,
                              const NatIsoComponents<Mor> &t, std::mt19937 &rng, int samples) {
  NatIsoCheck rep;
  for (std::size_t n = 1; n <= 3 && rep.components_invertible; ++n) {
    if (!mor_inverse(t(n))) {
      rep.components_invertible = false;
      rep.detail = "component at rank " + std::to_string(n) + " is not invertible";
    }
  }
  if (!rep.components_invertible) return rep;
  std::uniform_int_distribution<std::size_t> rk(1, 3);
  for (int i = 0; i < samples; ++i) {
    std::size_t a = rk(rng), b = rk(rng);
    Mor f = sample_mor(base, b, a, rng);
    Mor lhs = compose(t(b), f0.on_mor(f));
    Mor rhs = compose(f1.on_mor(f), t(a));
    if (!mor_equal(lhs, rhs)) {
      rep.natural = false;
      rep.detail = "naturality fails on a sampled morphism";
      return rep;
    }
  }
  return rep;
}

std::optional<NilObject> make_nil_object(RingPtr ring, std::size_t carrier, const Mor &endo, const CatAut &phi,
                                         std::optional<std::size_t> witness, std::size_t search_bound) {
  if (endo.rows != carrier || endo.cols != carrier) throw std::invalid_argument("nil endomap must be square");
  auto twisted_power_vanishes = [&](std::size_t n) {
    // nu o Phi(nu) o Phi^2(nu) o ... o Phi^{n-1}(nu)
    Mor acc = Mor::identity(ring, carrier);
    for (std::size_t k = 0; k < n; ++k) acc = compose(acc, phi.apply_power(endo, static_cast<int>(k)));
    return mor_is_zero(acc);
  };
  if (witness) {
    if (!twisted_power_vanishes(*witness)) return std::nullopt;
    return NilObject{ring, carrier, endo, phi, *witness};
  }
  for (std::size_t n = 1; n <= search_bound; ++n)
    if (twisted_power_vanishes(n)) return NilObject{ring, carrier, endo, phi, n};
  return std::nullopt;
}

ChiComplex chi_complex(const NilObject &nil) {
  LaurentMor diff = laurent_add(LaurentMor::identity_t(nil.ring, nil.carrier, 1),
                                laurent_negate(LaurentMor::from_term(0, nil.endo)));
  return ChiComplex{nil.carrier, nil.carrier, diff};
}

EquivCheckReport matcat_laurent_equiv_check(RingPtr r, std::size_t size_bound, int samples_per_homset,
                                            unsigned seed) {
  EquivCheckReport rep;
  RingPtr rl = Ring::laurent(r, "t");
  std::mt19937 rng(seed);

  auto transpose_to_ring = [&](const LaurentMor &f) {
    Mor out(rl, f.cod, f.dom);
    for (const auto &term : f.terms)
      for (std::size_t i = 0; i < f.cod; ++i)
        for (std::size_t j = 0; j < f.dom; ++j)
          out.at(i, j) = rl->add(out.at(i, j), rl->monomial(term.second.at(i, j), term.first));
    return out;
  };
  auto transpose_back = [&](const Mor &m) {
    std::vector<std::pair<int, Mor>> terms;
    for (std::size_t i = 0; i < m.rows; ++i)
      for (std::size_t j = 0; j < m.cols; ++j)
        for (int e : rl->support(m.at(i, j))) {
          Mor single = Mor::zero(r, m.rows, m.cols);
          single.at(i, j) = rl->coeff_at(m.at(i, j), e);
          terms.emplace_back(e, single);
        }
    return normalize(r, m.cols, m.rows, std::move(terms));
  };

  for (std::size_t a = 0; a <= size_bound; ++a)
    for (std::size_t b = 0; b <= size_bound; ++b) {
      ++rep.objects_checked;
      for (int s = 0; s < samples_per_homset; ++s) {
        ++rep.samples;
        // random Laurent morphism a -> b
        std::uniform_int_distribution<int> expd(-2, 2), nterms(0, 2);
        std::vector<std::pair<int, Mor>> terms;
        int n = nterms(rng) + 1;
        for (int k = 0; k < n; ++k) terms.emplace_back(expd(rng), sample_mor(r, b, a, rng, 1));
        LaurentMor f = normalize(r, a, b, std::move(terms));
        // round trip both ways
        Mor tf = transpose_to_ring(f);
        if (!laurent_equal(transpose_back(tf), f)) {
          rep.pass = false;
          rep.detail = "round trip failed";
          return rep;
        }
        // composition respected against a second morphism b -> b'
        std::uniform_int_distribution<std::size_t> rk(0, size_bound);
        std::size_t c = rk(rng);
        std::vector<std::pair<int, Mor>> terms2;
        int n2 = nterms(rng) + 1;
        for (int k = 0; k < n2; ++k) terms2.emplace_back(expd(rng), sample_mor(r, c, b, rng, 1));
        LaurentMor g = normalize(r, b, c, std::move(terms2));
        Mor lhs = transpose_to_ring(laurent_compose(g, f));
        Mor rhs = compose(transpose_to_ring(g), transpose_to_ring(f));
        if (!mor_equal(lhs, rhs)) {
          rep.pass = false;
          rep.detail = "composition not respected";
          return rep;
        }
        // additivity
        LaurentMor f2 = normalize(r, a, b, {{0, sample_mor(r, b, a, rng, 1)}});
        Mor sum_lhs = transpose_to_ring(laurent_add(f, f2));
        Mor sum_rhs = add(transpose_to_ring(f), transpose_to_ring(f2));
        if (!mor_equal(sum_lhs, sum_rhs)) {
          rep.pass = false;
          rep.detail = "additivity not respected";
          return rep;
        }
      }
    }
  return rep;
}

} // namespace kwb
