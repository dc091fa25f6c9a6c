#pragma once

#include "kwb/rings.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kwb {

enum class AdjKind { Poly, NegPoly, Laurent };

/// One variable adjunction: A |-> A[t], A[t^-1] or A[t,t^-1], optionally
/// twisted by a named automorphism (resolved by the serving source).
struct Adjunction {
  AdjKind kind = AdjKind::Laurent;
  std::string var = "t";
  std::string twist; // empty = untwisted

  bool operator==(const Adjunction &o) const { return kind == o.kind && var == o.var && twist == o.twist; }
  std::string suffix() const;
};

/// A base object (ring selector like "F3" / "Z" / "Zmod6", or the name of
/// an oracle object) with an ordered list of adjunctions.
struct Expression {
  std::string base;
  std::vector<Adjunction> chain;

  std::string key() const;
  Expression extended(const Adjunction &a) const;
  Expression parent() const; // drop the last adjunction
  bool operator==(const Expression &o) const { return base == o.base && chain == o.chain; }

  /// First variable name not already used in the chain.
  std::string fresh_var() const;
};

/// Parse a base ring selector: Z | F<q> | Zmod<n>.
std::optional<RingPtr> parse_base_ring(const std::string &selector);

/// Parse a full selector with suffix chain, e.g. "F3[t][s,s^-1]".
std::optional<Expression> parse_expression(const std::string &selector);

/// The concrete ring of an expression whose base is a ring selector and
/// whose chain is untwisted; nullopt otherwise.
std::optional<RingPtr> ring_of_expression(const Expression &e);

} // namespace kwb
