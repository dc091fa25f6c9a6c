#pragma once

#include "kwb/abgroup.hpp"
#include "kwb/expression.hpp"
#include "kwb/kengine.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace kwb {

enum class SourceMode { Independent, BhsExtended, Oracle };
enum class Provenance { Independent, Synthesized, Oracle };

std::string source_mode_name(SourceMode m);
std::string provenance_name(Provenance p);

struct SourceGap : std::runtime_error {
  SourceGap(std::string what, std::string expr_key, int degree)
      : std::runtime_error(std::move(what)), expr(std::move(expr_key)), degree(degree) {}
  std::string expr;
  int degree;
};

struct KEntry {
  FgAbGroup group;
  Provenance provenance = Provenance::Independent;
};

/// A request for the induced map of one structural homomorphism. The
/// adjunction acts between `prefix` and `trailing`; for example with
/// kind = JPlus, var = t, trailing = [s-Laurent] this is the map
///   K_i(prefix[t][s,s^-1]) -> K_i(prefix[t,t^-1][s,s^-1]).
struct MapRequest {
  Expression prefix;
  Adjunction adj; // the Poly/NegPoly/Laurent adjunction being mapped (var + twist)
  std::vector<Adjunction> trailing;
  HomKind kind = HomKind::IPlus;

  Expression from_expression() const;
  Expression to_expression() const;
  std::string key(int degree) const;
};

/// Backend interface: raw values for expressions it understands. Groups
/// and last-adjunction structure maps only; the closure layer does the
/// rest.
class SourceBackend {
public:
  virtual ~SourceBackend() = default;
  virtual std::optional<FgAbGroup> raw_group(const Expression &e, int degree) const = 0;
  /// Structure map for a request with empty trailing chain.
  virtual std::optional<GroupHom> raw_map(const MapRequest &r, int degree) const = 0;
  /// Action of the named twist automorphism on K_degree of the expression.
  virtual std::optional<GroupHom> raw_phi_action(const Expression &e, const std::string &twist, int degree) const {
    (void)e;
    (void)twist;
    (void)degree;
    return std::nullopt;
  }
  virtual Provenance provenance() const = 0;
};

/// Provider of K-group data for expressions. In independent mode only
/// backend data is served; in the extended modes, expressions outside the
/// backends are synthesized by the Bass-Heller-Swan closure with unknown
/// NK terms taken to vanish (and labeled as synthesized).
class KSource {
public:
  KSource(SourceMode mode, std::vector<std::shared_ptr<const SourceBackend>> backends);

  static KSource engine(SourceMode mode = SourceMode::Independent);

  SourceMode mode() const { return mode_; }
  bool synthesizes() const { return mode_ != SourceMode::Independent; }

  /// K_degree of the expression; throws SourceGap when unavailable.
  KEntry group(const Expression &e, int degree) const;
  bool serves(const Expression &e, int degree) const;
  /// True when the value comes from a backend rather than synthesis.
  bool backend_serves(const Expression &e, int degree) const;

  GroupHom map(const MapRequest &r, int degree) const;

  /// Tower view: extension groups whose last adjunction is Laurent are
  /// always given by the synthesized decomposition (validated against any
  /// backend value up to isomorphism), so that iterated constructions act
  /// on one coherent family of presentations. Polynomial-extension data
  /// still comes from the backends, which is where real NK content lives.
  KEntry group_synth(const Expression &e, int degree) const;
  GroupHom map_synth(const MapRequest &r, int degree) const;

  /// K_degree action of a twist automorphism (identity for empty label).
  GroupHom phi_action(const Expression &e, const std::string &twist, int degree) const;

private:
  struct Decomposition; // synthesized direct-sum structure

  KEntry group_impl(const Expression &e, int degree, bool tower_view) const;
  GroupHom map_impl(const MapRequest &r, int degree, bool tower_view) const;
  Decomposition decompose(const Expression &e, int degree, bool tower_view) const;
  KEntry group_v(const Expression &e, int degree, bool tower_view) const;
  GroupHom map_v(const MapRequest &r, int degree, bool tower_view) const;

  struct Caches {
    std::mutex mu;
    std::map<std::string, KEntry> groups;
    std::map<std::string, GroupHom> maps;
  };

  SourceMode mode_;
  std::vector<std::shared_ptr<const SourceBackend>> backends_;
  std::shared_ptr<Caches> caches_ = std::make_shared<Caches>();
};

/// Engine-computed values for ring-selector expressions.
class EngineBackend : public SourceBackend {
public:
  std::optional<FgAbGroup> raw_group(const Expression &e, int degree) const override;
  std::optional<GroupHom> raw_map(const MapRequest &r, int degree) const override;
  std::optional<GroupHom> raw_phi_action(const Expression &e, const std::string &twist, int degree) const override;
  Provenance provenance() const override { return Provenance::Independent; }
};

} // namespace kwb
