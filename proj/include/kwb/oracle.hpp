#pragma once

#include "kwb/source.hpp"

#include <stdexcept>

namespace kwb {

struct OracleError : std::runtime_error {
  OracleError(const std::string &msg, std::string location = "")
      : std::runtime_error(location.empty() ? msg : (msg + " [at " + location + "]")), where(std::move(location)) {}
  std::string where;
};

struct OracleObject {
  std::string name;
  Expression expr; // base = root object name
};

struct OracleMapEntry {
  std::string kind; // i_plus, i_minus, j_plus, j_minus, ev0_plus, ev0_minus, phi_inverse, rho
  std::string object;
  std::string var;
  std::string twist;
  int degree = 0;
  ZMat matrix;
};

/// Parsed and validated oracle file: user-supplied K-group tables with
/// structure maps in declared canonical generators.
struct OracleData {
  std::string schema_version;
  SourceMode mode = SourceMode::Oracle;
  std::string description;
  std::vector<OracleObject> objects;
  int lo = 0, hi = 0;
  std::map<std::string, FgAbGroup> groups; // key: expr key + "@" + degree
  std::vector<OracleMapEntry> maps;
  // optional nil tables: K_i(Nil) and the shifted NK group per (object, degree)
  struct NilEntry {
    std::string object;
    int degree = 0;
    FgAbGroup k_nil;
    FgAbGroup nk_shift;
  };
  std::vector<NilEntry> nil;
};

/// Parse + full validation; failures are fatal with location diagnostics.
OracleData oracle_load(const std::string &path);
OracleData oracle_parse(const std::string &json_text);

/// Serialize a served slice: the expressions, their three extensions by a
/// fresh variable, groups in canonical form and maps in canonical
/// coordinates. The result reloads to an identical source.
std::string oracle_export_text(const KSource &src, const std::vector<Expression> &bases, int lo, int hi);
void oracle_export(const KSource &src, const std::vector<Expression> &bases, int lo, int hi,
                   const std::string &path);

class OracleBackend : public SourceBackend {
public:
  explicit OracleBackend(OracleData data);
  std::optional<FgAbGroup> raw_group(const Expression &e, int degree) const override;
  std::optional<GroupHom> raw_map(const MapRequest &r, int degree) const override;
  std::optional<GroupHom> raw_phi_action(const Expression &e, const std::string &twist, int degree) const override;
  Provenance provenance() const override { return Provenance::Oracle; }
  const OracleData &data() const { return data_; }

private:
  OracleData data_;
  std::map<std::string, FgAbGroup> by_key_;
};

/// KSource backed by one oracle file (mode from the file unless overridden).
KSource oracle_source(const OracleData &data, std::optional<SourceMode> mode_override = std::nullopt);

/// Oracle data layered over the engine; backend order is oracle first.
KSource overlay_source(const OracleData &data, SourceMode mode);

} // namespace kwb
