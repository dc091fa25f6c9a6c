#include "kwb/oracle.hpp"
#include "kwb/report.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>

using namespace kwb;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

struct CommonOpts {
  std::string ring;
  std::string oracle;
  std::string mode;
  std::string format = "text";
};

std::string resolve_oracle_path(const std::string &name) {
  namespace fs = std::filesystem;
  if (fs::exists(name)) return name;
  if (const char *env = std::getenv("KWB_FIXTURES")) {
    fs::path p = fs::path(env) / name;
    if (fs::exists(p)) return p.string();
  }
  fs::path p = fs::path("fixtures") / name;
  if (fs::exists(p)) return p.string();
  return name; // let the loader report the error
}

std::optional<SourceMode> parse_mode(const std::string &m) {
  if (m.empty()) return std::nullopt;
  if (m == "independent") return SourceMode::Independent;
  if (m == "bhs-extended") return SourceMode::BhsExtended;
  if (m == "oracle") return SourceMode::Oracle;
  throw std::invalid_argument("--mode must be independent | bhs-extended | oracle");
}

struct Resolved {
  KSource source;
  Expression base;
};

Resolved resolve_source(const CommonOpts &o, SourceMode default_engine_mode) {
  auto mode = parse_mode(o.mode);
  if (!o.oracle.empty()) {
    OracleData data = oracle_load(resolve_oracle_path(o.oracle));
    KSource src = oracle_source(data, mode);
    // base: --ring doubles as the object selector; otherwise the unique root
    std::string base_name = o.ring;
    if (base_name.empty()) {
      std::vector<std::string> roots;
      for (const auto &obj : data.objects)
        if (obj.expr.chain.empty()) roots.push_back(obj.name);
      if (roots.size() != 1)
        throw OracleError("the oracle file has " + std::to_string(roots.size()) +
                          " root objects; select one with --ring");
      base_name = roots.front();
    }
    auto base = parse_expression(base_name);
    if (!base) throw OracleError("malformed selector '" + base_name + "'");
    return {std::move(src), *base};
  }
  if (o.ring.empty()) throw std::invalid_argument("need --ring or --oracle");
  auto base = parse_expression(o.ring);
  if (!base || !parse_base_ring(base->base))
    throw std::invalid_argument("malformed ring selector '" + o.ring + "'");
  return {KSource::engine(mode.value_or(default_engine_mode)), *base};
}

int emit(const ReportJson &j, const CommonOpts &o, bool pass) {
  if (o.format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << render_text(j);
  return pass ? kExitPass : kExitFail;
}

void parse_window(const std::string &w, int &lo, int &hi) {
  std::size_t dd = w.find("..");
  if (dd == std::string::npos) throw std::invalid_argument("--window must look like lo..hi");
  lo = std::stoi(w.substr(0, dd));
  hi = std::stoi(w.substr(dd + 2));
  if (lo > hi) throw std::invalid_argument("--window must be increasing");
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Bass delooping workbench: K-groups of Laurent extensions, NK groups, "
               "fundamental sequences, delooping towers and homotopy K-theory"};
  app.require_subcommand(1);

  CommonOpts o;
  int degree = 1;
  int depth = 3;
  int bound = 8;
  int cval = 0;
  std::string window;
  std::string twist;

  auto add_common = [&](CLI::App *cmd) {
    cmd->add_option("--ring", o.ring, "ring selector: Z | F<q> | Zmod<n> with optional [t] suffixes");
    cmd->add_option("--oracle", o.oracle, "oracle JSON file (KWB_FIXTURES is searched)");
    cmd->add_option("--mode", o.mode, "independent | bhs-extended | oracle");
    cmd->add_option("--format", o.format, "text | json")->check(CLI::IsMember({"text", "json"}));
  };

  CLI::App *negk = app.add_subcommand("negk", "negative K-groups by the iterated Bass cokernel");
  add_common(negk);
  negk->add_option("--depth", depth, "compute K_{-1} .. K_{-depth}");

  CLI::App *nk = app.add_subcommand("nk", "NK groups (kernels of evaluation at zero) with splittings");
  add_common(nk);
  nk->add_option("--degree", degree, "degree i");

  CLI::App *bhs = app.add_subcommand("bhs-check", "Bass-Heller-Swan isomorphism check at one degree");
  add_common(bhs);
  bhs->add_option("--degree", degree, "degree i");

  CLI::App *contract = app.add_subcommand("contract-check", "retraction + BHS isomorphism report over a window");
  add_common(contract);
  contract->add_option("--c", cval, "contraction level");
  contract->add_option("--window", window, "degree window lo..hi");

  CLI::App *kh = app.add_subcommand("kh", "homotopy K-theory by polynomial stabilization");
  add_common(kh);
  kh->add_option("--degree", degree, "degree i");
  kh->add_option("--bound", bound, "stabilization bound");

  CLI::App *report = app.add_subcommand("report", "full per-instance report");
  add_common(report);
  report->add_option("--window", window, "degree window lo..hi");
  report->add_option("--depth", depth, "negative-K depth");
  report->add_option("--twist", twist, "twist label (oracle data)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (negk->parsed()) {
      Resolved r = resolve_source(o, SourceMode::BhsExtended);
      NegativeKResult res = negative_k(r.source, r.base, depth);
      ReportJson j = ReportJson::object();
      j["command"] = "negk";
      j["instance"] = r.base.key();
      j["mode"] = source_mode_name(r.source.mode());
      j["result"] = json_negk(res);
      return emit(j, o, res.complete);
    }
    if (nk->parsed()) {
      Resolved r = resolve_source(o, SourceMode::Independent);
      StructuredKInstance inst = assemble_instance(r.source, r.base, degree, degree);
      if (!inst.valid()) {
        std::cerr << "instance identities fail: " << inst.validation << "\n";
        return kExitFail;
      }
      NkResult plus = kwb::nk(inst, degree, true);
      NkResult minus = kwb::nk(inst, degree, false);
      ReportJson j = ReportJson::object();
      j["command"] = "nk";
      j["instance"] = r.base.key();
      j["mode"] = source_mode_name(r.source.mode());
      j["nk_plus"] = json_nk(plus, degree, true);
      j["nk_minus"] = json_nk(minus, degree, false);
      bool pass = plus.splitting_iso && minus.splitting_iso;
      j["pass"] = pass;
      return emit(j, o, pass);
    }
    if (bhs->parsed()) {
      Resolved r = resolve_source(o, SourceMode::Independent);
      StructuredKInstance inst = assemble_instance(r.source, r.base, degree, degree);
      if (!inst.valid()) {
        std::cerr << "instance identities fail: " << inst.validation << "\n";
        return kExitFail;
      }
      BhsCheckResult res = bhs_check(r.source, inst, degree);
      ReportJson j = ReportJson::object();
      j["command"] = "bhs-check";
      j["instance"] = r.base.key();
      j["mode"] = source_mode_name(r.source.mode());
      j["result"] = json_bhs(res, degree);
      return emit(j, o, res.is_iso);
    }
    if (contract->parsed()) {
      Resolved r = resolve_source(o, SourceMode::Independent);
      int lo = 0, hi = 1;
      if (!window.empty()) parse_window(window, lo, hi);
      StructuredKInstance inst = assemble_instance(r.source, r.base, lo, hi);
      if (!inst.valid()) {
        std::cerr << "instance identities fail: " << inst.validation << "\n";
        return kExitFail;
      }
      ContractednessReport res = contracted_check(r.source, inst, cval);
      ReportJson j = ReportJson::object();
      j["command"] = "contract-check";
      j["instance"] = r.base.key();
      j["mode"] = source_mode_name(r.source.mode());
      j["result"] = json_contracted(res);
      return emit(j, o, res.pass);
    }
    if (kh->parsed()) {
      Resolved r = resolve_source(o, SourceMode::BhsExtended);
      KhResult res = kh_groups(r.source, r.base, degree, bound);
      ReportJson j = ReportJson::object();
      j["command"] = "kh";
      j["instance"] = r.base.key();
      j["mode"] = source_mode_name(r.source.mode());
      j["result"] = json_kh(res, degree);
      bool pass = res.stable && res.ev_mutually_inverse && res.nk_vanishes;
      return emit(j, o, pass);
    }
    if (report->parsed()) {
      Resolved r = resolve_source(o, SourceMode::BhsExtended);
      int lo = 0, hi = 1;
      if (!window.empty()) parse_window(window, lo, hi);
      StructuredKInstance inst = assemble_instance(r.source, r.base, lo, hi, twist);
      ReportJson j = ReportJson::object();
      j["command"] = "report";
      j["instance"] = r.base.key();
      j["mode"] = source_mode_name(r.source.mode());
      j["data"] = json_instance(inst);
      bool pass = inst.valid();
      if (pass) {
        ReportJson seqs = ReportJson::array();
        for (int i = lo; i <= hi; ++i) {
          FundamentalSequenceResult s = fundamental_sequence(r.source, inst, i);
          pass = pass && s.pass;
          seqs.push_back(json_fundamental(s));
        }
        j["fundamental_sequences"] = seqs;
        ContractednessReport cc = contracted_check(r.source, inst, cval);
        j["contracted"] = json_contracted(cc);
        pass = pass && cc.pass;
        NegativeKResult neg = negative_k(r.source, r.base, depth);
        j["negative_k"] = json_negk(neg);
        TowerResult tower = shadow_tower(r.source, r.base, lo - 1, hi, 3);
        j["tower"] = json_tower(tower);
      }
      j["pass"] = pass;
      return emit(j, o, pass);
    }
  } catch (const OracleError &e) {
    std::cerr << "oracle error: " << e.what() << "\n";
    return kExitInput;
  } catch (const SourceGap &e) {
    std::cerr << "source gap: " << e.what() << "\n";
    return kExitFail;
  } catch (const EngineError &e) {
    std::cerr << "engine error: " << e.what() << "\n";
    return kExitInput;
  } catch (const CLI::Error &e) {
    return app.exit(e);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
