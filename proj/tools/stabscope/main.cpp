// stabscope {analyze|classify|orbit|equiv|invariants|selftest}
//
// Exit codes: 0 ok/equivalent, 1 fail/inequivalent, 2 parse error,
// 3 dimension guard, 4 unknown.

#include "stabscope/analysis.hpp"
#include "stabscope/classifier.hpp"
#include "stabscope/equivalence.hpp"
#include "stabscope/invariants.hpp"
#include "stabscope/parallel.hpp"
#include "stabscope/report_json.hpp"
#include "stabscope/selftest.hpp"
#include "stabscope/state_io.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace ss = stabscope;

namespace {

enum Exit : int { kOk = 0, kFail = 1, kParse = 2, kGuard = 3, kUnknown = 4 };

struct RunConfig {
  std::string command;
  std::vector<std::string> files;
  std::vector<std::string> states;
  std::uint64_t seed = 0;
  double tol_null = ss::kNullTol;
  double tol_equiv = ss::kEquivTol;
  int restarts = 20;
  int samples = 100;
  std::string format = "json";
  unsigned workers = 0;
};

struct Input {
  std::string label;
  ss::PureState state;
};

std::vector<Input> load_inputs(const RunConfig& cfg) {
  std::vector<Input> out;
  for (const auto& f : cfg.files) {
    try {
      out.push_back({f, ss::read_state_file(f)});
    } catch (const ss::ParseError& e) {
      throw ss::ParseError(f + ": " + e.what(), e.line());
    }
  }
  for (const auto& s : cfg.states) out.push_back({s, ss::named_state(s)});
  return out;
}

std::string fixed(double x, int digits = 10) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

std::string list(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s + "]";
}

std::string blocks(const ss::ProductStructure& p) {
  if (!p.is_product()) return "nonproduct";
  std::string s;
  for (const auto& b : p.blocks) s += list(b);
  return s;
}

void emit(const RunConfig& cfg, const std::vector<ss::Json>& docs, const std::vector<std::string>& texts) {
  if (cfg.format == "json") {
    std::cout << (docs.size() == 1 ? docs.front() : ss::Json(docs)).dump(2) << '\n';
  } else {
    for (std::size_t k = 0; k < texts.size(); ++k) std::cout << (k ? "\n" : "") << texts[k];
  }
}

std::string text_of(const std::string& label, const ss::AnalysisReport& r) {
  std::ostringstream os;
  os << "state: " << label << "\n"
     << "n: " << r.n << "\n"
     << "product_structure: " << blocks(r.product_structure) << "\n"
     << "stab_dim: " << r.stab_dim << "\n"
     << "proj_dims: " << list(r.proj_dims) << "\n"
     << "algebra_type: " << ss::to_string(r.algebra_type) << "\n"
     << "gap: " << fixed(r.gap, 4) << (r.ill_conditioned ? " (ill-conditioned)" : "") << "\n";
  if (r.stab_dim_density) {
    os << "stab_dim_density: " << *r.stab_dim_density << "\n"
       << "proj_dims_density: " << list(*r.proj_dims_density) << "\n"
       << "projection_angle: " << fixed(*r.projection_angle, 3) << "\n";
  }
  return os.str();
}

std::string text_of(const std::string& label, const ss::ClassificationReport& r) {
  std::ostringstream os;
  os << "state: " << label << "\n"
     << "verdict: " << ss::to_string(r.verdict) << "\n"
     << "n: " << r.n << "\n"
     << "product_structure: " << blocks(r.product_structure) << "\n"
     << "stab_dim: " << r.stab_dim << "\n"
     << "proj_dims: " << list(r.proj_dims) << "\n"
     << "algebra_type: " << ss::to_string(r.algebra_type) << "\n";
  if (r.alpha) os << "alpha: " << fixed(*r.alpha) << "\nbeta: " << fixed(*r.beta) << "\n";
  if (r.a) {
    os << "a: " << fixed(*r.a) << "\n"
       << "b: " << fixed(r.b->real()) << " " << fixed(r.b->imag()) << "i\n"
       << "c: " << fixed(r.c->real()) << " " << fixed(r.c->imag()) << "i\n"
       << "ambiguous: " << (*r.ambiguous ? "true" : "false") << "\n"
       << "resolution: " << ss::to_string(*r.resolution) << "\n";
  }
  if (r.residual) os << "residual: " << fixed(*r.residual, 3) << "\n";
  if (!r.note.empty()) os << "note: " << r.note << "\n";
  return os.str();
}

std::string text_of(const std::string& label, const ss::InvariantFingerprint& f) {
  std::ostringstream os;
  os << "state: " << label << "\n";
  for (const auto& [k, v] : f.purities) os << "purity " << k << ": " << fixed(v, 12) << "\n";
  if (f.pair) {
    os << "I1: " << fixed(f.pair->i1, 12) << "\nI2: " << fixed(f.pair->i2, 12) << "\nI3: " << fixed(f.pair->i3, 12)
       << "\n";
  }
  for (const auto& [k, v] : f.poly) os << "P " << k << ": " << fixed(v.real(), 12) << " " << fixed(v.imag(), 12) << "i\n";
  return os.str();
}

int cmd_analyze(const RunConfig& cfg, const std::vector<Input>& in) {
  std::vector<ss::AnalysisReport> reps(in.size());
  ss::parallel_for(in.size(), cfg.workers, [&](std::size_t i) { reps[i] = ss::analyze(in[i].state, cfg.tol_null); });
  std::vector<ss::Json> docs;
  std::vector<std::string> texts;
  for (std::size_t i = 0; i < in.size(); ++i) {
    docs.push_back(ss::encode(reps[i]));
    texts.push_back(text_of(in[i].label, reps[i]));
  }
  emit(cfg, docs, texts);
  return kOk;
}

int cmd_classify(const RunConfig& cfg, const std::vector<Input>& in) {
  ss::ClassifyOptions opt;
  opt.tol_null = cfg.tol_null;
  opt.equiv.tol_null = cfg.tol_null;
  opt.equiv.tol_equiv = cfg.tol_equiv;
  opt.equiv.restarts = cfg.restarts;
  opt.equiv.seed = cfg.seed;
  std::vector<ss::ClassificationReport> reps(in.size());
  ss::parallel_for(in.size(), cfg.workers, [&](std::size_t i) { reps[i] = ss::classify(in[i].state, opt); });
  std::vector<ss::Json> docs;
  std::vector<std::string> texts;
  for (std::size_t i = 0; i < in.size(); ++i) {
    docs.push_back(ss::encode(reps[i]));
    texts.push_back(text_of(in[i].label, reps[i]));
  }
  emit(cfg, docs, texts);
  return kOk;
}

int cmd_invariants(const RunConfig& cfg, const std::vector<Input>& in) {
  std::vector<ss::Json> docs;
  std::vector<std::string> texts;
  for (const auto& x : in) {
    const ss::InvariantFingerprint f = ss::fingerprint(x.state);
    docs.push_back(ss::encode(f));
    texts.push_back(text_of(x.label, f));
  }
  emit(cfg, docs, texts);
  return kOk;
}

int cmd_orbit(const RunConfig& cfg, const std::vector<Input>& in) {
  bool consistent = true;
  std::vector<ss::Json> docs;
  std::vector<std::string> texts;
  for (const auto& x : in) {
    const ss::OrbitReport r = ss::orbit(x.state, cfg.samples, cfg.seed, cfg.tol_null, cfg.workers);
    consistent = consistent && r.consistent;
    docs.push_back(ss::encode(r));
    std::ostringstream os;
    os << "state: " << x.label << "\n"
       << "sample stab_dim proj_dims drift\n";
    for (const auto& row : r.rows) {
      os << row.sample << " " << row.stab_dim << " " << list(row.proj_dims) << " " << fixed(row.drift, 3) << "\n";
    }
    os << "consistent: " << (r.consistent ? "true" : "false") << "\nmax_drift: " << fixed(r.max_drift, 3) << "\n";
    texts.push_back(os.str());
  }
  emit(cfg, docs, texts);
  return consistent ? kOk : kFail;
}

int cmd_equiv(const RunConfig& cfg, const std::vector<Input>& in) {
  if (in.size() != 2) throw CLI::ValidationError("equiv needs exactly two states, got " + std::to_string(in.size()));
  ss::EquivOptions opt;
  opt.tol_null = cfg.tol_null;
  opt.tol_equiv = cfg.tol_equiv;
  opt.restarts = cfg.restarts;
  opt.seed = cfg.seed;
  const ss::EquivVerdict v = ss::decide_equivalence(in[0].state, in[1].state, opt);
  std::ostringstream os;
  os << "status: " << ss::to_string(v.status) << "\n";
  if (v.separator) {
    os << "separator: " << v.separator->name << " (" << v.separator->lhs << " vs " << v.separator->rhs << ")\n";
  }
  if (v.best_infidelity) os << "best_infidelity: " << fixed(*v.best_infidelity, 3) << "\n";
  os << "restarts_used: " << v.restarts_used << "\n";
  emit(cfg, {ss::encode(v)}, {os.str()});
  switch (v.status) {
  case ss::EquivStatus::equivalent: return kOk;
  case ss::EquivStatus::inequivalent: return kFail;
  case ss::EquivStatus::unknown: return kUnknown;
  }
  return kUnknown;
}

int cmd_selftest(const RunConfig& cfg) {
  ss::SelftestOptions opt;
  opt.seed = cfg.seed;
  opt.tol_null = cfg.tol_null;
  opt.tol_equiv = cfg.tol_equiv;
  opt.workers = cfg.workers;
  const ss::SelftestReport r = ss::run_selftest(opt);
  std::ostringstream os;
  for (const auto& c : r.criteria) {
    os << (c.pass ? "PASS" : "FAIL") << " [" << std::setw(2) << c.id << "] " << c.name << ": " << c.detail << " ("
       << std::fixed << std::setprecision(2) << c.seconds << " s)\n";
    os.unsetf(std::ios::fixed);
  }
  os << (r.pass() ? "all criteria passed" : "some criteria failed") << "\n";
  emit(cfg, {ss::encode(r)}, {os.str()});
  return r.pass() ? kOk : kFail;
}

} // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Local-unitary stabilizer analysis of multi-qubit states"};
  app.add_option("command", cfg.command, "analyze | classify | orbit | equiv | invariants | selftest")
      ->required()
      ->check(CLI::IsMember({"analyze", "classify", "orbit", "equiv", "invariants", "selftest"}));
  app.add_option("files", cfg.files, "State files (JSON or text)");
  app.add_option("--state", cfg.states, "Built-in state: ghz:n[:alpha], w:n, canon4:a:b_re:b_im, singlets, basis:bits");
  app.add_option("--seed", cfg.seed, "Root seed for every random draw");
  app.add_option("--tol-null", cfg.tol_null, "Relative null-space cut")->check(CLI::PositiveNumber);
  app.add_option("--tol-equiv", cfg.tol_equiv, "Infidelity accepted as equivalent")->check(CLI::PositiveNumber);
  app.add_option("--restarts", cfg.restarts, "Optimizer restarts")->check(CLI::PositiveNumber);
  app.add_option("--samples", cfg.samples, "Orbit samples")->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--workers", cfg.workers, "Worker threads (0 = hardware concurrency)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }
  if (cfg.workers == 0) cfg.workers = ss::default_workers();

  try {
    if (cfg.command == "selftest") return cmd_selftest(cfg);
    const std::vector<Input> in = load_inputs(cfg);
    if (in.empty()) throw CLI::ValidationError("no input states; pass files or --state");
    if (cfg.command == "analyze") return cmd_analyze(cfg, in);
    if (cfg.command == "classify") return cmd_classify(cfg, in);
    if (cfg.command == "orbit") return cmd_orbit(cfg, in);
    if (cfg.command == "equiv") return cmd_equiv(cfg, in);
    return cmd_invariants(cfg, in);
  } catch (const ss::DimensionGuardError& e) {
    std::cerr << "stabscope: " << e.what() << "\n";
    return kGuard;
  } catch (const ss::ParseError& e) {
    std::cerr << "stabscope: parse error: " << e.what() << "\n";
    return kParse;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "stabscope: " << e.what() << "\n";
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "stabscope: error: " << e.what() << "\n";
    return kUnknown;
  }
}
