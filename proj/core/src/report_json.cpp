#include "stabscope/report_json.hpp"

#include <cmath>
#include <limits>

namespace stabscope {

namespace {

Json num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double get_num(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw std::invalid_argument("expected a number, got '" + s + "'");
  }
  return j.get<double>();
}

Json complex_json(cplx z) { return {{"re", num(z.real())}, {"im", num(z.imag())}}; }
cplx get_complex(const Json& j) { return {get_num(j.at("re")), get_num(j.at("im"))}; }

Json num_array(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(num(x));
  return out;
}

std::vector<double> get_num_array(const Json& j) {
  std::vector<double> out;
  for (const auto& x : j) out.push_back(get_num(x));
  return out;
}

template <class T>
std::optional<T> opt(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  if constexpr (std::is_same_v<T, double>) {
    return get_num(j.at(key));
  } else {
    return j.at(key).get<T>();
  }
}

AlgebraKind algebra_from_string(const std::string& s) {
  for (auto k : {AlgebraKind::abelian, AlgebraKind::su2, AlgebraKind::other}) {
    if (to_string(k) == s) return k;
  }
  throw std::invalid_argument("unknown algebra type '" + s + "'");
}

} // namespace

// ---------------------------------------------------------------------------

Json encode(const LocalUnitary& g) {
  Json factors = Json::array();
  for (const Mat2& f : g.factors()) {
    Json m = Json::array();
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) m.push_back({num(f(r, c).real()), num(f(r, c).imag())});
    }
    factors.push_back(std::move(m));
  }
  return {{"n", g.qubits()}, {"global_phase", complex_json(g.global_phase())}, {"factors", std::move(factors)}};
}

LocalUnitary decode_local_unitary(const Json& j) {
  std::vector<Mat2> factors;
  for (const auto& m : j.at("factors")) {
    if (m.size() != 4) throw std::invalid_argument("local unitary factor needs 4 entries");
    Mat2 f;
    for (int k = 0; k < 4; ++k) {
      const auto idx = static_cast<std::size_t>(k);
      f(k / 2, k % 2) = {get_num(m.at(idx).at(0)), get_num(m.at(idx).at(1))};
    }
    factors.push_back(f);
  }
  if (static_cast<int>(factors.size()) != j.at("n").get<int>()) {
    throw std::invalid_argument("local unitary factor count disagrees with n");
  }
  return LocalUnitary(std::move(factors), get_complex(j.at("global_phase")));
}

Json encode(const ProductStructure& p) { return {{"product", p.is_product()}, {"blocks", p.blocks}}; }

ProductStructure decode_product_structure(const Json& j) {
  ProductStructure p;
  p.blocks = j.at("blocks").get<std::vector<std::vector<int>>>();
  return p;
}

Json encode(const AnalysisReport& r) {
  Json j{{"n", r.n},
         {"product_structure", encode(r.product_structure)},
         {"stab_dim", r.stab_dim},
         {"proj_dims", r.proj_dims},
         {"algebra_type", to_string(r.algebra_type)},
         {"gap", num(r.gap)},
         {"ill_conditioned", r.ill_conditioned},
         {"singular_values", num_array(r.singular_values)}};
  if (r.stab_dim_density) j["stab_dim_density"] = *r.stab_dim_density;
  if (r.proj_dims_density) j["proj_dims_density"] = *r.proj_dims_density;
  if (r.projection_angle) j["projection_angle"] = num(*r.projection_angle);
  return j;
}

AnalysisReport decode_analysis(const Json& j) {
  AnalysisReport r;
  r.n = j.at("n").get<int>();
  r.product_structure = decode_product_structure(j.at("product_structure"));
  r.stab_dim = j.at("stab_dim").get<int>();
  r.proj_dims = j.at("proj_dims").get<std::vector<int>>();
  r.algebra_type = algebra_from_string(j.at("algebra_type").get<std::string>());
  r.gap = get_num(j.at("gap"));
  r.ill_conditioned = j.at("ill_conditioned").get<bool>();
  r.singular_values = get_num_array(j.at("singular_values"));
  r.stab_dim_density = opt<int>(j, "stab_dim_density");
  r.proj_dims_density = opt<std::vector<int>>(j, "proj_dims_density");
  r.projection_angle = opt<double>(j, "projection_angle");
  return r;
}

Json encode(const InvariantFingerprint& f) {
  Json purities = Json::object();
  for (const auto& [k, v] : f.purities) purities[k] = num(v);
  Json poly = Json::object();
  for (const auto& [k, v] : f.poly) poly[k] = complex_json(v);
  Json j{{"n", f.n}, {"purities", std::move(purities)}, {"poly", std::move(poly)}};
  if (f.pair) j["pair"] = {{"I1", num(f.pair->i1)}, {"I2", num(f.pair->i2)}, {"I3", num(f.pair->i3)}};
  return j;
}

InvariantFingerprint decode_fingerprint(const Json& j) {
  InvariantFingerprint f;
  f.n = j.at("n").get<int>();
  for (const auto& [k, v] : j.at("purities").items()) f.purities[k] = get_num(v);
  for (const auto& [k, v] : j.at("poly").items()) f.poly[k] = get_complex(v);
  if (j.contains("pair")) {
    const Json& p = j.at("pair");
    f.pair = PairInvariants{get_num(p.at("I1")), get_num(p.at("I2")), get_num(p.at("I3"))};
  }
  return f;
}

Json encode(const EquivVerdict& v) {
  Json j{{"status", to_string(v.status)}, {"restarts_used", v.restarts_used}};
  if (v.witness) j["witness"] = encode(*v.witness);
  if (v.separator) {
    j["separator"] = {{"name", v.separator->name},
                      {"lhs", v.separator->lhs},
                      {"rhs", v.separator->rhs},
                      {"difference", num(v.separator->difference)}};
  }
  j["best_infidelity"] = v.best_infidelity ? num(*v.best_infidelity) : Json(nullptr);
  return j;
}

EquivVerdict decode_equiv_verdict(const Json& j) {
  EquivVerdict v;
  v.status = equiv_status_from_string(j.at("status").get<std::string>());
  v.restarts_used = j.at("restarts_used").get<int>();
  if (j.contains("witness")) v.witness = decode_local_unitary(j.at("witness"));
  if (j.contains("separator")) {
    const Json& s = j.at("separator");
    v.separator = Separator{s.at("name").get<std::string>(), s.at("lhs").get<std::string>(),
                            s.at("rhs").get<std::string>(), get_num(s.at("difference"))};
  }
  v.best_infidelity = opt<double>(j, "best_infidelity");
  return v;
}

Json encode(const ClassificationReport& r) {
  Json j{{"n", r.n},
         {"product_structure", encode(r.product_structure)},
         {"stab_dim", r.stab_dim},
         {"proj_dims", r.proj_dims},
         {"algebra_type", to_string(r.algebra_type)},
         {"ill_conditioned", r.ill_conditioned},
         {"gap", num(r.gap)},
         {"verdict", to_string(r.verdict)}};
  if (r.alpha) j["alpha"] = num(*r.alpha);
  if (r.beta) j["beta"] = num(*r.beta);
  if (r.a) j["a"] = num(*r.a);
  if (r.b) {
    j["b_re"] = num(r.b->real());
    j["b_im"] = num(r.b->imag());
  }
  if (r.c) {
    j["c_re"] = num(r.c->real());
    j["c_im"] = num(r.c->imag());
  }
  if (r.ambiguous) j["ambiguous"] = *r.ambiguous;
  if (r.resolution) j["resolution"] = to_string(*r.resolution);
  if (r.canonicalizer) j["canonicalizer"] = encode(*r.canonicalizer);
  if (r.residual) j["residual"] = num(*r.residual);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

ClassificationReport decode_classification(const Json& j) {
  ClassificationReport r;
  r.n = j.at("n").get<int>();
  r.product_structure = decode_product_structure(j.at("product_structure"));
  r.stab_dim = j.at("stab_dim").get<int>();
  r.proj_dims = j.at("proj_dims").get<std::vector<int>>();
  r.algebra_type = algebra_from_string(j.at("algebra_type").get<std::string>());
  r.ill_conditioned = j.at("ill_conditioned").get<bool>();
  r.gap = get_num(j.at("gap"));
  r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  r.alpha = opt<double>(j, "alpha");
  r.beta = opt<double>(j, "beta");
  r.a = opt<double>(j, "a");
  if (j.contains("b_re")) r.b = cplx{get_num(j.at("b_re")), get_num(j.at("b_im"))};
  if (j.contains("c_re")) r.c = cplx{get_num(j.at("c_re")), get_num(j.at("c_im"))};
  r.ambiguous = opt<bool>(j, "ambiguous");
  if (j.contains("resolution")) r.resolution = conjugation_resolution_from_string(j.at("resolution").get<std::string>());
  if (j.contains("canonicalizer")) r.canonicalizer = decode_local_unitary(j.at("canonicalizer"));
  r.residual = opt<double>(j, "residual");
  if (j.contains("note")) r.note = j.at("note").get<std::string>();
  return r;
}

Json encode(const OrbitReport& r) {
  Json rows = Json::array();
  for (const OrbitRow& row : r.rows) {
    rows.push_back({{"sample", row.sample},
                    {"stab_dim", row.stab_dim},
                    {"proj_dims", row.proj_dims},
                    {"ill_conditioned", row.ill_conditioned},
                    {"drift", num(row.drift)},
                    {"drift_component", row.drift_component}});
  }
  return {{"n", r.n},          {"stab_dim", r.stab_dim},         {"proj_dims", r.proj_dims},
          {"rows", std::move(rows)}, {"max_drift", num(r.max_drift)}, {"consistent", r.consistent}};
}

OrbitReport decode_orbit(const Json& j) {
  OrbitReport r;
  r.n = j.at("n").get<int>();
  r.stab_dim = j.at("stab_dim").get<int>();
  r.proj_dims = j.at("proj_dims").get<std::vector<int>>();
  for (const auto& row : j.at("rows")) {
    r.rows.push_back({row.at("sample").get<int>(), row.at("stab_dim").get<int>(),
                      row.at("proj_dims").get<std::vector<int>>(), row.at("ill_conditioned").get<bool>(),
                      get_num(row.at("drift")), row.at("drift_component").get<std::string>()});
  }
  r.max_drift = get_num(j.at("max_drift"));
  r.consistent = j.at("consistent").get<bool>();
  return r;
}

Json encode(const SelftestReport& r) {
  Json crit = Json::array();
  for (const CriterionResult& c : r.criteria) {
    crit.push_back({{"id", c.id}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}, {"seconds", num(c.seconds)}});
  }
  return {{"seed", r.seed}, {"pass", r.pass()}, {"total_seconds", num(r.total_seconds)}, {"criteria", std::move(crit)}};
}

} // namespace stabscope
