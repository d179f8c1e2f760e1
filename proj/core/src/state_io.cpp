#include "stabscope/state_io.hpp"

#include "stabscope/classifier.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <vector>

namespace stabscope {

ParseError::ParseError(const std::string& message, int line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

DimensionGuardError::DimensionGuardError(int n, int limit)
    : std::runtime_error("state has " + std::to_string(n) + " qubits; the dense limit is " + std::to_string(limit)),
      n_(n) {}

namespace {

struct Term {
  std::string bits;
  cplx value;
  int line;
};

int line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

// Line of the k-th (zero-based) occurrence of `needle`, 0 if absent.
int line_of_occurrence(const std::string& text, const std::string& needle, std::size_t k) {
  std::size_t pos = 0;
  for (std::size_t seen = 0;; ++seen) {
    pos = text.find(needle, pos);
    if (pos == std::string::npos) return 0;
    if (seen == k) return line_of_offset(text, pos);
    pos += needle.size();
  }
}

void check_bits(const std::string& bits, int line) {
  if (bits.empty()) throw ParseError("empty basis index", line);
  for (char ch : bits) {
    if (ch != '0' && ch != '1') throw ParseError("basis index '" + bits + "' is not a bitstring", line);
  }
}

PureState assemble(int n, const std::vector<Term>& terms, int max_qubits) {
  if (n < 1) throw ParseError("qubit count must be at least 1", 0);
  if (n > max_qubits) throw DimensionGuardError(n, max_qubits);
  CVector amps = CVector::Zero(Eigen::Index{1} << n);
  std::map<std::string, int> seen;
  for (const Term& t : terms) {
    check_bits(t.bits, t.line);
    if (static_cast<int>(t.bits.size()) != n) {
      throw ParseError("basis index '" + t.bits + "' has " + std::to_string(t.bits.size()) + " digits, expected " +
                           std::to_string(n),
                       t.line);
    }
    if (!std::isfinite(t.value.real()) || !std::isfinite(t.value.imag())) {
      throw ParseError("non-finite amplitude for '" + t.bits + "'", t.line);
    }
    if (auto [it, fresh] = seen.emplace(t.bits, t.line); !fresh) {
      throw ParseError("basis index '" + t.bits + "' repeated (first on line " + std::to_string(it->second) + ")",
                       t.line);
    }
    amps(static_cast<Eigen::Index>(MultiIndex::from_string(t.bits).value())) = t.value;
  }
  if (amps.norm() == 0.0) throw ParseError("all amplitudes are zero", terms.empty() ? 0 : terms.back().line);
  return PureState(n, std::move(amps));
}

double json_number(const nlohmann::json& entry, const char* key, int line) {
  if (!entry.contains(key)) return 0.0;
  const auto& v = entry.at(key);
  if (!v.is_number()) throw ParseError(std::string("field '") + key + "' must be a number", line);
  return v.get<double>();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double to_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw ParseError("bad number '" + s + "' in " + what, 0);
  return v;
}

int to_int(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw ParseError("bad integer '" + s + "' in " + what, 0);
  return v;
}

std::string format_double(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

} // namespace

PureState parse_state_json(const std::string& text, int max_qubits) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0));
  }
  if (!doc.is_object()) throw ParseError("top level must be an object", 1);
  if (!doc.contains("n") || !doc.at("n").is_number_integer()) {
    throw ParseError("missing integer field 'n'", line_of_occurrence(text, "\"n\"", 0));
  }
  const int n = doc.at("n").get<int>();
  if (n > max_qubits) throw DimensionGuardError(n, max_qubits);
  if (!doc.contains("amplitudes") || !doc.at("amplitudes").is_array()) {
    throw ParseError("missing array field 'amplitudes'", line_of_occurrence(text, "\"amplitudes\"", 0));
  }
  std::vector<Term> terms;
  std::size_t k = 0;
  for (const auto& entry : doc.at("amplitudes")) {
    const int line = line_of_occurrence(text, "\"index\"", k);
    if (!entry.is_object() || !entry.contains("index") || !entry.at("index").is_string()) {
      throw ParseError("amplitude entry " + std::to_string(k) + " needs a string 'index'", line);
    }
    terms.push_back({entry.at("index").get<std::string>(),
                     {json_number(entry, "re", line), json_number(entry, "im", line)}, line});
    ++k;
  }
  return assemble(n, terms, max_qubits);
}

PureState parse_state_text(const std::string& text, int max_qubits) {
  std::vector<Term> terms;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  int n = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string body = raw.substr(0, raw.find('#'));
    std::istringstream fields(body);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() < 2 || tok.size() > 3) {
      throw ParseError("expected 'bitstring re [im]', got " + std::to_string(tok.size()) + " fields", line);
    }
    check_bits(tok[0], line);
    const int width = static_cast<int>(tok[0].size());
    if (width > max_qubits) throw DimensionGuardError(width, max_qubits);
    if (n == 0) n = width;
    double re = 0.0;
    double im = 0.0;
    try {
      re = to_double(tok[1], "real part");
      if (tok.size() == 3) im = to_double(tok[2], "imaginary part");
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line);
    }
    terms.push_back({tok[0], {re, im}, line});
  }
  if (terms.empty()) throw ParseError("no amplitude lines", 0);
  return assemble(n, terms, max_qubits);
}

PureState parse_state(const std::string& text, int max_qubits) {
  const auto first = std::find_if(text.begin(), text.end(), [](unsigned char ch) { return !std::isspace(ch); });
  if (first != text.end() && *first == '{') return parse_state_json(text, max_qubits);
  return parse_state_text(text, max_qubits);
}

PureState read_state_file(const std::string& path, int max_qubits) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state(buf.str(), max_qubits);
}

PureState named_state(const std::string& name, int max_qubits) {
  const std::vector<std::string> parts = split(name, ':');
  const std::string& kind = parts.empty() ? name : parts[0];
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (parts.size() < lo || parts.size() > hi) throw ParseError("wrong field count in state name '" + name + "'", 0);
  };
  auto qubits = [&](const std::string& s) {
    const int n = to_int(s, "state name '" + name + "'");
    if (n < 1) throw ParseError("qubit count must be positive in '" + name + "'", 0);
    if (n > max_qubits) throw DimensionGuardError(n, max_qubits);
    return n;
  };
  if (kind == "ghz") {
    arity(2, 3);
    const int n = qubits(parts[1]);
    if (parts.size() == 2) return ghz_state(n, 1.0, 1.0);
    const double alpha = to_double(parts[2], "state name '" + name + "'");
    if (alpha <= 0.0 || alpha >= 1.0) throw ParseError("ghz alpha must lie in (0, 1)", 0);
    return ghz_state(n, alpha, std::sqrt(1.0 - alpha * alpha));
  }
  if (kind == "w") {
    arity(2, 2);
    return w_state(qubits(parts[1]));
  }
  if (kind == "canon4") {
    arity(4, 4);
    const double a = to_double(parts[1], "state name '" + name + "'");
    const cplx b{to_double(parts[2], "state name '" + name + "'"), to_double(parts[3], "state name '" + name + "'")};
    if (a == 0.0 && b == cplx{0.0, 0.0}) throw ParseError("canon4 needs a nonzero coefficient", 0);
    return canonical_4q_state(a, b, -a - b);
  }
  if (kind == "singlets") {
    arity(1, 1);
    return singlet_pair_product();
  }
  if (kind == "basis") {
    arity(2, 2);
    check_bits(parts[1], 0);
    if (static_cast<int>(parts[1].size()) > max_qubits) {
      throw DimensionGuardError(static_cast<int>(parts[1].size()), max_qubits);
    }
    return PureState::basis(parts[1]);
  }
  throw ParseError("unknown state name '" + name + "'", 0);
}

std::string write_state_json(const PureState& psi, double drop) {
  nlohmann::json doc;
  doc["n"] = psi.qubits();
  doc["amplitudes"] = nlohmann::json::array();
  for (Eigen::Index i = 0; i < psi.dimension(); ++i) {
    const cplx v = psi.amplitudes()(i);
    if (std::abs(v) <= drop || v == cplx{0.0, 0.0}) continue;
    doc["amplitudes"].push_back({{"index", MultiIndex(psi.qubits(), static_cast<std::uint64_t>(i)).str()},
                                 {"re", v.real()},
                                 {"im", v.imag()}});
  }
  return doc.dump(2) + "\n";
}

std::string write_state_text(const PureState& psi, double drop) {
  std::ostringstream os;
  for (Eigen::Index i = 0; i < psi.dimension(); ++i) {
    const cplx v = psi.amplitudes()(i);
    if (std::abs(v) <= drop || v == cplx{0.0, 0.0}) continue;
    os << MultiIndex(psi.qubits(), static_cast<std::uint64_t>(i)).str() << ' ' << format_double(v.real()) << ' '
       << format_double(v.imag()) << '\n';
  }
  return os.str();
}

} // namespace stabscope
