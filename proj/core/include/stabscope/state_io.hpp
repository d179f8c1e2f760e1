// State files and built-in named states.
//
// JSON:  {"n": 3, "amplitudes": [{"index": "000", "re": 0.7071, "im": 0.0}, ...]}
// Text:  one "bitstring re im" term per line, '#' starts a comment.
// Omitted indices are zero; unnormalized input is rescaled.

#pragma once

#include "stabscope/tensor.hpp"

#include <stdexcept>
#include <string>

namespace stabscope {

/// Malformed input. `line()` is one-based, 0 when no line applies.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& message, int line);
  int line() const { return line_; }

private:
  int line_;
};

/// Input declares more qubits than the dense representation allows.
class DimensionGuardError : public std::runtime_error {
public:
  DimensionGuardError(int n, int limit);
  int qubits() const { return n_; }

private:
  int n_;
};

PureState parse_state_json(const std::string& text, int max_qubits = kMaxDenseQubits);
PureState parse_state_text(const std::string& text, int max_qubits = kMaxDenseQubits);
/// JSON when the first non-blank character is '{', text otherwise.
PureState parse_state(const std::string& text, int max_qubits = kMaxDenseQubits);
PureState read_state_file(const std::string& path, int max_qubits = kMaxDenseQubits);

/// ghz:n[:alpha]  w:n  canon4:a:b_re:b_im  singlets  basis:bits
PureState named_state(const std::string& name, int max_qubits = kMaxDenseQubits);

/// Nonzero amplitudes only, magnitudes below `drop` skipped.
std::string write_state_json(const PureState& psi, double drop = 0.0);
std::string write_state_text(const PureState& psi, double drop = 0.0);

} // namespace stabscope
