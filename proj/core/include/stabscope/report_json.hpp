// JSON encoding of every report the CLI emits. decode_*(encode(x)) == x.
//
// Complex numbers are {"re": x, "im": y}; non-finite reals are the strings
// "inf", "-inf" and "nan".

#pragma once

#include "stabscope/analysis.hpp"
#include "stabscope/classifier.hpp"
#include "stabscope/equivalence.hpp"
#include "stabscope/invariants.hpp"
#include "stabscope/lie.hpp"
#include "stabscope/selftest.hpp"

#include <nlohmann/json.hpp>

namespace stabscope {

using Json = nlohmann::json;

Json encode(const LocalUnitary& g);
Json encode(const ProductStructure& p);
Json encode(const AnalysisReport& r);
Json encode(const InvariantFingerprint& f);
Json encode(const EquivVerdict& v);
Json encode(const ClassificationReport& r);
Json encode(const OrbitReport& r);
Json encode(const SelftestReport& r);

LocalUnitary decode_local_unitary(const Json& j);
ProductStructure decode_product_structure(const Json& j);
AnalysisReport decode_analysis(const Json& j);
InvariantFingerprint decode_fingerprint(const Json& j);
EquivVerdict decode_equiv_verdict(const Json& j);
ClassificationReport decode_classification(const Json& j);
OrbitReport decode_orbit(const Json& j);

} // namespace stabscope
