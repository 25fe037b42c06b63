#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "sylvester/bodies.hpp"
#include "sylvester/certificates.hpp"
#include "sylvester/closed_forms.hpp"
#include "sylvester/comb.hpp"
#include "sylvester/monte_carlo.hpp"
#include "sylvester/multipoly.hpp"
#include "sylvester/rational.hpp"
#include "sylvester/segments.hpp"

namespace sylvester::io {

using nlohmann::ordered_json;

/// Malformed input document (wrong shape or an unparsable number).
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

/// Accepts "p/q", decimal strings and JSON integers.
Rational rational_from_json(const ordered_json& j);
ordered_json to_json(const Rational& r);
/// {"exact": "p/q", "float": double}
ordered_json exact_value(const Rational& r);

ordered_json to_json(const MultiPoly& p);
MultiPoly poly_from_json(const ordered_json& j);

ordered_json to_json(const Point2& p);
ordered_json to_json(const ConvexBody& body);
ConvexBody body_from_json(const ordered_json& j);

ordered_json to_json(const Comb& c);
Comb comb_from_json(const ordered_json& j);

ordered_json to_json(const VerticalSegment& s);
ordered_json to_json(const NormalizedFamily& f);
/// Either {"segments": [...]} or a normalized family
/// {"xbar": [...], "L0": ..., "L1": ..., "lambda": [...], "beta": [...]}.
NormalizedFamily family_from_json(const ordered_json& j);
std::vector<VerticalSegment> segments_from_json(const ordered_json& j);

ordered_json to_json(const EstimateResult& r);
ordered_json to_json(const CertificateReport& r);
ordered_json to_json(const PiConstant& c);

/// Reads `text` as inline JSON when it starts with '{' or '[', else as a file path.
ordered_json load_document(const std::string& text);

}  // namespace sylvester::io
