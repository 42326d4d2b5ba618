#pragma once

#include "troplog/fan.hpp"
#include "troplog/moduli.hpp"
#include "troplog/pl_function.hpp"
#include "troplog/selfmap.hpp"
#include "troplog/subdivision.hpp"
#include "troplog/tree.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace troplog::json_io {

using Json = nlohmann::ordered_json;

/// Parses a JSON document; syntax errors become Error(ParseError) carrying
/// the line and column.
Json parse_document(std::string_view text);

// Readers throw Error(ParseError) naming the offending field path.

Json to_json(const Tree& tree);
Tree tree_from_json(const Json& j);

Json to_json(const ValidationReport& report);
ValidationReport validation_report_from_json(const Json& j);

Json to_json(const ContactOrder& sigma);
ContactOrder contact_order_from_json(const Json& j);

Json to_json(const PLFunction& f);
PLFunction pl_function_from_json(const Json& j);

Json to_json(const Multidegree& md);
Multidegree multidegree_from_json(const Json& j);

Json to_json(const ConeComplex& complex);
ConeComplex cone_complex_from_json(const Json& j);

Json to_json(const IsomorphismReport& report);
IsomorphismReport isomorphism_report_from_json(const Json& j);

Json to_json(const Fan& fan);
Fan fan_from_json(const Json& j);

Json to_json(const FanReport& report);

Json to_json(const SubdividedCell& cell);
SubdividedCell cell_from_json(const Json& j);

Json to_json(const SubdivisionResult& result);
SubdivisionResult subdivision_from_json(const Json& j);

Json to_json(const SelfMapNormalForm& form);
SelfMapNormalForm self_map_from_json(const Json& j);

}  // namespace troplog::json_io
