#pragma once

#include <string>

#include <json.hpp>

#include "kdescent/hyperres.hpp"
#include "kdescent/tower.hpp"

/* JSON document formats.  Matrices are row-major nested arrays; entries that
 * do not fit a 64-bit integer are written as decimal strings and accepted
 * back in either form. */

namespace kdescent {

using Json = nlohmann::ordered_json;

Json matrix_to_json(const MatrixXZ& m);
MatrixXZ matrix_from_json(const Json& j, const std::string& where);

Json complex_to_json(const ZComplex& c);
ZComplex complex_from_json(const Json& j, const std::string& where);

Json group_to_json(const FgAbGroup& g);

Json doc_to_json(const HyperresolutionDoc& doc);
HyperresolutionDoc doc_from_json(const Json& j);

Json tower_to_json(const Tower& t);
Tower tower_from_json(const Json& j);

Json blowup_to_json(const BlowupData& b);
BlowupData blowup_from_json(const Json& j);

Json pair_to_json(const CompactSupportInput& in);
CompactSupportInput pair_from_json(const Json& j);

Json load_json_file(const std::string& path);

/* "doc" | "tower" | "blowup" | "pair" */
std::string detect_kind(const Json& j);

}  // namespace kdescent
