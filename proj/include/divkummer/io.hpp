#pragma once

#include "divkummer/autseq.hpp"
#include "divkummer/duality.hpp"
#include "divkummer/hulls.hpp"
#include "divkummer/kummer.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace divkum {

using Json = nlohmann::json;

// Parsing of the JSON input documents (integers are decimal strings; plain
// JSON integers are accepted as well).
Int json_int(const Json& j);
Rat json_rat(const Json& j);
IntMat json_matrix(const Json& j);
Ring parse_ring(const Json& doc);
IdealFilter parse_filter(const Json& j);
FgModule parse_module(const Json& doc);
FgModule parse_module_obj(const Json& module_obj, const Ring& ring);
TorsionTarget parse_target(const Json& doc, const IdealFilter& j, const Ring& ring);
PointedModule parse_pointed(const Json& obj, const IdealFilter& j, const TorsionTarget& t,
                            const Ring& ring);
JTExtension parse_extension(const Json& obj, const IdealFilter& j, const TorsionTarget& t,
                            const Ring& ring);

// Printing; parse(print(x)) returns an equal object.
Json matrix_json(const IntMat& m);
Json ring_json(const Ring& r);
Json module_json(const FgModule& m);
Json pointed_json(const PointedModule& m);
Json extension_json(const JTExtension& e);
Json filter_json(const IdealFilter& j);

// Deterministic digest of the canonical serialization (FNV-1a 64).
std::string input_digest(const Json& doc);

struct RunResult {
  int exit_code = 0;  // 0 ok, 1 mathematical refusal, 2 input error
  Json report;
};

// Dispatch a CLI command on a merged input document.  Never throws: errors
// are folded into the report with the corresponding exit code.
RunResult run_command(const std::string& command, const Json& doc);

std::vector<std::string> command_names();

}  // namespace divkum
