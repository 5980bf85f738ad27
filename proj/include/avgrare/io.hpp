#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "avgrare/family.hpp"
#include "avgrare/preorder.hpp"
#include "avgrare/reduction.hpp"
#include "avgrare/rooted.hpp"
#include "avgrare/search.hpp"

namespace avgrare {

using Json = nlohmann::ordered_json;

/// Malformed input text. line and column are 1-based.
class ParseError : public InputError {
public:
  ParseError(int line, int column, const std::string& what);
  int line;
  int column;
};

/// Parses JSON, converting syntax errors into ParseError with a position.
Json parse_json(std::string_view text);

/// One line of n whitespace-separated 0-indexed images, e.g. "1 2 1".
FunctionalMap parse_map_text(std::string_view text);
std::string format_map_text(const FunctionalMap& f);

/// {"n": int, "sets": [[int, ...], ...]} with strictly increasing inner lists.
Json family_to_json(const SetFamily& family);
SetFamily family_from_json(const Json& j);

/// {"n": int, "rules": [{"stem": [int, ...], "root": int}, ...]}.
Json rooted_to_json(const RootedFamily& rf);
RootedFamily rooted_from_json(const Json& j);

/// {"input": [...], "steps": [{"kind", "removed", "nds_before", "nds_after"}], "conclusion_nds"}.
Json certificate_to_json(const ReductionCertificate& cert);
/// Replays and verifies the certificate; throws InconsistencyError if it does not check out.
ReductionCertificate certificate_from_json(const Json& j);

Json report_to_json(const SearchReport& report);
SearchReport report_from_json(const Json& j);
/// Report JSON with the wall-clock field removed, for run-to-run comparison.
std::string report_fingerprint(const SearchReport& report);

/// Resumable cursor: {"n": int, "max_stem": int, "next_index": "<decimal>"}.
struct Cursor {
  int n = 0;
  int max_stem = 0;
  std::uint64_t next_index = 0;
  friend bool operator==(const Cursor&, const Cursor&) = default;
};
Json cursor_to_json(const Cursor& cursor);
Cursor cursor_from_json(const Json& j);

/// Hasse diagram as a DOT digraph, edges lower -> upper. Proper preorders are
/// quotiented first; class vertices are labeled with their members.
std::string export_dot(const FunctionalMap& f);

/// "element,degree,rare" table.
std::string degree_table_csv(const SetFamily& family);

/// "{a,b}" style rendering.
std::string format_set(Mask m, int n);

void write_text_file(const std::string& path, std::string_view text);
std::string read_text_file(const std::string& path);

}  // namespace avgrare
