#include "avgrare/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace avgrare {

ParseError::ParseError(int line, int column, const std::string& what)
    : InputError(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      line(line),
      column(column) {}

namespace {

std::pair<int, int> position_of(std::string_view text, std::size_t offset) {
  int line = 1, column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

/// Reads a strictly increasing list of in-range element indices as a mask.
Mask mask_from_json(const Json& j, int n, std::string_view what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array");
  Mask m = 0;
  int previous = -1;
  for (const Json& e : j) {
    if (!e.is_number_integer()) throw InputError(std::string(what) + " entries must be integers");
    const int v = e.get<int>();
    check_element(v, n);
    if (v <= previous) throw InputError(std::string(what) + " must be strictly increasing");
    previous = v;
    m |= bit(v);
  }
  return m;
}

Json mask_to_json(Mask m) {
  Json out = Json::array();
  for (ElementId v : elements_of(m)) out.push_back(v);
  return out;
}

int ground_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
    throw InputError("expected an object with integer field \"n\"");
  const int n = j["n"].get<int>();
  check_ground_size(n);
  return n;
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    throw InputError(std::string("missing field \"") + name + "\"");
  return j[name];
}

Json witness_to_json(const SearchReport& report, const Witness& w) {
  Json out;
  out["index"] = w.index;
  out["nds"] = w.nds;
  if (report.kind == SearchKind::Theorem) {
    Json map = Json::array();
    const FunctionalMap f = map_at(report.n, w.index);
    for (ElementId v : f.images()) map.push_back(v);
    out["map"] = std::move(map);
  } else {
    const UniqueRootSpace space(report.n, report.max_stem, report.exactly_one);
    out["rules"] = rooted_to_json(space.family_at(w.index).family())["rules"];
  }
  return out;
}

Witness witness_from_json(const Json& j) {
  return {field(j, "index").get<std::uint64_t>(), field(j, "nds").get<std::int64_t>()};
}

std::optional<Witness> optional_witness(const Json& j, const char* name) {
  if (!j.contains(name) || j[name].is_null()) return std::nullopt;
  return witness_from_json(j[name]);
}

std::uint64_t parse_u64(const std::string& s) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw InputError("expected a decimal integer string, got \"" + s + "\"");
  return value;
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    const auto [line, column] = position_of(text, offset);
    std::string what = e.what();
    if (const auto colon = what.rfind(": "); colon != std::string::npos) what = what.substr(colon + 2);
    throw ParseError(line, column, "invalid JSON: " + what);
  }
}

FunctionalMap parse_map_text(std::string_view text) {
  std::vector<ElementId> images;
  int line = 1, line_with_values = 0;
  std::size_t i = 0;
  auto column_at = [&](std::size_t pos) { return position_of(text, pos).second; };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const std::string_view token = text.substr(start, i - start);
    if (line_with_values != 0 && line != line_with_values)
      throw ParseError(line, column_at(start), "map must be given on a single line");
    line_with_values = line;
    int value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size())
      throw ParseError(line, column_at(start), "expected a nonnegative integer, got '" +
                                                   std::string(token) + "'");
    if (value < 0) throw ParseError(line, column_at(start), "negative image");
    images.push_back(value);
  }
  if (images.empty()) throw ParseError(1, 1, "empty map");
  const int n = static_cast<int>(images.size());
  for (int v = 0; v < n; ++v)
    if (images[v] >= n)
      throw ParseError(line_with_values, 1,
                       "image " + std::to_string(images[v]) + " of element " + std::to_string(v) +
                           " is out of range for " + std::to_string(n) + " elements");
  return FunctionalMap(std::move(images));
}

std::string format_map_text(const FunctionalMap& f) {
  std::string out;
  for (ElementId v = 0; v < f.size(); ++v) {
    if (v) out += ' ';
    out += std::to_string(f(v));
  }
  return out;
}

Json family_to_json(const SetFamily& family) {
  Json out;
  out["n"] = family.ground_size();
  Json sets = Json::array();
  for (Mask m : family) sets.push_back(mask_to_json(m));
  out["sets"] = std::move(sets);
  return out;
}

SetFamily family_from_json(const Json& j) {
  const int n = ground_from_json(j);
  const Json& sets = field(j, "sets");
  if (!sets.is_array()) throw InputError("\"sets\" must be an array");
  std::vector<Mask> members;
  for (const Json& s : sets) members.push_back(mask_from_json(s, n, "set"));
  return SetFamily(n, std::move(members));
}

Json rooted_to_json(const RootedFamily& rf) {
  Json out;
  out["n"] = rf.ground_size();
  Json rules = Json::array();
  for (const RootedSet& r : rf.rules()) {
    Json rule;
    rule["stem"] = mask_to_json(r.stem);
    rule["root"] = r.root;
    rules.push_back(std::move(rule));
  }
  out["rules"] = std::move(rules);
  return out;
}

RootedFamily rooted_from_json(const Json& j) {
  const int n = ground_from_json(j);
  const Json& rules = field(j, "rules");
  if (!rules.is_array()) throw InputError("\"rules\" must be an array");
  std::vector<RootedSet> out;
  for (const Json& r : rules) {
    const Json& root = field(r, "root");
    if (!root.is_number_integer()) throw InputError("\"root\" must be an integer");
    out.push_back({mask_from_json(field(r, "stem"), n, "stem"), root.get<int>()});
  }
  return RootedFamily(n, std::move(out));
}

Json certificate_to_json(const ReductionCertificate& cert) {
  Json out;
  Json input = Json::array();
  for (ElementId v : cert.input.images()) input.push_back(v);
  out["input"] = std::move(input);
  Json steps = Json::array();
  for (const ReductionStep& s : cert.steps) {
    Json step;
    step["kind"] = std::string(to_string(s.kind));
    step["removed"] = s.removed ? Json(*s.removed) : Json(nullptr);
    step["nds_before"] = s.nds_before;
    step["nds_after"] = s.nds_after;
    steps.push_back(std::move(step));
  }
  out["steps"] = std::move(steps);
  out["conclusion_nds"] = cert.conclusion_nds;
  return out;
}

ReductionCertificate certificate_from_json(const Json& j) {
  const FunctionalMap input(field(j, "input").get<std::vector<ElementId>>());
  std::vector<RecordedStep> recorded;
  for (const Json& s : field(j, "steps")) {
    RecordedStep r;
    r.kind = step_kind_from_string(field(s, "kind").get<std::string>());
    const Json& removed = field(s, "removed");
    if (!removed.is_null()) r.removed = removed.get<ElementId>();
    r.nds_before = field(s, "nds_before").get<std::int64_t>();
    r.nds_after = field(s, "nds_after").get<std::vector<std::int64_t>>();
    recorded.push_back(std::move(r));
  }
  return replay_certificate(input, recorded, field(j, "conclusion_nds").get<std::int64_t>());
}

Json report_to_json(const SearchReport& r) {
  const bool theorem = r.kind == SearchKind::Theorem;
  Json out;
  out["kind"] = theorem ? "theorem" : "conjecture";
  out["n"] = r.n;
  if (!theorem) out["max_stem"] = r.max_stem;
  out["canonical_only"] = r.canonical_only;
  if (theorem)
    out["posets_only"] = r.posets_only;
  else
    out["exactly_one"] = r.exactly_one;
  out["instances_scanned"] = r.instances_scanned;
  out["instances_evaluated"] = r.instances_evaluated;
  out["distinct_up_to_iso"] = r.distinct_up_to_iso ? Json(*r.distinct_up_to_iso) : Json(nullptr);
  out["max_nds"] = r.max_witness ? Json(r.max_witness->nds) : Json(nullptr);
  out["max_witness"] = r.max_witness ? witness_to_json(r, *r.max_witness) : Json(nullptr);
  out["counterexample_count"] = r.counterexample_count;
  Json cex = Json::array();
  for (const Witness& w : r.counterexamples) cex.push_back(witness_to_json(r, w));
  out["counterexamples"] = std::move(cex);
  if (!theorem) {
    out["max_nds_exactly_one"] =
        r.max_witness_exactly_one ? Json(r.max_witness_exactly_one->nds) : Json(nullptr);
    out["max_witness_exactly_one"] =
        r.max_witness_exactly_one ? witness_to_json(r, *r.max_witness_exactly_one) : Json(nullptr);
    out["without_rare"] = r.without_rare;
    out["averaging_failures"] = r.averaging_failures;
  }
  out["next_index"] = std::to_string(r.next_index);
  out["complete"] = r.complete;
  out["wall_time_seconds"] = r.wall_time_seconds;
  return out;
}

SearchReport report_from_json(const Json& j) {
  SearchReport r;
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind != "theorem" && kind != "conjecture") throw InputError("unknown report kind " + kind);
  r.kind = kind == "theorem" ? SearchKind::Theorem : SearchKind::Conjecture;
  r.n = field(j, "n").get<int>();
  r.max_stem = j.value("max_stem", 0);
  r.canonical_only = field(j, "canonical_only").get<bool>();
  r.posets_only = j.value("posets_only", false);
  r.exactly_one = j.value("exactly_one", false);
  r.instances_scanned = field(j, "instances_scanned").get<std::uint64_t>();
  r.instances_evaluated = field(j, "instances_evaluated").get<std::uint64_t>();
  if (!field(j, "distinct_up_to_iso").is_null())
    r.distinct_up_to_iso = j["distinct_up_to_iso"].get<std::uint64_t>();
  r.max_witness = optional_witness(j, "max_witness");
  for (const Json& w : field(j, "counterexamples")) r.counterexamples.push_back(witness_from_json(w));
  r.counterexample_count = field(j, "counterexample_count").get<std::uint64_t>();
  r.max_witness_exactly_one = optional_witness(j, "max_witness_exactly_one");
  r.without_rare = j.value("without_rare", std::uint64_t{0});
  r.averaging_failures = j.value("averaging_failures", std::uint64_t{0});
  r.next_index = parse_u64(field(j, "next_index").get<std::string>());
  r.complete = field(j, "complete").get<bool>();
  r.wall_time_seconds = j.value("wall_time_seconds", 0.0);
  return r;
}

std::string report_fingerprint(const SearchReport& report) {
  Json j = report_to_json(report);
  j.erase("wall_time_seconds");
  return j.dump();
}

Json cursor_to_json(const Cursor& cursor) {
  Json out;
  out["n"] = cursor.n;
  out["max_stem"] = cursor.max_stem;
  out["next_index"] = std::to_string(cursor.next_index);
  return out;
}

Cursor cursor_from_json(const Json& j) {
  Cursor c;
  c.n = field(j, "n").get<int>();
  c.max_stem = field(j, "max_stem").get<int>();
  const Json& next = field(j, "next_index");
  if (!next.is_string()) throw InputError("\"next_index\" must be a decimal string");
  c.next_index = parse_u64(next.get<std::string>());
  return c;
}

std::string format_set(Mask m, int n) {
  std::string out = "{";
  bool first = true;
  for (ElementId v : elements_of(m)) {
    if (!first) out += ',';
    out += element_name(v, n);
    first = false;
  }
  return out + "}";
}

std::string export_dot(const FunctionalMap& f) {
  const int n = f.size();
  const Partition part = equiv_classes(preorder_of(f));
  const FunctionalMap q = quotient_map(f, part);
  auto label = [&](int c) {
    const Mask cls = part.classes[c];
    return popcount(cls) == 1 ? element_name(std::countr_zero(cls), n) : format_set(cls, n);
  };
  std::ostringstream out;
  out << "digraph hasse {\n  rankdir=BT;\n";
  for (int c = 0; c < q.size(); ++c) out << "  \"" << label(c) << "\";\n";
  for (const auto& [lo, hi] : hasse_covers(q))
    out << "  \"" << label(lo) << "\" -> \"" << label(hi) << "\";\n";
  out << "}\n";
  return out.str();
}

std::string degree_table_csv(const SetFamily& family) {
  const auto deg = degrees(family);
  std::ostringstream out;
  out << "element,degree,rare\n";
  for (ElementId v = 0; v < family.ground_size(); ++v)
    out << element_name(v, family.ground_size()) << ',' << deg[v] << ','
        << (2 * deg[v] <= static_cast<std::int64_t>(family.size()) ? "true" : "false") << '\n';
  return out.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw InputError("failed writing " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace avgrare
