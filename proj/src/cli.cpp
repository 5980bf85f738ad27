#include "avgrare/cli.hpp"

#include <filesystem>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "avgrare/ideals.hpp"
#include "avgrare/io.hpp"
#include "avgrare/lemmas.hpp"
#include "avgrare/reduction.hpp"
#include "avgrare/search.hpp"

namespace avgrare {

namespace {

constexpr std::uint64_t kDefaultSeed = 20250101;

struct InputSource {
  std::string path;      // file, or "-" for stdin
  std::string map_text;  // inline --map
};

std::string load_input(const InputSource& src) {
  if (!src.map_text.empty()) return src.map_text;
  if (src.path.empty()) throw InputError("no input given (pass a file, '-', or --map)");
  if (src.path == "-")
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  return read_text_file(src.path);
}

bool looks_like_json(const std::string& text) {
  const auto pos = text.find_first_not_of(" \t\r\n");
  return pos != std::string::npos && text[pos] == '{';
}

FunctionalMap load_map(const InputSource& src) {
  const std::string text = load_input(src);
  if (looks_like_json(text)) throw InputError("expected a map as a line of integers, got JSON");
  return parse_map_text(text);
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-")
    out << text;
  else
    write_text_file(path, text);
}

Json mask_list(Mask m) {
  Json out = Json::array();
  for (ElementId v : elements_of(m)) out.push_back(v);
  return out;
}

std::string names(Mask m, int n) { return format_set(m, n); }

/// Text and JSON summary of a family, plus preorder structure when known.
void analyze_family(const std::string& kind, const SetFamily& family,
                    const std::optional<PreorderRelation>& order, std::ostream& text, Json& json) {
  const int n = family.ground_size();
  const auto deg = degrees(family);
  const Mask rare = rare_elements(family);
  const std::int64_t value = nds(family);

  text << "input: " << kind << "\n";
  text << "n: " << n << "\n";
  text << "members: " << family.size() << "\n";
  text << "size_sum: " << family.total_size() << "\n";
  text << "nds: " << value << "\n";
  text << "degrees:";
  for (ElementId v = 0; v < n; ++v) text << ' ' << element_name(v, n) << '=' << deg[v];
  text << "\nrare: " << names(rare, n) << "\n";
  text << "average_rare: " << (value <= 0 ? "true" : "false") << "\n";

  json["kind"] = kind;
  json["n"] = n;
  json["members"] = family.size();
  json["size_sum"] = family.total_size();
  json["nds"] = value;
  json["degrees"] = deg;
  json["rare"] = mask_list(rare);
  json["average_rare"] = value <= 0;
  if (order) {
    const Mask maximal = maximal_elements(*order);
    const Partition part = equiv_classes(*order);
    text << "maximal: " << names(maximal, n) << "\n";
    text << "classes:";
    Json classes = Json::array();
    for (Mask cls : part.classes) {
      text << ' ' << names(cls, n);
      classes.push_back(mask_list(cls));
    }
    text << "\n";
    json["maximal"] = mask_list(maximal);
    json["classes"] = std::move(classes);
  }
  json["family"] = family_to_json(family);
}

int cmd_analyze(const InputSource& src, const std::string& json_path, const std::string& csv_path,
                std::ostream& out) {
  const std::string text = load_input(src);
  std::ostringstream report;
  Json json;
  SetFamily family;
  if (looks_like_json(text)) {
    const Json j = parse_json(text);
    if (j.contains("rules")) {
      const RootedFamily rf = rooted_from_json(j);
      family = closure_system_of(rf);
      std::optional<PreorderRelation> order;
      const bool singleton = std::all_of(rf.rules().begin(), rf.rules().end(),
                                         [](const RootedSet& r) { return popcount(r.stem) == 1; });
      if (singleton) order = singleton_stem_to_relation(rf);
      analyze_family("rooted", family, order, report, json);
    } else if (j.contains("sets")) {
      family = family_from_json(j);
      analyze_family("family", family, std::nullopt, report, json);
    } else {
      throw InputError("JSON input needs either \"rules\" or \"sets\"");
    }
  } else {
    const FunctionalMap f = parse_map_text(text);
    family = ideals_bruteforce(f).family;
    analyze_family("map", family, preorder_of(f), report, json);
  }
  out << report.str();
  if (!json_path.empty()) emit(json_path, json.dump(2) + "\n", out);
  if (!csv_path.empty()) emit(csv_path, degree_table_csv(family), out);
  return kExitOk;
}

int cmd_certify(const InputSource& src, const std::string& check_path, const std::string& out_path,
                std::ostream& out) {
  if (!check_path.empty()) {
    const ReductionCertificate cert = certificate_from_json(parse_json(read_text_file(check_path)));
    out << "certificate verified: " << cert.steps.size() << " steps, conclusion nds "
        << cert.conclusion_nds << " <= 0\n";
    return kExitOk;
  }
  const ReductionCertificate cert = certify(load_map(src));
  const int n = cert.input.size();
  for (const ReductionStep& s : cert.steps) {
    out << to_string(s.kind);
    if (s.removed) out << ' ' << element_name(*s.removed, s.input_map.size());
    out << "  [" << s.justification << "]\n";
  }
  out << "conclusion: nds " << cert.conclusion_nds << " <= 0 on " << n << " elements\n";
  if (!out_path.empty()) emit(out_path, certificate_to_json(cert).dump(2) + "\n", out);
  return kExitOk;
}

int cmd_verify_lemmas(int max_n, std::uint64_t seed, int jobs, std::ostream& out) {
  if (max_n < 1 || max_n > 7) throw InputError("--n must lie in [1, 7]");
  bool ok = true;
  for (const CheckResult& r : run_lemma_suites(max_n, seed, jobs)) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.cases << " cases)";
    if (!r.passed) out << ": " << r.detail;
    out << "\n";
    ok = ok && r.passed;
  }
  return ok ? kExitOk : kExitFailure;
}

struct SearchFlags {
  int jobs = 0;
  std::string out_path;
  std::string cursor_path;
  bool resume = false;
  bool canonical = false;
};

/// Wires checkpointing and resume for a single-n search.
RunOptions run_options(const SearchFlags& flags, int n, int max_stem) {
  RunOptions run;
  run.jobs = flags.jobs;
  if (flags.resume) {
    if (flags.cursor_path.empty() || flags.out_path.empty() || flags.out_path == "-")
      throw InputError("--resume needs --cursor and a file for --out");
    const Cursor cursor = cursor_from_json(parse_json(read_text_file(flags.cursor_path)));
    if (cursor.n != n || cursor.max_stem != max_stem)
      throw InputError("cursor was written for different parameters");
    SearchReport partial = report_from_json(parse_json(read_text_file(flags.out_path)));
    if (partial.next_index != cursor.next_index)
      throw InputError("cursor and partial report disagree on the next index");
    run.resume = std::move(partial);
  }
  if (!flags.cursor_path.empty()) {
    run.on_checkpoint = [flags, n, max_stem](const SearchReport& partial) {
      if (!flags.out_path.empty() && flags.out_path != "-")
        write_text_file(flags.out_path, report_to_json(partial).dump(2) + "\n");
      write_text_file(flags.cursor_path,
                      cursor_to_json({n, max_stem, partial.next_index}).dump() + "\n");
    };
  }
  return run;
}

void summarize(const SearchReport& r, std::ostream& out) {
  out << (r.kind == SearchKind::Theorem ? "theorem" : "conjecture") << " n=" << r.n;
  if (r.kind == SearchKind::Conjecture) out << " max_stem=" << r.max_stem;
  out << ": scanned " << r.instances_scanned << ", evaluated " << r.instances_evaluated;
  if (r.distinct_up_to_iso) out << ", distinct up to iso " << *r.distinct_up_to_iso;
  out << ", max_nds " << (r.max_nds() ? std::to_string(*r.max_nds()) : "none");
  if (r.kind == SearchKind::Conjecture && r.max_witness_exactly_one)
    out << " (exactly-one " << r.max_witness_exactly_one->nds << ")";
  out << ", counterexamples " << r.counterexample_count << "\n";
}

int cmd_verify_theorem(int from, int to, bool posets_only, const SearchFlags& flags,
                       std::ostream& out) {
  if (from < 1) from = to;
  if (to < 1 || to > 15 || from > to) throw InputError("need 1 <= --from <= --n <= 15");
  if ((!flags.cursor_path.empty() || flags.resume) && from != to)
    throw InputError("--cursor and --resume need a single ground size");
  Json reports = Json::array();
  bool clean = true;
  for (int n = from; n <= to; ++n) {
    const SearchReport r = verify_main_theorem(n, {posets_only, flags.canonical},
                                               run_options(flags, n, 0));
    summarize(r, out);
    clean = clean && r.counterexample_count == 0;
    reports.push_back(report_to_json(r));
  }
  if (!flags.out_path.empty()) {
    Json doc;
    doc["reports"] = std::move(reports);
    emit(flags.out_path, doc.dump(2) + "\n", out);
  }
  return clean ? kExitOk : kExitFailure;
}

int cmd_mine(int n, int max_stem, bool exactly_one, const SearchFlags& flags, std::ostream& out) {
  const SearchReport r =
      mine_conjecture(n, max_stem, {exactly_one, flags.canonical}, run_options(flags, n, max_stem));
  summarize(r, out);
  if (!flags.out_path.empty()) emit(flags.out_path, report_to_json(r).dump(2) + "\n", out);
  return r.counterexample_count == 0 && r.averaging_failures == 0 ? kExitOk : kExitFailure;
}

void add_input(CLI::App* cmd, InputSource& src) {
  cmd->add_option("input", src.path, "Input file, or - for standard input");
  cmd->add_option("--map", src.map_text, "Functional map inline, e.g. \"1 2 1\"");
}

void add_search_flags(CLI::App* cmd, SearchFlags& flags) {
  cmd->add_option("--jobs", flags.jobs, "Worker threads (default: all cores)")->check(CLI::NonNegativeNumber);
  cmd->add_option("--out", flags.out_path, "Write the JSON report here (- for stdout)");
  cmd->add_option("--cursor", flags.cursor_path, "Checkpoint cursor file");
  cmd->add_flag("--resume", flags.resume, "Continue from --cursor and the partial report at --out");
  cmd->add_flag("--canonical", flags.canonical, "Scan one representative per relabeling orbit");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Average-rarity verifier for order-ideal families and closure systems", "avgrare"};
  app.require_subcommand(1);

  InputSource src;
  std::string json_path, csv_path, out_path, check_path;
  int n = 0, from = 0, max_stem = 0, jobs = 0;
  std::uint64_t seed = kDefaultSeed;
  bool posets_only = false, exactly_one = false;
  SearchFlags flags;

  auto* analyze = app.add_subcommand("analyze", "Statistics of a map, rooted family, or set family");
  add_input(analyze, src);
  analyze->add_option("--json", json_path, "Write the analysis JSON here (- for stdout)");
  analyze->add_option("--csv", csv_path, "Write the element,degree,rare table here (- for stdout)");

  auto* cert = app.add_subcommand("certify", "Replay the reduction on a map as a checked certificate");
  add_input(cert, src);
  cert->add_option("--out", out_path, "Write the certificate JSON here (- for stdout)");
  cert->add_option("--check", check_path, "Verify an existing certificate JSON instead");

  auto* lemmas = app.add_subcommand("verify-lemmas", "Run every lemma suite up to ground size N");
  lemmas->add_option("--n", n, "Largest ground size")->required();
  lemmas->add_option("--seed", seed, "Seed for the sampled suites");
  lemmas->add_option("--jobs", jobs, "Worker threads")->check(CLI::NonNegativeNumber);

  auto* theorem = app.add_subcommand("verify-theorem", "Scan every map on n elements");
  theorem->add_option("--n", n, "Ground size (largest, with --from)")->required();
  theorem->add_option("--from", from, "Smallest ground size to scan (default: --n)");
  theorem->add_flag("--posets-only", posets_only, "Only maps whose cycles are fixed points");
  add_search_flags(theorem, flags);

  auto* mine = app.add_subcommand("mine", "Scan unique-root rooted families for positive nds");
  mine->add_option("--n", n, "Ground size")->required();
  mine->add_option("--max-stem", max_stem, "Largest stem size")->required();
  mine->add_flag("--exactly-one", exactly_one, "Every element roots exactly one rule");
  add_search_flags(mine, flags);

  auto* dot = app.add_subcommand("export-dot", "Hasse diagram of a map as DOT");
  add_input(dot, src);
  dot->add_option("--out", out_path, "Write the DOT here (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "avgrare: usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*analyze) return cmd_analyze(src, json_path, csv_path, out);
    if (*cert) return cmd_certify(src, check_path, out_path, out);
    if (*lemmas) return cmd_verify_lemmas(n, seed, jobs, out);
    if (*theorem) return cmd_verify_theorem(from, n, posets_only, flags, out);
    if (*mine) return cmd_mine(n, max_stem, exactly_one, flags, out);
    if (*dot) {
      const std::string text = export_dot(load_map(src));
      emit(out_path.empty() ? "-" : out_path, text, out);
      return kExitOk;
    }
  } catch (const InputError& e) {
    err << "avgrare: error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InconsistencyError& e) {
    err << "avgrare: verification failed: " << e.what() << "\n";
    return kExitFailure;
  } catch (const nlohmann::json::exception& e) {
    err << "avgrare: error: malformed JSON field: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "avgrare: error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace avgrare
