// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "avgrare/cli.hpp"
#include "avgrare/ideals.hpp"
#include "avgrare/io.hpp"
#include "avgrare/lemmas.hpp"
#include "avgrare/search.hpp"

using namespace avgrare;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Outcome {
  bool ok = true;
  std::string note;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!note.empty()) note += "; ";
      note += what;
    }
  }
};

int cli(const std::vector<std::string>& args, std::string* out = nullptr) {
  std::ostringstream o, e;
  const int code = run_cli(args, o, e);
  if (out) *out = o.str();
  if (code != kExitOk) std::cerr << e.str();
  return code;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("avgrare_accept_" + name)).string();
}

std::string jobs_arg() {
  return std::to_string(std::max(1u, std::thread::hardware_concurrency()));
}

/// Runs `args` with --out, returns the parsed report JSON with wall time removed.
Json report_via_cli(std::vector<std::string> args, const std::string& tag, int* code = nullptr) {
  const std::string path = temp_path(tag + ".json");
  args.push_back("--out");
  args.push_back(path);
  const int c = cli(args);
  if (code) *code = c;
  Json j = parse_json(read_text_file(path));
  std::filesystem::remove(path);
  auto strip = [](Json& r) { r.erase("wall_time_seconds"); };
  if (j.contains("reports"))
    for (Json& r : j["reports"]) strip(r);
  else
    strip(j);
  return j;
}

Outcome criterion1() {
  Outcome o;
  const auto t = Clock::now();
  const std::string ex3 = temp_path("ex3.json");
  write_text_file(ex3, R"({"n":3,"rules":[{"stem":[1],"root":0},{"stem":[2],"root":0}]})");
  struct Case {
    std::vector<std::string> args;
    std::int64_t nds;
    bool average_rare;
  };
  for (const Case& c : {Case{{"analyze", "--map", "1 1"}, 0, true},
                        Case{{"analyze", "--map", "1 2 1"}, -1, true},
                        Case{{"analyze", ex3}, 1, false}}) {
    std::vector<std::string> args = c.args;
    args.insert(args.end(), {"--json", "-"});
    std::string text;
    o.expect(cli(args, &text) == kExitOk, "analyze failed");
    const Json j = parse_json(text.substr(text.find("\n{") + 1));
    o.expect(j["nds"] == c.nds, c.args.back() + ": nds " + j["nds"].dump());
    o.expect(j["average_rare"] == c.average_rare, c.args.back() + ": average_rare");
  }
  std::filesystem::remove(ex3);
  const double s = seconds_since(t);
  o.expect(s < 1.0, "took " + std::to_string(s) + " s");
  o.note += (o.note.empty() ? "" : "; ") + std::string("nds 0, -1, +1");
  return o;
}

Outcome criterion2(Json& fingerprint) {
  Outcome o;
  auto t = Clock::now();
  int code = 0;
  fingerprint = report_via_cli({"verify-theorem", "--n", "6", "--from", "1", "--jobs", jobs_arg()},
                               "theorem", &code);
  const double small = seconds_since(t);
  o.expect(code == kExitOk, "exit code " + std::to_string(code));
  std::uint64_t scanned = 0;
  for (const Json& r : fingerprint["reports"]) {
    scanned += r["instances_scanned"].get<std::uint64_t>();
    o.expect(r["max_nds"] == 0, "n=" + r["n"].dump() + " max_nds " + r["max_nds"].dump());
    o.expect(r["counterexample_count"] == 0, "n=" + r["n"].dump() + " has counterexamples");
  }
  std::uint64_t expected = 0;
  for (std::uint64_t n = 1; n <= 6; ++n) {
    std::uint64_t p = 1;
    for (std::uint64_t k = 0; k < n; ++k) p *= n;
    expected += p;
  }
  o.expect(scanned == expected, "scanned " + std::to_string(scanned) + " of " + std::to_string(expected));
  o.expect(small < 10.0, "n<=6 took " + std::to_string(small) + " s");

  t = Clock::now();
  const Json seven = report_via_cli({"verify-theorem", "--n", "7", "--jobs", jobs_arg()}, "theorem7", &code);
  const double big = seconds_since(t);
  const Json& r7 = seven["reports"][0];
  o.expect(code == kExitOk && r7["max_nds"] == 0 && r7["counterexample_count"] == 0, "n=7 failed");
  o.expect(r7["instances_scanned"] == 823543, "n=7 scanned " + r7["instances_scanned"].dump());
  o.expect(big < 120.0, "n=7 took " + std::to_string(big) + " s");
  char buf[128];
  std::snprintf(buf, sizeof buf, "%llu maps in %.2f s, 823543 maps at n=7 in %.2f s",
                static_cast<unsigned long long>(scanned), small, big);
  o.note += (o.note.empty() ? "" : "; ") + std::string(buf);
  return o;
}

Outcome criterion3() {
  Outcome o;
  int code = 0;
  const Json doc = report_via_cli(
      {"verify-theorem", "--n", "6", "--from", "1", "--posets-only", "--jobs", jobs_arg()}, "posets", &code);
  o.expect(code == kExitOk, "exit code " + std::to_string(code));
  std::uint64_t evaluated = 0;
  for (const Json& r : doc["reports"]) {
    evaluated += r["instances_evaluated"].get<std::uint64_t>();
    o.expect(r["max_nds"] == 0 && r["counterexample_count"] == 0, "n=" + r["n"].dump() + " failed");
  }
  o.note += (o.note.empty() ? "" : "; ") + std::to_string(evaluated) + " poset maps";
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto t = Clock::now();
  std::string text;
  o.expect(cli({"verify-lemmas", "--n", "5", "--jobs", jobs_arg()}, &text) == kExitOk,
           "verify-lemmas --n 5 failed");
  for (const CheckResult& r : {check_root_deletion(6), check_ideal_lower_bound(6)})
    o.expect(r.passed, r.name + " at n=6: " + r.detail);
  const double s = seconds_since(t);
  o.expect(s < 60.0, "took " + std::to_string(s) + " s");
  std::size_t lines = 0;
  for (char c : text) lines += c == '\n';
  o.note += (o.note.empty() ? "" : "; ") + std::to_string(lines) + " suites at n=5 plus 2 at n=6";
  return o;
}

Outcome criterion5() {
  Outcome o;
  std::uint64_t cases = 0;
  for (const CheckResult& r : {check_ideal_oracles(5), check_closure_oracle(1000, 4, 20250101)}) {
    o.expect(r.passed, r.name + ": " + r.detail);
    cases += r.cases;
  }
  o.note += (o.note.empty() ? "" : "; ") + std::to_string(cases) + " cases";
  return o;
}

Outcome criterion6() {
  Outcome o;
  const CheckResult r = check_certificates(5);
  o.expect(r.passed, r.detail);
  const std::string dir = AVGRARE_GOLDEN_DIR;
  for (const auto& [map, file] : {std::pair{"1 1", "example1_certificate.json"},
                                  std::pair{"1 2 1", "example2_certificate.json"}}) {
    std::string text;
    o.expect(cli({"certify", "--map", map, "--out", "-"}, &text) == kExitOk, "certify failed");
    const std::string golden = read_text_file(dir + "/" + file);
    o.expect(text.size() >= golden.size() && text.compare(text.size() - golden.size(), golden.size(), golden) == 0,
             std::string(file) + " differs");
  }
  o.note += (o.note.empty() ? "" : "; ") + std::to_string(r.cases) + " maps certified";
  return o;
}

/// Closure-system nds straight from the rules, over all 2^n subsets.
std::int64_t brute_nds(const UniqueRootFamily& rf) {
  const int n = rf.ground_size();
  std::int64_t members = 0, sizes = 0;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    bool closed = true;
    for (const RootedSet& rule : rf.rules()) {
      const bool stem_inside = (rule.stem & ~x) == 0;
      if (stem_inside && !((x >> rule.root) & 1)) closed = false;
    }
    if (!closed) continue;
    ++members;
    for (int v = 0; v < n; ++v) sizes += (x >> v) & 1;
  }
  return 2 * sizes - members * n;
}

Outcome criterion7(Json& small_fp, Json& large_fp) {
  Outcome o;
  int code = 0;
  small_fp = report_via_cli({"mine", "--n", "4", "--max-stem", "3", "--jobs", jobs_arg()}, "mine4", &code);
  o.expect(small_fp["instances_scanned"] == 4096, "n=4 scanned " + small_fp["instances_scanned"].dump());
  o.expect(small_fp["counterexample_count"] == 0, "n=4 counterexamples");

  const auto t = Clock::now();
  large_fp = report_via_cli({"mine", "--n", "5", "--max-stem", "4", "--jobs", jobs_arg()}, "mine5", &code);
  const double s = seconds_since(t);
  o.expect(large_fp["instances_scanned"] == 1048576, "n=5 scanned " + large_fp["instances_scanned"].dump());
  o.expect(large_fp["counterexample_count"] == 0, "n=5 counterexamples");
  o.expect(s < 60.0, "n=5 took " + std::to_string(s) + " s");

  // Miner evaluation path against the direct recomputation.
  std::mt19937_64 rng(20250101);
  int matched = 0;
  const UniqueRootSpace space(5, 4);
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t index = rng() % space.size();
    const auto stems = space.stems_at(index);
    const ClosureStats cs = closure_stats(stems);
    const std::int64_t fast = nds_from(cs.size_sum, cs.count, 5);
    const std::int64_t slow = brute_nds(space.family_at(index));
    if (fast == slow) ++matched;
    else o.expect(false, "index " + std::to_string(index) + ": " + std::to_string(fast) + " vs " +
                             std::to_string(slow));
  }
  const Json& w = large_fp["max_witness"];
  o.expect(brute_nds(space.family_at(w["index"].get<std::uint64_t>())) == w["nds"].get<std::int64_t>(),
           "reported maximum does not recompute");
  char buf[160];
  std::snprintf(buf, sizeof buf, "max_nds %s / %s, n=5 in %.2f s, %d/100 samples match",
                small_fp["max_nds"].dump().c_str(), large_fp["max_nds"].dump().c_str(), s, matched);
  o.note += (o.note.empty() ? "" : "; ") + std::string(buf);
  return o;
}

Outcome criterion8(const Json& theorem, const Json& mine4, const Json& mine5) {
  Outcome o;
  for (const char* jobs : {"1", "4"}) {
    const std::string tag = std::string("j") + jobs;
    o.expect(report_via_cli({"verify-theorem", "--n", "6", "--from", "1", "--jobs", jobs}, tag + "t").dump() ==
                 theorem.dump(),
             "theorem report differs at --jobs " + std::string(jobs));
    o.expect(report_via_cli({"mine", "--n", "4", "--max-stem", "3", "--jobs", jobs}, tag + "m4").dump() ==
                 mine4.dump(),
             "mine n=4 report differs at --jobs " + std::string(jobs));
    o.expect(report_via_cli({"mine", "--n", "5", "--max-stem", "4", "--jobs", jobs}, tag + "m5").dump() ==
                 mine5.dump(),
             "mine n=5 report differs at --jobs " + std::string(jobs));
  }
  o.note += (o.note.empty() ? "" : "; ") + std::string("--jobs 1 and 4 against --jobs ") + jobs_arg();
  return o;
}

}  // namespace

int main() {
  bool all = true;
  auto report = [&](int id, const std::string& name, const std::function<Outcome()>& run) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.note = std::string("exception: ") + e.what();
    }
    all = all && o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << id << " " << name << ": " << o.note
              << std::endl;
  };

  Json theorem, mine4, mine5;
  report(1, "worked examples", criterion1);
  report(2, "all maps n<=7", [&] { return criterion2(theorem); });
  report(3, "posets n<=6", criterion3);
  report(4, "lemma suites", criterion4);
  report(5, "oracle equivalence", criterion5);
  report(6, "certificates", criterion6);
  report(7, "conjecture miner", [&] { return criterion7(mine4, mine5); });
  report(8, "determinism across --jobs", [&] { return criterion8(theorem, mine4, mine5); });
  return all ? 0 : 1;
}
