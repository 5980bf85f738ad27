#include <doctest.h>

#include <random>

#include "avgrare/ideals.hpp"
#include "avgrare/lemmas.hpp"
#include "avgrare/reduction.hpp"
#include "avgrare/search.hpp"
#include "helpers.hpp"

using namespace avgrare;
using namespace avgrare::test;

namespace {

std::vector<StepKind> kinds(const ReductionCertificate& cert) {
  std::vector<StepKind> out;
  for (const auto& s : cert.steps) out.push_back(s.kind);
  return out;
}

}  // namespace

TEST_CASE("trace_class_step") {
  const FunctionalMap g = trace_class_step(example2_map(), c);
  CHECK(g == fmap({b, b}));
  CHECK(ideals_bruteforce(g).family == example1_ideals());
  CHECK(ideals_bruteforce(g).family == trace_at(example2_ideals(), c));

  CHECK(trace_class_step(fmap({b, a}), b) == fmap({a}));
  CHECK_THROWS_AS(trace_class_step(example1_map(), b), InputError);
}

TEST_CASE("delete_root_step") {
  const FunctionalMap chain3 = fmap({b, c, c});
  CHECK(delete_root_step(chain3, c) == fmap({b, b}));

  const FunctionalMap star = fmap({c, c, c});
  const FunctionalMap rest = delete_root_step(star, c);
  CHECK(rest == fmap({a, b}));
  CHECK(nds(ideals_bruteforce(star).family) == -1);
  CHECK(nds(ideals_bruteforce(rest).family) == 0);
  const ReductionStep step = make_delete_step(star, c);
  CHECK(step.nds_before == -1);
  CHECK(step.nds_after == std::vector<std::int64_t>{0});

  CHECK(delete_root_step(fmap({a}), a).size() == 0);
  CHECK(make_delete_step(fmap({a}), a).nds_before == 0);

  CHECK_THROWS_AS(delete_root_step(chain3, b), InputError);              // not the root
  CHECK_THROWS_AS(delete_root_step(fmap({a, b}), a), InputError);        // disconnected
  CHECK_THROWS_AS(delete_root_step(example2_map(), b), NotPosetError);   // not a poset
}

TEST_CASE("split_step and the product identity") {
  const auto parts = split_step(FunctionalMap::identity(2));
  CHECK(parts == std::vector<FunctionalMap>{fmap({a}), fmap({a})});

  const auto chains = split_step(fmap({b, b, d, d}));
  CHECK(chains == std::vector<FunctionalMap>{fmap({b, b}), fmap({b, b})});
  const SetFamily whole = ideals_bruteforce(fmap({b, b, d, d})).family;
  CHECK(whole.size() == 9);
  CHECK(whole.total_size() == 18);
  CHECK(nds(whole) == 0);

  // A 2-chain beside a 3-star: 3 * (-1) + 5 * 0.
  const FunctionalMap mixed = fmap({b, b, e, e, e});
  const ReductionStep step = make_split_step(mixed);
  CHECK(step.nds_before == nds(ideals_bruteforce(mixed).family));
  CHECK(step.nds_before == -3);
  CHECK(step.nds_after == std::vector<std::int64_t>{0, -1});

  CHECK_THROWS_AS(split_step(fmap({c, c, c})), InputError);
}

TEST_CASE("union_sum_check") {
  CHECK(union_sum_check(family(2, {{}, {a}}), family(2, {{b}})));
  CHECK(union_sum_check(family(2, {{}}), family(2, {{}})));
  CHECK_THROWS_AS(union_sum_check(family(2, {{}}), family(3, {{}})), InputError);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) CHECK(union_sum_check(random_family(4, rng), random_family(4, rng)));
}

TEST_CASE("certificates for the worked examples") {
  const ReductionCertificate c1 = certify(example1_map());
  CHECK(kinds(c1) == std::vector<StepKind>{StepKind::DeleteRoot, StepKind::BaseSingleton});
  CHECK(c1.steps[0].removed == b);
  CHECK(c1.conclusion_nds == 0);

  const ReductionCertificate c2 = certify(example2_map());
  CHECK(kinds(c2) == std::vector<StepKind>{StepKind::TraceClass, StepKind::DeleteRoot,
                                           StepKind::BaseSingleton});
  CHECK(c2.steps[0].removed == c);
  CHECK(c2.steps[0].nds_before == -1);
  CHECK(c2.steps[1].nds_before == 0);
  CHECK(c2.steps[2].nds_before == 0);
  CHECK(c2.conclusion_nds == -1);

  const ReductionCertificate c0 = certify(fmap({a}));
  CHECK(kinds(c0) == std::vector<StepKind>{StepKind::BaseSingleton});
  CHECK(c0.conclusion_nds == 0);

  CHECK_THROWS_AS(certify(FunctionalMap()), InputError);
}

TEST_CASE("trace order: largest element of the first nontrivial class") {
  // Classes {a,b} and {c,d}; the first trace removes b.
  const ReductionCertificate cert = certify(fmap({b, a, d, c}));
  CHECK(cert.steps[0].kind == StepKind::TraceClass);
  CHECK(cert.steps[0].removed == b);
  CHECK(cert.steps[1].kind == StepKind::TraceClass);
  CHECK(cert.steps[1].removed == c);  // d, renumbered after removing b
}

TEST_CASE("tampered certificates are rejected") {
  ReductionCertificate cert = certify(fmap({b, c, b, c}));
  verify_certificate(cert);

  ReductionCertificate wrong_value = cert;
  wrong_value.steps[0].nds_before += 1;
  CHECK_THROWS_AS(verify_certificate(wrong_value), InconsistencyError);

  ReductionCertificate missing = cert;
  missing.steps.pop_back();
  CHECK_THROWS_AS(verify_certificate(missing), InconsistencyError);

  ReductionCertificate extra = cert;
  extra.steps.push_back(extra.steps.back());
  CHECK_THROWS_AS(verify_certificate(extra), InconsistencyError);
}

TEST_CASE("reduction invariants for n <= 5") {
  for (int n = 1; n <= 5; ++n)
    enumerate_maps(n, false, [](const FunctionalMap& f) {
      const ReductionCertificate cert = certify(f);
      REQUIRE(cert.conclusion_nds <= 0);
      REQUIRE(cert.conclusion_nds == nds(ideals_bruteforce(f).family));
      for (const ReductionStep& s : cert.steps)
        if (s.output_maps.empty()) REQUIRE(s.input_map.size() == 1);
    });
  CHECK(check_trace_reduction(5).passed);
  CHECK(check_maximal_rare(5).passed);
  CHECK(check_product(5).passed);
  CHECK(check_root_deletion(6).passed);
}
