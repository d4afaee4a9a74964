#include <set>

#include "doctest.h"
#include "dynclass/corpus.hpp"

using namespace dynclass;
using P = PropertyId;

namespace {

Verdict with_status(Status s) {
  Verdict v;
  v.status = s;
  return v;
}

}  // namespace

TEST_CASE("corpus shape") {
  const auto& es = corpus_entries();
  CHECK(es.size() == 14);
  std::set<std::string> ids;
  for (const auto& e : es) {
    CAPTURE(e.id);
    CHECK(ids.insert(e.id).second);
    CHECK_FALSE(e.expected.empty());
    CHECK_FALSE(e.system.description.empty());
    CHECK(e.system.id == e.id);
    CHECK_NOTHROW(build_system(e.system));
  }
  for (const char* id : {"full_one_sided", "two_sided_full", "fibonacci", "gap3", "lindenstrauss", "map_f", "map_g",
                         "ladder"}) {
    CHECK(find_entry(id) != nullptr);
  }
  CHECK(find_entry("nope") == nullptr);
}

TEST_CASE("expectation matching") {
  Expectation t{Truth::True, true, ""};
  Expectation f{Truth::False, true, ""};
  Expectation soft_f{Truth::False, false, ""};
  Expectation u{Truth::Untested, true, ""};

  CHECK(expectation_mismatch(with_status(Status::Proved), t).empty());
  CHECK_FALSE(expectation_mismatch(with_status(Status::Proved), f).empty());
  CHECK_FALSE(expectation_mismatch(with_status(Status::Refuted), t).empty());
  CHECK(expectation_mismatch(with_status(Status::Refuted), f).empty());
  CHECK(expectation_mismatch(with_status(Status::Witness), t).empty());
  CHECK_FALSE(expectation_mismatch(with_status(Status::Witness), f).empty());
  CHECK(expectation_mismatch(with_status(Status::Witness), soft_f).empty());
  CHECK_FALSE(expectation_mismatch(with_status(Status::NoWitness), t).empty());
  CHECK(expectation_mismatch(with_status(Status::NoWitness), f).empty());
  CHECK_FALSE(expectation_mismatch(with_status(Status::RefutedBounded), t).empty());
  CHECK(expectation_mismatch(with_status(Status::RefutedBounded), f).empty());
  for (Status s : {Status::Proved, Status::Refuted, Status::Witness, Status::NoWitness, Status::RefutedBounded,
                   Status::Unknown}) {
    CHECK(expectation_mismatch(with_status(s), u).empty());
  }
  CHECK(expectation_mismatch(with_status(Status::Unknown), t).empty());
  CHECK(expectation_mismatch(with_status(Status::Unknown), f).empty());
}

TEST_CASE("whole corpus passes") {
  auto results = run_corpus();
  REQUIRE(results.size() == corpus_entries().size());
  std::set<int> statements;
  for (const auto& r : results) {
    CAPTURE(r.id);
    for (const auto& f : r.failures) MESSAGE(f);
    CHECK(r.pass);
    CHECK(r.report.contradictions.empty());
    CHECK(r.seconds < 60.0);
    for (const auto& n : r.report.non_implications) statements.insert(n.statement);
    CHECK(r.report.gaps.size() == 1);
  }
  CHECK(statements == std::set<int>{1, 2, 3, 4, 5});
}

TEST_CASE("selected entries") {
  auto rs = run_corpus({}, {"two_sided_full", "map_g"});
  REQUIRE(rs.size() == 2);
  const auto& full = rs[0].report;
  CHECK(full.find(P::TM)->status == Status::Proved);
  for (P p : {P::EXACT, P::ST, P::M}) CHECK(full.find(p)->status == Status::Refuted);
  const auto& g = rs[1].report;
  CHECK(g.find(P::FULLY_EXACT)->status == Status::Witness);
  CHECK(g.find(P::TT)->status == Status::Refuted);

  CorpusOverrides tiny;
  tiny.words = WitnessScale{1, 8, 8, 2};
  tiny.eps = "1/16";
  tiny.horizon = 10;
  auto small = run_corpus(tiny, {"golden_mean", "tent"});
  for (const auto& r : small) {
    CAPTURE(r.id);
    CHECK(r.pass);
  }
}
