#include <random>
#include <set>

#include "doctest.h"
#include "dynclass/lattice.hpp"
#include "dynclass/sft.hpp"
#include "oracles.hpp"

using namespace dynclass;
using P = PropertyId;

namespace {

VerdictTable only(std::initializer_list<std::pair<P, Status>> entries, SystemFlags flags = {}) {
  VerdictTable t;
  t.flags = flags;
  for (auto [p, s] : entries) {
    Verdict v;
    switch (s) {
      case Status::Proved: v = Verdict::proved({"test", "given", {}}); break;
      case Status::Refuted: v = Verdict::refuted({"test", "given", {}}); break;
      case Status::Witness: v = Verdict::witness(WitnessScale{}, {"test", "given", {}}); break;
      case Status::NoWitness: v = Verdict::no_witness(WitnessScale{}, {"test", "given", {}}); break;
      case Status::RefutedBounded: v = Verdict::refuted_bounded(Bound{4}, {"test", "given", {}}); break;
      case Status::Unknown: v = Verdict::unknown("given"); break;
    }
    t.verdicts[p] = v;
  }
  return t;
}

std::set<P> with_status(const VerdictTable& t, Status s) {
  std::set<P> out;
  for (const auto& [p, v] : t.verdicts) {
    if (v.status == s) out.insert(p);
  }
  return out;
}

bool has_edge(P from, P to, Condition c, bool negates = false) {
  for (const auto& e : edge_ledger()) {
    if (e.from.size() == 1 && e.from[0] == from && e.to == to && e.condition == c && e.negates == negates) {
      return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("ledger shape") {
  CHECK(has_edge(P::LEO, P::VST, Condition::None));
  CHECK(has_edge(P::ST, P::M, Condition::Invertible));
  CHECK(has_edge(P::SET, P::FULLY_EXACT, Condition::None));
  CHECK(has_edge(P::ST, P::VST, Condition::OpenMap));
  CHECK(has_edge(P::M, P::FULLY_EXACT, Condition::MinimalNontrivial, true));
  std::set<std::string> ids;
  for (const auto& e : edge_ledger()) {
    CHECK_FALSE(e.citation.empty());
    CHECK(ids.insert(e.rule_id).second);
    // nothing reaches M without the invertible flag
    if (e.to == P::M && !e.negates) CHECK(e.condition == Condition::Invertible);
  }
  CHECK(edge_ledger().size() == 24);
  CHECK(&edge_ledger() == &edge_ledger());
}

TEST_CASE("LEO alone closes to twelve proved properties") {
  auto t = propagate(only({{P::LEO, Status::Proved}}));
  std::set<P> expect = {P::TM, P::SPT, P::VST, P::WM, P::SET, P::ST, P::ET, P::TT,
                        P::EXACT, P::FULLY_EXACT, P::DENSE_PERIODIC, P::ITER_ALMOST_OPEN};
  auto proved = with_status(t, Status::Proved);
  proved.erase(P::LEO);
  CHECK(proved == expect);
  CHECK(proved.size() == 12);
  // a nontrivial fully exact map cannot be minimal
  CHECK(t.verdicts.at(P::M).status == Status::Refuted);
  CHECK(t.verdicts.at(P::M).provenance.rule_id == "m-not-fe");

  auto trivial = propagate(only({{P::LEO, Status::Proved}}, {false, false, true}));
  CHECK_FALSE(trivial.verdicts.count(P::M));

  const auto& tm = t.verdicts.at(P::TM);
  CHECK(tm.provenance.propagated);
  CHECK(tm.provenance.from == P::LEO);
  CHECK(tm.provenance.rule_id == "leo-tm");
  CHECK(tm.provenance.chain.front() == "LEO PROVED (direct)");
  CHECK_FALSE(t.verdicts.at(P::LEO).provenance.propagated);
}

TEST_CASE("TT refuted contrapositive closure") {
  auto t = propagate(only({{P::TT, Status::Refuted}}));
  std::set<P> expect = {P::TT, P::ST, P::VST, P::M, P::WM, P::TM, P::ET, P::SET, P::SPT, P::LEO};
  CHECK(with_status(t, Status::Refuted) == expect);
  CHECK(with_status(t, Status::Proved).empty());
}

TEST_CASE("invertible nontrivial mixing system") {
  SystemFlags inv{true, true, false};
  auto t = propagate(only({{P::TM, Status::Proved}}, inv));
  for (P p : {P::EXACT, P::ET, P::SET, P::SPT, P::LEO, P::FULLY_EXACT}) {
    CAPTURE(to_string(p));
    REQUIRE(t.verdicts.count(p));
    CHECK(t.verdicts.at(p).status == Status::Refuted);
  }
  CHECK(t.verdicts.at(P::EXACT).provenance.rule_id == "inv-not-exact");
  CHECK(t.verdicts.at(P::WM).status == Status::Proved);
  CHECK(t.verdicts.at(P::TT).status == Status::Proved);
  CHECK(t.verdicts.at(P::TM).status == Status::Proved);

  auto st = propagate(only({{P::ST, Status::Refuted}}, inv));
  CHECK(st.verdicts.at(P::M).status == Status::Refuted);
  CHECK(st.verdicts.at(P::VST).status == Status::Refuted);
  auto m = propagate(only({{P::ST, Status::Proved}}, inv));
  CHECK(m.verdicts.at(P::M).status == Status::Proved);
  CHECK(m.verdicts.at(P::VST).status == Status::Proved);
  // without the flag ST says nothing about M
  auto plain = propagate(only({{P::ST, Status::Proved}}));
  CHECK_FALSE(plain.verdicts.count(P::M));
  CHECK_FALSE(plain.verdicts.count(P::VST));
  auto open = propagate(only({{P::ST, Status::Proved}}, {true, false, false}));
  CHECK(open.verdicts.at(P::VST).status == Status::Proved);
  CHECK_FALSE(open.verdicts.count(P::M));
}

TEST_CASE("conjunction edge") {
  auto t = propagate(only({{P::TT, Status::Proved}, {P::FULLY_EXACT, Status::Proved}}));
  CHECK(t.verdicts.at(P::ET).status == Status::Proved);
  CHECK(t.verdicts.at(P::ET).provenance.rule_id == "tt-fe-et");
  auto back = propagate(only({{P::TT, Status::Proved}, {P::ET, Status::Refuted}}));
  CHECK(back.verdicts.at(P::FULLY_EXACT).status == Status::Refuted);
  auto half = propagate(only({{P::ET, Status::Refuted}}));
  CHECK_FALSE(half.verdicts.count(P::FULLY_EXACT));
}

TEST_CASE("contrapositive completeness on unconditional edges") {
  for (const auto& e : edge_ledger()) {
    if (e.condition != Condition::None || e.from.size() != 1 || e.negates) continue;
    CAPTURE(e.rule_id);
    auto t = propagate(only({{e.to, Status::Refuted}}));
    REQUIRE(t.verdicts.count(e.from[0]));
    CHECK(t.verdicts.at(e.from[0]).status == Status::Refuted);
    auto f = propagate(only({{e.from[0], Status::Proved}}));
    CHECK(f.verdicts.at(e.to).status == Status::Proved);
  }
}

TEST_CASE("contradictions carry both chains") {
  auto t = only({{P::LEO, Status::Proved}, {P::TT, Status::Refuted}});
  try {
    propagate(t);
    FAIL("expected contradiction");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Contradiction);
    std::string msg = e.what();
    CHECK(msg.find("chain A") != std::string::npos);
    CHECK(msg.find("chain B") != std::string::npos);
    CHECK(msg.find("LEO PROVED (direct)") != std::string::npos);
    CHECK(msg.find("TT REFUTED (direct)") != std::string::npos);
  }
  auto r = check_consistency(t);
  CHECK_FALSE(r.contradictions.empty());
}

TEST_CASE("finite-scale verdicts never propagate") {
  auto t = propagate(only({{P::LEO, Status::Witness}, {P::ST, Status::NoWitness},
                           {P::VST, Status::RefutedBounded}}));
  CHECK(t.verdicts.size() == 3);
  for (const auto& [p, v] : t.verdicts) CHECK_FALSE(v.provenance.propagated);
  auto r = check_consistency(t);
  CHECK_FALSE(r.tensions.empty());
}

TEST_CASE("direct verdicts are kept and disagreements noted") {
  auto t = propagate(only({{P::LEO, Status::Proved}, {P::TM, Status::NoWitness}}));
  CHECK(t.verdicts.at(P::TM).status == Status::NoWitness);
  CHECK_FALSE(t.verdicts.at(P::TM).provenance.propagated);
  REQUIRE(t.notes.size() == 1);
  CHECK(t.notes[0].find("TM") == 0);
  auto again = propagate(t);
  CHECK(again == t);
}

TEST_CASE("non-implication patterns") {
  auto ladder = propagate(only({{P::TM, Status::Witness}, {P::ET, Status::Witness}, {P::ST, Status::Refuted}}));
  auto r = check_consistency(ladder);
  std::set<std::string> labels;
  for (const auto& n : r.instances) labels.insert(n.label);
  CHECK(labels.count("Mixing ⇏ Strongly Transitive"));
  CHECK(labels.count("Exact Transitive & Mixing ⇏ Strongly Transitive"));
  REQUIRE(r.gaps.size() == 1);
  CHECK(r.gaps[0].find("no constructive example available") != std::string::npos);

  auto gap = check_consistency(only({{P::SPT, Status::Witness}, {P::TM, Status::Witness},
                                     {P::VST, Status::RefutedBounded}}));
  REQUIRE(gap.instances.size() == 1);
  CHECK(gap.instances[0].statement == 4);
  CHECK_FALSE(gap.instances[0].certified);

  auto full = check_consistency(propagate(only({{P::LEO, Status::Proved}, {P::M, Status::Refuted}},
                                               {true, false, false})));
  bool stmt2 = false;
  for (const auto& n : full.instances) stmt2 |= n.statement == 2 && n.certified;
  CHECK(stmt2);
}

TEST_CASE("propagation is sound against exact graph decisions") {
  std::mt19937 rng(20261019);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    Sided sided = trial % 3 == 0 ? Sided::Two : Sided::One;
    auto g = essentialize(oracle::random_essential(rng, 4, 0.45, sided));
    SystemFlags flags{true, g.invertible(), g.vertex_count() == 1};
    std::map<P, Verdict> truth;
    for (P p : all_properties()) truth[p] = decide_property(g, p);

    VerdictTable t;
    t.flags = flags;
    std::bernoulli_distribution keep(0.3);
    for (const auto& [p, v] : truth) {
      if (keep(rng)) t.verdicts[p] = v;
    }
    VerdictTable closed;
    REQUIRE_NOTHROW(closed = propagate(t));
    for (const auto& [p, v] : closed.verdicts) {
      CAPTURE(to_string(p));
      CHECK(v.status == truth[p].status);
    }
    CHECK(propagate(closed) == closed);
    for (const auto& [p, v] : t.verdicts) CHECK(closed.verdicts.at(p) == v);
    ++checked;
  }
  CHECK(checked == 300);
}
