#include "doctest.h"
#include "dynclass/sft.hpp"
#include "oracles.hpp"

using namespace dynclass;

namespace {

SftGraph make(std::vector<std::string> names, std::vector<std::pair<std::string, std::string>> es,
              Sided sided = Sided::One) {
  Alphabet a(names);
  std::vector<Edge> edges;
  for (auto& [x, y] : es) edges.emplace_back(*a.index_of(x), *a.index_of(y));
  return SftGraph(a, edges, sided);
}

SftGraph full2(Sided s = Sided::One) {
  return make({"0", "1"}, {{"0", "0"}, {"0", "1"}, {"1", "0"}, {"1", "1"}}, s);
}
SftGraph golden() { return make({"0", "1"}, {{"0", "0"}, {"0", "1"}, {"1", "0"}}); }
SftGraph two_cycle() { return make({"a", "b"}, {{"a", "b"}, {"b", "a"}}); }

EventuallyPeriodicSet evens() { return EventuallyPeriodicSet::from_parts({}, {false, true}); }
EventuallyPeriodicSet from2() { return EventuallyPeriodicSet::from_parts({false}, {true}); }

Status st(const SftGraph& g, PropertyId p) { return decide_property(g, p).status; }

}  // namespace

TEST_CASE("essentialize") {
  auto g = essentialize(full2());
  CHECK(g.vertex_count() == 2);
  CHECK_THROWS_AS(essentialize(make({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}})), Error);
  auto h = essentialize(make({"a", "b"}, {{"a", "a"}, {"a", "b"}}));
  CHECK(h.vertex_count() == 1);
  CHECK(h.vertices().symbol(0) == "a");
  CHECK(h.has_edge(0, 0));
}

TEST_CASE("period") {
  CHECK(graph_period(make({"a"}, {{"a", "a"}})) == 1);
  CHECK(graph_period(two_cycle()) == 2);
  CHECK(graph_period(golden()) == 1);
  CHECK_THROWS_AS(graph_period(make({"a", "b"}, {{"a", "a"}, {"b", "b"}, {"a", "b"}})), Error);
}

TEST_CASE("reach profile") {
  auto full = reach_profile(full2());
  CHECK(full.at(0, 1) == EventuallyPeriodicSet::everything());
  CHECK(reach_profile(two_cycle()).at(0, 0) == evens());
  CHECK(reach_profile(golden()).at(1, 1) == from2());
  CHECK_THROWS_AS(reach_profile(two_cycle(), 1), Error);
  auto par = reach_profile(golden(), kDefaultPowerCap, Exec::Parallel);
  CHECK(par.at(1, 1) == from2());
}

TEST_CASE("hitting sets") {
  Alphabet bin({"0", "1"});
  CHECK(hitting_set(full2(), Word{0}, Word{0}) == EventuallyPeriodicSet::everything());
  CHECK(hitting_set(golden(), Word{1}, Word{1}) == from2());
  CHECK(hitting_set(two_cycle(), Word{0}, Word{0}) == evens());
  CHECK_THROWS_AS(hitting_set(golden(), Word{1, 1}, Word{0}), Error);
  // overlap region: u = 010, v = 10 on golden mean
  auto s = hitting_set(golden(), Word{0, 1, 0}, Word{1, 0});
  CHECK(s.contains(1));
  CHECK_FALSE(s.contains(2));
}

TEST_CASE("hitting sets match brute force on random graphs") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    auto g = oracle::random_essential(rng, 4);
    auto profile = reach_profile(g);
    std::uniform_int_distribution<std::size_t> len(1, 3);
    for (int k = 0; k < 4; ++k) {
      auto u = oracle::random_path(rng, g, len(rng));
      auto v = oracle::random_path(rng, g, len(rng));
      auto s = hitting_set(g, profile, u, v);
      for (std::size_t n = 1; n <= 40; ++n) REQUIRE(s.contains(n) == oracle::hits(g, u, v, n));
    }
  }
}

TEST_CASE("decisions: full one-sided shift") {
  auto g = full2();
  for (auto p : all_properties()) {
    CHECK(st(g, p) == (p == PropertyId::M ? Status::Refuted : Status::Proved));
  }
  CHECK(decide_property(g, PropertyId::TM).evidence.summary == "primitive; period 1");
}

TEST_CASE("decisions: full two-sided shift") {
  auto g = full2(Sided::Two);
  CHECK(st(g, PropertyId::TM) == Status::Proved);
  CHECK(st(g, PropertyId::M) == Status::Refuted);
  CHECK(st(g, PropertyId::ST) == Status::Refuted);
  CHECK(st(g, PropertyId::VST) == Status::Refuted);
  CHECK(st(g, PropertyId::EXACT) == Status::Refuted);
  CHECK(st(g, PropertyId::LEO) == Status::Refuted);
  CHECK(st(make({"a"}, {{"a", "a"}}, Sided::Two), PropertyId::EXACT) == Status::Proved);
}

TEST_CASE("decisions: two-cycle") {
  auto g = two_cycle();
  CHECK(st(g, PropertyId::TT) == Status::Proved);
  CHECK(st(g, PropertyId::M) == Status::Proved);
  CHECK(st(g, PropertyId::VST) == Status::Proved);
  CHECK(st(g, PropertyId::TM) == Status::Refuted);
  CHECK(st(g, PropertyId::WM) == Status::Refuted);
  CHECK(st(g, PropertyId::ET) == Status::Refuted);
  CHECK(st(g, PropertyId::EXACT) == Status::Refuted);
}

TEST_CASE("dense periodic is decided per edge") {
  auto g = make({"a", "b"}, {{"a", "a"}, {"a", "b"}, {"b", "b"}});
  CHECK(st(g, PropertyId::DENSE_PERIODIC) == Status::Refuted);
  CHECK(st(g, PropertyId::TT) == Status::Refuted);
  CHECK(st(golden(), PropertyId::DENSE_PERIODIC) == Status::Proved);
}

TEST_CASE("invariant cores") {
  auto g = make({"0", "1"}, {{"0", "0"}, {"0", "1"}, {"1", "1"}});
  CHECK(invariant_core(g, {0}, CoreMode::Plus) == std::vector<Symbol>{0});
  CHECK(invariant_core(g, {0}, CoreMode::Minus) == std::vector<Symbol>{0});
  CHECK(invariant_core(g, {1}, CoreMode::Minus).empty());
  CHECK(invariant_core(two_cycle(), {0}, CoreMode::Plus).empty());
  CHECK(invariant_core(two_cycle(), {0, 1}, CoreMode::WeakMinus).size() == 2);
}

TEST_CASE("products") {
  auto p = build_product(full2(), full2());
  CHECK(p.vertex_count() == 4);
  CHECK(p.edges().size() == 16);
  CHECK(primitive(p));
  auto q = build_product(two_cycle(), two_cycle());
  CHECK(strongly_connected_components(q).size() == 2);
  auto r = build_product(full2(), two_cycle());
  CHECK(strongly_connected(r));
  CHECK(graph_period(r) == 2);
  CHECK(st(r, PropertyId::TT) == Status::Proved);
  CHECK(st(r, PropertyId::TM) == Status::Refuted);
  auto id = build_product(golden(), make({"*"}, {{"*", "*"}}));
  CHECK(id.edges().size() == golden().edges().size());
  CHECK(id.vertices().symbol(1) == "(1,*)");
}

TEST_CASE("higher block recoding") {
  Alphabet bin({"0", "1"});
  auto g = higher_block_recode(bin, {bin.parse("11")});
  CHECK(g.vertices().symbols() == std::vector<std::string>{"0", "1"});
  CHECK(g.edges() == golden().edges());
  auto c = higher_block_recode(bin, {bin.parse("00"), bin.parse("11")});
  CHECK(graph_period(c) == 2);
  CHECK(c.edges().size() == 2);
  Alphabet tri({"0", "1", "2"});
  auto x0 = higher_block_recode(tri, {tri.parse("00")});
  CHECK(x0.vertex_count() == 3);
  CHECK(x0.edges().size() == 8);
  CHECK_FALSE(x0.has_edge(0, 0));
  CHECK_THROWS_AS(higher_block_recode(bin, {bin.parse("0"), bin.parse("1")}), Error);
  auto three = higher_block_recode(bin, {bin.parse("111")});
  CHECK(three.vertex_count() == 4);
}

TEST_CASE("structural properties on random graphs") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    auto g = oracle::random_essential(rng, 5);
    auto profile = reach_profile(g);
    const bool tm = st(g, PropertyId::TM) == Status::Proved;
    bool cofinite = true;
    for (Symbol i = 0; i < g.vertex_count(); ++i) {
      for (Symbol j = 0; j < g.vertex_count(); ++j) {
        auto s = hitting_set(g, profile, Word{i}, Word{j});
        cofinite = cofinite && s.classify() == SetClass::Cofinite;
        if (st(g, PropertyId::VST) == Status::Proved) {
          auto c = s.classify();
          CHECK((c == SetClass::Cofinite || c == SetClass::SyndeticNotCofinite));
        }
      }
    }
    CHECK(tm == cofinite);
    // single cycle, or two distinct cycles through a common component
    if (strongly_connected(g)) {
      bool cycle = st(g, PropertyId::M) == Status::Proved;
      bool branching = false;
      for (Symbol v = 0; v < g.vertex_count(); ++v) branching |= g.successors(v).size() > 1;
      CHECK(cycle != branching);
    }
    // products with a mixing or LEO factor
    auto h = oracle::random_essential(rng, 3);
    auto gh = build_product(g, h);
    if (st(h, PropertyId::LEO) == Status::Proved && st(g, PropertyId::ST) == Status::Proved) {
      CHECK(st(gh, PropertyId::ST) == Status::Proved);
    }
    if (st(h, PropertyId::TM) == Status::Proved && st(g, PropertyId::TT) == Status::Proved) {
      CHECK(st(gh, PropertyId::TT) == Status::Proved);
    }
  }
}

TEST_CASE("parallel and serial multiply agree") {
  std::mt19937 rng(3);
  std::bernoulli_distribution bit(0.3);
  for (std::size_t n : {1u, 7u, 64u, 65u, 130u}) {
    BoolMatrix a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        a.set(i, j, bit(rng));
        b.set(i, j, bit(rng));
      }
    }
    auto s = multiply(a, b, Exec::Serial);
    CHECK(s == multiply(a, b, Exec::Parallel));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        bool want = false;
        for (std::size_t k = 0; k < n; ++k) want = want || (a.get(i, k) && b.get(k, j));
        REQUIRE(s.get(i, j) == want);
      }
    }
  }
}
