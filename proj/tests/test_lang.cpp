#include <random>
#include <set>

#include "doctest.h"
#include "dynclass/lang.hpp"
#include "oracles.hpp"

using namespace dynclass;

namespace {

Substitution thue_morse() { return Substitution{Alphabet({"1", "2"}), {{0, 1}, {1, 0}}}; }
Substitution fibonacci() { return Substitution{Alphabet({"a", "b"}), {{0, 1}, {0}}}; }

SftGraph full_shift(std::size_t k, Sided sided = Sided::One) {
  std::vector<std::string> names;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < k; ++i) names.push_back(std::to_string(i));
  for (Symbol i = 0; i < k; ++i) {
    for (Symbol j = 0; j < k; ++j) edges.emplace_back(i, j);
  }
  return SftGraph(Alphabet(names), edges, sided);
}

// Every legal word of length n, by exhaustion over the alphabet.
std::set<Word> brute_words(const LanguageOracle& o, std::size_t n) {
  std::set<Word> out;
  const auto k = o.alphabet().size();
  Word w(n, 0);
  for (;;) {
    if (o.is_legal(w)) out.insert(w);
    std::size_t i = n;
    while (i > 0 && w[i - 1] + 1 == k) w[--i] = 0;
    if (i == 0) break;
    ++w[i - 1];
  }
  return out;
}

LengthSet brute_connectors(const LanguageOracle& o, const Word& v, const Word& y, std::size_t maxlen) {
  LengthSet out;
  for (std::size_t m = 0; m <= maxlen; ++m) {
    for (const auto& a : brute_words(o, m)) {
      Word w = v;
      w.insert(w.end(), a.begin(), a.end());
      w.insert(w.end(), y.begin(), y.end());
      if (o.is_legal(w)) {
        out.set(m);
        break;
      }
    }
  }
  return out;
}

Word zeros_then_ones(std::size_t r, std::size_t len) {
  Word w(len, 1);
  for (std::size_t i = 0; i < r && i < len; ++i) w[i] = 0;
  return w;
}

}  // namespace

TEST_CASE("substitutions") {
  CHECK(substitution_primitive(thue_morse()));
  CHECK(substitution_primitive(fibonacci()));
  CHECK_FALSE(substitution_primitive(Substitution{Alphabet({"a", "b"}), {{0, 0}, {1, 1}}}));
  CHECK_THROWS_AS(SubstitutionOracle(Substitution{Alphabet({"a", "b"}), {{0, 0}, {1, 1}}}), Error);
  CHECK(thue_morse().apply(Word{0, 1}) == Word{0, 1, 1, 0});
}

TEST_CASE("substitution factor counts") {
  SubstitutionOracle tm(thue_morse());
  const std::vector<std::size_t> tm_counts{2, 4, 6, 10, 12, 16, 20, 22};
  for (std::size_t n = 1; n <= tm_counts.size(); ++n) CHECK(tm.factors(n).size() == tm_counts[n - 1]);
  CHECK_FALSE(tm.is_legal(tm.alphabet().parse("111")));
  CHECK(tm.is_legal(tm.alphabet().parse("1221")));

  SubstitutionOracle fib(fibonacci());
  for (std::size_t n = 1; n <= 40; ++n) CHECK(fib.factors(n).size() == n + 1);
  CHECK_FALSE(fib.is_legal(fib.alphabet().parse("bb")));
  // long words force the factor table to grow
  CHECK(fib.factors(300).size() == 301);
}

TEST_CASE("factor languages are closed under factors and extendable") {
  SubstitutionOracle tm(thue_morse());
  for (std::size_t n = 2; n <= 20; ++n) {
    auto longer = tm.factors(n);
    std::set<Word> shorter_seen;
    for (const auto& w : longer) {
      Word a(w.begin() + 1, w.end()), b(w.begin(), w.end() - 1);
      CHECK(tm.is_legal(a));
      CHECK(tm.is_legal(b));
      shorter_seen.insert(a);
      shorter_seen.insert(b);
    }
    auto shorter = tm.factors(n - 1);
    CHECK(shorter_seen == std::set<Word>(shorter.begin(), shorter.end()));
  }
}

TEST_CASE("recurrence bound") {
  SubstitutionOracle tm(thue_morse());
  for (auto text : {"1", "12", "11", "121"}) {
    auto u = tm.alphabet().parse(text);
    const auto M = tm.recurrence_bound(u);
    for (const auto& f : tm.factors(M + u.size() - 1)) CHECK(word_occurs_in(u, f));
    if (M > 1) {
      bool some_miss = false;
      for (const auto& f : tm.factors(M + u.size() - 2)) some_miss = some_miss || !word_occurs_in(u, f);
      CHECK(some_miss);
    }
  }
}

TEST_CASE("gap shift legality") {
  GapShiftOracle g(3);
  const auto& a = g.alphabet();
  CHECK(g.is_legal(a.parse("10001")));
  CHECK_FALSE(g.is_legal(a.parse("101")));
  CHECK_FALSE(g.is_legal(a.parse("100001")));
  CHECK(g.is_legal(a.parse("10000000001")));
  CHECK(g.is_legal(a.parse("0000")));
  CHECK(brute_words(g, 3).size() == 7);
  CHECK(g.allowed_run(27));
  CHECK_FALSE(g.allowed_run(1));
  CHECK(enumerate_words(g, 6).size() == brute_words(g, 6).size());
}

TEST_CASE("lindenstrauss legality") {
  LindenstraussOracle o;
  const auto& a = o.alphabet();
  CHECK(brute_words(o, 2).size() == 8);
  CHECK_FALSE(o.is_legal(a.parse("00")));
  CHECK_FALSE(o.is_legal(a.parse("10101")));  // hat 111
  CHECK(o.is_legal(a.parse("10201")));
  CHECK(o.hat(a.parse("01020")) == Word{0, 1});
  CHECK(o.recurrence_bound(a.parse("0")) == 0);
}

TEST_CASE("specialised searches agree with the generic ones") {
  std::vector<std::shared_ptr<const LanguageOracle>> langs{
      std::make_shared<GapShiftOracle>(2),
      std::make_shared<GapShiftOracle>(3),
      std::make_shared<LindenstraussOracle>(),
      std::make_shared<SftOracle>(SftGraph(Alphabet({"a", "b", "c"}), {{0, 1}, {1, 2}, {2, 0}, {2, 2}})),
  };
  langs.push_back(product_oracle(langs[0], langs[3]));
  for (const auto& o : langs) {
    INFO(o->descriptor());
    auto tails = o->tail_representatives(6, 100000);
    auto generic = o->LanguageOracle::tail_representatives(6, 100000);
    // same number of left classes, every representative legal
    CHECK(tails.size() == generic.size());
    for (const auto& y : tails) CHECK(o->is_legal(y));
    for (std::size_t len = 1; len <= 2; ++len) {
      for (const auto& v : enumerate_words(*o, len)) {
        auto fast = o->connector_table(v, tails, 10);
        auto slow = o->LanguageOracle::connector_table(v, tails, 10);
        for (std::size_t j = 0; j < tails.size(); ++j) {
          INFO(o->alphabet().render(v), " -> ", o->alphabet().render(tails[j]));
          CHECK(fast[j] == slow[j]);
        }
      }
    }
  }
}

TEST_CASE("connector tables match exhaustive search") {
  GapShiftOracle g(2);
  auto tails = g.tail_representatives(7, 1000);
  for (const auto& v : enumerate_words(g, 2)) {
    auto table = g.connector_table(v, tails, 7);
    for (std::size_t j = 0; j < tails.size(); ++j) CHECK(table[j] == brute_connectors(g, v, tails[j], 7));
  }
}

TEST_CASE("witness engine agrees with exact decisions on small one-sided vertex shifts") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 80; ++trial) {
    auto g = oracle::random_essential(rng, 4, 0.35);
    const auto n = static_cast<std::uint32_t>(g.vertex_count());
    const WitnessScale scale{3, 2 * n + 4, 2 * n + 4, n + 2};
    SftOracle o(g);
    for (auto p : hierarchy_properties()) {
      INFO(to_string(p), " trial ", trial);
      const bool exact = decide_property(g, p).positive();
      const auto serial = witness_check(o, p, scale, Exec::Serial);
      const auto parallel = witness_check(o, p, scale, Exec::Parallel);
      CHECK(serial.positive() == exact);
      CHECK(parallel.status == serial.status);
      CHECK(parallel.evidence.items == serial.evidence.items);
    }
    CHECK(witness_check(o, PropertyId::EXACT, scale).positive() == decide_property(g, PropertyId::EXACT).positive());
  }
}

TEST_CASE("witness verdicts carry their scale") {
  SftOracle o(full_shift(2));
  auto v = witness_check(o, PropertyId::LEO, WitnessScale{});
  CHECK(v.status == Status::Witness);
  CHECK(scale_to_string(v.scale) == "ell=2,L=24,H=32,K=8");
  CHECK_THROWS_AS(witness_check(o, PropertyId::TM, WitnessScale{2, 24, 120, 8}), Error);
  CHECK_THROWS_AS(witness_check(o, PropertyId::DENSE_PERIODIC, WitnessScale{}), Error);
}

TEST_CASE("monotone in ell and K") {
  std::mt19937 rng(11);
  std::vector<std::shared_ptr<const LanguageOracle>> langs{
      std::make_shared<GapShiftOracle>(2), std::make_shared<LindenstraussOracle>()};
  for (int i = 0; i < 10; ++i) langs.push_back(std::make_shared<SftOracle>(oracle::random_essential(rng, 4, 0.4)));
  for (const auto& o : langs) {
    for (auto p : {PropertyId::TT, PropertyId::WM, PropertyId::TM, PropertyId::SET, PropertyId::LEO}) {
      INFO(o->descriptor(), " ", to_string(p));
      const bool small = witness_check(*o, p, WitnessScale{1, 10, 24, 4}).positive();
      const bool big_ell = witness_check(*o, p, WitnessScale{2, 10, 24, 4}).positive();
      const bool big_k = witness_check(*o, p, WitnessScale{1, 10, 24, 8}).positive();
      CHECK((!big_ell || small));
      CHECK((!big_k || small));
    }
  }
}

TEST_CASE("gap shift bounded refutation") {
  GapShiftOracle g(2);
  const auto one = g.alphabet().parse("1");
  auto tails = g.tail_representatives(12, 1000);
  for (std::size_t N : {1, 2, 4, 6}) {
    bool expect = false;
    for (const auto& y : tails) {
      auto c = brute_connectors(g, one, y, N);
      expect = expect || c.none();
    }
    auto v = refute_vst_bound(g, one, N, 12);
    CHECK((v.status == Status::RefutedBounded) == expect);
    if (expect) CHECK(scale_to_string(v.scale) == "bound=" + std::to_string(N));
  }
  // the tail 0^9 1 needs 7 more zeros after a 1
  auto far = g.connector_table(one, {zeros_then_ones(9, 12)}, 20);
  CHECK(far[0].test(7));
  CHECK_FALSE(far[0].test(6));
  CHECK(refute_vst_bound(g, one, 4, 12).status == Status::RefutedBounded);

  SftOracle full(full_shift(2));
  CHECK(refute_vst_bound(full, full.alphabet().parse("1"), 1, 12).status == Status::Unknown);
}

TEST_CASE("periodic word scan") {
  GapShiftOracle g(2);
  CHECK(periodic_word_scan(g, 3, 6).status == Status::Witness);
  SubstitutionOracle tm(thue_morse());
  auto none = periodic_word_scan(tm, 6, 3);
  CHECK(none.status == Status::RefutedBounded);
  CHECK(scale_to_string(none.scale) == "bound=6");
  LindenstraussOracle lind;
  CHECK(periodic_word_scan(lind, 6, 4).status == Status::RefutedBounded);
  CHECK_THROWS_AS(periodic_word_scan(g, 0, 3), Error);
}

TEST_CASE("lindenstrauss uniform connectors of length twice the recurrence bound") {
  LindenstraussOracle o;
  const std::size_t L = 10;
  auto tails = o.tail_representatives(L, 100000);
  for (std::size_t len = 1; len <= 2; ++len) {
    for (const auto& v : enumerate_words(o, len)) {
      const auto M = o.recurrence_bound(v);
      if (M == 0) continue;
      INFO(o.alphabet().render(v), " M=", M);
      REQUIRE(2 * M <= 100);
      for (const auto& bits : o.connector_table(v, tails, 2 * M)) CHECK(bits.test(2 * M));
      auto m = uniform_connector_length(o, v, L, 2 * M);
      REQUIRE(m.has_value());
      CHECK(*m <= 2 * M);
    }
  }
}

TEST_CASE("product oracle matches the tensor graph") {
  auto g1 = SftGraph(Alphabet({"a", "b"}), {{0, 0}, {0, 1}, {1, 0}});
  auto g2 = SftGraph(Alphabet({"x", "y", "z"}), {{0, 1}, {1, 2}, {2, 0}, {2, 2}});
  auto p = product_oracle(std::make_shared<SftOracle>(g1), std::make_shared<SftOracle>(g2));
  auto tensor = build_product(g1, g2);
  for (std::size_t len = 1; len <= 4; ++len) {
    auto words = enumerate_words(*p, len);
    CHECK(words.size() == enumerate_words(SftOracle(tensor), len).size());
    for (const auto& w : words) CHECK(tensor.is_legal(tensor.vertices().parse(p->alphabet().render(w))));
  }
  for (auto prop : {PropertyId::TT, PropertyId::TM, PropertyId::LEO}) {
    CHECK(witness_check(*p, prop, WitnessScale{2, 10, 32, 8}).positive() ==
          decide_property(tensor, prop).positive());
  }
  const auto* prod = dynamic_cast<const ProductOracle*>(p.get());
  REQUIRE(prod);
  auto w = enumerate_words(*p, 3).front();
  auto [a, b] = prod->split(w);
  CHECK(prod->join(a, b) == w);
}

TEST_CASE("reference examples") {
  GapShiftOracle gap(3);
  const WitnessScale s{2, 16, 24, 8};
  CHECK(witness_check(gap, PropertyId::TM, s).status == Status::Witness);
  CHECK(witness_check(gap, PropertyId::SPT, s).status == Status::Witness);

  const auto one = gap.alphabet().parse("1");
  auto four = refute_vst_bound(gap, one, 4, 30);
  CHECK(four.status == Status::RefutedBounded);
  CHECK(scale_to_string(four.scale) == "bound=4");
  CHECK(refute_vst_bound(gap, one, 1, 30).status == Status::RefutedBounded);
  // the leading run 10 needs 17 more zeros
  auto ten = gap.connector_table(one, {zeros_then_ones(10, 30)}, 40);
  CHECK(ten[0].test(17));
  CHECK_FALSE((ten[0] & LengthSet((1ull << 17) - 1)).any());
  CHECK(refute_vst_bound(SftOracle(full_shift(2)), Word{0}, 3, 30).status == Status::Unknown);

  LindenstraussOracle lind;
  auto leo = witness_check(lind, PropertyId::LEO, WitnessScale{2, 12, 40, 1});
  CHECK(leo.status == Status::Witness);
  for (std::size_t len = 1; len <= 2; ++len) {
    for (const auto& v : enumerate_words(lind, len)) {
      const auto M = lind.recurrence_bound(v);
      auto m = uniform_connector_length(lind, v, 12, 40);
      REQUIRE(m.has_value());
      if (M > 0) CHECK(*m <= v.size() + 2 * M);
    }
  }

  CHECK(periodic_word_scan(lind, 4, 8).status == Status::RefutedBounded);
  CHECK(periodic_word_scan(lind, 6, 12).status == Status::RefutedBounded);
  CHECK(periodic_word_scan(SftOracle(full_shift(2)), 1, 8).status == Status::Witness);
  SftOracle golden(SftGraph(Alphabet({"0", "1"}), {{0, 0}, {0, 1}, {1, 0}}));
  auto alt = periodic_word_scan(golden, 2, 8);
  CHECK(alt.status == Status::Witness);

  CHECK(enumerate_words(SftOracle(full_shift(2)), 3).size() == 8);
  auto ff = product_oracle(std::make_shared<SftOracle>(full_shift(2)), std::make_shared<SftOracle>(full_shift(2)));
  CHECK(enumerate_words(*ff, 3).size() == 64);
  auto gf = product_oracle(std::make_shared<GapShiftOracle>(3), std::make_shared<SftOracle>(full_shift(2)));
  CHECK(enumerate_words(*gf, 3).size() == 7 * 8);
  auto tm = std::make_shared<SubstitutionOracle>(thue_morse());
  auto tt = product_oracle(tm, tm);
  CHECK(enumerate_words(*tt, 4).size() == 100);
}

TEST_CASE("random legal words have legal factors") {
  std::mt19937 rng(5);
  std::vector<std::shared_ptr<const LanguageOracle>> langs{
      std::make_shared<GapShiftOracle>(3), std::make_shared<LindenstraussOracle>(),
      std::make_shared<SubstitutionOracle>(thue_morse()), std::make_shared<SubstitutionOracle>(fibonacci())};
  for (const auto& o : langs) {
    const auto k = o->alphabet().size();
    for (int trial = 0; trial < 500; ++trial) {
      // random legal word grown one symbol at a time
      std::uniform_int_distribution<std::size_t> len(1, 30);
      const auto target = len(rng);
      Word w;
      while (w.size() < target) {
        std::vector<Symbol> options;
        for (Symbol c = 0; c < k; ++c) {
          w.push_back(c);
          if (o->is_legal(w)) options.push_back(c);
          w.pop_back();
        }
        REQUIRE_FALSE(options.empty());
        w.push_back(options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)]);
      }
      for (std::size_t i = 0; i < w.size(); ++i) {
        for (std::size_t j = i + 1; j <= w.size(); ++j) {
          REQUIRE(o->is_legal(std::span<const Symbol>(w).subspan(i, j - i)));
        }
      }
    }
  }
}
