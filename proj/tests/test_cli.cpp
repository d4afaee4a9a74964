#include "doctest.h"
#include "dynclass/cli.hpp"
#include "dynclass/corpus.hpp"
#include "dynclass/interval.hpp"
#include "dynclass/lang.hpp"

using namespace dynclass;
using P = PropertyId;

namespace {

const char* kGolden = R"({"type":"sft","vertices":["0","1"],"edges":[["0","0"],["0","1"],["1","0"]],"sided":"one"})";
const char* kMapF =
    R"({"type":"pl_map","domain":["-1","1"],"breakpoints":["-1","-1/2","1/2","1"],"values":["0","-1","1","0"]})";

ErrorCode code_of(std::string_view text) {
  try {
    parse_system_file(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::EmptySystem;  // sentinel: no error
}

std::string message_of(std::string_view text) {
  try {
    parse_system_file(text);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("descriptor examples parse") {
  auto g = parse_system_file(kGolden);
  REQUIRE(std::holds_alternative<SftSpec>(g.body));
  auto b = build_system(g);
  REQUIRE(b.graph);
  CHECK(b.graph->vertex_count() == 2);
  CHECK(b.flags.open_map);
  CHECK(primitive(*b.graph));

  auto gap = parse_system_file(R"({"type":"gap_shift","base":3})");
  CHECK(std::get<GapShiftSpec>(gap.body).base == 3);
  CHECK(build_system(gap).oracle->descriptor() == "gap_shift");

  auto f = parse_system_file(kMapF);
  auto bf = build_system(f);
  REQUIRE(bf.map);
  CHECK((*bf.map)(parse_rational("-3/4")) == parse_rational("-1/2"));
  CHECK((*bf.map)(parse_rational("1/4")) == parse_rational("1/2"));
  CHECK_FALSE(bf.flags.invertible);

  auto prod = parse_system_file(R"({"type":"product","factors":[{"type":"gap_shift","base":3},)"
                                R"({"type":"sft","vertices":["0","1"],"edges":[["0","0"],["0","1"],["1","0"],["1","1"]]}]})");
  CHECK(build_system(prod).oracle->alphabet().size() == 4);
  auto sprod = parse_system_file(R"({"type":"product","factors":[)" + std::string(kGolden) + "," + kGolden + "]}");
  CHECK(build_system(sprod).graph->vertex_count() == 4);

  auto fw = parse_system_file(R"({"type":"forbidden_words","alphabet":["0","1"],"words":["11"]})");
  auto bfw = build_system(fw);
  REQUIRE(bfw.graph);
  CHECK(bfw.graph->vertex_count() == 2);

  auto inc = parse_system_file(R"({"type":"pl_map","domain":["0","1"],"breakpoints":["0","1/2","1"],"values":["0","1/4","1"]})");
  CHECK(build_system(inc).flags.invertible);
}

TEST_CASE("descriptor errors") {
  CHECK(code_of("{\"type\":\"sft\",\n  \"vertices\": [\"0\",}") == ErrorCode::ParseError);
  CHECK(message_of("{\"type\":\"sft\",\n  \"vertices\": [\"0\",}").find("line 2, column") != std::string::npos);
  CHECK(code_of(R"({"type":"gap_shift","base":3,"extra":1})") == ErrorCode::ValidationError);
  CHECK(message_of(R"({"type":"gap_shift","base":3,"extra":1})").find("$.extra") != std::string::npos);
  CHECK(message_of(R"({"type":"sft","vertices":["0"],"edges":[["0","9"]]})").find("$.edges[0][1]") != std::string::npos);
  CHECK(message_of(R"({"type":"pl_map","domain":["0","1"],"breakpoints":["0","1/0","1"],"values":["0","1","0"]})")
            .find("$.breakpoints[1]") != std::string::npos);
  CHECK(message_of(R"({"type":"product","factors":[{"type":"ladder"},{"type":"nope"}]})")
            .find("$.factors[1].type") != std::string::npos);
  CHECK(code_of(R"({"type":"gap_shift","base":1})") == ErrorCode::ValidationError);
  CHECK(code_of(R"({"type":"sft","vertices":["0"]})") == ErrorCode::ValidationError);
  CHECK(code_of(R"([1,2])") == ErrorCode::ValidationError);
  CHECK(code_of(R"({"type":"pl_map","domain":["0","1"],"breakpoints":["0","1"],"values":["0"]})") ==
        ErrorCode::ValidationError);
  auto prod = parse_system_file(R"({"type":"product","factors":[{"type":"ladder"},{"type":"gap_shift","base":3}]})");
  CHECK_THROWS_AS(build_system(prod), Error);
  auto nonprim = parse_system_file(R"({"type":"substitution","rules":{"0":"0","1":"10"}})");
  CHECK_THROWS_AS(build_system(nonprim), Error);
}

TEST_CASE("system files round-trip") {
  for (const auto& e : corpus_entries()) {
    CAPTURE(e.id);
    auto text = emit_system_file(e.system);
    CHECK(parse_system_file(text) == e.system);
  }
}

TEST_CASE("golden mean report") {
  auto r = run_classify(parse_system_file(kGolden), {}, {});
  CHECK(r.rows.size() == kPropertyCount);
  std::size_t decided = 0;
  for (const auto& row : r.rows) decided += row.verdict.is_certificate();
  CHECK(decided >= 12);
  auto text = emit_report(r, ReportFormat::Text);
  CHECK(text.find("TM PROVED (primitive; period 1)") != std::string::npos);
  CHECK(text.find("contradictions: none") != std::string::npos);
  auto json = emit_report(r, ReportFormat::Json);
  CHECK(parse_report(json) == r);
  CHECK(emit_report(parse_report(json), ReportFormat::Json) == json);
}

TEST_CASE("property filter and scales") {
  auto r = run_classify(parse_system_file(R"({"type":"gap_shift","base":3})"), {P::TM, P::SPT, P::VST}, {});
  REQUIRE(r.rows.size() == 3);
  CHECK(r.find(P::TM)->status == Status::Witness);
  CHECK(r.find(P::SPT)->status == Status::Witness);
  CHECK(r.find(P::VST)->status == Status::RefutedBounded);
  CHECK(r.find(P::LEO) == nullptr);
  bool stmt4 = false;
  for (const auto& n : r.non_implications) stmt4 |= n.statement == 4;
  CHECK(stmt4);

  CHECK(parse_word_scale("ell=3,K=5") == WitnessScale{3, 24, 32, 5});
  CHECK_THROWS_AS(parse_word_scale("ell=0"), Error);
  CHECK_THROWS_AS(parse_word_scale("Q=1"), Error);
  CHECK_THROWS_AS(parse_word_scale("ell=x"), Error);
  CHECK(parse_property_list("TT,LEO") == std::vector<P>{P::TT, P::LEO});
  CHECK_THROWS_AS(parse_property_list("TT,XX"), Error);
}

TEST_CASE("ladder report lists the non-implication") {
  auto r = run_classify(SystemDescriptor{"ladder", "", LadderSpec{}}, {}, {});
  auto text = emit_report(r, ReportFormat::Text);
  CHECK(text.find("Mixing ⇏ Strongly Transitive") != std::string::npos);
  const Verdict* st = r.find(P::ST);
  REQUIRE(st);
  CHECK(st->status == Status::Refuted);
  bool orbit = false;
  for (const auto& item : st->evidence.items) orbit |= item == "O-(0)={0}";
  CHECK(orbit);
  CHECK(r.find(P::TM)->status == Status::Witness);
  CHECK(r.find(P::ET)->status == Status::Witness);
  CHECK(parse_report(emit_report(r, ReportFormat::Json)) == r);
}

TEST_CASE("reports are deterministic") {
  for (const char* id : {"gap3", "map_g", "fibonacci", "two_sided_full"}) {
    CAPTURE(id);
    const auto* e = find_entry(id);
    REQUIRE(e);
    auto a = emit_report(run_classify(e->system, {}, e->recommended), ReportFormat::Json);
    auto b = emit_report(run_classify(e->system, {}, e->recommended, Exec::Serial), ReportFormat::Json);
    CHECK(a == b);
    CHECK(parse_report(a) == parse_report(b));
  }
}

TEST_CASE("hitting sets from files") {
  auto g = parse_system_file(kGolden);
  auto h = hitting_set_of(g, "1", "1", 10);
  REQUIRE(h.exact);
  CHECK(h.exact->describe() == "{n >= 2}");
  CHECK(h.members == std::vector<bool>{false, true, true, true, true, true, true, true, true, true});

  auto gap = parse_system_file(R"({"type":"gap_shift","base":3})");
  auto hg = hitting_set_of(gap, "1", "1", 12);
  CHECK_FALSE(hg.exact);
  // 1 0 1 and 1 000 1 are legal, 1 00 1 is not
  CHECK(hg.members[1]);
  CHECK(hg.members[3]);
  CHECK(hg.members.size() == 12);

  // overlap: [01] then [1] one step later
  auto full = parse_system_file(R"({"type":"substitution","rules":{"0":"01","1":"10"}})");
  auto ht = hitting_set_of(full, "01", "1", 3);
  CHECK(ht.members[0]);
  CHECK_THROWS_AS(hitting_set_of(parse_system_file(kMapF), "0", "0", 5), Error);
  CHECK_THROWS_AS(hitting_set_of(g, "11", "1", 5), Error);
}

TEST_CASE("oracle hitting sets agree with graphs") {
  auto g = parse_system_file(kGolden);
  auto graph = *build_system(g).graph;
  SftOracle o(graph);
  for (const char* u : {"0", "1", "01", "10", "00"}) {
    for (const char* v : {"0", "1", "01"}) {
      auto exact = hitting_set_of(g, u, v, 40);
      auto uw = graph.vertices().parse(u);
      auto vw = graph.vertices().parse(v);
      auto lengths = o.connector_lengths(uw, vw, 40);
      for (std::size_t n = uw.size(); n <= 40; ++n) {
        CHECK(exact.members[n - 1] == lengths.test(n - uw.size()));
      }
    }
  }
}
