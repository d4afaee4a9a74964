#include "dynclass/corpus.hpp"

#include <algorithm>
#include <chrono>

namespace dynclass {

std::string_view to_string(Truth t) {
  switch (t) {
    case Truth::True: return "TRUE";
    case Truth::False: return "FALSE";
    case Truth::Untested: return "UNTESTED";
  }
  return "?";
}

namespace {

using P = PropertyId;

SystemDescriptor sft(std::string id, std::vector<std::string> vs,
                     std::vector<std::pair<std::string, std::string>> es, Sided sided = Sided::One) {
  return SystemDescriptor{std::move(id), "", SftSpec{std::move(vs), std::move(es), sided}};
}

SystemDescriptor full_shift(std::string id, Sided sided) {
  return sft(std::move(id), {"0", "1"}, {{"0", "0"}, {"0", "1"}, {"1", "0"}, {"1", "1"}}, sided);
}

SystemDescriptor pl(std::string id, std::string lo, std::string hi, std::vector<std::string> xs,
                    std::vector<std::string> ys) {
  return SystemDescriptor{std::move(id), "", PlMapSpec{std::move(lo), std::move(hi), std::move(xs), std::move(ys)}};
}

struct Builder {
  CorpusEntry e;

  Builder(SystemDescriptor d, std::string description) {
    e.id = d.id;
    d.description = std::move(description);
    e.system = std::move(d);
  }
  Builder& set(std::initializer_list<P> ps, Truth t, const std::string& anchor, bool certified = true) {
    for (P p : ps) e.expected[p] = Expectation{t, certified, anchor};
    return *this;
  }
  Builder& words(WitnessScale s) {
    e.recommended.words = s;
    return *this;
  }
  CorpusEntry done() { return std::move(e); }
};

std::vector<CorpusEntry> build() {
  std::vector<CorpusEntry> out;
  const auto T = Truth::True;
  const auto F = Truth::False;

  {
    Builder b(full_shift("full_one_sided", Sided::One), "full 2-shift on one-sided sequences");
    b.set({P::TT, P::ST, P::VST, P::WM, P::ET, P::SET, P::SPT, P::TM, P::LEO, P::EXACT, P::FULLY_EXACT,
           P::DENSE_PERIODIC, P::ITER_ALMOST_OPEN},
          T, "example: one-sided full shift is LEO, hence VST")
        .set({P::M}, F, "example: one-sided full shift is not minimal");
    out.push_back(b.done());
  }
  {
    Builder b(full_shift("two_sided_full", Sided::Two), "full 2-shift on bi-infinite sequences");
    b.set({P::TT, P::WM, P::TM, P::DENSE_PERIODIC}, T, "example: two-sided full shift is mixing")
        .set({P::M, P::ST, P::VST}, F, "example: not minimal; a homeomorphism is ST only when minimal")
        .set({P::EXACT, P::FULLY_EXACT, P::ET, P::SET, P::SPT, P::LEO}, F,
             "example: injective maps are not exact");
    out.push_back(b.done());
  }
  {
    Builder b(sft("golden_mean", {"0", "1"}, {{"0", "0"}, {"0", "1"}, {"1", "0"}}), "no two consecutive 1s");
    b.set({P::TT, P::ST, P::VST, P::WM, P::ET, P::SET, P::SPT, P::TM, P::LEO, P::EXACT, P::FULLY_EXACT,
           P::DENSE_PERIODIC, P::ITER_ALMOST_OPEN},
          T, "primitive graph (brute-force word oracle)")
        .set({P::M}, F, "two distinct cycles");
    out.push_back(b.done());
  }
  {
    Builder b(sft("two_cycle", {"a", "b"}, {{"a", "b"}, {"b", "a"}}), "single periodic orbit of period 2");
    b.set({P::TT, P::ST, P::VST, P::M, P::DENSE_PERIODIC}, T, "single cycle")
        .set({P::WM, P::ET, P::SET, P::SPT, P::TM, P::LEO, P::EXACT, P::FULLY_EXACT}, F,
             "period 2 graph (brute-force word oracle)");
    out.push_back(b.done());
  }
  {
    Builder b(SystemDescriptor{"fibonacci", "", SubstitutionSpec{{{"0", "01"}, {"1", "0"}}}},
              "Fibonacci substitution subshift, standing in for an irrational rotation");
    b.set({P::M, P::TT, P::ST, P::VST}, T, "primitive substitution is minimal (classical)")
        .set({P::FULLY_EXACT, P::SET, P::SPT, P::LEO}, F, "nontrivial minimal systems are not fully exact")
        .set({P::WM, P::ET, P::TM}, F, "rotation stand-in: expected not weak mixing; no refutation procedure", false);
    out.push_back(b.done());
  }
  {
    Builder b(SystemDescriptor{"thue_morse", "", SubstitutionSpec{{{"0", "01"}, {"1", "10"}}}},
              "Thue-Morse substitution subshift");
    b.set({P::M, P::TT, P::ST, P::VST}, T, "primitive substitution is minimal (classical)")
        .set({P::FULLY_EXACT, P::SET, P::SPT, P::LEO}, F, "nontrivial minimal systems are not fully exact");
    out.push_back(b.done());
  }
  {
    Builder b(SystemDescriptor{"gap3", "", GapShiftSpec{3}}, "0-runs between 1s have length a power of 3");
    b.set({P::SPT, P::TM}, T, "example: SPT and mixing")
        .set({P::VST}, F, "example: SPT and mixing but not VST")
        .set({P::TT, P::WM}, T, "mixing gives weak mixing and transitivity");
    out.push_back(b.done());
  }
  {
    Builder b(SystemDescriptor{"lindenstrauss", "", LindenstraussSpec{}},
              "0s inserted without repeats into a Thue-Morse sequence over {1,2}");
    b.set({P::LEO}, T, "example: LEO without periodic points")
        .set({P::TM, P::SPT, P::VST, P::ST, P::TT, P::WM, P::DENSE_PERIODIC}, T, "consequences of LEO")
        .set({P::M}, F, "LEO and nontrivial, so not minimal")
        .words(WitnessScale{2, 12, 40, 1});
    out.push_back(b.done());
  }
  {
    Builder b(pl("map_f", "-1", "1", {"-1", "-1/2", "1/2", "1"}, {"0", "-1", "1", "0"}),
              "exact but not fully exact interval map");
    b.set({P::EXACT}, T, "example: exact, images meet at 0")
        .set({P::FULLY_EXACT, P::TT}, F, "example: not fully exact, not transitive");
    out.push_back(b.done());
  }
  {
    Builder b(pl("map_g", "-1", "1", {"-1", "-1/2", "1/2", "1"}, {"0", "-1", "1", "-1"}),
              "fully exact, non-transitive interval map");
    b.set({P::FULLY_EXACT, P::EXACT}, T, "example: fully exact, intersection [-1,0]")
        .set({P::TT}, F, "example: not transitive");
    out.push_back(b.done());
  }
  {
    Builder b(pl("tent", "0", "1", {"0", "1/2", "1"}, {"0", "1", "0"}), "full tent map");
    b.set({P::TT, P::ST, P::VST, P::WM, P::ET, P::SET, P::SPT, P::TM, P::LEO, P::EXACT, P::FULLY_EXACT,
           P::DENSE_PERIODIC},
          T, "Markov coding is the full 2-shift")
        .set({P::M}, F, "fixed point at 0");
    out.push_back(b.done());
  }
  {
    Builder b(SystemDescriptor{"ladder", "", LadderSpec{}},
              "bi-infinite ladder map with breakpoints 2^j/(1+2^j)");
    b.set({P::TM, P::ET}, T, "example: exact transitive and mixing")
        .set({P::ST}, F, "example: backward orbit of 0 is {0}")
        .set({P::TT, P::WM}, T, "mixing gives weak mixing and transitivity")
        .set({P::M, P::VST, P::SET, P::SPT, P::LEO}, F, "not ST");
    out.push_back(b.done());
  }
  {
    ProductSpec prod;
    prod.factors.push_back(SystemDescriptor{"gap3", "", GapShiftSpec{3}});
    prod.factors.push_back(full_shift("full", Sided::One));
    Builder b(SystemDescriptor{"gap3_x_full", "", prod}, "product of the gap shift and the full 2-shift");
    b.set({P::TM, P::WM, P::TT}, T, "product of mixing systems is mixing");
    out.push_back(b.done());
  }
  {
    Builder b(sft("two_components", {"a", "b"}, {{"a", "a"}, {"a", "b"}, {"b", "b"}}),
              "two fixed points joined by a transient edge");
    b.set({P::TT, P::ST, P::VST, P::M, P::WM, P::ET, P::SET, P::SPT, P::TM, P::LEO, P::DENSE_PERIODIC}, F,
          "not strongly connected")
        .set({P::EXACT}, T, "every pair of points is eventually at b");
    out.push_back(b.done());
  }
  return out;
}

}  // namespace

const std::vector<CorpusEntry>& corpus_entries() {
  static const std::vector<CorpusEntry> entries = build();
  return entries;
}

const CorpusEntry* find_entry(std::string_view id) {
  for (const auto& e : corpus_entries()) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

std::string expectation_mismatch(const Verdict& v, const Expectation& e) {
  if (e.truth == Truth::Untested) return {};
  const bool want = e.truth == Truth::True;
  bool bad = false;
  switch (v.status) {
    case Status::Proved: bad = !want; break;
    case Status::Refuted: bad = want; break;
    case Status::Witness: bad = !want && e.certified; break;
    case Status::NoWitness: bad = want && e.certified; break;
    case Status::RefutedBounded: bad = want; break;
    case Status::Unknown: bad = false; break;
  }
  if (!bad) return {};
  return std::string(to_string(v.status)) + " against expected " + std::string(to_string(e.truth)) + " (" +
         e.anchor + ")";
}

std::vector<EntryResult> run_corpus(const CorpusOverrides& overrides, const std::vector<std::string>& only) {
  std::vector<EntryResult> out;
  for (const auto& e : corpus_entries()) {
    if (!only.empty() && std::find(only.begin(), only.end(), e.id) == only.end()) continue;
    ClassifyScales sc = e.recommended;
    if (overrides.words) sc.words = *overrides.words;
    if (overrides.eps) sc.eps = *overrides.eps;
    if (overrides.horizon) sc.horizon = *overrides.horizon;

    EntryResult r;
    r.id = e.id;
    auto start = std::chrono::steady_clock::now();
    r.report = run_classify(e.system, {}, sc);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (const auto& [p, exp] : e.expected) {
      const Verdict* v = r.report.find(p);
      if (!v) continue;
      auto why = expectation_mismatch(*v, exp);
      if (!why.empty()) r.failures.push_back(std::string(to_string(p)) + ": " + why);
    }
    for (const auto& c : r.report.contradictions) r.failures.push_back("contradiction: " + c);
    r.pass = r.failures.empty();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace dynclass
