#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "dynclass/cli.hpp"

namespace dynclass {

namespace {

bool interval_supported(PropertyId p) {
  switch (p) {
    case PropertyId::SPT:
    case PropertyId::DENSE_PERIODIC:
    case PropertyId::ITER_ALMOST_OPEN:
      return false;
    default:
      return true;
  }
}

bool word_supported(PropertyId p) {
  return p != PropertyId::FULLY_EXACT && p != PropertyId::ITER_ALMOST_OPEN &&
         p != PropertyId::DENSE_PERIODIC;
}

constexpr std::size_t kPeriodCap = 8;

/// Every cylinder of length ell holds a point w^inf with |w| <= kPeriodCap
/// and w repeated past L symbols legal. Dense periodic points give dense
/// periodic sets; their absence says nothing.
Verdict dense_periodic_scan(const LanguageOracle& o, const WitnessScale& s) {
  std::vector<Word> periodic;
  std::size_t reached = 0;
  for (std::size_t p = 1; p <= std::min<std::size_t>(kPeriodCap, s.H); ++p) {
    std::vector<Word> words;
    try {
      words = enumerate_words(o, p);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::CapExceeded) throw;
      break;
    }
    reached = p;
    const std::size_t reps = std::max<std::size_t>(s.K, (s.L + s.ell + p - 1) / p);
    for (const auto& w : words) {
      Word r;
      for (std::size_t k = 0; k < reps; ++k) r.insert(r.end(), w.begin(), w.end());
      if (o.is_legal(r)) periodic.push_back(std::move(r));
    }
  }
  const auto cylinders = enumerate_words(o, s.ell);
  const std::string scope = "periods <= " + std::to_string(reached);
  for (const auto& v : cylinders) {
    bool hit = std::any_of(periodic.begin(), periodic.end(),
                           [&](const Word& r) { return std::equal(v.begin(), v.end(), r.begin()); });
    if (!hit) {
      return Verdict::unknown("no periodic point in [" + o.alphabet().render(v) + "] (" + scope +
                              "); periodic sets are not searched");
    }
  }
  return Verdict::witness(s, Evidence{"periodic", "every cylinder of length " + std::to_string(s.ell) +
                                                      " holds a periodic point (" + scope + ")",
                                      {std::to_string(periodic.size()) + " periodic words"}});
}

/// Bounded refutation first: a tail of length L+H that no connector of length
/// <= H reaches from some short v. Tails are shared across the words v.
Verdict vst_with_bound(const LanguageOracle& o, const WitnessScale& s, Exec exec) {
  const auto ys = o.tail_representatives(s.L + s.H, kDefaultWordCap);
  for (std::size_t len = 1; len <= s.ell; ++len) {
    for (const auto& v : enumerate_words(o, len)) {
      auto t = o.connector_table(v, ys, s.H);
      for (std::size_t j = 0; j < ys.size(); ++j) {
        if (t[j].none()) {
          return Verdict::refuted_bounded(
              Bound{s.H}, Evidence{"bounded", "no connector of length <= " + std::to_string(s.H) + " reaches the tail",
                                   {"v=" + o.alphabet().render(v), "y=" + o.alphabet().render(ys[j])}});
        }
      }
    }
  }
  return witness_check(o, PropertyId::VST, s, exec);
}

std::string citation_for(const Verdict& v) {
  const auto& k = v.evidence.kind;
  if (v.provenance.propagated) {
    for (const auto& e : edge_ledger()) {
      if (e.rule_id == v.provenance.rule_id) return e.citation;
    }
  }
  if (k == "graph" || k == "chain") return "vertex-shift graph decision";
  if (k == "markov") return "Markov partition coding";
  if (k == "finite-scale") return "bounded word criterion";
  if (k == "grid") return "grid check";
  if (k == "invariant-union") return "closed invariant set with interior";
  if (k == "backward-orbit") return "finite closed backward orbit";
  if (k == "fixed-point") return "fixed point";
  if (k == "bounded") return "connector lengths grow without bound";
  if (k == "periodic") return "periodic word scan";
  if (k == "trusted-fact") return "primitive substitution subshifts are minimal";
  return "no criterion";
}

bool disagrees(bool cert_value, const Verdict& finite) {
  return (cert_value && finite.negative()) || (!cert_value && finite.positive());
}

struct Closed {
  VerdictTable table;
  std::vector<std::string> contradictions;
};

Closed close(const VerdictTable& t) {
  try {
    return {propagate(t), {}};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Contradiction) throw;
    return {t, check_consistency(t).contradictions};
  }
}

struct Classification {
  VerdictTable table;
  std::vector<std::string> notes;
  std::vector<std::string> contradictions;
};

Classification classify(const SystemDescriptor& d, const std::vector<PropertyId>& wanted,
                        const ClassifyScales& sc, Exec exec) {
  const BuiltSystem sys = build_system(d);
  const Rational eps = parse_rational(sc.eps);
  if (eps <= 0) throw Error(ErrorCode::InvalidArgument, "eps must be positive");
  sc.words.validate();

  VerdictTable direct;
  direct.flags = sys.flags;
  std::vector<std::string> notes;

  // exact sources
  if (sys.graph) {
    for (PropertyId p : all_properties()) direct.verdicts[p] = decide_property(*sys.graph, p);
  }
  if (sys.substitution_primitive) {
    direct.verdicts[PropertyId::M] = Verdict::proved(
        Evidence{"trusted-fact", "primitive substitution; minimal (TRUSTED_FACT)", {"incidence matrix primitive"}});
  }
  if (sys.map) {
    for (PropertyId p : {PropertyId::TT, PropertyId::TM, PropertyId::LEO}) {
      if (auto v = markov_decide(*sys.map, p)) direct.verdicts[p] = *v;
    }
  }
  Closed first = close(direct);
  if (!first.contradictions.empty()) return {first.table, notes, first.contradictions};

  // finite-scale checks for what the certificates leave open
  std::map<PropertyId, Verdict> finite;
  for (PropertyId p : wanted) {
    auto it = first.table.verdicts.find(p);
    if (it != first.table.verdicts.end() && it->second.is_certificate()) continue;
    if (sys.oracle) {
      if (p == PropertyId::VST) {
        finite[p] = vst_with_bound(*sys.oracle, sc.words, exec);
      } else if (p == PropertyId::DENSE_PERIODIC) {
        finite[p] = dense_periodic_scan(*sys.oracle, sc.words);
      } else if (word_supported(p)) {
        finite[p] = witness_check(*sys.oracle, p, sc.words, exec);
      }
    } else if (sys.map && interval_supported(p)) {
      finite[p] = check_interval_property(*sys.map, p, eps, sc.horizon, exec);
    }
  }

  for (const auto& [p, v] : finite) {
    if (v.is_certificate()) direct.verdicts[p] = v;
  }
  Closed second = close(direct);
  if (!second.contradictions.empty()) return {second.table, notes, second.contradictions};

  for (const auto& [p, v] : finite) {
    if (v.is_certificate()) continue;
    auto it = second.table.verdicts.find(p);
    if (it != second.table.verdicts.end() && it->second.is_certificate()) {
      if (disagrees(it->second.status == Status::Proved, v)) {
        notes.push_back(std::string(to_string(p)) + ": finite-scale " + std::string(to_string(v.status)) +
                        " superseded by " + std::string(to_string(it->second.status)));
      }
      continue;
    }
    direct.verdicts[p] = v;
  }
  for (PropertyId p : wanted) {
    if (!direct.verdicts.count(p) && !second.table.verdicts.count(p)) {
      direct.verdicts[p] = Verdict::unknown(sys.map ? "no interval criterion for this property"
                                                    : "no finite criterion for this property");
    }
  }

  if (sys.oracle) {
    auto v = periodic_word_scan(*sys.oracle, 6, 12);
    notes.push_back("periodic words of period <= 6 at 12 repetitions: " + std::string(to_string(v.status)) +
                    (v.evidence.items.empty() ? "" : " " + v.evidence.items.front()));
  }
  if (sys.map) {
    auto fixed = sys.map->fixed_points();
    if (!fixed.empty()) {
      auto v = eventually_fixed_dense(*sys.map, fixed.front(), eps, std::min<std::size_t>(sc.horizon, 10));
      notes.push_back("non-recurrent points near fixed point " + rational_string(fixed.front()) + ": " +
                      std::string(to_string(v.status)) + " at eps=" + sc.eps);
    }
  }

  Closed last = close(direct);
  auto& out = last.table;
  out.notes.insert(out.notes.begin(), notes.begin(), notes.end());
  return {out, {}, last.contradictions};
}

}  // namespace

const Verdict* ClassificationReport::find(PropertyId p) const {
  for (const auto& r : rows) {
    if (r.property == p) return &r.verdict;
  }
  return nullptr;
}

VerdictTable classify_table(const SystemDescriptor& d, const ClassifyScales& scales, Exec exec) {
  auto c = classify(d, all_properties(), scales, exec);
  c.table.notes.insert(c.table.notes.end(), c.notes.begin(), c.notes.end());
  return c.table;
}

ClassificationReport run_classify(const SystemDescriptor& d, const std::vector<PropertyId>& props,
                                  const ClassifyScales& scales, Exec exec) {
  std::vector<PropertyId> wanted = props.empty() ? all_properties() : props;
  std::sort(wanted.begin(), wanted.end());
  wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());

  auto c = classify(d, wanted, scales, exec);
  ClassificationReport r;
  r.system_id = d.id.empty() ? d.type() : d.id;
  r.system_type = d.type();
  r.flags = c.table.flags;
  r.word_scale = scales.words.to_string();
  r.grid_scale = scale_to_string(GridHorizon{scales.eps, scales.horizon});
  for (PropertyId p : wanted) {
    auto it = c.table.verdicts.find(p);
    Verdict v = it == c.table.verdicts.end() ? Verdict::unknown("not derived") : it->second;
    std::string cite = citation_for(v);
    r.rows.push_back(ReportRow{p, std::move(v), std::move(cite)});
  }
  r.notes = c.table.notes;
  r.notes.insert(r.notes.end(), c.notes.begin(), c.notes.end());
  r.contradictions = c.contradictions;
  auto cons = check_consistency(c.table);
  if (r.contradictions.empty()) r.contradictions = cons.contradictions;
  r.tensions = cons.tensions;
  r.non_implications = cons.instances;
  r.gaps = cons.gaps;
  return r;
}

HittingResult hitting_set_of(const SystemDescriptor& d, std::string_view u, std::string_view v,
                             std::size_t max_n) {
  const BuiltSystem sys = build_system(d);
  HittingResult out;
  if (sys.map) throw Error(ErrorCode::ValidationError, "hitting sets need a symbolic system");
  if (sys.graph) {
    const auto& a = sys.graph->vertices();
    auto uw = a.parse(u);
    auto vw = a.parse(v);
    out.exact = hitting_set(*sys.graph, uw, vw);
    out.members = out.exact->prefix(max_n);
    out.method = "boolean matrix powers";
    return out;
  }
  const auto& o = *sys.oracle;
  auto uw = o.alphabet().parse(u);
  auto vw = o.alphabet().parse(v);
  if (uw.empty() || vw.empty()) throw Error(ErrorCode::InvalidArgument, "cylinder words must be nonempty");
  if (!o.is_legal(uw) || !o.is_legal(vw)) throw Error(ErrorCode::IllegalWord, "cylinder word is not legal");
  if (max_n > uw.size() + kMaxConnector) {
    throw Error(ErrorCode::InvalidArgument, "max-n is limited to |u| + " + std::to_string(kMaxConnector));
  }
  const std::size_t span = max_n >= uw.size() ? max_n - uw.size() : 0;
  const auto lengths = o.connector_lengths(uw, vw, span);
  for (std::size_t n = 1; n <= max_n; ++n) {
    bool in = false;
    if (n >= uw.size()) {
      in = lengths.test(n - uw.size());
    } else {
      Word w = uw;
      bool fits = true;
      for (std::size_t i = 0; i < vw.size(); ++i) {
        if (n + i < w.size()) {
          fits = fits && w[n + i] == vw[i];
        } else {
          w.push_back(vw[i]);
        }
      }
      in = fits && o.is_legal(w);
    }
    out.members.push_back(in);
  }
  out.method = "bounded connector search";
  return out;
}

WitnessScale parse_word_scale(std::string_view text, WitnessScale base) {
  std::string s(text);
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::InvalidArgument, "scale item \"" + item + "\" needs name=value");
    auto key = item.substr(0, eq);
    auto val = item.substr(eq + 1);
    std::uint32_t n = 0;
    try {
      std::size_t used = 0;
      unsigned long x = std::stoul(val, &used);
      if (used != val.size() || x > 100000) throw std::out_of_range("scale");
      n = static_cast<std::uint32_t>(x);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "bad value in scale item \"" + item + "\"");
    }
    if (key == "ell") base.ell = n;
    else if (key == "L") base.L = n;
    else if (key == "H") base.H = n;
    else if (key == "K") base.K = n;
    else throw Error(ErrorCode::InvalidArgument, "unknown scale item \"" + key + "\"");
  }
  base.validate();
  return base;
}

std::vector<PropertyId> parse_property_list(std::string_view text) {
  std::vector<PropertyId> out;
  std::string s(text);
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto p = parse_property(item);
    if (!p) throw Error(ErrorCode::InvalidArgument, "unknown property \"" + item + "\"");
    out.push_back(*p);
  }
  return out;
}

}  // namespace dynclass
