#include "dynclass/lattice.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace dynclass {

std::string_view to_string(Condition c) {
  switch (c) {
    case Condition::None: return "NONE";
    case Condition::OpenMap: return "OPEN_MAP";
    case Condition::Invertible: return "INVERTIBLE";
    case Condition::MinimalNontrivial: return "MINIMAL_NONTRIVIAL";
  }
  return "?";
}

std::string ImplicationEdge::describe() const {
  std::ostringstream os;
  if (from.empty()) os << "(flags)";
  for (std::size_t i = 0; i < from.size(); ++i) {
    if (i) os << " & ";
    os << to_string(from[i]);
  }
  os << " => " << (negates ? "not " : "") << to_string(to);
  if (condition != Condition::None) os << " [" << to_string(condition) << "]";
  if (nontrivial_only && condition != Condition::MinimalNontrivial) os << " [nontrivial]";
  return os.str();
}

const std::vector<ImplicationEdge>& edge_ledger() {
  using P = PropertyId;
  using C = Condition;
  static const std::vector<ImplicationEdge> ledger = {
      {{P::LEO}, P::TM, false, C::None, false, "leo-tm", "locally eventually onto maps are topologically mixing"},
      {{P::LEO}, P::SPT, false, C::None, false, "leo-spt", "locally eventually onto maps are strongly product transitive"},
      {{P::LEO}, P::VST, false, C::None, false, "leo-vst", "hierarchy diagram: LEO implies VST"},
      {{P::M}, P::VST, false, C::None, false, "m-vst", "hierarchy diagram: minimal implies VST"},
      {{P::VST}, P::ST, false, C::None, false, "vst-st", "hierarchy diagram: VST implies ST"},
      {{P::ST}, P::TT, false, C::None, false, "st-tt", "strong transitivity gives transitivity"},
      {{P::TM}, P::WM, false, C::None, false, "tm-wm", "topological mixing gives weak mixing"},
      {{P::WM}, P::TT, false, C::None, false, "wm-tt", "hierarchy diagram: WM implies TT"},
      {{P::SPT}, P::SET, false, C::None, false, "spt-set", "strong product transitivity gives strong exact transitivity"},
      {{P::SET}, P::ET, false, C::None, false, "set-et", "strong exact transitivity gives exact transitivity"},
      {{P::SET}, P::ST, false, C::None, false, "set-st", "strong exact transitivity gives strong transitivity"},
      {{P::ET}, P::WM, false, C::None, false, "et-wm", "exact transitivity gives weak mixing"},
      {{P::ET}, P::TT, false, C::None, false, "et-tt", "exact transitivity gives transitivity"},
      {{P::ET}, P::EXACT, false, C::None, false, "et-exact", "exact transitivity gives exactness"},
      {{P::SET}, P::FULLY_EXACT, false, C::None, false, "set-fe", "strong exact transitivity gives full exactness"},
      {{P::FULLY_EXACT}, P::EXACT, false, C::None, false, "fe-exact", "an image with interior is nonempty"},
      {{P::TT, P::FULLY_EXACT}, P::ET, false, C::None, false, "tt-fe-et", "transitive and fully exact gives exact transitivity"},
      {{P::LEO}, P::DENSE_PERIODIC, false, C::None, false, "leo-dp", "locally eventually onto maps have dense periodic sets"},
      {{P::ST}, P::ITER_ALMOST_OPEN, false, C::None, false, "st-iao", "strongly transitive maps are iteratively almost open"},
      {{P::ST}, P::VST, false, C::OpenMap, false, "st-vst-open", "for open maps ST and VST coincide"},
      {{P::ST}, P::M, false, C::Invertible, false, "st-m-inv", "a homeomorphism is ST iff minimal"},
      {{P::VST}, P::M, false, C::Invertible, false, "vst-m-inv", "a homeomorphism is VST iff minimal"},
      {{}, P::EXACT, true, C::Invertible, true, "inv-not-exact", "an exact nontrivial map is not injective"},
      {{P::M}, P::FULLY_EXACT, true, C::MinimalNontrivial, true, "m-not-fe", "a nontrivial minimal map is not fully exact"},
  };
  return ledger;
}

bool edge_applies(const ImplicationEdge& e, const SystemFlags& flags) {
  if (e.nontrivial_only && flags.trivial) return false;
  switch (e.condition) {
    case Condition::None:
    case Condition::MinimalNontrivial:
      return true;
    case Condition::OpenMap:
      return flags.open_map || flags.invertible;
    case Condition::Invertible:
      return flags.invertible;
  }
  return false;
}

namespace {

struct Cert {
  bool value;
  std::optional<PropertyId> from;
  std::string rule_id;
  std::vector<std::string> chain;
};

std::string status_word(bool v) { return v ? "PROVED" : "REFUTED"; }

void append_unique(std::vector<std::string>& dst, const std::vector<std::string>& src) {
  for (const auto& s : src) {
    if (std::find(dst.begin(), dst.end(), s) == dst.end()) dst.push_back(s);
  }
}

class Closure {
 public:
  explicit Closure(const VerdictTable& t) {
    for (const auto& [p, v] : t.verdicts) {
      if (v.provenance.propagated) continue;
      direct_[p] = v;
      if (v.is_certificate()) {
        bool val = v.status == Status::Proved;
        certs_[p] = Cert{val, std::nullopt, "", {std::string(to_string(p)) + " " + status_word(val) + " (direct)"}};
      }
    }
    run(t.flags);
  }

  const std::map<PropertyId, Cert>& certs() const { return certs_; }
  const std::map<PropertyId, Verdict>& direct() const { return direct_; }
  const std::vector<std::string>& contradictions() const { return contradictions_; }

 private:
  bool is(PropertyId p, bool v) const {
    auto it = certs_.find(p);
    return it != certs_.end() && it->second.value == v;
  }

  bool set(PropertyId p, bool v, Cert c) {
    auto it = certs_.find(p);
    if (it == certs_.end()) {
      certs_.emplace(p, std::move(c));
      return true;
    }
    if (it->second.value == v) return false;
    std::ostringstream os;
    os << to_string(p) << " both " << status_word(it->second.value) << " and " << status_word(v)
       << "; chain A: ";
    for (std::size_t i = 0; i < it->second.chain.size(); ++i) os << (i ? " | " : "") << it->second.chain[i];
    os << "; chain B: ";
    for (std::size_t i = 0; i < c.chain.size(); ++i) os << (i ? " | " : "") << c.chain[i];
    auto msg = os.str();
    if (std::find(contradictions_.begin(), contradictions_.end(), msg) == contradictions_.end()) {
      contradictions_.push_back(msg);
    }
    return false;
  }

  void run(const SystemFlags& flags) {
    const auto& ledger = edge_ledger();
    const std::size_t limit = kPropertyCount * ledger.size() + 1;
    for (std::size_t round = 0; round < limit; ++round) {
      bool changed = false;
      for (const auto& e : ledger) {
        if (!edge_applies(e, flags)) continue;
        changed |= forward(e);
        changed |= backward(e);
      }
      if (!changed) break;
    }
  }

  bool forward(const ImplicationEdge& e) {
    std::vector<std::string> chain;
    for (PropertyId a : e.from) {
      if (!is(a, true)) return false;
      append_unique(chain, certs_.at(a).chain);
    }
    chain.push_back(e.rule_id + ": " + e.describe());
    std::optional<PropertyId> src;
    if (!e.from.empty()) src = e.from.front();
    return set(e.to, !e.negates, Cert{!e.negates, src, e.rule_id, std::move(chain)});
  }

  bool backward(const ImplicationEdge& e) {
    if (e.from.empty() || !is(e.to, e.negates)) return false;
    std::optional<std::size_t> open;
    for (std::size_t i = 0; i < e.from.size(); ++i) {
      if (is(e.from[i], true)) continue;
      if (open) return false;
      open = i;
    }
    std::vector<std::string> chain = certs_.at(e.to).chain;
    for (std::size_t i = 0; i < e.from.size(); ++i) {
      if (open && i == *open) continue;
      append_unique(chain, certs_.at(e.from[i]).chain);
    }
    chain.push_back(e.rule_id + " (contrapositive): " + e.describe());
    bool changed = false;
    if (open) {
      changed = set(e.from[*open], false, Cert{false, e.to, e.rule_id, chain});
    } else {
      // every antecedent proved and the consequent fails
      set(e.to, !e.negates, Cert{!e.negates, e.from.front(), e.rule_id, chain});
    }
    return changed;
  }

  std::map<PropertyId, Verdict> direct_;
  std::map<PropertyId, Cert> certs_;
  std::vector<std::string> contradictions_;
};

}  // namespace

VerdictTable propagate(const VerdictTable& t) {
  Closure c(t);
  if (!c.contradictions().empty()) {
    std::string msg = "lattice contradiction: ";
    for (std::size_t i = 0; i < c.contradictions().size(); ++i) {
      msg += (i ? " || " : "") + c.contradictions()[i];
    }
    throw Error(ErrorCode::Contradiction, msg);
  }

  VerdictTable out;
  out.flags = t.flags;
  out.verdicts = c.direct();
  for (const auto& [p, cert] : c.certs()) {
    auto d = c.direct().find(p);
    if (d != c.direct().end()) {
      const Verdict& v = d->second;
      if (!v.is_certificate() && ((cert.value && v.negative()) || (!cert.value && v.positive()))) {
        out.notes.push_back(std::string(to_string(p)) + ": lattice derives " + status_word(cert.value) +
                            " (" + cert.rule_id + ") against direct " + std::string(to_string(v.status)) +
                            " at " + scale_to_string(v.scale));
      }
      continue;
    }
    Evidence ev{"lattice",
                cert.from ? "from " + std::string(to_string(*cert.from)) + " via " + cert.rule_id
                          : "via " + cert.rule_id,
                cert.chain};
    Verdict v = cert.value ? Verdict::proved(std::move(ev)) : Verdict::refuted(std::move(ev));
    v.provenance = Provenance{true, cert.from, cert.rule_id, cert.chain};
    out.verdicts.emplace(p, std::move(v));
  }
  return out;
}

namespace {

struct Pattern {
  int statement;
  std::string label;
  std::vector<PropertyId> holds;
  std::vector<PropertyId> fails;
};

const std::vector<Pattern>& patterns() {
  using P = PropertyId;
  static const std::vector<Pattern> list = {
      {1, "Mixing ⇏ Strongly Transitive", {P::TM}, {P::ST}},
      {1, "Mixing ⇏ Exact Transitive", {P::TM}, {P::ET}},
      {1, "Mixing ⇏ Minimal", {P::TM}, {P::M}},
      {2, "Very Strongly Transitive ⇏ Minimal", {P::VST}, {P::M}},
      {3, "Minimal ⇏ Exact Transitive", {P::M}, {P::ET}},
      {3, "Minimal ⇏ Weak Mixing", {P::M}, {P::WM}},
      {4, "SPT & Mixing ⇏ VST", {P::SPT, P::TM}, {P::VST}},
      {5, "Exact Transitive & Mixing ⇏ Strongly Transitive", {P::ET, P::TM}, {P::ST}},
  };
  return list;
}

}  // namespace

ConsistencyReport check_consistency(const VerdictTable& t) {
  ConsistencyReport r;
  Closure c(t);
  r.contradictions = c.contradictions();

  for (PropertyId p : all_properties()) {
    auto it = t.verdicts.find(p);
    if (it == t.verdicts.end() || it->second.status == Status::Unknown) r.unknowns.push_back(p);
  }

  auto get = [&](PropertyId p) -> const Verdict* {
    auto it = t.verdicts.find(p);
    return it == t.verdicts.end() ? nullptr : &it->second;
  };

  for (const auto& e : edge_ledger()) {
    if (e.from.size() != 1 || e.negates || !edge_applies(e, t.flags)) continue;
    const Verdict* a = get(e.from[0]);
    const Verdict* b = get(e.to);
    if (!a || !b || (a->is_certificate() && b->is_certificate())) continue;
    if (a->positive() && b->negative()) {
      r.tensions.push_back(e.rule_id + ": " + std::string(to_string(e.from[0])) + " " +
                           std::string(to_string(a->status)) + " but " + std::string(to_string(e.to)) +
                           " " + std::string(to_string(b->status)));
    }
  }

  for (const auto& pat : patterns()) {
    bool ok = true;
    bool certified = true;
    for (PropertyId p : pat.holds) {
      const Verdict* v = get(p);
      ok = ok && v && v->positive();
      certified = certified && v && v->is_certificate();
    }
    for (PropertyId p : pat.fails) {
      const Verdict* v = get(p);
      ok = ok && v && v->negative();
      certified = certified && v && v->is_certificate();
    }
    if (ok) r.instances.push_back(NonImplication{pat.statement, pat.label, certified});
  }
  r.gaps.push_back("Weak Mixing ⇏ Mixing (statement 6): no constructive example available");
  return r;
}

}  // namespace dynclass
