#include "dynclass/core.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace dynclass {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptySystem: return "EMPTY_SYSTEM";
    case ErrorCode::NotStronglyConnected: return "NOT_STRONGLY_CONNECTED";
    case ErrorCode::CapExceeded: return "CAP_EXCEEDED";
    case ErrorCode::IllegalWord: return "ILLEGAL_WORD";
    case ErrorCode::OutOfDomain: return "OUT_OF_DOMAIN";
    case ErrorCode::NonCanonical: return "NON_CANONICAL";
    case ErrorCode::InconsistentSamples: return "INCONSISTENT_SAMPLES";
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::ValidationError: return "VALIDATION_ERROR";
    case ErrorCode::Contradiction: return "CONTRADICTION";
  }
  return "UNKNOWN_ERROR";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw Error(ErrorCode::InvalidArgument, "alphabet must be nonempty");
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    const auto& s = symbols_[i];
    if (s.empty()) throw Error(ErrorCode::InvalidArgument, "empty symbol name");
    if (!index_.emplace(s, static_cast<Symbol>(i)).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate symbol '" + s + "'");
    }
    if (s.size() != 1) compact_ = false;
  }
}

std::optional<Symbol> Alphabet::index_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string Alphabet::render(std::span<const Symbol> w) const {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!compact_ && i > 0) out += ' ';
    out += symbol(w[i]);
  }
  return out;
}

Word Alphabet::parse(std::string_view text) const {
  Word w;
  auto push = [&](std::string_view tok) {
    auto idx = index_of(tok);
    if (!idx) throw Error(ErrorCode::IllegalWord, "unknown symbol '" + std::string(tok) + "'");
    w.push_back(*idx);
  };
  if (compact_) {
    for (char c : text) {
      if (c == ' ' || c == ',') continue;
      push(std::string_view(&c, 1));
    }
    return w;
  }
  std::size_t start = 0;
  while (start < text.size()) {
    while (start < text.size() && text[start] == ' ') ++start;
    std::size_t end = start;
    while (end < text.size() && text[end] != ' ') ++end;
    if (end > start) push(text.substr(start, end - start));
    start = end;
  }
  return w;
}

Cylinder::Cylinder(Word w) : word(std::move(w)) {
  if (word.empty()) throw Error(ErrorCode::InvalidArgument, "cylinder word must be nonempty");
}

bool word_occurs_in(std::span<const Symbol> needle, std::span<const Symbol> haystack) {
  if (needle.size() > haystack.size()) return false;
  return std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end()) !=
         haystack.end();
}

std::string_view to_string(SetClass c) {
  switch (c) {
    case SetClass::Empty: return "EMPTY";
    case SetClass::FiniteNonempty: return "FINITE_NONEMPTY";
    case SetClass::InfiniteNotSyndetic: return "INFINITE_NOT_SYNDETIC";
    case SetClass::SyndeticNotCofinite: return "SYNDETIC_NOT_COFINITE";
    case SetClass::Cofinite: return "COFINITE";
  }
  return "?";
}

namespace {

constexpr std::array<std::pair<PropertyId, std::string_view>, kPropertyCount> kPropertyNames{{
    {PropertyId::TT, "TT"},
    {PropertyId::ST, "ST"},
    {PropertyId::VST, "VST"},
    {PropertyId::M, "M"},
    {PropertyId::WM, "WM"},
    {PropertyId::ET, "ET"},
    {PropertyId::SET, "SET"},
    {PropertyId::SPT, "SPT"},
    {PropertyId::TM, "TM"},
    {PropertyId::LEO, "LEO"},
    {PropertyId::EXACT, "EXACT"},
    {PropertyId::FULLY_EXACT, "FULLY_EXACT"},
    {PropertyId::DENSE_PERIODIC, "DENSE_PERIODIC"},
    {PropertyId::ITER_ALMOST_OPEN, "ITER_ALMOST_OPEN"},
}};

}  // namespace

const std::vector<PropertyId>& all_properties() {
  static const std::vector<PropertyId> all = [] {
    std::vector<PropertyId> v;
    for (const auto& [p, name] : kPropertyNames) v.push_back(p);
    return v;
  }();
  return all;
}

const std::vector<PropertyId>& hierarchy_properties() {
  static const std::vector<PropertyId> ten(all_properties().begin(),
                                           all_properties().begin() + 10);
  return ten;
}

std::string_view to_string(PropertyId p) { return kPropertyNames[static_cast<std::size_t>(p)].second; }

std::optional<PropertyId> parse_property(std::string_view name) {
  for (const auto& [p, n] : kPropertyNames) {
    if (n == name) return p;
  }
  return std::nullopt;
}

std::string_view long_name(PropertyId p) {
  switch (p) {
    case PropertyId::TT: return "Topologically Transitive";
    case PropertyId::ST: return "Strongly Transitive";
    case PropertyId::VST: return "Very Strongly Transitive";
    case PropertyId::M: return "Minimal";
    case PropertyId::WM: return "Weak Mixing";
    case PropertyId::ET: return "Exact Transitive";
    case PropertyId::SET: return "Strongly Exact Transitive";
    case PropertyId::SPT: return "Strongly Product Transitive";
    case PropertyId::TM: return "Mixing";
    case PropertyId::LEO: return "Locally Eventually Onto";
    case PropertyId::EXACT: return "Exact";
    case PropertyId::FULLY_EXACT: return "Fully Exact";
    case PropertyId::DENSE_PERIODIC: return "Dense Periodic Sets";
    case PropertyId::ITER_ALMOST_OPEN: return "Iteratively Almost Open";
  }
  return "?";
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Proved: return "PROVED";
    case Status::Refuted: return "REFUTED";
    case Status::Witness: return "WITNESS";
    case Status::NoWitness: return "NO_WITNESS";
    case Status::RefutedBounded: return "REFUTED_BOUNDED";
    case Status::Unknown: return "UNKNOWN";
  }
  return "?";
}

std::optional<Status> parse_status(std::string_view name) {
  for (Status s : {Status::Proved, Status::Refuted, Status::Witness, Status::NoWitness,
                   Status::RefutedBounded, Status::Unknown}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

void WitnessScale::validate() const {
  if (ell < 1 || L < 1 || H < 1 || K < 1) {
    throw Error(ErrorCode::InvalidArgument, "witness scale components must be >= 1: " + to_string());
  }
}

std::string WitnessScale::to_string() const {
  std::ostringstream os;
  os << "ell=" << ell << ",L=" << L << ",H=" << H << ",K=" << K;
  return os.str();
}

std::string scale_to_string(const Scale& s) {
  struct Visitor {
    std::string operator()(std::monostate) const { return "-"; }
    std::string operator()(const WitnessScale& w) const { return w.to_string(); }
    std::string operator()(const GridHorizon& g) const {
      return "eps=" + g.eps + ",H=" + std::to_string(g.horizon);
    }
    std::string operator()(const Bound& b) const { return "bound=" + std::to_string(b.value); }
  };
  return std::visit(Visitor{}, s);
}

namespace {

void require_evidence(const Evidence& e, std::string_view what) {
  if (e.summary.empty()) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " verdict needs a certificate");
  }
}

void require_scale(const Scale& s, std::string_view what) {
  if (std::holds_alternative<std::monostate>(s)) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " verdict needs a scale");
  }
}

}  // namespace

Verdict Verdict::proved(Evidence e) {
  require_evidence(e, "PROVED");
  return Verdict{Status::Proved, std::monostate{}, std::move(e), {}};
}

Verdict Verdict::refuted(Evidence e) {
  require_evidence(e, "REFUTED");
  return Verdict{Status::Refuted, std::monostate{}, std::move(e), {}};
}

Verdict Verdict::witness(Scale s, Evidence e) {
  require_scale(s, "WITNESS");
  return Verdict{Status::Witness, std::move(s), std::move(e), {}};
}

Verdict Verdict::no_witness(Scale s, Evidence e) {
  require_scale(s, "NO_WITNESS");
  return Verdict{Status::NoWitness, std::move(s), std::move(e), {}};
}

Verdict Verdict::refuted_bounded(Scale s, Evidence e) {
  require_scale(s, "REFUTED_BOUNDED");
  return Verdict{Status::RefutedBounded, std::move(s), std::move(e), {}};
}

Verdict Verdict::unknown(std::string why) {
  return Verdict{Status::Unknown, std::monostate{}, Evidence{"none", std::move(why), {}}, {}};
}

}  // namespace dynclass
