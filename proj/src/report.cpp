#include <iomanip>
#include <sstream>

#include "dynclass/cli.hpp"
#include "json.hpp"

namespace dynclass {

using nlohmann::json;

namespace {

json scale_json(const Scale& s) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, WitnessScale>) {
          return {{"kind", "words"}, {"ell", x.ell}, {"L", x.L}, {"H", x.H}, {"K", x.K}};
        } else if constexpr (std::is_same_v<T, GridHorizon>) {
          return {{"kind", "grid"}, {"eps", x.eps}, {"horizon", x.horizon}};
        } else {
          return {{"kind", "bound"}, {"value", x.value}};
        }
      },
      s);
}

Scale scale_from(const json& j) {
  if (j.is_null()) return std::monostate{};
  auto kind = j.at("kind").get<std::string>();
  if (kind == "words") {
    return WitnessScale{j.at("ell").get<std::uint32_t>(), j.at("L").get<std::uint32_t>(),
                        j.at("H").get<std::uint32_t>(), j.at("K").get<std::uint32_t>()};
  }
  if (kind == "grid") return GridHorizon{j.at("eps").get<std::string>(), j.at("horizon").get<std::uint32_t>()};
  if (kind == "bound") return Bound{j.at("value").get<std::uint64_t>()};
  throw Error(ErrorCode::ValidationError, "unknown scale kind \"" + kind + "\"");
}

json verdict_json(const ReportRow& r) {
  const auto& v = r.verdict;
  json prov = {{"propagated", v.provenance.propagated},
               {"from", v.provenance.from ? json(std::string(to_string(*v.provenance.from))) : json(nullptr)},
               {"rule_id", v.provenance.rule_id},
               {"chain", v.provenance.chain}};
  return {{"property", std::string(to_string(r.property))},
          {"status", std::string(to_string(v.status))},
          {"scale", scale_json(v.scale)},
          {"evidence", {{"kind", v.evidence.kind}, {"summary", v.evidence.summary}, {"items", v.evidence.items}}},
          {"provenance", prov},
          {"citation", r.citation}};
}

PropertyId property_from(const json& j) {
  auto p = parse_property(j.get<std::string>());
  if (!p) throw Error(ErrorCode::ValidationError, "unknown property " + j.dump());
  return *p;
}

ReportRow row_from(const json& j) {
  ReportRow r;
  r.property = property_from(j.at("property"));
  auto st = parse_status(j.at("status").get<std::string>());
  if (!st) throw Error(ErrorCode::ValidationError, "unknown status " + j.at("status").dump());
  r.verdict.status = *st;
  r.verdict.scale = scale_from(j.at("scale"));
  const auto& e = j.at("evidence");
  r.verdict.evidence = Evidence{e.at("kind").get<std::string>(), e.at("summary").get<std::string>(),
                                e.at("items").get<std::vector<std::string>>()};
  const auto& p = j.at("provenance");
  r.verdict.provenance.propagated = p.at("propagated").get<bool>();
  if (!p.at("from").is_null()) r.verdict.provenance.from = property_from(p.at("from"));
  r.verdict.provenance.rule_id = p.at("rule_id").get<std::string>();
  r.verdict.provenance.chain = p.at("chain").get<std::vector<std::string>>();
  r.citation = j.at("citation").get<std::string>();
  return r;
}

std::string fit(const std::string& s, std::size_t width) {
  if (s.size() <= width) return s + std::string(width - s.size(), ' ');
  return s.substr(0, width - 3) + "...";
}

std::string text_report(const ClassificationReport& r) {
  std::ostringstream os;
  os << "system: " << r.system_id << " (" << r.system_type << ")\n";
  os << "flags: open_map=" << r.flags.open_map << " invertible=" << r.flags.invertible
     << " trivial=" << r.flags.trivial << "\n";
  os << "scales: " << r.word_scale << " | " << r.grid_scale << "\n\n";
  constexpr std::size_t kMain = 72, kScale = 24;
  os << fit("PROPERTY VERDICT (EVIDENCE)", kMain) << "  " << fit("SCALE", kScale) << "  CITATION\n";
  for (const auto& row : r.rows) {
    std::string main = std::string(to_string(row.property)) + " " + std::string(to_string(row.verdict.status)) +
                       " (" + row.verdict.evidence.summary + ")";
    std::string scale = scale_to_string(row.verdict.scale);
    if (scale.empty()) scale = "-";
    if (row.verdict.provenance.propagated) main += " [lattice]";
    os << fit(main, kMain) << "  " << fit(scale, kScale) << "  " << row.citation << "\n";
  }
  auto list = [&](const char* title, const std::vector<std::string>& xs) {
    if (xs.empty()) return;
    os << "\n" << title << ":\n";
    for (const auto& x : xs) os << "  - " << x << "\n";
  };
  list("notes", r.notes);
  list("finite-scale tensions", r.tensions);
  if (!r.non_implications.empty()) {
    os << "\nnon-implications instantiated:\n";
    for (const auto& n : r.non_implications) {
      os << "  - [" << n.statement << "] " << n.label << (n.certified ? " (certified)" : " (finite scale)") << "\n";
    }
  }
  list("gaps", r.gaps);
  if (r.contradictions.empty()) {
    os << "\ncontradictions: none\n";
  } else {
    list("CONTRADICTIONS", r.contradictions);
  }
  return os.str();
}

}  // namespace

std::string emit_report(const ClassificationReport& r, ReportFormat f) {
  if (f == ReportFormat::Text) return text_report(r);
  json rows = json::array();
  for (const auto& row : r.rows) rows.push_back(verdict_json(row));
  json nonimp = json::array();
  for (const auto& n : r.non_implications) {
    nonimp.push_back({{"statement", n.statement}, {"label", n.label}, {"certified", n.certified}});
  }
  json j = {{"system", {{"id", r.system_id}, {"type", r.system_type}}},
            {"flags", {{"open_map", r.flags.open_map}, {"invertible", r.flags.invertible}, {"trivial", r.flags.trivial}}},
            {"scales", {{"words", r.word_scale}, {"grid", r.grid_scale}}},
            {"verdicts", rows},
            {"notes", r.notes},
            {"tensions", r.tensions},
            {"non_implications", nonimp},
            {"gaps", r.gaps},
            {"contradictions", r.contradictions}};
  return j.dump(2) + "\n";
}

ClassificationReport parse_report(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  try {
    ClassificationReport r;
    r.system_id = j.at("system").at("id").get<std::string>();
    r.system_type = j.at("system").at("type").get<std::string>();
    const auto& fl = j.at("flags");
    r.flags = SystemFlags{fl.at("open_map").get<bool>(), fl.at("invertible").get<bool>(), fl.at("trivial").get<bool>()};
    r.word_scale = j.at("scales").at("words").get<std::string>();
    r.grid_scale = j.at("scales").at("grid").get<std::string>();
    for (const auto& row : j.at("verdicts")) r.rows.push_back(row_from(row));
    r.notes = j.at("notes").get<std::vector<std::string>>();
    r.tensions = j.at("tensions").get<std::vector<std::string>>();
    for (const auto& n : j.at("non_implications")) {
      r.non_implications.push_back(
          NonImplication{n.at("statement").get<int>(), n.at("label").get<std::string>(), n.at("certified").get<bool>()});
    }
    r.gaps = j.at("gaps").get<std::vector<std::string>>();
    r.contradictions = j.at("contradictions").get<std::vector<std::string>>();
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ValidationError, e.what());
  }
}

}  // namespace dynclass
