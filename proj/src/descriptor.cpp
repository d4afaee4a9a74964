#include <algorithm>
#include <set>

#include "dynclass/cli.hpp"
#include "json.hpp"

namespace dynclass {

using nlohmann::json;

bool ProductSpec::operator==(const ProductSpec& o) const { return factors == o.factors; }

std::string SystemDescriptor::type() const {
  return std::visit(
      [](const auto& b) -> std::string {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, SftSpec>) return "sft";
        else if constexpr (std::is_same_v<T, ForbiddenWordsSpec>) return "forbidden_words";
        else if constexpr (std::is_same_v<T, SubstitutionSpec>) return "substitution";
        else if constexpr (std::is_same_v<T, GapShiftSpec>) return "gap_shift";
        else if constexpr (std::is_same_v<T, LindenstraussSpec>) return "lindenstrauss";
        else if constexpr (std::is_same_v<T, PlMapSpec>) return "pl_map";
        else if constexpr (std::is_same_v<T, LadderSpec>) return "ladder";
        else return "product";
      },
      body);
}

namespace {

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::ValidationError, path + ": " + what);
}

void only_fields(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return it.key() == a; });
    if (!ok) invalid(path + "." + it.key(), "unknown field");
  }
}

const json& need(const json& j, const std::string& path, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) invalid(path + "." + key, "missing field");
  return *it;
}

std::string str(const json& j, const std::string& path) {
  if (!j.is_string()) invalid(path, "expected a string");
  return j.get<std::string>();
}

std::vector<std::string> strings(const json& j, const std::string& path, bool nonempty = true) {
  if (!j.is_array()) invalid(path, "expected an array of strings");
  if (nonempty && j.empty()) invalid(path, "must not be empty");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(str(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

Sided sided_of(const json& j, const std::string& path) {
  auto it = j.find("sided");
  if (it == j.end()) return Sided::One;
  auto s = str(*it, path + ".sided");
  if (s == "one") return Sided::One;
  if (s == "two") return Sided::Two;
  invalid(path + ".sided", "expected \"one\" or \"two\"");
}

RuleList rules_of(const json& j, const std::string& path) {
  if (!j.is_object() || j.empty()) invalid(path, "expected a nonempty object of symbol -> image");
  RuleList out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    out.emplace_back(it.key(), str(it.value(), path + "." + it.key()));
  }
  return out;
}

std::string rational_field(const json& j, const std::string& path) {
  auto s = str(j, path);
  try {
    parse_rational(s);
  } catch (const Error& e) {
    invalid(path, e.what());
  }
  return s;
}

SystemDescriptor parse_node(const json& j, const std::string& path) {
  if (!j.is_object()) invalid(path, "expected an object");
  SystemDescriptor d;
  auto type = str(need(j, path, "type"), path + ".type");
  if (auto it = j.find("id"); it != j.end()) d.id = str(*it, path + ".id");
  if (auto it = j.find("description"); it != j.end()) d.description = str(*it, path + ".description");

  if (type == "sft") {
    only_fields(j, path, {"type", "id", "description", "vertices", "edges", "sided"});
    SftSpec s;
    s.vertices = strings(need(j, path, "vertices"), path + ".vertices");
    const auto& edges = need(j, path, "edges");
    if (!edges.is_array()) invalid(path + ".edges", "expected an array of pairs");
    std::set<std::string> names(s.vertices.begin(), s.vertices.end());
    for (std::size_t i = 0; i < edges.size(); ++i) {
      auto p = path + ".edges[" + std::to_string(i) + "]";
      auto pair = strings(edges[i], p);
      if (pair.size() != 2) invalid(p, "expected [from, to]");
      for (std::size_t k = 0; k < 2; ++k) {
        if (!names.count(pair[k])) invalid(p + "[" + std::to_string(k) + "]", "unknown vertex \"" + pair[k] + "\"");
      }
      s.edges.emplace_back(pair[0], pair[1]);
    }
    s.sided = sided_of(j, path);
    d.body = std::move(s);
  } else if (type == "forbidden_words") {
    only_fields(j, path, {"type", "id", "description", "alphabet", "words", "sided"});
    ForbiddenWordsSpec s;
    s.alphabet = strings(need(j, path, "alphabet"), path + ".alphabet");
    s.words = strings(need(j, path, "words"), path + ".words");
    s.sided = sided_of(j, path);
    d.body = std::move(s);
  } else if (type == "substitution") {
    only_fields(j, path, {"type", "id", "description", "rules"});
    d.body = SubstitutionSpec{rules_of(need(j, path, "rules"), path + ".rules")};
  } else if (type == "gap_shift") {
    only_fields(j, path, {"type", "id", "description", "base"});
    const auto& b = need(j, path, "base");
    if (!b.is_number_unsigned() || b.get<std::uint64_t>() < 2 || b.get<std::uint64_t>() > 1000) {
      invalid(path + ".base", "expected an integer between 2 and 1000");
    }
    d.body = GapShiftSpec{static_cast<std::uint32_t>(b.get<std::uint64_t>())};
  } else if (type == "lindenstrauss") {
    only_fields(j, path, {"type", "id", "description", "base_rules"});
    LindenstraussSpec s;
    if (auto it = j.find("base_rules"); it != j.end()) s.base_rules = rules_of(*it, path + ".base_rules");
    d.body = std::move(s);
  } else if (type == "pl_map") {
    only_fields(j, path, {"type", "id", "description", "domain", "breakpoints", "values"});
    PlMapSpec s;
    const auto& dom = need(j, path, "domain");
    auto ends = strings(dom, path + ".domain");
    if (ends.size() != 2) invalid(path + ".domain", "expected [lo, hi]");
    s.lo = rational_field(dom[0], path + ".domain[0]");
    s.hi = rational_field(dom[1], path + ".domain[1]");
    const auto& bp = need(j, path, "breakpoints");
    const auto& vals = need(j, path, "values");
    s.breakpoints = strings(bp, path + ".breakpoints");
    s.values = strings(vals, path + ".values");
    for (std::size_t i = 0; i < s.breakpoints.size(); ++i) {
      rational_field(bp[i], path + ".breakpoints[" + std::to_string(i) + "]");
    }
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      rational_field(vals[i], path + ".values[" + std::to_string(i) + "]");
    }
    if (s.values.size() != s.breakpoints.size()) invalid(path + ".values", "length differs from breakpoints");
    d.body = std::move(s);
  } else if (type == "ladder") {
    only_fields(j, path, {"type", "id", "description"});
    d.body = LadderSpec{};
  } else if (type == "product") {
    only_fields(j, path, {"type", "id", "description", "factors"});
    const auto& f = need(j, path, "factors");
    if (!f.is_array() || f.size() < 2) invalid(path + ".factors", "expected at least two systems");
    ProductSpec s;
    for (std::size_t i = 0; i < f.size(); ++i) {
      s.factors.push_back(parse_node(f[i], path + ".factors[" + std::to_string(i) + "]"));
    }
    d.body = std::move(s);
  } else {
    invalid(path + ".type", "unknown system type \"" + type + "\"");
  }
  return d;
}

json rules_json(const RuleList& r) {
  json out = json::object();
  for (const auto& [k, v] : r) out[k] = v;
  return out;
}

json node_json(const SystemDescriptor& d) {
  json j;
  j["type"] = d.type();
  if (!d.id.empty()) j["id"] = d.id;
  if (!d.description.empty()) j["description"] = d.description;
  std::visit(
      [&](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, SftSpec>) {
          j["vertices"] = b.vertices;
          json edges = json::array();
          for (const auto& [a, c] : b.edges) edges.push_back({a, c});
          j["edges"] = edges;
          j["sided"] = b.sided == Sided::One ? "one" : "two";
        } else if constexpr (std::is_same_v<T, ForbiddenWordsSpec>) {
          j["alphabet"] = b.alphabet;
          j["words"] = b.words;
          j["sided"] = b.sided == Sided::One ? "one" : "two";
        } else if constexpr (std::is_same_v<T, SubstitutionSpec>) {
          j["rules"] = rules_json(b.rules);
        } else if constexpr (std::is_same_v<T, GapShiftSpec>) {
          j["base"] = b.base;
        } else if constexpr (std::is_same_v<T, LindenstraussSpec>) {
          if (!b.base_rules.empty()) j["base_rules"] = rules_json(b.base_rules);
        } else if constexpr (std::is_same_v<T, PlMapSpec>) {
          j["domain"] = {b.lo, b.hi};
          j["breakpoints"] = b.breakpoints;
          j["values"] = b.values;
        } else if constexpr (std::is_same_v<T, ProductSpec>) {
          json f = json::array();
          for (const auto& x : b.factors) f.push_back(node_json(x));
          j["factors"] = f;
        }
      },
      d.body);
  return j;
}

}  // namespace

SystemDescriptor parse_system_file(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    std::size_t upto = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
  return parse_node(j, "$");
}

std::string emit_system_file(const SystemDescriptor& d) { return node_json(d).dump(2) + "\n"; }

namespace {

Substitution substitution_of(const RuleList& rules, const std::string& path) {
  std::vector<std::string> names;
  for (const auto& r : rules) names.push_back(r.first);
  Alphabet a(names);
  Substitution s{a, {}};
  for (const auto& [k, img] : rules) {
    try {
      s.rules.push_back(a.parse(img));
    } catch (const Error& e) {
      invalid(path + "." + k, e.what());
    }
    if (s.rules.back().empty()) invalid(path + "." + k, "image is empty");
  }
  return s;
}

std::shared_ptr<const LanguageOracle> as_oracle(const BuiltSystem& b) {
  if (b.oracle) return b.oracle;
  if (b.graph) return std::make_shared<SftOracle>(*b.graph);
  throw Error(ErrorCode::ValidationError, "interval maps cannot be product factors");
}

bool strictly_monotone_onto(const PLMap& f) {
  auto slopes = f.slopes();
  bool up = std::all_of(slopes.begin(), slopes.end(), [](const Rational& s) { return s > 0; });
  bool down = std::all_of(slopes.begin(), slopes.end(), [](const Rational& s) { return s < 0; });
  if (!up && !down) return false;
  return f.image(f.domain()) == f.domain();
}

BuiltSystem build_at(const SystemDescriptor& d, const std::string& path) {
  BuiltSystem out;
  std::visit(
      [&](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, SftSpec>) {
          Alphabet a(b.vertices);
          std::vector<Edge> edges;
          for (const auto& [x, y] : b.edges) edges.emplace_back(*a.index_of(x), *a.index_of(y));
          SftGraph g(a, edges, b.sided);
          out.graph = essentialize(g);
        } else if constexpr (std::is_same_v<T, ForbiddenWordsSpec>) {
          Alphabet a(b.alphabet);
          std::vector<Word> words;
          for (std::size_t i = 0; i < b.words.size(); ++i) {
            try {
              words.push_back(a.parse(b.words[i]));
            } catch (const Error& e) {
              invalid(path + ".words[" + std::to_string(i) + "]", e.what());
            }
          }
          out.graph = higher_block_recode(a, words, b.sided);
        } else if constexpr (std::is_same_v<T, SubstitutionSpec>) {
          auto s = substitution_of(b.rules, path + ".rules");
          out.substitution_primitive = substitution_primitive(s);
          if (!out.substitution_primitive) invalid(path + ".rules", "substitution is not primitive");
          out.oracle = std::make_shared<SubstitutionOracle>(std::move(s));
        } else if constexpr (std::is_same_v<T, GapShiftSpec>) {
          out.oracle = std::make_shared<GapShiftOracle>(b.base);
        } else if constexpr (std::is_same_v<T, LindenstraussSpec>) {
          if (b.base_rules.empty()) {
            out.oracle = std::make_shared<LindenstraussOracle>();
          } else {
            auto s = substitution_of(b.base_rules, path + ".base_rules");
            if (!substitution_primitive(s)) invalid(path + ".base_rules", "substitution is not primitive");
            out.oracle = std::make_shared<LindenstraussOracle>(std::move(s));
          }
        } else if constexpr (std::is_same_v<T, PlMapSpec>) {
          std::vector<Rational> xs, ys;
          for (const auto& x : b.breakpoints) xs.push_back(parse_rational(x));
          for (const auto& y : b.values) ys.push_back(parse_rational(y));
          if (xs.front() != parse_rational(b.lo) || xs.back() != parse_rational(b.hi)) {
            invalid(path + ".breakpoints", "must start and end at the domain ends");
          }
          try {
            out.map = PLMap::finite(xs, ys);
          } catch (const Error& e) {
            invalid(path, e.what());
          }
          out.flags.invertible = strictly_monotone_onto(*out.map);
        } else if constexpr (std::is_same_v<T, LadderSpec>) {
          out.map = PLMap::ladder();
        } else if constexpr (std::is_same_v<T, ProductSpec>) {
          std::vector<BuiltSystem> parts;
          for (std::size_t i = 0; i < b.factors.size(); ++i) {
            parts.push_back(build_at(b.factors[i], path + ".factors[" + std::to_string(i) + "]"));
            if (parts.back().map) invalid(path + ".factors[" + std::to_string(i) + "]", "interval maps cannot be product factors");
          }
          bool all_graphs = std::all_of(parts.begin(), parts.end(), [](const BuiltSystem& p) { return p.graph.has_value(); });
          if (all_graphs) {
            SftGraph g = *parts[0].graph;
            for (std::size_t i = 1; i < parts.size(); ++i) g = build_product(g, *parts[i].graph);
            out.graph = g;
          } else {
            auto o = as_oracle(parts[0]);
            for (std::size_t i = 1; i < parts.size(); ++i) o = product_oracle(o, as_oracle(parts[i]));
            out.oracle = o;
          }
        }
      },
      d.body);
  if (out.graph) {
    out.flags.open_map = out.graph->open_map();
    out.flags.invertible = out.graph->invertible();
    out.flags.trivial = out.graph->vertex_count() == 1;
  }
  return out;
}

}  // namespace

BuiltSystem build_system(const SystemDescriptor& d) { return build_at(d, "$"); }

}  // namespace dynclass
