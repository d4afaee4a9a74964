#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dynclass/core.hpp"
#include "dynclass/interval.hpp"
#include "dynclass/lang.hpp"
#include "dynclass/lattice.hpp"
#include "dynclass/sft.hpp"

namespace dynclass {

struct SystemDescriptor;

struct SftSpec {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
  Sided sided = Sided::One;
  bool operator==(const SftSpec&) const = default;
};

struct ForbiddenWordsSpec {
  std::vector<std::string> alphabet;
  std::vector<std::string> words;
  Sided sided = Sided::One;
  bool operator==(const ForbiddenWordsSpec&) const = default;
};

/// Rules in alphabet order: (symbol, image).
using RuleList = std::vector<std::pair<std::string, std::string>>;

struct SubstitutionSpec {
  RuleList rules;
  bool operator==(const SubstitutionSpec&) const = default;
};

struct GapShiftSpec {
  std::uint32_t base = 3;
  bool operator==(const GapShiftSpec&) const = default;
};

struct LindenstraussSpec {
  RuleList base_rules;  // empty: 1 -> 12, 2 -> 21
  bool operator==(const LindenstraussSpec&) const = default;
};

struct PlMapSpec {
  std::string lo, hi;
  std::vector<std::string> breakpoints, values;
  bool operator==(const PlMapSpec&) const = default;
};

struct LadderSpec {
  bool operator==(const LadderSpec&) const = default;
};

struct ProductSpec {
  std::vector<SystemDescriptor> factors;
  bool operator==(const ProductSpec&) const;
};

using SystemBody = std::variant<SftSpec, ForbiddenWordsSpec, SubstitutionSpec, GapShiftSpec,
                                LindenstraussSpec, PlMapSpec, LadderSpec, ProductSpec>;

struct SystemDescriptor {
  std::string id;
  std::string description;
  SystemBody body;

  std::string type() const;
  bool operator==(const SystemDescriptor&) const = default;
};

/// Throws ParseError ("line L, column C: ...") or ValidationError ("$.path: ...").
SystemDescriptor parse_system_file(std::string_view text);
std::string emit_system_file(const SystemDescriptor& d);

/// A descriptor turned into something the engines understand. Exactly one of
/// graph, oracle, map is set.
struct BuiltSystem {
  std::optional<SftGraph> graph;
  std::shared_ptr<const LanguageOracle> oracle;
  std::optional<PLMap> map;
  SystemFlags flags;
  bool substitution_primitive = false;
};

BuiltSystem build_system(const SystemDescriptor& d);

struct ClassifyScales {
  WitnessScale words;
  std::string eps = "1/64";
  std::uint32_t horizon = 40;
  bool operator==(const ClassifyScales&) const = default;
};

struct ReportRow {
  PropertyId property;
  Verdict verdict;
  std::string citation;
  bool operator==(const ReportRow&) const = default;
};

struct ClassificationReport {
  std::string system_id;
  std::string system_type;
  SystemFlags flags;
  std::string word_scale;
  std::string grid_scale;
  std::vector<ReportRow> rows;
  std::vector<std::string> notes;
  std::vector<std::string> tensions;
  std::vector<NonImplication> non_implications;
  std::vector<std::string> gaps;
  std::vector<std::string> contradictions;

  const Verdict* find(PropertyId p) const;
  bool operator==(const ClassificationReport&) const = default;
};

/// Exact deciders first, lattice closure, finite-scale checks for whatever is
/// still open, closure again. Contradictions are reported, not thrown.
/// An empty filter means every property.
ClassificationReport run_classify(const SystemDescriptor& d, const std::vector<PropertyId>& props,
                                  const ClassifyScales& scales, Exec exec = Exec::Parallel);

/// The full table behind a report, after closure.
VerdictTable classify_table(const SystemDescriptor& d, const ClassifyScales& scales,
                            Exec exec = Exec::Parallel);

enum class ReportFormat { Text, Json };

std::string emit_report(const ClassificationReport& r, ReportFormat f);
/// Inverse of emit_report(r, Json).
ClassificationReport parse_report(std::string_view json);

struct HittingResult {
  std::optional<EventuallyPeriodicSet> exact;
  std::vector<bool> members;  // n = 1..max_n
  std::string method;
};

/// N([u],[v]): exact for vertex shifts, bounded membership for language
/// systems. Throws ValidationError for interval maps.
HittingResult hitting_set_of(const SystemDescriptor& d, std::string_view u, std::string_view v,
                             std::size_t max_n);

/// "ell=2,L=24,H=32,K=8" (any subset, any order).
WitnessScale parse_word_scale(std::string_view text, WitnessScale base = {});
/// "TT,ST,..." ; throws InvalidArgument on unknown names.
std::vector<PropertyId> parse_property_list(std::string_view text);

}  // namespace dynclass
