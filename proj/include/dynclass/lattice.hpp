#pragma once

#include <map>
#include <string>
#include <vector>

#include "dynclass/core.hpp"

namespace dynclass {

enum class Condition { None, OpenMap, Invertible, MinimalNontrivial };

std::string_view to_string(Condition c);

/// from[0] and ... and from[k] implies to (or not-to when negates). An empty
/// antecedent list means the edge fires on its condition alone.
struct ImplicationEdge {
  std::vector<PropertyId> from;
  PropertyId to;
  bool negates = false;
  Condition condition = Condition::None;
  bool nontrivial_only = false;
  std::string rule_id;
  std::string citation;

  std::string describe() const;
};

const std::vector<ImplicationEdge>& edge_ledger();

struct SystemFlags {
  bool open_map = false;
  bool invertible = false;
  bool trivial = false;

  bool operator==(const SystemFlags&) const = default;
};

bool edge_applies(const ImplicationEdge& e, const SystemFlags& flags);

struct VerdictTable {
  SystemFlags flags;
  std::map<PropertyId, Verdict> verdicts;
  /// Filled by propagate; cleared and rebuilt on every call.
  std::vector<std::string> notes;

  bool operator==(const VerdictTable&) const = default;
};

/// Closure of the certificates (PROVED / REFUTED) under the applicable edges,
/// forwards and by contraposition. Propagated entries of the input are
/// discarded and recomputed, so the result depends only on the direct
/// verdicts. A derived certificate never replaces a direct verdict; when it
/// disagrees with a direct finite-scale verdict a note is added. Throws
/// Contradiction naming both derivation chains.
VerdictTable propagate(const VerdictTable& t);

struct NonImplication {
  int statement = 0;
  std::string label;
  bool certified = false;  // every verdict involved is PROVED / REFUTED

  bool operator==(const NonImplication&) const = default;
};

struct ConsistencyReport {
  std::vector<std::string> contradictions;
  std::vector<PropertyId> unknowns;
  std::vector<std::string> tensions;
  std::vector<NonImplication> instances;
  std::vector<std::string> gaps;
};

/// Statement 6 has no constructive example and is always listed in gaps.
ConsistencyReport check_consistency(const VerdictTable& t);

}  // namespace dynclass
