#pragma once

#include <map>
#include <string>
#include <vector>

#include "dynclass/cli.hpp"

namespace dynclass {

enum class Truth { True, False, Untested };

std::string_view to_string(Truth t);

struct Expectation {
  Truth truth = Truth::Untested;
  /// Established fact (stated or classically derived), not just a belief
  /// about what a finite scale should show.
  bool certified = true;
  std::string anchor;
};

struct CorpusEntry {
  std::string id;
  SystemDescriptor system;
  std::map<PropertyId, Expectation> expected;
  ClassifyScales recommended;
};

const std::vector<CorpusEntry>& corpus_entries();
const CorpusEntry* find_entry(std::string_view id);

/// Empty string when the verdict is compatible with the expectation.
std::string expectation_mismatch(const Verdict& v, const Expectation& e);

struct EntryResult {
  std::string id;
  bool pass = false;
  double seconds = 0;
  ClassificationReport report;
  std::vector<std::string> failures;
};

struct CorpusOverrides {
  std::optional<WitnessScale> words;
  std::optional<std::string> eps;
  std::optional<std::uint32_t> horizon;
};

/// Classifies every entry (or the named ones) and checks expectations.
std::vector<EntryResult> run_corpus(const CorpusOverrides& overrides = {},
                                    const std::vector<std::string>& only = {});

}  // namespace dynclass
