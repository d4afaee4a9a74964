#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace dynclass {

enum class ErrorCode {
  EmptySystem,
  NotStronglyConnected,
  CapExceeded,
  IllegalWord,
  OutOfDomain,
  NonCanonical,
  InconsistentSamples,
  InvalidArgument,
  ParseError,
  ValidationError,
  Contradiction,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;

/// Finite ordered set of distinct symbol names.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> symbols);

  std::size_t size() const { return symbols_.size(); }
  const std::string& symbol(Symbol s) const { return symbols_.at(s); }
  const std::vector<std::string>& symbols() const { return symbols_; }
  std::optional<Symbol> index_of(std::string_view name) const;

  /// True when every symbol name is a single character, so words render
  /// without separators.
  bool compact() const { return compact_; }

  std::string render(std::span<const Symbol> w) const;
  /// Inverse of render. Compact alphabets read one character per symbol;
  /// others split on spaces. Throws IllegalWord on unknown symbols.
  Word parse(std::string_view text) const;

  bool operator==(const Alphabet& other) const { return symbols_ == other.symbols_; }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, Symbol> index_;
  bool compact_ = true;
};

/// Basic open set [w]: sequences whose first |w| symbols spell w.
struct Cylinder {
  explicit Cylinder(Word w);
  Word word;
};

bool word_occurs_in(std::span<const Symbol> needle, std::span<const Symbol> haystack);

enum class SetClass {
  Empty,
  FiniteNonempty,
  InfiniteNotSyndetic,
  SyndeticNotCofinite,
  Cofinite,
};

std::string_view to_string(SetClass c);

/// Subset S of the positive integers that is periodic beyond a threshold.
///
/// Membership of n < threshold is transient[n-1]; membership of
/// n >= threshold is pattern[(n - threshold) mod period]. Instances are always
/// canonical: the period is minimal and the threshold is minimal for it, so two
/// sets are equal iff their representations are equal.
class EventuallyPeriodicSet {
 public:
  /// Canonicalizes an arbitrary (transient, pattern) description.
  static EventuallyPeriodicSet from_parts(std::vector<bool> transient, std::vector<bool> pattern);

  /// Accepts only an already canonical description; throws NonCanonical otherwise.
  static EventuallyPeriodicSet from_canonical(std::vector<bool> transient, std::vector<bool> pattern);

  /// Packages sampled membership bits (bits[0] is n = 1) whose periodic
  /// regime starts at n = index with the given period. Requires
  /// bits.size() >= index + 2 * period and throws InconsistentSamples when the
  /// samples contradict the claimed (index, period).
  static EventuallyPeriodicSet from_samples(std::span<const bool> bits, std::size_t index,
                                            std::size_t period);

  static EventuallyPeriodicSet everything() { return from_parts({}, {true}); }
  static EventuallyPeriodicSet nothing() { return from_parts({}, {false}); }

  bool contains(std::uint64_t n) const;
  SetClass classify() const;

  std::size_t threshold() const { return transient_.size() + 1; }
  std::size_t period() const { return pattern_.size(); }
  const std::vector<bool>& transient() const { return transient_; }
  const std::vector<bool>& pattern() const { return pattern_; }

  /// Bits for n = 1..count.
  std::vector<bool> prefix(std::size_t count) const;

  /// Compact form "t|(p)": transient bits, then the repeating block.
  std::string to_string() const;
  /// Readable form such as "{n >= 2}" or "{n = 0 mod 2}" where possible.
  std::string describe() const;

  bool operator==(const EventuallyPeriodicSet&) const = default;

 private:
  EventuallyPeriodicSet(std::vector<bool> transient, std::vector<bool> pattern)
      : transient_(std::move(transient)), pattern_(std::move(pattern)) {}

  std::vector<bool> transient_;
  std::vector<bool> pattern_;
};

enum class PropertyId {
  TT,
  ST,
  VST,
  M,
  WM,
  ET,
  SET,
  SPT,
  TM,
  LEO,
  EXACT,
  FULLY_EXACT,
  DENSE_PERIODIC,
  ITER_ALMOST_OPEN,
};

inline constexpr std::size_t kPropertyCount = 14;

/// All properties in declaration order.
const std::vector<PropertyId>& all_properties();
/// The ten transitivity-hierarchy properties, TT through LEO.
const std::vector<PropertyId>& hierarchy_properties();

std::string_view to_string(PropertyId p);
std::optional<PropertyId> parse_property(std::string_view name);
std::string_view long_name(PropertyId p);

enum class Status { Proved, Refuted, Witness, NoWitness, RefutedBounded, Unknown };

std::string_view to_string(Status s);
std::optional<Status> parse_status(std::string_view name);

/// Finite horizon at which word-quantified criteria are checked.
struct WitnessScale {
  std::uint32_t ell = 2;  ///< longest cylinder word
  std::uint32_t L = 24;   ///< tail length standing in for a point
  std::uint32_t H = 32;   ///< longest connector searched
  std::uint32_t K = 8;    ///< run of consecutive lengths demanded by mixing

  void validate() const;
  std::string to_string() const;
  bool operator==(const WitnessScale&) const = default;
};

/// Grid and horizon used by the interval engine; eps kept as an exact "p/q" string.
struct GridHorizon {
  std::string eps;
  std::uint32_t horizon = 0;
  bool operator==(const GridHorizon&) const = default;
};

struct Bound {
  std::uint64_t value = 0;
  bool operator==(const Bound&) const = default;
};

using Scale = std::variant<std::monostate, WitnessScale, GridHorizon, Bound>;

std::string scale_to_string(const Scale& s);

struct Evidence {
  std::string kind;
  std::string summary;
  std::vector<std::string> items;
  bool operator==(const Evidence&) const = default;
};

struct Provenance {
  bool propagated = false;
  std::optional<PropertyId> from;
  std::string rule_id;
  std::vector<std::string> chain;
  bool operator==(const Provenance&) const = default;
};

struct Verdict {
  Status status = Status::Unknown;
  Scale scale;
  Evidence evidence;
  Provenance provenance;

  static Verdict proved(Evidence e);
  static Verdict refuted(Evidence e);
  static Verdict witness(Scale s, Evidence e);
  static Verdict no_witness(Scale s, Evidence e);
  static Verdict refuted_bounded(Scale s, Evidence e);
  static Verdict unknown(std::string why);

  bool is_certificate() const { return status == Status::Proved || status == Status::Refuted; }
  bool positive() const { return status == Status::Proved || status == Status::Witness; }
  bool negative() const {
    return status == Status::Refuted || status == Status::RefutedBounded ||
           status == Status::NoWitness;
  }

  bool operator==(const Verdict&) const = default;
};

}  // namespace dynclass
