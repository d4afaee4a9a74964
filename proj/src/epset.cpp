#include <algorithm>
#include <sstream>

#include "dynclass/core.hpp"

namespace dynclass {

namespace {

std::size_t minimal_cyclic_period(const std::vector<bool>& pattern) {
  const std::size_t p = pattern.size();
  for (std::size_t d = 1; d < p; ++d) {
    if (p % d != 0) continue;
    bool ok = true;
    for (std::size_t i = 0; i < p && ok; ++i) ok = pattern[i] == pattern[(i + d) % p];
    if (ok) return d;
  }
  return p;
}

std::string bits(const std::vector<bool>& v) {
  std::string s;
  for (bool b : v) s += b ? '1' : '0';
  return s;
}

}  // namespace

EventuallyPeriodicSet EventuallyPeriodicSet::from_parts(std::vector<bool> transient,
                                                        std::vector<bool> pattern) {
  if (pattern.empty()) throw Error(ErrorCode::InvalidArgument, "period must be >= 1");
  pattern.resize(minimal_cyclic_period(pattern));
  // Pull the threshold down while the last transient bit already agrees with
  // the periodic continuation read backwards.
  while (!transient.empty() && transient.back() == pattern.back()) {
    transient.pop_back();
    std::rotate(pattern.rbegin(), pattern.rbegin() + 1, pattern.rend());
  }
  return EventuallyPeriodicSet(std::move(transient), std::move(pattern));
}

EventuallyPeriodicSet EventuallyPeriodicSet::from_canonical(std::vector<bool> transient,
                                                            std::vector<bool> pattern) {
  auto canon = from_parts(transient, pattern);
  if (canon.transient_ != transient || canon.pattern_ != pattern) {
    throw Error(ErrorCode::NonCanonical,
                "set " + bits(transient) + "|(" + bits(pattern) + ") is not canonical");
  }
  return canon;
}

EventuallyPeriodicSet EventuallyPeriodicSet::from_samples(std::span<const bool> samples,
                                                          std::size_t index, std::size_t period) {
  if (index < 1 || period < 1) {
    throw Error(ErrorCode::InvalidArgument, "index and period must be >= 1");
  }
  if (samples.size() < index + 2 * period) {
    throw Error(ErrorCode::InconsistentSamples, "need at least index + 2*period samples");
  }
  for (std::size_t n = index; n + period <= samples.size(); ++n) {
    if (samples[n - 1] != samples[n + period - 1]) {
      std::ostringstream os;
      os << "bit at n=" << n << " differs from n=" << n + period << " (index " << index
         << ", period " << period << ")";
      throw Error(ErrorCode::InconsistentSamples, os.str());
    }
  }
  std::vector<bool> transient(samples.begin(), samples.begin() + (index - 1));
  std::vector<bool> pattern(samples.begin() + (index - 1), samples.begin() + (index - 1 + period));
  return from_parts(std::move(transient), std::move(pattern));
}

bool EventuallyPeriodicSet::contains(std::uint64_t n) const {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "membership is defined for n >= 1");
  if (n < threshold()) return transient_[n - 1];
  return pattern_[(n - threshold()) % pattern_.size()];
}

SetClass EventuallyPeriodicSet::classify() const {
  const bool any_tail = std::find(pattern_.begin(), pattern_.end(), true) != pattern_.end();
  const bool all_tail = std::find(pattern_.begin(), pattern_.end(), false) == pattern_.end();
  if (all_tail) return SetClass::Cofinite;
  if (any_tail) return SetClass::SyndeticNotCofinite;
  const bool any_transient = std::find(transient_.begin(), transient_.end(), true) != transient_.end();
  return any_transient ? SetClass::FiniteNonempty : SetClass::Empty;
}

std::vector<bool> EventuallyPeriodicSet::prefix(std::size_t count) const {
  std::vector<bool> out(count);
  for (std::size_t n = 1; n <= count; ++n) out[n - 1] = contains(n);
  return out;
}

std::string EventuallyPeriodicSet::to_string() const {
  return bits(transient_) + "|(" + bits(pattern_) + ")";
}

std::string EventuallyPeriodicSet::describe() const {
  std::ostringstream os;
  const std::size_t m = threshold();
  const std::size_t p = period();
  const auto cls = classify();
  if (cls == SetClass::Empty) return "{}";
  if (cls == SetClass::FiniteNonempty) {
    os << "{";
    bool first = true;
    for (std::size_t n = 1; n < m; ++n) {
      if (!transient_[n - 1]) continue;
      os << (first ? "" : ", ") << n;
      first = false;
    }
    os << "}";
    return os.str();
  }
  std::vector<std::size_t> residues;
  for (std::size_t i = 0; i < p; ++i) {
    if (pattern_[i]) residues.push_back((m + i) % p);
  }
  std::sort(residues.begin(), residues.end());
  std::vector<std::size_t> extra;
  for (std::size_t n = 1; n < m; ++n) {
    if (transient_[n - 1]) extra.push_back(n);
  }
  os << "{";
  for (std::size_t n : extra) os << n << ", ";
  if (p == 1) {
    os << "n >= " << m;
  } else {
    os << "n >= " << m << " : n mod " << p << " in {";
    for (std::size_t i = 0; i < residues.size(); ++i) os << (i ? "," : "") << residues[i];
    os << "}";
  }
  os << "}";
  return os.str();
}

}  // namespace dynclass
