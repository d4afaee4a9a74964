#pragma once

#include <bitset>
#include <memory>
#include <mutex>
#include <unordered_set>

#include "dynclass/bool_matrix.hpp"
#include "dynclass/core.hpp"
#include "dynclass/sft.hpp"

namespace dynclass {

inline constexpr std::size_t kMaxConnector = 127;

/// Bit m set iff some connector of length m works.
using LengthSet = std::bitset<kMaxConnector + 1>;

/// A subshift known only through its factor language.
///
/// Keys let the search engines collapse words with identical behaviour:
/// equal right keys must imply equal follower sets, and equal left keys must
/// imply equal predecessor sets. Subclasses with more structure override the
/// search primitives; the defaults are generic reference implementations.
class LanguageOracle {
 public:
  virtual ~LanguageOracle() = default;

  virtual const Alphabet& alphabet() const = 0;
  virtual std::string descriptor() const = 0;
  virtual bool is_legal(std::span<const Symbol> w) const = 0;

  virtual std::string right_key(std::span<const Symbol> w) const;
  virtual std::string left_key(std::span<const Symbol> w) const;

  /// One legal word of length L per left-key class.
  virtual std::vector<Word> tail_representatives(std::size_t L, std::size_t cap) const;
  /// Legal words of length L (at least |w|) starting with w, one per left-key class.
  virtual std::vector<Word> prefix_extensions(std::span<const Symbol> w, std::size_t L,
                                              std::size_t cap) const;
  /// For each y: the lengths m <= maxlen such that v a y is legal for some |a| = m.
  virtual std::vector<LengthSet> connector_table(std::span<const Symbol> v,
                                                 const std::vector<Word>& ys,
                                                 std::size_t maxlen) const;

  LengthSet connector_lengths(std::span<const Symbol> v, std::span<const Symbol> y,
                              std::size_t maxlen) const;

 protected:
  std::vector<Word> key_bfs(std::vector<Word> seeds, std::size_t L, std::size_t cap) const;
};

/// Vertex shift seen as a language.
class SftOracle : public LanguageOracle {
 public:
  explicit SftOracle(SftGraph g);

  const Alphabet& alphabet() const override { return graph_.vertices(); }
  std::string descriptor() const override { return "sft"; }
  bool is_legal(std::span<const Symbol> w) const override { return graph_.is_legal(w); }
  std::string right_key(std::span<const Symbol> w) const override;
  std::string left_key(std::span<const Symbol> w) const override;
  std::vector<LengthSet> connector_table(std::span<const Symbol> v, const std::vector<Word>& ys,
                                         std::size_t maxlen) const override;

  const SftGraph& graph() const { return graph_; }

 private:
  SftGraph graph_;
  std::vector<BoolMatrix> powers_;  // powers_[m] = A^m, m <= kMaxConnector + 1
};

struct Substitution {
  Alphabet alphabet;
  std::vector<Word> rules;  // rules[c] is the image of symbol c

  Word apply(std::span<const Symbol> w) const;
  BoolMatrix incidence() const;
};

bool substitution_primitive(const Substitution& s);

/// Factor language of a primitive, growing substitution.
class SubstitutionOracle : public LanguageOracle {
 public:
  explicit SubstitutionOracle(Substitution s);

  const Alphabet& alphabet() const override { return sub_.alphabet; }
  std::string descriptor() const override { return "substitution"; }
  bool is_legal(std::span<const Symbol> w) const override;

  const Substitution& substitution() const { return sub_; }
  /// All factors of the given length, sorted.
  std::vector<Word> factors(std::size_t n) const;
  /// Smallest M such that every factor of length M + |u| - 1 contains u.
  std::size_t recurrence_bound(std::span<const Symbol> u, std::size_t cap = 4096) const;

 private:
  void ensure(std::size_t n) const;

  Substitution sub_;
  std::vector<Word> two_words_;
  mutable std::mutex mutex_;
  mutable std::size_t computed_ = 0;
  mutable std::vector<std::shared_ptr<const std::unordered_set<std::string>>> by_length_;
};

/// Words over {0,1} in which every maximal 0-run flanked by 1s has length b^n, n >= 1.
class GapShiftOracle : public LanguageOracle {
 public:
  explicit GapShiftOracle(std::uint32_t base);

  const Alphabet& alphabet() const override { return alphabet_; }
  std::string descriptor() const override { return "gap_shift"; }
  bool is_legal(std::span<const Symbol> w) const override;
  std::string right_key(std::span<const Symbol> w) const override;
  std::string left_key(std::span<const Symbol> w) const override;
  std::vector<Word> tail_representatives(std::size_t L, std::size_t cap) const override;

  std::uint32_t base() const { return base_; }
  bool allowed_run(std::uint64_t r) const;

 private:
  Alphabet alphabet_{{"0", "1"}};
  std::uint32_t base_;
};

/// Words over {0} + base alphabet with no "00" whose 0-deleted image is a base factor.
class LindenstraussOracle : public LanguageOracle {
 public:
  explicit LindenstraussOracle(Substitution base);
  /// Default base: 1 -> 12, 2 -> 21.
  LindenstraussOracle();

  const Alphabet& alphabet() const override { return alphabet_; }
  std::string descriptor() const override { return "lindenstrauss"; }
  bool is_legal(std::span<const Symbol> w) const override;
  std::string right_key(std::span<const Symbol> w) const override;
  std::string left_key(std::span<const Symbol> w) const override;
  std::vector<LengthSet> connector_table(std::span<const Symbol> v, const std::vector<Word>& ys,
                                         std::size_t maxlen) const override;

  /// Image in the base alphabet with every 0 removed.
  Word hat(std::span<const Symbol> w) const;
  const SubstitutionOracle& base() const { return base_; }
  /// Recurrence bound of the base for hat(v); 0 when hat(v) is empty.
  std::size_t recurrence_bound(std::span<const Symbol> v) const;

 private:
  Alphabet alphabet_;
  SubstitutionOracle base_;
};

/// Pairs of words, legal iff both coordinates are.
class ProductOracle : public LanguageOracle {
 public:
  ProductOracle(std::shared_ptr<const LanguageOracle> first,
                std::shared_ptr<const LanguageOracle> second);

  const Alphabet& alphabet() const override { return alphabet_; }
  std::string descriptor() const override { return "product"; }
  bool is_legal(std::span<const Symbol> w) const override;
  std::string right_key(std::span<const Symbol> w) const override;
  std::string left_key(std::span<const Symbol> w) const override;
  std::vector<Word> tail_representatives(std::size_t L, std::size_t cap) const override;
  std::vector<Word> prefix_extensions(std::span<const Symbol> w, std::size_t L,
                                      std::size_t cap) const override;
  std::vector<LengthSet> connector_table(std::span<const Symbol> v, const std::vector<Word>& ys,
                                         std::size_t maxlen) const override;

  std::pair<Word, Word> split(std::span<const Symbol> w) const;
  Word join(const Word& a, const Word& b) const;

 private:
  std::shared_ptr<const LanguageOracle> first_, second_;
  Alphabet alphabet_;
  std::size_t n2_;
};

std::shared_ptr<const LanguageOracle> product_oracle(std::shared_ptr<const LanguageOracle> a,
                                                     std::shared_ptr<const LanguageOracle> b);

inline constexpr std::size_t kDefaultWordCap = 200000;

/// Legal words of exactly this length in lexicographic order. Throws CapExceeded.
std::vector<Word> enumerate_words(const LanguageOracle& o, std::size_t length,
                                  std::size_t cap = kDefaultWordCap);

/// Bounded check of the word criterion for p. Returns WITNESS or NO_WITNESS.
Verdict witness_check(const LanguageOracle& o, PropertyId p, const WitnessScale& s,
                      Exec exec = Exec::Parallel);

/// REFUTED_BOUNDED(N) with a tail y that no connector of length <= N reaches
/// from v, or UNKNOWN.
Verdict refute_vst_bound(const LanguageOracle& o, std::span<const Symbol> v, std::size_t N,
                         std::size_t L);

/// Smallest m <= H with v a x legal for some |a| = m, for every tail x of length L.
std::optional<std::size_t> uniform_connector_length(const LanguageOracle& o,
                                                    std::span<const Symbol> v, std::size_t L,
                                                    std::size_t H);

/// WITNESS if some primitive w with |w| <= P has w^K legal; REFUTED_BOUNDED(P) otherwise.
Verdict periodic_word_scan(const LanguageOracle& o, std::size_t P, std::size_t K);

}  // namespace dynclass
