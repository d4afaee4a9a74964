#include <map>
#include <algorithm>
#include <cstring>
#include <functional>
#include <set>
#include <unordered_map>

#include "dynclass/lang.hpp"

namespace dynclass {

namespace {

std::string encode(std::span<const Symbol> w) {
  std::string out(w.size() * sizeof(Symbol), '\0');
  if (!w.empty()) std::memcpy(out.data(), w.data(), out.size());
  return out;
}

Word decode(const std::string& s) {
  Word w(s.size() / sizeof(Symbol));
  if (!w.empty()) std::memcpy(w.data(), s.data(), s.size());
  return w;
}

Word concat(std::span<const Symbol> a, std::span<const Symbol> b) {
  Word out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::string framed(const std::string& a, const std::string& b) {
  return std::to_string(a.size()) + ":" + a + b;
}

}  // namespace

// ---------------------------------------------------------------- defaults

std::string LanguageOracle::right_key(std::span<const Symbol> w) const { return encode(w); }
std::string LanguageOracle::left_key(std::span<const Symbol> w) const { return encode(w); }

std::vector<Word> LanguageOracle::key_bfs(std::vector<Word> frontier, std::size_t L,
                                          std::size_t cap) const {
  std::size_t len = frontier.empty() ? 0 : frontier.front().size();
  const auto symbols = static_cast<Symbol>(alphabet().size());
  while (len < L) {
    std::vector<Word> next;
    std::unordered_set<std::string> seen;
    for (const auto& w : frontier) {
      Word ext = w;
      ext.push_back(0);
      for (Symbol s = 0; s < symbols; ++s) {
        ext.back() = s;
        if (!is_legal(ext)) continue;
        if (!seen.insert(framed(left_key(ext), right_key(ext))).second) continue;
        next.push_back(ext);
        if (next.size() > cap) {
          throw Error(ErrorCode::CapExceeded, "more than " + std::to_string(cap) + " word classes");
        }
      }
    }
    frontier = std::move(next);
    ++len;
  }
  std::vector<Word> out;
  std::unordered_set<std::string> seen;
  for (auto& w : frontier) {
    if (seen.insert(left_key(w)).second) out.push_back(std::move(w));
  }
  return out;
}

std::vector<Word> LanguageOracle::tail_representatives(std::size_t L, std::size_t cap) const {
  if (L == 0) throw Error(ErrorCode::InvalidArgument, "tail length must be >= 1");
  std::vector<Word> seeds;
  for (Symbol s = 0; s < alphabet().size(); ++s) {
    Word w{s};
    if (is_legal(w)) seeds.push_back(w);
  }
  // collapse seeds too
  std::vector<Word> uniq;
  std::unordered_set<std::string> seen;
  for (auto& w : seeds) {
    if (seen.insert(framed(left_key(w), right_key(w))).second) uniq.push_back(w);
  }
  return key_bfs(std::move(uniq), L, cap);
}

std::vector<Word> LanguageOracle::prefix_extensions(std::span<const Symbol> w, std::size_t L,
                                                    std::size_t cap) const {
  if (!is_legal(w)) throw Error(ErrorCode::IllegalWord, "cannot extend an illegal word");
  return key_bfs({Word(w.begin(), w.end())}, std::max(L, w.size()), cap);
}

std::vector<LengthSet> LanguageOracle::connector_table(std::span<const Symbol> v,
                                                       const std::vector<Word>& ys,
                                                       std::size_t maxlen) const {
  if (maxlen > kMaxConnector) throw Error(ErrorCode::InvalidArgument, "connector length too large");
  std::vector<LengthSet> out(ys.size());
  if (!is_legal(v)) return out;
  std::vector<Word> frontier{Word(v.begin(), v.end())};
  const auto symbols = static_cast<Symbol>(alphabet().size());
  for (std::size_t m = 0; m <= maxlen && !frontier.empty(); ++m) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
      for (const auto& f : frontier) {
        if (is_legal(concat(f, ys[j]))) {
          out[j].set(m);
          break;
        }
      }
    }
    if (m == maxlen) break;
    std::vector<Word> next;
    std::unordered_set<std::string> seen;
    for (const auto& f : frontier) {
      Word ext = f;
      ext.push_back(0);
      for (Symbol s = 0; s < symbols; ++s) {
        ext.back() = s;
        if (is_legal(ext) && seen.insert(right_key(ext)).second) next.push_back(ext);
      }
    }
    frontier = std::move(next);
  }
  return out;
}

LengthSet LanguageOracle::connector_lengths(std::span<const Symbol> v, std::span<const Symbol> y,
                                            std::size_t maxlen) const {
  return connector_table(v, {Word(y.begin(), y.end())}, maxlen).front();
}

// ---------------------------------------------------------------- sft

SftOracle::SftOracle(SftGraph g) : graph_(essentialize(g)) {
  powers_.push_back(BoolMatrix::identity(graph_.vertex_count()));
  for (std::size_t m = 1; m <= kMaxConnector + 1; ++m) {
    powers_.push_back(multiply(powers_.back(), graph_.adjacency()));
  }
}

std::string SftOracle::right_key(std::span<const Symbol> w) const {
  return w.empty() ? std::string() : encode(w.last(1));
}

std::string SftOracle::left_key(std::span<const Symbol> w) const {
  return w.empty() ? std::string() : encode(w.first(1));
}

std::vector<LengthSet> SftOracle::connector_table(std::span<const Symbol> v,
                                                  const std::vector<Word>& ys,
                                                  std::size_t maxlen) const {
  if (maxlen > kMaxConnector) throw Error(ErrorCode::InvalidArgument, "connector length too large");
  std::vector<LengthSet> out(ys.size());
  if (v.empty() || !is_legal(v)) return out;
  for (std::size_t j = 0; j < ys.size(); ++j) {
    if (ys[j].empty() || !is_legal(ys[j])) continue;
    for (std::size_t m = 0; m <= maxlen; ++m) {
      if (powers_[m + 1].get(v.back(), ys[j].front())) out[j].set(m);
    }
  }
  return out;
}

// ---------------------------------------------------------------- substitution

Word Substitution::apply(std::span<const Symbol> w) const {
  Word out;
  for (Symbol s : w) out.insert(out.end(), rules.at(s).begin(), rules.at(s).end());
  return out;
}

BoolMatrix Substitution::incidence() const {
  BoolMatrix m(alphabet.size());
  for (Symbol i = 0; i < rules.size(); ++i) {
    for (Symbol j : rules[i]) m.set(i, j);
  }
  return m;
}

bool substitution_primitive(const Substitution& s) {
  const auto n = s.alphabet.size();
  const auto a = s.incidence();
  BoolMatrix p = a;
  for (std::size_t k = 1; k <= n * n; ++k) {
    if (p.all_ones()) return true;
    p = multiply(p, a);
  }
  return false;
}

SubstitutionOracle::SubstitutionOracle(Substitution s) : sub_(std::move(s)) {
  if (sub_.rules.size() != sub_.alphabet.size()) {
    throw Error(ErrorCode::InvalidArgument, "one rule per symbol required");
  }
  std::size_t longest = 0;
  for (const auto& r : sub_.rules) {
    if (r.empty()) throw Error(ErrorCode::InvalidArgument, "substitution images must be nonempty");
    for (Symbol x : r) {
      if (x >= sub_.alphabet.size()) throw Error(ErrorCode::InvalidArgument, "rule symbol out of range");
    }
    longest = std::max(longest, r.size());
  }
  if (!substitution_primitive(sub_)) throw Error(ErrorCode::InvalidArgument, "substitution is not primitive");
  if (longest < 2) throw Error(ErrorCode::InvalidArgument, "substitution does not grow");

  std::set<Word> pairs;
  auto harvest = [&](const Word& w) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i) pairs.insert(Word{w[i], w[i + 1]});
  };
  for (const auto& r : sub_.rules) harvest(r);
  for (std::size_t before = 0; before != pairs.size();) {
    before = pairs.size();
    std::vector<Word> snapshot(pairs.begin(), pairs.end());
    for (const auto& p : snapshot) harvest(sub_.apply(p));
  }
  two_words_.assign(pairs.begin(), pairs.end());
}

void SubstitutionOracle::ensure(std::size_t n) const {
  if (n <= computed_) return;
  const std::size_t target = std::max({n, 2 * computed_, std::size_t{16}});
  std::vector<Word> images(two_words_.begin(), two_words_.end());
  // every factor of length target sits inside s^j(bc) for a legal two-word bc
  // once every letter image s^j(c) has length at least target - 1
  const auto letters = sub_.alphabet.size();
  std::vector<std::size_t> lengths(letters, 1);
  while (*std::min_element(lengths.begin(), lengths.end()) + 1 < target) {
    std::vector<std::size_t> next(letters, 0);
    for (Symbol c = 0; c < letters; ++c) {
      for (Symbol x : sub_.rules[c]) next[c] += lengths[x];
    }
    lengths = std::move(next);
    for (auto& w : images) w = sub_.apply(w);
  }
  std::unordered_set<std::string> top;
  for (const auto& w : images) {
    for (std::size_t i = 0; i + target <= w.size(); ++i) {
      top.insert(encode(std::span<const Symbol>(w).subspan(i, target)));
    }
  }
  std::vector<std::shared_ptr<const std::unordered_set<std::string>>> levels(target + 1);
  levels[target] = std::make_shared<const std::unordered_set<std::string>>(std::move(top));
  for (std::size_t k = target; k-- > 1;) {
    std::unordered_set<std::string> shorter;
    for (const auto& f : *levels[k + 1]) shorter.insert(f.substr(0, k * sizeof(Symbol)));
    levels[k] = std::make_shared<const std::unordered_set<std::string>>(std::move(shorter));
  }
  by_length_ = std::move(levels);
  computed_ = target;
}

bool SubstitutionOracle::is_legal(std::span<const Symbol> w) const {
  if (w.empty()) return true;
  for (Symbol s : w) {
    if (s >= sub_.alphabet.size()) return false;
  }
  std::shared_ptr<const std::unordered_set<std::string>> level;
  {
    std::lock_guard lock(mutex_);
    ensure(w.size());
    level = by_length_[w.size()];
  }
  return level->count(encode(w)) > 0;
}

std::vector<Word> SubstitutionOracle::factors(std::size_t n) const {
  if (n == 0) return {Word{}};
  std::shared_ptr<const std::unordered_set<std::string>> level;
  {
    std::lock_guard lock(mutex_);
    ensure(n);
    level = by_length_[n];
  }
  std::vector<Word> out;
  for (const auto& f : *level) out.push_back(decode(f));
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t SubstitutionOracle::recurrence_bound(std::span<const Symbol> u, std::size_t cap) const {
  if (u.empty()) return 1;
  if (!is_legal(u)) throw Error(ErrorCode::IllegalWord, "recurrence bound of an illegal word");
  for (std::size_t M = 1; M <= cap; ++M) {
    const auto fs = factors(M + u.size() - 1);
    bool all = std::all_of(fs.begin(), fs.end(), [&](const Word& f) { return word_occurs_in(u, f); });
    if (all) return M;
  }
  throw Error(ErrorCode::CapExceeded, "recurrence bound above " + std::to_string(cap));
}

// ---------------------------------------------------------------- gap shift

GapShiftOracle::GapShiftOracle(std::uint32_t base) : base_(base) {
  if (base < 2) throw Error(ErrorCode::InvalidArgument, "gap shift base must be >= 2");
}

bool GapShiftOracle::allowed_run(std::uint64_t r) const {
  if (r < base_) return false;
  while (r % base_ == 0) r /= base_;
  return r == 1;
}

bool GapShiftOracle::is_legal(std::span<const Symbol> w) const {
  std::optional<std::size_t> last_one;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] > 1) return false;
    if (w[i] == 1) {
      if (last_one && i - *last_one > 1 && !allowed_run(i - *last_one - 1)) return false;
      last_one = i;
    }
  }
  return true;
}

std::string GapShiftOracle::right_key(std::span<const Symbol> w) const {
  auto it = std::find(w.rbegin(), w.rend(), Symbol{1});
  if (it == w.rend()) return "z";
  return "o" + std::to_string(it - w.rbegin());
}

std::string GapShiftOracle::left_key(std::span<const Symbol> w) const {
  auto it = std::find(w.begin(), w.end(), Symbol{1});
  if (it == w.end()) return "z";
  return "o" + std::to_string(it - w.begin());
}

std::vector<Word> GapShiftOracle::tail_representatives(std::size_t L, std::size_t cap) const {
  if (L == 0) throw Error(ErrorCode::InvalidArgument, "tail length must be >= 1");
  if (L + 1 > cap) throw Error(ErrorCode::CapExceeded, "too many tail classes");
  std::vector<Word> out;
  for (std::size_t r = 0; r < L; ++r) {
    Word y(L, 1);
    std::fill(y.begin(), y.begin() + r, 0);
    out.push_back(std::move(y));
  }
  out.push_back(Word(L, 0));
  return out;
}

// ---------------------------------------------------------------- lindenstrauss

namespace {

Alphabet zero_plus(const Alphabet& base) {
  std::vector<std::string> names{"0"};
  for (const auto& s : base.symbols()) {
    if (s == "0") throw Error(ErrorCode::InvalidArgument, "base alphabet may not contain 0");
    names.push_back(s);
  }
  return Alphabet(std::move(names));
}

Substitution thue_morse() {
  return Substitution{Alphabet({"1", "2"}), {Word{0, 1}, Word{1, 0}}};
}

}  // namespace

LindenstraussOracle::LindenstraussOracle(Substitution base)
    : alphabet_(zero_plus(base.alphabet)), base_(std::move(base)) {}

LindenstraussOracle::LindenstraussOracle() : LindenstraussOracle(thue_morse()) {}

Word LindenstraussOracle::hat(std::span<const Symbol> w) const {
  Word out;
  for (Symbol s : w) {
    if (s != 0) out.push_back(s - 1);
  }
  return out;
}

bool LindenstraussOracle::is_legal(std::span<const Symbol> w) const {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] >= alphabet_.size()) return false;
    if (i > 0 && w[i] == 0 && w[i - 1] == 0) return false;
  }
  return base_.is_legal(hat(w));
}

std::string LindenstraussOracle::right_key(std::span<const Symbol> w) const {
  return std::string(!w.empty() && w.back() == 0 ? "1" : "0") + encode(hat(w));
}

std::string LindenstraussOracle::left_key(std::span<const Symbol> w) const {
  return std::string(!w.empty() && w.front() == 0 ? "1" : "0") + encode(hat(w));
}

std::vector<LengthSet> LindenstraussOracle::connector_table(std::span<const Symbol> v,
                                                            const std::vector<Word>& ys,
                                                            std::size_t maxlen) const {
  if (maxlen > kMaxConnector) throw Error(ErrorCode::InvalidArgument, "connector length too large");
  std::vector<LengthSet> out(ys.size());
  if (!is_legal(v)) return out;
  const Word vh = hat(v);
  // right extensions of vh by exactly k base letters
  std::vector<std::vector<Word>> ext(maxlen + 1);
  for (std::size_t k = 0; k <= maxlen; ++k) {
    for (auto& f : base_.factors(vh.size() + k)) {
      if (std::equal(vh.begin(), vh.end(), f.begin())) ext[k].push_back(std::move(f));
    }
  }
  const int ends0 = !v.empty() && v.back() == 0;
  for (std::size_t j = 0; j < ys.size(); ++j) {
    const auto& y = ys[j];
    if (!is_legal(y)) continue;
    const Word yh = hat(y);
    const int starts0 = !y.empty() && y.front() == 0;
    for (std::size_t k = 0; k <= maxlen; ++k) {
      // zeros sit in the k+1 gaps around the base letters of the connector
      const long gaps = static_cast<long>(k) + 1 - ends0 - starts0;
      if (gaps < 0) continue;
      bool ok = std::any_of(ext[k].begin(), ext[k].end(),
                            [&](const Word& u) { return base_.is_legal(concat(u, yh)); });
      if (!ok) continue;
      for (std::size_t m = k; m <= std::min(maxlen, k + static_cast<std::size_t>(gaps)); ++m) {
        out[j].set(m);
      }
    }
  }
  return out;
}

std::size_t LindenstraussOracle::recurrence_bound(std::span<const Symbol> v) const {
  const Word vh = hat(v);
  if (vh.empty()) return 0;
  return base_.recurrence_bound(vh);
}

// ---------------------------------------------------------------- product

namespace {

Alphabet pair_alphabet(const Alphabet& a, const Alphabet& b) {
  std::vector<std::string> names;
  for (const auto& x : a.symbols()) {
    for (const auto& y : b.symbols()) names.push_back("(" + x + "," + y + ")");
  }
  return Alphabet(std::move(names));
}

}  // namespace

ProductOracle::ProductOracle(std::shared_ptr<const LanguageOracle> first,
                             std::shared_ptr<const LanguageOracle> second)
    : first_(std::move(first)),
      second_(std::move(second)),
      alphabet_(pair_alphabet(first_->alphabet(), second_->alphabet())),
      n2_(second_->alphabet().size()) {}

std::pair<Word, Word> ProductOracle::split(std::span<const Symbol> w) const {
  Word a, b;
  for (Symbol s : w) {
    a.push_back(static_cast<Symbol>(s / n2_));
    b.push_back(static_cast<Symbol>(s % n2_));
  }
  return {a, b};
}

Word ProductOracle::join(const Word& a, const Word& b) const {
  Word out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(static_cast<Symbol>(a[i] * n2_ + b[i]));
  return out;
}

bool ProductOracle::is_legal(std::span<const Symbol> w) const {
  for (Symbol s : w) {
    if (s >= alphabet_.size()) return false;
  }
  auto [a, b] = split(w);
  return first_->is_legal(a) && second_->is_legal(b);
}

std::string ProductOracle::right_key(std::span<const Symbol> w) const {
  auto [a, b] = split(w);
  return framed(first_->right_key(a), second_->right_key(b));
}

std::string ProductOracle::left_key(std::span<const Symbol> w) const {
  auto [a, b] = split(w);
  return framed(first_->left_key(a), second_->left_key(b));
}

std::vector<Word> ProductOracle::tail_representatives(std::size_t L, std::size_t cap) const {
  auto t1 = first_->tail_representatives(L, cap);
  auto t2 = second_->tail_representatives(L, cap);
  if (t1.size() * t2.size() > cap) throw Error(ErrorCode::CapExceeded, "too many product tail classes");
  std::vector<Word> out;
  for (const auto& a : t1) {
    for (const auto& b : t2) out.push_back(join(a, b));
  }
  return out;
}

std::vector<Word> ProductOracle::prefix_extensions(std::span<const Symbol> w, std::size_t L,
                                                   std::size_t cap) const {
  auto [a, b] = split(w);
  auto e1 = first_->prefix_extensions(a, L, cap);
  auto e2 = second_->prefix_extensions(b, L, cap);
  if (e1.size() * e2.size() > cap) throw Error(ErrorCode::CapExceeded, "too many product extensions");
  std::vector<Word> out;
  for (const auto& x : e1) {
    for (const auto& y : e2) out.push_back(join(x, y));
  }
  return out;
}

std::vector<LengthSet> ProductOracle::connector_table(std::span<const Symbol> v,
                                                      const std::vector<Word>& ys,
                                                      std::size_t maxlen) const {
  auto [v1, v2] = split(v);
  std::vector<Word> y1s, y2s;
  std::map<Word, std::size_t> i1, i2;
  std::vector<std::pair<std::size_t, std::size_t>> idx;
  for (const auto& y : ys) {
    auto [a, b] = split(y);
    auto p = i1.emplace(a, y1s.size());
    if (p.second) y1s.push_back(a);
    auto q = i2.emplace(b, y2s.size());
    if (q.second) y2s.push_back(b);
    idx.emplace_back(p.first->second, q.first->second);
  }
  auto t1 = first_->connector_table(v1, y1s, maxlen);
  auto t2 = second_->connector_table(v2, y2s, maxlen);
  std::vector<LengthSet> out;
  for (auto [a, b] : idx) out.push_back(t1[a] & t2[b]);
  return out;
}

std::shared_ptr<const LanguageOracle> product_oracle(std::shared_ptr<const LanguageOracle> a,
                                                     std::shared_ptr<const LanguageOracle> b) {
  return std::make_shared<ProductOracle>(std::move(a), std::move(b));
}

// ---------------------------------------------------------------- enumeration

std::vector<Word> enumerate_words(const LanguageOracle& o, std::size_t length, std::size_t cap) {
  if (length == 0) throw Error(ErrorCode::InvalidArgument, "word length must be >= 1");
  std::vector<Word> out;
  Word cur;
  const auto symbols = static_cast<Symbol>(o.alphabet().size());
  std::function<void()> grow = [&] {
    if (cur.size() == length) {
      if (out.size() >= cap) {
        throw Error(ErrorCode::CapExceeded, "more than " + std::to_string(cap) + " legal words");
      }
      out.push_back(cur);
      return;
    }
    for (Symbol s = 0; s < symbols; ++s) {
      cur.push_back(s);
      if (o.is_legal(cur)) grow();
      cur.pop_back();
    }
  };
  grow();
  return out;
}

}  // namespace dynclass
