#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_set>

#include "dynclass/lang.hpp"

namespace dynclass {

namespace {

constexpr std::size_t kClassCap = 100000;

struct Table {
  std::vector<Word> rows;              // v representatives
  std::vector<Word> cols;              // y representatives
  std::vector<std::vector<LengthSet>> cell;

  const LengthSet& at(std::size_t i, std::size_t j) const { return cell[i][j]; }
};

Table build_table(const LanguageOracle& o, std::vector<Word> rows, std::vector<Word> cols,
                  std::size_t maxlen, Exec exec) {
  Table t{std::move(rows), std::move(cols), {}};
  t.cell.resize(t.rows.size());
  const long long n = static_cast<long long>(t.rows.size());
  if (exec == Exec::Parallel) {
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < n; ++i) {
      try {
        t.cell[i] = o.connector_table(t.rows[i], t.cols, maxlen);
      } catch (...) {
#pragma omp critical
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  } else {
    for (long long i = 0; i < n; ++i) t.cell[i] = o.connector_table(t.rows[i], t.cols, maxlen);
  }
  return t;
}

template <class KeyFn>
std::vector<Word> dedup(const std::vector<Word>& ws, KeyFn key) {
  std::vector<Word> out;
  std::unordered_set<std::string> seen;
  for (const auto& w : ws) {
    if (seen.insert(key(w)).second) out.push_back(w);
  }
  return out;
}

struct Context {
  const LanguageOracle& o;
  WitnessScale s;
  Exec exec;
  std::vector<std::vector<Word>> by_length;  // index = length, 1..ell

  Context(const LanguageOracle& oracle, const WitnessScale& scale, Exec e)
      : o(oracle), s(scale), exec(e), by_length(scale.ell + 1) {
    for (std::size_t len = 1; len <= s.ell; ++len) by_length[len] = enumerate_words(o, len);
  }

  std::string show(const Word& w) const { return o.alphabet().render(w); }

  std::vector<Word> all_words() const {
    std::vector<Word> out;
    for (std::size_t len = 1; len <= s.ell; ++len) {
      out.insert(out.end(), by_length[len].begin(), by_length[len].end());
    }
    return out;
  }
  std::vector<Word> right_classes(const std::vector<Word>& ws) const {
    return dedup(ws, [&](const Word& w) { return o.right_key(w); });
  }
  std::vector<Word> left_classes(const std::vector<Word>& ws) const {
    return dedup(ws, [&](const Word& w) { return o.left_key(w); });
  }
  std::vector<Word> tails() const { return o.tail_representatives(s.L, kClassCap); }

  Verdict witness(std::string summary, std::vector<std::string> items = {}) const {
    return Verdict::witness(s, Evidence{"finite-scale", std::move(summary), std::move(items)});
  }
  Verdict fail(std::string summary, std::vector<std::string> items = {}) const {
    return Verdict::no_witness(s, Evidence{"finite-scale", std::move(summary), std::move(items)});
  }
};

std::string count_note(std::size_t n) { return std::to_string(n) + " obligations met"; }

std::optional<std::size_t> first_set(const LengthSet& b) {
  for (std::size_t m = 0; m < b.size(); ++m) {
    if (b.test(m)) return m;
  }
  return std::nullopt;
}

Verdict check_pairs_single(const Context& c, const std::vector<Word>& ys, const char* what,
                           bool record_max) {
  auto vs = c.right_classes(c.all_words());
  auto t = build_table(c.o, vs, ys, c.s.H, c.exec);
  std::size_t worst = 0;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
      auto m = first_set(t.at(i, j));
      if (!m) {
        return c.fail(std::string("no connector of length <= ") + std::to_string(c.s.H),
                      {"v=" + c.show(vs[i]), std::string(what) + "=" + c.show(ys[j])});
      }
      worst = std::max(worst, *m);
    }
  }
  std::vector<std::string> items;
  if (record_max) items.push_back("max connector length " + std::to_string(worst));
  return c.witness(count_note(vs.size() * ys.size()), std::move(items));
}

Verdict check_tt(const Context& c) { return check_pairs_single(c, c.left_classes(c.all_words()), "w", false); }

Verdict check_st(const Context& c, bool vst) { return check_pairs_single(c, c.tails(), "x", vst); }

Verdict check_minimal(const Context& c) {
  const auto symbols = static_cast<Symbol>(c.o.alphabet().size());
  const std::size_t nodes_cap = 2000000;
  std::size_t checked = 0;
  for (const auto& v : c.all_words()) {
    // depth-first search for a legal word of length L that avoids v
    std::unordered_set<std::string> dead;
    std::size_t nodes = 0;
    Word cur;
    std::function<bool()> avoid = [&]() -> bool {
      if (cur.size() == c.s.L) return true;
      std::string key = std::to_string(cur.size()) + "|" + c.o.right_key(cur) + "|";
      const std::size_t keep = std::min(cur.size(), v.size() - 1);
      key += c.show(Word(cur.end() - keep, cur.end()));
      if (dead.count(key)) return false;
      for (Symbol s = 0; s < symbols; ++s) {
        if (++nodes > nodes_cap) throw Error(ErrorCode::CapExceeded, "avoidance search too large");
        cur.push_back(s);
        const bool ok = c.o.is_legal(cur) &&
                        !(cur.size() >= v.size() &&
                          std::equal(v.begin(), v.end(), cur.end() - v.size())) &&
                        avoid();
        if (ok) return true;
        cur.pop_back();
      }
      dead.insert(key);
      return false;
    };
    if (avoid()) {
      return c.fail("legal word avoids v", {"v=" + c.show(v), "x=" + c.show(cur)});
    }
    ++checked;
  }
  return c.witness("every legal word of length " + std::to_string(c.s.L) + " contains all " +
                   std::to_string(checked) + " words");
}

// Equal-length pairs (v1, v2) by right class, in deterministic order.
std::vector<std::pair<Word, Word>> same_length_pairs(const Context& c,
                                                    std::vector<std::size_t>* length_of = nullptr) {
  std::vector<std::pair<Word, Word>> out;
  for (std::size_t len = 1; len <= c.s.ell; ++len) {
    auto vs = c.right_classes(c.by_length[len]);
    for (std::size_t i = 0; i < vs.size(); ++i) {
      for (std::size_t j = i; j < vs.size(); ++j) {
        out.emplace_back(vs[i], vs[j]);
        if (length_of) length_of->push_back(len);
      }
    }
  }
  return out;
}

// Rows of the table for the right classes of every length, with a lookup.
struct RowIndex {
  std::vector<Word> rows;
  std::map<Word, std::size_t> index;
};

RowIndex row_index(const Context& c) {
  RowIndex r;
  for (std::size_t len = 1; len <= c.s.ell; ++len) {
    for (const auto& v : c.right_classes(c.by_length[len])) {
      r.index.emplace(v, r.rows.size());
      r.rows.push_back(v);
    }
  }
  return r;
}

std::string pair_note(const Context& c, const Word& a, const Word& b) {
  return "v1=" + c.show(a) + " v2=" + c.show(b);
}

Verdict check_wm(const Context& c) {
  auto ri = row_index(c);
  auto ws = c.left_classes(c.all_words());
  auto t = build_table(c.o, ri.rows, ws, c.s.H, c.exec);
  std::size_t count = 0;
  for (const auto& [a, b] : same_length_pairs(c)) {
    const auto ia = ri.index.at(a), ib = ri.index.at(b);
    for (std::size_t j = 0; j < ws.size(); ++j) {
      if ((t.at(ia, j) & t.at(ib, j)).none()) {
        return c.fail("no common connector length", {pair_note(c, a, b), "w=" + c.show(ws[j])});
      }
      ++count;
    }
  }
  return c.witness(count_note(count));
}

Verdict check_exact_family(const Context& c, bool strong) {
  auto ri = row_index(c);
  auto xs = c.tails();
  auto t = build_table(c.o, ri.rows, xs, c.s.H, c.exec);
  std::size_t count = 0;
  for (const auto& [a, b] : same_length_pairs(c)) {
    const auto ia = ri.index.at(a), ib = ri.index.at(b);
    bool some = false;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      const bool meet = (t.at(ia, j) & t.at(ib, j)).any();
      if (strong && !meet) {
        return c.fail("no common connector length", {pair_note(c, a, b), "x=" + c.show(xs[j])});
      }
      some = some || meet;
      ++count;
    }
    if (!strong && !some) return c.fail("no tail admits a common connector length", {pair_note(c, a, b)});
  }
  return c.witness(count_note(count));
}

Verdict check_et(const Context& c) {
  auto ri = row_index(c);
  auto ws = dedup(c.all_words(), [&](const Word& w) { return c.o.left_key(w) + "#" + c.o.right_key(w); });
  std::vector<std::vector<std::size_t>> ext_of(ws.size());
  std::vector<Word> cols;
  std::map<Word, std::size_t> col_index;
  for (std::size_t k = 0; k < ws.size(); ++k) {
    for (auto& y : c.o.prefix_extensions(ws[k], c.s.L, kClassCap)) {
      auto [it, fresh] = col_index.emplace(y, cols.size());
      if (fresh) cols.push_back(y);
      ext_of[k].push_back(it->second);
    }
  }
  auto t = build_table(c.o, ri.rows, cols, c.s.H, c.exec);
  std::size_t count = 0;
  for (const auto& [a, b] : same_length_pairs(c)) {
    const auto ia = ri.index.at(a), ib = ri.index.at(b);
    for (std::size_t k = 0; k < ws.size(); ++k) {
      bool some = std::any_of(ext_of[k].begin(), ext_of[k].end(),
                              [&](std::size_t j) { return (t.at(ia, j) & t.at(ib, j)).any(); });
      if (!some) {
        return c.fail("no extension of w admits a common connector length",
                      {pair_note(c, a, b), "w=" + c.show(ws[k])});
      }
      ++count;
    }
  }
  return c.witness(count_note(count));
}

Verdict check_spt(const Context& c) {
  auto xs = c.tails();
  std::size_t tuples = 0;
  for (std::size_t len = 1; len <= c.s.ell; ++len) {
    auto vs = c.right_classes(c.by_length[len]);
    auto t = build_table(c.o, vs, xs, c.s.H, c.exec);
    // distinct connector sets, each with one (v, x) that produced it
    std::vector<LengthSet> sets;
    std::vector<std::pair<std::size_t, std::size_t>> origin;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      for (std::size_t j = 0; j < xs.size(); ++j) {
        if (seen.insert(t.at(i, j).to_string()).second) {
          sets.push_back(t.at(i, j));
          origin.emplace_back(i, j);
        }
      }
    }
    auto note = [&](std::size_t k) {
      return "v=" + c.show(vs[origin[k].first]) + " x=" + c.show(xs[origin[k].second]);
    };
    for (std::size_t a = 0; a < sets.size(); ++a) {
      for (std::size_t b = a; b < sets.size(); ++b) {
        const LengthSet ab = sets[a] & sets[b];
        if (ab.none()) return c.fail("n=2: no common connector length", {note(a), note(b)});
        ++tuples;
        for (std::size_t d = b; d < sets.size(); ++d) {
          if ((ab & sets[d]).none()) return c.fail("n=3: no common connector length", {note(a), note(b), note(d)});
          ++tuples;
        }
      }
    }
  }
  return c.witness(std::to_string(tuples) + " tuples met for n=2,3");
}

Verdict check_tm(const Context& c) {
  auto vs = c.right_classes(c.all_words());
  auto ws = c.left_classes(c.all_words());
  auto t = build_table(c.o, vs, ws, c.s.H + c.s.K, c.exec);
  std::size_t worst = 0;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = 0; j < ws.size(); ++j) {
      const auto& bits = t.at(i, j);
      std::optional<std::size_t> found;
      for (std::size_t N = 0; N <= c.s.H && !found; ++N) {
        bool run = true;
        for (std::size_t k = 1; k <= c.s.K && run; ++k) run = bits.test(N + k);
        if (run) found = N;
      }
      if (!found) {
        return c.fail("no run of " + std::to_string(c.s.K) + " consecutive connector lengths",
                      {"v=" + c.show(vs[i]), "w=" + c.show(ws[j])});
      }
      worst = std::max(worst, *found);
    }
  }
  return c.witness(count_note(vs.size() * ws.size()), {"largest N " + std::to_string(worst)});
}

Verdict check_leo(const Context& c) {
  auto vs = c.right_classes(c.all_words());
  auto xs = c.tails();
  auto t = build_table(c.o, vs, xs, c.s.H, c.exec);
  std::vector<std::string> items;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    LengthSet all;
    all.set();
    for (std::size_t j = 0; j < xs.size(); ++j) all &= t.at(i, j);
    auto m = first_set(all);
    if (!m || *m > c.s.H) {
      return c.fail("no uniform connector length", {"v=" + c.show(vs[i])});
    }
    items.push_back("v=" + c.show(vs[i]) + " m=" + std::to_string(*m));
  }
  return c.witness(count_note(vs.size() * xs.size()), std::move(items));
}

}  // namespace

Verdict witness_check(const LanguageOracle& o, PropertyId p, const WitnessScale& s, Exec exec) {
  s.validate();
  if (s.H + s.K > kMaxConnector) {
    throw Error(ErrorCode::InvalidArgument, "H + K must not exceed " + std::to_string(kMaxConnector));
  }
  Context c(o, s, exec);
  switch (p) {
    case PropertyId::TT: return check_tt(c);
    case PropertyId::ST: return check_st(c, false);
    case PropertyId::VST: return check_st(c, true);
    case PropertyId::M: return check_minimal(c);
    case PropertyId::WM: return check_wm(c);
    case PropertyId::EXACT: return check_exact_family(c, false);
    case PropertyId::SET: return check_exact_family(c, true);
    case PropertyId::ET: return check_et(c);
    case PropertyId::SPT: return check_spt(c);
    case PropertyId::TM: return check_tm(c);
    case PropertyId::LEO: return check_leo(c);
    default:
      throw Error(ErrorCode::InvalidArgument,
                  "no word criterion for " + std::string(to_string(p)));
  }
}

Verdict refute_vst_bound(const LanguageOracle& o, std::span<const Symbol> v, std::size_t N,
                         std::size_t L) {
  if (!o.is_legal(v)) throw Error(ErrorCode::IllegalWord, "v is not legal");
  auto ys = o.tail_representatives(L, kClassCap);
  auto t = o.connector_table(v, ys, N);
  for (std::size_t j = 0; j < ys.size(); ++j) {
    if (t[j].none()) {
      return Verdict::refuted_bounded(
          Bound{N}, Evidence{"bounded", "no connector of length <= " + std::to_string(N) + " reaches the tail",
                             {"v=" + o.alphabet().render(v), "y=" + o.alphabet().render(ys[j])}});
    }
  }
  return Verdict::unknown("every tail of length " + std::to_string(L) + " is reached within " +
                          std::to_string(N));
}

std::optional<std::size_t> uniform_connector_length(const LanguageOracle& o,
                                                    std::span<const Symbol> v, std::size_t L,
                                                    std::size_t H) {
  auto ys = o.tail_representatives(L, kClassCap);
  LengthSet all;
  all.set();
  for (const auto& b : o.connector_table(v, ys, H)) all &= b;
  return first_set(all);
}

Verdict periodic_word_scan(const LanguageOracle& o, std::size_t P, std::size_t K) {
  if (P < 1 || K < 1) throw Error(ErrorCode::InvalidArgument, "period bound and repetitions must be >= 1");
  std::size_t tested = 0;
  for (std::size_t len = 1; len <= P; ++len) {
    for (const auto& w : enumerate_words(o, len)) {
      // skip non-primitive words: they are powers of shorter ones
      bool primitive = true;
      for (std::size_t d = 1; d < len && primitive; ++d) {
        if (len % d) continue;
        bool rep = true;
        for (std::size_t i = d; i < len && rep; ++i) rep = w[i] == w[i - d];
        primitive = !rep;
      }
      if (!primitive) continue;
      Word power;
      for (std::size_t k = 0; k < K; ++k) power.insert(power.end(), w.begin(), w.end());
      ++tested;
      if (o.is_legal(power)) {
        return Verdict::witness(Bound{len}, Evidence{"periodic", "legal periodic word",
                                                     {"w=" + o.alphabet().render(w), "K=" + std::to_string(K)}});
      }
    }
  }
  return Verdict::refuted_bounded(
      Bound{P}, Evidence{"periodic", "no periodic point of period <= " + std::to_string(P),
                         {std::to_string(tested) + " primitive words", "K=" + std::to_string(K)}});
}

}  // namespace dynclass
