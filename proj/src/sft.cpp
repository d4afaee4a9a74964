#include "dynclass/sft.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace dynclass {

std::string_view to_string(Sided s) { return s == Sided::One ? "one" : "two"; }

SftGraph::SftGraph(Alphabet vertices, std::vector<Edge> edges, Sided sided)
    : vertices_(std::move(vertices)),
      sided_(sided),
      adjacency_(vertices_.size()),
      succ_(vertices_.size()),
      pred_(vertices_.size()) {
  const auto n = vertices_.size();
  for (auto [i, j] : edges) {
    if (i >= n || j >= n) throw Error(ErrorCode::InvalidArgument, "edge endpoint out of range");
    adjacency_.set(i, j);
  }
  for (Symbol i = 0; i < n; ++i) {
    for (Symbol j = 0; j < n; ++j) {
      if (adjacency_.get(i, j)) {
        succ_[i].push_back(j);
        pred_[j].push_back(i);
      }
    }
  }
}

std::vector<Edge> SftGraph::edges() const {
  std::vector<Edge> out;
  for (Symbol i = 0; i < vertex_count(); ++i) {
    for (Symbol j : succ_[i]) out.emplace_back(i, j);
  }
  return out;
}

bool SftGraph::is_legal(std::span<const Symbol> w) const {
  for (Symbol s : w) {
    if (s >= vertex_count()) return false;
  }
  for (std::size_t k = 1; k < w.size(); ++k) {
    if (!has_edge(w[k - 1], w[k])) return false;
  }
  return true;
}

bool SftGraph::is_essential() const {
  for (Symbol i = 0; i < vertex_count(); ++i) {
    if (succ_[i].empty() || pred_[i].empty()) return false;
  }
  return true;
}

SftGraph induced_subgraph(const SftGraph& g, const std::vector<Symbol>& keep) {
  std::vector<std::string> names;
  std::vector<Symbol> remap(g.vertex_count(), static_cast<Symbol>(-1));
  for (Symbol v : keep) {
    remap[v] = static_cast<Symbol>(names.size());
    names.push_back(g.vertices().symbol(v));
  }
  std::vector<Edge> edges;
  for (auto [i, j] : g.edges()) {
    if (remap[i] != static_cast<Symbol>(-1) && remap[j] != static_cast<Symbol>(-1)) {
      edges.emplace_back(remap[i], remap[j]);
    }
  }
  return SftGraph(Alphabet(std::move(names)), std::move(edges), g.sided());
}

namespace {

// Essential core of the subgraph induced by `alive`, updated in place.
void prune_to_essential(const SftGraph& g, std::vector<bool>& alive) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (Symbol v = 0; v < g.vertex_count(); ++v) {
      if (!alive[v]) continue;
      auto live = [&](Symbol w) { return alive[w]; };
      const bool out = std::any_of(g.successors(v).begin(), g.successors(v).end(), live);
      const bool in = std::any_of(g.predecessors(v).begin(), g.predecessors(v).end(), live);
      if (!out || !in) {
        alive[v] = false;
        changed = true;
      }
    }
  }
}

std::vector<Symbol> members(const std::vector<bool>& alive) {
  std::vector<Symbol> out;
  for (Symbol v = 0; v < alive.size(); ++v) {
    if (alive[v]) out.push_back(v);
  }
  return out;
}

}  // namespace

SftGraph essentialize(const SftGraph& g) {
  std::vector<bool> alive(g.vertex_count(), true);
  prune_to_essential(g, alive);
  auto keep = members(alive);
  if (keep.empty()) throw Error(ErrorCode::EmptySystem, "no vertex supports a point of the subshift");
  if (keep.size() == g.vertex_count()) return g;
  return induced_subgraph(g, keep);
}

std::vector<std::vector<Symbol>> strongly_connected_components(const SftGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<Symbol> stack;
  std::vector<std::vector<Symbol>> comps;
  int counter = 0;

  // Iterative Tarjan: frames hold (vertex, next successor position).
  std::vector<std::pair<Symbol, std::size_t>> frames;
  for (Symbol root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    frames.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      const auto& succ = g.successors(v);
      if (pos < succ.size()) {
        Symbol w = succ[pos++];
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const Symbol done = v;
      frames.pop_back();
      if (!frames.empty()) {
        Symbol parent = frames.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        std::vector<Symbol> comp;
        Symbol w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != done);
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
      }
    }
  }
  return comps;
}

bool strongly_connected(const SftGraph& g) {
  return strongly_connected_components(g).size() == 1 && g.is_essential();
}

std::uint64_t graph_period(const SftGraph& g) {
  if (!strongly_connected(g)) {
    throw Error(ErrorCode::NotStronglyConnected, "period is defined for strongly connected graphs");
  }
  const std::size_t n = g.vertex_count();
  std::vector<std::int64_t> level(n, -1);
  std::deque<Symbol> queue{0};
  level[0] = 0;
  while (!queue.empty()) {
    Symbol v = queue.front();
    queue.pop_front();
    for (Symbol w : g.successors(v)) {
      if (level[w] < 0) {
        level[w] = level[v] + 1;
        queue.push_back(w);
      }
    }
  }
  std::uint64_t d = 0;
  for (auto [i, j] : g.edges()) {
    auto diff = level[i] + 1 - level[j];
    d = std::gcd(d, static_cast<std::uint64_t>(diff < 0 ? -diff : diff));
  }
  return d;
}

bool primitive(const SftGraph& g) { return strongly_connected(g) && graph_period(g) == 1; }

ReachProfile reach_profile(const SftGraph& g, std::size_t cap, Exec exec) {
  const std::size_t n = g.vertex_count();
  std::vector<BoolMatrix> powers{BoolMatrix(n), g.adjacency()};  // powers[k] = A^k, k >= 1
  std::unordered_multimap<std::uint64_t, std::size_t> seen;
  seen.emplace(powers[1].hash(), 1);
  std::size_t index = 0, period = 0;
  for (std::size_t k = 2; index == 0; ++k) {
    if (k > cap) {
      throw Error(ErrorCode::CapExceeded,
                  "adjacency powers did not recur within " + std::to_string(cap));
    }
    powers.push_back(multiply(powers[k - 1], g.adjacency(), exec));
    auto [lo, hi] = seen.equal_range(powers[k].hash());
    for (auto it = lo; it != hi; ++it) {
      if (powers[it->second] == powers[k]) {
        index = it->second;
        period = k - it->second;
        break;
      }
    }
    seen.emplace(powers[k].hash(), k);
  }
  const std::size_t count = index + 2 * period;
  auto power_at = [&](std::size_t k) -> const BoolMatrix& {
    if (k < powers.size()) return powers[k];
    return powers[index + (k - index) % period];
  };
  std::vector<EventuallyPeriodicSet> sets;
  sets.reserve(n * n);
  auto bits = std::make_unique<bool[]>(count);
  for (Symbol i = 0; i < n; ++i) {
    for (Symbol j = 0; j < n; ++j) {
      for (std::size_t k = 1; k <= count; ++k) bits[k - 1] = power_at(k).get(i, j);
      sets.push_back(EventuallyPeriodicSet::from_samples({bits.get(), count}, index, period));
    }
  }
  return ReachProfile(n, index, period, std::move(sets));
}

EventuallyPeriodicSet hitting_set(const SftGraph& g, std::span<const Symbol> u,
                                  std::span<const Symbol> v) {
  return hitting_set(g, reach_profile(g), u, v);
}

EventuallyPeriodicSet hitting_set(const SftGraph& g, const ReachProfile& profile,
                                  std::span<const Symbol> u, std::span<const Symbol> v) {
  if (u.empty() || v.empty()) throw Error(ErrorCode::IllegalWord, "cylinder words must be nonempty");
  if (!g.is_legal(u)) throw Error(ErrorCode::IllegalWord, "u is not a path: " + g.vertices().render(u));
  if (!g.is_legal(v)) throw Error(ErrorCode::IllegalWord, "v is not a path: " + g.vertices().render(v));
  const std::size_t s = u.size() - 1;
  std::vector<bool> transient;
  for (std::size_t n = 1; n <= s; ++n) {
    const std::size_t overlap = std::min(u.size() - n, v.size());
    bool ok = std::equal(u.begin() + n, u.begin() + n + overlap, v.begin());
    if (ok && v.size() > overlap) {
      Word joined(u.begin(), u.end());
      joined.insert(joined.end(), v.begin() + overlap, v.end());
      ok = g.is_legal(joined);
    }
    transient.push_back(ok);
  }
  const auto& r = profile.at(u.back(), v.front());
  transient.insert(transient.end(), r.transient().begin(), r.transient().end());
  return EventuallyPeriodicSet::from_parts(std::move(transient), r.pattern());
}

namespace {

SftGraph tensor(const SftGraph& g1, const SftGraph& g2) {
  const auto n2 = g2.vertex_count();
  std::vector<std::string> names;
  for (Symbol a = 0; a < g1.vertex_count(); ++a) {
    for (Symbol b = 0; b < n2; ++b) {
      names.push_back("(" + g1.vertices().symbol(a) + "," + g2.vertices().symbol(b) + ")");
    }
  }
  std::vector<Edge> edges;
  for (auto [a, a2] : g1.edges()) {
    for (auto [b, b2] : g2.edges()) {
      edges.emplace_back(static_cast<Symbol>(a * n2 + b), static_cast<Symbol>(a2 * n2 + b2));
    }
  }
  const Sided sided = (g1.sided() == Sided::Two && g2.sided() == Sided::Two) ? Sided::Two : Sided::One;
  return SftGraph(Alphabet(std::move(names)), std::move(edges), sided);
}

bool single_cycle(const SftGraph& g) {
  if (!strongly_connected(g)) return false;
  for (Symbol v = 0; v < g.vertex_count(); ++v) {
    if (g.successors(v).size() != 1) return false;
  }
  return true;
}

// First pair (i, j) whose product walks never meet the diagonal, if any.
std::optional<Edge> pair_missing_diagonal(const SftGraph& g) {
  const auto n = g.vertex_count();
  const auto prod = tensor(g, g);
  std::vector<bool> reach(n * n, false);
  std::deque<Symbol> queue;
  for (Symbol i = 0; i < n; ++i) {
    reach[i * n + i] = true;
    queue.push_back(static_cast<Symbol>(i * n + i));
  }
  while (!queue.empty()) {
    Symbol x = queue.front();
    queue.pop_front();
    for (Symbol p : prod.predecessors(x)) {
      if (!reach[p]) {
        reach[p] = true;
        queue.push_back(p);
      }
    }
  }
  for (Symbol x = 0; x < n * n; ++x) {
    if (!reach[x]) return Edge{static_cast<Symbol>(x / n), static_cast<Symbol>(x % n)};
  }
  return std::nullopt;
}

std::optional<Edge> edge_between_components(const SftGraph& g) {
  std::vector<std::size_t> comp_of(g.vertex_count());
  auto comps = strongly_connected_components(g);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (Symbol v : comps[c]) comp_of[v] = c;
  }
  for (auto [i, j] : g.edges()) {
    if (comp_of[i] != comp_of[j]) return Edge{i, j};
  }
  return std::nullopt;
}

Evidence graph_evidence(std::string summary, std::vector<std::string> items = {}) {
  return Evidence{"graph", std::move(summary), std::move(items)};
}

struct Facts {
  const SftGraph& g;
  bool sc;
  std::uint64_t period;

  explicit Facts(const SftGraph& graph)
      : g(graph), sc(strongly_connected(graph)), period(sc ? graph_period(graph) : 0) {}

  bool primitive() const { return sc && period == 1; }
  bool trivial() const { return g.vertex_count() == 1; }

  std::string why_not_sc() const {
    auto comps = strongly_connected_components(g);
    std::ostringstream os;
    os << "not strongly connected; " << comps.size() << " components";
    return os.str();
  }
  std::string why_not_primitive() const {
    if (!sc) return why_not_sc();
    return "strongly connected; period " + std::to_string(period);
  }
  std::string primitive_note() const { return "primitive; period 1"; }

  Verdict by_sc() const {
    return sc ? Verdict::proved(graph_evidence("strongly connected"))
              : Verdict::refuted(graph_evidence(why_not_sc()));
  }
  Verdict by_primitive() const {
    return primitive() ? Verdict::proved(graph_evidence(primitive_note()))
                       : Verdict::refuted(graph_evidence(why_not_primitive()));
  }
  Verdict minimal() const {
    if (single_cycle(g)) {
      return Verdict::proved(graph_evidence("single cycle of length " + std::to_string(g.vertex_count())));
    }
    if (!sc) return Verdict::refuted(graph_evidence(why_not_sc()));
    for (Symbol v = 0; v < g.vertex_count(); ++v) {
      if (g.successors(v).size() > 1) {
        return Verdict::refuted(graph_evidence(
            "two distinct cycles; vertex " + g.vertices().symbol(v) + " has out-degree " +
            std::to_string(g.successors(v).size())));
      }
    }
    return Verdict::refuted(graph_evidence("not a single cycle"));
  }
  Verdict weak_mixing() const {
    if (!sc) return Verdict::refuted(graph_evidence(why_not_sc()));
    auto prod = essentialize(tensor(g, g));
    if (strongly_connected(prod)) return Verdict::proved(graph_evidence("product graph strongly connected"));
    return Verdict::refuted(graph_evidence(
        "product graph has " + std::to_string(strongly_connected_components(prod).size()) +
        " components"));
  }
  Verdict exact_one_sided() const {
    auto miss = pair_missing_diagonal(g);
    if (!miss) return Verdict::proved(graph_evidence("every vertex pair reaches the diagonal"));
    return Verdict::refuted(graph_evidence(
        "pair (" + g.vertices().symbol(miss->first) + "," + g.vertices().symbol(miss->second) +
        ") never reaches the diagonal"));
  }
  Verdict chain(bool holds, const std::string& up, const std::string& down) const {
    return holds ? Verdict::proved(Evidence{"chain", up, {primitive_note()}})
                 : Verdict::refuted(Evidence{"chain", down, {why_not_primitive()}});
  }
  std::string down_chain(const std::string& target) const {
    if (!sc) return "not TT -> not " + target;
    return "product graph disconnected -> not WM -> not " + target;
  }
};

}  // namespace

Verdict decide_property(const SftGraph& input, PropertyId p) {
  const SftGraph g = essentialize(input);
  const Facts f(g);
  const bool two = g.invertible();
  const bool nontrivial = !f.trivial();
  auto injective_refutation = [&](const std::string& target) {
    return Verdict::refuted(Evidence{
        "chain", "invertible and nontrivial -> not EXACT" + (target.empty() ? "" : " -> not " + target),
        {std::to_string(g.vertex_count()) + " vertices"}});
  };

  switch (p) {
    case PropertyId::TT:
      return f.by_sc();
    case PropertyId::ST:
    case PropertyId::VST:
      if (two) {
        auto v = f.minimal();
        v.evidence.items.insert(v.evidence.items.begin(), "invertible: equals M");
        return v;
      }
      return f.by_sc();
    case PropertyId::M:
      return f.minimal();
    case PropertyId::WM:
      return f.weak_mixing();
    case PropertyId::TM:
      return f.by_primitive();
    case PropertyId::LEO:
      if (two && nontrivial) return injective_refutation("LEO");
      return f.by_primitive();
    case PropertyId::SPT:
      if (two && nontrivial) return injective_refutation("SPT");
      return f.by_primitive();
    case PropertyId::SET:
      if (two && nontrivial) return injective_refutation("SET");
      return f.chain(f.primitive(), "primitive -> LEO -> SPT -> SET", f.down_chain("SET"));
    case PropertyId::ET:
      if (two && nontrivial) return injective_refutation("ET");
      return f.chain(f.primitive(), "primitive -> LEO -> SPT -> SET -> ET", f.down_chain("ET"));
    case PropertyId::EXACT:
    case PropertyId::FULLY_EXACT:
      if (two && nontrivial) return injective_refutation("");
      return f.exact_one_sided();
    case PropertyId::DENSE_PERIODIC: {
      auto bad = edge_between_components(g);
      if (!bad) return Verdict::proved(graph_evidence("every edge lies on a cycle"));
      return Verdict::refuted(graph_evidence("edge " + g.vertices().symbol(bad->first) + "->" +
                                             g.vertices().symbol(bad->second) +
                                             " joins distinct components"));
    }
    case PropertyId::ITER_ALMOST_OPEN:
      return Verdict::proved(graph_evidence("shift map on a vertex shift is open"));
  }
  return Verdict::unknown("unsupported property");
}

std::vector<Symbol> invariant_core(const SftGraph& g, const std::vector<Symbol>& W, CoreMode mode) {
  std::vector<bool> alive(g.vertex_count(), false);
  for (Symbol v : W) alive.at(v) = true;
  prune_to_essential(g, alive);
  if (mode == CoreMode::Minus) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (Symbol v = 0; v < g.vertex_count(); ++v) {
        if (!alive[v]) continue;
        for (Symbol p : g.predecessors(v)) {
          if (!alive[p]) {
            alive[v] = false;
            changed = true;
            break;
          }
        }
      }
      if (changed) prune_to_essential(g, alive);
    }
  }
  return members(alive);
}

SftGraph build_product(const SftGraph& g1, const SftGraph& g2) {
  if (g1.sided() != g2.sided()) {
    throw Error(ErrorCode::InvalidArgument, "product factors must have the same sidedness");
  }
  return essentialize(tensor(g1, g2));
}

SftGraph higher_block_recode(const Alphabet& alphabet, const std::vector<Word>& forbidden,
                             Sided sided) {
  if (forbidden.empty()) throw Error(ErrorCode::InvalidArgument, "forbidden word list is empty");
  std::size_t k = 2;
  for (const auto& w : forbidden) {
    if (w.empty()) throw Error(ErrorCode::InvalidArgument, "forbidden word is empty");
    for (Symbol s : w) {
      if (s >= alphabet.size()) throw Error(ErrorCode::IllegalWord, "forbidden word symbol out of range");
    }
    k = std::max(k, w.size());
  }
  auto clean = [&](std::span<const Symbol> w) {
    return std::none_of(forbidden.begin(), forbidden.end(),
                        [&](const Word& f) { return word_occurs_in(f, w); });
  };
  const std::size_t m = k - 1;
  const std::size_t a = alphabet.size();
  std::vector<Word> blocks;
  Word cur(m, 0);
  std::function<void(std::size_t)> grow = [&](std::size_t pos) {
    if (pos == m) {
      blocks.push_back(cur);
      return;
    }
    for (Symbol s = 0; s < a; ++s) {
      cur[pos] = s;
      if (clean(std::span<const Symbol>(cur.data(), pos + 1))) grow(pos + 1);
    }
  };
  grow(0);
  if (blocks.empty()) throw Error(ErrorCode::EmptySystem, "no legal blocks");

  std::vector<std::string> names;
  std::map<Word, Symbol> id;
  for (const auto& b : blocks) {
    std::string name;
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (i > 0 && !alphabet.compact()) name += '.';
      name += alphabet.symbol(b[i]);
    }
    id.emplace(b, static_cast<Symbol>(names.size()));
    names.push_back(std::move(name));
  }
  std::vector<Edge> edges;
  Word joined(k);
  for (const auto& b : blocks) {
    std::copy(b.begin(), b.end(), joined.begin());
    for (Symbol s = 0; s < a; ++s) {
      joined[k - 1] = s;
      if (!clean(joined)) continue;
      Word next(joined.begin() + 1, joined.end());
      auto it = id.find(next);
      if (it != id.end()) edges.emplace_back(id.at(b), it->second);
    }
  }
  return essentialize(SftGraph(Alphabet(std::move(names)), std::move(edges), sided));
}

}  // namespace dynclass
