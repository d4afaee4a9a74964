#pragma once

#include <utility>
#include <vector>

#include "dynclass/bool_matrix.hpp"
#include "dynclass/core.hpp"

namespace dynclass {

enum class Sided { One, Two };

std::string_view to_string(Sided s);

using Edge = std::pair<Symbol, Symbol>;

/// Vertex shift: points are walks in the graph, words are finite paths.
class SftGraph {
 public:
  SftGraph(Alphabet vertices, std::vector<Edge> edges, Sided sided = Sided::One);

  const Alphabet& vertices() const { return vertices_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  Sided sided() const { return sided_; }
  bool open_map() const { return true; }
  bool invertible() const { return sided_ == Sided::Two; }

  bool has_edge(Symbol i, Symbol j) const { return adjacency_.get(i, j); }
  const std::vector<Symbol>& successors(Symbol i) const { return succ_[i]; }
  const std::vector<Symbol>& predecessors(Symbol i) const { return pred_[i]; }
  std::vector<Edge> edges() const;
  const BoolMatrix& adjacency() const { return adjacency_; }

  /// A word is legal iff every consecutive pair is an edge. On an essential
  /// graph this is exactly the language of the subshift.
  bool is_legal(std::span<const Symbol> w) const;
  bool is_essential() const;

 private:
  Alphabet vertices_;
  Sided sided_;
  BoolMatrix adjacency_;
  std::vector<std::vector<Symbol>> succ_;
  std::vector<std::vector<Symbol>> pred_;
};

/// Drops vertices of in- or out-degree zero until stable. Throws EmptySystem
/// when nothing survives.
SftGraph essentialize(const SftGraph& g);

/// Vertex-induced subgraph; names and sidedness are kept.
SftGraph induced_subgraph(const SftGraph& g, const std::vector<Symbol>& keep);

/// Tarjan; components in reverse topological order.
std::vector<std::vector<Symbol>> strongly_connected_components(const SftGraph& g);
bool strongly_connected(const SftGraph& g);

/// gcd of cycle lengths. Throws NotStronglyConnected.
std::uint64_t graph_period(const SftGraph& g);
bool primitive(const SftGraph& g);

/// Path-length sets for every ordered vertex pair: n is in at(i, j) iff there
/// is a walk of n edges from i to j.
class ReachProfile {
 public:
  ReachProfile(std::size_t n, std::size_t index, std::size_t period,
               std::vector<EventuallyPeriodicSet> sets)
      : n_(n), index_(index), period_(period), sets_(std::move(sets)) {}

  const EventuallyPeriodicSet& at(Symbol i, Symbol j) const { return sets_[i * n_ + j]; }
  std::size_t size() const { return n_; }
  /// First power that recurs, and the recurrence period.
  std::size_t index() const { return index_; }
  std::size_t period() const { return period_; }

 private:
  std::size_t n_;
  std::size_t index_;
  std::size_t period_;
  std::vector<EventuallyPeriodicSet> sets_;
};

inline constexpr std::size_t kDefaultPowerCap = 4096;

/// Throws CapExceeded when the powers do not recur within cap.
ReachProfile reach_profile(const SftGraph& g, std::size_t cap = kDefaultPowerCap,
                           Exec exec = Exec::Serial);

/// { n >= 1 : shifting [u] by n meets [v] }. Throws IllegalWord.
EventuallyPeriodicSet hitting_set(const SftGraph& g, std::span<const Symbol> u,
                                  std::span<const Symbol> v);
EventuallyPeriodicSet hitting_set(const SftGraph& g, const ReachProfile& profile,
                                  std::span<const Symbol> u, std::span<const Symbol> v);

/// Exact decision; always PROVED or REFUTED. Throws EmptySystem.
Verdict decide_property(const SftGraph& g, PropertyId p);

enum class CoreMode { Plus, WeakMinus, Minus };

/// Largest vertex set inside W whose vertex subshift is invariant in the given
/// sense. Returned sorted; may be empty.
std::vector<Symbol> invariant_core(const SftGraph& g, const std::vector<Symbol>& W, CoreMode mode);

/// Tensor product, essentialized. Vertex names are "(a,b)".
SftGraph build_product(const SftGraph& g1, const SftGraph& g2);

/// Vertex shift on legal (k-1)-blocks for the SFT given by forbidden words,
/// k the longest forbidden length (at least 2). Essentialized.
SftGraph higher_block_recode(const Alphabet& alphabet, const std::vector<Word>& forbidden,
                             Sided sided = Sided::One);

}  // namespace dynclass
