#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "dynclass/bool_matrix.hpp"
#include "dynclass/core.hpp"
#include "dynclass/sft.hpp"

namespace dynclass {

using Rational = mpq_class;

/// "p/q" or "p" to an exact rational. Throws InvalidArgument.
Rational parse_rational(std::string_view text);
std::string rational_string(const Rational& q);

struct RationalInterval {
  Rational lo, hi;

  RationalInterval() = default;
  RationalInterval(Rational l, Rational h);

  Rational length() const { return hi - lo; }
  bool degenerate() const { return lo == hi; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains(const RationalInterval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool meets(const RationalInterval& o) const { return lo <= o.hi && o.lo <= hi; }
  std::optional<RationalInterval> intersect(const RationalInterval& o) const;
  std::string to_string() const;

  friend bool operator==(const RationalInterval&, const RationalInterval&) = default;
};

/// Sorted, pairwise disjoint closed intervals; touching pieces are merged.
class IntervalUnion {
 public:
  IntervalUnion() = default;
  explicit IntervalUnion(std::vector<RationalInterval> parts);

  const std::vector<RationalInterval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  std::size_t size() const { return parts_.size(); }

  void add(const RationalInterval& i);
  IntervalUnion unite(const IntervalUnion& o) const;
  IntervalUnion intersect(const IntervalUnion& o) const;
  bool meets(const RationalInterval& i) const;
  bool covers(const RationalInterval& i) const;
  bool has_interior() const;
  Rational measure() const;
  std::string to_string() const;

  friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

 private:
  std::vector<RationalInterval> parts_;
};

inline constexpr std::size_t kDefaultPieceCap = 100000;

/// Continuous piecewise-linear self-map of a closed interval.
///
/// Finite form: breakpoints x_0 < ... < x_k with values, linear in between.
/// Ladder form: the map on [0,1] with breakpoints s(j) = 2^j / (1 + 2^j) for
/// all integers j, sending s(j) to s(j-2) for even j and to s(j+2) for odd j,
/// with 0 and 1 fixed.
class PLMap {
 public:
  static PLMap finite(std::vector<Rational> breakpoints, std::vector<Rational> values);
  static PLMap ladder();

  bool is_ladder() const { return ladder_; }
  const RationalInterval& domain() const { return domain_; }
  const std::vector<Rational>& breakpoints() const { return xs_; }
  const std::vector<Rational>& values() const { return ys_; }

  Rational operator()(const Rational& x) const;
  /// Image of a closed subinterval of the domain; always a single interval.
  RationalInterval image(const RationalInterval& i) const;
  /// Slope on each piece (finite form only).
  std::vector<Rational> slopes() const;
  /// Fixed points, one per piece where isolated (finite form), or {0, 1}.
  std::vector<Rational> fixed_points() const;

 private:
  PLMap() = default;

  bool ladder_ = false;
  RationalInterval domain_;
  std::vector<Rational> xs_, ys_;
};

/// s(j) = 2^j / (1 + 2^j).
Rational ladder_point(long j);
/// The j with s(j) <= x < s(j+1), for 0 < x < 1.
long ladder_index(const Rational& x);
inline Rational ladder_a(long i) { return ladder_point(2 * i); }
inline Rational ladder_b(long i) { return ladder_point(2 * i + 1); }

IntervalUnion pl_image(const PLMap& f, const RationalInterval& i);
IntervalUnion pl_image(const PLMap& f, const IntervalUnion& u);
/// f^1(U) ... f^N(U). Throws CapExceeded past the piece cap.
std::vector<IntervalUnion> iterate_images(const PLMap& f, const IntervalUnion& u, std::size_t N,
                                          std::size_t cap = kDefaultPieceCap);
/// Sorted solutions of f(x) = y. A constant piece at height y contributes its endpoints.
std::vector<Rational> pl_preimage_point(const PLMap& f, const Rational& y);

struct BackwardOrbit {
  std::vector<Rational> points;  // sorted, includes the start point
  bool closed = false;           // preimages of every point are already present
  std::size_t depth = 0;         // levels expanded
  Rational max_gap;              // largest gap, domain ends included

  /// Every closed eps-cell of the domain holds a point.
  bool dense_at(const RationalInterval& domain, const Rational& eps) const;
};

BackwardOrbit backward_orbit(const PLMap& f, const Rational& x, std::size_t depth,
                             std::size_t cap = kDefaultPieceCap);

/// Closed cells of length eps (the last one possibly shorter) covering the domain.
std::vector<RationalInterval> grid_cells(const RationalInterval& domain, const Rational& eps);

/// Grid check at scale (eps, H): WITNESS / NO_WITNESS, REFUTED for TT when a
/// closed forward-invariant union with interior misses part of the domain,
/// REFUTED for ST from a finite closed backward orbit, REFUTED for M from a
/// fixed point. Supports TT ST VST M WM ET SET TM LEO EXACT FULLY_EXACT.
Verdict check_interval_property(const PLMap& f, PropertyId p, const Rational& eps, std::size_t H,
                                Exec exec = Exec::Parallel);

/// Vertex shift on the partition cut by the forward orbits of the breakpoints,
/// or nullopt when those orbits exceed the cap.
std::optional<SftGraph> markov_extract(const PLMap& f, std::size_t cap = 256);

/// Every |slope| > 1.
bool expanding(const PLMap& f);

/// Exact TT / TM / LEO for an expanding Markov map through its partition
/// graph; nullopt for other maps and properties.
std::optional<Verdict> markov_decide(const PLMap& f, PropertyId p);

/// WITNESS if every eps-cell holds a backward-orbit point of q other than q.
Verdict eventually_fixed_dense(const PLMap& f, const Rational& q, const Rational& eps,
                               std::size_t depth);

}  // namespace dynclass
