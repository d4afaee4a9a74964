#include "dynclass/interval.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace dynclass {

Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
  };
  std::string_view body = text;
  if (!body.empty() && body.front() == '-') body.remove_prefix(1);
  const auto slash = body.find('/');
  const bool ok = slash == std::string_view::npos
                      ? digits(body)
                      : digits(body.substr(0, slash)) && digits(body.substr(slash + 1));
  if (!ok) throw Error(ErrorCode::InvalidArgument, "not a rational: '" + std::string(text) + "'");
  if (slash != std::string_view::npos &&
      body.substr(slash + 1).find_first_not_of('0') == std::string_view::npos) {
    throw Error(ErrorCode::InvalidArgument, "zero denominator in '" + std::string(text) + "'");
  }
  Rational q(std::string(text), 10);
  q.canonicalize();
  return q;
}

std::string rational_string(const Rational& q) { return q.get_str(); }

RationalInterval::RationalInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
  if (hi < lo) throw Error(ErrorCode::InvalidArgument, "interval with lo > hi");
}

std::optional<RationalInterval> RationalInterval::intersect(const RationalInterval& o) const {
  if (!meets(o)) return std::nullopt;
  return RationalInterval(std::max(lo, o.lo), std::min(hi, o.hi));
}

std::string RationalInterval::to_string() const {
  return "[" + rational_string(lo) + "," + rational_string(hi) + "]";
}

IntervalUnion::IntervalUnion(std::vector<RationalInterval> parts) {
  std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
  for (auto& p : parts) {
    if (!parts_.empty() && p.lo <= parts_.back().hi) {
      if (parts_.back().hi < p.hi) parts_.back().hi = p.hi;
    } else {
      parts_.push_back(std::move(p));
    }
  }
}

void IntervalUnion::add(const RationalInterval& i) {
  auto all = parts_;
  all.push_back(i);
  *this = IntervalUnion(std::move(all));
}

IntervalUnion IntervalUnion::unite(const IntervalUnion& o) const {
  auto all = parts_;
  all.insert(all.end(), o.parts_.begin(), o.parts_.end());
  return IntervalUnion(std::move(all));
}

IntervalUnion IntervalUnion::intersect(const IntervalUnion& o) const {
  std::vector<RationalInterval> out;
  std::size_t i = 0, j = 0;
  while (i < parts_.size() && j < o.parts_.size()) {
    if (auto x = parts_[i].intersect(o.parts_[j])) out.push_back(*x);
    if (parts_[i].hi < o.parts_[j].hi) ++i;
    else ++j;
  }
  return IntervalUnion(std::move(out));
}

bool IntervalUnion::meets(const RationalInterval& i) const {
  return std::any_of(parts_.begin(), parts_.end(), [&](const auto& p) { return p.meets(i); });
}

bool IntervalUnion::covers(const RationalInterval& i) const {
  return std::any_of(parts_.begin(), parts_.end(), [&](const auto& p) { return p.contains(i); });
}

bool IntervalUnion::has_interior() const {
  return std::any_of(parts_.begin(), parts_.end(), [](const auto& p) { return !p.degenerate(); });
}

Rational IntervalUnion::measure() const {
  Rational total = 0;
  for (const auto& p : parts_) total += p.length();
  return total;
}

std::string IntervalUnion::to_string() const {
  if (parts_.empty()) return "{}";
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += " u ";
    out += parts_[i].to_string();
  }
  return out;
}

Rational ladder_point(long j) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(j < 0 ? -j : j));
  Rational s = j >= 0 ? Rational(p, p + 1) : Rational(mpz_class(1), p + 1);
  s.canonicalize();
  return s;
}

namespace {

// 2^e as a rational
Rational power_of_two(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
  return e >= 0 ? Rational(p) : Rational(mpz_class(1), p);
}

// f(s(j)) on the ladder
Rational ladder_value(long j) { return ladder_point(j % 2 == 0 ? j - 2 : j + 2); }

}  // namespace

long ladder_index(const Rational& x) {
  if (x <= 0 || x >= 1) throw Error(ErrorCode::OutOfDomain, "ladder index needs 0 < x < 1");
  Rational r = x / (1 - x);
  long e = static_cast<long>(mpz_sizeinbase(r.get_num_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(r.get_den_mpz_t(), 2));
  while (power_of_two(e) > r) --e;
  while (power_of_two(e + 1) <= r) ++e;
  return e;
}

PLMap PLMap::finite(std::vector<Rational> breakpoints, std::vector<Rational> values) {
  if (breakpoints.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two breakpoints");
  if (breakpoints.size() != values.size()) {
    throw Error(ErrorCode::InvalidArgument, "breakpoints and values differ in length");
  }
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i] < breakpoints[i + 1])) {
      throw Error(ErrorCode::InvalidArgument, "breakpoints must increase strictly");
    }
  }
  PLMap f;
  f.domain_ = RationalInterval(breakpoints.front(), breakpoints.back());
  for (const auto& y : values) {
    if (!f.domain_.contains(y)) {
      throw Error(ErrorCode::OutOfDomain, "value " + rational_string(y) + " leaves the domain");
    }
  }
  f.xs_ = std::move(breakpoints);
  f.ys_ = std::move(values);
  return f;
}

PLMap PLMap::ladder() {
  PLMap f;
  f.ladder_ = true;
  f.domain_ = RationalInterval(0, 1);
  return f;
}

Rational PLMap::operator()(const Rational& x) const {
  if (!domain_.contains(x)) throw Error(ErrorCode::OutOfDomain, rational_string(x) + " outside domain");
  if (ladder_) {
    if (x == 0 || x == 1) return x;
    const long j = ladder_index(x);
    const Rational x0 = ladder_point(j), x1 = ladder_point(j + 1);
    const Rational y0 = ladder_value(j), y1 = ladder_value(j + 1);
    return y0 + (x - x0) * (y1 - y0) / (x1 - x0);
  }
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  std::size_t i = it == xs_.end() ? xs_.size() - 2 : static_cast<std::size_t>(it - xs_.begin()) - 1;
  if (x == xs_[i]) return ys_[i];
  return ys_[i] + (x - xs_[i]) * (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]);
}

RationalInterval PLMap::image(const RationalInterval& I) const {
  if (!domain_.contains(I)) throw Error(ErrorCode::OutOfDomain, I.to_string() + " outside domain");
  Rational lo = (*this)(I.lo), hi = lo;
  auto take = [&](const Rational& y) {
    if (y < lo) lo = y;
    if (hi < y) hi = y;
  };
  take((*this)(I.hi));
  if (ladder_) {
    if (I.lo == I.hi) return {lo, hi};
    if (I.lo == 0 && I.hi == 1) return {0, 1};
    // only the breakpoints nearest an endpoint at 0 or 1 can be extreme
    long first, last;
    if (I.lo == 0) {
      last = ladder_index(I.hi);
      first = last - 3;
    } else {
      first = ladder_index(I.lo) + 1;
      last = I.hi == 1 ? first + 3 : ladder_index(I.hi);
    }
    for (long j = first; j <= last; ++j) {
      if (ladder_point(j) > I.lo && ladder_point(j) < I.hi) take(ladder_value(j));
    }
    return {lo, hi};
  }
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    if (I.lo < xs_[i] && xs_[i] < I.hi) take(ys_[i]);
  }
  return {lo, hi};
}

std::vector<Rational> PLMap::slopes() const {
  if (ladder_) throw Error(ErrorCode::InvalidArgument, "the ladder map has infinitely many pieces");
  std::vector<Rational> out;
  for (std::size_t i = 0; i + 1 < xs_.size(); ++i) out.push_back((ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]));
  return out;
}

std::vector<Rational> PLMap::fixed_points() const {
  if (ladder_) return {Rational(0), Rational(1)};
  std::set<Rational> out;
  for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
    const Rational g0 = ys_[i] - xs_[i], g1 = ys_[i + 1] - xs_[i + 1];
    if (g0 == 0) out.insert(xs_[i]);
    if (g1 == 0) out.insert(xs_[i + 1]);
    if ((g0 < 0 && g1 > 0) || (g0 > 0 && g1 < 0)) {
      out.insert(xs_[i] + g0 * (xs_[i + 1] - xs_[i]) / (g0 - g1));
    }
  }
  return {out.begin(), out.end()};
}

IntervalUnion pl_image(const PLMap& f, const RationalInterval& i) { return IntervalUnion({f.image(i)}); }

IntervalUnion pl_image(const PLMap& f, const IntervalUnion& u) {
  std::vector<RationalInterval> parts;
  for (const auto& p : u.parts()) parts.push_back(f.image(p));
  return IntervalUnion(std::move(parts));
}

std::vector<IntervalUnion> iterate_images(const PLMap& f, const IntervalUnion& u, std::size_t N,
                                          std::size_t cap) {
  if (N < 1) throw Error(ErrorCode::InvalidArgument, "iteration count must be >= 1");
  std::vector<IntervalUnion> out;
  IntervalUnion cur = u;
  for (std::size_t n = 1; n <= N; ++n) {
    cur = pl_image(f, cur);
    if (cur.size() > cap) throw Error(ErrorCode::CapExceeded, "interval union exceeds piece cap");
    out.push_back(cur);
  }
  return out;
}

std::vector<Rational> pl_preimage_point(const PLMap& f, const Rational& y) {
  std::set<Rational> out;
  auto solve = [&](const Rational& x0, const Rational& x1, const Rational& y0, const Rational& y1) {
    if (y0 == y1) {
      if (y == y0) {
        out.insert(x0);
        out.insert(x1);
      }
      return;
    }
    if ((y0 <= y && y <= y1) || (y1 <= y && y <= y0)) out.insert(x0 + (y - y0) * (x1 - x0) / (y1 - y0));
  };
  if (f.is_ladder()) {
    if (y == 0 || y == 1) return {y};
    if (y < 0 || y > 1) return {};
    const long k = ladder_index(y);
    for (long j = k - 4; j <= k + 4; ++j) solve(ladder_point(j), ladder_point(j + 1), ladder_value(j), ladder_value(j + 1));
    return {out.begin(), out.end()};
  }
  const auto& xs = f.breakpoints();
  const auto& ys = f.values();
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) solve(xs[i], xs[i + 1], ys[i], ys[i + 1]);
  return {out.begin(), out.end()};
}

bool BackwardOrbit::dense_at(const RationalInterval& domain, const Rational& eps) const {
  for (const auto& cell : grid_cells(domain, eps)) {
    auto it = std::lower_bound(points.begin(), points.end(), cell.lo);
    if (it == points.end() || *it > cell.hi) return false;
  }
  return true;
}

BackwardOrbit backward_orbit(const PLMap& f, const Rational& x, std::size_t depth, std::size_t cap) {
  if (depth < 1) throw Error(ErrorCode::InvalidArgument, "depth must be >= 1");
  std::set<Rational> seen{x};
  std::vector<Rational> frontier{x};
  BackwardOrbit orbit;
  for (std::size_t d = 1; d <= depth; ++d) {
    std::vector<Rational> next;
    for (const auto& y : frontier) {
      for (auto& p : pl_preimage_point(f, y)) {
        if (seen.insert(p).second) next.push_back(std::move(p));
      }
    }
    if (seen.size() > cap) throw Error(ErrorCode::CapExceeded, "backward orbit exceeds cap");
    orbit.depth = d;
    if (next.empty()) {
      orbit.closed = true;
      break;
    }
    frontier = std::move(next);
  }
  orbit.points.assign(seen.begin(), seen.end());
  const auto& dom = f.domain();
  orbit.max_gap = orbit.points.front() - dom.lo;
  for (std::size_t i = 0; i + 1 < orbit.points.size(); ++i) {
    orbit.max_gap = std::max(orbit.max_gap, Rational(orbit.points[i + 1] - orbit.points[i]));
  }
  orbit.max_gap = std::max(orbit.max_gap, Rational(dom.hi - orbit.points.back()));
  return orbit;
}

std::vector<RationalInterval> grid_cells(const RationalInterval& domain, const Rational& eps) {
  if (eps <= 0) throw Error(ErrorCode::InvalidArgument, "grid spacing must be positive");
  if (domain.degenerate()) return {domain};
  const Rational count = domain.length() / eps;
  if (count > Rational(static_cast<unsigned long>(kDefaultPieceCap))) {
    throw Error(ErrorCode::CapExceeded, "grid too fine");
  }
  std::vector<RationalInterval> cells;
  for (Rational lo = domain.lo; lo < domain.hi; lo += eps) {
    cells.emplace_back(lo, std::min(Rational(lo + eps), domain.hi));
  }
  return cells;
}

namespace {

struct Grid {
  const PLMap& f;
  std::vector<RationalInterval> cells;
  std::vector<std::vector<RationalInterval>> orbit;  // orbit[c][n] = f^n(cell c), n <= H
  std::size_t H;
  GridHorizon scale;

  Grid(const PLMap& map, const Rational& eps, std::size_t horizon, Exec exec)
      : f(map), cells(grid_cells(map.domain(), eps)), orbit(cells.size()), H(horizon),
        scale{rational_string(eps), static_cast<std::uint32_t>(horizon)} {
    const long long n = static_cast<long long>(cells.size());
    auto run = [&](long long c) {
      auto& o = orbit[c];
      o.push_back(cells[c]);
      for (std::size_t k = 1; k <= H; ++k) o.push_back(f.image(o.back()));
    };
    if (exec == Exec::Parallel) {
      std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
      for (long long c = 0; c < n; ++c) {
        try {
          run(c);
        } catch (...) {
#pragma omp critical
          if (!failure) failure = std::current_exception();
        }
      }
      if (failure) std::rethrow_exception(failure);
    } else {
      for (long long c = 0; c < n; ++c) run(c);
    }
  }

  // a single interval meets every cell iff it meets the first and the last
  bool dense(const RationalInterval& i) const { return i.meets(cells.front()) && i.meets(cells.back()); }
  bool dense(const IntervalUnion& u) const {
    return std::all_of(cells.begin(), cells.end(), [&](const auto& c) { return u.meets(c); });
  }
  bool full(const RationalInterval& i) const { return i.contains(f.domain()); }

  IntervalUnion forward_union(std::size_t c) const {
    return IntervalUnion(std::vector<RationalInterval>(orbit[c].begin() + 1, orbit[c].end()));
  }

  std::string cell(std::size_t c) const { return "U=" + cells[c].to_string(); }

  Verdict witness(std::string summary, std::vector<std::string> items = {}) const {
    return Verdict::witness(scale, Evidence{"grid", std::move(summary), std::move(items)});
  }
  Verdict fail(std::string summary, std::vector<std::string> items = {}) const {
    return Verdict::no_witness(scale, Evidence{"grid", std::move(summary), std::move(items)});
  }
};

std::optional<Verdict> invariant_union_refutation(const Grid& g) {
  for (std::size_t c = 0; c < g.cells.size(); ++c) {
    IntervalUnion E({g.orbit[c][0]});
    for (std::size_t n = 1; n <= g.H; ++n) {
      if (E.covers(g.orbit[c][n])) {
        if (E.covers(g.f.domain())) break;
        return Verdict::refuted(Evidence{
            "invariant-union",
            "closed forward-invariant set with interior is not the whole space",
            {"E=" + E.to_string(), "from " + g.cell(c), "f(E) within E after " + std::to_string(n - 1) + " steps"}});
      }
      E.add(g.orbit[c][n]);
    }
  }
  return std::nullopt;
}

std::optional<Verdict> backward_orbit_refutation(const PLMap& f, std::size_t depth) {
  if (f.domain().degenerate()) return std::nullopt;
  std::vector<Rational> candidates = f.fixed_points();
  candidates.push_back(f.domain().lo);
  candidates.push_back(f.domain().hi);
  for (const auto& x : candidates) {
    try {
      auto orbit = backward_orbit(f, x, depth, 4096);
      if (!orbit.closed) continue;
      std::string pts;
      for (const auto& p : orbit.points) pts += (pts.empty() ? "" : ", ") + rational_string(p);
      return Verdict::refuted(Evidence{"backward-orbit",
                                       "finite backward orbit is not dense",
                                       {"O-(" + rational_string(x) + ")={" + pts + "}"}});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::CapExceeded) throw;
    }
  }
  return std::nullopt;
}

Verdict check_tt(const Grid& g) {
  if (auto r = invariant_union_refutation(g)) return *r;
  for (std::size_t c = 0; c < g.cells.size(); ++c) {
    if (!g.dense(g.forward_union(c))) return g.fail("forward images not eps-dense", {g.cell(c)});
  }
  return g.witness("forward images of every cell are eps-dense");
}

Verdict check_st(const Grid& g, bool record) {
  std::size_t worst = 0;
  for (std::size_t c = 0; c < g.cells.size(); ++c) {
    IntervalUnion u;
    std::optional<std::size_t> hit;
    for (std::size_t n = 1; n <= g.H && !hit; ++n) {
      u.add(g.orbit[c][n]);
      if (u.covers(g.f.domain())) hit = n;
    }
    if (!hit) return g.fail("forward images do not cover the space", {g.cell(c)});
    worst = std::max(worst, *hit);
  }
  std::vector<std::string> items;
  if (record) items.push_back("largest N " + std::to_string(worst));
  return g.witness("forward images of every cell cover the space", std::move(items));
}

Verdict check_wm(const Grid& g) {
  const std::size_t words = g.H / 64 + 1;
  using Bits = std::vector<std::uint64_t>;
  std::vector<Bits> distinct;
  std::vector<std::pair<std::size_t, std::size_t>> origin;
  std::set<Bits> seen;
  for (std::size_t u = 0; u < g.cells.size(); ++u) {
    for (std::size_t v = 0; v < g.cells.size(); ++v) {
      Bits b(words, 0);
      for (std::size_t n = 1; n <= g.H; ++n) {
        if (g.orbit[u][n].meets(g.cells[v])) b[n / 64] |= std::uint64_t{1} << (n % 64);
      }
      if (seen.insert(b).second) {
        distinct.push_back(b);
        origin.emplace_back(u, v);
      }
    }
  }
  for (std::size_t a = 0; a < distinct.size(); ++a) {
    for (std::size_t b = a; b < distinct.size(); ++b) {
      bool meet = false;
      for (std::size_t w = 0; w < words && !meet; ++w) meet = (distinct[a][w] & distinct[b][w]) != 0;
      if (!meet) {
        return g.fail("no common time for the product pair",
                      {g.cell(origin[a].first), "V=" + g.cells[origin[a].second].to_string(),
                       g.cell(origin[b].first), "V=" + g.cells[origin[b].second].to_string()});
      }
    }
  }
  return g.witness("every product cell pair shares a hitting time");
}

Verdict check_tm(const Grid& g) {
  const std::size_t limit = std::max<std::size_t>(1, g.H / 2);
  std::size_t worst = 0;
  for (std::size_t c = 0; c < g.cells.size(); ++c) {
    std::size_t N = g.H + 1;
    while (N > 1 && g.dense(g.orbit[c][N - 1])) --N;
    if (N > limit) return g.fail("images not eps-dense from step " + std::to_string(limit) + " on", {g.cell(c)});
    worst = std::max(worst, N);
  }
  return g.witness("every image from step N on is eps-dense", {"largest N " + std::to_string(worst)});
}

Verdict check_leo(const Grid& g) {
  std::size_t worst = 0;
  for (std::size_t c = 0; c < g.cells.size(); ++c) {
    std::optional<std::size_t> hit;
    for (std::size_t n = 1; n <= g.H && !hit; ++n) {
      if (g.full(g.orbit[c][n])) hit = n;
    }
    if (!hit) return g.fail("no iterate covers the space", {g.cell(c)});
    worst = std::max(worst, *hit);
  }
  return g.witness("every cell maps onto the space", {"largest N " + std::to_string(worst)});
}

enum class PairMode { Exact, FullyExact, ET, SET };

Verdict check_pairs(const Grid& g, PairMode mode) {
  for (std::size_t u = 0; u < g.cells.size(); ++u) {
    for (std::size_t v = u; v < g.cells.size(); ++v) {
      IntervalUnion meet;
      bool ok = false;
      for (std::size_t n = 1; n <= g.H && !ok; ++n) {
        auto x = g.orbit[u][n].intersect(g.orbit[v][n]);
        if (!x) continue;
        switch (mode) {
          case PairMode::Exact: ok = true; break;
          case PairMode::FullyExact: ok = !x->degenerate(); break;
          case PairMode::ET:
            meet.add(*x);
            ok = g.dense(meet);
            break;
          case PairMode::SET:
            meet.add(*x);
            ok = meet.covers(g.f.domain());
            break;
        }
      }
      if (!ok) {
        static constexpr const char* what[] = {"images never meet", "images never share an interval",
                                               "common images not eps-dense", "common images do not cover the space"};
        return g.fail(what[static_cast<int>(mode)], {g.cell(u), "V=" + g.cells[v].to_string()});
      }
    }
  }
  return g.witness(std::to_string(g.cells.size() * (g.cells.size() + 1) / 2) + " cell pairs met");
}

}  // namespace

Verdict check_interval_property(const PLMap& f, PropertyId p, const Rational& eps, std::size_t H, Exec exec) {
  if (H < 1) throw Error(ErrorCode::InvalidArgument, "horizon must be >= 1");
  switch (p) {
    case PropertyId::M: {
      if (f.domain().degenerate()) break;
      const auto fixed = f.fixed_points();
      if (fixed.empty()) break;
      return Verdict::refuted(Evidence{"fixed-point", "a fixed point is a proper closed invariant set",
                                       {"x=" + rational_string(fixed.front())}});
    }
    case PropertyId::ST:
      if (auto r = backward_orbit_refutation(f, std::max<std::size_t>(H, 8))) return *r;
      break;
    case PropertyId::TT:
    case PropertyId::VST:
    case PropertyId::WM:
    case PropertyId::ET:
    case PropertyId::SET:
    case PropertyId::TM:
    case PropertyId::LEO:
    case PropertyId::EXACT:
    case PropertyId::FULLY_EXACT:
      break;
    default:
      throw Error(ErrorCode::InvalidArgument, "no grid check for " + std::string(to_string(p)));
  }
  Grid g(f, eps, H, exec);
  switch (p) {
    case PropertyId::TT: return check_tt(g);
    case PropertyId::ST: return check_st(g, false);
    case PropertyId::VST: return check_st(g, true);
    case PropertyId::WM: return check_wm(g);
    case PropertyId::TM: return check_tm(g);
    case PropertyId::LEO: return check_leo(g);
    case PropertyId::EXACT: return check_pairs(g, PairMode::Exact);
    case PropertyId::FULLY_EXACT: return check_pairs(g, PairMode::FullyExact);
    case PropertyId::ET: return check_pairs(g, PairMode::ET);
    case PropertyId::SET: return check_pairs(g, PairMode::SET);
    default: return g.fail("degenerate domain");
  }
}

std::optional<SftGraph> markov_extract(const PLMap& f, std::size_t cap) {
  if (f.is_ladder()) return std::nullopt;
  std::set<Rational> points(f.breakpoints().begin(), f.breakpoints().end());
  std::vector<Rational> work(points.begin(), points.end());
  while (!work.empty()) {
    Rational y = f(work.back());
    work.pop_back();
    if (points.insert(y).second) {
      if (points.size() > cap) return std::nullopt;
      work.push_back(y);
    }
  }
  std::vector<Rational> cuts(points.begin(), points.end());
  std::vector<RationalInterval> parts;
  std::vector<std::string> names;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    parts.emplace_back(cuts[i], cuts[i + 1]);
    names.push_back("I" + std::to_string(i));
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto img = f.image(parts[i]);
    for (std::size_t j = 0; j < parts.size(); ++j) {
      if (img.contains(parts[j])) edges.emplace_back(static_cast<Symbol>(i), static_cast<Symbol>(j));
    }
  }
  return SftGraph(Alphabet(std::move(names)), std::move(edges), Sided::One);
}

std::optional<Verdict> markov_decide(const PLMap& f, PropertyId p) {
  if (p != PropertyId::TT && p != PropertyId::TM && p != PropertyId::LEO) return std::nullopt;
  if (!expanding(f)) return std::nullopt;
  auto g = markov_extract(f);
  if (!g) return std::nullopt;
  for (Symbol v = 0; v < g->vertex_count(); ++v) {
    if (g->predecessors(v).empty()) {
      return Verdict::refuted(Evidence{"markov", "map is not onto",
                                       {g->vertices().symbol(v) + " lies outside the image"}});
    }
  }
  auto v = decide_property(*g, p);
  v.evidence.kind = "markov";
  v.evidence.items.insert(v.evidence.items.begin(), std::to_string(g->vertex_count()) + "-interval Markov partition");
  return v;
}

bool expanding(const PLMap& f) {
  if (f.is_ladder()) return true;
  for (const auto& s : f.slopes()) {
    if (abs(s) <= 1) return false;
  }
  return true;
}

Verdict eventually_fixed_dense(const PLMap& f, const Rational& q, const Rational& eps, std::size_t depth) {
  if (f(q) != q) throw Error(ErrorCode::InvalidArgument, rational_string(q) + " is not fixed");
  auto orbit = backward_orbit(f, q, depth);
  std::vector<Rational> others;
  for (const auto& p : orbit.points) {
    if (p != q) others.push_back(p);
  }
  const GridHorizon scale{rational_string(eps), static_cast<std::uint32_t>(depth)};
  for (const auto& cell : grid_cells(f.domain(), eps)) {
    auto it = std::lower_bound(others.begin(), others.end(), cell.lo);
    if (it == others.end() || *it > cell.hi) {
      return Verdict::no_witness(scale, Evidence{"backward-orbit", "cell without an eventually fixed point",
                                                 {"cell=" + cell.to_string(), std::to_string(others.size()) + " points"}});
    }
  }
  return Verdict::witness(scale, Evidence{"backward-orbit", "eventually fixed points are eps-dense",
                                          {std::to_string(others.size()) + " points"}});
}

}  // namespace dynclass
