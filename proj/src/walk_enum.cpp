#include "wsaw/walk_enum.hpp"

#include <omp.h>

#include <algorithm>
#include <unordered_map>
#include <vector>

namespace wsaw {

namespace {

// Max coincidence pairs of an n-step walk: alternating between two sites
// splits the n+1 visited points as evenly as possible.
int max_pairs(int n) {
  int a = (n + 2) / 2, b = (n + 1) - a;
  return a * (a - 1) / 2 + b * (b - 1) / 2;
}

struct Geometry {
  int d, N, side;
  std::uint32_t origin;
  std::vector<std::int64_t> step;     // +/- strides per axis, 2d entries
  std::vector<int> slot_offset;       // slot_offset[n] + P indexes profiles
  int slots;

  Geometry(int d_, int N_) : d(d_), N(N_) {
    side = 2 * N + 1;
    if (N == 0) side = 1;
    std::int64_t stride = 1;
    std::uint64_t total = 1;
    std::int64_t org = 0;
    for (int i = 0; i < d; ++i) {
      step.push_back(stride);
      step.push_back(-stride);
      org += stride * N;
      stride *= side;
      total *= std::uint64_t(side);
    }
    origin = std::uint32_t(org);
    (void)total;
    slot_offset.resize(N + 1);
    int off = 0;
    for (int n = 0; n <= N; ++n) {
      slot_offset[n] = off;
      off += max_pairs(n) + 1;
    }
    slots = off;
  }

  LatticePoint unindex(std::uint32_t idx) const {
    LatticePoint p(d);
    for (int i = 0; i < d; ++i) {
      p[i] = Coord(idx % std::uint32_t(side)) - Coord(N);
      idx /= std::uint32_t(side);
    }
    return p;
  }
};

// Per-thread bins: site index -> flat (n, P) profile of walk counts.
using Profile = std::unordered_map<std::uint32_t, std::vector<std::uint64_t>>;

struct Walker {
  const Geometry& geo;
  std::vector<std::uint16_t> visits;
  Profile prof;
  std::uint32_t pos = 0;
  int depth = 0;
  int pairs = 0;

  explicit Walker(const Geometry& g) : geo(g) {
    std::uint64_t boxsize = 1;
    for (int i = 0; i < g.d; ++i) boxsize *= std::uint64_t(g.side);
    visits.assign(boxsize, 0);
  }

  void record() {
    auto& v = prof[pos];
    if (v.empty()) v.assign(std::size_t(geo.slots), 0);
    v[std::size_t(geo.slot_offset[depth] + pairs)] += 1;
  }

  void enter(int dir) {
    pos = std::uint32_t(std::int64_t(pos) + geo.step[dir]);
    pairs += visits[pos];
    visits[pos] += 1;
    ++depth;
  }
  void leave(int dir) {
    visits[pos] -= 1;
    pairs -= visits[pos];
    pos = std::uint32_t(std::int64_t(pos) - geo.step[dir]);
    --depth;
  }

  // record every node of the subtree below the current state
  void dfs() {
    record();
    if (depth == geo.N) return;
    const int ndir = 2 * geo.d;
    for (int dir = 0; dir < ndir; ++dir) {
      enter(dir);
      dfs();
      leave(dir);
    }
  }
};

struct Prefix {
  std::vector<std::uint8_t> dirs;
};

void merge_profiles(Profile& into, const Profile& from) {
  for (const auto& [site, vec] : from) {
    auto& dst = into[site];
    if (dst.empty()) dst.assign(vec.size(), 0);
    for (std::size_t i = 0; i < vec.size(); ++i) dst[i] += vec[i];
  }
}

// Fold full-lattice profiles onto orbit representatives and attach weights
// (1-beta)^P.  `factor` is Omega for the pinned-first-step route (counts
// divided by the endpoint orbit size restore the full sum), 1 otherwise,
// where the plain route still divides by the orbit size because folding
// summed all |orbit| equal values.
SpatialSeries assemble(const Geometry& geo, const Profile& merged,
                       const Rational& beta, const Rational& factor) {
  const int N = geo.N;
  Rational onemb = Rational(1) - beta;
  std::vector<Rational> wpow(std::size_t(max_pairs(N)) + 1);
  wpow[0] = Rational(1);
  for (std::size_t p = 1; p < wpow.size(); ++p) wpow[p] = wpow[p - 1] * onemb;

  std::map<LatticePoint, std::vector<std::uint64_t>> folded;
  for (const auto& [site, vec] : merged) {
    LatticePoint rep = orbit_representative(geo.unindex(site));
    auto& dst = folded[rep];
    if (dst.empty()) dst.assign(vec.size(), 0);
    for (std::size_t i = 0; i < vec.size(); ++i) dst[i] += vec[i];
  }

  SpatialSeries out(geo.d, N);
  out.add_coeff(LatticePoint(geo.d), 0, Rational(1));  // g_0 = delta
  for (const auto& [rep, vec] : folded) {
    Rational scale = factor / Rational(static_cast<unsigned long>(orbit_size(rep)));
    ZPolynomial poly(N);
    for (int n = 1; n <= N; ++n) {
      Rational acc(0);
      for (int p = 0; p <= max_pairs(n); ++p) {
        std::uint64_t c = vec[std::size_t(geo.slot_offset[n] + p)];
        if (c) acc += Rational(static_cast<unsigned long>(c)) * wpow[std::size_t(p)];
      }
      if (acc != 0) poly.set_coeff(n, acc * scale);
    }
    if (rep.is_origin()) poly.add_coeff(0, Rational(1));
    if (!poly.is_zero()) out.set(rep, std::move(poly));
  }
  out.set_walk_support(true);
  return out;
}

void validate_params(const WalkWeightParams& p) {
  if (p.d < 1 || p.d > LatticePoint::kMaxDim)
    throw argument_error("dimension out of range [1,8]");
  if (p.order < 0) throw argument_error("negative truncation order");
  if (p.beta < 0 || p.beta >= 1)
    throw argument_error("beta must lie in [0,1), got " + to_string(p.beta));
  std::uint64_t est = estimated_walks(p.d, p.order);
  if (est > p.work_limit)
    throw resource_error("estimated walk count " + std::to_string(est) +
                         " exceeds work limit " + std::to_string(p.work_limit));
  // visit-count box: (2N+1)^d sites per thread
  std::uint64_t boxsize = 1;
  for (int i = 0; i < p.d; ++i) {
    boxsize *= std::uint64_t(2 * p.order + 1);
    if (boxsize > (1ull << 24))
      throw resource_error("enumeration box of " + std::to_string(boxsize) +
                           "+ sites exceeds the memory budget");
  }
}

}  // namespace

std::uint64_t estimated_walks(int d, int order) {
  const std::uint64_t omega = std::uint64_t(2 * d);
  std::uint64_t total = 1, pw = 1;
  for (int n = 1; n <= order; ++n) {
    if (pw > UINT64_MAX / omega) return UINT64_MAX;
    pw *= omega;
    if (total > UINT64_MAX - pw) return UINT64_MAX;
    total += pw;
  }
  return total;
}

GSeries enumerate_G(const WalkWeightParams& p) {
  validate_params(p);
  const int N = p.order;
  Geometry geo(p.d, N);
  GSeries out{p, SpatialSeries(p.d, N)};
  if (N == 0) {
    out.series = delta_series(p.d, 0);
    return out;
  }

  const int threads = p.threads > 0 ? p.threads : omp_get_max_threads();
  const int omega = 2 * p.d;

  // Depth-t prefixes (first step pinned to +e_1) fan the subtree walk out
  // over threads; contributions of walks shorter than t are collected
  // during prefix generation.
  int t = 1;
  std::uint64_t count = 1;
  while (t < N && count < std::uint64_t(8 * threads) && count < 4096) {
    ++t;
    count *= std::uint64_t(omega);
  }

  Walker gen(geo);
  std::vector<Prefix> prefixes;
  Profile short_walks;
  {
    std::vector<std::uint8_t> dirs;
    gen.visits[geo.origin] = 1;
    gen.pos = geo.origin;
    auto descend = [&](auto&& self) -> void {
      if (gen.depth == t) {
        prefixes.push_back(Prefix{dirs});
        return;
      }
      if (gen.depth >= 1) gen.record();
      const int to = gen.depth == 0 ? 1 : 2 * geo.d;  // pin first step +e_1
      for (int dir = 0; dir < to; ++dir) {
        dirs.push_back(std::uint8_t(dir));
        gen.enter(dir);
        self(self);
        gen.leave(dir);
        dirs.pop_back();
      }
    };
    descend(descend);
    short_walks = std::move(gen.prof);
  }

  std::vector<Profile> per_thread(static_cast<std::size_t>(threads));
#pragma omp parallel num_threads(threads)
  {
    Walker w(geo);
    w.visits[geo.origin] = 1;
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < std::int64_t(prefixes.size()); ++i) {
      const auto& pre = prefixes[std::size_t(i)];
      w.pos = geo.origin;
      w.depth = 0;
      w.pairs = 0;
      for (std::uint8_t dir : pre.dirs) w.enter(dir);
      w.dfs();
      for (auto it = pre.dirs.rbegin(); it != pre.dirs.rend(); ++it)
        w.leave(*it);
    }
    merge_profiles(per_thread[std::size_t(omp_get_thread_num())], w.prof);
  }

  Profile merged = std::move(short_walks);
  for (const auto& tp : per_thread) merge_profiles(merged, tp);

  out.series = assemble(geo, merged, p.beta, Rational(omega));
  return out;
}

GSeries enumerate_G_reference(const WalkWeightParams& p) {
  validate_params(p);
  const int N = p.order;
  Geometry geo(p.d, N);
  GSeries out{p, SpatialSeries(p.d, N)};
  if (N == 0) {
    out.series = delta_series(p.d, 0);
    return out;
  }
  Walker w(geo);
  w.visits[geo.origin] = 1;
  w.pos = geo.origin;
  for (int dir = 0; dir < 2 * p.d; ++dir) {
    w.enter(dir);
    w.dfs();
    w.leave(dir);
  }
  out.series = assemble(geo, w.prof, p.beta, Rational(1));
  return out;
}

SpatialSeries srw_counts(int d, int order) {
  SpatialSeries out(d, order);
  out.add_coeff(LatticePoint(d), 0, Rational(1));
  SpatialSeries cur = delta_series(d, 0);
  SpatialSeries D0 = step_distribution(d);
  const Rational omega(2 * d);
  for (int n = 1; n <= order; ++n) {
    cur = convolve(cur, D0).scaled(omega);
    for (const auto& [x, poly] : cur.entries())
      out.add_coeff(x, n, poly.coeff(0));
  }
  out.set_walk_support(true);
  return out;
}

ZPolynomial chi_series(const GSeries& g) { return moment_series(g.series, 0); }

}  // namespace wsaw
