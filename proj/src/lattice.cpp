#include "wsaw/lattice.hpp"

#include <algorithm>

namespace wsaw {

LatticePoint orbit_representative(const LatticePoint& x) {
  LatticePoint r(x.dim());
  for (int i = 0; i < x.dim(); ++i) r[i] = x[i] < 0 ? -x[i] : x[i];
  // Sort decreasing: among all signed permutations the all-nonnegative,
  // decreasing arrangement is lexicographically greatest.
  std::array<Coord, LatticePoint::kMaxDim> buf{};
  for (int i = 0; i < x.dim(); ++i) buf[i] = r[i];
  std::sort(buf.begin(), buf.begin() + x.dim(), std::greater<Coord>());
  for (int i = 0; i < x.dim(); ++i) r[i] = buf[i];
  return r;
}

std::uint64_t orbit_size(const LatticePoint& x) {
  LatticePoint r = orbit_representative(x);
  int d = r.dim();
  // distinct permutations: d! / prod(multiplicity!), times 2 per nonzero slot
  std::uint64_t fact = 1;
  for (int i = 2; i <= d; ++i) fact *= std::uint64_t(i);
  std::uint64_t denom = 1;
  int i = 0;
  int nonzero = 0;
  while (i < d) {
    int j = i;
    while (j < d && r[j] == r[i]) ++j;
    std::uint64_t mf = 1;
    for (int m = 2; m <= j - i; ++m) mf *= std::uint64_t(m);
    denom *= mf;
    if (r[i] != 0) nonzero += j - i;
    i = j;
  }
  return (fact / denom) << nonzero;
}

std::vector<LatticePoint> expand_orbit(const LatticePoint& x) {
  LatticePoint rep = orbit_representative(x);
  int d = rep.dim();
  std::array<Coord, LatticePoint::kMaxDim> perm{};
  for (int i = 0; i < d; ++i) perm[i] = rep[i];
  std::sort(perm.begin(), perm.begin() + d);  // ascending for next_permutation
  std::vector<LatticePoint> out;
  out.reserve(orbit_size(rep));
  do {
    // sign masks over nonzero coordinates
    int nz[LatticePoint::kMaxDim];
    int nnz = 0;
    for (int i = 0; i < d; ++i)
      if (perm[i] != 0) nz[nnz++] = i;
    for (std::uint32_t mask = 0; mask < (1u << nnz); ++mask) {
      LatticePoint p(d);
      for (int i = 0; i < d; ++i) p[i] = perm[i];
      for (int b = 0; b < nnz; ++b)
        if (mask & (1u << b)) p[nz[b]] = -p[nz[b]];
      out.push_back(p);
    }
  } while (std::next_permutation(perm.begin(), perm.begin() + d));
  return out;
}

namespace {

void gen_reps(int d, int slot, int prev_max, int budget_l1, int cap_each,
              LatticePoint& cur, std::vector<LatticePoint>& out) {
  if (slot == d) {
    out.push_back(cur);
    return;
  }
  int hi = std::min(prev_max, std::min(budget_l1, cap_each));
  for (int v = hi; v >= 0; --v) {
    cur[slot] = v;
    gen_reps(d, slot + 1, v, budget_l1 - v, cap_each, cur, out);
  }
  cur[slot] = 0;
}

}  // namespace

std::vector<LatticePoint> reps_l1_ball(int d, int r) {
  std::vector<LatticePoint> out;
  LatticePoint cur(d);
  gen_reps(d, 0, r, r, r, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LatticePoint> reps_linf_ball(int d, int r) {
  std::vector<LatticePoint> out;
  LatticePoint cur(d);
  gen_reps(d, 0, r, d * r, r, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace wsaw
