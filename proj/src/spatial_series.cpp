#include "wsaw/spatial_series.hpp"

#include <omp.h>

#include <algorithm>
#include <string>

namespace wsaw {

namespace {
const ZPolynomial kZeroPoly0 = ZPolynomial(0);
}

SpatialSeries::SpatialSeries(int d, int order, bool orbit_reduced)
    : d_(d), order_(order), orbit_reduced_(orbit_reduced), zero_(order) {
  if (d < 1 || d > LatticePoint::kMaxDim)
    throw argument_error("dimension out of range [1,8]: " + std::to_string(d));
  if (order < 0) throw argument_error("negative truncation order");
}

LatticePoint SpatialSeries::key_for(const LatticePoint& x) const {
  if (x.dim() != d_)
    throw argument_error("point dimension " + std::to_string(x.dim()) +
                         " does not match series dimension " +
                         std::to_string(d_));
  return orbit_reduced_ ? orbit_representative(x) : x;
}

const ZPolynomial& SpatialSeries::value_at(const LatticePoint& x) const {
  auto it = entries_.find(key_for(x));
  return it == entries_.end() ? zero_ : it->second;
}

Rational SpatialSeries::coeff(const LatticePoint& x, int n) const {
  auto it = entries_.find(key_for(x));
  if (it == entries_.end()) {
    if (n < 0 || n > order_)
      throw argument_error("coefficient index out of range");
    return Rational(0);
  }
  return it->second.coeff(n);
}

void SpatialSeries::set(const LatticePoint& x, ZPolynomial p) {
  if (p.order() != order_)
    throw argument_error("entry truncation order mismatch");
  LatticePoint k = key_for(x);
  if (p.is_zero())
    entries_.erase(k);
  else
    entries_[k] = std::move(p);
}

void SpatialSeries::add(const LatticePoint& x, const ZPolynomial& p) {
  if (p.order() != order_)
    throw argument_error("entry truncation order mismatch");
  if (p.is_zero()) return;
  LatticePoint k = key_for(x);
  auto [it, inserted] = entries_.try_emplace(k, p);
  if (!inserted) it->second += p;
}

void SpatialSeries::add_coeff(const LatticePoint& x, int n,
                              const Rational& v) {
  if (v == 0) return;
  LatticePoint k = key_for(x);
  auto [it, inserted] = entries_.try_emplace(k, ZPolynomial(order_));
  it->second.add_coeff(n, v);
}

int SpatialSeries::support_radius_l1() const {
  int r = -1;
  for (const auto& [x, p] : entries_)
    if (!p.is_zero()) r = std::max(r, x.l1());
  return r;
}

std::vector<std::pair<LatticePoint, const ZPolynomial*>>
SpatialSeries::expanded_support() const {
  std::vector<std::pair<LatticePoint, const ZPolynomial*>> out;
  for (const auto& [x, p] : entries_) {
    if (p.is_zero()) continue;
    if (orbit_reduced_) {
      for (const auto& y : expand_orbit(x)) out.emplace_back(y, &p);
    } else {
      out.emplace_back(x, &p);
    }
  }
  return out;
}

void SpatialSeries::check_compatible(const SpatialSeries& o) const {
  if (d_ != o.d_)
    throw argument_error("dimension mismatch: " + std::to_string(d_) +
                         " vs " + std::to_string(o.d_));
  if (order_ != o.order_)
    throw argument_error("truncation order mismatch: " +
                         std::to_string(order_) + " vs " +
                         std::to_string(o.order_));
  if (orbit_reduced_ != o.orbit_reduced_)
    throw argument_error("orbit-reduction mode mismatch");
}

SpatialSeries SpatialSeries::operator+(const SpatialSeries& o) const {
  check_compatible(o);
  SpatialSeries r = *this;
  r.walk_support_ = walk_support_ && o.walk_support_;
  for (const auto& [x, p] : o.entries_) r.add(x, p);
  r.prune_zeros();
  return r;
}

SpatialSeries SpatialSeries::operator-(const SpatialSeries& o) const {
  check_compatible(o);
  SpatialSeries r = *this;
  r.walk_support_ = walk_support_ && o.walk_support_;
  for (const auto& [x, p] : o.entries_) {
    ZPolynomial neg = p;
    neg.scale(Rational(-1));
    r.add(x, neg);
  }
  r.prune_zeros();
  return r;
}

SpatialSeries SpatialSeries::scaled(const Rational& c) const {
  SpatialSeries r(d_, order_, orbit_reduced_);
  r.walk_support_ = walk_support_;
  if (c == 0) return r;
  for (const auto& [x, p] : entries_) r.entries_[x] = p.scaled(c);
  return r;
}

SpatialSeries SpatialSeries::z_shifted(int m) const {
  SpatialSeries r(d_, order_, orbit_reduced_);
  for (const auto& [x, p] : entries_) {
    ZPolynomial s = p.shifted(m);
    if (!s.is_zero()) r.entries_[x] = std::move(s);
  }
  return r;
}

SpatialSeries SpatialSeries::truncated(int new_order) const {
  SpatialSeries r(d_, new_order, orbit_reduced_);
  r.walk_support_ = walk_support_;
  for (const auto& [x, p] : entries_) {
    ZPolynomial t = p.truncated(new_order);
    if (!t.is_zero()) r.entries_[x] = std::move(t);
  }
  return r;
}

SpatialSeries SpatialSeries::evaluated_at(const Rational& z) const {
  SpatialSeries r(d_, 0, orbit_reduced_);
  for (const auto& [x, p] : entries_) {
    Rational v = p.eval(z);
    if (v != 0) r.entries_[x] = ZPolynomial::constant(0, std::move(v));
  }
  return r;
}

void SpatialSeries::prune_zeros() {
  for (auto it = entries_.begin(); it != entries_.end();)
    it = it->second.is_zero() ? entries_.erase(it) : std::next(it);
}

bool SpatialSeries::operator==(const SpatialSeries& o) const {
  if (d_ != o.d_ || order_ != o.order_ || orbit_reduced_ != o.orbit_reduced_)
    return false;
  auto nonzero = [](const std::map<LatticePoint, ZPolynomial>& m) {
    std::vector<const std::pair<const LatticePoint, ZPolynomial>*> v;
    for (const auto& e : m)
      if (!e.second.is_zero()) v.push_back(&e);
    return v;
  };
  auto a = nonzero(entries_), b = nonzero(o.entries_);
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i]->first != b[i]->first || !(a[i]->second == b[i]->second))
      return false;
  return true;
}

SpatialSeries delta_series(int d, int order) {
  SpatialSeries s(d, order);
  s.set(LatticePoint(d), ZPolynomial::constant(order, Rational(1)));
  s.set_walk_support(true);
  return s;
}

SpatialSeries step_distribution(int d) { return step_distribution(d, 0); }

SpatialSeries step_distribution(int d, int order) {
  SpatialSeries s(d, order);
  LatticePoint e1 = unit_vector(d, 0);  // representative of all 2d neighbours
  s.set(e1, ZPolynomial::constant(order, Rational(1, 2 * d)));
  return s;
}

SpatialSeries convolve(const SpatialSeries& f, const SpatialSeries& g,
                       Exec exec) {
  if (f.dim() != g.dim())
    throw argument_error("convolve: dimension mismatch");
  if (f.order() != g.order())
    throw argument_error("convolve: truncation order mismatch");
  if (!f.orbit_reduced() || !g.orbit_reduced())
    throw argument_error("convolve: inputs must be orbit-reduced");
  const int d = f.dim(), order = f.order();
  SpatialSeries out(d, order);
  out.set_walk_support(f.walk_support() && g.walk_support());
  const int rf = f.support_radius_l1(), rg = g.support_radius_l1();
  if (rf < 0 || rg < 0) return out;

  // If both inputs respect the walk-support constraint, every output
  // coefficient at |x|_1 > order is provably zero, so the candidate ball
  // shrinks from rf+rg to the truncation order.
  int rmax = rf + rg;
  if (out.walk_support()) rmax = std::min(rmax, order);
  const std::vector<LatticePoint> cands = reps_l1_ball(d, rmax);

  // Iterate the smaller expanded support in the inner loop.
  const bool swap = f.entries().size() > g.entries().size();
  const SpatialSeries& a = swap ? g : f;  // expanded
  const SpatialSeries& b = swap ? f : g;  // looked up by representative
  const auto supp = a.expanded_support();

  std::vector<ZPolynomial> acc(cands.size(), ZPolynomial(order));
  const int n = int(cands.size());
#pragma omp parallel for schedule(dynamic, 1) if (exec == Exec::parallel)
  for (int i = 0; i < n; ++i) {
    const LatticePoint& x = cands[i];
    for (const auto& [y, py] : supp) {
      const LatticePoint w = orbit_representative(x - y);
      auto it = b.entries().find(w);
      if (it == b.entries().end()) continue;
      acc[i].add_mul(*py, it->second);
    }
  }
  for (int i = 0; i < n; ++i)
    if (!acc[i].is_zero()) out.set(cands[i], std::move(acc[i]));
  return out;
}

ZPolynomial moment_series(const SpatialSeries& f, int p) {
  if (p != 0 && p != 2)
    throw argument_error("moment: exponent must be 0 or 2, got " +
                         std::to_string(p));
  ZPolynomial m(f.order());
  for (const auto& [x, poly] : f.entries()) {
    // |x|^p and the orbit weight are constant on the orbit
    Rational w = f.orbit_reduced()
                     ? Rational(static_cast<unsigned long>(orbit_size(x)))
                     : Rational(1);
    if (p == 2) w *= Rational(static_cast<long>(x.norm2()));
    if (w == 0) continue;
    m += poly.scaled(w);
  }
  return m;
}

Rational moment(const SpatialSeries& f, int p) {
  if (f.order() != 0)
    throw argument_error(
        "scalar moment requires a collapsed (order-0) series");
  return moment_series(f, p).coeff(0);
}

bool satisfies_walk_support(const SpatialSeries& f) {
  for (const auto& [x, p] : f.entries()) {
    const int r = x.l1();
    for (int n = 0; n < r && n <= f.order(); ++n)
      if (p.coeff(n) != 0) return false;
  }
  return true;
}

}  // namespace wsaw
