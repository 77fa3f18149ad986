#include "wsaw/zpoly.hpp"

#include <string>

namespace wsaw {

namespace {
const Rational kZero = Rational(0);
}

ZPolynomial::ZPolynomial(int order) : order_(order) {
  if (order < 0) throw argument_error("negative truncation order");
}

ZPolynomial ZPolynomial::constant(int order, Rational c) {
  ZPolynomial p(order);
  p.set_coeff(0, std::move(c));
  return p;
}

const Rational& ZPolynomial::coeff(int n) const {
  if (n < 0 || n > order_)
    throw argument_error("coefficient index out of range");
  if (n >= int(c_.size())) return kZero;
  return c_[n];
}

void ZPolynomial::set_coeff(int n, Rational v) {
  if (n < 0 || n > order_)
    throw argument_error("coefficient index out of range");
  if (n >= int(c_.size())) {
    if (v == 0) return;
    c_.resize(n + 1, Rational(0));
  }
  c_[n] = std::move(v);
}

void ZPolynomial::add_coeff(int n, const Rational& v) {
  if (n < 0 || n > order_)
    throw argument_error("coefficient index out of range");
  if (v == 0) return;
  if (n >= int(c_.size())) c_.resize(n + 1, Rational(0));
  c_[n] += v;
}

bool ZPolynomial::is_zero() const {
  for (const auto& c : c_)
    if (c != 0) return false;
  return true;
}

int ZPolynomial::degree() const {
  for (int n = int(c_.size()) - 1; n >= 0; --n)
    if (c_[n] != 0) return n;
  return -1;
}

void ZPolynomial::check_same_order(const ZPolynomial& o) const {
  if (order_ != o.order_)
    throw argument_error("truncation order mismatch: " +
                         std::to_string(order_) + " vs " +
                         std::to_string(o.order_));
}

ZPolynomial& ZPolynomial::operator+=(const ZPolynomial& o) {
  check_same_order(o);
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

ZPolynomial& ZPolynomial::operator-=(const ZPolynomial& o) {
  check_same_order(o);
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

ZPolynomial ZPolynomial::operator+(const ZPolynomial& o) const {
  ZPolynomial r = *this;
  r += o;
  return r;
}

ZPolynomial ZPolynomial::operator-(const ZPolynomial& o) const {
  ZPolynomial r = *this;
  r -= o;
  return r;
}

ZPolynomial ZPolynomial::operator*(const ZPolynomial& o) const {
  check_same_order(o);
  ZPolynomial r(order_);
  r.add_mul(*this, o);
  return r;
}

void ZPolynomial::add_mul(const ZPolynomial& p, const ZPolynomial& q) {
  if (p.order_ != q.order_ || p.order_ != order_)
    throw argument_error("truncation order mismatch in add_mul");
  int dp = int(p.c_.size()) - 1, dq = int(q.c_.size()) - 1;
  if (dp < 0 || dq < 0) return;
  int top = std::min(order_, dp + dq);
  if (top >= int(c_.size())) c_.resize(top + 1, Rational(0));
  Rational t;
  for (int i = 0; i <= dp && i <= top; ++i) {
    if (p.c_[i] == 0) continue;
    int jmax = std::min(dq, top - i);
    for (int j = 0; j <= jmax; ++j) {
      if (q.c_[j] == 0) continue;
      t = p.c_[i] * q.c_[j];
      c_[i + j] += t;
    }
  }
}

ZPolynomial& ZPolynomial::scale(const Rational& c) {
  for (auto& v : c_) v *= c;
  return *this;
}

ZPolynomial ZPolynomial::scaled(const Rational& c) const {
  ZPolynomial r = *this;
  r.scale(c);
  return r;
}

ZPolynomial ZPolynomial::shifted(int m) const {
  if (m < 0) throw argument_error("negative shift");
  ZPolynomial r(order_);
  for (int n = 0; n + m <= order_ && n < int(c_.size()); ++n)
    r.set_coeff(n + m, c_[n]);
  return r;
}

ZPolynomial ZPolynomial::truncated(int new_order) const {
  if (new_order < 0 || new_order > order_)
    throw argument_error("truncated: order must be in [0, order]");
  ZPolynomial r(new_order);
  for (int n = 0; n <= new_order && n < int(c_.size()); ++n)
    r.set_coeff(n, c_[n]);
  return r;
}

Rational ZPolynomial::eval(const Rational& z) const {
  Rational acc(0);
  for (int n = int(c_.size()) - 1; n >= 0; --n) {
    acc *= z;
    acc += c_[n];
  }
  return acc;
}

double ZPolynomial::eval_double(double z) const {
  double acc = 0;
  for (int n = int(c_.size()) - 1; n >= 0; --n) acc = acc * z + c_[n].get_d();
  return acc;
}

bool ZPolynomial::operator==(const ZPolynomial& o) const {
  if (order_ != o.order_) return false;
  std::size_t m = std::max(c_.size(), o.c_.size());
  for (std::size_t i = 0; i < m; ++i) {
    const Rational& a = i < c_.size() ? c_[i] : kZero;
    const Rational& b = i < o.c_.size() ? o.c_[i] : kZero;
    if (a != b) return false;
  }
  return true;
}

}  // namespace wsaw
