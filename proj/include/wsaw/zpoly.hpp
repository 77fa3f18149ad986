#pragma once
// Truncated polynomials in the fugacity z with exact rational coefficients:
// elements of Q[z]/z^{N+1} tagged with their truncation order N.  Every
// binary operation requires equal tags (mixing truncations silently would
// corrupt exactness guarantees downstream).

#include <vector>

#include "wsaw/errors.hpp"
#include "wsaw/rational.hpp"

namespace wsaw {

class ZPolynomial {
 public:
  ZPolynomial() = default;  // zero polynomial of order 0
  explicit ZPolynomial(int order);
  static ZPolynomial constant(int order, Rational c);

  int order() const { return order_; }
  // coefficient of z^n; zero for n beyond the stored length
  const Rational& coeff(int n) const;
  void set_coeff(int n, Rational v);
  void add_coeff(int n, const Rational& v);

  bool is_zero() const;
  int degree() const;  // largest n with nonzero coefficient, -1 if zero

  ZPolynomial& operator+=(const ZPolynomial& o);
  ZPolynomial& operator-=(const ZPolynomial& o);
  ZPolynomial operator+(const ZPolynomial& o) const;
  ZPolynomial operator-(const ZPolynomial& o) const;
  ZPolynomial operator*(const ZPolynomial& o) const;  // truncated product
  // *this += p * q, truncated at order(); avoids temporaries in hot loops
  void add_mul(const ZPolynomial& p, const ZPolynomial& q);
  ZPolynomial& scale(const Rational& c);
  ZPolynomial scaled(const Rational& c) const;
  ZPolynomial shifted(int m) const;        // multiply by z^m, truncating
  ZPolynomial truncated(int new_order) const;  // retag at a lower order

  Rational eval(const Rational& z) const;  // exact Horner
  double eval_double(double z) const;

  bool operator==(const ZPolynomial& o) const;

 private:
  void check_same_order(const ZPolynomial& o) const;
  int order_ = 0;
  std::vector<Rational> c_;  // size <= order_+1; missing entries are zero
};

}  // namespace wsaw
