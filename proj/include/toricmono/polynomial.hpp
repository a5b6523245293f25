#ifndef TORICMONO_POLYNOMIAL_HPP
#define TORICMONO_POLYNOMIAL_HPP

#include <complex>
#include <span>
#include <vector>

namespace toricmono {

using cplx = std::complex<double>;

/// Dense univariate polynomial, coeffs[j] multiplying t^j.
struct Poly {
  std::vector<cplx> coeffs;

  Poly() = default;
  explicit Poly(std::vector<cplx> c) : coeffs(std::move(c)) {}
  static Poly constant(cplx c) { return Poly({c}); }
  static Poly from_roots(std::span<const cplx> roots);

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  cplx eval(cplx t) const;
  Poly derivative() const;
  void trim(double eps = 0.0);
  double max_abs_coeff() const;

  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  Poly& operator*=(cplx s);
};

/// All complex roots via companion-matrix eigenvalues followed by one Newton
/// polish step. Leading/trailing coefficients below eps (relative) are
/// stripped first; the stripped valuation is reported.
struct PolyRoots {
  std::vector<cplx> roots;  // roots away from zero (valuation removed)
  int valuation = 0;
  double max_residual = 0.0;  // max |p(root)| / max|coeff|
};
PolyRoots all_roots(const Poly& p, double eps = 1e-13);

/// Bivariate polynomial sum_m s^m * piece[m](t).
struct BiPoly {
  std::vector<Poly> by_s_power;

  int s_degree() const { return static_cast<int>(by_s_power.size()) - 1; }
  int t_degree() const;
  cplx eval(cplx t, cplx s) const;
  /// Evaluate the t-variable, leaving a polynomial in s.
  Poly eval_t(cplx t) const;
  void trim();
};

/// a(t) * b(s) as a bivariate polynomial.
BiPoly outer_product(const Poly& a, const Poly& b);
BiPoly operator-(const BiPoly& a, const BiPoly& b);

/// Quotient of an antisymmetric F(t,s) by (t - s); the remainder must
/// vanish (checked against a relative threshold).
BiPoly divide_by_t_minus_s(const BiPoly& f);

/// Resultant with respect to s of two bivariate polynomials, computed by
/// evaluation of Sylvester determinants on a circle and inverse DFT.
/// sample_radius: the circle radius used for the t-samples.
Poly resultant_in_s(const BiPoly& f, const BiPoly& g, double sample_radius);

/// Determinant of a dense complex matrix by partial-pivoting elimination.
cplx determinant(std::vector<std::vector<cplx>> m);

}  // namespace toricmono

#endif
