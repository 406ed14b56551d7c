// Complex polynomial and Laurent-polynomial arithmetic: the numeric substrate
// for the operator calculus.  Polynomials are dense monomial-basis vectors;
// Laurent expressions live on the unit circle variable z with x = (z+1/z)/2.
#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace bqsl {

using Complex = std::complex<double>;

// Relative magnitude below which trailing coefficients are trimmed.
inline constexpr double kTrimRel = 1e-13;

class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Complex> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<Complex> coeffs) : c_(coeffs) { trim(); }

  static Poly zero() { return Poly(); }
  static Poly one() { return Poly({Complex(1.0)}); }
  static Poly x() { return Poly({Complex(0.0), Complex(1.0)}); }
  // c * x^k
  static Poly monomial(int k, Complex c = Complex(1.0));
  static Poly constant(Complex c) { return Poly({c}); }

  const std::vector<Complex>& coeffs() const { return c_; }
  // Degree of the trimmed representation; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Complex coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : Complex(0.0);
  }
  Complex leading() const { return c_.empty() ? Complex(0.0) : c_.back(); }
  double max_abs_coeff() const;

  Complex operator()(Complex z) const;
  Poly derivative() const;
  // Coefficient-wise complex conjugate (equals conj(f(conj x))).
  Poly conjugate_coeffs() const;
  // this(g(x))
  Poly compose(const Poly& g) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(Complex s);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
  friend Poly operator*(Poly a, Complex s) { return a *= s; }
  friend Poly operator*(Complex s, Poly a) { return a *= s; }

 private:
  void trim();
  std::vector<Complex> c_;  // c_[k] multiplies x^k
};

// Finite two-sided expression sum_k c_k z^k; carrier for the eta_q shifts.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(std::map<int, Complex> coeffs) : c_(std::move(coeffs)) { trim(); }

  // f(x) rewritten as the symmetric Laurent expression f((z+1/z)/2).
  static LaurentPoly from_poly(const Poly& f);

  const std::map<int, Complex>& coeffs() const { return c_; }
  Complex coeff(int k) const;
  double max_abs_coeff() const;
  bool is_zero() const { return c_.empty(); }

  Complex eval(Complex z) const;

  // Substitution z -> s*z; multiplies coeff[k] by s^k, exactly.
  LaurentPoly scaled_arg(Complex s) const;
  // Substitution z -> 1/z.
  LaurentPoly inverted() const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(Complex s);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, Complex s) { return a *= s; }
  friend LaurentPoly operator*(Complex s, LaurentPoly a) { return a *= s; }

  // Deviation from z <-> 1/z symmetry (resp. antisymmetry), absolute.
  double symmetry_defect() const;
  double antisymmetry_defect() const;

  // Convert a symmetric expression back to a polynomial in x.  Throws
  // std::runtime_error when the symmetry defect exceeds tol_rel * scale.
  Poly to_poly(double tol_rel = 1e-10) const;
  // Exact division of an antisymmetric expression by (z - 1/z); the quotient
  // is symmetric and returned as a polynomial in x.  Same defect policy.
  Poly divide_by_z_minus_zinv(double tol_rel = 1e-10) const;

 private:
  void trim();
  std::map<int, Complex> c_;
};

enum class ChebKind { First, Second };

// T_n or U_n in the monomial basis (exact integer coefficients).
Poly chebyshev_poly(int n, ChebKind kind);

// Coefficients c_k with f = sum c_k T_k (or U_k).
std::vector<Complex> cheb_decompose(const Poly& f, ChebKind kind);
// Inverse of cheb_decompose.
Poly cheb_combine(const std::vector<Complex>& coeffs, ChebKind kind);

struct RootOptions {
  double tol = 1e-12;   // backward-error target, relative to coefficient scale
  int max_iter = 200;
};

struct ComplexRootSet {
  std::vector<Complex> roots;  // sorted by (re, im), with multiplicity
  double tolerance = 0.0;      // residual bound actually achieved
};

// All complex roots of f via Aberth-Ehrlich simultaneous iteration with a
// companion-matrix fallback.  Throws std::invalid_argument for degree < 1.
ComplexRootSet poly_roots(const Poly& f, const RootOptions& opts = {});

// (sigma_0, ..., sigma_m) with sigma_0 = 1.
std::vector<Complex> elem_sym(const std::vector<Complex>& values);

// leading * prod (x - r_j); throws std::invalid_argument when leading == 0.
Poly from_roots(const std::vector<Complex>& roots, Complex leading);

}  // namespace bqsl
