// Askey-Wilson operator calculus on polynomials: the shifts eta_q, the
// divided-difference operator D_q and averaging operator A_q, the phi basis
// (a e^{i theta}; q)_n (a e^{-i theta}; q)_n, and the Chebyshev-weight inner
// product with its integration-by-parts identity.
//
// Conventions: z = e^{i theta}, x = cos(theta) = (z + 1/z)/2, q = e^{2 i eta},
// (1 - x^2)^{1/2} = sin(theta) = (z - 1/z)/(2i).  D_q and A_q act through
// exact Laurent manipulation, so they are exact for every q (including
// unimodular q away from roots of unity).
#pragma once

#include <functional>
#include <optional>

#include "betheqsl/poly.hpp"

namespace bqsl {

// q together with a fixed square root.  Both choices of the root give the
// same D_q and A_q (they swap eta_q and eta_{1/q}); the principal branch is
// stored so results are reproducible.
class QParam {
 public:
  static QParam from_q(Complex q);
  // q = e^{2 i eta}; the square root e^{i eta} keeps the branch coherent.
  static QParam from_eta(Complex eta);

  Complex q() const { return q_; }
  Complex sqrt_q() const { return sqrt_q_; }
  Complex eta() const { return eta_; }

  QParam other_branch() const;  // flips the stored square root
  QParam inverse() const;       // the parameter 1/q

 private:
  QParam(Complex q, Complex sq, Complex eta) : q_(q), sqrt_q_(sq), eta_(eta) {}
  Complex q_, sqrt_q_, eta_;
};

// True when q lies within tol of a root of unity of order <= max_order.
bool near_root_of_unity(Complex q, int max_order, double tol = 1e-6);

enum class ShiftDirection { Plus, Minus };  // z -> q^{1/2} z  /  z -> q^{-1/2} z

// The Laurent expression f((q^{+-1/2} z + q^{-+1/2}/z)/2).
LaurentPoly eta_shift(const Poly& f, const QParam& q, ShiftDirection dir);

// Askey-Wilson divided-difference operator; lowers degree by one.
Poly aw_D(const Poly& f, const QParam& q);
// Averaging operator; preserves degree.
Poly aw_A(const Poly& f, const QParam& q);

// phi_n(x; a) = prod_{k=0}^{n-1} (1 - 2 a q^k x + a^2 q^{2k}), leading
// coefficient (-2a)^n q^{n(n-1)/2}.
Poly phi_poly(int n, Complex a, const QParam& q);

// Generalized phi_alpha as a pointwise evaluator, via the quotient of
// infinite products; requires |q| < 1.
std::function<Complex(Complex)> phi_alpha_evaluator(Complex alpha, Complex a, const QParam& q);

struct PhiExpansion {
  std::vector<Complex> coeffs;          // f = sum coeffs[n] phi_n(x; a)
  std::optional<std::string> warning;   // set when the triangular solve is ill-conditioned
};

// Expansion of f in the basis {phi_n(x; a)}; c_0 = f((a + 1/a)/2).
PhiExpansion expand_in_phi(const Poly& f, Complex a, const QParam& q);

// <f, g> = int_{-1}^{1} f(x) conj(g(x)) (1-x^2)^{-1/2} dx, exact
// Gauss-Chebyshev quadrature.
Complex inner_product(const Poly& f, const Poly& g);

struct QuadratureOptions {
  double rel_tol = 1e-10;
  int max_nodes = 1 << 16;
  int min_nodes = 32;
};

// int_{-1}^{1} f(x) conj(g(x)) w(x) dx with adaptive node doubling; throws
// std::runtime_error (with the last two estimates) on non-convergence.
Complex weighted_inner_product(const Poly& f, const Poly& g,
                               const std::function<Complex(double)>& w,
                               const QuadratureOptions& opts = {});
Complex weighted_inner_product(const std::function<Complex(double)>& f,
                               const std::function<Complex(double)>& g,
                               const std::function<Complex(double)>& w,
                               const QuadratureOptions& opts = {});

// Both sides of the integration-by-parts identity
//   <D_q f, g> = (pi sqrt(q)/(1-q)) [f(x+) conj(g(1)) - f(-x+) conj(g(-1))]
//                - <f, sqrt(1-x^2) D_q(g (1-x^2)^{-1/2})>,
// with x+ = (q^{1/2} + q^{-1/2})/2; for real q in (0,1).
struct IbpSides {
  Complex lhs;
  Complex rhs;
};
IbpSides integration_by_parts_sides(const Poly& f, const Poly& g, const QParam& q);

}  // namespace bqsl
