#include "betheqsl/awop.hpp"

#include <cmath>
#include <numbers>

namespace bqsl {

namespace {

constexpr double kPi = std::numbers::pi;

// z on the unit circle for x in (-1,1), upper half: z = x + i sqrt(1-x^2).
Complex unit_z(double x) { return Complex(x, std::sqrt(std::max(0.0, 1.0 - x * x))); }

}  // namespace

QParam QParam::from_q(Complex q) {
  if (q == Complex(0.0)) throw std::invalid_argument("QParam: q must be nonzero");
  if (std::abs(std::abs(q) - 1.0) < 1e-9 && near_root_of_unity(q, 64, 1e-9))
    throw std::invalid_argument("QParam: q is (numerically) a root of unity of order <= 64");
  Complex sq = std::sqrt(q);
  if (sq.real() == 0.0 && sq.imag() < 0.0) sq = -sq;  // pin the boundary of the branch
  Complex eta = Complex(0.0, -0.5) * std::log(q);
  return QParam(q, sq, eta);
}

QParam QParam::from_eta(Complex eta) {
  Complex q = std::exp(Complex(0.0, 2.0) * eta);
  if (std::abs(std::abs(q) - 1.0) < 1e-9 && near_root_of_unity(q, 64, 1e-9))
    throw std::invalid_argument("QParam: e^{2 i eta} is (numerically) a root of unity of order <= 64");
  return QParam(q, std::exp(Complex(0.0, 1.0) * eta), eta);
}

QParam QParam::other_branch() const { return QParam(q_, -sqrt_q_, eta_); }

QParam QParam::inverse() const {
  return QParam(Complex(1.0) / q_, Complex(1.0) / sqrt_q_, -eta_);
}

bool near_root_of_unity(Complex q, int max_order, double tol) {
  if (std::abs(std::abs(q) - 1.0) > tol) return false;
  Complex p = q;
  for (int m = 1; m <= max_order; ++m) {
    if (std::abs(p - Complex(1.0)) < tol * m) return true;
    p *= q;
  }
  return false;
}

LaurentPoly eta_shift(const Poly& f, const QParam& q, ShiftDirection dir) {
  const Complex s = (dir == ShiftDirection::Plus) ? q.sqrt_q() : Complex(1.0) / q.sqrt_q();
  return LaurentPoly::from_poly(f).scaled_arg(s);
}

Poly aw_D(const Poly& f, const QParam& q) {
  if (f.degree() < 1) return Poly();
  LaurentPoly diff =
      eta_shift(f, q, ShiftDirection::Plus) - eta_shift(f, q, ShiftDirection::Minus);
  // D_q f = 2/(q^{1/2} - q^{-1/2}) * (eta_q f - eta_{1/q} f)/(z - 1/z)
  const Complex denom = q.sqrt_q() - Complex(1.0) / q.sqrt_q();
  if (denom == Complex(0.0)) throw std::invalid_argument("aw_D: q = 1 is singular");
  return diff.divide_by_z_minus_zinv() * (Complex(2.0) / denom);
}

Poly aw_A(const Poly& f, const QParam& q) {
  if (f.is_zero()) return Poly();
  LaurentPoly avg =
      (eta_shift(f, q, ShiftDirection::Plus) + eta_shift(f, q, ShiftDirection::Minus)) *
      Complex(0.5);
  return avg.to_poly();
}

Poly phi_poly(int n, Complex a, const QParam& q) {
  if (n < 0) throw std::invalid_argument("phi_poly: n must be >= 0");
  Poly out = Poly::one();
  Complex aqk = a;
  for (int k = 0; k < n; ++k) {
    out *= Poly({Complex(1.0) + aqk * aqk, -2.0 * aqk});
    aqk *= q.q();
  }
  return out;
}

std::function<Complex(Complex)> phi_alpha_evaluator(Complex alpha, Complex a, const QParam& q) {
  if (std::abs(q.q()) >= 1.0)
    throw std::invalid_argument("phi_alpha_evaluator: requires |q| < 1");
  const Complex qq = q.q();
  const Complex qa = std::pow(qq, alpha);
  return [a, qq, qa](Complex x) {
    // z with |z| >= 1 (either branch gives the same symmetric value)
    Complex z = x + std::sqrt(x * x - Complex(1.0));
    if (std::abs(z) < 1.0) z = Complex(1.0) / z;
    auto poch_ratio = [&](Complex c) {
      // (c; q)_alpha = (c; q)_inf / (c q^alpha; q)_inf
      Complex num(1.0), den(1.0), t1 = c, t2 = c * qa;
      for (int k = 0; k < 10000 && (std::abs(t1) > 1e-17 || std::abs(t2) > 1e-17); ++k) {
        num *= Complex(1.0) - t1;
        den *= Complex(1.0) - t2;
        t1 *= qq;
        t2 *= qq;
      }
      return num / den;
    };
    return poch_ratio(a * z) * poch_ratio(a / z);
  };
}

PhiExpansion expand_in_phi(const Poly& f, Complex a, const QParam& q) {
  if (a == Complex(0.0)) throw std::invalid_argument("expand_in_phi: a must be nonzero");
  PhiExpansion out;
  if (f.is_zero()) return out;
  const int n = f.degree();
  std::vector<Poly> basis(n + 1);
  for (int k = 0; k <= n; ++k) basis[k] = phi_poly(k, a, q);
  Poly work = f;
  out.coeffs.assign(n + 1, Complex(0.0));
  double growth = f.max_abs_coeff();
  for (int k = n; k >= 0; --k) {
    Complex ck = work.coeff(k) / basis[k].leading();
    out.coeffs[k] = ck;
    work -= basis[k] * ck;
    growth = std::max(growth, work.max_abs_coeff());
  }
  // crude condition estimate: intermediate growth and leading-coefficient spread
  double lead_min = 1e300, lead_max = 0.0;
  for (int k = 0; k <= n; ++k) {
    lead_min = std::min(lead_min, std::abs(basis[k].leading()));
    lead_max = std::max(lead_max, std::abs(basis[k].leading()));
  }
  const double cond = (lead_max / lead_min) * (growth / std::max(1e-300, f.max_abs_coeff()));
  if (cond > 1e12)
    out.warning = "expand_in_phi: triangular solve ill-conditioned (estimate " +
                  std::to_string(cond) + ")";
  return out;
}

Complex inner_product(const Poly& f, const Poly& g) {
  const int df = std::max(f.degree(), 0), dg = std::max(g.degree(), 0);
  const int m = (df + dg) / 2 + 1;
  const Poly gc = g.conjugate_coeffs();
  Complex acc(0.0);
  for (int j = 1; j <= m; ++j) {
    const double x = std::cos((2.0 * j - 1.0) * kPi / (2.0 * m));
    acc += f(Complex(x)) * gc(Complex(x));
  }
  return acc * (kPi / m);
}

namespace {

Complex cheb_quad(const std::function<Complex(double)>& fw_integrand, int m) {
  // Gauss-Chebyshev nodes; fw_integrand is f*conj(g)*w, so weight out the
  // implicit (1-x^2)^{-1/2} with sin(theta).
  Complex acc(0.0);
  for (int j = 1; j <= m; ++j) {
    const double th = (2.0 * j - 1.0) * kPi / (2.0 * m);
    acc += fw_integrand(std::cos(th)) * std::sin(th);
  }
  return acc * (kPi / m);
}

Complex adaptive_quad(const std::function<Complex(double)>& fw_integrand,
                      const QuadratureOptions& opts) {
  int m = opts.min_nodes;
  Complex prev = cheb_quad(fw_integrand, m);
  while (m < opts.max_nodes) {
    m *= 2;
    Complex cur = cheb_quad(fw_integrand, m);
    if (std::abs(cur - prev) <= opts.rel_tol * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  throw std::runtime_error(
      "weighted_inner_product: quadrature did not converge (last estimates " +
      std::to_string(std::abs(prev)) + " and a doubling apart)");
}

}  // namespace

Complex weighted_inner_product(const Poly& f, const Poly& g,
                               const std::function<Complex(double)>& w,
                               const QuadratureOptions& opts) {
  const Poly gc = g.conjugate_coeffs();
  return adaptive_quad([&](double x) { return f(Complex(x)) * gc(Complex(x)) * w(x); }, opts);
}

Complex weighted_inner_product(const std::function<Complex(double)>& f,
                               const std::function<Complex(double)>& g,
                               const std::function<Complex(double)>& w,
                               const QuadratureOptions& opts) {
  return adaptive_quad([&](double x) { return f(x) * std::conj(g(x)) * w(x); }, opts);
}

IbpSides integration_by_parts_sides(const Poly& f, const Poly& g, const QParam& q) {
  if (q.q().imag() != 0.0 || q.q().real() <= 0.0 || q.q().real() >= 1.0)
    throw std::invalid_argument("integration_by_parts_sides: requires real q in (0,1)");
  const double sq = q.sqrt_q().real();
  const double xp = 0.5 * (sq + 1.0 / sq);

  IbpSides out;
  out.lhs = inner_product(aw_D(f, q), g);

  const Poly gc = g.conjugate_coeffs();
  const Complex boundary = (kPi * sq / (1.0 - q.q().real())) *
                           (f(Complex(xp)) * gc(Complex(1.0)) -
                            f(Complex(-xp)) * gc(Complex(-1.0)));

  // h(x) = sqrt(1-x^2) D_q(g(x) (1-x^2)^{-1/2}): rational, poles at +-x+
  // (outside [-1,1]); evaluated pointwise through z = e^{i theta}.
  auto h = [&](double x) {
    const Complex z = unit_z(x);
    const Complex zp = sq * z, zm = z / sq;
    auto gbreve = [&](Complex zz) { return g(0.5 * (zz + 1.0 / zz)); };
    const Complex term1 = gbreve(zp) / (zp - 1.0 / zp);
    const Complex term2 = gbreve(zm) / (zm - 1.0 / zm);
    return (2.0 / (sq - 1.0 / sq)) * (term1 - term2);
  };
  const Complex tail = adaptive_quad(
      [&](double x) {
        return f(Complex(x)) * std::conj(h(x)) / std::sqrt(std::max(1e-300, 1.0 - x * x));
      },
      QuadratureOptions{});
  out.rhs = boundary - tail;
  return out;
}

}  // namespace bqsl
