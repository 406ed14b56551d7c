#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>
#include <random>

#include "betheqsl/awop.hpp"

using namespace bqsl;

namespace {

constexpr double kPi = std::numbers::pi;

Poly random_poly(std::mt19937_64& rng, int deg) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> c(deg + 1);
  for (auto& v : c) v = Complex(u(rng), u(rng));
  c.back() += Complex(1.0);
  return Poly(std::move(c));
}

double coeff_dist(const Poly& a, const Poly& b) {
  double d = 0.0;
  for (int k = 0; k <= std::max(a.degree(), b.degree()); ++k)
    d = std::max(d, std::abs(a.coeff(k) - b.coeff(k)));
  return d;
}

double rel_dist(const Poly& a, const Poly& b) {
  double scale = std::max({a.max_abs_coeff(), b.max_abs_coeff(), 1e-30});
  return coeff_dist(a, b) / scale;
}

// random q from (0,1) or unimodular away from low-order roots of unity
QParam random_q(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (u(rng) < 0.5) return QParam::from_q(Complex(0.05 + 0.9 * u(rng)));
  while (true) {
    double phi = 2.0 * kPi * u(rng);
    Complex q = std::polar(1.0, phi);
    if (!near_root_of_unity(q, 16, 1e-3)) return QParam::from_q(q);
  }
}

}  // namespace

TEST_CASE("eta_shift: closed forms and pointwise oracle") {
  QParam q = QParam::from_q(Complex(0.37));
  CHECK(eta_shift(Poly::one(), q, ShiftDirection::Plus).coeff(0) == Complex(1.0));

  LaurentPoly lx = eta_shift(Poly::x(), q, ShiftDirection::Plus);
  CHECK(std::abs(lx.coeff(1) - 0.5 * q.sqrt_q()) < 1e-15);
  CHECK(std::abs(lx.coeff(-1) - 0.5 / q.sqrt_q()) < 1e-15);

  std::mt19937_64 rng(3);
  Poly f = random_poly(rng, 7);
  LaurentPoly lp = eta_shift(f, q, ShiftDirection::Plus);
  for (int s = 0; s < 10; ++s) {
    Complex z = std::polar(1.0, 0.17 + 0.6 * s);
    Complex w = q.sqrt_q() * z;
    Complex expect = f(0.5 * (w + 1.0 / w));
    CHECK(std::abs(lp.eval(z) - expect) < 1e-12);
  }
}

TEST_CASE("aw_D: Chebyshev actions, constants, degree") {
  QParam q = QParam::from_q(Complex(0.5));
  // D_q T_1 = U_0 = 1
  Poly d1 = aw_D(Poly::x(), q);
  CHECK(d1.degree() == 0);
  CHECK(std::abs(d1.coeff(0) - 1.0) < 1e-14);
  // constants vanish
  CHECK(aw_D(Poly::constant(Complex(2.5, -1.0)), q).is_zero());
  // D_q T_3 = gamma_3 U_2 with gamma_3 = (q^{3/2}-q^{-3/2})/(q^{1/2}-q^{-1/2})
  Complex sq = q.sqrt_q();
  Complex gamma3 = (std::pow(sq, 3) - std::pow(sq, -3)) / (sq - 1.0 / sq);
  Poly want = chebyshev_poly(2, ChebKind::Second) * gamma3;  // gamma3*(4x^2-1)
  CHECK(rel_dist(aw_D(chebyshev_poly(3, ChebKind::First), q), want) < 1e-13);

  std::mt19937_64 rng(5);
  for (int t = 0; t < 5; ++t) {
    Poly f = random_poly(rng, 8);
    CHECK(aw_D(f, q).degree() == 7);
    CHECK(aw_A(f, q).degree() == 8);
  }
}

TEST_CASE("aw_A: closed forms and Laurent-average oracle") {
  QParam q = QParam::from_q(Complex(0.42));
  CHECK(std::abs(aw_A(Poly::one(), q).coeff(0) - 1.0) < 1e-14);

  Poly ax = aw_A(Poly::x(), q);
  Complex half_sum = 0.5 * (q.sqrt_q() + 1.0 / q.sqrt_q());
  CHECK(std::abs(ax.coeff(1) - half_sum) < 1e-14);
  CHECK(std::abs(ax.coeff(0)) < 1e-14);

  std::mt19937_64 rng(7);
  Poly f = random_poly(rng, 9);
  Poly af = aw_A(f, q);
  for (int s = 0; s < 10; ++s) {
    Complex z = std::polar(1.0, 0.3 + 0.55 * s);
    Complex x = 0.5 * (z + 1.0 / z);
    Complex zp = q.sqrt_q() * z, zm = z / q.sqrt_q();
    Complex avg = 0.5 * (f(0.5 * (zp + 1.0 / zp)) + f(0.5 * (zm + 1.0 / zm)));
    CHECK(std::abs(af(x) - avg) < 1e-12);
  }
}

TEST_CASE("chebyshev action identities for a batch of n") {
  for (double qv : {0.2, 0.77}) {
    QParam q = QParam::from_q(Complex(qv));
    Complex sq = q.sqrt_q();
    for (int n = 1; n <= 8; ++n) {
      Complex gn = (std::pow(sq, n) - std::pow(sq, -n)) / (sq - 1.0 / sq);
      Complex an = 0.5 * (std::pow(sq, n) + std::pow(sq, -n));
      CHECK(rel_dist(aw_D(chebyshev_poly(n, ChebKind::First), q),
                     chebyshev_poly(n - 1, ChebKind::Second) * gn) < 1e-12);
      CHECK(rel_dist(aw_A(chebyshev_poly(n, ChebKind::First), q),
                     chebyshev_poly(n, ChebKind::First) * an) < 1e-12);
    }
  }
}

TEST_CASE("product rule holds for real and unimodular q") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    QParam q = random_q(rng);
    Poly f = random_poly(rng, 1 + int(rng() % 8));
    Poly g = random_poly(rng, 1 + int(rng() % 8));
    Poly lhs = aw_D(f * g, q);
    Poly rhs = aw_A(f, q) * aw_D(g, q) + aw_A(g, q) * aw_D(f, q);
    CHECK(rel_dist(lhs, rhs) < 1e-10);
  }
}

TEST_CASE("invariance under q -> 1/q and square-root branch") {
  std::mt19937_64 rng(13);
  Poly f = random_poly(rng, 8);
  for (double qv : {0.31, 0.9}) {
    QParam q = QParam::from_q(Complex(qv));
    CHECK(rel_dist(aw_D(f, q), aw_D(f, q.inverse())) < 1e-12);
    CHECK(rel_dist(aw_A(f, q), aw_A(f, q.inverse())) < 1e-12);
    CHECK(rel_dist(aw_D(f, q), aw_D(f, q.other_branch())) < 1e-12);
    CHECK(rel_dist(aw_A(f, q), aw_A(f, q.other_branch())) < 1e-12);
  }
}

TEST_CASE("classical limit: aw_D approximates d/dx as q -> 1") {
  std::mt19937_64 rng(17);
  QParam q = QParam::from_q(Complex(1.0 - 1e-4));
  for (int t = 0; t < 5; ++t) {
    Poly f = random_poly(rng, 2 + int(rng() % 5));
    Poly df = f.derivative();
    CHECK(rel_dist(aw_D(f, q), df) < 1e-3);
  }
}

TEST_CASE("phi basis: closed forms and leading coefficient") {
  QParam q = QParam::from_q(Complex(0.3));
  CHECK(phi_poly(0, Complex(0.4), q).degree() == 0);
  CHECK(phi_poly(0, Complex(0.4), q).coeff(0) == Complex(1.0));

  Complex a(0.25, 0.1);
  Poly p1 = phi_poly(1, a, q);
  CHECK(std::abs(p1.coeff(0) - (Complex(1.0) + a * a)) < 1e-15);
  CHECK(std::abs(p1.coeff(1) + 2.0 * a) < 1e-15);

  // leading coefficient (-2a)^n q^{n(n-1)/2}; n = 3, a = 0.4, q = 0.3
  Poly p3 = phi_poly(3, Complex(0.4), q);
  Complex lead = std::pow(Complex(-0.8), 3) * std::pow(Complex(0.3), 3);
  CHECK(std::abs(p3.leading() - lead) < 1e-14 * std::abs(lead) + 1e-16);
}

TEST_CASE("phi ladder identities (corrected constants)") {
  // The printed displays have typos; the constants below follow from
  // D_q phi_1 = -2a and the expansion of A_q phi_alpha, and are checked here
  // against the exact Laurent-based operators.
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(0.15, 0.85);
  for (int t = 0; t < 8; ++t) {
    QParam q = QParam::from_q(Complex(u(rng)));
    Complex a(u(rng), 0.3 * u(rng));
    Complex qq = q.q();
    for (int n = 1; n <= 10; ++n) {
      Complex qn = std::pow(qq, n);
      Poly lhs = aw_D(phi_poly(n, a, q), q);
      Poly rhs = phi_poly(n - 1, a * q.sqrt_q(), q) * (-2.0 * a * (Complex(1.0) - qn) /
                                                       (Complex(1.0) - qq));
      CHECK(rel_dist(lhs, rhs) < 1e-10);

      Poly lhs2 = aw_A(phi_poly(n, a, q), q) * Complex(2.0);
      Complex qmn = 1.0 / qn;
      Poly rhs2 = phi_poly(n, a * q.sqrt_q(), q) * (Complex(1.0) + qmn) +
                  phi_poly(n - 1, a * q.sqrt_q(), q) *
                      ((Complex(1.0) - qmn) * (Complex(1.0) - a * a * qn * qn / qq));
      CHECK(rel_dist(lhs2, rhs2) < 1e-10);
    }
  }
}

TEST_CASE("phi_alpha evaluator agrees with phi_poly at integer alpha") {
  QParam q = QParam::from_q(Complex(0.45));
  Complex a(0.3, 0.05);
  auto ev = phi_alpha_evaluator(Complex(3.0), a, q);
  Poly p3 = phi_poly(3, a, q);
  for (double x : {-0.7, -0.2, 0.1, 0.6, 0.95}) {
    CHECK(std::abs(ev(Complex(x)) - p3(Complex(x))) < 1e-11);
  }
}

TEST_CASE("expand_in_phi: delta property and reconstruction") {
  QParam q = QParam::from_q(Complex(0.52));
  Complex a(0.4, -0.12);

  auto e2 = expand_in_phi(phi_poly(2, a, q), a, q);
  REQUIRE(e2.coeffs.size() == 3);
  CHECK(std::abs(e2.coeffs[0]) < 1e-12);
  CHECK(std::abs(e2.coeffs[1]) < 1e-12);
  CHECK(std::abs(e2.coeffs[2] - 1.0) < 1e-12);

  auto e0 = expand_in_phi(Poly::one(), a, q);
  REQUIRE(e0.coeffs.size() == 1);
  CHECK(std::abs(e0.coeffs[0] - 1.0) < 1e-14);

  std::mt19937_64 rng(23);
  Poly f = random_poly(rng, 5);
  auto ef = expand_in_phi(f, a, q);
  Poly back;
  for (size_t k = 0; k < ef.coeffs.size(); ++k)
    back += phi_poly(int(k), a, q) * ef.coeffs[k];
  CHECK(rel_dist(back, f) < 1e-11);
  // c_0 = f((a + 1/a)/2)
  CHECK(std::abs(ef.coeffs[0] - f(0.5 * (a + 1.0 / a))) < 1e-10);
}

TEST_CASE("chebyshev inner product values") {
  CHECK(std::abs(inner_product(Poly::one(), Poly::one()) - kPi) < 1e-13);
  Poly t1 = chebyshev_poly(1, ChebKind::First);
  CHECK(std::abs(inner_product(t1, t1) - kPi / 2.0) < 1e-13);
  CHECK(std::abs(inner_product(chebyshev_poly(2, ChebKind::First),
                               chebyshev_poly(3, ChebKind::First))) < 1e-13);
}

TEST_CASE("weighted inner product: reductions") {
  auto chebw = [](double x) { return Complex(1.0 / std::sqrt(1.0 - x * x)); };
  std::mt19937_64 rng(29);
  Poly f = random_poly(rng, 4), g = random_poly(rng, 5);
  Complex a = weighted_inner_product(f, g, chebw);
  Complex b = inner_product(f, g);
  CHECK(std::abs(a - b) < 1e-9 * std::max(1.0, std::abs(b)));

  auto unit = [](double) { return Complex(1.0); };
  CHECK(std::abs(weighted_inner_product(Poly::one(), Poly::one(), unit) - 2.0) < 1e-10);
}

TEST_CASE("integration by parts identity") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.2, 0.8);
  for (int t = 0; t < 6; ++t) {
    QParam q = QParam::from_q(Complex(u(rng)));
    Poly f = random_poly(rng, 1 + int(rng() % 8));
    Poly g = random_poly(rng, 1 + int(rng() % 8));
    IbpSides s = integration_by_parts_sides(f, g, q);
    double scale = std::max({1.0, std::abs(s.lhs), std::abs(s.rhs)});
    CHECK(std::abs(s.lhs - s.rhs) / scale < 1e-10);
  }
}

TEST_CASE("QParam guards") {
  CHECK_THROWS_AS(QParam::from_q(Complex(0.0)), std::invalid_argument);
  CHECK_THROWS_AS(QParam::from_q(Complex(1.0)), std::invalid_argument);
  CHECK_THROWS_AS(QParam::from_q(std::polar(1.0, 2.0 * kPi / 3.0)), std::invalid_argument);
  QParam ok = QParam::from_q(std::polar(1.0, 0.7351));
  CHECK(std::abs(ok.sqrt_q() * ok.sqrt_q() - ok.q()) < 1e-14);
}
