#include "betheqsl/poly.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace bqsl {

namespace {

bool lex_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

Poly Poly::monomial(int k, Complex c) {
  std::vector<Complex> v(static_cast<size_t>(k) + 1, Complex(0.0));
  v.back() = c;
  return Poly(std::move(v));
}

double Poly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& v : c_) m = std::max(m, std::abs(v));
  return m;
}

Complex Poly::operator()(Complex z) const {
  Complex acc(0.0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<Complex> d(c_.size() - 1);
  for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * double(k);
  return Poly(std::move(d));
}

Poly Poly::conjugate_coeffs() const {
  std::vector<Complex> d(c_.size());
  for (size_t k = 0; k < c_.size(); ++k) d[k] = std::conj(c_[k]);
  return Poly(std::move(d));
}

Poly Poly::compose(const Poly& g) const {
  Poly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc = acc * g;
    acc += Poly::constant(*it);
  }
  return acc;
}

Poly Poly::operator-() const {
  Poly r(*this);
  for (auto& v : r.c_) v = -v;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Complex(0.0));
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Complex(0.0));
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  std::vector<Complex> r(c_.size() + o.c_.size() - 1, Complex(0.0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  c_ = std::move(r);
  trim();
  return *this;
}

Poly& Poly::operator*=(Complex s) {
  for (auto& v : c_) v *= s;
  trim();
  return *this;
}

void Poly::trim() {
  double m = max_abs_coeff();
  if (m == 0.0) {
    c_.clear();
    return;
  }
  const double cut = kTrimRel * m;
  while (!c_.empty() && std::abs(c_.back()) <= cut) c_.pop_back();
}

// ---------------------------------------------------------------------------
// LaurentPoly

LaurentPoly LaurentPoly::from_poly(const Poly& f) {
  // x^m expands into T_k's; T_k = (z^k + z^-k)/2.
  std::vector<Complex> t = cheb_decompose(f, ChebKind::First);
  std::map<int, Complex> m;
  for (int k = 0; k < static_cast<int>(t.size()); ++k) {
    if (t[k] == Complex(0.0)) continue;
    if (k == 0) {
      m[0] += t[0];
    } else {
      m[k] += t[k] * 0.5;
      m[-k] += t[k] * 0.5;
    }
  }
  return LaurentPoly(std::move(m));
}

Complex LaurentPoly::coeff(int k) const {
  auto it = c_.find(k);
  return it == c_.end() ? Complex(0.0) : it->second;
}

double LaurentPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [k, v] : c_) m = std::max(m, std::abs(v));
  return m;
}

Complex LaurentPoly::eval(Complex z) const {
  Complex acc(0.0);
  for (const auto& [k, v] : c_) acc += v * std::pow(z, k);
  return acc;
}

LaurentPoly LaurentPoly::scaled_arg(Complex s) const {
  std::map<int, Complex> m;
  for (const auto& [k, v] : c_) {
    // pow with integer exponent keeps this exact for exact powers of s.
    m[k] = v * std::pow(s, k);
  }
  return LaurentPoly(std::move(m));
}

LaurentPoly LaurentPoly::inverted() const {
  std::map<int, Complex> m;
  for (const auto& [k, v] : c_) m[-k] = v;
  return LaurentPoly(std::move(m));
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [k, v] : o.c_) c_[k] += v;
  trim();
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [k, v] : o.c_) c_[k] -= v;
  trim();
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(Complex s) {
  for (auto& [k, v] : c_) v *= s;
  trim();
  return *this;
}

double LaurentPoly::symmetry_defect() const {
  double d = 0.0;
  for (const auto& [k, v] : c_) d = std::max(d, std::abs(v - coeff(-k)));
  return d;
}

double LaurentPoly::antisymmetry_defect() const {
  double d = 0.0;
  for (const auto& [k, v] : c_) d = std::max(d, std::abs(v + coeff(-k)));
  return d;
}

Poly LaurentPoly::to_poly(double tol_rel) const {
  const double scale = max_abs_coeff();
  if (scale == 0.0) return Poly();
  if (symmetry_defect() > tol_rel * scale)
    throw std::runtime_error("LaurentPoly::to_poly: expression is not symmetric under z <-> 1/z");
  int kmax = 0;
  for (const auto& [k, v] : c_) kmax = std::max(kmax, std::abs(k));
  std::vector<Complex> t(static_cast<size_t>(kmax) + 1, Complex(0.0));
  t[0] = coeff(0);
  for (int k = 1; k <= kmax; ++k) t[k] = coeff(k) + coeff(-k);  // (z^k + z^-k) = 2 T_k
  return cheb_combine(t, ChebKind::First);
}

Poly LaurentPoly::divide_by_z_minus_zinv(double tol_rel) const {
  const double scale = max_abs_coeff();
  if (scale == 0.0) return Poly();
  if (antisymmetry_defect() > tol_rel * scale)
    throw std::runtime_error(
        "LaurentPoly::divide_by_z_minus_zinv: nonzero remainder (expression not antisymmetric)");
  int kmax = 0;
  for (const auto& [k, v] : c_) kmax = std::max(kmax, std::abs(k));
  if (kmax == 0) return Poly();
  // sum b_k (z^k - z^-k) = (z - 1/z) * sum b_k U_{k-1}(x)
  std::vector<Complex> u(static_cast<size_t>(kmax), Complex(0.0));
  for (int k = 1; k <= kmax; ++k) u[k - 1] = (coeff(k) - coeff(-k)) * 0.5;
  return cheb_combine(u, ChebKind::Second);
}

void LaurentPoly::trim() {
  double m = max_abs_coeff();
  if (m == 0.0) {
    c_.clear();
    return;
  }
  const double cut = kTrimRel * m;
  for (auto it = c_.begin(); it != c_.end();) {
    if (std::abs(it->second) <= cut)
      it = c_.erase(it);
    else
      ++it;
  }
}

// ---------------------------------------------------------------------------
// Chebyshev bases

namespace {

// Double-double accumulator; the T_k rows grow like (1+sqrt(2))^k, so the
// elimination below cancels large intermediates and needs the extra bits.
struct DD {
  double hi = 0.0, lo = 0.0;
};

inline DD two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline DD dd_add(DD a, double b) {
  DD s = two_sum(a.hi, b);
  s.lo += a.lo;
  DD t = two_sum(s.hi, s.lo);
  return t;
}

inline DD dd_sub_prod(DD a, double x, double y) {  // a - x*y
  double p = x * y;
  double err = std::fma(x, y, -p);
  DD s = dd_add(a, -p);
  return dd_add(s, -err);
}

inline DD dd_add_prod(DD a, double x, double y) {  // a + x*y
  double p = x * y;
  double err = std::fma(x, y, -p);
  DD s = dd_add(a, p);
  return dd_add(s, err);
}

// Rows 0..n of the T (or U) coefficient table, exact in double.
std::vector<std::vector<double>> cheb_table(int n, ChebKind kind) {
  std::vector<std::vector<double>> t(static_cast<size_t>(n) + 1);
  t[0] = {1.0};
  if (n >= 1) t[1] = (kind == ChebKind::First) ? std::vector<double>{0.0, 1.0}
                                               : std::vector<double>{0.0, 2.0};
  for (int k = 2; k <= n; ++k) {
    std::vector<double> row(static_cast<size_t>(k) + 1, 0.0);
    for (size_t j = 0; j < t[k - 1].size(); ++j) row[j + 1] += 2.0 * t[k - 1][j];
    for (size_t j = 0; j < t[k - 2].size(); ++j) row[j] -= t[k - 2][j];
    t[k] = std::move(row);
  }
  return t;
}

}  // namespace

Poly chebyshev_poly(int n, ChebKind kind) {
  if (n < 0) throw std::invalid_argument("chebyshev_poly: negative degree");
  auto t = cheb_table(n, kind);
  std::vector<Complex> c(t[n].begin(), t[n].end());
  return Poly(std::move(c));
}

std::vector<Complex> cheb_decompose(const Poly& f, ChebKind kind) {
  if (f.is_zero()) return {};
  const int n = f.degree();
  auto table = cheb_table(n, kind);
  std::vector<DD> wr(n + 1), wi(n + 1);
  for (int k = 0; k <= n; ++k) {
    wr[k] = {f.coeff(k).real(), 0.0};
    wi[k] = {f.coeff(k).imag(), 0.0};
  }
  std::vector<Complex> out(static_cast<size_t>(n) + 1, Complex(0.0));
  for (int k = n; k >= 0; --k) {
    const double lead = table[k].back();
    const double cr = (wr[k].hi + wr[k].lo) / lead;
    const double ci = (wi[k].hi + wi[k].lo) / lead;
    out[k] = Complex(cr, ci);
    for (size_t j = 0; j < table[k].size(); ++j) {
      wr[j] = dd_sub_prod(wr[j], cr, table[k][j]);
      wi[j] = dd_sub_prod(wi[j], ci, table[k][j]);
    }
  }
  return out;
}

Poly cheb_combine(const std::vector<Complex>& coeffs, ChebKind kind) {
  if (coeffs.empty()) return Poly();
  const int n = static_cast<int>(coeffs.size()) - 1;
  auto table = cheb_table(n, kind);
  std::vector<DD> ar(n + 1), ai(n + 1);
  for (int k = 0; k <= n; ++k) {
    if (coeffs[k] == Complex(0.0)) continue;
    for (size_t j = 0; j < table[k].size(); ++j) {
      ar[j] = dd_add_prod(ar[j], coeffs[k].real(), table[k][j]);
      ai[j] = dd_add_prod(ai[j], coeffs[k].imag(), table[k][j]);
    }
  }
  std::vector<Complex> acc(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) acc[k] = Complex(ar[k].hi + ar[k].lo, ai[k].hi + ai[k].lo);
  return Poly(std::move(acc));
}

// ---------------------------------------------------------------------------
// Roots

namespace {

// Backward-error style residual scale: sum |a_k| |z|^k.
double eval_scale(const std::vector<Complex>& a, double az) {
  double s = 0.0, p = 1.0;
  for (const auto& v : a) {
    s += std::abs(v) * p;
    p *= az;
  }
  return s;
}

std::vector<Complex> companion_roots(const std::vector<Complex>& monic) {
  const int n = static_cast<int>(monic.size()) - 1;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) m(i, n - 1) = -monic[i];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
  std::vector<Complex> r(n);
  for (int i = 0; i < n; ++i) r[i] = es.eigenvalues()(i);
  return r;
}

}  // namespace

ComplexRootSet poly_roots(const Poly& f, const RootOptions& opts) {
  if (f.degree() < 1) {
    throw std::invalid_argument(f.is_zero() ? "poly_roots: zero polynomial has no roots"
                                            : "poly_roots: constant polynomial has no roots");
  }
  const int n = f.degree();
  std::vector<Complex> a = f.coeffs();
  const Complex lead = a.back();
  std::vector<Complex> monic(a.size());
  for (size_t k = 0; k < a.size(); ++k) monic[k] = a[k] / lead;

  // Cauchy-style inclusion radius.
  double radius = 0.0;
  for (int k = 0; k < n; ++k) radius = std::max(radius, std::abs(monic[k]));
  radius = 1.0 + radius;

  std::vector<Complex> z(n);
  for (int i = 0; i < n; ++i) {
    double ang = 2.0 * std::numbers::pi * i / n + 0.4;
    z[i] = 0.5 * radius * Complex(std::cos(ang), std::sin(ang));
  }

  auto eval_pd = [&](Complex x, Complex& p, Complex& dp) {
    p = Complex(0.0);
    dp = Complex(0.0);
    for (int k = n; k >= 0; --k) {
      dp = dp * x + p;
      p = p * x + monic[k];
    }
  };

  auto aberth = [&](std::vector<Complex>& zs, int max_iter) {
    std::vector<bool> done(n, false);
    for (int iter = 0; iter < max_iter; ++iter) {
      bool all_ok = true;
      for (int i = 0; i < n; ++i) {
        if (done[i]) continue;
        Complex p, dp;
        eval_pd(zs[i], p, dp);
        const double scale = std::max(1.0, eval_scale(monic, std::abs(zs[i])));
        if (std::abs(p) <= opts.tol * scale) {
          done[i] = true;
          continue;
        }
        all_ok = false;
        Complex w = (dp == Complex(0.0)) ? Complex(0.0) : p / dp;
        Complex sum(0.0);
        for (int j = 0; j < n; ++j)
          if (j != i) {
            Complex d = zs[i] - zs[j];
            if (std::abs(d) < 1e-300) d = Complex(1e-300);
            sum += Complex(1.0) / d;
          }
        Complex denom = Complex(1.0) - w * sum;
        Complex step = (std::abs(denom) < 1e-300) ? w : w / denom;
        if (dp == Complex(0.0)) step = Complex(0.05) * radius;  // kick off a critical point
        zs[i] -= step;
      }
      if (all_ok) return true;
    }
    return false;
  };

  double monic_scale = 1.0;
  for (const auto& v : monic) monic_scale = std::max(monic_scale, std::abs(v));
  auto worst_residual = [&](const std::vector<Complex>& zs) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      Complex p, dp;
      eval_pd(zs[i], p, dp);
      worst = std::max(worst, std::abs(p) / monic_scale);
    }
    return worst;
  };

  bool converged = aberth(z, opts.max_iter);
  double worst = worst_residual(z);
  if (!converged && worst > 10.0 * opts.tol) {
    // Companion-matrix fallback, polished by a short Aberth pass.
    std::vector<Complex> zc = companion_roots(monic);
    aberth(zc, 20);
    if (worst_residual(zc) < worst) {
      z = std::move(zc);
      worst = worst_residual(z);
    }
  }
  if (worst > 1e-6) {
    throw std::runtime_error("poly_roots: no convergence after max iterations (best residual " +
                             std::to_string(worst) + ")");
  }

  std::sort(z.begin(), z.end(), lex_less);
  ComplexRootSet out;
  out.roots = std::move(z);
  out.tolerance = worst;
  return out;
}

std::vector<Complex> elem_sym(const std::vector<Complex>& values) {
  std::vector<Complex> sigma(values.size() + 1, Complex(0.0));
  sigma[0] = Complex(1.0);
  size_t m = 0;
  for (const auto& v : values) {
    ++m;
    for (size_t k = m; k >= 1; --k) sigma[k] += v * sigma[k - 1];
  }
  return sigma;
}

Poly from_roots(const std::vector<Complex>& roots, Complex leading) {
  if (leading == Complex(0.0)) throw std::invalid_argument("from_roots: leading coefficient is zero");
  Poly p = Poly::constant(leading);
  for (const auto& r : roots) p *= Poly({-r, Complex(1.0)});
  return p;
}

}  // namespace bqsl
