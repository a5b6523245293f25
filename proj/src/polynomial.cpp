#include "toricmono/polynomial.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace toricmono {

Poly Poly::from_roots(std::span<const cplx> roots) {
  Poly p({cplx(1.0)});
  for (cplx r : roots) p = p * Poly({-r, cplx(1.0)});
  return p;
}

cplx Poly::eval(cplx t) const {
  cplx v = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * t + *it;
  return v;
}

Poly Poly::derivative() const {
  Poly d;
  if (coeffs.size() <= 1) return Poly({cplx(0.0)});
  d.coeffs.resize(coeffs.size() - 1);
  for (std::size_t j = 1; j < coeffs.size(); ++j) {
    d.coeffs[j - 1] = static_cast<double>(j) * coeffs[j];
  }
  return d;
}

double Poly::max_abs_coeff() const {
  double m = 0;
  for (auto& c : coeffs) m = std::max(m, std::abs(c));
  return m;
}

void Poly::trim(double eps) {
  double scale = max_abs_coeff();
  double cut = eps * scale;
  while (coeffs.size() > 1 && std::abs(coeffs.back()) <= cut) coeffs.pop_back();
  if (coeffs.empty()) coeffs.push_back(cplx(0.0));
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.coeffs.empty() || b.coeffs.empty()) return Poly({cplx(0.0)});
  Poly p;
  p.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, cplx(0.0));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) {
      p.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    }
  }
  return p;
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly p;
  p.coeffs.assign(std::max(a.coeffs.size(), b.coeffs.size()), cplx(0.0));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) p.coeffs[i] += a.coeffs[i];
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) p.coeffs[i] += b.coeffs[i];
  return p;
}

Poly operator-(const Poly& a, const Poly& b) {
  Poly nb = b;
  nb *= cplx(-1.0);
  return a + nb;
}

Poly& Poly::operator*=(cplx s) {
  for (auto& c : coeffs) c *= s;
  return *this;
}

PolyRoots all_roots(const Poly& p, double eps) {
  PolyRoots out;
  double scale = p.max_abs_coeff();
  if (scale == 0.0) return out;
  double cut = eps * scale;

  std::vector<cplx> c = p.coeffs;
  int lo = 0;
  while (lo < static_cast<int>(c.size()) && std::abs(c[lo]) <= cut) ++lo;
  int hi = static_cast<int>(c.size()) - 1;
  while (hi >= lo && std::abs(c[hi]) <= cut) --hi;
  out.valuation = lo;
  int deg = hi - lo;
  if (deg <= 0) return out;

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -c[lo + i] / c[hi];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);

  Poly stripped;
  stripped.coeffs.assign(c.begin() + lo, c.begin() + hi + 1);
  Poly d = stripped.derivative();
  double stripped_scale = stripped.max_abs_coeff();
  for (int i = 0; i < deg; ++i) {
    cplx r = solver.eigenvalues()(i);
    for (int step = 0; step < 2; ++step) {
      cplx dv = d.eval(r);
      if (std::abs(dv) < 1e-300) break;
      cplx corr = stripped.eval(r) / dv;
      if (!std::isfinite(corr.real()) || !std::isfinite(corr.imag())) break;
      r -= corr;
    }
    out.roots.push_back(r);
    out.max_residual = std::max(out.max_residual, std::abs(stripped.eval(r)) / stripped_scale);
  }
  // Deterministic order: by argument, then modulus.
  std::sort(out.roots.begin(), out.roots.end(), [](cplx a, cplx b) {
    double aa = std::arg(a), ab = std::arg(b);
    if (std::abs(aa - ab) > 1e-12) return aa < ab;
    return std::abs(a) < std::abs(b);
  });
  return out;
}

int BiPoly::t_degree() const {
  int d = -1;
  for (auto& p : by_s_power) d = std::max(d, p.degree());
  return d;
}

cplx BiPoly::eval(cplx t, cplx s) const {
  cplx v = 0;
  for (auto it = by_s_power.rbegin(); it != by_s_power.rend(); ++it) v = v * s + it->eval(t);
  return v;
}

Poly BiPoly::eval_t(cplx t) const {
  Poly p;
  p.coeffs.reserve(by_s_power.size());
  for (auto& piece : by_s_power) p.coeffs.push_back(piece.eval(t));
  return p;
}

void BiPoly::trim() {
  double scale = 0;
  for (auto& p : by_s_power) scale = std::max(scale, p.max_abs_coeff());
  while (by_s_power.size() > 1 && by_s_power.back().max_abs_coeff() <= 1e-14 * scale) {
    by_s_power.pop_back();
  }
}

BiPoly outer_product(const Poly& a, const Poly& b) {
  BiPoly f;
  f.by_s_power.reserve(b.coeffs.size());
  for (cplx bs : b.coeffs) {
    Poly piece = a;
    piece *= bs;
    f.by_s_power.push_back(std::move(piece));
  }
  return f;
}

BiPoly operator-(const BiPoly& a, const BiPoly& b) {
  BiPoly f;
  std::size_t n = std::max(a.by_s_power.size(), b.by_s_power.size());
  f.by_s_power.assign(n, Poly({cplx(0.0)}));
  for (std::size_t i = 0; i < a.by_s_power.size(); ++i) f.by_s_power[i] = f.by_s_power[i] + a.by_s_power[i];
  for (std::size_t i = 0; i < b.by_s_power.size(); ++i) f.by_s_power[i] = f.by_s_power[i] - b.by_s_power[i];
  return f;
}

BiPoly divide_by_t_minus_s(const BiPoly& f) {
  // View f as a polynomial in t with coefficients in C[s] and run synthetic
  // division by (t - s): q_{i-1} = f_i + s * q_i.
  int dt = f.t_degree();
  if (dt < 1) throw std::invalid_argument("divide_by_t_minus_s: t-degree too small");
  auto t_coeff = [&](int i) {  // f's coefficient of t^i as a Poly in s
    Poly p;
    p.coeffs.assign(f.by_s_power.size(), cplx(0.0));
    for (std::size_t m = 0; m < f.by_s_power.size(); ++m) {
      const auto& piece = f.by_s_power[m].coeffs;
      p.coeffs[m] = (i < static_cast<int>(piece.size())) ? piece[i] : cplx(0.0);
    }
    return p;
  };
  auto shift_s = [](const Poly& p) {  // multiply by s
    Poly q;
    q.coeffs.assign(p.coeffs.size() + 1, cplx(0.0));
    for (std::size_t i = 0; i < p.coeffs.size(); ++i) q.coeffs[i + 1] = p.coeffs[i];
    return q;
  };

  std::vector<Poly> quot(dt);  // quot[i]: coefficient of t^i, a Poly in s
  Poly carry = t_coeff(dt);
  for (int i = dt - 1; i >= 0; --i) {
    quot[i] = carry;
    carry = t_coeff(i) + shift_s(carry);
  }
  // carry is now the remainder, a polynomial in s; it must vanish.
  double scale = 0;
  for (auto& p : f.by_s_power) scale = std::max(scale, p.max_abs_coeff());
  if (carry.max_abs_coeff() > 1e-8 * std::max(scale, 1.0)) {
    throw std::invalid_argument("divide_by_t_minus_s: nonzero remainder");
  }

  // Transpose back to s-major layout.
  BiPoly g;
  int ds = 0;
  for (auto& p : quot) ds = std::max(ds, p.degree());
  g.by_s_power.assign(ds + 1, Poly());
  for (int m = 0; m <= ds; ++m) {
    g.by_s_power[m].coeffs.assign(dt, cplx(0.0));
    for (int i = 0; i < dt; ++i) {
      const auto& cs = quot[i].coeffs;
      g.by_s_power[m].coeffs[i] = (m < static_cast<int>(cs.size())) ? cs[m] : cplx(0.0);
    }
  }
  g.trim();
  return g;
}

cplx determinant(std::vector<std::vector<cplx>> m) {
  std::size_t n = m.size();
  cplx det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    }
    if (std::abs(m[pivot][col]) == 0.0) return 0.0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      cplx factor = m[r][col] / m[col][col];
      for (std::size_t cidx = col; cidx < n; ++cidx) m[r][cidx] -= factor * m[col][cidx];
    }
  }
  return det;
}

namespace {

using lcplx = std::complex<long double>;

lcplx determinant_l(std::vector<std::vector<lcplx>>& m) {
  std::size_t n = m.size();
  lcplx det = 1.0L;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    }
    if (std::abs(m[pivot][col]) == 0.0L) return 0.0L;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      lcplx factor = m[r][col] / m[col][col];
      for (std::size_t cidx = col; cidx < n; ++cidx) m[r][cidx] -= factor * m[col][cidx];
    }
  }
  return det;
}

}  // namespace

Poly resultant_in_s(const BiPoly& f, const BiPoly& g, double sample_radius) {
  int mf = f.s_degree();
  int mg = g.s_degree();
  if (mf < 1 || mg < 1) throw std::invalid_argument("resultant_in_s: constant input");
  int bound = f.t_degree() * mg + g.t_degree() * mf;
  int samples = bound + 1;

  // Extended precision throughout: the interpolated trailing coefficients
  // must stay below the trim threshold or small-modulus roots are lost
  // behind the valuation of the resultant.
  auto eval_l = [](const Poly& p, lcplx t) {
    lcplx v = 0.0L;
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) {
      v = v * t + lcplx(it->real(), it->imag());
    }
    return v;
  };

  const long double pi_l = 3.14159265358979323846264338327950288L;
  std::vector<lcplx> values(samples);
  for (int u = 0; u < samples; ++u) {
    long double angle = 2.0L * pi_l * u / samples;
    lcplx t = static_cast<long double>(sample_radius) * lcplx(std::cos(angle), std::sin(angle));
    int n = mf + mg;
    std::vector<std::vector<lcplx>> syl(n, std::vector<lcplx>(n, lcplx(0.0L)));
    std::vector<lcplx> fs(mf + 1), gs(mg + 1);
    for (int j = 0; j <= mf; ++j) fs[j] = eval_l(f.by_s_power[j], t);
    for (int j = 0; j <= mg; ++j) gs[j] = eval_l(g.by_s_power[j], t);
    for (int r = 0; r < mg; ++r) {
      for (int j = 0; j <= mf; ++j) syl[r][r + j] = fs[mf - j];
    }
    for (int r = 0; r < mf; ++r) {
      for (int j = 0; j <= mg; ++j) syl[mg + r][r + j] = gs[mg - j];
    }
    values[u] = determinant_l(syl);
  }

  Poly res;
  res.coeffs.assign(samples, cplx(0.0));
  long double rk = 1.0L;
  for (int k = 0; k < samples; ++k) {
    lcplx acc = 0.0L;
    for (int u = 0; u < samples; ++u) {
      long double angle = -2.0L * pi_l * k * u / samples;
      acc += values[u] * lcplx(std::cos(angle), std::sin(angle));
    }
    acc /= static_cast<long double>(samples) * rk;
    res.coeffs[k] = cplx(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
    rk *= static_cast<long double>(sample_radius);
  }
  res.trim(1e-11);
  return res;
}

}  // namespace toricmono
