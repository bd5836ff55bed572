#include "hitchinlab/bessel.hpp"

#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

#include "hitchinlab/core.hpp"

namespace hitchinlab {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr double debye_order = 50.0;
constexpr double series_limit = 1000.0;
constexpr int debye_terms = 11;

constexpr std::array<double, 26> rgamma_coeffs = {
    1.0,
    0.5772156649015329,
    -0.6558780715202538,
    -0.0420026350340952,
    0.1665386113822915,
    -0.0421977345555443,
    -0.0096219715278770,
    0.0072189432466630,
    -0.0011651675918591,
    -0.0002152416741149,
    0.0001280502823882,
    -0.0000201348547807,
    -0.0000012504934821,
    0.0000011330272320,
    -0.0000002056338417,
    0.0000000061160950,
    0.0000000050020075,
    -0.0000000011812746,
    0.0000000001043427,
    0.0000000000077823,
    -0.0000000000036968,
    0.0000000000005100,
    -0.0000000000000206,
    -0.0000000000000054,
    0.0000000000000014,
    0.0000000000000001,
};

struct TemmeGammas {
  double gam1, gam2, gampl, gammi;
};

TemmeGammas temme_gammas(double mu) {
  double even = 0.0, odd = 0.0, m2 = mu * mu, pw = 1.0;
  for (size_t k = 0; k < rgamma_coeffs.size(); k += 2) {
    odd += rgamma_coeffs[k] * pw;
    if (k + 1 < rgamma_coeffs.size()) even += rgamma_coeffs[k + 1] * pw;
    pw *= m2;
  }
  TemmeGammas g;
  g.gam1 = -even;
  g.gam2 = odd;
  g.gampl = odd + mu * even;
  g.gammi = odd - mu * even;
  return g;
}

using Poly = std::vector<double>;

const std::vector<Poly>& debye_polys() {
  static const std::vector<Poly> polys = [] {
    std::vector<Poly> u{{1.0}};
    for (int k = 0; k + 1 < debye_terms; ++k) {
      const Poly& uk = u.back();
      Poly next(uk.size() + 3, 0.0);
      for (size_t i = 1; i < uk.size(); ++i) {
        double d = i * uk[i];
        next[i + 1] += 0.5 * d;
        next[i + 3] -= 0.5 * d;
      }
      for (size_t i = 0; i < uk.size(); ++i) {
        next[i + 1] += uk[i] / (8.0 * (i + 1));
        next[i + 3] -= 5.0 * uk[i] / (8.0 * (i + 3));
      }
      u.push_back(next);
    }
    return u;
  }();
  return polys;
}

double eval_poly(const Poly& c, double p) {
  double s = 0.0;
  for (size_t i = c.size(); i-- > 0;) s = s * p + c[i];
  return s;
}

struct DebyeParts {
  double eta_term, log_prefactor, sum_i, sum_k;
};

DebyeParts debye(double nu, double x) {
  double z = x / nu;
  double s = std::sqrt(1.0 + z * z);
  double p = 1.0 / s;
  DebyeParts d;
  d.eta_term = nu * (s + std::log(z / (1.0 + s)));
  d.log_prefactor = -0.5 * std::log(s);
  d.sum_i = 0.0;
  d.sum_k = 0.0;
  double pw = 1.0, sg = 1.0;
  for (const Poly& u : debye_polys()) {
    double term = eval_poly(u, p) / pw;
    d.sum_i += term;
    d.sum_k += sg * term;
    pw *= nu;
    sg = -sg;
  }
  return d;
}

double log_i_series(double nu, double x) {
  double hx = 0.5 * x, q = hx * hx, lhx = std::log(hx);
  double kstar = std::floor(0.5 * (std::sqrt(nu * nu + x * x) - nu));
  auto log_term = [&](double k) { return (2.0 * k + nu) * lhx - std::lgamma(k + 1.0) - std::lgamma(k + nu + 1.0); };
  double lmax = log_term(kstar);
  double sum = 1.0, t = 1.0;
  for (double k = kstar; k < kstar + 100000; k += 1.0) {
    t *= q / ((k + 1.0) * (k + nu + 1.0));
    sum += t;
    if (t < eps * 0.1 * sum) break;
  }
  t = 1.0;
  for (double k = kstar; k >= 1.0; k -= 1.0) {
    t *= k * (k + nu) / q;
    sum += t;
    if (t < eps * 0.1 * sum) break;
  }
  return lmax + std::log(sum);
}

double log_i_hankel(double nu, double x) {
  double mu = 4.0 * nu * nu, sum = 1.0, term = 1.0, prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200; ++k) {
    double odd = 2.0 * k - 1.0;
    term *= -(mu - odd * odd) / (8.0 * k * x);
    if (std::abs(term) > prev) break;
    sum += term;
    prev = std::abs(term);
    if (prev < eps * 0.1 * std::abs(sum)) break;
  }
  return x - 0.5 * std::log(2.0 * pi * x) + std::log(sum);
}

double log_k_small_order(double nu, double x) {
  int nl = static_cast<int>(nu + 0.5);
  double mu = nu - nl;
  double mu2 = mu * mu;
  double rkmu, rk1, log_scale = 0.0;
  if (x <= 2.0) {
    double x2 = 0.5 * x;
    double pimu = pi * mu;
    double fact = std::abs(pimu) < eps ? 1.0 : pimu / std::sin(pimu);
    double d = -std::log(x2);
    double e = mu * d;
    double fact2 = std::abs(e) < eps ? 1.0 : std::sinh(e) / e;
    TemmeGammas g = temme_gammas(mu);
    double ff = fact * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * d);
    double sum = ff;
    e = std::exp(e);
    double p = 0.5 * e / g.gampl;
    double q = 0.5 / (e * g.gammi);
    double c = 1.0;
    d = x2 * x2;
    double sum1 = p;
    for (int i = 1; i < 10000; ++i) {
      ff = (i * ff + p + q) / (i * static_cast<double>(i) - mu2);
      c *= d / i;
      p /= (i - mu);
      q /= (i + mu);
      double del = c * ff;
      sum += del;
      sum1 += c * (p - i * ff);
      if (std::abs(del) < std::abs(sum) * eps) break;
    }
    rkmu = sum;
    rk1 = sum1 * 2.0 / x;
  } else {
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    double a1 = 0.25 - mu2;
    double q = a1, c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 1; i < 100000; ++i) {
      a -= 2 * i;
      c = -a * c / (i + 1.0);
      double qnew = (q1 - b * q2) / a;
      q1 = q2;
      q2 = qnew;
      q += c * qnew;
      b += 2.0;
      d = 1.0 / (b + a * d);
      delh = (b * d - 1.0) * delh;
      h += delh;
      double dels = q * delh;
      s += dels;
      if (std::abs(dels / s) < eps) break;
    }
    h = a1 * h;
    rkmu = std::sqrt(pi / (2.0 * x)) / s;
    rk1 = rkmu * (mu + x + 0.5 - h) / x;
    log_scale = -x;
  }
  if (nl == 0) return std::log(rkmu) + log_scale;
  double xi2 = 2.0 / x;
  for (int i = 1; i < nl; ++i) {
    double next = (mu + i) * xi2 * rk1 + rkmu;
    rkmu = rk1;
    rk1 = next;
    if (rk1 > 1e250) {
      rk1 *= 1e-250;
      rkmu *= 1e-250;
      log_scale += 250.0 * std::log(10.0);
    }
  }
  return std::log(rk1) + log_scale;
}

void require_args(double nu, double x) {
  if (!(nu >= 0.0) || !(x > 0.0) || !std::isfinite(nu) || !std::isfinite(x))
    throw Error(ErrorKind::BadDomain, "bessel needs nu >= 0 and x > 0");
}

double checked_exp(double l) {
  if (l > std::log(std::numeric_limits<double>::max())) throw Error(ErrorKind::Overflow, "use the scaled or log form");
  return std::exp(l);
}

ScaledValue to_pair(double l) {
  ScaledValue v;
  double e2 = l / std::log(2.0);
  v.exponent = static_cast<long>(std::floor(e2));
  v.mantissa = std::exp((e2 - v.exponent) * std::log(2.0));
  return v;
}

}  // namespace

double ScaledValue::log() const { return std::log(mantissa) + exponent * std::log(2.0); }

double debye_polynomial(int k, double p) {
  if (k < 0 || k >= debye_terms) throw Error(ErrorKind::BadDomain, "debye order out of range");
  return eval_poly(debye_polys()[k], p);
}

double log_bessel_I(double nu, double x) {
  require_args(nu, x);
  if (nu >= debye_order) {
    DebyeParts d = debye(nu, x);
    return d.eta_term - 0.5 * std::log(2.0 * pi * nu) + d.log_prefactor + std::log(d.sum_i);
  }
  if (x <= series_limit) return log_i_series(nu, x);
  return log_i_hankel(nu, x);
}

double log_bessel_K(double nu, double x) {
  require_args(nu, x);
  if (nu >= debye_order) {
    DebyeParts d = debye(nu, x);
    return -d.eta_term + 0.5 * std::log(pi / (2.0 * nu)) + d.log_prefactor + std::log(d.sum_k);
  }
  return log_k_small_order(nu, x);
}

double bessel_I(double nu, double x) { return checked_exp(log_bessel_I(nu, x)); }
double bessel_K(double nu, double x) { return checked_exp(log_bessel_K(nu, x)); }
double bessel_I_scaled(double nu, double x) { return checked_exp(log_bessel_I(nu, x) - x); }
double bessel_K_scaled(double nu, double x) { return checked_exp(log_bessel_K(nu, x) + x); }
ScaledValue bessel_I_pair(double nu, double x) { return to_pair(log_bessel_I(nu, x)); }
ScaledValue bessel_K_pair(double nu, double x) { return to_pair(log_bessel_K(nu, x)); }

double bessel_K_quadrature(double nu, double x) {
  require_args(nu, x);
  auto f = [nu, x](double t) {
    double c = std::cosh(t);
    return 0.5 * (std::exp(-x * (c - 1.0) + nu * t) + std::exp(-x * (c - 1.0) - nu * t));
  };
  double upper = 1.0;
  while (-x * (std::cosh(upper) - 1.0) + nu * upper > -60.0 || upper < nu / std::max(x, 1e-300)) upper += 0.5;
  double err = 0.0;
  double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, upper, 25, 1e-14, &err);
  if (!(err <= 1e-11 * std::abs(v))) throw Error(ErrorKind::QuadratureFail, "K quadrature did not converge");
  return v * std::exp(-x);
}

ProductBound product_bound(double nu, const std::vector<double>& xs) {
  ProductBound b;
  b.nu = nu;
  b.max_excess = -std::numeric_limits<double>::infinity();
  for (double x : xs) {
    double v = 2.0 * x * std::exp(log_bessel_I(nu, x) + log_bessel_K(nu, x)) - 1.0;
    if (v > b.max_excess) {
      b.max_excess = v;
      b.at = x;
    }
  }
  return b;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  double a = std::log(lo), b = std::log(hi);
  for (int k = 0; k < n; ++k) g[k] = std::exp(a + (b - a) * k / (n - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

MonotoneScan monotone_scan(const std::function<double(double)>& log_f, double lo, double hi, int n, bool increasing) {
  MonotoneScan s;
  s.lo = lo;
  s.hi = hi;
  s.worst = std::numeric_limits<double>::infinity();
  auto g = log_grid(lo, hi, n);
  double prev = log_f(g[0]);
  for (int k = 1; k < n; ++k) {
    double cur = log_f(g[k]);
    double d = increasing ? cur - prev : prev - cur;
    s.worst = std::min(s.worst, d);
    prev = cur;
  }
  s.pass = s.worst > 0.0;
  return s;
}

bool MonotonicityReport::pass() const {
  for (const auto& s : i_scans)
    if (!s.pass) return false;
  for (const auto& s : k_scans)
    if (!s.pass) return false;
  return true;
}

MonotonicityReport monotonicity_check(double nu, int n) {
  MonotonicityReport r;
  r.nu = nu;
  auto li = [nu](double x) { return log_bessel_I(nu, x) - 0.5 * x; };
  auto lk = [nu](double x) { return log_bessel_K(nu, x) + x; };
  const std::array<std::pair<double, double>, 3> windows = {{{1e-3, 1.0}, {1.0, std::max(nu, 1.5)}, {std::max(nu, 1.5), 5.0 * std::max(nu, 1.5)}}};
  for (auto [lo, hi] : windows) {
    r.i_scans.push_back(monotone_scan(li, lo, hi, n, true));
    r.k_scans.push_back(monotone_scan(lk, lo, hi, n, false));
  }
  return r;
}

double PerturbedSolution::max_ratio_after_first() const {
  double m = 0.0;
  for (size_t k = 1; k < ratios.size(); ++k) m = std::max(m, ratios[k]);
  return m;
}

namespace {

double interval_integral(const std::vector<double>& f, size_t n, double h) {
  const size_t last = f.size() - 1;
  if (f.size() < 4) return 0.5 * h * (f[n] + f[n + 1]);
  if (n == 0) return h * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]) / 24.0;
  if (n + 1 == last) return h * (f[n - 2] - 5.0 * f[n - 1] + 19.0 * f[n] + 9.0 * f[n + 1]) / 24.0;
  return h * (-f[n - 1] + 13.0 * f[n] + 13.0 * f[n + 1] - f[n + 2]) / 24.0;
}

struct Kernel {
  std::vector<double> log_inc;
  std::vector<double> log_dec;
  double wronskian_factor = 1.0;
};

PerturbedSolution neumann_solve(const DecayCertificate& cert, const Kernel& ker, const std::vector<double>& xs,
                                double x0, double u0, double bound, const PerturbedOptions& opt) {
  const size_t n = xs.size();
  const double h = opt.step;
  PerturbedSolution s;
  s.x = xs;
  s.contraction_bound = bound;
  s.kappa = 0.5 * std::min(1.0, cert.alpha);
  if (bound > 0.5)
    throw Error(ErrorKind::ContractionFailed, "contraction bound " + std::to_string(bound) + " > 1/2 at x0 = " +
                                                  std::to_string(x0));
  std::vector<double> hv(n), g(n), u(n), f(n);
  for (size_t k = 0; k < n; ++k) hv[k] = cert.h(xs[k]);
  for (size_t k = 0; k < n; ++k) u[k] = u0 * std::exp(ker.log_dec[k] - ker.log_dec[0]);
  std::vector<double> p(n), q(n);
  double last_diff = 0.0;
  for (int it = 0; it < opt.max_iterations; ++it) {
    for (size_t k = 0; k < n; ++k) g[k] = ker.wronskian_factor * hv[k] * u[k] / xs[k];
    p[n - 1] = 0.0;
    for (size_t m = n - 1; m-- > 0;) {
      for (size_t k = (m > 0 ? m - 1 : 0); k < std::min(n, m + 3); ++k)
        f[k] = std::exp(ker.log_inc[m] + ker.log_dec[k]) * g[k];
      p[m] = std::exp(ker.log_inc[m] - ker.log_inc[m + 1]) * p[m + 1] + interval_integral(f, m, h);
    }
    q[0] = 0.0;
    for (size_t m = 0; m + 1 < n; ++m) {
      for (size_t k = (m > 0 ? m - 1 : 0); k < std::min(n, m + 3); ++k)
        f[k] = std::exp(ker.log_dec[m + 1] + ker.log_inc[k]) * g[k];
      q[m + 1] = std::exp(ker.log_dec[m + 1] - ker.log_dec[m]) * q[m] + interval_integral(f, m, h);
    }
    double lambda = u0 - p[0];
    double diff = 0.0, norm = 0.0;
    for (size_t k = 0; k < n; ++k) {
      double next = lambda * std::exp(ker.log_dec[k] - ker.log_dec[0]) + p[k] + q[k];
      double w = std::exp(s.kappa * (xs[k] - x0));
      diff = std::max(diff, w * std::abs(next - u[k]));
      norm = std::max(norm, w * std::abs(next));
      u[k] = next;
    }
    s.lambda = lambda;
    s.iterations = it + 1;
    if (it > 0) s.ratios.push_back(last_diff > 0 ? diff / last_diff : 0.0);
    last_diff = diff;
    if (diff <= opt.tol * std::max(1.0, norm)) {
      s.u = u;
      return s;
    }
  }
  throw Error(ErrorKind::NoConvergence, "Neumann iteration did not converge");
}

std::vector<double> uniform_grid(double x0, const PerturbedOptions& opt) {
  const size_t n = static_cast<size_t>(std::llround(opt.length / opt.step)) + 1;
  std::vector<double> xs(n);
  for (size_t k = 0; k < n; ++k) xs[k] = x0 + k * opt.step;
  return xs;
}

void check_certificate(const DecayCertificate& cert, const std::vector<double>& xs) {
  for (double x : xs)
    if (std::abs(cert.h(x)) > cert.a * std::exp(-cert.alpha * x) * (1.0 + 1e-12))
      throw Error(ErrorKind::BadDomain, "h violates its decay certificate at x = " + std::to_string(x));
}

double trapezoid(const std::vector<double>& xs, const std::function<double(double)>& f) {
  double s = 0.0;
  for (size_t k = 0; k + 1 < xs.size(); ++k) s += 0.5 * (xs[k + 1] - xs[k]) * (f(xs[k]) + f(xs[k + 1]));
  return s;
}

}  // namespace

DecayCertificate fitted_certificate(std::function<double(double)> h, double alpha, double x0,
                                    const PerturbedOptions& opt) {
  double a = 0.0;
  for (double x : uniform_grid(x0, opt)) a = std::max(a, std::abs(h(x)) * std::exp(alpha * x));
  return {std::move(h), a, alpha};
}

PerturbedSolution perturbed_bessel_solve(const DecayCertificate& cert, double nu, double x0, double u0,
                                         const PerturbedOptions& opt) {
  if (!(x0 > 0.0) || !(nu >= 0.0)) throw Error(ErrorKind::BadDomain, "need x0 > 0 and nu >= 0");
  auto xs = uniform_grid(x0, opt);
  check_certificate(cert, xs);
  Kernel ker;
  ker.log_inc.resize(xs.size());
  ker.log_dec.resize(xs.size());
  for (size_t k = 0; k < xs.size(); ++k) {
    ker.log_inc[k] = log_bessel_I(nu, xs[k]);
    ker.log_dec[k] = log_bessel_K(nu, xs[k]);
  }
  double eps_nu = std::max(0.0, product_bound(nu, xs).max_excess);
  double integral = trapezoid(xs, [&](double s) { return std::abs(cert.h(s)) / (s * s); });
  integral += cert.a * std::exp(-cert.alpha * xs.back()) / (cert.alpha * xs.back() * xs.back());
  double bound = 1.5 * (1.0 + eps_nu) * integral;
  return neumann_solve(cert, ker, xs, x0, u0, bound, opt);
}

PerturbedSolution perturbed_euler_solve(const DecayCertificate& cert, double nu, double x0, double u0,
                                        const PerturbedOptions& opt) {
  if (!(x0 > 0.0) || !(nu > 0.0)) throw Error(ErrorKind::BadDomain, "need x0 > 0 and nu > 0");
  auto xs = uniform_grid(x0, opt);
  check_certificate(cert, xs);
  Kernel ker;
  ker.log_inc.resize(xs.size());
  ker.log_dec.resize(xs.size());
  for (size_t k = 0; k < xs.size(); ++k) {
    ker.log_inc[k] = nu * std::log(xs[k]);
    ker.log_dec[k] = -nu * std::log(xs[k]);
  }
  ker.wronskian_factor = 1.0 / (2.0 * nu);
  double integral = trapezoid(xs, [&](double s) { return std::abs(cert.h(s)) / s; });
  integral += cert.a * std::exp(-cert.alpha * xs.back()) / (cert.alpha * xs.back());
  double bound = 1.5 / nu * integral;
  return neumann_solve(cert, ker, xs, x0, u0, bound, opt);
}

double bessel_ode_residual(const PerturbedSolution& s, const std::function<double(double)>& h, double nu, bool euler,
                           int stride, int margin) {
  static const std::array<double, 7> d1 = {-1.0 / 60, 3.0 / 20, -3.0 / 4, 0.0, 3.0 / 4, -3.0 / 20, 1.0 / 60};
  static const std::array<double, 7> d2 = {1.0 / 90, -3.0 / 20, 3.0 / 2, -49.0 / 18, 3.0 / 2, -3.0 / 20, 1.0 / 90};
  const int n = static_cast<int>(s.x.size());
  stride = std::max(stride, 1);
  const double step = (s.x[1] - s.x[0]) * stride;
  double worst = 0.0;
  margin = std::max(margin, 3 * stride);
  for (int k = margin; k < n - margin; ++k) {
    double up = 0.0, upp = 0.0;
    for (int j = -3; j <= 3; ++j) {
      up += d1[j + 3] * s.u[k + j * stride];
      upp += d2[j + 3] * s.u[k + j * stride];
    }
    up /= step;
    upp /= step * step;
    double x = s.x[k];
    double pot = euler ? nu * nu : x * x + nu * nu;
    double r = -(x * x * upp + x * up) + pot * s.u[k] - h(x) * s.u[k];
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

double fitted_decay_rate(const PerturbedSolution& s, double from, double to) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (size_t k = 0; k < s.x.size(); ++k) {
    if (s.x[k] < from || s.x[k] > to || s.u[k] == 0.0) continue;
    double y = std::log(std::abs(s.u[k]));
    sx += s.x[k];
    sy += y;
    sxx += s.x[k] * s.x[k];
    sxy += s.x[k] * y;
    ++m;
  }
  if (m < 2) throw Error(ErrorKind::BadDomain, "decay window has fewer than two samples");
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace hitchinlab
