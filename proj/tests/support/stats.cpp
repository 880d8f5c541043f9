#include "support/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/students_t.hpp>

namespace latmcts::teststat {

double chi_square_stat(const std::vector<long>& observed, const std::vector<double>& expected) {
  if (observed.size() != expected.size())
    throw std::invalid_argument("chi-square category mismatch");
  double stat = 0.0;
  for (size_t i = 0; i < observed.size(); ++i) {
    const double d = static_cast<double>(observed[i]) - expected[i];
    stat += d * d / expected[i];
  }
  return stat;
}

double chi_square_crit(double alpha, int df) {
  boost::math::chi_squared dist(df);
  return boost::math::quantile(dist, 1.0 - alpha);
}

double t_crit(double alpha, int df) {
  boost::math::students_t dist(df);
  return boost::math::quantile(dist, 1.0 - alpha);
}

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v) {
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

TTest paired_t_less(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2) throw std::invalid_argument("paired t needs equal n >= 2");
  std::vector<double> d(a.size());
  for (size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  const double m = mean_of(d);
  const double s = sample_std(d);
  TTest res;
  res.df = static_cast<int>(a.size()) - 1;
  res.t = m / (s / std::sqrt(static_cast<double>(a.size())));
  return res;
}

TTest welch_t_greater(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() < 2 || b.size() < 2) throw std::invalid_argument("welch t needs n >= 2");
  const double ma = mean_of(a), mb = mean_of(b);
  const double va = sample_std(a) * sample_std(a) / static_cast<double>(a.size());
  const double vb = sample_std(b) * sample_std(b) / static_cast<double>(b.size());
  TTest res;
  res.t = (ma - mb) / std::sqrt(va + vb);
  const double num = (va + vb) * (va + vb);
  const double den = va * va / (static_cast<double>(a.size()) - 1.0) +
                     vb * vb / (static_cast<double>(b.size()) - 1.0);
  res.df = static_cast<int>(num / den);
  return res;
}

namespace {

std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t i, size_t j) { return v[i] < v[j]; });
  std::vector<double> r(v.size());
  for (size_t k = 0; k < order.size(); ++k) r[order[k]] = static_cast<double>(k + 1);
  return r;
}

}  // namespace

double spearman_rho(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("spearman needs equal n >= 2");
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  const double n = static_cast<double>(x.size());
  double d2 = 0.0;
  for (size_t i = 0; i < x.size(); ++i) d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
  return 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
}

double tv_distance(const std::vector<long>& counts, const std::vector<double>& pmf) {
  if (counts.size() != pmf.size()) throw std::invalid_argument("tv distance size mismatch");
  long total = 0;
  for (long c : counts) total += c;
  double tv = 0.0;
  for (size_t i = 0; i < counts.size(); ++i)
    tv += std::abs(static_cast<double>(counts[i]) / static_cast<double>(total) - pmf[i]);
  return 0.5 * tv;
}

double powerlaw_mle_mu(const std::vector<long>& samples, int l_max) {
  double sum_log = 0.0;
  for (long s : samples) sum_log += std::log(static_cast<double>(s));
  const double n = static_cast<double>(samples.size());

  auto neg_loglik = [&](double mu) {
    double norm = 0.0;
    for (int l = 1; l <= l_max; ++l) norm += std::pow(static_cast<double>(l), -mu);
    return mu * sum_log + n * std::log(norm);
  };

  // golden-section over the admissible exponent range
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 1.0001, hi = 3.0;
  double c = hi - phi * (hi - lo);
  double d = lo + phi * (hi - lo);
  double fc = neg_loglik(c), fd = neg_loglik(d);
  for (int it = 0; it < 200 && hi - lo > 1e-7; ++it) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - phi * (hi - lo);
      fc = neg_loglik(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + phi * (hi - lo);
      fd = neg_loglik(d);
    }
  }
  return (lo + hi) / 2.0;
}

}  // namespace latmcts::teststat
