#include "cplx/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cplx/error.hpp"

namespace cplx::stats {

namespace {

double mean(std::span<const double> xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) /
         static_cast<double>(xs.size());
}

// Unbiased sample variance.
double variance(std::span<const double> xs, double m) {
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return ss / static_cast<double>(xs.size() - 1);
}

void check_level(double ci_level) {
  if (!(ci_level > 0.0 && ci_level < 1.0)) {
    throw InvalidArgument("confidence level must be in (0, 1)");
  }
}

void check_pairs(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw InvalidArgument("length mismatch: " + std::to_string(xs.size()) +
                          " vs " + std::to_string(ys.size()));
  }
  if (xs.size() < 3) {
    throw InvalidArgument("need at least 3 pairs");
  }
}

void add_note(StatReport& r, const std::string& note) {
  if (!r.notes.empty()) r.notes += ';';
  r.notes += note;
}

}  // namespace

StatReport pearson(std::span<const double> xs, std::span<const double> ys,
                   double ci_level) {
  check_pairs(xs, ys);
  check_level(ci_level);
  const double mx = mean(xs);
  const double my = mean(ys);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw InvalidArgument("zero variance");
  }
  StatReport r;
  r.n = xs.size();
  r.ci_level = ci_level;
  r.statistic = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double df = static_cast<double>(r.n) - 2.0;
  r.df = df;

  const double rr = r.statistic;
  if (std::fabs(rr) >= 1.0) {
    r.p_one_tail = 0.0;
    r.p_two_tail = 0.0;
    add_note(r, "ci unavailable: |r| = 1");
    return r;
  }
  const double t = rr * std::sqrt(df / (1.0 - rr * rr));
  r.p_one_tail = 1.0 - student_t_cdf(std::fabs(t), df);
  r.p_two_tail = std::min(1.0, 2.0 * r.p_one_tail);

  if (r.n < 4) {
    add_note(r, "ci unavailable: n < 4");
    return r;
  }
  const double z = std::atanh(rr);
  const double se = 1.0 / std::sqrt(static_cast<double>(r.n) - 3.0);
  const double crit = normal_quantile(0.5 + 0.5 * ci_level);
  r.ci_low = std::tanh(z - crit * se);
  r.ci_high = std::tanh(z + crit * se);
  add_note(r, "fisher-z ci");
  return r;
}

std::vector<double> mid_ranks(std::span<const double> xs) {
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(xs.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

StatReport spearman(std::span<const double> xs, std::span<const double> ys,
                    double ci_level) {
  check_pairs(xs, ys);
  const auto rx = mid_ranks(xs);
  const auto ry = mid_ranks(ys);
  StatReport r = pearson(rx, ry, ci_level);
  add_note(r, "mid-ranks");
  return r;
}

StatReport welch_t(std::span<const double> a, std::span<const double> b,
                   double ci_level) {
  if (a.size() < 2 || b.size() < 2) {
    throw InvalidArgument("welch_t needs at least 2 observations per sample");
  }
  check_level(ci_level);
  const double ma = mean(a);
  const double mb = mean(b);
  const double va = variance(a, ma);
  const double vb = variance(b, mb);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  StatReport r;
  r.n = a.size() + b.size();
  r.ci_level = ci_level;

  const double se2 = va / na + vb / nb;
  if (se2 == 0.0) {
    if (ma != mb) {
      throw InvalidArgument("zero variance in both samples with unequal means");
    }
    r.statistic = 0.0;
    r.p_one_tail = 0.5;
    r.p_two_tail = 1.0;
    add_note(r, "both samples constant");
    return r;
  }
  const double se = std::sqrt(se2);
  const double t = (ma - mb) / se;
  const double df =
      se2 * se2 /
      ((va / na) * (va / na) / (na - 1.0) + (vb / nb) * (vb / nb) / (nb - 1.0));
  r.statistic = t;
  r.df = df;
  r.p_one_tail = 1.0 - student_t_cdf(std::fabs(t), df);
  r.p_two_tail = std::min(1.0, 2.0 * r.p_one_tail);
  const double crit = student_t_quantile(0.5 + 0.5 * ci_level, df);
  r.ci_low = (ma - mb) - crit * se;
  r.ci_high = (ma - mb) + crit * se;
  add_note(r, "welch-satterthwaite df;ci of mean difference");
  return r;
}

StatReport ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) {
    throw InvalidArgument("ks_two_sample needs non-empty samples");
  }
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());

  // Walk the merged breakpoints, advancing past ties on both sides.
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < sa.size() && j < sb.size()) {
    const double x = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] == x) ++i;
    while (j < sb.size() && sb[j] == x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na -
                              static_cast<double>(j) / nb));
  }

  StatReport r;
  r.n = sa.size() + sb.size();
  r.statistic = d;
  const double ne = na * nb / (na + nb);
  const double lambda = std::sqrt(ne) * d;
  r.p_two_tail = kolmogorov_survival(lambda);
  r.p_one_tail = std::min(1.0, std::exp(-2.0 * lambda * lambda));
  add_note(r, "asymptotic");
  return r;
}

}  // namespace cplx::stats
