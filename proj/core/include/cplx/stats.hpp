#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cplx::stats {

inline constexpr double kDefaultCiLevel = 0.99;

struct StatReport {
  double statistic = 0.0;
  std::optional<double> df;
  double p_one_tail = 1.0;
  double p_two_tail = 1.0;
  std::optional<double> ci_low;
  std::optional<double> ci_high;
  double ci_level = kDefaultCiLevel;
  std::size_t n = 0;  // pairs, or total sample size for two-sample tests
  // Method notes ("fisher-z", "mid-ranks", "asymptotic", ...), ';'-joined.
  std::string notes;
};

// Sample Pearson r. p from t = r sqrt((n-2)/(1-r^2)) on n-2 df; the
// confidence interval uses the Fisher z transform and needs n >= 4 and
// |r| < 1 (otherwise it is left empty and noted). Throws InvalidArgument on
// length mismatch, n < 3, or a constant series.
StatReport pearson(std::span<const double> xs, std::span<const double> ys,
                   double ci_level = kDefaultCiLevel);

// Pearson r of mid-ranks (ties share the average rank).
StatReport spearman(std::span<const double> xs, std::span<const double> ys,
                    double ci_level = kDefaultCiLevel);

// Average ranks, 1-based.
std::vector<double> mid_ranks(std::span<const double> xs);

// Welch's unequal-variance t-test of mean(a) - mean(b), Welch-Satterthwaite
// df, with a confidence interval for the mean difference. Two constant
// samples with equal means give t = 0, p = 1; with different means the test
// is undefined and throws.
StatReport welch_t(std::span<const double> a, std::span<const double> b,
                   double ci_level = kDefaultCiLevel);

// Two-sample Kolmogorov-Smirnov. D = sup |F_a - F_b|; p_two_tail from the
// asymptotic Kolmogorov distribution at lambda = sqrt(n_a n_b/(n_a+n_b)) D,
// p_one_tail from the one-sided asymptotic exp(-2 lambda^2).
StatReport ks_two_sample(std::span<const double> a, std::span<const double> b);

// Special functions.

// I_x(a, b) by Lentz's continued fraction, relative tolerance 1e-12.
double regularized_incomplete_beta(double a, double b, double x);
double student_t_cdf(double t, double df);
double student_t_quantile(double p, double df);
double normal_cdf(double z);
double normal_quantile(double p);
// P(K > lambda) = 2 sum_{k>=1} (-1)^(k-1) exp(-2 k^2 lambda^2).
double kolmogorov_survival(double lambda);

}  // namespace cplx::stats
