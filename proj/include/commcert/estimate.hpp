#pragma once

#include <cstdint>

namespace commcert {

// Significance level for one-sided bounds; confidence = 1 - alpha.
struct ConfidenceSpec {
  double alpha;
  explicit ConfidenceSpec(double a);
};

// Regularized incomplete beta I_x(a, b) via the Lentz continued fraction,
// switching to the symmetric form 1 - I_{1-x}(b, a) when x is past the
// distribution bulk.
double regularized_incomplete_beta(double a, double b, double x);

// The q-th quantile of Beta(a, b): x with I_x(a,b) = q, located by bisection
// and polished with Newton steps using the analytic density. Throws on
// non-positive shapes or q outside (0, 1).
double beta_quantile(double q, double a, double b);

// One-sided Clopper-Pearson lower confidence bound for a binomial
// proportion: the alpha quantile of Beta(m, N - m + 1); 0 when m = 0.
double clopper_pearson_lower(std::uint64_t m, std::uint64_t n, const ConfidenceSpec& spec);

}  // namespace commcert
