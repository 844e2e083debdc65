#pragma once

namespace skeptic {

// Standard normal CDF.
double normal_cdf(double x);

// Standard normal quantile (Wichura's AS 241, double precision).
// Requires p in (0, 1).
double normal_quantile(double p);

// Truncation level for the scaled empirical CDF before the normal-score
// transform: 1 / (4 n^{1/4} sqrt(pi log n)), natural log. Requires n >= 2.
double winsor_delta(long n);

}  // namespace skeptic
