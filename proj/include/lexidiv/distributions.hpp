#pragma once

namespace lexidiv::stats {

// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1],
// evaluated by Lentz's continued fraction.
double regularized_beta(double x, double a, double b);

// Upper tail P(F' >= f) of the F distribution with (df1, df2) degrees of
// freedom. Degrees of freedom may be fractional (Rao's df2, Welch df).
double f_tail_prob(double f, double df1, double df2);

// Student t distribution.
double t_cdf(double t, double df);
double t_two_sided_p(double t, double df);
// Inverse CDF, prob in (0, 1).
double t_quantile(double prob, double df);

}  // namespace lexidiv::stats
