#pragma once

namespace ssamt {

/// Regularized incomplete beta function I_x(a, b) for a, b > 0, x in [0, 1].
/// Evaluated with a continued fraction on whichever side of the mean it
/// converges fastest.
double incomplete_beta(double a, double b, double x);

/// Student's t distribution with `nu` degrees of freedom.
double t_cdf(double x, double nu);
/// Upper tail P(T > x), computed without forming 1 - cdf.
double t_sf(double x, double nu);

/// Fisher's F distribution with (d1, d2) degrees of freedom, x >= 0.
double f_cdf(double x, double d1, double d2);
/// Upper tail P(F > x).
double f_sf(double x, double d1, double d2);

} // namespace ssamt
