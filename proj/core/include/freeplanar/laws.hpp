#pragma once

#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "freeplanar/rational.hpp"
#include "freeplanar/scalar_poly.hpp"
#include "freeplanar/series.hpp"

namespace freeplanar {

// Free Poisson moments m[0..count], m[0] = 1, via the loop recurrence
// m[n] = (alpha-1) m[n-1] + sum_{k<n} m[k] m[n-1-k].
std::vector<Rational> fp_moments(const Rational& alpha, int count);

// Moment generating series phi(z) = sum m[n] z^n solved exactly from
// phi - 1 = (alpha-1) z phi + z phi^2 with phi(0) = 1; independent of
// fp_moments (square-root expansion of the quadratic).
Series fp_mgf_series(const Rational& alpha, int order);

using CauchyTransform = std::function<std::complex<double>(std::complex<double>)>;

// Closed-form Cauchy transform G(z) = z^{-1} phi(z^{-1}) of the free Poisson
// law. The square-root branch is chosen per call by the sign test
// (Im G < 0 for Im z > 0, mirrored below the axis; z G -> 1 on the real axis
// away from the support); BranchAmbiguity when the test does not single out
// one candidate.
std::complex<double> fp_cauchy(double alpha, std::complex<double> z);
CauchyTransform fp_cauchy_transform(double alpha);

// Partial sum sum_{n <= N} m[n] z^{-n-1}; diagnostic for large |z|.
std::complex<double> cauchy_partial_sum(const std::vector<Rational>& moments,
                                        std::complex<double> z);

// Density at x recovered as -(1/pi) Im G(x + iy), polynomial-extrapolated to
// y -> 0 along y_seq; NumericFailure when the extrapolation tableau does not
// settle.
double stieltjes_density(const CauchyTransform& g, double x,
                         const std::vector<double>& y_seq = {1e-3, 1e-4, 1e-5});

// Absolutely continuous part supported on [lo, hi] plus point atoms.
struct Law {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::pair<double, double>> atoms; // (location, mass)
  std::function<double(double)> density;        // zero outside [lo, hi]
};

// Free Poisson law: density sqrt((x-lo)(hi-x))/(2 pi x) on
// [(sqrt(alpha)-1)^2, (sqrt(alpha)+1)^2], atom 1-alpha at 0 when alpha < 1.
Law fp_density(double alpha);
double law_total_mass(const Law& law);
double law_mean(const Law& law);

// S(z) = (z+1) chi(z) / z with chi the compositional inverse of M - 1;
// truncated at order N-1 for N input moments. NonInvertible when m[1] = 0.
Series s_transform(const std::vector<Rational>& moments);
Series s_multiply(const Series& a, const Series& b);
// Inverse pipeline: moments m[0..count] of the law with S-transform s;
// InsufficientMoments when s is too short, NonInvertible when s(0) = 0.
std::vector<Rational> moments_from_s(const Series& s, int count);

// Trace of the n-th wedge power of the two-color double cup, by exhaustive
// enumeration of color-matched planar closures of (abba)^n; each closure
// contributes d_a^{#a-loops} d_b^{#b-loops}. Capped at count <= 6
// (BudgetExceeded beyond).
std::vector<ScalarPoly> fc_cup_moments_sym(int count);
std::vector<Rational> fc_cup_moments(const Rational& delta_a,
                                     const Rational& delta_b, int count);

// Joint moment of two free elements along a word in the letters 's' (first
// argument) and 't' (second), e.g. "stst". Computed through color-pure
// non-crossing block sums of free cumulants; InsufficientMoments when a
// letter occurs more often than its moment list covers.
Rational free_joint_moment(const std::vector<Rational>& ma,
                           const std::vector<Rational>& mb,
                           const std::string& pattern);

// Moments of the one-color cup compressed to the corner of its side
// projection: m[0] = 1, m[n] = fp_moments(delta)[n] / delta.
std::vector<Rational> cup_corner_moments(const Rational& delta_a, int count);

// Two-color cup moments through the S-transform of the product of the
// compressed one-color cups: m[n] = delta_a * moments_from_s(S_y S_r)[n].
std::vector<Rational> cup_moments_via_s(const Rational& delta_a,
                                        const Rational& delta_b, int count);

// Closed form matching cup_moments_via_s: 1 / ((delta_a z + 1)(z + delta_b)).
Series cup_s_transform(const Rational& delta_a, const Rational& delta_b,
                       int order);
// Recorded alternative closed form
// (z+1)^2 (z-1)(delta_a z - 1) / (((delta_b-1) z + delta_b)((delta_a-1) z + 1));
// agrees with cup_s_transform at order 0 only (at delta_a = delta_b = 2 the
// order-1 terms coincide too; order 2 differs). Kept for the comparison
// report (docs/conflict_report.md), never used in computations.
Series cup_s_transform_alt(const Rational& delta_a, const Rational& delta_b,
                           int order);

// Free Poisson rate seen when a rank-one pair v, w of trace weights mu_v,
// mu_w is compressed by the sum of the two projections: alpha =
// 2 min(mu_v, mu_w) / (mu_v + mu_w), atom |mu_v - mu_w| / (mu_v + mu_w).
double fp_pair_compression_alpha(double mu_v, double mu_w);
// Rate seen when compressing by the single projection w: alpha = mu_v / mu_w,
// atom (mu_w - mu_v) / mu_w when positive.
double fp_corner_compression_alpha(double mu_v, double mu_w);

} // namespace freeplanar
