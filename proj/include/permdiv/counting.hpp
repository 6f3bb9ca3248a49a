#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "permdiv/points.hpp"

namespace permdiv {

// All formula outputs are exact, arbitrary-precision nonnegative integers.
using ExactCount = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
// Wide-exponent float for estimate/relative-error reporting only; never used
// in an asserted inequality.
using Real = boost::multiprecision::cpp_bin_float_50;

ExactCount factorial(int n);
ExactCount binomial(int n, int k);

// Parses "p/q" or "p" into an exact rational; q > 0 required.
Rational parse_rational(const std::string& text);
std::string rational_to_string(const Rational& r);

// Directed rational bounds: lo < e < hi and lo2 < e^2 < hi2, accurate to far
// below any margin that appears at desk scale. Asserted inequalities pick the
// side that makes a pass certify the true statement.
const Rational& e_lower();
const Rational& e_upper();
const Rational& e_squared_lower();
const Rational& e_squared_upper();

// Number of fixed-point-free permutations of [n]; recurrence evaluation.
ExactCount derangement_number(int n);
// Same value by the alternating sum n! * sum_{i=0..n} (-1)^i / i!.
ExactCount derangement_number_alternating(int n);
// Exact check that d is the nearest integer to n!/e, via the directed bounds.
bool is_nearest_integer_to_factorial_over_e(int n, const ExactCount& d);

// Size of the neighborhood family N(H_k): permutations fixing (1,1) that meet
// the identity tail on [k+1,n]. Two independent evaluators are run and must
// agree; disagreement throws internal_mismatch.
ExactCount size_N_H(int n, int k);
// The individual evaluators, exposed for cross-check reporting.
ExactCount size_N_H_via_degree_sum(int n, int k);   // (n-1)! - sum C(k-1,i) d_{n-i-1}
ExactCount size_N_H_via_inclusion_exclusion(int n, int k);  // sum (-1)^{i+1} C(n-k,i) (n-1-i)!

// |E_k| = |N(H_k)| + k! - (k-1)!.
ExactCount size_E(int n, int k);

// Exact permanent of a 0-1 matrix by Ryser's formula with Gray-code updates.
// row_major has dim*dim entries in {0,1}; dim <= 24.
ExactCount permanent01(const std::vector<std::uint8_t>& row_major, int dim);
inline constexpr int kPermanentMaxDim = 24;

// Menage number U_n (permutations avoiding both the identity and the standard
// n-cycle), via the Touchard sum. Requires n >= 3.
ExactCount menage_number(int n);

// Number of permutations of [n] containing p1 and p2 while avoiding every
// point of sigma and of pi, via the permanent of the reduced (n-2)x(n-2)
// matrix. p1, p2 must form a partial permutation disjoint from sigma and pi.
ExactCount double_avoid_count(int n, const PartialPermutation& sigma, const PartialPermutation& pi,
                              Point p1, Point p2);

// The weighted hitting-set count sum_{j=i}^{t-i-1} C(t-i-1, j-i) d_{n-j-1},
// evaluated literally; an inverted range yields 0.
ExactCount hitting_weighted_count(int n, int t, int i);

struct EstimateReport {
  ExactCount exact;
  Real estimate;
  Real relative_error;
  std::string claimed_error_order;
};

// Leading-term estimates for |N(H_k)|:
//   which=1: (n-2)! * (n-k)
//   which=2: (n-1)! * (1 - e^{-1} (1 + 1/n)^{k-1})
EstimateReport asymptotic_estimate(int n, int k, int which);

}  // namespace permdiv
