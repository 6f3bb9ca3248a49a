#include "permdiv/counting.hpp"

#include <sstream>

namespace permdiv {

ExactCount factorial(int n) {
  if (n < 0) fail(errc::out_of_range, "factorial of negative argument");
  ExactCount r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

ExactCount binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  ExactCount r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

Rational parse_rational(const std::string& text) {
  size_t slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(ExactCount(text));
    ExactCount num(text.substr(0, slash));
    ExactCount den(text.substr(slash + 1));
    if (den <= 0) fail(errc::parse_error, "rational denominator must be positive in '" + text + "'");
    return Rational(num, den);
  } catch (const error&) {
    throw;
  } catch (const std::exception&) {
    fail(errc::parse_error, "bad rational '" + text + "'");
  }
}

std::string rational_to_string(const Rational& r) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(r);
  if (boost::multiprecision::denominator(r) != 1) os << '/' << boost::multiprecision::denominator(r);
  return os.str();
}

// Truncated series sum_{i=0}^{m} 1/i! is an under-approximation of e; the tail
// after m terms is below 2/(m+1)!. With m = 48 both bounds agree to ~60 digits.
namespace {
constexpr int kESeriesTerms = 48;

Rational compute_e_lower() {
  Rational s = 0;
  ExactCount fact = 1;
  for (int i = 0; i <= kESeriesTerms; ++i) {
    if (i > 0) fact *= i;
    s += Rational(1, fact);
  }
  return s;
}
}  // namespace

const Rational& e_lower() {
  static const Rational v = compute_e_lower();
  return v;
}

const Rational& e_upper() {
  static const Rational v = compute_e_lower() + Rational(2, factorial(kESeriesTerms + 1));
  return v;
}

const Rational& e_squared_lower() {
  static const Rational v = e_lower() * e_lower();
  return v;
}

const Rational& e_squared_upper() {
  static const Rational v = e_upper() * e_upper();
  return v;
}

ExactCount derangement_number(int n) {
  if (n < 0) fail(errc::out_of_range, "derangement_number of negative argument");
  if (n == 0) return 1;
  ExactCount prev2 = 1, prev1 = 0;  // d_0, d_1
  if (n == 1) return 0;
  ExactCount cur = 0;
  for (int i = 2; i <= n; ++i) {
    cur = ExactCount(i - 1) * (prev1 + prev2);
    prev2 = prev1;
    prev1 = cur;
  }
  return cur;
}

ExactCount derangement_number_alternating(int n) {
  if (n < 0) fail(errc::out_of_range, "derangement_number of negative argument");
  // sum_{i=0}^{n} (-1)^i n!/i!, every term an integer.
  ExactCount sum = 0;
  ExactCount term = factorial(n);  // n!/0!
  for (int i = 0; i <= n; ++i) {
    if (i % 2 == 0)
      sum += term;
    else
      sum -= term;
    if (i < n) term /= (i + 1);  // n!/i! -> n!/(i+1)!
  }
  return sum;
}

bool is_nearest_integer_to_factorial_over_e(int n, const ExactCount& d) {
  // d - 1/2 < n!/e < d + 1/2, certified with the directed bounds:
  //   2 n! > (2d - 1) e is implied by 2 n! >= (2d - 1) e_upper,
  //   2 n! < (2d + 1) e is implied by 2 n! <= (2d + 1) e_lower.
  Rational two_nf = Rational(2 * factorial(n));
  if (!(two_nf >= Rational(2 * d - 1) * e_upper())) return false;
  if (!(two_nf <= Rational(2 * d + 1) * e_lower())) return false;
  return true;
}

static void require_nk(int n, int k) {
  if (!(2 <= k && k <= n - 2)) fail(errc::out_of_range, "need 2 <= k <= n-2");
}

ExactCount size_N_H_via_degree_sum(int n, int k) {
  require_nk(n, k);
  ExactCount s = 0;
  for (int i = 0; i <= k - 1; ++i) s += binomial(k - 1, i) * derangement_number(n - i - 1);
  return factorial(n - 1) - s;
}

ExactCount size_N_H_via_inclusion_exclusion(int n, int k) {
  require_nk(n, k);
  ExactCount s = 0;
  for (int i = 1; i <= n - k; ++i) {
    ExactCount term = binomial(n - k, i) * factorial(n - 1 - i);
    if (i % 2 == 1)
      s += term;
    else
      s -= term;
  }
  return s;
}

ExactCount size_N_H(int n, int k) {
  ExactCount a = size_N_H_via_degree_sum(n, k);
  ExactCount b = size_N_H_via_inclusion_exclusion(n, k);
  if (a != b) {
    std::ostringstream os;
    os << "size_N_H evaluators disagree at n=" << n << " k=" << k << ": " << a << " vs " << b;
    fail(errc::internal_mismatch, os.str());
  }
  return a;
}

ExactCount size_E(int n, int k) {
  return size_N_H(n, k) + factorial(k) - factorial(k - 1);
}

ExactCount permanent01(const std::vector<std::uint8_t>& row_major, int dim) {
  if (dim < 0 || dim > kPermanentMaxDim) fail(errc::too_large, "permanent01 dimension cap is 24");
  if (row_major.size() != static_cast<size_t>(dim) * static_cast<size_t>(dim))
    fail(errc::out_of_range, "matrix size does not match dimension");
  if (dim == 0) return 1;

  // Ryser: perm(A) = (-1)^dim sum_{S != empty} (-1)^{|S|} prod_i rowsum_i(S),
  // walking column subsets in Gray-code order so each step updates one column.
  // Row sums stay <= 24, so the product fits unsigned __int128; partial sums
  // are flushed into big integers before they can overflow.
  std::vector<int> rowsum(static_cast<size_t>(dim), 0);
  int zero_rows = dim;
  unsigned __int128 pos_acc = 0, neg_acc = 0;
  ExactCount pos_total = 0, neg_total = 0;
  const unsigned __int128 flush_limit = (~static_cast<unsigned __int128>(0)) >> 8;

  auto flush = [&](unsigned __int128& acc, ExactCount& total) {
    std::uint64_t lo = static_cast<std::uint64_t>(acc);
    std::uint64_t hi = static_cast<std::uint64_t>(acc >> 64);
    ExactCount v = hi;
    v <<= 64;
    v += lo;
    total += v;
    acc = 0;
  };

  const std::uint64_t end = 1ull << dim;
  std::uint64_t gray = 0;
  for (std::uint64_t g = 1; g < end; ++g) {
    std::uint64_t next_gray = g ^ (g >> 1);
    std::uint64_t diff = gray ^ next_gray;
    int j = 0;
    while (!((diff >> j) & 1)) ++j;
    bool added = (next_gray >> j) & 1;
    gray = next_gray;
    for (int i = 0; i < dim; ++i) {
      int a = row_major[static_cast<size_t>(i) * static_cast<size_t>(dim) + static_cast<size_t>(j)];
      if (!a) continue;
      int before = rowsum[static_cast<size_t>(i)];
      int after = before + (added ? a : -a);
      rowsum[static_cast<size_t>(i)] = after;
      if (before == 0) --zero_rows;
      if (after == 0) ++zero_rows;
    }
    if (zero_rows > 0) continue;
    unsigned __int128 prod = 1;
    for (int i = 0; i < dim; ++i) prod *= static_cast<unsigned>(rowsum[static_cast<size_t>(i)]);
    int popcount = __builtin_popcountll(gray);
    unsigned __int128& acc = (popcount % 2 == 0) ? pos_acc : neg_acc;
    acc += prod;
    if (acc > flush_limit) flush(acc, (popcount % 2 == 0) ? pos_total : neg_total);
  }
  flush(pos_acc, pos_total);
  flush(neg_acc, neg_total);
  ExactCount signed_sum = neg_total - pos_total;  // (-1)^{|S|}: odd |S| positive after the outer sign
  if (dim % 2 == 0) signed_sum = -signed_sum;
  return signed_sum;
}

ExactCount menage_number(int n) {
  if (n < 3) fail(errc::out_of_range, "menage_number needs n >= 3");
  // Touchard: U_n = sum_{k=0}^{n} (-1)^k (2n/(2n-k)) C(2n-k, k) (n-k)!.
  ExactCount total = 0;
  for (int k = 0; k <= n; ++k) {
    ExactCount t = ExactCount(2 * n) * binomial(2 * n - k, k);
    // 2n/(2n-k) * C(2n-k, k) counts k non-adjacent marks on a 2n-cycle; always integral.
    if (t % (2 * n - k) != 0) fail(errc::internal_mismatch, "menage term not integral");
    t /= (2 * n - k);
    t *= factorial(n - k);
    if (k % 2 == 0)
      total += t;
    else
      total -= t;
  }
  return total;
}

ExactCount double_avoid_count(int n, const PartialPermutation& sigma, const PartialPermutation& pi,
                              Point p1, Point p2) {
  if (sigma.n() != n || pi.n() != n) fail(errc::mismatched_ground, "constraints must live on [n]^2");
  if (p1.row == p2.row || p1.col == p2.col)
    fail(errc::constraint_conflict, "p1 and p2 collide");
  for (Point p : {p1, p2}) {
    if (p.row < 1 || p.row > n || p.col < 1 || p.col > n) fail(errc::out_of_range, "point outside grid");
    if (sigma.contains(p) || pi.contains(p)) fail(errc::constraint_conflict, "required point lies in an avoided set");
  }

  // Rows/cols used by p1, p2 drop out; remaining grid gets zeros at avoided
  // points, and the count is the permanent of what is left.
  std::vector<int> rows, cols;
  for (int r = 1; r <= n; ++r)
    if (r != p1.row && r != p2.row) rows.push_back(r);
  for (int c = 1; c <= n; ++c)
    if (c != p1.col && c != p2.col) cols.push_back(c);
  const int dim = n - 2;
  std::vector<std::uint8_t> m(static_cast<size_t>(dim) * static_cast<size_t>(dim), 1);
  auto zero_out = [&](const PartialPermutation& avoid) {
    for (const Point& p : avoid.points()) {
      auto rit = std::find(rows.begin(), rows.end(), p.row);
      auto cit = std::find(cols.begin(), cols.end(), p.col);
      if (rit == rows.end() || cit == cols.end()) continue;
      size_t ri = static_cast<size_t>(rit - rows.begin());
      size_t ci = static_cast<size_t>(cit - cols.begin());
      m[ri * static_cast<size_t>(dim) + ci] = 0;
    }
  };
  zero_out(sigma);
  zero_out(pi);
  return permanent01(m, dim);
}

ExactCount hitting_weighted_count(int n, int t, int i) {
  if (!(2 <= i && i <= t - 1 && t - 1 <= n - 1)) fail(errc::out_of_range, "need 2 <= i <= t-1 <= n-1");
  ExactCount s = 0;
  for (int j = i; j <= t - i - 1; ++j) s += binomial(t - i - 1, j - i) * derangement_number(n - j - 1);
  return s;
}

EstimateReport asymptotic_estimate(int n, int k, int which) {
  require_nk(n, k);
  if (which != 1 && which != 2) fail(errc::out_of_range, "which must be 1 or 2");
  EstimateReport rep;
  rep.exact = size_N_H(n, k);
  if (which == 1) {
    rep.estimate = Real(factorial(n - 2) * (n - k));
    rep.claimed_error_order = "(n-k)/n";
  } else {
    Real inv_e = 1 / exp(Real(1));
    Real base = 1 + Real(1) / n;
    rep.estimate = Real(factorial(n - 1)) * (1 - inv_e * pow(base, k - 1));
    rep.claimed_error_order = "k*log^2(n)/n^2";
  }
  Real exact_f(rep.exact);
  rep.relative_error = abs(rep.estimate - exact_f) / exact_f;
  return rep;
}

}  // namespace permdiv
