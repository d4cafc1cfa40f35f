#pragma once

// Closed forms and combinatorial bounds for lambda(n).

#include <cstdint>
#include <string>

namespace cyclabel {

// Optimal label count for directed cycles C_3..C_n: (n^2 + 2n + n mod 2) / 4
// for n >= 4. The formula gives 4 at n = 3, where a single triangle needs 3;
// 3 is returned there. Throws std::invalid_argument for n < 3.
std::int64_t lambda_directed_formula(int n);

// T(i): 3-subsets of the i nodes of C_i that form a triangle, i.e. whose
// three distances are each strictly below the sum of the other two.
// Counted over arc compositions in O(i^2).
std::int64_t triangle_count_cycle(int i);

// Same count by checking every triple, O(i^3). Reference for the above.
std::int64_t triangle_count_brute(int i);

// Same count in O(1) by inclusion-exclusion over the arc compositions.
std::int64_t triangle_count_closed(int i);

// Least L with C(L, 3) >= T(3) + ... + T(n). Every valid labeling of
// C_3..C_n uses at least this many labels, since a triangle occurs in one
// cycle only.
std::int64_t triangle_lower_bound(int n);

struct BoundsReport {
  int n = 0;
  std::int64_t lambda_directed = 0;
  std::int64_t triangle_lb = 0;
  double chain_estimate = 0;     // n sqrt(n) / sqrt(6)
  double corridor_low = 0;       // n sqrt(n) / sqrt(6)
  double corridor_high = 0;      // n (sqrt(n) + 1) / sqrt(6)
  double chain_reference = 0;    // n (sqrt(n) + 1.5) / sqrt(6), measured chain scheme growth
  double folklore_estimate = 0;  // 3/4 n sqrt(n)
};

BoundsReport asymptotic_estimates(int n);

// Aligned "key  value" lines.
std::string format_bounds_text(const BoundsReport& r);
// Header line plus one row, CRLF line ends.
std::string format_bounds_csv(const BoundsReport& r);

}  // namespace cyclabel
