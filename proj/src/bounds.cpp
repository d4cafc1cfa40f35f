#include "cyclabel/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace cyclabel {

namespace {

void require_n(int n, const char* what) {
  if (n < 3) throw std::invalid_argument(std::string(what) + " needs n >= 3, got " + std::to_string(n));
}

bool strict_triangle(int a, int b, int c) { return a < b + c && b < a + c && c < a + b; }

}  // namespace

std::int64_t lambda_directed_formula(int n) {
  require_n(n, "lambda_directed_formula");
  if (n == 3) return 3;
  const std::int64_t m = n;
  return (m * m + 2 * m + m % 2) / 4;
}

std::int64_t triangle_count_cycle(int i) {
  require_n(i, "triangle_count_cycle");
  // Three nodes cut the cycle into arcs a + b + c = i. The triple is a
  // triangle exactly when every arc is shorter than i/2: a longer arc a makes
  // its distance i - a = b + c. A (start node, composition) pair names each
  // triple three times, once per starting node.
  std::int64_t ordered = 0;
  for (int a = 1; a < i; ++a) {
    for (int b = 1; a + b < i; ++b) {
      const int c = i - a - b;
      if (2 * a < i && 2 * b < i && 2 * c < i) ++ordered;
    }
  }
  return ordered * i / 3;
}

std::int64_t triangle_count_brute(int i) {
  require_n(i, "triangle_count_brute");
  auto dist = [i](int p, int q) {
    const int d = q - p;
    return std::min(d, i - d);
  };
  std::int64_t count = 0;
  for (int p = 0; p < i; ++p) {
    for (int q = p + 1; q < i; ++q) {
      for (int r = q + 1; r < i; ++r) {
        if (strict_triangle(dist(p, q), dist(q, r), dist(p, r))) ++count;
      }
    }
  }
  return count;
}

std::int64_t triangle_count_closed(int i) {
  require_n(i, "triangle_count_closed");
  // Compositions of i into three parts, each at most h = floor((i-1)/2):
  // all C(i-1, 2) compositions minus those with one part above h (two parts
  // above h would exceed i).
  auto pairs = [](std::int64_t m) { return m >= 2 ? m * (m - 1) / 2 : 0; };
  const std::int64_t h = (i - 1) / 2;
  const std::int64_t ordered = pairs(i - 1) - 3 * pairs(i - 1 - h);
  return ordered * i / 3;
}

std::int64_t triangle_lower_bound(int n) {
  require_n(n, "triangle_lower_bound");
  __int128 total = 0;
  for (int i = 3; i <= n; ++i) total += triangle_count_closed(i);
  std::int64_t lo = 3, hi = 3;
  auto choose3 = [](std::int64_t l) { return static_cast<__int128>(l) * (l - 1) * (l - 2) / 6; };
  while (choose3(hi) < total) hi *= 2;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (choose3(mid) >= total) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

BoundsReport asymptotic_estimates(int n) {
  require_n(n, "asymptotic_estimates");
  BoundsReport r;
  r.n = n;
  r.lambda_directed = lambda_directed_formula(n);
  r.triangle_lb = triangle_lower_bound(n);
  const double x = n;
  const double root = std::sqrt(x);
  const double s6 = std::sqrt(6.0);
  r.chain_estimate = x * root / s6;
  r.corridor_low = r.chain_estimate;
  r.corridor_high = x * (root + 1) / s6;
  r.chain_reference = x * (root + 1.5) / s6;
  r.folklore_estimate = 0.75 * x * root;
  return r;
}

std::string format_bounds_text(const BoundsReport& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "n                  %d\n"
                "lambda_directed    %lld\n"
                "triangle_lb        %lld\n"
                "chain_estimate     %.3f\n"
                "corridor           %.3f %.3f\n"
                "chain_reference    %.3f\n"
                "folklore_estimate  %.3f\n",
                r.n, static_cast<long long>(r.lambda_directed), static_cast<long long>(r.triangle_lb), r.chain_estimate,
                r.corridor_low, r.corridor_high, r.chain_reference, r.folklore_estimate);
  return buf;
}

std::string format_bounds_csv(const BoundsReport& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "n,lambda_directed,triangle_lb,chain_estimate,corridor_low,corridor_high,chain_reference,folklore_estimate\r\n"
                "%d,%lld,%lld,%.6f,%.6f,%.6f,%.6f,%.6f\r\n",
                r.n, static_cast<long long>(r.lambda_directed), static_cast<long long>(r.triangle_lb), r.chain_estimate,
                r.corridor_low, r.corridor_high, r.chain_reference, r.folklore_estimate);
  return buf;
}

}  // namespace cyclabel
