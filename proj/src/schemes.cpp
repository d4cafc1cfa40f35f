#include "cyclabel/schemes.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace cyclabel {

namespace {

void require_n(int n) {
  if (n < 3) throw std::invalid_argument("n must be at least 3, got " + std::to_string(n));
  if (n > kMaxCycleLength) throw std::invalid_argument("n exceeds the supported maximum");
}

}  // namespace

FamilyLabeling directed_labeling(int n) {
  require_n(n);
  Label next = 0;
  // Labels each cycle may still lend: its own labels, in increasing id order.
  std::vector<std::vector<Label>> lendable(static_cast<std::size_t>(n) + 1);
  std::vector<std::size_t> lent(static_cast<std::size_t>(n) + 1, 0);
  std::vector<CycleLabeling> cycles;
  cycles.reserve(static_cast<std::size_t>(n) - 2);

  for (int i = n; i >= 3; --i) {
    std::vector<Label> seq;
    seq.reserve(static_cast<std::size_t>(i));
    for (int j = n; j > i && static_cast<int>(seq.size()) < i; --j) {
      auto& pool = lendable[static_cast<std::size_t>(j)];
      auto& used = lent[static_cast<std::size_t>(j)];
      if (used < pool.size()) seq.push_back(pool[used++]);
    }
    const std::size_t borrowed = seq.size();
    while (static_cast<int>(seq.size()) < i) seq.push_back(next++);
    lendable[static_cast<std::size_t>(i)].assign(seq.begin() + static_cast<std::ptrdiff_t>(borrowed), seq.end());
    cycles.emplace_back(std::move(seq));
  }
  return FamilyLabeling(std::move(cycles), true);
}

FolkloreLabel parse_folklore_label(std::string_view text) {
  FolkloreLabel out;
  int* fields[3] = {&out.b, &out.d, &out.m};
  std::size_t pos = 0;
  for (int f = 0; f < 3; ++f) {
    const std::size_t end = f < 2 ? text.find(',', pos) : text.size();
    if (end == std::string_view::npos) throw std::invalid_argument("expected b,d,m but got '" + std::string(text) + "'");
    const std::string_view token = text.substr(pos, end - pos);
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), *fields[f]);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size() || *fields[f] < 0) {
      throw std::invalid_argument("expected b,d,m with non-negative integers but got '" + std::string(text) + "'");
    }
    pos = end + 1;
  }
  if (out.b != 1 && out.b != 2) throw std::invalid_argument("b must be 1 or 2 in '" + std::string(text) + "'");
  return out;
}

std::string to_string(const FolkloreLabel& label) {
  return std::to_string(label.b) + "," + std::to_string(label.d) + "," + std::to_string(label.m);
}

int folklore_modulus(int n) {
  int s = 0;
  while (static_cast<long long>(s) * s < n) ++s;
  return s;
}

FolkloreLabeling folklore_labeling(int n) {
  require_n(n);
  const int s = folklore_modulus(n);
  FolkloreLabeling out;
  // Ids in order of first use, looked up through a dense (b, d, m) grid.
  const int codes = std::max(s, n / s + 1);
  const int depth = n / 2 + 1;
  constexpr Label kUnset = ~Label{0};
  std::vector<Label> ids(2 * static_cast<std::size_t>(depth) * static_cast<std::size_t>(codes), kUnset);
  auto id_of = [&](const FolkloreLabel& t) {
    Label& id = ids[(static_cast<std::size_t>(t.b - 1) * static_cast<std::size_t>(depth) + static_cast<std::size_t>(t.d)) *
                        static_cast<std::size_t>(codes) +
                    static_cast<std::size_t>(t.m)];
    if (id == kUnset) {
      id = static_cast<Label>(out.triples.size());
      out.triples.push_back(t);
    }
    return id;
  };

  std::vector<CycleLabeling> cycles;
  for (int i = n; i >= 3; --i) {
    const int half = (i + 1) / 2;
    std::vector<Label> seq(static_cast<std::size_t>(i));
    for (int p = 0; p < i; ++p) {
      seq[static_cast<std::size_t>(p)] = p < half ? id_of({1, p, i % s}) : id_of({2, i - 1 - p, i / s});
    }
    cycles.emplace_back(std::move(seq));
  }
  out.family = FamilyLabeling(std::move(cycles));
  return out;
}

std::size_t folklore_label_count(int n) {
  require_n(n);
  const int s = folklore_modulus(n);
  // For each code m the widest hosting cycle decides how many d values occur.
  std::vector<int> first(static_cast<std::size_t>(s), 0);
  std::vector<int> second(static_cast<std::size_t>(n / s) + 1, 0);
  for (int i = 3; i <= n; ++i) {
    first[static_cast<std::size_t>(i % s)] = std::max(first[static_cast<std::size_t>(i % s)], (i + 1) / 2);
    second[static_cast<std::size_t>(i / s)] = std::max(second[static_cast<std::size_t>(i / s)], i / 2);
  }
  std::size_t total = 0;
  for (int c : first) total += static_cast<std::size_t>(c);
  for (int c : second) total += static_cast<std::size_t>(c);
  return total;
}

namespace {

bool hosts(int i, int s, const FolkloreLabel& l) {
  if (l.b == 1) return i % s == l.m && l.d < (i + 1) / 2;
  return i / s == l.m && l.d < i / 2;
}

}  // namespace

int decode_folklore(int n, const FolkloreLabel& l1, const FolkloreLabel& l2) {
  require_n(n);
  const int s = folklore_modulus(n);
  if (l1.b == l2.b) {
    // Smallest length whose code is m and whose half-path reaches both d.
    const long long d = std::max(l1.d, l2.d);
    long long i = -1;
    if (l1.m == l2.m && l1.b == 1 && l1.m >= 0 && l1.m < s) {
      i = std::max(3LL, 2 * d + 1);
      i += ((l1.m - i) % s + s) % s;
    } else if (l1.m == l2.m && l1.b == 2 && l1.m >= 0) {
      i = std::max({3LL, 2 * d + 2, static_cast<long long>(l1.m) * s});
      if (i / s != l1.m) i = -1;
    }
    if (i >= 3 && i <= n && hosts(static_cast<int>(i), s, l1) && hosts(static_cast<int>(i), s, l2)) {
      return l1.d > l2.d ? l1.d - l2.d : l2.d - l1.d;
    }
    throw std::domain_error("labels " + to_string(l1) + " and " + to_string(l2) + " never share a cycle");
  }
  const FolkloreLabel& p1 = l1.b == 1 ? l1 : l2;
  const FolkloreLabel& p2 = l1.b == 1 ? l2 : l1;
  const long long i = static_cast<long long>(p2.m) * s + p1.m;
  if (p1.m >= s || i < 3 || i > n || !hosts(static_cast<int>(i), s, p1) || !hosts(static_cast<int>(i), s, p2)) {
    throw std::domain_error("labels " + to_string(l1) + " and " + to_string(l2) + " never share a cycle");
  }
  const int around = p1.d + p2.d + 1;
  return std::min(around, static_cast<int>(i) - around);
}

}  // namespace cyclabel
