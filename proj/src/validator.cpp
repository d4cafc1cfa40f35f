#include "cyclabel/validator.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>

namespace cyclabel {

namespace detail {

// A family cut into runs: maximal stretches of a cycle whose labels are
// consecutive integers, read in cycle order without wrapping past position
// 0. The label line is then cut at every run end, so each segment of it lies
// wholly inside or wholly outside every run. Comparing cycles segment by
// segment costs the same as label by label on scattered ids and far less on
// scheme outputs, which are built from ranges of ids.
struct RunIndex {
  struct Run {
    int cycle;
    int pos;      // position of `first`
    Label first;  // label at pos + i is first + dir * i
    int length;
    int dir;      // +1 or -1
    std::int64_t lowest() const { return dir > 0 ? first : static_cast<std::int64_t>(first) - (length - 1); }
    int position_of(std::int64_t label) const {
      return pos + static_cast<int>((label - static_cast<std::int64_t>(first)) * dir);
    }
  };

  FamilyLabeling family;
  std::vector<Run> runs;                // by cycle, then by position
  std::vector<std::size_t> cycle_runs;  // runs of cycle c: [cycle_runs[c], cycle_runs[c + 1])
  std::vector<std::int64_t> cut;        // segment s holds labels [cut[s], cut[s + 1])
  std::vector<std::size_t> seg_begin;   // runs covering s: member[seg_begin[s] .. seg_begin[s + 1]), by cycle
  std::vector<std::uint32_t> member;
  std::vector<std::pair<std::size_t, std::size_t>> run_segments;  // [first, last) segment of each run
  std::size_t label_count = 0;

  explicit RunIndex(FamilyLabeling f) : family(std::move(f)) {
    const auto cycles = family.cycles();
    cycle_runs.assign(cycles.size() + 1, 0);
    for (std::size_t c = 0; c < cycles.size(); ++c) {
      const auto& cyc = cycles[c];
      const int j = cyc.length();
      for (int p = 0; p < j;) {
        const int begin = p;
        int dir = 0;
        while (p + 1 < j) {
          const std::int64_t step = static_cast<std::int64_t>(cyc[p + 1]) - cyc[p];
          if (dir == 0 && (step == 1 || step == -1)) {
            dir = static_cast<int>(step);
          } else if (dir == 0 || step != dir) {
            break;
          }
          ++p;
        }
        ++p;
        runs.push_back({static_cast<int>(c), begin, cyc[begin], p - begin, dir == 0 ? 1 : dir});
      }
      cycle_runs[c + 1] = runs.size();
    }

    std::int64_t top = 0;
    for (const auto& r : runs) top = std::max(top, r.lowest() + r.length);
    run_segments.resize(runs.size());
    if (static_cast<std::size_t>(top) <= 4 * runs.size() + 1024) {
      // Dense ids: rank the cut points through a table instead of sorting.
      std::vector<std::uint32_t> rank(static_cast<std::size_t>(top) + 1, 0);
      for (const auto& r : runs) {
        rank[static_cast<std::size_t>(r.lowest())] = 1;
        rank[static_cast<std::size_t>(r.lowest() + r.length)] = 1;
      }
      std::uint32_t next = 0;
      for (std::size_t v = 0; v < rank.size(); ++v) {
        if (rank[v] == 0) continue;
        cut.push_back(static_cast<std::int64_t>(v));
        rank[v] = next++;
      }
      for (std::size_t r = 0; r < runs.size(); ++r) {
        run_segments[r] = {rank[static_cast<std::size_t>(runs[r].lowest())],
                           rank[static_cast<std::size_t>(runs[r].lowest() + runs[r].length)]};
      }
    } else {
      cut.reserve(2 * runs.size());
      for (const auto& r : runs) {
        cut.push_back(r.lowest());
        cut.push_back(r.lowest() + r.length);
      }
      std::sort(cut.begin(), cut.end());
      cut.erase(std::unique(cut.begin(), cut.end()), cut.end());
      for (std::size_t r = 0; r < runs.size(); ++r) {
        const auto lo = std::lower_bound(cut.begin(), cut.end(), runs[r].lowest());
        const auto hi = std::lower_bound(lo, cut.end(), runs[r].lowest() + runs[r].length);
        run_segments[r] = {static_cast<std::size_t>(lo - cut.begin()), static_cast<std::size_t>(hi - cut.begin())};
      }
    }

    const std::size_t segments = cut.empty() ? 0 : cut.size() - 1;
    seg_begin.assign(segments + 1, 0);
    for (const auto& [lo, hi] : run_segments) {
      for (std::size_t seg = lo; seg < hi; ++seg) ++seg_begin[seg + 1];
    }
    for (std::size_t seg = 0; seg < segments; ++seg) {
      if (seg_begin[seg + 1] > 0) label_count += static_cast<std::size_t>(cut[seg + 1] - cut[seg]);
    }
    std::partial_sum(seg_begin.begin(), seg_begin.end(), seg_begin.begin());
    member.resize(seg_begin.back());
    std::vector<std::size_t> fill(seg_begin.begin(), seg_begin.end() - 1);
    for (std::size_t r = 0; r < runs.size(); ++r) {
      for (std::size_t seg = run_segments[r].first; seg < run_segments[r].second; ++seg) {
        member[fill[seg]++] = static_cast<std::uint32_t>(r);
      }
    }
  }

  // The runs holding `label`, ordered by cycle; empty when no cycle has it.
  std::pair<std::size_t, std::size_t> members_of(std::int64_t label) const {
    const auto it = std::upper_bound(cut.begin(), cut.end(), label);
    if (it == cut.begin() || it == cut.end()) return {0, 0};
    const auto seg = static_cast<std::size_t>(it - cut.begin()) - 1;
    return {seg_begin[seg], seg_begin[seg + 1]};
  }
};

}  // namespace detail

namespace {

struct PairCheck {
  bool consistent = true;
  bool single_arc = true;
};

// Common labels of cycles A and B as maximal pieces: `length` labels from
// position `a` on in A, the first of them at position `b` in B, and B moving
// by `slope` per step forward in A.
struct Piece {
  int a;
  int b;
  int length;
  int slope;
};

// Pieces ordered by position in A. Distances agree iff the common labels sit
// on a path of at most half of each cycle and that path maps isometrically
// onto B.
PairCheck check_common(int len_a, int len_b, std::span<const Piece> pieces, bool directed) {
  const std::size_t n = pieces.size();
  int k = 0;
  for (const auto& pc : pieces) k += pc.length;
  if (k <= 1) return {};
  if (directed) return {false, false};  // d(u,v) + d(v,u) is the cycle length

  auto last = [&](std::size_t t) { return pieces[t].a + pieces[t].length - 1; };
  // The covering path starts right after the widest gap between consecutive
  // common labels of A; one unwrapped stretch needs no search.
  std::size_t start = 0;
  int span = last(n - 1) - pieces[0].a;
  if (span != k - 1) {
    std::size_t widest = 0;
    int widest_gap = -1;
    for (std::size_t t = 0; t < n; ++t) {
      const int gap = t + 1 < n ? pieces[t + 1].a - last(t) : pieces[0].a + len_a - last(t);
      if (gap > widest_gap) {
        widest_gap = gap;
        widest = t;
      }
    }
    start = (widest + 1) % n;
    span = len_a - widest_gap;
  }
  if (span > len_a / 2 || span > len_b / 2) return {false, false};

  const int p0 = pieces[start].a;
  const int q0 = pieces[start].b;
  // Everything after the widest gap lies within `span` <= len_b / 2 of p0.
  auto offset = [&](int p) { return p >= p0 ? p - p0 : p - p0 + len_a; };
  auto forward = [&](int x) { return q0 + x >= len_b ? q0 + x - len_b : q0 + x; };
  auto backward = [&](int x) { return q0 - x < 0 ? q0 - x + len_b : q0 - x; };

  bool ascending = true;
  if (pieces[start].length >= 2) {
    ascending = pieces[start].slope > 0;
  } else {
    const auto& next = pieces[(start + 1) % n];
    const int x = offset(next.a);
    if (next.b == forward(x)) {
      ascending = true;
    } else if (next.b == backward(x)) {
      ascending = false;
    } else {
      return {false, false};
    }
  }
  for (std::size_t s = 0, t = start; s < n; ++s, t = t + 1 == n ? 0 : t + 1) {
    const auto& pc = pieces[t];
    const int x = offset(pc.a);
    if (pc.b != (ascending ? forward(x) : backward(x))) return {false, false};
    if (pc.length >= 2 && pc.slope != (ascending ? 1 : -1)) return {false, false};
  }
  return {true, span == k - 1};
}

// Visits every unordered pair of cycles that shares at least two labels.
// `visit(a, b, check)` returns false to stop early.
template <class Visit>
void scan_cycle_pairs(const detail::RunIndex& index, Visit&& visit) {
  const auto cycles = index.family.cycles();
  const bool directed = index.family.directed();
  // bucket[b]: the pieces A shares with B, ordered by position in A. Buckets
  // keep their capacity between cycles.
  std::vector<std::vector<Piece>> bucket(cycles.size());
  std::vector<int> touched;
  for (std::size_t a = 0; a < cycles.size(); ++a) {
    touched.clear();
    for (std::size_t r = index.cycle_runs[a]; r < index.cycle_runs[a + 1]; ++r) {
      const auto& run = index.runs[r];
      const auto [lo, hi] = index.run_segments[r];
      // Walk the segments in increasing position along A.
      for (std::size_t i = 0; i < hi - lo; ++i) {
        const std::size_t seg = run.dir > 0 ? lo + i : hi - 1 - i;
        const std::size_t begin = index.seg_begin[seg];
        const std::size_t end = index.seg_begin[seg + 1];
        // This run's own entry; members are ordered by cycle.
        const auto own = std::lower_bound(index.member.begin() + static_cast<std::ptrdiff_t>(begin),
                                          index.member.begin() + static_cast<std::ptrdiff_t>(end), a,
                                          [&](std::uint32_t m, std::size_t c) {
                                            return static_cast<std::size_t>(index.runs[m].cycle) < c;
                                          });
        const std::int64_t first_label = run.dir > 0 ? index.cut[seg] : index.cut[seg + 1] - 1;
        const int length = static_cast<int>(index.cut[seg + 1] - index.cut[seg]);
        const int pa = run.position_of(first_label);
        for (auto it = own + 1; it != index.member.begin() + static_cast<std::ptrdiff_t>(end); ++it) {
          const auto& other = index.runs[*it];
          auto& list = bucket[static_cast<std::size_t>(other.cycle)];
          if (list.empty()) touched.push_back(other.cycle);
          list.push_back({pa, other.position_of(first_label), length, run.dir * other.dir});
        }
      }
    }
    bool keep_going = true;
    for (int b : touched) {
      auto& list = bucket[static_cast<std::size_t>(b)];
      if (keep_going && (list.size() >= 2 || list.front().length >= 2)) {
        keep_going = visit(static_cast<int>(a), b,
                           check_common(cycles[a].length(), cycles[static_cast<std::size_t>(b)].length(), list, directed));
      }
      list.clear();
    }
    if (!keep_going) return;
  }
}

}  // namespace

DistanceOracle::DistanceOracle(const FamilyLabeling& family) : index_(std::make_shared<const detail::RunIndex>(family)) {}

DistanceOracle::DistanceOracle(std::shared_ptr<const detail::RunIndex> index) : index_(std::move(index)) {}

std::optional<int> DistanceOracle::distance(Label u, Label v) const {
  const auto& idx = *index_;
  auto [ua, ub] = idx.members_of(u);
  auto [va, vb] = idx.members_of(v);
  while (ua < ub && va < vb) {
    const auto& ru = idx.runs[idx.member[ua]];
    const auto& rv = idx.runs[idx.member[va]];
    if (ru.cycle < rv.cycle) {
      ++ua;
    } else if (rv.cycle < ru.cycle) {
      ++va;
    } else {
      const auto& c = idx.family.cycles()[static_cast<std::size_t>(ru.cycle)];
      return c.distance_between(ru.position_of(u), rv.position_of(v), idx.family.directed());
    }
  }
  return std::nullopt;
}

PairDistanceTable DistanceOracle::table() const {
  PairDistanceTable table(index_->family.directed());
  for (const auto& c : index_->family.cycles()) {
    const auto t = pair_distances(c, index_->family.directed());
    for (const auto& [pair, d] : t.sorted_entries()) table.insert(pair.first, pair.second, d);
  }
  return table;
}

ValidationReport validate_exhaustive(const FamilyLabeling& family) {
  ValidationReport report;
  report.label_count = family.label_count();
  const bool directed = family.directed();
  // pair key -> (distance, length of the cycle that defined it)
  std::unordered_map<std::uint64_t, std::pair<int, int>> seen;
  for (const auto& c : family.cycles()) {
    const int j = c.length();
    std::vector<std::pair<std::pair<Label, Label>, std::pair<int, int>>> pairs;
    pairs.reserve(static_cast<std::size_t>(j) * static_cast<std::size_t>(j));
    for (int p = 0; p < j; ++p) {
      for (int q = 0; q < j; ++q) {
        if (p == q || (!directed && c[p] > c[q])) continue;
        pairs.push_back({{c[p], c[q]}, {p, q}});
      }
    }
    std::sort(pairs.begin(), pairs.end());
    for (const auto& [labels, positions] : pairs) {
      const int d = c.distance_between(positions.first, positions.second, directed);
      const std::uint64_t key = (static_cast<std::uint64_t>(labels.first) << 32) | labels.second;
      const auto [it, inserted] = seen.try_emplace(key, d, j);
      if (!inserted && it->second.first != d) {
        report.conflict = Conflict{labels.first, labels.second, it->second.second, it->second.first, j, d};
        return report;
      }
    }
  }
  report.valid = true;
  report.oracle.emplace(family);
  report.arc_labeling = is_arc_labeling(family);
  return report;
}

ValidationReport validate(const FamilyLabeling& family) {
  auto index = std::make_shared<const detail::RunIndex>(family);
  bool consistent = true;
  bool arcs = true;
  scan_cycle_pairs(*index, [&](int, int, const PairCheck& check) {
    consistent = consistent && check.consistent;
    arcs = arcs && check.single_arc;
    return consistent;
  });
  if (!consistent) return validate_exhaustive(family);

  ValidationReport report;
  report.valid = true;
  report.label_count = index->label_count;
  report.arc_labeling = arcs;
  report.oracle.emplace(std::move(index));
  return report;
}

Triangle make_triangle(Label x, Label y, Label z) {
  if (x > y) std::swap(x, y);
  if (y > z) std::swap(y, z);
  if (x > y) std::swap(x, y);
  return {x, y, z};
}

std::vector<Triangle> triangles_of(const CycleLabeling& c) {
  std::vector<Triangle> out;
  const int j = c.length();
  for (int p = 0; p < j; ++p) {
    for (int q = p + 1; q < j; ++q) {
      const int dpq = cycle_distance(j, p, q);
      for (int r = q + 1; r < j; ++r) {
        const int dpr = cycle_distance(j, p, r);
        const int dqr = cycle_distance(j, q, r);
        if (dpq < dpr + dqr && dpr < dpq + dqr && dqr < dpq + dpr) out.push_back(make_triangle(c[p], c[q], c[r]));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<TriangleDuplicate> check_triangle_uniqueness(const FamilyLabeling& family) {
  std::vector<std::pair<Triangle, int>> all;
  for (const auto& c : family.cycles()) {
    for (const auto& t : triangles_of(c)) all.emplace_back(t, c.length());
  }
  std::sort(all.begin(), all.end());
  for (std::size_t i = 1; i < all.size(); ++i) {
    if (all[i].first == all[i - 1].first) {
      return TriangleDuplicate{all[i].first, std::max(all[i - 1].second, all[i].second),
                               std::min(all[i - 1].second, all[i].second)};
    }
  }
  return std::nullopt;
}

Intersection intersection(const CycleLabeling& c1, const CycleLabeling& c2) {
  const int j1 = c1.length();
  const int j2 = c2.length();
  std::map<Label, int> pos2;
  for (int q = 0; q < j2; ++q) pos2.emplace(c2[q], q);
  std::vector<int> in2(static_cast<std::size_t>(j1), -1);
  Intersection out;
  for (int p = 0; p < j1; ++p) {
    if (const auto it = pos2.find(c1[p]); it != pos2.end()) {
      in2[static_cast<std::size_t>(p)] = it->second;
      ++out.common_labels;
    }
  }
  if (out.common_labels == 0) return out;

  // linked[p]: c1[p] and c1[p+1] are both common and adjacent in c2.
  auto linked = [&](int p) {
    const int a = in2[static_cast<std::size_t>(p)];
    const int b = in2[static_cast<std::size_t>((p + 1) % j1)];
    return a >= 0 && b >= 0 && cycle_distance(j2, a, b) == 1;
  };
  int start = -1;
  for (int p = 0; p < j1; ++p) {
    if (in2[static_cast<std::size_t>(p)] >= 0 && !linked((p - 1 + j1) % j1)) {
      start = p;
      break;
    }
  }
  if (start < 0) start = 0;  // every common label is linked all the way round

  std::vector<std::pair<int, ArcSeq>> runs;
  int p = start;
  int visited = 0;
  while (visited < j1) {
    if (in2[static_cast<std::size_t>(p)] < 0) {
      p = (p + 1) % j1;
      ++visited;
      continue;
    }
    const int run_start = p;
    ArcSeq run{c1[p]};
    while (visited + 1 < j1 && linked(p)) {
      p = (p + 1) % j1;
      ++visited;
      run.push_back(c1[p]);
    }
    runs.emplace_back(run_start, std::move(run));
    p = (p + 1) % j1;
    ++visited;
  }
  std::sort(runs.begin(), runs.end());
  for (auto& [s, run] : runs) out.arcs.push_back(std::move(run));
  return out;
}

namespace {

// Number of edges on the shortest arc of the cycle that covers all positions.
int covering_span(int length, std::vector<int> positions) {
  if (positions.size() <= 1) return 0;
  std::sort(positions.begin(), positions.end());
  int widest = positions.front() + length - positions.back();
  for (std::size_t t = 1; t < positions.size(); ++t) widest = std::max(widest, positions[t] - positions[t - 1]);
  return length - widest;
}

}  // namespace

bool check_diameter_property(const CycleLabeling& c1, const CycleLabeling& c2) {
  std::vector<int> p1;
  std::vector<int> p2;
  for (int p = 0; p < c1.length(); ++p) {
    if (const auto q = c2.position_of(c1[p])) {
      p1.push_back(p);
      p2.push_back(*q);
    }
  }
  return covering_span(c1.length(), p1) <= c1.length() / 2 && covering_span(c2.length(), p2) <= c2.length() / 2;
}

bool is_arc_labeling(const FamilyLabeling& family) {
  const detail::RunIndex index(family);
  bool arcs = true;
  scan_cycle_pairs(index, [&](int, int, const PairCheck& check) {
    arcs = arcs && check.single_arc;
    return arcs;
  });
  return arcs;
}

}  // namespace cyclabel
