#include "cyclabel/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "cyclabel/chain.hpp"

namespace cyclabel {

namespace {

using Mask = std::uint64_t;
using Clock = std::chrono::steady_clock;

constexpr int kFresh = -1;
constexpr int kFreshKey = 1 << 20;  // fresh labels compare above every existing label

Mask below(int k) { return k >= 64 ? ~Mask{0} : (Mask{1} << k) - 1; }

int ring_distance(int j, int p, int q) {
  const int d = p > q ? p - q : q - p;
  return std::min(d, j - d);
}

// Known distances among labels 0..count-1, as bitmasks.
// eq(u, d) holds the labels v with D(u, v) = d; defined(u) those with any D(u, v).
struct Tables {
  int count = 0;
  int stride = 0;  // max distance + 1
  std::vector<Mask> defined;
  std::vector<Mask> eq;

  Tables() = default;
  explicit Tables(int max_distance) : stride(max_distance + 1), defined(64, 0), eq(64 * static_cast<std::size_t>(max_distance + 1), 0) {}

  Mask allowed(int u, int d) const { return ~defined[static_cast<std::size_t>(u)] | eq[static_cast<std::size_t>(u * stride + d)]; }

  void set(int u, int v, int d) {
    defined[static_cast<std::size_t>(u)] |= Mask{1} << v;
    defined[static_cast<std::size_t>(v)] |= Mask{1} << u;
    eq[static_cast<std::size_t>(u * stride + d)] |= Mask{1} << v;
    eq[static_cast<std::size_t>(v * stride + d)] |= Mask{1} << u;
  }

  void copy_from(const Tables& o) {
    count = o.count;
    stride = o.stride;
    if (defined.size() != o.defined.size()) {
      defined.assign(o.defined.size(), 0);
      eq.assign(o.eq.size(), 0);
    }
    std::copy_n(o.defined.begin(), count, defined.begin());
    std::copy_n(o.eq.begin(), static_cast<std::size_t>(count * stride), eq.begin());
  }
};

// A cycle of length j: labels[p] is an existing label index or kFresh.
struct Placement {
  std::vector<int> labels;
  int fresh = 0;
};

int key_of(int label) { return label == kFresh ? kFreshKey : label; }

// Enumerates canonical placements of C_j: position 0 holds the least existing
// label, every other existing label is larger, and the sequence read from
// position 1 is not larger than the one read backwards.
class PlacementEnumerator {
 public:
  PlacementEnumerator(const Tables& t, int j, int fresh_limit) : t_(t), j_(j), fresh_limit_(fresh_limit) {
    order_.push_back(0);
    for (int k = 1; static_cast<int>(order_.size()) < j; ++k) {
      order_.push_back(k);
      if (j - k != k) order_.push_back(j - k);
    }
    assign_.assign(static_cast<std::size_t>(j), kFresh);
    cand_.assign(static_cast<std::size_t>(j) * static_cast<std::size_t>(j), 0);
  }

  std::vector<Placement> run() {
    out_.clear();
    if (fresh_limit_ >= j_) {
      Placement all;
      all.labels.assign(static_cast<std::size_t>(j_), kFresh);
      all.fresh = j_;
      out_.push_back(std::move(all));
    }
    const Mask all_labels = below(t_.count);
    for (int m = 0; m < t_.count; ++m) {
      assign_[0] = m;
      Mask* row = &cand_[0];
      const Mask above = all_labels & ~below(m + 1);
      for (int p = 1; p < j_; ++p) row[p] = above & t_.allowed(m, ring_distance(j_, 0, p));
      descend(1, 0, false);
    }
    std::stable_sort(out_.begin(), out_.end(), [](const Placement& a, const Placement& b) { return a.fresh < b.fresh; });
    return std::move(out_);
  }

 private:
  // cand_ row k-1 holds the candidate masks after the first k order positions.
  void descend(int k, int fresh, bool decided) {
    if (k == j_) {
      out_.push_back(Placement{assign_, fresh});
      return;
    }
    const Mask* row = &cand_[static_cast<std::size_t>(k - 1) * static_cast<std::size_t>(j_)];
    const int budget = fresh_limit_ - fresh;
    int forced = 0;
    for (int t = k; t < j_; ++t) {
      if (row[order_[static_cast<std::size_t>(t)]] == 0 && ++forced > budget) return;
    }
    const int p = order_[static_cast<std::size_t>(k)];
    const bool closes_pair = p > j_ / 2;  // its mirror j - p is already filled
    const int mirror = j_ - p;

    auto accept = [&](int label) -> int {  // -1 prune, 0 undecided, 1 decided
      if (decided || !closes_pair) return decided ? 1 : 0;
      const int a = key_of(assign_[static_cast<std::size_t>(mirror)]);
      const int b = key_of(label);
      if (a > b) return -1;
      return a < b ? 1 : 0;
    };

    Mask options = row[p];
    while (options) {
      const int u = std::countr_zero(options);
      options &= options - 1;
      const int verdict = accept(u);
      if (verdict < 0) continue;
      assign_[static_cast<std::size_t>(p)] = u;
      Mask* next = &cand_[static_cast<std::size_t>(k) * static_cast<std::size_t>(j_)];
      const Mask bit = Mask{1} << u;
      for (int t = k + 1; t < j_; ++t) {
        const int q = order_[static_cast<std::size_t>(t)];
        next[q] = row[q] & ~bit & t_.allowed(u, ring_distance(j_, p, q));
      }
      descend(k + 1, fresh, verdict > 0);
    }
    if (budget > 0) {
      const int verdict = accept(kFresh);
      if (verdict >= 0) {
        assign_[static_cast<std::size_t>(p)] = kFresh;
        Mask* next = &cand_[static_cast<std::size_t>(k) * static_cast<std::size_t>(j_)];
        for (int t = k + 1; t < j_; ++t) {
          const int q = order_[static_cast<std::size_t>(t)];
          next[q] = row[q];
        }
        descend(k + 1, fresh + 1, verdict > 0);
      }
    }
    assign_[static_cast<std::size_t>(p)] = kFresh;
  }

  const Tables& t_;
  int j_;
  int fresh_limit_;
  std::vector<int> order_;
  std::vector<int> assign_;
  std::vector<Mask> cand_;
  std::vector<Placement> out_;
};

// Writes the placement into `t` (fresh labels get the next indices) and
// returns the concrete label sequence.
std::vector<int> apply(Tables& t, const Placement& pl, int j) {
  std::vector<int> seq(pl.labels);
  for (int& l : seq) {
    if (l != kFresh) continue;
    l = t.count++;
    // Rows past the parent's count may hold data from an earlier sibling.
    t.defined[static_cast<std::size_t>(l)] = 0;
    std::fill_n(t.eq.begin() + static_cast<std::ptrdiff_t>(l) * t.stride, t.stride, Mask{0});
  }
  for (int p = 0; p < j; ++p) {
    for (int q = p + 1; q < j; ++q) {
      const int u = seq[static_cast<std::size_t>(p)];
      const int v = seq[static_cast<std::size_t>(q)];
      if (!(t.defined[static_cast<std::size_t>(u)] >> v & 1)) t.set(u, v, ring_distance(j, p, q));
    }
  }
  return seq;
}

// Canonical key of a placement with labels mapped through `perm`.
std::vector<int> canonical_key(const std::vector<int>& labels, const std::vector<int>& perm) {
  const int j = static_cast<int>(labels.size());
  std::vector<int> mapped(labels.size());
  int start = -1;
  for (int p = 0; p < j; ++p) {
    const int l = labels[static_cast<std::size_t>(p)];
    mapped[static_cast<std::size_t>(p)] = l == kFresh ? kFreshKey : perm[static_cast<std::size_t>(l)];
    if (l != kFresh && (start < 0 || mapped[static_cast<std::size_t>(p)] < mapped[static_cast<std::size_t>(start)])) start = p;
  }
  if (start < 0) return mapped;
  std::vector<int> fwd(labels.size()), bwd(labels.size());
  for (int t = 0; t < j; ++t) {
    fwd[static_cast<std::size_t>(t)] = mapped[static_cast<std::size_t>((start + t) % j)];
    bwd[static_cast<std::size_t>(t)] = mapped[static_cast<std::size_t>(((start - t) % j + j) % j)];
  }
  return std::min(fwd, bwd);
}

// Keeps one placement per orbit of the dihedral group of the first cycle,
// whose labels 0..len-1 sit at positions 0..len-1.
std::vector<Placement> dedupe_by_first_cycle(std::vector<Placement> pls, int len) {
  std::vector<std::vector<int>> perms;
  for (int r = 0; r < len; ++r) {
    for (int s : {1, -1}) {
      std::vector<int> perm(static_cast<std::size_t>(len));
      for (int u = 0; u < len; ++u) perm[static_cast<std::size_t>(u)] = (((s * u + r) % len) + len) % len;
      perms.push_back(std::move(perm));
    }
  }
  std::vector<Placement> out;
  for (auto& pl : pls) {
    const std::vector<int> own = canonical_key(pl.labels, perms[0]);
    bool least = true;
    for (std::size_t g = 1; g < perms.size() && least; ++g) least = !(canonical_key(pl.labels, perms[g]) < own);
    if (least) out.push_back(std::move(pl));
  }
  return out;
}

struct Shared {
  std::atomic<int> best;
  std::atomic<bool> stop{false};
  std::atomic<std::uint64_t> nodes{0};
  std::mutex mutex;
  std::vector<std::vector<int>> witness;  // label index sequences, one per searched cycle
  Clock::time_point start;
  std::optional<Clock::time_point> deadline;
  const std::function<void(std::uint64_t, int)>* progress = nullptr;
};

class Worker {
 public:
  Worker(Shared& shared, const std::vector<int>& lengths, int max_distance)
      : shared_(shared), lengths_(lengths), tables_(lengths.size() + 1, Tables(max_distance)), stack_(lengths.size()) {}

  Tables& root() { return tables_[0]; }

  std::vector<Placement> placements(int depth) {
    const Tables& t = tables_[static_cast<std::size_t>(depth)];
    const int limit = std::min(shared_.best.load() - 1, kMaxSearchLabels) - t.count;
    if (limit < 0) return {};
    PlacementEnumerator en(t, lengths_[static_cast<std::size_t>(depth)], limit);
    return en.run();
  }

  // Tries one placement at `depth` and searches below it.
  void descend_with(int depth, const Placement& pl) {
    if (shared_.stop.load(std::memory_order_relaxed)) return;
    const Tables& parent = tables_[static_cast<std::size_t>(depth)];
    if (parent.count + pl.fresh >= std::min(shared_.best.load(std::memory_order_relaxed), kMaxSearchLabels + 1)) return;
    tick();
    Tables& child = tables_[static_cast<std::size_t>(depth) + 1];
    child.copy_from(parent);
    stack_[static_cast<std::size_t>(depth)] = apply(child, pl, lengths_[static_cast<std::size_t>(depth)]);
    if (depth + 1 == static_cast<int>(lengths_.size())) {
      record(child.count, depth + 1);
      return;
    }
    search(depth + 1);
  }

  void search(int depth) {
    for (const Placement& pl : placements(depth)) {
      if (shared_.stop.load(std::memory_order_relaxed)) return;
      if (tables_[static_cast<std::size_t>(depth)].count + pl.fresh >= shared_.best.load(std::memory_order_relaxed)) break;
      descend_with(depth, pl);
    }
  }

  void set_prefix(int depth, const std::vector<int>& seq) { stack_[static_cast<std::size_t>(depth)] = seq; }
  Tables& at(int depth) { return tables_[static_cast<std::size_t>(depth)]; }
  std::uint64_t local_nodes() const { return local_nodes_; }

  void flush() {
    shared_.nodes += local_nodes_;
    local_nodes_ = 0;
  }

 private:
  void tick() {
    if ((++local_nodes_ & 0xFFFF) == 0) {
      shared_.nodes += local_nodes_;
      local_nodes_ = 0;
      if (shared_.deadline && Clock::now() >= *shared_.deadline) shared_.stop = true;
    }
  }

  void record(int count, int depth) {
    std::lock_guard<std::mutex> lock(shared_.mutex);
    if (count >= shared_.best.load()) return;
    shared_.best = count;
    shared_.witness.assign(stack_.begin(), stack_.begin() + depth);
    if (shared_.progress && *shared_.progress) (*shared_.progress)(shared_.nodes.load() + local_nodes_, count);
  }

  Shared& shared_;
  const std::vector<int>& lengths_;
  std::vector<Tables> tables_;
  std::vector<std::vector<int>> stack_;
  std::uint64_t local_nodes_ = 0;
};

void check_lengths(const std::vector<int>& lengths) {
  if (lengths.empty()) throw std::invalid_argument("no cycle lengths given");
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (lengths[i] < 3) throw std::invalid_argument("cycle lengths must be at least 3");
    if (lengths[i] > kMaxSearchLabels) throw std::invalid_argument("cycle length exceeds the search label cap");
    if (i > 0 && lengths[i] >= lengths[i - 1]) throw std::invalid_argument("cycle lengths must be strictly decreasing");
  }
}

bool is_full_family(const std::vector<int>& lengths) {
  return lengths.back() == 3 && lengths.front() - 2 == static_cast<int>(lengths.size());
}

}  // namespace

std::vector<int> family_lengths(int n) {
  std::vector<int> out;
  for (int j = n; j >= 3; --j) out.push_back(j);
  return out;
}

int default_initial_ub(const std::vector<int>& lengths) {
  check_lengths(lengths);
  if (is_full_family(lengths)) {
    return static_cast<int>(enhanced_chain(lengths.front(), EnhancedOptions{.materialize = false}).report.label_count) + 1;
  }
  int total = 0;
  for (int j : lengths) total += j;
  return total + 1;
}

std::vector<CycleLabeling> find_placements(int j, const std::vector<Label>& labels, const PairDistanceTable& distances,
                                           Label first_fresh) {
  if (j < 3 || j > kMaxSearchLabels) throw std::invalid_argument("placement length out of range");
  if (labels.size() > static_cast<std::size_t>(kMaxSearchLabels)) throw std::invalid_argument("too many labels for the search");
  std::vector<Label> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  std::map<Label, int> index;
  for (std::size_t i = 0; i < sorted.size(); ++i) index.emplace(sorted[i], static_cast<int>(i));

  int max_distance = j / 2;
  for (const auto& [pair, d] : distances.sorted_entries()) max_distance = std::max(max_distance, d);
  Tables t(max_distance);
  t.count = static_cast<int>(sorted.size());
  for (const auto& [pair, d] : distances.sorted_entries()) {
    const auto a = index.find(pair.first);
    const auto b = index.find(pair.second);
    if (a != index.end() && b != index.end()) t.set(a->second, b->second, d);
  }

  PlacementEnumerator en(t, j, j);
  auto pls = en.run();
  // Decreasing number of existing labels, then canonical order.
  std::stable_sort(pls.begin(), pls.end(), [](const Placement& a, const Placement& b) { return a.fresh < b.fresh; });
  std::vector<CycleLabeling> out;
  out.reserve(pls.size());
  for (const auto& pl : pls) {
    std::vector<Label> seq;
    Label fresh = first_fresh;
    for (int l : pl.labels) seq.push_back(l == kFresh ? fresh++ : sorted[static_cast<std::size_t>(l)]);
    out.emplace_back(std::move(seq));
  }
  return out;
}

SearchResult search_lambda(const SearchConfig& config) {
  const std::vector<int>& lengths = config.lengths;
  check_lengths(lengths);
  const auto t0 = Clock::now();

  // Context labels become indices 0..k-1; fresh labels follow.
  std::vector<Label> context_labels;
  int max_distance = lengths.front() / 2;
  if (config.fixed_context) {
    context_labels = config.fixed_context->labels;
    std::sort(context_labels.begin(), context_labels.end());
    if (std::adjacent_find(context_labels.begin(), context_labels.end()) != context_labels.end()) {
      throw std::domain_error("fixed context lists a label twice");
    }
    if (context_labels.size() > static_cast<std::size_t>(kMaxSearchLabels)) {
      throw std::invalid_argument("fixed context exceeds the search label cap");
    }
    for (const auto& [pair, d] : config.fixed_context->distances.sorted_entries()) max_distance = std::max(max_distance, d);
  }

  Shared shared;
  shared.start = t0;
  if (config.time_budget) shared.deadline = t0 + *config.time_budget;
  shared.progress = &config.progress;
  int ub = 0;
  if (config.initial_ub) {
    ub = *config.initial_ub;
  } else if (config.fixed_context) {
    // Every searched position fresh is always feasible.
    ub = static_cast<int>(context_labels.size()) + std::accumulate(lengths.begin(), lengths.end(), 0) + 1;
  } else {
    ub = default_initial_ub(lengths);
  }
  shared.best = std::min(ub, kMaxSearchLabels + 1);

  const unsigned threads = std::max(1u, config.threads);
  std::vector<std::unique_ptr<Worker>> workers;
  for (unsigned w = 0; w < threads; ++w) workers.push_back(std::make_unique<Worker>(shared, lengths, max_distance));

  for (auto& w : workers) {
    Tables& root = w->root();
    root.count = static_cast<int>(context_labels.size());
    if (!config.fixed_context) continue;
    std::map<Label, int> index;
    for (std::size_t i = 0; i < context_labels.size(); ++i) index.emplace(context_labels[i], static_cast<int>(i));
    for (const auto& [pair, d] : config.fixed_context->distances.sorted_entries()) {
      const auto a = index.find(pair.first);
      const auto b = index.find(pair.second);
      if (a == index.end() || b == index.end() || d < 1 || pair.first == pair.second) {
        throw std::domain_error("fixed context distance refers to an unknown label or is not positive");
      }
      root.set(a->second, b->second, d);
    }
  }

  // Work items: placements of the first searched cycle, and without a
  // context also of the second (the first is then all fresh and its
  // symmetries are factored out).
  Worker& lead = *workers[0];
  struct Task {
    int first = -1;  // index into top, or -1
    Placement pl;
  };
  std::vector<Placement> top = lead.placements(0);
  std::vector<Task> tasks;
  const bool split_second = !config.fixed_context && lengths.size() > 1;
  if (split_second) {
    // Without context the only placement of the first cycle is all fresh.
    Placement first = top.empty() ? Placement{} : top.front();
    top.assign(1, first);
    if (!top.front().labels.empty()) {
      lead.at(1).copy_from(lead.at(0));
      lead.set_prefix(0, apply(lead.at(1), top.front(), lengths[0]));
      auto second = dedupe_by_first_cycle(lead.placements(1), lengths[0]);
      for (auto& pl : second) tasks.push_back(Task{0, std::move(pl)});
    }
  } else {
    for (auto& pl : top) tasks.push_back(Task{-1, std::move(pl)});
  }

  std::atomic<std::size_t> next_task{0};
  auto run_worker = [&](Worker& w) {
    if (split_second && !top.front().labels.empty()) {
      w.at(1).copy_from(w.at(0));
      w.set_prefix(0, apply(w.at(1), top.front(), lengths[0]));
    }
    for (;;) {
      const std::size_t idx = next_task++;
      if (idx >= tasks.size() || shared.stop) break;
      const Task& task = tasks[idx];
      if (split_second) {
        w.descend_with(1, task.pl);
      } else {
        w.descend_with(0, task.pl);
      }
    }
    w.flush();
  };
  if (threads == 1) {
    run_worker(lead);
  } else {
    std::vector<std::thread> pool;
    for (auto& w : workers) pool.emplace_back(run_worker, std::ref(*w));
    for (auto& t : pool) t.join();
  }

  SearchResult result;
  result.stats.nodes = shared.nodes.load();
  result.stats.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  result.found = !shared.witness.empty();
  result.exact = !shared.stop && (result.found || ub <= kMaxSearchLabels + 1);
  if (!result.found) {
    result.optimum = 0;
    return result;
  }
  result.optimum = shared.best.load();

  // Index -> output id. Context indices map back to their labels; without a
  // context ids follow first appearance.
  std::vector<Label> out_id(static_cast<std::size_t>(kMaxSearchLabels), 0);
  std::vector<bool> assigned(static_cast<std::size_t>(kMaxSearchLabels), false);
  Label next_id = 0;
  for (std::size_t i = 0; i < context_labels.size(); ++i) {
    out_id[i] = context_labels[i];
    assigned[i] = true;
  }
  if (!context_labels.empty()) next_id = context_labels.back() + 1;
  std::vector<CycleLabeling> cycles;
  for (const auto& seq : shared.witness) {
    std::vector<Label> labels;
    for (int l : seq) {
      if (!assigned[static_cast<std::size_t>(l)]) {
        assigned[static_cast<std::size_t>(l)] = true;
        out_id[static_cast<std::size_t>(l)] = next_id++;
      }
      labels.push_back(out_id[static_cast<std::size_t>(l)]);
    }
    cycles.emplace_back(std::move(labels));
  }
  result.witness = FamilyLabeling(std::move(cycles));
  return result;
}

SearchResult lambda_k(int n, int k, const SearchConfig& base) {
  if (k < 1 || n - k + 1 < 3) throw std::invalid_argument("lambda_k needs 1 <= k and n - k + 1 >= 3");
  SearchConfig cfg = base;
  cfg.lengths.clear();
  for (int j = n; j > n - k; --j) cfg.lengths.push_back(j);
  return search_lambda(cfg);
}

}  // namespace cyclabel
