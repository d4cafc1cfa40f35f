#pragma once

// Exact minimum-label search over a set of cycle lengths: depth-first over
// the cycles in decreasing length, each level trying every compatible
// placement of existing labels (plus fresh ones) on the next cycle, pruned
// by the incumbent bound.

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "cyclabel/core.hpp"

namespace cyclabel {

// Labels and distances that are already fixed, e.g. by the cycles an
// enhanced chain run labeled before handing the tail to the search.
struct FixedContext {
  std::vector<Label> labels;
  PairDistanceTable distances;
};

// The search works on bitmasks, so the context plus every label of any
// labeling it considers must fit into this many labels.
inline constexpr int kMaxSearchLabels = 64;

struct SearchConfig {
  std::vector<int> lengths;               // strictly decreasing, all >= 3
  std::optional<int> initial_ub;          // only labelings with fewer labels are sought
  std::optional<std::chrono::milliseconds> time_budget;
  std::optional<FixedContext> fixed_context;
  unsigned threads = 1;
  std::function<void(std::uint64_t nodes, int best)> progress;  // called on improvements
};

struct SearchStats {
  std::uint64_t nodes = 0;
  double elapsed_ms = 0;
};

struct SearchResult {
  bool found = false;     // a labeling below the initial bound exists (witness filled)
  int optimum = 0;        // label count of the witness, context labels included
  FamilyLabeling witness; // only the searched cycles
  SearchStats stats;
  bool exact = false;     // search space exhausted within the budget
};

// Lengths n, n-1, ..., 3.
std::vector<int> family_lengths(int n);

// Placements of C_j given fixed labels and distances: each is a cycle whose
// existing labels respect `distances`, remaining positions filled with fresh
// ids counting up from `first_fresh`. Deduplicated up to rotation and
// reflection; ordered by decreasing number of existing labels, then by the
// canonical sequence. Requires at most kMaxSearchLabels existing labels.
std::vector<CycleLabeling> find_placements(int j, const std::vector<Label>& labels,
                                           const PairDistanceTable& distances, Label first_fresh);

// Throws std::invalid_argument on malformed lengths or a context over the
// label cap, std::domain_error on an inconsistent context.
SearchResult search_lambda(const SearchConfig& config);

// Default incumbent when none is given: enhanced scheme + 1 for 3..n,
// otherwise the total node count + 1. A search with a fixed context
// starts from the context size plus the total node count + 1 instead.
int default_initial_ub(const std::vector<int>& lengths);

// lambda over C_n, ..., C_{n-k+1}.
SearchResult lambda_k(int n, int k, const SearchConfig& base = {});

}  // namespace cyclabel
