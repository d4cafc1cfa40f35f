#pragma once

// Domain types shared by every module: labels, arcs, labeled cycles,
// families of labeled cycles and pair-distance tables.

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cyclabel {

using Label = std::uint32_t;

// A labeled path. Labels are pairwise distinct; empty and one-node arcs are allowed.
using ArcSeq = std::vector<Label>;

// Largest cycle length a single run accepts (flat distance tables are sized by it).
inline constexpr int kMaxCycleLength = 1 << 20;

// Length of the shorter of the two paths between positions p and q of an
// undirected cycle on `length` nodes. Throws std::invalid_argument when a
// position is out of range.
int cycle_distance(int length, int p, int q);

// Directed variant: number of steps from p forward to q, i.e. (q - p) mod length.
int directed_distance(int length, int p, int q);

// One labeled cycle. Stores a concrete start point and traversal direction;
// equivalence up to rotation and reflection goes through canonicalize().
class CycleLabeling {
 public:
  CycleLabeling() = default;
  explicit CycleLabeling(std::vector<Label> seq);

  int length() const { return static_cast<int>(seq_.size()); }
  std::span<const Label> labels() const { return seq_; }
  Label operator[](int pos) const { return seq_[static_cast<std::size_t>(pos)]; }

  // Position of `label`, or nullopt when the cycle does not carry it.
  std::optional<int> position_of(Label label) const;

  int distance_between(int p, int q, bool directed = false) const {
    return directed ? directed_distance(length(), p, q) : cycle_distance(length(), p, q);
  }

  bool operator==(const CycleLabeling&) const = default;
  auto operator<=>(const CycleLabeling&) const = default;

 private:
  std::vector<Label> seq_;
};

CycleLabeling rotate(const CycleLabeling& c, int k);
CycleLabeling reflect(const CycleLabeling& c);

// Lexicographically least sequence over all rotations (and, unless directed,
// reflections). Idempotent.
CycleLabeling canonicalize(const CycleLabeling& c, bool directed = false);

// Distances keyed by label pair. Undirected tables normalise the key to
// (min, max); directed tables keep the order (from, to).
class PairDistanceTable {
 public:
  explicit PairDistanceTable(bool directed = false) : directed_(directed) {}

  bool directed() const { return directed_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  std::optional<int> find(Label u, Label v) const;

  // Records d(u, v) = distance. Returns false, leaving the table untouched,
  // when the pair already maps to a different distance.
  bool insert(Label u, Label v, int distance);

  // Entries sorted by key, as ((u, v), distance).
  std::vector<std::pair<std::pair<Label, Label>, int>> sorted_entries() const;

  bool operator==(const PairDistanceTable& other) const {
    return directed_ == other.directed_ && entries_ == other.entries_;
  }

 private:
  std::uint64_t key(Label u, Label v) const;

  bool directed_;
  std::unordered_map<std::uint64_t, int> entries_;
};

// One entry per label pair of the cycle (ordered pairs when directed).
PairDistanceTable pair_distances(const CycleLabeling& c, bool directed = false);

// Labeled cycles of pairwise distinct lengths sharing one label universe.
// Cycles are kept in decreasing length order.
class FamilyLabeling {
 public:
  FamilyLabeling() = default;
  explicit FamilyLabeling(std::vector<CycleLabeling> cycles, bool directed = false);

  bool directed() const { return directed_; }
  std::span<const CycleLabeling> cycles() const { return cycles_; }
  std::size_t size() const { return cycles_.size(); }
  bool empty() const { return cycles_.empty(); }

  const CycleLabeling* find(int length) const;
  std::vector<int> lengths() const;

  // Sorted union of all labels; its size is the labeling's cost.
  std::vector<Label> label_universe() const;
  std::size_t label_count() const { return label_universe().size(); }

  bool operator==(const FamilyLabeling&) const = default;

 private:
  std::vector<CycleLabeling> cycles_;
  bool directed_ = false;
};

}  // namespace cyclabel
