#pragma once

// Ground-truth checks for families of labeled cycles: the distance-labeling
// condition itself plus the structural facts (triangles, diameters, arc
// intersections) that every scheme and the search are measured against.

#include <memory>
#include <optional>
#include <vector>

#include "cyclabel/core.hpp"

namespace cyclabel {

// A label pair that receives two different distances.
struct Conflict {
  Label u = 0;
  Label v = 0;
  int length1 = 0;  // cycle where the pair was first seen
  int distance1 = 0;
  int length2 = 0;  // cycle that disagrees
  int distance2 = 0;

  bool operator==(const Conflict&) const = default;
};

namespace detail {
struct RunIndex;
}

// The decoder d' of a valid family: answers d(u, v) for any two labels that
// share a cycle. Built from an index of label runs, so it stays small for
// families whose full pair table would not fit in memory.
class DistanceOracle {
 public:
  explicit DistanceOracle(const FamilyLabeling& family);
  explicit DistanceOracle(std::shared_ptr<const detail::RunIndex> index);

  // nullopt when u and v never share a cycle.
  std::optional<int> distance(Label u, Label v) const;

  // Materialises every co-occurring pair. Quadratic in cycle lengths.
  PairDistanceTable table() const;

  bool operator==(const DistanceOracle& other) const { return table() == other.table(); }

 private:
  std::shared_ptr<const detail::RunIndex> index_;
};

struct ValidationReport {
  bool valid = false;
  std::size_t label_count = 0;
  std::optional<Conflict> conflict;
  std::optional<DistanceOracle> oracle;  // present iff valid
  bool arc_labeling = false;             // meaningful only when valid
};

// Valid iff no label pair (ordered pair for directed families) receives two
// different distances. On failure the reported conflict is the first one met
// when cycles are scanned by decreasing length and pairs lexicographically.
ValidationReport validate(const FamilyLabeling& family);

// Reference implementation of validate() that walks every pair of every
// cycle through a hash table. Used for conflict reporting and as a test oracle.
ValidationReport validate_exhaustive(const FamilyLabeling& family);

struct Triangle {
  Label a = 0, b = 0, c = 0;  // a < b < c

  bool operator==(const Triangle&) const = default;
  auto operator<=>(const Triangle&) const = default;
};

Triangle make_triangle(Label x, Label y, Label z);

// All label triples of `c` whose three distances each lie strictly below the
// sum of the other two. Sorted.
std::vector<Triangle> triangles_of(const CycleLabeling& c);

struct TriangleDuplicate {
  Triangle triangle;
  int length1 = 0;
  int length2 = 0;
};

// nullopt when no triangle occurs as a triangle in two different cycles.
std::optional<TriangleDuplicate> check_triangle_uniqueness(const FamilyLabeling& family);

// Common labels of two cycles, split into maximal runs that are consecutive
// in both cycles. Runs are listed in the traversal order of the first cycle.
struct Intersection {
  std::vector<ArcSeq> arcs;
  std::size_t common_labels = 0;

  bool is_single_arc() const { return arcs.size() <= 1; }
};

Intersection intersection(const CycleLabeling& c1, const CycleLabeling& c2);

// True iff the common labels fit on a path of floor(j/2)+1 consecutive nodes
// in each of the two cycles.
bool check_diameter_property(const CycleLabeling& c1, const CycleLabeling& c2);

// True iff every pairwise intersection is a single (possibly empty) arc.
// Expects a valid family.
bool is_arc_labeling(const FamilyLabeling& family);

}  // namespace cyclabel
