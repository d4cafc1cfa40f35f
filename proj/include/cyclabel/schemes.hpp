#pragma once

// Closed-form constructions: the optimal labeling of directed cycles and the
// folklore (b, d, m) scheme together with its decoder.

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "cyclabel/core.hpp"

namespace cyclabel {

// Labels C_n..C_3 (directed) in decreasing order. Each smaller cycle borrows
// one label from each larger cycle, so any two cycles share at most one label.
FamilyLabeling directed_labeling(int n);

struct FolkloreLabel {
  int b = 1;  // 1 or 2: which half-path
  int d = 0;  // distance to the path's anchor
  int m = 0;  // i mod s for b = 1, i / s for b = 2, with s = ceil(sqrt(n))

  auto operator<=>(const FolkloreLabel&) const = default;
};

// Text form "b,d,m". Throws std::invalid_argument on malformed input.
FolkloreLabel parse_folklore_label(std::string_view text);
std::string to_string(const FolkloreLabel& label);

// ceil(sqrt(n)) computed in integers.
int folklore_modulus(int n);

struct FolkloreLabeling {
  FamilyLabeling family;              // over Label ids
  std::vector<FolkloreLabel> triples; // triples[id]
};

FolkloreLabeling folklore_labeling(int n);

// Number of distinct triples of folklore_labeling(n), without building it.
std::size_t folklore_label_count(int n);

// Distance between two labels of the folklore labeling of C_3..C_n.
// Throws std::domain_error when the two labels cannot share a cycle.
int decode_folklore(int n, const FolkloreLabel& l1, const FolkloreLabel& l2);

}  // namespace cyclabel
