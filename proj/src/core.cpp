#include "cyclabel/core.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cyclabel {

namespace {

void check_positions(int length, int p, int q) {
  if (length < 1 || p < 0 || q < 0 || p >= length || q >= length) {
    throw std::invalid_argument("position out of range: length=" + std::to_string(length) +
                                " p=" + std::to_string(p) + " q=" + std::to_string(q));
  }
}

}  // namespace

int cycle_distance(int length, int p, int q) {
  check_positions(length, p, q);
  const int d = p > q ? p - q : q - p;
  return std::min(d, length - d);
}

int directed_distance(int length, int p, int q) {
  check_positions(length, p, q);
  return ((q - p) % length + length) % length;
}

CycleLabeling::CycleLabeling(std::vector<Label> seq) : seq_(std::move(seq)) {
  if (seq_.size() < 3) {
    throw std::invalid_argument("a cycle needs at least 3 nodes, got " + std::to_string(seq_.size()));
  }
  if (seq_.size() > static_cast<std::size_t>(kMaxCycleLength)) {
    throw std::invalid_argument("cycle length exceeds the supported maximum");
  }
  std::vector<Label> sorted = seq_;
  std::sort(sorted.begin(), sorted.end());
  const auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) {
    throw std::invalid_argument("label " + std::to_string(*dup) + " appears twice in a cycle of length " +
                                std::to_string(seq_.size()));
  }
}

std::optional<int> CycleLabeling::position_of(Label label) const {
  const auto it = std::find(seq_.begin(), seq_.end(), label);
  if (it == seq_.end()) return std::nullopt;
  return static_cast<int>(it - seq_.begin());
}

CycleLabeling rotate(const CycleLabeling& c, int k) {
  const int j = c.length();
  std::vector<Label> out(static_cast<std::size_t>(j));
  const int shift = ((k % j) + j) % j;
  for (int p = 0; p < j; ++p) out[static_cast<std::size_t>(p)] = c[(p + shift) % j];
  return CycleLabeling(std::move(out));
}

CycleLabeling reflect(const CycleLabeling& c) {
  auto labels = std::vector<Label>(c.labels().begin(), c.labels().end());
  std::reverse(labels.begin(), labels.end());
  return CycleLabeling(std::move(labels));
}

CycleLabeling canonicalize(const CycleLabeling& c, bool directed) {
  // Labels are distinct, so the least rotation starts at the least label; the
  // only remaining freedom is the traversal direction.
  const int j = c.length();
  const auto labels = c.labels();
  const int start = static_cast<int>(std::min_element(labels.begin(), labels.end()) - labels.begin());
  std::vector<Label> forward(static_cast<std::size_t>(j));
  std::vector<Label> backward(static_cast<std::size_t>(j));
  for (int t = 0; t < j; ++t) {
    forward[static_cast<std::size_t>(t)] = c[(start + t) % j];
    backward[static_cast<std::size_t>(t)] = c[((start - t) % j + j) % j];
  }
  if (!directed && backward < forward) return CycleLabeling(std::move(backward));
  return CycleLabeling(std::move(forward));
}

std::uint64_t PairDistanceTable::key(Label u, Label v) const {
  if (!directed_ && u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

std::optional<int> PairDistanceTable::find(Label u, Label v) const {
  const auto it = entries_.find(key(u, v));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

bool PairDistanceTable::insert(Label u, Label v, int distance) {
  const auto [it, inserted] = entries_.try_emplace(key(u, v), distance);
  return inserted || it->second == distance;
}

std::vector<std::pair<std::pair<Label, Label>, int>> PairDistanceTable::sorted_entries() const {
  std::vector<std::pair<std::pair<Label, Label>, int>> out;
  out.reserve(entries_.size());
  for (const auto& [k, d] : entries_) {
    out.push_back({{static_cast<Label>(k >> 32), static_cast<Label>(k & 0xffffffffu)}, d});
  }
  std::sort(out.begin(), out.end());
  return out;
}

PairDistanceTable pair_distances(const CycleLabeling& c, bool directed) {
  PairDistanceTable table(directed);
  const int j = c.length();
  for (int p = 0; p < j; ++p) {
    for (int q = directed ? 0 : p + 1; q < j; ++q) {
      if (p == q) continue;
      table.insert(c[p], c[q], c.distance_between(p, q, directed));
    }
  }
  return table;
}

FamilyLabeling::FamilyLabeling(std::vector<CycleLabeling> cycles, bool directed)
    : cycles_(std::move(cycles)), directed_(directed) {
  std::sort(cycles_.begin(), cycles_.end(),
            [](const CycleLabeling& a, const CycleLabeling& b) { return a.length() > b.length(); });
  for (std::size_t i = 1; i < cycles_.size(); ++i) {
    if (cycles_[i].length() == cycles_[i - 1].length()) {
      throw std::invalid_argument("duplicate cycle length " + std::to_string(cycles_[i].length()));
    }
  }
}

const CycleLabeling* FamilyLabeling::find(int length) const {
  for (const auto& c : cycles_) {
    if (c.length() == length) return &c;
  }
  return nullptr;
}

std::vector<int> FamilyLabeling::lengths() const {
  std::vector<int> out;
  out.reserve(cycles_.size());
  for (const auto& c : cycles_) out.push_back(c.length());
  return out;
}

std::vector<Label> FamilyLabeling::label_universe() const {
  std::vector<Label> all;
  std::size_t total = 0;
  for (const auto& c : cycles_) total += static_cast<std::size_t>(c.length());
  all.reserve(total);
  for (const auto& c : cycles_) all.insert(all.end(), c.labels().begin(), c.labels().end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

}  // namespace cyclabel
