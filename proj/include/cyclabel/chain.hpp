#pragma once

// The two-arc and chain schemes plus the enhanced and hybrid variants.
//
// Labels are allocated from a counter, so every arc is a range of
// consecutive ids and every labeled cycle is the concatenation of at most
// three such ranges. Cycles are therefore recorded as RunSeq values; the
// explicit FamilyLabeling is only built when `materialize` is set, which
// keeps n = 10^6 within memory.

#include <chrono>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclabel/core.hpp"

namespace cyclabel {

// Consecutive ids first, first+1, ... (or first, first-1, ... when descending).
struct Run {
  Label first = 0;
  std::uint32_t length = 0;
  bool descending = false;

  Label at(std::uint32_t i) const { return descending ? first - i : first + i; }
  Label last() const { return at(length - 1); }
  bool operator==(const Run&) const = default;
};

// A label sequence stored as maximal runs.
class RunSeq {
 public:
  RunSeq() = default;
  static RunSeq range(Label first, std::size_t length);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  std::span<const Run> runs() const { return runs_; }
  Label at(std::size_t i) const;

  RunSeq prefix(std::size_t k) const;
  RunSeq suffix(std::size_t k) const;
  RunSeq reversed() const;
  void drop_prefix(std::size_t k);
  void drop_suffix(std::size_t k);
  void append(const RunSeq& other);
  void append(Run run);

  ArcSeq expand() const;

  bool operator==(const RunSeq&) const = default;

 private:
  std::vector<Run> runs_;
  std::size_t size_ = 0;
};

RunSeq operator+(RunSeq a, const RunSeq& b);

// label(a1, a2, C_j) failed its length precondition.
class LabelError : public std::invalid_argument {
 public:
  enum class Reason { too_few_labels, arc_too_short };
  LabelError(Reason reason, const std::string& what) : std::invalid_argument(what), reason_(reason) {}
  Reason reason() const { return reason_; }

 private:
  Reason reason_;
};

// label(a1, a2, C_j): the cycle is the last j - A labels of a1 followed by
// the last A labels of a2, A = min(|a2|, floor(j/2) + 1). Throws LabelError
// when |a1| + |a2| < j or min(|a1|, |a2|) < ceil(j/2) - 1.
CycleLabeling two_arc_label(const ArcSeq& a1, const ArcSeq& a2, int j);

// True iff label() accepts arcs of these lengths for C_j.
bool can_two_arc_label(std::size_t len1, std::size_t len2, int j);

enum class CycleStep {
  initial,   // C_n from a0 a1
  normal,    // chain suffix + arc suffix
  reuse,     // trick 1: shares its chain end with the previous cycle
  reversed,  // trick 3 final phase: chain prefix, reversed, + arc prefix
  searched,  // hybrid tail found by exact search
};

const char* to_string(CycleStep step);

struct CycleRecord {
  int length = 0;
  int phase = 0;              // phase that labeled the cycle; 1 is C_n
  CycleStep step = CycleStep::normal;
  bool from_reserve = false;  // labeled in a trick-2 mini-phase
  RunSeq labels;
};

struct SchemeReport {
  int n = 0;
  std::string scheme;
  std::size_t label_count = 0;
  int phase_count = 0;
  std::vector<int> phase_starts;     // first length labeled in each phase
  std::vector<CycleRecord> cycles;   // decreasing length
  bool two_pass = false;             // enhanced/hybrid: the merged final phases were used
  int tail_from = 0;                 // hybrid: longest length handed to the search, 0 if none
  bool tail_exact = false;           // hybrid: the tail search finished
  bool tail_fallback = false;        // hybrid: enhanced completion kept (budget or label cap)
  double elapsed_ms = 0;
};

struct SchemeRun {
  FamilyLabeling family;  // empty unless materialized
  SchemeReport report;
};

// Reassembles the explicit family from the cycle records.
FamilyLabeling materialize(const SchemeReport& report);

// Greedy two-arc scheme: the arc created in each phase is paired with every
// earlier arc.
SchemeRun greedy_two_arc(int n, bool materialize = true);

// Chain scheme: the new arc is paired with the chain of all earlier arcs,
// consumed from its end.
SchemeRun chain_scheme(int n, bool materialize = true);

// How the enhanced scheme decides whether a two-pass attempt is a labeling.
enum class TwoPassCheck {
  rule,       // a' must not meet any chain label twice; works in count-only mode
  validator,  // run the validator on the attempted family (needs materialize)
};

struct EnhancedOptions {
  bool materialize = true;
  bool reuse_ends = true;       // trick 1
  bool reserve = true;          // trick 2
  bool two_pass = true;         // trick 3
  TwoPassCheck check = TwoPassCheck::rule;
};

SchemeRun enhanced_chain(int n, const EnhancedOptions& options = {});

struct HybridOptions {
  std::chrono::milliseconds tail_budget{60000};
  unsigned threads = 1;
};

// Enhanced scheme up to the phase where it commits to finishing; the
// remaining lengths are then labeled by exact search with every earlier
// label and distance fixed.
SchemeRun hybrid_scheme(int n, const HybridOptions& options = {});

}  // namespace cyclabel
