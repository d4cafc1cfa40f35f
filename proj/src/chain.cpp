#include "cyclabel/chain.hpp"

#include <algorithm>
#include <optional>

#include "cyclabel/search.hpp"
#include "cyclabel/validator.hpp"

namespace cyclabel {

// ---------------------------------------------------------------- RunSeq

RunSeq RunSeq::range(Label first, std::size_t length) {
  RunSeq out;
  if (length > 0) out.append(Run{first, static_cast<std::uint32_t>(length), false});
  return out;
}

Label RunSeq::at(std::size_t i) const {
  for (const Run& r : runs_) {
    if (i < r.length) return r.at(static_cast<std::uint32_t>(i));
    i -= r.length;
  }
  throw std::out_of_range("RunSeq index out of range");
}

void RunSeq::append(Run run) {
  if (run.length == 0) return;
  size_ += run.length;
  if (!runs_.empty()) {
    Run& back = runs_.back();
    // A one-label run has no direction of its own and joins either way.
    const bool up = back.length > 1 ? !back.descending : (run.length > 1 ? !run.descending : run.first > back.first);
    const bool run_up = run.length > 1 ? !run.descending : up;
    const Label expected = up ? back.last() + 1 : back.last() - 1;
    if (up == run_up && run.first == expected) {
      back.descending = !up;
      back.length += run.length;
      return;
    }
  }
  if (run.length == 1) run.descending = false;
  runs_.push_back(run);
}

void RunSeq::append(const RunSeq& other) {
  for (const Run& r : other.runs_) append(r);
}

RunSeq operator+(RunSeq a, const RunSeq& b) {
  a.append(b);
  return a;
}

RunSeq RunSeq::prefix(std::size_t k) const {
  RunSeq out;
  for (const Run& r : runs_) {
    if (k == 0) break;
    const auto take = static_cast<std::uint32_t>(std::min<std::size_t>(k, r.length));
    out.append(Run{r.first, take, r.descending});
    k -= take;
  }
  return out;
}

RunSeq RunSeq::suffix(std::size_t k) const {
  RunSeq out = *this;
  out.drop_prefix(size_ - std::min(k, size_));
  return out;
}

void RunSeq::drop_prefix(std::size_t k) {
  k = std::min(k, size_);
  size_ -= k;
  std::size_t whole = 0;
  while (k > 0 && k >= runs_[whole].length) k -= runs_[whole++].length;
  runs_.erase(runs_.begin(), runs_.begin() + static_cast<std::ptrdiff_t>(whole));
  if (k > 0) {
    Run& r = runs_.front();
    r.first = r.at(static_cast<std::uint32_t>(k));
    r.length -= static_cast<std::uint32_t>(k);
  }
}

void RunSeq::drop_suffix(std::size_t k) {
  k = std::min(k, size_);
  size_ -= k;
  while (k > 0 && k >= runs_.back().length) {
    k -= runs_.back().length;
    runs_.pop_back();
  }
  if (k > 0) runs_.back().length -= static_cast<std::uint32_t>(k);
}

RunSeq RunSeq::reversed() const {
  RunSeq out;
  for (auto it = runs_.rbegin(); it != runs_.rend(); ++it) out.append(Run{it->last(), it->length, !it->descending});
  return out;
}

ArcSeq RunSeq::expand() const {
  ArcSeq out;
  out.reserve(size_);
  for (const Run& r : runs_) {
    for (std::uint32_t i = 0; i < r.length; ++i) out.push_back(r.at(i));
  }
  return out;
}

// ---------------------------------------------------------------- label()

bool can_two_arc_label(std::size_t len1, std::size_t len2, int j) {
  const auto need = static_cast<std::size_t>((j + 1) / 2 - 1);
  return len1 + len2 >= static_cast<std::size_t>(j) && std::min(len1, len2) >= need;
}

namespace {

std::size_t second_share(std::size_t len2, int j) {
  return std::min(len2, static_cast<std::size_t>(j / 2 + 1));
}

void check_label_args(std::size_t len1, std::size_t len2, int j) {
  if (j < 3) throw std::invalid_argument("cycle length must be at least 3");
  if (len1 + len2 < static_cast<std::size_t>(j)) {
    throw LabelError(LabelError::Reason::too_few_labels,
                     "not enough labels for C_" + std::to_string(j) + ": arcs hold " + std::to_string(len1 + len2));
  }
  if (std::min(len1, len2) < static_cast<std::size_t>((j + 1) / 2 - 1)) {
    throw LabelError(LabelError::Reason::arc_too_short,
                     "an arc is shorter than ceil(j/2)-1 = " + std::to_string((j + 1) / 2 - 1) + " for C_" + std::to_string(j));
  }
}

}  // namespace

CycleLabeling two_arc_label(const ArcSeq& a1, const ArcSeq& a2, int j) {
  check_label_args(a1.size(), a2.size(), j);
  const std::size_t a = second_share(a2.size(), j);
  const std::size_t b = static_cast<std::size_t>(j) - a;
  std::vector<Label> seq(a1.end() - static_cast<std::ptrdiff_t>(b), a1.end());
  seq.insert(seq.end(), a2.end() - static_cast<std::ptrdiff_t>(a), a2.end());
  return CycleLabeling(std::move(seq));
}

const char* to_string(CycleStep step) {
  switch (step) {
    case CycleStep::initial: return "initial";
    case CycleStep::normal: return "normal";
    case CycleStep::reuse: return "reuse";
    case CycleStep::reversed: return "reversed";
    case CycleStep::searched: return "searched";
  }
  return "?";
}

FamilyLabeling materialize(const SchemeReport& report) {
  std::vector<CycleLabeling> cycles;
  cycles.reserve(report.cycles.size());
  for (const auto& rec : report.cycles) cycles.emplace_back(rec.labels.expand());
  return FamilyLabeling(std::move(cycles));
}

// ---------------------------------------------------------------- engine

namespace {

enum class PhaseMode {
  plain,     // chain scheme as is
  reuse,     // trick 1 allowed
  squeeze,   // trick 1, taking one arc label fewer when that enables it
  reversed,  // final two-pass phase
};

// Sorted, disjoint [lo, hi) intervals covering the labels of a sequence.
using Intervals = std::vector<std::pair<Label, Label>>;

Intervals intervals_of(const RunSeq& s) {
  Intervals out;
  for (const Run& r : s.runs()) {
    const Label lo = r.descending ? r.last() : r.first;
    out.emplace_back(lo, lo + r.length);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Intervals intersect(const Intervals& a, const Intervals& b) {
  Intervals out;
  std::size_t i = 0, k = 0;
  while (i < a.size() && k < b.size()) {
    const Label lo = std::max(a[i].first, b[k].first);
    const Label hi = std::min(a[i].second, b[k].second);
    if (lo < hi) out.emplace_back(lo, hi);
    (a[i].second < b[k].second) ? ++i : ++k;
  }
  return out;
}

Intervals subtract(const Intervals& a, const Intervals& b) {
  Intervals out;
  for (auto [lo, hi] : a) {
    for (auto [blo, bhi] : b) {
      if (bhi <= lo || blo >= hi) continue;
      if (blo > lo) out.emplace_back(lo, blo);
      lo = std::max(lo, bhi);
      if (lo >= hi) break;
    }
    if (lo < hi) out.emplace_back(lo, hi);
  }
  return out;
}

bool has_repeat(const RunSeq& s) {
  const Intervals iv = intervals_of(s);
  for (std::size_t t = 1; t < iv.size(); ++t) {
    if (iv[t].first < iv[t - 1].second) return true;
  }
  return false;
}

int position_in(const RunSeq& s, Label x) {
  std::size_t offset = 0;
  for (const Run& r : s.runs()) {
    const Label lo = r.descending ? r.last() : r.first;
    if (x >= lo && x < lo + r.length) {
      return static_cast<int>(offset + (r.descending ? r.first - x : x - r.first));
    }
    offset += r.length;
  }
  return -1;
}

struct Snapshot {
  std::size_t cycles = 0;
  std::size_t phase_starts = 0;
  int j = 0;
  int phase = 0;
  Label next = 0;
  RunSeq full;
  std::vector<std::pair<RunSeq, RunSeq>> reserve;
};

class Engine {
 public:
  Engine(int n, bool reuse_ends, bool reserve) : n_(n), j_(n), reuse_ends_(reuse_ends), use_reserve_(reserve) {}

  int j() const { return j_; }
  Label next() const { return next_; }
  int phase() const { return phase_; }
  std::vector<CycleRecord>& cycles() { return cycles_; }
  std::vector<int>& phase_starts() { return phase_starts_; }

  void start() {
    const RunSeq a0 = create(static_cast<std::size_t>((n_ + 1) / 2));
    const RunSeq a1 = create(static_cast<std::size_t>(n_ / 2));
    full_ = a0 + a1;
    begin_phase();
    emit(a0 + a1, CycleStep::initial);
  }

  // One phase of the chain scheme on the chain of all arcs so far.
  void ordinary_phase(PhaseMode mode) {
    const RunSeq arc = create(static_cast<std::size_t>((j_ + 1) / 2 - 1));
    const RunSeq chain = full_;
    full_.append(arc);
    begin_phase();
    RunSeq rest = run_phase(chain, arc, mode);
    if (use_reserve_) reserve_.emplace_back(std::move(rest), arc);
  }

  // Trick 2: mini-phases from stored (remainder, arc) pairs, first fit.
  void drain_reserve() {
    if (!use_reserve_) return;
    bool progress = true;
    while (progress && j_ > 2) {
      progress = false;
      for (std::size_t idx = 0; idx < reserve_.size(); ++idx) {
        if (!can_two_arc_label(reserve_[idx].second.size(), reserve_[idx].first.size(), j_)) continue;
        auto [rest, arc] = std::move(reserve_[idx]);
        reserve_.erase(reserve_.begin() + static_cast<std::ptrdiff_t>(idx));
        from_reserve_ = true;
        RunSeq left = run_phase(arc, rest, reuse_ends_ ? PhaseMode::reuse : PhaseMode::plain);
        from_reserve_ = false;
        reserve_.emplace_back(std::move(left), std::move(rest));
        progress = true;
        break;
      }
    }
  }

  // Trick 3. Leaves the engine in the attempted state; returns whether every
  // cycle got labeled and the result is a labeling.
  bool two_pass(TwoPassCheck check) {
    const RunSeq arc = create(static_cast<std::size_t>((j_ + 1) / 2 - 1));
    const RunSeq chain = full_;
    full_.append(arc);
    begin_phase();
    const std::size_t penult_begin = cycles_.size();
    run_phase(chain, arc, reuse_ends_ ? PhaseMode::squeeze : PhaseMode::plain);
    const std::size_t penult_end = cycles_.size();
    if (penult_end == penult_begin) return false;

    const std::size_t used = [&] {
      std::size_t total = 0;
      for (auto [lo, hi] : intersect(intervals_of(cycles_.back().labels), intervals_of(arc))) total += hi - lo;
      return total;
    }();
    const RunSeq unused = arc.prefix(arc.size() - used);  // a'

    drain_reserve();
    if (j_ <= 2) return check == TwoPassCheck::rule || validator_accepts();

    const std::size_t need = static_cast<std::size_t>((j_ + 1) / 2 - 1);
    const RunSeq fin = create(need > unused.size() ? need - unused.size() : 0) + unused;
    const RunSeq chain2 = full_;
    begin_phase();
    const std::size_t rev_begin = cycles_.size();
    run_phase(chain2, fin, PhaseMode::reversed);
    const std::size_t rev_end = cycles_.size();
    drain_reserve();
    if (j_ > 2) return false;

    if (check == TwoPassCheck::validator) return validator_accepts();
    return rule_accepts(penult_begin, penult_end, rev_begin, rev_end, unused);
  }

  Snapshot save() const {
    return {cycles_.size(), phase_starts_.size(), j_, phase_, next_, full_, reserve_};
  }

  void restore(const Snapshot& s) {
    cycles_.resize(s.cycles);
    phase_starts_.resize(s.phase_starts);
    j_ = s.j;
    phase_ = s.phase;
    next_ = s.next;
    full_ = s.full;
    reserve_ = s.reserve;
  }

 private:
  RunSeq create(std::size_t length) {
    RunSeq r = RunSeq::range(next_, length);
    next_ += static_cast<Label>(length);
    return r;
  }

  void begin_phase() {
    ++phase_;
    phase_starts_.push_back(j_);
  }

  void emit(RunSeq labels, CycleStep step) {
    cycles_.push_back(CycleRecord{j_, phase_, step, from_reserve_, std::move(labels)});
    --j_;
  }

  RunSeq run_phase(RunSeq c, const RunSeq& arc, PhaseMode mode) {
    bool pending = false;  // the last chain label is the previous cycle's first (trick 1)
    std::size_t prev_share = 0;
    auto fits = [&] {
      return c.size() >= static_cast<std::size_t>((j_ + 1) / 2 - 1) && can_two_arc_label(c.size(), arc.size(), j_);
    };
    while (j_ > 2 && fits()) {
      const int j = j_;
      const std::size_t share = second_share(arc.size(), j);
      if (mode == PhaseMode::reversed) {
        const std::size_t b = static_cast<std::size_t>(j) - share;
        emit(c.prefix(b).reversed() + arc.prefix(share), CycleStep::reversed);
        c.drop_prefix(b);
        continue;
      }
      bool reuse = false;
      std::size_t take = share;
      if (pending) {
        if (mode == PhaseMode::squeeze && share == arc.size() && 2 * share > static_cast<std::size_t>(j) &&
            2 * (share - 1) <= static_cast<std::size_t>(j)) {
          take = share - 1;
        }
        if (2 * take <= static_cast<std::size_t>(j) && take <= prev_share && c.size() >= static_cast<std::size_t>(j) - take) {
          reuse = true;
        } else {
          c.drop_suffix(1);
          pending = false;
          take = share;
          if (!fits()) break;
        }
      }
      const std::size_t b = static_cast<std::size_t>(j) - take;
      if (reuse) {
        emit(c.suffix(b) + arc.suffix(take).reversed(), CycleStep::reuse);
        c.drop_suffix(b);
        pending = false;
        prev_share = 0;
      } else {
        emit(c.suffix(b) + arc.suffix(take), CycleStep::normal);
        prev_share = take;
        if (mode != PhaseMode::plain) {
          c.drop_suffix(b - 1);
          pending = true;
        } else {
          c.drop_suffix(b);
        }
      }
    }
    if (pending) c.drop_suffix(1);
    return c;
  }

  bool validator_accepts() const {
    std::vector<CycleLabeling> cyc;
    cyc.reserve(cycles_.size());
    for (const auto& rec : cycles_) {
      if (has_repeat(rec.labels)) return false;
      cyc.emplace_back(rec.labels.expand());
    }
    return validate(FamilyLabeling(std::move(cyc))).valid;
  }

  // Reversed cycles must not repeat a label, and every pair of an a' label
  // with another label must keep the distance it had in the penultimate phase.
  bool rule_accepts(std::size_t penult_begin, std::size_t penult_end, std::size_t rev_begin, std::size_t rev_end,
                    const RunSeq& unused) const {
    const Intervals prime = intervals_of(unused);
    for (std::size_t r = rev_begin; r < rev_end; ++r) {
      const CycleRecord& rev = cycles_[r];
      if (has_repeat(rev.labels)) return false;
      const Intervals rev_all = intervals_of(rev.labels);
      const Intervals rev_prime = intersect(rev_all, prime);
      if (rev_prime.empty()) continue;
      const Intervals rev_other = subtract(rev_all, prime);
      for (std::size_t p = penult_begin; p < penult_end; ++p) {
        const CycleRecord& pen = cycles_[p];
        const Intervals pen_all = intervals_of(pen.labels);
        const Intervals ys = intersect(rev_prime, pen_all);
        if (ys.empty()) continue;
        const Intervals xs = intersect(rev_other, subtract(pen_all, prime));
        for (auto [ylo, yhi] : ys) {
          for (Label y = ylo; y < yhi; ++y) {
            const int py_rev = position_in(rev.labels, y);
            const int py_pen = position_in(pen.labels, y);
            for (auto [xlo, xhi] : xs) {
              for (Label x = xlo; x < xhi; ++x) {
                if (cycle_distance(rev.length, py_rev, position_in(rev.labels, x)) !=
                    cycle_distance(pen.length, py_pen, position_in(pen.labels, x))) {
                  return false;
                }
              }
            }
          }
        }
      }
    }
    return true;
  }

  int n_;
  int j_;
  int phase_ = 0;
  Label next_ = 0;
  bool reuse_ends_;
  bool use_reserve_;
  bool from_reserve_ = false;
  RunSeq full_;  // a0 a1 ... of the ordinary phases
  std::vector<std::pair<RunSeq, RunSeq>> reserve_;
  std::vector<CycleRecord> cycles_;
  std::vector<int> phase_starts_;
};

void require_n(int n) {
  if (n < 3) throw std::invalid_argument("n must be at least 3, got " + std::to_string(n));
  if (n > kMaxCycleLength) throw std::invalid_argument("n exceeds the supported maximum");
}

SchemeRun finish(int n, const char* name, Engine& engine, bool mat, std::chrono::steady_clock::time_point t0) {
  SchemeRun out;
  out.report.n = n;
  out.report.scheme = name;
  out.report.label_count = engine.next();
  out.report.phase_count = static_cast<int>(engine.phase_starts().size());
  out.report.phase_starts = std::move(engine.phase_starts());
  out.report.cycles = std::move(engine.cycles());
  if (mat) out.family = materialize(out.report);
  out.report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

// Result of running the enhanced scheme, plus where it committed to finishing.
struct EnhancedTrace {
  Engine engine;
  std::optional<Snapshot> commit;  // state at the start of the committing phase
  bool two_pass = false;
};

EnhancedTrace run_enhanced(int n, const EnhancedOptions& opt) {
  EnhancedTrace trace{Engine(n, opt.reuse_ends, opt.reserve), std::nullopt, false};
  Engine& e = trace.engine;
  e.start();
  while (e.j() > 2) {
    e.drain_reserve();
    if (e.j() <= 2) break;
    const Snapshot before = e.save();
    if (!opt.two_pass) {
      e.ordinary_phase(opt.reuse_ends ? PhaseMode::reuse : PhaseMode::plain);
      continue;
    }
    std::optional<Snapshot> attempt;
    std::vector<CycleRecord> attempt_cycles;
    std::vector<int> attempt_starts;
    if (e.two_pass(opt.check)) {
      attempt = e.save();
      attempt_cycles.assign(e.cycles().begin() + static_cast<std::ptrdiff_t>(before.cycles), e.cycles().end());
      attempt_starts.assign(e.phase_starts().begin() + static_cast<std::ptrdiff_t>(before.phase_starts),
                            e.phase_starts().end());
    }
    e.restore(before);
    e.ordinary_phase(opt.reuse_ends ? PhaseMode::reuse : PhaseMode::plain);
    e.drain_reserve();
    const bool finished = e.j() <= 2;
    if (attempt && (!finished || attempt->next < e.next())) {
      e.restore(before);
      e.cycles().insert(e.cycles().end(), attempt_cycles.begin(), attempt_cycles.end());
      e.phase_starts().insert(e.phase_starts().end(), attempt_starts.begin(), attempt_starts.end());
      Snapshot tail = *attempt;
      tail.cycles = e.cycles().size();
      tail.phase_starts = e.phase_starts().size();
      e.restore(tail);
      trace.two_pass = true;
    }
    if (finished || attempt) {
      trace.commit = before;
      break;
    }
  }
  return trace;
}

}  // namespace

SchemeRun greedy_two_arc(int n, bool mat) {
  require_n(n);
  const auto t0 = std::chrono::steady_clock::now();
  SchemeRun out;
  SchemeReport& rep = out.report;
  rep.n = n;
  rep.scheme = "two-arc";
  Label next = 0;
  std::vector<RunSeq> arcs;
  auto create = [&](std::size_t len) {
    arcs.push_back(RunSeq::range(next, len));
    next += static_cast<Label>(len);
  };
  create(static_cast<std::size_t>((n + 1) / 2));
  create(static_cast<std::size_t>(n / 2));
  int j = n;
  int phase = 1;
  rep.phase_starts.push_back(j);
  auto label = [&](const RunSeq& a1, const RunSeq& a2, CycleStep step) {
    check_label_args(a1.size(), a2.size(), j);
    const std::size_t a = second_share(a2.size(), j);
    rep.cycles.push_back(CycleRecord{j, phase, step, false, a1.suffix(static_cast<std::size_t>(j) - a) + a2.suffix(a)});
    --j;
  };
  label(arcs[0], arcs[1], CycleStep::initial);
  while (j > 2) {
    ++phase;
    rep.phase_starts.push_back(j);
    create(static_cast<std::size_t>((j + 1) / 2 - 1));
    const std::size_t i = arcs.size() - 1;
    for (std::size_t k = 0; k < i && j > 2; ++k) label(arcs[k], arcs[i], CycleStep::normal);
  }
  rep.label_count = next;
  rep.phase_count = phase;
  if (mat) out.family = materialize(rep);
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

SchemeRun chain_scheme(int n, bool mat) {
  require_n(n);
  const auto t0 = std::chrono::steady_clock::now();
  Engine e(n, false, false);
  e.start();
  while (e.j() > 2) e.ordinary_phase(PhaseMode::plain);
  return finish(n, "chain", e, mat, t0);
}

SchemeRun enhanced_chain(int n, const EnhancedOptions& options) {
  require_n(n);
  const auto t0 = std::chrono::steady_clock::now();
  EnhancedTrace trace = run_enhanced(n, options);
  SchemeRun out = finish(n, "enhanced", trace.engine, options.materialize, t0);
  out.report.two_pass = trace.two_pass;
  return out;
}

SchemeRun hybrid_scheme(int n, const HybridOptions& options) {
  require_n(n);
  const auto t0 = std::chrono::steady_clock::now();
  EnhancedTrace trace = run_enhanced(n, EnhancedOptions{});
  SchemeRun out = finish(n, "hybrid", trace.engine, true, t0);
  SchemeReport& rep = out.report;
  rep.two_pass = trace.two_pass;
  if (!trace.commit) return out;

  const Snapshot& commit = *trace.commit;
  rep.tail_from = commit.j;
  std::vector<CycleRecord> head(rep.cycles.begin(), rep.cycles.begin() + static_cast<std::ptrdiff_t>(commit.cycles));

  FixedContext context;
  context.labels.resize(commit.next);
  for (Label l = 0; l < commit.next; ++l) context.labels[l] = l;
  if (context.labels.size() > static_cast<std::size_t>(kMaxSearchLabels)) {
    rep.tail_fallback = true;
    return out;
  }
  for (const auto& rec : head) {
    const CycleLabeling c(rec.labels.expand());
    for (const auto& [pair, d] : pair_distances(c).sorted_entries()) context.distances.insert(pair.first, pair.second, d);
  }

  SearchConfig cfg;
  for (int len = commit.j; len >= 3; --len) cfg.lengths.push_back(len);
  cfg.initial_ub = static_cast<int>(rep.label_count) + 1;
  const auto spent = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
  cfg.time_budget = std::max(std::chrono::milliseconds(1), options.tail_budget - spent);
  cfg.fixed_context = std::move(context);
  cfg.threads = options.threads;
  const SearchResult res = search_lambda(cfg);
  rep.tail_exact = res.exact;
  rep.tail_fallback = !res.exact;

  if (res.found && res.optimum < static_cast<int>(rep.label_count)) {
    rep.cycles = std::move(head);
    rep.phase_starts.resize(commit.phase_starts);
    rep.phase_starts.push_back(commit.j);
    rep.phase_count = static_cast<int>(rep.phase_starts.size());
    const int phase = commit.phase + 1;
    for (const auto& c : res.witness.cycles()) {
      RunSeq seq;
      for (Label l : c.labels()) seq.append(Run{l, 1, false});
      rep.cycles.push_back(CycleRecord{c.length(), phase, CycleStep::searched, false, std::move(seq)});
    }
    rep.label_count = static_cast<std::size_t>(res.optimum);
    out.family = materialize(rep);
  }
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace cyclabel
