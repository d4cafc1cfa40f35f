// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Timing limits are part of each verdict.
//
// CYCLABEL_ACCEPT_LONG=1 additionally runs the exact search for n = 16.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cyclabel/bounds.hpp"
#include "cyclabel/chain.hpp"
#include "cyclabel/fileio.hpp"
#include "cyclabel/schemes.hpp"
#include "cyclabel/search.hpp"
#include "cyclabel/validator.hpp"
#include "oracles.hpp"

using namespace cyclabel;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("failed: " + what);
    }
  }
  void note(const std::string& what) { notes.push_back(what); }
};

int failures = 0;

void run(int id, const std::string& title, double limit_s, const std::function<void(Verdict&)>& body) {
  Verdict v;
  const auto t0 = Clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.require(false, std::string("exception: ") + e.what());
  }
  const double took = seconds_since(t0);
  std::ostringstream time;
  time.precision(2);
  time << std::fixed << took << " s";
  if (took > limit_s) v.require(false, "took " + time.str() + ", limit " + std::to_string(static_cast<int>(limit_s)) + " s");
  if (!v.pass) ++failures;
  std::cout << "criterion " << id << ": " << (v.pass ? "PASS" : "FAIL") << "  " << title << " (" << time.str() << ")\n";
  for (const auto& n : v.notes) std::cout << "    " << n << "\n";
  std::cout.flush();
}

// Reference counts for n = 7..18 and the measured values that differ by one.
const std::vector<int> kChain = {10, 13, 14, 17, 19, 21, 24, 28, 30, 33, 35, 38};
const std::vector<int> kEnhanced = {10, 12, 14, 17, 18, 21, 23, 25, 29, 33, 34, 38};
const std::vector<int> kHybrid = {10, 11, 14, 16, 18, 20, 22, 25, 28, 31, 33, 36};

const std::map<int, std::string> kChainReasons = {
    {12, "the chain is used up by C_4, so C_3 starts a phase on one fresh label"},
};
const std::map<int, std::string> kEnhancedReasons = {
    {13, "the last phase opens a fresh two-label arc for C_6; trick-2 pair selection is unspecified"},
    {17, "the last phase opens a fresh arc one cycle earlier; trick-2 pair selection is unspecified"},
};
const std::map<int, std::string> kHybridReasons = {
    {13, "inherits the enhanced n = 13 prefix, one label worse than the reference one"},
    {15, "the enhanced prefix handed to the tail search fixes one more label than the reference"},
    {17, "the tail search reaches the optimum lambda(17) = 32, one below the reference"},
};

void compare_table(Verdict& v, const std::string& name, const std::vector<int>& table,
                   const std::map<int, std::string>& reasons, const std::function<std::size_t(int)>& count) {
  std::ostringstream row;
  row << name << ":";
  for (int n = 7; n <= 18; ++n) {
    const int want = table[static_cast<std::size_t>(n - 7)];
    const int got = static_cast<int>(count(n));
    row << " " << got;
    if (got == want) continue;
    const auto reason = reasons.find(n);
    v.require(std::abs(got - want) <= 1, name + " n=" + std::to_string(n) + " off by more than one");
    v.require(reason != reasons.end(), name + " n=" + std::to_string(n) + " deviates without a logged reason");
    v.note("deviation " + name + " n=" + std::to_string(n) + ": " + std::to_string(got) + " vs " + std::to_string(want) +
           (reason != reasons.end() ? "; " + reason->second : ""));
  }
  v.note(row.str());
}

// Work items spread over all cores; items are claimed through an atomic cursor.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

FamilyLabeling relabel_and_move(const FamilyLabeling& f, std::mt19937& rng) {
  const auto universe = f.label_universe();
  std::vector<Label> image(universe.size());
  std::iota(image.begin(), image.end(), Label{0});
  for (auto& l : image) l = l * 3 + static_cast<Label>(rng() % 3);
  std::shuffle(image.begin(), image.end(), rng);
  std::map<Label, Label> to;
  for (std::size_t i = 0; i < universe.size(); ++i) to[universe[i]] = image[i];

  std::vector<CycleLabeling> cycles;
  for (const auto& c : f.cycles()) {
    if (cycles.size() > 0 && rng() % 4 == 0) continue;
    std::vector<Label> seq;
    for (Label l : c.labels()) seq.push_back(to[l]);
    CycleLabeling moved = rotate(CycleLabeling(std::move(seq)), static_cast<int>(rng() % static_cast<unsigned>(c.length())));
    if (!f.directed() && rng() % 2 == 0) moved = reflect(moved);
    cycles.push_back(std::move(moved));
  }
  return FamilyLabeling(std::move(cycles), f.directed());
}

}  // namespace

int main() {
  std::cout << "hardware threads: " << std::max(1u, std::thread::hardware_concurrency()) << "\n";

  run(1, "optimal fixtures parse, validate and use the optimal counts", 1, [](Verdict& v) {
    const std::vector<int> lambda = {10, 11, 14, 16, 18, 20, 22, 25, 27, 30, 32};
    for (int n = 7; n <= 17; ++n) {
      const auto f = oracle::load_fixture(n);
      const auto r = validate(f);
      v.require(r.valid, "fixture n=" + std::to_string(n) + " is valid");
      v.require(static_cast<int>(r.label_count) == lambda[static_cast<std::size_t>(n - 7)],
                "fixture n=" + std::to_string(n) + " has " + std::to_string(r.label_count) + " labels");
    }
  });

  run(2, "directed labelings are valid and optimal", 60, [](Verdict& v) {
    for (int n = 3; n <= 500; ++n) {
      const auto f = directed_labeling(n);
      const auto r = validate(f);
      v.require(f.directed() && r.valid, "directed n=" + std::to_string(n) + " is valid");
      const std::int64_t want = n == 3 ? 3 : lambda_directed_formula(n);
      v.require(static_cast<std::int64_t>(r.label_count) == want, "directed n=" + std::to_string(n) + " count");
      if (n <= 6) {
        v.require(oracle::brute_min_directed(n) == static_cast<int>(r.label_count),
                  "directed n=" + std::to_string(n) + " matches the brute-force minimum");
      }
    }
  });

  run(3, "folklore decoder returns every true distance for n <= 300", 60, [](Verdict& v) {
    std::atomic<long long> pairs{0};
    std::atomic<int> wrong{0};
    parallel_for(298, [&](std::size_t k) {
      const int n = 300 - static_cast<int>(k);
      const auto fl = folklore_labeling(n);
      long long local = 0;
      for (const auto& c : fl.family.cycles()) {
        for (int p = 0; p < c.length(); ++p) {
          for (int q = p + 1; q < c.length(); ++q) {
            const auto& a = fl.triples[c[p]];
            const auto& b = fl.triples[c[q]];
            if (decode_folklore(n, a, b) != c.distance_between(p, q)) ++wrong;
            ++local;
          }
        }
      }
      pairs += local;
    });
    v.require(wrong == 0, std::to_string(wrong.load()) + " wrong decodes");
    v.note(std::to_string(pairs.load()) + " pairs decoded");
  });

  run(4, "chain scheme counts for n = 7..18", 1, [](Verdict& v) {
    compare_table(v, "ch", kChain, kChainReasons, [](int n) { return chain_scheme(n, false).report.label_count; });
  });

  run(5, "enhanced and hybrid counts for n = 7..18 (tail budget 60 s)", 15 * 60, [](Verdict& v) {
    compare_table(v, "ch+", kEnhanced, kEnhancedReasons,
                  [](int n) { return enhanced_chain(n, EnhancedOptions{.materialize = false}).report.label_count; });
    compare_table(v, "ch++", kHybrid, kHybridReasons, [&v](int n) {
      const auto r = hybrid_scheme(n).report;
      if (r.tail_fallback) v.note("hybrid n=" + std::to_string(n) + " tail not proven optimal");
      return r.label_count;
    });
  });

  run(6, "all schemes are valid for n <= 2000, and all but the hybrid are arc labelings", 10 * 60, [](Verdict& v) {
    // Directed, folklore, two-arc, chain and enhanced build arc labelings by
    // construction. The hybrid's tail comes from the exact search, whose
    // optima need not be arc labelings, so it is checked for validity and its
    // non-arc cells are listed. Its tail search gets 5 s here; where it falls
    // back, the family is the enhanced one, which is already covered.
    enum Scheme { directed, folklore, two_arc, chain, enhanced, hybrid, kSchemes };
    const char* names[] = {"directed", "folklore", "two-arc", "chain", "enhanced", "hybrid"};
    std::vector<std::pair<int, int>> cells;
    for (int n = 2000; n >= 3; --n) {
      for (int s = 0; s < kSchemes; ++s) cells.emplace_back(n, s);
    }
    std::mutex mu;
    std::vector<int> hybrid_searched;
    std::vector<int> hybrid_not_arc;
    parallel_for(cells.size(), [&](std::size_t i) {
      const auto [n, s] = cells[i];
      FamilyLabeling f;
      switch (s) {
        case directed: f = directed_labeling(n); break;
        case folklore: f = folklore_labeling(n).family; break;
        case two_arc: f = greedy_two_arc(n).family; break;
        case chain: f = chain_scheme(n).family; break;
        case enhanced: f = enhanced_chain(n).family; break;
        case hybrid: {
          auto run = hybrid_scheme(n, HybridOptions{.tail_budget = std::chrono::seconds(5)});
          if (run.report.tail_from == 0 || run.report.tail_fallback) return;
          f = std::move(run.family);
          break;
        }
      }
      const auto r = validate(f);
      std::lock_guard lock(mu);
      if (s == hybrid) {
        hybrid_searched.push_back(n);
        if (r.valid && !r.arc_labeling) hybrid_not_arc.push_back(n);
      }
      if (!r.valid) v.require(false, std::string(names[s]) + " n=" + std::to_string(n) + " is invalid");
      if (r.valid && !r.arc_labeling && s != hybrid) {
        v.require(false, std::string(names[s]) + " n=" + std::to_string(n) + " is not an arc labeling");
      }
    });
    auto list = [](std::vector<int> ns) {
      std::sort(ns.begin(), ns.end());
      std::string out;
      for (int n : ns) out += " " + std::to_string(n);
      return out.empty() ? std::string(" none") : out;
    };
    v.note("hybrid with a searched tail at n =" + list(hybrid_searched));
    v.note("of those, not arc labelings at n =" + list(hybrid_not_arc));
  });

  run(7, "exact search reproduces lambda(7..15)", 6 * 10 * 60, [](Verdict& v) {
    const std::vector<int> lambda = {10, 11, 14, 16, 18, 20, 22, 25, 27, 30};
    const bool long_run = std::getenv("CYCLABEL_ACCEPT_LONG") != nullptr;
    for (int n = 7; n <= (long_run ? 16 : 15); ++n) {
      const auto t0 = Clock::now();
      SearchConfig cfg;
      cfg.lengths = family_lengths(n);
      cfg.threads = std::max(1u, std::thread::hardware_concurrency());
      const auto r = search_lambda(cfg);
      std::ostringstream line;
      line.precision(2);
      line << std::fixed << "lambda(" << n << ") = " << r.optimum << (r.exact ? " exact" : " inexact") << ", "
           << r.stats.nodes << " nodes, " << seconds_since(t0) << " s";
      v.note(line.str());
      v.require(r.exact && r.found && r.optimum == lambda[static_cast<std::size_t>(n - 7)], "lambda(" + std::to_string(n) + ")");
      v.require(validate(r.witness).valid, "witness for n=" + std::to_string(n) + " is valid");
    }
    if (!long_run) v.note("lambda(16) skipped; set CYCLABEL_ACCEPT_LONG=1 to run it (hours)");
  });

  run(8, "search equals the unpruned oracle on every length set up to 14 nodes", 5 * 60, [](Verdict& v) {
    const auto sets = oracle::length_sets_up_to(14);
    for (const auto& lengths : sets) {
      SearchConfig cfg;
      cfg.lengths = lengths;
      const auto r = search_lambda(cfg);
      const int want = oracle::naive_lambda(lengths);
      std::ostringstream name;
      for (int j : lengths) name << j << " ";
      v.require(r.exact && r.optimum == want, "lengths " + name.str() + "give " + std::to_string(r.optimum) +
                                                  ", oracle " + std::to_string(want));
    }
    v.note(std::to_string(sets.size()) + " length sets");
  });

  run(9, "asymptotic bands at n = 10^3..10^6", 10 * 60, [](Verdict& v) {
    for (int n : {1000, 10000, 100000, 1000000}) {
      const double rn = std::sqrt(static_cast<double>(n));
      const auto ch = chain_scheme(n, false).report;
      const auto plus = enhanced_chain(n, EnhancedOptions{.materialize = false}).report;
      const auto folk = static_cast<double>(folklore_label_count(n));
      const double ch_ref = n * (rn + 1.5) / std::sqrt(6.0);
      const double plus_ref = n * (rn + 1.0) / std::sqrt(6.0);
      const std::string at = " at n=" + std::to_string(n);
      v.require(std::abs(static_cast<double>(ch.label_count) - ch_ref) <= 0.1 * n, "chain band" + at);
      v.require(std::abs(static_cast<double>(plus.label_count) - plus_ref) <= 0.1 * n, "enhanced band" + at);
      v.require(std::abs(folk - 0.75 * n * rn) <= 5.0 * n, "folklore band" + at);
      v.require(ch.phase_count <= std::sqrt(2.0 * n) + 3, "chain phase count" + at);
      std::ostringstream line;
      line.precision(0);
      line << std::fixed << "n=" << n << ": ch " << ch.label_count << " (" << ch_ref << "), ch+ " << plus.label_count << " ("
           << plus_ref << "), folklore " << folk << " (" << 0.75 * n * rn << "), phases " << ch.phase_count;
      v.note(line.str());
    }
  });

  run(10, "triangle statistics and the triangle lower bound", 60, [](Verdict& v) {
    const std::int64_t want[] = {1, 0, 5};
    for (int i = 3; i <= 5; ++i) {
      const auto w = want[i - 3];
      v.require(triangle_count_cycle(i) == w, "T(" + std::to_string(i) + ") by cycle enumeration");
      v.require(triangle_count_brute(i) == w, "T(" + std::to_string(i) + ") by subset enumeration");
      v.require(triangle_count_closed(i) == w, "T(" + std::to_string(i) + ") closed form");
    }
    const double ratio = static_cast<double>(triangle_count_cycle(1000)) / (1000.0 * 999.0 * 998.0 / 6.0);
    v.require(ratio >= 0.24 && ratio <= 0.26, "T(1000)/C(1000,3) = " + std::to_string(ratio));
    v.note("T(1000)/C(1000,3) = " + std::to_string(ratio));
    const std::vector<int> lambda = {3, 5, 6, 8, 10, 11, 14, 16, 18, 20, 22, 25, 27, 30, 32};
    for (int n = 3; n <= 17; ++n) {
      v.require(triangle_lower_bound(n) <= lambda[static_cast<std::size_t>(n - 3)],
                "triangle bound at n=" + std::to_string(n));
    }
  });

  run(11, "parse after serialize is the identity", 10, [](Verdict& v) {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 3 + static_cast<int>(rng() % 40);
      FamilyLabeling base;
      switch (trial % 5) {
        case 0: base = directed_labeling(n); break;
        case 1: base = folklore_labeling(n).family; break;
        case 2: base = greedy_two_arc(n).family; break;
        case 3: base = chain_scheme(n).family; break;
        default: base = enhanced_chain(n).family; break;
      }
      const auto f = relabel_and_move(base, rng);
      if (!validate(f).valid) {
        v.require(false, "random family " + std::to_string(trial) + " is valid");
        continue;
      }
      const auto doc = parse_document(serialize(f, DocumentHeader{n, f.directed(), "random"}));
      v.require(doc.family == f, "round trip of random family " + std::to_string(trial));
    }
    for (int n = 7; n <= 17; ++n) {
      const auto f = oracle::load_fixture(n);
      v.require(parse(serialize(f)) == f, "round trip of fixture n=" + std::to_string(n));
    }
  });

  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << "\n";
  return failures == 0 ? 0 : 1;
}
