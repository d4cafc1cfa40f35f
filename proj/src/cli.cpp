#include "cyclabel/cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "cyclabel/bounds.hpp"
#include "cyclabel/chain.hpp"
#include "cyclabel/fileio.hpp"
#include "cyclabel/schemes.hpp"
#include "cyclabel/search.hpp"
#include "cyclabel/validator.hpp"

namespace cyclabel {

std::vector<int> parse_int_list(const std::string& spec) {
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (s.empty() || used != s.size()) throw std::invalid_argument("not an integer: '" + s + "' in '" + spec + "'");
    return v;
  };
  std::vector<int> out;
  if (const auto dots = spec.find(".."); dots != std::string::npos) {
    const int a = number(spec.substr(0, dots));
    const int b = number(spec.substr(dots + 2));
    const int step = a <= b ? 1 : -1;
    for (int v = a;; v += step) {
      out.push_back(v);
      if (v == b) break;
    }
    return out;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(number(item));
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

namespace {

const std::vector<std::string> kSchemes = {"directed", "folklore", "two-arc", "chain", "enhanced", "hybrid"};

struct Generated {
  FamilyLabeling family;
  SchemeReport report;
};

Generated generate(const std::string& scheme, int n, bool materialize, std::chrono::milliseconds tail_budget,
                   unsigned threads) {
  const auto t0 = std::chrono::steady_clock::now();
  Generated g;
  if (scheme == "directed" || scheme == "folklore") {
    g.report.n = n;
    g.report.scheme = scheme;
    if (scheme == "directed") {
      g.family = directed_labeling(n);
      g.report.label_count = g.family.label_count();
    } else if (materialize) {
      g.family = folklore_labeling(n).family;
      g.report.label_count = g.family.label_count();
    } else {
      g.report.label_count = folklore_label_count(n);
    }
    g.report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return g;
  }
  SchemeRun run;
  if (scheme == "two-arc") {
    run = greedy_two_arc(n, materialize);
  } else if (scheme == "chain") {
    run = chain_scheme(n, materialize);
  } else if (scheme == "enhanced") {
    run = enhanced_chain(n, EnhancedOptions{.materialize = materialize});
  } else {
    run = hybrid_scheme(n, HybridOptions{tail_budget, threads});
  }
  g.family = std::move(run.family);
  g.report = std::move(run.report);
  g.report.cycles.clear();
  return g;
}

std::string summary(const SchemeReport& r) {
  return "scheme=" + r.scheme + " n=" + std::to_string(r.n) + " labels=" + std::to_string(r.label_count) +
         " phases=" + std::to_string(r.phase_count);
}

int cmd_gen(const std::string& scheme, int n, const std::string& out_path, double tail_secs, std::ostream& out,
            std::ostream& err) {
  if (n < 3) {
    err << "error: --n must be at least 3\n";
    return kExitUsage;
  }
  const auto g = generate(scheme, n, true, std::chrono::milliseconds(static_cast<long long>(tail_secs * 1000)), 1);
  const std::string doc = serialize(g.family, DocumentHeader{n, g.family.directed(), scheme});
  if (out_path.empty()) {
    out << doc;
    err << summary(g.report) << "\n";
  } else {
    write_file(out_path, doc);
    out << summary(g.report) << "\n";
  }
  if (g.report.tail_fallback) err << "note: hybrid tail not proven optimal (time budget or label cap)\n";
  return kExitOk;
}

std::optional<ParsedDocument> load(const std::string& path, bool directed, std::ostream& err) {
  try {
    return parse_document(read_file(path), directed);
  } catch (const ParseError& e) {
    err << "parse error: " << path << ": " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return std::nullopt;
}

void print_conflict(const Conflict& c, std::ostream& err) {
  err << "conflict: labels " << c.u << " " << c.v << " at distance " << c.distance1 << " in C_" << c.length1
      << " but " << c.distance2 << " in C_" << c.length2 << "\n";
}

constexpr std::int64_t kTriangleCheckCap = 20'000'000;

int cmd_validate(const std::string& path, bool directed, std::ostream& out, std::ostream& err) {
  const auto doc = load(path, directed, err);
  if (!doc) return kExitUsage;
  const ValidationReport r = validate(doc->family);
  if (!r.valid) {
    out << "valid=0 labels=" << r.label_count << "\n";
    print_conflict(*r.conflict, err);
    return kExitInvalid;
  }
  out << "valid=1 labels=" << r.label_count << " arc_labeling=" << (r.arc_labeling ? 1 : 0) << " triangles_unique=";
  // Listing every triangle is cubic per cycle; large families skip it.
  std::int64_t triangles = 0;
  for (const auto& c : doc->family.cycles()) triangles += triangle_count_closed(c.length());
  if (doc->family.directed()) {
    out << "1\n";
  } else if (triangles > kTriangleCheckCap) {
    out << "skipped\n";
  } else {
    out << (check_triangle_uniqueness(doc->family).has_value() ? 0 : 1) << "\n";
  }
  return kExitOk;
}

int cmd_dist(const std::string& path, Label u, Label v, bool directed, std::ostream& out, std::ostream& err) {
  const auto doc = load(path, directed, err);
  if (!doc) return kExitUsage;
  const ValidationReport r = validate(doc->family);
  if (!r.valid) {
    print_conflict(*r.conflict, err);
    return kExitInvalid;
  }
  if (u == v) {
    out << 0 << "\n";
    return kExitOk;
  }
  const auto d = r.oracle->distance(u, v);
  if (!d) {
    err << "distance undefined: labels " << u << " and " << v << " never share a cycle\n";
    return kExitInvalid;
  }
  out << *d << "\n";
  return kExitOk;
}

int cmd_decode(int n, const std::string& l1, const std::string& l2, std::ostream& out, std::ostream& err) {
  FolkloreLabel a, b;
  try {
    a = parse_folklore_label(l1);
    b = parse_folklore_label(l2);
    if (n < 3) throw std::invalid_argument("--n must be at least 3");
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    out << decode_folklore(n, a, b) << "\n";
  } catch (const std::domain_error& e) {
    err << "distance undefined: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitOk;
}

int cmd_search(const std::string& spec, std::optional<int> ub, std::optional<double> timeout, const std::string& witness,
               unsigned threads, bool quiet, std::ostream& out, std::ostream& err) {
  SearchConfig cfg;
  try {
    cfg.lengths = parse_int_list(spec);
    std::sort(cfg.lengths.rbegin(), cfg.lengths.rend());
    cfg.lengths.erase(std::unique(cfg.lengths.begin(), cfg.lengths.end()), cfg.lengths.end());
    for (int j : cfg.lengths) {
      if (j < 3) throw std::invalid_argument("lengths must be at least 3");
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  cfg.initial_ub = ub;
  if (timeout) cfg.time_budget = std::chrono::milliseconds(static_cast<long long>(*timeout * 1000));
  cfg.threads = threads;
  if (!quiet) {
    cfg.progress = [&err](std::uint64_t nodes, int best) { err << "progress: nodes=" << nodes << " max=" << best << "\n"; };
  }
  SearchResult res;
  try {
    res = search_lambda(cfg);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (!res.found) {
    out << "lambda=none exact=" << (res.exact ? "true" : "false") << " nodes=" << res.stats.nodes << "\n";
    if (res.exact) {
      err << "no labeling below the upper bound\n";
      return kExitInvalid;
    }
    return kExitBudget;
  }
  out << "lambda=" << res.optimum << " exact=" << (res.exact ? "true" : "false") << " nodes=" << res.stats.nodes << "\n";
  if (!witness.empty()) write_file(witness, serialize(res.witness, DocumentHeader{cfg.lengths.front(), false, "search"}));
  return res.exact ? kExitOk : kExitBudget;
}

int cmd_bounds(int n, bool csv, std::ostream& out, std::ostream& err) {
  if (n < 3) {
    err << "error: --n must be at least 3\n";
    return kExitUsage;
  }
  const BoundsReport r = asymptotic_estimates(n);
  out << (csv ? format_bounds_csv(r) : format_bounds_text(r));
  return kExitOk;
}

int cmd_bench(const std::string& schemes_spec, const std::string& n_spec, const std::string& csv_path, unsigned threads,
              double tail_secs, std::ostream& out, std::ostream& err) {
  std::vector<std::string> schemes;
  std::vector<int> ns;
  try {
    std::stringstream ss(schemes_spec);
    std::string s;
    while (std::getline(ss, s, ',')) {
      if (std::find(kSchemes.begin(), kSchemes.end(), s) == kSchemes.end()) throw std::invalid_argument("unknown scheme " + s);
      schemes.push_back(s);
    }
    ns = parse_int_list(n_spec);
    for (int n : ns) {
      if (n < 3) throw std::invalid_argument("every n must be at least 3");
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (schemes.empty()) {
    err << "error: no schemes given\n";
    return kExitUsage;
  }

  struct Cell {
    std::string scheme;
    int n;
  };
  std::vector<Cell> cells;
  for (int n : ns) {
    for (const auto& s : schemes) cells.push_back({s, n});
  }
  std::vector<SchemeReport> rows(cells.size());
  std::atomic<std::size_t> next{0};
  const auto tail = std::chrono::milliseconds(static_cast<long long>(tail_secs * 1000));
  auto work = [&] {
    for (std::size_t i; (i = next++) < cells.size();) {
      rows[i] = generate(cells[i].scheme, cells[i].n, false, tail, 1).report;
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::max(1u, threads); ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  const std::string csv = write_csv(rows);
  if (csv_path.empty()) {
    out << csv;
  } else {
    write_file(csv_path, csv);
  }

  const bool small = std::all_of(ns.begin(), ns.end(), [](int n) { return n <= 18; });
  if (small) {
    std::ostream& grid = csv_path.empty() ? err : out;
    grid << std::setw(4) << "n";
    for (const auto& s : schemes) grid << std::setw(10) << s;
    grid << "\n";
    for (std::size_t r = 0; r < ns.size(); ++r) {
      grid << std::setw(4) << ns[r];
      for (std::size_t c = 0; c < schemes.size(); ++c) grid << std::setw(10) << rows[r * schemes.size() + c].label_count;
      grid << "\n";
    }
  }
  for (const auto& r : rows) {
    if (r.tail_fallback) err << "note: hybrid n=" << r.n << " tail not proven optimal (time budget or label cap)\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distance labelings of cycle families", "cyclabel"};
  app.require_subcommand(1);

  std::string scheme, out_path, path, spec, witness, l1, l2, schemes_spec, n_spec, csv_path;
  int n = 0;
  Label u = 0, v = 0;
  bool directed = false, csv = false, quiet = false;
  std::optional<int> ub;
  std::optional<double> timeout;
  unsigned threads = 1;
  double tail_secs = 60;

  auto* gen = app.add_subcommand("gen", "generate a labeling with one of the schemes");
  gen->add_option("--scheme", scheme, "directed, folklore, two-arc, chain, enhanced or hybrid")
      ->required()
      ->check(CLI::IsMember(kSchemes));
  gen->add_option("--n", n, "largest cycle length")->required();
  gen->add_option("--out", out_path, "write the labeling here instead of standard output");
  gen->add_option("--tail-budget", tail_secs, "hybrid: seconds for the tail search")->capture_default_str();

  auto* val = app.add_subcommand("validate", "check a labeling file");
  val->add_option("path", path)->required();
  val->add_flag("--directed", directed, "treat the cycles as directed");

  auto* dist = app.add_subcommand("dist", "distance between two labels of a valid labeling");
  dist->add_option("path", path)->required();
  dist->add_option("u", u)->required();
  dist->add_option("v", v)->required();
  dist->add_flag("--directed", directed, "treat the cycles as directed");

  auto* dec = app.add_subcommand("decode", "folklore decoder");
  dec->add_option("--n", n)->required();
  dec->add_option("--l1", l1, "b,d,m")->required();
  dec->add_option("--l2", l2, "b,d,m")->required();

  auto* srch = app.add_subcommand("search", "exact minimum number of labels");
  srch->add_option("--lengths", spec, "A..B or a comma list")->required();
  srch->add_option("--ub", ub, "only look for labelings with fewer labels");
  srch->add_option("--timeout", timeout, "seconds");
  srch->add_option("--witness", witness, "write the best labeling here");
  srch->add_option("--threads", threads)->capture_default_str();
  srch->add_flag("--quiet", quiet, "no progress lines");

  auto* bnd = app.add_subcommand("bounds", "closed-form bounds and reference curves");
  bnd->add_option("--n", n)->required();
  bnd->add_flag("--csv", csv);

  auto* bench = app.add_subcommand("bench", "label counts of schemes over a range of n");
  bench->add_option("--schemes", schemes_spec, "comma list")->required();
  bench->add_option("--n-list", n_spec, "A..B or a comma list")->required();
  bench->add_option("--csv", csv_path, "write the CSV here instead of standard output");
  bench->add_option("--threads", threads)->capture_default_str();
  bench->add_option("--tail-budget", tail_secs, "hybrid: seconds for the tail search")->capture_default_str();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) return cmd_gen(scheme, n, out_path, tail_secs, out, err);
    if (*val) return cmd_validate(path, directed, out, err);
    if (*dist) return cmd_dist(path, u, v, directed, out, err);
    if (*dec) return cmd_decode(n, l1, l2, out, err);
    if (*srch) return cmd_search(spec, ub, timeout, witness, threads, quiet, out, err);
    if (*bnd) return cmd_bounds(n, csv, out, err);
    if (*bench) return cmd_bench(schemes_spec, n_spec, csv_path, threads, tail_secs, out, err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace cyclabel
