#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

#include "cyclabel/chain.hpp"
#include "cyclabel/fileio.hpp"
#include "cyclabel/schemes.hpp"
#include "cyclabel/validator.hpp"
#include "oracles.hpp"

using namespace cyclabel;

namespace {

// FNV-1a 64 of each optimal-labeling fixture, as committed.
const std::map<int, std::uint64_t> kDigests = {
    {7, 0x236f20ee65c960b6ULL},  {8, 0x9dcd757c5ffc80e7ULL},  {9, 0x731ebfacb2a06f3bULL},
    {10, 0x4a7152a14d2b39a2ULL}, {11, 0x0613a6b109ae356fULL}, {12, 0x8a9c51b1726b0974ULL},
    {13, 0x0a472464c5b8a546ULL}, {14, 0x18b25271d4c9121dULL}, {15, 0x6c6c7eac3e9581baULL},
    {16, 0x896a6c7c8b469ccdULL}, {17, 0xd65bcb1ecc6c1c39ULL},
};

int expect_parse_error(std::string_view text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return static_cast<int>(e.line());
  }
  return -1;
}

}  // namespace

TEST_CASE("serialize a single triangle") {
  const FamilyLabeling f({CycleLabeling({0, 1, 2})});
  CHECK(serialize(f) == "# family n=3 directed=0 scheme=unknown\nC 3: 0 1 2\n");
  CHECK(serialize(f, {3, false, "chain"}) == "# family n=3 directed=0 scheme=chain\nC 3: 0 1 2\n");
}

TEST_CASE("the n = 7 fixture serializes to five cycle lines over 10 ids") {
  const auto f = oracle::load_fixture(7);
  const auto text = serialize(f);
  CHECK(std::count(text.begin(), text.end(), '\n') == 6);  // header + C7..C3
  CHECK(text.rfind("# family n=7 directed=0 scheme=unknown\nC 7: ", 0) == 0);
  CHECK(f.label_count() == 10);
}

TEST_CASE("parse accepts comments, blank lines and any cycle order") {
  const auto f = parse("C 3: 0 1 2");
  REQUIRE(f.size() == 1);
  CHECK(*f.find(3) == CycleLabeling({0, 1, 2}));

  const auto g = parse("# a note\n\nC 3: 0 1 5\n  \nC 4: 0 1 2 3\n# trailing\n");
  CHECK(g.lengths() == std::vector<int>{4, 3});

  const auto doc = parse_document("# family n=9 directed=1 scheme=directed\nC 3: 0 1 2\n");
  CHECK(doc.has_header);
  CHECK(doc.header.n == 9);
  CHECK(doc.header.directed);
  CHECK(doc.header.scheme == "directed");
  CHECK(doc.family.directed());
  CHECK(parse_document("C 3: 0 1 2\n", true).family.directed());
  CHECK_FALSE(parse_document("C 3: 0 1 2\n").has_header);
}

TEST_CASE("parse errors carry the line number") {
  CHECK(expect_parse_error("C 3: 0 0 2") == 1);
  CHECK(expect_parse_error("C 3: 0 1 2\nC 3: 3 4 5\n") == 2);
  CHECK(expect_parse_error("C 4: 0 1 2\n") == 1);
  CHECK(expect_parse_error("C 3: 0 1 2\nX 3: 0 1 2\n") == 2);
  CHECK(expect_parse_error("C 2: 0 1\n") == 1);
  CHECK(expect_parse_error("C 3 0 1 2\n") == 1);
  CHECK(expect_parse_error("C 3: 0 1 -2\n") == 1);
  CHECK(expect_parse_error("C 3: 0 1 x\n") == 1);
  CHECK(expect_parse_error("# family n=3 directed=2 scheme=x\nC 3: 0 1 2\n") == 1);
  try {
    parse("C 3: 0 0 2");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("duplicate label") != std::string::npos);
  }
}

TEST_CASE("round trips") {
  const auto f = chain_scheme(50).family;
  const auto text = serialize(f, {50, false, "chain"});
  CHECK(parse(text) == f);
  CHECK(serialize(parse(text), {50, false, "chain"}) == text);

  const auto d = directed_labeling(12);
  const auto dtext = serialize(d, {12, true, "directed"});
  const auto back = parse(dtext);
  CHECK(back == d);
  CHECK(back.directed());

  for (int n = 7; n <= 17; ++n) {
    const auto fx = oracle::load_fixture(n);
    CHECK(parse(serialize(fx)) == fx);
  }
}

TEST_CASE("fixtures are intact and optimal") {
  const std::vector<std::size_t> lambda = {10, 11, 14, 16, 18, 20, 22, 25, 27, 30, 32};
  for (int n = 7; n <= 17; ++n) {
    CAPTURE(n);
    const auto text = read_file(oracle::fixture_path(n));
    CHECK(oracle::fnv1a(text) == kDigests.at(n));
    const auto doc = parse_document(text);
    CHECK(doc.header.n == n);
    CHECK(doc.header.scheme == "optimal");
    const auto r = validate(doc.family);
    CHECK(r.valid);
    CHECK(r.label_count == lambda[static_cast<std::size_t>(n - 7)]);
  }
}

TEST_CASE("benchmark CSV") {
  CHECK(write_csv({}) == "n,scheme,labels,phases,elapsed_ms\r\n");
  const auto row = write_csv({chain_scheme(7, false).report});
  CHECK(row.find("\r\n7,chain,10,") != std::string::npos);

  std::vector<SchemeReport> rows;
  for (int n = 7; n <= 18; ++n) {
    rows.push_back(chain_scheme(n, false).report);
    rows.push_back(enhanced_chain(n, {.materialize = false}).report);
    rows.push_back(hybrid_scheme(n, {std::chrono::milliseconds(1), 1}).report);
  }
  const auto csv = write_csv(rows);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 37);
  CHECK(std::count(csv.begin(), csv.end(), '\r') == 37);
  CHECK(csv.find("\r\n17,enhanced,35,") != std::string::npos);
}

TEST_CASE("missing files") {
  CHECK_THROWS_AS(read_file("/nonexistent/file.txt"), std::runtime_error);
}
