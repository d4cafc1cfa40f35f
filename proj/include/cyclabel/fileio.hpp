#pragma once

// The labeling text format and the benchmark CSV.
//
//   # family n=<N> directed=<0|1> scheme=<name>
//   C <j>: v0 v1 ... v_{j-1}
//
// One cycle per line in decreasing length. On input, lines starting with '#'
// are comments (the header is read when present), blank lines are skipped
// and cycles may come in any order.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cyclabel/core.hpp"

namespace cyclabel {

struct SchemeReport;

struct DocumentHeader {
  int n = 0;  // 0: take the largest cycle length
  bool directed = false;
  std::string scheme = "unknown";
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

std::string serialize(const FamilyLabeling& family, const DocumentHeader& header = {});

struct ParsedDocument {
  FamilyLabeling family;
  DocumentHeader header;
  bool has_header = false;
};

// Structural checks only: distance validity is the validator's business.
// `force_directed` overrides the header flag.
ParsedDocument parse_document(std::string_view text, bool force_directed = false);
FamilyLabeling parse(std::string_view text);

// Reads a whole file; throws std::runtime_error when it cannot be opened.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

// n,scheme,labels,phases,elapsed_ms with CRLF line ends.
std::string write_csv(const std::vector<SchemeReport>& rows);

}  // namespace cyclabel
