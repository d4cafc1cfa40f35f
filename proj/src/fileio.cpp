#include "cyclabel/fileio.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "cyclabel/chain.hpp"

namespace cyclabel {

std::string serialize(const FamilyLabeling& family, const DocumentHeader& header) {
  int n = header.n;
  if (n == 0 && !family.empty()) n = family.cycles().front().length();
  std::string out = "# family n=" + std::to_string(n) + " directed=" + (family.directed() ? "1" : "0") +
                    " scheme=" + (header.scheme.empty() ? "unknown" : header.scheme) + "\n";
  for (const auto& c : family.cycles()) {
    out += "C " + std::to_string(c.length()) + ":";
    for (Label l : c.labels()) {
      out += ' ';
      out += std::to_string(l);
    }
    out += '\n';
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <class Int>
bool to_int(std::string_view token, Int& out) {
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return !token.empty() && ec == std::errc() && ptr == token.data() + token.size();
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

void read_header(std::string_view body, DocumentHeader& h, std::size_t line) {
  // body follows "# family"
  for (std::string_view field : split_ws(body)) {
    const std::size_t eq = field.find('=');
    if (eq == std::string_view::npos) throw ParseError(line, "header field without '=': " + std::string(field));
    const std::string_view key = field.substr(0, eq);
    const std::string_view value = field.substr(eq + 1);
    if (key == "n") {
      if (!to_int(value, h.n) || h.n < 0) throw ParseError(line, "bad n in header");
    } else if (key == "directed") {
      if (value != "0" && value != "1") throw ParseError(line, "directed must be 0 or 1");
      h.directed = value == "1";
    } else if (key == "scheme") {
      h.scheme = std::string(value);
    }
  }
}

}  // namespace

ParsedDocument parse_document(std::string_view text, bool force_directed) {
  ParsedDocument doc;
  std::vector<CycleLabeling> cycles;
  std::set<int> lengths;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '#') {
      const std::string_view body = trim(line.substr(1));
      if (!doc.has_header && body.substr(0, 6) == "family" && (body.size() == 6 || body[6] == ' ' || body[6] == '\t')) {
        read_header(body.substr(6), doc.header, line_no);
        doc.has_header = true;
      }
      continue;
    }
    if (line.front() != 'C') throw ParseError(line_no, "expected 'C <j>: labels'");
    const std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) throw ParseError(line_no, "missing ':' after the cycle length");
    int j = 0;
    if (!to_int(trim(line.substr(1, colon - 1)), j)) throw ParseError(line_no, "cycle length is not an integer");
    if (j < 3) throw ParseError(line_no, "cycle length must be at least 3");
    if (j > kMaxCycleLength) throw ParseError(line_no, "cycle length exceeds the supported maximum");
    const auto tokens = split_ws(line.substr(colon + 1));
    if (tokens.size() != static_cast<std::size_t>(j)) {
      throw ParseError(line_no, "C " + std::to_string(j) + " lists " + std::to_string(tokens.size()) + " labels");
    }
    std::vector<Label> labels;
    labels.reserve(tokens.size());
    std::set<Label> seen;
    for (std::string_view t : tokens) {
      Label l = 0;
      if (!to_int(t, l)) throw ParseError(line_no, "bad label '" + std::string(t) + "'");
      if (!seen.insert(l).second) throw ParseError(line_no, "duplicate label " + std::to_string(l) + " in cycle");
      labels.push_back(l);
    }
    if (!lengths.insert(j).second) throw ParseError(line_no, "duplicate cycle length " + std::to_string(j));
    cycles.emplace_back(std::move(labels));
  }
  doc.header.directed = doc.header.directed || force_directed;
  doc.family = FamilyLabeling(std::move(cycles), doc.header.directed);
  return doc;
}

FamilyLabeling parse(std::string_view text) { return parse_document(text).family; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::string write_csv(const std::vector<SchemeReport>& rows) {
  std::string out = "n,scheme,labels,phases,elapsed_ms\r\n";
  char ms[32];
  for (const auto& r : rows) {
    std::snprintf(ms, sizeof ms, "%.3f", r.elapsed_ms);
    out += std::to_string(r.n) + "," + r.scheme + "," + std::to_string(r.label_count) + "," +
           std::to_string(r.phase_count) + "," + ms + "\r\n";
  }
  return out;
}

}  // namespace cyclabel
