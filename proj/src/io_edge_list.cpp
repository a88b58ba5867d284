#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "cliquepool/error.hpp"
#include "cliquepool/io.hpp"

namespace cliquepool::io {

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool parse_index(const std::string& tok, std::uint64_t& out) {
  const char* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

}  // namespace

Graph parse_edge_list(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::uint64_t> declared;
  bool seen_content = false;
  std::vector<Edge> edges;
  std::vector<std::size_t> edge_lines;
  std::uint64_t max_index = 0;

  auto fail = [&](const std::string& msg) -> ParseError {
    return ParseError(source + ":" + std::to_string(line_no) + ": " + msg);
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    if (!seen_content && tok[0] == "n") {
      std::uint64_t count = 0;
      if (tok.size() != 2 || !parse_index(tok[1], count)) throw fail("expected 'n <count>'");
      declared = count;
      seen_content = true;
      continue;
    }
    seen_content = true;
    std::uint64_t u = 0;
    std::uint64_t v = 0;
    if (tok.size() != 2 || !parse_index(tok[0], u) || !parse_index(tok[1], v)) {
      throw fail("expected two non-negative node indices");
    }
    if (u > UINT32_MAX - 1 || v > UINT32_MAX - 1) throw fail("node index too large");
    if (declared && (u >= *declared || v >= *declared)) {
      throw fail("edge (" + tok[0] + ", " + tok[1] + ") exceeds declared node count " +
                 std::to_string(*declared));
    }
    max_index = std::max({max_index, u, v});
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
    edge_lines.push_back(line_no);
  }

  if (!declared && edges.empty()) {
    throw ParseError(source + ": no edges and no 'n <count>' header; node count unknown");
  }
  const std::size_t n = declared ? *declared : max_index + 1;
  return build_graph(edges, n);
}

Graph read_edge_list(const std::filesystem::path& path) {
  return parse_edge_list(slurp(path), path.string());
}

Matrix read_feature_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::vector<double> values;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::size_t count = 0;
    for (std::string tok; fields >> tok; ++count) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError(path.string() + ":" + std::to_string(line_no) + ": bad number '" + tok +
                         "'");
      }
    }
    if (count == 0) continue;
    if (rows > 0 && count != cols) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(cols) + " values, found " + std::to_string(count));
    }
    cols = count;
    ++rows;
  }
  Matrix m(rows, cols, std::move(values));
  if (!m.all_finite()) throw ParseError(path.string() + ": non-finite feature value");
  return m;
}

}  // namespace cliquepool::io
