#include "snsr/graph/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string_view>

namespace snsr {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    std::size_t start = pos;
    while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    if (pos > start) out.push_back(line.substr(start, pos - start));
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view token, T& value) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc() && ptr == last;
}

[[noreturn]] void parse_fail(int line_no, const std::string& msg) {
  throw Error(ErrorCode::parse, "edge list line " + std::to_string(line_no) + ": " + msg);
}

}  // namespace

Graph Graph::create(Index node_count, std::vector<Edge> edges, WeightSign sign) {
  require(node_count > 0, ErrorCode::invalid_argument, "graph node count must be positive");
  for (Edge& e : edges) {
    require(e.i >= 0 && e.j >= 0 && e.i < node_count && e.j < node_count,
            ErrorCode::invalid_argument,
            "edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                ") index out of range for N=" + std::to_string(node_count));
    require(e.i != e.j, ErrorCode::invalid_argument,
            "self-loop at node " + std::to_string(e.i));
    require(std::isfinite(e.w), ErrorCode::invalid_argument, "non-finite edge weight");
    if (sign == WeightSign::unsigned_weights) {
      require(e.w > 0.0, ErrorCode::invalid_argument,
              "unsigned graph requires positive weights, edge (" + std::to_string(e.i) +
                  ", " + std::to_string(e.j) + ") has " + std::to_string(e.w));
    } else {
      require(e.w != 0.0, ErrorCode::invalid_argument,
              "signed graph forbids zero weights, edge (" + std::to_string(e.i) + ", " +
                  std::to_string(e.j) + ")");
    }
    if (e.i > e.j) std::swap(e.i, e.j);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  for (std::size_t k = 1; k < edges.size(); ++k) {
    require(!(edges[k].i == edges[k - 1].i && edges[k].j == edges[k - 1].j),
            ErrorCode::invalid_argument,
            "duplicate edge (" + std::to_string(edges[k].i) + ", " +
                std::to_string(edges[k].j) + ")");
  }
  return Graph(node_count, std::move(edges), sign);
}

bool Graph::has_negative_weights() const {
  return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.w < 0.0; });
}

int Graph::component_count() const {
  std::vector<Index> parent(static_cast<std::size_t>(node_count_));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Index v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  int components = node_count_;
  for (const Edge& e : edges_) {
    Index a = find(e.i);
    Index b = find(e.j);
    if (a != b) {
      parent[std::max(a, b)] = std::min(a, b);
      --components;
    }
  }
  return components;
}

Graph load_graph(std::istream& in, WeightSign sign) {
  std::string line;
  int line_no = 0;
  bool have_header = false;
  long long n = 0;
  long long m = 0;
  std::vector<Edge> edges;
  std::vector<int> edge_lines;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto tokens = split_ws(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    if (!have_header) {
      if (tokens.size() != 2 || !parse_number(tokens[0], n) || !parse_number(tokens[1], m)) {
        parse_fail(line_no, "expected header \"N M\"");
      }
      if (n <= 0) parse_fail(line_no, "node count must be positive");
      if (m < 0) parse_fail(line_no, "edge count must be non-negative");
      have_header = true;
      continue;
    }
    if (static_cast<long long>(edges.size()) == m) {
      parse_fail(line_no, "more edge lines than declared M=" + std::to_string(m));
    }
    long long i = 0;
    long long j = 0;
    double w = 0.0;
    if (tokens.size() != 3 || !parse_number(tokens[0], i) || !parse_number(tokens[1], j) ||
        !parse_number(tokens[2], w)) {
      parse_fail(line_no, "expected \"i j w\"");
    }
    if (i < 0 || j < 0 || i >= n || j >= n) {
      parse_fail(line_no, "index out of range (N=" + std::to_string(n) + ")");
    }
    if (i == j) parse_fail(line_no, "self-loop at node " + std::to_string(i));
    if (!std::isfinite(w)) parse_fail(line_no, "non-finite weight");
    if (sign == WeightSign::signed_weights && w == 0.0) {
      parse_fail(line_no, "zero weight not allowed in signed mode");
    }
    if (sign == WeightSign::unsigned_weights && w <= 0.0) {
      parse_fail(line_no, "weight must be positive in unsigned mode");
    }
    edges.push_back({static_cast<Index>(i), static_cast<Index>(j), w});
    edge_lines.push_back(line_no);
  }
  if (!have_header) parse_fail(line_no, "missing header \"N M\"");
  if (static_cast<long long>(edges.size()) != m) {
    parse_fail(line_no, "expected " + std::to_string(m) + " edges, found " +
                            std::to_string(edges.size()));
  }
  // Duplicate detection with line attribution before canonical sorting.
  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  auto key = [&](std::size_t k) {
    return std::pair(std::min(edges[k].i, edges[k].j), std::max(edges[k].i, edges[k].j));
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (key(order[k]) == key(order[k - 1])) {
      parse_fail(edge_lines[std::max(order[k], order[k - 1])], "duplicate edge");
    }
  }
  return Graph::create(static_cast<Index>(n), std::move(edges), sign);
}

Graph load_graph_file(const std::filesystem::path& path, WeightSign sign) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "file not found: " + path.string());
  return load_graph(in, sign);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.node_count() << ' ' << g.edge_count() << '\n';
  std::ostringstream buf;
  buf.precision(17);
  for (const Edge& e : g.edges()) {
    buf.str("");
    buf << e.w;
    out << e.i << ' ' << e.j << ' ' << buf.str() << '\n';
  }
}

}  // namespace snsr
