#include "hyden/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hyden {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

void build_csr(std::size_t n_vertices, const std::vector<Edge>& edges, bool first,
               std::vector<std::size_t>& offsets, std::vector<std::size_t>& list) {
  offsets.assign(n_vertices + 1, 0);
  for (const auto& e : edges) ++offsets[(first ? e.n : e.m) + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  list.assign(edges.size(), 0);
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    list[cursor[first ? edges[k].n : edges[k].m]++] = k;
  }
}

}  // namespace

Graph::Graph(std::size_t n_vertices, std::vector<Edge> edges, GraphKind kind,
             std::size_t rows, std::size_t cols)
    : n_vertices_(n_vertices), edges_(std::move(edges)), kind_(kind), rows_(rows), cols_(cols) {
  degrees_.assign(n_vertices_, 0);
  for (const auto& e : edges_) {
    ++degrees_[e.n];
    ++degrees_[e.m];
  }
  build_csr(n_vertices_, edges_, true, first_offsets_, first_edges_);
  build_csr(n_vertices_, edges_, false, second_offsets_, second_edges_);
}

Graph Graph::line(std::size_t n) {
  if (n < 2) throw std::invalid_argument("line graph needs at least 2 vertices");
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) edges.push_back({k, k + 1});
  return Graph(n, std::move(edges), GraphKind::line, 1, n);
}

Graph Graph::grid(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0 || rows * cols < 2) {
    throw std::invalid_argument("grid graph needs rows * cols >= 2");
  }
  if (rows == 1 || cols == 1) return line(rows * cols);
  std::vector<Edge> edges;
  edges.reserve(rows * (cols - 1) + cols * (rows - 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const std::size_t v = i * cols + j;
      if (j + 1 < cols) edges.push_back({v, v + 1});
      if (i + 1 < rows) edges.push_back({v, v + cols});
    }
  }
  return Graph(rows * cols, std::move(edges), GraphKind::grid, rows, cols);
}

Graph Graph::from_edges(std::size_t n_vertices, std::vector<Edge> edges) {
  if (n_vertices < 2) throw std::invalid_argument("graph needs at least 2 vertices");
  for (const auto& e : edges) {
    if (e.n >= e.m) {
      throw std::invalid_argument("edge (" + std::to_string(e.n) + ", " +
                                  std::to_string(e.m) + ") violates n < m");
    }
    if (e.m >= n_vertices) throw std::invalid_argument("edge endpoint out of range");
  }
  auto sorted = edges;
  std::sort(sorted.begin(), sorted.end(),
            [](const Edge& a, const Edge& b) { return a.n != b.n ? a.n < b.n : a.m < b.m; });
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("duplicate edge");
  }
  Graph g(n_vertices, std::move(edges), GraphKind::general, 0, 0);
  if (!g.is_connected()) throw std::invalid_argument("graph is not connected");
  return g;
}

std::size_t Graph::degree(std::size_t n) const {
  if (n >= n_vertices_) throw std::out_of_range("vertex index out of range");
  return degrees_[n];
}

std::span<const std::size_t> Graph::edges_as_first(std::size_t n) const {
  return std::span(first_edges_).subspan(first_offsets_[n],
                                         first_offsets_[n + 1] - first_offsets_[n]);
}

std::span<const std::size_t> Graph::edges_as_second(std::size_t n) const {
  return std::span(second_edges_).subspan(second_offsets_[n],
                                          second_offsets_[n + 1] - second_offsets_[n]);
}

bool Graph::is_connected() const {
  DisjointSets sets(n_vertices_);
  std::size_t components = n_vertices_;
  for (const auto& e : edges_) {
    if (sets.unite(e.n, e.m)) --components;
  }
  return components == 1;
}

}  // namespace hyden
