// Connected undirected graphs with ordered edges (n < m).
//
// Vertices are 0-based. Grids use row-major numbering (i, j) -> i * cols + j
// and store right and down neighbours only.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hyden {

struct Edge {
  std::size_t n;
  std::size_t m;
  friend bool operator==(const Edge&, const Edge&) = default;
};

enum class GraphKind { line, grid, general };

class Graph {
 public:
  static Graph line(std::size_t n);
  /// A grid with a single row or column is returned as the equivalent line graph.
  static Graph grid(std::size_t rows, std::size_t cols);
  /// Validates n < m, no duplicates, in-range indices, and connectivity.
  static Graph from_edges(std::size_t n_vertices, std::vector<Edge> edges);

  std::size_t num_vertices() const { return n_vertices_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(std::size_t e) const { return edges_.at(e); }

  /// nu_n: number of edges incident to vertex n.
  std::size_t degree(std::size_t n) const;
  std::span<const std::size_t> degrees() const { return degrees_; }

  /// Edge indices where n is the first (resp. second) endpoint, ascending.
  std::span<const std::size_t> edges_as_first(std::size_t n) const;
  std::span<const std::size_t> edges_as_second(std::size_t n) const;

  GraphKind kind() const { return kind_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool is_connected() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_vertices_ == b.n_vertices_ && a.edges_ == b.edges_;
  }

 private:
  Graph(std::size_t n_vertices, std::vector<Edge> edges, GraphKind kind,
        std::size_t rows, std::size_t cols);

  std::size_t n_vertices_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> degrees_;
  // CSR-style incidence lists.
  std::vector<std::size_t> first_offsets_, first_edges_;
  std::vector<std::size_t> second_offsets_, second_edges_;
  GraphKind kind_ = GraphKind::general;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
};

}  // namespace hyden
