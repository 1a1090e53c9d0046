#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "qmalab/bits.hpp"
#include "qmalab/dense.hpp"
#include "qmalab/pauli.hpp"
#include "qmalab/tableau.hpp"

namespace qmalab {

enum class Color : uint8_t { Black, White };
enum class Region : uint8_t { Tested, Witness };  // V1 / V2

/// Raw graph description as found in graph files: vertex ids 0..N-1 with a
/// color and a region tag, plus undirected edges.
struct GraphSpec {
  struct Vertex {
    std::size_t id;
    Color color;
    Region region;
  };
  std::vector<Vertex> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// Which subgraph a generator or state is taken relative to: the full graph G,
/// the tested-plus-boundary subgraph G' = (V1 u V_connect, E1 u E_connect), or
/// the inner subgraph G'' = (V1, E1).
enum class Subgraph { Full, Tested, Inner };

/// Validated protocol graph. Vertices are reindexed to a canonical qubit
/// order -- V1 black, V1 white, then V2, each block sorted by input id -- so
/// syndrome bit order and all serialized results are reproducible.
class ProtocolGraph {
 public:
  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }

  // Vertex sets as sorted qubit indices. V1 black occupies [0, n1b), V1 white
  // [n1b, n1b+n1w), V2 the rest.
  const std::vector<std::size_t>& v1() const { return v1_; }
  const std::vector<std::size_t>& v1_black() const { return v1_black_; }
  const std::vector<std::size_t>& v1_white() const { return v1_white_; }
  const std::vector<std::size_t>& v2() const { return v2_; }
  const std::vector<std::size_t>& v_connect() const { return v_connect_; }

  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& e1() const { return e1_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& e_connect() const { return e_connect_; }

  Color color(std::size_t q) const { return color_[q]; }
  Region region(std::size_t q) const { return region_[q]; }

  bool in_subgraph(std::size_t q, Subgraph sg) const;

  /// Neighbor set S_q within the chosen subgraph, sorted.
  const std::vector<std::size_t>& neighbors(std::size_t q, Subgraph sg) const;

  /// Qubit index assigned to an input vertex id.
  std::size_t qubit_of(std::size_t vertex_id) const { return qubit_of_[vertex_id]; }
  std::size_t vertex_id_of(std::size_t q) const { return id_of_[q]; }

  /// X_q tensor Z over S_q (neighbors within the chosen subgraph). q must
  /// belong to that subgraph.
  PauliString stabilizer_generator(std::size_t q, Subgraph sg) const;

  friend ProtocolGraph build_graph(const GraphSpec& spec);

 private:
  std::size_t n_ = 0;
  std::vector<Color> color_;
  std::vector<Region> region_;
  std::vector<std::size_t> qubit_of_;
  std::vector<std::size_t> id_of_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_, e1_, e_connect_;
  std::vector<std::size_t> v1_, v1_black_, v1_white_, v2_, v_connect_;
  std::vector<std::vector<std::size_t>> adj_full_, adj_tested_, adj_inner_;
  std::vector<bool> in_tested_;  // V1 u V_connect membership
};

/// Validates and derives all subsets. Throws std::invalid_argument on
/// self-loops, duplicate edges, dangling endpoints, non-bipartite graphs and
/// improper colorings.
ProtocolGraph build_graph(const GraphSpec& spec);

/// Plain-text graph format: header "N M", then N lines "id color region"
/// (color in {b,w}, region in {1,2}), then M lines "i j".
GraphSpec parse_graph(std::istream& in);
GraphSpec load_graph_file(const std::string& path);
std::string format_graph(const GraphSpec& spec);

/// rows x cols grid with V1 = the leftmost v1_cols columns and checkerboard
/// coloring. The remaining columns form V2.
GraphSpec make_grid_spec(std::size_t rows, std::size_t cols, std::size_t v1_cols);

/// CZ layer W over E_connect.
struct EntanglingLayer {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

EntanglingLayer entangling_layer(const ProtocolGraph& g);
void apply_entangling_layer(StabilizerTableau& state, const EntanglingLayer& w);
void apply_entangling_layer(DenseState& state, const EntanglingLayer& w);

/// Graph state of the chosen subgraph on all N qubits: CZ layer over the
/// subgraph's edges applied to |+>^N.
StabilizerTableau graph_state(const ProtocolGraph& g, Subgraph sg = Subgraph::Full);

/// (tensor_j Z_j^{u_j}) |G>; generator j then has sign (-1)^{u_j}.
StabilizerTableau gu_state(const ProtocolGraph& g, const BitVec& u);

}  // namespace qmalab
