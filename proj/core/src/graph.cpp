#include "qmalab/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qmalab {

bool ProtocolGraph::in_subgraph(std::size_t q, Subgraph sg) const {
  switch (sg) {
    case Subgraph::Full: return q < n_;
    case Subgraph::Tested: return in_tested_[q];
    case Subgraph::Inner: return region_[q] == Region::Tested;
  }
  return false;
}

const std::vector<std::size_t>& ProtocolGraph::neighbors(std::size_t q, Subgraph sg) const {
  switch (sg) {
    case Subgraph::Full: return adj_full_[q];
    case Subgraph::Tested: return adj_tested_[q];
    case Subgraph::Inner: return adj_inner_[q];
  }
  throw std::logic_error("unreachable");
}

PauliString ProtocolGraph::stabilizer_generator(std::size_t q, Subgraph sg) const {
  if (q >= n_) throw std::out_of_range("stabilizer_generator: qubit out of range");
  if (!in_subgraph(q, sg)) {
    throw std::domain_error("stabilizer_generator: vertex " + std::to_string(vertex_id_of(q)) +
                            " is not in the requested subgraph");
  }
  PauliString p = PauliString::single(n_, q, 'X');
  for (std::size_t nb : neighbors(q, sg)) p.set_op(nb, 'Z');
  return p;
}

ProtocolGraph build_graph(const GraphSpec& spec) {
  std::size_t n = spec.vertices.size();
  if (n == 0) throw std::invalid_argument("build_graph: empty vertex set");

  std::vector<bool> seen(n, false);
  std::vector<Color> color_by_id(n);
  std::vector<Region> region_by_id(n);
  for (const auto& v : spec.vertices) {
    if (v.id >= n) {
      throw std::invalid_argument("build_graph: vertex id " + std::to_string(v.id) +
                                  " out of range; ids must be 0.." + std::to_string(n - 1));
    }
    if (seen[v.id]) {
      throw std::invalid_argument("build_graph: duplicate vertex id " + std::to_string(v.id));
    }
    seen[v.id] = true;
    color_by_id[v.id] = v.color;
    region_by_id[v.id] = v.region;
  }

  std::set<std::pair<std::size_t, std::size_t>> edge_set;
  for (auto [a, b] : spec.edges) {
    if (a >= n || b >= n) {
      throw std::invalid_argument("build_graph: edge endpoint out of range (" +
                                  std::to_string(a) + "," + std::to_string(b) + ")");
    }
    if (a == b) {
      throw std::invalid_argument("build_graph: self-loop at vertex " + std::to_string(a));
    }
    auto e = std::minmax(a, b);
    if (!edge_set.insert({e.first, e.second}).second) {
      throw std::invalid_argument("build_graph: duplicate edge (" + std::to_string(a) + "," +
                                  std::to_string(b) + ")");
    }
  }

  // Bipartiteness of the graph itself (BFS 2-coloring), then properness of
  // the supplied coloring. The relaxed tests partition measurements by color,
  // so both must hold.
  {
    std::vector<std::vector<std::size_t>> adj(n);
    for (auto [a, b] : edge_set) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    std::vector<int> side(n, -1);
    for (std::size_t root = 0; root < n; ++root) {
      if (side[root] != -1) continue;
      side[root] = 0;
      std::vector<std::size_t> queue{root};
      while (!queue.empty()) {
        std::size_t v = queue.back();
        queue.pop_back();
        for (std::size_t w : adj[v]) {
          if (side[w] == -1) {
            side[w] = 1 - side[v];
            queue.push_back(w);
          } else if (side[w] == side[v]) {
            throw std::invalid_argument("build_graph: graph is not bipartite (odd cycle through "
                                        "vertex " + std::to_string(w) + ")");
          }
        }
      }
    }
    for (auto [a, b] : edge_set) {
      if (color_by_id[a] == color_by_id[b]) {
        throw std::invalid_argument("build_graph: edge (" + std::to_string(a) + "," +
                                    std::to_string(b) + ") joins two vertices of the same color");
      }
    }
  }

  // Canonical qubit order: V1 black, V1 white, V2; ids ascending inside each
  // block.
  ProtocolGraph g;
  g.n_ = n;
  g.qubit_of_.assign(n, 0);
  g.id_of_.assign(n, 0);
  std::vector<std::size_t> order;
  order.reserve(n);
  auto push_block = [&](auto pred) {
    for (std::size_t id = 0; id < n; ++id) {
      if (pred(id)) order.push_back(id);
    }
  };
  push_block([&](std::size_t id) {
    return region_by_id[id] == Region::Tested && color_by_id[id] == Color::Black;
  });
  push_block([&](std::size_t id) {
    return region_by_id[id] == Region::Tested && color_by_id[id] == Color::White;
  });
  push_block([&](std::size_t id) { return region_by_id[id] == Region::Witness; });
  for (std::size_t q = 0; q < n; ++q) {
    g.id_of_[q] = order[q];
    g.qubit_of_[order[q]] = q;
  }
  g.color_.resize(n);
  g.region_.resize(n);
  for (std::size_t q = 0; q < n; ++q) {
    g.color_[q] = color_by_id[order[q]];
    g.region_[q] = region_by_id[order[q]];
  }

  for (auto [a, b] : edge_set) {
    auto e = std::minmax(g.qubit_of_[a], g.qubit_of_[b]);
    g.edges_.push_back({e.first, e.second});
  }
  std::sort(g.edges_.begin(), g.edges_.end());

  auto tested = [&](std::size_t q) { return g.region_[q] == Region::Tested; };
  std::vector<bool> connect_flag(n, false);
  for (auto [a, b] : g.edges_) {
    if (tested(a) && tested(b)) {
      g.e1_.push_back({a, b});
    } else if (tested(a) != tested(b)) {
      g.e_connect_.push_back({a, b});
      connect_flag[tested(a) ? b : a] = true;
    }
  }

  for (std::size_t q = 0; q < n; ++q) {
    if (tested(q)) {
      g.v1_.push_back(q);
      (g.color_[q] == Color::Black ? g.v1_black_ : g.v1_white_).push_back(q);
    } else {
      g.v2_.push_back(q);
      if (connect_flag[q]) g.v_connect_.push_back(q);
    }
  }

  g.in_tested_.assign(n, false);
  for (std::size_t q : g.v1_) g.in_tested_[q] = true;
  for (std::size_t q : g.v_connect_) g.in_tested_[q] = true;

  g.adj_full_.assign(n, {});
  g.adj_tested_.assign(n, {});
  g.adj_inner_.assign(n, {});
  for (auto [a, b] : g.edges_) {
    g.adj_full_[a].push_back(b);
    g.adj_full_[b].push_back(a);
  }
  for (auto [a, b] : g.e1_) {
    g.adj_inner_[a].push_back(b);
    g.adj_inner_[b].push_back(a);
    g.adj_tested_[a].push_back(b);
    g.adj_tested_[b].push_back(a);
  }
  for (auto [a, b] : g.e_connect_) {
    g.adj_tested_[a].push_back(b);
    g.adj_tested_[b].push_back(a);
  }
  for (auto& v : g.adj_full_) std::sort(v.begin(), v.end());
  for (auto& v : g.adj_tested_) std::sort(v.begin(), v.end());
  for (auto& v : g.adj_inner_) std::sort(v.begin(), v.end());
  return g;
}

GraphSpec parse_graph(std::istream& in) {
  auto next_line = [&in](std::string& line) {
    while (std::getline(in, line)) {
      auto pos = line.find('#');
      if (pos != std::string::npos) line.erase(pos);
      std::istringstream probe(line);
      std::string tok;
      if (probe >> tok) return true;
    }
    return false;
  };

  std::string line;
  if (!next_line(line)) throw std::invalid_argument("graph file: missing header line");
  std::size_t n = 0, m = 0;
  {
    std::istringstream ss(line);
    if (!(ss >> n >> m)) throw std::invalid_argument("graph file: header must be 'N M'");
  }
  GraphSpec spec;
  for (std::size_t i = 0; i < n; ++i) {
    if (!next_line(line)) throw std::invalid_argument("graph file: truncated vertex list");
    std::istringstream ss(line);
    std::size_t id;
    std::string color, region;
    if (!(ss >> id >> color >> region)) {
      throw std::invalid_argument("graph file: bad vertex line '" + line + "'");
    }
    GraphSpec::Vertex v;
    v.id = id;
    if (color == "b") {
      v.color = Color::Black;
    } else if (color == "w") {
      v.color = Color::White;
    } else {
      throw std::invalid_argument("graph file: color must be 'b' or 'w', got '" + color + "'");
    }
    if (region == "1") {
      v.region = Region::Tested;
    } else if (region == "2") {
      v.region = Region::Witness;
    } else {
      throw std::invalid_argument("graph file: region must be '1' or '2', got '" + region + "'");
    }
    spec.vertices.push_back(v);
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!next_line(line)) throw std::invalid_argument("graph file: truncated edge list");
    std::istringstream ss(line);
    std::size_t a, b;
    if (!(ss >> a >> b)) throw std::invalid_argument("graph file: bad edge line '" + line + "'");
    spec.edges.push_back({a, b});
  }
  return spec;
}

GraphSpec load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open graph file: " + path);
  return parse_graph(in);
}

std::string format_graph(const GraphSpec& spec) {
  std::ostringstream out;
  out << spec.vertices.size() << ' ' << spec.edges.size() << '\n';
  for (const auto& v : spec.vertices) {
    out << v.id << ' ' << (v.color == Color::Black ? 'b' : 'w') << ' '
        << (v.region == Region::Tested ? '1' : '2') << '\n';
  }
  for (auto [a, b] : spec.edges) out << a << ' ' << b << '\n';
  return out.str();
}

GraphSpec make_grid_spec(std::size_t rows, std::size_t cols, std::size_t v1_cols) {
  if (rows == 0 || cols == 0 || v1_cols > cols) {
    throw std::invalid_argument("make_grid_spec: bad dimensions");
  }
  GraphSpec spec;
  auto id_at = [cols](std::size_t r, std::size_t c) { return r * cols + c; };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      GraphSpec::Vertex v;
      v.id = id_at(r, c);
      v.color = ((r + c) % 2 == 0) ? Color::Black : Color::White;
      v.region = c < v1_cols ? Region::Tested : Region::Witness;
      spec.vertices.push_back(v);
    }
  }
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) spec.edges.push_back({id_at(r, c), id_at(r, c + 1)});
      if (r + 1 < rows) spec.edges.push_back({id_at(r, c), id_at(r + 1, c)});
    }
  }
  return spec;
}

EntanglingLayer entangling_layer(const ProtocolGraph& g) { return {g.e_connect()}; }

void apply_entangling_layer(StabilizerTableau& state, const EntanglingLayer& w) {
  for (auto [a, b] : w.pairs) state.apply_cz(a, b);
}

void apply_entangling_layer(DenseState& state, const EntanglingLayer& w) {
  for (auto [a, b] : w.pairs) state.apply_cz(a, b);
}

StabilizerTableau graph_state(const ProtocolGraph& g, Subgraph sg) {
  StabilizerTableau state = StabilizerTableau::plus_state(g.num_vertices());
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  switch (sg) {
    case Subgraph::Full: edges = g.edges(); break;
    case Subgraph::Tested:
      edges = g.e1();
      edges.insert(edges.end(), g.e_connect().begin(), g.e_connect().end());
      break;
    case Subgraph::Inner: edges = g.e1(); break;
  }
  for (auto [a, b] : edges) state.apply_cz(a, b);
  return state;
}

StabilizerTableau gu_state(const ProtocolGraph& g, const BitVec& u) {
  if (u.size() != g.num_vertices()) {
    throw std::invalid_argument("gu_state: pattern length " + std::to_string(u.size()) +
                                " does not match graph size " +
                                std::to_string(g.num_vertices()));
  }
  StabilizerTableau state = graph_state(g, Subgraph::Full);
  for (std::size_t q = 0; q < u.size(); ++q) {
    if (u.get(q)) state.apply_z(q);
  }
  return state;
}

}  // namespace qmalab
