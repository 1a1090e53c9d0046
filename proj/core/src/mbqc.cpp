#include "qmalab/mbqc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qmalab {

namespace {

// Sorted-vector symmetric difference; dependency sets stay tiny.
std::vector<std::size_t> sym_diff(const std::vector<std::size_t>& a,
                                  const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

int parity_over(const std::vector<std::size_t>& deps, const std::vector<int>& bits) {
  int p = 0;
  for (std::size_t v : deps) p ^= bits[v];
  return p;
}

struct WireState {
  std::size_t end;
  std::vector<std::size_t> x_deps;
  std::vector<std::size_t> z_deps;
};

}  // namespace

bool MeasurementPattern::is_output(std::size_t v) const {
  return std::find(outputs.begin(), outputs.end(), v) != outputs.end();
}

void MeasurementPattern::validate() const {
  std::vector<int> measured_at(num_vertices, -1);
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (order[k] >= num_vertices) throw std::invalid_argument("pattern: order entry out of range");
    if (measured_at[order[k]] != -1) throw std::invalid_argument("pattern: vertex measured twice");
    if (is_output(order[k])) throw std::invalid_argument("pattern: output vertex in order");
    measured_at[order[k]] = static_cast<int>(k);
  }
  if (order.size() + outputs.size() != num_vertices) {
    throw std::invalid_argument("pattern: every non-output vertex needs a measurement slot");
  }
  auto check_deps = [&](const std::vector<std::size_t>& deps, int before) {
    for (std::size_t d : deps) {
      if (d >= num_vertices || measured_at[d] == -1) {
        throw std::invalid_argument("pattern: dependency on unmeasured vertex");
      }
      if (before >= 0 && measured_at[d] >= before) {
        throw std::invalid_argument("pattern: dependency order is cyclic");
      }
    }
  };
  for (std::size_t k = 0; k < order.size(); ++k) {
    check_deps(angle_flip_deps[order[k]], static_cast<int>(k));
  }
  for (std::size_t w = 0; w < num_wires(); ++w) {
    check_deps(x_deps[w], -1);
    check_deps(z_deps[w], -1);
  }
}

MeasurementPattern compile_small_circuit(std::size_t wires,
                                         const std::vector<LogicalGate>& gates) {
  if (wires == 0 || wires > 3) {
    throw std::invalid_argument("compile_small_circuit: wire count must be 1..3");
  }
  MeasurementPattern p;
  std::set<std::pair<std::size_t, std::size_t>> edge_set;
  auto add_edge_xor = [&edge_set](std::size_t a, std::size_t b) {
    auto e = std::minmax(a, b);
    auto it = edge_set.find({e.first, e.second});
    if (it != edge_set.end()) {
      edge_set.erase(it);  // CZ twice is the identity
    } else {
      edge_set.insert({e.first, e.second});
    }
  };

  std::vector<WireState> wire(wires);
  for (std::size_t w = 0; w < wires; ++w) {
    wire[w].end = p.num_vertices++;
    p.inputs.push_back(wire[w].end);
  }
  p.angle.resize(p.num_vertices, 0.0);
  p.angle_flip_deps.resize(p.num_vertices);

  auto segment = [&](std::size_t w, double theta_j) {
    std::size_t v = p.num_vertices++;
    p.angle.push_back(0.0);
    p.angle_flip_deps.emplace_back();
    add_edge_xor(wire[w].end, v);
    std::size_t m = wire[w].end;
    // Measuring at (-1)^x * (-theta) applies J(theta) = H Rz(theta) and
    // shifts the byproduct to x' = s xor z, z' = x.
    p.angle[m] = -theta_j;
    p.angle_flip_deps[m] = wire[w].x_deps;
    p.order.push_back(m);
    auto new_x = sym_diff({m}, wire[w].z_deps);
    wire[w].z_deps = wire[w].x_deps;
    wire[w].x_deps = std::move(new_x);
    wire[w].end = v;
  };

  auto check_wire = [wires](std::size_t q) {
    if (q >= wires) throw std::invalid_argument("compile_small_circuit: wire index out of range");
  };

  for (const auto& g : gates) {
    switch (g.kind) {
      case LogicalGate::Kind::H:
        check_wire(g.q1);
        segment(g.q1, 0.0);
        break;
      case LogicalGate::Kind::S:
        check_wire(g.q1);
        segment(g.q1, M_PI / 2.0);
        segment(g.q1, 0.0);
        break;
      case LogicalGate::Kind::T:
        check_wire(g.q1);
        segment(g.q1, M_PI / 4.0);
        segment(g.q1, 0.0);
        break;
      case LogicalGate::Kind::Z:
        check_wire(g.q1);
        segment(g.q1, M_PI);
        segment(g.q1, 0.0);
        break;
      case LogicalGate::Kind::RZ:
        check_wire(g.q1);
        segment(g.q1, g.angle);
        segment(g.q1, 0.0);
        break;
      case LogicalGate::Kind::CZ: {
        check_wire(g.q1);
        check_wire(g.q2);
        if (g.q1 == g.q2) throw std::invalid_argument("compile_small_circuit: CZ needs two wires");
        add_edge_xor(wire[g.q1].end, wire[g.q2].end);
        auto d1 = wire[g.q2].x_deps;
        auto d2 = wire[g.q1].x_deps;
        wire[g.q1].z_deps = sym_diff(wire[g.q1].z_deps, d1);
        wire[g.q2].z_deps = sym_diff(wire[g.q2].z_deps, d2);
        break;
      }
    }
  }

  for (std::size_t w = 0; w < wires; ++w) {
    p.outputs.push_back(wire[w].end);
    p.x_deps.push_back(wire[w].x_deps);
    p.z_deps.push_back(wire[w].z_deps);
  }
  p.edges.assign(edge_set.begin(), edge_set.end());
  p.validate();
  return p;
}

DenseState apply_logical_circuit(const DenseState& input, const std::vector<LogicalGate>& gates) {
  DenseState s = input;
  for (const auto& g : gates) {
    switch (g.kind) {
      case LogicalGate::Kind::H: s.apply_h(g.q1); break;
      case LogicalGate::Kind::S: s.apply_s(g.q1); break;
      case LogicalGate::Kind::T: s.apply_rz(g.q1, M_PI / 4.0); break;
      case LogicalGate::Kind::Z: s.apply_z(g.q1); break;
      case LogicalGate::Kind::RZ: s.apply_rz(g.q1, g.angle); break;
      case LogicalGate::Kind::CZ: s.apply_cz(g.q1, g.q2); break;
    }
  }
  return s;
}

DenseState build_resource_state(const MeasurementPattern& p, const DenseState& input) {
  if (input.num_qubits() != p.num_wires()) {
    throw std::invalid_argument("build_resource_state: input size does not match wire count");
  }
  if (p.num_vertices > kDenseQubitCap) {
    throw std::invalid_argument("build_resource_state: pattern exceeds the dense cap");
  }
  // Non-input vertices as |+>, inputs carrying the input state, then CZ along
  // every edge. Assembled as (inputs) tensor (rest) followed by a qubit
  // permutation into vertex order.
  std::size_t rest = p.num_vertices - p.num_wires();
  DenseState resource = input.tensor(DenseState::plus_state(rest));
  // qubit k of `resource` holds: k < wires ? input wire k : filler
  std::vector<std::size_t> perm(p.num_vertices);
  std::vector<bool> is_input(p.num_vertices, false);
  for (std::size_t w = 0; w < p.num_wires(); ++w) is_input[p.inputs[w]] = true;
  std::size_t filler = p.num_wires();
  for (std::size_t v = 0; v < p.num_vertices; ++v) {
    if (is_input[v]) {
      std::size_t w = std::find(p.inputs.begin(), p.inputs.end(), v) - p.inputs.begin();
      perm[v] = w;
    } else {
      perm[v] = filler++;
    }
  }
  resource = resource.permute_qubits(perm);
  for (auto [a, b] : p.edges) resource.apply_cz(a, b);
  return resource;
}

PatternRun run_pattern(DenseState resource, const MeasurementPattern& p, RandomStream& rng,
                       const std::optional<PauliFrame>& frame) {
  if (resource.num_qubits() != p.num_vertices) {
    throw std::invalid_argument("run_pattern: resource state does not match pattern size");
  }
  if (frame && frame->size() != p.num_vertices) {
    throw std::invalid_argument("run_pattern: frame length does not match pattern size");
  }
  PatternRun run;
  run.raw_bits.assign(p.num_vertices, 0);
  run.recorded_bits.assign(p.num_vertices, 0);

  for (std::size_t v : p.order) {
    double a = p.angle[v];
    if (parity_over(p.angle_flip_deps[v], run.recorded_bits)) a = -a;
    int bit = resource.measure_xy(v, a, rng);
    run.raw_bits[v] = bit;
    run.recorded_bits[v] = bit ^ (frame && frame->get(v) ? 1 : 0);
  }

  // Measured qubits are left in |raw_bit>; slice the output register out.
  uint64_t base = 0;
  for (std::size_t v : p.order) {
    if (run.raw_bits[v]) base |= uint64_t{1} << v;
  }
  std::size_t m = p.num_wires();
  std::vector<std::complex<double>> out_amps(uint64_t{1} << m);
  for (uint64_t o = 0; o < out_amps.size(); ++o) {
    uint64_t idx = base;
    for (std::size_t w = 0; w < m; ++w) {
      if ((o >> w) & 1) idx |= uint64_t{1} << p.outputs[w];
    }
    out_amps[o] = resource.amp(idx);
  }
  DenseState out = DenseState::from_amplitudes(m, std::move(out_amps));

  for (std::size_t w = 0; w < m; ++w) {
    int x = parity_over(p.x_deps[w], run.recorded_bits);
    int z = parity_over(p.z_deps[w], run.recorded_bits);
    if (frame && frame->get(p.outputs[w])) z ^= 1;  // Z error on the output itself
    run.byproduct_x.push_back(x);
    run.byproduct_z.push_back(z);
    if (x) out.apply_x(w);
    if (z) out.apply_z(w);
  }
  run.output_state = std::move(out);
  return run;
}

PatternRun run_pattern(const StabilizerTableau& resource, const MeasurementPattern& p,
                       RandomStream& rng, const std::optional<PauliFrame>& frame,
                       std::size_t cap) {
  return run_pattern(dense_from_tableau(resource, cap), p, rng, frame);
}

std::vector<double> exact_output_distribution(const DenseState& resource,
                                              const MeasurementPattern& p,
                                              const std::optional<PauliFrame>& frame) {
  if (resource.num_qubits() != p.num_vertices) {
    throw std::invalid_argument("exact_output_distribution: resource does not match pattern");
  }
  std::size_t m = p.num_wires();
  std::vector<double> dist(uint64_t{1} << m, 0.0);
  std::vector<int> recorded(p.num_vertices, 0);
  std::vector<int> raw(p.num_vertices, 0);

  auto recurse = [&](auto&& self, const DenseState& state, std::size_t step,
                     double weight) -> void {
    if (weight < 1e-14) return;
    if (step == p.order.size()) {
      uint64_t base = 0;
      for (std::size_t v : p.order) {
        if (raw[v]) base |= uint64_t{1} << v;
      }
      uint64_t xmask = 0;
      for (std::size_t w = 0; w < m; ++w) {
        if (parity_over(p.x_deps[w], recorded)) xmask |= uint64_t{1} << w;
      }
      for (uint64_t o = 0; o < dist.size(); ++o) {
        uint64_t idx = base;
        for (std::size_t w = 0; w < m; ++w) {
          if ((o >> w) & 1) idx |= uint64_t{1} << p.outputs[w];
        }
        // X byproduct permutes the readout; Z cannot move probability.
        dist[o ^ xmask] += weight * std::norm(state.amp(idx));
      }
      return;
    }
    std::size_t v = p.order[step];
    double a = p.angle[v];
    if (parity_over(p.angle_flip_deps[v], recorded)) a = -a;
    DenseState rotated = state;
    rotated.apply_rz(v, -a);
    rotated.apply_h(v);
    double p0 = rotated.prob_zero(v);
    uint64_t vbit = uint64_t{1} << v;
    for (int bit = 0; bit <= 1; ++bit) {
      double prob = bit == 0 ? p0 : 1.0 - p0;
      if (prob < 1e-14) continue;
      DenseState branch = rotated;
      double scale = 1.0 / std::sqrt(prob);
      for (uint64_t i = 0; i < branch.dim(); ++i) {
        bool match = ((i & vbit) != 0) == (bit == 1);
        branch.amplitudes()[i] = match ? branch.amplitudes()[i] * scale : 0.0;
      }
      raw[v] = bit;
      recorded[v] = bit ^ (frame && frame->get(v) ? 1 : 0);
      self(self, branch, step + 1, weight * prob);
    }
    raw[v] = 0;
    recorded[v] = 0;
  };
  recurse(recurse, resource, 0, 1.0);

  // Frame bits on outputs act as Z, invisible to the computational readout.
  double total = 0.0;
  for (double d : dist) total += d;
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::logic_error("exact_output_distribution: branch weights sum to " +
                           std::to_string(total));
  }
  return dist;
}

double total_variation_distance(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("tvd: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) acc += std::abs(p[i] - q[i]);
  return 0.5 * acc;
}

std::string MeasurementPattern::to_text() const {
  std::ostringstream out;
  out << "pattern " << num_vertices << ' ' << num_wires() << '\n';
  auto write_list = [&out](const char* tag, const std::vector<std::size_t>& v) {
    out << tag;
    for (std::size_t x : v) out << ' ' << x;
    out << '\n';
  };
  write_list("inputs", inputs);
  write_list("outputs", outputs);
  write_list("order", order);
  out << "edges " << edges.size() << '\n';
  for (auto [a, b] : edges) out << a << ' ' << b << '\n';
  for (std::size_t v : order) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", angle[v]);
    out << "measure " << v << ' ' << buf;
    out << " flips " << angle_flip_deps[v].size();
    for (std::size_t d : angle_flip_deps[v]) out << ' ' << d;
    out << '\n';
  }
  for (std::size_t w = 0; w < num_wires(); ++w) {
    out << "byproduct " << w << " x " << x_deps[w].size();
    for (std::size_t d : x_deps[w]) out << ' ' << d;
    out << " z " << z_deps[w].size();
    for (std::size_t d : z_deps[w]) out << ' ' << d;
    out << '\n';
  }
  return out.str();
}

MeasurementPattern MeasurementPattern::from_text(const std::string& text) {
  std::istringstream in(text);
  std::string tag;
  MeasurementPattern p;
  std::size_t wires = 0;
  if (!(in >> tag >> p.num_vertices >> wires) || tag != "pattern") {
    throw std::invalid_argument("pattern text: bad header");
  }
  auto read_list = [&in](const char* expect, std::size_t count, std::vector<std::size_t>& out) {
    std::string t;
    if (!(in >> t) || t != expect) {
      throw std::invalid_argument(std::string("pattern text: expected ") + expect);
    }
    out.resize(count);
    for (auto& x : out) {
      if (!(in >> x)) throw std::invalid_argument("pattern text: truncated list");
    }
  };
  read_list("inputs", wires, p.inputs);
  read_list("outputs", wires, p.outputs);
  read_list("order", p.num_vertices - wires, p.order);
  std::size_t num_edges = 0;
  if (!(in >> tag >> num_edges) || tag != "edges") {
    throw std::invalid_argument("pattern text: expected edges");
  }
  for (std::size_t i = 0; i < num_edges; ++i) {
    std::size_t a, b;
    if (!(in >> a >> b)) throw std::invalid_argument("pattern text: truncated edges");
    p.edges.push_back({a, b});
  }
  p.angle.resize(p.num_vertices, 0.0);
  p.angle_flip_deps.resize(p.num_vertices);
  for (std::size_t i = 0; i < p.order.size(); ++i) {
    std::size_t v, k;
    double a;
    if (!(in >> tag >> v >> a) || tag != "measure") {
      throw std::invalid_argument("pattern text: expected measure line");
    }
    p.angle[v] = a;
    if (!(in >> tag >> k) || tag != "flips") {
      throw std::invalid_argument("pattern text: expected flips");
    }
    p.angle_flip_deps[v].resize(k);
    for (auto& d : p.angle_flip_deps[v]) in >> d;
  }
  p.x_deps.resize(wires);
  p.z_deps.resize(wires);
  for (std::size_t i = 0; i < wires; ++i) {
    std::size_t w, k;
    if (!(in >> tag >> w) || tag != "byproduct") {
      throw std::invalid_argument("pattern text: expected byproduct line");
    }
    if (!(in >> tag >> k) || tag != "x") throw std::invalid_argument("pattern text: expected x");
    p.x_deps[w].resize(k);
    for (auto& d : p.x_deps[w]) in >> d;
    if (!(in >> tag >> k) || tag != "z") throw std::invalid_argument("pattern text: expected z");
    p.z_deps[w].resize(k);
    for (auto& d : p.z_deps[w]) in >> d;
  }
  p.validate();
  return p;
}

}  // namespace qmalab
