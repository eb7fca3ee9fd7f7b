// Copyright 2026 The otoc-tn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OTOC_PEPS_HPP
#define OTOC_PEPS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "otoc/circuit.hpp"
#include "otoc/rng.hpp"
#include "otoc/site.hpp"
#include "otoc/tensor.hpp"

namespace otoc {

/// Subgraph of the square lattice induced by a qubit set.
struct QubitGraph {
  std::vector<Site> vertices;               // sorted
  std::vector<Bond> edges;                  // sorted, canonical (first < second)
  std::map<Site, std::vector<Site>> adjacency;

  static QubitGraph induced(const std::vector<Site>& sites);
  bool has_vertex(const Site& s) const { return adjacency.count(s) > 0; }
  bool has_edge(const Bond& b) const;
  /// True when the graph has no cycles (per connected component).
  bool is_tree() const;
};

Bond make_bond(const Site& a, const Site& b);
std::string phys_index_name(const Site& s);
std::string bond_index_name(const Bond& b);

/// One tensor per qubit: a physical index of dim 2 plus one bond index per
/// incident edge. The state is the plain contraction of all tensors over
/// shared bond names; singular values of each edge are split symmetrically
/// into the two endpoint tensors.
struct Peps {
  QubitGraph graph;
  std::map<Site, DenseTensor> tensors;

  std::map<Bond, std::int64_t> bond_dims() const;
  std::int64_t max_bond_dim() const;
};

Peps init_product_peps(const QubitGraph& graph);

/// Directed environment messages m_{i->j}: positive semi-definite matrices on
/// each edge's bond space, stored with their Hermitian square-root factor.
class MessageSet {
 public:
  struct Message {
    MatrixXc m;       // Hermitian PSD, unit trace
    MatrixXc sqrt_m;  // Hermitian PSD square root of m
  };

  static MessageSet identity_init(const Peps& p);
  static MessageSet random_psd_init(const Peps& p, DetRng& rng);

  const Message& at(const Site& from, const Site& to) const;
  /// Stores trace(m)-normalized Hermitized `m` and computes its square root.
  void set(const Site& from, const Site& to, const MatrixXc& m);
  /// Set both directions of an edge to the same diagonal (of the truncated
  /// singular values), normalized to unit trace.
  void set_edge_diagonal(const Bond& b, const std::vector<double>& lambda);

  const std::map<std::pair<Site, Site>, Message>& all() const { return msgs_; }

 private:
  std::map<std::pair<Site, Site>, Message> msgs_;
};

enum class MessageInit { Identity, RandomPsd };

struct BpConfig {
  std::int64_t max_D = 4;
  double sv_cutoff = 1e-14;     // relative singular value cutoff
  double bp_tolerance = 1e-10;  // max trace-normalized message change
  int bp_max_iters = 100;
  MessageInit message_init = MessageInit::Identity;
  double pinv_cutoff = 1e-12;   // relative eigenvalue cutoff for message inversion
};

struct GateApplyResult {
  std::vector<double> singular_values;  // kept, descending, unit 2-norm
  double discarded_weight = 0.0;        // relative truncation weight
};

void apply_single_qubit_gate(Peps& p, const Gate& g);

/// Symmetric-gauge gate application: absorb the square-root messages from all
/// non-shared neighbors, QR-reduce both tensors, contract the gate, truncate
/// the singular values, split them symmetrically into both tensors, promote
/// them to the edge messages, and undo the absorbed neighbor messages with
/// pseudo-inverses.
GateApplyResult apply_gate_bp(Peps& p, MessageSet& msgs, const Gate& g, const BpConfig& cfg);

struct BpConvergeResult {
  int iterations = 0;
  double residual = 0.0;
};

/// Jacobi message passing until the largest normalized message change drops
/// below bp_tolerance or bp_max_iters is reached. Non-convergence is reported
/// through the residual, not as an error.
BpConvergeResult bp_converge(const Peps& p, MessageSet& msgs, const BpConfig& cfg);

struct PepsEvolveDiagnostics {
  std::vector<double> per_layer_discarded;
  std::vector<int> bp_iterations;
  double total_discarded = 0.0;
  std::int64_t max_bond = 1;
};

struct PepsEvolveResult {
  Peps peps;
  MessageSet messages;
  PepsEvolveDiagnostics diagnostics;
};

/// Evolve |0...0> through the circuit with BP-gauged truncations, re-running
/// message convergence after every `resync_every` two-qubit layers.
PepsEvolveResult evolve_peps_bp(const OtocCircuit& c, const BpConfig& cfg, int resync_every = 1);

inline constexpr std::int64_t kUntruncatedBondGuard = 128;

/// Cutoff-only evolution: no bond cap, no gauge, singular values below
/// sv_cutoff (relative) dropped. Guarded at kUntruncatedBondGuard.
PepsEvolveResult evolve_peps_untruncated(const OtocCircuit& c, double sv_cutoff = 1e-14);

/// One BP convergence pass followed by an edge-by-edge truncation to
/// cfg.max_D in the BP gauge, lexicographic edge order.
Peps final_truncate_bp(const Peps& p, const BpConfig& cfg);
/// Same, starting from already-converged messages for `p` (they are copied;
/// useful when truncating one state to several bond dimensions).
Peps final_truncate_bp(const Peps& p, const MessageSet& converged, const BpConfig& cfg);

inline constexpr std::int64_t kExactPepsBondGuard = 256;

/// Exact network for the circuit's output state: every two-qubit gate is
/// SVD-split into two rank-<=4 tensors which are contracted into the qubit
/// tensors, so each edge dim is bounded by 4^(gates on that edge).
Peps exact_peps_from_circuit(const OtocCircuit& c);

void save_peps(const Peps& p, const std::string& path);
Peps load_peps(const std::string& path);

}  // namespace otoc

#endif
