#include "mcsim/branch_state.hpp"
#include "mcsim/protocols.hpp"

namespace mcsim {

namespace {

using Gate = Gate1<GaussianRational>;
using Ensemble = BranchEnsemble<GaussianRational>;

// Scale so the first nonzero entry is 1; projectively equal gates then
// compare equal entrywise.
Gate canonical(Gate g) {
  for (const auto& entry : g) {
    if (ScalarOps<GaussianRational>::is_zero(entry)) continue;
    const GaussianRational pivot = entry;  // copy: the loop below mutates g
    for (auto& x : g) x = x / pivot;
    break;
  }
  return g;
}

// The 24 single-qubit Cliffords (up to phase): closure of the unnormalized
// Hadamard and the phase gate, breadth-first so the order is deterministic.
const std::vector<Gate>& clifford_candidates() {
  static const std::vector<Gate> all = [] {
    const std::vector<Gate> gens = {gate_h_unnorm<GaussianRational>(),
                                    gate_s<GaussianRational>()};
    std::vector<Gate> found = {canonical(gate_identity<GaussianRational>())};
    for (std::size_t i = 0; i < found.size(); ++i) {
      for (const auto& g : gens) {
        Gate next = canonical(gate_mul(g, found[i]));
        bool seen = false;
        for (const auto& f : found)
          if (f == next) {
            seen = true;
            break;
          }
        if (!seen) found.push_back(std::move(next));
      }
    }
    return found;
  }();
  return all;
}

bool branches_hit_target(const Ensemble& rho, const PureState<GaussianRational>& target) {
  if (rho.branches().empty()) return false;
  for (const auto& b : rho.branches()) {
    const auto t = target.reordered(b.state.qubits());
    const GaussianRational ov = t.inner(b.state);
    if (!(ov * ov.conj() == t.norm2() * b.state.norm2())) return false;
  }
  return true;
}

bool build_exact(const ByproductTable& table, int leaves) {
  try {
    QubitIdSource ids;
    auto mc = build_microcluster<GaussianRational, BranchEnsemble>(
        leaves, NoiseModel<GaussianRational>::none(), Placement{}, table, ids);
    std::vector<QubitId> order{mc.root};
    order.insert(order.end(), mc.leaves.begin(), mc.leaves.end());
    return branches_hit_target(mc.state, star_target<GaussianRational>(order));
  } catch (const Error&) {
    return false;
  }
}

bool pair_exact(const ByproductTable& table, int leaves, int attempt) {
  try {
    auto out = fuse_pair<GaussianRational, BranchEnsemble>(
        leaves, attempt, NoiseModel<GaussianRational>::none(), Placement{}, table);
    return branches_hit_target(out.state, pair_target<GaussianRational>(out.root_a, out.root_b));
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

bool byproducts_verify(const ByproductTable& table) {
  for (int n = 1; n <= 4; ++n)
    if (!build_exact(table, n)) return false;
  for (int n = 1; n <= 4; ++n)
    for (int k = 1; k <= n; ++k)
      if (!pair_exact(table, n, k)) return false;
  return true;
}

ByproductTable calibrate_byproducts_from(ByproductTable table) {
  // Each stage exercises exactly one new slot on top of the already-fixed
  // ones: construction uses only the fusion correction, the one-attempt bond
  // of single-leaf clusters adds the y correction (no leaves left over), and
  // the one-attempt bond of two-leaf clusters adds the z correction.
  const auto fix = [&](Gate& slot, const std::function<bool()>& check) {
    if (check()) return;
    for (const auto& g : clifford_candidates()) {
      slot = g;
      if (check()) return;
    }
    throw DomainError("byproduct calibration found no verifying correction");
  };
  fix(table.fusion_minus, [&] {
    for (int n = 2; n <= 4; ++n)
      if (!build_exact(table, n)) return false;
    return true;
  });
  fix(table.ymeasure_minus, [&] { return pair_exact(table, 1, 1); });
  fix(table.zmeasure_one, [&] { return pair_exact(table, 2, 1); });
  if (!byproducts_verify(table))
    throw DomainError("byproduct calibration found no verifying correction");
  return table;
}

ByproductTable calibrate_byproducts() { return calibrate_byproducts_from(ByproductTable{}); }

}  // namespace mcsim
