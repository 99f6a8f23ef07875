#pragma once

#include <string>
#include <vector>

#include "mcsim/optics.hpp"

namespace mcsim {

// A star-shaped cluster under construction: root plus leaves in birth order
// (oldest first). The state's qubit order is whatever the pipeline produced;
// targets are aligned by label at fidelity time.
template <class S, template <class> class RhoT>
struct Microcluster {
  RhoT<S> state;
  QubitId root;
  std::vector<QubitId> leaves;

  std::vector<std::uint32_t> labels() const {
    std::vector<std::uint32_t> out{root.label};
    for (const auto& l : leaves) out.push_back(l.label);
    return out;
  }
};

// |0,+...+> + |1,-...->, root listed first. Canonical construction target.
template <class S>
PureState<S> star_target(const std::vector<QubitId>& root_first) {
  const int n = static_cast<int>(root_first.size());
  std::vector<S> amps(std::size_t{1} << n);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    int parity = 0;
    if ((i >> (n - 1)) & 1)
      for (int k = 1; k < n; ++k) parity ^= (i >> (n - 1 - k)) & 1;
    amps[i] = ScalarOps<S>::from_rational(GaussianRational(parity ? -1 : 1));
  }
  return PureState<S>::from_amplitudes(root_first, std::move(amps));
}

// |++> - i|-->, the ideal y+ output of the bonding pipeline on the two roots.
template <class S>
PureState<S> pair_target(const QubitId& ra, const QubitId& rb) {
  const GaussianRational one_minus_i(mpq_class(1), mpq_class(-1));
  const GaussianRational one_plus_i(mpq_class(1), mpq_class(1));
  return PureState<S>::from_amplitudes(
      {ra, rb}, {ScalarOps<S>::from_rational(one_minus_i), ScalarOps<S>::from_rational(one_plus_i),
                 ScalarOps<S>::from_rational(one_plus_i), ScalarOps<S>::from_rational(one_minus_i)});
}

// Builds an n-leaf star by fusing fresh pairs onto the current root; every
// fusion is a success branch (construction post-selects on success). The
// survivor of each fusion becomes the new root and the partner photon the
// newest leaf.
template <class S, template <class> class RhoT>
Microcluster<S, RhoT> build_microcluster(int leaves, const NoiseModel<S>& noise,
                                         const Placement& placement, const ByproductTable& table,
                                         QubitIdSource& ids) {
  if (leaves < 1) throw DomainError("a microcluster needs at least one leaf");

  auto as_role = [](QubitId q, QubitRole role) {
    q.role = role;
    return q;
  };

  if (leaves == 1) {
    PureState<S> e = epr<S>(ids, 0);
    QubitId root = as_role(e.qubits()[0], QubitRole::Root);
    QubitId leaf = as_role(e.qubits()[1], QubitRole::Leaf);
    e.relabel(root.label, root);
    e.relabel(leaf.label, leaf);
    return {RhoT<S>::from_pure(e), root, {leaf}};
  }

  // Initial pair of pairs: fuse the two inner photons; outer photons become
  // the two oldest leaves (first pair older).
  PureState<S> a = epr<S>(ids, 0);
  PureState<S> b = epr<S>(ids, 0);
  QubitId leaf_a = as_role(a.qubits()[0], QubitRole::Leaf);
  QubitId leaf_b = as_role(b.qubits()[1], QubitRole::Leaf);
  std::uint32_t qa = a.qubits()[1].label, qb = b.qubits()[0].label;
  RhoT<S> rho = RhoT<S>::from_pure(tensor(a, b));
  rho.relabel(leaf_a.label, leaf_a);
  rho.relabel(leaf_b.label, leaf_b);

  FusionContext ctx;
  ctx.cluster_a = {leaf_a.label, qa};
  ctx.cluster_b = {qb, leaf_b.label};
  ctx.root_a = leaf_a.label;
  ctx.root_b = leaf_b.label;
  auto res = fuse_success(rho, qa, qb, noise, placement, ctx, table, ids, 1, QubitRole::Root);

  Microcluster<S, RhoT> mc{std::move(res.state), res.survivor, {leaf_a, leaf_b}};

  for (int j = 2; j < leaves; ++j) {
    const std::uint32_t birth = static_cast<std::uint32_t>(j);
    PureState<S> e = epr<S>(ids, birth);
    QubitId leaf_new = as_role(e.qubits()[1], QubitRole::Leaf);
    std::uint32_t bond = e.qubits()[0].label;

    RhoT<S> joined = tensor(mc.state, RhoT<S>::from_pure(e));
    joined.relabel(leaf_new.label, leaf_new);
    FusionContext gctx;
    gctx.cluster_a = mc.labels();
    gctx.cluster_b = {bond, leaf_new.label};
    gctx.root_a = mc.root.label;  // consumed by this fusion; root-placement skips it
    gctx.root_b = leaf_new.label;
    auto grown =
        fuse_success(joined, mc.root.label, bond, noise, placement, gctx, table, ids, birth, QubitRole::Root);
    mc.state = std::move(grown.state);
    mc.root = grown.survivor;
    mc.leaves.push_back(leaf_new);
  }
  return mc;
}

// Fidelity of the as-built n-leaf star against its ideal target.
template <class S, template <class> class RhoT>
typename RatioTraits<S>::type microcluster_fidelity(int leaves, const NoiseModel<S>& noise,
                                                    const Placement& placement,
                                                    const ByproductTable& table) {
  QubitIdSource ids;
  auto mc = build_microcluster<S, RhoT>(leaves, noise, placement, table, ids);
  std::vector<QubitId> order{mc.root};
  order.insert(order.end(), mc.leaves.begin(), mc.leaves.end());
  return fidelity(star_target<S>(order), mc.state);
}

template <class S, template <class> class RhoT>
struct PairFusionOutcome {
  RhoT<S> state;  // two-root state after the full pipeline
  typename RatioTraits<S>::type fidelity;
  QubitId root_a, root_b;
};

// Factored (default) evaluates the identical map while keeping the two sides
// as a short sum of product terms until the successful fusion, which keeps
// every intermediate state small; Joint is the literal transcription of the
// protocol order on the combined state and exists as the reference for
// equivalence tests.
enum class PairPipeline { Factored, Joint };

namespace detail {

// Readout rounds an unattempted leaf receives before its z-measurement: the
// all-photons policy hits it once per noisy attempt, otherwise only at the
// successful one; the remaining policies never touch it.
inline int extraneous_channel_rounds(const Placement& placement, int attempt) {
  if (placement.policy != ErrorPlacementPolicy::AllClusterPhotons) return 0;
  return placement.noisy_failures ? attempt : 1;
}

}  // namespace detail

// Bonds two independently built n-leaf stars: attempts run newest-leaf-first;
// attempts 1..k-1 fail (losing the attempted leaves), attempt k succeeds and
// yields the connector; extraneous leaves are read out along z, the connector
// along y; the result is compared against the two-root pair target.
template <class S, template <class> class RhoT>
PairFusionOutcome<S, RhoT> fuse_pair(int leaves, int attempt, const NoiseModel<S>& noise,
                                     const Placement& placement, const ByproductTable& table,
                                     PairPipeline pipeline = PairPipeline::Factored) {
  if (leaves < 1) throw DomainError("a microcluster needs at least one leaf");
  if (attempt < 1) throw DomainError("the successful attempt index must be at least 1");
  if (attempt > leaves) throw AttemptExceedsLeavesError();

  QubitIdSource ids;
  auto ca = build_microcluster<S, RhoT>(leaves, noise, placement, table, ids);
  auto cb = build_microcluster<S, RhoT>(leaves, noise, placement, table, ids);
  const std::uint32_t base_birth = static_cast<std::uint32_t>(leaves);

  RhoT<S> rho;
  QubitId connector{};

  if (pipeline == PairPipeline::Joint) {
    std::vector<QubitId> rem_a = ca.leaves, rem_b = cb.leaves;
    rho = tensor(ca.state, cb.state);
    for (int j = 1; j <= attempt; ++j) {
      const std::uint32_t qa = rem_a.back().label, qb = rem_b.back().label;
      FusionContext ctx;
      ctx.root_a = ca.root.label;
      ctx.root_b = cb.root.label;
      ctx.cluster_a.push_back(ca.root.label);
      for (const auto& l : rem_a) ctx.cluster_a.push_back(l.label);
      ctx.cluster_b.push_back(cb.root.label);
      for (const auto& l : rem_b) ctx.cluster_b.push_back(l.label);
      if (j == attempt) {
        auto res = fuse_success(rho, qa, qb, noise, placement, ctx, table, ids,
                                base_birth + static_cast<std::uint32_t>(j), QubitRole::Connector);
        rho = std::move(res.state);
        connector = res.survivor;
      } else {
        rho = fuse_fail(rho, qa, qb, noise, placement, ctx, table);
      }
      rem_a.pop_back();
      rem_b.pop_back();
    }
    for (const auto& leaf : rem_a) measure_z_remove(rho, leaf.label, ca.root.label, table);
    for (const auto& leaf : rem_b) measure_z_remove(rho, leaf.label, cb.root.label, table);
  } else {
    // Every operation an unattempted leaf sees (its channel rounds and its
    // z-readout) commutes with the attempt pipeline, which acts on disjoint
    // qubits, so those leaves are handled per side before anything couples
    // the sides.
    const int rounds = detail::extraneous_channel_rounds(placement, attempt);
    const auto retire_extraneous = [&](Microcluster<S, RhoT>& mc) {
      while (static_cast<int>(mc.leaves.size()) > attempt) {
        const std::uint32_t label = mc.leaves.front().label;
        for (int r = 0; r < rounds; ++r) pauli_channel(mc.state, label, noise);
        measure_z_remove(mc.state, label, mc.root.label, table);
        mc.leaves.erase(mc.leaves.begin());
      }
    };
    retire_extraneous(ca);
    retire_extraneous(cb);

    // Failure weights split over the two computational outcomes as
    // w(b1, b2) = c0 + c1 (-1)^(b1 + b2), so a failed attempt maps a product
    // term to two product terms with per-side readout maps: the plain one
    // (outcome sum) and the parity-signed one.
    const S one = ScalarOps<S>::one();
    const S half = ScalarOps<S>::from_rational(GaussianRational(1, 2));
    const S bar = one - noise.alpha;
    const S succ = (bar * bar + noise.alpha * noise.alpha) * half;  // Tr-share of success
    const S c0 = one - succ;
    const S c1 = noise.alpha * noise.alpha * half - bar * bar * half;

    struct Term {
      RhoT<S> a, b;
    };
    std::vector<Term> terms;
    terms.push_back({std::move(ca.state), std::move(cb.state)});

    const auto side_pre_channels = [&](Term& term, std::uint32_t qa, std::uint32_t qb,
                                       const FusionContext& ctx) {
      for (auto label : detail::pre_sites(placement, qa, qb, ctx)) {
        if (term.a.has_label(label))
          pauli_channel(term.a, label, noise);
        else
          pauli_channel(term.b, label, noise);
      }
    };
    // Plain / parity-signed readout of `q`, with the outcome-1 correction on
    // the root; coefficient folded in by the caller.
    const auto readout = [&](const RhoT<S>& side, std::uint32_t q, std::uint32_t root,
                             bool signed_parity) {
      const S zero = ScalarOps<S>::zero();
      RhoT<S> keep0 = side;
      keep0.project_remove(q, one, zero);
      RhoT<S> keep1 = side;
      keep1.project_remove(q, zero, one);
      keep1.apply_1q(root, gate_z<S>());
      if (signed_parity) keep1.scale(ScalarOps<S>::from_rational(GaussianRational(-1)));
      keep0.add_in(keep1);
      return keep0;
    };

    FusionContext ctx;  // rebuilt each attempt
    const auto rebuild_ctx = [&] {
      ctx = FusionContext{};
      ctx.root_a = ca.root.label;
      ctx.root_b = cb.root.label;
      ctx.cluster_a.push_back(ca.root.label);
      for (const auto& l : ca.leaves) ctx.cluster_a.push_back(l.label);
      ctx.cluster_b.push_back(cb.root.label);
      for (const auto& l : cb.leaves) ctx.cluster_b.push_back(l.label);
    };

    for (int j = 1; j < attempt; ++j) {
      const std::uint32_t qa = ca.leaves.back().label, qb = cb.leaves.back().label;
      rebuild_ctx();
      std::vector<Term> next;
      next.reserve(terms.size() * 2);
      for (auto& term : terms) {
        if (placement.noisy_failures) side_pre_channels(term, qa, qb, ctx);
        Term plain{readout(term.a, qa, ca.root.label, false),
                   readout(term.b, qb, cb.root.label, false)};
        Term parity{readout(term.a, qa, ca.root.label, true),
                    readout(term.b, qb, cb.root.label, true)};
        plain.a.scale(c0);
        parity.a.scale(c1);
        if (placement.noisy_failures &&
            placement.policy == ErrorPlacementPolicy::SurvivorPlusRoots) {
          for (auto* t : {&plain, &parity}) {
            pauli_channel(t->a, ca.root.label, noise);
            pauli_channel(t->b, cb.root.label, noise);
          }
        }
        next.push_back(std::move(plain));
        next.push_back(std::move(parity));
      }
      terms = std::move(next);
      ca.leaves.pop_back();
      cb.leaves.pop_back();
    }

    const std::uint32_t qa = ca.leaves.back().label, qb = cb.leaves.back().label;
    rebuild_ctx();
    const QubitIdSource ids_at_success = ids;
    bool first = true;
    for (auto& term : terms) {
      side_pre_channels(term, qa, qb, ctx);
      RhoT<S> joined = tensor(term.a, term.b);
      QubitIdSource local = ids_at_success;
      auto res = fuse_success(joined, qa, qb, noise, placement, ctx, table, local,
                              base_birth + static_cast<std::uint32_t>(attempt),
                              QubitRole::Connector, /*skip_pre_channels=*/true);
      if (first) {
        rho = std::move(res.state);
        connector = res.survivor;
        first = false;
      } else {
        rho.add_in(res.state);
      }
    }
    ids = ids_at_success;
    ids.fresh(QubitRole::Connector, base_birth + static_cast<std::uint32_t>(attempt));
  }

  measure_y_remove(rho, connector.label, ca.root.label, cb.root.label, table);

  auto target = pair_target<S>(ca.root, cb.root);
  auto f = fidelity(target, rho);
  return {std::move(rho), std::move(f), ca.root, cb.root};
}

// ---- closed-form references ----

// (-1)^(n-1) * sum_k c_{n,k} q^(n-1-k) pz^k, c_{n,0} = 1 and
// c_{n,k} = 2^(k-1) binom(n-1, k) for k >= 1: the printed coefficient rows
// for star construction under p = p_x = p_y, q = 2p - 1.
Polynomial closed_form_table1(int leaves);

// Exact simulated construction fidelity expressed in the signed variable:
// alpha = 0, p_x = p_y = (q + 1)/2, p_z free. Rows match closed_form_table1.
Polynomial star_row_in_q(int leaves);

// Grid with entry(r, c) = 1 for c = 0 and 2^(c-1) (c+r-1)! / (c! (r-1)!)
// otherwise, r = 1..rows; its antidiagonals carry the same coefficients.
std::vector<std::vector<mpz_class>> binomial_transform_table(int rows, int cols);

RationalFunction reference_eq2();                 // two-leaf crosstalk fidelity
RationalFunction reference_eq3(int leaves);       // eq2^(n-1)
Polynomial first_order_equiprobable(int leaves);  // 1 - 3(n-1) p

// ---- series coefficients and the placement study ----

struct CoefficientReport {
  int leaves = 0;
  int attempt = 0;
  Placement placement;
  // Coefficients for the retained monomials {1, p, alpha, alpha^2,
  // alpha*p, alpha^2*p}, in canonical monomial order.
  std::vector<std::pair<Mono, GaussianRational>> entries;

  GaussianRational coeff(const Mono& m) const;
  std::string to_string() const;
};

// Exact expansion of the bonded-pair fidelity about p = alpha = 0 (with
// p_x = p_y = p_z = p), truncated to first order in p and second in alpha.
CoefficientReport coefficient_expansion(int leaves, int attempt, const Placement& placement);

// The published coefficient targets for the ten valid (leaves, attempt)
// cells; pure-alpha coefficients are implicitly zero.
struct CoefficientTargets {
  int leaves, attempt;
  GaussianRational c_p, c_alpha_p, c_alpha2, c_alpha2_p;
};
const std::vector<CoefficientTargets>& pair_coefficient_targets();

struct PolicySearchReport {
  struct Combo {
    Placement placement;
    int matches = 0;  // of 10 cells x 5 retained coefficients
    std::vector<std::string> mismatches;
  };
  std::vector<Combo> ranked;  // best first; deterministic tie-break
  std::string text;           // full rendered report
};

// Expands every placement policy x noisy-failure combination over all ten
// cells and scores exact coefficient matches against the published targets.
PolicySearchReport policy_search(int workers = 1);

// ---- float sweeps ----

struct SweepRecord {
  std::string policy;
  int leaves = 0;
  int attempt = 0;
  double alpha = 0;
  double p = 0;
  double fidelity = 0;
};

// Float-backend bonded-pair fidelities over the grid, ordered by
// (leaves, attempt, p-index); attempt > leaves combinations are omitted.
// workers > 1 fans cells across threads; output order is unaffected.
std::vector<SweepRecord> sweep_records(double alpha, const std::vector<double>& p_grid,
                                       const std::vector<int>& leaves_set,
                                       const std::vector<int>& attempts_set,
                                       const Placement& placement, int workers = 1);

}  // namespace mcsim
