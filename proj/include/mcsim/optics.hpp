#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "mcsim/register.hpp"

namespace mcsim {

// Where the Pauli channel strikes during a fusion attempt. The survivor-only
// placement is the default; the alternatives insert additional channels for
// the placement study. The named sites are:
//   SurvivorOnly        success: survivor (after fusion)     failure: nothing
//   BothFusionPhotons   success: both fused photons (before the splitter)
//                       plus the survivor (after)            failure: both fused photons (before)
//   SurvivorPlusRoots   success: survivor plus both cluster
//                       roots (after; consumed roots skip)   failure: both cluster roots (after)
//   AllClusterPhotons   success: every photon of both
//                       clusters (before) plus the survivor
//                       (after)                              failure: every photon (before)
enum class ErrorPlacementPolicy : std::uint8_t {
  SurvivorOnly = 0,
  BothFusionPhotons,
  SurvivorPlusRoots,
  AllClusterPhotons,
};

inline constexpr int kNumPlacementPolicies = 4;

inline const char* placement_name(ErrorPlacementPolicy p) {
  switch (p) {
    case ErrorPlacementPolicy::SurvivorOnly: return "survivor-only";
    case ErrorPlacementPolicy::BothFusionPhotons: return "both-fusion-photons";
    case ErrorPlacementPolicy::SurvivorPlusRoots: return "survivor-plus-roots";
    case ErrorPlacementPolicy::AllClusterPhotons: return "all-cluster-photons";
  }
  return "?";
}

inline std::optional<ErrorPlacementPolicy> placement_from_name(std::string_view s) {
  for (int i = 0; i < kNumPlacementPolicies; ++i) {
    auto p = static_cast<ErrorPlacementPolicy>(i);
    if (s == placement_name(p)) return p;
  }
  return std::nullopt;
}

struct Placement {
  ErrorPlacementPolicy policy = ErrorPlacementPolicy::SurvivorOnly;
  bool noisy_failures = false;
};

// Comma-free token naming a full placement combination, safe for CSV fields
// and file names: e.g. "survivor-only/clean-failures".
inline std::string placement_slug(const Placement& p) {
  std::string s = placement_name(p.policy);
  s += p.noisy_failures ? "/noisy-failures" : "/clean-failures";
  return s;
}

// Channel and splitter parameters over any scalar. Symbolic scalars carry
// variables; range checks apply to numeric values only (validate_numeric).
template <class S>
struct NoiseModel {
  S alpha = ScalarOps<S>::zero();
  S px = ScalarOps<S>::zero();
  S py = ScalarOps<S>::zero();
  S pz = ScalarOps<S>::zero();

  static NoiseModel none() { return NoiseModel{}; }

  S identity_weight() const { return ScalarOps<S>::one() - px - py - pz; }
  bool pauli_free() const {
    return ScalarOps<S>::is_zero(px) && ScalarOps<S>::is_zero(py) && ScalarOps<S>::is_zero(pz);
  }
};

inline void validate_numeric_noise(const NoiseModel<GaussianRational>& n) {
  for (const auto* v : {&n.px, &n.py, &n.pz, &n.alpha})
    if (!v->is_real()) throw DomainError("noise parameters must be real");
  for (const auto* v : {&n.px, &n.py, &n.pz})
    if (sgn(v->re) < 0) throw DomainError("channel probabilities must be nonnegative");
  if (n.px.re + n.py.re + n.pz.re > 1) throw DomainError("channel probabilities must sum to at most 1");
  if (sgn(n.alpha.re) < 0 || n.alpha.re > mpq_class(1, 2))
    throw DomainError("splitter crosstalk must lie in [0, 1/2]");
}

inline void validate_numeric_noise(const NoiseModel<std::complex<double>>& n) {
  for (auto v : {n.px, n.py, n.pz, n.alpha})
    if (v.imag() != 0.0) throw DomainError("noise parameters must be real");
  if (n.px.real() < 0 || n.py.real() < 0 || n.pz.real() < 0)
    throw DomainError("channel probabilities must be nonnegative");
  if (n.px.real() + n.py.real() + n.pz.real() > 1.0)
    throw DomainError("channel probabilities must sum to at most 1");
  if (n.alpha.real() < 0 || n.alpha.real() > 0.5)
    throw DomainError("splitter crosstalk must lie in [0, 1/2]");
}

// Which photons belong to the two clusters meeting at a fusion, and where
// their roots are. Root slots may be empty (or already consumed) for
// degenerate clusters; byproducts and root placements then skip them.
struct FusionContext {
  std::vector<std::uint32_t> cluster_a;
  std::vector<std::uint32_t> cluster_b;
  std::optional<std::uint32_t> root_a;
  std::optional<std::uint32_t> root_b;
};

// Outcome-conditioned corrections. The defaults satisfy the calibration
// requirement (ideal pipelines hit their targets with fidelity exactly 1 in
// every branch); calibrate_byproducts verifies this and, if a convention ever
// drifts, searches the single-qubit Cliffords for a working table.
struct ByproductTable {
  Gate1<GaussianRational> fusion_minus = gate_z<GaussianRational>();    // on the survivor
  Gate1<GaussianRational> zmeasure_one = gate_z<GaussianRational>();    // on that cluster's root
  Gate1<GaussianRational> ymeasure_minus = gate_z<GaussianRational>();  // on both roots
};

template <class S>
Gate1<S> gate_cast(const Gate1<GaussianRational>& g) {
  return {ScalarOps<S>::from_rational(g[0]), ScalarOps<S>::from_rational(g[1]),
          ScalarOps<S>::from_rational(g[2]), ScalarOps<S>::from_rational(g[3])};
}

// Fresh polarization-entangled pair: unnormalized amplitudes (1, 1, 1, -1),
// the two-qubit graph state.
template <class S>
PureState<S> epr(QubitIdSource& ids, std::uint32_t birth) {
  std::vector<QubitId> qs{ids.fresh(QubitRole::EprHalf, birth), ids.fresh(QubitRole::EprHalf, birth)};
  const S o = ScalarOps<S>::one();
  const S m = ScalarOps<S>::from_rational(GaussianRational(-1));
  return PureState<S>::from_amplitudes(std::move(qs), {o, o, o, m});
}

template <class S, template <class> class RhoT>
void pauli_channel(RhoT<S>& rho, std::uint32_t q, const NoiseModel<S>& noise) {
  if (noise.pauli_free()) return;
  rho.pauli_channel(q, noise.identity_weight(), noise.px, noise.py, noise.pz);
}

template <class S, template <class> class RhoT>
void pauli_channel_each(RhoT<S>& rho, const std::vector<std::uint32_t>& labels,
                        const NoiseModel<S>& noise) {
  for (auto q : labels) pauli_channel(rho, q, noise);
}

namespace detail {

// Photons hit by the channel before the splitter acts, for one attempt.
inline std::vector<std::uint32_t> pre_sites(const Placement& placement, std::uint32_t qa,
                                            std::uint32_t qb, const FusionContext& ctx) {
  switch (placement.policy) {
    case ErrorPlacementPolicy::SurvivorOnly:
    case ErrorPlacementPolicy::SurvivorPlusRoots:
      return {};
    case ErrorPlacementPolicy::BothFusionPhotons:
      return {qa, qb};
    case ErrorPlacementPolicy::AllClusterPhotons: {
      std::vector<std::uint32_t> all = ctx.cluster_a;
      all.insert(all.end(), ctx.cluster_b.begin(), ctx.cluster_b.end());
      return all;
    }
  }
  return {};
}

template <class S, template <class> class RhoT>
void root_channels(RhoT<S>& rho, const FusionContext& ctx, const NoiseModel<S>& noise) {
  for (const auto& root : {ctx.root_a, ctx.root_b})
    if (root && rho.has_label(*root)) pauli_channel(rho, *root, noise);
}

}  // namespace detail

template <class RhoT>
struct FusionResult {
  RhoT state;
  QubitId survivor;
};

// Success branch of Type-1 fusion of qa with qb: splitter weighting
// diag(1-alpha, alpha, alpha, 1-alpha) at the amplitude level, an equal
// mixture over which photon reached the detector, detector bras (1,1)/(1,-1)
// with the outcome-minus correction on the survivor, and channel insertions
// per placement. The survivor takes a fresh id and moves to the back of the
// qubit order. Output trace = Tr(W rho W+).
//
// skip_pre_channels: callers that already applied this attempt's pre-splitter
// channels (e.g. to tensor factors before combining) set this to avoid double
// application; it never changes which sites the policy owns.
template <class S, template <class> class RhoT>
FusionResult<RhoT<S>> fuse_success(const RhoT<S>& rho_in, std::uint32_t qa, std::uint32_t qb,
                                   const NoiseModel<S>& noise, const Placement& placement,
                                   const FusionContext& ctx, const ByproductTable& table,
                                   QubitIdSource& ids, std::uint32_t birth,
                                   QubitRole survivor_role = QubitRole::Connector,
                                   bool skip_pre_channels = false) {
  RhoT<S> rho = rho_in;
  if (!skip_pre_channels) pauli_channel_each(rho, detail::pre_sites(placement, qa, qb, ctx), noise);
  rho.apply_diag_pair(qa, qb, splitter_weight_diag<S>(noise.alpha));

  const QubitId fresh = ids.fresh(survivor_role, birth);
  const S one = ScalarOps<S>::one();
  const S minus_one = ScalarOps<S>::from_rational(GaussianRational(-1));
  const S quarter = ScalarOps<S>::from_rational(GaussianRational(1, 4));
  const Gate1<S> minus_fix = gate_cast<S>(table.fusion_minus);

  bool first = true;
  RhoT<S> out;
  for (int choice = 0; choice < 2; ++choice) {
    const std::uint32_t measured = choice == 0 ? qa : qb;
    const std::uint32_t survivor = choice == 0 ? qb : qa;
    for (int sign = 0; sign < 2; ++sign) {
      RhoT<S> branch = rho;
      branch.project_remove(measured, one, sign == 0 ? one : minus_one);
      if (sign == 1) branch.apply_1q(survivor, minus_fix);
      branch.relabel(survivor, fresh);
      branch.rotate_to_back(fresh.label);
      branch.scale(quarter);
      if (first) {
        out = std::move(branch);
        first = false;
      } else {
        out.add_in(branch);
      }
    }
  }

  switch (placement.policy) {
    case ErrorPlacementPolicy::SurvivorOnly:
    case ErrorPlacementPolicy::BothFusionPhotons:
    case ErrorPlacementPolicy::AllClusterPhotons:
      pauli_channel(out, fresh.label, noise);
      break;
    case ErrorPlacementPolicy::SurvivorPlusRoots:
      pauli_channel(out, fresh.label, noise);
      detail::root_channels(out, ctx, noise);
      break;
  }
  return {std::move(out), fresh};
}

// Failure branch: both photons are lost and read out in the computational
// basis, with the complement weights 1 - W(b1 b2)^2, i.e. 2a-a^2 for matched
// outcomes and 1-a^2 for crossed ones. Outcome 1 on either photon leaves a Z
// on that side's root. Success and failure traces add up to Tr(rho).
template <class S, template <class> class RhoT>
RhoT<S> fuse_fail(const RhoT<S>& rho_in, std::uint32_t qa, std::uint32_t qb,
                  const NoiseModel<S>& noise, const Placement& placement, const FusionContext& ctx,
                  const ByproductTable& table, bool skip_pre_channels = false) {
  (void)table;  // failure corrections are the fixed computational-outcome Z's
  RhoT<S> rho = rho_in;
  const bool noisy = placement.noisy_failures;
  if (noisy && !skip_pre_channels)
    pauli_channel_each(rho, detail::pre_sites(placement, qa, qb, ctx), noise);

  const S one = ScalarOps<S>::one();
  const S zero = ScalarOps<S>::zero();
  const S bar = one - noise.alpha;
  const S w_match = one - bar * bar;          // outcomes 00 and 11
  const S w_cross = one - noise.alpha * noise.alpha;  // outcomes 01 and 10
  const Gate1<S> zfix = gate_z<S>();

  bool first = true;
  RhoT<S> out;
  for (int b1 = 0; b1 < 2; ++b1) {
    for (int b2 = 0; b2 < 2; ++b2) {
      const S& w = (b1 == b2) ? w_match : w_cross;
      if (ScalarOps<S>::is_zero(w)) continue;
      RhoT<S> branch = rho;
      branch.project_remove(qa, b1 == 0 ? one : zero, b1 == 0 ? zero : one);
      branch.project_remove(qb, b2 == 0 ? one : zero, b2 == 0 ? zero : one);
      if (b1 == 1 && ctx.root_a && branch.has_label(*ctx.root_a)) branch.apply_1q(*ctx.root_a, zfix);
      if (b2 == 1 && ctx.root_b && branch.has_label(*ctx.root_b)) branch.apply_1q(*ctx.root_b, zfix);
      branch.scale(w);
      if (first) {
        out = std::move(branch);
        first = false;
      } else {
        out.add_in(branch);
      }
    }
  }

  if (noisy && placement.policy == ErrorPlacementPolicy::SurvivorPlusRoots)
    detail::root_channels(out, ctx, noise);
  return out;
}

// Tr(W rho W+) / Tr(rho): the chance that exactly one photon reaches the
// detector when qa and qb meet at the splitter.
template <class S, template <class> class RhoT>
typename RatioTraits<S>::type success_probability(const RhoT<S>& rho, std::uint32_t qa,
                                                  std::uint32_t qb, const S& alpha) {
  S tr = rho.trace();
  if (ScalarOps<S>::is_zero(tr)) throw DomainError("state has zero trace");
  RhoT<S> weighted = rho;
  weighted.apply_diag_pair(qa, qb, splitter_weight_diag<S>(alpha));
  return RatioTraits<S>::divide(weighted.trace(), tr);
}

// Reads a leaf out along the z-axis and removes it; outcome 1 leaves a Z-type
// correction on the leaf's root. Trace-preserving.
template <class S, template <class> class RhoT>
void measure_z_remove(RhoT<S>& rho, std::uint32_t q, std::uint32_t root, const ByproductTable& table) {
  const S one = ScalarOps<S>::one();
  const S zero = ScalarOps<S>::zero();
  RhoT<S> out0 = rho;
  out0.project_remove(q, one, zero);
  RhoT<S> out1 = std::move(rho);
  out1.project_remove(q, zero, one);
  out1.apply_1q(root, gate_cast<S>(table.zmeasure_one));
  out0.add_in(out1);
  rho = std::move(out0);
}

// Reads the connector out along the y-axis, joining its two neighbor roots.
// Outcome + contracts with psi0 - i psi1; outcome - contracts with
// psi0 + i psi1 and applies the table correction to both roots. The two
// unnormalized outcome projectors sum to twice the identity, hence the 1/2.
template <class S, template <class> class RhoT>
void measure_y_remove(RhoT<S>& rho, std::uint32_t q, std::uint32_t root_a, std::uint32_t root_b,
                      const ByproductTable& table) {
  const S one = ScalarOps<S>::one();
  const S i = ScalarOps<S>::from_rational(GaussianRational::i_unit());
  const S minus_i = ScalarOps<S>::from_rational(-GaussianRational::i_unit());
  const S half = ScalarOps<S>::from_rational(GaussianRational(1, 2));

  RhoT<S> plus = rho;
  plus.project_remove(q, one, i);  // conjugated: psi0 - i psi1
  RhoT<S> minus = std::move(rho);
  minus.project_remove(q, one, minus_i);  // conjugated: psi0 + i psi1
  const Gate1<S> fix = gate_cast<S>(table.ymeasure_minus);
  minus.apply_1q(root_a, fix);
  minus.apply_1q(root_b, fix);
  plus.add_in(minus);
  plus.scale(half);
  rho = std::move(plus);
}

// True iff the table drives every measurement branch of the ideal (noiseless)
// construction and bonding pipelines to its target exactly.
bool byproducts_verify(const ByproductTable& table);

// Repairs a table slot by slot against the ideal pipelines via a deterministic
// search over the 24 single-qubit Cliffords (projective); throws DomainError
// if no assignment verifies.
ByproductTable calibrate_byproducts_from(ByproductTable table);

// Verifies that the default byproduct table drives every measurement branch
// of the ideal pipelines to its target exactly; falls back to a deterministic
// search over single-qubit Cliffords if it ever does not.
ByproductTable calibrate_byproducts();

}  // namespace mcsim
