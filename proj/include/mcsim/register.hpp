#pragma once

#include "mcsim/branch_state.hpp"
#include "mcsim/dense_state.hpp"

namespace mcsim {

// F = <t|rho|t> / (<t|t> Tr rho) for either density-operator realization.
// The target is aligned to the state's qubit order first, so callers may
// build it in any order of the same labels. Works for unnormalized targets
// and states; only this ratio ever divides.
template <class S, template <class> class RhoT>
typename RatioTraits<S>::type fidelity(const PureState<S>& target, const RhoT<S>& rho) {
  if (target.qubits().size() != rho.qubits().size()) throw DomainError("qubit lists differ");
  PureState<S> t = target.reordered(rho.qubits());
  S tn = t.norm2();
  if (ScalarOps<S>::is_zero(tn)) throw DomainError("target state is zero");
  S tr = rho.trace();
  if (ScalarOps<S>::is_zero(tr)) throw DomainError("state has zero trace");
  S num = rho.overlap(t);
  return RatioTraits<S>::divide(num, tn * tr);
}

}  // namespace mcsim
