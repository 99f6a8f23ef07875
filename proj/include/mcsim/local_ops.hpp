#pragma once

#include "mcsim/pure_state.hpp"

namespace mcsim {

// Named single-qubit operators over any scalar. Entries are exact Gaussian
// rationals injected through the scalar traits, so the Pauli algebra holds
// exactly in every backend.
template <class S>
Gate1<S> gate_identity() {
  auto o = ScalarOps<S>::one();
  auto z = ScalarOps<S>::zero();
  return {o, z, z, o};
}

template <class S>
Gate1<S> gate_x() {
  auto o = ScalarOps<S>::one();
  auto z = ScalarOps<S>::zero();
  return {z, o, o, z};
}

template <class S>
Gate1<S> gate_y() {
  auto z = ScalarOps<S>::zero();
  auto i = ScalarOps<S>::from_rational(GaussianRational::i_unit());
  auto mi = ScalarOps<S>::from_rational(-GaussianRational::i_unit());
  return {z, mi, i, z};
}

template <class S>
Gate1<S> gate_z() {
  auto o = ScalarOps<S>::one();
  auto z = ScalarOps<S>::zero();
  auto m = ScalarOps<S>::from_rational(GaussianRational(-1));
  return {o, z, z, m};
}

template <class S>
Gate1<S> gate_s() {
  auto o = ScalarOps<S>::one();
  auto z = ScalarOps<S>::zero();
  auto i = ScalarOps<S>::from_rational(GaussianRational::i_unit());
  return {o, z, z, i};
}

template <class S>
Gate1<S> gate_sdg() {
  auto o = ScalarOps<S>::one();
  auto z = ScalarOps<S>::zero();
  auto mi = ScalarOps<S>::from_rational(-GaussianRational::i_unit());
  return {o, z, z, mi};
}

// Unnormalized Hadamard (1 1; 1 -1). States are unnormalized and fidelities
// divide the normalization out, so the missing 1/sqrt(2) is immaterial and
// keeping it rational preserves exactness.
template <class S>
Gate1<S> gate_h_unnorm() {
  auto o = ScalarOps<S>::one();
  auto m = ScalarOps<S>::from_rational(GaussianRational(-1));
  return {o, o, o, m};
}

// Diagonal splitter weight on a photon pair: passes matched polarizations with
// weight 1-alpha and crossed ones with weight alpha.
template <class S>
std::array<S, 4> splitter_weight_diag(const S& alpha) {
  S bar = ScalarOps<S>::one() - alpha;
  return {bar, alpha, alpha, bar};
}

// 2x2 matrix product, for composing gates outside any state.
template <class S>
Gate1<S> gate_mul(const Gate1<S>& a, const Gate1<S>& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

template <class S>
Gate1<S> gate_scale(const Gate1<S>& a, const S& w) {
  return {a[0] * w, a[1] * w, a[2] * w, a[3] * w};
}

}  // namespace mcsim
