#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "mcsim/errors.hpp"
#include "mcsim/qubit.hpp"
#include "mcsim/scalar.hpp"

namespace mcsim {

inline constexpr int kMaxQubits = 14;

// A 2x2 operator stored row-major: {m00, m01, m10, m11}.
template <class S>
using Gate1 = std::array<S, 4>;
// A 4x4 operator stored row-major.
template <class S>
using Gate2 = std::array<S, 16>;

// Unnormalized pure state over an ordered qubit list. Qubit 0 in the list is
// the most significant bit of the amplitude index. The zero vector is legal;
// ensembles prune it.
template <class S>
class PureState {
 public:
  PureState() : amp_(1, ScalarOps<S>::one()) {}  // empty tensor product = scalar 1

  static PureState from_amplitudes(std::vector<QubitId> qubits, std::vector<S> amps) {
    PureState s;
    if (qubits.size() > kMaxQubits) throw CapacityError("state exceeds the qubit capacity");
    if (amps.size() != (std::size_t{1} << qubits.size()))
      throw DomainError("amplitude vector length must be 2^n");
    check_distinct(qubits);
    s.qubits_ = std::move(qubits);
    s.amp_ = std::move(amps);
    return s;
  }

  static PureState basis(std::vector<QubitId> qubits, std::size_t index) {
    std::vector<S> amps(std::size_t{1} << qubits.size(), ScalarOps<S>::zero());
    amps.at(index) = ScalarOps<S>::one();
    return from_amplitudes(std::move(qubits), std::move(amps));
  }

  int num_qubits() const { return static_cast<int>(qubits_.size()); }
  std::size_t dim() const { return amp_.size(); }
  const std::vector<QubitId>& qubits() const { return qubits_; }
  const std::vector<S>& amplitudes() const { return amp_; }
  const S& amp(std::size_t i) const { return amp_[i]; }

  bool is_vacuous() const {  // all-zero vector
    for (const auto& a : amp_)
      if (!ScalarOps<S>::is_zero(a)) return false;
    return true;
  }

  int position_of(std::uint32_t label) const {
    for (std::size_t k = 0; k < qubits_.size(); ++k)
      if (qubits_[k].label == label) return static_cast<int>(k);
    throw DomainError("unknown qubit label " + std::to_string(label));
  }

  bool has_label(std::uint32_t label) const {
    for (const auto& q : qubits_)
      if (q.label == label) return true;
    return false;
  }

  void scale(const S& w) {
    for (auto& a : amp_) a = a * w;
  }

  void apply_1q(std::uint32_t label, const Gate1<S>& u) {
    const int k = position_of(label);
    const std::size_t stride = std::size_t{1} << (num_qubits() - 1 - k);
    for (std::size_t base = 0; base < dim(); ++base) {
      if (base & stride) continue;
      S a0 = amp_[base];
      S a1 = amp_[base | stride];
      amp_[base] = u[0] * a0 + u[1] * a1;
      amp_[base | stride] = u[2] * a0 + u[3] * a1;
    }
  }

  // Diagonal two-qubit operator: amplitude at (bit_a, bit_b) scales by
  // d[bit_a*2 + bit_b].
  void apply_diag_pair(std::uint32_t label_a, std::uint32_t label_b, const std::array<S, 4>& d) {
    const std::size_t sa = std::size_t{1} << (num_qubits() - 1 - position_of(label_a));
    const std::size_t sb = std::size_t{1} << (num_qubits() - 1 - position_of(label_b));
    if (sa == sb) throw DomainError("pair operator needs two distinct qubits");
    for (std::size_t i = 0; i < dim(); ++i) {
      const int key = ((i & sa) ? 2 : 0) | ((i & sb) ? 1 : 0);
      amp_[i] = amp_[i] * d[key];
    }
  }

  void apply_2q(std::uint32_t label_a, std::uint32_t label_b, const Gate2<S>& u) {
    const std::size_t sa = std::size_t{1} << (num_qubits() - 1 - position_of(label_a));
    const std::size_t sb = std::size_t{1} << (num_qubits() - 1 - position_of(label_b));
    if (sa == sb) throw DomainError("pair operator needs two distinct qubits");
    for (std::size_t base = 0; base < dim(); ++base) {
      if ((base & sa) || (base & sb)) continue;
      std::array<std::size_t, 4> idx{base, base | sb, base | sa, base | sa | sb};
      std::array<S, 4> in{amp_[idx[0]], amp_[idx[1]], amp_[idx[2]], amp_[idx[3]]};
      for (int r = 0; r < 4; ++r) {
        S acc = u[r * 4] * in[0];
        for (int c = 1; c < 4; ++c) acc = acc + u[r * 4 + c] * in[c];
        amp_[idx[r]] = acc;
      }
    }
  }

  // Destructive projection: contracts qubit q against the bra (c0, c1),
  // psi' = conj(c0) psi|q=0 + conj(c1) psi|q=1, and drops q from the list.
  PureState project_remove(std::uint32_t label, const S& c0, const S& c1) const {
    const int k = position_of(label);
    const std::size_t stride = std::size_t{1} << (num_qubits() - 1 - k);
    const S b0 = ScalarOps<S>::conj(c0);
    const S b1 = ScalarOps<S>::conj(c1);
    PureState out;
    out.qubits_ = qubits_;
    out.qubits_.erase(out.qubits_.begin() + k);
    out.amp_.assign(dim() / 2, ScalarOps<S>::zero());
    for (std::size_t j = 0; j < out.amp_.size(); ++j) {
      const std::size_t low = j & (stride - 1);
      const std::size_t high = (j ^ low) << 1;
      out.amp_[j] = b0 * amp_[high | low] + b1 * amp_[high | stride | low];
    }
    return out;
  }

  // Swap in a replacement id at the position currently labeled `old_label`.
  void relabel(std::uint32_t old_label, const QubitId& fresh) {
    if (fresh.label != old_label && has_label(fresh.label))
      throw DomainError("relabel collides with existing label");
    qubits_[position_of(old_label)] = fresh;
  }

  // Move the qubit with the given label to the back of the list (and its bit
  // to the least significant position), preserving the relative order of the
  // others.
  void rotate_to_back(std::uint32_t label) {
    const int k = position_of(label);
    const int n = num_qubits();
    if (k == n - 1) return;
    std::vector<QubitId> order = qubits_;
    QubitId q = order[k];
    order.erase(order.begin() + k);
    order.push_back(q);
    *this = reordered(order);
  }

  // Permutes the qubit list (and amplitudes) into the given order, which must
  // be a permutation of the current qubits.
  PureState reordered(const std::vector<QubitId>& order) const {
    const int n = num_qubits();
    if (order.size() != qubits_.size()) throw DomainError("reorder needs a permutation of the qubits");
    std::vector<int> old_pos(n);
    for (int k = 0; k < n; ++k) old_pos[k] = position_of(order[k].label);
    std::vector<bool> seen(n, false);
    for (int p : old_pos) {
      if (seen[p]) throw DomainError("reorder needs a permutation of the qubits");
      seen[p] = true;
    }
    PureState out;
    out.qubits_ = order;
    out.amp_.assign(dim(), ScalarOps<S>::zero());
    for (std::size_t i = 0; i < dim(); ++i) {
      std::size_t j = 0;
      for (int k = 0; k < n; ++k) {
        const std::size_t bit = (i >> (n - 1 - old_pos[k])) & 1;
        j |= bit << (n - 1 - k);
      }
      out.amp_[j] = amp_[i];
    }
    return out;
  }

  // <this|other>; requires identical qubit lists in identical order.
  S inner(const PureState& other) const {
    require_same_qubits(other);
    S acc = ScalarOps<S>::zero();
    for (std::size_t i = 0; i < dim(); ++i) acc = acc + ScalarOps<S>::conj(amp_[i]) * other.amp_[i];
    return acc;
  }

  S norm2() const { return inner(*this); }

  std::size_t hash() const {
    std::size_t h = 0x9e3779b9;
    for (const auto& a : amp_) h = hash_combine(h, ScalarOps<S>::hash(a));
    return h;
  }

  friend bool operator==(const PureState& a, const PureState& b) {
    if (a.qubits_.size() != b.qubits_.size()) return false;
    for (std::size_t k = 0; k < a.qubits_.size(); ++k)
      if (a.qubits_[k].label != b.qubits_[k].label) return false;
    return a.amp_ == b.amp_;
  }

  // Sorted basis-label -> amplitude listing; zero amplitudes are omitted.
  std::string to_string() const {
    std::string s = "qubits";
    for (const auto& q : qubits_) s += " " + q.to_string();
    for (std::size_t i = 0; i < dim(); ++i) {
      if (ScalarOps<S>::is_zero(amp_[i])) continue;
      std::string bits;
      for (int k = 0; k < num_qubits(); ++k) bits += ((i >> (num_qubits() - 1 - k)) & 1) ? '1' : '0';
      s += "\n|" + bits + "> " + ScalarOps<S>::to_string(amp_[i]);
    }
    return s;
  }

  void require_same_qubits(const PureState& other) const {
    if (!(qubits_.size() == other.qubits_.size())) throw DomainError("qubit lists differ");
    for (std::size_t k = 0; k < qubits_.size(); ++k)
      if (qubits_[k].label != other.qubits_[k].label) throw DomainError("qubit lists differ");
  }

 private:
  static void check_distinct(const std::vector<QubitId>& qs) {
    for (std::size_t i = 0; i < qs.size(); ++i)
      for (std::size_t j = i + 1; j < qs.size(); ++j)
        if (qs[i].label == qs[j].label) throw DomainError("duplicate qubit label");
  }

  std::vector<QubitId> qubits_;
  std::vector<S> amp_;
};

// Tensor product; qubit lists concatenate left then right and must be disjoint.
template <class S>
PureState<S> tensor(const PureState<S>& a, const PureState<S>& b) {
  std::vector<QubitId> qubits = a.qubits();
  for (const auto& q : b.qubits()) {
    for (const auto& p : a.qubits())
      if (p.label == q.label) throw DomainError("tensor operands share qubit label " + std::to_string(q.label));
    qubits.push_back(q);
  }
  if (qubits.size() > kMaxQubits) throw CapacityError("state exceeds the qubit capacity");
  std::vector<S> amps;
  amps.reserve(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) amps.push_back(a.amp(i) * b.amp(j));
  return PureState<S>::from_amplitudes(std::move(qubits), std::move(amps));
}

}  // namespace mcsim
