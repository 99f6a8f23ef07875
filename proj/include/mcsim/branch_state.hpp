#pragma once

#include <unordered_map>
#include <vector>

#include "mcsim/local_ops.hpp"
#include "mcsim/pure_state.hpp"

namespace mcsim {

// Weighted-branch realization of an unnormalized density operator:
// rho = sum_b weight_b |psi_b><psi_b|. All branch states share one qubit list
// in one order. Branches with zero weight or an all-zero state are pruned, and
// branches with identical amplitude vectors coalesce by summing weights, which
// keeps branch counts bounded through long pipelines.
template <class S>
class BranchEnsemble {
 public:
  struct Branch {
    S weight;
    PureState<S> state;
  };

  BranchEnsemble() = default;

  static BranchEnsemble from_pure(PureState<S> psi) {
    return from_weighted(ScalarOps<S>::one(), std::move(psi));
  }

  static BranchEnsemble from_weighted(S weight, PureState<S> psi) {
    BranchEnsemble e;
    e.qubits_ = psi.qubits();
    if (!ScalarOps<S>::is_zero(weight) && !psi.is_vacuous())
      e.branches_.push_back({std::move(weight), std::move(psi)});
    return e;
  }

  const std::vector<QubitId>& qubits() const { return qubits_; }
  int num_qubits() const { return static_cast<int>(qubits_.size()); }
  const std::vector<Branch>& branches() const { return branches_; }
  std::size_t num_branches() const { return branches_.size(); }
  bool has_label(std::uint32_t label) const {
    for (const auto& q : qubits_)
      if (q.label == label) return true;
    return false;
  }

  void apply_1q(std::uint32_t label, const Gate1<S>& u) {
    touch(label);
    for (auto& b : branches_) b.state.apply_1q(label, u);
  }

  void apply_diag_pair(std::uint32_t a, std::uint32_t b, const std::array<S, 4>& d) {
    touch(a);
    touch(b);
    for (auto& br : branches_) br.state.apply_diag_pair(a, b, d);
  }

  void apply_2q(std::uint32_t a, std::uint32_t b, const Gate2<S>& u) {
    touch(a);
    touch(b);
    for (auto& br : branches_) br.state.apply_2q(a, b, u);
  }

  void project_remove(std::uint32_t label, const S& c0, const S& c1) {
    const int k = pos(label);
    qubits_.erase(qubits_.begin() + k);
    for (auto& b : branches_) b.state = b.state.project_remove(label, c0, c1);
    prune();
    coalesce();
  }

  // rho -> wi rho + wx X rho X + wy Y rho Y + wz Z rho Z on one qubit.
  void pauli_channel(std::uint32_t label, const S& wi, const S& wx, const S& wy, const S& wz) {
    touch(label);
    std::vector<Branch> out;
    out.reserve(branches_.size() * 4);
    const Gate1<S> gx = gate_x<S>(), gy = gate_y<S>(), gz = gate_z<S>();
    for (auto& b : branches_) {
      if (!ScalarOps<S>::is_zero(wx)) {
        PureState<S> s = b.state;
        s.apply_1q(label, gx);
        out.push_back({b.weight * wx, std::move(s)});
      }
      if (!ScalarOps<S>::is_zero(wy)) {
        PureState<S> s = b.state;
        s.apply_1q(label, gy);
        out.push_back({b.weight * wy, std::move(s)});
      }
      if (!ScalarOps<S>::is_zero(wz)) {
        PureState<S> s = b.state;
        s.apply_1q(label, gz);
        out.push_back({b.weight * wz, std::move(s)});
      }
      if (!ScalarOps<S>::is_zero(wi)) {
        b.weight = b.weight * wi;
        out.push_back(std::move(b));
      }
    }
    branches_ = std::move(out);
    prune();
    coalesce();
  }

  void scale(const S& w) {
    for (auto& b : branches_) b.weight = b.weight * w;
    prune();
  }

  void add_in(const BranchEnsemble& other) {
    require_same_qubits(other);
    branches_.insert(branches_.end(), other.branches_.begin(), other.branches_.end());
    coalesce();
  }

  void relabel(std::uint32_t old_label, const QubitId& fresh) {
    qubits_[pos(old_label)] = fresh;
    for (auto& b : branches_) b.state.relabel(old_label, fresh);
  }

  void rotate_to_back(std::uint32_t label) {
    const int k = pos(label);
    QubitId q = qubits_[k];
    qubits_.erase(qubits_.begin() + k);
    qubits_.push_back(q);
    for (auto& b : branches_) b.state.rotate_to_back(label);
  }

  S trace() const {
    S acc = ScalarOps<S>::zero();
    for (const auto& b : branches_) acc = acc + b.weight * b.state.norm2();
    return acc;
  }

  // <t|rho|t>; t must share the qubit order.
  S overlap(const PureState<S>& t) const {
    if (t.qubits().size() != qubits_.size()) throw DomainError("qubit lists differ");
    for (std::size_t k = 0; k < qubits_.size(); ++k)
      if (t.qubits()[k].label != qubits_[k].label) throw DomainError("qubit lists differ");
    S acc = ScalarOps<S>::zero();
    for (const auto& b : branches_) {
      S c = t.inner(b.state);
      acc = acc + b.weight * c * ScalarOps<S>::conj(c);
    }
    return acc;
  }

  std::string to_string() const {
    std::string s = "ensemble of " + std::to_string(branches_.size()) + " branch(es)";
    for (const auto& b : branches_)
      s += "\nweight " + ScalarOps<S>::to_string(b.weight) + "\n" + b.state.to_string();
    return s;
  }

 private:
  int pos(std::uint32_t label) const {
    for (std::size_t k = 0; k < qubits_.size(); ++k)
      if (qubits_[k].label == label) return static_cast<int>(k);
    throw DomainError("unknown qubit label " + std::to_string(label));
  }

  void touch(std::uint32_t label) { (void)pos(label); }  // existence check even with no branches

  void require_same_qubits(const BranchEnsemble& other) const {
    if (qubits_.size() != other.qubits_.size()) throw DomainError("qubit lists differ");
    for (std::size_t k = 0; k < qubits_.size(); ++k)
      if (qubits_[k].label != other.qubits_[k].label) throw DomainError("qubit lists differ");
  }

  void prune() {
    std::erase_if(branches_, [](const Branch& b) {
      return ScalarOps<S>::is_zero(b.weight) || b.state.is_vacuous();
    });
  }

  void coalesce() {
    std::unordered_map<std::size_t, std::vector<std::size_t>> buckets;
    std::vector<Branch> out;
    out.reserve(branches_.size());
    for (auto& b : branches_) {
      auto& bucket = buckets[b.state.hash()];
      bool merged = false;
      for (std::size_t j : bucket) {
        if (out[j].state == b.state) {
          out[j].weight = out[j].weight + b.weight;
          merged = true;
          break;
        }
      }
      if (!merged) {
        bucket.push_back(out.size());
        out.push_back(std::move(b));
      }
    }
    branches_ = std::move(out);
    prune();
  }

  std::vector<QubitId> qubits_;
  std::vector<Branch> branches_;

  template <class T>
  friend BranchEnsemble<T> tensor(const BranchEnsemble<T>& a, const BranchEnsemble<T>& b);
};

template <class S>
BranchEnsemble<S> tensor(const BranchEnsemble<S>& a, const BranchEnsemble<S>& b) {
  BranchEnsemble<S> out;
  out.qubits_ = a.qubits_;
  for (const auto& q : b.qubits_) {
    for (const auto& p : a.qubits_)
      if (p.label == q.label) throw DomainError("tensor operands share qubit label " + std::to_string(q.label));
    out.qubits_.push_back(q);
  }
  if (out.qubits_.size() > kMaxQubits) throw CapacityError("state exceeds the qubit capacity");
  for (const auto& ba : a.branches_)
    for (const auto& bb : b.branches_)
      out.branches_.push_back({ba.weight * bb.weight, tensor(ba.state, bb.state)});
  return out;
}

}  // namespace mcsim
