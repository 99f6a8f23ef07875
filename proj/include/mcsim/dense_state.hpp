#pragma once

#include <vector>

#include "mcsim/local_ops.hpp"
#include "mcsim/pure_state.hpp"

namespace mcsim {

// Dense-matrix realization of an unnormalized density operator. Row and
// column indices follow the same bit convention as PureState: qubit 0 of the
// list is the most significant bit.
template <class S>
class DenseOperator {
 public:
  DenseOperator() : m_(1, ScalarOps<S>::zero()) {}

  static DenseOperator from_pure(const PureState<S>& psi) {
    return from_weighted(ScalarOps<S>::one(), psi);
  }

  static DenseOperator from_weighted(const S& weight, const PureState<S>& psi) {
    DenseOperator d;
    d.qubits_ = psi.qubits();
    const std::size_t n = psi.dim();
    d.m_.assign(n * n, ScalarOps<S>::zero());
    for (std::size_t r = 0; r < n; ++r) {
      if (ScalarOps<S>::is_zero(psi.amp(r))) continue;
      const S wr = weight * psi.amp(r);
      for (std::size_t c = 0; c < n; ++c) {
        if (ScalarOps<S>::is_zero(psi.amp(c))) continue;
        d.m_[r * n + c] = wr * ScalarOps<S>::conj(psi.amp(c));
      }
    }
    return d;
  }

  const std::vector<QubitId>& qubits() const { return qubits_; }
  int num_qubits() const { return static_cast<int>(qubits_.size()); }
  std::size_t dim() const { return std::size_t{1} << qubits_.size(); }
  const S& entry(std::size_t r, std::size_t c) const { return m_[r * dim() + c]; }
  bool has_label(std::uint32_t label) const {
    for (const auto& q : qubits_)
      if (q.label == label) return true;
    return false;
  }

  void scale(const S& w) {
    for (auto& x : m_) x = x * w;
  }

  void add_in(const DenseOperator& other) {
    require_same_qubits(other);
    for (std::size_t i = 0; i < m_.size(); ++i) m_[i] = m_[i] + other.m_[i];
  }

  void apply_1q(std::uint32_t label, const Gate1<S>& u) {
    const std::size_t stride = stride_of(label);
    const std::size_t n = dim();
    for (std::size_t r = 0; r < n; ++r) {  // rho -> U rho
      if (r & stride) continue;
      for (std::size_t c = 0; c < n; ++c) {
        S a = m_[r * n + c];
        S b = m_[(r | stride) * n + c];
        m_[r * n + c] = u[0] * a + u[1] * b;
        m_[(r | stride) * n + c] = u[2] * a + u[3] * b;
      }
    }
    const Gate1<S> uc{ScalarOps<S>::conj(u[0]), ScalarOps<S>::conj(u[1]), ScalarOps<S>::conj(u[2]),
                      ScalarOps<S>::conj(u[3])};
    for (std::size_t r = 0; r < n; ++r) {  // rho -> rho U+
      for (std::size_t c = 0; c < n; ++c) {
        if (c & stride) continue;
        S a = m_[r * n + c];
        S b = m_[r * n + (c | stride)];
        m_[r * n + c] = a * uc[0] + b * uc[1];
        m_[r * n + (c | stride)] = a * uc[2] + b * uc[3];
      }
    }
  }

  void apply_diag_pair(std::uint32_t la, std::uint32_t lb, const std::array<S, 4>& d) {
    const std::size_t sa = stride_of(la), sb = stride_of(lb);
    if (sa == sb) throw DomainError("pair operator needs two distinct qubits");
    const std::size_t n = dim();
    const std::array<S, 4> dc{ScalarOps<S>::conj(d[0]), ScalarOps<S>::conj(d[1]),
                              ScalarOps<S>::conj(d[2]), ScalarOps<S>::conj(d[3])};
    for (std::size_t r = 0; r < n; ++r) {
      const int kr = ((r & sa) ? 2 : 0) | ((r & sb) ? 1 : 0);
      for (std::size_t c = 0; c < n; ++c) {
        const int kc = ((c & sa) ? 2 : 0) | ((c & sb) ? 1 : 0);
        m_[r * n + c] = d[kr] * m_[r * n + c] * dc[kc];
      }
    }
  }

  void apply_2q(std::uint32_t la, std::uint32_t lb, const Gate2<S>& u) {
    const std::size_t sa = stride_of(la), sb = stride_of(lb);
    if (sa == sb) throw DomainError("pair operator needs two distinct qubits");
    const std::size_t n = dim();
    auto gather = [&](std::size_t base) {
      return std::array<std::size_t, 4>{base, base | sb, base | sa, base | sa | sb};
    };
    for (std::size_t r = 0; r < n; ++r) {
      if ((r & sa) || (r & sb)) continue;
      auto idx = gather(r);
      for (std::size_t c = 0; c < n; ++c) {
        std::array<S, 4> in{m_[idx[0] * n + c], m_[idx[1] * n + c], m_[idx[2] * n + c],
                            m_[idx[3] * n + c]};
        for (int i = 0; i < 4; ++i) {
          S acc = u[i * 4] * in[0];
          for (int j = 1; j < 4; ++j) acc = acc + u[i * 4 + j] * in[j];
          m_[idx[i] * n + c] = acc;
        }
      }
    }
    Gate2<S> uc;
    for (int i = 0; i < 16; ++i) uc[i] = ScalarOps<S>::conj(u[i]);
    for (std::size_t c = 0; c < n; ++c) {
      if ((c & sa) || (c & sb)) continue;
      auto idx = gather(c);
      for (std::size_t r = 0; r < n; ++r) {
        std::array<S, 4> in{m_[r * n + idx[0]], m_[r * n + idx[1]], m_[r * n + idx[2]],
                            m_[r * n + idx[3]]};
        for (int i = 0; i < 4; ++i) {
          S acc = in[0] * uc[i * 4];
          for (int j = 1; j < 4; ++j) acc = acc + in[j] * uc[i * 4 + j];
          m_[r * n + idx[i]] = acc;
        }
      }
    }
  }

  // Single-pass Pauli channel on one qubit:
  // out[r,c] = (wi ± wz) in[r,c] + (wx ± wy) in[r^mask, c^mask], the sign
  // chosen by whether the row and column bits of the qubit agree.
  void pauli_channel(std::uint32_t label, const S& wi, const S& wx, const S& wy, const S& wz) {
    const std::size_t mask = stride_of(label);
    const std::size_t n = dim();
    const S wp = wi + wz, wm = wi - wz, xp = wx + wy, xm = wx - wy;
    std::vector<S> out(n * n, ScalarOps<S>::zero());
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        const bool same = ((r & mask) != 0) == ((c & mask) != 0);
        out[r * n + c] = (same ? wp : wm) * m_[r * n + c] +
                         (same ? xp : xm) * m_[(r ^ mask) * n + (c ^ mask)];
      }
    }
    m_ = std::move(out);
  }

  // K rho K+ with K = <bra| on one qubit; the qubit leaves the list.
  void project_remove(std::uint32_t label, const S& c0, const S& c1) {
    const int k = pos(label);
    const std::size_t stride = std::size_t{1} << (num_qubits() - 1 - k);
    const std::size_t n = dim();
    const std::size_t half = n / 2;
    const S b[2] = {ScalarOps<S>::conj(c0), ScalarOps<S>::conj(c1)};
    const S bc[2] = {c0, c1};
    auto expand = [&](std::size_t j, std::size_t bit) {
      const std::size_t low = j & (stride - 1);
      const std::size_t high = (j ^ low) << 1;
      return high | (bit ? stride : 0) | low;
    };
    std::vector<S> out(half * half, ScalarOps<S>::zero());
    for (std::size_t r = 0; r < half; ++r) {
      const std::size_t r0 = expand(r, 0), r1 = expand(r, 1);
      for (std::size_t c = 0; c < half; ++c) {
        const std::size_t c0i = expand(c, 0), c1i = expand(c, 1);
        out[r * half + c] = b[0] * m_[r0 * n + c0i] * bc[0] + b[0] * m_[r0 * n + c1i] * bc[1] +
                            b[1] * m_[r1 * n + c0i] * bc[0] + b[1] * m_[r1 * n + c1i] * bc[1];
      }
    }
    qubits_.erase(qubits_.begin() + k);
    m_ = std::move(out);
  }

  void relabel(std::uint32_t old_label, const QubitId& fresh) {
    if (fresh.label != old_label && has_label(fresh.label))
      throw DomainError("relabel collides with existing label");
    qubits_[pos(old_label)] = fresh;
  }

  void rotate_to_back(std::uint32_t label) {
    const int k = pos(label);
    std::vector<QubitId> order = qubits_;
    QubitId q = order[k];
    order.erase(order.begin() + k);
    order.push_back(q);
    *this = reordered(order);
  }

  DenseOperator reordered(const std::vector<QubitId>& order) const {
    const int n = num_qubits();
    if (order.size() != qubits_.size()) throw DomainError("reorder needs a permutation of the qubits");
    std::vector<int> old_pos(n);
    for (int k = 0; k < n; ++k) old_pos[k] = pos(order[k].label);
    std::vector<bool> seen(n, false);
    for (int p : old_pos) {
      if (seen[p]) throw DomainError("reorder needs a permutation of the qubits");
      seen[p] = true;
    }
    const std::size_t d = dim();
    std::vector<std::size_t> map(d);
    for (std::size_t i = 0; i < d; ++i) {
      std::size_t j = 0;
      for (int k = 0; k < n; ++k) j |= ((i >> (n - 1 - old_pos[k])) & 1) << (n - 1 - k);
      map[i] = j;
    }
    DenseOperator out;
    out.qubits_ = order;
    out.m_.assign(d * d, ScalarOps<S>::zero());
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) out.m_[map[r] * d + map[c]] = m_[r * d + c];
    return out;
  }

  S trace() const {
    const std::size_t n = dim();
    S acc = ScalarOps<S>::zero();
    for (std::size_t i = 0; i < n; ++i) acc = acc + m_[i * n + i];
    return acc;
  }

  // <t|rho|t>; t must share the qubit order.
  S overlap(const PureState<S>& t) const {
    if (t.qubits().size() != qubits_.size()) throw DomainError("qubit lists differ");
    for (std::size_t k = 0; k < qubits_.size(); ++k)
      if (t.qubits()[k].label != qubits_[k].label) throw DomainError("qubit lists differ");
    const std::size_t n = dim();
    S acc = ScalarOps<S>::zero();
    for (std::size_t r = 0; r < n; ++r) {
      if (ScalarOps<S>::is_zero(t.amp(r))) continue;
      S row = ScalarOps<S>::zero();
      for (std::size_t c = 0; c < n; ++c) {
        if (ScalarOps<S>::is_zero(m_[r * n + c]) || ScalarOps<S>::is_zero(t.amp(c))) continue;
        row = row + m_[r * n + c] * t.amp(c);
      }
      acc = acc + ScalarOps<S>::conj(t.amp(r)) * row;
    }
    return acc;
  }

  bool is_hermitian_exact() const {
    const std::size_t n = dim();
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (!(m_[r * n + c] == ScalarOps<S>::conj(m_[c * n + r]))) return false;
    return true;
  }

  std::string to_string() const {
    std::string s = "operator on";
    for (const auto& q : qubits_) s += " " + q.to_string();
    const std::size_t n = dim();
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        if (ScalarOps<S>::is_zero(m_[r * n + c])) continue;
        s += "\n(" + bits(r) + "," + bits(c) + ") " + ScalarOps<S>::to_string(m_[r * n + c]);
      }
    }
    return s;
  }

 private:
  int pos(std::uint32_t label) const {
    for (std::size_t k = 0; k < qubits_.size(); ++k)
      if (qubits_[k].label == label) return static_cast<int>(k);
    throw DomainError("unknown qubit label " + std::to_string(label));
  }

  std::size_t stride_of(std::uint32_t label) const {
    return std::size_t{1} << (num_qubits() - 1 - pos(label));
  }

  void require_same_qubits(const DenseOperator& other) const {
    if (qubits_.size() != other.qubits_.size()) throw DomainError("qubit lists differ");
    for (std::size_t k = 0; k < qubits_.size(); ++k)
      if (qubits_[k].label != other.qubits_[k].label) throw DomainError("qubit lists differ");
  }

  std::string bits(std::size_t i) const {
    std::string s;
    for (int k = 0; k < num_qubits(); ++k) s += ((i >> (num_qubits() - 1 - k)) & 1) ? '1' : '0';
    return s;
  }

  std::vector<QubitId> qubits_;
  std::vector<S> m_;

  template <class T>
  friend DenseOperator<T> tensor(const DenseOperator<T>& a, const DenseOperator<T>& b);
};

template <class S>
DenseOperator<S> tensor(const DenseOperator<S>& a, const DenseOperator<S>& b) {
  DenseOperator<S> out;
  out.qubits_ = a.qubits_;
  for (const auto& q : b.qubits_) {
    for (const auto& p : a.qubits_)
      if (p.label == q.label) throw DomainError("tensor operands share qubit label " + std::to_string(q.label));
    out.qubits_.push_back(q);
  }
  if (out.qubits_.size() > kMaxQubits) throw CapacityError("state exceeds the qubit capacity");
  const std::size_t da = a.dim(), db = b.dim(), d = da * db;
  out.m_.assign(d * d, ScalarOps<S>::zero());
  for (std::size_t ra = 0; ra < da; ++ra)
    for (std::size_t ca = 0; ca < da; ++ca) {
      const S& x = a.m_[ra * da + ca];
      if (ScalarOps<S>::is_zero(x)) continue;
      for (std::size_t rb = 0; rb < db; ++rb)
        for (std::size_t cb = 0; cb < db; ++cb) {
          const S& y = b.m_[rb * db + cb];
          if (ScalarOps<S>::is_zero(y)) continue;
          out.m_[(ra * db + rb) * d + (ca * db + cb)] = x * y;
        }
    }
  return out;
}

}  // namespace mcsim
