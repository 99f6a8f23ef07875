#include <complex>

#include "doctest.h"
#include "mcsim/register.hpp"

using namespace mcsim;

namespace {

using GR = GaussianRational;

std::vector<QubitId> ids(std::initializer_list<std::uint32_t> labels, QubitRole role = QubitRole::EprHalf) {
  std::vector<QubitId> out;
  std::uint32_t birth = 0;
  for (auto l : labels) out.push_back(QubitId{l, role, birth++});
  return out;
}

template <class S>
PureState<S> ket(std::initializer_list<std::uint32_t> labels, std::vector<long> amps) {
  std::vector<S> a;
  for (long v : amps) a.push_back(ScalarOps<S>::from_rational(GR(v)));
  return PureState<S>::from_amplitudes(ids(labels), std::move(a));
}

// Two fixed 2-qubit states with complex structure, used where the checks call
// for a generic mixed operator.
PureState<GR> psi_a() {
  return PureState<GR>::from_amplitudes(ids({7, 9}), {GR(1), GR::i_unit(), GR(-1), GR(1, 2)});
}
PureState<GR> psi_b() {
  return PureState<GR>::from_amplitudes(ids({7, 9}),
                                        {GR(0), GR(1), GR(1) + GR::i_unit(), -GR::i_unit()});
}

}  // namespace

TEST_CASE("tensor concatenates qubit lists and multiplies amplitudes") {
  auto zero = ket<GR>({0}, {1, 0});
  auto one = ket<GR>({1}, {0, 1});
  auto prod = tensor(zero, one);
  REQUIRE(prod.num_qubits() == 2);
  CHECK(prod.amp(0b01) == GR(1));
  CHECK(prod.amp(0b00) == GR(0));
  CHECK(prod.amp(0b10) == GR(0));
  CHECK(prod.amp(0b11) == GR(0));
  CHECK_THROWS_AS(tensor(zero, ket<GR>({0}, {1, 0})), DomainError);
}

TEST_CASE("tensor of mixed operators multiplies traces in both backends") {
  auto ea = BranchEnsemble<GR>::from_weighted(GR(1), psi_a());
  ea.add_in(BranchEnsemble<GR>::from_weighted(GR(1, 3), psi_b()));
  PureState<GR> other = PureState<GR>::from_amplitudes(ids({2, 3}), {GR(1), GR(2), GR(0), GR::i_unit()});
  auto eb = BranchEnsemble<GR>::from_pure(other);
  CHECK(tensor(ea, eb).trace() == ea.trace() * eb.trace());

  auto da = DenseOperator<GR>::from_pure(psi_a());
  da.add_in(DenseOperator<GR>::from_weighted(GR(1, 3), psi_b()));
  auto db = DenseOperator<GR>::from_pure(other);
  CHECK(tensor(da, db).trace() == da.trace() * db.trace());
}

TEST_CASE("single-qubit operators act on the indexed factor only") {
  auto s = ket<GR>({0}, {1, 0});
  s.apply_1q(0, gate_x<GR>());
  CHECK(s.amp(0) == GR(0));
  CHECK(s.amp(1) == GR(1));

  auto ghz = ket<GR>({4, 5}, {1, 0, 0, 1});  // |00>+|11>
  ghz.apply_1q(5, gate_z<GR>());
  CHECK(ghz.amp(0b00) == GR(1));
  CHECK(ghz.amp(0b11) == GR(-1));
  CHECK_THROWS_AS(ghz.apply_1q(99, gate_z<GR>()), DomainError);
}

TEST_CASE("the diagonal splitter weight scales matched and crossed polarizations") {
  using P = Polynomial;
  P alpha = P::variable(Var::alpha);
  auto s = PureState<P>::from_amplitudes(ids({0, 1}), {P(1), P(0), P(0), P(1)});
  s.apply_diag_pair(0, 1, splitter_weight_diag<P>(alpha));
  CHECK(s.amp(0b00) == P(1) - alpha);
  CHECK(s.amp(0b11) == P(1) - alpha);
  auto c = PureState<P>::from_amplitudes(ids({0, 1}), {P(0), P(1), P(1), P(0)});
  c.apply_diag_pair(0, 1, splitter_weight_diag<P>(alpha));
  CHECK(c.amp(0b01) == alpha);
  CHECK(c.amp(0b10) == alpha);
}

TEST_CASE("pauli constants obey the algebra exactly") {
  auto I = gate_identity<GR>(), X = gate_x<GR>(), Y = gate_y<GR>(), Z = gate_z<GR>();
  CHECK(gate_mul(X, X) == I);
  CHECK(gate_mul(Y, Y) == I);
  CHECK(gate_mul(Z, Z) == I);
  CHECK(gate_mul(X, Y) == gate_scale(Z, GR::i_unit()));
  CHECK(gate_mul(gate_s<GR>(), gate_sdg<GR>()) == I);
}

TEST_CASE("destructive projection contracts with conjugated bra coefficients") {
  auto ghz3 = ket<GR>({0, 1, 2}, {1, 0, 0, 0, 0, 0, 0, 1});  // |000>+|111>
  auto plus = ghz3.project_remove(1, GR(1), GR(1));
  REQUIRE(plus.num_qubits() == 2);
  CHECK(plus.amp(0b00) == GR(1));
  CHECK(plus.amp(0b11) == GR(1));
  CHECK(plus.amp(0b01) == GR(0));

  auto minus = ghz3.project_remove(1, GR(1), GR(-1));
  CHECK(minus.amp(0b00) == GR(1));
  CHECK(minus.amp(0b11) == GR(-1));

  // bra (1, i) against |0> + i|1>: conj(1)*1 + conj(i)*i = 2 on the empty register.
  auto spin = PureState<GR>::from_amplitudes(ids({3}), {GR(1), GR::i_unit()});
  auto scalar = spin.project_remove(3, GR(1), GR::i_unit());
  REQUIRE(scalar.num_qubits() == 0);
  CHECK(scalar.amp(0) == GR(2));
  CHECK_THROWS_AS(spin.project_remove(4, GR(1), GR(0)), DomainError);
}

TEST_CASE("mixtures accumulate weights, traces and overlaps without normalization") {
  auto e = BranchEnsemble<GR>::from_pure(ket<GR>({0}, {1, 0}));
  e.add_in(BranchEnsemble<GR>::from_pure(ket<GR>({0}, {0, 1})));
  CHECK(e.trace() == GR(2));
  CHECK(e.overlap(ket<GR>({0}, {1, 0})) == GR(1));

  auto rho1 = DenseOperator<GR>::from_pure(ket<GR>({0}, {0, 1}));
  CHECK(rho1.overlap(ket<GR>({0}, {1, 0})) == GR(0));

  e.scale(GR(1, 2));
  CHECK(e.trace() == GR(1));
  auto d = DenseOperator<GR>::from_pure(psi_a());
  GR t = d.trace();
  d.scale(GR(1, 2));
  CHECK(d.trace() == t * GR(1, 2));

  auto mismatched = BranchEnsemble<GR>::from_pure(ket<GR>({5}, {1, 0}));
  CHECK_THROWS_AS(e.add_in(mismatched), DomainError);
}

TEST_CASE("identical amplitude vectors coalesce into one branch") {
  auto e = BranchEnsemble<GR>::from_weighted(GR(1, 3), ket<GR>({0}, {1, 1}));
  e.add_in(BranchEnsemble<GR>::from_weighted(GR(1, 6), ket<GR>({0}, {1, 1})));
  CHECK(e.num_branches() == 1);
  CHECK(e.branches()[0].weight == GR(1, 2));
  // A branch annihilated by projection is pruned.
  auto f = BranchEnsemble<GR>::from_pure(ket<GR>({0}, {1, 0}));
  f.project_remove(0, GR(0), GR(1));
  CHECK(f.num_branches() == 0);
  CHECK(f.trace() == GR(0));
}

TEST_CASE("fidelity matches the defining examples in both backends") {
  auto epr = PureState<GR>::from_amplitudes(ids({0, 1}), {GR(1), GR(1), GR(1), GR(-1)});
  CHECK(fidelity(epr, BranchEnsemble<GR>::from_pure(epr)) == GR(1));
  CHECK(fidelity(epr, DenseOperator<GR>::from_pure(epr)) == GR(1));

  auto mixed = BranchEnsemble<GR>::from_pure(ket<GR>({0}, {1, 0}));
  mixed.add_in(BranchEnsemble<GR>::from_pure(ket<GR>({0}, {0, 1})));
  CHECK(fidelity(ket<GR>({0}, {1, 0}), mixed) == GR(1, 2));

  auto dmixed = DenseOperator<GR>::from_pure(ket<GR>({0}, {1, 0}));
  dmixed.add_in(DenseOperator<GR>::from_pure(ket<GR>({0}, {0, 1})));
  CHECK(fidelity(ket<GR>({0}, {1, 0}), dmixed) == GR(1, 2));
}

TEST_CASE("fidelity rejects zero traces and zero targets") {
  auto e = BranchEnsemble<GR>::from_pure(ket<GR>({0}, {1, 0}));
  e.project_remove(0, GR(0), GR(1));  // annihilates the only branch
  auto t = PureState<GR>::from_amplitudes({}, {GR(1)});
  CHECK_THROWS_AS(fidelity(t, e), DomainError);
}

TEST_CASE("channel application commutes with mixing") {
  auto d1 = DenseOperator<GR>::from_pure(psi_a());
  auto d2 = DenseOperator<GR>::from_weighted(GR(1, 3), psi_b());
  GR wi(1, 2), wx(1, 5), wy(1, 7), wz(mpq_class(1) - mpq_class(1, 2) - mpq_class(1, 5) - mpq_class(1, 7));

  auto mixed_then_channel = d1;
  mixed_then_channel.add_in(d2);
  mixed_then_channel.pauli_channel(9, wi, wx, wy, wz);

  auto channel_then_mix = d1;
  channel_then_mix.pauli_channel(9, wi, wx, wy, wz);
  auto d2c = d2;
  d2c.pauli_channel(9, wi, wx, wy, wz);
  channel_then_mix.add_in(d2c);

  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c)
      CHECK(mixed_then_channel.entry(r, c) == channel_then_mix.entry(r, c));
  CHECK(mixed_then_channel.is_hermitian_exact());
}

TEST_CASE("both backends agree observable-by-observable through a pipeline") {
  using P = Polynomial;
  P px = P::variable(Var::px), py = P::variable(Var::py), pz = P::variable(Var::pz);
  P wi = P(1) - px - py - pz;
  P alpha = P::variable(Var::alpha);

  auto epr = PureState<P>::from_amplitudes(ids({0, 1}), {P(1), P(1), P(1), P(-1)});
  auto target = PureState<P>::from_amplitudes(ids({0, 1}), {P(1), P(0), P(0), P(1)});

  auto run_branch = [&] {
    auto e = BranchEnsemble<P>::from_pure(epr);
    e.pauli_channel(0, wi, px, py, pz);
    e.apply_diag_pair(0, 1, splitter_weight_diag<P>(alpha));
    return e;
  };
  auto run_dense = [&] {
    auto d = DenseOperator<P>::from_pure(epr);
    d.pauli_channel(0, wi, px, py, pz);
    d.apply_diag_pair(0, 1, splitter_weight_diag<P>(alpha));
    return d;
  };
  auto e = run_branch();
  auto d = run_dense();
  CHECK(e.trace() == d.trace());
  CHECK(e.overlap(target) == d.overlap(target));
  CHECK(fidelity(target, e) == fidelity(target, d));
  CHECK(d.is_hermitian_exact());

  auto ep = e;
  ep.project_remove(1, P(1), P(-1));
  auto dp = d;
  dp.project_remove(1, P(1), P(-1));
  CHECK(ep.trace() == dp.trace());
  auto t1 = PureState<P>::from_amplitudes(ids({0}), {P(1), P(1)});
  CHECK(ep.overlap(t1) == dp.overlap(t1));
}

TEST_CASE("fidelity is invariant under consistent reordering") {
  using P = Polynomial;
  P px = P::variable(Var::px);
  auto epr = PureState<P>::from_amplitudes(ids({0, 1}), {P(1), P(1), P(1), P(-1)});
  auto e = BranchEnsemble<P>::from_pure(epr);
  e.pauli_channel(0, P(1) - px, px, P(0), P(0));

  // Same target expressed with its qubits listed in the opposite order.
  std::vector<QubitId> rev = {epr.qubits()[1], epr.qubits()[0]};
  auto target_fwd = PureState<P>::from_amplitudes(ids({0, 1}), {P(1), P(0), P(0), P(1)});
  auto target_rev = target_fwd.reordered(rev);
  CHECK(fidelity(target_fwd, e) == fidelity(target_rev, e));

  auto d = DenseOperator<P>::from_pure(epr);
  d.pauli_channel(0, P(1) - px, px, P(0), P(0));
  auto d_rot = d.reordered(rev);
  CHECK(fidelity(target_fwd, d) == fidelity(target_fwd, d_rot));
}

TEST_CASE("reordering permutes amplitude bits") {
  auto s = ket<GR>({0, 1}, {0, 1, 0, 0});  // |01>
  auto r = s.reordered({s.qubits()[1], s.qubits()[0]});
  CHECK(r.amp(0b10) == GR(1));
  CHECK(r.amp(0b01) == GR(0));
  auto back = ket<GR>({0, 1}, {0, 1, 0, 0});
  back.rotate_to_back(0);
  CHECK(back.qubits()[1].label == 0);
  CHECK(back.amp(0b10) == GR(1));
}

TEST_CASE("capacity is bounded") {
  std::vector<QubitId> many;
  for (std::uint32_t i = 0; i < 8; ++i) many.push_back(QubitId{i, QubitRole::Leaf, 0});
  auto a = PureState<GR>::basis(many, 0);
  std::vector<QubitId> more;
  for (std::uint32_t i = 8; i < 16; ++i) more.push_back(QubitId{i, QubitRole::Leaf, 0});
  auto b = PureState<GR>::basis(more, 0);
  CHECK_THROWS_AS(tensor(a, b), CapacityError);
}

TEST_CASE("float backend mirrors the exact backend to twelve digits") {
  using C = std::complex<double>;
  auto epr_c = PureState<C>::from_amplitudes(ids({0, 1}), {C(1), C(1), C(1), C(-1)});
  auto d = DenseOperator<C>::from_pure(epr_c);
  d.pauli_channel(0, C(0.9), C(0.04), C(0.03), C(0.03));
  d.apply_diag_pair(0, 1, splitter_weight_diag<C>(C(0.01)));
  auto target = PureState<C>::from_amplitudes(ids({0, 1}), {C(1), C(0), C(0), C(1)});
  double f_float = fidelity(target, d);

  using GRS = GaussianRational;
  auto epr_g = PureState<GRS>::from_amplitudes(ids({0, 1}), {GR(1), GR(1), GR(1), GR(-1)});
  auto g = DenseOperator<GRS>::from_pure(epr_g);
  g.pauli_channel(0, GR(9, 10), GR(4, 100), GR(3, 100), GR(3, 100));
  g.apply_diag_pair(0, 1, splitter_weight_diag<GRS>(GR(1, 100)));
  auto target_g = PureState<GRS>::from_amplitudes(ids({0, 1}), {GR(1), GR(0), GR(0), GR(1)});
  GR f_exact = fidelity(target_g, g);
  CHECK(std::abs(f_float - f_exact.to_complex().real()) <= 1e-12);
}

TEST_CASE("debug rendering lists nonzero amplitudes against bit labels") {
  auto s = ket<GR>({0}, {1, 1});
  std::string r = s.to_string();
  CHECK(r.find("|0> 1") != std::string::npos);
  CHECK(r.find("|1> 1") != std::string::npos);
}
