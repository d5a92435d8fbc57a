import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lieverma.padic import GaugeStaircase
from lieverma.roots import Weight, build_root_system
from lieverma.verma import (
    AffinoidVector,
    TruncationError,
    VermaModule,
    WeightDomainError,
    composition_length_classical,
    correspondence_roundtrip,
    lattice_length,
    random_affinoid_vector,
    simple_quotient,
)
from oracles import all_words, sl2_verma_matrix_action


def sl2_module(m, H=10, p=5):
    return VermaModule.of(build_root_system("A1"), Weight.of(m), H, p)


def test_sl2_action_examples():
    for m in [0, 3, Fraction(1, 2)]:
        M = sl2_module(m)
        U = M.U
        fv = M.basis_vector((1,))
        assert M.act(U.h(0), fv) == fv * (m - 2)
        assert M.act(U.e(0), fv) == M.highest() * m
        assert M.act(U.e(0), M.highest()).is_zero()


def test_sl2_action_matches_textbook_formulas():
    m = Fraction(5, 3)
    M = sl2_module(m, H=12)
    U = M.U
    gens = {"e": U.e(0), "f": U.f(0), "h": U.h(0)}
    for word in all_words("efh", 4):
        u = U.one()
        for letter in word:
            u = u * gens[letter]
        for k in range(4):
            got = M.act(u, M.basis_vector((k,)))
            expected = sl2_verma_matrix_action(m, word, k)
            assert got.terms == {(j,): c for j, c in expected.items()}


def test_truncation_is_flagged():
    M = VermaModule.of(build_root_system("A1"), Weight.of(2, n=1), 3)
    v = M.act(M.U.f(0) ** 2, M.basis_vector((2,)))
    assert v.truncated and v.is_zero() and v.dropped_gauge == -4


def test_delta_examples():
    m = 4
    M = sl2_module(m)
    # lambda(delta) with delta = h/2
    assert M.Lambda == Fraction(m, 2)
    assert M.delta_eigenvalue((0,)) == M.Lambda
    assert M.delta_eigenvalue((3,)) == Fraction(m, 2) - 3
    a = 7
    shifted = M.U.delta() - M.Lambda + a
    for k in range(6):
        v = M.basis_vector((k,))
        assert M.act(shifted, v) == v * (a - k)


@pytest.mark.parametrize("t,lam", [("A1", (3,)), ("A2", (1, 2)), ("B2", (0, 1))])
def test_apply_delta_matches_operator(t, lam):
    M = VermaModule.of(build_root_system(t), lam, 10)
    delta = M.delta_operator()
    for B in M.exponents():
        v = M.basis_vector(B)
        assert M.apply_delta(v) == M.act(delta, v)


def test_epsilon_examples():
    M = sl2_module(3, H=12)
    for j in range(5):
        for i in range(5):
            v = M.basis_vector((j,))
            assert M.epsilon_apply(i, j, v) == v
    L = 3
    for i in range(1, 5):
        for t in range(L + 1, i + L + 1):
            assert M.epsilon_apply(i, L, M.basis_vector((t,))).is_zero()
    for L in range(1, 6):
        v = M.basis_vector((L,))
        assert M.epsilon_apply(L - 1, 0, v) == v * (-1) ** (L - 1)


def test_separating_operator_examples():
    M = sl2_module(3)
    op, factor, choices = M.separating_operator(Weight.of(3), [])
    assert op == M.U.one() and factor == 1 and choices == []
    mu, nu = Weight.of(3 - 4), Weight.of(3 - 8)
    op, factor, choices = M.separating_operator(mu, [nu])
    assert factor == mu[0] - nu[0] or factor == (mu[0] - nu[0]) / 2
    v = M.basis_vector((2,))
    assert M.act(op, v) == v * factor
    assert M.act(op, M.basis_vector((4,))).is_zero()
    with pytest.raises(ValueError):
        M.separating_operator(mu, [mu])


def test_separating_operator_rank_two_scaling():
    M = VermaModule.of(build_root_system("A2"), (1, 1), 6)
    betas = [b for b in M.weight_spaces() if sum(b) == 4]
    target = M.weight_of_beta(betas[0])
    others = [M.weight_of_beta(b) for b in betas[1:]]
    op, factor, _ = M.separating_operator(target, others)
    for beta in betas:
        for B in M.space(beta):
            out = M.act(op, M.basis_vector(B))
            if beta == betas[0]:
                assert out == M.basis_vector(B) * factor
            else:
                assert out.is_zero()


def test_extraction_of_top_component():
    p, H = 5, 8
    M = sl2_module(2, H=H, p=p)
    terms = {(0,): Fraction(1)}
    terms.update({(k,): Fraction(p) ** (2 * k) for k in range(1, H + 1)})
    u = AffinoidVector(M.vector(terms), GaugeStaircase.linear(1), 1)
    assert u.certificate()
    ex = M.extract_weight_component(u, M.weight)
    assert ex.component == M.highest()
    assert ex.frontier_gauge >= GaugeStaircase.linear(1)(H + 1)


def test_extraction_errors():
    M = sl2_module(2, H=4)
    u = random_affinoid_vector(M, random.Random(0))
    with pytest.raises(WeightDomainError):
        M.extract_weight_component(u, Weight.of(3))
    with pytest.raises(TruncationError):
        M.extract_weight_component(u, Weight.of(2 - 12))


@pytest.mark.parametrize("t,lam,H", [("A1", (Fraction(1, 2),), 10), ("A2", (2, 1), 4),
                                     ("B2", (1, 0), 4), ("G2", (1, 1), 4)])
def test_extraction_equals_projection(t, lam, H):
    M = VermaModule.of(build_root_system(t), lam, H)
    rng = random.Random(5)
    for _ in range(3):
        u = random_affinoid_vector(M, rng)
        for beta in u.explicit.components():
            mu = M.weight_of_beta(beta)
            assert M.extract_weight_component(u, mu).component == M.projection(u.explicit, mu)


@pytest.mark.parametrize("m", range(7))
def test_sl2_singular_vectors(m):
    M = sl2_module(m, H=m + 3)
    sing = M.singular_vectors()
    assert len(sing) == 1
    assert set(sing[0].terms) == {(m + 1,)}


def test_no_singular_vectors_for_half():
    assert sl2_module(Fraction(1, 2), H=12).singular_vectors() == []


def test_a2_zero_weight_singular_at_height_one():
    M = VermaModule.of(build_root_system("A2"), (0, 0), 1)
    sing = M.singular_vectors()
    assert sorted(tuple(v.terms) for v in sing) == [((0, 1, 0),), ((1, 0, 0),)]


@pytest.mark.parametrize("m", range(5))
def test_sl2_maximal_submodule_and_quotient(m):
    M = sl2_module(m, H=m + 8)
    N = M.maximal_submodule()
    assert N.status == "exact-below-cap"
    assert N.dimensions() == {(k,): 1 for k in range(m + 1, m + 9)}
    assert sum(simple_quotient(M).values()) == m + 1
    assert N == M.submodule([M.basis_vector((m + 1,))])


def test_half_verma_is_simple():
    M = sl2_module(Fraction(1, 2), H=9)
    assert M.maximal_submodule().dimension() == 0
    lattice = M.submodule_lattice()
    assert [S.dimension() for S in lattice] == [0, 10]
    assert lattice_length(lattice) == composition_length_classical(M.rs, M.weight) == 1


@pytest.mark.parametrize("m", [0, 2])
def test_sl2_length_two(m):
    M = sl2_module(m, H=m + 8)
    lattice = M.submodule_lattice()
    assert lattice_length(lattice) == 2 == composition_length_classical(M.rs, M.weight)


def test_a2_rho_quotient_is_adjoint_sized():
    # L(rho) for sl3 has dimension 2^3
    M = VermaModule.of(build_root_system("A2"), (1, 1), 7)
    assert sum(simple_quotient(M).values()) == 8


def test_roundtrip_edge_cases():
    M = sl2_module(2, H=10)
    zero = M.submodule([])
    rep = correspondence_roundtrip(zero, 3, GaugeStaircase.linear(1), random.Random(1))
    assert rep["ok"] and all(s["components"] == 0 for s in rep["samples"])
    whole = M.whole()
    rep = correspondence_roundtrip(whole, 5, GaugeStaircase.linear(1), random.Random(2))
    assert rep["ok"]


# properties -----------------------------------------------------------------

TYPES = ["A1", "A2", "B2", "G2"]


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(TYPES), st.integers(0, 2**16))
def test_height_inequality_and_weight_additivity(t, seed):
    rs = build_root_system(t)
    rng = random.Random(seed)
    lam = tuple(Fraction(rng.randint(-4, 4), rng.choice([1, 2])) for _ in range(rs.rank))
    M = VermaModule.of(rs, lam, 6)
    top = rs.max_root_height
    for B in M.exponents():
        assert top * sum(B) >= M.height(B) >= sum(B)
    B = rng.choice(M.exponents(4))
    for i in range(rs.rank):
        out = M.act(M.U.f(i), M.basis_vector(B))
        for B2 in out.terms:
            assert M.height(B2) == M.height(B) + 1
            assert M.weight_of(B2) == M.rs.shift(M.weight_of(B), rs.simple_roots[i].coeffs)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**16), st.integers(0, 4), st.integers(0, 4))
def test_epsilon_operator_matches_scaling(seed, i, j):
    M = VermaModule.of(build_root_system("A2"), (1, 0), 6)
    rng = random.Random(seed)
    v = M.vector({B: Fraction(rng.randint(-9, 9)) for B in M.exponents()})
    assert M.act(M.epsilon_operator(i, j), v) == M.epsilon_apply(i, j, v)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**16))
def test_action_is_a_module_action(seed):
    M = VermaModule.of(build_root_system("A2"), (Fraction(1, 3), 2), 8)
    U = M.U
    rng = random.Random(seed)
    monos = U.monomials(2)
    a = U.element({rng.choice(monos): Fraction(rng.randint(1, 5))})
    b = U.element({rng.choice(monos): Fraction(rng.randint(1, 5))})
    v = M.basis_vector(rng.choice(M.exponents(2)))
    assert M.act(a * b, v) == M.act(a, M.act(b, v))
