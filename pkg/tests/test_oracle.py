"""Elimination oracle: windowed bases, kernels, annihilators, torsion."""

import random

import pytest

from prozero.fields import QQ, PrimeField
from prozero.oracle import (Window, WindowError, annihilator_oracle,
                            boundary_touch, joint_kernel, kernel_of, mul_map,
                            poly_of_vec, quotient_reduce, relation_span,
                            system_kernel, torsion_subspace, vectorize,
                            window_basis)
from prozero.rings import (CTRL, E1, E2, GS, R_ONLY, GradedPoly, RingId,
                           SystemSpec, ann_formula)


def _gen(ring, name):
    return GradedPoly.gen(ring, name)


def test_window_margin_enforced():
    with pytest.raises(WindowError):
        Window(8, 0, 9)             # needs Mx >= 10
    with pytest.raises(WindowError):
        Window(2, 6, 7)
    with pytest.raises(WindowError):
        Window(-1, 0, 5)
    w = Window(8, 0, 10)
    assert (w.Dt, w.Du, w.Mx) == (8, 0, 10)


def test_window_basis_counts():
    # base ring window: y^0..y^Mx plus x_0..x_Mx
    assert len(window_basis(R_ONLY, Window(0, 0, 12)).monos) == 26
    assert len(window_basis(E2, Window(3, 2, 6)).monos) == 145
    # each slice of CTRL: 1, x^1..x^Mx
    assert len(window_basis(CTRL, Window(1, 0, 4)).monos) == 10


def test_relation_span_contains_defining_relators():
    # x0*y and x0 - x1*y lie in the degree-zero relation span of R
    span = relation_span(R_ONLY, Window(0, 0, 4))
    one = QQ.one()
    x0y = {(0, 0, 1, 1, (0,)): one}
    step = {(0, 0, 1, 0, (0,)): one, (0, 0, 1, 1, (1,)): QQ.neg(one)}
    assert span.contains(x0y)
    assert span.contains(step)
    # but not the plain basis monomial x0
    assert not span.contains({(0, 0, 1, 0, (0,)): one})


def test_quotient_reduce_idempotent_and_linear():
    rng = random.Random(23)
    w = Window(2, 0, 6)
    basis = window_basis(E1(2), w)
    for _ in range(40):
        raw = {}
        for _ in range(rng.randint(1, 5)):
            m = rng.choice(basis.monos)
            raw[m] = QQ.from_int(rng.randint(-4, 4) or 1)
        red = quotient_reduce(E1(2), w, raw)
        assert quotient_reduce(E1(2), w, red) == red


def test_vectorize_round_trip():
    rng = random.Random(31)
    for ring in (R_ONLY, GS, E1(2), E2, CTRL):
        for _ in range(30):
            terms = {}
            dt = rng.randint(0, 2) if ring.has_t else 0
            du = rng.randint(0, 1) if ring.has_u else 0
            if ring.variant == "CTRL":
                idx = ("x", rng.randint(1, 4))
            else:
                idx = ("x", rng.randint(0, 5)) if rng.random() < 0.6 \
                    else ("y", rng.randint(0, 3))
            terms[(dt, du)] = {idx: QQ.from_int(rng.randint(1, 5))}
            p = GradedPoly(ring, terms, QQ)
            assert poly_of_vec(ring, vectorize(p)) == p


def test_annihilator_dims_frozen():
    w = Window(10, 0, 12)
    assert [annihilator_oracle(E1(2), d, 0, w).dim for d in range(11)] == \
        [0, 0, 1, 2, 3, 4, 5, 6, 7, 8, 9]
    assert [annihilator_oracle(E1(3), d, 0, w).dim for d in range(11)] == \
        [0, 0, 0, 1, 2, 3, 4, 5, 6, 7, 8]
    w2 = Window(8, 3, 12)
    assert [annihilator_oracle(E2, d, 0, w2).dim for d in range(9)] == \
        [0, 0, 1, 2, 3, 4, 5, 6, 7]
    assert [annihilator_oracle(E2, d, 1, w2).dim for d in range(6)] == \
        [1, 2, 3, 4, 5, 6]
    assert all(annihilator_oracle(GS, d, 0, w).dim == 0 for d in range(6))
    wc = Window(8, 0, 10)
    assert [annihilator_oracle(CTRL, d, 0, wc).dim for d in (1, 2, 3)] == \
        [0, 10, 10]


def test_annihilator_matches_formula_everywhere():
    for ring in (E1(2), E1(3), E2, GS):
        w = Window(6, 2 if ring.has_u else 0, 8)
        for dt in range(7):
            for du in range(3 if ring.has_u else 1):
                want = ann_formula(ring, dt, du)
                got = annihilator_oracle(ring, dt, du, w)
                assert got.dim == len(want)
                for idx in want:
                    assert got.contains_poly(_gen(ring, idx))


def test_kernel_dims_frozen():
    assert system_kernel(E1(2), SystemSpec("f", 2), Window(8, 0, 12)).dim == 8
    assert system_kernel(E1(3), SystemSpec("f", 3), Window(8, 0, 12)).dim == 7
    assert system_kernel(GS, SystemSpec("f", 2), Window(8, 0, 16)).dim == 0
    assert system_kernel(E2, SystemSpec("f", 2), Window(6, 6, 10)).dim == 6


def test_kernel_membership_witnesses():
    ker = system_kernel(E1(2), SystemSpec("f", 2), Window(8, 0, 12))
    x0t = _gen(E1(2), ("x", 0)) * _gen(E1(2), "t")
    assert ker.contains_poly(x0t)
    assert not ker.contains_poly(_gen(E1(2), ("x", 0)))
    ker3 = system_kernel(E1(3), SystemSpec("f", 3), Window(8, 0, 12))
    x0t2 = _gen(E1(3), ("x", 0)) * _gen(E1(3), "t") ** 2
    assert ker3.contains_poly(x0t2)


def test_kernel_window_monotone():
    # growing the window never loses kernel vectors
    dims = [system_kernel(E1(2), SystemSpec("f", 2), Window(d, 0, d + 4)).dim
            for d in range(2, 9)]
    assert dims == sorted(dims)
    small = system_kernel(E1(2), SystemSpec("f", 2), Window(4, 0, 10))
    large = system_kernel(E1(2), SystemSpec("f", 2), Window(8, 0, 10))
    for v in small.basis():
        assert large.contains(v)


def test_joint_kernel_equals_system_kernel():
    w = Window(6, 0, 10)
    t = _gen(E1(2), "t")
    y = _gen(E1(2), "y")
    maps = [mul_map(E1(2), t - y, w), mul_map(E1(2), t * t, w)]
    jk = joint_kernel(E1(2), maps)
    sk = system_kernel(E1(2), SystemSpec("f", 2), w)
    assert jk.dim == sk.dim
    for v in sk.basis():
        assert jk.contains(v)


def test_kernel_of_single_map():
    # Ann_R(y) = k x_0 in the degree-zero window
    ker = kernel_of(R_ONLY, _gen(R_ONLY, "y"), Window(0, 0, 10))
    assert ker.dim == 1
    assert ker.contains_poly(_gen(R_ONLY, ("x", 0)))
    # t - y is injective on the GS window
    g = _gen(GS, "t") - _gen(GS, "y")
    assert kernel_of(GS, g, Window(8, 0, 16)).dim == 0


def test_torsion_frozen():
    T = torsion_subspace(E2, Window(6, 6, 10))
    assert T.dim == 13
    t = _gen(E2, "t")
    u = _gen(E2, "u")
    for v in T.basis():
        p = poly_of_vec(E2, v)
        assert (t * t * p).is_zero()
        assert (t * u * p).is_zero()
        assert (u * u * p).is_zero()
    assert T.contains_poly(_gen(E2, ("x", 0)))
    assert not T.contains_poly(GradedPoly.one(E2))
    Tc = torsion_subspace(CTRL, Window(6, 0, 10))
    assert Tc.dim == 20
    assert Tc.contains_poly(_gen(CTRL, ("x", 1)))
    assert not Tc.contains_poly(_gen(CTRL, "t"))


def test_boundary_touch_flags_coefficient_edge():
    w = Window(4, 0, 6)
    edge = vectorize(_gen(E1(2), ("x", 6)))
    interior = vectorize(_gen(E1(2), ("x", 3)))
    assert boundary_touch(edge, w, E1(2))
    assert not boundary_touch(interior, w, E1(2))
    # t-direction saturation alone does not flag
    top_t = vectorize(_gen(E1(2), ("x", 6)) * _gen(E1(2), "t") ** 4)
    low = vectorize(_gen(E1(2), ("x", 2)) * _gen(E1(2), "t") ** 4)
    assert boundary_touch(top_t, w, E1(2))
    assert not boundary_touch(low, w, E1(2))


def test_mutation_changes_oracle_only():
    # dropping the first truncation relator revives x0*t^2 in the oracle
    mut = RingId("E1", 2, frozenset({"n0"}))
    w = Window(4, 0, 8)
    plain = annihilator_oracle(E1(2), 2, 0, w)
    mutated = annihilator_oracle(mut, 2, 0, w)
    assert plain.dim == 1
    assert mutated.dim == 0
    # formula side is blind to the omission
    assert ann_formula(mut, 2, 0) == ann_formula(E1(2), 2, 0)


def test_prime_field_oracle_agrees_on_dims():
    fp = PrimeField(101)
    w = Window(6, 0, 8)
    for d in range(5):
        a = annihilator_oracle(E1(2), d, 0, w)
        b = annihilator_oracle(E1(2), d, 0, w, field=fp)
        assert a.dim == b.dim
