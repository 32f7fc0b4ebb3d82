"""Sparse exact linear algebra: echelon forms, kernels, rank."""

import random

from prozero.fields import QQ, PrimeField
from prozero.linalg import Echelon, Subspace, kernel_basis, rank_of


def _rand_vec(rng, keys, field, density=0.6):
    out = {}
    for k in keys:
        if rng.random() < density:
            c = field.from_int(rng.randint(-9, 9))
            if not field.is_zero(c):
                out[k] = c
    return out


def test_echelon_reduce_is_zero_iff_contained():
    rng = random.Random(3)
    keys = list(range(8))
    ech = Echelon(QQ)
    inserted = []
    for _ in range(6):
        v = _rand_vec(rng, keys, QQ)
        ech.insert(v)
        if v:
            inserted.append(v)
    for v in inserted:
        assert ech.contains(v)
        assert ech.reduce(v) == {}
    # reduce is idempotent and lands outside the span unless zero
    probe = _rand_vec(rng, keys, QQ)
    red = ech.reduce(probe)
    assert ech.reduce(red) == red
    if red:
        assert not ech.contains(probe)


def test_echelon_dim_counts_independent_rows():
    ech = Echelon(QQ)
    one = QQ.one()
    ech.insert({0: one, 1: one})
    ech.insert({1: one})
    ech.insert({0: one})           # dependent on the first two
    assert ech.dim == 2
    assert sorted(ech.pivots()) == [0, 1]


def test_subspace_equality_ignores_spanning_order():
    rng = random.Random(17)
    keys = list(range(10))
    for _ in range(20):
        vecs = [_rand_vec(rng, keys, QQ) for _ in range(5)]
        a = Subspace.spanned_by(vecs, QQ)
        shuffled = list(vecs)
        rng.shuffle(shuffled)
        # scale each vector: the span must not move
        scaled = [{k: QQ.mul(QQ.from_int(3), c) for k, c in v.items()}
                  for v in shuffled]
        b = Subspace.spanned_by(scaled, QQ)
        assert a == b
        assert a.contains_subspace(b) and b.contains_subspace(a)


def test_subspace_reduce_canonical():
    # equal classes reduce to the same representative
    rng = random.Random(5)
    keys = list(range(6))
    vecs = [_rand_vec(rng, keys, QQ) for _ in range(3)]
    sub = Subspace.spanned_by(vecs, QQ)
    probe = _rand_vec(rng, keys, QQ)
    shifted = dict(probe)
    for v in vecs:
        for k, c in v.items():
            acc = QQ.add(shifted.get(k, QQ.zero()), c)
            if QQ.is_zero(acc):
                shifted.pop(k, None)
            else:
                shifted[k] = acc
    assert sub.reduce(probe) == sub.reduce(shifted)


def test_kernel_basis_rank_nullity():
    rng = random.Random(29)
    for field in (QQ, PrimeField(13)):
        for trial in range(15):
            rows = rng.randint(1, 6)
            cols = rng.randint(1, 6)
            mat = {c: _rand_vec(rng, range(rows), field) for c in range(cols)}

            def image(c):
                return dict(mat[c])

            ker = kernel_basis(list(range(cols)), image, field)
            r = rank_of(list(mat.values()), field)
            assert len(ker) == cols - r
            for kv in ker:
                # apply the matrix to the kernel vector by hand
                out = {}
                for c, coeff in kv.items():
                    for rk, m in mat[c].items():
                        acc = field.add(out.get(rk, field.zero()),
                                        field.mul(coeff, m))
                        if field.is_zero(acc):
                            out.pop(rk, None)
                        else:
                            out[rk] = acc
                assert out == {}
            assert rank_of(ker, field) == len(ker)


def test_rank_of_golden():
    one = QQ.one()
    two = QQ.from_int(2)
    assert rank_of([], QQ) == 0
    assert rank_of([{}], QQ) == 0
    assert rank_of([{0: one}, {0: two}], QQ) == 1
    assert rank_of([{0: one}, {1: one}, {0: one, 1: one}], QQ) == 2
