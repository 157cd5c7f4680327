"""Recursive decomposition engine: counts, round-trips, invariances."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from deviatoric import (
    Decomposition,
    IrreduciblePart,
    combine_deviator_triple,
    count_parts,
    counts_row,
    decompose,
    decompose_order2,
    from_coords,
    is_deviator,
    part_orders,
    random_rotation,
    reconstruct,
    rotate,
    split_deviator_triple,
    trinomial,
    verify,
)

# number of independent deviators of each order s for tensor order n <= 6
COUNTS_TABLE = {
    0: (1,),
    1: (0, 1),
    2: (1, 1, 1),
    3: (1, 3, 2, 1),
    4: (3, 6, 6, 3, 1),
    5: (6, 15, 15, 10, 4, 1),
    6: (15, 36, 40, 29, 15, 5, 1),
}

_EPSILON = np.zeros((3, 3, 3))
for i, j, k in [(0, 1, 2), (1, 2, 0), (2, 0, 1)]:
    _EPSILON[i, j, k] = 1.0
    _EPSILON[k, j, i] = -1.0


def random_deviator(rng, s):
    return from_coords(rng.standard_normal(2 * s + 1), s)


def test_trinomial_against_polynomial_oracle():
    # coefficients of (1 + x + x^2)^n read off with numpy polynomials; the
    # symmetric laurent row is the same list re-centered
    for n in range(9):
        poly = np.array([1])
        for _ in range(n):
            poly = np.polymul(poly, np.array([1, 1, 1]))
        for s in range(-n, n + 1):
            assert trinomial(n, s) == int(poly[n + s])
        assert trinomial(n, n + 1) == 0
        assert trinomial(n, -(n + 1)) == 0


def test_trinomial_rejects_negative_order():
    with pytest.raises(ValueError):
        trinomial(-1, 0)


def test_counts_table():
    for n, row in COUNTS_TABLE.items():
        assert counts_row(n) == row
        for s, value in enumerate(row):
            assert count_parts(n, s) == value


def test_count_parts_range_checks():
    with pytest.raises(ValueError):
        count_parts(3, 4)
    with pytest.raises(ValueError):
        count_parts(3, -1)


def test_degrees_of_freedom_identity():
    for n in range(9):
        assert sum((1 + 2 * s) * j for s, j in enumerate(counts_row(n))) == 3**n


def test_part_orders_traversal():
    assert part_orders(0) == (0,)
    assert part_orders(1) == (1,)
    assert part_orders(2) == (0, 1, 2)
    assert part_orders(3) == (1, 0, 1, 2, 1, 2, 3)
    for n in range(8):
        labels = part_orders(n)
        assert len(labels) == sum(counts_row(n))
        for s in range(n + 1):
            assert labels.count(s) == count_parts(n, s)


@pytest.mark.parametrize("order", range(7))
def test_reconstruction_round_trip(order):
    rng = np.random.default_rng(100 + order)
    for _ in range(10):
        t = rng.standard_normal((3,) * order)
        d = decompose(t)
        rel = np.linalg.norm((reconstruct(d) - t).ravel()) / np.linalg.norm(t.ravel())
        assert rel <= 1e-12


@pytest.mark.parametrize("order", range(7))
def test_parts_are_deviators_with_correct_counts(order):
    rng = np.random.default_rng(200 + order)
    t = rng.standard_normal((3,) * order)
    d = decompose(t)
    assert d.counts() == {s: c for s, c in enumerate(counts_row(order)) if c}
    for p in d.parts:
        assert p.deviator.ndim == p.s
        assert p.embedded.shape == (3,) * order
        assert is_deviator(p.deviator)


@pytest.mark.parametrize("order", range(2, 6))
def test_embedded_parts_are_orthogonal(order):
    rng = np.random.default_rng(300 + order)
    t = rng.standard_normal((3,) * order)
    parts = decompose(t).parts
    flats = [p.embedded.ravel() for p in parts]
    for i in range(len(flats)):
        for j in range(i + 1, len(flats)):
            bound = 1e-12 * np.linalg.norm(flats[i]) * np.linalg.norm(flats[j])
            assert abs(flats[i] @ flats[j]) <= bound


def test_decompose_is_linear():
    rng = np.random.default_rng(16)
    a = rng.standard_normal((3, 3, 3))
    b = rng.standard_normal((3, 3, 3))
    da, db = decompose(a), decompose(b)
    dc = decompose(2.0 * a - 3.0 * b)
    for pa, pb, pc in zip(da.parts, db.parts, dc.parts):
        assert_allclose(pc.embedded, 2.0 * pa.embedded - 3.0 * pb.embedded, atol=1e-12)
        assert_allclose(pc.deviator, 2.0 * pa.deviator - 3.0 * pb.deviator, atol=1e-12)


@pytest.mark.parametrize("order", (2, 3, 4))
def test_rotation_equivariance(order):
    rng = np.random.default_rng(400 + order)
    t = rng.standard_normal((3,) * order)
    d = decompose(t)
    for _ in range(10):
        r = random_rotation(rng)
        d_rot = decompose(rotate(t, r))
        for p, q in zip(d.parts, d_rot.parts):
            assert (p.s, p.J) == (q.s, q.J)
            rel = np.linalg.norm((q.embedded - rotate(p.embedded, r)).ravel())
            rel /= max(np.linalg.norm(p.embedded.ravel()), 1e-30)
            assert rel <= 1e-11
            assert_allclose(q.deviator, rotate(p.deviator, r), atol=1e-11)


def test_decompose_order2_closed_form():
    t = np.zeros((3, 3))
    t[0, 1] = 1.0
    d = decompose_order2(t)
    alpha, spin, dev = d.parts
    assert alpha.s == 0 and spin.s == 1 and dev.s == 2
    assert float(alpha.deviator) == pytest.approx(0.0)
    assert_allclose(spin.deviator, [0.0, 0.0, 0.5], atol=1e-15)
    assert_allclose(dev.deviator, [[0.0, 0.5, 0.0], [0.5, 0.0, 0.0], [0.0, 0.0, 0.0]], atol=1e-15)
    # the spin embedding restores the antisymmetric half
    assert_allclose(spin.embedded, [[0.0, 0.5, 0.0], [-0.5, 0.0, 0.0], [0.0, 0.0, 0.0]], atol=1e-15)


def test_decompose_order2_general():
    rng = np.random.default_rng(17)
    t = rng.standard_normal((3, 3))
    alpha, spin, dev = decompose_order2(t).parts
    assert float(alpha.deviator) == pytest.approx(np.trace(t) / 3.0)
    assert_allclose(spin.deviator, 0.5 * np.einsum("ijs,ij->s", _EPSILON, t), atol=1e-14)
    assert_allclose(dev.deviator, 0.5 * (t + t.T) - (np.trace(t) / 3.0) * np.eye(3), atol=1e-14)


def test_pure_deviator_decomposes_to_itself():
    rng = np.random.default_rng(18)
    for s in range(2, 6):
        d = random_deviator(rng, s)
        parts = decompose(d).parts
        top = parts[-1]
        assert top.s == s
        assert_allclose(top.deviator, d, atol=1e-12)
        assert_allclose(top.embedded, d, atol=1e-12)
        for p in parts[:-1]:
            assert np.linalg.norm(p.embedded.ravel()) <= 1e-12 * np.linalg.norm(d.ravel())


@pytest.mark.parametrize("n", (2, 3, 4, 5))
def test_combine_split_round_trip(n):
    rng = np.random.default_rng(500 + n)
    for _ in range(5):
        lo = random_deviator(rng, n - 1)
        mid = random_deviator(rng, n)
        hi = random_deviator(rng, n + 1)
        g = combine_deviator_triple(lo, mid, hi)
        lo2, mid2, hi2 = split_deviator_triple(g)
        scale = max(np.linalg.norm(g.ravel()), 1.0)
        assert np.linalg.norm((lo2 - lo).ravel()) <= 1e-11 * scale
        assert np.linalg.norm((mid2 - mid).ravel()) <= 1e-11 * scale
        assert np.linalg.norm((hi2 - hi).ravel()) <= 1e-11 * scale


@pytest.mark.parametrize("n", (2, 3, 4, 5))
def test_combine_image_dimension(n):
    # the triple map is injective: its image has dimension 3(2n+1)
    rng = np.random.default_rng(600 + n)
    dims = (2 * (n - 1) + 1, 2 * n + 1, 2 * (n + 1) + 1)
    assert sum(dims) == 3 * (2 * n + 1)
    columns = []
    for slot, s in enumerate((n - 1, n, n + 1)):
        for k in range(2 * s + 1):
            c = np.zeros(2 * s + 1)
            c[k] = 1.0
            triple = [np.zeros((3,) * (n - 1)), np.zeros((3,) * n), np.zeros((3,) * (n + 1))]
            triple[slot] = from_coords(c, s)
            columns.append(combine_deviator_triple(*triple).ravel())
    rank = np.linalg.matrix_rank(np.stack(columns), tol=1e-10)
    assert rank == 3 * (2 * n + 1)


def test_combine_validates_inputs():
    rng = np.random.default_rng(19)
    with pytest.raises(ValueError):
        combine_deviator_triple(np.zeros(3), np.zeros((3, 3)), np.eye(3))  # hi not order 3
    with pytest.raises(ValueError):
        combine_deviator_triple(np.zeros(3), np.eye(3), np.zeros((3, 3, 3)))  # mid traceful
    # n = 1 would need an order-0 "lo"; the map starts at n = 2
    with pytest.raises(ValueError):
        combine_deviator_triple(np.asarray(1.0), rng.standard_normal(3), np.eye(3))


def test_split_rejects_tensors_outside_the_image():
    rng = np.random.default_rng(20)
    with pytest.raises(ValueError):
        split_deviator_triple(rng.standard_normal((3, 3, 3)))


def test_verify_report_passes_and_fails():
    rng = np.random.default_rng(21)
    t = rng.standard_normal((3, 3, 3))
    d = decompose(t)
    report = verify(d, t)
    assert report.counts_ok
    assert report.passes(1e-10)
    # corrupt one embedded part
    bad_parts = list(d.parts)
    p = bad_parts[2]
    bumped = p.embedded.copy()
    bumped[0, 0, 0] += 1e-3
    bad_parts[2] = IrreduciblePart(s=p.s, J=p.J, deviator=p.deviator, embedded=bumped)
    bad = Decomposition(order=3, parts=tuple(bad_parts))
    assert not verify(bad, t).passes(1e-10)


def test_reconstruct_validates_order():
    d = decompose(np.zeros((3, 3)))
    bad = Decomposition(order=3, parts=d.parts)
    with pytest.raises(ValueError):
        reconstruct(bad)
