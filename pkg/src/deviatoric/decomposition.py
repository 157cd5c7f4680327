"""Recursive orthogonal irreducible decomposition of 3-D tensors.

An arbitrary order-n tensor splits uniquely into embedded deviators: a sum of
terms, one per (s, J) slot, where s is the deviator order (0 <= s <= n) and
J = 1..count_parts(n, s) labels the multiplicity.  Each part carries both the
deviator itself and its embedded order-n image; embedded images of different
parts are mutually Frobenius-orthogonal and sum back to the input.

The decomposition is computed by recursion on the order.  Slicing along the
first index writes t = sum_k e_k x T_k with order-(n-1) slices T_k.  Each
slice is decomposed, and the three deviators that share a slot are regrouped:

* three scalars form a vector (a new order-1 deviator),
* three vectors form an order-2 tensor, split by ``decompose_order2``,
* three order-s deviators (s >= 2) form a tensor that is totally symmetric
  and traceless in its trailing s indices; ``split_deviator_triple`` resolves
  it into deviators of orders s-1, s, s+1.

The split inverts ``combine_deviator_triple``, which maps a triple
(d_lo, d_mid, d_hi) of orders (n-1, n, n+1) to the order-(n+1) tensor

    (2n-1)/(n-1) * sym(delta x d_lo) - sym(delta-shift x d_lo)
    + sym(epsilon . d_mid) + d_hi

with symmetrization over the n trailing indices; the first index stays free.
The two delta terms keep a fixed coefficient ratio so their sum is traceless
in the trailing indices, which is why they act as a single map of d_lo.

Embedded images are linear in the leaf deviators, so they are obtained by
replaying the forward maps up the recursion with a single basis deviator set
and every other slot zeroed.  The replayed images only depend on (order,
slot), so they are computed once per order and cached; per-input embedded
parts are coordinate combinations of the cached images.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import as_tensor, epsilon, symmetrize
from .harmonic import build_basis, from_coords

__all__ = [
    "trinomial",
    "count_parts",
    "counts_row",
    "part_orders",
    "IrreduciblePart",
    "Decomposition",
    "VerifyReport",
    "decompose",
    "decompose_order2",
    "reconstruct",
    "verify",
    "combine_deviator_triple",
    "split_deviator_triple",
]

_EPS = epsilon()
_EYE = np.eye(3)

SPLIT_INPUT_TOL = 1e-9
DEVIATOR_INPUT_TOL = 1e-10


# ---------------------------------------------------------------------------
# part counting

@lru_cache(maxsize=None)
def _trinomial_row(n: int) -> tuple[int, ...]:
    # coefficients of (1 + x + 1/x)**n, offsets -n..n
    row = (1,)
    for _ in range(n):
        new = [0] * (len(row) + 2)
        for i, v in enumerate(row):
            new[i] += v
            new[i + 1] += v
            new[i + 2] += v
        row = tuple(new)
    return row


def trinomial(n: int, s: int) -> int:
    """Coefficient of x**s in the expansion of (1 + x + 1/x)**n."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if abs(s) > n:
        return 0
    return _trinomial_row(n)[n + s]


def count_parts(n: int, s: int) -> int:
    """Number of order-s deviator slots in the decomposition of an order-n tensor."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if s < 0 or s > n:
        raise ValueError(f"s must lie in 0..{n}, got {s}")
    return trinomial(n, s) - trinomial(n, s + 1)


def counts_row(n: int) -> tuple[int, ...]:
    """The multiplicities (count_parts(n, 0), ..., count_parts(n, n))."""
    return tuple(count_parts(n, s) for s in range(n + 1))


@lru_cache(maxsize=None)
def part_orders(n: int) -> tuple[int, ...]:
    """Deviator orders of the parts of an order-n decomposition, in traversal order."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n == 0:
        return (0,)
    if n == 1:
        return (1,)
    if n == 2:
        return (0, 1, 2)
    out: list[int] = []
    for s in part_orders(n - 1):
        if s == 0:
            out.append(1)
        elif s == 1:
            out.extend((0, 1, 2))
        else:
            out.extend((s - 1, s, s + 1))
    return tuple(out)


# ---------------------------------------------------------------------------
# data model

@dataclass(frozen=True)
class IrreduciblePart:
    """One slot of a decomposition: deviator order s, multiplicity label J
    (1-based within s), the deviator itself, and its embedded order-n image."""

    s: int
    J: int
    deviator: np.ndarray
    embedded: np.ndarray


@dataclass(frozen=True)
class Decomposition:
    order: int
    parts: tuple[IrreduciblePart, ...]

    def counts(self) -> dict[int, int]:
        actual: dict[int, int] = {}
        for p in self.parts:
            actual[p.s] = actual.get(p.s, 0) + 1
        return actual


@dataclass(frozen=True)
class VerifyReport:
    """Residuals of a decomposition against its source tensor.

    All residuals are relative (unit floor for near-zero denominators).
    """

    order: int
    reconstruction_residual: float
    reconstruction_relative: float
    part_symmetry: tuple[float, ...]
    part_trace: tuple[float, ...]
    max_part_residual: float
    max_cross_correlation: float
    counts_expected: dict[int, int]
    counts_actual: dict[int, int]
    counts_ok: bool

    def passes(self, tol: float = 1e-10) -> bool:
        return bool(
            self.reconstruction_relative <= tol
            and self.max_part_residual <= tol
            and self.max_cross_correlation <= tol
            and self.counts_ok
        )


# ---------------------------------------------------------------------------
# forward maps (order n deviator slots -> order n+1 tensor), n >= 2

def _lift(lo: np.ndarray, n: int) -> np.ndarray:
    """Both delta terms of the combine map applied to an order-(n-1) deviator."""
    trailing = tuple(range(1, n + 1))
    a = np.tensordot(_EYE, lo, axes=0)                     # delta_{k i1} lo_{i2..in}
    b = np.moveaxis(np.tensordot(_EYE, lo, axes=0), -1, 0)  # delta_{i1 i2} lo_{i3..in k}
    coeff = (2.0 * n - 1.0) / (n - 1.0)
    return coeff * symmetrize(a, trailing) - symmetrize(b, trailing)


def _spin(mid: np.ndarray, n: int) -> np.ndarray:
    """Epsilon term of the combine map applied to an order-n deviator."""
    trailing = tuple(range(1, n + 1))
    e = np.tensordot(_EPS, mid, axes=([1], [n - 1]))        # eps_{k s i1} mid_{i2..in s}
    return symmetrize(e, trailing)


def _check_deviator(t: np.ndarray, name: str) -> None:
    basis = build_basis(t.ndim)
    flat = t.ravel()
    c = basis.flat @ flat
    residual = np.linalg.norm(flat - c @ basis.flat)
    if residual > DEVIATOR_INPUT_TOL * max(np.linalg.norm(flat), 1.0):
        raise ValueError(f"{name} is not a deviator (residual {residual:.3e})")


def combine_deviator_triple(lo, mid, hi, *, validate: bool = True) -> np.ndarray:
    """Map deviators of orders (n-1, n, n+1) into one order-(n+1) tensor.

    The result is totally symmetric and traceless in its trailing n indices;
    the first index is free.  Requires n >= 2.
    """
    lo, mid, hi = as_tensor(lo), as_tensor(mid), as_tensor(hi)
    n = mid.ndim
    if n < 2:
        raise ValueError(f"combine needs a middle deviator of order >= 2, got {n}")
    if lo.ndim != n - 1 or hi.ndim != n + 1:
        raise ValueError(
            f"order mismatch: expected ({n - 1}, {n}, {n + 1}), "
            f"got ({lo.ndim}, {mid.ndim}, {hi.ndim})"
        )
    if validate:
        _check_deviator(lo, "lo")
        _check_deviator(mid, "mid")
        _check_deviator(hi, "hi")
    return _lift(lo, n) + _spin(mid, n) + hi


@lru_cache(maxsize=None)
def _split_solver(n: int) -> np.ndarray:
    """Pseudo-inverse of the combine map in deviator coordinates."""
    bases = [build_basis(n - 1), build_basis(n), build_basis(n + 1)]
    mid_flat = bases[1].flat
    total = sum(len(b) for b in bases)
    m = np.empty((3 * len(bases[1]), total))
    zeros = [np.zeros((3,) * (n - 1)), np.zeros((3,) * n), np.zeros((3,) * (n + 1))]
    col = 0
    for which, basis in enumerate(bases):
        for elem in basis:
            triple = list(zeros)
            triple[which] = elem
            g = combine_deviator_triple(*triple, validate=False)
            m[:, col] = (g.reshape(3, -1) @ mid_flat.T).ravel()
            col += 1
    pinv = np.linalg.pinv(m)
    pinv.flags.writeable = False
    return pinv


def split_deviator_triple(g, *, validate: bool = True) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Resolve an order-(n+1) tensor that is symmetric and traceless in its
    trailing n indices into deviators of orders (n-1, n, n+1).

    Inverts ``combine_deviator_triple``.  With ``validate`` the input is
    checked to lie in the admissible space within ``SPLIT_INPUT_TOL``
    (relative, unit floor).
    """
    g = as_tensor(g)
    n = g.ndim - 1
    if n < 2:
        raise ValueError(f"split needs an input of order >= 3, got {g.ndim}")
    mid_flat = build_basis(n).flat
    slice_coords = g.reshape(3, -1) @ mid_flat.T          # (3, 2n+1)
    if validate:
        residual = np.linalg.norm(g.reshape(3, -1) - slice_coords @ mid_flat)
        if residual > SPLIT_INPUT_TOL * max(np.linalg.norm(g.ravel()), 1.0):
            raise ValueError(
                "input is not symmetric and traceless in its trailing "
                f"indices (residual {residual:.3e})"
            )
    x = _split_solver(n) @ slice_coords.ravel()
    d_lo = from_coords(x[: 2 * n - 1], n - 1)
    d_mid = from_coords(x[2 * n - 1 : 4 * n], n)
    d_hi = from_coords(x[4 * n :], n + 1)
    return d_lo, d_mid, d_hi


# ---------------------------------------------------------------------------
# the recursion

def _order2_values(t: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    alpha = np.trace(t) / 3.0
    v = 0.5 * np.einsum("ijs,ij->s", _EPS, t)
    dev = symmetrize(t) - alpha * _EYE
    return np.asarray(alpha), v, dev


def _split_values(t: np.ndarray) -> list[np.ndarray]:
    """Leaf deviators of t in traversal order (no embedded images)."""
    n = t.ndim
    if n <= 1:
        return [t]
    if n == 2:
        return list(_order2_values(t))
    subs = [_split_values(t[k]) for k in range(3)]
    out: list[np.ndarray] = []
    for p, s in enumerate(part_orders(n - 1)):
        triple = (subs[0][p], subs[1][p], subs[2][p])
        if s == 0:
            out.append(np.array([float(x) for x in triple]))
        elif s == 1:
            out.extend(_order2_values(np.stack(triple)))
        else:
            out.extend(split_deviator_triple(np.stack(triple), validate=False))
    return out


@lru_cache(maxsize=None)
def _embedding_images(n: int) -> tuple[np.ndarray, ...]:
    """Embedded order-n images of the deviator basis, one stack per slot.

    Entry p has shape (2*s_p + 1,) + (3,)*n: the images of the orthonormal
    basis of the slot's deviator space under the slot's embedding map.
    """
    if n == 0:
        return (np.ones((1,)),)
    if n == 1:
        return (np.array(build_basis(1).tensors),)
    if n == 2:
        vec_images = np.einsum("ijs,bs->bij", _EPS, build_basis(1).tensors)
        return (
            _EYE[np.newaxis],
            vec_images,
            np.array(build_basis(2).tensors),
        )
    prev = _embedding_images(n - 1)
    out: list[np.ndarray] = []
    for p, s in enumerate(part_orders(n - 1)):
        parent_flat = prev[p].reshape(2 * s + 1, -1)
        parent_basis = build_basis(s).flat

        def expand(g: np.ndarray) -> np.ndarray:
            # push a slot tensor (order s+1) through the parent embedding
            c = g.reshape(3, -1) @ parent_basis.T
            return (c @ parent_flat).reshape((3,) * n)

        if s == 0:
            children = [(1, lambda b: b)]
        elif s == 1:
            children = [
                (0, lambda b: float(b) * _EYE),
                (1, lambda b: np.einsum("ijs,s->ij", _EPS, b)),
                (2, lambda b: b),
            ]
        else:
            children = [
                (s - 1, lambda b, s=s: _lift(b, s)),
                (s, lambda b, s=s: _spin(b, s)),
                (s + 1, lambda b: b),
            ]
        for child_s, forward in children:
            stack = np.stack([expand(forward(b)) for b in build_basis(child_s)])
            stack.flags.writeable = False
            out.append(stack)
    return tuple(out)


def decompose(t) -> Decomposition:
    """Orthogonal irreducible decomposition of an arbitrary 3-D tensor.

    Returns one part per (s, J) slot in deterministic traversal order; the
    embedded images sum to ``t`` and are mutually orthogonal.
    """
    t = as_tensor(t)
    n = t.ndim
    values = _split_values(t)
    images = _embedding_images(n)
    labels = part_orders(n)
    parts: list[IrreduciblePart] = []
    seen: dict[int, int] = {}
    for s, dev, image_stack in zip(labels, values, images):
        c = build_basis(s).flat @ dev.ravel()
        embedded = (c @ image_stack.reshape(len(c), -1)).reshape((3,) * n)
        seen[s] = seen.get(s, 0) + 1
        parts.append(IrreduciblePart(s=s, J=seen[s], deviator=dev, embedded=embedded))
    return Decomposition(order=n, parts=tuple(parts))


def decompose_order2(t) -> Decomposition:
    """Decompose an order-2 tensor into trace, spin vector, and deviator.

    The closed form is t = alpha*delta + epsilon.v + D with
    alpha = tr(t)/3, v_s = eps_ijs t_ij / 2, D = sym(t) - alpha*delta.
    """
    return decompose(as_tensor(t, order=2))


def reconstruct(d: Decomposition) -> np.ndarray:
    """Sum of the embedded parts; inverse of ``decompose``."""
    total = np.zeros((3,) * d.order)
    for p in d.parts:
        e = as_tensor(p.embedded)
        if e.ndim != d.order:
            raise ValueError(
                f"part (s={p.s}, J={p.J}) embedded order {e.ndim} != {d.order}"
            )
        total = total + e
    return total


def verify(d: Decomposition, t) -> VerifyReport:
    """Residual report of a decomposition against the tensor it came from."""
    t = as_tensor(t, order=d.order)
    t_norm = np.linalg.norm(t.ravel())
    res = float(np.linalg.norm((reconstruct(d) - t).ravel()))
    rel = res / t_norm if t_norm > 0.0 else res

    sym_res: list[float] = []
    trace_res: list[float] = []
    for p in d.parts:
        dev = as_tensor(p.deviator, order=p.s)
        dn = max(np.linalg.norm(dev.ravel()), 1.0)
        if p.s >= 2:
            sym_res.append(float(np.linalg.norm((dev - symmetrize(dev)).ravel()) / dn))
            trace_res.append(float(np.linalg.norm(np.trace(dev, axis1=0, axis2=1).ravel()) / dn))
        else:
            sym_res.append(0.0)
            trace_res.append(0.0)

    max_cross = 0.0
    flats = [p.embedded.reshape(-1) for p in d.parts]
    norms = [np.linalg.norm(f) for f in flats]
    for i in range(len(flats)):
        if norms[i] == 0.0:
            continue
        for j in range(i + 1, len(flats)):
            if norms[j] == 0.0:
                continue
            max_cross = max(max_cross, abs(float(flats[i] @ flats[j])) / (norms[i] * norms[j]))

    expected = {s: count_parts(d.order, s) for s in range(d.order + 1)}
    actual = d.counts()
    counts_ok = all(actual.get(s, 0) == j for s, j in expected.items()) and all(
        s in expected for s in actual
    )
    part_residuals = [0.0] + sym_res + trace_res
    return VerifyReport(
        order=d.order,
        reconstruction_residual=res,
        reconstruction_relative=rel,
        part_symmetry=tuple(sym_res),
        part_trace=tuple(trace_res),
        max_part_residual=max(part_residuals),
        max_cross_correlation=max_cross,
        counts_expected=expected,
        counts_actual=actual,
        counts_ok=counts_ok,
    )
