"""Dense tensor algebra over a fixed three-dimensional Euclidean space.

Tensors are plain ``numpy.ndarray`` objects of shape ``(3,) * order``; an
order-0 tensor is a 0-d array.  Components are stored in row-major order, so
``t.ravel()`` is the canonical flat layout used by the JSON serializers.

Contraction conventions used throughout the package:

* ``contract_complete(a, b)`` sums ``b`` against the *first* ``b.ndim``
  indices of ``a``.
* ``contract_single`` / ``contract_double`` bind the last index (pair of
  indices) of the first argument to the first index (pair) of the second.
* ``symmetrize`` averages over permutations of the chosen positions.

All functions are pure and never modify their inputs.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

__all__ = [
    "as_tensor",
    "outer",
    "contract_complete",
    "contract_single",
    "contract_double",
    "symmetrize",
    "trace_pair",
    "delta",
    "epsilon",
    "frobenius",
    "frobenius_norm",
    "add",
    "subtract",
    "scale",
]


def as_tensor(values, order: int | None = None) -> np.ndarray:
    """Coerce ``values`` to a float tensor of shape ``(3,) * order``.

    Parameters
    ----------
    values : array_like
        Scalar, nested sequence, or ndarray whose axes all have length 3.
    order : int, optional
        When given, the coerced tensor must have exactly this order.

    Returns
    -------
    numpy.ndarray
        Float64 array of shape ``(3,) * t.ndim``.
    """
    t = np.asarray(values, dtype=float)
    if any(d != 3 for d in t.shape):
        raise ValueError(f"tensor axes must all have length 3, got shape {t.shape}")
    if order is not None and t.ndim != order:
        raise ValueError(f"expected an order-{order} tensor, got order {t.ndim}")
    return t


def outer(a, b) -> np.ndarray:
    """Tensor product; the result order is the sum of the input orders."""
    return np.tensordot(as_tensor(a), as_tensor(b), axes=0)


def contract_complete(a, b) -> np.ndarray:
    """Sum ``b`` against the first ``b.ndim`` indices of ``a``.

    For ``a`` of order n and ``b`` of order m <= n the result has order
    n - m.  An order-0 ``b`` acts as plain scalar multiplication.
    """
    a, b = as_tensor(a), as_tensor(b)
    m = b.ndim
    if m > a.ndim:
        raise ValueError(f"cannot contract order {b.ndim} against order {a.ndim}")
    if m == 0:
        return a * float(b)
    return np.tensordot(a, b, axes=(tuple(range(m)), tuple(range(m))))


def contract_single(a, b) -> np.ndarray:
    """Contract the last index of ``a`` with the first index of ``b``."""
    a, b = as_tensor(a), as_tensor(b)
    if a.ndim < 1 or b.ndim < 1:
        raise ValueError("single contraction needs at least one index on each side")
    return np.tensordot(a, b, axes=([a.ndim - 1], [0]))


def contract_double(a, b) -> np.ndarray:
    """Contract the last two indices of ``a`` with the first two of ``b``.

    The pairing is positional: the second-to-last index of ``a`` meets the
    first index of ``b`` and the last meets the second.
    """
    a, b = as_tensor(a), as_tensor(b)
    if a.ndim < 2 or b.ndim < 2:
        raise ValueError("double contraction needs at least two indices on each side")
    return np.tensordot(a, b, axes=([a.ndim - 2, a.ndim - 1], [0, 1]))


def symmetrize(t, positions=None) -> np.ndarray:
    """Average ``t`` over all permutations of the given index positions.

    Parameters
    ----------
    t : array_like
        Tensor of any order.
    positions : sequence of int, optional
        Zero-based axes to symmetrize over.  Defaults to all axes (total
        symmetrization).

    Notes
    -----
    Symmetrization is a projection: applying it twice gives the same result.
    """
    t = as_tensor(t)
    axes = tuple(range(t.ndim)) if positions is None else tuple(positions)
    if len(set(axes)) != len(axes):
        raise ValueError(f"positions must be distinct, got {axes}")
    if any(a < 0 or a >= t.ndim for a in axes):
        raise ValueError(f"positions {axes} out of range for order {t.ndim}")
    if len(axes) < 2:
        return t.copy()
    acc = np.zeros_like(t)
    for perm in itertools.permutations(axes):
        order = list(range(t.ndim))
        for slot, src in zip(axes, perm):
            order[slot] = src
        acc += t.transpose(order)
    return acc / math.factorial(len(axes))


def trace_pair(t, p: int, q: int) -> np.ndarray:
    """Contract index positions ``p`` and ``q`` of ``t`` with each other."""
    t = as_tensor(t)
    if p == q:
        raise ValueError("trace positions must differ")
    if not (0 <= p < t.ndim and 0 <= q < t.ndim):
        raise ValueError(f"trace positions ({p}, {q}) out of range for order {t.ndim}")
    return np.trace(t, axis1=p, axis2=q)


def delta() -> np.ndarray:
    """Kronecker delta (3x3 identity)."""
    return np.eye(3)


def epsilon() -> np.ndarray:
    """Levi-Civita permutation tensor with epsilon_123 = +1."""
    e = np.zeros((3, 3, 3))
    e[0, 1, 2] = e[1, 2, 0] = e[2, 0, 1] = 1.0
    e[0, 2, 1] = e[2, 1, 0] = e[1, 0, 2] = -1.0
    return e


def frobenius(a, b) -> float:
    """Full contraction of two equal-order tensors (Frobenius inner product)."""
    a, b = as_tensor(a), as_tensor(b)
    if a.ndim != b.ndim:
        raise ValueError(f"order mismatch: {a.ndim} vs {b.ndim}")
    return float(np.sum(a * b))


def frobenius_norm(t) -> float:
    """Frobenius norm, the square root of ``frobenius(t, t)``."""
    return float(np.linalg.norm(as_tensor(t).ravel()))


def add(a, b) -> np.ndarray:
    """Elementwise sum of two equal-order tensors."""
    a, b = as_tensor(a), as_tensor(b)
    if a.ndim != b.ndim:
        raise ValueError(f"order mismatch: {a.ndim} vs {b.ndim}")
    return a + b


def subtract(a, b) -> np.ndarray:
    """Elementwise difference of two equal-order tensors."""
    a, b = as_tensor(a), as_tensor(b)
    if a.ndim != b.ndim:
        raise ValueError(f"order mismatch: {a.ndim} vs {b.ndim}")
    return a - b


def scale(t, c: float) -> np.ndarray:
    """Multiply a tensor by a scalar."""
    return as_tensor(t) * float(c)
