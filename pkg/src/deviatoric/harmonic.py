"""Deviator spaces: totally symmetric traceless tensors of a given order.

The space of order-s deviators has dimension 2s + 1.  ``build_basis``
constructs a Frobenius-orthonormal basis once per order and caches it:

1. enumerate the symmetrized monomials ``sym(e_i1 x ... x e_is)`` for
   ``i1 <= ... <= is`` in lexicographic order,
2. take the nullspace of the (1,2)-trace map restricted to their span,
   found by a rank-revealing SVD,
3. orthonormalize with modified Gram-Schmidt.

The construction involves no randomness, so repeated calls return the same
cached, read-only arrays.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import as_tensor, trace_pair

__all__ = [
    "DeviatorBasis",
    "build_basis",
    "project_deviator",
    "coords",
    "from_coords",
    "is_deviator",
]

MEMBERSHIP_TOL = 1e-10
_RANK_TOL = 1e-9


@dataclass(frozen=True)
class DeviatorBasis:
    """Orthonormal basis of the order-``order`` deviator space.

    ``tensors`` is a read-only stack of shape ``(2*order + 1,) + (3,)*order``.
    """

    order: int
    tensors: np.ndarray

    def __len__(self) -> int:
        return self.tensors.shape[0]

    def __iter__(self):
        return iter(self.tensors)

    def __getitem__(self, j) -> np.ndarray:
        return self.tensors[j]

    @property
    def flat(self) -> np.ndarray:
        """Basis elements as rows of a ``(2s+1, 3**s)`` matrix."""
        return self.tensors.reshape(len(self), -1)


def _symmetric_monomial(index: tuple[int, ...]) -> np.ndarray:
    """Symmetrized outer product of basis vectors picked by ``index``."""
    s = len(index)
    t = np.zeros((3,) * s)
    counts = [index.count(i) for i in range(3)]
    value = math.prod(math.factorial(c) for c in counts) / math.factorial(s)
    for perm in set(itertools.permutations(index)):
        t[perm] = value
    return t


def _monomials(s: int) -> list[np.ndarray]:
    return [
        _symmetric_monomial(idx)
        for idx in itertools.combinations_with_replacement(range(3), s)
    ]


def _gram_schmidt(rows: np.ndarray) -> np.ndarray:
    out: list[np.ndarray] = []
    for row in rows:
        w = row.copy()
        for u in out:
            w -= (u @ w) * u
        nrm = np.linalg.norm(w)
        if nrm < 1e-12:
            raise RuntimeError("degenerate candidate basis (should not happen)")
        out.append(w / nrm)
    return np.asarray(out)


@lru_cache(maxsize=None)
def build_basis(order: int) -> DeviatorBasis:
    """Return the cached orthonormal deviator basis for the given order."""
    if order < 0:
        raise ValueError(f"order must be nonnegative, got {order}")
    if order == 0:
        stack = np.ones((1,))
    elif order == 1:
        stack = np.eye(3)
    else:
        monomials = _monomials(order)
        flat = np.stack([m.ravel() for m in monomials])
        traces = np.stack([trace_pair(m, 0, 1).ravel() for m in monomials])
        u, sigma, _ = np.linalg.svd(traces)
        rank = int(np.sum(sigma > _RANK_TOL * sigma[0]))
        null = u[:, rank:].T  # coefficient rows spanning the traceless subspace
        stack = _gram_schmidt(null @ flat)
    expected = 2 * order + 1
    if stack.shape[0] != expected:
        raise RuntimeError(
            f"deviator space of order {order}: got {stack.shape[0]} basis "
            f"elements, expected {expected}"
        )
    tensors = stack.reshape((expected,) + (3,) * order)
    tensors.flags.writeable = False
    return DeviatorBasis(order=order, tensors=tensors)


def project_deviator(t) -> np.ndarray:
    """Orthogonal (Frobenius) projection onto the deviator space of ``t.ndim``."""
    t = as_tensor(t)
    basis = build_basis(t.ndim)
    c = basis.flat @ t.ravel()
    return (c @ basis.flat).reshape(t.shape)


def coords(t, basis: DeviatorBasis | None = None) -> np.ndarray:
    """Coordinates of a deviator in the orthonormal basis of its order.

    Raises ``ValueError`` if ``t`` lies outside the deviator space by more
    than ``MEMBERSHIP_TOL`` relative to its norm.
    """
    t = as_tensor(t)
    if basis is None:
        basis = build_basis(t.ndim)
    elif basis.order != t.ndim:
        raise ValueError(f"basis order {basis.order} does not match tensor order {t.ndim}")
    flat = t.ravel()
    c = basis.flat @ flat
    residual = np.linalg.norm(flat - c @ basis.flat)
    norm = np.linalg.norm(flat)
    if residual > MEMBERSHIP_TOL * max(norm, 1.0):
        raise ValueError(
            f"tensor is not an order-{t.ndim} deviator "
            f"(projection residual {residual:.3e}, norm {norm:.3e})"
        )
    return c


def from_coords(c, basis: DeviatorBasis | int) -> np.ndarray:
    """Deviator with the given coordinates in the basis (or basis order)."""
    if isinstance(basis, int):
        basis = build_basis(basis)
    c = np.asarray(c, dtype=float)
    if c.shape != (len(basis),):
        raise ValueError(f"expected {len(basis)} coordinates, got shape {c.shape}")
    return (c @ basis.flat).reshape((3,) * basis.order)


def is_deviator(t, tol: float = MEMBERSHIP_TOL) -> bool:
    """Whether ``t`` is totally symmetric and traceless within ``tol``."""
    t = as_tensor(t)
    residual = np.linalg.norm((t - project_deviator(t)).ravel())
    return bool(residual <= tol * max(np.linalg.norm(t.ravel()), 1.0))
