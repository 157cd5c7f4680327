"""
Deviator spaces
===============

Order-s deviators (totally symmetric, traceless tensors) form a
(2s+1)-dimensional space.  This script builds orthonormal bases, projects
onto them, and shows the spaces are rotation-invariant.
"""

import numpy as np

from deviatoric import (
    build_basis,
    coords,
    delta,
    from_coords,
    is_deviator,
    outer,
    project_deviator,
    random_rotation,
    rotate,
    symmetrize,
)

# dimension 2s+1: the five-dimensional s=2 space is the classical
# traceless symmetric matrix space
for s in range(7):
    print(f"dim D^({s}) = {len(build_basis(s))}")

# basis elements are orthonormal deviators
basis = build_basis(3)
gram = basis.flat @ basis.flat.T
print("s=3 Gram matrix == identity:", np.allclose(gram, np.eye(7)))
print("first element is a deviator:", is_deviator(np.array(basis[0])))

# coordinates: a deviator is exactly its (2s+1)-vector of coefficients
rng = np.random.default_rng(0)
c = rng.standard_normal(7)
d = from_coords(c, 3)
print("coords round-trip:", np.allclose(coords(d), c))

# projection kills everything orthogonal to the deviator space: a symmetric
# tensor assembled from delta carries only trace information
w = rng.standard_normal(3)
carrier = symmetrize(outer(delta(), w))
print("projection of sym(delta x w):", np.linalg.norm(project_deviator(carrier).ravel()))

# a generic symmetric tensor splits into deviator + trace carrier
t = symmetrize(rng.standard_normal((3, 3, 3)))
p = project_deviator(t)
print("projected part is a deviator:", is_deviator(p))
print("complement is orthogonal:", abs(np.sum(p * (t - p))) < 1e-12)

# rotations map deviators to deviators: the space is an invariant subspace
r = random_rotation(rng)
print("rotated deviator stays a deviator:", is_deviator(rotate(d, r)))
