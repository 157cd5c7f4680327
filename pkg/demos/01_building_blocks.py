"""
Tensor building blocks
======================

Dense order-n tensors over 3-D space, the isotropic tensors delta and
epsilon, contractions, symmetrization, and rotations.
"""

import numpy as np

from deviatoric import (
    contract_complete,
    contract_double,
    contract_single,
    delta,
    epsilon,
    frobenius,
    outer,
    rotate,
    rotation_about,
    symmetrize,
    trace_pair,
)

# Any nested structure with all axes of length 3 is a tensor; order = ndim.
v = np.array([1.0, 2.0, 3.0])
t2 = outer(v, v)
print("v x v =\n", t2)

# trace over an index pair
print("tr(v x v) =", trace_pair(t2, 0, 1), " (= |v|^2 = 14)")

# complete contraction: the second tensor is summed against the leading
# indices of the first.  delta[delta] is the trace of the identity.
print("delta[delta] =", contract_complete(delta(), delta()))

# epsilon turns an oriented pair into the perpendicular direction
e1, e2 = np.eye(3)[0], np.eye(3)[1]
print("epsilon[e1 x e2] =", contract_complete(epsilon(), outer(e1, e2)))

# single and double contractions pair the last indices of the first factor
# with the first indices of the second
print("(v x v).v =", contract_single(t2, v))
print("(v x v x v x v):(v x v) =", contract_double(outer(t2, t2), t2)[0, 0], "... (196 * v x v)")

# symmetrization averages over index permutations; here only over the
# trailing pair, which is how partially symmetric objects are built
t3 = np.zeros((3, 3, 3))
t3[0, 1, 2] = 6.0
print("sym_(2,3) of a single entry:", symmetrize(t3, (1, 2))[0, 1, 2], symmetrize(t3, (1, 2))[0, 2, 1])
print("full sym of the same entry:", symmetrize(t3)[2, 1, 0])

# Frobenius pairing is the orthogonality metric used throughout
print("<epsilon, epsilon> =", frobenius(epsilon(), epsilon()))

# proper rotations act index by index; isotropic tensors do not move
r = rotation_about([0.0, 0.0, 1.0], np.pi / 2.0)
print("quarter turn about z of e1:", np.round(rotate(e1, r), 12))
print("delta is fixed:", np.allclose(rotate(delta(), r), delta()))
print("epsilon is fixed:", np.allclose(rotate(epsilon(), r), epsilon()))
