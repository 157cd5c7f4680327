"""
Material tensors
================

Specialized decompositions for two tensors from continuum physics: the
order-3 coupling tensor (symmetric in its first two indices) and the
order-4 stiffness tensor (minor + major symmetries), plus Voigt matrices
and the calibrated explicit assembly formulas.
"""

import numpy as np

from deviatoric import (
    assemble_order4,
    coupling_coefficient_diff,
    coupling_decompose,
    coupling_reconstruct,
    decompose,
    isotropic_stiffness,
    stiffness_decompose,
    stiffness_reconstruct,
    tensor_to_voigt,
)

rng = np.random.default_rng(2)

# --- stiffness ------------------------------------------------------------
# isotropic stiffness: the two Lame coefficients are recovered exactly and
# all deviators vanish
c = isotropic_stiffness(lam := 2.0, mu := 1.0)
sd = stiffness_decompose(c)
print("lam, mu:", sd.lam, sd.mu)
print("|D1|, |D2|, |D4|:", *(np.linalg.norm(d.ravel()) for d in (sd.d1, sd.d2, sd.d4)))

# Voigt view: pure index relabeling (no factor-2 or sqrt-2 weights)
print("Voigt matrix of the isotropic stiffness:\n", tensor_to_voigt(c))

# an anisotropic stiffness splits into 2 scalars + 2 order-2 deviators +
# 1 order-4 deviator (1+1+5+5+9 = 21 components) and rebuilds exactly
c = rng.standard_normal((3, 3, 3, 3))
c = 0.5 * (c + c.swapaxes(0, 1))
c = 0.5 * (c + c.swapaxes(2, 3))
c = 0.5 * (c + c.transpose(2, 3, 0, 1))
sd = stiffness_decompose(c)
print("anisotropic round-trip:", np.linalg.norm((stiffness_reconstruct(sd) - c).ravel()))

# --- coupling -------------------------------------------------------------
# a coupling tensor needs only four deviators; the rest are tied to them
h = rng.standard_normal((3, 3, 3))
h = 0.5 * (h + h.swapaxes(0, 1))
cd = coupling_decompose(h)
print("alpha (always 0):", cd.alpha)
print("v1 == 5/2 v3 - v2:", np.allclose(cd.v1, 2.5 * cd.v3 - cd.v2))
print("D2 == -2/3 D1:", np.allclose(cd.d2, -2.0 / 3.0 * cd.d1))
print("fitted round-trip:", np.linalg.norm((coupling_reconstruct(cd) - h).ravel()))

# the published component tables contain one misplaced coefficient; the
# shipped diff pins it down (third component of v2: H133 should be H113)
diff = coupling_coefficient_diff()
for entry in diff["differences"]:
    print("table vs inversion:", entry)

cd_printed = coupling_decompose(h, coefficients="printed")
print(
    "printed-tables round-trip residual:",
    np.linalg.norm((coupling_reconstruct(cd_printed) - h).ravel()),
)

# --- explicit closed form ---------------------------------------------------
# for order 3 and 4 there are explicit hemitropic assembly formulas; their
# calibrated coefficients rebuild the tensor from the engine's parts
t = rng.standard_normal((3, 3, 3, 3))
rebuilt = assemble_order4(decompose(t))
print("order-4 closed-form assembly residual:", np.linalg.norm((rebuilt - t).ravel()))
