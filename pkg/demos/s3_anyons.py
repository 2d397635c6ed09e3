"""
Non-abelian anyons of D(S3)
===========================

The double of the symmetric group on three letters is the smallest
non-abelian example. Its eight anyons have quantum dimensions 1, 1, 2, 2, 2,
2, 3 and 3.
"""

import numpy as np

from doublekit import builtin_group, modular_data, quantum_double

G = builtin_group("S3")
D = quantum_double(G)
data = modular_data(D)

# the flux is the class size, the charge an irrep of its centralizer
for l in D.labels:
    theta = data.T[l.index]
    print(f"label {l.index}: class size {l.class_size}, centralizer order {l.centralizer_order}, "
          f"dim {l.dim}, twist {np.round(theta, 6)}")

# quantum dimensions sum in squares to |G|^2
dims = np.array([l.dim for l in D.labels])
print("sum d^2 =", int((dims**2).sum()), "=", G.order, "squared")

# the vacuum row of S is d/|G| for every label
print("S[0] * |G| =", np.round(data.S[0].real * G.order, 12))

# the pure 3-cycle flux squared has total dimension 2 x 2 = 4
flux = next(l.index for l in D.labels if l.class_size == 2 and l.alpha == 0)
for c in np.nonzero(data.fusion[flux, flux])[0]:
    print(f"  {flux} x {flux} contains label {c} (dim {dims[c]})")
