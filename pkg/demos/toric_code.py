"""
Anyons of the toric code from D(Z2)
===================================

The quantum double of the two-element group has four irreducible
representations. They are the vacuum, the electric charge e, the magnetic
flux m and their bound state psi.
"""

import numpy as np

from doublekit import builtin_group, modular_data, quantum_double

D = quantum_double(builtin_group("Z2"))
data = modular_data(D)

# a label is a conjugacy class (the flux) with a centralizer irrep (the charge)
names = ["1", "e", "m", "psi"]
for name, l in zip(names, D.labels):
    print(f"{name:>3}: flux {l.class_rep}, charge {l.alpha}, dimension {l.dim}")

# the twist of psi is -1, so psi is a fermion built from two bosons
print("T =", np.round(data.T.real, 12))

# S is a normalised Hadamard-like matrix; its entries give the mutual braiding
print("2 S =")
print(np.round(2 * data.S.real, 12))

# every anyon is its own antiparticle and e x m = psi
N = data.fusion
for a in range(1, 4):
    assert N[a, a, 0] == 1
print("e x m =", names[int(np.argmax(N[1, 2]))])
