"""
Verlinde formula against direct decomposition
=============================================

Fusion multiplicities come out of the S-matrix by the Verlinde formula.
Here they are compared with multiplicities found by decomposing star
products of characters directly.
"""

import time

import numpy as np

from doublekit import BUILTIN_GROUPS, builtin_group, quantum_double
from doublekit.modular import s_matrix, u_matrix, verlinde_fusion, verlinde_fusion_u
from doublekit.reps import fusion_oracle_tensor

for name in BUILTIN_GROUPS:
    start = time.perf_counter()
    D = quantum_double(builtin_group(name))
    N_s, resid_s = verlinde_fusion(s_matrix(D), D.labels)
    N_u, resid_u = verlinde_fusion_u(u_matrix(D), D.labels)
    N_o, resid_o = fusion_oracle_tensor(D)
    agree = np.array_equal(N_s, N_o) and np.array_equal(N_u, N_o)
    print(f"{name:>7}: {len(D.labels):>2} labels, agree={agree}, "
          f"rounding residuals {resid_s:.1e} / {resid_u:.1e} / {resid_o:.1e}, "
          f"{time.perf_counter() - start:.2f}s")
