"""Quantum double D(G) of a finite group: Hopf structure, irreps and modular data.

Elements of D(G) are dense complex arrays ``f[x, y]`` over G x G.  The
submodules build up in layers:

``groups``     finite groups from Cayley tables or permutations, classes, centralizers
``charlib``    character tables and explicit unitary irreps of small groups
``algebra``    products, coproducts, antipodes, R-matrix, Haar functionals
``reps``       irrep labels, characters and the star-product fusion oracle
``carrier``    explicit carrier spaces and representation matrices
``modular``    SL(2,Z) action, S/T/U matrices and the Verlinde formula
``verify``     named numerical checks and their report
"""

from .algebra import (
    DoubleElement, TensorElement, antipode, bullet, canonical_elements, coproduct, counit,
    dual_antipode, dual_coproduct, dual_counit, dual_haar, haar, inner_product,
    involution_circ, involution_star, pairing, random_element, ribbon_element, star, units,
)
from .carrier import carrier_basis, matrix_elements, represent
from .charlib import character_table, irrep_matrices
from .exceptions import DoubleKitError
from .groups import (
    BUILTIN_GROUPS, FiniteGroup, builtin_group, commuting_pairs, conjugacy_data,
    group_from_permutations, group_from_table,
)
from .modular import (
    ModularData, fourier_S, inverse_fourier_S, inverse_ribbon_T, j_ops, lyubashenko_S,
    modular_data, ribbon_T, s_matrix, sl2z_action, t_matrix, u_matrix, verlinde_fusion,
)
from .reps import QuantumDouble, character_apply, double_character, fusion_oracle, irrep_labels, projector, quantum_double
from .verify import verify_group

__version__ = "0.1.0"
