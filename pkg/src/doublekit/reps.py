"""Irreducible representations of D(G): labels, characters and the fusion oracle.

Irreps are labelled by a conjugacy class ``A`` together with an irrep
``alpha`` of the centralizer ``N_A``.  :class:`QuantumDouble` bundles the
class data and centralizer character tables that every routine here needs.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .algebra import DoubleElement, bullet, inner_product, star
from .charlib import character_table, conjugate_irrep, irrep_matrices
from .exceptions import GroupMismatch, NonIntegerFusion
from .groups import FiniteGroup, commuting_pairs, conjugacy_data, subgroup

__all__ = [
    "IrrepLabel", "DoubleCharacter", "QuantumDouble", "quantum_double",
    "irrep_labels", "double_character", "character_apply",
    "fusion_oracle", "fusion_oracle_tensor", "projector", "INT_TOL",
]

log = logging.getLogger(__name__)

INT_TOL = 1e-6


@dataclass(frozen=True)
class IrrepLabel:
    """Label ``(A, alpha)`` of an irrep of D(G).

    ``dim = |C_A| * d_alpha`` and ``n = |N_A| / d_alpha``.  ``alpha`` is
    0-based with 0 the trivial centralizer irrep, so ``index == 0`` is the
    vacuum.
    """

    index: int
    A: int
    alpha: int
    d_alpha: int
    dim: int
    n: int
    class_rep: int
    class_size: int
    centralizer_order: int


@dataclass(frozen=True)
class DoubleCharacter:
    label: IrrepLabel
    values: DoubleElement


class QuantumDouble:
    """Representation-theoretic data of D(G) for one group.

    Parameters
    ----------
    group : FiniteGroup
    seed : int
        Seed for the randomised steps of the centralizer character tables and
        irrep splitting.
    """

    def __init__(self, group, seed=0):
        self.group = group
        self.seed = seed
        self.class_data = cd = conjugacy_data(group)
        self.centralizers = []
        self.tables = []
        for A, N in enumerate(cd.centralizers):
            H, embed = subgroup(group, N, name=f"N_{A}")
            self.centralizers.append((H, embed))
            self.tables.append(character_table(H, seed=seed))
        labels = []
        for A, t in enumerate(self.tables):
            size = len(cd.classes[A])
            for alpha, d in enumerate(t.degrees):
                d = int(d)
                labels.append(IrrepLabel(
                    index=len(labels), A=A, alpha=alpha, d_alpha=d, dim=size * d,
                    n=t.order // d, class_rep=int(cd.reps[A]), class_size=size,
                    centralizer_order=t.order,
                ))
        self.labels = tuple(labels)
        self._index = {(l.A, l.alpha): l.index for l in labels}
        self._irreps = {}

    def __repr__(self):
        return f"QuantumDouble({self.group.name}, labels={len(self.labels)})"

    def __len__(self):
        return len(self.labels)

    @property
    def vacuum(self):
        return self.labels[0]

    def label(self, key):
        """Resolve an :class:`IrrepLabel`, a flat index or an ``(A, alpha)`` pair."""
        if isinstance(key, IrrepLabel):
            return key
        if isinstance(key, tuple):
            return self.labels[self._index[key]]
        return self.labels[int(key)]

    def centralizer_character(self, A, alpha):
        """``chi_alpha`` of ``N_A`` as an array over G (zero off ``N_A``)."""
        H, embed = self.centralizers[A]
        out = np.zeros(self.group.order, dtype=complex)
        out[embed] = self.tables[A].character(alpha)
        return out

    def conjugate_label(self, key):
        """The label ``(A, conj alpha)``."""
        l = self.label(key)
        return self.label((l.A, conjugate_irrep(self.tables[l.A], l.alpha)))

    @cached_property
    def character_array(self):
        """All characters stacked, shape ``(num_labels, |G|, |G|)``."""
        G, cd = self.group, self.class_data
        n = G.order
        ar = np.arange(n)
        inside = G.conj[cd.section[:, None], ar[None, :]]  # B_x^-1 y B_x
        out = np.zeros((len(self.labels), n, n), dtype=complex)
        for l in self.labels:
            chi = self.centralizer_character(l.A, l.alpha)
            mask = G.commuting & (cd.class_of == l.A)[:, None]
            out[l.index] = np.where(mask, n * chi[inside], 0)
        out.flags.writeable = False
        return out

    def character(self, key):
        l = self.label(key)
        return DoubleCharacter(l, DoubleElement(self.group, self.character_array[l.index]))

    @cached_property
    def pairs(self):
        return commuting_pairs(self.group, self.class_data)

    def irrep(self, A, alpha):
        """Unitary matrices of irrep ``alpha`` of ``N_A``, indexed by local elements."""
        if (A, alpha) not in self._irreps:
            H, _ = self.centralizers[A]
            self._irreps[A, alpha] = irrep_matrices(H, self.tables[A], alpha, seed=self.seed)
        return self._irreps[A, alpha]


@lru_cache(maxsize=64)
def quantum_double(group, seed=0):
    """Cached :class:`QuantumDouble` for ``group``."""
    return QuantumDouble(group, seed=seed)


def _double(D):
    return quantum_double(D) if isinstance(D, FiniteGroup) else D


def irrep_labels(D):
    """Irrep labels of D(G) ordered by ``(A, alpha)``."""
    return list(_double(D).labels)


def double_character(D, label):
    """``chi^A_alpha(x,y) = delta_e([x,y]) 1_A(x) chi_alpha(B_x^-1 y B_x)``."""
    return _double(D).character(label)


def character_apply(D, label, f):
    """Evaluate the character on ``f`` in D(G) via the centralizer double integral.

    Computes ``int_G int_{N_A} f(z g_A z^-1, z m z^-1) chi_alpha(m) dm dz``,
    which must agree with the pairing ``<chi, f>``.
    """
    D = _double(D)
    G = D.group
    if f.group is not G:
        raise GroupMismatch("element and double belong to different groups")
    l = D.label(label)
    t, inv = G.table, G.inverse
    N = D.class_data.centralizers[l.A]
    chi = D.centralizer_character(l.A, l.alpha)[N]
    X = t[t[:, l.class_rep], inv]  # z g_A z^-1
    Y = t[t[np.arange(G.order)[:, None], N[None, :]], inv[:, None]]  # z m z^-1
    vals = f.values[X[:, None], Y]
    chi = chi.reshape(chi.shape + (1,) * (vals.ndim - 2))
    return (vals * chi[None]).sum(axis=(0, 1)) / (G.order * len(N))


def _round_fusion(raw, int_tol):
    rounded = np.rint(raw.real)
    resid = float(np.abs(raw - rounded).max(initial=0.0))
    log.debug("fusion rounding residual %.3e", resid)
    if resid > int_tol:
        raise NonIntegerFusion(f"fusion coefficients off integers by {resid:.3e}")
    if (rounded < 0).any():
        raise NonIntegerFusion("negative fusion coefficient")
    return rounded.astype(int), resid


def fusion_oracle(D, a, b, int_tol=INT_TOL):
    """Multiplicities ``N^{ab}_c`` over all labels ``c`` from the star product.

    ``N^{ab}_c = (chi_a * chi_b, chi_c) / |G|``, computed directly from
    characters and orthogonality.
    """
    D = _double(D)
    prod = star(D.character(a).values, D.character(b).values)
    chars = DoubleElement(D.group, np.moveaxis(D.character_array, 0, -1))
    raw = inner_product(prod, chars) / D.group.order
    return _round_fusion(raw, int_tol)[0]


def fusion_oracle_tensor(D, int_tol=INT_TOL):
    """Full fusion tensor ``N[a, b, c]`` from the oracle and its rounding residual."""
    D = _double(D)
    G = D.group
    L = len(D.labels)
    chars = np.moveaxis(D.character_array, 0, -1)
    raw = np.empty((L, L, L), dtype=complex)
    for a in range(L):
        prods = star(D.character(a).values, DoubleElement(G, chars))  # batch over b
        raw[a] = np.einsum("xyb,xyc->bc", prods.values, np.conj(chars)) / G.order**3
    return _round_fusion(raw, int_tol)


def projector(D, label, f):
    """Orthogonal projection of ``f`` onto the matrix-element span of ``label``."""
    D = _double(D)
    l = D.label(label)
    return bullet(D.character(l).values, f) / l.n
