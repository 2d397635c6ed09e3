"""Explicit carrier spaces and representation matrices of D(G) irreps.

The carrier space of ``(A, alpha)`` consists of functions ``phi: G -> V_alpha``
with ``phi(x m) = pi_alpha(m^-1) phi(x)`` for ``m`` in ``N_A``.  Such a function
is fixed by its values on the coset representatives ``B_x`` (``x`` in
``C_A``), which gives the basis used here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import DoubleElement
from .exceptions import GroupMismatch
from .reps import _double

__all__ = ["CarrierSpace", "RepMatrix", "carrier_basis", "represent", "matrix_elements"]


@dataclass(frozen=True)
class CarrierSpace:
    """Orthonormal basis of ``V^A_alpha``.

    ``basis[k, g]`` is the value in ``V_alpha`` of the ``k``-th basis function
    at ``g``.  Basis index ``k = c * d_alpha + i`` pairs the ``c``-th member of
    ``C_A`` with the ``i``-th vector of ``V_alpha``.
    """

    label: object
    class_members: np.ndarray
    coset_reps: np.ndarray
    pi: np.ndarray
    basis: np.ndarray

    @property
    def dim(self):
        return self.basis.shape[0]

    def inner(self, phi, psi):
        """``sum_{x in C_A} <phi(B_x), psi(B_x)>``."""
        return np.vdot(phi[self.coset_reps], psi[self.coset_reps])

    def gram(self):
        vals = self.basis[:, self.coset_reps]
        return np.einsum("kcj,lcj->kl", vals.conj(), vals)


@dataclass(frozen=True)
class RepMatrix:
    label: object
    matrix: np.ndarray


def carrier_basis(D, label):
    """Basis of the carrier space for ``label``, ordered by class member then V_alpha."""
    D = _double(D)
    G, cd = D.group, D.class_data
    l = D.label(label)
    members = cd.classes[l.A]
    reps = cd.section[members]
    H, embed = D.centralizers[l.A]
    local = np.full(G.order, -1)
    local[embed] = np.arange(len(embed))
    pi = D.irrep(l.A, l.alpha).matrices
    t, inv = G.table, G.inverse
    d = l.d_alpha
    # coset of g: x = g g_A g^-1, and m = B_x^-1 g lies in N_A
    xs = t[t[:, l.class_rep], inv]
    ms = local[G.ldiv[cd.section[xs], np.arange(G.order)]]
    pos = np.full(G.order, -1)
    pos[members] = np.arange(len(members))
    basis = np.zeros((len(members) * d, G.order, d), dtype=complex)
    for g in range(G.order):
        c = pos[xs[g]]
        # pi(m^-1) e_i is column i of pi(m)^dagger
        basis[c * d:(c + 1) * d, g, :] = pi[ms[g]].conj()
    return CarrierSpace(label=l, class_members=members, coset_reps=reps, pi=pi, basis=basis)


def _space(D, label, space):
    return carrier_basis(D, label) if space is None else space


def represent(D, label, f, space=None):
    """Matrix of ``pi^A_alpha(f)`` in the carrier basis.

    ``(pi(f) phi)(g) = int f(g g_A g^-1, z) phi(z^-1 g) dz``; the coordinates of
    the result are its values at the coset representatives.  Trailing batch
    axes of ``f`` become trailing axes of the returned array.
    """
    D = _double(D)
    G = D.group
    if f.group is not G:
        raise GroupMismatch("element and double belong to different groups")
    sp = _space(D, label, space)
    # at g = B_x the first argument g g_A g^-1 is x itself
    fx = f.values[sp.class_members]
    phi = sp.basis[:, G.ldiv[:, sp.coset_reps]]  # (k, z, c, j)
    m = np.einsum("cz...,kzcj->cjk...", fx, phi) / G.order
    m = m.reshape((sp.dim, sp.dim) + f.batch_shape)
    return RepMatrix(label=sp.label, matrix=m) if not f.batch_shape else m


def matrix_elements(D, label, space=None):
    """Matrix-element functions ``(pi)_{ij}(x, y) = pi(delta_x (x) delta_y)_{ij}``.

    Returned as one batched :class:`DoubleElement` whose batch axes are
    ``(i, j)``.
    """
    D = _double(D)
    G = D.group
    n = G.order
    deltas = np.zeros((n, n, n, n), dtype=complex)
    ar = np.arange(n)
    deltas[ar[:, None], ar[None, :], ar[:, None], ar[None, :]] = n**2
    m = represent(D, label, DoubleElement(G, deltas), space=space)  # (i, j, x, y)
    return DoubleElement(G, np.moveaxis(m, (0, 1), (2, 3)))
