"""SL(2,Z) action, Fourier transform and modular data of D(G).

Operators act pointwise on functions of ``(x, y)``:

* ``(S f)(x,y) = f(y, x^-1)`` and ``(T f)(x,y) = f(x, xy)``;
* ``(U f)(x,y) = f(y, x)``, ``(J1 f)(x,y) = f(x^-1, y)``, ``(J2 f)(x,y) = f(x, y^-1)``;
* the R-matrix transform ``S~ f(x,y) = f(x y^-1 x^-1, x)``.

Composites are written right-to-left throughout: ``S o J2`` means "apply
``J2``, then ``S``".  With that convention ``U = S o J2 = J1 o S`` and
``S~ = S o kappa``.

Matrices on the character basis use the convention ``M[b, a] = (M chi_a,
chi_b) / |G|``, so ``M chi_a = sum_b M[b, a] chi_b``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    DoubleElement, antipode, canonical_elements, flip, haar,
    partial_apply, slot_map, tensor_bullet, tensor_product, units,
)
from .charlib import conjugate_irrep
from .exceptions import NotDiagonal, NotUnimodular, UnsupportedOutsideComm, ZeroFirstRow
from .reps import INT_TOL, _double, _round_fusion

__all__ = [
    "ModularData", "S_GENERATOR", "T_GENERATOR",
    "sl2z_action", "fourier_S", "inverse_fourier_S", "ribbon_T", "inverse_ribbon_T",
    "swap_U", "j1", "j2", "j_ops", "lyubashenko_S",
    "character_basis_matrix", "s_matrix", "t_matrix", "twists", "u_matrix",
    "verlinde_fusion", "verlinde_fusion_u", "conjugate_permutation", "modular_data",
]

S_GENERATOR = ((0, -1), (1, 0))
T_GENERATOR = ((1, 1), (0, 1))

MATRIX_TOL = 1e-9


@dataclass(frozen=True)
class ModularData:
    """Modular data of D(G) on the ordered label list.

    ``C`` is the charge conjugation permutation matrix ``S @ S`` and
    ``fusion[a, b, c]`` the multiplicity of ``c`` in ``a (x) b``.
    """

    labels: tuple
    S: np.ndarray
    T: np.ndarray
    U: np.ndarray
    C: np.ndarray
    fusion: np.ndarray
    fusion_residual: float


def _pull(f, X, Y):
    return DoubleElement(f.group, f.values[X, Y])


def _grid(G):
    ar = np.arange(G.order)
    return np.broadcast_to(ar[:, None], (G.order,) * 2), np.broadcast_to(ar[None, :], (G.order,) * 2)


def sl2z_action(M, f, tol=0.0):
    """``(M f)(x,y) = f(x^a y^c, x^b y^d)`` for ``M = [[a, b], [c, d]]`` in SL(2,Z).

    Defined on functions supported on commuting pairs; the result is zero
    off ``G_comm``.  ``M1 (M2 f) == (M1 M2) f``.
    """
    (a, b), (c, d) = np.asarray(M, dtype=int).tolist()
    if a * d - b * c != 1:
        raise NotUnimodular(f"det {a * d - b * c} != 1")
    G = f.group
    if not f.supported_on_comm(tol):
        raise UnsupportedOutsideComm("f has support outside the commuting pairs")
    x, y = _grid(G)
    t = G.table
    X = t[G.power(x, a), G.power(y, c)]
    Y = t[G.power(x, b), G.power(y, d)]
    vals = f.values[X, Y]
    mask = G.commuting.reshape(G.commuting.shape + (1,) * (vals.ndim - 2))
    return DoubleElement(G, np.where(mask, vals, 0))


def fourier_S(f):
    """``(S f)(x,y) = f(y, x^-1)``, on all of ``C(G x G)``."""
    x, y = _grid(f.group)
    return _pull(f, y, f.group.inverse[x])


def inverse_fourier_S(f):
    """``(S^-1 f)(x,y) = f(y^-1, x)``."""
    x, y = _grid(f.group)
    return _pull(f, f.group.inverse[y], x)


def ribbon_T(f):
    """``(T f)(x,y) = f(x, xy)``; equals ``c . f`` for the ribbon element ``c``."""
    x, _ = _grid(f.group)
    return _pull(f, x, f.group.table)


def inverse_ribbon_T(f):
    """``(T^-1 f)(x,y) = f(x, x^-1 y)``."""
    x, _ = _grid(f.group)
    return _pull(f, x, f.group.ldiv)


def swap_U(f):
    """``(U f)(x,y) = f(y, x)``."""
    x, y = _grid(f.group)
    return _pull(f, y, x)


def j1(f):
    """``(J1 f)(x,y) = f(x^-1, y)``."""
    x, y = _grid(f.group)
    return _pull(f, f.group.inverse[x], y)


def j2(f):
    """``(J2 f)(x,y) = f(x, y^-1)``."""
    x, y = _grid(f.group)
    return _pull(f, x, f.group.inverse[y])


def j_ops(f):
    """``(U f, J1 f, J2 f)``."""
    return swap_U(f), j1(f), j2(f)


def lyubashenko_S(f, method="closed", gate=None):
    """The R-matrix Fourier transform ``S~``.

    ``method="closed"`` evaluates ``f(x y^-1 x^-1, x)``; ``method="tensor"``
    evaluates ``(id (x) h)(R^-1 . (1 (x) f) . R21^-1)`` in D(G) (x) D(G),
    which is subject to the tensor gate.
    """
    G = f.group
    if method == "closed":
        x, y = _grid(G)
        t, inv = G.table, G.inverse
        return _pull(f, t[t[x, inv[y]], inv[x]], x)
    if method != "tensor":
        raise ValueError(f"unknown method {method!r}")
    R, _, _ = canonical_elements(G, gate)
    Rinv = slot_map(R, antipode, 0)
    one = units(G)[0]
    F = tensor_bullet(tensor_bullet(Rinv, tensor_product(one, f), gate), flip(Rinv), gate)
    return partial_apply(F, haar, 1)


def character_basis_matrix(D, op):
    """Matrix of a linear operator on the character span, ``M[b, a] = (op chi_a, chi_b)/|G|``."""
    D = _double(D)
    G = D.group
    chars = DoubleElement(G, np.moveaxis(D.character_array, 0, -1))
    images = op(chars)
    return np.einsum("xya,xyb->ba", images.values, np.conj(chars.values)) / G.order**3


def s_matrix(D, method="pairing"):
    """The S-matrix on the character basis.

    ``method="pairing"`` projects ``S chi_a`` onto the characters;
    ``method="explicit"`` evaluates the commuting-pair double sum over
    ``x in C_A``, ``y in C_B`` of ``conj chi_alpha(B_x^-1 y B_x) conj chi_beta(B_y^-1 x B_y) / |G|``.
    """
    D = _double(D)
    if method == "pairing":
        return character_basis_matrix(D, fourier_S)
    if method != "explicit":
        raise ValueError(f"unknown method {method!r}")
    G, cd = D.group, D.class_data
    n = G.order
    ar = np.arange(n)
    inside = G.conj[cd.section[:, None], ar[None, :]]  # inside[x, y] = B_x^-1 y B_x
    L = len(D.labels)
    # W[a, x, y] = 1_A(x) conj chi_alpha(B_x^-1 y B_x) on commuting pairs
    W = np.zeros((L, n, n), dtype=complex)
    for l in D.labels:
        chi = D.centralizer_character(l.A, l.alpha)
        mask = G.commuting & (cd.class_of == l.A)[:, None]
        W[l.index] = np.where(mask, np.conj(chi[inside]), 0)
    return np.einsum("axy,byx->ba", W, W) / n


def twists(D):
    """``theta_a = chi_alpha(g_A) / d_alpha``."""
    D = _double(D)
    out = np.empty(len(D.labels), dtype=complex)
    for l in D.labels:
        out[l.index] = D.centralizer_character(l.A, l.alpha)[l.class_rep] / l.d_alpha
    return out


def t_matrix(D, tol=MATRIX_TOL, full=False):
    """Diagonal of the T-matrix, with diagonality checked rather than assumed.

    Returns the full matrix instead when ``full`` is true.
    """
    M = character_basis_matrix(D, ribbon_T)
    off = np.abs(M - np.diag(np.diag(M))).max(initial=0.0)
    if off > tol:
        raise NotDiagonal(f"T-matrix off-diagonal residual {off:.3e}")
    return M if full else np.diag(M).copy()


def u_matrix(D, method="pairing"):
    """Matrix of ``U`` on the character basis (Lusztig's kernel).

    ``method="explicit"`` evaluates
    ``U[b, a] = sum_g chi_alpha(g g_B g^-1) conj chi_beta(g^-1 g_A g) / (|N_A| |N_B|)``
    over ``g`` with ``g_A`` commuting with ``g g_B g^-1``.
    """
    D = _double(D)
    if method == "pairing":
        return character_basis_matrix(D, swap_U)
    if method != "explicit":
        raise ValueError(f"unknown method {method!r}")
    G = D.group
    t, inv = G.table, G.inverse
    L = len(D.labels)
    U = np.zeros((L, L), dtype=complex)
    for la in D.labels:
        chi_a = D.centralizer_character(la.A, la.alpha)
        for lb in D.labels:
            chi_b = D.centralizer_character(lb.A, lb.alpha)
            u = t[t[:, lb.class_rep], inv]  # g g_B g^-1
            v = t[t[inv, la.class_rep], np.arange(G.order)]  # g^-1 g_A g
            keep = t[la.class_rep, u] == t[u, la.class_rep]
            U[lb.index, la.index] = np.sum(chi_a[u[keep]] * np.conj(chi_b[v[keep]])) / (
                la.centralizer_order * lb.centralizer_order)
    return U


def _first_row_weights(S, labels, tol):
    n = np.array([l.n for l in labels], dtype=float)
    if np.abs(S[0]).min(initial=np.inf) <= tol:
        raise ZeroFirstRow("vacuum row of S has a zero entry")
    return n


def verlinde_fusion(S, labels, int_tol=INT_TOL, tol=MATRIX_TOL):
    """Fusion tensor from the Verlinde formula and its pre-rounding residual.

    ``N[a, b, c] = sum_d S[d, a] S[d, b] conj(S[c, d]) / S[0, d]``, dividing
    by the exact vacuum-row value ``1 / n_d``.
    """
    S = np.asarray(S)
    n = _first_row_weights(S, labels, tol)
    raw = np.einsum("da,db,cd,d->abc", S, S, np.conj(S), n)
    return _round_fusion(raw, int_tol)


def verlinde_fusion_u(U, labels, int_tol=INT_TOL, tol=MATRIX_TOL):
    """Fusion tensor from ``N[a, b, c] = sum_d U[d, a] U[d, b] U[c, d] / U[0, d]``."""
    U = np.asarray(U)
    n = _first_row_weights(U, labels, tol)
    raw = np.einsum("da,db,cd,d->abc", U, U, U, n)
    return _round_fusion(raw, int_tol)


def conjugate_permutation(D):
    """Index of ``(A, conj alpha)`` for every label."""
    D = _double(D)
    return np.array([D.label((l.A, conjugate_irrep(D.tables[l.A], l.alpha))).index for l in D.labels])


def modular_data(D, int_tol=INT_TOL, tol=MATRIX_TOL):
    """Assemble S, T, U, charge conjugation and the Verlinde fusion tensor."""
    D = _double(D)
    S = s_matrix(D)
    T = t_matrix(D, tol=tol)
    U = u_matrix(D)
    C = S @ S
    Cr = np.rint(C.real)
    if np.abs(C - Cr).max(initial=0.0) > tol:
        raise NotDiagonal("S^2 is not a permutation matrix")
    N, resid = verlinde_fusion(S, D.labels, int_tol=int_tol, tol=tol)
    return ModularData(labels=D.labels, S=S, T=T, U=U, C=Cr.astype(int), fusion=N, fusion_residual=resid)

