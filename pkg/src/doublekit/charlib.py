"""Ordinary character tables and unitary irreducible representations.

Tables are computed numerically by the Burnside-Dixon method: the class
multiplication matrices commute, and a random linear combination of them has
the normalised central characters as eigenvectors.  Explicit unitary irreps
are cut out of the regular representation by isotypic projection.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .exceptions import DegeneracyNotResolved, NoMatch, SplitFailed
from .groups import conjugacy_data

__all__ = ["CharacterTable", "UnitaryIrrep", "character_table", "conjugate_irrep", "irrep_matrices"]

log = logging.getLogger(__name__)

TABLE_TOL = 1e-9
RETRY_BUDGET = 32


@dataclass(frozen=True)
class CharacterTable:
    """Character table of a finite group ``H``.

    Attributes
    ----------
    order : int
    class_reps, class_sizes : ndarray
        In the canonical class order of :func:`~doublekit.groups.conjugacy_data`.
    class_of : ndarray
        Class index of each element of ``H``.
    values : ndarray, shape (q, q)
        ``values[alpha, k]`` is the character ``alpha`` on class ``k``.
        Row 0 is the trivial character.
    degrees : ndarray of int
    """

    order: int
    class_reps: np.ndarray
    class_sizes: np.ndarray
    class_of: np.ndarray
    values: np.ndarray
    degrees: np.ndarray

    @property
    def num_irreps(self):
        return len(self.degrees)

    def character(self, alpha):
        """Values of character ``alpha`` on every element of ``H``."""
        return self.values[alpha, self.class_of]


@dataclass(frozen=True)
class UnitaryIrrep:
    """Unitary matrices ``matrices[h]`` of one irrep, indexed by elements of ``H``."""

    degree: int
    matrices: np.ndarray


def _class_matrices(H, cd):
    # M[i, j, k] = #{x in C_i : x^-1 z_k in C_j}, z_k the k-th representative
    q = cd.num_classes
    M = np.zeros((q, q, q))
    left = H.ldiv
    for i, Ci in enumerate(cd.classes):
        for k, zk in enumerate(cd.reps):
            np.add.at(M[i, :, k], cd.class_of[left[Ci, zk]], 1)
    return M


def character_table(H, seed=0):
    """Character table of ``H``, trivial character first.

    Remaining characters are sorted by degree and then lexicographically by
    their values (real part, then imaginary part) on the canonical class order.
    """
    cd = conjugacy_data(H)
    q = cd.num_classes
    sizes = cd.sizes.astype(float)
    M = _class_matrices(H, cd)
    scale = max(1.0, float(np.abs(M).max()))
    rng = np.random.default_rng(seed)
    for attempt in range(RETRY_BUDGET):
        coeffs = rng.standard_normal(q)
        A = np.tensordot(coeffs, M, axes=1)
        evals, evecs = np.linalg.eig(A)
        gaps = np.abs(evals[:, None] - evals[None, :])
        gaps[np.diag_indices(q)] = np.inf
        if q == 1 or gaps.min() > 1e-6 * scale:
            break
        log.debug("class-sum combination degenerate on attempt %d, retrying", attempt)
    else:
        raise DegeneracyNotResolved(f"no separating combination after {RETRY_BUDGET} attempts")

    # refine each central character as the common null vector of all (M_i - w_i)
    rows = []
    for v in evecs.T:
        w = v / v[0]
        for _ in range(2):
            stacked = np.concatenate([M[i] - w[i] * np.eye(q) for i in range(q)])
            _, _, vh = np.linalg.svd(stacked)
            w = vh[-1].conj()
            w = w / w[0]
        norm = np.sum(np.abs(w) ** 2 / sizes)
        d = np.sqrt(H.order / norm)
        deg = int(round(d))
        if abs(d - deg) > 1e-6 or deg < 1 or H.order % deg:
            raise DegeneracyNotResolved(f"non-integral degree estimate {d}")
        rows.append((deg, deg * w / sizes))

    def key(row):
        deg, vals = row
        trivial = deg == 1 and np.allclose(vals, 1.0, atol=1e-8)
        flat = tuple(x for v in vals for x in (round(v.real, 8) + 0.0, round(v.imag, 8) + 0.0))
        return (not trivial, deg, flat)

    rows.sort(key=key)
    degrees = np.array([r[0] for r in rows])
    values = np.array([r[1] for r in rows])
    # exact values where they are known
    values[:, 0] = degrees
    values[0] = 1.0
    if int((degrees**2).sum()) != H.order:
        raise DegeneracyNotResolved("degrees do not satisfy sum of squares = |H|")
    return CharacterTable(
        order=H.order,
        class_reps=cd.reps,
        class_sizes=cd.sizes,
        class_of=cd.class_of,
        values=values,
        degrees=degrees,
    )


def conjugate_irrep(t, alpha):
    """Index of the complex-conjugate character of ``alpha``."""
    target = np.conj(t.values[alpha])
    for beta in range(t.num_irreps):
        if np.allclose(t.values[beta], target, atol=1e-8):
            return beta
    raise NoMatch(f"no conjugate for character {alpha}")


def _regular_rep(H):
    # rho[h][h*k, k] = 1
    n = H.order
    rho = np.zeros((n, n, n))
    rho[np.arange(n)[:, None], H.table, np.arange(n)[None, :]] = 1.0
    return rho


def irrep_matrices(H, t, alpha, seed=0):
    """Explicit unitary matrices for irrep ``alpha`` of ``H``.

    The ``alpha``-isotypic part of the regular representation is split by
    diagonalising a random hermitian operator averaged over ``H`` (so it
    commutes with the action); one of its eigenspaces is an irreducible
    subspace.
    """
    d = int(t.degrees[alpha])
    chi = t.character(alpha)
    n = H.order
    if d == 1:
        return UnitaryIrrep(degree=1, matrices=chi.reshape(n, 1, 1).astype(complex))
    rho = _regular_rep(H)
    P = (d / n) * np.tensordot(np.conj(chi), rho, axes=1)
    evals, evecs = np.linalg.eigh((P + P.conj().T) / 2)
    W = evecs[:, evals > 0.5]
    if W.shape[1] != d * d:
        raise SplitFailed(f"isotypic component has dimension {W.shape[1]}, expected {d * d}")
    rng = np.random.default_rng(seed)
    for attempt in range(RETRY_BUDGET):
        Y = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        Y = Y + Y.conj().T
        E = np.einsum("hij,jk,hlk->il", rho, Y, rho) / n
        ew, ev = np.linalg.eigh(W.conj().T @ E @ W)
        clusters = ew.reshape(d, d)
        spread = np.ptp(clusters, axis=1).max()
        gap = np.min(clusters[1:, 0] - clusters[:-1, -1])
        if spread < 1e-8 * max(1.0, np.abs(ew).max()) and gap > 1e-4 * max(1.0, np.abs(ew).max()):
            break
        log.debug("irrep split degenerate on attempt %d, retrying", attempt)
    else:
        raise SplitFailed(f"could not split isotypic component after {RETRY_BUDGET} attempts")
    U = W @ ev[:, :d]
    U, _ = np.linalg.qr(U)
    mats = np.einsum("ai,hab,bj->hij", U.conj(), rho, U)
    traces = np.einsum("hii->h", mats)
    if np.abs(traces - chi).max() > 1e-8:
        raise SplitFailed("irrep traces disagree with the character table")
    return UnitaryIrrep(degree=d, matrices=mats)
