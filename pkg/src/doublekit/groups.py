"""Finite groups on dense element indices, conjugacy classes and commuting pairs.

Elements of a group of order ``n`` are the integers ``0..n-1`` and the full
multiplication table is materialised.  All downstream modules index their
arrays by these integers.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .exceptions import ClosureTooLarge, NotAGroup, NotAPermutation, ParseError

__all__ = [
    "FiniteGroup", "ClassData", "CommutingPairs",
    "group_from_table", "group_from_permutations", "parse_permutation",
    "conjugacy_data", "commuting_pairs", "subgroup",
    "builtin_group", "BUILTIN_GROUPS", "DEFAULT_ORDER_CAP",
]

DEFAULT_ORDER_CAP = 10**4


def _readonly(a):
    a = np.array(a, copy=True)
    a.flags.writeable = False
    return a


class FiniteGroup:
    """A finite group given by its multiplication table.

    Parameters
    ----------
    table : array_like of int, shape (n, n)
        ``table[a, b]`` is the index of the product ``a*b``.  Must already be a
        valid group table; use :func:`group_from_table` for validation.
    name : str, optional
        Display name.
    """

    def __init__(self, table, name=None):
        self.table = _readonly(np.asarray(table, dtype=np.intp))
        self.order = self.table.shape[0]
        self.name = name or f"G{self.order}"
        ar = np.arange(self.order)
        (ident,) = np.nonzero((self.table == ar[None, :]).all(axis=1))
        self.identity = int(ident[0])
        inv = np.empty(self.order, dtype=np.intp)
        rows, cols = np.nonzero(self.table == self.identity)
        inv[rows] = cols
        self.inverse = _readonly(inv)

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def __len__(self):
        return self.order

    def mul(self, a, b):
        return self.table[a, b]

    @cached_property
    def conj(self):
        """``conj[z, x]`` is ``z^-1 x z``."""
        t, inv = self.table, self.inverse
        return _readonly(t[t[inv[:, None], np.arange(self.order)[None, :]], np.arange(self.order)[:, None]])

    @cached_property
    def ldiv(self):
        """``ldiv[z, y]`` is ``z^-1 y``."""
        return _readonly(self.table[self.inverse])

    @cached_property
    def commuting(self):
        """Boolean mask of ``G_comm``: ``commuting[x, y]`` iff ``xy == yx``."""
        return _readonly(self.table == self.table.T)

    @cached_property
    def is_abelian(self):
        return bool(self.commuting.all())

    @cached_property
    def element_orders(self):
        orders = np.ones(self.order, dtype=np.intp)
        cur = np.arange(self.order)
        while True:
            not_done = cur != self.identity
            if not not_done.any():
                return _readonly(orders)
            cur = np.where(not_done, self.table[cur, np.arange(self.order)], cur)
            orders += not_done

    def power(self, x, k):
        """Elementwise ``x**k`` for an index array ``x`` and integer ``k`` (any sign)."""
        x = np.asarray(x, dtype=np.intp)
        e = np.mod(k, self.element_orders[x])
        result = np.full(x.shape, self.identity, dtype=np.intp)
        base = x.copy()
        while np.any(e):
            odd = (e & 1).astype(bool)
            result = np.where(odd, self.table[result, base], result)
            base = self.table[base, base]
            e = e >> 1
        return result


@dataclass(frozen=True)
class ClassData:
    """Conjugacy classes ``C_A`` with representatives, centralizers and section.

    ``section[x]`` is an element ``B_x`` with ``B_x g_A B_x^-1 == x`` for the
    class ``A`` containing ``x``.
    """

    classes: tuple
    reps: np.ndarray
    centralizers: tuple
    section: np.ndarray
    class_of: np.ndarray

    @property
    def num_classes(self):
        return len(self.classes)

    @property
    def sizes(self):
        return np.array([len(c) for c in self.classes])


@dataclass(frozen=True)
class CommutingPairs:
    """Commuting pairs ``(x, y)`` and their simultaneous-conjugation orbits.

    ``orbit_reps[i] = (A, a, g_A, h)`` where ``h`` runs over representatives
    of ``N_A``-classes in ``N_A``.
    """

    pairs: np.ndarray
    orbit_reps: tuple
    orbit_of: np.ndarray

    @property
    def count(self):
        return len(self.pairs)

    @property
    def num_orbits(self):
        return len(self.orbit_reps)


def group_from_table(table, name=None):
    """Validate a Cayley table and wrap it as a :class:`FiniteGroup`.

    Raises
    ------
    NotAGroup
        On the first failing axiom, with a witness tuple.
    """
    try:
        t = np.asarray(table)
    except Exception as exc:  # ragged nested lists
        raise NotAGroup(f"table is not a rectangular array: {exc}") from exc
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise NotAGroup(f"table must be a non-empty square matrix, got shape {t.shape}")
    if not np.issubdtype(t.dtype, np.integer):
        if not (np.issubdtype(t.dtype, np.floating) and np.all(t == np.round(t))):
            raise NotAGroup("table entries must be integers")
    t = t.astype(np.intp)
    n = t.shape[0]
    bad = np.argwhere((t < 0) | (t >= n))
    if len(bad):
        a, b = bad[0]
        raise NotAGroup(f"entry table[{a},{b}]={t[a, b]} out of range", (int(a), int(b)))
    ar = np.arange(n)
    idents = np.nonzero((t == ar[None, :]).all(axis=1) & (t == ar[:, None]).all(axis=0))[0]
    if len(idents) == 0:
        raise NotAGroup("no two-sided identity element")
    e = int(idents[0])
    for a in range(n):
        right = np.nonzero(t[a] == e)[0]
        if len(right) == 0 or t[right[0], a] != e:
            raise NotAGroup(f"element {a} has no two-sided inverse", (a,))
    # associativity, one left factor at a time to keep memory at O(n^2)
    for a in range(n):
        lhs = t[t[a][:, None], ar[None, :]]
        rhs = t[a][t]
        diff = np.argwhere(lhs != rhs)
        if len(diff):
            b, c = diff[0]
            raise NotAGroup(f"associativity fails for ({a},{b},{c})", (a, int(b), int(c)))
    return FiniteGroup(t, name=name)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(perm, degree):
    """Parse disjoint-cycle notation such as ``"(1 2)(3 4)"`` into an image tuple.

    Points are 1-based in the notation and 0-based in the returned tuple.
    Cycles may also be given as a sequence of sequences of ints.
    """
    if isinstance(perm, str):
        text = perm.strip()
        if _CYCLE_RE.sub("", text).strip():
            raise NotAPermutation(f"cannot parse cycle notation {perm!r}")
        cycles = []
        for body in _CYCLE_RE.findall(text):
            parts = [p for p in re.split(r"[\s,]+", body.strip()) if p]
            try:
                cycles.append([int(p) for p in parts])
            except ValueError as exc:
                raise NotAPermutation(f"non-integer point in {perm!r}") from exc
    else:
        cycles = [list(c) for c in perm]
    images = list(range(degree))
    seen = set()
    for cyc in cycles:
        for p in cyc:
            if not 1 <= p <= degree:
                raise NotAPermutation(f"point {p} outside 1..{degree} in {perm!r}")
            if p in seen:
                raise NotAPermutation(f"point {p} repeated in {perm!r}; cycles must be disjoint")
            seen.add(p)
        for i, p in enumerate(cyc):
            images[p - 1] = cyc[(i + 1) % len(cyc)] - 1
    return tuple(images)


def group_from_permutations(degree, generators, order_cap=DEFAULT_ORDER_CAP, name=None):
    """Close a set of permutations of ``{1..degree}`` under composition.

    Elements are enumerated breadth-first over generator words, taking
    generators in the order given, so element 0 is the identity and the
    numbering is reproducible.  The product ``a*b`` is the composite "apply
    ``b`` then ``a``".
    """
    if degree < 1:
        raise NotAPermutation("degree must be positive")
    gens = [np.array(parse_permutation(g, degree), dtype=np.intp) for g in generators]
    ident = np.arange(degree, dtype=np.intp)
    perms = [ident]
    index = {ident.tobytes(): 0}
    queue = deque([0])
    while queue:
        a = perms[queue.popleft()]
        for g in gens:
            prod = a[g]
            key = prod.tobytes()
            if key not in index:
                if len(perms) >= order_cap:
                    raise ClosureTooLarge(f"closure exceeds order cap {order_cap}")
                index[key] = len(perms)
                perms.append(prod)
                queue.append(len(perms) - 1)
    P = np.array(perms)
    n = len(P)
    table = np.empty((n, n), dtype=np.intp)
    for a in range(n):
        comps = P[a][P]
        table[a] = [index[row.tobytes()] for row in comps]
    G = FiniteGroup(table, name=name)
    G.permutations = _readonly(P)
    return G


def conjugacy_data(G):
    """Conjugacy classes, representatives, centralizers and section map of ``G``.

    Classes are ordered with ``{e}`` first and then by smallest member; the
    representative is the smallest member.  ``B_x`` is the first conjugator in
    the scan order ``e, 0, 1, ...`` carrying the representative to ``x``.
    """
    n, t, inv, e = G.order, G.table, G.inverse, G.identity
    scan = np.concatenate([[e], np.delete(np.arange(n), e)])
    # orbit[g, x] = g x g^-1
    orbit = t[t[:, :], inv[:, None]]
    class_of = np.full(n, -1, dtype=np.intp)
    section = np.full(n, -1, dtype=np.intp)
    classes, reps, cents = [], [], []
    for x in [e] + [i for i in range(n) if i != e]:
        if class_of[x] >= 0:
            continue
        A = len(classes)
        for g in scan:
            y = orbit[g, x]
            if class_of[y] < 0:
                class_of[y] = A
                section[y] = g
        members = np.nonzero(class_of == A)[0]
        classes.append(_readonly(members))
        reps.append(x)
        cents.append(_readonly(np.nonzero(t[x] == t[:, x])[0]))
    return ClassData(
        classes=tuple(classes),
        reps=_readonly(reps),
        centralizers=tuple(cents),
        section=_readonly(section),
        class_of=_readonly(class_of),
    )


def subgroup(G, elements, name=None):
    """The subgroup on ``elements`` (sorted G-indices) as its own :class:`FiniteGroup`.

    Returns ``(H, embed)`` with ``embed[h]`` the G-index of local element ``h``.
    """
    embed = np.unique(np.asarray(elements, dtype=np.intp))
    local = np.full(G.order, -1, dtype=np.intp)
    local[embed] = np.arange(len(embed))
    sub = local[G.table[np.ix_(embed, embed)]]
    if (sub < 0).any():
        raise NotAGroup("elements are not closed under multiplication")
    return FiniteGroup(sub, name=name), _readonly(embed)


def commuting_pairs(G, cd):
    """All commuting pairs of ``G`` and their orbits under simultaneous conjugation."""
    n, t, inv = G.order, G.table, G.inverse
    xs, ys = np.nonzero(G.commuting)
    pairs = np.stack([xs, ys], axis=1)
    orbit_of = np.full((n, n), -1, dtype=np.intp)
    reps = []
    for A, gA in enumerate(cd.reps):
        N = cd.centralizers[A]
        done = set()
        a = 0
        for h in N:
            if h in done:
                continue
            done.update(t[t[N, h], inv[N]].tolist())
            gx = t[t[:, gA], inv]
            gy = t[t[:, h], inv]
            orbit_of[gx, gy] = len(reps)
            reps.append((A, a, int(gA), int(h)))
            a += 1
    return CommutingPairs(pairs=_readonly(pairs), orbit_reps=tuple(reps), orbit_of=_readonly(orbit_of))


def _quaternion_perms():
    # elements ordered 1,-1,i,-i,j,-j,k,-k; units multiply by the table below
    unit = {("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
            ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
            ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
            ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1")}
    elems = [(s, b) for b in "1ijk" for s in (1, -1)]
    pos = {el: i for i, el in enumerate(elems)}

    def left(g):
        images = []
        for s, b in elems:
            sign, c = unit[(g, b)]
            images.append(pos[(s * sign, c)] + 1)
        return images

    def to_cycles(images):
        seen, cycles = set(), []
        for start in range(1, 9):
            if start in seen:
                continue
            cyc, p = [], start
            while p not in seen:
                seen.add(p)
                cyc.append(p)
                p = images[p - 1]
            if len(cyc) > 1:
                cycles.append(cyc)
        return cycles

    return [to_cycles(left(g)) for g in ("i", "j")]


BUILTIN_GROUPS = {
    "trivial": (1, []),
    "Z2": (2, ["(1 2)"]),
    "Z3": (3, ["(1 2 3)"]),
    "Z4": (4, ["(1 2 3 4)"]),
    "Klein4": (4, ["(1 2)(3 4)", "(1 3)(2 4)"]),
    "S3": (3, ["(1 2)", "(1 2 3)"]),
    "D4": (4, ["(1 2 3 4)", "(1 3)"]),
    "Q8": (8, _quaternion_perms()),
    "A4": (4, ["(1 2 3)", "(1 2)(3 4)"]),
    "S4": (4, ["(1 2)", "(1 2 3 4)"]),
}


def builtin_group(name):
    """One of the catalogue groups: trivial, Z2, Z3, Z4, Klein4, S3, D4, Q8, A4, S4."""
    try:
        degree, gens = BUILTIN_GROUPS[name]
    except KeyError:
        raise ParseError(f"unknown builtin group {name!r}; choose from {sorted(BUILTIN_GROUPS)}") from None
    return group_from_permutations(degree, gens, name=name)
