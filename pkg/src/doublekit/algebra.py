"""Structure maps of the quantum double D(G) and its dual on dense arrays.

Both D(G) and D(G)* are realised as complex functions on G x G.  Integrals use
the normalised measure (a ``1/|G|`` prefactor per integration variable) and
delta functions take the value ``|G|`` on their support, so every structure
map below is a direct transcription of its defining sum.

Arrays carry element indices on their leading axes; any trailing axes are
treated as a batch of independent elements.  This lets the verification code
push many random elements through one vectorised call.
"""

from __future__ import annotations

import numpy as np

from .exceptions import GroupMismatch, TensorGateExceeded

__all__ = [
    "DoubleElement", "TensorElement", "TENSOR_GATE",
    "bullet", "star", "coproduct", "dual_coproduct",
    "antipode", "dual_antipode", "involution_star", "involution_circ",
    "counit", "dual_counit", "units", "canonical_elements", "ribbon_element", "monodromy_inverse",
    "tensor_bullet", "tensor_star", "tensor_product", "flip", "slot_map", "partial_apply", "tensor_involution",
    "multiply_slots", "dual_multiply_slots", "apply_coproduct",
    "haar", "dual_haar", "van_daele_constant", "van_daele_haar",
    "pairing", "inner_product", "random_element",
]

TENSOR_GATE = 12


class _Element:
    _lead = 2

    def __init__(self, group, values):
        values = np.asarray(values, dtype=complex)
        n = group.order
        if values.shape[: self._lead] != (n,) * self._lead:
            raise ValueError(f"expected leading shape {(n,) * self._lead}, got {values.shape}")
        values = values.copy()
        values.flags.writeable = False
        self.group = group
        self.values = values

    @property
    def batch_shape(self):
        return self.values.shape[self._lead:]

    def _new(self, values):
        return type(self)(self.group, values)

    def _check(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        if other.group is not self.group:
            raise GroupMismatch("elements belong to different groups")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self._new(self.values + other.values)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self._new(self.values - other.values)

    def __neg__(self):
        return self._new(-self.values)

    def __mul__(self, scalar):
        if isinstance(scalar, _Element):
            return NotImplemented
        return self._new(self.values * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self._new(self.values / scalar)

    def __getitem__(self, key):
        return self.values[key]

    def max_abs_diff(self, other):
        self._check(other)
        return float(np.abs(self.values - other.values).max(initial=0.0))

    def allclose(self, other, atol=1e-9):
        return self.max_abs_diff(other) <= atol

    def __repr__(self):
        return f"{type(self).__name__}({self.group.name}, shape={self.values.shape})"


class DoubleElement(_Element):
    """A function ``f(x, y)`` on G x G, read as an element of D(G) or of D(G)*."""

    _lead = 2

    @classmethod
    def zeros(cls, G):
        return cls(G, np.zeros((G.order, G.order)))

    @classmethod
    def delta(cls, G, x, y):
        """``delta_x (x) delta_y``, of value ``|G|^2`` at ``(x, y)``."""
        v = np.zeros((G.order, G.order))
        v[x, y] = G.order**2
        return cls(G, v)

    def supported_on_comm(self, tol=0.0):
        off = np.abs(self.values[~self.group.commuting])
        return bool(off.size == 0 or off.max() <= tol)

    def unbatch(self):
        """Split a batched element into a list of plain ones."""
        flat = self.values.reshape(self.values.shape[:2] + (-1,))
        return [DoubleElement(self.group, flat[..., i]) for i in range(flat.shape[-1])]


class TensorElement(_Element):
    """A function ``F(x1, y1; x2, y2)``, an element of D(G) (x) D(G)."""

    _lead = 4

    @classmethod
    def unit(cls, G):
        one = units(G)[0]
        return tensor_product(one, one)


def _same_group(*elements):
    g = elements[0].group
    for e in elements[1:]:
        if e.group is not g:
            raise GroupMismatch("elements belong to different groups")
    return g


def _gate(G, gate):
    gate = TENSOR_GATE if gate is None else gate
    if G.order > gate:
        raise TensorGateExceeded(f"|G| = {G.order} exceeds the tensor gate {gate}")


def _trailing(a, lead):
    return (1,) * (a.ndim - lead)


# -- products ---------------------------------------------------------------

def _match_batch(a, b):
    # pad trailing batch axes so a and b broadcast batch-against-batch
    k = max(a.ndim, b.ndim)
    return a.reshape(a.shape + (1,) * (k - a.ndim)), b.reshape(b.shape + (1,) * (k - b.ndim))


def _bullet(G, a, b):
    a, b = _match_batch(a, b)
    C, L = G.conj, G.ldiv
    bb = b[C[:, :, None], L[:, None, :]]
    aa = np.moveaxis(a, 1, 0)[:, :, None]
    return (aa * bb).sum(axis=0) / G.order


def _star(G, a, b):
    a, b = _match_batch(a, b)
    ar = np.arange(G.order)
    bb = b[G.ldiv[:, :, None], ar[None, None, :]]
    aa = a[:, None, :]
    return (aa * bb).sum(axis=0) / G.order


def bullet(f1, f2):
    """Algebra product of D(G): ``(f1 . f2)(x,y) = int f1(x,z) f2(z^-1 x z, z^-1 y) dz``."""
    G = _same_group(f1, f2)
    return DoubleElement(G, _bullet(G, f1.values, f2.values))


def star(f1, f2):
    """Dual product: ``(f1 * f2)(x,y) = int f1(z,y) f2(z^-1 x, y) dz``."""
    G = _same_group(f1, f2)
    return DoubleElement(G, _star(G, f1.values, f2.values))


# -- coproducts --------------------------------------------------------------

def _delta_front(G, a):
    n, t = G.order, G.table
    ar = np.arange(n)
    part = a[t[:, None, :, None], ar[None, :, None, None]]
    d = n * np.eye(n)[None, :, None, :]
    return part * d.reshape(d.shape + _trailing(a, 2))


def _dual_delta_front(G, a):
    n, t = G.order, G.table
    ar = np.arange(n)
    part = a[ar[:, None, None, None], t[None, :, None, :]]
    # x2 == y1^-1 x1 y1
    mask = G.conj.T[:, :, None] == ar[None, None, :]
    d = n * mask[..., None]
    return part * d.reshape(d.shape + _trailing(a, 2))


def apply_coproduct(G, a, start=0, dual=False):
    """Apply Delta (or Delta*) to the axis pair ``(start, start+1)`` of a raw array.

    The pair is replaced by four axes ``(x1, y1, x2, y2)``; used for iterated
    coproducts such as ``(Delta (x) id) Delta``.
    """
    kernel = _dual_delta_front if dual else _delta_front
    moved = np.moveaxis(a, (start, start + 1), (0, 1))
    out = kernel(G, moved)
    return np.moveaxis(out, (0, 1, 2, 3), tuple(range(start, start + 4)))


def coproduct(f, gate=None):
    """``(Delta f)(x1,y1;x2,y2) = f(x1 x2, y1) delta_{y1}(y2)``."""
    _gate(f.group, gate)
    return TensorElement(f.group, _delta_front(f.group, f.values))


def dual_coproduct(f, gate=None):
    """``(Delta* f)(x1,y1;x2,y2) = f(x1, y1 y2) delta_{x2}(y1^-1 x1 y1)``."""
    _gate(f.group, gate)
    return TensorElement(f.group, _dual_delta_front(f.group, f.values))


# -- pointwise maps -----------------------------------------------------------

def antipode(f):
    """``(kappa f)(x,y) = f(y^-1 x^-1 y, y^-1)``."""
    G = f.group
    X = G.conj.T[G.inverse]  # X[x, y] = conj[y, x^-1]
    Y = np.broadcast_to(G.inverse[None, :], X.shape)
    return DoubleElement(G, f.values[X, Y])


def dual_antipode(f):
    """Antipode of D(G)*; the same pointwise formula as :func:`antipode`."""
    return antipode(f)


def involution_star(f):
    """``f*(x,y) = conj f(y^-1 x y, y^-1)``."""
    G = f.group
    X = G.conj.T
    Y = np.broadcast_to(G.inverse[None, :], X.shape)
    return DoubleElement(G, np.conj(f.values[X, Y]))


def involution_circ(f):
    """``f°(x,y) = conj f(x^-1, y)``."""
    return DoubleElement(f.group, np.conj(f.values[f.group.inverse]))


def counit(f):
    """``eps(f) = int f(e, y) dy``."""
    return f.values[f.group.identity].sum(axis=0) / f.group.order


def dual_counit(f):
    """``eps*(f) = int f(x, e) dx``."""
    return f.values[:, f.group.identity].sum(axis=0) / f.group.order


def units(G):
    """The units ``(1, iota)`` with ``1(x,y) = delta_e(y)`` and ``iota(x,y) = delta_e(x)``."""
    n, e = G.order, G.identity
    one = np.zeros((n, n))
    one[:, e] = n
    iota = np.zeros((n, n))
    iota[e, :] = n
    return DoubleElement(G, one), DoubleElement(G, iota)


# -- tensor algebra -----------------------------------------------------------

def tensor_product(f1, f2):
    G = _same_group(f1, f2)
    return TensorElement(G, np.multiply.outer(f1.values, f2.values))


def flip(F):
    """``F_21(x1,y1;x2,y2) = F(x2,y2;x1,y1)``."""
    return TensorElement(F.group, np.swapaxes(np.swapaxes(F.values, 0, 2), 1, 3))


def slot_map(F, op, slot):
    """Apply a map on D(G) to one tensor slot, e.g. ``(kappa (x) id) F``."""
    if slot == 0:
        out = op(DoubleElement(F.group, F.values)).values
    else:
        moved = np.moveaxis(F.values, (2, 3), (0, 1))
        out = np.moveaxis(op(DoubleElement(F.group, moved)).values, (0, 1), (2, 3))
    return TensorElement(F.group, out)


def tensor_involution(F, dual=False):
    """``(* (x) *) F`` (or ``(° (x) °) F`` when ``dual``), conjugating once."""
    op = involution_circ if dual else involution_star
    lin = lambda f: DoubleElement(f.group, np.conj(op(f).values))  # noqa: E731
    return slot_map(slot_map(F, op, 0), lin, 1)


def partial_apply(F, functional, slot):
    """Apply a linear functional to one tensor slot, e.g. ``(h* (x) id) F``.

    Returns the element left in the other slot.
    """
    vals = F.values if slot == 0 else np.moveaxis(F.values, (2, 3), (0, 1))
    return DoubleElement(F.group, np.asarray(functional(DoubleElement(F.group, vals))))


def multiply_slots(F):
    """The product map D(G) (x) D(G) -> D(G), ``f (x) g -> f . g``, extended linearly."""
    G = F.group
    n = G.order
    ar = np.arange(n)
    v = F.values[ar[None, :, None], ar[:, None, None], G.conj[:, :, None], G.ldiv[:, None, :]]
    return DoubleElement(G, v.sum(axis=0) / n)


def dual_multiply_slots(F):
    """The dual product map, ``f (x) g -> f * g``, extended linearly."""
    G = F.group
    n = G.order
    ar = np.arange(n)
    v = F.values[ar[:, None, None], ar[None, None, :], G.ldiv[:, :, None], ar[None, None, :]]
    return DoubleElement(G, v.sum(axis=0) / n)


def tensor_bullet(F1, F2, gate=None):
    """Product of D(G) (x) D(G): the bullet product applied in each slot."""
    G = _same_group(F1, F2)
    _gate(G, gate)
    n = G.order
    C, L = G.conj, G.ldiv
    a, b = F1.values, F2.values
    if a.ndim != 4 or b.ndim != 4:
        raise ValueError("tensor_bullet does not take batched tensors")
    i2 = C[None, None, :, :, None]
    i3 = L[None, None, :, None, :]
    out = np.zeros((n,) * 4, dtype=complex)
    for z1 in range(n):
        B = b[C[z1][:, None, None, None, None], L[z1][None, :, None, None, None], i2, i3]
        A = np.swapaxes(a[:, z1], 1, 2)[:, None, :, :, None]
        out += (A * B).sum(axis=2)
    return TensorElement(G, out / n**2)


def tensor_star(F1, F2, gate=None):
    """Product of D(G)* (x) D(G)*: the star product applied in each slot."""
    G = _same_group(F1, F2)
    _gate(G, gate)
    n, L = G.order, G.ldiv
    a, b = _match_batch(F1.values, F2.values)
    ar = np.arange(n)
    out = 0
    for z1 in range(n):
        for z2 in range(n):
            B = b[L[z1][:, None, None, None], ar[None, :, None, None], L[z2][None, None, :, None], ar]
            out = out + np.expand_dims(a[z1, :, z2], (0, 2)) * B
    return TensorElement(G, out / n**2)


def ribbon_element(G):
    """The ribbon element ``c(x,y) = delta_e(xy)``; central in D(G)."""
    n = G.order
    c = np.zeros((n, n))
    c[np.arange(n), G.inverse] = n
    return DoubleElement(G, c)


def canonical_elements(G, gate=None):
    """The R-matrix, ribbon element and monodromy ``(R, c, Q)``.

    ``R(x1,y1;x2,y2) = delta_e(y1) delta_e(x1 y2^-1)``, ``c(x,y) = delta_e(xy)``,
    ``Q(x1,y1;x2,y2) = delta_{y1}(x2) delta_{y2}(x2^-1 x1 x2)``.
    """
    _gate(G, gate)
    n, e = G.order, G.identity
    ar = np.arange(n)
    R = np.zeros((n,) * 4)
    R[ar, e, :, ar] = n**2
    c = ribbon_element(G).values
    Q = np.zeros((n,) * 4)
    x1, x2 = np.meshgrid(ar, ar, indexing="ij")
    Q[x1, x2, x2, G.conj[x2, x1]] = n**2
    return TensorElement(G, R), DoubleElement(G, c), TensorElement(G, Q)


def monodromy_inverse(G, gate=None):
    """``Q^-1 = R^-1 . R21^-1`` with ``R^-1 = (kappa (x) id) R``."""
    R, _, _ = canonical_elements(G, gate)
    Rinv = slot_map(R, antipode, 0)
    return tensor_bullet(Rinv, flip(Rinv), gate)


# -- invariant functionals ---------------------------------------------------

def haar(f):
    """Haar functional on D(G): ``h(f) = int f(x, e) dx``."""
    return f.values[:, f.group.identity].sum(axis=0) / f.group.order


def dual_haar(f):
    """Haar functional on D(G)*: ``h*(f) = int f(e, y) dy``."""
    return f.values[f.group.identity].sum(axis=0) / f.group.order


def _dual_basis_sum(f):
    G = f.group
    n = G.order
    total = 0.0
    for x in range(n):
        for y in range(n):
            total += star(f, DoubleElement.delta(G, x, y)).values[x, y]
    return total


def van_daele_constant(G):
    """Normalising constant of the dual-basis Haar formula, fixed on ``f = iota``."""
    iota = units(G)[1]
    return dual_haar(iota) / _dual_basis_sum(iota)


def van_daele_haar(f, const=None):
    """``h*(f)`` evaluated as ``const * sum_{x,y} (f * delta_{x,y})(x, y)``."""
    if const is None:
        const = van_daele_constant(f.group)
    return const * _dual_basis_sum(f)


def pairing(f1, f2):
    """The bilinear pairing ``<f1, f2> = int int f1 f2`` (also on tensors)."""
    G = _same_group(f1, f2)
    lead = f1._lead
    a, b = _match_batch(f1.values, f2.values)
    return (a * b).sum(axis=tuple(range(lead))) / G.order**lead


def inner_product(f1, f2):
    """Hermitian inner product ``h*(f1 * f2°) = <f1, conj f2>``."""
    G = _same_group(f1, f2)
    a, b = _match_batch(f1.values, f2.values)
    return (a * np.conj(b)).sum(axis=(0, 1)) / G.order**2


def random_element(G, rng, comm=False, size=None):
    """Random complex element, optionally supported on commuting pairs.

    ``size`` adds trailing batch axes.
    """
    shape = (G.order, G.order) + (() if size is None else tuple(np.atleast_1d(size)))
    v = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    if comm:
        v = v * G.commuting.reshape(G.commuting.shape + (1,) * (len(shape) - 2))
    return DoubleElement(G, v)
