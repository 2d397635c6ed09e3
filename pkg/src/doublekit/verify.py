"""Named numerical checks of the D(G) pipeline and the report they produce.

Every check returns a :class:`CheckResult` carrying the largest residual it
saw.  Tolerance violations become failed checks rather than exceptions, and
checks that need tensor-level arrays are skipped when ``|G|`` exceeds the
tensor gate.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import algebra as al
from . import modular as md
from .exceptions import DoubleKitError, TensorGateExceeded
from .reps import INT_TOL, QuantumDouble, fusion_oracle_tensor, projector

__all__ = ["Settings", "CheckResult", "VerificationReport", "CHECKS", "run_check", "verify_group"]


@dataclass(frozen=True)
class Settings:
    tol: float = 1e-9
    int_tol: float = INT_TOL
    seed: int = 0
    gate: int = al.TENSOR_GATE
    trials: int = 100


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str  # "pass", "fail" or "skip"
    residual: float
    elapsed: float
    detail: str = ""

    @property
    def ok(self):
        return self.status != "fail"


@dataclass
class VerificationReport:
    group: str
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.ok for c in self.checks)

    def to_dict(self):
        # elapsed times are left out so reports are reproducible byte for byte
        return {
            "passed": self.passed,
            "checks": [
                {"name": c.name, "status": c.status, "residual": c.residual, "detail": c.detail}
                for c in self.checks
            ],
        }

    def lines(self):
        for c in self.checks:
            yield f"{c.status.upper():4}  {c.name:<20} residual={c.residual:.3e}  {c.elapsed:7.3f}s  {c.detail}"


# residual recorded for a structural failure (wrong rank, unequal integers, ...)
FAILED_RESIDUAL = 1.0


class _Residual:
    """Running maximum of named residuals, each with its own tolerance."""

    def __init__(self, tol):
        self.tol = tol
        self.parts = {}
        self.tols = {}
        self.detail = ""

    def add(self, key, a, b=0.0, tol=None):
        if isinstance(a, al._Element):
            a = a.values
        if isinstance(b, al._Element):
            b = b.values
        d = np.abs(np.asarray(a) - np.asarray(b))
        res = float(d.max(initial=0.0)) if np.isfinite(d).all() else FAILED_RESIDUAL
        self.parts[key] = max(self.parts.get(key, 0.0), res)
        self.tols[key] = self.tol if tol is None else tol
        return res

    def flag(self, key, ok=False):
        """Record a pass/fail condition that has no numerical size."""
        self.add(key, 0.0 if ok else FAILED_RESIDUAL)

    def exact(self, key, a, b=0.0):
        """Record an equality that must hold with zero residual."""
        self.add(key, a, b, tol=0.0)

    @property
    def worst(self):
        return max(self.parts.values(), default=0.0)

    @property
    def failures(self):
        return [k for k, v in self.parts.items() if not v <= self.tols[k]]


def _rng(settings, tag):
    return np.random.default_rng([settings.seed, tag])


def _chunks(total, size):
    for start in range(0, total, size):
        yield min(size, total - start)


# -- criterion 1 ---------------------------------------------------------------

def check_hopf(G, D, s):
    """Hopf axioms of D(G) and of its dual on random (batched) elements."""
    al._gate(G, s.gate)
    rng = _rng(s, 1)
    r = _Residual(s.tol)
    n = G.order
    one, iota = al.units(G)
    e = G.identity
    chunk = max(1, 2_000_000 // n**6)
    for k in _chunks(s.trials, chunk):
        f, g, h = (al.random_element(G, rng, size=k) for _ in range(3))
        for prod, unit, tag in ((al.bullet, one, ""), (al.star, iota, "*")):
            r.add("assoc" + tag, prod(prod(f, g), h), prod(f, prod(g, h)))
            r.add("unit" + tag, prod(unit, f), f)
            r.add("unit" + tag, prod(f, unit), f)
        for dual, tag in ((False, ""), (True, "*")):
            cop = al.apply_coproduct(G, f.values, 0, dual)
            r.add("coassoc" + tag, al.apply_coproduct(G, cop, 0, dual), al.apply_coproduct(G, cop, 2, dual))
            F = al.TensorElement(G, cop)
            eps = al.dual_counit if dual else al.counit
            r.add("counit" + tag, al.partial_apply(F, eps, 0), f)
            r.add("counit" + tag, al.partial_apply(F, eps, 1), f)
            kap = al.dual_antipode if dual else al.antipode
            mult = al.dual_multiply_slots if dual else al.multiply_slots
            unit = iota if dual else one
            ef = eps(f)
            r.add("antipode" + tag, mult(al.slot_map(F, kap, 0)), unit.values[..., None] * ef)
            r.add("antipode" + tag, mult(al.slot_map(F, kap, 1)), unit.values[..., None] * ef)
            inv = al.involution_circ if dual else al.involution_star
            Finv = al.tensor_involution(F, dual=dual)
            r.add("coinvolution" + tag, al.apply_coproduct(G, inv(f).values, 0, dual), Finv)
        # counits are characters of the matching products
        r.add("counit-mult", al.counit(al.bullet(f, g)), al.counit(f) * al.counit(g))
        r.add("counit-mult*", al.dual_counit(al.star(f, g)), al.dual_counit(f) * al.dual_counit(g))
        r.add("counit-unit", al.counit(one), 1.0)
        r.add("counit-unit*", al.dual_counit(iota), 1.0)
        for prod, inv, tag in ((al.bullet, al.involution_star, ""), (al.star, al.involution_circ, "*")):
            r.add("involution" + tag, inv(inv(f)), f)
            r.add("involution" + tag, inv(prod(f, g)), prod(inv(g), inv(f)))
            r.add("antipode-anti" + tag, al.antipode(prod(f, g)), prod(al.antipode(g), al.antipode(f)))
        r.add("kappa-star", al.antipode(al.involution_star(al.antipode(al.involution_star(f)))), f)
        # the two structures are dual under the pairing
        hk = al.random_element(G, rng, size=k)
        for prod, dual in ((al.bullet, True), (al.star, False)):
            lhs = al.pairing(prod(f, g), hk)
            FG = al.TensorElement(G, np.einsum("ab...,cd...->abcd...", f.values, g.values))
            rhs = al.pairing(FG, al.TensorElement(G, al.apply_coproduct(G, hk.values, 0, dual)))
            r.add("duality", lhs, rhs)
    # the coproducts are algebra maps, one unbatched element at a time
    for _ in range(min(s.trials, 20)):
        f, g = al.random_element(G, rng), al.random_element(G, rng)
        r.add("bialgebra", al.coproduct(al.bullet(f, g), s.gate),
              al.tensor_bullet(al.coproduct(f, s.gate), al.coproduct(g, s.gate), s.gate))
        r.add("bialgebra*", al.dual_coproduct(al.star(f, g), s.gate),
              al.tensor_star(al.dual_coproduct(f, s.gate), al.dual_coproduct(g, s.gate), s.gate))
    r.add("unit-values", one.values[:, e], n)
    return r


# -- criterion 2 ---------------------------------------------------------------

def check_ribbon(G, D, s):
    """Quasitriangular and ribbon structure: R, c and the monodromy Q."""
    rng = _rng(s, 2)
    r = _Residual(s.tol)
    R, c, Q = al.canonical_elements(G, s.gate)
    one = al.units(G)[0]
    unit = al.TensorElement.unit(G)
    Rinv = al.slot_map(R, al.antipode, 0)
    r.exact("Q = R21.R", Q, al.tensor_bullet(al.flip(R), R, s.gate))
    Qinv = al.monodromy_inverse(G, s.gate)
    r.add("QQ^-1", al.tensor_bullet(Q, Qinv, s.gate), unit)
    r.add("QQ^-1", al.tensor_bullet(Qinv, Q, s.gate), unit)
    r.add("RR^-1", al.tensor_bullet(R, Rinv, s.gate), unit)
    r.add("ribbon", al.coproduct(c, s.gate), al.tensor_bullet(Qinv, al.tensor_product(c, c), s.gate))
    r.add("c=m(k x id)R21", c, al.multiply_slots(al.slot_map(al.flip(R), al.antipode, 0)))
    r.add("kappa(c)", al.antipode(c), c)
    for _ in range(5):
        f = al.random_element(G, rng)
        r.add("central", al.bullet(c, f), al.bullet(f, c))
        d = al.coproduct(f, s.gate)
        r.add("R Delta R^-1", al.tensor_bullet(al.tensor_bullet(R, d, s.gate), Rinv, s.gate), al.flip(d))
    r.add("unit", al.bullet(one, c), c)
    return r


# -- criterion 3 ---------------------------------------------------------------

def check_haar(G, D, s):
    """Haar functionals: normalisation, invariance and the dual-basis formula."""
    rng = _rng(s, 3)
    r = _Residual(s.tol)
    n = G.order
    one, iota = al.units(G)
    hi = al.dual_haar(iota)
    r.exact("h(1)", al.haar(one), n)
    r.exact("h*(iota)", hi, n)
    for k in _chunks(s.trials, max(1, 2_000_000 // n**4)):
        f = al.random_element(G, rng, size=k)
        F = al.TensorElement(G, al.apply_coproduct(G, f.values, 0, False))
        Fd = al.TensorElement(G, al.apply_coproduct(G, f.values, 0, True))
        hf, hdf = al.haar(f), al.dual_haar(f)
        r.add("left", al.partial_apply(F, al.haar, 1), one.values[..., None] * hf)
        r.add("right", al.partial_apply(F, al.haar, 0), one.values[..., None] * hf)
        r.add("left*", al.partial_apply(Fd, al.dual_haar, 1), iota.values[..., None] * hdf)
        r.add("right*", al.partial_apply(Fd, al.dual_haar, 0), iota.values[..., None] * hdf)
    const = al.van_daele_constant(G)
    r.add("van Daele constant", const, n**-3.0)
    r.add("van Daele iota", al.van_daele_haar(iota, const), hi)
    for _ in range(10):
        g = al.random_element(G, rng)
        r.add("van Daele", al.van_daele_haar(g, const), al.dual_haar(g))
    return r


# -- criterion 4 ---------------------------------------------------------------

def check_characters(G, D, s):
    """Orthogonality, support, conjugation invariance, cocentrality and span rank."""
    r = _Residual(s.tol)
    n = G.order
    chars = D.character_array
    L = len(D.labels)
    gram = np.einsum("axy,bxy->ab", chars, np.conj(chars)) / n**2
    r.add("orthogonality", gram, n * np.eye(L))
    r.add("support", chars[:, ~G.commuting])
    for z in range(n):
        cz = G.conj[z]
        r.add("conjugation", chars[:, cz[:, None], cz[None, :]], chars)
    sv = np.linalg.svd(chars.reshape(L, -1), compute_uv=False)
    rank = int((sv > s.tol * sv.max()).sum())
    r.flag("span rank", rank == D.pairs.num_orbits == sum(t.num_irreps for t in D.tables) == L)
    if G.order <= s.gate:
        ch = al.DoubleElement(G, np.moveaxis(chars, 0, -1))
        d = al.TensorElement(G, al.apply_coproduct(G, ch.values, 0, True))
        r.add("cocentral", al.flip(d), d)
    return r


# -- criterion 5 ---------------------------------------------------------------

def check_character_rings(G, D, s):
    """Bullet rule for characters and the projection theorem."""
    rng = _rng(s, 5)
    r = _Residual(s.tol * 10)
    n = G.order
    chars = al.DoubleElement(G, np.moveaxis(D.character_array, 0, -1))
    for a in D.labels:
        lhs = al.bullet(D.character(a).values, chars)
        rhs = np.zeros_like(lhs.values)
        rhs[..., a.index] = a.n * D.character_array[a.index]
        r.add("bullet rule", lhs, rhs)
    f = al.random_element(G, rng, size=4)
    total = 0
    for a in D.labels:
        Pf = projector(D, a, f)
        total = total + Pf.values
        r.add("idempotent", projector(D, a, Pf), Pf)
        for b in D.labels:
            if b.index != a.index:
                r.add("annihilation", projector(D, b, Pf))
    r.add("completeness", total, f)
    # rank of each projector on the delta basis
    deltas = np.zeros((n, n, n * n), dtype=complex)
    ar = np.arange(n * n)
    deltas[ar // n, ar % n, ar] = n**2
    basis = al.DoubleElement(G, deltas)
    for a in D.labels:
        img = projector(D, a, basis).values.reshape(n * n, n * n)
        sv = np.linalg.svd(img, compute_uv=False)
        rank = int((sv > 1e-8 * sv.max()).sum())
        r.flag("projector rank", rank == a.dim**2)
    return r


# -- criterion 6 ---------------------------------------------------------------

def check_convolution(G, D, s):
    """Convolution theorem, its S^-1 corollary and the J1, J2, U analogues."""
    rng = _rng(s, 6)
    r = _Residual(s.tol)
    S, Si = md.fourier_S, md.inverse_fourier_S
    f = al.random_element(G, rng, comm=True, size=s.trials)
    g = al.random_element(G, rng, size=s.trials)
    gc = al.random_element(G, rng, comm=True, size=s.trials)
    bl, st = al.bullet, al.star
    r.add("S(f*g)", S(st(f, g)), bl(S(f), S(g)))
    r.add("S(f.g)", S(bl(f, g)), st(S(g), S(f)))
    r.add("S^-1(f.g)", Si(bl(f, g)), st(Si(f), Si(g)))
    r.add("S^-1(g*f)", Si(st(g, f)), bl(Si(f), Si(g)))
    r.add("J1", bl(md.j1(f), md.j1(g)), md.j1(bl(f, g)))
    r.add("J1 general", bl(md.j1(g), md.j1(gc)), md.j1(bl(g, gc)))
    r.add("U star", st(md.swap_U(f), md.swap_U(g)), md.swap_U(bl(f, g)))
    r.add("U bullet", bl(md.swap_U(f), md.swap_U(g)), md.swap_U(st(f, g)))
    r.add("J2", bl(md.j2(f), md.j2(gc)), md.j2(bl(gc, f)))
    r.add("U = S o J2", md.swap_U(g), S(md.j2(g)))
    r.add("U = J1 o S", md.swap_U(g), md.j1(S(g)))
    r.add("S^4", S(S(S(S(g)))), g)
    r.add("S^-1 S", Si(S(g)), g)
    r.add("T = c.", md.ribbon_T(g), bl(al.ribbon_element(G), g))
    r.add("T^-1 T", md.inverse_ribbon_T(md.ribbon_T(g)), g)
    ip = al.inner_product(g, g)
    r.add("S unitary", al.inner_product(S(g), S(g)), ip)
    r.add("T unitary", al.inner_product(md.ribbon_T(g), md.ribbon_T(g)), ip)
    Sf = S(f)
    r.add("S keeps G_comm", Sf.values[~G.commuting])
    # SL(2,Z) action on random words
    gens = (np.array(md.S_GENERATOR), np.array(md.T_GENERATOR))
    r.add("sl2z S", md.sl2z_action(gens[0], f), S(f))
    r.add("sl2z T", md.sl2z_action(gens[1], f), md.ribbon_T(f))
    for _ in range(10):
        M = np.eye(2, dtype=int)
        h = f
        for w in rng.integers(0, 2, 6):
            h = md.sl2z_action(gens[w], h)
            M = gens[w] @ M
        r.add("sl2z word", h, md.sl2z_action(M, f))
    return r


# -- criterion 7 ---------------------------------------------------------------

def check_lyubashenko(G, D, s):
    """R-matrix Fourier transform: both evaluation paths, S o kappa, S^-1 on characters."""
    rng = _rng(s, 7)
    r = _Residual(s.tol)
    g = al.random_element(G, rng, size=s.trials)
    closed = md.lyubashenko_S(g)
    r.add("closed = S o kappa", closed, md.fourier_S(al.antipode(g)))
    f = al.random_element(G, rng, comm=True, size=s.trials)
    r.add("S~ = S^-1 on G_comm", md.lyubashenko_S(f), md.inverse_fourier_S(f))
    detail = ""
    if G.order <= s.gate:
        for k in g.unbatch()[:5]:
            r.add("tensor = closed", md.lyubashenko_S(k, "tensor", s.gate), md.lyubashenko_S(k))
    else:
        detail = "tensor path skipped above gate"
    St = md.character_basis_matrix(D, md.lyubashenko_S)
    Tt = md.character_basis_matrix(D, md.inverse_ribbon_T)
    X = St @ Tt
    r.add("(S~T~)^3 = S~^2", X @ X @ X, St @ St)
    Sm = md.s_matrix(D)
    r.add("S~ = S^-1 (matrix)", St @ Sm, np.eye(len(D.labels)))
    r.detail = detail
    return r


# -- criterion 8 ---------------------------------------------------------------

def check_modular(G, D, s):
    """S, T and U matrices and the modular relations on the character basis."""
    r = _Residual(s.tol)
    L = len(D.labels)
    I = np.eye(L)
    S = md.s_matrix(D)
    r.add("S pairing = explicit", S, md.s_matrix(D, "explicit"))
    r.add("symmetric", S, S.T)
    r.add("unitary", S @ S.conj().T, I)
    Tfull = md.character_basis_matrix(D, md.ribbon_T)
    Tdiag = np.diag(Tfull)
    r.add("T diagonal", Tfull - np.diag(Tdiag))
    r.add("theta", Tdiag, md.twists(D))
    r.add("|theta| = 1", np.abs(Tdiag), 1.0)
    T = np.diag(Tdiag)
    ST = S @ T
    r.add("(ST)^3 = S^2", ST @ ST @ ST, S @ S)
    C = S @ S
    r.add("S^4", C @ C, I)
    Cr = np.rint(C.real)
    r.add("S^2 permutation", C, Cr)
    r.flag("S^2 0/1", np.isin(Cr, (0, 1)).all() and (Cr.sum(axis=0) == 1).all() and (Cr.sum(axis=1) == 1).all())
    ns = np.array([l.n for l in D.labels])
    r.add("first row = 1/n", S[0], 1.0 / ns)
    r.flag("n integer", all(l.centralizer_order % l.d_alpha == 0 for l in D.labels))
    # expansion S chi_a = sum_b S[b, a] chi_b on the function level
    chars = np.moveaxis(D.character_array, 0, -1)
    Schar = md.fourier_S(al.DoubleElement(G, chars)).values
    r.add("S expansion", Schar, chars @ S)
    U = md.u_matrix(D)
    r.add("U pairing = explicit", U, md.u_matrix(D, "explicit"))
    r.add("U = S conj", U, S[:, md.conjugate_permutation(D)])
    r.add("conj U^T = U^-1", U.conj().T @ U, I)
    return r


# -- criterion 9 ---------------------------------------------------------------

Z2_S = 0.5 * np.array([[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]])
Z2_T = np.array([1, 1, 1, -1])
S3_DIMS = [1, 1, 2, 2, 2, 2, 3, 3]


def check_reference_tables(G, D, s):
    """Hand-computed tables for D(Z2) and D(S3), independent of the input group."""
    from .groups import builtin_group

    r = _Residual(min(s.tol, 1e-12))
    z2 = QuantumDouble(builtin_group("Z2"), seed=s.seed)
    r.add("Z2 S", md.s_matrix(z2), Z2_S)
    r.add("Z2 S explicit", md.s_matrix(z2, "explicit"), Z2_S)
    r.add("Z2 T", md.t_matrix(z2), Z2_T)
    s3 = QuantumDouble(builtin_group("S3"), seed=s.seed)
    dims = sorted(l.dim for l in s3.labels)
    r.flag("S3 dims", dims == S3_DIMS and sum(d * d for d in dims) == 36)
    return r


# -- criterion 10 --------------------------------------------------------------

def check_verlinde(G, D, s):
    """Verlinde fusion (S and U forms) against the star-product oracle."""
    r = _Residual(s.tol)
    S = md.s_matrix(D)
    U = md.u_matrix(D)
    N, rv = md.verlinde_fusion(S, D.labels, int_tol=s.int_tol, tol=s.tol)
    Nu, ru = md.verlinde_fusion_u(U, D.labels, int_tol=s.int_tol, tol=s.tol)
    No, ro = fusion_oracle_tensor(D, int_tol=s.int_tol)
    # pre-rounding residuals are judged against the integer tolerance
    r.add("rounding", max(rv, ru, ro), tol=s.int_tol)
    r.exact("S-form = oracle", N, No)
    r.exact("U-form = oracle", Nu, No)
    L = len(D.labels)
    r.add("vacuum fusion", N[0], np.eye(L))
    r.add("commutative", N, np.swapaxes(N, 0, 1))
    C = np.rint((S @ S).real).astype(int)
    r.add("charge conjugation", np.einsum("abc,cd->abd", N, C), np.einsum("ae,bf,efc->abc", C, C, N))
    dims = np.array([l.dim for l in D.labels])
    r.add("dimensions", np.einsum("abc,c->ab", N, dims), np.outer(dims, dims))
    # diagonalised fusion rules on the function level
    chars = al.DoubleElement(G, np.moveaxis(D.character_array, 0, -1))
    v = md.inverse_fourier_S(chars)  # batch over b
    for a in D.labels:
        lhs = al.star(D.character(a).values, v)
        r.add("diagonalisation", lhs, v.values * (S[a.index] / S[0]))
    return r


# -- criterion 11 --------------------------------------------------------------

def check_determinism(G, D, s):
    """Two independent pipeline runs serialise to identical bytes."""
    from .serialize import dumps_json, modular_document

    r = _Residual(s.tol)
    blobs = []
    for _ in range(2):
        fresh = QuantumDouble(G, seed=s.seed)
        data = md.modular_data(fresh, int_tol=s.int_tol, tol=s.tol)
        blobs.append(dumps_json(modular_document(G, fresh, data)).encode())
    r.flag("bytes", blobs[0] == blobs[1])
    return r


CHECKS = {
    "hopf_axioms": check_hopf,
    "ribbon": check_ribbon,
    "haar": check_haar,
    "characters": check_characters,
    "character_rings": check_character_rings,
    "convolution": check_convolution,
    "lyubashenko": check_lyubashenko,
    "modular_matrices": check_modular,
    "reference_tables": check_reference_tables,
    "verlinde": check_verlinde,
    "determinism": check_determinism,
}

def run_check(name, G, D=None, settings=None):
    """Run one named check and wrap its outcome."""
    s = settings or Settings()
    D = D if D is not None else QuantumDouble(G, seed=s.seed)
    t0 = time.perf_counter()
    try:
        r = CHECKS[name](G, D, s)
    except TensorGateExceeded as exc:
        return CheckResult(name, "skip", 0.0, time.perf_counter() - t0, str(exc))
    except DoubleKitError as exc:
        return CheckResult(name, "fail", FAILED_RESIDUAL, time.perf_counter() - t0, f"{type(exc).__name__}: {exc}")
    elapsed = time.perf_counter() - t0
    bad = r.failures
    detail = r.detail
    if bad:
        detail = (detail + "; " if detail else "") + "failed: " + ", ".join(bad)
    return CheckResult(name, "fail" if bad else "pass", r.worst, elapsed, detail)


def verify_group(G, D=None, settings=None, names=None):
    """Run every check (or the ``names`` given) and collect a report."""
    s = settings or Settings()
    D = D if D is not None else QuantumDouble(G, seed=s.seed)
    report = VerificationReport(group=G.name)
    for name in names or CHECKS:
        report.checks.append(run_check(name, G, D, s))
    return report
