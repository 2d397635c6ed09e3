import numpy as np
import pytest

from doublekit import algebra as al
from doublekit import modular as md
from doublekit.exceptions import (
    NonIntegerFusion, NotDiagonal, NotUnimodular, TensorGateExceeded, UnsupportedOutsideComm, ZeroFirstRow,
)
from doublekit.groups import builtin_group
from doublekit.reps import fusion_oracle_tensor, quantum_double

from .conftest import ALL_GROUPS

# hand evaluation of the explicit S formula for D(Z2), labels (e,+), (e,-), (g,+), (g,-)
Z2_S = 0.5 * np.array([[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]])
Z2_T = np.array([1, 1, 1, -1])


@pytest.fixture(scope="module", params=ALL_GROUPS)
def mdata(request):
    D = quantum_double(builtin_group(request.param))
    return D, md.modular_data(D)


# -- pointwise operators --------------------------------------------------------------

def test_pointwise_formulas(rng):
    G = builtin_group("S3")
    f = al.random_element(G, rng)
    v, inv, m = f.values, G.inverse, G.mul
    for x in range(G.order):
        for y in range(G.order):
            assert md.fourier_S(f).values[x, y] == v[y, inv[x]]
            assert md.inverse_fourier_S(f).values[x, y] == v[inv[y], x]
            assert md.ribbon_T(f).values[x, y] == v[x, m(x, y)]
            assert md.inverse_ribbon_T(f).values[x, y] == v[x, m(int(inv[x]), y)]
            assert md.swap_U(f).values[x, y] == v[y, x]
            assert md.j1(f).values[x, y] == v[inv[x], y]
            assert md.j2(f).values[x, y] == v[x, inv[y]]
            assert md.lyubashenko_S(f).values[x, y] == v[m(m(x, int(inv[y])), int(inv[x])), x]


def test_operator_inverses_and_orders(any_group, rng):
    G = any_group
    f = al.random_element(G, rng)
    S = md.fourier_S
    np.testing.assert_array_equal(S(S(S(S(f)))).values, f.values)
    np.testing.assert_array_equal(md.inverse_fourier_S(S(f)).values, f.values)
    np.testing.assert_array_equal(md.inverse_ribbon_T(md.ribbon_T(f)).values, f.values)
    for op in (md.swap_U, md.j1, md.j2):
        np.testing.assert_array_equal(op(op(f)).values, f.values)


def test_u_composition(any_group, rng):
    # U = S o J2 = J1 o S (right-to-left composition)
    G = any_group
    f = al.random_element(G, rng)
    u, _, _ = md.j_ops(f)
    np.testing.assert_array_equal(md.fourier_S(md.j2(f)).values, u.values)
    np.testing.assert_array_equal(md.j1(md.fourier_S(f)).values, u.values)


def test_unitary_operators(any_group, rng):
    G = any_group
    f = al.random_element(G, rng)
    ip = al.inner_product(f, f)
    for op in (md.fourier_S, md.ribbon_T, md.swap_U, md.j1, md.j2, md.lyubashenko_S):
        assert abs(al.inner_product(op(f), op(f)) - ip) < 1e-9


def test_t_is_ribbon_multiplication(any_group, rng):
    G = any_group
    f = al.random_element(G, rng)
    np.testing.assert_allclose(md.ribbon_T(f).values, al.bullet(al.ribbon_element(G), f).values, atol=1e-10)


def test_convolution_theorem(any_group, rng):
    G = any_group
    f = al.random_element(G, rng, comm=True, size=10)
    g = al.random_element(G, rng, size=10)
    S, Si, bl, st = md.fourier_S, md.inverse_fourier_S, al.bullet, al.star
    np.testing.assert_allclose(S(st(f, g)).values, bl(S(f), S(g)).values, atol=1e-9)
    np.testing.assert_allclose(S(bl(f, g)).values, st(S(g), S(f)).values, atol=1e-9)
    np.testing.assert_allclose(Si(bl(f, g)).values, st(Si(f), Si(g)).values, atol=1e-9)
    np.testing.assert_allclose(Si(st(g, f)).values, bl(Si(f), Si(g)).values, atol=1e-9)


def test_convolution_theorem_needs_commuting_support():
    # with f off G_comm the first identity fails, so the hypothesis matters
    G = builtin_group("S3")
    r = np.random.default_rng(0)
    f, g = al.random_element(G, r), al.random_element(G, r)
    S = md.fourier_S
    assert np.abs(S(al.star(f, g)).values - al.bullet(S(f), S(g)).values).max() > 1e-3


def test_j_and_u_analogues(any_group, rng):
    G = any_group
    f = al.random_element(G, rng, comm=True, size=10)
    fc = al.random_element(G, rng, comm=True, size=10)
    g = al.random_element(G, rng, size=10)
    bl, st = al.bullet, al.star
    np.testing.assert_allclose(bl(md.j1(f), md.j1(g)).values, md.j1(bl(f, g)).values, atol=1e-9)
    np.testing.assert_allclose(st(md.swap_U(f), md.swap_U(g)).values, md.swap_U(bl(f, g)).values, atol=1e-9)
    np.testing.assert_allclose(bl(md.swap_U(f), md.swap_U(g)).values, md.swap_U(st(f, g)).values, atol=1e-9)
    np.testing.assert_allclose(bl(md.j2(f), md.j2(fc)).values, md.j2(bl(fc, f)).values, atol=1e-9)


def test_s_preserves_commuting_support(any_group, rng):
    G = any_group
    f = al.random_element(G, rng, comm=True)
    assert md.fourier_S(f).supported_on_comm()
    assert md.ribbon_T(f).supported_on_comm()


# -- SL(2,Z) action -------------------------------------------------------------------

def test_sl2z_generators(any_group, rng):
    G = any_group
    f = al.random_element(G, rng, comm=True)
    np.testing.assert_array_equal(md.sl2z_action(np.eye(2, dtype=int), f).values, f.values)
    np.testing.assert_array_equal(md.sl2z_action(md.S_GENERATOR, f).values, md.fourier_S(f).values)
    np.testing.assert_array_equal(md.sl2z_action(md.T_GENERATOR, f).values, md.ribbon_T(f).values)


def test_sl2z_words(rng):
    G = builtin_group("Q8")
    f = al.random_element(G, rng, comm=True)
    gens = [np.array(md.S_GENERATOR), np.array(md.T_GENERATOR), np.array([[1, 0], [-1, 1]])]
    for _ in range(20):
        word = rng.integers(0, 3, 6)
        h, M = f, np.eye(2, dtype=int)
        for w in word:
            h = md.sl2z_action(gens[w], h)
            M = gens[w] @ M
        np.testing.assert_array_equal(h.values, md.sl2z_action(M, f).values)


def test_sl2z_relations_on_functions(rng):
    # on G_comm the generators satisfy S^2 = (ST)^3 as functions too
    G = builtin_group("S3")
    f = al.random_element(G, rng, comm=True)
    S = np.array(md.S_GENERATOR)
    ST = S @ np.array(md.T_GENERATOR)
    lhs = md.sl2z_action(np.linalg.matrix_power(ST, 3), f)
    np.testing.assert_array_equal(lhs.values, md.sl2z_action(S @ S, f).values)


def test_sl2z_errors(rng):
    G = builtin_group("S3")
    with pytest.raises(NotUnimodular):
        md.sl2z_action([[2, 0], [0, 1]], al.random_element(G, rng, comm=True))
    with pytest.raises(UnsupportedOutsideComm):
        md.sl2z_action(md.S_GENERATOR, al.random_element(G, rng))


# -- Lyubashenko transform ------------------------------------------------------------------

@pytest.mark.parametrize("name", ["trivial", "Z2", "Z3", "S3", "Q8"])
def test_lyubashenko_paths_agree(name, rng):
    G = builtin_group(name)
    for _ in range(3):
        f = al.random_element(G, rng)
        closed = md.lyubashenko_S(f)
        np.testing.assert_allclose(md.lyubashenko_S(f, "tensor").values, closed.values, atol=1e-9)
        np.testing.assert_allclose(md.fourier_S(al.antipode(f)).values, closed.values, atol=1e-12)


def test_lyubashenko_is_s_inverse_on_commuting_pairs(any_group, rng):
    G = any_group
    f = al.random_element(G, rng, comm=True)
    np.testing.assert_allclose(md.lyubashenko_S(f).values, md.inverse_fourier_S(f).values, atol=1e-12)


def test_lyubashenko_modular_relation(any_double):
    D = any_double
    St = md.character_basis_matrix(D, md.lyubashenko_S)
    Tt = md.character_basis_matrix(D, md.inverse_ribbon_T)
    X = St @ Tt
    np.testing.assert_allclose(X @ X @ X, St @ St, atol=1e-9)
    np.testing.assert_allclose(St, np.linalg.inv(md.s_matrix(D)), atol=1e-9)


def test_lyubashenko_gate():
    G = builtin_group("S4")
    f = al.DoubleElement.zeros(G)
    with pytest.raises(TensorGateExceeded):
        md.lyubashenko_S(f, "tensor")
    assert md.lyubashenko_S(f).values.shape == (24, 24)
    with pytest.raises(ValueError):
        md.lyubashenko_S(f, "other")


# -- matrices on the character basis ----------------------------------------------------------

def test_z2_tables():
    D = quantum_double(builtin_group("Z2"))
    np.testing.assert_allclose(md.s_matrix(D), Z2_S, atol=1e-12)
    np.testing.assert_allclose(md.s_matrix(D, "explicit"), Z2_S, atol=1e-12)
    np.testing.assert_allclose(md.t_matrix(D), Z2_T, atol=1e-12)


def test_trivial_group():
    D = quantum_double(builtin_group("trivial"))
    data = md.modular_data(D)
    np.testing.assert_allclose(data.S, [[1]])
    np.testing.assert_allclose(data.T, [1])
    np.testing.assert_allclose(data.U, [[1]])
    assert data.fusion.tolist() == [[[1]]]


@pytest.mark.parametrize("name", ["Z3", "Z4", "Klein4"])
def test_abelian_s_closed_form(name):
    # S[(h, psi), (g, chi)] = conj(chi(h) psi(g)) / |G|
    D = quantum_double(builtin_group(name))
    S = md.s_matrix(D)
    for a in D.labels:
        chi = D.centralizer_character(a.A, a.alpha)
        for b in D.labels:
            psi = D.centralizer_character(b.A, b.alpha)
            expected = np.conj(chi[b.class_rep] * psi[a.class_rep]) / D.group.order
            assert abs(S[b.index, a.index] - expected) < 1e-12


def test_s_pairing_equals_explicit(mdata):
    D, data = mdata
    np.testing.assert_allclose(data.S, md.s_matrix(D, "explicit"), atol=1e-9)


def test_s_expansion(mdata):
    D, data = mdata
    chars = np.moveaxis(D.character_array, 0, -1)
    Schar = md.fourier_S(al.DoubleElement(D.group, chars)).values
    np.testing.assert_allclose(Schar, chars @ data.S, atol=1e-9)


def test_s_symmetric_unitary(mdata):
    _, data = mdata
    S = data.S
    np.testing.assert_allclose(S, S.T, atol=1e-9)
    np.testing.assert_allclose(S @ S.conj().T, np.eye(len(S)), atol=1e-9)


def test_modular_relations(mdata):
    _, data = mdata
    S, T = data.S, np.diag(data.T)
    I = np.eye(len(S))
    ST = S @ T
    np.testing.assert_allclose(ST @ ST @ ST, S @ S, atol=1e-9)
    np.testing.assert_allclose(np.linalg.matrix_power(S, 4), I, atol=1e-9)
    np.testing.assert_allclose(S @ S, data.C, atol=1e-9)
    assert set(np.unique(data.C)) <= {0, 1}
    np.testing.assert_array_equal(data.C @ data.C, I)
    np.testing.assert_array_equal(data.C.sum(axis=0), 1)


def test_first_row(mdata):
    D, data = mdata
    ns = np.array([l.n for l in D.labels])
    np.testing.assert_allclose(data.S[0], 1.0 / ns, atol=1e-12)
    assert (data.S[0].real > 0).all()


def test_t_matrix(mdata):
    D, data = mdata
    full = md.t_matrix(D, full=True)
    np.testing.assert_allclose(full, np.diag(data.T), atol=1e-9)
    np.testing.assert_allclose(data.T, md.twists(D), atol=1e-9)
    np.testing.assert_allclose(np.abs(data.T), 1, atol=1e-9)
    assert abs(data.T[0] - 1) < 1e-12


def test_t_diagonality_is_checked(monkeypatch):
    D = quantum_double(builtin_group("S3"))
    monkeypatch.setattr(md, "ribbon_T", md.fourier_S)
    with pytest.raises(NotDiagonal):
        md.t_matrix(D)


def test_u_matrix(mdata):
    D, data = mdata
    U = data.U
    np.testing.assert_allclose(U, md.u_matrix(D, "explicit"), atol=1e-9)
    np.testing.assert_allclose(U, data.S[:, md.conjugate_permutation(D)], atol=1e-9)
    np.testing.assert_allclose(U.conj().T @ U, np.eye(len(U)), atol=1e-9)
    np.testing.assert_allclose(U.conj(), U.T, atol=1e-9)


def test_u_column_equals_s_column_for_real_characters():
    # in S3 the identity and transposition classes have real centralizer characters,
    # only the trivial character of the 3-cycle centralizer Z3 is real
    D = quantum_double(builtin_group("S3"))
    U, S = md.u_matrix(D), md.s_matrix(D)
    real = [l.index for l in D.labels if np.abs(D.centralizer_character(l.A, l.alpha).imag).max() < 1e-12]
    assert len(real) == 6  # 3 + 2 + the trivial Z3 character
    np.testing.assert_allclose(U[:, real], S[:, real], atol=1e-12)
    assert np.abs(U - S).max() > 0.1


def test_u_differs_from_s_with_complex_characters():
    D = quantum_double(builtin_group("Z3"))
    assert np.abs(md.u_matrix(D) - md.s_matrix(D)).max() > 0.1


# -- Verlinde formula ---------------------------------------------------------------------------

def test_verlinde_matches_oracle(mdata):
    D, data = mdata
    No, _ = fusion_oracle_tensor(D)
    np.testing.assert_array_equal(data.fusion, No)
    assert data.fusion_residual < 1e-6
    Nu, ru = md.verlinde_fusion_u(data.U, D.labels)
    np.testing.assert_array_equal(Nu, No)
    assert ru < 1e-6


def test_verlinde_commutes_with_charge_conjugation(mdata):
    _, data = mdata
    N, C = data.fusion, data.C
    np.testing.assert_array_equal(np.einsum("abc,cd->abd", N, C), np.einsum("ae,bf,efc->abc", C, C, N))


def test_verlinde_z2_fermion():
    D = quantum_double(builtin_group("Z2"))
    N, _ = md.verlinde_fusion(Z2_S, D.labels)
    psi = 3
    assert N[psi, psi].tolist() == [1, 0, 0, 0]


def test_diagonalised_fusion(mdata):
    # chi_a * (S^-1 chi_b) = (S_ab / S_0b) S^-1 chi_b
    D, data = mdata
    S = data.S
    chars = al.DoubleElement(D.group, np.moveaxis(D.character_array, 0, -1))
    v = md.inverse_fourier_S(chars)
    for a in D.labels:
        lhs = al.star(D.character(a).values, v).values
        np.testing.assert_allclose(lhs, v.values * (S[a.index] / S[0]), atol=1e-8)


def test_verlinde_errors():
    D = quantum_double(builtin_group("Z2"))
    bad = Z2_S.copy()
    bad[0, 1] = 0
    with pytest.raises(ZeroFirstRow):
        md.verlinde_fusion(bad, D.labels)
    noisy = Z2_S + 1e-3 * np.eye(4)
    with pytest.raises(NonIntegerFusion):
        md.verlinde_fusion(noisy, D.labels)


def test_fusion_tolerance_is_configurable():
    D = quantum_double(builtin_group("Z2"))
    noisy = Z2_S + 1e-8
    N, resid = md.verlinde_fusion(noisy, D.labels, int_tol=1e-6)
    assert 0 < resid < 1e-6
    with pytest.raises(NonIntegerFusion):
        md.verlinde_fusion(noisy, D.labels, int_tol=1e-12)
