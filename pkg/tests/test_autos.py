import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from locsym.autos import (
    InvariantViolation, TruncEndo, batch_automorphism_check, center_mod_inn_dimension, family,
    group_commutator, induced_graded_action, inn_membership, inner_auto, inner_auto_direct,
    is_automorphism, truncated_inverse, unipotent_element,
)
from locsym.families import build_B, build_F3
from locsym.field import GF
from locsym.linalg import identity, inverse
from locsym.torus import diagonal_map, diagonal_torus_rank
from locsym.families import FamilySpec, rewrite_B

F3 = GF(1)
F9 = GF(2)

params3 = st.lists(st.integers(0, 2), min_size=9, max_size=9)
params9 = st.lists(st.integers(0, 8), min_size=9, max_size=9)


def one_hot(k, v=1):
    p = [0] * 9
    p["abcdefghi".index(k)] = v
    return p


def entry(fam, phi, row, col):
    return int(phi.matrix[fam.labels.index(row), fam.labels.index(col)])


# -- automorphism test ----------------------------------------------------------------------

def test_identity_and_diagonal_on_B():
    B = build_B(F9)
    assert is_automorphism(B, identity(9))
    sys = rewrite_B(F9)
    rng = np.random.default_rng(0)
    for _ in range(5):
        s, u = (F9.element(int(c)) for c in rng.integers(1, 9, size=2))
        assert is_automorphism(B, diagonal_map(sys, [s, u]))


def test_shear_on_B_is_not_an_automorphism():
    B = build_B(F9)
    M = identity(9)
    # X -> X + Y: column of X gains a Y entry
    M[B.index("Y"), B.index("X")] = 1
    ok, why = is_automorphism(B, M, reason=True)
    assert not ok and why


def test_singular_map_rejected():
    B = build_B(F9)
    M = identity(9)
    M[:, B.index("X")] = 0
    ok, why = is_automorphism(B, M, reason=True)
    assert not ok and "singular" in why


# -- inner automorphisms --------------------------------------------------------------------

def test_inner_of_zero_is_identity():
    a = build_F3(0, 0, F9)
    assert inner_auto(a, np.zeros(9, dtype=np.int64)).is_identity()


@pytest.mark.parametrize("eps", [1, 2, 5])
def test_inner_on_F3_zero(eps):
    a = build_F3(0, 0, F9)
    e = F9.element(eps)
    phi = inner_auto(a, a.element({"x": e}))
    want = a.element({"y": 1, "xy": -e, "yx": e, "xyx": -(e * e)})
    assert np.array_equal(phi(a.element("y")), want)


@pytest.mark.parametrize("eps", [1, 2, 7])
def test_inner_on_B(eps):
    B = build_B(F9)
    e = F9.element(eps)
    phi = inner_auto(B, B.element({"Y": e}))
    want = B.element({"X": 1, "XY": 2 * e, "XY^2": 2 * e * e})
    assert np.array_equal(phi(B.element("X")), want)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 8), min_size=8, max_size=8), st.booleans())
def test_inner_formula_matches_conjugation(coeffs, use_B):
    a = build_B(F9) if use_B else build_F3(0, 0, F9)
    u = np.array([0] + coeffs, dtype=np.int64)  # unit coefficient 0: u in J
    phi = inner_auto(a, u)
    assert np.array_equal(phi.full(), inner_auto_direct(a, u))
    assert is_automorphism(a, phi)


# -- the families ----------------------------------------------------------------------------

def test_all_zero_is_identity():
    for tag in ("H3_U", "H2_U"):
        assert unipotent_element(tag, [0] * 9).is_identity()


def test_H3_b_column():
    fam = family("H3_U", F9)
    b = F9.element(5)
    phi = unipotent_element(fam, one_hot("b", b))
    assert entry(fam, phi, "xy-yx", "x") == b.value
    assert entry(fam, phi, "yxy", "x") == (-(b * b)).value
    assert entry(fam, phi, "yxy", "xy-yx") == (-2 * b).value


def test_H2_f_entries():
    fam = family("H2_U", F9)
    f = F9.element(7)
    phi = unipotent_element(fam, one_hot("f", f))
    assert entry(fam, phi, "xy", "y") == f.value
    assert entry(fam, phi, "x^2y", "xy") == f.value
    assert entry(fam, phi, "x^2y^2", "y^2") == (-(f * f)).value


def test_displayed_H3_matrix_fails_at_a():
    # as displayed, the yxy-coefficient of phi(x) omits the a^2 term
    with pytest.raises(InvariantViolation, match="not an automorphism"):
        unipotent_element("H3_U", one_hot("a"), verbatim=True)
    with pytest.raises(InvariantViolation):
        unipotent_element("H3_U", one_hot("e"), verbatim=True)
    unipotent_element("H3_U", one_hot("a"))


def test_displayed_H2_matrix_fails_at_bf():
    p = one_hot("b")
    p[5] = 1  # f
    with pytest.raises(InvariantViolation):
        unipotent_element("H2_U", p, verbatim=True)
    unipotent_element("H2_U", p)


@pytest.mark.parametrize("tag", ["H3_U", "H2_U"])
def test_exhaustive_gf3_automorphisms(tag):
    fam = family(tag)
    mats = fam.batch_matrices(fam.all_params())
    assert batch_automorphism_check(fam, mats).all()
    verbatim = batch_automorphism_check(fam, fam.batch_matrices(fam.all_params(), verbatim=True))
    assert not verbatim.all()


@pytest.mark.parametrize("tag", ["H3_U", "H2_U"])
def test_batch_check_agrees_with_single_check(tag):
    fam = family(tag)
    rng = np.random.default_rng(7)
    P = rng.integers(0, 3, size=(40, 9))
    for verbatim in (False, True):
        mask = batch_automorphism_check(fam, fam.batch_matrices(P, verbatim))
        single = [is_automorphism(fam.algebra, fam.element(list(p), verbatim)) for p in P]
        assert mask.tolist() == single


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["H3_U", "H2_U"]), params9)
def test_gf9_instances_are_automorphisms(tag, p):
    fam = family(tag, F9)
    assert is_automorphism(fam.algebra, fam.element([F9.element(c) for c in p]))


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(["H3_U", "H2_U"]), params3)
def test_parameters_are_read_back(tag, p):
    fam = family(tag)
    assert fam.params_of(fam.element(p)) == tuple(p)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(["H3_U", "H2_U"]), params3, params3)
def test_family_closed_under_composition(tag, p, q):
    fam = family(tag)
    prod = fam.element(p).compose(fam.element(q))
    assert fam.params_of(prod) is not None


# -- inverse and commutators -------------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["H3_U", "H2_U"]), params3)
def test_truncated_inverse(tag, p):
    fam = family(tag)
    phi = fam.element(p)
    inv = truncated_inverse(phi)
    assert np.array_equal(inv.matrix, inverse(F3, phi.matrix))
    assert phi.compose(inv).is_identity()


def test_plus_sign_inverse_is_wrong():
    fam = family("H3_U")
    phi = fam.element(one_hot("b"))
    N = phi.nilpart
    plus = F3.add(F3.add(identity(8), N), F3.matmul(N, N))
    assert not np.array_equal(F3.matmul(phi.matrix, plus), identity(8))


def test_commutator_with_identity():
    fam = family("H3_U")
    phi = fam.element([1, 2, 0, 1, 1, 2, 0, 0, 1])
    assert group_commutator(phi, fam.element([0] * 9)).is_identity()


def test_H3_commutator_example():
    fam = family("H3_U")
    c = group_commutator(fam.element(one_hot("a")), fam.element(one_hot("e")))
    assert entry(fam, c, "xyx", "x") == 1


def test_H2_commutator_example():
    fam = family("H2_U")
    c = group_commutator(fam.element(one_hot("b")), fam.element(one_hot("f")))
    assert entry(fam, c, "x^2y", "x") == 2


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(["H3_U", "H2_U"]), params9, params9)
def test_commutator_closed_form_gf9(tag, p, q):
    fam = family(tag, F9)
    phi = fam.element([F9.element(c) for c in p])
    tau = fam.element([F9.element(c) for c in q])
    group_commutator(phi, tau, check=True)


def test_commutator_requires_triple_nilpotency():
    B = build_B(F9)
    fam = family("H2_U", F9)
    m = identity(8)
    m[1, 0] = 1  # x -> x + y, nilpotent part of length one in the top layer
    phi = TruncEndo(B, fam.jbasis, m)
    with pytest.raises(InvariantViolation):
        group_commutator(phi, TruncEndo(B, fam.jbasis, m.T.copy()))


# -- inner membership --------------------------------------------------------------------------

def test_inn_membership_examples():
    h3, h2 = family("H3_U"), family("H2_U")
    assert inn_membership(h3, h3.element([0] * 9))
    assert not inn_membership(h3, h3.element(one_hot("d")))
    phi = h2.inner((1, 0, 0))
    p = h2.params_of(phi)
    assert p is not None and inn_membership(h2, phi)
    a, b, c, d, e, f, g, h, i = p
    assert c == (-b * b) % 3 and g == (-f * f) % 3


@pytest.mark.parametrize("tag", ["H3_U", "H2_U"])
def test_inner_set_lies_in_family(tag):
    fam = family(tag)
    assert len(fam._inner_set) == 27
    for key, eps in fam._inner_set.items():
        phi = fam.inner(eps)
        assert fam.params_of(phi) is not None and inn_membership(fam, phi)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(["H3_U", "H2_U"]), params3)
def test_inn_methods_agree(tag, p):
    fam = family(tag)
    inn_membership(fam, fam.element(p))  # raises on disagreement


# -- graded action and counts -------------------------------------------------------------

def test_graded_action():
    B = build_B(F9)
    assert np.array_equal(induced_graded_action(B, identity(9)), identity(2))
    s, u = F9.element(4), F9.element(7)
    D = diagonal_map(rewrite_B(F9), [s, u])
    top = np.array([B.element("X"), B.element("Y")])
    assert induced_graded_action(B, D, top).tolist() == [[s.value, 0], [0, u.value]]
    fam = family("H3_U", F9)
    a, e = F9.element(3), F9.element(5)
    phi = fam.element([a, 1, 1, 1, e, 1, 1, 1, 1])
    g = induced_graded_action(fam.algebra, phi)
    assert g.tolist() == [[1, 0, 0], [0, 1, 0], [a.value, e.value, 1]]


@pytest.mark.parametrize("tag,central,dim", [("H3_U", 729, 3), ("H2_U", 243, 2)])
def test_center_counts(tag, central, dim):
    res = center_mod_inn_dimension(tag)
    assert (res.n_central, res.n_inn, res.dimension) == (central, 27, dim)
    assert res.n_automorphisms == 3**9 and res.inverse_ok


def test_invariant_pair_separates_B_from_F3():
    f3 = (diagonal_torus_rank(FamilySpec.of("F3", 0, 0, field=F9)),
          center_mod_inn_dimension("H3_U").dimension)
    b = (diagonal_torus_rank(FamilySpec.of("B", field=F9)), center_mod_inn_dimension("H2_U").dimension)
    assert f3 == (2, 3) and b == (2, 2)


def _central_by_generators(fam, params):
    from locsym.autos import _batch_inn, _batch_matmul3
    mats = fam.batch_matrices(params)
    eye = np.eye(8, dtype=np.int64)
    N = (mats - eye) % 3
    ok = np.ones(len(params), dtype=bool)
    for k in range(9):
        G = fam.one_parameter(k).nilpart
        comm = (eye + _batch_matmul3(N, np.broadcast_to(G, N.shape))
                - np.einsum("ij,njk->nik", G, N)) % 3
        ok &= _batch_inn(fam, comm)
    return ok


@pytest.mark.parametrize("tag", ["H3_U", "H2_U"])
def test_generator_centrality_holds_for_random_partners(tag):
    # central modulo Inn against the nine one-parameter elements implies it against any element
    fam = family(tag)
    rng = np.random.default_rng(17)
    cand = fam.all_params()
    central = cand[_central_by_generators(fam, cand)]
    picks = central[rng.integers(len(central), size=500)]
    partners = rng.integers(0, 3, size=(500, 9))
    for p, q in zip(picks, partners):
        c = group_commutator(fam.element(list(p)), fam.element(list(q)))
        assert inn_membership(fam, c)
