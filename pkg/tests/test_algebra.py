import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from locsym.algebra import (
    AlgebraError, NotLocalError, analyze, assert_structural_lemmas, build, center,
    center_profile, commutator_space, extend_scalars, find_symmetrizing_form,
    hypothesis_failures, radical, random_transport, transport,
)
from locsym.families import build_B, build_F2, build_F3
from locsym.field import GF
from locsym.linalg import Subspace

F3 = GF(1)
F9 = GF(2)


def truncated_poly(n, F=F3):
    """k[x]/(x^n) on 1, x, ..., x^(n-1)."""
    c = np.zeros((n, n, n), dtype=np.int64)
    for i, j in itertools.product(range(n), repeat=2):
        if i + j < n:
            c[i, j, i + j] = 1
    return build([f"x^{i}" for i in range(n)], 0, c, F)


def exterior2(F=F3):
    """k[x,y]/(x^2, y^2, xy + yx) on 1, x, y, xy."""
    c = np.zeros((4, 4, 4), dtype=np.int64)
    for j in range(4):
        c[0, j, j] = c[j, 0, j] = 1
    c[1, 2, 3] = 1
    c[2, 1, 3] = 2
    return build(["1", "x", "y", "xy"], 0, c, F)


def split_pair(F=F3):
    """k x k on the basis 1, e with e idempotent."""
    c = np.zeros((2, 2, 2), dtype=np.int64)
    c[0, 0, 0] = 1
    c[0, 1, 1] = c[1, 0, 1] = c[1, 1, 1] = 1
    return build(["1", "e"], 0, c, F)


def matrices2(F=F3):
    """M_2(k) on 1, e11 - e22 ... stored on the unit-first basis 1, e12, e21, e11."""
    units = {"e11": (0, 0), "e12": (0, 1), "e21": (1, 0), "e22": (1, 1)}
    mats = {k: np.zeros((2, 2), dtype=np.int64) for k in units}
    for k, (r, s) in units.items():
        mats[k][r, s] = 1
    basis = [np.eye(2, dtype=np.int64), mats["e12"], mats["e21"], mats["e11"]]
    coords = np.array([b.reshape(4) for b in basis]).T
    n = 4
    c = np.zeros((n, n, n), dtype=np.int64)
    inv = np.round(np.linalg.inv(coords)).astype(np.int64)
    for i, j in itertools.product(range(n), repeat=2):
        prod = (basis[i] @ basis[j]).reshape(4)
        c[i, j] = (inv @ prod) % 3
    return build(["1", "e12", "e21", "e11"], 0, c, F)


def brute_radical(a):
    """Span of all nilpotent elements (exhaustive over GF(3), small dimension)."""
    nil = []
    for v in itertools.product(range(3), repeat=a.dim):
        v = np.array(v, dtype=np.int64)
        if not a.power(v, a.dim).any():
            nil.append(v)
    return Subspace(a.field, a.dim, nil)


# -- construction ---------------------------------------------------------------------

def test_unit_law_violation_named():
    c = np.zeros((2, 2, 2), dtype=np.int64)
    c[0, 0, 0] = 1
    with pytest.raises(AlgebraError, match="unit law violated"):
        build(["1", "x"], 0, c, F3)


def test_associativity_mutation_names_triple():
    B = build_B(F9)
    c = B.consts.copy()
    i, j = B.index("X"), B.index("XY")
    c[i, j, B.index("X^2Y")] = F9.coerce(2)  # was 1
    with pytest.raises(AlgebraError, match=r"associativity fails at triple \(\d+,\d+,\d+\)"):
        build(B.labels, B.unit, c, F9)


def _associative_by_loops(F, c):
    n = c.shape[0]
    for i, j, k in itertools.product(range(n), repeat=3):
        left = np.zeros(n, dtype=np.int64)
        right = np.zeros(n, dtype=np.int64)
        for m in range(n):
            left = F.add(left, F.mul(c[i, j, m], c[m, k]))
            right = F.add(right, F.mul(c[j, k, m], c[i, m]))
        if not np.array_equal(left, right):
            return False
    return True


def test_mutation_detection_agrees_with_loop_check():
    t = build_F3(0, 0, F9)
    rng = np.random.default_rng(3)
    nz = np.argwhere(t.consts)
    seen = {True: 0, False: 0}
    for _ in range(12):
        i, j, k = nz[rng.integers(len(nz))]
        if t.unit in (i, j):
            continue
        c = t.consts.copy()
        c[i, j, k] = (c[i, j, k] + 1) % 9
        ok = _associative_by_loops(F9, c)
        seen[ok] += 1
        if ok:
            build(t.labels, t.unit, c, F9)
        else:
            with pytest.raises(AlgebraError, match="associativity fails"):
                build(t.labels, t.unit, c, F9)
    assert seen[False] > 0


# -- radical ----------------------------------------------------------------------------

@pytest.mark.parametrize("maker", [lambda: truncated_poly(5), exterior2, lambda: truncated_poly(3)])
def test_radical_matches_brute_force(maker):
    a = maker()
    assert radical(a) == brute_radical(a)


def test_split_algebra_is_not_local():
    with pytest.raises(NotLocalError, match="not local over this field"):
        radical(split_pair())


def test_matrix_algebra_is_not_local():
    with pytest.raises(NotLocalError):
        radical(matrices2())


def test_truncated_polynomial_invariants():
    a = truncated_poly(9)
    rep = analyze(a)
    assert rep.loewy == (1,) * 8
    assert rep.center.dim == 9
    reasons = hypothesis_failures(a, rep)
    assert any("dim [A,A] = 0 != 3" in r for r in reasons)


# -- symmetrizing forms -------------------------------------------------------------------

def test_split_pair_form():
    a = split_pair()
    s = find_symmetrizing_form(a)
    assert s is not None
    assert s.gram(a).shape == (2, 2)
    # the projection to one factor (s(1) = s(e) = 1 on this basis) is degenerate
    assert s.values.tolist() != [1, 1]
    # both factor values nonzero: s(e) and s(1 - e)
    assert s.evaluate(F3, a.element("e")) != 0
    assert s.evaluate(F3, F3.sub(a.one(), a.element("e"))) != 0


def test_matrix_algebra_has_trace_form():
    a = matrices2()
    s = find_symmetrizing_form(a)
    assert s is not None
    # any symmetrizing form vanishes on [A,A], which contains e12, e21 and e11 - e22
    assert s.evaluate(F3, a.element("e12")) == 0


def test_exterior_algebra_is_not_symmetric():
    # [A,A] = <xy> equals the socle, so every trace form kills the socle
    assert find_symmetrizing_form(exterior2()) is None


def test_frobenius_b_has_form():
    B = build_B(F9)
    s = find_symmetrizing_form(B)
    assert s is not None
    assert s.evaluate(F9, B.element("X^2Y^2")) != 0


# -- B and the families ----------------------------------------------------------------------

def test_invariants_of_B():
    B = build_B(F9)
    rep = analyze(B)
    assert rep.loewy == (2, 3, 2, 1)  # dims of J^i / J^(i+1), i >= 1
    assert rep.center.dim == 6
    assert rep.commutator_space.dim == 3
    assert rep.socle.dim == 1
    prof = center_profile(B, rep)
    assert prof.loewy == (4, 1) and prof.pairing_rank == 2 and prof.split and prof.matches


def test_BB_spanned_by_expected_monomials():
    B = build_B(F9)
    want = B.span([B.element(m) for m in ("XY", "X^2Y", "XY^2")])
    assert commutator_space(B) == want


def test_center_isotropy_needs_extension():
    # the center pairing of F2(1,1,t,0) is anisotropic over GF(9) but splits over GF(81)
    t = build_F2(1, 1, F9.gen, 0, F=F9)
    prof = center_profile(t)
    assert prof.matches and not prof.split
    prof81 = center_profile(extend_scalars(t, GF(4)))
    assert prof81.matches and prof81.split


def test_structural_lemmas_on_B_and_families():
    for t in (build_B(F9), build_F3(0, 0, F9), build_F2(1, 0, 0, 0, F=F9)):
        rep = assert_structural_lemmas(t)
        assert rep.passed, [str(c) for c in rep.failures()]


# -- transport invariance ------------------------------------------------------------------

TABLES = [build_B(F9), build_F3(F9.gen, 2 * F9.gen, F9), build_F2(0, F9.gen, 1, 2, F=F9)]


@settings(max_examples=15, deadline=None)
@given(st.integers(0, len(TABLES) - 1), st.integers(0, 2**32 - 1))
def test_invariants_stable_under_basis_change(which, seed):
    a = TABLES[which]
    b, _ = random_transport(a, np.random.default_rng(seed))
    ra, rb = analyze(a), analyze(b)
    assert ra.loewy == rb.loewy
    assert ra.center.dim == rb.center.dim
    assert ra.socle.dim == rb.socle.dim
    assert ra.commutator_space.dim == rb.commutator_space.dim
    assert (ra.sym_form is None) == (rb.sym_form is None)
    assert center_profile(a, ra).matches == center_profile(b, rb).matches


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_transport_round_trip(seed):
    a = TABLES[0]
    b, P = random_transport(a, np.random.default_rng(seed))
    from locsym.linalg import inverse
    back = transport(b, inverse(F9, P), labels=a.labels)
    assert back == a


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 8), min_size=9, max_size=9),
       st.lists(st.integers(0, 8), min_size=9, max_size=9))
def test_center_commutes_and_commutators_trace_zero(u, v):
    B = TABLES[0]
    u = np.array(u, dtype=np.int64)
    v = np.array(v, dtype=np.int64)
    Z = center(B)
    for z in Z.basis:
        assert not B.commutator(z, u).any()
    s = analyze(B).sym_form
    assert s.evaluate(F9, B.commutator(u, v)) == 0
