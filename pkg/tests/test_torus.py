import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from locsym.algebra import AlgebraError
from locsym.families import FamilySpec, RewriteSystem
from locsym.field import GF
from locsym.linalg import rank
from locsym.torus import (
    diagonal_torus_rank, exponent_lattice, integer_kernel, integer_rank, table_lattice,
    torus_cocharacters, verify_torus,
)
from locsym.verify import f2_sample

F9 = GF(2)
t = F9.gen


def fam(tag, *p):
    return FamilySpec.of(tag, *p, field=F9)


def test_B_has_no_rows():
    lat = exponent_lattice(fam("B"))
    assert lat.rows == () and lat.rank == 0
    assert diagonal_torus_rank(fam("B")) == 2


def test_F3_zero_lattice():
    lat = exponent_lattice(fam("F3", 0, 0))
    assert set(lat.rows) == {(-2, -2, 2)}
    assert diagonal_torus_rank(fam("F3", 0, 0)) == 2


def test_F3_beta_only_kills_the_torus():
    lat = exponent_lattice(fam("F3", 0, 1))
    assert (-1, 2, 0) in lat.rows or (1, -2, 0) in lat.rows
    assert lat.rank == 3
    assert diagonal_torus_rank(fam("F3", 0, 1)) == 0


def test_rank_is_over_the_rationals():
    # a row (0, 3) vanishes mod 3 but still cuts the torus
    assert integer_rank([(0, 3)], 2) == 1
    assert rank(GF(1), [[0, 3 % 3]]) == 0
    assert integer_rank([(2, 4), (1, 2)], 2) == 1
    assert integer_rank([], 3) == 0


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), max_size=5))
def test_kernel_is_complementary(rows):
    ker = integer_kernel(rows, 4)
    assert len(ker) == 4 - integer_rank(rows, 4)
    for v in ker:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)
    if ker:
        assert integer_rank(ker, 4) == len(ker)
    # numpy's floating rank agrees on these small integer matrices
    if rows:
        assert np.linalg.matrix_rank(np.array(rows, dtype=float)) == integer_rank(rows, 4)


GRID = list(itertools.product(range(9), repeat=2))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(GRID))
def test_F3_two_torus_only_at_origin(pair):
    f = fam("F3", *(F9.element(c) for c in pair))
    r = diagonal_torus_rank(f)
    assert (r == 2) == (pair == (0, 0))
    assert r <= 1 or pair == (0, 0)


def test_F2_two_torus_only_at_origin():
    sample = f2_sample(F9, 60)
    sample.append(tuple(F9(0) for _ in range(4)))
    for p in sample:
        r = diagonal_torus_rank(fam("F2", *p))
        assert (r == 2) == all(c == F9.zero for c in p)
        if r != 2:
            assert r <= 1


@pytest.mark.parametrize("f", [fam("B"), fam("F3", 0, 0), fam("F3", t, 0), fam("F2", 1, 0, 0, 0),
                               fam("F2", 0, t, 1, 0)])
def test_lattices_agree_and_torus_is_sound(f):
    assert exponent_lattice(f).torus_rank == table_lattice(f).torus_rank
    assert verify_torus(f, samples=4)


def test_cocharacters_of_B():
    assert sorted(torus_cocharacters(fam("B"))) == [(0, 1), (1, 0)]


def test_rule_order_does_not_matter():
    sys = fam("F3", t, 2).rewrite_system()
    shuffled = RewriteSystem(sys.field, sys.gens, sys.basis, list(reversed(sys.rules)),
                             relations=sys.relations)
    a, b = exponent_lattice(sys), exponent_lattice(shuffled)
    assert set(a.rows) == set(b.rows)
    assert diagonal_torus_rank(shuffled) == diagonal_torus_rank(sys)


def test_scaling_a_rule_keeps_its_support():
    # the lattice only sees which words occur; scaling the right-hand side of a
    # rule by a unit changes the algebra but not that support
    base = fam("F2", 1, 1, t, 2).rewrite_system()
    scaled_rules = []
    for r in base.rules:
        scaled_rules.append(type(r)(r.lhs, tuple((w, int(F9.mul(c, 2))) for w, c in r.rhs)))
    scaled = RewriteSystem(base.field, base.gens, base.basis, scaled_rules, truncate=base.truncate)
    assert set(exponent_lattice(scaled).rows) == set(exponent_lattice(base).rows)


def test_partial_bad_branch_has_no_presentation():
    with pytest.raises(AlgebraError):
        diagonal_torus_rank(FamilySpec.of("H2BAD_PARTIAL", field=F9))
