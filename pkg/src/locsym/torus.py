"""Diagonal scaling torus of a presentation.

Rescaling generator g_i by s_i multiplies a word w by the character s^exp(w).
A relation survives the rescaling iff all of its words with nonzero coefficient
carry the same character, so the connected stabilizer is the subtorus cut out
by the exponent differences.  Its dimension is g minus the rank over Q of
those difference rows.

Relations are read from the rewrite rules that build the table (leading word
minus each word on the right-hand side, at the current parameter values).  An
independent lattice comes from the table itself: one row
exp(b_i) + exp(b_j) - exp(b_k) for each nonzero structure constant; both must
have the same rank.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import AlgebraError
from .families import FamilySpec, RewriteSystem

__all__ = [
    "ExponentLattice",
    "exponent_lattice",
    "table_lattice",
    "integer_rank",
    "integer_kernel",
    "diagonal_torus_rank",
    "torus_cocharacters",
    "diagonal_map",
    "verify_torus",
]


@dataclass(frozen=True)
class ExponentLattice:
    generators: int
    rows: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return integer_rank(self.rows, self.generators)

    @property
    def torus_rank(self) -> int:
        return self.generators - self.rank


def _rref_q(rows, ncols: int):
    m = [[Fraction(v) for v in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        m[r] = [v / piv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def integer_rank(rows, ncols: int) -> int:
    """Rank over Q of an integer matrix (exact rational elimination)."""
    rows = [tuple(r) for r in rows]
    if not rows:
        return 0
    return len(_rref_q(rows, ncols)[1])


def integer_kernel(rows, ncols: int) -> list[tuple[int, ...]]:
    """Primitive integer vectors spanning the kernel over Q."""
    red, piv = _rref_q([tuple(r) for r in rows], ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in piv]
    out = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, piv):
            v[p] = -row[f]
        den = math.lcm(*(x.denominator for x in v))
        ints = [int(x * den) for x in v]
        g = math.gcd(*ints)
        out.append(tuple(x // g for x in ints))
    return out


def _system(f: FamilySpec | RewriteSystem) -> RewriteSystem:
    if isinstance(f, RewriteSystem):
        return f
    if f.tag == "H2BAD_PARTIAL":
        raise AlgebraError("the partial bad branch has no presentation to rescale")
    return f.rewrite_system()


def _relations(sys: RewriteSystem):
    # the rules alone generate the relation ideal; the extra relations a system
    # carries are consequences kept for certification and would add spurious rows
    # (y^2 - x^2 in F3(0,0), where x^2 = y^2 = 0 separately)
    for rule in sys.rules:
        yield [rule.lhs] + [w for w, c in rule.rhs if c]


def exponent_lattice(f: FamilySpec | RewriteSystem) -> ExponentLattice:
    """Exponent differences of co-occurring words in each defining relation."""
    sys = _system(f)
    rows = []
    for words in _relations(sys):
        for u, v in itertools.combinations(words, 2):
            d = tuple(a - b for a, b in zip(sys.exponent(u), sys.exponent(v)))
            if any(d):
                rows.append(d)
    return ExponentLattice(len(sys.gens), tuple(rows))


def table_lattice(f: FamilySpec | RewriteSystem) -> ExponentLattice:
    """Rows exp(b_i) + exp(b_j) - exp(b_k) for every nonzero constant c_ij^k."""
    sys = _system(f)
    t = sys.table
    ex = [np.array(sys.exponent(w)) for w in sys.basis]
    rows = set()
    for i, j, k in zip(*np.nonzero(t.consts)):
        d = tuple(int(v) for v in ex[i] + ex[j] - ex[k])
        if any(d):
            rows.add(d)
    return ExponentLattice(len(sys.gens), tuple(sorted(rows)))


def diagonal_torus_rank(f: FamilySpec | RewriteSystem, cross_check: bool = True) -> int:
    lat = exponent_lattice(f)
    r = lat.torus_rank
    if cross_check:
        other = table_lattice(f).torus_rank
        if other != r:
            raise AlgebraError(f"relation lattice gives torus rank {r}, table lattice {other}")
    return r


def torus_cocharacters(f: FamilySpec | RewriteSystem) -> list[tuple[int, ...]]:
    lat = exponent_lattice(f)
    return integer_kernel(lat.rows, lat.generators)


def diagonal_map(sys: RewriteSystem, scalars) -> np.ndarray:
    """Full matrix of the rescaling g_i -> s_i g_i on the monomial basis."""
    F = sys.field
    s = [F(c) for c in scalars]
    d = []
    for w in sys.basis:
        v = F.one
        for letter in w:
            v = v * s[letter]
        d.append(int(v))
    return np.diag(np.array(d, dtype=np.int64))


def verify_torus(f: FamilySpec | RewriteSystem, samples: int = 8, seed: int = 0) -> bool:
    """Instantiate each cocharacter at random units and check it is an automorphism."""
    from .autos import is_automorphism

    sys = _system(f)
    F = sys.field
    rng = np.random.default_rng(seed)
    units = [F.element(c) for c in range(1, F.order)]
    for chi in torus_cocharacters(sys):
        for _ in range(samples):
            s = units[int(rng.integers(len(units)))]
            scal = [s ** e if e >= 0 else s.inverse() ** (-e) for e in chi]
            if not is_automorphism(sys.table, diagonal_map(sys, scal)):
                return False
    return True
