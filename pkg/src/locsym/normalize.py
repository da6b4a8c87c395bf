"""Constructive normalization of 9-dimensional local symmetric algebras.

Given a table satisfying the standing hypothesis (symmetric, local, dimension 9,
center isomorphic to Z(B)) the classifier chooses generators, decides between
the three-generator branch H3 and the two-generator branches H2NICE / H2BAD,
and then applies the explicit substitutions that bring the generators to
canonical form.  Every congruence a substitution is supposed to achieve is
checked the moment it is claimed and logged in the audit trail.  The result
carries the basis change as a certificate: transporting the input along it
reproduces the canonical table entry by entry.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import (AlgebraError, AlgebraTable, HypothesisError, StructuralReport, analyze,
                      centralizer, extend_scalars, hypothesis_failures, transport)
from .families import build_F2, build_F3, f2_params_admissible
from .field import FieldElement, GF
from .linalg import Subspace, rank, solve

__all__ = [
    "GeneratorError",
    "NormalizationError",
    "NeedsExtension",
    "AuditStep",
    "ClassificationResult",
    "choose_generators",
    "branch_select",
    "normalize_h3",
    "normalize_h2nice",
    "normalize_h2bad",
    "classify",
]

H3, H2NICE, H2BAD = "H3", "H2NICE", "H2BAD"


class GeneratorError(AlgebraError):
    pass


class NormalizationError(AlgebraError):
    def __init__(self, message: str, audit=None):
        super().__init__(message)
        self.audit = list(audit or [])


class NeedsExtension(AlgebraError):
    """A square root or fourth root of unity is missing from the working field."""


@dataclass(frozen=True)
class AuditStep:
    tag: str
    substitution: str
    claim: str
    verified: bool

    def __str__(self):
        mark = "ok" if self.verified else "FAILED"
        sub = f" [{self.substitution}]" if self.substitution else ""
        return f"{self.tag}{sub}: {self.claim} ({mark})"


@dataclass
class ClassificationResult:
    branch: str
    params: tuple[FieldElement, ...]
    basis_change: np.ndarray
    audit: list[AuditStep]
    source: AlgebraTable
    table: AlgebraTable
    canonical: AlgebraTable | None = None
    extended: bool = False

    @property
    def field(self):
        return self.table.field

    def certificate_holds(self) -> bool:
        if self.canonical is None:
            return True
        return np.array_equal(self.table.consts, self.canonical.consts)


class _Ctx:
    """Working state: the algebra, its filtration and the audit trail."""

    def __init__(self, a: AlgebraTable, rep: StructuralReport):
        self.a = a
        self.rep = rep
        self.F = a.field
        self.audit: list[AuditStep] = []

    def J(self, i):
        return self.rep.J(i)

    def mul(self, *vs):
        return self.a.word(*vs)

    def lin(self, *pairs) -> np.ndarray:
        out = np.zeros(self.a.dim, dtype=np.int64)
        for c, v in pairs:
            out = self.F.add(out, self.F.mul(self.F.coerce(c), v))
        return out

    def el(self, code) -> FieldElement:
        return self.F.element(int(code))

    def sym(self, u, v):
        return self.F.add(self.a.mul(u, v), self.a.mul(v, u))

    def claim(self, tag: str, text: str, ok: bool, substitution: str = ""):
        step = AuditStep(tag, substitution, text, bool(ok))
        self.audit.append(step)
        if not ok:
            raise NormalizationError(f"{tag}: claimed {text} but it fails", self.audit)

    def note(self, tag: str, text: str, substitution: str = ""):
        self.audit.append(AuditStep(tag, substitution, text, True))

    def independent_mod(self, vecs, level: int) -> bool:
        low = self.J(level)
        stacked = np.vstack([np.asarray(vecs).reshape(-1, self.a.dim), low.basis])
        return rank(self.F, stacked) == len(vecs) + low.dim

    def coords(self, v, vecs, level: int | None = None):
        """Coefficients c with v = sum c_i vecs_i modulo J_level (exactly if None)."""
        vecs = np.asarray(vecs, dtype=np.int64).reshape(-1, self.a.dim)
        cols = [vecs]
        if level is not None:
            cols.append(self.J(level).basis)
        mat = np.vstack(cols).T
        sol = solve(self.F, mat, np.asarray(v, dtype=np.int64))
        if sol is None:
            return None
        return [self.el(c) for c in sol[: vecs.shape[0]]]

    def sqrt(self, c: FieldElement, what: str) -> FieldElement:
        r = c.sqrt()
        if r is None:
            raise NeedsExtension(f"square root of {c} ({what}) is not in {self.F}")
        return r


HALF_CACHE: dict = {}


def _half(F) -> FieldElement:
    return F(2).inverse()


# -- generators and branch ------------------------------------------------------------------

def _generator_ok(a: AlgebraTable, rep: StructuralReport, v) -> bool:
    return (centralizer(a, rep.J(2), v) == rep.Z(2)
            and centralizer(a, rep.J(1), v).dim == 6)


def choose_generators(a: AlgebraTable, rep: StructuralReport | None = None):
    """x, y spanning a complement of Z_1 + J_2 in J_1 with the right centralizers.

    For Loewy vector (3,2,2,1) also returns z in Z_1 completing a basis of J_1/J_2.
    """
    rep = rep or analyze(a)
    F = a.field
    low = rep.Z(1) + rep.J(2)
    comp = rep.J(1).extend_complement(low)
    if comp.shape[0] != 2:
        raise GeneratorError("J_1/(Z_1+J_2) is not two-dimensional")
    x0, y0 = comp
    trials = [x0, y0] + [F.add(x0, F.mul(c, y0)) for c in range(1, F.order)]
    good = [v for v in trials if _generator_ok(a, rep, v)]
    chosen = []
    for v in good:
        if not chosen or rank(F, np.vstack([chosen[0], v, low.basis])) == low.dim + 2:
            chosen.append(v)
        if len(chosen) == 2:
            break
    if len(chosen) < 2:
        raise GeneratorError("centralizer trial sequence failed to produce generators")
    x, y = chosen
    if rep.loewy == (3, 2, 2, 1):
        zc = rep.Z(1).extend_complement(rep.J(2))
        if zc.shape[0] != 1:
            raise GeneratorError("no central generator completing J_1/J_2")
        return x, y, zc[0]
    return x, y


def _two_generator_split(ctx: _Ctx, x, y):
    """Two-generator case split; returns (branch, x, y)."""
    F = ctx.F
    tag = "two-generator split"
    x2, y2 = ctx.mul(x, x), ctx.mul(y, y)
    s = ctx.sym(x, y)
    if ctx.independent_mod([x2, y2], 3):
        lam, mu = ctx.coords(s, [x2, y2], 3)
        ctx.note(tag, f"xy + yx = ({lam}) x^2 + ({mu}) y^2 mod J_3")
        if not lam and not mu:
            return H2NICE, x, y
        if not lam:
            x, y = y, x
            lam, mu = mu, lam
            ctx.note(tag, "coefficient of x^2 vanishes", "swap x and y")
        y = ctx.lin((lam.inverse(), y))
        x2, y2, s = ctx.mul(x, x), ctx.mul(y, y), ctx.sym(x, y)
        one, mu = ctx.coords(s, [x2, y2], 3)
        ctx.claim(tag, f"xy + yx = x^2 + ({mu}) y^2 mod J_3", one == 1, "y <- y/lambda")
        if mu == 1:
            y = ctx.lin((1, y), (-1, x))
            ctx.claim(tag, "y^2 in J_3", ctx.J(3).contains(ctx.mul(y, y)), "mu = 1: y <- y - x")
            return H2BAD, x, y
        r = ctx.sqrt(1 - mu, "1 - mu")
        sigma, tau = -1 + r, -1 - r
        x, y = ctx.lin((1, x), (sigma, y)), ctx.lin((1, x), (tau, y))
        ctx.claim(tag, "xy + yx in J_3", ctx.J(3).contains(ctx.sym(x, y)),
                  f"x <- x + ({sigma}) y, y <- x + ({tau}) y")
        return H2NICE, x, y
    if not ctx.independent_mod([s, x2], 3):
        x, y = y, x
        x2, y2 = y2, x2
        ctx.note(tag, "{xy+yx, x^2} dependent mod J_3", "swap x and y")
    ctx.claim(tag, "{xy+yx, x^2} independent mod J_3", ctx.independent_mod([s, x2], 3))
    al, be = ctx.coords(y2, [x2, s], 3)
    y = ctx.lin((1, y), (-be, x))
    gam = ctx.coords(ctx.mul(y, y), [x2], 3)
    ctx.claim(tag, "y^2 = gamma x^2 mod J_3", gam is not None, f"y <- y - ({be}) x")
    gam = gam[0]
    if not gam:
        ctx.claim(tag, "y^2 in J_3", ctx.J(3).contains(ctx.mul(y, y)))
        return H2BAD, x, y
    r = ctx.sqrt(gam, "gamma")
    y = ctx.lin((r.inverse(), y))
    ctx.claim(tag, "y^2 = x^2 mod J_3",
              ctx.J(3).contains(ctx.lin((1, ctx.mul(y, y)), (-1, ctx.mul(x, x)))),
              "y <- y / sqrt(gamma)")
    x, y = ctx.lin((1, x), (1, y)), ctx.lin((1, x), (-1, y))
    ctx.claim(tag, "xy + yx in J_3", ctx.J(3).contains(ctx.sym(x, y)), "x <- x + y, y <- x - y")
    return H2NICE, x, y


def branch_select(a: AlgebraTable, rep: StructuralReport | None = None) -> str:
    rep = rep or analyze(a)
    if rep.loewy == (3, 2, 2, 1):
        return H3
    ctx = _Ctx(a, rep)
    x, y = choose_generators(a, rep)
    return _two_generator_split(ctx, x, y)[0]


# -- H3 -----------------------------------------------------------------------------------

def _h3(ctx: _Ctx, x, y, z):
    F = ctx.F
    half = _half(F)
    J = ctx.J
    # make x^2 not in J_3
    tag = "three generators, anticommuting pair"
    if J(3).contains(ctx.mul(x, x)):
        if not J(3).contains(ctx.mul(y, y)):
            x, y = y, x
            ctx.note(tag, "x^2 in J_3", "swap x and y")
        else:
            x = ctx.lin((1, x), (1, y))
            ctx.note(tag, "x^2, y^2 in J_3", "x <- x + y")
    ctx.claim(tag, "x^2 not in J_3", not J(3).contains(ctx.mul(x, x)))

    c = ctx.coords(ctx.sym(x, y), [ctx.mul(x, x)], 3)
    ctx.claim(tag, "xy + yx = alpha x^2 mod J_3", c is not None)
    y = ctx.lin((1, y), (-(half * c[0]), x))
    ctx.claim(tag, "xy + yx in J_3", J(3).contains(ctx.sym(x, y)), f"y <- y - ({half * c[0]}) x")

    x3, x2y = ctx.mul(x, x, x), ctx.mul(x, x, y)
    ctx.claim(tag, "{x^3, x^2y} basis of J_3 mod J_4",
              ctx.independent_mod([x3, x2y], 4) and J(3).dim - J(4).dim == 2)
    al, be = ctx.coords(ctx.sym(x, y), [x3, x2y], 4)
    x2 = ctx.mul(x, x)
    x, y = ctx.lin((1, x), (-(half * be), x2)), ctx.lin((1, y), (-(half * al), x2))
    ctx.claim(tag, "xy + yx in J_4", J(4).contains(ctx.sym(x, y)),
              f"x <- x - ({half * be}) x^2, y <- y - ({half * al}) x^2")

    x3y, x4 = ctx.mul(x, x, x, y), ctx.mul(x, x, x, x)
    s = ctx.sym(x, y)
    if x3y.any():
        lam = ctx.coords(s, [x3y])
        ctx.claim(tag, "xy + yx = lambda x^3y", lam is not None)
        x = ctx.lin((1, x), (-(half * lam[0]), ctx.mul(x, x, x)))
        sub = f"x <- x - ({half * lam[0]}) x^3"
    else:
        lam = ctx.coords(s, [x4])
        ctx.claim(tag, "xy + yx = lambda x^4", lam is not None)
        y = ctx.lin((1, y), (-(half * lam[0]), ctx.mul(x, x, x)))
        sub = f"y <- y - ({half * lam[0]}) x^3"
    ctx.claim(tag, "xy + yx = 0", not ctx.sym(x, y).any(), sub)

    # z corrections and y corrections
    tag = "three generators, central generator"
    lam = ctx.coords(ctx.mul(y, y), [ctx.mul(x, x)], 3)
    ctx.claim(tag, "y^2 = lambda x^2 mod J_3 with lambda != 0", lam is not None and bool(lam[0]))
    r = ctx.sqrt(lam[0], "lambda")
    y = ctx.lin((r.inverse(), y))
    ctx.claim(tag, "y^2 = x^2 mod J_3",
              J(3).contains(ctx.lin((1, ctx.mul(y, y)), (-1, ctx.mul(x, x)))),
              "y <- y / sqrt(lambda)")
    x2, x3, x2y, x4 = ctx.mul(x, x), ctx.mul(x, x, x), ctx.mul(x, x, y), ctx.mul(x, x, x, x)
    basis3 = [x3, x2y, x4]
    ctx.claim(tag, "{x^3, x^2y, x^4} basis of J_3",
              rank(F, np.array(basis3)) == 3 and J(3).dim == 3
              and J(3) == Subspace(F, ctx.a.dim, np.array(basis3)))
    a_, b_, c_ = ctx.coords(ctx.mul(z, x), basis3)
    ctx.claim(tag, "zx has no x^2y component", not b_)
    z = ctx.lin((1, z), (-a_, x2), (-c_, x3))
    ctx.claim(tag, "zx = xz = 0", not ctx.mul(z, x).any() and not ctx.mul(x, z).any(),
              f"z <- z - ({a_}) x^2 - ({c_}) x^3")
    d = ctx.coords(ctx.mul(z, z), [x4])
    ctx.claim(tag, "z^2 = delta x^4 with delta != 0", d is not None and bool(d[0]))
    r = ctx.sqrt(d[0], "delta")
    z = ctx.lin((r.inverse(), z))
    ctx.claim(tag, "z^2 = x^4", np.array_equal(ctx.mul(z, z), x4), "z <- z / sqrt(delta)")
    a_, b_, d_ = ctx.coords(ctx.mul(z, y), basis3)
    ctx.claim(tag, "zy = delta' x^4", not a_ and not b_)
    y = ctx.lin((1, y), (-d_, z))
    ctx.claim(tag, "zy = yz = 0", not ctx.mul(z, y).any() and not ctx.mul(y, z).any(),
              f"y <- y - ({d_}) z")
    diff = ctx.lin((1, ctx.mul(y, y)), (-1, ctx.mul(x, x)))
    a_, b_, g_ = ctx.coords(diff, [ctx.mul(x, x, x), ctx.mul(x, x, y), ctx.mul(x, x, x, x)])
    y = ctx.lin((1, y), (-(half * g_), ctx.mul(x, x, y)))
    diff = ctx.lin((1, ctx.mul(y, y)), (-1, ctx.mul(x, x)))
    ctx.claim(tag, "y^2 = x^2 + alpha x^3 + beta x^2y",
              ctx.coords(diff, [ctx.mul(x, x, x), ctx.mul(x, x, y)]) is not None,
              f"y <- y - ({half * g_}) x^2y")
    ctx.claim(tag, "xy + yx = 0 and z annihilates x, y",
              not ctx.sym(x, y).any() and not any(
                  ctx.mul(u, v).any() for u, v in ((z, x), (x, z), (z, y), (y, z))))

    # rotation by a fourth root of unity
    tag = "three generators, rotation"
    i = F.fourth_root_of_unity()
    if i is None:
        raise NeedsExtension(f"no fourth root of unity in {F}")
    x, y = ctx.lin((1, x), (i, y)), ctx.lin((1, x), (-i, y))
    xx, yy = ctx.mul(x, x), ctx.mul(y, y)
    ctx.claim(tag, "x^2 = y^2 in J_3", np.array_equal(xx, yy) and J(3).contains(xx),
              f"x <- x + ({i}) y, y <- x - ({i}) y")
    xyx, yxy, xyxy = ctx.mul(x, y, x), ctx.mul(y, x, y), ctx.mul(x, y, x, y)
    co = ctx.coords(xx, [xyx, yxy, xyxy])
    ctx.claim(tag, "{xyx, yxy, xyxy} basis of J_3", co is not None and J(3).dim == 3
              and rank(F, np.array([xyx, yxy, xyxy])) == 3)
    al, be, de = co
    x, y = ctx.lin((1, x), (-(half * de), yxy)), ctx.lin((1, y), (-(half * de), xyx))
    xx, yy = ctx.mul(x, x), ctx.mul(y, y)
    target = ctx.lin((al, ctx.mul(x, y, x)), (be, ctx.mul(y, x, y)))
    ctx.claim(tag, f"x^2 = y^2 = ({al}) xyx + ({be}) yxy",
              np.array_equal(xx, target) and np.array_equal(yy, target),
              f"x <- x - ({half * de}) yxy, y <- y - ({half * de}) xyx")
    k = ctx.coords(ctx.mul(z, z), [ctx.mul(x, y, x, y)])
    ctx.claim(tag, "z^2 = kappa xyxy with kappa != 0", k is not None and bool(k[0]))
    r = ctx.sqrt(k[0], "kappa")
    z = ctx.lin((r.inverse(), z))
    ctx.claim(tag, "z^2 = xyxy", np.array_equal(ctx.mul(z, z), ctx.mul(x, y, x, y)),
              "z <- z / sqrt(kappa)")
    ctx.claim(tag, "yxyx = xyxy and z annihilates x, y",
              np.array_equal(ctx.mul(y, x, y, x), ctx.mul(x, y, x, y)) and not any(
                  ctx.mul(u, v).any() for u, v in ((z, x), (x, z), (z, y), (y, z))))
    return (al, be), [ctx.a.one(), x, y, z, ctx.mul(x, y), ctx.mul(y, x), ctx.mul(x, y, x),
                      ctx.mul(y, x, y), ctx.mul(x, y, x, y)]


# -- H2NICE --------------------------------------------------------------------------------

def _h2nice(ctx: _Ctx, x, y):
    F = ctx.F
    half = _half(F)
    J = ctx.J
    tag = "two generators, anticommutation"
    ctx.claim(tag, "xy + yx in J_3", J(3).contains(ctx.sym(x, y)))
    x2y, xy2 = ctx.mul(x, x, y), ctx.mul(x, y, y)
    ctx.claim(tag, "{x^2y, xy^2} basis of J_3 mod J_4",
              ctx.independent_mod([x2y, xy2], 4) and J(3).dim - J(4).dim == 2)
    lam, mu = ctx.coords(ctx.sym(x, y), [x2y, xy2], 4)
    x, y = (ctx.lin((1, x), (-(half * lam), ctx.mul(x, x))),
            ctx.lin((1, y), (-(half * mu), ctx.mul(y, y))))
    ctx.claim(tag, "xy + yx in J_4", J(4).contains(ctx.sym(x, y)),
              f"x <- x - ({half * lam}) x^2, y <- y - ({half * mu}) y^2")
    s = ctx.sym(x, y)
    x2y2 = ctx.mul(x, x, y, y)
    if x2y2.any():
        lam = ctx.coords(s, [x2y2])
        ctx.claim(tag, "xy + yx = lambda x^2y^2", lam is not None)
        y = ctx.lin((1, y), (-(half * lam[0]), ctx.mul(x, y, y)))
        sub = f"y <- y - ({half * lam[0]}) xy^2"
    else:
        lam = ctx.coords(s, [ctx.mul(x, x, x, y)])
        ctx.claim(tag, "xy + yx = lambda x^3y", lam is not None)
        x = ctx.lin((1, x), (-(half * lam[0]), ctx.mul(x, x, x)))
        sub = f"x <- x - ({half * lam[0]}) x^3"
    ctx.claim(tag, "xy + yx = 0", not ctx.sym(x, y).any(), sub)

    tag = "two generators, cubes"

    def cubes(x, y):
        b3 = [ctx.mul(x, x, y), ctx.mul(x, y, y), ctx.mul(x, x, y, y)]
        ctx.claim(tag, "{x^2y, xy^2, x^2y^2} basis of J_3", J(3).dim == 3
                  and J(3) == Subspace(F, ctx.a.dim, np.array(b3)))
        l_, al, be = ctx.coords(ctx.mul(x, x, x), b3)
        ga, m_, de = ctx.coords(ctx.mul(y, y, y), b3)
        ctx.claim(tag, "x^3 = alpha xy^2 + beta x^2y^2 and y^3 = gamma x^2y + delta x^2y^2",
                  not l_ and not m_)
        return al, be, ga, de

    al, be, ga, de = cubes(x, y)
    if al:
        r = ctx.sqrt(al, "alpha")
        y = ctx.lin((r, y))
        al, be, ga, de = cubes(x, y)
        ctx.claim(tag, "alpha = 1", al == 1, "y <- sqrt(alpha) y")
    elif ga:
        r = ctx.sqrt(ga, "gamma")
        x = ctx.lin((r, x))
        al, be, ga, de = cubes(x, y)
        ctx.claim(tag, "gamma = 1", ga == 1, "x <- sqrt(gamma) x")
    ctx.claim(tag, "x^3y = xy^3 = 0",
              not ctx.mul(x, x, x, y).any() and not ctx.mul(x, y, y, y).any())
    ctx.claim(tag, "{x^2, xy, y^2} basis of J_2 mod J_3",
              ctx.independent_mod([ctx.mul(x, x), ctx.mul(x, y), ctx.mul(y, y)], 3))
    params = (al, be, ga, de)
    ctx.claim(tag, "parameters in the normalized domain", f2_params_admissible(*params, F))
    return params, [ctx.a.one(), x, y, ctx.mul(x, x), ctx.mul(x, y), ctx.mul(y, y),
                    ctx.mul(x, x, y), ctx.mul(x, y, y), ctx.mul(x, x, y, y)]


# -- H2BAD ---------------------------------------------------------------------------------

def _h2bad_conclusions(ctx: _Ctx, x, y, tag):
    J = ctx.J
    ctx.claim(tag, "y^2 in J_3", J(3).contains(ctx.mul(y, y)))
    ctx.claim(tag, "{x^2, xy, yx} basis of J_2 mod J_3",
              ctx.independent_mod([ctx.mul(x, x), ctx.mul(x, y), ctx.mul(y, x)], 3)
              and J(2).dim - J(3).dim == 3)
    ctx.claim(tag, "{xyx, yxy} basis of J_3 mod J_4",
              ctx.independent_mod([ctx.mul(x, y, x), ctx.mul(y, x, y)], 4)
              and J(3).dim - J(4).dim == 2)
    xyxy = ctx.mul(x, y, x, y)
    ctx.claim(tag, "{xyxy} basis of J_4", xyxy.any() and J(4) == Subspace(ctx.F, ctx.a.dim, xyxy))


def _h2bad(ctx: _Ctx, x, y):
    J = ctx.J
    tag = "two generators, square in J_3"
    _h2bad_conclusions(ctx, x, y, tag)
    xyx, yxy = ctx.mul(x, y, x), ctx.mul(y, x, y)
    a_, b_ = ctx.coords(ctx.mul(x, x, y), [xyx, yxy], 4)
    ctx.claim(tag, "x^2y has no xyx component mod J_4", not a_)
    x = ctx.lin((1, x), (-b_, y))
    ctx.claim(tag, "x^2y in J_4", J(4).contains(ctx.mul(x, x, y)), f"x <- x - ({b_}) y")
    ctx.claim(tag, "x^3y = 0", not ctx.mul(x, x, x, y).any())
    a_, b_ = ctx.coords(ctx.mul(x, x, x), [ctx.mul(x, y, x), ctx.mul(y, x, y)], 4)
    ctx.claim(tag, "x^3 has no xyx component mod J_4", not a_)
    if not b_:
        raise NormalizationError(f"{tag}: x^3 in J_4 contradicts the hypothesis", ctx.audit)
    r = ctx.sqrt(b_.inverse(), "1/beta")
    x = ctx.lin((r, x))
    ctx.claim(tag, "x^3 = yxy mod J_4",
              J(4).contains(ctx.lin((1, ctx.mul(x, x, x)), (-1, ctx.mul(y, x, y)))),
              "x <- sqrt(1/beta) x")
    ctx.claim(tag, "x^2y in J_4", J(4).contains(ctx.mul(x, x, y)))
    _h2bad_conclusions(ctx, x, y, tag)
    return (), [ctx.a.one(), x, y, ctx.mul(x, x), ctx.mul(x, y), ctx.mul(y, x),
                ctx.mul(x, y, x), ctx.mul(y, x, y), ctx.mul(x, y, x, y)]


# -- drivers ----------------------------------------------------------------------------------

_LABELS = {
    H3: ("1", "x", "y", "z", "xy", "yx", "xyx", "yxy", "xyxy"),
    H2NICE: ("1", "x", "y", "x^2", "xy", "y^2", "x^2y", "xy^2", "x^2y^2"),
    H2BAD: ("1", "x", "y", "x^2", "xy", "yx", "xyx", "yxy", "xyxy"),
}


def _finish(ctx: _Ctx, branch: str, params, vectors) -> ClassificationResult:
    P = np.array(vectors, dtype=np.int64).T
    if rank(ctx.F, P) != ctx.a.dim:
        raise NormalizationError("normalized monomials are not a basis", ctx.audit)
    t = transport(ctx.a, P, labels=_LABELS[branch])
    canonical = None
    if branch == H3:
        canonical = build_F3(*params, F=ctx.F)
    elif branch == H2NICE:
        canonical = build_F2(*params, F=ctx.F)
    res = ClassificationResult(branch, tuple(params), P, ctx.audit, ctx.a, t, canonical)
    if canonical is not None:
        ctx.claim("certificate", "transported table equals the canonical table",
                  res.certificate_holds())
    else:
        _check_h2bad_table(t, ctx)
    return res


def _check_h2bad_table(t: AlgebraTable, ctx: _Ctx):
    rep = analyze(t)
    x, y = t.basis_vector(1), t.basis_vector(2)
    tc = _Ctx(t, rep)
    tc.claim("certificate", "x^2y in J_4", rep.J(4).contains(t.word(x, x, y)))
    tc.claim("certificate", "x^3 - yxy in J_4",
             rep.J(4).contains(t.field.sub(t.word(x, x, x), t.word(y, x, y))))
    tc.claim("certificate", "xyxy != 0", t.word(x, y, x, y).any())
    ctx.audit.extend(tc.audit)


def _prepare(a: AlgebraTable, rep: StructuralReport | None):
    rep = rep or analyze(a)
    return _Ctx(a, rep), rep


def normalize_h3(a: AlgebraTable, rep: StructuralReport | None = None) -> ClassificationResult:
    ctx, rep = _prepare(a, rep)
    if rep.loewy != (3, 2, 2, 1):
        raise NormalizationError("normalize_h3 needs Loewy vector (3,2,2,1)")
    x, y, z = choose_generators(a, rep)
    params, vecs = _h3(ctx, x, y, z)
    return _finish(ctx, H3, params, vecs)


def _two_generator_start(a, rep):
    ctx, rep = _prepare(a, rep)
    if rep.loewy != (2, 3, 2, 1):
        raise NormalizationError("two-generator normalization needs Loewy vector (2,3,2,1)")
    x, y = choose_generators(a, rep)
    branch, x, y = _two_generator_split(ctx, x, y)
    return ctx, branch, x, y


def normalize_h2nice(a: AlgebraTable, rep: StructuralReport | None = None) -> ClassificationResult:
    ctx, branch, x, y = _two_generator_start(a, rep)
    if branch != H2NICE:
        raise NormalizationError(f"input lands in branch {branch}, not H2NICE", ctx.audit)
    params, vecs = _h2nice(ctx, x, y)
    return _finish(ctx, H2NICE, params, vecs)


def normalize_h2bad(a: AlgebraTable, rep: StructuralReport | None = None) -> ClassificationResult:
    ctx, branch, x, y = _two_generator_start(a, rep)
    if branch != H2BAD:
        raise NormalizationError(f"input lands in branch {branch}, not H2BAD", ctx.audit)
    params, vecs = _h2bad(ctx, x, y)
    return _finish(ctx, H2BAD, params, vecs)


def _classify_once(a: AlgebraTable, rep: StructuralReport) -> ClassificationResult:
    if rep.loewy == (3, 2, 2, 1):
        return normalize_h3(a, rep)
    ctx, branch, x, y = _two_generator_start(a, rep)
    if branch == H2NICE:
        params, vecs = _h2nice(ctx, x, y)
    else:
        params, vecs = _h2bad(ctx, x, y)
    return _finish(ctx, branch, params, vecs)


def classify(a: AlgebraTable, check_hypothesis: bool = True) -> ClassificationResult:
    """Normalize a, extending scalars (degree doubling) when a root is missing."""
    notes = []
    current = a
    while True:
        rep = analyze(current)
        if check_hypothesis:
            reasons = hypothesis_failures(current, rep)
            if reasons:
                raise HypothesisError("hypothesis fails: " + "; ".join(reasons))
        try:
            res = _classify_once(current, rep)
        except NeedsExtension as exc:
            deg = current.field.degree * 2
            if deg > 4:
                raise
            bigger = GF(deg)
            notes.append(AuditStep("scalar extension", f"{current.field} -> {bigger}",
                                   str(exc), True))
            current = extend_scalars(current, bigger)
            continue
        res.audit[:0] = notes
        res.extended = bool(notes)
        res.source = a
        return res
