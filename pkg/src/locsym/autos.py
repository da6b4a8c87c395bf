"""Truncated automorphisms, inner automorphisms and the unipotent families.

A truncated automorphism is ``phi = Id + phi0`` acting on an ordered basis of
J, where every triple product of the nilpotent parts vanishes.  On such
groups the inverse is ``Id - phi0 + phi0^2`` and the group commutator is
``Id + phi0 tau0 - tau0 phi0``.

Two 9-parameter families are provided: ``H3_U`` on F3(0,0) with basis
(x, y, z, xy+yx, xy-yx, xyx, yxy, xyxy) and ``H2_U`` on B with basis
(x, y, x^2, y^2, xy, x^2y, xy^2, x^2y^2).  Each exists in two versions: the
matrices exactly as usually displayed (``verbatim``) and corrected ones that
are genuinely automorphisms.  The corrected entries are::

    H3_U  (yxy, x) = a^2 - b^2    displayed -b^2
          (xyx, y) = e^2 - f^2    displayed -f^2
    H2_U  (xy^2, y) = bf - ae - i displayed -bf - ae - i

Over GF(3) the exhaustive kernels enumerate all 3^9 parameter tuples in
vectorized batches.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algebra import AlgebraError, AlgebraTable, analyze
from .families import build_B, build_F3
from .field import FieldSpec, GF
from .linalg import Subspace, identity, inverse, rank, solve

__all__ = [
    "TruncEndo",
    "UnipotentFamily",
    "InvariantViolation",
    "H3_U",
    "H2_U",
    "family",
    "is_automorphism",
    "is_algebra_map",
    "inner_auto",
    "inner_auto_direct",
    "unipotent_element",
    "group_commutator",
    "inn_membership",
    "center_mod_inn_dimension",
    "CenterCount",
    "induced_graded_action",
]

PARAMS = "abcdefghi"


class InvariantViolation(AlgebraError):
    pass


@dataclass(frozen=True, eq=False)
class TruncEndo:
    """phi restricted to J, in the ordered basis ``jbasis`` (rows, table coordinates)."""

    base: AlgebraTable
    jbasis: np.ndarray
    matrix: np.ndarray

    @property
    def field(self) -> FieldSpec:
        return self.base.field

    @property
    def nilpart(self) -> np.ndarray:
        return self.field.sub(self.matrix, identity(self.matrix.shape[0]))

    def full(self) -> np.ndarray:
        """The unital extension as a matrix on the table basis (columns = images)."""
        return _full_from_j(self.base, self.jbasis, self.matrix)

    def __call__(self, v) -> np.ndarray:
        return self.field.matmul(self.full(), np.asarray(v, dtype=np.int64))

    def compose(self, other: "TruncEndo") -> "TruncEndo":
        """self after other."""
        return TruncEndo(self.base, self.jbasis, self.field.matmul(self.matrix, other.matrix))

    def __eq__(self, other):
        return (isinstance(other, TruncEndo) and self.base == other.base
                and np.array_equal(self.jbasis, other.jbasis)
                and np.array_equal(self.matrix, other.matrix))

    __hash__ = None

    def is_identity(self) -> bool:
        return not self.nilpart.any()


def _jchange(a: AlgebraTable, jbasis):
    """Square change of basis: unit first, then the J basis."""
    return np.vstack([a.one()[None, :], jbasis]).T


def _full_from_j(a: AlgebraTable, jbasis, m) -> np.ndarray:
    F = a.field
    P = _jchange(a, jbasis)
    n = m.shape[0] + 1
    big = identity(n)
    big[1:, 1:] = m
    return F.matmul(F.matmul(P, big), inverse(F, P))


def _j_from_full(a: AlgebraTable, jbasis, M) -> np.ndarray:
    F = a.field
    P = _jchange(a, jbasis)
    big = F.matmul(F.matmul(inverse(F, P), M), P)
    if big[0, 0] != 1 or big[1:, 0].any() or big[0, 1:].any():
        raise InvariantViolation("map does not fix 1 or does not preserve J")
    return big[1:, 1:]


def is_algebra_map(a: AlgebraTable, M) -> bool:
    """M (columns = images of basis vectors) is multiplicative and fixes 1."""
    F = a.field
    M = np.asarray(M, dtype=np.int64)
    if not np.array_equal(F.matmul(M, a.one()), a.one()):
        return False
    # phi(b_i b_j) = sum_k c_ij^k phi(b_k);  phi(b_i) phi(b_j) = sum_pq M_pi M_qj c_pq
    lhs = F.matmul(a.consts, M.T)
    rhs = _pair_products(F, a.consts, M)
    return np.array_equal(lhs, rhs)


def _pair_products(F: FieldSpec, consts, M):
    """Array r[i, j] = phi(b_i) phi(b_j) for phi with matrix M."""
    if F.degree == 1:
        return np.einsum("pi,qj,pqk->ijk", M, M, consts) % 3
    n = M.shape[0]
    flat = consts.reshape(n * n, n)
    out = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            w = F.mul(M[:, i][:, None], M[:, j][None, :]).reshape(-1)
            out[i, j] = F.sum(F.mul(w[:, None], flat), axis=0)
    return out


def is_automorphism(a: AlgebraTable, phi, reason: bool = False):
    """Multiplicative, bijective and preserving every radical power."""
    F = a.field
    M = phi.full() if isinstance(phi, TruncEndo) else np.asarray(phi, dtype=np.int64)

    def out(ok, why=""):
        return (ok, why) if reason else ok

    if rank(F, M) != a.dim:
        return out(False, "singular matrix")
    if not is_algebra_map(a, M):
        return out(False, "not multiplicative")
    rep = analyze(a)
    for Ji in rep.radical_powers:
        if Ji.dim and not Ji.contains(F.matmul(M, Ji.basis.T).T):
            return out(False, "radical filtration not preserved")
    return out(True)


def induced_graded_action(a: AlgebraTable, phi: TruncEndo | np.ndarray, top=None) -> np.ndarray:
    """Matrix of the induced map on J/J^2, in the basis ``top`` (default: leading jbasis rows)."""
    F = a.field
    rep = analyze(a)
    J2 = rep.J(2)
    M = phi.full() if isinstance(phi, TruncEndo) else np.asarray(phi, dtype=np.int64)
    if top is None:
        if isinstance(phi, TruncEndo):
            top = np.array([v for v in phi.jbasis if not J2.contains(v)])
        else:
            top = rep.J(1).extend_complement(J2)
    top = np.asarray(top, dtype=np.int64)
    g = top.shape[0]
    cols = np.vstack([top, J2.basis]).T
    out = np.zeros((g, g), dtype=np.int64)
    for j in range(g):
        sol = solve(F, cols, F.matmul(M, top[j]))
        if sol is None:
            raise InvariantViolation("map does not preserve J")
        out[:, j] = sol[:g]
    return out


# -- inner automorphisms -------------------------------------------------------------------

def _check_inner_hypothesis(a: AlgebraTable):
    rep = analyze(a)
    if not rep.center.contains(rep.J(3)):
        raise AlgebraError("inner automorphism formula needs J^3 inside the center")
    return rep


def inner_auto(a: AlgebraTable, u, jbasis=None) -> TruncEndo:
    """phi_u(v) = v + [v,u] + [vu,u], conjugation by 1 - u."""
    F = a.field
    rep = _check_inner_hypothesis(a)
    u = np.asarray(u, dtype=np.int64)
    if not rep.J(1).contains(u):
        raise AlgebraError("u must lie in the radical")
    M = _inner_full(a, u)
    jb = rep.J(1).basis if jbasis is None else np.asarray(jbasis, dtype=np.int64)
    return TruncEndo(a, jb, _j_from_full(a, jb, M))


def _inner_full(a: AlgebraTable, u) -> np.ndarray:
    F = a.field
    L, R = a.left(u), a.right(u)
    # v + vu - uv + (vu)u - u(vu)
    comm = F.sub(R, L)
    M = F.add(identity(a.dim), comm)
    M = F.add(M, F.matmul(comm, R))
    return M


def inner_auto_direct(a: AlgebraTable, u) -> np.ndarray:
    """(1-u) v (1 + u + u^2 + u^3 + u^4) on every basis vector, full matrix."""
    F = a.field
    u = np.asarray(u, dtype=np.int64)
    inv = a.one()
    p = a.one()
    for _ in range(4):
        p = a.mul(p, u)
        inv = F.add(inv, p)
    left = F.sub(a.one(), u)
    if not np.array_equal(a.mul(left, inv), a.one()):
        raise AlgebraError("1 + u + ... + u^4 is not the inverse of 1 - u")
    return F.matmul(a.left(left), a.right(inv))


# -- unipotent families ---------------------------------------------------------------------

def _h3_verbatim(F, p):
    a, b, c, d, e, f, g, h, i = p
    m, sub, neg = F.mul, F.sub, F.neg
    two = 2 % 3
    z = 0
    # rows: x, y, z, xy+yx, xy-yx, xyx, yxy, xyxy ; columns are images
    inner = F.add(F.add(g, F.mul(a, e)), F.add(m(two, m(b, f)), c))
    return [
        [1, z, z, z, z, z, z, z],
        [z, 1, z, z, z, z, z, z],
        [a, e, 1, z, z, z, z, z],
        [z, z, z, 1, z, z, z, z],
        [b, f, z, z, 1, z, z, z],
        [c, neg(m(f, f)), neg(e), z, neg(m(two, f)), 1, z, z],
        [neg(m(b, b)), g, neg(a), z, neg(m(two, b)), z, 1, z],
        [d, h, i, m(two, inner), z, z, z, 1],
    ]


def _h3_corrected(F, p):
    rows = _h3_verbatim(F, p)
    a, b, c, d, e, f, g, h, i = p
    rows[6][0] = F.sub(F.mul(a, a), F.mul(b, b))
    rows[5][1] = F.sub(F.mul(e, e), F.mul(f, f))
    return rows


def _h2_verbatim(F, p):
    a, b, c, d, e, f, g, h, i = p
    m, neg = F.mul, F.neg
    z = 0
    # rows: x, y, x^2, y^2, xy, x^2y, xy^2, x^2y^2
    return [
        [1, z, z, z, z, z, z, z],
        [z, 1, z, z, z, z, z, z],
        [z, e, 1, z, z, z, z, z],
        [a, z, z, 1, z, z, z, z],
        [b, f, z, z, 1, z, z, z],
        [i, g, z, neg(e), f, 1, z, z],
        [c, F.sub(F.sub(neg(m(b, f)), m(a, e)), i), neg(a), z, b, z, 1, z],
        [d, h, F.sub(neg(c), m(b, b)), F.sub(neg(g), m(f, f)), z, z, z, 1],
    ]


def _h2_corrected(F, p):
    rows = _h2_verbatim(F, p)
    a, b, c, d, e, f, g, h, i = p
    rows[6][1] = F.sub(F.sub(F.mul(b, f), F.mul(a, e)), i)
    return rows


# positions (row, col) of the nine parameters in the corrected matrices
_H3_POS = {"a": (2, 0), "b": (4, 0), "c": (5, 0), "d": (7, 0), "e": (2, 1), "f": (4, 1),
           "g": (6, 1), "h": (7, 1), "i": (7, 2)}
_H2_POS = {"a": (3, 0), "b": (4, 0), "c": (6, 0), "d": (7, 0), "e": (2, 1), "f": (4, 1),
           "g": (5, 1), "h": (7, 1), "i": (5, 0)}


def _h3_inn(F, p):
    a, b, c, d, e, f, g, h, i = p
    # a = e = d = h = i = 0 and c + g = -2bf
    return (not any((a, d, e, h, i))
            and F.add(c, g) == F.neg(F.mul(2, F.mul(b, f))))


def _h2_inn(F, p):
    a, b, c, d, e, f, g, h, i = p
    # a = e = d = h = 0 and c = -b^2, g = -f^2
    return (not any((a, d, e, h))
            and c == F.neg(F.mul(b, b)) and g == F.neg(F.mul(f, f)))


class UnipotentFamily:
    """A 9-parameter family of unitriangular truncated automorphisms."""

    def __init__(self, tag: str, F: FieldSpec):
        if tag not in ("H3_U", "H2_U"):
            raise ValueError(f"unknown unipotent family {tag!r}")
        self.tag = tag
        self.field = F
        if tag == "H3_U":
            self.algebra = build_F3(0, 0, F)
            x, y, z = (self.algebra.element(s) for s in ("x", "y", "z"))
            xy, yx = self.algebra.element("xy"), self.algebra.element("yx")
            self.jbasis = np.array([x, y, z, F.add(xy, yx), F.sub(xy, yx),
                                    self.algebra.element("xyx"), self.algebra.element("yxy"),
                                    self.algebra.element("xyxy")])
            self.labels = ("x", "y", "z", "xy+yx", "xy-yx", "xyx", "yxy", "xyxy")
            self.inner_w = F.sub(xy, yx)
            self._verbatim, self._corrected, self._pos, self._inn = (
                _h3_verbatim, _h3_corrected, _H3_POS, _h3_inn)
        else:
            self.algebra = build_B(F)
            names = ("X", "Y", "X^2", "Y^2", "XY", "X^2Y", "XY^2", "X^2Y^2")
            self.jbasis = np.array([self.algebra.element(s) for s in names])
            self.labels = ("x", "y", "x^2", "y^2", "xy", "x^2y", "xy^2", "x^2y^2")
            self.inner_w = self.algebra.element("XY")
            self._verbatim, self._corrected, self._pos, self._inn = (
                _h2_verbatim, _h2_corrected, _H2_POS, _h2_inn)
        self.gens = (self.jbasis[0], self.jbasis[1])

    def __repr__(self):
        return f"UnipotentFamily({self.tag}, {self.field})"

    def _codes(self, params):
        if len(params) != 9:
            raise ValueError("unipotent families take 9 parameters a..i")
        return [self.field.coerce(p) for p in params]

    def matrix(self, params, verbatim: bool = False) -> np.ndarray:
        p = self._codes(params)
        build = self._verbatim if verbatim else self._corrected
        return np.array(build(self.field, p), dtype=np.int64)

    def element(self, params, verbatim: bool = False) -> TruncEndo:
        return TruncEndo(self.algebra, self.jbasis, self.matrix(params, verbatim))

    def params_of(self, m) -> tuple[int, ...] | None:
        """Parameters of m if m lies in the (corrected) family, else None."""
        m = np.asarray(m.matrix if isinstance(m, TruncEndo) else m, dtype=np.int64)
        p = tuple(int(m[self._pos[k]]) for k in PARAMS)
        return p if np.array_equal(self.matrix(p), m) else None

    def inn_closed_form(self, params) -> bool:
        return self._inn(self.field, self._codes(params))

    def one_parameter(self, k: int) -> TruncEndo:
        p = [0] * 9
        p[k] = 1
        return self.element(p)

    def inner(self, eps) -> TruncEndo:
        F = self.field
        e1, e2, e3 = (F.coerce(e) for e in eps)
        x, y = self.gens
        u = F.add(F.add(F.mul(e1, x), F.mul(e2, y)), F.mul(e3, self.inner_w))
        return inner_auto(self.algebra, u, self.jbasis)

    @cached_property
    def _inner_set(self) -> dict[bytes, tuple[int, int, int]]:
        """All inner automorphisms from u = e1 x + e2 y + e3 w (exhaustive over the field)."""
        out = {}
        for eps in itertools.product(range(self.field.order), repeat=3):
            out.setdefault(self.inner(eps).matrix.tobytes(), eps)
        return out

    def all_params(self) -> np.ndarray:
        if self.field.degree != 1:
            raise ValueError("exhaustive enumeration runs over GF(3)")
        return np.array(list(itertools.product(range(3), repeat=9)), dtype=np.int64)

    def batch_matrices(self, params: np.ndarray, verbatim: bool = False) -> np.ndarray:
        """Family matrices for a stack of GF(3) parameter tuples."""
        P = np.asarray(params, dtype=np.int64)
        build = self._verbatim if verbatim else self._corrected
        rows = build(_VecGF3, [P[:, k] for k in range(9)])
        n = P.shape[0]
        out = np.empty((n, 8, 8), dtype=np.int64)
        for r, row in enumerate(rows):
            for c, v in enumerate(row):
                out[:, r, c] = np.broadcast_to(np.asarray(v) % 3, (n,))
        return out


class _VecGF3:
    """Elementwise GF(3) arithmetic on integer arrays, for batched transcription."""

    @staticmethod
    def mul(a, b):
        return (np.asarray(a) * np.asarray(b)) % 3

    @staticmethod
    def add(a, b):
        return (np.asarray(a) + np.asarray(b)) % 3

    @staticmethod
    def sub(a, b):
        return (np.asarray(a) - np.asarray(b)) % 3

    @staticmethod
    def neg(a):
        return (-np.asarray(a)) % 3


_FAMILIES: dict = {}


def family(tag: str, F: FieldSpec | None = None) -> UnipotentFamily:
    F = F or GF(1)
    key = (tag, F)
    if key not in _FAMILIES:
        _FAMILIES[key] = UnipotentFamily(tag, F)
    return _FAMILIES[key]


def H3_U(F: FieldSpec | None = None) -> UnipotentFamily:
    return family("H3_U", F)


def H2_U(F: FieldSpec | None = None) -> UnipotentFamily:
    return family("H2_U", F)


def unipotent_element(fam: UnipotentFamily | str, params, verbatim: bool = False) -> TruncEndo:
    """Family element; raises InvariantViolation if it is not an automorphism."""
    if isinstance(fam, str):
        fam = family(fam)
    phi = fam.element(params, verbatim)
    ok, why = is_automorphism(fam.algebra, phi, reason=True)
    if not ok:
        shown = ",".join(fam.field.format(c) for c in fam._codes(params))
        raise InvariantViolation(f"{fam.tag}({shown}) is not an automorphism: {why}")
    return phi


# -- group structure ------------------------------------------------------------------------

def _triple_nilpotent(F, *nils) -> bool:
    for p, q, r in itertools.product(nils, repeat=3):
        if F.matmul(F.matmul(p, q), r).any():
            return False
    return True


def truncated_inverse(phi: TruncEndo) -> TruncEndo:
    """Id - phi0 + phi0^2."""
    F = phi.field
    N = phi.nilpart
    if F.matmul(F.matmul(N, N), N).any():
        raise InvariantViolation("phi0 cubed is not zero")
    m = F.add(F.sub(identity(N.shape[0]), N), F.matmul(N, N))
    return TruncEndo(phi.base, phi.jbasis, m)


def group_commutator(phi: TruncEndo, tau: TruncEndo, check: bool = True) -> TruncEndo:
    """phi tau phi^-1 tau^-1 by the closed formula Id + phi0 tau0 - tau0 phi0."""
    F = phi.field
    A, B = phi.nilpart, tau.nilpart
    if not _triple_nilpotent(F, A, B):
        raise InvariantViolation("triple products of the nilpotent parts do not vanish")
    closed = F.add(identity(A.shape[0]), F.sub(F.matmul(A, B), F.matmul(B, A)))
    if check:
        direct = F.matmul(F.matmul(phi.matrix, tau.matrix),
                          F.matmul(inverse(F, phi.matrix), inverse(F, tau.matrix)))
        if not np.array_equal(closed, direct):
            raise InvariantViolation("commutator closed formula disagrees with composition")
    return TruncEndo(phi.base, phi.jbasis, closed)


def inn_membership(fam: UnipotentFamily, phi: TruncEndo) -> bool:
    """Closed-form conditions and an exhaustive lookup among inner automorphisms; both must agree."""
    p = fam.params_of(phi)
    exhaustive = phi.matrix.tobytes() in fam._inner_set
    if p is None:
        if exhaustive:
            raise InvariantViolation("inner automorphism outside the family")
        return False
    closed = fam.inn_closed_form(p)
    if closed != exhaustive:
        raise InvariantViolation(f"Inn tests disagree at parameters {p}")
    return closed


# -- exhaustive kernels over GF(3) ----------------------------------------------------------

def batch_automorphism_check(fam: UnipotentFamily, mats: np.ndarray) -> np.ndarray:
    """Boolean mask: which 8x8 GF(3) family matrices extend to algebra automorphisms."""
    a = fam.algebra
    P = _jchange(a, fam.jbasis)
    Pinv = inverse(fam.field, P)
    n = mats.shape[0]
    big = np.zeros((n, 9, 9), dtype=np.int64)
    big[:, 0, 0] = 1
    big[:, 1:, 1:] = mats
    M = np.einsum("ab,nbc,cd->nad", P, big, Pinv) % 3
    lhs = np.einsum("ijk,nlk->nijl", a.consts, M) % 3
    rhs = np.einsum("npi,nqj,pqk->nijk", M, M, a.consts) % 3
    ok = (lhs == rhs).reshape(n, -1).all(axis=1)
    # unitriangular matrices are invertible
    return ok & _batch_unitriangular(mats)


def _batch_unitriangular(mats):
    n = mats.shape[-1]
    diag_ok = (np.einsum("nii->ni", mats) == 1).all(axis=1)
    upper_ok = ~np.triu(mats, 1).reshape(mats.shape[0], -1).any(axis=1)
    return diag_ok & upper_ok


def _batch_matmul3(A, B):
    return np.einsum("nij,njk->nik", A, B) % 3


def _batch_params(fam: UnipotentFamily, mats: np.ndarray) -> np.ndarray:
    return np.stack([mats[:, r, c] for r, c in (fam._pos[k] for k in PARAMS)], axis=1)


def _batch_inn_closed(fam: UnipotentFamily, p: np.ndarray) -> np.ndarray:
    a, b, c, d, e, f, g, h, i = (p[:, k] for k in range(9))
    if fam.tag == "H3_U":
        zero = (a == 0) & (e == 0) & (d == 0) & (h == 0) & (i == 0)
        return zero & ((c + g) % 3 == (-2 * b * f) % 3)
    zero = (a == 0) & (e == 0) & (d == 0) & (h == 0)
    return zero & (c == (-b * b) % 3) & (g == (-f * f) % 3)


def _batch_in_family(fam, mats):
    p = _batch_params(fam, mats)
    return (fam.batch_matrices(p) == mats).reshape(mats.shape[0], -1).all(axis=1), p


def _batch_inn(fam: UnipotentFamily, mats: np.ndarray) -> np.ndarray:
    """Dual Inn test on a batch; raises if the two methods disagree anywhere."""
    infam, p = _batch_in_family(fam, mats)
    closed = infam & _batch_inn_closed(fam, p)
    keys = fam._inner_set
    exhaustive = np.array([m.tobytes() in keys for m in mats])
    if not np.array_equal(closed, exhaustive):
        bad = int(np.flatnonzero(closed != exhaustive)[0])
        raise InvariantViolation(f"Inn tests disagree at parameters {tuple(p[bad])}")
    return closed


@dataclass(frozen=True)
class CenterCount:
    tag: str
    n_elements: int
    n_automorphisms: int
    n_central: int
    n_inn: int
    inverse_ok: bool

    @property
    def log_central(self) -> int:
        return _log3(self.n_central)

    @property
    def log_inn(self) -> int:
        return _log3(self.n_inn)

    @property
    def dimension(self) -> int:
        return self.log_central - self.log_inn

    def __str__(self):
        return f"N_central={self.n_central} N_inn={self.n_inn} dim={self.dimension}"


def _log3(n: int) -> int:
    k = 0
    m = n
    while m > 1 and m % 3 == 0:
        m //= 3
        k += 1
    if m != 1:
        raise InvariantViolation(f"count {n} is not a power of 3")
    return k


def _count_chunk(fam: UnipotentFamily, params: np.ndarray, gens: np.ndarray):
    mats = fam.batch_matrices(params)
    n_auto = int(batch_automorphism_check(fam, mats).sum())
    eye = np.eye(8, dtype=np.int64)
    N = (mats - eye) % 3
    inv = (eye - N + _batch_matmul3(N, N)) % 3
    inverse_ok = bool(((_batch_matmul3(mats, inv) == eye).all()))
    central = np.ones(mats.shape[0], dtype=bool)
    for g in gens:
        G = (g - eye) % 3
        comm = (eye + _batch_matmul3(N, np.broadcast_to(G, N.shape))
                - np.einsum("ij,njk->nik", G, N)) % 3
        central &= _batch_inn(fam, comm)
    inn = _batch_inn(fam, mats)
    return n_auto, int(central.sum()), int(inn.sum()), inverse_ok


def center_mod_inn_dimension(fam: UnipotentFamily | str, jobs: int = 1,
                             chunk: int = 2187) -> CenterCount:
    """dim Z(R_u(Out0)) by counting GF(3) points of the central preimage and of Inn."""
    if isinstance(fam, str):
        fam = family(fam)
    if fam.field.degree != 1:
        raise ValueError("point counting runs over GF(3)")
    if fam.tag in _COUNTS:
        return _COUNTS[fam.tag]
    params = fam.all_params()
    gens = [fam.one_parameter(k).matrix for k in range(9)]
    for g in gens:
        if not is_automorphism(fam.algebra, TruncEndo(fam.algebra, fam.jbasis, g)):
            raise InvariantViolation("one-parameter generator is not an automorphism")
    fam._inner_set  # build once before any worker threads start
    pieces = [params[s:s + chunk] for s in range(0, params.shape[0], chunk)]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(lambda p: _count_chunk(fam, p, gens), pieces))
    else:
        results = [_count_chunk(fam, p, gens) for p in pieces]
    n_auto = sum(r[0] for r in results)
    n_central = sum(r[1] for r in results)
    n_inn = sum(r[2] for r in results)
    inverse_ok = all(r[3] for r in results)
    out = CenterCount(fam.tag, params.shape[0], n_auto, n_central, n_inn, inverse_ok)
    _COUNTS[fam.tag] = out
    return out


_COUNTS: dict[str, CenterCount] = {}
