"""Structure-constant algebras and their structural analysis.

An :class:`AlgebraTable` stores ``consts[i, j, k]``, the ``b_k``-coefficient of
``b_i * b_j``.  Elements are coefficient vectors of field codes.  Linear maps
are matrices acting on column vectors, so column ``j`` is the image of ``b_j``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .field import FieldSpec, GF, embedding
from .linalg import Subspace, charpoly, det, inverse, nullspace, rank, solve

__all__ = [
    "AlgebraError",
    "NotLocalError",
    "HypothesisError",
    "AlgebraTable",
    "build",
    "transport",
    "random_transport",
    "extend_scalars",
    "subalgebra",
    "radical",
    "StructuralReport",
    "SymmetrizingForm",
    "analyze",
    "find_symmetrizing_form",
    "center_profile_matches_ZB",
    "center_profile",
    "CenterProfile",
    "center",
    "socle",
    "commutator_space",
    "centralizer",
    "radical_powers",
    "is_associative",
    "hypothesis_failures",
    "LemmaCheck",
    "LemmaReport",
    "assert_structural_lemmas",
]


class AlgebraError(ValueError):
    pass


class NotLocalError(AlgebraError):
    pass


class HypothesisError(AlgebraError):
    pass


@dataclass(frozen=True, eq=False)
class AlgebraTable:
    field: FieldSpec
    labels: tuple[str, ...]
    unit: int
    consts: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.labels)

    def __eq__(self, other):
        if not isinstance(other, AlgebraTable):
            return NotImplemented
        return (self.field == other.field and self.labels == other.labels
                and self.unit == other.unit and np.array_equal(self.consts, other.consts))

    def __hash__(self):
        return hash((self.field, self.labels, self.unit, self.consts.tobytes()))

    # -- elements ------------------------------------------------------------
    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def one(self) -> np.ndarray:
        return self.basis_vector(self.unit)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def element(self, terms: dict[str, object] | str) -> np.ndarray:
        """Vector from {label: coefficient}, or a single label."""
        if isinstance(terms, str):
            terms = {terms: 1}
        v = np.zeros(self.dim, dtype=np.int64)
        for lab, c in terms.items():
            v[self.index(lab)] = self.field.add(v[self.index(lab)], self.field.coerce(c))
        return v

    def format(self, v) -> str:
        parts = []
        for i, c in enumerate(np.asarray(v)):
            if c:
                s = self.field.format(int(c))
                parts.append(self.labels[i] if s == "1" else f"({s})*{self.labels[i]}")
        return " + ".join(parts) if parts else "0"

    # -- multiplication ----------------------------------------------------------
    def mul(self, u, v) -> np.ndarray:
        F = self.field
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        if F.degree == 1:
            return np.einsum("i,j,ijk->k", u, v, self.consts) % 3
        w = F.mul(u[:, None], v[None, :])
        idx = np.nonzero(w)
        if idx[0].size == 0:
            return np.zeros(self.dim, dtype=np.int64)
        return F.sum(F.mul(w[idx][:, None], self.consts[idx]), axis=0)

    def mul_many(self, us, vs) -> np.ndarray:
        """Row-wise products of two stacks of vectors."""
        F = self.field
        us = np.asarray(us, dtype=np.int64).reshape(-1, self.dim)
        vs = np.asarray(vs, dtype=np.int64).reshape(-1, self.dim)
        if F.degree == 1:
            return np.einsum("mi,mj,ijk->mk", us, vs, self.consts) % 3
        w = F.mul(us[:, :, None], vs[:, None, :])
        terms = F.mul(w[:, :, :, None], self.consts[None])
        return F.sum(terms.reshape(us.shape[0], -1, self.dim), axis=1)

    def products(self, us, vs) -> np.ndarray:
        """All products u*v for u in us, v in vs, as a stack of rows."""
        us = np.asarray(us, dtype=np.int64).reshape(-1, self.dim)
        vs = np.asarray(vs, dtype=np.int64).reshape(-1, self.dim)
        if us.shape[0] == 0 or vs.shape[0] == 0:
            return np.zeros((0, self.dim), dtype=np.int64)
        a = np.repeat(us, vs.shape[0], axis=0)
        b = np.tile(vs, (us.shape[0], 1))
        return self.mul_many(a, b)

    def commutator(self, u, v) -> np.ndarray:
        return self.field.sub(self.mul(u, v), self.mul(v, u))

    def left(self, u) -> np.ndarray:
        """Matrix of x -> u x."""
        F = self.field
        u = np.asarray(u, dtype=np.int64)
        return F.sum(F.mul(u[:, None, None], self.consts), axis=0).T

    def right(self, u) -> np.ndarray:
        """Matrix of x -> x u."""
        F = self.field
        u = np.asarray(u, dtype=np.int64)
        return F.sum(F.mul(u[None, :, None], self.consts), axis=1).T

    def power(self, u, e: int) -> np.ndarray:
        r = self.one()
        for _ in range(e):
            r = self.mul(r, u)
        return r

    def word(self, *factors) -> np.ndarray:
        r = self.one()
        for f in factors:
            r = self.mul(r, f)
        return r

    def span(self, vectors) -> Subspace:
        return Subspace(self.field, self.dim, vectors)


# -- validation ------------------------------------------------------------------

def _assoc_defects(F: FieldSpec, c: np.ndarray) -> np.ndarray:
    if F.degree == 1:
        t1 = np.einsum("ijl,lkm->ijkm", c, c) % 3
        t2 = np.einsum("jkl,ilm->ijkm", c, c) % 3
    else:
        t1 = F.sum(F.mul(c[:, :, None, :, None], c.transpose(1, 0, 2)[None, None]), axis=3)
        t2 = F.sum(F.mul(c[None, :, :, :, None], c[:, None, None, :, :]), axis=3)
    return np.argwhere(np.any(t1 != t2, axis=-1))


def is_associative(a: AlgebraTable) -> bool:
    return _assoc_defects(a.field, a.consts).shape[0] == 0


def build(labels, unit: int, product, F: FieldSpec) -> AlgebraTable:
    """Validated table; ``product`` is an n x n x n array of field codes."""
    labels = tuple(str(x) for x in labels)
    n = len(labels)
    c = np.asarray(product, dtype=np.int64)
    if c.shape != (n, n, n):
        raise AlgebraError(f"product array has shape {c.shape}, expected {(n, n, n)}")
    if np.any(c < 0) or np.any(c >= F.order):
        raise AlgebraError("product entries are not field codes")
    if not 0 <= unit < n:
        raise AlgebraError("unit index out of range")
    eye = np.eye(n, dtype=np.int64)
    for j in range(n):
        if not (np.array_equal(c[unit, j], eye[j]) and np.array_equal(c[j, unit], eye[j])):
            raise AlgebraError(f"unit law violated at basis element {j} ({labels[j]})")
    bad = _assoc_defects(F, c)
    if bad.shape[0]:
        i, j, k = (int(x) for x in bad[0])
        raise AlgebraError(
            f"associativity fails at triple ({i},{j},{k}) = "
            f"({labels[i]},{labels[j]},{labels[k]})")
    c = c.copy()
    c.setflags(write=False)
    return AlgebraTable(F, labels, unit, c)


def transport(a: AlgebraTable, P, labels=None) -> AlgebraTable:
    """Table in the basis whose j-th vector is column j of P (old coordinates)."""
    F = a.field
    P = np.asarray(P, dtype=np.int64)
    Pinv = inverse(F, P)
    n = a.dim
    cols = P.T
    prods = a.products(cols, cols)  # row i*n+j is new_i * new_j in old coords
    new = F.matmul(Pinv, prods.T).T.reshape(n, n, n)
    unit_cols = [j for j in range(n) if np.array_equal(P[:, j], a.one())]
    if not unit_cols:
        raise AlgebraError("transport matrix does not fix the unit")
    labels = labels if labels is not None else tuple(f"e{j}" for j in range(n))
    return build(labels, unit_cols[0], new, F)


def random_transport(a: AlgebraTable, rng: np.random.Generator):
    """A random unit-fixing basis change P and the transported table."""
    F = a.field
    n = a.dim
    while True:
        P = rng.integers(0, F.order, size=(n, n), dtype=np.int64)
        P[:, a.unit] = a.one()
        if rank(F, P) == n:
            return transport(a, P, labels=a.labels), P


def extend_scalars(a: AlgebraTable, F2: FieldSpec) -> AlgebraTable:
    emb = embedding(a.field, F2)
    return build(a.labels, a.unit, emb[a.consts], F2)


def subalgebra(a: AlgebraTable, space: Subspace, labels=None) -> AlgebraTable:
    """Table of a unital subalgebra, on a basis starting with 1."""
    F = a.field
    one = a.one()
    if not space.contains(one):
        raise AlgebraError("subspace does not contain the unit")
    rest = space.extend_complement(a.span(one))
    basis = np.vstack([one[None, :], rest])
    m = basis.shape[0]
    prods = a.products(basis, basis)
    coords = solve(F, basis.T, prods.T)
    if coords is None:
        raise AlgebraError("subspace is not closed under multiplication")
    consts = coords.T.reshape(m, m, m)
    labels = labels if labels is not None else tuple(f"s{j}" for j in range(m))
    return build(labels, 0, consts, F)


# -- radical -----------------------------------------------------------------------

def _scalar_part(a: AlgebraTable, i: int) -> int:
    F = a.field
    cp = charpoly(F, a.left(a.basis_vector(i)))
    n = a.dim
    for lam in range(F.order):
        # (t - lam)^n, low degree first
        target = [1]
        for _ in range(n):
            out = [0] * (len(target) + 1)
            for d, c in enumerate(target):
                out[d + 1] = int(F.add(out[d + 1], c))
                out[d] = int(F.sub(out[d], F.mul(lam, c)))
            target = out
        if target == list(cp):
            return lam
    raise NotLocalError(
        f"not local over this field: characteristic polynomial of L_{a.labels[i]} "
        "is not a power of a linear factor")


def radical(a: AlgebraTable) -> Subspace:
    F = a.field
    one = a.one()
    lams = [_scalar_part(a, i) for i in range(a.dim)]
    vecs = np.array([F.sub(a.basis_vector(i), F.mul(lams[i], one)) for i in range(a.dim)])
    J = a.span(vecs)
    if J.dim != a.dim - 1:
        raise NotLocalError("not local over this field: radical has the wrong dimension")
    basis = np.eye(a.dim, dtype=np.int64)
    if not (J.contains(a.products(basis, J.basis)) and J.contains(a.products(J.basis, basis))):
        raise NotLocalError("not local over this field: candidate radical is not an ideal")
    power = J
    for _ in range(a.dim):
        if power.dim == 0:
            break
        power = a.span(a.products(power.basis, J.basis))
    if power.dim:
        raise NotLocalError("not local over this field: candidate radical is not nilpotent")
    return J


def radical_powers(a: AlgebraTable, J: Subspace) -> list[Subspace]:
    """[J_1, J_2, ...] stopping before the first zero power."""
    powers = []
    cur = J
    while cur.dim:
        powers.append(cur)
        cur = a.span(a.products(cur.basis, J.basis))
    return powers


def center(a: AlgebraTable) -> Subspace:
    F = a.field
    blocks = [F.sub(a.right(a.basis_vector(i)), a.left(a.basis_vector(i))) for i in range(a.dim)]
    return nullspace(F, np.vstack(blocks))


def socle(a: AlgebraTable, J: Subspace) -> Subspace:
    if J.dim == 0:
        return Subspace.full(a.field, a.dim)
    blocks = [a.left(v) for v in J.basis] + [a.right(v) for v in J.basis]
    return nullspace(a.field, np.vstack(blocks))


def commutator_space(a: AlgebraTable) -> Subspace:
    F = a.field
    n = a.dim
    diff = F.sub(a.consts, a.consts.transpose(1, 0, 2)).reshape(n * n, n)
    return a.span(diff)


def centralizer(a: AlgebraTable, space: Subspace, x) -> Subspace:
    """{v in space : vx = xv}."""
    F = a.field
    if space.dim == 0:
        return space
    ad = F.sub(a.right(x), a.left(x))
    coeffs = nullspace(F, F.matmul(ad, space.basis.T))
    return a.span(F.matmul(coeffs.basis, space.basis)) if coeffs.dim else Subspace.zero(F, a.dim)


# -- symmetrizing forms --------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SymmetrizingForm:
    values: np.ndarray

    def gram(self, a: AlgebraTable) -> np.ndarray:
        return _gram(a, self.values)

    def evaluate(self, F: FieldSpec, v) -> int:
        return int(F.sum(F.mul(np.asarray(v, dtype=np.int64), self.values)))


def _gram(a: AlgebraTable, s) -> np.ndarray:
    F = a.field
    s = np.asarray(s, dtype=np.int64)
    return F.sum(F.mul(a.consts, s[None, None, :]), axis=2)


def _gram_invertible(a: AlgebraTable, s) -> bool:
    return rank(a.field, _gram(a, s)) == a.dim


def _lattice_points(m: int, d: int):
    """Exponent vectors in N^m of total degree <= d."""
    if m == 0:
        yield ()
        return
    for first in range(d + 1):
        for rest in _lattice_points(m - 1, d - first):
            yield (first,) + rest


def _det_pencil_vanishes(a: AlgebraTable, functionals: np.ndarray) -> bool:
    """Exact test that det(sum_k s_k G_k) is the zero polynomial in s.

    The determinant has total degree <= n; it vanishes identically iff it
    vanishes on the principal lattice {(t_{a_1}, ..., t_{a_m}) : sum a_i <= n}
    built on n+1 distinct nodes, which needs a field with more than n elements.
    """
    F = a.field
    n = a.dim
    m = functionals.shape[0]
    deg = F.degree
    while 3**deg <= n:
        deg += F.degree
    if deg > 4:
        raise AlgebraError("no supported extension field is large enough for the exact test")
    from .field import GF
    big = F if deg == F.degree else GF(deg)
    emb = embedding(F, big)
    grams = np.array([emb[_gram(a, s)] for s in functionals])
    nodes = np.arange(n + 1)
    for pt in _lattice_points(m, n):
        coeffs = nodes[list(pt)]
        g = big.sum(big.mul(coeffs[:, None, None], grams), axis=0)
        if det(big, g):
            return False
    return True


def find_symmetrizing_form(a: AlgebraTable, seed: int = 20240531,
                           random_trials: int = 64) -> SymmetrizingForm | None:
    F = a.field
    comm = commutator_space(a)
    ann = nullspace(F, comm.basis) if comm.dim else Subspace.full(F, a.dim)
    funcs = ann.basis
    m = funcs.shape[0]
    if m == 0:
        return None

    def candidates():
        for f in funcs:
            yield f
        for size in (2, 3):
            for idx in itertools.combinations(range(m), size):
                for coeffs in itertools.product((1, 2), repeat=size):
                    yield F.sum(F.mul(np.array(coeffs)[:, None], funcs[list(idx)]), axis=0)
        rng = np.random.default_rng(seed)
        for _ in range(random_trials):
            c = rng.integers(0, F.order, size=m)
            yield F.sum(F.mul(c[:, None], funcs), axis=0)

    for s in candidates():
        if s.any() and _gram_invertible(a, s):
            return SymmetrizingForm(np.asarray(s, dtype=np.int64))
    if _det_pencil_vanishes(a, funcs):
        return None
    # the determinant is a nonzero polynomial that happens to vanish on all
    # sampled points: fall back to exhaustive search when that is small
    if F.order**m > 10**6:
        raise AlgebraError("symmetrizing form exists over an extension; field too small to find it")
    for c in itertools.product(range(F.order), repeat=m):
        s = F.sum(F.mul(np.array(c)[:, None], funcs), axis=0)
        if s.any() and _gram_invertible(a, s):
            return SymmetrizingForm(np.asarray(s, dtype=np.int64))
    return None


# -- structural report ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class StructuralReport:
    algebra: AlgebraTable
    radical_powers: tuple[Subspace, ...]
    center: Subspace
    center_layers: tuple[Subspace, ...]
    socle: Subspace
    commutator_space: Subspace
    loewy: tuple[int, ...]
    sym_form: SymmetrizingForm | None

    def J(self, i: int) -> Subspace:
        """J_i with J_0 = A and J_i = 0 past the Loewy length."""
        if i == 0:
            return Subspace.full(self.algebra.field, self.algebra.dim)
        if i <= len(self.radical_powers):
            return self.radical_powers[i - 1]
        return Subspace.zero(self.algebra.field, self.algebra.dim)

    def Z(self, i: int) -> Subspace:
        if i == 0:
            return self.center
        return self.center & self.J(i)

    @property
    def loewy_length(self) -> int:
        return len(self.radical_powers)


def analyze(a: AlgebraTable) -> StructuralReport:
    J = radical(a)
    powers = radical_powers(a, J)
    Z = center(a)
    layers = tuple(Z & p for p in powers)
    loewy = tuple(powers[i].dim - (powers[i + 1].dim if i + 1 < len(powers) else 0)
                  for i in range(len(powers)))
    return StructuralReport(
        algebra=a,
        radical_powers=tuple(powers),
        center=Z,
        center_layers=layers,
        socle=socle(a, J),
        commutator_space=commutator_space(a),
        loewy=loewy,
        sym_form=find_symmetrizing_form(a),
    )


# -- the center of B --------------------------------------------------------------------

@dataclass(frozen=True)
class CenterProfile:
    """Invariants certifying Z(A) = Z(B).

    ``isotropic`` is judged over the algebraic closure: a nonzero isotropic vector of the
    rank-2 pairing is searched in the working field and then in its quadratic extension.
    ``split`` records whether one already exists over the working field.
    """

    dim: int
    loewy: tuple[int, ...]
    pairing_rank: int
    isotropic: bool
    split: bool = False

    @property
    def matches(self) -> bool:
        return self.dim == 6 and self.loewy == (4, 1) and self.pairing_rank == 2 and self.isotropic


def _isotropic_vector(F, q) -> bool:
    for u, v in itertools.product(range(F.order), repeat=2):
        if (u, v) == (0, 0):
            continue
        w = np.array([u, v])
        if F.matmul(F.matmul(w[None, :], q), w[:, None])[0, 0] == 0:
            return True
    return False


def center_profile(a: AlgebraTable, rep: StructuralReport | None = None) -> CenterProfile:
    F = a.field
    Zsp = rep.center if rep is not None else center(a)
    ztab = subalgebra(a, Zsp)
    zJ = radical(ztab)
    zpowers = radical_powers(ztab, zJ)
    zloewy = tuple(zpowers[i].dim - (zpowers[i + 1].dim if i + 1 < len(zpowers) else 0)
                   for i in range(len(zpowers)))
    if len(zpowers) < 2 or zpowers[1].dim != 1:
        return CenterProfile(Zsp.dim, zloewy, -1, False)
    top = zpowers[0].extend_complement(zpowers[1])
    sq = zpowers[1].basis[0]
    piv = int(np.flatnonzero(sq)[0])
    prods = ztab.products(top, top)
    if not zpowers[1].contains(prods):
        return CenterProfile(Zsp.dim, zloewy, -1, False)
    scale = F.inv(sq[piv])
    gram = F.mul(prods[:, piv], scale).reshape(top.shape[0], top.shape[0])
    r = rank(F, gram)
    isotropic = split = False
    if r == 2:
        rad = nullspace(F, gram)
        comp = Subspace.full(F, gram.shape[0]).extend_complement(rad)
        q = F.matmul(F.matmul(comp, gram), comp.T)
        split = isotropic = _isotropic_vector(F, q)
        if not split:
            if 2 * F.degree <= 4:
                F2 = GF(2 * F.degree)
                isotropic = _isotropic_vector(F2, embedding(F, F2)[q])
            else:
                # every element of F is a square in the quadratic extension,
                # in particular -det q, so the binary form splits there
                isotropic = True
    return CenterProfile(Zsp.dim, zloewy, r, isotropic, split)


def center_profile_matches_ZB(a: AlgebraTable, rep: StructuralReport | None = None) -> bool:
    return center_profile(a, rep).matches


def hypothesis_failures(a: AlgebraTable, rep: StructuralReport | None = None) -> list[str]:
    """Reasons a fails to be symmetric, local, 9-dimensional with Z(A) = Z(B)."""
    reasons = []
    if a.dim != 9:
        reasons.append(f"dim A = {a.dim} != 9")
    if rep is None:
        try:
            rep = analyze(a)
        except NotLocalError as exc:
            return reasons + [str(exc)]
    if rep.sym_form is None:
        reasons.append("no symmetrizing form")
    if rep.commutator_space.dim != 3:
        reasons.append(f"dim [A,A] = {rep.commutator_space.dim} != 3")
    prof = center_profile(a, rep)
    if not prof.matches:
        reasons.append(
            f"center profile (dim={prof.dim}, loewy={prof.loewy}, pairing rank="
            f"{prof.pairing_rank}, isotropic={prof.isotropic}) differs from Z(B)")
    return reasons


# -- structural checks ---------------------------------------------------------------

@dataclass(frozen=True)
class LemmaCheck:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class LemmaReport:
    checks: list[LemmaCheck] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = ""):
        self.checks.append(LemmaCheck(name, bool(ok), detail))

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[LemmaCheck]:
        return [c for c in self.checks if not c.ok]

    def __iter__(self):
        return iter(self.checks)


def _socle_of_commutative(a: AlgebraTable, Zsp: Subspace, JZ: Subspace) -> Subspace:
    """Annihilator of J(Z) inside Z."""
    F = a.field
    if JZ.dim == 0:
        return Zsp
    blocks = [F.matmul(a.left(v), Zsp.basis.T) for v in JZ.basis]
    coeffs = nullspace(F, np.vstack(blocks))
    if coeffs.dim == 0:
        return Subspace.zero(F, a.dim)
    return a.span(F.matmul(coeffs.basis, Zsp.basis))


def _words(gens: np.ndarray, length: int):
    return itertools.product(range(gens.shape[0]), repeat=length)


def _spanning_word_check(a: AlgebraTable, rep: StructuralReport):
    """Products of prefixes with chosen spanning words give J^(n+m) mod J^(n+m+1)."""
    gens = rep.J(1).extend_complement(rep.J(2))
    results = []
    L = rep.loewy_length
    for n in range(1, L + 1):
        chosen: list[tuple[int, ...]] = []
        chosen_vecs = []
        cur = rep.J(n + 1)
        for w in _words(gens, n):
            v = a.word(*gens[list(w)])
            if not cur.contains(v):
                chosen.append(w)
                chosen_vecs.append(v)
                cur = cur + a.span(v)
        if not cur.contains(rep.J(n)):
            results.append((n, 0, False))
            continue
        for m in range(1, n + 1):
            if n + m > L:
                break
            prods = [a.word(*gens[list(wj[:m])], vi) for wj in chosen for vi in chosen_vecs]
            span = a.span(np.array(prods)) + rep.J(n + m + 1)
            results.append((n, m, span.contains(rep.J(n + m))))
    return results


def assert_structural_lemmas(a: AlgebraTable, rep: StructuralReport | None = None) -> LemmaReport:
    """Run the structural assertion suite; raises HypothesisError first if needed."""
    if rep is None:
        rep = analyze(a)
    reasons = hypothesis_failures(a, rep)
    if reasons:
        raise HypothesisError("hypothesis fails: " + "; ".join(reasons))
    F = a.field
    out = LemmaReport()
    J = rep.J
    Z = rep.center
    Zi = rep.Z
    soc = rep.socle
    comm = rep.commutator_space
    full = Subspace.full(F, a.dim)
    basis = full.basis

    # facts about local symmetric algebras
    ztab = subalgebra(a, Z)
    zJ_dim = radical(ztab).dim
    JZ = Z & J(1)
    socZ = _socle_of_commutative(a, Z, JZ)
    out.add("local symmetric: dim Soc(A) = 1", soc.dim == 1, f"dim Soc = {soc.dim}")
    out.add("local symmetric: Soc(A) in Soc(Z(A))", socZ.contains(soc))
    out.add("local symmetric: Soc(A) meets [A,A] trivially", (soc & comm).dim == 0)
    out.add("local symmetric: dim A = dim Z + dim [A,A]", a.dim == Z.dim + comm.dim,
            f"{a.dim} vs {Z.dim} + {comm.dim}")
    out.add("local symmetric: Z(A) local with J(Z) = Z cap J", zJ_dim == JZ.dim == Z.dim - 1)
    out.add("local symmetric: Soc(A) = last nonzero radical power", soc == J(rep.loewy_length))
    sf = rep.sym_form
    out.add("symmetrizing form: vanishes on [A,A] with invertible Gram",
            sf is not None and not F.matmul(comm.basis, sf.values).any()
            and rank(F, sf.gram(a)) == a.dim)

    # spanning words
    for n, m, ok in _spanning_word_check(a, rep):
        out.add(f"spanning words: J^{n} words give J^{n + m} mod J^{n + m + 1}"
                if m else f"spanning words: words of length {n} span J^{n} mod J^{n + 1}", ok)

    # one-dimensional layers
    for n in range(1, rep.loewy_length + 1):
        if J(n).dim - J(n + 1).dim == 1:
            out.add(f"one-dimensional layer: dim J^{n}/J^{n + 1} = 1 gives J^{n - 1} in Z",
                    Z.contains(J(n - 1)))

    # structure under the hypothesis
    out.add("structure: J_2 not in Z_2", not Zi(2).contains(J(2)))
    out.add("structure: J_3 in Z_3", Zi(3).contains(J(3)))
    z1j2 = Zi(1) + J(2)
    out.add("structure: dim J_1/(Z_1+J_2) = 2 and dim J_2/Z_2 = 1",
            J(1).quotient_dim(z1j2) == 2 and J(2).quotient_dim(Zi(2)) == 1)
    from .normalize import choose_generators, GeneratorError
    try:
        gx, gy = choose_generators(a, rep)[:2]
        pair_ok = (centralizer(a, J(2), gx) == Zi(2) and centralizer(a, J(2), gy) == Zi(2)
                   and (z1j2 + a.span(np.array([gx, gy]))).contains(J(1)))
    except GeneratorError:
        pair_ok = False
    out.add("structure: generators x, y with C_{J_2}(x) = C_{J_2}(y) = Z_2", pair_ok)
    out.add("structure: Z_1 is an ideal",
            Zi(1).contains(a.products(basis, Zi(1).basis))
            and Zi(1).contains(a.products(Zi(1).basis, basis)))
    jb = J(1).basis
    sym = F.add(a.products(jb, jb), a.mul_many(np.tile(jb, (jb.shape[0], 1)),
                                               np.repeat(jb, jb.shape[0], axis=0)))
    out.add("structure: uv + vu in Z_2 for u, v in J", Zi(2).contains(sym))
    z1sq = a.span(a.products(Zi(1).basis, Zi(1).basis))
    out.add("structure: Z_1^2 = Soc(A)", z1sq == soc)
    cz1 = comm & Zi(1)
    out.add("structure: [A,A] not in Z_1", not Zi(1).contains(comm))
    out.add("structure: Soc(Z) = ([A,A] cap Z_1) + Soc(A), direct",
            (cz1 & soc).dim == 0 and cz1 + soc == socZ)
    out.add("structure: J_5 = 0 and J_4 = Z_1^2 = Soc(A)",
            J(5).dim == 0 and J(4) == z1sq == soc)

    # commutator bases
    x, y = _top_pair(J(1), z1j2)
    xy = a.mul(x, y)
    out.add("commutators: xy + Z_2 spans J_2/Z_2",
            not Zi(2).contains(xy) and (Zi(2) + a.span(xy)).contains(J(2)))
    cj3 = comm + J(3)
    out.add("commutators: dim ([A,A]+J_3)/J_3 = 1 spanned by [x,y]",
            cj3.quotient_dim(J(3)) == 1 and (J(3) + a.span(a.commutator(x, y))) == cj3)
    trio = np.array([a.commutator(x, y), a.commutator(x, xy), a.commutator(y, xy)])
    out.add("commutators: [x,y], [x,xy], [y,xy] is a basis of [A,A]",
            rank(F, trio) == 3 and a.span(trio) == comm)

    # Loewy dichotomy
    out.add("Loewy vector is (3,2,2,1) or (2,3,2,1)", rep.loewy in ((3, 2, 2, 1), (2, 3, 2, 1)),
            str(rep.loewy))
    out.add("Z_1 J_1 in J_3", J(3).contains(a.products(Zi(1).basis, J(1).basis)))
    return out


def _top_pair(J1: Subspace, lower: Subspace):
    comp = J1.extend_complement(lower)
    if comp.shape[0] != 2:
        raise HypothesisError("J_1/(Z_1+J_2) is not two-dimensional")
    return comp[0], comp[1]
