"""Dense linear algebra over GF(3^k) on arrays of element codes.

Matrices are 2-d ``int64`` numpy arrays whose entries are field codes (see
:mod:`locsym.field`).  Vectors are rows when they span subspaces and columns
when a matrix acts on them.
"""

from __future__ import annotations

import numpy as np

from .field import FieldSpec

__all__ = [
    "as_matrix",
    "rref",
    "rank",
    "solve",
    "nullspace",
    "inverse",
    "det",
    "identity",
    "charpoly",
    "Subspace",
]


def as_matrix(F: FieldSpec, rows) -> np.ndarray:
    """Build a code matrix from nested lists of ints, codes or FieldElements."""
    out = np.array([[F.coerce(x) for x in row] for row in rows], dtype=np.int64)
    return out.reshape(len(rows), -1) if len(rows) else np.zeros((0, 0), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def _rref(F: FieldSpec, m) -> tuple[np.ndarray, list[int]]:
    a = np.array(m, dtype=np.int64, copy=True)
    if a.ndim != 2:
        raise ValueError("rref expects a 2-d matrix")
    rows, cols = a.shape
    tabs = F.tables
    r = 0
    pivots: list[int] = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        a[r] = tabs.mul[tabs.inv[a[r, c]], a[r]]
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = tabs.sub[a[hit], tabs.mul[col[hit, None], a[r][None, :]]]
        pivots.append(c)
        r += 1
    return a, pivots


def rref(F: FieldSpec, m) -> tuple[np.ndarray, int]:
    a, piv = _rref(F, m)
    return a, len(piv)


def rank(F: FieldSpec, m) -> int:
    m = np.asarray(m)
    if m.size == 0:
        return 0
    return len(_rref(F, m)[1])


def solve(F: FieldSpec, a, b) -> np.ndarray | None:
    """One solution x of a @ x = b (b a vector or matrix), or None."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    vec = b.ndim == 1
    if vec:
        b = b[:, None]
    if a.shape[0] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    n = a.shape[1]
    red, piv = _rref(F, np.hstack([a, b]))
    if any(p >= n for p in piv):
        return None
    x = np.zeros((n, b.shape[1]), dtype=np.int64)
    for i, p in enumerate(piv):
        x[p] = red[i, n:]
    return x[:, 0] if vec else x


def nullspace(F: FieldSpec, a) -> "Subspace":
    """Kernel {x : a @ x = 0} as a Subspace of F^cols."""
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[1]
    if a.shape[0] == 0:
        return Subspace.full(F, n)
    red, piv = _rref(F, a)
    free = [c for c in range(n) if c not in piv]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for j, f in enumerate(free):
        basis[j, f] = 1
        for i, p in enumerate(piv):
            basis[j, p] = F.tables.neg[red[i, f]]
    return Subspace(F, n, basis)


def inverse(F: FieldSpec, a) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    red, piv = _rref(F, np.hstack([a, identity(n)]))
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return red[:, n:]


def det(F: FieldSpec, a) -> int:
    """Determinant code by Gaussian elimination."""
    a = np.array(a, dtype=np.int64, copy=True)
    n = a.shape[0]
    tabs = F.tables
    d = 1
    for c in range(n):
        nz = np.flatnonzero(a[c:, c])
        if nz.size == 0:
            return 0
        p = c + int(nz[0])
        if p != c:
            a[[c, p]] = a[[p, c]]
            d = tabs.neg[d]
        piv = a[c, c]
        d = tabs.mul[d, piv]
        row = tabs.mul[tabs.inv[piv], a[c]]
        below = a[c + 1:, c].copy()
        a[c + 1:] = tabs.sub[a[c + 1:], tabs.mul[below[:, None], row[None, :]]]
    return int(d)


class Subspace:
    """A subspace of F^n stored by its canonical reduced row-echelon basis."""

    __slots__ = ("field", "ambient_dim", "basis", "_pivots")

    def __init__(self, F: FieldSpec, ambient_dim: int, vectors=None):
        self.field = F
        self.ambient_dim = int(ambient_dim)
        if vectors is None:
            vectors = np.zeros((0, ambient_dim), dtype=np.int64)
        v = np.asarray(vectors, dtype=np.int64).reshape(-1, ambient_dim)
        if v.shape[0]:
            red, piv = _rref(F, v)
            self.basis = red[: len(piv)]
            self._pivots = piv
        else:
            self.basis = v
            self._pivots = []
        self.basis.setflags(write=False)

    @classmethod
    def full(cls, F: FieldSpec, n: int) -> "Subspace":
        return cls(F, n, identity(n))

    @classmethod
    def zero(cls, F: FieldSpec, n: int) -> "Subspace":
        return cls(F, n)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __len__(self):
        return self.dim

    def _check(self, other: "Subspace"):
        if other.ambient_dim != self.ambient_dim or other.field != self.field:
            raise ValueError("subspaces live in different ambient spaces")

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.field == other.field and self.ambient_dim == other.ambient_dim
                and np.array_equal(self.basis, other.basis))

    def __hash__(self):
        return hash((self.ambient_dim, self.basis.tobytes()))

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.field, self.ambient_dim, np.vstack([self.basis, other.basis]))

    def __and__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, self.ambient_dim)
        # a u = b v  <=>  [a; -b]^T (u, v) = 0
        stacked = np.vstack([self.basis, self.field.neg(other.basis)]).T
        ker = nullspace(self.field, stacked)
        coeffs = ker.basis[:, : self.dim]
        return Subspace(self.field, self.ambient_dim, self.field.matmul(coeffs, self.basis))

    def contains(self, item) -> bool:
        if isinstance(item, Subspace):
            self._check(item)
            return all(self.contains(v) for v in item.basis)
        v = np.asarray(item, dtype=np.int64)
        if v.ndim == 2:
            return all(self.contains(r) for r in v)
        return not self.reduce(v).any()

    def __contains__(self, item) -> bool:
        return self.contains(item)

    def __le__(self, other: "Subspace") -> bool:
        return other.contains(self)

    def reduce(self, v) -> np.ndarray:
        """Canonical representative of v modulo this subspace."""
        F = self.field
        r = np.array(v, dtype=np.int64, copy=True)
        for row, p in zip(self.basis, self._pivots):
            c = r[p]
            if c:
                r = F.sub(r, F.mul(c, row))
        return r

    def coordinates(self, v) -> np.ndarray | None:
        """Coefficients of v in the RREF basis, or None if v is outside."""
        v = np.asarray(v, dtype=np.int64)
        if not self.contains(v):
            return None
        return np.array([v[p] for p in self._pivots], dtype=np.int64)

    def quotient_dim(self, sub: "Subspace") -> int:
        self._check(sub)
        if not self.contains(sub):
            raise ValueError("quotient_dim: second subspace is not contained in the first")
        return self.dim - sub.dim

    def extend_complement(self, other: "Subspace") -> np.ndarray:
        """Vectors of self completing a basis of (other & self) to one of self."""
        self._check(other)
        base = other & self
        chosen: list[np.ndarray] = []
        current = base
        for v in self.basis:
            if not current.contains(v):
                chosen.append(v)
                current = current + Subspace(self.field, self.ambient_dim, v)
        return np.array(chosen, dtype=np.int64).reshape(-1, self.ambient_dim)

    def orthogonal(self, gram) -> "Subspace":
        """{x : x^T G u = 0 for all u in self} for a bilinear form with Gram G."""
        if self.dim == 0:
            return Subspace.full(self.field, self.ambient_dim)
        return nullspace(self.field, self.field.matmul(self.basis, np.asarray(gram).T))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def charpoly(F: FieldSpec, m) -> list[int]:
    """Characteristic polynomial det(tI - m), low degree first, via Hessenberg form."""
    h = np.array(m, dtype=np.int64, copy=True)
    n = h.shape[0]
    t = F.tables
    for j in range(n - 2):
        nz = np.flatnonzero(h[j + 1:, j])
        if nz.size == 0:
            continue
        p = j + 1 + int(nz[0])
        if p != j + 1:
            h[[j + 1, p]] = h[[p, j + 1]]
            h[:, [j + 1, p]] = h[:, [p, j + 1]]
        piv_inv = t.inv[h[j + 1, j]]
        for i in range(j + 2, n):
            if h[i, j] == 0:
                continue
            u = t.mul[h[i, j], piv_inv]
            h[i] = t.sub[h[i], t.mul[u, h[j + 1]]]
            h[:, j + 1] = t.add[h[:, j + 1], t.mul[u, h[:, i]]]

    def pmul_lin(poly, c):
        # (t - c) * poly
        out = [0] * (len(poly) + 1)
        for d, a in enumerate(poly):
            out[d + 1] = int(t.add[out[d + 1], a])
            out[d] = int(t.sub[out[d], t.mul[c, a]])
        return out

    polys = [[1]]
    for k in range(1, n + 1):
        nxt = pmul_lin(polys[k - 1], h[k - 1, k - 1])
        for i in range(1, k):
            prod = h[i - 1, k - 1]
            for j in range(i + 1, k + 1):
                prod = t.mul[prod, h[j - 1, j - 2]]
            if prod == 0:
                continue
            for d, a in enumerate(polys[i - 1]):
                nxt[d] = int(t.sub[nxt[d], t.mul[prod, a]])
        polys.append(nxt)
    return polys[n]
