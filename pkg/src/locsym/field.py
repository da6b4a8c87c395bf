"""Exact arithmetic in GF(3^k).

Elements are encoded as integers ``c0 + 3*c1 + ... + 3^(k-1)*c_{k-1}`` where
``c_i`` are the coordinates in the power basis of the modulus.  Scalar work
goes through :class:`FieldElement`; bulk work (matrices, structure constants)
goes through the vectorised table methods of :class:`FieldSpec`, which act on
numpy integer arrays holding element codes.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

__all__ = [
    "FieldSpec",
    "FieldElement",
    "GF",
    "default_modulus",
    "is_irreducible",
    "embedding",
]

P = 3


def _poly_mod3_divides(d: tuple[int, ...], f: tuple[int, ...]) -> bool:
    """True iff the monic polynomial d divides f over GF(3) (little-endian)."""
    r = list(f)
    dd = len(d) - 1
    while len(r) - 1 >= dd and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < dd:
            break
        c = r[-1]
        shift = len(r) - 1 - dd
        for i, di in enumerate(d):
            r[shift + i] = (r[shift + i] - c * di) % P
        while r and r[-1] == 0:
            r.pop()
    return not any(r)


def is_irreducible(modulus: tuple[int, ...]) -> bool:
    """Exhaustive factor search over monic factors of degree <= k/2."""
    k = len(modulus) - 1
    if k < 1 or modulus[-1] != 1:
        return False
    for deg in range(1, k // 2 + 1):
        for low in itertools.product(range(P), repeat=deg):
            if _poly_mod3_divides(tuple(low) + (1,), modulus):
                return False
    return True


def default_modulus(k: int) -> tuple[int, ...]:
    """Conway-style fixed choices: t, t^2+1, t^3+2t+1, then the first irreducible."""
    fixed = {1: (0, 1), 2: (1, 0, 1), 3: (1, 2, 0, 1)}
    if k in fixed:
        return fixed[k]
    for low in itertools.product(range(P), repeat=k):
        cand = tuple(reversed(low)) + (1,)
        if is_irreducible(cand):
            return cand
    raise ValueError(f"no irreducible polynomial of degree {k}")


@dataclass(frozen=True)
class _Tables:
    digits: np.ndarray
    powers: np.ndarray
    add: np.ndarray
    sub: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray


@lru_cache(maxsize=None)
def _build_tables(k: int, modulus: tuple[int, ...]) -> _Tables:
    q = P**k
    codes = np.arange(q)
    powers = P ** np.arange(k)
    digits = (codes[:, None] // powers[None, :]) % P
    add = ((digits[:, None, :] + digits[None, :, :]) % P) @ powers
    sub = ((digits[:, None, :] - digits[None, :, :]) % P) @ powers
    neg = ((-digits) % P) @ powers

    # poly product then reduce by the monic modulus
    prod = np.zeros((q, q, 2 * k - 1), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            prod[:, :, i + j] += digits[:, None, i] * digits[None, :, j]
    prod %= P
    for deg in range(2 * k - 2, k - 1, -1):
        c = prod[:, :, deg].copy()
        for i in range(k + 1):
            prod[:, :, deg - k + i] = (prod[:, :, deg - k + i] - c * modulus[i]) % P
    mul = prod[:, :, :k] @ powers

    inv = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
    for t in (digits, add, sub, mul, neg, inv):
        t.setflags(write=False)
    return _Tables(digits, powers, add.astype(np.int64), sub.astype(np.int64),
                   mul.astype(np.int64), neg.astype(np.int64), inv)


@dataclass(frozen=True)
class FieldSpec:
    """GF(3^k) as GF(3)[t]/(modulus); modulus little-endian and monic."""

    degree: int = 2
    modulus: tuple[int, ...] = (1, 0, 1)
    characteristic: int = field(default=P, init=False)

    def __post_init__(self):
        object.__setattr__(self, "modulus", tuple(int(c) % P for c in self.modulus))
        if len(self.modulus) != self.degree + 1:
            raise ValueError("modulus must have degree+1 coefficients")
        if self.degree > 4:
            raise ValueError("only degrees k <= 4 are supported")
        if not is_irreducible(self.modulus):
            raise ValueError(f"modulus {self.modulus} is not monic irreducible over GF(3)")

    # -- scalar interface -------------------------------------------------
    @property
    def order(self) -> int:
        return P**self.degree

    @property
    def tables(self) -> _Tables:
        return _build_tables(self.degree, self.modulus)

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, str):
            return self.parse(value)
        return FieldElement(self, int(value) % P)

    def element(self, code: int) -> FieldElement:
        return FieldElement(self, int(code))

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, c) for c in range(self.order)]

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def gen(self) -> FieldElement:
        """The class of t (equals 0 in GF(3) with modulus t)."""
        if self.degree == 1:
            return FieldElement(self, (-self.modulus[0]) % P)
        return FieldElement(self, P)

    def coerce(self, value) -> int:
        """Code of an int / FieldElement / code array entry."""
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise ValueError("element belongs to a different field")
            return value.value
        return int(value) % P

    # -- vectorised interface on code arrays --------------------------------
    def add(self, a, b):
        return self.tables.add[a, b]

    def sub(self, a, b):
        return self.tables.sub[a, b]

    def neg(self, a):
        return self.tables.neg[a]

    def mul(self, a, b):
        return self.tables.mul[a, b]

    def inv(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        return self.tables.inv[a]

    def from_ints(self, a) -> np.ndarray:
        """Integers (possibly negative) to codes of their images in GF(3)."""
        return np.asarray(a, dtype=np.int64) % P

    def sum(self, a, axis=None) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.degree == 1:
            return a.sum(axis=axis) % P
        d = self.tables.digits[a]
        if axis is None:
            s = d.reshape(-1, self.degree).sum(axis=0)
        else:
            ax = axis if axis >= 0 else axis - 1
            s = d.sum(axis=ax)
        return (s % P) @ self.tables.powers

    def matmul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.degree == 1:
            return (a @ b) % P
        if b.ndim == 1:
            return self.matmul(a, b[:, None])[..., 0]
        if a.ndim == 1:
            return self.matmul(a[None, :], b)[0]
        return self.sum(self.mul(a[..., :, :, None], b[..., None, :, :]), axis=-2)

    def scale(self, c, a):
        return self.mul(self.coerce(c), np.asarray(a, dtype=np.int64))

    # -- text --------------------------------------------------------------
    def format(self, code: int) -> str:
        coeffs = self.tables.digits[int(code)]
        terms = []
        for e in range(self.degree - 1, -1, -1):
            c = int(coeffs[e])
            if c == 0:
                continue
            if e == 0:
                terms.append(str(c))
            else:
                mono = "t" if e == 1 else f"t^{e}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(terms) if terms else "0"

    _TERM = re.compile(r"^(?:(\d+)\*?)?(t(?:\^(\d+))?)?$")

    def parse(self, text: str) -> FieldElement:
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty field element")
        acc = [0] * (2 * self.degree + 8)
        for raw in re.split(r"(?=[+-])", s):
            if raw in ("", "+"):
                continue
            sign = -1 if raw.startswith("-") else 1
            term = raw.lstrip("+-")
            m = self._TERM.match(term)
            if not m or not term:
                raise ValueError(f"cannot parse field element {text!r}")
            coeff = int(m.group(1)) if m.group(1) is not None else 1
            if m.group(2) is None:
                exp = 0
            else:
                exp = int(m.group(3)) if m.group(3) is not None else 1
            if exp >= len(acc):
                acc.extend([0] * (exp - len(acc) + 1))
            acc[exp] += sign * coeff
        value = self.zero
        tpow = self.one
        for c in acc:
            value = value + tpow * (c % P)
            tpow = tpow * self.gen
        return value

    def __str__(self):
        return f"GF(3^{self.degree})"

    # -- roots ---------------------------------------------------------------
    def sqrt(self, a: FieldElement) -> FieldElement | None:
        return self(a).sqrt()

    def fourth_root_of_unity(self) -> FieldElement | None:
        if (self.order - 1) % 4:
            return None
        mul = self.tables.mul
        minus_one = self.tables.neg[1]
        for c in range(self.order):
            if mul[c, c] == minus_one:
                return FieldElement(self, c)
        return None  # pragma: no cover


def GF(k: int = 2, modulus: tuple[int, ...] | None = None) -> FieldSpec:
    return FieldSpec(k, tuple(modulus) if modulus is not None else default_modulus(k))


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    value: int

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise ValueError("mismatched fields")
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(other) % P
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, int(self.spec.tables.add[self.value, o]))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, int(self.spec.tables.sub[self.value, o]))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, int(self.spec.tables.sub[o, self.value]))

    def __neg__(self):
        return FieldElement(self.spec, int(self.spec.tables.neg[self.value]))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, int(self.spec.tables.mul[self.value, o]))

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        if self.value == 0:
            raise ZeroDivisionError("division by zero in " + str(self.spec))
        return FieldElement(self.spec, int(self.spec.tables.inv[self.value]))

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * FieldElement(self.spec, o).inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, o) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.spec.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == int(other) % P
        return NotImplemented

    def __hash__(self):
        return hash((self.spec, self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    @property
    def coefficients(self) -> list[int]:
        return [int(c) for c in self.spec.tables.digits[self.value]]

    def sqrt(self) -> FieldElement | None:
        """A square root, the one with smaller code; None for non-squares."""
        q = self.spec.order
        if self.value == 0:
            return self.spec.zero
        if q % 4 == 3:
            r = self ** ((q + 1) // 4)
            if r * r != self:
                return None
            return min(r, -r, key=lambda e: e.value)
        mul = self.spec.tables.mul
        for c in range(q):
            if mul[c, c] == self.value:
                return FieldElement(self.spec, c)
        return None

    def __str__(self):
        return self.spec.format(self.value)

    def __repr__(self):
        return f"FieldElement({self.spec.format(self.value)!r} in {self.spec})"


def embedding(src: FieldSpec, dst: FieldSpec) -> np.ndarray:
    """Code map src -> dst sending t to the smallest root of src.modulus in dst."""
    if dst.degree % src.degree:
        raise ValueError(f"{src} does not embed in {dst}")
    mul, add = dst.tables.mul, dst.tables.add
    root = None
    for r in range(dst.order):
        acc, rp = 0, 1
        for c in src.modulus:
            acc = add[acc, mul[c, rp]]
            rp = mul[rp, r]
        if acc == 0:
            root = r
            break
    if root is None:  # pragma: no cover
        raise ValueError("no root of the modulus found")
    out = np.zeros(src.order, dtype=np.int64)
    for code in range(src.order):
        acc, rp = 0, 1
        for c in src.tables.digits[code]:
            acc = add[acc, mul[int(c), rp]]
            rp = mul[rp, root]
        out[code] = acc
    return out
