"""Canonical presentations and their tables, built by monomial rewriting.

Each family is a :class:`RewriteSystem`: rules ``leading word -> combination``
applied at the leftmost match, plus truncation of all words of length 5.  The
resulting table is certified by the associativity check in
:func:`locsym.algebra.build` and by re-evaluating every defining relation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algebra import (AlgebraError, AlgebraTable, LemmaReport, analyze, build, center_profile,
                      hypothesis_failures)
from .field import FieldElement, FieldSpec, GF

__all__ = [
    "Word",
    "RewriteSystem",
    "FamilySpec",
    "RewriteError",
    "rewrite_B",
    "rewrite_F3",
    "rewrite_F2",
    "build_B",
    "build_F3",
    "build_F2",
    "verify_family_hypothesis",
    "f2_params_admissible",
]

Word = tuple[int, ...]


class RewriteError(AlgebraError):
    pass


@dataclass(frozen=True)
class Rule:
    lhs: Word
    rhs: tuple[tuple[Word, int], ...]  # (word, coefficient code)


class RewriteSystem:
    """Straightening of words in the generators into a fixed monomial basis."""

    def __init__(self, F: FieldSpec, gens: tuple[str, ...], basis: list[Word],
                 rules: list[Rule], truncate: int = 5,
                 relations: list[dict[Word, int]] | None = None,
                 separator: str = ""):
        self.field = F
        self.gens = gens
        self.basis = [tuple(w) for w in basis]
        self.rules = rules
        self.truncate = truncate
        self.relations = relations if relations is not None else []
        self.separator = separator
        self._basis_set = set(self.basis)
        self._memo: dict[Word, dict[Word, int]] = {}
        if () not in self._basis_set:
            raise RewriteError("basis must contain the empty word")

    def label(self, w: Word) -> str:
        if not w:
            return "1"
        out = []
        i = 0
        while i < len(w):
            j = i
            while j < len(w) and w[j] == w[i]:
                j += 1
            out.append(self.gens[w[i]] + (f"^{j - i}" if j - i > 1 else ""))
            i = j
        return self.separator.join(out)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self.label(w) for w in self.basis)

    def parse_word(self, text: str) -> Word:
        return tuple(self.gens.index(ch) for ch in text)

    def _step(self, w: Word):
        """Leftmost rule application; ties broken by rule order."""
        best = None
        for r_idx, rule in enumerate(self.rules):
            L = len(rule.lhs)
            for pos in range(len(w) - L + 1):
                if w[pos:pos + L] == rule.lhs:
                    if best is None or pos < best[0]:
                        best = (pos, r_idx)
                    break
        return best

    def reduce(self, w: Word, max_steps: int = 10000) -> dict[Word, int]:
        w = tuple(w)
        if w in self._memo:
            return dict(self._memo[w])
        F = self.field
        pending: dict[Word, int] = {w: 1}
        done: dict[Word, int] = {}
        steps = 0
        while pending:
            steps += 1
            if steps > max_steps:
                raise RewriteError(f"rewriting of {self.label(w)} does not terminate")
            u, c = pending.popitem()
            if c == 0:
                continue
            if len(u) >= self.truncate:
                continue
            if u in self._basis_set:
                done[u] = int(F.add(done.get(u, 0), c))
                continue
            hit = self._step(u)
            if hit is None:
                raise RewriteError(f"irreducible word {self.label(u)} is not a basis monomial")
            pos, r_idx = hit
            rule = self.rules[r_idx]
            pre, post = u[:pos], u[pos + len(rule.lhs):]
            for v, cv in rule.rhs:
                nw = pre + v + post
                pending[nw] = int(F.add(pending.get(nw, 0), F.mul(c, cv)))
        out = {u: c for u, c in done.items() if c}
        self._memo[w] = out
        return dict(out)

    def vector(self, combo: dict[Word, int]) -> np.ndarray:
        v = np.zeros(len(self.basis), dtype=np.int64)
        index = {w: i for i, w in enumerate(self.basis)}
        for w, c in combo.items():
            v[index[w]] = self.field.add(v[index[w]], c)
        return v

    def product_array(self) -> np.ndarray:
        n = len(self.basis)
        c = np.zeros((n, n, n), dtype=np.int64)
        for i, u in enumerate(self.basis):
            for j, v in enumerate(self.basis):
                c[i, j] = self.vector(self.reduce(u + v))
        return c

    @cached_property
    def table(self) -> AlgebraTable:
        t = build(self.labels, self.basis.index(()), self.product_array(), self.field)
        self._check_relations(t)
        return t

    def evaluate(self, t: AlgebraTable, w: Word) -> np.ndarray:
        """Evaluate a word letter by letter through the table."""
        index = {u: i for i, u in enumerate(self.basis)}
        r = t.one()
        for letter in w:
            r = t.mul(r, t.basis_vector(index[(letter,)]))
        return r

    def _check_relations(self, t: AlgebraTable):
        F = self.field
        rels = []
        for rule in self.rules:
            rel = {rule.lhs: 1}
            for v, cv in rule.rhs:
                rel[v] = int(F.sub(rel.get(v, 0), cv))
            rels.append(rel)
        rels.extend(self.relations)
        for rel in rels:
            acc = np.zeros(t.dim, dtype=np.int64)
            for w, c in rel.items():
                acc = F.add(acc, F.mul(c, self.evaluate(t, w)))
            if acc.any():
                shown = " + ".join(f"{F.format(c)}*{self.label(w)}" for w, c in rel.items())
                raise RewriteError(f"relation {shown} does not vanish in the built table")
        for w in _all_words(len(self.gens), self.truncate):
            if self.evaluate(t, w).any():
                raise RewriteError(f"word {self.label(w)} of length {self.truncate} is nonzero")

    def exponent(self, w: Word) -> tuple[int, ...]:
        return tuple(sum(1 for ch in w if ch == g) for g in range(len(self.gens)))


def _all_words(g: int, length: int):
    import itertools
    return itertools.product(range(g), repeat=length)


def _codes(F: FieldSpec, *vals) -> list[int]:
    return [F.coerce(v) for v in vals]


def rewrite_B(F: FieldSpec) -> RewriteSystem:
    X, Y = 0, 1
    m1 = int(F.neg(1))
    basis = [(), (X,), (Y,), (X, X), (X, Y), (Y, Y), (X, X, Y), (X, Y, Y), (X, X, Y, Y)]
    rules = [
        Rule((Y, X), (((X, Y), m1),)),
        Rule((X, X, X), ()),
        Rule((Y, Y, Y), ()),
    ]
    return RewriteSystem(F, ("X", "Y"), basis, rules)


def rewrite_F3(alpha, beta, F: FieldSpec) -> RewriteSystem:
    x, y, z = 0, 1, 2
    a, b = _codes(F, alpha, beta)
    sq = tuple((w, c) for w, c in (((x, y, x), a), ((y, x, y), b)) if c)
    basis = [(), (x,), (y,), (z,), (x, y), (y, x), (x, y, x), (y, x, y), (x, y, x, y)]
    rules = [
        Rule((z, x), ()),
        Rule((x, z), ()),
        Rule((z, y), ()),
        Rule((y, z), ()),
        Rule((z, z), (((x, y, x, y), 1),)),
        Rule((x, x), sq),
        Rule((y, y), sq),
        Rule((y, x, y, x), (((x, y, x, y), 1),)),
    ]
    m1 = int(F.neg(1))
    relations = [{(y, y): 1, (x, x): m1}]
    return RewriteSystem(F, ("x", "y", "z"), basis, rules, relations=relations)


def f2_params_admissible(alpha, beta, gamma, delta, F: FieldSpec) -> bool:
    """Normalized domain: alpha in {0,1}; gamma in {0,1} when alpha = 0."""
    a, g = _codes(F, alpha, gamma)
    if a not in (0, 1):
        return False
    return a == 1 or g in (0, 1)


def rewrite_F2(alpha, beta, gamma, delta, F: FieldSpec) -> RewriteSystem:
    if not f2_params_admissible(alpha, beta, gamma, delta, F):
        raise ValueError("F2 parameters outside the normalized domain "
                         "(alpha in {0,1}, and gamma in {0,1} when alpha = 0)")
    x, y = 0, 1
    a, b, g, d = _codes(F, alpha, beta, gamma, delta)
    m1 = int(F.neg(1))
    basis = [(), (x,), (y,), (x, x), (x, y), (y, y), (x, x, y), (x, y, y), (x, x, y, y)]

    def combo(*pairs):
        return tuple((w, c) for w, c in pairs if c)

    rules = [
        Rule((y, x), (((x, y), m1),)),
        Rule((x, x, x, y), ()),
        Rule((x, y, y, y), ()),
        Rule((x, x, x), combo(((x, y, y), a), ((x, x, y, y), b))),
        Rule((y, y, y), combo(((x, x, y), g), ((x, x, y, y), d))),
    ]
    return RewriteSystem(F, ("x", "y"), basis, rules)


def build_B(F: FieldSpec | None = None) -> AlgebraTable:
    return rewrite_B(F or GF(2)).table


def build_F3(alpha=0, beta=0, F: FieldSpec | None = None) -> AlgebraTable:
    return rewrite_F3(alpha, beta, F or GF(2)).table


def build_F2(alpha=0, beta=0, gamma=0, delta=0, F: FieldSpec | None = None) -> AlgebraTable:
    return rewrite_F2(alpha, beta, gamma, delta, F or GF(2)).table


@dataclass(frozen=True)
class FamilySpec:
    tag: str
    params: tuple[FieldElement, ...]
    field: FieldSpec

    _ARITY = {"B": 0, "F3": 2, "F2": 4, "H2BAD_PARTIAL": 0}

    def __post_init__(self):
        if self.tag not in self._ARITY:
            raise ValueError(f"unknown family {self.tag!r}")
        params = tuple(self.field(p) for p in self.params)
        if len(params) != self._ARITY[self.tag]:
            raise ValueError(f"{self.tag} takes {self._ARITY[self.tag]} parameters")
        object.__setattr__(self, "params", params)

    @classmethod
    def of(cls, tag: str, *params, field: FieldSpec | None = None) -> "FamilySpec":
        F = field or GF(2)
        return cls(tag, tuple(F(p) for p in params), F)

    def rewrite_system(self) -> RewriteSystem:
        if self.tag == "B":
            return rewrite_B(self.field)
        if self.tag == "F3":
            return rewrite_F3(*self.params, self.field)
        if self.tag == "F2":
            return rewrite_F2(*self.params, self.field)
        raise ValueError("the H2BAD branch has no complete presentation")

    def build(self) -> AlgebraTable:
        return self.rewrite_system().table

    def __str__(self):
        if not self.params:
            return self.tag
        return f"{self.tag}({','.join(str(p) for p in self.params)})"


def verify_family_hypothesis(f: FamilySpec) -> LemmaReport:
    """Build the table and check every clause of the standing hypothesis."""
    rep = LemmaReport()
    try:
        t = f.build()
    except AlgebraError as exc:
        rep.add("table is associative and unital", False, str(exc))
        return rep
    rep.add("table is associative and unital", True)
    rep.add("dimension 9", t.dim == 9)
    try:
        sr = analyze(t)
    except AlgebraError as exc:
        rep.add("local", False, str(exc))
        return rep
    rep.add("local", True)
    sf = sr.sym_form
    rep.add("symmetric (form with invertible Gram found)", sf is not None)
    prof = center_profile(t, sr)
    rep.add("center isomorphic to Z(B)", prof.matches, str(prof))
    reasons = hypothesis_failures(t, sr)
    rep.add("full hypothesis", not reasons, "; ".join(reasons))
    return rep
