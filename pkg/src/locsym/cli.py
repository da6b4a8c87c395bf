"""Command line interface and the plain-text algebra file format.

File format::

    field 3 <k> <c0> <c1> ... <ck>     # modulus coefficients, little-endian, monic
    dim <n>
    unit <index>
    basis <label> <label> ...
    mul <i> <j> : <k1>:<coef1> <k2>:<coef2> ...

Indices are 0-based, coefficients are polynomials in ``t``, omitted products
are zero and ``#`` starts a comment.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from .algebra import AlgebraError, AlgebraTable, analyze, build, center_profile
from .families import FamilySpec
from .field import FieldSpec, GF

__all__ = ["AlgebraFileError", "parse_algebra", "emit_algebra", "emit_matrix", "main"]


class AlgebraFileError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _tokens(raw: str):
    """(column, token) pairs of a line with the comment removed."""
    text = raw.split("#", 1)[0]
    out = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        j = i
        while j < len(text) and not text[j].isspace():
            j += 1
        out.append((i + 1, text[i:j]))
        i = j
    return out


def _int(tok, lineno, what):
    col, s = tok
    try:
        return int(s)
    except ValueError:
        raise AlgebraFileError(f"expected integer {what}, got {s!r}", lineno, col) from None


def parse_algebra(text: str) -> AlgebraTable:
    lines = [(n, _tokens(raw)) for n, raw in enumerate(text.splitlines(), start=1)]
    lines = [(n, t) for n, t in lines if t]
    header = {}
    order = ("field", "dim", "unit", "basis")
    for key in order:
        if not lines:
            raise AlgebraFileError(f"missing '{key}' line", 1 + len(text.splitlines()))
        n, toks = lines.pop(0)
        if toks[0][1] != key:
            raise AlgebraFileError(f"expected '{key}', got {toks[0][1]!r}", n, toks[0][0])
        header[key] = (n, toks)

    n, toks = header["field"]
    if len(toks) < 4 or toks[1][1] != "3":
        raise AlgebraFileError("field line must read 'field 3 <k> <c0> ... <ck>'", n)
    k = _int(toks[2], n, "degree")
    coeffs = [_int(t, n, "modulus coefficient") for t in toks[3:]]
    if len(coeffs) != k + 1:
        raise AlgebraFileError(f"degree {k} needs {k + 1} modulus coefficients", n)
    if coeffs[-1] != 1:
        raise AlgebraFileError("modulus must be monic", n, toks[-1][0])
    try:
        F = FieldSpec(degree=k, modulus=tuple(coeffs))
    except ValueError as exc:
        raise AlgebraFileError(str(exc), n) from None

    n, toks = header["dim"]
    dim = _int(toks[1], n, "dimension") if len(toks) == 2 else None
    if dim is None or dim < 1:
        raise AlgebraFileError("dim line must read 'dim <n>' with n >= 1", n)
    n, toks = header["unit"]
    unit = _int(toks[1], n, "unit index") if len(toks) == 2 else None
    if unit is None or not 0 <= unit < dim:
        raise AlgebraFileError(f"unit index must lie in 0..{dim - 1}", n)
    n, toks = header["basis"]
    labels = tuple(t for _, t in toks[1:])
    if len(labels) != dim:
        raise AlgebraFileError(f"expected {dim} basis labels, got {len(labels)}", n)

    consts = np.zeros((dim, dim, dim), dtype=np.int64)
    seen = set()
    for n, toks in lines:
        if toks[0][1] != "mul":
            raise AlgebraFileError(f"unknown directive {toks[0][1]!r}", n, toks[0][0])
        if len(toks) < 4 or toks[3][1] != ":":
            raise AlgebraFileError("expected 'mul <i> <j> : <k>:<coef> ...'", n)
        i, j = _int(toks[1], n, "index"), _int(toks[2], n, "index")
        for tok, v in ((toks[1], i), (toks[2], j)):
            if not 0 <= v < dim:
                raise AlgebraFileError(f"index {v} out of range", n, tok[0])
        if (i, j) in seen:
            raise AlgebraFileError(f"duplicate product entry ({i}, {j})", n)
        seen.add((i, j))
        for col, term in toks[4:]:
            idx, sep, coef = term.partition(":")
            if not sep:
                raise AlgebraFileError(f"expected <k>:<coef>, got {term!r}", n, col)
            kk = _int((col, idx), n, "index")
            if not 0 <= kk < dim:
                raise AlgebraFileError(f"index {kk} out of range", n, col)
            try:
                c = F.parse(coef)
            except ValueError as exc:
                raise AlgebraFileError(str(exc), n, col + len(idx) + 1) from None
            consts[i, j, kk] = F.add(consts[i, j, kk], int(c))
    return build(labels, unit, consts, F)


def emit_algebra(a: AlgebraTable) -> str:
    F = a.field
    out = [f"field 3 {F.degree} " + " ".join(str(c) for c in F.modulus),
           f"dim {a.dim}", f"unit {a.unit}", "basis " + " ".join(a.labels)]
    for i in range(a.dim):
        for j in range(a.dim):
            row = a.consts[i, j]
            nz = np.flatnonzero(row)
            if nz.size:
                terms = " ".join(f"{k}:{F.format(int(row[k]))}" for k in nz)
                out.append(f"mul {i} {j} : {terms}")
    return "\n".join(out) + "\n"


def emit_matrix(F: FieldSpec, P, comment: str = "") -> str:
    lines = [f"# {comment}"] if comment else []
    lines.append(f"field 3 {F.degree} " + " ".join(str(c) for c in F.modulus))
    lines.append(f"size {P.shape[0]}")
    for r in P:
        lines.append("row " + " ".join(F.format(int(c)) for c in r))
    return "\n".join(lines) + "\n"


# -- commands --------------------------------------------------------------------------------

class UsageError(Exception):
    pass


def _field(spec: str | None) -> FieldSpec:
    if spec is None:
        return GF(2)
    base, sep, k = spec.partition("^")
    if base != "3" or (sep and not k.isdigit()):
        raise UsageError(f"field must look like 3^k, got {spec!r}")
    try:
        return GF(int(k) if sep else 1)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _params(F: FieldSpec, text: str | None):
    if not text:
        return ()
    try:
        return tuple(F.parse(p.strip()) for p in text.split(","))
    except ValueError as exc:
        raise UsageError(f"malformed parameters {text!r}: {exc}") from None


def _family(tag: str, F: FieldSpec, params) -> FamilySpec:
    if tag not in ("B", "F3", "F2"):
        raise UsageError(f"unknown family {tag!r} (choose B, F3 or F2)")
    if tag == "F3" and not params:
        params = (F(0), F(0))
    if tag == "F2" and not params:
        params = (F(0),) * 4
    try:
        return FamilySpec(tag, params, F)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _read(path: str) -> AlgebraTable:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_algebra(text)
    except (AlgebraFileError, AlgebraError) as exc:
        raise UsageError(f"{path}: {exc}") from None


class _Style:
    def __init__(self, stream):
        self.color = stream.isatty() and "NO_COLOR" not in os.environ

    def status(self, ok: bool) -> str:
        word = "PASS" if ok else "FAIL"
        if not self.color:
            return word
        return f"\033[{32 if ok else 31}m{word}\033[0m"


def cmd_build(args) -> int:
    F = _field(args.field)
    f = _family(args.family, F, _params(F, args.params))
    try:
        text = emit_algebra(f.build())
    except (AlgebraError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_invariants(args) -> int:
    a = _read(args.file)
    try:
        rep = analyze(a)
    except AlgebraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    prof = center_profile(a, rep)
    dims = " ".join(f"J{i}={rep.J(i).dim}" for i in range(1, rep.loewy_length + 2))
    print(f"dim A={a.dim} {dims}")
    print(f"dim Z={rep.center.dim} dim Soc={rep.socle.dim} dim [A,A]={rep.commutator_space.dim}")
    print("loewy=" + ",".join(str(v) for v in rep.loewy))
    print(f"symmetrizing form={'y' if rep.sym_form is not None else 'n'}")
    print(f"center matches Z(B)={'y' if prof.matches else 'n'}")
    return 0


def cmd_classify(args) -> int:
    from .normalize import classify

    a = _read(args.file)
    try:
        res = classify(a)
    except AlgebraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    params = ",".join(str(p) for p in res.params)
    print(f"branch={res.branch} params={params}")
    if res.extended:
        print(f"scalars extended to {res.field}")
    if args.verbose:
        for step in res.audit:
            print(f"  {step}")
    cert = args.certificate or args.file + ".cert"
    Path(cert).write_text(emit_matrix(res.field, res.basis_change,
                                      "columns: new basis in old coordinates"))
    print(f"certificate written to {cert}")
    return 0 if res.certificate_holds() else 1


def cmd_torus(args) -> int:
    from .torus import diagonal_torus_rank, exponent_lattice

    F = _field(args.field)
    f = _family(args.family, F, _params(F, args.params))
    lat = exponent_lattice(f)
    rows = " ".join("(" + ",".join(str(v) for v in r) + ")" for r in lat.rows) or "none"
    print(f"rows={rows}")
    print(f"rank={diagonal_torus_rank(f)}")
    return 0


def cmd_unipotent(args) -> int:
    from .autos import center_mod_inn_dimension

    if args.family not in ("H3_U", "H2_U"):
        raise UsageError(f"unknown unipotent family {args.family!r} (choose H3_U or H2_U)")
    print(center_mod_inn_dimension(args.family, jobs=args.jobs))
    return 0


def cmd_verify(args) -> int:
    from .verify import run_suite

    style = _Style(sys.stdout)
    results = run_suite(quick=args.quick, jobs=args.jobs)
    for r in results:
        line = r.line().replace("PASS" if r.passed else "FAIL", style.status(r.passed), 1)
        print(line, flush=True)
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} criteria passed")
    return 1 if failed else 0


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="locsym", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="emit the table of a canonical family")
    b.add_argument("family", help="B, F3 or F2")
    b.add_argument("--params", help="comma separated field elements, e.g. 1,t,0,2*t")
    b.add_argument("--field", help="3^k (default 3^2)")
    b.add_argument("-o", "--output", help="output file (default stdout)")
    b.set_defaults(func=cmd_build)

    i = sub.add_parser("invariants", help="print structural invariants of a table file")
    i.add_argument("file")
    i.set_defaults(func=cmd_invariants)

    c = sub.add_parser("classify", help="normalize a table and write the basis change")
    c.add_argument("file")
    c.add_argument("--certificate", help="output path (default FILE.cert)")
    c.add_argument("-v", "--verbose", action="store_true", help="print the audit trail")
    c.set_defaults(func=cmd_classify)

    t = sub.add_parser("torus-rank", help="diagonal torus rank of a family presentation")
    t.add_argument("family")
    t.add_argument("--params")
    t.add_argument("--field")
    t.set_defaults(func=cmd_torus)

    u = sub.add_parser("unipotent-center", help="GF(3) point counts for H3_U or H2_U")
    u.add_argument("family")
    u.add_argument("--jobs", type=int, default=1)
    u.set_defaults(func=cmd_unipotent)

    v = sub.add_parser("verify-paper", help="run the full acceptance suite")
    v.add_argument("--quick", action="store_true",
                   help="small F3 grid and fewer random pairs; exhaustive GF(3) kernels kept")
    v.add_argument("--jobs", type=int, default=1)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
