"""Text formats for algebras, homomorphisms, lattice sites, and formulas.

Algebra files are directive-per-line with ``#`` comments:

    algebra NAME
    size N
    tuple-length K
    op NAME ARITY
    ... N^ARITY whitespace-separated integers, row-major, last argument fastest
    zero T1 ... TK
    one T1 ... TK

Zero/one entries are closed terms in prefix syntax (0-ary ops as bare names).
Homomorphism files are ``hom SRC DST`` (algebra file paths, resolved relative
to the hom file) followed by one ``i -> j`` line per source element.  Lattice
files are ``lattice NAME`` / ``size N`` / ``meet`` table / ``join`` table.
"""

from __future__ import annotations

from pathlib import Path

from .algebra import FiniteAlgebra, Homomorphism, Signature
from .errors import ParseError
from .pierce import FiniteLatticeSite
from .terms import Term, format_term


class _OpsView:
    """Just enough signature surface for term parsing before the real
    Signature exists."""

    def __init__(self, ops: list[tuple[str, int]]):
        self._ops = dict(ops)

    def has_op(self, name: str) -> bool:
        return name in self._ops

    def arity(self, name: str) -> int:
        if name not in self._ops:
            raise ParseError(f"unknown operation symbol {name!r}")
        return self._ops[name]


def _parse_closed_term(text: str, ops: _OpsView, line: int) -> Term:
    from .logic import _Parser

    parser = _Parser(text, ops)  # type: ignore[arg-type]
    term = parser.term()
    if parser.peek().kind != "EOF":
        raise ParseError(f"trailing input in term {text!r}", line, 1)
    from .terms import free_vars

    if free_vars(term):
        raise ParseError(f"term {text!r} is not closed", line, 1)
    return term


def _tokens_with_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        for tok in line.split():
            yield lineno, tok


def load_algebra_text(text: str) -> FiniteAlgebra:
    stream = list(_tokens_with_lines(text))
    pos = 0

    def take(expected: str = "") -> tuple[int, str]:
        nonlocal pos
        if pos >= len(stream):
            raise ParseError(f"unexpected end of file, expected {expected or 'a token'}")
        out = stream[pos]
        pos += 1
        return out

    def take_int(context: str) -> int:
        lineno, tok = take(context)
        try:
            return int(tok)
        except ValueError:
            raise ParseError(f"expected an integer for {context}, found {tok!r}", lineno, 1)

    lineno, kw = take("algebra")
    if kw != "algebra":
        raise ParseError(f"expected 'algebra', found {kw!r}", lineno, 1)
    _, name = take("name")
    _, kw = take("size")
    if kw != "size":
        raise ParseError("expected 'size'", lineno, 1)
    size = take_int("size")
    _, kw = take("tuple-length")
    if kw != "tuple-length":
        raise ParseError("expected 'tuple-length'", lineno, 1)
    k = take_int("tuple-length")
    ops: list[tuple[str, int]] = []
    tables: dict[str, tuple[int, ...]] = {}
    zero_src: list[tuple[int, str]] = []
    one_src: list[tuple[int, str]] = []
    while pos < len(stream):
        lineno, kw = take("directive")
        if kw == "op":
            _, op_name = take("op name")
            arity = take_int("arity")
            entries = []
            for _ in range(size**arity):
                value = take_int(f"table entry for {op_name!r}")
                if not (0 <= value < size):
                    raise ParseError(
                        f"table entry {value} for {op_name!r} outside 0..{size - 1}",
                        lineno,
                        1,
                    )
                entries.append(value)
            ops.append((op_name, arity))
            tables[op_name] = tuple(entries)
        elif kw in ("zero", "one"):
            target = zero_src if kw == "zero" else one_src
            for _ in range(k):
                target.append(take(f"{kw} term"))
        else:
            raise ParseError(f"unknown directive {kw!r}", lineno, 1)
    if len(zero_src) != k or len(one_src) != k:
        raise ParseError(f"zero and one tuples must each have {k} terms")
    view = _OpsView(ops)
    zero_terms = tuple(_parse_closed_term(t, view, ln) for ln, t in zero_src)
    one_terms = tuple(_parse_closed_term(t, view, ln) for ln, t in one_src)
    signature = Signature(tuple(ops), k, zero_terms, one_terms)
    return FiniteAlgebra(signature, size, tables, name=name)


def load_algebra(path: str | Path) -> FiniteAlgebra:
    return load_algebra_text(Path(path).read_text())


def dump_algebra(algebra: FiniteAlgebra) -> str:
    lines = [
        f"algebra {algebra.name or 'unnamed'}",
        f"size {algebra.size}",
        f"tuple-length {algebra.signature.tuple_length}",
    ]
    for op, arity in algebra.signature.ops:
        lines.append(f"op {op} {arity}")
        table = algebra.tables[op]
        if arity <= 1:
            lines.append(" ".join(str(v) for v in table))
        else:
            row = algebra.size ** (arity - 1)
            for start in range(0, len(table), row):
                lines.append(" ".join(str(v) for v in table[start : start + row]))
    lines.append("zero " + " ".join(format_term(t) for t in algebra.signature.zero_terms))
    lines.append("one " + " ".join(format_term(t) for t in algebra.signature.one_terms))
    return "\n".join(lines) + "\n"


def load_homomorphism(path: str | Path) -> Homomorphism:
    path = Path(path)
    tokens = list(_tokens_with_lines(path.read_text()))
    if len(tokens) < 3 or tokens[0][1] != "hom":
        raise ParseError("homomorphism file must start with 'hom SRC DST'")
    src = load_algebra(path.parent / tokens[1][1])
    dst = load_algebra(path.parent / tokens[2][1])
    rest = tokens[3:]
    if len(rest) != 3 * src.size:
        raise ParseError(
            f"expected {src.size} lines of 'i -> j', found {len(rest) // 3} entries"
        )
    mapping = [-1] * src.size
    for chunk in range(src.size):
        (ln_a, a), (ln_arrow, arrow), (_, b) = rest[3 * chunk : 3 * chunk + 3]
        if arrow != "->":
            raise ParseError(f"expected '->', found {arrow!r}", ln_arrow, 1)
        try:
            i, j = int(a), int(b)
        except ValueError:
            raise ParseError("map entries must be integers", ln_a, 1)
        if not (0 <= i < src.size):
            raise ParseError(f"source element {i} out of range", ln_a, 1)
        if mapping[i] != -1:
            raise ParseError(f"source element {i} mapped twice", ln_a, 1)
        mapping[i] = j
    return Homomorphism(src, dst, tuple(mapping))


def dump_homomorphism(f: Homomorphism, src_file: str, dst_file: str) -> str:
    lines = [f"hom {src_file} {dst_file}"]
    lines.extend(f"{i} -> {j}" for i, j in enumerate(f.mapping))
    return "\n".join(lines) + "\n"


def load_lattice_site(path: str | Path) -> FiniteLatticeSite:
    tokens = list(_tokens_with_lines(Path(path).read_text()))
    pos = 0

    def take(expected: str) -> str:
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError(f"unexpected end of file, expected {expected}")
        out = tokens[pos]
        pos += 1
        return out[1]

    if take("lattice") != "lattice":
        raise ParseError("lattice file must start with 'lattice NAME'")
    name = take("name")
    if take("size") != "size":
        raise ParseError("expected 'size'")
    try:
        size = int(take("size value"))
    except ValueError:
        raise ParseError("size must be an integer")
    grids = {}
    for label in ("meet", "join"):
        if take(label) != label:
            raise ParseError(f"expected '{label}' table")
        entries = []
        for _ in range(size * size):
            tok = take(f"{label} entry")
            try:
                entries.append(int(tok))
            except ValueError:
                raise ParseError(f"{label} entry {tok!r} is not an integer")
        grids[label] = tuple(entries)
    if pos != len(tokens):
        raise ParseError("trailing input in lattice file")
    return FiniteLatticeSite(size, grids["meet"], grids["join"], name=name)


def dump_lattice_site(site: FiniteLatticeSite) -> str:
    lines = [f"lattice {site.name or 'unnamed'}", f"size {site.size}", "meet"]
    for row in range(site.size):
        lines.append(
            " ".join(str(site.meet_table[row * site.size + c]) for c in range(site.size))
        )
    lines.append("join")
    for row in range(site.size):
        lines.append(
            " ".join(str(site.join_table[row * site.size + c]) for c in range(site.size))
        )
    return "\n".join(lines) + "\n"


def load_formula_file(path: str | Path, signature: Signature):
    from .logic import parse_formula

    text = "\n".join(
        raw.split("#", 1)[0] for raw in Path(path).read_text().splitlines()
    )
    return parse_formula(text, signature)
