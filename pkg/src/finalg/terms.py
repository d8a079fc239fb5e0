"""Terms over an operation signature: variables and applications.

Terms are plain immutable trees. They carry no algebra reference; evaluation
lives in :mod:`finalg.algebra` where the operation tables are.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class App:
    op: str
    args: tuple["Term", ...] = ()


Term = Union[Var, App]


def free_vars(term: Term) -> frozenset[str]:
    if isinstance(term, Var):
        return frozenset((term.name,))
    out: set[str] = set()
    for a in term.args:
        out |= free_vars(a)
    return frozenset(out)


def is_closed(term: Term) -> bool:
    return not free_vars(term)


def substitute(term: Term, mapping: dict[str, Term]) -> Term:
    """Replace variables by terms. Terms have no binders, so this is direct."""
    if isinstance(term, Var):
        return mapping.get(term.name, term)
    if not term.args:
        return term
    return App(term.op, tuple(substitute(a, mapping) for a in term.args))


def format_term(term: Term) -> str:
    if isinstance(term, Var):
        return term.name
    if not term.args:
        return term.op
    return f"{term.op}({','.join(format_term(a) for a in term.args)})"
