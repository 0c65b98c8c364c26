"""Formulas of the evidence language: AST, parser, printer, enumeration.

Concrete syntax (ASCII)::

    formula := iff
    iff     := imp ("<->" imp)*
    imp     := or ("->" imp)?
    or      := and ("|" and)*
    and     := unary ("&" unary)*
    unary   := "~" unary | MOD unary
             | "B{" formula ";" formula "}" unary | "B{" formula "}" unary
             | "[+" formula "]" unary
             | atom | "true" | "false" | "(" formula ")"
    MOD     := [B] <B> [E] <E> [A] <A> [P] <P> [C] [U]

``[P]``/``<P>`` is safe belief (the plausibility box).  Atoms are lowercase
identifiers; uppercase identifiers are schema metavariables and are only
accepted by :func:`parse_schema`.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

__all__ = [
    "Formula", "Atom", "Meta", "Top", "Bottom", "Not", "And", "Or", "Implies",
    "Iff", "Box", "Diamond", "CondB", "CondB2", "AddEv", "TRUE", "FALSE",
    "ParseError", "parse", "parse_schema", "render", "subformulas",
    "instantiate", "metavariables", "atoms_of", "signature", "modal_depth",
    "enumerate_formulas", "count_formulas", "OPERATORS", "BASE_OPERATORS",
    "is_static", "is_base_language",
]

BOX_MODS = ("B", "E", "A", "P", "C", "U")
DIA_MODS = ("B", "E", "A", "P")


class Formula:
    """Base class of formula nodes; all nodes are immutable and hashable."""

    __slots__ = ()

    def children(self) -> tuple["Formula", ...]:
        return ()

    def __str__(self) -> str:
        return render(self)

    # convenience combinators, handy in tests and scripts
    def __and__(self, other: "Formula") -> "Formula":
        return And(self, other)

    def __or__(self, other: "Formula") -> "Formula":
        return Or(self, other)

    def __invert__(self) -> "Formula":
        return Not(self)

    def __rshift__(self, other: "Formula") -> "Formula":
        return Implies(self, other)


@dataclass(frozen=True, slots=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True, slots=True)
class Meta(Formula):
    """Schema metavariable; never appears in object-level formulas."""

    name: str


@dataclass(frozen=True, slots=True)
class Top(Formula):
    pass


@dataclass(frozen=True, slots=True)
class Bottom(Formula):
    pass


TRUE = Top()
FALSE = Bottom()


@dataclass(frozen=True, slots=True)
class Not(Formula):
    arg: Formula

    def children(self):
        return (self.arg,)


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True, slots=True)
class Implies(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True, slots=True)
class Iff(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True, slots=True)
class Box(Formula):
    """``[mod] arg`` for mod in B, E, A, P (safe belief), C (reliable), U (unreliable)."""

    mod: str
    arg: Formula

    def __post_init__(self):
        if self.mod not in BOX_MODS:
            raise ValueError(f"unknown box modality {self.mod!r}")

    def children(self):
        return (self.arg,)


@dataclass(frozen=True, slots=True)
class Diamond(Formula):
    """``<mod> arg``; stored as its own node, not as ``~[mod]~arg``."""

    mod: str
    arg: Formula

    def __post_init__(self):
        if self.mod not in DIA_MODS:
            raise ValueError(f"unknown diamond modality {self.mod!r}")

    def children(self):
        return (self.arg,)


@dataclass(frozen=True, slots=True)
class CondB(Formula):
    """Conditional belief ``B{condition} body``."""

    condition: Formula
    body: Formula

    def children(self):
        return (self.condition, self.body)


@dataclass(frozen=True, slots=True)
class CondB2(Formula):
    """Two-place conditional belief ``B{condition; settled} body``."""

    condition: Formula
    settled: Formula
    body: Formula

    def children(self):
        return (self.condition, self.settled, self.body)


@dataclass(frozen=True, slots=True)
class AddEv(Formula):
    """Evidence addition ``[+evidence] body``."""

    evidence: Formula
    body: Formula

    def children(self):
        return (self.evidence, self.body)


# ---------------------------------------------------------------------------
# parsing

class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<op><->|->|~|&|\||\(|\)|;|；|\}|\])
  | (?P<mod>\[[BEAPCU]\]|<[BEAP]>)
  | (?P<condb>B\{)
  | (?P<add>\[\+)
  | (?P<lower>[a-z][a-z0-9_]*)
  | (?P<upper>[A-Z][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unknown token {text[pos]!r}", pos, text)
        kind = m.lastgroup
        value = m.group()
        if kind != "ws":
            if kind == "op" and value == "；":
                value = ";"
            tokens.append((kind, value, pos))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, allow_meta: bool):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.allow_meta = allow_meta

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, v, pos = self.advance()
        if v != value or kind == "eof":
            found = "end of input" if kind == "eof" else repr(v)
            raise ParseError(f"expected {value!r}, found {found}", pos, self.text)

    def parse(self) -> Formula:
        f = self.iff()
        kind, v, pos = self.peek()
        if kind != "eof":
            if v in (")", "}", "]"):
                raise ParseError(f"unbalanced {v!r}", pos, self.text)
            raise ParseError(f"unexpected token {v!r}", pos, self.text)
        return f

    def iff(self) -> Formula:
        f = self.imp()
        while self.peek()[1] == "<->":
            self.advance()
            f = Iff(f, self.imp())
        return f

    def imp(self) -> Formula:
        f = self.or_()
        if self.peek()[1] == "->":
            self.advance()
            return Implies(f, self.imp())
        return f

    def or_(self) -> Formula:
        f = self.and_()
        while self.peek()[1] == "|":
            self.advance()
            f = Or(f, self.and_())
        return f

    def and_(self) -> Formula:
        f = self.unary()
        while self.peek()[1] == "&":
            self.advance()
            f = And(f, self.unary())
        return f

    def operand(self, after: str, pos: int) -> Formula:
        if self.peek()[0] == "eof":
            raise ParseError(f"dangling {after}: expected formula", pos, self.text)
        return self.unary()

    def unary(self) -> Formula:
        kind, v, pos = self.advance()
        if kind == "op" and v == "~":
            return Not(self.operand("'~'", pos))
        if kind == "mod":
            arg = self.operand(v, pos)
            return Box(v[1], arg) if v[0] == "[" else Diamond(v[1], arg)
        if kind == "condb":
            condition = self.iff()
            if self.peek()[1] == ";":
                self.advance()
                settled = self.iff()
                self.expect("}")
                return CondB2(condition, settled, self.operand("'B{...}'", pos))
            self.expect("}")
            return CondB(condition, self.operand("'B{...}'", pos))
        if kind == "add":
            evidence = self.iff()
            self.expect("]")
            return AddEv(evidence, self.operand("'[+...]'", pos))
        if kind == "lower":
            if v == "true":
                return TRUE
            if v == "false":
                return FALSE
            return Atom(v)
        if kind == "upper":
            if not self.allow_meta:
                raise ParseError(f"metavariable {v!r} outside a schema", pos, self.text)
            return Meta(v)
        if kind == "op" and v == "(":
            f = self.iff()
            kind2, v2, pos2 = self.peek()
            if v2 != ")":
                raise ParseError("unbalanced '('", pos, self.text)
            self.advance()
            return f
        if kind == "eof":
            raise ParseError("unexpected end of input", pos, self.text)
        raise ParseError(f"unexpected token {v!r}", pos, self.text)


def parse(text: str) -> Formula:
    """Parse object-level formula text; raises :class:`ParseError` with a position."""
    return _Parser(text, allow_meta=False).parse()


def parse_schema(text: str) -> Formula:
    """Parse text in which uppercase identifiers denote metavariables."""
    return _Parser(text, allow_meta=True).parse()


# ---------------------------------------------------------------------------
# printing

_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4}
_SYMBOL = {Iff: "<->", Implies: "->", Or: "|", And: "&"}


def render(f: Formula) -> str:
    """Render with the fewest parentheses the grammar allows."""
    return _render(f, 0)


def _render(f: Formula, level: int) -> str:
    cls = type(f)
    if cls in _PREC:
        prec = _PREC[cls]
        if cls is Implies:  # right associative
            left_level, right_level = prec + 1, prec
        else:  # left associative
            left_level, right_level = prec, prec + 1
        s = f"{_render(f.left, left_level)} {_SYMBOL[cls]} {_render(f.right, right_level)}"
        return f"({s})" if level > prec else s
    if cls is Atom or cls is Meta:
        return f.name
    if cls is Top:
        return "true"
    if cls is Bottom:
        return "false"
    if cls is Not:
        return "~" + _render(f.arg, 5)
    if cls is Box:
        return f"[{f.mod}] " + _render(f.arg, 5)
    if cls is Diamond:
        return f"<{f.mod}> " + _render(f.arg, 5)
    if cls is CondB:
        return f"B{{{_render(f.condition, 0)}}} " + _render(f.body, 5)
    if cls is CondB2:
        return f"B{{{_render(f.condition, 0)}; {_render(f.settled, 0)}}} " + _render(f.body, 5)
    if cls is AddEv:
        return f"[+{_render(f.evidence, 0)}] " + _render(f.body, 5)
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# structure

def subformulas(f: Formula) -> list[Formula]:
    """Distinct subformulas in post-order (children left to right, then self)."""
    seen: dict[Formula, None] = {}

    def walk(g: Formula) -> None:
        for c in g.children():
            walk(c)
        seen.setdefault(g, None)

    walk(f)
    return list(seen)


def _collect(f: Formula, cls) -> list[str]:
    return sorted({g.name for g in subformulas(f) if type(g) is cls})


def atoms_of(f: Formula) -> list[str]:
    return _collect(f, Atom)


def metavariables(f: Formula) -> list[str]:
    return _collect(f, Meta)


def instantiate(schema: Formula, binding: Mapping[str, Formula]) -> Formula:
    """Simultaneously replace every metavariable by its bound formula."""
    missing = [m for m in metavariables(schema) if m not in binding]
    if missing:
        raise KeyError(f"unbound metavariable(s): {', '.join(missing)}")
    return _subst(schema, binding)


def _subst(f: Formula, binding: Mapping[str, Formula]) -> Formula:
    cls = type(f)
    if cls is Meta:
        return binding[f.name]
    if cls in (Atom, Top, Bottom):
        return f
    if cls is Box or cls is Diamond:
        return cls(f.mod, _subst(f.arg, binding))
    return cls(*(_subst(c, binding) for c in f.children()))


def signature(f: Formula) -> frozenset[str]:
    """Modalities used by ``f`` as a subset of {A, B, E, P}.

    Reliable/unreliable belief, conditional belief and evidence addition are
    all computed from evidence, so they contribute ``E``.
    """
    sig = set()
    for g in subformulas(f):
        if type(g) in (Box, Diamond):
            sig.add("E" if g.mod in ("C", "U") else g.mod)
        elif type(g) in (CondB, CondB2, AddEv):
            sig.add("E")
    return frozenset(sig)


def modal_depth(f: Formula) -> int:
    kids = f.children()
    inner = max((modal_depth(c) for c in kids), default=0)
    if type(f) in (Box, Diamond, CondB, CondB2, AddEv):
        return inner + 1
    return inner


def is_static(f: Formula) -> bool:
    """True when ``f`` has no conditional-belief or evidence-addition operator."""
    return not any(type(g) in (CondB, CondB2, AddEv) for g in subformulas(f))


def is_base_language(f: Formula) -> bool:
    """Static and free of the reliable/unreliable modalities."""
    return is_static(f) and not any(
        type(g) is Box and g.mod in ("C", "U") for g in subformulas(f))


# ---------------------------------------------------------------------------
# enumeration

# name -> (arity, constructor); the order fixes enumeration order
OPERATORS: dict[str, tuple[int, callable]] = {
    "Not": (1, Not),
    "And": (2, And),
    "Or": (2, Or),
    "Implies": (2, Implies),
    "Iff": (2, Iff),
    "BoxB": (1, lambda a: Box("B", a)),
    "DiaB": (1, lambda a: Diamond("B", a)),
    "BoxE": (1, lambda a: Box("E", a)),
    "DiaE": (1, lambda a: Diamond("E", a)),
    "BoxA": (1, lambda a: Box("A", a)),
    "DiaA": (1, lambda a: Diamond("A", a)),
    "BoxP": (1, lambda a: Box("P", a)),
    "DiaP": (1, lambda a: Diamond("P", a)),
    "BoxC": (1, lambda a: Box("C", a)),
    "BoxU": (1, lambda a: Box("U", a)),
    "CondB": (2, CondB),
    "CondB2": (3, CondB2),
    "AddEv": (2, AddEv),
}

BASE_OPERATORS = frozenset(
    {"Not", "And", "BoxB", "DiaB", "BoxE", "DiaE", "BoxA", "DiaA", "BoxP", "DiaP"})


def _ordered_ops(operators: Iterable[str]) -> list[str]:
    ops = set(operators)
    unknown = ops - OPERATORS.keys()
    if unknown:
        raise ValueError(f"unknown operator(s): {sorted(unknown)}")
    return [name for name in OPERATORS if name in ops]


def enumerate_formulas(atoms: Iterable[str], max_depth: int,
                       operators: Iterable[str]) -> Iterator[Formula]:
    """All formulas of depth <= max_depth, each once, in a fixed order.

    Depth 0 is the atoms followed by ``true`` and ``false``; depth d applies
    one operator to arguments of depth < d, at least one of them of depth d-1.
    """
    if max_depth < 0:
        raise ValueError("max_depth must be >= 0")
    ops = _ordered_ops(operators)
    layers: list[list[Formula]] = [[Atom(a) for a in atoms] + [TRUE, FALSE]]
    yield from layers[0]
    below: list[Formula] = list(layers[0])  # all formulas of depth < d
    for d in range(1, max_depth + 1):
        prev = layers[d - 1]
        prev_set = set(prev)
        fresh = []
        for name in ops:
            arity, make = OPERATORS[name]
            for args in itertools.product(below, repeat=arity):
                if any(a in prev_set for a in args):
                    fresh.append(make(*args))
        yield from fresh
        layers.append(fresh)
        below = below + fresh


def count_formulas(n_atoms: int, max_depth: int, operators: Iterable[str]) -> int:
    """Closed-form size of :func:`enumerate_formulas` (N_d = N_0 + sum_op N_{d-1}^arity)."""
    arities = [OPERATORS[name][0] for name in _ordered_ops(operators)]
    n = n_atoms + 2
    base = n
    for _ in range(max_depth):
        n = base + sum(n ** k for k in arities)
    return n
