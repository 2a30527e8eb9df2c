"""The free expression-tree language over base functions.

A term is one of: a base leaf (an exact polynomial function, or a named
opaque scalar generator), an n-ary cartesian tuple, a binary composition,
or the action of an operator word.  The module provides signature
inference, occurrence addressing and simultaneous substitution, the
smooth/continuous fragment classification, the unique fully
right-associated normal form, and the derived sum/product/scalar
constructors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence, Union

from .boxes import Box, product
from .polynomials import (PolyFun, RatLike, const_fun, diag, rat, vecprod, vecsum)
from .words import GenKind, Signature, Word, signature_effect


class TermError(ValueError):
    pass


# ---------------------------------------------------------------------------
# base functions and term nodes


@dataclass(frozen=True)
class Smooth:
    fn: PolyFun


@dataclass(frozen=True)
class Opaque:
    """A named continuous scalar generator; evaluable only after
    instantiation by a concrete polynomial."""

    name: str
    domain: Box


BaseFn = Union[Smooth, Opaque]


@dataclass(frozen=True)
class Base:
    fn: BaseFn


@dataclass(frozen=True)
class TupleT:
    items: tuple["Term", ...]

    def __post_init__(self) -> None:
        if not self.items:
            raise TermError("tuples need at least one item")


@dataclass(frozen=True)
class Comp:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Act:
    word: Word
    body: "Term"


Term = Union[Base, TupleT, Comp, Act]
Occurrence = tuple[int, ...]


def children(t: Term) -> tuple[Term, ...]:
    if isinstance(t, Base):
        return ()
    if isinstance(t, TupleT):
        return t.items
    if isinstance(t, Comp):
        return (t.left, t.right)
    return (t.body,)


def _rebuild(t: Term, kids: Sequence[Term]) -> Term:
    if isinstance(t, TupleT):
        return TupleT(tuple(kids))
    if isinstance(t, Comp):
        return Comp(kids[0], kids[1])
    if isinstance(t, Act):
        return Act(t.word, kids[0])
    return t


# ---------------------------------------------------------------------------
# signatures


def signature(t: Term, strict: bool = True) -> Signature:
    if isinstance(t, Base):
        if isinstance(t.fn, Smooth):
            return Signature(t.fn.fn.domain, t.fn.fn.cod_dim)
        return Signature(t.fn.domain, 1)
    if isinstance(t, TupleT):
        sigs = [signature(x, strict) for x in t.items]
        return Signature(product([s.dom for s in sigs]), sum(s.cod_dim for s in sigs))
    if isinstance(t, Comp):
        ls = signature(t.left, strict)
        rs = signature(t.right, strict)
        if strict and rs.cod_dim != ls.dom.dim:
            raise TermError(
                f"composition dimension mismatch: inner codomain {rs.cod_dim}, "
                f"outer domain dimension {ls.dom.dim}")
        return Signature(rs.dom, ls.cod_dim)
    return signature_effect(t.word, signature(t.body, strict))


# ---------------------------------------------------------------------------
# occurrences and substitution


def subterm_at(t: Term, path: Occurrence) -> Term:
    cur = t
    for step in path:
        kids = children(cur)
        if not 0 <= step < len(kids):
            raise TermError(f"occurrence path {path} leaves the term")
        cur = kids[step]
    return cur


def occurrences(t: Term, pattern: Term) -> list[Occurrence]:
    out: list[Occurrence] = []

    def walk(node: Term, path: Occurrence) -> None:
        if node == pattern:
            out.append(path)
        for k, kid in enumerate(children(node)):
            walk(kid, path + (k,))

    walk(t, ())
    return out


def substitute(t: Term, assignment: Mapping[Occurrence, Term]) -> Term:
    """Simultaneous replacement at pairwise non-overlapping addresses."""
    paths = sorted(assignment)
    for a, b in zip(paths, paths[1:]):
        if b[: len(a)] == a:
            raise TermError(f"overlapping occurrences {a} and {b}")
    for path in paths:
        subterm_at(t, path)  # validate early

    def walk(node: Term, path: Occurrence) -> Term:
        if path in assignment:
            return assignment[path]
        kids = children(node)
        if not kids:
            return node
        return _rebuild(node, [walk(kid, path + (k,)) for k, kid in enumerate(kids)])

    return walk(t, ())


def opaque_set(t: Term) -> set[str]:
    if isinstance(t, Base):
        return {t.fn.name} if isinstance(t.fn, Opaque) else set()
    out: set[str] = set()
    for kid in children(t):
        out |= opaque_set(kid)
    return out


def opaque_leaves(t: Term) -> list[tuple[Occurrence, Opaque]]:
    out = []

    def walk(node: Term, path: Occurrence) -> None:
        if isinstance(node, Base) and isinstance(node.fn, Opaque):
            out.append((path, node.fn))
        for k, kid in enumerate(children(node)):
            walk(kid, path + (k,))

    walk(t, ())
    return out


# ---------------------------------------------------------------------------
# fragment classification


SMOOTH = "Smooth"
CONTINUOUS_OK = "ContinuousOK"
ILLEGAL = "Illegal"


def classify(t: Term) -> str:
    """Smooth when opaque-free; ContinuousOK when every word acting above
    an opaque avoids the derivative generator; Illegal otherwise."""
    if not opaque_set(t):
        return SMOOTH

    def ok(node: Term) -> bool:
        if not opaque_set(node):
            return True
        if isinstance(node, Base):
            return True
        if isinstance(node, Act):
            if any(g.kind is GenKind.PART for g in node.word.gens):
                return False
            return ok(node.body)
        return all(ok(kid) for kid in children(node))

    return CONTINUOUS_OK if ok(t) else ILLEGAL


# ---------------------------------------------------------------------------
# right-association normal form


def _comp_chain(t: Term) -> list[Term]:
    if isinstance(t, Comp):
        return _comp_chain(t.left) + _comp_chain(t.right)
    return [t]


def max_augment(t: Term) -> Term:
    """Fully right-associate every composition chain, recursively through
    tuples and actions; leaf order is preserved and the result is the
    unique fixed point."""
    if isinstance(t, Base):
        return t
    if isinstance(t, TupleT):
        return TupleT(tuple(max_augment(x) for x in t.items))
    if isinstance(t, Act):
        return Act(t.word, max_augment(t.body))
    leaves = [max_augment(x) for x in _comp_chain(t)]
    out = leaves[-1]
    for x in reversed(leaves[:-1]):
        out = Comp(x, out)
    return out


def has_left_nested_comp(t: Term) -> bool:
    if isinstance(t, Comp) and isinstance(t.left, Comp):
        return True
    return any(has_left_nested_comp(kid) for kid in children(t))


# ---------------------------------------------------------------------------
# derived pointwise constructors


def _common_domain(t1: Term, t2: Term) -> Box:
    s1, s2 = signature(t1), signature(t2)
    if s1.dom != s2.dom:
        raise TermError("operands live on different domains")
    return s1.dom


def sum_t(t1: Term, t2: Term) -> Term:
    """Pointwise sum: vecsum after pairing after the diagonal."""
    dom = _common_domain(t1, t2)
    n1, n2 = signature(t1).cod_dim, signature(t2).cod_dim
    if n1 != n2:
        raise TermError("sum needs equal codomain dimensions")
    n = max(n1, n2)
    return Comp(Base(Smooth(vecsum(n, 2))),
                Comp(TupleT((t1, t2)), Base(Smooth(diag(dom, 2)))))


def mult_t(t1: Term, t2: Term) -> Term:
    """Pointwise outer product, flattened row-major."""
    dom = _common_domain(t1, t2)
    n1, n2 = signature(t1).cod_dim, signature(t2).cod_dim
    return Comp(Base(Smooth(vecprod(n1, n2))),
                Comp(TupleT((t1, t2)), Base(Smooth(diag(dom, 2)))))


def scal_t(a: RatLike, t: Term) -> Term:
    """Scalar multiple via a constant first factor."""
    sig = signature(t)
    return Comp(Base(Smooth(vecprod(1, sig.cod_dim))),
                Comp(TupleT((Base(Smooth(const_fun(sig.dom, [rat(a)]))), t)),
                     Base(Smooth(diag(sig.dom, 2)))))


# ---------------------------------------------------------------------------
# text form
#
#   term := base | "(" term "." term ")" | "<" term { "," term } ">"
#         | "[" word "]" term
#   base := identifier (opaque, declared in the environment)
#         | "{" polyfun literal "}"


def format_term(t: Term) -> str:
    if isinstance(t, Base):
        if isinstance(t.fn, Opaque):
            return t.fn.name
        from .polynomials import format_polyfun
        return "{" + format_polyfun(t.fn.fn) + "}"
    if isinstance(t, TupleT):
        return "<" + ", ".join(format_term(x) for x in t.items) + ">"
    if isinstance(t, Comp):
        return f"({format_term(t.left)} . {format_term(t.right)})"
    return f"[{t.word}] {format_term(t.body)}"


class _Parser:
    def __init__(self, text: str, env: Mapping[str, Box]):
        self.text = text
        self.pos = 0
        self.env = env

    def error(self, msg: str) -> TermError:
        return TermError(f"{msg} at offset {self.pos} in term text")

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def parse_term(self) -> Term:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            left = self.parse_term()
            self.expect(".")
            right = self.parse_term()
            self.expect(")")
            return Comp(left, right)
        if ch == "<":
            self.pos += 1
            items = [self.parse_term()]
            while self.peek() == ",":
                self.pos += 1
                items.append(self.parse_term())
            self.expect(">")
            return TupleT(tuple(items))
        if ch == "[":
            self.pos += 1
            end = self.text.find("]", self.pos)
            if end < 0:
                raise self.error("unterminated word action")
            from .words import parse_word
            word = parse_word(self.text[self.pos:end])
            self.pos = end + 1
            return Act(word, self.parse_term())
        if ch == "{":
            self.pos += 1
            end = self.text.find("}", self.pos)
            if end < 0:
                raise self.error("unterminated inline polynomial")
            from .polynomials import parse_polyfun
            fn = parse_polyfun(self.text[self.pos:end])
            self.pos = end + 1
            return Base(Smooth(fn))
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum()
                                             or self.text[self.pos] == "_"):
            self.pos += 1
        name = self.text[start:self.pos]
        if not name:
            raise self.error("expected a term")
        if name not in self.env:
            raise TermError(f"opaque generator {name!r} is not declared")
        return Base(Opaque(name, self.env[name]))


def parse_term(text: str, env: Optional[Mapping[str, Box]] = None) -> Term:
    parser = _Parser(text, env or {})
    t = parser.parse_term()
    parser.skip_ws()
    if parser.pos != len(text):
        raise parser.error("trailing input after term")
    return t
