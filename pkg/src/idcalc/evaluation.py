"""Evaluation of terms into exact polynomial functions.

Smooth terms evaluate directly; continuous terms evaluate after their
opaque generators are instantiated by concrete scalar polynomials.  The
module also provides the linear-combination embedding that turns a
coefficient/base description of a function into a term whose evaluation
reproduces it exactly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .boxes import Box
from .polynomials import (Orientation, Poly, PolyFun, RatLike, apply_word, compose,
                          diag, rat, tuple_)
from .terms import (Act, Base, Comp, Opaque, Smooth, Term, TupleT,
                    opaque_leaves, opaque_set, substitute)


class EvalError(ValueError):
    pass


Instantiation = Mapping[str, PolyFun]


def eval_term(t: Term, permissive: bool = False,
              orientation: Orientation = Orientation.UPPER) -> PolyFun:
    """Evaluate a smooth term; raises on opaque leaves."""
    if isinstance(t, Base):
        if isinstance(t.fn, Opaque):
            raise EvalError(f"opaque generator {t.fn.name!r} cannot be evaluated; "
                            "instantiate it first")
        return t.fn.fn
    if isinstance(t, TupleT):
        return tuple_([eval_term(x, permissive, orientation) for x in t.items])
    if isinstance(t, Comp):
        return compose(eval_term(t.left, permissive, orientation),
                       eval_term(t.right, permissive, orientation),
                       permissive=permissive)
    return apply_word(t.word, eval_term(t.body, permissive, orientation), orientation)


def instantiate(t: Term, assignment: Instantiation) -> Term:
    """Replace every opaque leaf by the assigned scalar polynomial."""
    needed = opaque_set(t)
    missing = needed - set(assignment)
    if missing:
        raise EvalError(f"instantiation misses {sorted(missing)}")
    leaves = opaque_leaves(t)
    mapping = {}
    for path, op in leaves:
        fn = assignment[op.name]
        if fn.cod_dim != 1:
            raise EvalError(f"instantiation of {op.name!r} must be scalar-valued")
        if fn.domain != op.domain:
            raise EvalError(f"instantiation of {op.name!r} has domain {fn.domain}, "
                            f"declared {op.domain}")
        mapping[path] = Base(Smooth(fn))
    return substitute(t, mapping)


# ---------------------------------------------------------------------------
# the linear-combination embedding


Combo = tuple[Sequence[RatLike], Sequence[object]]  # (coefficients, base functions)


def linincl(combos: Sequence[Combo]) -> Term:
    """Build the term (g . <bases>) . diag from per-component coefficient
    lists over base functions sharing one domain; evaluating the term
    reproduces the linear combinations exactly."""
    if not combos:
        raise EvalError("at least one output component is required")
    domain: Optional[Box] = None
    flat_bases: list[Term] = []
    lengths: list[int] = []
    all_coeffs: list[list[Fraction]] = []
    for coeffs, bases in combos:
        if not coeffs or len(coeffs) != len(bases):
            raise EvalError("each component needs matching, nonempty "
                            "coefficient and base lists")
        cs = [rat(c) for c in coeffs]
        if any(c == 0 for c in cs):
            raise EvalError("zero coefficients are not allowed")
        for b in bases:
            dom = b.fn.domain if isinstance(b, Smooth) else b.domain
            if isinstance(b, Smooth) and b.fn.cod_dim != 1:
                raise EvalError("base functions must be scalar-valued")
            if domain is None:
                domain = dom
            elif domain != dom:
                raise EvalError("base functions must share one domain")
            flat_bases.append(Base(b))
        lengths.append(len(cs))
        all_coeffs.append(cs)
    assert domain is not None
    total = sum(lengths)
    g_comps = []
    offset = 0
    for cs in all_coeffs:
        p = Poly.zero(total)
        for k, c in enumerate(cs):
            p = p.add(Poly.var(total, offset + k + 1).scale(c))
        g_comps.append(p)
        offset += len(cs)
    g = PolyFun.make(Box.full(total), g_comps)
    return Comp(Comp(Base(Smooth(g)), TupleT(tuple(flat_bases))),
                Base(Smooth(diag(domain, total))))


def linincl_of_polyfun(f: PolyFun) -> Term:
    """Embed a concrete polynomial function through its monomial bases."""
    if f.cod_dim == 0:
        raise EvalError("the 0-dimensional codomain has no scalar components")
    m = f.arity
    combos: list[Combo] = []
    for p in f.components:
        if p.is_zero:
            combos.append(([Fraction(1)],
                           [Smooth(PolyFun.make(f.domain, [Poly.zero(m)]))]))
            continue
        coeffs = [c for _, c in p.terms]
        bases = [Smooth(PolyFun.make(f.domain, [Poly.make(m, {k: 1})]))
                 for k, _ in p.terms]
        combos.append((coeffs, bases))
    return linincl(combos)
