"""Pre-derivations on pointed polynomial cores.

A pre-derivation is a finite formal sum of (core, direction) pairs, where
a core is a polynomial function z with 0 in its domain and z(0) = 0, and
the direction is a rational vector matching the core's arity.  Applied to
a scalar function w it produces the germ sum_l u_l d/dx_l (w o z); summed
over the formal summands, grouped by core arity.

Smooth evaluation sends a pre-derivation to the classical tangent vector
Jac(z, 0) u, the vanishing space of a core collects the directions whose
directional derivative germ is identically zero, and the canonical
direction removes the vanishing part by exact orthogonal projection.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .boxes import Box, Ray1, rat
from .polynomials import (CompositionGuardError, Poly, PolyFun, RatLike, compose,
                          format_polyfun, parse_polyfun, range_fits, vsum)


class PreDerivError(ValueError):
    pass


# ---------------------------------------------------------------------------
# exact linear algebra over the rationals


def rref(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    """Reduced row echelon form, in place on a copy."""
    mat = [list(r) for r in rows]
    if not mat:
        return mat
    ncols = len(mat[0])
    lead = 0
    for col in range(ncols):
        piv = next((r for r in range(lead, len(mat)) if mat[r][col] != 0), None)
        if piv is None:
            continue
        mat[lead], mat[piv] = mat[piv], mat[lead]
        inv = 1 / mat[lead][col]
        mat[lead] = [v * inv for v in mat[lead]]
        for r in range(len(mat)):
            if r != lead and mat[r][col] != 0:
                c = mat[r][col]
                mat[r] = [a - c * b for a, b in zip(mat[r], mat[lead])]
        lead += 1
        if lead == len(mat):
            break
    return [r for r in mat if any(v != 0 for v in r)]


def kernel_basis(rows: list[list[Fraction]], ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of the null space of the matrix, in reduced echelon form."""
    red = rref(rows)
    pivots = []
    for r in red:
        pivots.append(next(c for c, v in enumerate(r) if v != 0))
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, pc in zip(red, pivots):
            v[pc] = -r[f]
        basis.append(tuple(v))
    return basis


def solve_sym(mat: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Solve a symmetric positive-definite rational system by elimination."""
    n = len(mat)
    aug = [list(mat[r]) + [rhs[r]] for r in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                c = aug[r][col]
                aug[r] = [a - c * b for a, b in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def project_onto_span(u: Sequence[Fraction],
                      basis: Sequence[Sequence[Fraction]]) -> tuple[Fraction, ...]:
    """Euclidean orthogonal projection of u onto span(basis), exactly."""
    if not basis:
        return tuple(Fraction(0) for _ in u)
    gram = [[dot(a, b) for b in basis] for a in basis]
    coeffs = solve_sym(gram, [dot(a, u) for a in basis])
    out = [Fraction(0)] * len(u)
    for c, b in zip(coeffs, basis):
        for idx, val in enumerate(b):
            out[idx] += c * val
    return tuple(out)


# ---------------------------------------------------------------------------
# cores and pre-derivations


@dataclass(frozen=True)
class GermCore:
    """Pointed polynomial core: 0 in the domain and value 0 at 0."""

    fn: PolyFun

    def __post_init__(self) -> None:
        l = self.fn.arity
        zero = [Fraction(0)] * l
        if not self.fn.domain.contains(zero):
            raise PreDerivError("core domain must contain 0")
        if any(p.eval(zero) != 0 for p in self.fn.components):
            raise PreDerivError("core must vanish at 0")

    @property
    def source_dim(self) -> int:
        return self.fn.arity

    @property
    def target_dim(self) -> int:
        return self.fn.cod_dim


Summand = tuple[GermCore, tuple[Fraction, ...]]


@dataclass(frozen=True)
class PreDeriv:
    """Formal sum of (core, direction) pairs with a shared target
    dimension; the empty sum is the zero pre-derivation."""

    target_dim: int
    summands: tuple[Summand, ...] = ()

    def __post_init__(self) -> None:
        for core, u in self.summands:
            if core.target_dim != self.target_dim:
                raise PreDerivError("summands disagree on the target dimension")
            if len(u) != core.source_dim:
                raise PreDerivError("direction length differs from the core arity")

    @staticmethod
    def of(core: GermCore, direction: Sequence[RatLike]) -> "PreDeriv":
        u = tuple(rat(c) for c in direction)
        return PreDeriv(core.target_dim, ((core, u),))

    @staticmethod
    def zero(target_dim: int) -> "PreDeriv":
        return PreDeriv(target_dim)

    def __add__(self, other: "PreDeriv") -> "PreDeriv":
        if self.target_dim != other.target_dim:
            raise PreDerivError("target dimensions differ")
        return PreDeriv(self.target_dim, self.summands + other.summands)

    def scale(self, a: RatLike) -> "PreDeriv":
        a = rat(a)
        return PreDeriv(self.target_dim,
                        tuple((core, tuple(a * c for c in u))
                              for core, u in self.summands))

    def __neg__(self) -> "PreDeriv":
        return self.scale(-1)


def identity_core(m: int, radius: RatLike = 1) -> GermCore:
    dom = Box((Ray1.bounded(-rat(radius), rat(radius)),) * m)
    return GermCore(PolyFun.identity(dom))


# ---------------------------------------------------------------------------
# germ-level composition


def _shrink_around_zero(b: Box, k: int) -> Box:
    r = Fraction(1, 2 ** k)
    cap = Box((Ray1.bounded(-r, r),) * b.dim)
    out = b.intersect(cap)
    assert out is not None  # both contain 0
    return out


def compose_germ(f: PolyFun, z: PolyFun) -> PolyFun:
    """f o z near 0: shrink z's domain around 0 until the conservative
    range enclosure certifies containment in f's domain."""
    if z.cod_dim != f.arity:
        raise PreDerivError(f"composition dimension mismatch: {z.cod_dim} -> {f.arity}")
    cur = z
    for k in range(1, 300):
        if range_fits(cur, f.domain):
            return compose(f, cur)
        cur = cur.restrict(_shrink_around_zero(z.domain, k))
    raise CompositionGuardError("no neighbourhood of 0 certified the composition")


def germ_equal(a: PolyFun, b: PolyFun) -> bool:
    """Germs of polynomials at 0 coincide exactly when the polynomials do;
    representing boxes are irrelevant."""
    return a.arity == b.arity and a.components == b.components


# ---------------------------------------------------------------------------
# the operations


def apply(dv: PreDeriv, w: PolyFun) -> list[PolyFun]:
    """Evaluate the pre-derivation on a scalar function: per summand the
    germ sum_l u_l d/dx_l (w o z); summands with equal source arity are
    combined on a common sub-box, others stay as a formal list."""
    if w.cod_dim != 1:
        raise PreDerivError("pre-derivations apply to scalar functions")
    if w.arity != dv.target_dim:
        raise PreDerivError("function arity differs from the target dimension")
    zero = [Fraction(0)] * dv.target_dim
    if not w.domain.contains(zero):
        raise PreDerivError("function domain must contain 0")
    grouped: dict[int, PolyFun] = {}
    order: list[int] = []
    for core, u in dv.summands:
        l = core.source_dim
        wz = compose_germ(w, core.fn)
        acc = PolyFun.zero(wz.domain, 1)
        for idx, c in enumerate(u, start=1):
            if c == 0:
                continue
            from .polynomials import partial, vscal
            acc = vsum(acc, vscal(c, partial(wz, idx)))
        if l in grouped:
            prev = grouped[l]
            common = prev.domain.intersect(acc.domain)
            assert common is not None
            grouped[l] = vsum(prev.restrict(common), acc.restrict(common))
        else:
            grouped[l] = acc
            order.append(l)
    return [grouped[l] for l in order]


def eval_smooth(dv: PreDeriv) -> tuple[Fraction, ...]:
    """The classical tangent vector: sum of Jac(z, 0) u over summands."""
    zero_out = [Fraction(0)] * dv.target_dim
    for core, u in dv.summands:
        jac = jacobian_at_zero(core.fn)
        for r in range(dv.target_dim):
            zero_out[r] += dot(jac[r], u)
    return tuple(zero_out)


def jacobian_at_zero(f: PolyFun) -> list[list[Fraction]]:
    l = f.arity
    zero = [Fraction(0)] * l
    return [[p.partial(j).eval(zero) for j in range(1, l + 1)] for p in f.components]


def pre_diff(f: PolyFun, dv: PreDeriv) -> PreDeriv:
    """Push the pre-derivation forward along a pointed function: cores
    become f o z, directions are unchanged."""
    zero = [Fraction(0)] * f.arity
    if not f.domain.contains(zero) or any(p.eval(zero) != 0 for p in f.components):
        raise PreDerivError("the transported function must be pointed at 0")
    if f.arity != dv.target_dim:
        raise PreDerivError("function arity differs from the target dimension")
    new = tuple((GermCore(compose_germ(f, core.fn)), u) for core, u in dv.summands)
    return PreDeriv(f.cod_dim, new)


def chain_check(f: PolyFun, dv: PreDeriv) -> bool:
    """Jac(f,0) . eval_smooth(dv) == eval_smooth(pre_diff(f, dv)), exactly."""
    lhs_vec = eval_smooth(dv)
    jac = jacobian_at_zero(f)
    lhs = tuple(dot(row, lhs_vec) for row in jac)
    rhs = eval_smooth(pre_diff(f, dv))
    return lhs == rhs


def vanishing_space(z: GermCore) -> list[tuple[Fraction, ...]]:
    """Basis (reduced echelon form) of the directions u with
    sum_l u_l d/dx_l z identically zero."""
    l = z.source_dim
    if l == 0:
        return []
    partials = [[p.partial(j) for p in z.fn.components] for j in range(1, l + 1)]
    keys = sorted({k for col in partials for poly in col for k, _ in poly.terms})
    rows = []
    for comp in range(z.target_dim):
        for key in keys:
            row = []
            for j in range(l):
                terms = dict(partials[j][comp].terms)
                row.append(terms.get(key, Fraction(0)))
            rows.append(row)
    if not rows:
        rows = [[Fraction(0)] * l]
    return kernel_basis(rows, l)


def canonical_direction(z: GermCore, u: Sequence[RatLike]) -> tuple[Fraction, ...]:
    """Remove the vanishing part: u minus its orthogonal projection onto
    the span of the vanishing space."""
    uu = [rat(c) for c in u]
    if len(uu) != z.source_dim:
        raise PreDerivError("direction length differs from the core arity")
    proj = project_onto_span(uu, vanishing_space(z))
    return tuple(a - b for a, b in zip(uu, proj))


def smooth_kernel_test(dv: PreDeriv) -> bool:
    """Kernel membership for the smooth-evaluation map."""
    return all(c == 0 for c in eval_smooth(dv))


def nontriviality_witness(l: int, ell: int, u: Sequence[RatLike],
                          target_dim: int = 1) -> PolyFun:
    """Iterated integral of the directional derivative of the map
    x -> (x_ell, 0, ..., 0); its first component is the closed product
    u_ell * prod_i (x_{2i} - x_{2i-1})."""
    if not 1 <= ell <= l:
        raise PreDerivError("component index out of range")
    uu = [rat(c) for c in u]
    if len(uu) != l:
        raise PreDerivError("direction length must be l")
    from .polynomials import smint
    comps = [Poly.const(l, uu[ell - 1])] + [Poly.zero(l)] * (target_dim - 1)
    cur = PolyFun.make(Box.full(l), comps)
    for j in range(l, 0, -1):
        cur = smint(cur, j)
    return cur


# ---------------------------------------------------------------------------
# text form: `D{ core=<polyfun>; u=(...); } + ...`


def format_prederiv(dv: PreDeriv) -> str:
    if not dv.summands:
        return f"0[m={dv.target_dim}]"
    parts = []
    for core, u in dv.summands:
        vec = ", ".join(str(c) for c in u)
        parts.append(f"D{{ core={format_polyfun(core.fn)}; u=({vec}); }}")
    return " + ".join(parts)


_SUMMAND_RE = re.compile(r"D\{\s*core=(?P<core>.*?);\s*u=\((?P<u>[^)]*)\)\s*;\s*\}")


def parse_prederiv(text: str) -> PreDeriv:
    t = text.strip()
    zero_m = re.fullmatch(r"0\[m=(\d+)\]", t)
    if zero_m:
        return PreDeriv.zero(int(zero_m.group(1)))
    summands = []
    pos = 0
    target: Optional[int] = None
    while pos < len(t):
        while pos < len(t) and t[pos].isspace():
            pos += 1
        m = _SUMMAND_RE.match(t, pos)
        if not m:
            raise PreDerivError(f"bad pre-derivation syntax near offset {pos}")
        core = GermCore(parse_polyfun(m.group("core")))
        u = tuple(rat(c.strip()) for c in m.group("u").split(",") if c.strip())
        summands.append((core, u))
        target = core.target_dim if target is None else target
        pos = m.end()
        while pos < len(t) and t[pos].isspace():
            pos += 1
        if pos < len(t):
            if t[pos] != "+":
                raise PreDerivError("expected '+' between summands")
            pos += 1
    if target is None:
        raise PreDerivError("empty pre-derivation text")
    return PreDeriv(target, tuple(summands))
