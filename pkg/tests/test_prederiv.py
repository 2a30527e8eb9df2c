import random
from fractions import Fraction

import pytest

from idcalc.boxes import Box, Ray1
from idcalc.polynomials import Poly, PolyFun, parse_polyfun
from idcalc.prederiv import (GermCore, PreDeriv, PreDerivError, apply,
                             canonical_direction, chain_check, eval_smooth,
                             format_prederiv, germ_equal, identity_core,
                             jacobian_at_zero, kernel_basis,
                             nontriviality_witness, parse_prederiv, pre_diff,
                             project_onto_span, smooth_kernel_test,
                             vanishing_space)

F = Fraction


def core(text):
    return GermCore(parse_polyfun(text))


def rand_pointed(rng, l, m, deg=3):
    comps = []
    for _ in range(m):
        terms = {}
        for _ in range(rng.randint(1, 3)):
            k = [0] * l
            for _ in range(rng.randint(1, deg)):
                k[rng.randrange(l)] += 1
            terms[tuple(k)] = F(rng.randint(-3, 3), rng.choice((1, 2)))
        comps.append(Poly.make(l, terms))
    dom = Box((Ray1.bounded(-2, 2),) * l)
    return PolyFun.make(dom, comps)


def rand_direction(rng, l):
    return tuple(F(rng.randint(-3, 3), rng.choice((1, 2))) for _ in range(l))


# ---------------------------------------------------------------------------
# construction invariants


def test_core_must_be_pointed():
    with pytest.raises(PreDerivError):
        core("poly 1->1 on (-1,1) : 1 x1 + 1")
    with pytest.raises(PreDerivError):
        core("poly 1->1 on (1,2) : 1 x1")


def test_direction_length_checked():
    z = core("poly 1->2 on (-1,1) : 1 x1; 1 x1^2")
    with pytest.raises(PreDerivError):
        PreDeriv.of(z, [1, 2])


# ---------------------------------------------------------------------------
# apply


def test_apply_curve_example():
    z = core("poly 1->2 on (-1,1) : 1 x1; 1 x1^2")
    dv = PreDeriv.of(z, [1])
    w = parse_polyfun("poly 2->1 on RxR : 1 x1 + 1 x2")
    out = apply(dv, w)
    assert len(out) == 1
    assert germ_equal(out[0], parse_polyfun("poly 1->1 on (-1,1) : 2 x1 + 1"))


def test_apply_zero_direction():
    z = core("poly 1->2 on (-1,1) : 1 x1; 1 x1^2")
    dv = PreDeriv.of(z, [0])
    out = apply(dv, parse_polyfun("poly 2->1 on RxR : 1 x1 x2"))
    assert all(g.components[0].is_zero for g in out)


def test_apply_zero_prederiv():
    out = apply(PreDeriv.zero(2), parse_polyfun("poly 2->1 on RxR : 1 x1"))
    assert out == []


def test_apply_additive_in_directions():
    rng = random.Random(4)
    for _ in range(20):
        l, m = rng.randint(1, 3), rng.randint(1, 2)
        z = GermCore(rand_pointed(rng, l, m))
        u1, u2 = rand_direction(rng, l), rand_direction(rng, l)
        w = rand_pointed(rng, m, 1)
        joined = apply(PreDeriv.of(z, [a + b for a, b in zip(u1, u2)]), w)
        split = apply(PreDeriv.of(z, u1) + PreDeriv.of(z, u2), w)
        assert len(joined) == len(split) == 1
        assert germ_equal(joined[0], split[0])


# ---------------------------------------------------------------------------
# smooth evaluation and the chain rule


def test_section_identity():
    dv = PreDeriv.of(identity_core(3), [F(2), F(-1), F(7, 2)])
    assert eval_smooth(dv) == (F(2), F(-1), F(7, 2))


def test_eval_smooth_jacobian_example():
    z = core("poly 1->2 on (-1,1) : 1 x1; 1 x1^2")
    assert eval_smooth(PreDeriv.of(z, [1])) == (F(1), F(0))


def test_eval_smooth_zero():
    assert eval_smooth(PreDeriv.zero(3)) == (F(0), F(0), F(0))


def test_pre_diff_identity():
    z = core("poly 1->2 on (-1,1) : 1 x1; 1 x1^2")
    dv = PreDeriv.of(z, [1])
    out = pre_diff(PolyFun.identity(Box.cube(-1, 1, 2)), dv)
    assert eval_smooth(out) == eval_smooth(dv)
    assert germ_equal(out.summands[0][0].fn, z.fn)


def test_pre_diff_functorial_on_cores():
    rng = random.Random(8)
    for _ in range(15):
        l = rng.randint(1, 2)
        z = GermCore(rand_pointed(rng, l, 2, deg=2))
        u = rand_direction(rng, l)
        dv = PreDeriv.of(z, u)
        g = rand_pointed(rng, 2, 2, deg=2)
        f = rand_pointed(rng, 2, 2, deg=2)
        one_shot = pre_diff_compose(f, g, dv)
        two_step = pre_diff(f, pre_diff(g, dv))
        assert len(one_shot.summands) == len(two_step.summands)
        for (c1, u1), (c2, u2) in zip(one_shot.summands, two_step.summands):
            assert u1 == u2
            assert germ_equal_near_zero(c1.fn, c2.fn)


def pre_diff_compose(f, g, dv):
    from idcalc.prederiv import compose_germ
    composed = compose_germ(f, g)
    return pre_diff(composed, dv)


def germ_equal_near_zero(a, b):
    return a.arity == b.arity and a.components == b.components


def test_pre_diff_curve_example():
    z = core("poly 1->2 on (-1,1) : 1 x1; 1 x1^2")
    dv = PreDeriv.of(z, [1])
    f = parse_polyfun("poly 2->1 on RxR : 1 x1 + 1 x2")
    out = pre_diff(f, dv)
    assert out.target_dim == 1
    assert germ_equal(out.summands[0][0].fn,
                      parse_polyfun("poly 1->1 on (-1,1) : 1 x1 + 1 x1^2"))


def test_chain_check_example_and_random():
    z = core("poly 1->2 on (-1,1) : 1 x1; 1 x1^2")
    dv = PreDeriv.of(z, [1])
    f = parse_polyfun("poly 2->1 on RxR : 1 x1 + 1 x2")
    assert chain_check(f, dv)
    rng = random.Random(21)
    for _ in range(100):
        l, m, n = rng.randint(1, 3), rng.randint(1, 3), rng.randint(1, 2)
        z = GermCore(rand_pointed(rng, l, m))
        dv = PreDeriv.of(z, rand_direction(rng, l))
        f = rand_pointed(rng, m, n)
        assert chain_check(f, dv)


# ---------------------------------------------------------------------------
# vanishing spaces and canonical directions


def test_vanishing_space_projection_core():
    z = core("poly 2->2 on (-1,1)x(-1,1) : 1 x1; 0")
    assert vanishing_space(z) == [(F(0), F(1))]


def test_vanishing_space_identity_core():
    assert vanishing_space(identity_core(3)) == []


def test_vanishing_space_zero_core():
    z = GermCore(PolyFun.zero(Box.cube(-1, 1, 2), 1))
    assert vanishing_space(z) == [(F(1), F(0)), (F(0), F(1))]


def test_canonical_direction_examples():
    z = core("poly 2->2 on (-1,1)x(-1,1) : 1 x1; 0")
    assert canonical_direction(z, [1, 1]) == (F(1), F(0))
    assert canonical_direction(z, [0, 5]) == (F(0), F(0))
    assert canonical_direction(identity_core(2), [3, 4]) == (F(3), F(4))


def test_canonical_direction_idempotent_and_apply_equivalent():
    rng = random.Random(30)
    cases = 0
    while cases < 5:
        l = rng.randint(2, 3)
        # half of the components ignore some variables to force a kernel
        z = GermCore(rand_pointed(rng, rng.randint(1, l), 1))
        lifted = GermCore(PolyFun.make(
            Box.cube(-2, 2, l),
            [c.remap(l, list(range(1, c.arity + 1))) for c in z.fn.components]))
        basis = vanishing_space(lifted)
        if not basis:
            continue
        cases += 1
        u = rand_direction(rng, l)
        cu = canonical_direction(lifted, u)
        assert canonical_direction(lifted, cu) == cu
        for _ in range(50):
            w = rand_pointed(rng, 1, 1)
            a = apply(PreDeriv.of(lifted, u), w)
            b = apply(PreDeriv.of(lifted, cu), w)
            assert len(a) == len(b) == 1 and germ_equal(a[0], b[0])


def test_vanishing_direction_annihilates():
    z = core("poly 2->2 on (-1,1)x(-1,1) : 1 x1; 0")
    w = parse_polyfun("poly 2->1 on RxR : 1 x1 x2 + 1 x2")
    out = apply(PreDeriv.of(z, [0, 1]), w)
    assert all(g.components[0].is_zero for g in out)


# ---------------------------------------------------------------------------
# kernel criterion


def test_kernel_by_linearity():
    z = core("poly 1->2 on (-1,1) : 1 x1; 1 x1^2")
    dv = PreDeriv.of(z, [1])
    vec = eval_smooth(dv)
    counter = PreDeriv.of(identity_core(2), [-c for c in vec])
    assert smooth_kernel_test(dv + counter)
    assert not smooth_kernel_test(PreDeriv.of(identity_core(2), [1, 0]))
    assert smooth_kernel_test(PreDeriv.zero(2))


# ---------------------------------------------------------------------------
# the nontriviality witness


def test_witness_single_factor():
    out = nontriviality_witness(1, 1, [F(3)])
    assert out == parse_polyfun("poly 2->1 on RxR : 3 x2 + -3 x1")


def test_witness_two_factors_first_component():
    a = F(5, 2)
    out = nontriviality_witness(2, 1, [a, F(7)])
    expected = Poly.var(4, 2).sub(Poly.var(4, 1)).mul(
        Poly.var(4, 4).sub(Poly.var(4, 3))).scale(a)
    assert out.components[0] == expected


def test_witness_zero_direction():
    out = nontriviality_witness(2, 2, [F(0), F(0)])
    assert out.components[0].is_zero


def test_witness_index_range():
    with pytest.raises(PreDerivError):
        nontriviality_witness(2, 3, [F(1), F(1)])


# ---------------------------------------------------------------------------
# rational linear algebra helpers


def test_kernel_basis_reduced():
    rows = [[F(1), F(2), F(3)], [F(2), F(4), F(6)]]
    basis = kernel_basis(rows, 3)
    assert basis == [(F(-2), F(1), F(0)), (F(-3), F(0), F(1))]


def test_projection_orthogonality():
    basis = [(F(1), F(1), F(0))]
    proj = project_onto_span([F(2), F(0), F(5)], basis)
    assert proj == (F(1), F(1), F(0))


def test_jacobian_at_zero():
    f = parse_polyfun("poly 2->2 on RxR : 1 x1 + 3 x2 + 1 x1^2; 2 x2")
    assert jacobian_at_zero(f) == [[F(1), F(3)], [F(0), F(2)]]


# ---------------------------------------------------------------------------
# text form


def test_prederiv_text_roundtrip():
    z = core("poly 1->2 on (-1,1) : 1 x1; 1 x1^2")
    dv = PreDeriv.of(z, [F(1), ]) + PreDeriv.of(identity_core(2), [F(1), F(-2)])
    text = format_prederiv(dv)
    back = parse_prederiv(text)
    assert back == dv


def test_prederiv_zero_text():
    dv = PreDeriv.zero(3)
    assert parse_prederiv(format_prederiv(dv)) == dv


def test_apply_arity_zero_core_gives_zero_germ():
    z = GermCore(PolyFun.make(Box.point(), [Poly.zero(0), Poly.zero(0)]))
    dv = PreDeriv.of(z, [])
    out = apply(dv, parse_polyfun("poly 2->1 on RxR : 1 x1 x2 + 3 x1"))
    assert len(out) == 1 and out[0].components[0].is_zero


def test_apply_additive_in_the_function_argument():
    rng = random.Random(44)
    for _ in range(15):
        l, m = rng.randint(1, 2), rng.randint(1, 2)
        z = GermCore(rand_pointed(rng, l, m))
        dv = PreDeriv.of(z, rand_direction(rng, l))
        w1 = rand_pointed(rng, m, 1)
        w2 = rand_pointed(rng, m, 1).restrict(w1.domain)
        from idcalc.polynomials import vsum
        split = apply(dv, w1)[0].components[0].add(apply(dv, w2)[0].components[0])
        joint = apply(dv, vsum(w1, w2))[0].components[0]
        assert split == joint


def test_eval_smooth_linear_in_directions():
    rng = random.Random(45)
    for _ in range(20):
        l, m = rng.randint(1, 3), rng.randint(1, 2)
        z = GermCore(rand_pointed(rng, l, m))
        u1, u2 = rand_direction(rng, l), rand_direction(rng, l)
        merged = eval_smooth(PreDeriv.of(z, [a + b for a, b in zip(u1, u2)]))
        summed = tuple(a + b for a, b in zip(eval_smooth(PreDeriv.of(z, u1)),
                                             eval_smooth(PreDeriv.of(z, u2))))
        assert merged == summed
        a = F(rng.randint(-4, 4), rng.choice((1, 2)))
        assert eval_smooth(PreDeriv.of(z, u1).scale(a)) == \
            tuple(a * c for c in eval_smooth(PreDeriv.of(z, u1)))


def test_apply_rejects_mismatches():
    z = core("poly 1->2 on (-1,1) : 1 x1; 1 x1^2")
    dv = PreDeriv.of(z, [1])
    with pytest.raises(PreDerivError):
        apply(dv, parse_polyfun("poly 1->1 on R : 1 x1"))  # arity != target
    with pytest.raises(PreDerivError):
        apply(dv, parse_polyfun("poly 2->2 on RxR : 1 x1; 1 x2"))  # not scalar
    with pytest.raises(PreDerivError):
        apply(dv, parse_polyfun("poly 2->1 on (1,2)x(1,2) : 1 x1"))  # 0 outside


def test_pre_diff_rejects_unpointed_map():
    z = core("poly 1->2 on (-1,1) : 1 x1; 1 x1^2")
    dv = PreDeriv.of(z, [1])
    with pytest.raises(PreDerivError):
        pre_diff(parse_polyfun("poly 2->1 on RxR : 1 x1 + 1"), dv)
