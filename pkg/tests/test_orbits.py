import itertools

import pytest

from grasscycle.errors import CollapsingAction, InputInBaseField, RatioInBaseField
from grasscycle.field import make_field
from grasscycle.grassmann import enumerate_grassmannian, gaussian_binomial, span
from grasscycle.orbits import (
    MobiusTransform,
    check_noncollapsing,
    collapse_degree,
    enumerate_pgl2,
    galois_orbit,
    mobius_apply,
    orbit_partition,
    pgl_orbit,
    project,
    projective_ratio,
)

PAPER_ORBITS_25 = [
    [1, 13, 14, 17, 18, 30],
    [2, 3, 5, 26, 28, 29],
    [4, 6, 10, 21, 25, 27],
    [7, 9, 15, 16, 22, 24],
    [8, 11, 12, 19, 20, 23],
]


def one_shot_orbit(ctx, z):
    """Images of z under every group element, computed once with element operators."""
    out = set()
    for t in enumerate_pgl2(ctx.q):
        out.add(((t.a * z + t.b) / (t.c * z + t.d)).log)
    return out


def outside_base(ctx):
    return [ctx.power_of_alpha(e) for e in range(ctx.group_order) if not ctx.is_fstar_exponent(e)]


@pytest.mark.parametrize("q, size", [(2, 6), (3, 24), (5, 120), (7, 336)])
def test_pgl2_size(q, size):
    ts = enumerate_pgl2(q)
    assert len(ts) == size == q * (q - 1) * (q + 1)
    assert len(set(ts)) == size
    assert MobiusTransform(1, 0, 0, 1) in ts


def test_canonical_transform():
    assert MobiusTransform.canonical(2, 0, 0, 2, 3) == MobiusTransform(1, 0, 0, 1)
    assert MobiusTransform.canonical(0, 2, 1, 0, 3) == MobiusTransform(0, 1, 2, 0)
    with pytest.raises(ValueError):
        MobiusTransform.canonical(1, 1, 1, 1, 2)


def test_mobius_examples(f25):
    z = (f25.alpha - 1).inverse()
    assert mobius_apply(MobiusTransform(1, 0, 0, 1), z) == z
    assert mobius_apply(MobiusTransform(1, 1, 0, 1), z) == f25.alpha * z
    assert mobius_apply(MobiusTransform(0, 1, 1, 0), f25.alpha) == f25.power_of_alpha(30)
    with pytest.raises(InputInBaseField):
        mobius_apply(MobiusTransform(1, 0, 0, 1), f25.one)


def test_shift_twist_holds_in_every_field(f35, f27):
    for ctx in (f35, f27):
        z = (ctx.alpha - 1).inverse()
        assert mobius_apply(MobiusTransform(1, 1, 0, 1), z) == ctx.alpha * z


def test_pgl_orbit_examples(f25):
    assert list(pgl_orbit(f25, f25.alpha).orbit_exponents) == PAPER_ORBITS_25[0]
    assert list(pgl_orbit(f25, f25.power_of_alpha(8)).orbit_exponents) == PAPER_ORBITS_25[4]
    for z in outside_base(f25):
        assert z.log in pgl_orbit(f25, z)


@pytest.mark.parametrize("fixture", ["f25", "f35"])
def test_pgl_orbit_matches_one_shot(fixture, request):
    ctx = request.getfixturevalue(fixture)
    for z in outside_base(ctx):
        assert set(pgl_orbit(ctx, z).orbit_exponents) == one_shot_orbit(ctx, z)


def test_orbit_sizes_25(f25):
    for z in outside_base(f25):
        assert len(pgl_orbit(f25, z)) == 6


def test_projective_ratio_examples(f25):
    cls = projective_ratio(f25.power_of_alpha(3), f25.one)
    assert list(cls.orbit_exponents) == PAPER_ORBITS_25[1]
    assert projective_ratio(f25.power_of_alpha(13), f25.one) == projective_ratio(f25.alpha, f25.one)
    with pytest.raises(RatioInBaseField):
        projective_ratio(f25.alpha, f25.alpha)


def test_projective_ratio_scalar_invariance(f35):
    v, w = f35.power_of_alpha(7), f35.power_of_alpha(100)
    for lam, mu in itertools.product((1, 2), repeat=2):
        assert projective_ratio(v * lam, w * mu) == projective_ratio(v, w)


def test_galois_orbit_examples(f35):
    assert set(galois_orbit(f35, f35.alpha)) == {1, 3, 9, 27, 81}
    assert set(galois_orbit(f35, f35.power_of_alpha(2))) == {2, 6, 18, 54, 162}
    assert galois_orbit(f35, f35.one) == (0,)


def test_collapse_degree_examples(f25, f35):
    assert collapse_degree(f25, f25.alpha) == 1
    assert collapse_degree(f35, f35.alpha) == 1


@pytest.mark.parametrize("fixture", ["f25", "f35"])
def test_noncollapsing_exhaustive(fixture, request):
    ctx = request.getfixturevalue(fixture)
    for z in outside_base(ctx):
        orbit = one_shot_orbit(ctx, z)
        assert len(orbit & set(galois_orbit(ctx, z))) == 1


def test_check_noncollapsing_verdicts(f25, f35):
    v = check_noncollapsing(2, 5, f25)
    assert v.gcd == 1 and v.passed and v.exhaustive_ok
    v = check_noncollapsing(3, 5, f35)
    assert v.gcd == 1 and v.passed
    v = check_noncollapsing(2, 9)
    assert v.gcd == 3 and not v.passed


def test_collapsing_action_29():
    ctx = make_field(2, 9, [1, 0, 0, 0, 1, 0, 0, 0, 0, 1])
    v = check_noncollapsing(2, 9, ctx)
    assert not v.exhaustive_ok
    z = ctx.power_of_alpha(v.counterexample)
    assert collapse_degree(ctx, z) == v.counterexample_degree > 1
    with pytest.raises(CollapsingAction):
        orbit_partition(ctx)


def test_even_n_refused():
    with pytest.raises(CollapsingAction):
        orbit_partition(make_field(2, 4, [1, 1, 0, 0, 1]))


def test_partition_25(f25):
    p = orbit_partition(f25)
    assert p.r == 5 and p.m == 1
    assert p.to_json() == [PAPER_ORBITS_25]


def test_partition_35(f35):
    p = orbit_partition(f35)
    assert p.r == 10 and p.m == 2
    assert all(len(g) == 5 for g in p.galois_grouping)
    assert p.class_of(81) == p.class_of(82)
    # the two Frobenius orbits of the Remark lie in different groups, one class each
    for orbit in ({1, 3, 9, 27, 81}, {2, 6, 18, 54, 162}):
        classes = {p.class_of(e) for e in orbit}
        assert len(classes) == 5
        assert len({p.group_of_class(c) for c in classes}) == 1


@pytest.mark.parametrize("fixture", ["f25", "f35", "f27"])
def test_partition_structure(fixture, request):
    ctx = request.getfixturevalue(fixture)
    p = orbit_partition(ctx)
    assert p.r * ctx.gamma_order == gaussian_binomial(ctx.n, 2, ctx.q)
    union = [e for c in p.classes for e in c.orbit_exponents]
    assert sorted(union) == [e for e in range(ctx.group_order) if not ctx.is_fstar_exponent(e)]
    for gi, grp in enumerate(p.galois_grouping):
        for ci in grp:
            image = p.class_of(p.classes[ci].representative_exponent * ctx.q)
            assert image in grp
    reps = [c.representative_exponent for c in p.classes]
    assert reps == sorted(reps)


@pytest.mark.parametrize("fixture", ["f25", "f35"])
def test_frobenius_mobius_commute(fixture, request):
    ctx = request.getfixturevalue(fixture)
    for t in enumerate_pgl2(ctx.q):
        for z in outside_base(ctx):
            fz = ctx.element(ctx.frobenius(z.code))
            lhs = ctx.frobenius(mobius_apply(t, z).code)
            assert lhs == mobius_apply(t, fz).code
            assert not mobius_apply(t, z).in_base_field()


def test_projection_well_defined_25(f25):
    """Every ordered basis pair of every plane gives the same ratio class."""
    for plane in enumerate_grassmannian(f25, 2):
        pts = [f25.element(v) for v in itertools.product(range(2), repeat=5)
               if any(v) and plane.contains(v)]
        classes = {projective_ratio(v, w) for v, w in itertools.permutations(pts, 2)}
        assert classes == {project(f25, plane)}


@pytest.mark.parametrize("fixture", ["f25", "f35"])
def test_uniform_fibers(fixture, request):
    ctx = request.getfixturevalue(fixture)
    p = orbit_partition(ctx)
    counts = [0] * p.r
    for plane in enumerate_grassmannian(ctx, 2):
        v, w = (ctx.element(r) for r in plane.rows)
        counts[p.class_of(ctx.log(ctx.div(v.code, w.code)))] += 1
    assert counts == [ctx.gamma_order] * p.r


def test_project_requires_plane(f25):
    with pytest.raises(ValueError):
        project(f25, span([(1, 0, 0, 0, 0)], 2))
