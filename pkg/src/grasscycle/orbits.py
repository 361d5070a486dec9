"""Projective ratios and the Moebius / Frobenius actions on E \\ F.

PGL_2(F_q) acts on E \\ F by z -> (az + b)/(cz + d); Frobenius z -> z^q
commutes with it because the matrix entries are Frobenius-fixed.  A plane
span{v, w} determines the Moebius orbit of v/w (its *ratio class*), and the
classes are grouped into Frobenius orbits C_1, ..., C_m.

Everything here is computed by exhaustive closure at desk scale; nothing relies
on the gcd criterion without checking it.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from itertools import product
from math import gcd

from .errors import CollapsingAction, InputInBaseField, RatioInBaseField
from .field import FieldContext, FieldElement
from .grassmann import Subspace


@dataclass(frozen=True, order=True)
class MobiusTransform:
    """z -> (a z + b) / (c z + d) over F_q, scaled so the first nonzero entry is 1."""

    a: int
    b: int
    c: int
    d: int

    @classmethod
    def canonical(cls, a: int, b: int, c: int, d: int, q: int) -> MobiusTransform:
        entries = [x % q for x in (a, b, c, d)]
        if (entries[0] * entries[3] - entries[1] * entries[2]) % q == 0:
            raise ValueError("singular matrix")
        lead = next(x for x in entries if x)
        s = pow(lead, q - 2, q)
        return cls(*(x * s % q for x in entries))

    def is_identity(self) -> bool:
        return (self.a, self.b, self.c, self.d) == (1, 0, 0, 1)


def enumerate_pgl2(q: int) -> list[MobiusTransform]:
    """The q(q-1)(q+1) elements of PGL_2(F_q) in canonical form, sorted."""
    out = []
    for a, b, c, d in product(range(q), repeat=4):
        if (a * d - b * c) % q == 0:
            continue
        lead = next(x for x in (a, b, c, d) if x)
        if lead == 1:
            out.append(MobiusTransform(a, b, c, d))
    return sorted(out)


@functools.lru_cache(maxsize=None)
def _pgl2(q: int) -> tuple[MobiusTransform, ...]:
    return tuple(enumerate_pgl2(q))


def _apply_code(ctx: FieldContext, t: MobiusTransform, z: int) -> int:
    num = ctx.add(ctx.mul(t.a, z), t.b)
    den = ctx.add(ctx.mul(t.c, z), t.d)
    return ctx.div(num, den)


def _require_outside_base(x: FieldElement) -> None:
    if x.ctx.in_base_field(x.code):
        raise InputInBaseField(f"{x!r} lies in the base field F_{x.ctx.q}")


def mobius_apply(t: MobiusTransform, z: FieldElement) -> FieldElement:
    _require_outside_base(z)
    return FieldElement(z.ctx, _apply_code(z.ctx, t, z.code))


@dataclass(frozen=True)
class RatioClass:
    """A Moebius orbit in E \\ F, recorded by discrete logs."""

    representative_exponent: int
    orbit_exponents: tuple[int, ...]

    def __contains__(self, e: int) -> bool:
        return e in self.orbit_exponents

    def __len__(self) -> int:
        return len(self.orbit_exponents)


def _orbit_codes(ctx: FieldContext, z: int) -> set[int]:
    transforms = _pgl2(ctx.q)
    seen = {z}
    work = [z]
    while work:
        x = work.pop()
        for t in transforms:
            y = _apply_code(ctx, t, x)
            if y not in seen:
                seen.add(y)
                work.append(y)
    return seen


def pgl_orbit(ctx: FieldContext, z: FieldElement) -> RatioClass:
    _require_outside_base(z)
    exps = sorted(ctx.log(c) for c in _orbit_codes(ctx, z.code))
    return RatioClass(exps[0], tuple(exps))


def galois_orbit(ctx: FieldContext, z: FieldElement) -> tuple[int, ...]:
    """Exponents of z, z^q, z^(q^2), ... in Frobenius order, without repeats."""
    e0 = ctx.log(z.code)
    out = [e0]
    e = e0 * ctx.q % ctx.group_order
    while e != e0:
        out.append(e)
        e = e * ctx.q % ctx.group_order
    return tuple(out)


def collapse_degree(ctx: FieldContext, z: FieldElement) -> int:
    """|PGL_2(F) z  intersect  <Frobenius> z|."""
    orbit = pgl_orbit(ctx, z)
    return len(set(orbit.orbit_exponents) & set(galois_orbit(ctx, z)))


def projective_ratio(v: FieldElement, w: FieldElement) -> RatioClass:
    ctx = v.ctx
    if v.code == 0 or w.code == 0:
        raise RatioInBaseField("zero vector has no projective ratio")
    z = ctx.div(v.code, w.code)
    if ctx.in_base_field(z):
        raise RatioInBaseField(f"{v!r}/{w!r} lies in F_{ctx.q}: the inputs span a line")
    return pgl_orbit(ctx, FieldElement(ctx, z))


def project(ctx: FieldContext, plane: Subspace) -> RatioClass:
    """The ratio class of a 2-subspace, computed from its canonical basis."""
    if plane.k != 2:
        raise ValueError(f"projection is defined on planes, got k={plane.k}")
    v, w = (ctx.element(r) for r in plane.rows)
    return projective_ratio(v, w)


@dataclass(frozen=True)
class NoncollapsingVerdict:
    q: int
    n: int
    gcd: int
    gcd_ok: bool
    exhaustive_ok: bool | None = None
    counterexample: int | None = None
    counterexample_degree: int | None = None

    @property
    def passed(self) -> bool:
        return self.gcd_ok if self.exhaustive_ok is None else self.exhaustive_ok

    def to_json(self) -> dict:
        return {
            "q": self.q, "n": self.n, "gcd": self.gcd, "gcd_ok": self.gcd_ok,
            "exhaustive_ok": self.exhaustive_ok, "counterexample": self.counterexample,
            "counterexample_degree": self.counterexample_degree, "passed": self.passed,
        }


def _ratio_classes(ctx: FieldContext) -> tuple[list[RatioClass], dict[int, int]]:
    class_index: dict[int, int] = {}
    found: list[RatioClass] = []
    for e in range(ctx.group_order):
        if ctx.is_fstar_exponent(e) or e in class_index:
            continue
        cls = pgl_orbit(ctx, ctx.power_of_alpha(e))
        for x in cls.orbit_exponents:
            class_index[x] = len(found)
        found.append(cls)
    # the ascending scan yields classes sorted by minimum exponent
    return found, class_index


def _collapse_scan(ctx: FieldContext, class_index: dict[int, int]) -> tuple[int, int] | None:
    """First exponent (ascending) whose collapse degree exceeds 1, with that degree."""
    for e in range(ctx.group_order):
        if ctx.is_fstar_exponent(e):
            continue
        own = class_index[e]
        m = sum(1 for x in galois_orbit(ctx, ctx.power_of_alpha(e)) if class_index[x] == own)
        if m != 1:
            return e, m
    return None


def check_noncollapsing(q: int, n: int, ctx: FieldContext | None = None) -> NoncollapsingVerdict:
    """gcd(n, q(q^2-1)) test, plus an exhaustive m_z check when ``ctx`` is given."""
    g = gcd(n, q * (q * q - 1))
    if ctx is None:
        return NoncollapsingVerdict(q, n, g, g == 1)
    bad = _collapse_scan(ctx, _ratio_classes(ctx)[1])
    if bad is None:
        return NoncollapsingVerdict(q, n, g, g == 1, True)
    return NoncollapsingVerdict(q, n, g, g == 1, False, bad[0], bad[1])


@dataclass(frozen=True)
class OrbitPartition:
    """Ratio classes of E \\ F grouped into Frobenius orbits.

    ``classes`` is sorted by representative exponent; ``galois_grouping`` holds
    class indices, each group sorted, groups ordered by their smallest class.
    """

    ctx: FieldContext
    classes: tuple[RatioClass, ...]
    galois_grouping: tuple[tuple[int, ...], ...]
    class_index: dict[int, int] = field(repr=False, compare=False)

    @property
    def r(self) -> int:
        return len(self.classes)

    @property
    def m(self) -> int:
        return len(self.galois_grouping)

    def class_of(self, e: int) -> int | None:
        """Index of the class containing alpha^e, or None when alpha^e is in F^*."""
        return self.class_index.get(e % self.ctx.group_order)

    def group_of_class(self, ci: int) -> int:
        for gi, grp in enumerate(self.galois_grouping):
            if ci in grp:
                return gi
        raise KeyError(ci)

    def twistable(self, e: int) -> bool:
        """True when alpha * alpha^e lies in the Moebius orbit of alpha^e."""
        c = self.class_of(e)
        return c is not None and c == self.class_of(e + 1)

    def groups(self) -> list[list[RatioClass]]:
        return [[self.classes[i] for i in grp] for grp in self.galois_grouping]

    def to_json(self) -> list[list[list[int]]]:
        return [[list(c.orbit_exponents) for c in grp] for grp in self.groups()]


def _build_partition(ctx: FieldContext) -> OrbitPartition:
    found, class_index = _ratio_classes(ctx)
    bad = _collapse_scan(ctx, class_index)
    if bad is not None:
        e, m = bad
        raise CollapsingAction(
            f"collapse degree {m} at a^{e} for q={ctx.q}, n={ctx.n}; "
            f"gcd(n, q(q^2-1)) = {gcd(ctx.n, ctx.q * (ctx.q**2 - 1))}")

    # Frobenius on classes: class -> class of frobenius(representative)
    succ = [class_index[c.representative_exponent * ctx.q % ctx.group_order] for c in found]
    groups = []
    assigned: set[int] = set()
    for i in range(len(found)):
        if i in assigned:
            continue
        cycle = [i]
        j = succ[i]
        while j != i:
            cycle.append(j)
            j = succ[j]
        assigned.update(cycle)
        groups.append(tuple(sorted(cycle)))
    groups.sort()
    return OrbitPartition(ctx, tuple(found), tuple(groups), class_index)


@functools.lru_cache(maxsize=16)
def orbit_partition(ctx: FieldContext) -> OrbitPartition:
    """Partition E \\ F into ratio classes and Frobenius groups.

    Raises CollapsingAction if some z has collapse degree above 1.
    """
    return _build_partition(ctx)
