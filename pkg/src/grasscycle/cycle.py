"""Representative systems and the product-sequence cycle.

A representative system picks one exponent per ratio class, c_1..c_r, with
c_1 * ... * c_r in alpha F^*.  The vector sequence is
beta_0 = 1, beta_i = beta_{i-1} * c_{((i-1) mod r) + 1}, run for
L = r * |E^*/F^*| steps; window W_i is the span of the k most recent betas.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import (
    NoTwistableRepresentative,
    ProductConditionFailed,
    SpecInvalid,
    WindowSizeOutOfRange,
)
from .field import FieldContext, make_field
from .grassmann import Subspace, span
from .orbits import OrbitPartition, galois_orbit, orbit_partition

G1_STRATEGIES = ("first-twistable", "inverse-shift")


@dataclass(frozen=True)
class CycleSpec:
    ctx: FieldContext
    rep_exponents: tuple[int, ...]
    alpha_exponent: int = 1
    source: str = "user"

    @property
    def r(self) -> int:
        return len(self.rep_exponents)

    def reordered(self, reps: Sequence[int], source: str | None = None) -> CycleSpec:
        return CycleSpec(self.ctx, tuple(reps), self.alpha_exponent, source or self.source)

    def to_json(self) -> dict:
        return {
            "q": self.ctx.q,
            "n": self.ctx.n,
            "poly": list(self.ctx.modulus_poly),
            "reps": list(self.rep_exponents),
            "source": self.source,
        }

    @classmethod
    def from_json(cls, data: dict, ctx: FieldContext | None = None) -> CycleSpec:
        if ctx is None:
            ctx = make_field(data["q"], data["n"], data["poly"])
        reps = tuple(int(e) % ctx.group_order for e in data["reps"])
        return cls(ctx, reps, source=data.get("source", "user"))


def product_exponent(ctx: FieldContext, reps: Sequence[int]) -> int:
    return sum(reps) % ctx.group_order


def product_in_alpha_fstar(ctx: FieldContext, reps: Sequence[int]) -> bool:
    """c_1 ... c_r in alpha F^*, i.e. sum of exponents is 1 mod |Gamma|."""
    return (sum(reps) - 1) % ctx.gamma_order == 0


@dataclass
class SpecVerdict:
    ok: bool
    coverage_ok: bool
    product_ok: bool
    product_exponent: int
    missing_classes: list[int] = field(default_factory=list)
    repeated_classes: list[int] = field(default_factory=list)
    base_field_reps: list[int] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "coverage_ok": self.coverage_ok,
            "product_ok": self.product_ok,
            "product_exponent": self.product_exponent,
            "missing_classes": self.missing_classes,
            "repeated_classes": self.repeated_classes,
            "base_field_reps": self.base_field_reps,
            "violations": self.violations,
        }


def validate_spec(spec: CycleSpec, partition: OrbitPartition | None = None) -> SpecVerdict:
    """Check one representative per ratio class and the product condition.

    Classes are reported by their representative (minimum) exponent.
    """
    ctx = spec.ctx
    partition = partition or orbit_partition(ctx)
    hits = [0] * partition.r
    base = []
    for e in spec.rep_exponents:
        ci = partition.class_of(e)
        if ci is None:
            base.append(e)
        else:
            hits[ci] += 1
    rep = [c.representative_exponent for c in partition.classes]
    missing = [rep[i] for i, h in enumerate(hits) if h == 0]
    repeated = [rep[i] for i, h in enumerate(hits) if h > 1]
    coverage_ok = not (missing or repeated or base)
    pe = product_exponent(ctx, spec.rep_exponents)
    product_ok = product_in_alpha_fstar(ctx, spec.rep_exponents)

    violations = []
    if base:
        violations.append(f"representatives in F^*: {base}")
    if missing:
        violations.append(f"classes without a representative: {missing}")
    if repeated:
        violations.append(f"classes covered more than once: {repeated}")
    if not product_ok:
        where = "F^*" if pe % ctx.gamma_order == 0 else "a coset other than alpha F^*"
        violations.append(f"product a^{pe} lies in {where}, not alpha F^*")
    return SpecVerdict(coverage_ok and product_ok, coverage_ok, product_ok, pe,
                       missing, repeated, base, violations)


def _choose_g1(partition: OrbitPartition, g1: str | int | None) -> int:
    ctx = partition.ctx
    if isinstance(g1, int):
        e = g1 % ctx.group_order
        if not partition.twistable(e):
            raise NoTwistableRepresentative(f"alpha * a^{e} is not Moebius-equivalent to a^{e}")
        return e
    strategy = g1 or "first-twistable"
    if strategy == "inverse-shift":
        # z = 1/(alpha - 1) satisfies z + 1 = alpha z
        z = ctx.inv(ctx.sub(ctx.exp(1), 1))
        e = ctx.log(z)
        if partition.twistable(e):
            return e
    elif strategy != "first-twistable":
        raise ValueError(f"unknown g1 strategy {strategy!r}; expected one of {G1_STRATEGIES}")
    for e in range(ctx.group_order):
        if partition.twistable(e):
            return e
    raise NoTwistableRepresentative(f"no twistable element for q={ctx.q}, n={ctx.n}")


def default_representatives(partition: OrbitPartition, g1: str | int | None = None) -> CycleSpec:
    """The representative system {alpha g_1, g_1^q, ...} plus plain Frobenius orbits.

    ``g1`` selects the twisted element: ``"first-twistable"`` (default) takes the
    smallest exponent e with alpha^(e+1) in the Moebius orbit of alpha^e;
    ``"inverse-shift"`` takes 1/(alpha - 1); an int names the exponent directly.
    The twisted group is listed first, the rest follow in partition order.
    """
    ctx = partition.ctx
    G = ctx.group_order
    e1 = _choose_g1(partition, g1)
    first = partition.group_of_class(partition.class_of(e1))

    def orbit_of_min(gi: int) -> list[int]:
        grp = partition.galois_grouping[gi]
        low = min(partition.classes[i].representative_exponent for i in grp)
        return list(galois_orbit(ctx, ctx.power_of_alpha(low)))

    plain = {gi: orbit_of_min(gi) for gi in range(partition.m)}
    orbit1 = list(galois_orbit(ctx, ctx.power_of_alpha(e1)))
    reps = [(e1 + 1) % G] + orbit1[1:]
    for gi in range(partition.m):
        if gi != first:
            reps += plain[gi]
    source = f"default(g1=a^{e1})"
    spec = CycleSpec(ctx, tuple(reps), source=source)
    if validate_spec(spec, partition).ok:
        return spec

    # fall back to twisting a single member of some other group
    for gi in range(partition.m):
        if gi == first:
            continue
        for j, e in enumerate(plain[gi]):
            if not partition.twistable(e):
                continue
            reps = list(orbit1)
            for gk in range(partition.m):
                if gk == first:
                    continue
                block = list(plain[gk])
                if gk == gi:
                    block[j] = (e + 1) % G
                reps += block
            spec = CycleSpec(ctx, tuple(reps), source=f"default(twist=a^{e})")
            if validate_spec(spec, partition).ok:
                return spec
    verdict = validate_spec(CycleSpec(ctx, tuple(reps)), partition)
    raise ProductConditionFailed("; ".join(verdict.violations))


@dataclass
class UniversalCycle:
    spec: CycleSpec
    beta_exponents: tuple[int, ...]
    k: int | None = None
    windows: list[Subspace] = field(default_factory=list)

    @property
    def ctx(self) -> FieldContext:
        return self.spec.ctx

    @property
    def length(self) -> int:
        return len(self.beta_exponents)

    @property
    def r(self) -> int:
        return self.spec.r

    def vectors(self) -> list[tuple[int, ...]]:
        ctx = self.ctx
        return [ctx.vector(ctx.exp(e)) for e in self.beta_exponents]

    def to_json(self, include_windows: bool = True) -> dict:
        out = {
            "spec": self.spec.to_json(),
            "length": self.length,
            "beta_exponents": list(self.beta_exponents),
            "vectors": [list(v) for v in self.vectors()],
        }
        if include_windows and self.windows:
            out["k"] = self.k
            out["windows"] = [w.to_json() for w in self.windows]
        return out


def build_beta_sequence(spec: CycleSpec, partition: OrbitPartition | None = None) -> UniversalCycle:
    """Prefix products of the cyclically repeated representatives, as exponents.

    Raises SpecInvalid if the representative system fails validation.
    """
    ctx = spec.ctx
    verdict = validate_spec(spec, partition)
    if not verdict.ok:
        raise SpecInvalid("; ".join(verdict.violations))
    G = ctx.group_order
    reps = spec.rep_exponents
    r = len(reps)
    length = r * ctx.gamma_order
    betas = [0] * length
    e = 0
    for i in range(1, length):
        e = (e + reps[(i - 1) % r]) % G
        betas[i] = e
    return UniversalCycle(spec, tuple(betas))


def window(cycle: UniversalCycle, i: int, k: int) -> Subspace:
    """span{beta_i, beta_(i-1), ..., beta_(i-k+1)} with cyclic indices."""
    ctx = cycle.ctx
    L = cycle.length
    return span([ctx.vector(ctx.exp(cycle.beta_exponents[(i - j) % L])) for j in range(k)], ctx.q)


def build_windows(cycle: UniversalCycle, k: int = 2) -> list[Subspace]:
    """All L windows of size k; stored on the cycle and returned.

    A window of rank below k is kept as the lower-dimensional span so the
    verifier can report it.
    """
    n = cycle.ctx.n
    if not 2 <= k <= n:
        raise WindowSizeOutOfRange(f"k={k} outside 2..{n}")
    cycle.windows = [window(cycle, i, k) for i in range(cycle.length)]
    cycle.k = k
    return cycle.windows


def build_cycle(ctx: FieldContext, reps: Sequence[int] | None = None, k: int = 2,
                g1: str | int | None = None) -> UniversalCycle:
    """Convenience: default or explicit representatives -> betas -> k-windows."""
    partition = orbit_partition(ctx)
    if reps is None:
        spec = default_representatives(partition, g1)
    else:
        spec = CycleSpec(ctx, tuple(e % ctx.group_order for e in reps))
    cycle = build_beta_sequence(spec, partition)
    build_windows(cycle, k)
    return cycle
