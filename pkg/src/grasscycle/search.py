"""Exhaustive search for orderings universal at several window sizes at once.

Orderings are taken up to cyclic rotation only: the smallest exponent is
pinned in front and the remaining r-1 are permuted, (r-1)! candidates per
multiset.  Rotating the ordering multiplies every beta by a fixed nonzero
element, which permutes subspaces, so universality is rotation invariant.
Reversals are *not* identified.
"""

from __future__ import annotations

import csv
import io
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations
from math import factorial
from typing import Sequence

from . import windows
from .cycle import CycleSpec, build_beta_sequence, product_in_alpha_fstar, validate_spec
from .errors import SearchSpaceTooLarge, SpecInvalid
from .field import FieldContext
from .grassmann import gaussian_binomial
from .orbits import OrbitPartition, orbit_partition
from .verify import verify_universal

DEFAULT_CAP = 10**7
MODES = ("orderings", "orderings+twist")


@dataclass
class SearchTask:
    spec_template: CycleSpec
    mode: str = "orderings"
    ks: tuple[int, ...] | None = None
    cap: int = DEFAULT_CAP
    workers: int = 1
    record_all: bool = False
    backend: str | None = None

    def window_sizes(self) -> tuple[int, ...]:
        if self.ks:
            return tuple(sorted(set(self.ks)))
        n = self.spec_template.ctx.n
        return tuple(sorted({2, n - 2}))


@dataclass
class SearchResult:
    hits: list[tuple[int, ...]]
    reports: dict[tuple[int, ...], dict[int, str]]
    search_space_size: int
    multisets: list[tuple[int, ...]]
    ks: tuple[int, ...]
    elapsed: float
    backend: str
    rows: list[tuple[tuple[int, ...], dict[int, bool]]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "search_space_size": self.search_space_size,
            "multisets": [list(m) for m in self.multisets],
            "ks": list(self.ks),
            "hit_count": len(self.hits),
            "hits": [list(h) for h in self.hits],
            "verification": [
                {"ordering": list(h), "reports": {str(k): s for k, s in self.reports[h].items()}}
                for h in self.hits
            ],
            "backend": self.backend,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["ordering"] + [f"k{k}" for k in self.ks])
        for ordering, flags in self.rows:
            w.writerow([" ".join(map(str, ordering))] + [int(flags[k]) for k in self.ks])
        return buf.getvalue()


def twist_placements(partition: OrbitPartition, base: Sequence[int]) -> list[tuple[int, ...]]:
    """Multisets obtained from ``base`` by replacing one member g with alpha*g.

    Only members with alpha*g in the Moebius orbit of g are moved, and only
    results satisfying the product condition are kept.  Sorted, deduplicated.
    """
    ctx = partition.ctx
    G = ctx.group_order
    out = set()
    for j, e in enumerate(base):
        if not partition.twistable(e):
            continue
        cand = list(base)
        cand[j] = (e + 1) % G
        if product_in_alpha_fstar(ctx, cand):
            out.add(tuple(sorted(cand)))
    return sorted(out)


def _orderings(multiset: Sequence[int], second: int | None = None):
    ms = sorted(multiset)
    first, rest = ms[0], ms[1:]
    if second is None:
        for p in permutations(rest):
            yield (first,) + p
        return
    lead = rest[second]
    tail = rest[:second] + rest[second + 1:]
    for p in permutations(tail):
        yield (first, lead) + p


def _scan(ctx_params: tuple, codes, multiset: tuple[int, ...], second: int | None,
          ks: tuple[int, ...], record_all: bool, backend: str | None):
    q, n, G, L = ctx_params
    # try larger windows first: for the (n-2) check most orderings fail within a few steps
    order = sorted(ks, reverse=True)
    hits, rows = [], []
    for ordering in _orderings(multiset, second):
        flags = {}
        for k in order:
            flags[k] = windows.first_window_failure(codes, ordering, G, L, q, n, k, backend) < 0
            if not flags[k] and not record_all:
                break
        ok = len(flags) == len(order) and all(flags.values())
        if ok:
            hits.append(ordering)
        if record_all:
            rows.append((ordering, flags))
    return hits, rows


def search_dual(task: SearchTask) -> SearchResult:
    """Enumerate rotation-inequivalent orderings and keep those universal for every k.

    Raises SpecInvalid if the template fails validation (the product and coverage
    conditions do not depend on the order), SearchSpaceTooLarge above ``task.cap``.
    """
    t0 = time.perf_counter()
    spec = task.spec_template
    ctx: FieldContext = spec.ctx
    partition = orbit_partition(ctx)
    ks = task.window_sizes()
    for k in ks:
        if not 2 <= k <= ctx.n:
            raise ValueError(f"window size {k} outside 2..{ctx.n}")

    if task.mode == "orderings":
        verdict = validate_spec(spec, partition)
        if not verdict.ok:
            raise SpecInvalid("; ".join(verdict.violations))
        multisets = [tuple(sorted(spec.rep_exponents))]
    elif task.mode == "orderings+twist":
        multisets = twist_placements(partition, spec.rep_exponents)
        multisets = [m for m in multisets if validate_spec(spec.reordered(m), partition).ok]
    else:
        raise ValueError(f"unknown mode {task.mode!r}; expected one of {MODES}")

    per = factorial(len(spec.rep_exponents) - 1)
    size = per * len(multisets)
    if size > task.cap:
        raise SearchSpaceTooLarge(f"{size} orderings exceed the cap of {task.cap}")

    L = spec.r * ctx.gamma_order
    q, n, G = ctx.q, ctx.n, ctx.group_order
    codes = windows.as_int64(ctx.exp_table)
    reachable = all(gaussian_binomial(n, k, q) == L for k in ks)

    hits: list[tuple[int, ...]] = []
    rows: list = []
    if reachable or task.record_all:
        params = (q, n, G, L)
        for ms in multisets:
            if task.workers > 1 and len(ms) > 2:
                with ProcessPoolExecutor(task.workers) as pool:
                    futs = [pool.submit(_scan, params, list(codes), ms, s, ks, task.record_all, task.backend)
                            for s in range(len(ms) - 1)]
                    parts = [f.result() for f in futs]
            else:
                parts = [_scan(params, codes, ms, None, ks, task.record_all, task.backend)]
            for h, rw in parts:
                hits.extend(h)
                rows.extend(rw)
    if not reachable:
        hits = []
    hits.sort()
    rows.sort(key=lambda t: t[0])

    reports: dict[tuple[int, ...], dict[int, str]] = {}
    for h in hits:
        cycle = build_beta_sequence(spec.reordered(h, "search"), partition)
        per_k = {}
        for k in ks:
            rep = verify_universal(cycle, k)
            if not rep.universal:
                raise RuntimeError(f"kernel accepted {h} but the verifier rejects it at k={k}")
            per_k[k] = rep.summary()
        reports[h] = per_k

    return SearchResult(hits, reports, size, multisets, ks, time.perf_counter() - t0,
                        windows.BACKEND if task.backend is None else task.backend, rows)
