"""Brute-force certification of vector cycles.

The verifier only sees a list of coefficient vectors.  Windows are re-spanned
here with :func:`grassmann.span` and counted against an independent
enumeration of G_q(k, n); cycle-builder bookkeeping is never consulted.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence, Union

from .cycle import UniversalCycle
from .errors import ZeroVectorInSequence
from .field import FieldContext
from .grassmann import Subspace, enumerate_grassmannian, gaussian_binomial, scale_subspace, span

CONSOLE_LIMIT = 20


@dataclass
class RawSequence:
    """A cyclic sequence of vectors in F_q^n with no construction attached."""

    q: int
    n: int
    vectors: list[tuple[int, ...]]
    poly: list[int] | None = None

    def __len__(self) -> int:
        return len(self.vectors)


Sequenceish = Union[UniversalCycle, RawSequence]


def as_raw(seq: Sequenceish) -> RawSequence:
    if isinstance(seq, RawSequence):
        return seq
    ctx = seq.ctx
    return RawSequence(ctx.q, ctx.n, seq.vectors(), list(ctx.modulus_poly))


_HEADER_RE = re.compile(r"(\w+)\s*=\s*([0-9,\s]+?)(?=\s+\w+\s*=|\s*$)")


def read_sequence(path: str | Path, q: int | None = None) -> RawSequence:
    """Read one vector per line (comma-separated digits, ascending order).

    ``#`` starts a comment.  A comment of the form ``# q=2 n=5 poly=1,0,1,0,0,1``
    supplies the parameters; an explicit ``q`` argument overrides the header.
    """
    header: dict[str, str] = {}
    vectors: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line, _, comment = raw.partition("#")
        for key, val in _HEADER_RE.findall(comment.strip()):
            header.setdefault(key, val.strip())
        line = line.strip()
        if not line:
            continue
        try:
            vectors.append(tuple(int(t) for t in line.split(",")))
        except ValueError:
            raise ValueError(f"{path}:{lineno}: cannot parse vector {line!r}") from None
    if q is None:
        if "q" not in header:
            raise ValueError(f"{path}: no '# q=...' header and no q given")
        q = int(header["q"])
    if not vectors:
        raise ValueError(f"{path}: empty sequence")
    n = len(vectors[0])
    if any(len(v) != n for v in vectors):
        raise ValueError(f"{path}: vectors of unequal length")
    if "n" in header and int(header["n"]) != n:
        raise ValueError(f"{path}: header says n={header['n']} but vectors have length {n}")
    bad = [v for v in vectors if any(not 0 <= x < q for x in v)]
    if bad:
        raise ValueError(f"{path}: entries outside F_{q}: {bad[0]}")
    poly = [int(t) for t in header["poly"].split(",")] if "poly" in header else None
    return RawSequence(q, n, vectors, poly)


def format_sequence(seq: Sequenceish) -> str:
    raw = as_raw(seq)
    head = f"# q={raw.q} n={raw.n}"
    if raw.poly:
        head += " poly=" + ",".join(map(str, raw.poly))
    lines = [head] + [",".join(map(str, v)) for v in raw.vectors]
    return "\n".join(lines) + "\n"


def _windows(raw: RawSequence, k: int) -> list[Subspace]:
    L = len(raw.vectors)
    return [span([raw.vectors[(i - j) % L] for j in range(k)], raw.q) for i in range(L)]


@dataclass
class LineUniformity:
    ok: bool
    expected: float
    counts: dict[tuple[int, ...], int]

    def distribution(self) -> dict[int, int]:
        """occurrence count -> number of lines with that count"""
        return dict(sorted(Counter(self.counts.values()).items()))

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "expected": self.expected,
            "distribution": {str(c): m for c, m in self.distribution().items()},
            "counts": {",".join(map(str, line)): c for line, c in sorted(self.counts.items())},
        }


def verify_line_uniformity(seq: Sequenceish) -> LineUniformity:
    """Count how often each line of F_q^n is hit by a sequence element.

    Passes when every line is hit equally often (L / |G_q(1,n)| times).
    """
    raw = as_raw(seq)
    _check_nonzero(raw)
    lines = enumerate_grassmannian((raw.q, raw.n), 1)
    counts = {line.rows[0]: 0 for line in lines}
    for v in raw.vectors:
        counts[span([v], raw.q).rows[0]] += 1
    expected = len(raw.vectors) / len(lines)
    ok = len(set(counts.values())) == 1
    return LineUniformity(ok, expected, counts)


@dataclass
class PeriodicityVerdict:
    ok: bool
    checked: int
    first_failure: int | None = None

    def to_json(self) -> dict:
        return {"ok": self.ok, "checked": self.checked, "first_failure": self.first_failure}


def verify_periodicity(cycle: UniversalCycle, k: int = 2,
                       _wins: list[Subspace] | None = None) -> PeriodicityVerdict:
    """Check W_{i+r} = alpha * W_i at every position, windows re-spanned from vectors."""
    ctx: FieldContext = cycle.ctx
    wins = _wins if _wins is not None else _windows(as_raw(cycle), k)
    L, r = len(wins), cycle.r
    alpha = ctx.exp(cycle.spec.alpha_exponent)
    for i in range(L):
        if wins[(i + r) % L] != scale_subspace(ctx, wins[i], alpha):
            return PeriodicityVerdict(False, i + 1, i)
    return PeriodicityVerdict(True, L)


@dataclass
class VerificationReport:
    k: int
    q: int
    n: int
    length: int
    universe_size: int
    multiplicity_histogram: dict[int, int]
    missing: list[Subspace]
    duplicated: list[tuple[Subspace, list[int]]]
    rank_defects: list[int]
    line_uniformity: LineUniformity
    periodicity_ok: bool | None
    verdict: str
    extraneous: list[Subspace] = field(default_factory=list)

    @property
    def universal(self) -> bool:
        return self.verdict == "universal"

    def distinct_seen(self) -> int:
        return sum(m for c, m in self.multiplicity_histogram.items() if c > 0)

    def summary(self) -> str:
        h = ", ".join(f"{c}x:{m}" for c, m in sorted(self.multiplicity_histogram.items()))
        return (f"k={self.k} {self.verdict}: {self.distinct_seen()}/{self.universe_size} subspaces seen, "
                f"length {self.length}, histogram {{{h}}}, rank defects {len(self.rank_defects)}")

    def console(self) -> str:
        out = [self.summary()]
        if self.missing:
            out.append(f"missing ({len(self.missing)}): "
                       + " ".join(str(s) for s in self.missing[:CONSOLE_LIMIT])
                       + (" ..." if len(self.missing) > CONSOLE_LIMIT else ""))
        if self.duplicated:
            shown = [f"{s}@{pos}" for s, pos in self.duplicated[:CONSOLE_LIMIT]]
            out.append(f"duplicated ({len(self.duplicated)}): " + " ".join(shown)
                       + (" ..." if len(self.duplicated) > CONSOLE_LIMIT else ""))
        if self.rank_defects:
            out.append(f"rank defects at {self.rank_defects[:CONSOLE_LIMIT]}")
        return "\n".join(out)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "q": self.q,
            "n": self.n,
            "length": self.length,
            "universe_size": self.universe_size,
            "verdict": self.verdict,
            "multiplicity_histogram": {str(c): m for c, m in sorted(self.multiplicity_histogram.items())},
            "missing": [s.to_json() for s in self.missing],
            "duplicated": [{"subspace": s.to_json(), "positions": pos} for s, pos in self.duplicated],
            "rank_defects": self.rank_defects,
            "line_uniformity": self.line_uniformity.to_json(),
            "periodicity_ok": self.periodicity_ok,
        }


def _check_nonzero(raw: RawSequence) -> None:
    for i, v in enumerate(raw.vectors):
        if not any(v):
            raise ZeroVectorInSequence(f"vector {i} is zero")


def verify_universal(seq: Sequenceish, k: int = 2) -> VerificationReport:
    """Compare the multiset of cyclic k-windows with the enumerated G_q(k, n).

    Verdicts: ``universal`` (each subspace exactly once, no rank defects),
    ``almost_universal`` (every subspace seen, none rank-deficient, some
    repeated; the histogram is the profile), otherwise ``fail``.
    """
    raw = as_raw(seq)
    if not raw.vectors:
        raise ValueError("empty sequence")
    _check_nonzero(raw)
    universe = enumerate_grassmannian((raw.q, raw.n), k)
    assert len(universe) == gaussian_binomial(raw.n, k, raw.q)

    positions: dict[Subspace, list[int]] = {}
    rank_defects = []
    wins = _windows(raw, k)
    for i, w in enumerate(wins):
        if w.k < k:
            rank_defects.append(i)
        else:
            positions.setdefault(w, []).append(i)

    hist: Counter[int] = Counter()
    missing = []
    for s in universe:
        c = len(positions.get(s, ()))
        hist[c] += 1
        if c == 0:
            missing.append(s)
    duplicated = sorted((s, pos) for s, pos in positions.items() if len(pos) > 1)
    universe_set = set(universe)
    extraneous = sorted(s for s in positions if s not in universe_set)

    if not rank_defects and not missing and not duplicated and not extraneous:
        verdict = "universal"
    elif not rank_defects and not missing and not extraneous:
        verdict = "almost_universal"
    else:
        verdict = "fail"

    periodicity = None
    if isinstance(seq, UniversalCycle):
        periodicity = verify_periodicity(seq, k, wins).ok

    return VerificationReport(
        k=k, q=raw.q, n=raw.n, length=len(raw.vectors), universe_size=len(universe),
        multiplicity_histogram=dict(sorted(hist.items())), missing=missing,
        duplicated=duplicated, rank_defects=rank_defects,
        line_uniformity=verify_line_uniformity(raw), periodicity_ok=periodicity,
        verdict=verdict, extraneous=extraneous,
    )
