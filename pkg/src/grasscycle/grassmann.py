"""Canonical subspaces of F_q^n: RREF canonicalisation, enumeration, counting.

Vectors are coefficient tuples in ascending order, so column 0 is the
constant coordinate and pivots are found left to right from there.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from .errors import DimensionOutOfRange, ZeroSpan
from .field import FieldContext, FieldElement


@dataclass(frozen=True, order=True)
class Subspace:
    """A subspace given by its reduced row-echelon basis.

    Two instances compare equal exactly when they are the same point of the
    Grassmannian, since the RREF basis is unique.
    """

    q: int
    n: int
    rows: tuple[tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(r) if x) for r in self.rows)

    def contains(self, vector: Sequence[int]) -> bool:
        return rref(list(self.rows) + [tuple(vector)], self.q) == self.rows

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    @classmethod
    def from_json(cls, rows: Sequence[Sequence[int]], q: int) -> Subspace:
        return span(rows, q)

    def __str__(self) -> str:
        return "<" + " ".join("".join(map(str, r)) for r in self.rows) + ">"


def rref(vectors: Iterable[Sequence[int]], q: int) -> tuple[tuple[int, ...], ...]:
    """Nonzero rows of the reduced row-echelon form of ``vectors`` over F_q."""
    rows = [[int(x) % q for x in v] for v in vectors]
    if not rows:
        return ()
    n = len(rows[0])
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead_inv = pow(rows[r][col], q - 2, q)
        prow = [x * lead_inv % q for x in rows[r]]
        rows[r] = prow
        for i in range(len(rows)):
            f = rows[i][col]
            if i != r and f:
                rows[i] = [(a - f * b) % q for a, b in zip(rows[i], prow)]
        r += 1
        if r == len(rows):
            break
    return tuple(tuple(row) for row in rows[:r])


def _as_vectors(vectors, q: int | None) -> tuple[list[tuple[int, ...]], int]:
    vecs = []
    for v in vectors:
        if isinstance(v, FieldElement):
            q = v.ctx.q if q is None else q
            vecs.append(v.coeffs)
        else:
            vecs.append(tuple(v))
    if q is None:
        raise ValueError("q must be given for raw coefficient vectors")
    return vecs, q


def span(vectors: Iterable[Sequence[int] | FieldElement], q: int | None = None) -> Subspace:
    """Canonical span of field elements or coefficient vectors.

    Raises ZeroSpan when every input is zero (or no input is given).
    """
    vecs, q = _as_vectors(vectors, q)
    if not vecs:
        raise ZeroSpan("span of an empty family")
    rows = rref(vecs, q)
    if not rows:
        raise ZeroSpan("all vectors are zero")
    return Subspace(q, len(vecs[0]), rows)


def scale_subspace(ctx: FieldContext, sub: Subspace, factor: int) -> Subspace:
    """Image of ``sub`` under multiplication by the field element with code ``factor``."""
    imgs = [ctx.vector(ctx.mul(ctx.code(r), factor)) for r in sub.rows]
    return span(imgs, ctx.q)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n (0 outside 0 <= k <= n)."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def iter_subspaces(q: int, n: int, k: int) -> Iterator[Subspace]:
    """All k-subspaces of F_q^n, generated directly from pivot patterns."""
    if not 0 <= k <= n:
        raise DimensionOutOfRange(f"k={k} outside 0..{n}")
    if k == 0:
        yield Subspace(q, n, ())
        return
    for pivots in combinations(range(n), k):
        pivset = set(pivots)
        free = [(i, j) for i, p in enumerate(pivots)
                for j in range(p + 1, n) if j not in pivset]
        for values in product(range(q), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, j), x in zip(free, values):
                rows[i][j] = x
            yield Subspace(q, n, tuple(tuple(r) for r in rows))


def enumerate_grassmannian(ctx: FieldContext | tuple[int, int], k: int) -> list[Subspace]:
    """Every point of G_q(k, n), each once, sorted lexicographically by RREF matrix."""
    if isinstance(ctx, FieldContext):
        q, n = ctx.q, ctx.n
    else:
        q, n = ctx
    return sorted(iter_subspaces(q, n, k))
