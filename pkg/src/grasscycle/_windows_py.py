"""Pure-Python window scanner; the reference twin of the compiled ``_windows``.

A window key packs the RREF rows of span{beta_i, ..., beta_(i-k+1)}:
row codes (base q, constant coordinate lowest) in ascending pivot order,
``key = sum(row_j * (q**n)**j)``.  Rank-deficient windows get key -1.
"""

from __future__ import annotations


def _key_q2(rows: list[int], n: int, k: int) -> int:
    r = 0
    for col in range(n):
        bit = 1 << col
        piv = next((t for t in range(r, k) if rows[t] & bit), -1)
        if piv < 0:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        for t in range(k):
            if t != r and rows[t] & bit:
                rows[t] ^= pr
        r += 1
        if r == k:
            break
    if r < k:
        return -1
    key = 0
    for j in range(k):
        key |= rows[j] << (n * j)
    return key


def _key_gen(codes: list[int], q: int, n: int, k: int, size: int) -> int:
    rows = []
    for c in codes:
        d = []
        for _ in range(n):
            d.append(c % q)
            c //= q
        rows.append(d)
    r = 0
    for col in range(n):
        piv = next((t for t in range(r, k) if rows[t][col]), -1)
        if piv < 0:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        s = pow(rows[r][col], q - 2, q)
        pr = [x * s % q for x in rows[r]]
        rows[r] = pr
        for t in range(k):
            f = rows[t][col]
            if t != r and f:
                rows[t] = [(a - f * b) % q for a, b in zip(rows[t], pr)]
        r += 1
        if r == k:
            break
    if r < k:
        return -1
    key, place = 0, 1
    for j in range(k):
        rc = 0
        for x in reversed(rows[j]):
            rc = rc * q + x
        key += rc * place
        place *= size
    return key


def _window_key(codes, beta, i: int, L: int, q: int, n: int, k: int, size: int) -> int:
    vecs = [codes[beta[(i - j) % L]] for j in range(k)]
    if q == 2:
        return _key_q2(vecs, n, k)
    return _key_gen(vecs, q, n, k, size)


def window_keys(codes, betas, q: int, n: int, k: int) -> list[int]:
    """Canonical key of every cyclic k-window of ``betas`` (-1 for rank < k)."""
    L = len(betas)
    size = q**n
    return [_window_key(codes, betas, i, L, q, n, k, size) for i in range(L)]


def first_window_failure(codes, reps, group_order: int, length: int,
                         q: int, n: int, k: int) -> int:
    """Index of the first rank-deficient or repeated window, or -1 if none.

    beta_m = (m // r) * sum(reps) + reps[0] + ... + reps[m % r - 1]  (mod group_order),
    evaluated lazily so early failures cost only the windows scanned.
    """
    r = len(reps)
    prefix = [0] * r
    total = 0
    for i in range(r):
        prefix[i] = total
        total = (total + reps[i]) % group_order

    def beta(m: int) -> int:
        return ((m // r) * total + prefix[m % r]) % group_order

    size = q**n
    seen = set()
    for i in range(length):
        vecs = [codes[beta((i - j) % length)] for j in range(k)]
        key = _key_q2(vecs, n, k) if q == 2 else _key_gen(vecs, q, n, k, size)
        if key < 0 or key in seen:
            return i
        seen.add(key)
    return -1
