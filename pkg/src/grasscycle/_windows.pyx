# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled window scanner. Semantics mirror ``_windows_py`` exactly."""

from libc.stdlib cimport malloc, calloc, free

cdef enum:
    MAXK = 16
    MAXN = 40


cdef inline int _inv_mod(int a, int q) nogil:
    cdef int r = 1, b = a % q, e = q - 2
    while e > 0:
        if e & 1:
            r = r * b % q
        b = b * b % q
        e >>= 1
    return r


cdef long long _key_q2(const long long* codes, const long long* beta, long long i,
                       long long L, int n, int k) nogil:
    cdef unsigned long long rows[MAXK]
    cdef unsigned long long tmp, bit, key = 0
    cdef int r = 0, j, t, col, piv
    for j in range(k):
        rows[j] = <unsigned long long>codes[beta[(i - j + L) % L]]
    for col in range(n):
        bit = (<unsigned long long>1) << col
        piv = -1
        for t in range(r, k):
            if rows[t] & bit:
                piv = t
                break
        if piv < 0:
            continue
        tmp = rows[r]; rows[r] = rows[piv]; rows[piv] = tmp
        for t in range(k):
            if t != r and (rows[t] & bit):
                rows[t] ^= rows[r]
        r += 1
        if r == k:
            break
    if r < k:
        return -1
    for j in range(k):
        key |= rows[j] << (n * j)
    return <long long>key


cdef long long _key_gen(const long long* codes, const long long* beta, long long i,
                        long long L, int q, int n, int k, long long size) nogil:
    cdef int rows[MAXK][MAXN]
    cdef int r = 0, j, t, col, piv, x, f, s
    cdef long long c, key = 0, place = 1, rc
    for j in range(k):
        c = codes[beta[(i - j + L) % L]]
        for col in range(n):
            rows[j][col] = <int>(c % q)
            c //= q
    for col in range(n):
        piv = -1
        for t in range(r, k):
            if rows[t][col] != 0:
                piv = t
                break
        if piv < 0:
            continue
        if piv != r:
            for x in range(n):
                s = rows[r][x]; rows[r][x] = rows[piv][x]; rows[piv][x] = s
        s = _inv_mod(rows[r][col], q)
        if s != 1:
            for x in range(n):
                rows[r][x] = rows[r][x] * s % q
        for t in range(k):
            f = rows[t][col]
            if t != r and f != 0:
                for x in range(n):
                    rows[t][x] = (rows[t][x] + (q - f) * rows[r][x]) % q
        r += 1
        if r == k:
            break
    if r < k:
        return -1
    for j in range(k):
        rc = 0
        for x in range(n - 1, -1, -1):
            rc = rc * q + rows[j][x]
        key += rc * place
        place *= size
    return key


cdef inline long long _window_key(const long long* codes, const long long* beta, long long i,
                                  long long L, int q, int n, int k, long long size) nogil:
    if q == 2:
        return _key_q2(codes, beta, i, L, n, k)
    return _key_gen(codes, beta, i, L, q, n, k, size)


def window_keys(const long long[::1] codes, const long long[::1] betas, int q, int n, int k):
    """Canonical key of every cyclic k-window of ``betas`` (-1 for rank < k)."""
    cdef long long L = betas.shape[0]
    cdef long long size = 1
    cdef long long i
    cdef int j
    for j in range(n):
        size *= q
    out = [0] * L
    for i in range(L):
        out[i] = _window_key(&codes[0], &betas[0], i, L, q, n, k, size)
    return out


cdef inline long long _beta(const long long* prefix, long long r, long long total,
                            long long group_order, long long m) nogil:
    return ((m // r) % group_order * total + prefix[m % r]) % group_order


def first_window_failure(const long long[::1] codes, const long long[::1] reps,
                         long long group_order, long long length, int q, int n, int k):
    """Index of the first rank-deficient or repeated window, or -1 if none.

    beta_m = (m // r) * sum(reps) + reps[0] + ... + reps[m % r - 1]  (mod group_order),
    evaluated lazily so early failures cost only the windows scanned.
    """
    cdef long long r = reps.shape[0]
    cdef long long L = length
    cdef long long i, h, key, size = 1, total = 0
    cdef long long cap = 1, mask
    cdef int shift = 64
    cdef int j
    cdef long long result = -1
    cdef long long* prefix
    cdef long long win[MAXK]
    cdef long long* cbase = &codes[0]
    cdef unsigned long long* table
    for j in range(n):
        size *= q
    while cap < 2 * L:
        cap <<= 1
        shift -= 1
    mask = cap - 1
    prefix = <long long*>malloc(r * sizeof(long long))
    table = <unsigned long long*>calloc(cap, sizeof(unsigned long long))
    if prefix == NULL or table == NULL:
        free(prefix)
        free(table)
        raise MemoryError()
    with nogil:
        for i in range(r):
            prefix[i] = total
            total = (total + reps[i]) % group_order
        for i in range(L):
            for j in range(k):
                win[k - 1 - j] = _beta(prefix, r, total, group_order, (i - j + L) % L)
            key = _window_key(cbase, win, k - 1, k, q, n, k, size)
            if key < 0:
                result = i
                break
            h = <long long>((<unsigned long long>key * 0x9E3779B97F4A7C15ULL) >> shift) & mask
            while table[h] != 0 and table[h] != <unsigned long long>(key + 1):
                h = (h + 1) & mask
            if table[h] != 0:
                result = i
                break
            table[h] = <unsigned long long>(key + 1)
    free(prefix)
    free(table)
    return result
