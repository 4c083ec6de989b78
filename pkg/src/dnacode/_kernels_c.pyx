# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: ungapped alignment scoring, weighted match sums and an
exact maximum-clique search.

Twin of ``_kernels_py``; both backends implement identical tie-breaking and
accumulate floats in the same order, so results are bit-for-bit equal.
"""

from cpython.mem cimport PyMem_Malloc, PyMem_Free
from libc.string cimport memcpy

ctypedef unsigned long long u64

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil
    int __builtin_popcountll(unsigned long long) nogil


cdef inline void _stats_at(const unsigned char* u, const unsigned char* v,
                           int n, int shift, int* run_out, int* extra_out) noexcept nogil:
    cdef const unsigned char* a
    cdef const unsigned char* b
    cdef int width, j
    cdef int run = 0, best = 0, total = 0
    if shift >= 0:
        a = u + shift
        b = v
        width = n - shift
    else:
        a = u
        b = v - shift
        width = n + shift
    for j in range(width):
        if a[j] == b[j]:
            run += 1
            total += 1
            if run > best:
                best = run
        else:
            run = 0
    run_out[0] = best
    extra_out[0] = total - best


cdef inline int _best_shift(const unsigned char* u, const unsigned char* v, int n,
                            int* run_out, int* extra_out, int* score_out) noexcept nogil:
    # scan order 0, -1, +1, -2, +2, ... with strict (score, run) improvement
    cdef int best_shift = 0, best_run = -1, best_extra = 0, best_score = -1
    cdef int t, s, i, run, extra, score
    for i in range(2 * n - 1):
        if i == 0:
            s = 0
        else:
            t = (i + 1) >> 1
            s = -t if (i & 1) else t
        _stats_at(u, v, n, s, &run, &extra)
        score = 2 * run + extra
        if score > best_score or (score == best_score and run > best_run):
            best_shift = s
            best_run = run
            best_extra = extra
            best_score = score
    run_out[0] = best_run
    extra_out[0] = best_extra
    score_out[0] = best_score
    return best_shift


cdef inline double _weight_sum(const unsigned char* u, const unsigned char* v,
                               int n, int shift, double alpha, double beta) noexcept nogil:
    cdef const unsigned char* a
    cdef const unsigned char* b
    cdef int width, j, state = 0
    cdef double total = 0.0, w
    if shift >= 0:
        a = u + shift
        b = v
        width = n - shift
    else:
        a = u
        b = v - shift
        width = n + shift
    for j in range(width):
        if a[j] == b[j]:
            w = 1.0
            if a[j] == 71 or a[j] == 67:  # G or C
                if state == 1:
                    w += alpha
                elif state == 2:
                    w += beta
                state = 1
            else:
                state = 2
            total += w
        else:
            state = 0
    return total


def best_alignment_stats(const unsigned char[::1] u, const unsigned char[::1] v):
    """Return (shift, run_len, extra, score) of the best ungapped alignment."""
    cdef int n = u.shape[0]
    if v.shape[0] != n:
        raise ValueError("sequences must have equal length")
    if n == 0:
        raise ValueError("sequences must be non-empty")
    cdef int run, extra, score, shift
    shift = _best_shift(&u[0], &v[0], n, &run, &extra, &score)
    return shift, run, extra, score


def match_weight_sum(const unsigned char[::1] u, const unsigned char[::1] v,
                     int shift, double alpha, double beta):
    """Weighted identical-pair sum over the overlap at a fixed shift."""
    cdef int n = u.shape[0]
    if v.shape[0] != n:
        raise ValueError("sequences must have equal length")
    if n == 0:
        raise ValueError("sequences must be non-empty")
    return _weight_sum(&u[0], &v[0], n, shift, alpha, beta)


def self_weight_sum(const unsigned char[::1] u, double alpha, double beta):
    """match_weight_sum of a sequence against itself at shift 0."""
    cdef int n = u.shape[0]
    if n == 0:
        raise ValueError("sequences must be non-empty")
    return _weight_sum(&u[0], &u[0], n, 0, alpha, beta)


def best_match_weight_sum(const unsigned char[::1] u, const unsigned char[::1] v,
                          double alpha, double beta):
    """match_weight_sum evaluated at the best alignment of u and v."""
    cdef int n = u.shape[0]
    if v.shape[0] != n:
        raise ValueError("sequences must have equal length")
    if n == 0:
        raise ValueError("sequences must be non-empty")
    cdef int run, extra, score, shift
    shift = _best_shift(&u[0], &v[0], n, &run, &extra, &score)
    return _weight_sum(&u[0], &v[0], n, shift, alpha, beta)


# ---------------------------------------------------------------------------
# exact maximum clique (branch and bound, greedy-colouring bound)
# ---------------------------------------------------------------------------

cdef struct _CliqueCtx:
    int n
    int words
    u64* adj       # n rows of `words` words
    u64* arena     # (n + 2) rows of 3 * words words: P / uncoloured / Q
    int* verts     # (n + 2) rows of n ints
    int* bounds    # (n + 2) rows of n ints
    int best


cdef inline bint _bit_test(u64* s, int v) noexcept nogil:
    return (s[v >> 6] >> (v & 63)) & 1


cdef inline void _bit_clear(u64* s, int v) noexcept nogil:
    s[v >> 6] &= ~((<u64>1) << (v & 63))


cdef void _expand(_CliqueCtx* c, int depth, int size) noexcept nogil:
    cdef int words = c.words
    cdef u64* p = c.arena + depth * 3 * words
    cdef u64* uncoloured = p + words
    cdef u64* q = p + 2 * words
    cdef int* verts = c.verts + depth * c.n
    cdef int* bounds = c.bounds + depth * c.n
    cdef u64* row
    cdef u64* child
    cdef u64 m
    cdef int j, v, base, colour = 0, count = 0, i

    if size > c.best:
        c.best = size
    for j in range(words):
        uncoloured[j] = p[j]
    while True:
        m = 0
        for j in range(words):
            m |= uncoloured[j]
        if m == 0:
            break
        colour += 1
        for j in range(words):
            q[j] = uncoloured[j]
        while True:
            v = -1
            for j in range(words):
                if q[j]:
                    v = (j << 6) + __builtin_ctzll(q[j])
                    break
            if v < 0:
                break
            row = c.adj + v * words
            _bit_clear(q, v)
            _bit_clear(uncoloured, v)
            for j in range(words):
                q[j] &= ~row[j]
            verts[count] = v
            bounds[count] = colour
            count += 1

    child = c.arena + (depth + 1) * 3 * words
    for i in range(count - 1, -1, -1):
        if size + bounds[i] <= c.best:
            return
        v = verts[i]
        row = c.adj + v * words
        for j in range(words):
            child[j] = p[j] & row[j]
        _expand(c, depth + 1, size + 1)
        _bit_clear(p, v)


def max_clique_size(adj):
    """Exact maximum-clique cardinality; `adj` is a sequence of int bitmasks."""
    cdef int n = len(adj)
    if n == 0:
        return 0

    # renumber by descending degree (better colouring, same answer)
    order = sorted(range(n), key=lambda i: (-adj[i].bit_count(), i))
    pos = [0] * n
    for new, old in enumerate(order):
        pos[old] = new
    cdef int words = (n + 63) >> 6
    cdef _CliqueCtx c
    c.n = n
    c.words = words
    c.best = 0
    c.adj = <u64*>PyMem_Malloc(n * words * sizeof(u64))
    c.arena = <u64*>PyMem_Malloc((n + 2) * 3 * words * sizeof(u64))
    c.verts = <int*>PyMem_Malloc((n + 2) * n * sizeof(int))
    c.bounds = <int*>PyMem_Malloc((n + 2) * n * sizeof(int))
    if c.adj == NULL or c.arena == NULL or c.verts == NULL or c.bounds == NULL:
        PyMem_Free(c.adj); PyMem_Free(c.arena); PyMem_Free(c.verts); PyMem_Free(c.bounds)
        raise MemoryError()

    cdef int i, j, v, pick
    cdef u64* root
    cdef u64* scratch
    cdef u64 m64
    cdef int deg, bestdeg
    cdef const unsigned char[::1] raw_view
    try:
        for i in range(n):
            mask = adj[order[i]]
            remapped = 0
            while mask:
                low = mask & -mask
                remapped |= 1 << pos[low.bit_length() - 1]
                mask ^= low
            raw_view = remapped.to_bytes(words * 8, "little")
            memcpy(c.adj + i * words, &raw_view[0], words * 8)

        root = c.arena  # depth-0 P
        scratch = c.arena + words  # reuse depth-0 uncoloured row for the seed
        for j in range(words):
            root[j] = 0
        for v in range(n):
            root[v >> 6] |= (<u64>1) << (v & 63)

        # greedy clique seeds the incumbent
        for j in range(words):
            scratch[j] = root[j]
        while True:
            m64 = 0
            for j in range(words):
                m64 |= scratch[j]
            if m64 == 0:
                break
            pick = -1
            bestdeg = -1
            for v in range(n):
                if _bit_test(scratch, v):
                    deg = 0
                    for j in range(words):
                        deg += __builtin_popcountll(c.adj[v * words + j] & scratch[j])
                    if deg > bestdeg:
                        bestdeg = deg
                        pick = v
            c.best += 1
            for j in range(words):
                scratch[j] &= c.adj[pick * words + j]

        _expand(&c, 0, 0)
        return c.best
    finally:
        PyMem_Free(c.adj)
        PyMem_Free(c.arena)
        PyMem_Free(c.verts)
        PyMem_Free(c.bounds)
