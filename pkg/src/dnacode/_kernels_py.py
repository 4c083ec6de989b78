"""Pure-Python kernels.

Twin of the compiled module ``_kernels_c``: same functions, same tie-breaking,
same floating-point accumulation order, so both backends return identical
values. Sequences are passed as ASCII bytes over the alphabet ``ACGT``.
"""

_G = ord("G")
_C = ord("C")


def _stats_at(u, v, shift):
    """(run_len, extra) for the overlap of u against v shifted by `shift`."""
    n = len(u)
    if shift >= 0:
        a = u[shift:]
        b = v[: n - shift]
    else:
        a = u[: n + shift]
        b = v[-shift:]
    run = best = total = 0
    for x, y in zip(a, b):
        if x == y:
            run += 1
            total += 1
            if run > best:
                best = run
        else:
            run = 0
    return best, total - best


def best_alignment_stats(u, v):
    """Best ungapped shift of v against u, maximising score = 2*run + extra.

    Returns (shift, run_len, extra, score).  Ties prefer a longer run, then
    a smaller |shift|, then a negative shift over the positive one; this is
    realised by scanning shifts in the order 0, -1, +1, -2, +2, ... and
    updating only on a strictly better (score, run_len).
    """
    n = len(u)
    if len(v) != n:
        raise ValueError("sequences must have equal length")
    if n == 0:
        raise ValueError("sequences must be non-empty")
    best_shift, best_run, best_extra, best_score = 0, -1, 0, -1
    for shift in _shift_scan(n):
        run, extra = _stats_at(u, v, shift)
        score = 2 * run + extra
        if score > best_score or (score == best_score and run > best_run):
            best_shift, best_run, best_extra, best_score = shift, run, extra, score
    return best_shift, best_run, best_extra, best_score


def _shift_scan(n):
    yield 0
    for t in range(1, n):
        yield -t
        yield t


def match_weight_sum(u, v, shift, alpha, beta):
    """Sum of per-pair weights over the overlap at a fixed shift.

    An identical pair scores 1; identical G/C pairs additionally earn alpha
    when the aligned pair to their left is an identical G/C pair, or beta
    when it is an identical A/T pair.  Mismatches score 0 and reset the
    carried state; the leftmost overlap pair carries no state.
    """
    n = len(u)
    if shift >= 0:
        a = u[shift:]
        b = v[: n - shift]
    else:
        a = u[: n + shift]
        b = v[-shift:]
    total = 0.0
    state = 0  # 0: none/mismatch, 1: identical G/C, 2: identical A/T
    for x, y in zip(a, b):
        if x == y:
            w = 1.0
            if x == _G or x == _C:
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


def self_weight_sum(u, alpha, beta):
    """match_weight_sum of a sequence against itself at shift 0."""
    total = 0.0
    state = 0
    for x in u:
        w = 1.0
        if x == _G or x == _C:
            if state == 1:
                w += alpha
            elif state == 2:
                w += beta
            state = 1
        else:
            state = 2
        total += w
    return total


def best_match_weight_sum(u, v, alpha, beta):
    """match_weight_sum evaluated at the best alignment of u and v."""
    shift, _, _, _ = best_alignment_stats(u, v)
    return match_weight_sum(u, v, shift, alpha, beta)


def max_clique_size(adj):
    """Exact maximum-clique cardinality of an undirected graph.

    `adj` is a sequence of int bitmasks, adj[i] = neighbours of vertex i.
    Branch and bound with a greedy-colouring upper bound; vertices are
    renumbered by descending degree and an initial greedy clique seeds the
    incumbent.
    """
    n = len(adj)
    if n == 0:
        return 0

    order = sorted(range(n), key=lambda i: (-adj[i].bit_count(), i))
    pos = [0] * n
    for new, old in enumerate(order):
        pos[old] = new
    radj = [0] * n
    for new, old in enumerate(order):
        m = adj[old]
        r = 0
        while m:
            low = m & -m
            r |= 1 << pos[low.bit_length() - 1]
            m ^= low
        radj[new] = r
    adj = radj

    best = 0
    cand = (1 << n) - 1
    while cand:  # greedy clique as the initial incumbent
        q, pick, deg = cand, -1, -1
        while q:
            v = (q & -q).bit_length() - 1
            q &= q - 1
            d = (adj[v] & cand).bit_count()
            if d > deg:
                deg, pick = d, v
        best += 1
        cand &= adj[pick]

    def expand(p, size):
        nonlocal best
        if size > best:
            best = size
        verts = []
        bound = []
        uncoloured = p
        colour = 0
        while uncoloured:
            colour += 1
            q = uncoloured
            while q:
                v = (q & -q).bit_length() - 1
                bit = 1 << v
                q &= ~adj[v] & ~bit
                uncoloured &= ~bit
                verts.append(v)
                bound.append(colour)
        for i in range(len(verts) - 1, -1, -1):
            if size + bound[i] <= best:
                return
            v = verts[i]
            expand(p & adj[v], size + 1)
            p &= ~(1 << v)

    expand((1 << n) - 1, 0)
    return best
