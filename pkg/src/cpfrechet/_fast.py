"""Compiled engine for the approximate decider.

Mirrors the pure-Python pipeline step for step (range queries, greedy steps,
exit sets, piece-pair regions, cell propagation) on flat arrays so numba can
compile it. Values of the reduced 1D instances are integer grid units here,
so open value bounds become closed ones shifted by one unit.

The sweep visits horizontal strips (one per part of sigma) from bottom to
top, and inside a strip the parts of pi from left to right. Every region
only feeds the region above it and the one to its right, so this is a
topological order of the same region graph the reference sweep walks by
layers. Columns without entries are skipped by jumping to the next column
that received something from the strip below.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

BIG = 1 << 60
_SCAN = 32
_TANGENCY_TOL = 1e-12
_RADIUS_SLACK = 1e-9

OK = 0
PIECE_TOO_WIDE = 1


# ---------------------------------------------------------------------------
# Merge-sort tree over integer values (level ``lv`` is sorted in aligned blocks of 2**lv)


@njit(cache=True)
def build_tree(vals):
    n = vals.shape[0]
    levels = 1
    if n > _SCAN:
        while (1 << levels) <= n:
            levels += 1
    tree = np.empty((levels, n), np.int64)
    tree[0, :] = vals
    for lv in range(1, levels):
        w = 1 << lv
        half = w >> 1
        prev = tree[lv - 1]
        cur = tree[lv]
        for s in range(0, n, w):
            mid = min(s + half, n)
            e = min(s + w, n)
            i, j, k = s, mid, s
            while i < mid and j < e:
                if prev[i] <= prev[j]:
                    cur[k] = prev[i]
                    i += 1
                else:
                    cur[k] = prev[j]
                    j += 1
                k += 1
            while i < mid:
                cur[k] = prev[i]
                i += 1
                k += 1
            while j < e:
                cur[k] = prev[j]
                j += 1
                k += 1
    return tree


@njit(cache=True, inline="always")
def _lowest(row, s, e, lo, hi):
    a, b = s, e
    while a < b:
        mid = (a + b) >> 1
        if row[mid] < lo:
            a = mid + 1
        else:
            b = mid
    if a < e and row[a] <= hi:
        return row[a]
    return BIG


@njit(cache=True, inline="always")
def _highest(row, s, e, lo, hi):
    a, b = s, e
    while a < b:
        mid = (a + b) >> 1
        if row[mid] <= hi:
            a = mid + 1
        else:
            b = mid
    if a > s and row[a - 1] >= lo:
        return row[a - 1]
    return -BIG


@njit(cache=True)
def min_index(tree, lo, hi, l, r):
    """Smallest 0-based position in ``[l, r]`` with value in ``[lo, hi]``, else -1."""
    n = tree.shape[1]
    if l < 0:
        l = 0
    if r > n - 1:
        r = n - 1
    if l > r:
        return -1
    if r - l < _SCAN:
        row = tree[0]
        for i in range(l, r + 1):
            if lo <= row[i] <= hi:
                return i
        return -1
    levels = tree.shape[0]
    pos = l
    while pos <= r:
        lv = 0
        while lv + 1 < levels:
            w = 1 << (lv + 1)
            if (pos & (w - 1)) == 0 and pos + w - 1 <= r:
                lv += 1
            else:
                break
        w = 1 << lv
        if _lowest(tree[lv], pos, pos + w, lo, hi) != BIG:
            while lv > 0:
                lv -= 1
                h = 1 << lv
                if _lowest(tree[lv], pos, pos + h, lo, hi) == BIG:
                    pos += h
            return pos
        pos += w
    return -1


@njit(cache=True)
def max_index(tree, lo, hi, l, r):
    """Largest 0-based position in ``[l, r]`` with value in ``[lo, hi]``, else -1."""
    n = tree.shape[1]
    if l < 0:
        l = 0
    if r > n - 1:
        r = n - 1
    if l > r:
        return -1
    if r - l < _SCAN:
        row = tree[0]
        for i in range(r, l - 1, -1):
            if lo <= row[i] <= hi:
                return i
        return -1
    levels = tree.shape[0]
    end = r
    while end >= l:
        lv = 0
        while lv + 1 < levels:
            w = 1 << (lv + 1)
            if ((end + 1) & (w - 1)) == 0 and end - w + 1 >= l:
                lv += 1
            else:
                break
        start = end - (1 << lv) + 1
        if _lowest(tree[lv], start, end + 1, lo, hi) != BIG:
            while lv > 0:
                lv -= 1
                h = 1 << lv
                if _lowest(tree[lv], start + h, start + 2 * h, lo, hi) != BIG:
                    start += h
            return start
        end = start - 1
    return -1


@njit(cache=True)
def min_height(tree, lo, hi, l, r):
    """Smallest value in ``[lo, hi]`` among positions ``[l, r]``, else ``BIG``."""
    n = tree.shape[1]
    if l < 0:
        l = 0
    if r > n - 1:
        r = n - 1
    best = BIG
    if l > r:
        return best
    if r - l < _SCAN:
        row = tree[0]
        for i in range(l, r + 1):
            v = row[i]
            if lo <= v <= hi and v < best:
                best = v
        return best
    levels = tree.shape[0]
    pos = l
    while pos <= r:
        lv = 0
        while lv + 1 < levels:
            w = 1 << (lv + 1)
            if (pos & (w - 1)) == 0 and pos + w - 1 <= r:
                lv += 1
            else:
                break
        w = 1 << lv
        v = _lowest(tree[lv], pos, pos + w, lo, hi)
        if v < best:
            best = v
        pos += w
    return best


@njit(cache=True)
def max_height(tree, lo, hi, l, r):
    """Largest value in ``[lo, hi]`` among positions ``[l, r]``, else ``-BIG``."""
    n = tree.shape[1]
    if l < 0:
        l = 0
    if r > n - 1:
        r = n - 1
    best = -BIG
    if l > r:
        return best
    if r - l < _SCAN:
        row = tree[0]
        for i in range(l, r + 1):
            v = row[i]
            if lo <= v <= hi and v > best:
                best = v
        return best
    levels = tree.shape[0]
    pos = l
    while pos <= r:
        lv = 0
        while lv + 1 < levels:
            w = 1 << (lv + 1)
            if (pos & (w - 1)) == 0 and pos + w - 1 <= r:
                lv += 1
            else:
                break
        w = 1 << lv
        v = _highest(tree[lv], pos, pos + w, lo, hi)
        if v > best:
            best = v
        pos += w
    return best


# ---------------------------------------------------------------------------
# Greedy steps. ``X`` plays pi (values >= 0), ``Y`` plays sigma (values <= 0);
# the swapped instance is ``(-Y, -X)``. Positions are 1-based, -1 means none.


@njit(cache=True)
def _stop(TX, Y, D, p, b, q):
    k = min_index(TX, Y[q - 1] + D + 1, BIG, p - 1, b - 1)
    return b + 1 if k < 0 else k + 1


@njit(cache=True)
def _max_step(X, TX, Y, TY, D, p, b, q, d):
    stop = _stop(TX, Y, D, p, b, q)
    if p + 1 > stop - 1:
        return -1
    low = min_height(TY, X[p - 1] - D, BIG, q - 1, d - 1)
    if low == BIG:
        return -1
    best = min_height(TX, -BIG, low + D, p, stop - 2)
    if best == BIG:
        return -1
    low = min_height(TY, best - D, BIG, q - 1, d - 1)
    k = max_index(TX, -BIG, low + D, p, stop - 2)
    return -1 if k < 0 else k + 1


@njit(cache=True)
def _min_step(X, TX, Y, TY, D, p, b, q, d):
    stop = _stop(TX, Y, D, p, b, q)
    low = min_height(TY, X[p - 1] - D, BIG, q - 1, d - 1)
    if low == BIG:
        return -1
    cand = min_index(TX, -BIG, low + D, p, b - 1)
    if cand < 0:
        return -1
    cand += 1
    return cand if cand < stop else -1


@njit(cache=True)
def _sigma_exits(X, TX, Y, TY, Xn, TXn, Yn, TYn, D, p, b, q, d, out):
    stack = np.empty((Y.shape[0] + 1, 3), np.int64)
    stack[0, 0], stack[0, 1], stack[0, 2] = p, q, d
    top = 1
    while top > 0:
        top -= 1
        p, q, d = stack[top, 0], stack[top, 1], stack[top, 2]
        while True:
            if q == d:
                if _stop(TX, Y, D, p, b, q) == b + 1:
                    out[q - 1] = True
                break
            s = _max_step(X, TX, Y, TY, D, p, b, q, d)
            if s >= 0:
                p = s
                continue
            t = _max_step(Yn, TYn, Xn, TXn, D, q, d, p, b)
            if t >= 0:
                stack[top, 0], stack[top, 1], stack[top, 2] = p, t, d
                top += 1
                d = t - 1
                continue
            d -= 1


@njit(cache=True)
def _pi_exits(X, TX, Y, TY, Xn, TXn, Yn, TYn, D, E, out):
    n, m = X.shape[0], Y.shape[0]
    covered = 0
    for start in E:
        if start <= covered or X[start - 1] - Y[0] > D:
            continue
        p, q = start, 1
        while True:
            moved = False
            t = _max_step(Yn, TYn, Xn, TXn, D, q, m, p, n)
            if t >= 0:
                q = t
                moved = True
            s = _max_step(X, TX, Y, TY, D, p, n, q, m)
            if s >= 0:
                p = s
                moved = True
            if not moved:
                break
        last = _stop(TX, Y, D, p, n, q) - 1
        _sigma_exits(Yn, TYn, Xn, TXn, Y, TY, X, TX, D, 1, m, start, last, out)
        covered = last


@njit(cache=True)
def _sigma_exits_from_pi(X, TX, Y, TY, Xn, TXn, Yn, TYn, D, E, out):
    n, m = X.shape[0], Y.shape[0]
    ceiling = m
    dropped = 0
    for start in E:
        if start <= dropped or X[start - 1] - Y[0] > D:
            continue
        tallest = max_height(TX, -BIG, BIG, start - 1, n - 1)
        target = min_index(TY, tallest - D, BIG, 0, m - 1)
        if target < 0:
            continue
        target += 1
        p, q = start, 1
        while q != target:
            moved = False
            t = _max_step(Yn, TYn, Xn, TXn, D, q, target, p, n)
            if t >= 0:
                q = t
                moved = True
            if q != target:
                s = _min_step(X, TX, Y, TY, D, p, n, q, target)
                if s >= 0:
                    p = s
                    moved = True
            if not moved:
                break
        if q == target:
            if target <= ceiling:
                _sigma_exits(X, TX, Y, TY, Xn, TXn, Yn, TYn, D, p, n, target, ceiling, out)
            ceiling = min(ceiling, target - 1)
        dropped = p


@njit(cache=True)
def solve_reduced(X, Y, D, E, Es):
    """Exit flags ``(on X, on Y)`` for sorted 1-based entry lists ``E`` (on X) and ``Es`` (on Y)."""
    Xn = -X
    Yn = -Y
    TX, TY, TXn, TYn = build_tree(X), build_tree(Y), build_tree(Xn), build_tree(Yn)
    fx = np.zeros(X.shape[0], np.bool_)
    fy = np.zeros(Y.shape[0], np.bool_)
    if E.shape[0] > 0:
        _pi_exits(X, TX, Y, TY, Xn, TXn, Yn, TYn, D, E, fx)
        _sigma_exits_from_pi(X, TX, Y, TY, Xn, TXn, Yn, TYn, D, E, fy)
    if Es.shape[0] > 0:
        _pi_exits(Yn, TYn, Xn, TXn, Y, TY, X, TX, D, Es, fy)
        _sigma_exits_from_pi(Yn, TYn, Xn, TXn, Y, TY, X, TX, D, Es, fx)
    return fx, fy


# ---------------------------------------------------------------------------
# Piece-pair regions


@njit(cache=True)
def free_span(A, B, C, delta2):
    """Free parameter interval of segment ``AB`` around ``C``; ``(nan, nan)`` when empty."""
    c = 0.0
    b = 0.0
    sq = 0.0
    for k in range(A.shape[0]):
        o = A[k] - C[k]
        dd = B[k] - A[k]
        c += o * o
        b += dd * o
        sq += dd * dd
    c -= delta2
    b *= 2.0
    if sq == 0.0:
        if c <= 0.0:
            return 0.0, 1.0
        return np.nan, np.nan
    disc = b * b - 4.0 * sq * c
    scale = max(b * b, abs(4.0 * sq * c))
    if abs(disc) <= _TANGENCY_TOL * scale:
        lo = hi = -b / (2.0 * sq)
    elif disc < 0.0:
        return np.nan, np.nan
    else:
        root = math.sqrt(disc)
        q = -0.5 * (b + root) if b >= 0.0 else -0.5 * (b - root)
        r1 = q / sq
        r2 = c / q if q != 0.0 else r1
        lo, hi = (r1, r2) if r1 <= r2 else (r2, r1)
    if hi < 0.0 or lo > 1.0:
        return np.nan, np.nan
    return max(lo, 0.0), min(hi, 1.0)


@njit(cache=True)
def _prepare_side(units, elo, ehi, bound, cap):
    n = units.shape[0]
    at_vertex = np.zeros(n, np.bool_)
    inner_param = np.full(n, np.nan)
    inner_val = np.zeros(n, np.int64)
    for i in range(1, n):
        lo = elo[i - 1]
        if math.isnan(lo):
            continue
        hi = ehi[i - 1]
        u0, u1 = units[i - 1], units[i]
        if u0 + lo * (u1 - u0) <= bound:
            lam = lo
        elif u1 < u0 and u0 + hi * (u1 - u0) <= bound:
            lam = min(max((u0 - bound) / (u0 - u1), lo), hi)
        else:
            continue
        if lam <= 0.0:
            at_vertex[i - 1] = True
        elif lam >= 1.0:
            at_vertex[i] = True
        else:
            inner_param[i - 1] = i + lam
            inner_val[i - 1] = min(int(math.floor(u0 + lam * (u1 - u0))), bound)
    sv = np.empty(4 * n, np.int64)
    sp = np.empty(4 * n)
    se = np.zeros(4 * n, np.bool_)
    c = 0
    for k in range(n):
        base = int(math.floor(units[k]))
        if at_vertex[k]:
            sv[c], sp[c] = base, k + 1.0
            c += 1
        sv[c], sp[c], se[c] = base, k + 1.0, at_vertex[k]
        c += 1
        if not math.isnan(inner_param[k]):
            sv[c], sp[c] = inner_val[k], inner_param[k]
            c += 1
            sv[c], sp[c], se[c] = inner_val[k], inner_param[k], True
            c += 1
    values = np.empty(2 * c, np.int64)
    params = np.empty(2 * c)
    entry = np.zeros(2 * c, np.bool_)
    out = 0
    for k in range(c):
        if k > 0:
            a, b = sv[k - 1], sv[k]
            if (a < cap < b) or (b < cap < a):
                ta, tb = sp[k - 1], sp[k]
                values[out], params[out] = cap, ta + (tb - ta) * (cap - a) / (b - a)
                out += 1
        values[out], params[out], entry[out] = sv[k], sp[k], se[k]
        out += 1
    for k in range(out):
        if values[k] > cap:
            values[k] = 2 * cap
    return values[:out], params[:out], entry[:out]


@njit(cache=True)
def _init_parts(values, status):
    """Per part: ``length, rising, searching, lo, hi`` and up to two found ranges."""
    k_parts = values.shape[0] - 1
    state = np.zeros((k_parts, 5), np.int64)
    ranges = np.zeros((k_parts, 2, 2), np.int64)
    count = np.zeros(k_parts, np.int64)
    for k in range(k_parts):
        a, b = values[k], values[k + 1]
        L = max(abs(b - a), 1)
        rising = b > a
        left, right = status[k], status[k + 1]
        state[k, 0] = L
        state[k, 1] = 1 if rising else 0
        nr = 0
        if a == b:
            if left:
                ranges[k, 0, 0], ranges[k, 0, 1] = 0, L
                nr = 1
            elif right:
                ranges[k, 0, 0], ranges[k, 0, 1] = L, L
                nr = 1
        elif L == 1:
            if left:
                ranges[k, nr, 0], ranges[k, nr, 1] = 0, 0
                nr += 1
            if right:
                ranges[k, nr, 0], ranges[k, nr, 1] = L, L
                nr += 1
        elif rising:
            if not left:
                if right:
                    ranges[k, 0, 0], ranges[k, 0, 1] = L, L
                    nr = 1
            elif right:
                ranges[k, 0, 0], ranges[k, 0, 1] = 0, L
                nr = 1
            else:
                state[k, 2], state[k, 3], state[k, 4] = 1, 0, L
        else:
            if right:
                if left:
                    ranges[k, 0, 0], ranges[k, 0, 1] = 0, L
                    nr = 1
                else:
                    state[k, 2], state[k, 3], state[k, 4] = 1, 0, L
        count[k] = nr
    return state, ranges, count


@njit(cache=True)
def _augment(values, entry, state, where):
    """Base vertices plus one probe inside every searching part; returns values and 1-based entries."""
    k_parts = state.shape[0]
    total = values.shape[0]
    for k in range(k_parts):
        if state[k, 2]:
            total += 1
    out = np.empty(total, np.int64)
    ent = np.empty(total, np.int64)
    ne = 0
    c = 0
    for k in range(values.shape[0]):
        out[c] = values[k]
        c += 1
        if entry[k]:
            ent[ne] = c
            ne += 1
        if k < k_parts and state[k, 2]:
            mid = (state[k, 3] + state[k, 4]) // 2
            sign = 1 if state[k, 1] else -1
            out[c] = values[k] + sign * mid
            c += 1
            where[k] = c
        elif k < k_parts:
            where[k] = -1
    return out, ent[:ne]


@njit(cache=True)
def _record(state, ranges, count, where, flags):
    for k in range(state.shape[0]):
        if not state[k, 2]:
            continue
        mid = (state[k, 3] + state[k, 4]) // 2
        reachable = flags[where[k] - 1]
        if (state[k, 1] == 1) == reachable:
            state[k, 3] = mid
        else:
            state[k, 4] = mid
        if state[k, 4] - state[k, 3] <= 1:
            state[k, 2] = 0
            nr = count[k]
            if state[k, 1]:
                ranges[k, nr, 0], ranges[k, nr, 1] = 0, state[k, 3]
            else:
                ranges[k, nr, 0], ranges[k, nr, 1] = state[k, 4], state[k, 0]
            count[k] = nr + 1


@njit(cache=True)
def _any_searching(state):
    for k in range(state.shape[0]):
        if state[k, 2]:
            return True
    return False


@njit(cache=True)
def _collect(params, state, ranges, count, V, corner, delta2, out_lo, out_hi):
    """Hull of part spans per segment, cut to the segment's free interval, as local ``[0, 1]`` spans."""
    nseg = V.shape[0] - 1
    span_lo = np.full(nseg, np.nan)
    span_hi = np.full(nseg, np.nan)
    for k in range(state.shape[0]):
        ta, tb = params[k], params[k + 1]
        L = state[k, 0]
        seg = min(int(math.floor(ta)), nseg)
        for r in range(count[k]):
            s = max(ranges[k, r, 0] - 1, 0)
            e = min(ranges[k, r, 1] + 1, L)
            lo = ta if s == 0 else ta + (tb - ta) * s / L
            hi = tb if e == L else ta + (tb - ta) * e / L
            if math.isnan(span_lo[seg - 1]):
                span_lo[seg - 1], span_hi[seg - 1] = lo, hi
            else:
                span_lo[seg - 1] = min(span_lo[seg - 1], lo)
                span_hi[seg - 1] = max(span_hi[seg - 1], hi)
    for i in range(1, nseg + 1):
        out_lo[i - 1] = np.nan
        out_hi[i - 1] = np.nan
        if math.isnan(span_lo[i - 1]):
            continue
        flo, fhi = free_span(V[i - 1], V[i], corner, delta2)
        if math.isnan(flo):
            continue
        lo = max(span_lo[i - 1] - i, flo)
        hi = min(span_hi[i - 1] - i, fhi)
        if lo <= hi:
            out_lo[i - 1], out_hi[i - 1] = lo, hi


@njit(cache=True)
def _flags_to_entries(flags):
    c = 0
    for k in range(flags.shape[0]):
        if flags[k]:
            c += 1
    out = np.empty(c, np.int64)
    c = 0
    for k in range(flags.shape[0]):
        if flags[k]:
            out[c] = k + 1
            c += 1
    return out


@njit(cache=True)
def solve_region(P, S, delta, radius, steps, bl, bh, ll, lh, tl, th, rl, rh):
    """Exits of one piece-pair region.

    Entries ``bl/bh`` (bottom, per pi segment) and ``ll/lh`` (left, per sigma
    segment) and the exits written to ``tl/th`` (top) and ``rl/rh`` (right)
    are local ``[0, 1]`` spans, NaN when empty. Returns a status code.
    """
    n, m, dim = P.shape[0], S.shape[0], P.shape[1]
    limit = radius + _RADIUS_SLACK * max(1.0, radius)
    for V in (P, S):
        for k in range(V.shape[0]):
            acc = 0.0
            for c in range(dim):
                x = V[k, c] - V[0, c]
                acc += x * x
            if math.sqrt(acc) > limit:
                return PIECE_TOO_WIDE
    gap = delta - 2.0 * radius
    offset = P[0] - S[0]
    dist = math.sqrt(np.sum(offset * offset))
    unit = np.zeros(dim)
    if dist > 0.0:
        unit[:] = offset / dist
    else:
        unit[0] = 1.0
    shift = np.zeros(dim)
    if dist < gap:
        shift[:] = S[0] + gap * unit - P[0]
    mid = 0.5 * ((P[0] + shift) + S[0])
    cap = 6 * steps
    gamma = delta / cap
    pu = np.empty(n)
    for k in range(n):
        acc = 0.0
        for c in range(dim):
            acc += (P[k, c] + shift[c] - mid[c]) * unit[c]
        pu[k] = max(acc, 0.0) / gamma
    su = np.empty(m)
    for k in range(m):
        acc = 0.0
        for c in range(dim):
            acc += (S[k, c] - mid[c]) * unit[c]
        su[k] = -min(acc, 0.0) / gamma
    first_pi = int(math.floor(pu[0]))
    first_sigma = int(math.floor(su[0]))
    pv, pp, pe = _prepare_side(pu, bl, bh, cap - first_sigma, cap)
    sv, sp, se = _prepare_side(su, ll, lh, cap - first_pi, cap)

    fx, fy = solve_reduced(pv, -sv, cap, _flags_to_entries(pe), _flags_to_entries(se))
    pstate, pranges, pcount = _init_parts(pv, fx)
    sstate, sranges, scount = _init_parts(sv, fy)
    pwhere = np.empty(pstate.shape[0], np.int64)
    swhere = np.empty(sstate.shape[0], np.int64)
    while _any_searching(pstate) or _any_searching(sstate):
        av, ae = _augment(pv, pe, pstate, pwhere)
        bv, be = _augment(sv, se, sstate, swhere)
        fx, fy = solve_reduced(av, -bv, cap, ae, be)
        _record(pstate, pranges, pcount, pwhere, fx)
        _record(sstate, sranges, scount, swhere, fy)

    delta2 = delta * delta
    _collect(pp, pstate, pranges, pcount, P, S[m - 1], delta2, tl, th)
    _collect(sp, sstate, sranges, scount, S, P[n - 1], delta2, rl, rh)
    return OK


# ---------------------------------------------------------------------------
# Sweep


@njit(cache=True)
def sweep(P, S, delta, radius, steps, pstart, pend, ppiece, pseg, sstart, send, spiece):
    """Returns ``(reached, status, cells, piece_pairs, piece_pair_size_sum)``.

    Part arrays are 1-based vertex ranges per part; ``pseg`` maps a 0-based
    pi segment to its part.
    """
    n, m = P.shape[0], S.shape[0]
    delta2 = delta * delta
    blo = np.full(n - 1, np.nan)
    bhi = np.full(n - 1, np.nan)
    tlo = np.full(n - 1, np.nan)
    thi = np.full(n - 1, np.nan)
    llo = np.full(m - 1, np.nan)
    lhi = np.full(m - 1, np.nan)
    blist = np.empty(n - 1, np.int64)
    tlist = np.empty(n - 1, np.int64)
    blo[0] = bhi[0] = 0.0
    blist[0] = 0
    nb = 1
    llo[0] = lhi[0] = 0.0
    cells = 0
    pairs = 0
    size_sum = 0
    reached = False
    n_cols = pstart.shape[0]
    for t in range(sstart.shape[0]):
        y1, y2 = sstart[t], send[t]
        left_active = t == 0
        if nb == 0 and not left_active:
            break
        ptr = 0
        nt = 0
        s = 0
        last_done = -1
        while True:
            if not left_active:
                if ptr >= nb:
                    break
                s = pseg[blist[ptr]]
            x1, x2 = pstart[s], pend[s]
            while ptr < nb and blist[ptr] <= x2 - 2:
                ptr += 1
            if ppiece[s] and spiece[t]:
                pairs += 1
                size_sum += (x2 - x1 + 1) + (y2 - y1 + 1)
                bl = blo[x1 - 1 : x2 - 1].copy()
                bh = bhi[x1 - 1 : x2 - 1].copy()
                blo[x1 - 1 : x2 - 1] = np.nan
                bhi[x1 - 1 : x2 - 1] = np.nan
                ll = llo[y1 - 1 : y2 - 1].copy()
                lh = lhi[y1 - 1 : y2 - 1].copy()
                tl = np.empty(x2 - x1)
                th = np.empty(x2 - x1)
                status = solve_region(
                    P[x1 - 1 : x2], S[y1 - 1 : y2], delta, radius, steps, bl, bh, ll, lh,
                    tl, th, llo[y1 - 1 : y2 - 1], lhi[y1 - 1 : y2 - 1],
                )
                if status != OK:
                    return False, status, cells, pairs, size_sum
                for i in range(x1, x2):
                    if not math.isnan(tl[i - x1]):
                        tlo[i - 1], thi[i - 1] = tl[i - x1], th[i - x1]
                        tlist[nt] = i - 1
                        nt += 1
            else:
                for i in range(x1, x2):
                    b_lo, b_hi = blo[i - 1], bhi[i - 1]
                    blo[i - 1] = bhi[i - 1] = np.nan
                    for j in range(y1, y2):
                        l_lo = llo[j - 1]
                        has_b = not math.isnan(b_lo)
                        has_l = not math.isnan(l_lo)
                        if not has_b and not has_l:
                            continue
                        cells += 1
                        top_lo = top_hi = np.nan
                        f_lo, f_hi = free_span(P[i - 1], P[i], S[j], delta2)
                        if not math.isnan(f_lo):
                            if has_l:
                                top_lo, top_hi = f_lo, f_hi
                            elif max(f_lo, b_lo) <= f_hi:
                                top_lo, top_hi = max(f_lo, b_lo), f_hi
                        right_lo = right_hi = np.nan
                        f_lo, f_hi = free_span(S[j - 1], S[j], P[i], delta2)
                        if not math.isnan(f_lo):
                            if has_b:
                                right_lo, right_hi = f_lo, f_hi
                            elif max(f_lo, l_lo) <= f_hi:
                                right_lo, right_hi = max(f_lo, l_lo), f_hi
                        llo[j - 1], lhi[j - 1] = right_lo, right_hi
                        b_lo, b_hi = top_lo, top_hi
                    if not math.isnan(b_lo):
                        tlo[i - 1], thi[i - 1] = b_lo, b_hi
                        tlist[nt] = i - 1
                        nt += 1
            left_active = False
            for j in range(y1, y2):
                if not math.isnan(llo[j - 1]):
                    left_active = True
                    break
            last_done = s
            s += 1
            if s >= n_cols:
                break
        if y2 == m:
            if nt > 0 and tlist[nt - 1] == n - 2 and thi[n - 2] >= 1.0:
                reached = True
            if last_done == n_cols - 1 and not math.isnan(lhi[m - 2]) and lhi[m - 2] >= 1.0:
                reached = True
        blo, tlo = tlo, blo
        bhi, thi = thi, bhi
        blist, tlist = tlist, blist
        nb = nt
    return reached, OK, cells, pairs, size_sum


# ---------------------------------------------------------------------------
# Python-facing wrappers


def _part_arrays(dec):
    start = np.array([p.start for p in dec.parts], np.int64)
    end = np.array([p.end for p in dec.parts], np.int64)
    piece = np.array([p.is_piece for p in dec.parts], np.bool_)
    return start, end, piece


def run_sweep(dec_pi, dec_sigma, delta: float, epsilon: float, radius: float):
    """Compiled sweep over two decompositions: ``(reached, status, cells, pairs, size_sum)``."""
    P = np.ascontiguousarray(dec_pi.augmented.vertices, dtype=np.float64)
    S = np.ascontiguousarray(dec_sigma.augmented.vertices, dtype=np.float64)
    pstart, pend, ppiece = _part_arrays(dec_pi)
    sstart, send, spiece = _part_arrays(dec_sigma)
    pseg = np.ascontiguousarray(dec_pi.part_of_segment(), dtype=np.int64)
    steps = math.ceil(1.0 / epsilon - 1e-9)
    return sweep(P, S, float(delta), float(radius), steps, pstart, pend, ppiece, pseg, sstart, send, spiece)


def region_exits(piece_pi, piece_sigma, delta: float, epsilon: float, entries):
    """Compiled counterpart of the pure-Python region solver, same ``ReachFront`` interface."""
    from .decomposition import piece_radius
    from .errors import ContractError
    from .reach import ReachFront

    P = np.ascontiguousarray(piece_pi.vertices, dtype=np.float64)
    S = np.ascontiguousarray(piece_sigma.vertices, dtype=np.float64)
    n, m = len(P), len(S)
    bl, bh = np.full(n - 1, np.nan), np.full(n - 1, np.nan)
    ll, lh = np.full(m - 1, np.nan), np.full(m - 1, np.nan)
    for i, (a, b) in entries.horizontal.items():
        if 1 <= i < n:
            bl[i - 1], bh[i - 1] = a - i, b - i
    for j, (a, b) in entries.vertical.items():
        if 1 <= j < m:
            ll[j - 1], lh[j - 1] = a - j, b - j
    tl, th = np.empty(n - 1), np.empty(n - 1)
    rl, rh = np.empty(m - 1), np.empty(m - 1)
    radius = piece_radius(epsilon, delta)
    steps = math.ceil(1.0 / epsilon - 1e-9)
    status = solve_region(P, S, float(delta), radius, steps, bl, bh, ll, lh, tl, th, rl, rh)
    if status == PIECE_TOO_WIDE:
        raise ContractError(f"a piece leaves the ball of radius {radius} around its start")
    out = ReachFront()
    for i in range(n - 1):
        if not math.isnan(tl[i]):
            out.horizontal[i + 1] = (i + 1 + tl[i], i + 1 + th[i])
    for j in range(m - 1):
        if not math.isnan(rl[j]):
            out.vertical[j + 1] = (j + 1 + rl[j], j + 1 + rh[j])
    return out
