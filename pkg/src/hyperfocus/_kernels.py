"""numba kernels for the enumeration hot loops.

Tables are int8 n x n color matrices with -1 for "no color yet"; partner
arrays are (n-1) x n.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _pair_type(pc, a, b, n, out):
    """Cycle lengths of color classes a, b (sorted descending into out, zero padded)."""
    seen = np.zeros(n, np.bool_)
    m = 0
    for s in range(n):
        if seen[s]:
            continue
        v = s
        length = 0
        use_a = True
        while not seen[v]:
            seen[v] = True
            length += 1
            v = pc[a, v] if use_a else pc[b, v]
            use_a = not use_a
        out[m] = length
        m += 1
    for i in range(m, out.shape[0]):
        out[i] = 0
    # insertion sort, descending
    for i in range(1, m):
        x = out[i]
        j = i - 1
        while j >= 0 and out[j] < x:
            out[j + 1] = out[j]
            j -= 1
        out[j + 1] = x
    return m


@njit(cache=True)
def _cmp_type(t, T):
    for i in range(T.shape[0]):
        if t[i] != T[i]:
            return 1 if t[i] > T[i] else -1
    return 0


@njit(cache=True)
def completions(n, T, col0):
    """All completions of the pair in col0 (colors 0, 1) whose pair types are all <= T.

    Colors 2..n-2 are added one factor at a time; the partner of vertex 0
    increases with the color, which fixes the order of the remaining factors.
    Returns an array of shape (count, n*(n-1)/2) of edge colors.
    """
    ne = n * (n - 1) // 2
    col = col0.copy()
    pc = -np.ones((n - 1, n), np.int64)
    for i in range(n):
        for j in range(n):
            if col[i, j] >= 0:
                pc[col[i, j], i] = j
    cap = 1024
    out = np.empty((cap, ne), np.int8)
    count = 0
    maxdepth = (n - 3) * (n // 2) + 1
    sc = np.empty(maxdepth, np.int64)
    sv = np.empty(maxdepth, np.int64)
    sw = np.empty(maxdepth, np.int64)
    tbuf = np.empty(T.shape[0] + n, np.int64)
    depth = 0
    if n - 1 <= 2:
        # the pair already is the factorization
        k = 0
        for i in range(n):
            for j in range(i + 1, n):
                out[0, k] = col[i, j]
                k += 1
        return out[:1].copy()
    cur_c = 2
    cur_v = 0
    next_w = 1
    while True:
        found = -1
        for w in range(next_w, n):
            if w != cur_v and pc[cur_c, w] < 0 and col[cur_v, w] < 0:
                found = w
                break
        if found < 0:
            if depth == 0:
                break
            depth -= 1
            c = sc[depth]
            v = sv[depth]
            w = sw[depth]
            col[v, w] = -1
            col[w, v] = -1
            pc[c, v] = -1
            pc[c, w] = -1
            cur_c = c
            cur_v = v
            next_w = w + 1
            continue
        c = cur_c
        v = cur_v
        w = found
        col[v, w] = c
        col[w, v] = c
        pc[c, v] = w
        pc[c, w] = v
        sc[depth] = c
        sv[depth] = v
        sw[depth] = w
        depth += 1
        nv = -1
        for x in range(n):
            if pc[c, x] < 0:
                nv = x
                break
        if nv >= 0:
            cur_c = c
            cur_v = nv
            next_w = nv + 1
            continue
        ok = True
        for d in range(c):
            _pair_type(pc, d, c, n, tbuf)
            if _cmp_type(tbuf, T) > 0:
                ok = False
                break
        if ok and c == n - 2:
            if count == cap:
                bigger = np.empty((2 * cap, ne), np.int8)
                bigger[:cap] = out
                out = bigger
                cap *= 2
            k = 0
            for i in range(n):
                for j in range(i + 1, n):
                    out[count, k] = col[i, j]
                    k += 1
            count += 1
        if ok and c < n - 2:
            cur_c = c + 1
            cur_v = 0
            next_w = pc[c, 0] + 1
            continue
        # undo the last edge and keep searching at the same decision point
        depth -= 1
        col[v, w] = -1
        col[w, v] = -1
        pc[c, v] = -1
        pc[c, w] = -1
        cur_c = c
        cur_v = v
        next_w = w + 1
    return out[:count].copy()


@njit(cache=True)
def anchored_certificate(seq, n, T, tperms):
    """Least relabeled color sequence over all anchors of pair type T.

    An anchor is an ordered color pair (a, b) whose union has cycle type T,
    together with an isomorphism of that union onto the standard pair
    (cycles on consecutive vertex blocks, lengths T descending, each block
    walked a, b, a, ...).  a -> 0, b -> 1, and the other colors are renamed
    2, 3, ... in order of first appearance at new vertex 0.  ``tperms`` lists
    the permutations of cycle slots that preserve T.
    """
    ne = n * (n - 1) // 2
    tab = np.empty((n, n), np.int64)
    k = 0
    for i in range(n):
        tab[i, i] = -1
        for j in range(i + 1, n):
            tab[i, j] = seq[k]
            tab[j, i] = seq[k]
            k += 1
    pc = np.empty((n - 1, n), np.int64)
    for i in range(n):
        for j in range(n):
            if i != j:
                pc[tab[i, j], i] = j
    ncyc = 0
    for i in range(T.shape[0]):
        if T[i] > 0:
            ncyc += 1
    best = np.full(ne, 127, np.int64)
    cand = np.empty(ne, np.int64)
    cyc_start = np.empty(ncyc + 1, np.int64)
    cyc_verts = np.empty(n, np.int64)
    cyc_len = np.empty(ncyc, np.int64)
    order = np.empty(ncyc, np.int64)
    sigma = np.empty(n, np.int64)  # new -> old
    cmap = np.empty(n - 1, np.int64)
    radix = np.empty(ncyc, np.int64)
    seen = np.empty(n, np.bool_)
    # try every ordered color pair (a, b) as the anchor 2-factor
    for a in range(n - 1):
        for b in range(n - 1):
            if a == b:
                continue
            # cycles, each from its smallest vertex walking a first
            seen[:] = False
            m = 0
            pos = 0
            bad = False
            for s in range(n):
                if seen[s]:
                    continue
                if m == ncyc:
                    bad = True
                    break
                cyc_start[m] = pos
                v = s
                use_a = True
                while not seen[v]:
                    seen[v] = True
                    cyc_verts[pos] = v
                    pos += 1
                    v = pc[a, v] if use_a else pc[b, v]
                    use_a = not use_a
                cyc_len[m] = pos - cyc_start[m]
                m += 1
            if bad or m != ncyc:
                continue
            cyc_start[m] = pos
            # sort cycle indices by length descending (stable) and compare to T
            for i in range(m):
                order[i] = i
            for i in range(1, m):
                x = order[i]
                j = i - 1
                while j >= 0 and cyc_len[order[j]] < cyc_len[x]:
                    order[j + 1] = order[j]
                    j -= 1
                order[j + 1] = x
            match = True
            for i in range(m):
                if cyc_len[order[i]] != T[i]:
                    match = False
            if not match:
                continue
            for p in range(tperms.shape[0]):
                # slot i of the standard pair gets cycle order[tperms[p, i]]
                for i in range(m):
                    radix[i] = 0
                while True:
                    # build sigma
                    base = 0
                    for i in range(m):
                        ci = order[tperms[p, i]]
                        L = cyc_len[ci]
                        s0 = radix[i]
                        st = cyc_start[ci]
                        for t in range(L):
                            if s0 % 2 == 0:
                                sigma[base + t] = cyc_verts[st + (s0 + t) % L]
                            else:
                                sigma[base + t] = cyc_verts[st + (s0 - t) % L]
                        base += L
                    # colors: a->0, b->1, rest by first appearance on row 0
                    for c in range(n - 1):
                        cmap[c] = -1
                    cmap[a] = 0
                    cmap[b] = 1
                    nxt = 2
                    for j in range(1, n):
                        c = tab[sigma[0], sigma[j]]
                        if cmap[c] < 0:
                            cmap[c] = nxt
                            nxt += 1
                    # compare against best with early exit
                    k = 0
                    state = 0  # 0 equal so far, -1 smaller, 1 larger
                    for i in range(n):
                        for j in range(i + 1, n):
                            val = cmap[tab[sigma[i], sigma[j]]]
                            cand[k] = val
                            if state == 0:
                                if val < best[k]:
                                    state = -1
                                elif val > best[k]:
                                    state = 1
                                    break
                            k += 1
                        if state == 1:
                            break
                    if state == -1:
                        best[:] = cand
                    # advance mixed radix counter
                    i = 0
                    while i < m:
                        radix[i] += 1
                        if radix[i] < cyc_len[order[tperms[p, i]]]:
                            break
                        radix[i] = 0
                        i += 1
                    if i == m:
                        break
    return best


@njit(cache=True)
def certificates(batch, n, T, tperms):
    out = np.empty(batch.shape, np.int8)
    for r in range(batch.shape[0]):
        cert = anchored_certificate(batch[r], n, T, tperms)
        for k in range(batch.shape[1]):
            out[r, k] = cert[k]
    return out


@njit(cache=True)
def c4_pass(X, idx):
    """Per row: True unless some 4-set has exactly two monochromatic splittings.

    idx has shape (sets, 3, 2) of edge indices.
    """
    N = X.shape[0]
    out = np.ones(N, np.bool_)
    S = idx.shape[0]
    for r in range(N):
        for s in range(S):
            m = 0
            for k in range(3):
                if X[r, idx[s, k, 0]] == X[r, idx[s, k, 1]]:
                    m += 1
            if m == 2:
                out[r] = False
                break
    return out


@njit(cache=True)
def _k4e_search(tab, n, out):
    """First (U, V) with exactly five of six corresponding edge colors equal.

    U runs over 4-sets in lexicographic order, V over ordered 4-tuples of the
    remaining vertices; partial V with two mismatches are cut.  Fills out[0:8]
    and returns True on a hit.
    """
    used = np.zeros(n, np.bool_)
    for u0 in range(n):
        for u1 in range(u0 + 1, n):
            for u2 in range(u1 + 1, n):
                for u3 in range(u2 + 1, n):
                    used[u0] = used[u1] = used[u2] = used[u3] = True
                    for v0 in range(n):
                        if used[v0]:
                            continue
                        for v1 in range(n):
                            if used[v1] or v1 == v0:
                                continue
                            m1 = 0 if tab[u0, u1] == tab[v0, v1] else 1
                            for v2 in range(n):
                                if used[v2] or v2 == v0 or v2 == v1:
                                    continue
                                m2 = m1
                                if tab[u0, u2] != tab[v0, v2]:
                                    m2 += 1
                                if tab[u1, u2] != tab[v1, v2]:
                                    m2 += 1
                                if m2 > 1:
                                    continue
                                for v3 in range(n):
                                    if used[v3] or v3 == v0 or v3 == v1 or v3 == v2:
                                        continue
                                    m3 = m2
                                    if tab[u0, u3] != tab[v0, v3]:
                                        m3 += 1
                                    if tab[u1, u3] != tab[v1, v3]:
                                        m3 += 1
                                    if tab[u2, u3] != tab[v2, v3]:
                                        m3 += 1
                                    if m3 == 1:
                                        out[0] = u0
                                        out[1] = u1
                                        out[2] = u2
                                        out[3] = u3
                                        out[4] = v0
                                        out[5] = v1
                                        out[6] = v2
                                        out[7] = v3
                                        return True
                    used[u0] = used[u1] = used[u2] = used[u3] = False
    return False


@njit(cache=True)
def _row_table(row, n, tab):
    k = 0
    for i in range(n):
        tab[i, i] = -1
        for j in range(i + 1, n):
            tab[i, j] = row[k]
            tab[j, i] = row[k]
            k += 1


@njit(cache=True)
def k4e_find(row, n):
    tab = np.empty((n, n), np.int64)
    _row_table(row, n, tab)
    out = -np.ones(8, np.int64)
    _k4e_search(tab, n, out)
    return out


@njit(cache=True)
def k4e_pass(X, n):
    N = X.shape[0]
    res = np.ones(N, np.bool_)
    tab = np.empty((n, n), np.int64)
    out = np.empty(8, np.int64)
    for r in range(N):
        _row_table(X[r], n, tab)
        if _k4e_search(tab, n, out):
            res[r] = False
    return res
