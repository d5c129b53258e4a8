#!/usr/bin/env python3
"""Search for low-rank GF(2) matrix-multiplication schemes and dump them as mask lists.

This is offline tooling used to produce the bundled scheme data files
(schemes/s47.exp, schemes/s95.exp).  It runs an adaptive random walk on the
graph of correct schemes: rank-preserving "flip" exchanges between two
products sharing a component, rank-reducing removals when a component
cancels to zero, and occasional rank-increasing "split" escapes when the
walk stalls.  The split move is deliberately NOT part of the library's
search module; it exists only here, to manufacture the data files once.

The walk state lives in flat numpy arrays so numba can JIT the hot loop;
a product is three bitmasks (one per coefficient matrix), and two products
admit a flip whenever they agree on one of the three masks.

Output is a JSON file of the raw masks plus an independent Brent-equation
check done in plain numpy before anything is written.

Usage:
  python3 tools/generate_fixtures.py --dim 4 --target 47 --seed 1 \
      --flip-limit 200000000 --out /tmp/s47_masks.json
"""

import argparse
import json
import sys
import time

import numpy as np
from numba import njit

CAP = 192  # max products a walk may hold (start rank + split headroom)


@njit(cache=True, inline="always")
def _rand32(state):
    s = state[0]
    s ^= s >> np.uint64(12)
    s ^= (s << np.uint64(25)) & np.uint64(0xFFFFFFFFFFFFFFFF)
    s ^= s >> np.uint64(27)
    state[0] = s
    return np.uint64((s * np.uint64(2685821657736338717)) >> np.uint64(32))


@njit(cache=True, inline="always")
def _rand_below(state, n):
    # unbiased enough for search purposes
    return np.int64((_rand32(state) * np.uint64(n)) >> np.uint64(32))


@njit(cache=True)
def _pair_add(plist, ppos, pcnt, col, p, q):
    lo, hi = (p, q) if p < q else (q, p)
    pid = lo * CAP + hi
    if ppos[col, pid] < 0:
        plist[col, pcnt[col]] = pid
        ppos[col, pid] = pcnt[col]
        pcnt[col] += 1


@njit(cache=True)
def _pair_remove(plist, ppos, pcnt, col, p, q):
    lo, hi = (p, q) if p < q else (q, p)
    pid = lo * CAP + hi
    pos = ppos[col, pid]
    if pos >= 0:
        last = pcnt[col] - 1
        moved = plist[col, last]
        plist[col, pos] = moved
        ppos[col, moved] = pos
        pcnt[col] = last
        ppos[col, pid] = -1


@njit(cache=True)
def _update_mask(m, live_list, nlive, plist, ppos, pcnt, col, s, newv):
    oldv = m[col, s]
    for i in range(nlive):
        t = live_list[i]
        if t == s:
            continue
        v = m[col, t]
        if v == oldv:
            _pair_remove(plist, ppos, pcnt, col, s, t)
        if v == newv:
            _pair_add(plist, ppos, pcnt, col, s, t)
    m[col, s] = newv


@njit(cache=True)
def _add_product(m, live_list, live_pos, nlive, plist, ppos, pcnt, slot, va, vb, vc):
    m[0, slot] = va
    m[1, slot] = vb
    m[2, slot] = vc
    for col in range(3):
        for i in range(nlive):
            t = live_list[i]
            if m[col, t] == m[col, slot]:
                _pair_add(plist, ppos, pcnt, col, slot, t)
    live_list[nlive] = slot
    live_pos[slot] = nlive
    return nlive + 1


@njit(cache=True)
def _remove_product(m, live_list, live_pos, nlive, plist, ppos, pcnt, s):
    for col in range(3):
        for i in range(nlive):
            t = live_list[i]
            if t != s and m[col, t] == m[col, s]:
                _pair_remove(plist, ppos, pcnt, col, s, t)
    pos = live_pos[s]
    last = nlive - 1
    moved = live_list[last]
    live_list[pos] = moved
    live_pos[moved] = pos
    live_pos[s] = -1
    return last


@njit(cache=True)
def _eager_reduce(m, live_list, live_pos, nlive, plist, ppos, pcnt,
                  free_stack, nfree, stack, nstack):
    """Merge every pair sharing two components, cascading, until none remain.

    `stack` holds product slots whose masks just changed; only those can be
    part of a new reducible pair.  Returns (nlive, nfree).
    """
    while nstack > 0:
        nstack -= 1
        s = stack[nstack]
        if live_pos[s] < 0:
            continue
        restart = True
        while restart:
            restart = False
            for i in range(nlive):
                t = live_list[i]
                if t == s:
                    continue
                shares = 0
                third = -1
                for col in range(3):
                    if m[col, s] == m[col, t]:
                        shares += 1
                    else:
                        third = col
                if shares < 2:
                    continue
                if shares == 3:
                    # identical products cancel outright
                    nlive = _remove_product(m, live_list, live_pos, nlive,
                                            plist, ppos, pcnt, t)
                    free_stack[nfree] = t
                    nfree += 1
                    nlive = _remove_product(m, live_list, live_pos, nlive,
                                            plist, ppos, pcnt, s)
                    free_stack[nfree] = s
                    nfree += 1
                    break
                nv = m[third, s] ^ m[third, t]
                _update_mask(m, live_list, nlive, plist, ppos, pcnt, third, s, nv)
                nlive = _remove_product(m, live_list, live_pos, nlive,
                                        plist, ppos, pcnt, t)
                free_stack[nfree] = t
                nfree += 1
                if nv == 0:
                    nlive = _remove_product(m, live_list, live_pos, nlive,
                                            plist, ppos, pcnt, s)
                    free_stack[nfree] = s
                    nfree += 1
                    break
                restart = True
                break
            if live_pos[s] < 0:
                break
    return nlive, nfree


@njit(cache=True)
def _load_state(src_m, src_n, m, live_list, live_pos, plist, ppos, pcnt,
                free_stack):
    """(Re)initialize all walk structures from a plain mask snapshot."""
    for col in range(3):
        for i in range(pcnt[col]):
            ppos[col, plist[col, i]] = -1
        pcnt[col] = 0
    for s in range(CAP):
        live_pos[s] = -1
    nlive = 0
    for s in range(src_n):
        nlive = _add_product(m, live_list, live_pos, nlive, plist, ppos, pcnt,
                             s, src_m[0, s], src_m[1, s], src_m[2, s])
    nfree = 0
    for s in range(CAP - 1, nlive - 1, -1):
        free_stack[nfree] = s
        nfree += 1
    return nlive, nfree


@njit(cache=True, inline="always")
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True)
def _walk(m0, nlive0, target, flip_limit, plus_after, restart_after,
          rank_slack, plus_gate, weight_cap, lazy, cap_start, reset_any,
          seed, best_m, best_live):
    """Random flip walk with split escapes; returns (best_rank, flips_done)."""
    state = np.empty(1, dtype=np.uint64)
    state[0] = np.uint64(seed * 6364136223846793005 + 1442695040888963407) | np.uint64(1)

    m = np.zeros((3, CAP), dtype=np.int64)
    live_list = np.full(CAP, -1, dtype=np.int32)
    live_pos = np.full(CAP, -1, dtype=np.int32)
    plist = np.zeros((3, CAP * CAP), dtype=np.int32)
    ppos = np.full((3, CAP * CAP), -1, dtype=np.int32)
    pcnt = np.zeros(3, dtype=np.int64)
    free_stack = np.empty(CAP, dtype=np.int32)
    stack = np.empty(CAP, dtype=np.int32)

    nlive, nfree = _load_state(m0, nlive0, m, live_list, live_pos,
                               plist, ppos, pcnt, free_stack)

    flips = np.int64(0)
    since_progress = np.int64(0)

    for i in range(nlive):
        stack[i] = live_list[i]
    nlive, nfree = _eager_reduce(m, live_list, live_pos, nlive, plist,
                                 ppos, pcnt, free_stack, nfree, stack, nlive)

    best_rank = nlive
    for i in range(nlive):
        t = live_list[i]
        best_m[0, i] = m[0, t]
        best_m[1, i] = m[1, t]
        best_m[2, i] = m[2, t]
    best_live[0] = nlive
    n_plus = np.int64(0)
    next_report = np.int64(10000000)
    while flips < flip_limit and nlive > target:
        if flips >= next_report:
            print("  trace flips=", flips, " best=", best_rank, " cur=", nlive,
                  " plus=", n_plus)
            next_report += 10000000
        if since_progress >= restart_after:
            # basin hop: reload the best scheme seen, perturb differently
            nlive, nfree = _load_state(best_m, np.int64(best_live[0]), m,
                                       live_list, live_pos, plist, ppos, pcnt,
                                       free_stack)
            since_progress = 0
            continue
        total = pcnt[0] + pcnt[1] + pcnt[2]
        cap = nlive0 if cap_start else best_rank + rank_slack
        do_plus = (since_progress >= plus_after and best_rank <= plus_gate
                   and nlive < cap and nfree > 0)
        if total == 0 and not do_plus:
            if nfree == 0:
                break
            do_plus = True

        if do_plus:
            # split escape: rewrite two products into three (rank +1)
            ok = False
            p = 0
            q = 0
            col = 0
            for _ in range(400):
                p = live_list[_rand_below(state, nlive)]
                q = live_list[_rand_below(state, nlive)]
                col = int(_rand_below(state, 3))
                if p == q:
                    continue
                e = (col + 1) % 3
                f = (col + 2) % 3
                if m[col, p] != m[col, q] and m[e, p] != m[e, q] and m[f, p] != m[f, q]:
                    ok = True
                    break
            if ok:
                e = (col + 1) % 3
                f = (col + 2) % 3
                dp, ep, fp = m[col, p], m[e, p], m[f, p]
                dq, eq, fq = m[col, q], m[e, q], m[f, q]
                _update_mask(m, live_list, nlive, plist, ppos, pcnt, e, p, ep ^ eq)
                _update_mask(m, live_list, nlive, plist, ppos, pcnt, col, q, dp)
                _update_mask(m, live_list, nlive, plist, ppos, pcnt, f, q, fp ^ fq)
                nfree -= 1
                slot = free_stack[nfree]
                # new product components live in columns (col, e, f)
                vals = np.zeros(3, dtype=np.int64)
                vals[col] = dp ^ dq
                vals[e] = eq
                vals[f] = fq
                nlive = _add_product(m, live_list, live_pos, nlive, plist, ppos, pcnt,
                                     slot, vals[0], vals[1], vals[2])
                if not lazy:
                    stack[0] = p
                    stack[1] = q
                    stack[2] = slot
                    nlive, nfree = _eager_reduce(m, live_list, live_pos, nlive,
                                                 plist, ppos, pcnt, free_stack,
                                                 nfree, stack, 3)
                n_plus += 1
            since_progress = 0
            continue

        flips += 1
        since_progress += 1

        accepted = False
        p = 0
        q = 0
        col = 0
        nu = np.int64(0)
        nv = np.int64(0)
        for _ in range(64):
            r = _rand_below(state, total)
            col = 0
            if r >= pcnt[0]:
                r -= pcnt[0]
                col = 1
                if r >= pcnt[1]:
                    r -= pcnt[1]
                    col = 2
            pid = plist[col, r]
            p = pid // CAP
            q = pid % CAP
            if _rand32(state) & np.uint64(1):
                p, q = q, p
            u = (col + 1) % 3
            v = (col + 2) % 3
            nu = m[u, p] ^ m[u, q]
            nv = m[v, q] ^ m[v, p]
            if _popcount(nu) <= weight_cap and _popcount(nv) <= weight_cap:
                accepted = True
                break
        if not accepted:
            since_progress += 64
            continue

        u = (col + 1) % 3
        v = (col + 2) % 3
        _update_mask(m, live_list, nlive, plist, ppos, pcnt, u, p, nu)
        _update_mask(m, live_list, nlive, plist, ppos, pcnt, v, q, nv)

        nstack = 0
        if nu == 0:
            nlive = _remove_product(m, live_list, live_pos, nlive, plist, ppos, pcnt, p)
            free_stack[nfree] = p
            nfree += 1
        else:
            stack[nstack] = p
            nstack += 1
        if nv == 0:
            nlive = _remove_product(m, live_list, live_pos, nlive, plist, ppos, pcnt, q)
            free_stack[nfree] = q
            nfree += 1
        else:
            stack[nstack] = q
            nstack += 1
        before = nlive
        if not lazy:
            nlive, nfree = _eager_reduce(m, live_list, live_pos, nlive, plist,
                                         ppos, pcnt, free_stack, nfree, stack,
                                         nstack)
        if reset_any and (nlive < before or nu == 0 or nv == 0):
            since_progress = 0
        if nlive < best_rank:
            best_rank = nlive
            since_progress = 0
            for i in range(nlive):
                t = live_list[i]
                best_m[0, i] = m[0, t]
                best_m[1, i] = m[1, t]
                best_m[2, i] = m[2, t]
            best_live[0] = nlive

    return best_rank, flips


CAPO = 96          # orbit capacity for the symmetric walk
NCELLS = 3 * CAPO  # flat cell ids; orbit t owns cells 3t, 3t+1, 3t+2


@njit(cache=True)
def _pair_add_s(plist, ppos, pcnt, p, q):
    lo, hi = (p, q) if p < q else (q, p)
    pid = lo * NCELLS + hi
    if ppos[pid] < 0:
        plist[pcnt[0]] = pid
        ppos[pid] = pcnt[0]
        pcnt[0] += 1


@njit(cache=True)
def _pair_remove_s(plist, ppos, pcnt, p, q):
    lo, hi = (p, q) if p < q else (q, p)
    pid = lo * NCELLS + hi
    pos = ppos[pid]
    if pos >= 0:
        last = pcnt[0] - 1
        moved = plist[last]
        plist[pos] = moved
        ppos[moved] = pos
        pcnt[0] = last
        ppos[pid] = -1


@njit(cache=True)
def _update_cell(cells, rep_list, nreps, plist, ppos, pcnt, cell, newv):
    oldv = cells[cell]
    rep = cell // 3
    for i in range(nreps):
        t = rep_list[i]
        if t == rep:
            continue
        for c in range(3):
            o = 3 * t + c
            v = cells[o]
            if v == oldv:
                _pair_remove_s(plist, ppos, pcnt, cell, o)
            if v == newv:
                _pair_add_s(plist, ppos, pcnt, cell, o)
    cells[cell] = newv


@njit(cache=True)
def _add_rep(cells, rep_list, rep_pos, nreps, plist, ppos, pcnt, rep, va, vb, vc):
    cells[3 * rep] = va
    cells[3 * rep + 1] = vb
    cells[3 * rep + 2] = vc
    for i in range(nreps):
        t = rep_list[i]
        for c in range(3):
            o = 3 * t + c
            for cc in range(3):
                if cells[o] == cells[3 * rep + cc]:
                    _pair_add_s(plist, ppos, pcnt, 3 * rep + cc, o)
    rep_list[nreps] = rep
    rep_pos[rep] = nreps
    return nreps + 1


@njit(cache=True)
def _remove_rep(cells, rep_list, rep_pos, nreps, plist, ppos, pcnt, rep):
    for i in range(nreps):
        t = rep_list[i]
        if t == rep:
            continue
        for c in range(3):
            o = 3 * t + c
            for cc in range(3):
                if cells[o] == cells[3 * rep + cc]:
                    _pair_remove_s(plist, ppos, pcnt, 3 * rep + cc, o)
    for cc in range(3):
        cells[3 * rep + cc] = 0
    pos = rep_pos[rep]
    last = nreps - 1
    moved = rep_list[last]
    rep_list[pos] = moved
    rep_pos[moved] = pos
    rep_pos[rep] = -1
    return last


@njit(cache=True)
def _walk_sym(cells0, nreps0, target_reps, flip_limit, plus_after, seed,
              best_cells, best_nreps):
    """Cyclic-symmetric flip walk; one move = three simultaneous flips.

    Each live orbit rep (u, v, w) stands for the three products
    (u, v, w), (w, u, v), (v, w, u); a flip between cells p of one orbit
    and q of another (equal mask values) updates the cyclic successors.
    A zero cell removes the whole orbit (three products at once).
    """
    state = np.empty(1, dtype=np.uint64)
    state[0] = np.uint64(seed * 6364136223846793005 + 1442695040888963407) | np.uint64(1)

    cells = np.zeros(NCELLS, dtype=np.int64)
    rep_list = np.full(CAPO, -1, dtype=np.int32)
    rep_pos = np.full(CAPO, -1, dtype=np.int32)
    plist = np.zeros(NCELLS * NCELLS, dtype=np.int32)
    ppos = np.full(NCELLS * NCELLS, -1, dtype=np.int32)
    pcnt = np.zeros(1, dtype=np.int64)
    free_stack = np.empty(CAPO, dtype=np.int32)

    nreps = 0
    for t in range(nreps0):
        nreps = _add_rep(cells, rep_list, rep_pos, nreps, plist, ppos, pcnt,
                         t, cells0[3 * t], cells0[3 * t + 1], cells0[3 * t + 2])
    nfree = 0
    for t in range(CAPO - 1, nreps - 1, -1):
        free_stack[nfree] = t
        nfree += 1

    max_reps = nreps  # rank may grow back up to the start size (escape room)
    best = nreps
    for i in range(NCELLS):
        best_cells[i] = cells[i]
    best_nreps[0] = nreps

    flips = np.int64(0)
    since_event = np.int64(0)
    while flips < flip_limit and nreps > target_reps:
        total = pcnt[0]
        do_plus = since_event >= plus_after and nreps < max_reps and nfree > 0
        if total == 0 and not do_plus:
            if nfree == 0 or nreps >= max_reps:
                break
            do_plus = True

        if do_plus:
            ok = False
            p = 0
            q = 0
            for _ in range(400):
                r1 = rep_list[_rand_below(state, nreps)]
                r2 = rep_list[_rand_below(state, nreps)]
                if r1 == r2:
                    continue
                p = 3 * r1 + int(_rand_below(state, 3))
                q = 3 * r2 + int(_rand_below(state, 3))
                if (cells[p] != cells[q]
                        and cells[_succ(p, 1)] != cells[_succ(q, 1)]
                        and cells[_succ(p, 2)] != cells[_succ(q, 2)]):
                    ok = True
                    break
            if ok:
                dp, ep, fp = cells[p], cells[_succ(p, 2)], cells[_succ(p, 1)]
                dq, eq, fq = cells[q], cells[_succ(q, 2)], cells[_succ(q, 1)]
                _update_cell(cells, rep_list, nreps, plist, ppos, pcnt,
                             _succ(p, 2), ep ^ eq)
                _update_cell(cells, rep_list, nreps, plist, ppos, pcnt, q, dp)
                _update_cell(cells, rep_list, nreps, plist, ppos, pcnt,
                             _succ(q, 1), fp ^ fq)
                nfree -= 1
                slot = free_stack[nfree]
                nreps = _add_rep(cells, rep_list, rep_pos, nreps, plist, ppos,
                                 pcnt, slot, dp ^ dq, fq, eq)
            since_event = 0
            continue

        flips += 1
        since_event += 1

        r = _rand_below(state, total)
        pid = plist[r]
        p = pid // NCELLS
        q = pid % NCELLS
        if _rand32(state) & np.uint64(1):
            p, q = q, p

        pu = _succ(p, 1)
        qu = _succ(q, 1)
        pv = _succ(p, 2)
        qv = _succ(q, 2)
        nu = cells[pu] ^ cells[qu]
        nv = cells[qv] ^ cells[pv]
        _update_cell(cells, rep_list, nreps, plist, ppos, pcnt, pu, nu)
        _update_cell(cells, rep_list, nreps, plist, ppos, pcnt, qv, nv)

        reduced = False
        if nu == 0:
            nreps = _remove_rep(cells, rep_list, rep_pos, nreps, plist, ppos,
                                pcnt, p // 3)
            free_stack[nfree] = p // 3
            nfree += 1
            reduced = True
        if nv == 0 and rep_pos[q // 3] >= 0:
            nreps = _remove_rep(cells, rep_list, rep_pos, nreps, plist, ppos,
                                pcnt, q // 3)
            free_stack[nfree] = q // 3
            nfree += 1
            reduced = True
        if reduced:
            since_event = 0
            if nreps < best:
                best = nreps
                for i in range(NCELLS):
                    best_cells[i] = cells[i]
                best_nreps[0] = nreps

    return best, flips


@njit(cache=True, inline="always")
def _succ(cell, k):
    rep = cell // 3
    return 3 * rep + (cell - 3 * rep + k) % 3


def standard_masks(n):
    """Masks of the classical n x n x n scheme: one product per (i,j,l)."""
    m = np.zeros((3, CAP), dtype=np.int64)
    k = 0
    for i in range(n):
        for j in range(n):
            for l in range(n):
                m[0, k] = 1 << (i * n + j)
                m[1, k] = 1 << (j * n + l)
                m[2, k] = 1 << (i * n + l)
                k += 1
    return m, k


# Strassen's 7 products with signs dropped (same scheme mod 2); bit t = 2*i + j
STRASSEN = [(9, 9, 9), (12, 1, 12), (1, 10, 10), (8, 5, 5), (3, 8, 3), (5, 3, 8), (10, 12, 1)]


def _kron_mask(x, y, n1, m1, n2, m2):
    out = 0
    for i1 in range(n1):
        for j1 in range(m1):
            if (x >> (i1 * m1 + j1)) & 1:
                for i2 in range(n2):
                    for j2 in range(m2):
                        if (y >> (i2 * m2 + j2)) & 1:
                            out |= 1 << ((i1 * n2 + i2) * (m1 * m2) + (j1 * m2 + j2))
    return out


def strassen_squared_masks():
    """Rank-49 4x4 scheme: Kronecker square of Strassen's 2x2 scheme."""
    m = np.zeros((3, CAP), dtype=np.int64)
    k = 0
    for a1, b1, c1 in STRASSEN:
        for a2, b2, c2 in STRASSEN:
            m[0, k] = _kron_mask(a1, a2, 2, 2, 2, 2)
            m[1, k] = _kron_mask(b1, b2, 2, 2, 2, 2)
            m[2, k] = _kron_mask(c1, c2, 2, 2, 2, 2)
            k += 1
    return m, k


def json_masks(path):
    with open(path) as f:
        d = json.load(f)
    assert d["n"] == d["m"] == d["p"]
    m = np.zeros((3, CAP), dtype=np.int64)
    r = d["rank"]
    for i in range(r):
        m[0, i] = d["alpha"][i]
        m[1, i] = d["beta"][i]
        m[2, i] = d["gamma"][i]
    return m, r, d["n"]


def brent_ok(masks, n):
    """Exact Brent-equation check of a mask-list scheme, plain numpy."""
    r = len(masks[0])
    nn = n * n
    A = np.zeros((r, nn), dtype=np.int64)
    B = np.zeros((r, nn), dtype=np.int64)
    G = np.zeros((r, nn), dtype=np.int64)
    for k in range(r):
        for t in range(nn):
            A[k, t] = (masks[0][k] >> t) & 1
            B[k, t] = (masks[1][k] >> t) & 1
            G[k, t] = (masks[2][k] >> t) & 1
    T = np.einsum("ka,kb,kc->abc", A, B, G) % 2
    E = np.zeros((nn, nn, nn), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            for y in range(n):
                E[i * n + j, j * n + y, i * n + y] = 1
    return bool(np.array_equal(T, E))


def _transpose_mask(x, n):
    out = 0
    for i in range(n):
        for j in range(n):
            if (x >> (i * n + j)) & 1:
                out |= 1 << (j * n + i)
    return out


def sym_start(dim, cube_diags):
    """Fixed diagonal cubes plus a cyclic-orbit completion of the residual.

    Works in the trace basis (u, v, w) = (alpha, beta, gamma^T), where the
    multiplication tensor has cells {(ij, jl, li)} and is invariant under
    rotating the three slots.  Cubes are products (x, x, x) with diagonal x;
    every remaining tensor cell is covered by a singleton orbit of three
    rank-one products.
    """
    nn = dim * dim
    cells = set()
    for i in range(dim):
        for j in range(dim):
            for l in range(dim):
                cells.add((i * dim + j, j * dim + l, l * dim + i))
    cubes = []
    for diag in cube_diags:
        x = 0
        for y in range(dim):
            if diag[y] == "1":
                x |= 1 << (y * dim + y)
        cubes.append(x)
        ent = [e for e in range(nn) if (x >> e) & 1]
        for a in ent:
            for b in ent:
                for c in ent:
                    cells.symmetric_difference_update({(a, b, c)})
    orbits = []
    while cells:
        a, b, c = min(cells)
        assert not (a == b == c), "cubes must cover all diagonal cells"
        for cell in ((a, b, c), (c, a, b), (b, c, a)):
            assert cell in cells, "residual not rotation closed"
            cells.remove(cell)
        orbits.append((1 << a, 1 << b, 1 << c))
    return cubes, orbits


def run_sym(dim, target, seed, flip_limit, plus_after, cube_diags, out):
    cubes, orbits = sym_start(dim, cube_diags)
    target_reps = (target - len(cubes)) // 3
    assert target == len(cubes) + 3 * target_reps, "target must fit cube+orbit structure"
    cells0 = np.zeros(NCELLS, dtype=np.int64)
    for t, (u, v, w) in enumerate(orbits):
        cells0[3 * t] = u
        cells0[3 * t + 1] = v
        cells0[3 * t + 2] = w
    best_cells = np.zeros(NCELLS, dtype=np.int64)
    best_nreps = np.zeros(1, dtype=np.int64)
    t0 = time.time()
    best, flips = _walk_sym(cells0, len(orbits), target_reps, flip_limit,
                            plus_after, seed, best_cells, best_nreps)
    dt = time.time() - t0
    rank = len(cubes) + 3 * best
    alphas, betas, gammas = [], [], []
    for x in cubes:
        alphas.append(x)
        betas.append(x)
        gammas.append(_transpose_mask(x, dim))
    nb = int(best_nreps[0])
    reps = [(int(best_cells[3 * t]), int(best_cells[3 * t + 1]),
             int(best_cells[3 * t + 2])) for t in range(CAPO)
            if best_cells[3 * t] or best_cells[3 * t + 1] or best_cells[3 * t + 2]]
    assert len(reps) == nb
    for u, v, w in reps:
        for a, b, c in ((u, v, w), (w, u, v), (v, w, u)):
            alphas.append(a)
            betas.append(b)
            gammas.append(_transpose_mask(c, dim))
    ok = brent_ok([alphas, betas, gammas], dim)
    rate = flips / dt / 1e6 if dt > 0 else 0.0
    print(f"sym dim={dim} seed={seed} best_rank={rank} flips={flips} "
          f"time={dt:.1f}s rate={rate:.2f}Mflips/s brent_ok={ok}", flush=True)
    if rank <= target and ok:
        payload = {
            "n": dim, "m": dim, "p": dim, "rank": rank,
            "alpha": alphas, "beta": betas, "gamma": gammas,
            "generator": {
                "mode": "symmetric", "seed": seed, "flip_limit": int(flip_limit),
                "plus_after": int(plus_after), "cubes": list(cube_diags),
            },
        }
        with open(out, "w") as f:
            json.dump(payload, f)
        print(f"WROTE {out} (rank {rank}, Brent check passed)", flush=True)
        return 0
    return 1


def run(dim, target, seed, flip_limit, plus_after, restart_after, rank_slack,
        plus_gate, weight_cap, lazy, cap_start, reset_any, out, start_kind):
    if start_kind == "standard":
        m, start = standard_masks(dim)
    elif start_kind == "strassen2":
        assert dim == 4
        m, start = strassen_squared_masks()
    else:
        m, start, dim2 = json_masks(start_kind)
        assert dim2 == dim
    best_m = np.zeros((3, CAP), dtype=np.int64)
    best_live = np.zeros(1, dtype=np.int64)
    t0 = time.time()
    best_rank, flips = _walk(m, start, target, flip_limit, plus_after,
                             restart_after, rank_slack, plus_gate, weight_cap,
                             lazy, cap_start, reset_any, seed, best_m, best_live)
    dt = time.time() - t0
    rate = flips / dt / 1e6 if dt > 0 else 0.0
    nl = int(best_live[0])
    masks = [[int(best_m[c, i]) for i in range(nl)] for c in range(3)]
    ok = brent_ok(masks, dim)
    print(f"dim={dim} seed={seed} best_rank={best_rank} flips={flips} "
          f"time={dt:.1f}s rate={rate:.2f}Mflips/s brent_ok={ok}", flush=True)
    if best_rank <= target:
        if not ok:
            print("REJECTED: found scheme fails Brent check", flush=True)
            return 1
        payload = {
            "n": dim, "m": dim, "p": dim, "rank": nl,
            "alpha": masks[0], "beta": masks[1], "gamma": masks[2],
            "generator": {
                "seed": seed, "flip_limit": int(flip_limit),
                "plus_after": int(plus_after), "restart_after": int(restart_after),
                "rank_slack": int(rank_slack), "plus_gate": int(plus_gate),
                "weight_cap": int(weight_cap), "start": start_kind,
            },
        }
        with open(out, "w") as f:
            json.dump(payload, f)
        print(f"WROTE {out} (rank {nl}, Brent check passed)", flush=True)
        return 0
    return 1


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--dim", type=int, required=True)
    ap.add_argument("--target", type=int, required=True)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--flip-limit", type=float, default=2e8)
    ap.add_argument("--plus-after", type=int, default=300000)
    ap.add_argument("--restart-after", type=int, default=2000000)
    ap.add_argument("--rank-slack", type=int, default=4)
    ap.add_argument("--plus-gate", type=int, default=10**9,
                    help="enable split escapes only once best rank <= gate")
    ap.add_argument("--weight-cap", type=int, default=64,
                    help="reject flips producing masks heavier than this")
    ap.add_argument("--lazy", action="store_true",
                    help="reduce only on zero masks (no eager pair merging)")
    ap.add_argument("--cap-start", action="store_true",
                    help="allow escapes to grow rank back to the start rank")
    ap.add_argument("--reset-any", action="store_true",
                    help="stall counter resets on any reduction, not only new bests")
    ap.add_argument("--out", type=str, required=True)
    ap.add_argument("--start", type=str, default="standard",
                    help="standard | strassen2 | path to a masks JSON")
    ap.add_argument("--sym-cubes", type=str, default="",
                    help="comma-separated diagonal cube patterns; switches to the symmetric walk")
    args = ap.parse_args()
    if args.sym_cubes:
        sys.exit(run_sym(args.dim, args.target, args.seed, int(args.flip_limit),
                         args.plus_after, args.sym_cubes.split(","), args.out))
    sys.exit(run(args.dim, args.target, args.seed, int(args.flip_limit),
                 args.plus_after, args.restart_after, args.rank_slack,
                 args.plus_gate, args.weight_cap, args.lazy, args.cap_start,
                 args.reset_any, args.out, args.start))


if __name__ == "__main__":
    main()
