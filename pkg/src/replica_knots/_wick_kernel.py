"""Compiled pairing enumeration.

Counts fixed-point-free involutions of the legs by (index loops, mixed
pairs). Only integer arithmetic is used; the caller turns the census into
exact polynomials.
"""

import numpy as np
from numba import njit, prange


@njit(cache=True)
def _tally(gamma, labels, partner, visited, counts):
    m = gamma.shape[0]
    for x in range(m):
        visited[x] = 0
    loops = 0
    for x in range(m):
        if visited[x] == 0:
            loops += 1
            y = x
            while visited[y] == 0:
                visited[y] = 1
                # loop structure of gamma o alpha: first the pairing, then the trace successor
                y = gamma[partner[y]]
    mixed = 0
    for x in range(m):
        p = partner[x]
        if x < p and labels[x] != labels[p]:
            mixed += 1
    counts[loops, mixed] += 1


@njit(cache=True)
def _census_with_first_partner(gamma, labels, first, counts):
    """Enumerate every pairing in which leg 0 is matched with ``first``.

    Pairings are generated by always matching the lowest unpaired leg,
    so each one is produced exactly once.
    """
    m = gamma.shape[0]
    npairs = m // 2
    partner = -np.ones(m, np.int64)
    visited = np.zeros(m, np.uint8)
    partner[0] = first
    partner[first] = 0
    if npairs == 1:
        _tally(gamma, labels, partner, visited, counts)
        return
    lo = np.zeros(npairs, np.int64)
    cand = np.zeros(npairs, np.int64)
    nxt = 1
    while partner[nxt] != -1:
        nxt += 1
    depth = 1
    lo[1] = nxt
    cand[1] = nxt
    while depth >= 1:
        i = lo[depth]
        if cand[depth] != i:
            partner[cand[depth]] = -1
        c = cand[depth] + 1
        while c < m and partner[c] != -1:
            c += 1
        if c >= m:
            partner[i] = -1
            cand[depth] = i
            depth -= 1
            continue
        cand[depth] = c
        partner[i] = c
        partner[c] = i
        if depth == npairs - 1:
            _tally(gamma, labels, partner, visited, counts)
        else:
            depth += 1
            nxt = i + 1
            while partner[nxt] != -1:
                nxt += 1
            lo[depth] = nxt
            cand[depth] = nxt


@njit(cache=True, parallel=True)
def census(gamma, labels, max_loops, max_mixed):
    """Return an int64 array ``out[loops, mixed]`` of pairing counts."""
    m = gamma.shape[0]
    per_first = np.zeros((m, max_loops + 1, max_mixed + 1), np.int64)
    for first in prange(1, m):
        _census_with_first_partner(gamma, labels, first, per_first[first])
    out = np.zeros((max_loops + 1, max_mixed + 1), np.int64)
    for first in range(1, m):
        out += per_first[first]
    return out
