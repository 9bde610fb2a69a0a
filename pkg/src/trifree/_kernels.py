"""Compiled batch sampler for the weight process.

Every replica owns a splitmix64 stream seeded from ``(seed, replica)``, and
draws exactly one uniform per step, so results do not depend on how replicas
are scheduled across threads.
"""

import numba
import numpy as np
from numba import njit, prange

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_INV53 = 1.0 / 9007199254740992.0

CHUNK = 1024


@njit(cache=True)
def _mix64(z):
    z = (z ^ (z >> _S30)) * _M1
    z = (z ^ (z >> _S27)) * _M2
    return z ^ (z >> _S31)


@njit(cache=True)
def replica_state(seed, replica):
    return _mix64(_mix64(np.uint64(seed) + _GOLDEN) ^ (np.uint64(replica) * _GOLDEN))


@njit(cache=True)
def _next_uniform(state):
    state = state + _GOLDEN
    return state, (_mix64(state) >> _S11) * _INV53


@njit(cache=True)
def replica_uniforms(seed, replica, count):
    """The uniforms replica ``replica`` consumes, step by step."""
    out = np.empty(count, dtype=np.float64)
    state = replica_state(seed, replica)
    for i in range(count):
        state, out[i] = _next_uniform(state)
    return out


@njit(cache=True)
def _run_one(order, lptr, lidx, logw0, stepw, inc, state):
    """One replica, pulling each vertex's weight from its left neighbours.

    Summing the left neighbours' step weights in position order reproduces
    the push-style update ``ell += w`` bit for bit; a joined left neighbour
    zeroes the weight and ends the scan.
    """
    n = order.shape[0]
    for i in range(n):
        v = order[i]
        state, u = _next_uniform(state)
        ell = logw0[v]
        for t in range(lptr[v], lptr[v + 1]):
            j = lidx[t]
            if inc[j]:
                ell = -np.inf
                break
            ell += stepw[j]
        if ell == -np.inf:
            inc[v] = False
            stepw[v] = 0.0
            continue
        w = np.exp(ell)
        inc[v] = u < -np.expm1(-w)
        stepw[v] = w
    return state


@njit(cache=True, parallel=True)
def count_hits(order, lptr, lidx, logw0, seed, samples):
    """Per-vertex inclusion counts and the number of edges found inside sampled sets."""
    n = order.shape[0]
    nchunks = (samples + CHUNK - 1) // CHUNK
    hits = np.zeros((nchunks, n), dtype=np.int64)
    bad = np.zeros(nchunks, dtype=np.int64)
    for c in prange(nchunks):
        stepw = np.empty(n, dtype=np.float64)
        inc = np.empty(n, dtype=np.bool_)
        stop = min(samples, (c + 1) * CHUNK)
        for r in range(c * CHUNK, stop):
            _run_one(order, lptr, lidx, logw0, stepw, inc, replica_state(seed, r))
            for v in range(n):
                if inc[v]:
                    hits[c, v] += 1
                    for t in range(lptr[v], lptr[v + 1]):
                        if inc[lidx[t]]:
                            bad[c] += 1
    return hits.sum(axis=0), bad.sum()


@njit(cache=True, parallel=True)
def indicator_matrix(order, lptr, lidx, logw0, seed, start, count):
    n = order.shape[0]
    out = np.zeros((count, n), dtype=np.bool_)
    for r in prange(count):
        stepw = np.empty(n, dtype=np.float64)
        inc = np.empty(n, dtype=np.bool_)
        _run_one(order, lptr, lidx, logw0, stepw, inc, replica_state(seed, start + r))
        for v in range(n):
            out[r, v] = inc[v]
    return out


def left_csr(og):
    """Order array plus CSR arrays of left neighbourhoods (sorted by position), indexed by vertex id."""
    lengths = np.fromiter((len(x) for x in og.left), dtype=np.int64, count=og.n)
    lptr = np.zeros(og.n + 1, dtype=np.int64)
    np.cumsum(lengths, out=lptr[1:])
    lidx = np.fromiter((u for x in og.left for u in x), dtype=np.int64, count=int(lptr[-1]))
    return np.asarray(og.order, dtype=np.int64), lptr, lidx


def set_threads(jobs):
    if jobs is not None:
        numba.set_num_threads(max(1, min(int(jobs), numba.config.NUMBA_NUM_THREADS)))
