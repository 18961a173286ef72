"""Hot numeric kernels: pairwise dominance, front sorting, Monte Carlo counting.

Every kernel has a pure-numpy implementation and, when numba is importable,
a compiled twin.  The compiled path is used by default; set the environment
variable ``MOMO_DISABLE_NUMBA=1`` before import to force the numpy fallback
(``benchmarks/bench_kernels.py`` times both paths side by side).

All kernels operate on minimization-oriented objective matrices.  Constraint
handling is folded in through a per-row infeasibility degree: degree 0 means
feasible, and a feasible row constraint-dominates any infeasible one.
"""

from __future__ import annotations

import os

import numpy as np


def _env_flag(name: str) -> bool:
    return os.environ.get(name, "").strip().lower() in {"1", "true", "yes", "on"}


try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba installed
    HAVE_NUMBA = False

    def njit(*args, **kwargs):  # type: ignore[misc]
        def wrap(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return wrap


USE_NUMBA = HAVE_NUMBA and not _env_flag("MOMO_DISABLE_NUMBA")

_CHUNK = 2048  # sample chunk for the broadcasting fallbacks, keeps memory flat


# ---------------------------------------------------------------------------
# pairwise constraint-dominance matrix
# ---------------------------------------------------------------------------

def _domination_matrix_np(F: np.ndarray, degree: np.ndarray) -> np.ndarray:
    feas = degree == 0.0
    both_feas = feas[:, None] & feas[None, :]
    leq = (F[:, None, :] <= F[None, :, :]).all(axis=2)
    lt = (F[:, None, :] < F[None, :, :]).any(axis=2)
    pareto = leq & lt
    out = np.where(both_feas, pareto, False)
    # feasible beats infeasible; two infeasibles compare by violation degree
    out |= feas[:, None] & ~feas[None, :]
    out |= (~feas[:, None] & ~feas[None, :]) & (degree[:, None] < degree[None, :])
    np.fill_diagonal(out, False)
    return out


@njit(cache=True)
def _dominates_rows(F, degree, i, j):  # pragma: no cover - compiled
    if degree[i] == 0.0 and degree[j] == 0.0:
        better = False
        for k in range(F.shape[1]):
            if F[i, k] > F[j, k]:
                return False
            if F[i, k] < F[j, k]:
                better = True
        return better
    if degree[i] == 0.0:
        return True
    if degree[j] == 0.0:
        return False
    return degree[i] < degree[j]


@njit(cache=True)
def _domination_matrix_nb(F, degree):  # pragma: no cover - compiled
    n = F.shape[0]
    out = np.zeros((n, n), dtype=np.bool_)
    for i in range(n):
        for j in range(n):
            if i != j:
                out[i, j] = _dominates_rows(F, degree, i, j)
    return out


def domination_matrix(F: np.ndarray, degree: np.ndarray | None = None) -> np.ndarray:
    """Boolean matrix D with D[i, j] true iff row i constraint-dominates row j."""
    F = np.ascontiguousarray(F, dtype=np.float64)
    if degree is None:
        degree = np.zeros(F.shape[0])
    degree = np.ascontiguousarray(degree, dtype=np.float64)
    if USE_NUMBA:
        return _domination_matrix_nb(F, degree)
    return _domination_matrix_np(F, degree)


# ---------------------------------------------------------------------------
# non-dominated mask and fast non-dominated sorting
# ---------------------------------------------------------------------------

def _non_dominated_mask_np(F: np.ndarray, degree: np.ndarray) -> np.ndarray:
    return ~_domination_matrix_np(F, degree).any(axis=0)


@njit(cache=True)
def _non_dominated_mask_nb(F, degree):  # pragma: no cover - compiled
    n = F.shape[0]
    mask = np.ones(n, dtype=np.bool_)
    for j in range(n):
        for i in range(n):
            if i != j and _dominates_rows(F, degree, i, j):
                mask[j] = False
                break
    return mask


def non_dominated_mask(F: np.ndarray, degree: np.ndarray | None = None) -> np.ndarray:
    """Mask of rows not constraint-dominated by any other row."""
    F = np.ascontiguousarray(F, dtype=np.float64)
    if degree is None:
        degree = np.zeros(F.shape[0])
    degree = np.ascontiguousarray(degree, dtype=np.float64)
    if USE_NUMBA:
        return _non_dominated_mask_nb(F, degree)
    return _non_dominated_mask_np(F, degree)


def _front_ranks_np(F: np.ndarray, degree: np.ndarray) -> np.ndarray:
    n = F.shape[0]
    dom = _domination_matrix_np(F, degree)
    n_dominators = dom.sum(axis=0).astype(np.int64)
    ranks = np.full(n, -1, dtype=np.int64)
    current = np.flatnonzero(n_dominators == 0)
    r = 0
    while current.size:
        ranks[current] = r
        n_dominators -= dom[current].sum(axis=0)
        n_dominators[current] = -1
        current = np.flatnonzero(n_dominators == 0)
        r += 1
    return ranks


@njit(cache=True)
def _front_ranks_nb(F, degree):  # pragma: no cover - compiled
    n = F.shape[0]
    dom = _domination_matrix_nb(F, degree)
    n_dominators = np.zeros(n, dtype=np.int64)
    for j in range(n):
        c = 0
        for i in range(n):
            if dom[i, j]:
                c += 1
        n_dominators[j] = c
    ranks = np.full(n, -1, dtype=np.int64)
    current = np.empty(n, dtype=np.int64)
    csize = 0
    for j in range(n):
        if n_dominators[j] == 0:
            current[csize] = j
            csize += 1
    r = 0
    nxt = np.empty(n, dtype=np.int64)
    while csize > 0:
        nsize = 0
        for ci in range(csize):
            ranks[current[ci]] = r
        for j in range(n):
            if ranks[j] >= 0 or n_dominators[j] < 0:
                continue
            drop = 0
            for ci in range(csize):
                if dom[current[ci], j]:
                    drop += 1
            n_dominators[j] -= drop
            if n_dominators[j] == 0:
                nxt[nsize] = j
                nsize += 1
        for ci in range(nsize):
            current[ci] = nxt[ci]
        csize = nsize
        r += 1
    return ranks


def front_ranks(F: np.ndarray, degree: np.ndarray | None = None) -> np.ndarray:
    """0-based Pareto front index per row (0 = non-dominated front)."""
    F = np.ascontiguousarray(F, dtype=np.float64)
    if F.shape[0] == 0:
        return np.empty(0, dtype=np.int64)
    if degree is None:
        degree = np.zeros(F.shape[0])
    degree = np.ascontiguousarray(degree, dtype=np.float64)
    if USE_NUMBA:
        return _front_ranks_nb(F, degree)
    return _front_ranks_np(F, degree)


# ---------------------------------------------------------------------------
# Monte Carlo helpers: sample domination tests
# ---------------------------------------------------------------------------

def _any_dominating_np(P: np.ndarray, S: np.ndarray) -> np.ndarray:
    out = np.empty(S.shape[0], dtype=np.bool_)
    for start in range(0, S.shape[0], _CHUNK):
        chunk = S[start : start + _CHUNK]
        out[start : start + _CHUNK] = (P[:, None, :] <= chunk[None, :, :]).all(axis=2).any(axis=0)
    return out


@njit(cache=True)
def _any_dominating_nb(P, S):  # pragma: no cover - compiled
    ns = S.shape[0]
    n, m = P.shape
    out = np.zeros(ns, dtype=np.bool_)
    for s in range(ns):
        for i in range(n):
            ok = True
            for k in range(m):
                if P[i, k] > S[s, k]:
                    ok = False
                    break
            if ok:
                out[s] = True
                break
    return out


def any_dominating(P: np.ndarray, S: np.ndarray) -> np.ndarray:
    """For each sample row, whether some point of ``P`` weakly dominates it."""
    P = np.ascontiguousarray(P, dtype=np.float64)
    S = np.ascontiguousarray(S, dtype=np.float64)
    if USE_NUMBA:
        return _any_dominating_nb(P, S)
    return _any_dominating_np(P, S)


def _mc_attribution_np(P: np.ndarray, S: np.ndarray, weights: np.ndarray) -> np.ndarray:
    out = np.zeros(P.shape[0])
    for start in range(0, S.shape[0], _CHUNK):
        chunk = S[start : start + _CHUNK]
        dom = (P[:, None, :] <= chunk[None, :, :]).all(axis=2)  # (n, chunk)
        counts = dom.sum(axis=0)
        out += dom @ weights[counts]
    return out


@njit(cache=True)
def _mc_attribution_nb(P, S, weights):  # pragma: no cover - compiled
    n, m = P.shape
    out = np.zeros(n)
    idx = np.empty(n, dtype=np.int64)
    for s in range(S.shape[0]):
        c = 0
        for i in range(n):
            ok = True
            for k in range(m):
                if P[i, k] > S[s, k]:
                    ok = False
                    break
            if ok:
                idx[c] = i
                c += 1
        if c > 0:
            w = weights[c]
            if w != 0.0:
                for j in range(c):
                    out[idx[j]] += w
    return out


def mc_attribution(P: np.ndarray, S: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Per-point accumulated weight over dominated samples.

    A sample dominated by exactly ``c`` points adds ``weights[c]`` to each of
    those points; ``weights[0]`` is ignored.  This is the shared-volume
    attribution used by hypervolume-estimation fitness.
    """
    P = np.ascontiguousarray(P, dtype=np.float64)
    S = np.ascontiguousarray(S, dtype=np.float64)
    weights = np.ascontiguousarray(weights, dtype=np.float64)
    if weights.shape[0] != P.shape[0] + 1:
        raise ValueError("weights must have length len(P) + 1")
    if USE_NUMBA:
        return _mc_attribution_nb(P, S, weights)
    return _mc_attribution_np(P, S, weights)


# ---------------------------------------------------------------------------
# grid-based environmental selection (grid rank / crowding / point distance)
# ---------------------------------------------------------------------------

def _grea_select_py(G: np.ndarray, gcpd: np.ndarray, need: int) -> np.ndarray:
    n, m = G.shape
    GR = G.sum(axis=1).astype(np.int64)
    GCD = np.zeros(n, dtype=np.int64)
    PD = np.zeros(n, dtype=np.int64)
    alive = np.ones(n, dtype=bool)
    out = np.empty(need, dtype=np.int64)
    for t in range(need):
        best = -1
        for i in range(n):
            if not alive[i]:
                continue
            if best < 0:
                best = i
                continue
            if GR[i] < GR[best] or (
                GR[i] == GR[best]
                and (GCD[i] < GCD[best] or (GCD[i] == GCD[best] and gcpd[i] < gcpd[best]))
            ):
                best = i
        out[t] = best
        alive[best] = False
        diff = np.abs(G - G[best]).sum(axis=1)
        q_leq = (G[best] <= G).all(axis=1)
        for p in range(n):
            if not alive[p]:
                continue
            gd = diff[p]
            if gd < m:
                GCD[p] += m - gd
            if gd == 0:
                GR[p] += m + 2
            elif q_leq[p]:  # grid-dominated by the pick (gd > 0 here)
                GR[p] += m
            elif gd < m:
                pd = m - gd
                if PD[p] < pd:
                    GR[p] += pd - PD[p]
                    PD[p] = pd
                    p_leq = (G[p] <= G).all(axis=1)
                    for r in range(n):
                        if not alive[r] or r == p:
                            continue
                        # punish only neighbours' grid-dominated region not
                        # already adjusted through the pick itself
                        if p_leq[r] and diff[r] >= m and not q_leq[r]:
                            if PD[r] < pd:
                                GR[r] += pd - PD[r]
                                PD[r] = pd
    return out


@njit(cache=True)
def _grea_select_nb(G, gcpd, need):  # pragma: no cover - compiled
    n, m = G.shape
    GR = np.zeros(n, dtype=np.int64)
    for i in range(n):
        s = 0
        for k in range(m):
            s += G[i, k]
        GR[i] = s
    GCD = np.zeros(n, dtype=np.int64)
    PD = np.zeros(n, dtype=np.int64)
    alive = np.ones(n, dtype=np.bool_)
    out = np.empty(need, dtype=np.int64)
    diff = np.empty(n, dtype=np.int64)
    q_leq = np.empty(n, dtype=np.bool_)
    for t in range(need):
        best = -1
        for i in range(n):
            if not alive[i]:
                continue
            if best < 0:
                best = i
            elif GR[i] < GR[best]:
                best = i
            elif GR[i] == GR[best]:
                if GCD[i] < GCD[best]:
                    best = i
                elif GCD[i] == GCD[best] and gcpd[i] < gcpd[best]:
                    best = i
        out[t] = best
        alive[best] = False
        for p in range(n):
            d = 0
            leq = True
            for k in range(m):
                dd = G[p, k] - G[best, k]
                if dd < 0:
                    d -= dd
                    leq = False
                else:
                    d += dd
            diff[p] = d
            q_leq[p] = leq
        for p in range(n):
            if not alive[p]:
                continue
            gd = diff[p]
            if gd < m:
                GCD[p] += m - gd
            if gd == 0:
                GR[p] += m + 2
            elif q_leq[p]:
                GR[p] += m
            elif gd < m:
                pd = m - gd
                if PD[p] < pd:
                    GR[p] += pd - PD[p]
                    PD[p] = pd
                    for r in range(n):
                        if not alive[r] or r == p:
                            continue
                        if diff[r] >= m and not q_leq[r]:
                            p_leq = True
                            for k in range(m):
                                if G[p, k] > G[r, k]:
                                    p_leq = False
                                    break
                            if p_leq and PD[r] < pd:
                                GR[r] += pd - PD[r]
                                PD[r] = pd
    return out


def grea_select(G: np.ndarray, gcpd: np.ndarray, need: int) -> np.ndarray:
    """Iterative grid-based pick of ``need`` members from a critical front.

    ``G`` holds integer grid coordinates, ``gcpd`` the in-cell point distance.
    Selection is lexicographic on (grid rank, grid crowding, point distance),
    with rank punishments applied to the pick's cell mates, grid-dominated
    region and neighbourhood after every pick.
    """
    G = np.ascontiguousarray(G, dtype=np.int64)
    gcpd = np.ascontiguousarray(gcpd, dtype=np.float64)
    if not 0 <= need <= G.shape[0]:
        raise ValueError("need out of range")
    if need == 0:
        return np.empty(0, dtype=np.int64)
    if USE_NUMBA:
        return _grea_select_nb(G, gcpd, need)
    return _grea_select_py(G, gcpd, need)


# Named implementation pairs for the benchmark harness.
IMPLEMENTATIONS = {
    "domination_matrix": {"numpy": _domination_matrix_np, "numba": _domination_matrix_nb if HAVE_NUMBA else None},
    "non_dominated_mask": {"numpy": _non_dominated_mask_np, "numba": _non_dominated_mask_nb if HAVE_NUMBA else None},
    "front_ranks": {"numpy": _front_ranks_np, "numba": _front_ranks_nb if HAVE_NUMBA else None},
    "any_dominating": {"numpy": _any_dominating_np, "numba": _any_dominating_nb if HAVE_NUMBA else None},
    "mc_attribution": {"numpy": _mc_attribution_np, "numba": _mc_attribution_nb if HAVE_NUMBA else None},
    "grea_select": {"numpy": _grea_select_py, "numba": _grea_select_nb if HAVE_NUMBA else None},
}
