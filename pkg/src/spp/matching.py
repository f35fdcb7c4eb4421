"""Minimum-weight perfect matching on complete graphs.

``min_perfect_matching`` runs Edmonds' primal-dual blossom method in its
dense O(V^3) form (duals on vertices and blossoms, one best-edge slack per
top-level blossom). Costs are turned into weights ``big - cost``, with
``big`` large enough that a maximum-weight matching is always perfect.
The O(V) scans inside each step use numpy.

``brute_force_matching`` enumerates all ``(k-1)!!`` matchings and is only
meant as a test oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Hashable, Sequence

import numpy as np

BRUTE_FORCE_LIMIT = 12


@dataclass(frozen=True)
class MatchingInstance:
    vertices: tuple
    cost: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        cost = np.asarray(self.cost, dtype=float)
        k = len(self.vertices)
        if cost.shape != (k, k):
            raise ValueError(f"cost matrix shape {cost.shape} does not match {k} vertices")
        if k % 2:
            raise ValueError(f"perfect matching needs an even vertex count, got {k}")
        off = ~np.eye(k, dtype=bool)
        if not np.all(np.isfinite(cost[off])) or np.any(cost[off] < 0):
            raise ValueError("matching costs must be finite and non-negative")
        object.__setattr__(self, "cost", cost)


@dataclass(frozen=True)
class Matching:
    pairs: tuple[tuple[Hashable, Hashable], ...]
    total_cost: float


def _result(inst: MatchingInstance, mate: Sequence[int]) -> Matching:
    idx_pairs = sorted((a, b) for a, b in enumerate(mate) if a < b)
    # fixed summation order so two routes to the same matching give the same float
    total = math.fsum(inst.cost[a, b] for a, b in idx_pairs)
    pairs = tuple((inst.vertices[a], inst.vertices[b]) for a, b in idx_pairs)
    return Matching(pairs, total)


def brute_force_matching(inst: MatchingInstance) -> Matching:
    k = len(inst.vertices)
    if k > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force is capped at {BRUTE_FORCE_LIMIT} vertices, got {k}")
    cost = inst.cost
    best = [math.inf, None]

    def rec(free: list[int], acc: float, mate: list[int]):
        if not free:
            if acc < best[0]:
                best[0], best[1] = acc, mate.copy()
            return
        a = free[0]
        for j in range(1, len(free)):
            b = free[j]
            mate[a], mate[b] = b, a
            rec(free[1:j] + free[j + 1 :], acc + cost[a, b], mate)
        mate[a] = mate[free[1]] = -1

    if k:
        rec(list(range(k)), 0.0, [-1] * k)
    else:
        best[1] = []
    return _result(inst, best[1])


def min_perfect_matching(inst: MatchingInstance) -> Matching:
    k = len(inst.vertices)
    if k == 0:
        return Matching((), 0.0)
    if k == 2:
        return _result(inst, [1, 0])
    mate = _DenseBlossom(inst.cost).solve()
    return _result(inst, mate)


class _DenseBlossom:
    """Maximum-weight matching on a complete graph, dense formulation.

    Vertices are 1..n, blossoms n+1..2n, index 0 means "none". For a
    top-level blossom or vertex pair (a, b), ``eu[a, b], ev[a, b]`` is the
    underlying vertex edge between them with weight ``ew[a, b]``.
    Labels: 0 = outer (even), 1 = inner (odd), -1 = free.
    Vertex duals are stored doubled, so an edge is tight when
    ``lab[u] + lab[v] - 2 w(u, v)`` is zero.
    """

    def __init__(self, cost: np.ndarray):
        k = cost.shape[0]
        n = self.n = k
        size = 2 * n + 1
        max_cost = float(np.max(cost)) if k > 1 else 0.0
        big = (n / 2 + 1) * max_cost + 1.0
        self.tol = 1e-9 * max(max_cost, 1.0)

        ew = np.zeros((size, size))
        ew[1 : n + 1, 1 : n + 1] = big - cost
        np.fill_diagonal(ew, 0.0)
        self.ew = ew
        ar = np.arange(size)
        self.eu = np.zeros((size, size), dtype=np.int64)
        self.ev = np.zeros((size, size), dtype=np.int64)
        self.eu[1 : n + 1, 1 : n + 1] = ar[1 : n + 1, None]
        self.ev[1 : n + 1, 1 : n + 1] = ar[None, 1 : n + 1]

        self.lab = np.zeros(size)
        self.lab[1 : n + 1] = float(np.max(ew))
        self.match = np.zeros(size, dtype=np.int64)
        self.slack = np.zeros(size, dtype=np.int64)
        self.st = ar.copy()
        self.pa = np.zeros(size, dtype=np.int64)
        self.S = np.full(size, -1, dtype=np.int64)
        self.vis = np.zeros(size, dtype=np.int64)
        self.stamp = 0
        self.flower: list[list[int]] = [[] for _ in range(size)]
        self.flower_from = np.zeros((size, n + 1), dtype=np.int64)
        for u in range(1, n + 1):
            self.flower_from[u, u] = u
        self.n_x = n
        self.queue: list[int] = []
        self.qhead = 0

    def delta(self, a, b):
        """Doubled reduced cost of the representative edge between a and b."""
        return self.lab[self.eu[a, b]] + self.lab[self.ev[a, b]] - 2.0 * self.ew[a, b]

    def solve(self) -> list[int]:
        while self._augment_once():
            pass
        mate = [int(self.match[u]) - 1 for u in range(1, self.n + 1)]
        if any(m < 0 for m in mate):
            raise RuntimeError("blossom matcher ended with an unmatched vertex")
        return mate

    # -- slack bookkeeping -------------------------------------------------

    def _update_slack_many(self, u: int, xs: np.ndarray):
        """For each top-level x in xs, keep the better of slack[x] and u."""
        if xs.size == 0:
            return
        cur = self.slack[xs]
        new = self.delta(u, xs)
        old = self.delta(cur, xs)
        better = (cur == 0) | (new < old)
        self.slack[xs[better]] = u

    def _set_slack(self, x: int):
        n = self.n
        us = np.arange(1, n + 1)
        stu = self.st[1 : n + 1]
        ok = (stu != x) & (self.S[stu] == 0)
        cand = us[ok]
        if cand.size == 0:
            self.slack[x] = 0
            return
        d = self.delta(cand, np.full(cand.size, x))
        self.slack[x] = cand[int(np.argmin(d))]

    def _q_push(self, x: int):
        stack = [x]
        while stack:
            y = stack.pop()
            if y <= self.n:
                self.queue.append(y)
            else:
                stack.extend(reversed(self.flower[y]))

    def _set_st(self, x: int, b: int):
        stack = [x]
        while stack:
            y = stack.pop()
            self.st[y] = b
            if y > self.n:
                stack.extend(self.flower[y])

    # -- blossom structure -------------------------------------------------

    def _get_pr(self, b: int, xr: int) -> int:
        fl = self.flower[b]
        pr = fl.index(xr)
        if pr % 2 == 1:
            fl[1:] = fl[1:][::-1]
            return len(fl) - pr
        return pr

    def _set_match(self, u: int, v: int):
        self.match[u] = self.ev[u, v]
        if u > self.n:
            xr = int(self.flower_from[u, self.eu[u, v]])
            pr = self._get_pr(u, xr)
            fl = self.flower[u]
            for i in range(pr):
                self._set_match(fl[i], fl[i ^ 1])
            self._set_match(xr, v)
            self.flower[u] = fl[pr:] + fl[:pr]

    def _augment(self, u: int, v: int):
        while True:
            xnv = int(self.st[self.match[u]])
            self._set_match(u, v)
            if not xnv:
                return
            self._set_match(xnv, int(self.st[self.pa[xnv]]))
            u, v = int(self.st[self.pa[xnv]]), xnv

    def _get_lca(self, u: int, v: int) -> int:
        self.stamp += 1
        t = self.stamp
        while u or v:
            if u:
                if self.vis[u] == t:
                    return u
                self.vis[u] = t
                u = int(self.st[self.match[u]])
                if u:
                    u = int(self.st[self.pa[u]])
            u, v = v, u
        return 0

    def _add_blossom(self, u: int, lca: int, v: int):
        n = self.n
        b = n + 1
        while b <= self.n_x and self.st[b]:
            b += 1
        if b > self.n_x:
            self.n_x += 1
        self.lab[b] = 0.0
        self.S[b] = 0
        self.match[b] = self.match[lca]
        fl = [lca]
        x = u
        while x != lca:
            y = int(self.st[self.match[x]])
            fl += [x, y]
            self._q_push(y)
            x = int(self.st[self.pa[y]])
        fl[1:] = fl[1:][::-1]
        x = v
        while x != lca:
            y = int(self.st[self.match[x]])
            fl += [x, y]
            self._q_push(y)
            x = int(self.st[self.pa[y]])
        self.flower[b] = fl
        self._set_st(b, b)

        nx = self.n_x
        cols = np.arange(1, nx + 1)
        self.ew[b, 1 : nx + 1] = 0.0
        self.ew[1 : nx + 1, b] = 0.0
        self.flower_from[b, :] = 0
        for xs in fl:
            take = (self.ew[b, cols] == 0) | (self.delta(xs, cols) < self.delta(b, cols))
            c = cols[take]
            self.eu[b, c] = self.eu[xs, c]
            self.ev[b, c] = self.ev[xs, c]
            self.ew[b, c] = self.ew[xs, c]
            self.eu[c, b] = self.eu[c, xs]
            self.ev[c, b] = self.ev[c, xs]
            self.ew[c, b] = self.ew[c, xs]
            has = self.flower_from[xs, 1:] != 0
            self.flower_from[b, 1:][has] = xs
        self._set_slack(b)

    def _expand_blossom(self, b: int):
        fl = self.flower[b]
        for x in fl:
            self._set_st(x, x)
        xr = int(self.flower_from[b, self.eu[b, self.pa[b]]])
        pr = self._get_pr(b, xr)
        fl = self.flower[b]
        for i in range(0, pr, 2):
            xs, xns = fl[i], fl[i + 1]
            self.pa[xs] = self.eu[xns, xs]
            self.S[xs] = 1
            self.S[xns] = 0
            self.slack[xs] = 0
            self._set_slack(xns)
            self._q_push(xns)
        self.S[xr] = 1
        self.pa[xr] = self.pa[b]
        for xs in fl[pr + 1 :]:
            self.S[xs] = -1
            self._set_slack(xs)
        self.st[b] = 0

    def _on_found_edge(self, eu: int, ev: int) -> bool:
        u, v = int(self.st[eu]), int(self.st[ev])
        if self.S[v] == -1:
            self.pa[v] = eu
            self.S[v] = 1
            nu = int(self.st[self.match[v]])
            self.slack[v] = self.slack[nu] = 0
            self.S[nu] = 0
            self._q_push(nu)
        elif self.S[v] == 0:
            lca = self._get_lca(u, v)
            if not lca:
                self._augment(u, v)
                self._augment(v, u)
                return True
            self._add_blossom(u, lca, v)
        return False

    # -- main loop ---------------------------------------------------------

    def _scan(self, u: int) -> bool:
        """Look at every edge out of outer vertex u; True once an augmentation happened."""
        n = self.n
        vs = np.arange(1, n + 1)
        d = self.lab[u] + self.lab[1 : n + 1] - 2.0 * self.ew[u, 1 : n + 1]
        tight = np.flatnonzero((d <= self.tol) & (vs != u)) + 1
        lo = 1
        for v in list(tight) + [n + 1]:
            v = int(v)
            # slack updates for the non-tight run [lo, v)
            if v > lo:
                run = self.st[lo:v]
                run = np.unique(run[run != self.st[u]])
                self._update_slack_many(u, run)
            lo = v + 1
            if v > n:
                break
            if self.st[u] != self.st[v]:
                if self._on_found_edge(u, v):
                    return True
        return False

    def _augment_once(self) -> bool:
        nx = self.n_x
        self.S[1 : nx + 1] = -1
        self.slack[1 : nx + 1] = 0
        self.queue, self.qhead = [], 0
        for x in range(1, nx + 1):
            if self.st[x] == x and not self.match[x]:
                self.pa[x] = 0
                self.S[x] = 0
                self._q_push(x)
        if not self.queue:
            return False
        n = self.n
        while True:
            while self.qhead < len(self.queue):
                u = self.queue[self.qhead]
                self.qhead += 1
                if self.S[self.st[u]] == 1:
                    continue
                if self._scan(u):
                    return True

            nx = self.n_x
            xs = np.arange(1, nx + 1)
            top = self.st[1 : nx + 1] == xs
            d = math.inf
            blos = xs[(xs > n) & top & (self.S[1 : nx + 1] == 1)]
            if blos.size:
                d = min(d, float(np.min(self.lab[blos])) / 2.0)
            has_slack = top & (self.slack[1 : nx + 1] != 0)
            cand = xs[has_slack]
            if cand.size:
                sd = self.delta(self.slack[cand], cand)
                lab_s = self.S[cand]
                free = sd[lab_s == -1]
                outer = sd[lab_s == 0]
                if free.size:
                    d = min(d, float(np.min(free)))
                if outer.size:
                    d = min(d, float(np.min(outer)) / 2.0)
            d = max(d, 0.0)

            su = self.S[self.st[1 : n + 1]]
            lab_v = self.lab[1 : n + 1]
            if np.any(lab_v[su == 0] <= d):
                return False
            lab_v[su == 0] -= d
            lab_v[su == 1] += d
            bs = xs[(xs > n) & top]
            if bs.size:
                sb = self.S[bs]
                self.lab[bs[sb == 0]] += 2.0 * d
                self.lab[bs[sb == 1]] -= 2.0 * d

            self.queue, self.qhead = [], 0
            if cand.size:
                sd = self.delta(self.slack[cand], cand)
                hits = cand[sd <= self.tol]
                for x in hits:
                    x = int(x)
                    sx = int(self.slack[x])
                    if (
                        self.st[x] == x
                        and sx
                        and self.st[sx] != x
                        and self.delta(sx, x) <= self.tol
                    ):
                        if self._on_found_edge(int(self.eu[sx, x]), int(self.ev[sx, x])):
                            return True
            for b in range(n + 1, self.n_x + 1):
                if self.st[b] == b and self.S[b] == 1 and self.lab[b] <= self.tol:
                    self._expand_blossom(b)
