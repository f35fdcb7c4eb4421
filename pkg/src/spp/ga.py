"""Genetic-algorithm baseline with augmented chromosomes.

A chromosome is a permutation ``c`` of subpath indices plus a direction
bit string ``d``; ``d[k] = 0`` means subpath ``c[k]`` is left through its
head (its end point, i.e. traversed forward), ``d[k] = 1`` through its tail.
Direction bits travel with their genes under every operator.

The whole population is evolved as ``(pop, n)`` arrays; every operator is
vectorized over the rows it applies to.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, field

import numpy as np

from .solution import Orientation, SppSolution, connector_matrix, solution_from_order
from .workspace import Workspace


@dataclass
class AugmentedChromosome:
    c: np.ndarray
    d: np.ndarray

    def __post_init__(self):
        self.c = np.asarray(self.c, dtype=np.int64)
        self.d = np.asarray(self.d, dtype=np.int8)
        n = self.c.size
        if self.d.shape != (n,) or not np.array_equal(np.sort(self.c), np.arange(n)):
            raise ValueError("c must be a permutation and d a bit string of the same length")
        if np.any((self.d != 0) & (self.d != 1)):
            raise ValueError("d must contain only 0 and 1")

    def order(self) -> list[tuple[int, Orientation]]:
        return [
            (int(i), Orientation.REVERSE if b else Orientation.FORWARD)
            for i, b in zip(self.c, self.d)
        ]


def default_population(n: int) -> int:
    return 100 if n <= 20 else 200 if n <= 50 else 300


def default_max_generations(n: int) -> int:
    return 150 if n <= 20 else 300 if n <= 50 else 500


@dataclass
class GaConfig:
    population_size: int = 100
    crossover_rate: float = 0.5
    inversion_rate: float = 0.25
    rotation_rate: float = 0.25
    mutation_rate: float = 0.5
    reversal_rate: float = 0.5
    max_generations: int = 150
    stagnation_window: int = 50
    tournament_size: int = 2
    seed: int = 0

    def __post_init__(self):
        for name in ("crossover_rate", "inversion_rate", "rotation_rate", "mutation_rate", "reversal_rate"):
            rate = getattr(self, name)
            if not 0.0 <= rate <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {rate}")
        if self.population_size < 2:
            raise ValueError("population_size must be at least 2")
        if self.max_generations < 1 or self.stagnation_window < 1:
            raise ValueError("generation limits must be positive")

    @classmethod
    def for_size(cls, n: int, **overrides) -> GaConfig:
        base = dict(
            population_size=default_population(n),
            max_generations=default_max_generations(n),
        )
        base.update(overrides)
        return cls(**base)


@dataclass
class GaStats:
    best: list[float] = field(default_factory=list)
    mean: list[float] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def generations(self) -> int:
        return len(self.best) - 1

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["generation", "best", "mean"])
        for k, (b, m) in enumerate(zip(self.best, self.mean)):
            writer.writerow([k, f"{b:.9g}", f"{m:.9g}"])
        return buf.getvalue()


class _Evaluator:
    def __init__(self, ws: Workspace):
        self.conn = connector_matrix(ws)
        self.arc_total = float(np.sum(ws.arc_lengths()))

    def lengths(self, C: np.ndarray, D: np.ndarray) -> np.ndarray:
        exits = 2 * C + D
        entries = np.roll(exits, -1, axis=1)
        return self.arc_total + self.conn[exits, entries].sum(axis=1)


def fitness(chrom: AugmentedChromosome, ws: Workspace) -> float:
    """Closed tour length of the decoded chromosome, in workspace units."""
    ev = _Evaluator(ws)
    return float(ev.lengths(chrom.c[None, :], chrom.d[None, :].astype(np.int64))[0])


# -- operators (rows of C/D are modified in place on the selected rows) -----


def _segments(rng, rows: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    a = rng.integers(0, n, size=rows)
    b = rng.integers(0, n, size=rows)
    return np.minimum(a, b), np.maximum(a, b)


def _permute_rows(C, D, sel, idx):
    r = sel[:, None]
    C[sel] = C[r, idx]
    D[sel] = D[r, idx]


def order_crossover(rng, P1c, P1d, P2c, P2d):
    """OX: keep a slice of parent 1, fill the rest with parent 2's order from the slice end."""
    rows, n = P1c.shape
    lo, hi = _segments(rng, rows, n)
    hi = hi + 1  # slice is [lo, hi)
    pos = np.arange(n)
    in_slice = (pos >= lo[:, None]) & (pos < hi[:, None])

    gene_taken = np.zeros((rows, n), dtype=bool)
    r_idx = np.repeat(np.arange(rows), n).reshape(rows, n)
    gene_taken[r_idx[in_slice], P1c[in_slice]] = True

    # parent-2 genes by gene id, so the direction bit follows the gene
    bit_of_gene = np.empty_like(P2d)
    bit_of_gene[r_idx, P2c] = P2d

    walk = (hi[:, None] + pos) % n  # positions in fill order, starting after the slice
    rolled = np.take_along_axis(P2c, walk, axis=1)
    free_pos = ~np.take_along_axis(in_slice, walk, axis=1)
    free_gene = ~gene_taken[r_idx, rolled]

    Cc = np.where(in_slice, P1c, 0)
    Dc = np.where(in_slice, P1d, 0)
    target = walk[free_pos]
    rows_t = r_idx[free_pos]
    genes = rolled[free_gene]
    Cc[rows_t, target] = genes
    Dc[rows_t, target] = bit_of_gene[r_idx[free_gene], genes]
    return Cc, Dc


def inversion(rng, C, D, sel):
    if sel.size == 0:
        return
    n = C.shape[1]
    lo, hi = _segments(rng, sel.size, n)
    pos = np.arange(n)
    inside = (pos >= lo[:, None]) & (pos <= hi[:, None])
    idx = np.where(inside, lo[:, None] + hi[:, None] - pos, pos)
    _permute_rows(C, D, sel, idx)


def rotation(rng, C, D, sel):
    if sel.size == 0:
        return
    n = C.shape[1]
    lo, hi = _segments(rng, sel.size, n)
    width = hi - lo + 1
    shift = rng.integers(0, n, size=sel.size) % width
    pos = np.arange(n)
    inside = (pos >= lo[:, None]) & (pos <= hi[:, None])
    idx = np.where(inside, lo[:, None] + (pos - lo[:, None] + shift[:, None]) % width[:, None], pos)
    _permute_rows(C, D, sel, idx)


def swap_mutation(rng, C, D, sel):
    if sel.size == 0:
        return
    n = C.shape[1]
    i = rng.integers(0, n, size=sel.size)
    j = rng.integers(0, n, size=sel.size)
    for A in (C, D):
        ai, aj = A[sel, i].copy(), A[sel, j].copy()
        A[sel, i], A[sel, j] = aj, ai


def subpath_reversal(rng, C, D, sel):
    """Flip the direction bit of one random gene plus each other gene with probability 1/n."""
    if sel.size == 0:
        return
    n = C.shape[1]
    flip = rng.random((sel.size, n)) < 1.0 / n
    flip[np.arange(sel.size), rng.integers(0, n, size=sel.size)] = True
    D[sel] ^= flip.astype(D.dtype)


def _tournament(rng, fit, count, size):
    picks = rng.integers(0, fit.size, size=(count, size))
    return picks[np.arange(count), np.argmin(fit[picks], axis=1)]


def run_ga(ws: Workspace, cfg: GaConfig) -> tuple[SppSolution, GaStats]:
    t0 = time.perf_counter()
    rng = np.random.default_rng(cfg.seed)
    n, pop = ws.n, cfg.population_size
    ev = _Evaluator(ws)

    C = rng.permuted(np.tile(np.arange(n), (pop, 1)), axis=1)
    D = rng.integers(0, 2, size=(pop, n))
    fit = ev.lengths(C, D)
    stats = GaStats()
    best = int(np.argmin(fit))
    best_c, best_d, best_fit = C[best].copy(), D[best].copy(), float(fit[best])
    stats.best.append(best_fit)
    stats.mean.append(float(fit.mean()))
    stale = 0

    for _ in range(cfg.max_generations):
        kids = pop - 1
        pa = _tournament(rng, fit, kids, cfg.tournament_size)
        pb = _tournament(rng, fit, kids, cfg.tournament_size)
        Cn, Dn = C[pa].copy(), D[pa].copy()

        cross = np.flatnonzero(rng.random(kids) < cfg.crossover_rate)
        if cross.size:
            Cn[cross], Dn[cross] = order_crossover(rng, C[pa[cross]], D[pa[cross]], C[pb[cross]], D[pb[cross]])
        inversion(rng, Cn, Dn, np.flatnonzero(rng.random(kids) < cfg.inversion_rate))
        rotation(rng, Cn, Dn, np.flatnonzero(rng.random(kids) < cfg.rotation_rate))
        swap_mutation(rng, Cn, Dn, np.flatnonzero(rng.random(kids) < cfg.mutation_rate))
        subpath_reversal(rng, Cn, Dn, np.flatnonzero(rng.random(kids) < cfg.reversal_rate))

        # elitism: the best individual so far survives unchanged
        C = np.vstack([best_c[None, :], Cn])
        D = np.vstack([best_d[None, :], Dn])
        fit = ev.lengths(C, D)
        k = int(np.argmin(fit))
        if fit[k] < best_fit:
            best_c, best_d, best_fit = C[k].copy(), D[k].copy(), float(fit[k])
            stale = 0
        else:
            stale += 1
        stats.best.append(best_fit)
        stats.mean.append(float(fit.mean()))
        if stale >= cfg.stagnation_window:
            break

    chrom = AugmentedChromosome(best_c, best_d)
    solution = solution_from_order(ws, chrom.order())
    stats.wall_time = time.perf_counter() - t0
    return solution, stats
