"""
Gripenberg branch-and-bound over graph-feasible walks.

Walks are grown level by level from every node. A walk whose smallest
prefix rate min_k ||A_prefix||^(1/k) is at most lb + delta is dropped; when
nothing is left the bracket closes at [lb, lb + delta]. Otherwise the
surviving frontier bounds the constrained JSR from above.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from ..automaton.graph import ConstraintGraph
from ..config import settings
from ..config.defaults import (
    BALANCING_ITERATIONS,
    DEFAULT_JSR_PARAMS,
    NORM_BALANCED,
    NORM_SPECTRAL,
    SUPPORTED_NORMS,
)
from ..dynamics.closed_loop import ClosedLoopSet
from ..errors import AlphabetMismatch
from .bounds import Bounds, canonical_rotation, periodic_rates

logger = logging.getLogger(__name__)

# Smallest batch handed to one worker
MIN_CHUNK = 256


@dataclass
class _Frontier:
    """One level of walks stored as parallel arrays."""
    starts: np.ndarray
    ends: np.ndarray
    labels: List[str]
    products: np.ndarray
    mins: np.ndarray

    def __len__(self) -> int:
        return len(self.labels)

    def take(self, index) -> "_Frontier":
        index = np.asarray(index, dtype=int)
        return _Frontier(
            self.starts[index],
            self.ends[index],
            [self.labels[i] for i in index],
            self.products[index],
            self.mins[index],
        )

    @staticmethod
    def concat(parts: Sequence["_Frontier"], d: int) -> "_Frontier":
        parts = [p for p in parts if len(p)]
        if not parts:
            return _Frontier(np.empty(0, int), np.empty(0, int), [], np.empty((0, d, d)), np.empty(0))
        return _Frontier(
            np.concatenate([p.starts for p in parts]),
            np.concatenate([p.ends for p in parts]),
            [label for p in parts for label in p.labels],
            np.concatenate([p.products for p in parts]),
            np.concatenate([p.mins for p in parts]),
        )


def balanced_weights(g: ConstraintGraph, cl: ClosedLoopSet, iterations: int = BALANCING_ITERATIONS) -> List[np.ndarray]:
    """Per-node factors W_u with W_u^T W_u = P_u.

    P is the damped, normalized power iterate of the quadratic transfer map
    T(P)_u = sum over edges u --c--> v of A_c^T P_v A_c.
    """
    d = cl.dimension
    n = len(g)
    eps = 1e-8
    P = [np.eye(d) for _ in range(n)]
    for _ in range(iterations):
        Q = [eps * np.eye(d) for _ in range(n)]
        for u, c, v in g.edges:
            A = cl[c]
            Q[u] = Q[u] + A.T @ P[v] @ A
        scale = max(np.linalg.norm(q, ord=2) for q in Q)
        P = [0.5 * p + 0.5 * (q / scale) for p, q in zip(P, Q)]
        top = max(np.linalg.norm(p, ord=2) for p in P)
        P = [p / top for p in P]

    weights = []
    for p in P:
        p = 0.5 * (p + p.T) + eps * np.eye(d)
        weights.append(np.linalg.cholesky(p).T)
    return weights


def _edge_matrices(
    g: ConstraintGraph,
    cl: ClosedLoopSet,
    weights: Optional[List[np.ndarray]],
) -> Dict[Tuple[int, str], np.ndarray]:
    """W_v A_c W_u^{-1} for every edge u --c--> v."""
    if weights is None:
        return {(u, c): cl[c] for u, c, _ in g.edges}
    inverses = [np.linalg.inv(w) for w in weights]
    return {(u, c): weights[v] @ cl[c] @ inverses[u] for u, c, v in g.edges}


def _expand(
    chunk: _Frontier,
    g: ConstraintGraph,
    edges: Dict[Tuple[int, str], np.ndarray],
    depth: int,
) -> _Frontier:
    """Children of every walk in ``chunk``, in (walk, symbol) order."""
    d = chunk.products.shape[-1]
    parents, symbols, targets = [], [], []
    for w, end in enumerate(chunk.ends):
        for symbol in g.alphabet:
            target = g.successor(int(end), symbol)
            if target is not None:
                parents.append(w)
                symbols.append(symbol)
                targets.append(target)
    if not parents:
        return _Frontier.concat([], d)

    parents = np.array(parents)
    steps = np.stack([edges[(int(chunk.ends[p]), s)] for p, s in zip(parents, symbols)])
    products = steps @ chunk.products[parents]
    norms = np.linalg.norm(products, ord=2, axis=(1, 2))
    rates = norms ** (1.0 / depth)
    return _Frontier(
        chunk.starts[parents],
        np.array(targets),
        [chunk.labels[p] + s for p, s in zip(parents, symbols)],
        products,
        np.minimum(chunk.mins[parents], rates),
    )


def _children_count(frontier: _Frontier, out_degree: np.ndarray) -> int:
    return int(out_degree[frontier.ends].sum()) if len(frontier) else 0


def _branch_and_bound(
    g: ConstraintGraph,
    cl: ClosedLoopSet,
    norm: str,
    delta: float,
    max_depth: int,
    budget: int,
    lb: float,
    witness: str,
    workers: int,
    progress: bool,
) -> Bounds:
    """One pass under the spectral or the balanced norm."""
    weights = balanced_weights(g, cl) if norm == NORM_BALANCED else None
    edges = _edge_matrices(g, cl, weights)
    d = cl.dimension
    out_degree = np.zeros(len(g), dtype=int)
    for u, _, _ in g.edges:
        out_degree[u] += 1

    # depth-1 walks, one per edge
    frontier = _Frontier(
        np.arange(len(g)),
        np.arange(len(g)),
        [""] * len(g),
        np.repeat(np.eye(d)[None], len(g), axis=0),
        np.full(len(g), math.inf),
    )
    frontier = _expand(frontier, g, edges, 1)
    explored = len(frontier)
    seen = set()
    exhausted = False
    ub = math.inf
    depth = 1

    with ThreadPoolExecutor(max_workers=workers) as pool, \
            tqdm(total=max_depth, desc=f"B&B ({norm})", disable=not progress, dynamic_ncols=True) as bar:
        while True:
            bar.update(1)

            # closed walks tighten lb once the whole level is known
            closed = []
            for w in np.flatnonzero(frontier.starts == frontier.ends):
                key = canonical_rotation(frontier.labels[w])
                if key not in seen:
                    seen.add(key)
                    closed.append((w, key))
            if closed:
                rates = periodic_rates(frontier.products[[w for w, _ in closed]], depth)
                for (w, key), rate in zip(closed, rates):
                    if rate > lb:
                        lb, witness = float(rate), key

            frontier = frontier.take(np.flatnonzero(frontier.mins > lb + delta))
            logger.debug(f"[{norm}] depth {depth}: {len(frontier)} walks kept, lb={lb:.6f}")

            if not len(frontier):
                ub = lb + delta
                break

            children = _children_count(frontier, out_degree)
            if depth >= max_depth or explored + children > budget or children > settings.MAX_FRONTIER:
                exhausted = True
                ub = max(lb + delta, float(frontier.mins.max()))
                logger.warning(
                    f"[{norm}] branch-and-bound stopped at depth {depth} "
                    f"after {explored} walks with {len(frontier)} open; ub={ub:.6f}"
                )
                break

            depth += 1
            size = max(MIN_CHUNK, math.ceil(len(frontier) / workers))
            chunks = [frontier.take(np.arange(i, min(i + size, len(frontier))))
                      for i in range(0, len(frontier), size)]
            parts = list(pool.map(lambda chunk: _expand(chunk, g, edges, depth), chunks))
            frontier = _Frontier.concat(parts, d)
            explored += len(frontier)

    return Bounds(
        lb=lb,
        ub=max(ub, lb),
        lb_witness=witness,
        budget_exhausted=exhausted,
        explored=explored,
        depth=depth,
        norm=norm,
    )


def gripenberg(
    g: ConstraintGraph,
    cl: ClosedLoopSet,
    delta: float = DEFAULT_JSR_PARAMS.delta,
    max_depth: int = DEFAULT_JSR_PARAMS.max_depth,
    budget: int = DEFAULT_JSR_PARAMS.budget,
    lb: float = 0.0,
    lb_witness: str = "",
    norms: Sequence[str] = DEFAULT_JSR_PARAMS.norms,
    workers: Optional[int] = None,
    progress: bool = False,
) -> Bounds:
    """Bracket the constrained JSR of ``cl`` under ``g``.

    Norm passes run in order and stop at the first that terminates cleanly;
    the result keeps the largest lb and the smallest ub seen.

    Args:
        g: Constraint graph (usually minimized)
        cl: Closed-loop matrices over the graph's alphabet
        delta: Target gap between lb and ub
        max_depth: Longest walk explored
        budget: Largest number of walks explored per pass
        lb: Known lower bound to start pruning from
        lb_witness: Cycle that produced ``lb``
        norms: Norm passes to try, "spectral" and/or "balanced"
        workers: Thread count (capped by WHSTAB_THREADS)
        progress: Show a tqdm bar per pass

    Returns:
        Bounds: The bracket; ``budget_exhausted`` marks an early stop
    """
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    if tuple(g.alphabet) != tuple(cl.alphabet):
        raise AlphabetMismatch(f"Graph alphabet {g.alphabet} does not match closed-loop alphabet {cl.alphabet}")
    unknown = [n for n in norms if n not in SUPPORTED_NORMS]
    if unknown:
        raise ValueError(f"Unsupported norm passes: {unknown}")

    workers = settings.worker_count(workers)
    params = {"delta": delta, "max_depth": max_depth, "budget": budget, "norms": list(norms)}
    result = Bounds(lb=lb, lb_witness=lb_witness, params=params, budget_exhausted=True)

    for norm in norms:
        bounds = _branch_and_bound(
            g, cl, norm, delta, max_depth, budget, result.lb, result.lb_witness, workers, progress
        )
        if bounds.lb > result.lb:
            result.lb, result.lb_witness = bounds.lb, bounds.lb_witness
        result.explored += bounds.explored
        result.depth = max(result.depth, bounds.depth)
        if bounds.ub < result.ub:
            result.ub, result.norm = bounds.ub, bounds.norm
        if not bounds.budget_exhausted:
            result.budget_exhausted = False
            break

    result.ub = max(result.ub, result.lb)
    logger.info(
        f"JSR bracket [{result.lb:.6f}, {result.ub:.6f}] "
        f"({result.explored} walks, depth {result.depth}, norm {result.norm})"
    )
    return result
