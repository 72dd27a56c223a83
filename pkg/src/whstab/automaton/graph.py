"""
Constraint graphs: deterministic safety automata over outcome words of length k*.
"""
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..config import settings
from ..config.defaults import Strategy
from ..errors import CapExceeded, EmptyLanguage
from ..weakly_hard.constraints import ConstraintSet
from ..weakly_hard.outcomes import Outcome, SequenceLike, alphabet, as_sequence, successors

logger = logging.getLogger(__name__)

# Display tokens for merged word positions
ANY_TOKEN = "X"         # any character of the alphabet
COMPLETION_TOKEN = "T"  # exactly {H, R}

# Canonical character order for node sorting
LABEL_ORDER = {ANY_TOKEN: 0, COMPLETION_TOKEN: 1, "H": 2, "M": 3, "R": 4}

Edge = Tuple[int, str, int]


@dataclass(frozen=True)
class ConstraintGraph:
    """A deterministic constraint automaton.

    ``words`` holds the (possibly wildcard) label of each node and
    ``members`` the raw length-k* words merged into it. Edges are
    ``(source, symbol, target)`` triples.
    """
    strategy: Strategy
    words: Tuple[str, ...]
    edges: Tuple[Edge, ...]
    initial: int = 0
    window: int = 1
    members: Optional[Tuple[Tuple[str, ...], ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "strategy", Strategy(self.strategy))
        object.__setattr__(self, "words", tuple(self.words))
        object.__setattr__(self, "edges", tuple((int(i), str(c), int(j)) for i, c, j in self.edges))
        if self.members is None:
            object.__setattr__(self, "members", tuple((w,) for w in self.words))
        else:
            object.__setattr__(self, "members", tuple(tuple(m) for m in self.members))
        if not 0 <= self.initial < len(self.words):
            raise ValueError(f"Initial node {self.initial} out of range for {len(self.words)} nodes")
        seen = set()
        for i, c, j in self.edges:
            if not (0 <= i < len(self.words) and 0 <= j < len(self.words)):
                raise ValueError(f"Edge {(i, c, j)} references a missing node")
            if (i, c) in seen:
                raise ValueError(f"Node {i} has two outgoing {c} edges")
            seen.add((i, c))

    def __len__(self) -> int:
        return len(self.words)

    @property
    def alphabet(self) -> Tuple[str, ...]:
        return tuple(s.value for s in alphabet(self.strategy))

    @cached_property
    def delta(self) -> Dict[Tuple[int, str], int]:
        """Transition map (node, symbol) -> node."""
        return {(i, c): j for i, c, j in self.edges}

    def successor(self, node: int, symbol: str) -> Optional[int]:
        return self.delta.get((node, str(symbol)))

    def out_edges(self, node: int) -> List[Tuple[str, int]]:
        return [(c, j) for i, c, j in self.edges if i == node]

    def walk(self, seq: SequenceLike, start: Optional[int] = None) -> Optional[int]:
        """Follow ``seq`` from ``start`` (default: initial); None once it leaves the graph."""
        node = self.initial if start is None else start
        for symbol in as_sequence(seq):
            node = self.successor(node, symbol)
            if node is None:
                return None
        return node

    def accepts(self, seq: SequenceLike) -> bool:
        return self.walk(seq) is not None

    def closes_cycle(self, seq: SequenceLike, start: int) -> bool:
        """True iff ``seq`` labels a closed walk through ``start``."""
        return len(as_sequence(seq)) > 0 and self.walk(seq, start) == start

    def index(self, word: str) -> int:
        """Node index by label or by any merged member word."""
        for i, (label, members) in enumerate(zip(self.words, self.members)):
            if word == label or word in members:
                return i
        raise KeyError(word)


def label_key(label: str) -> Tuple[int, ...]:
    return tuple(LABEL_ORDER[ch] for ch in label)


def canonical_graph(
    strategy: Strategy,
    words: Sequence[str],
    members: Sequence[Sequence[str]],
    edges: Iterable[Edge],
    initial: int,
    window: int,
) -> ConstraintGraph:
    """Renumber nodes in canonical order: initial first, the rest by label.

    Ties between equal labels are broken by the sorted member words.
    """
    def node_key(i: int):
        return (label_key(words[i]), tuple(label_key(m) for m in sorted(members[i], key=label_key)))

    rest = sorted((i for i in range(len(words)) if i != initial), key=node_key)
    order = [initial] + rest
    new_index = {old: new for new, old in enumerate(order)}

    symbol_rank = {s.value: i for i, s in enumerate(Outcome)}
    new_edges = sorted(
        ((new_index[i], c, new_index[j]) for i, c, j in edges if i in new_index and j in new_index),
        key=lambda e: (e[0], symbol_rank[e[1]], e[2]),
    )
    return ConstraintGraph(
        strategy=strategy,
        words=tuple(words[i] for i in order),
        edges=tuple(new_edges),
        initial=0,
        window=window,
        members=tuple(tuple(sorted(members[i], key=label_key)) for i in order),
    )


def _prune(n: int, initial: int, edges: List[Edge]) -> Tuple[set, List[Edge]]:
    """Drop nodes without outgoing edges until none remain, then unreachable ones."""
    alive = set(range(n))
    while True:
        has_out = {i for i, _, j in edges if i in alive and j in alive}
        dead = alive - has_out
        if not dead:
            break
        alive -= dead
    edges = [(i, c, j) for i, c, j in edges if i in alive and j in alive]
    if initial not in alive:
        return set(), []

    reachable = {initial}
    stack = [initial]
    while stack:
        node = stack.pop()
        for i, _, j in edges:
            if i == node and j not in reachable:
                reachable.add(j)
                stack.append(j)
    return reachable, [(i, c, j) for i, c, j in edges if i in reachable]


def build_graph(cs: ConstraintSet, prune_dead_ends: bool = True) -> ConstraintGraph:
    """Build the unminimized constraint graph of ``cs``.

    Nodes are the satisfying words of length k* reachable from the all-Hit
    word; an edge on ``c`` shifts ``c`` into the word when the successor
    relation and every member's newest window allow it.

    Args:
        cs: Constraint set (already reduced or not)
        prune_dead_ends: Remove nodes that cannot continue forever

    Returns:
        ConstraintGraph: Canonically ordered raw graph

    Raises:
        CapExceeded: if k* exceeds WHSTAB_WINDOW_CAP
        EmptyLanguage: if no infinite run survives pruning
    """
    k = cs.window
    if k > settings.WINDOW_CAP:
        raise CapExceeded(f"Window k*={k} exceeds cap {settings.WINDOW_CAP}")

    start = Outcome.HIT.value * k
    words = [start]
    index = {start: 0}
    edges: List[Edge] = []

    # iterate over a growing list
    i = 0
    while i < len(words):
        word = words[i]
        allowed = successors(Outcome(word[-1]), cs.strategy)
        for symbol in alphabet(cs.strategy):
            if symbol not in allowed:
                continue
            shifted = word[1:] + symbol.value
            if not cs.window_ok(shifted):
                continue
            if shifted not in index:
                index[shifted] = len(words)
                words.append(shifted)
            edges.append((i, symbol.value, index[shifted]))
        i += 1

    keep = set(range(len(words)))
    if prune_dead_ends:
        keep, edges = _prune(len(words), 0, edges)
        if not keep:
            raise EmptyLanguage(f"No infinite run satisfies {cs} from ideal startup")

    kept = sorted(keep)
    remap = {old: new for new, old in enumerate(kept)}
    graph = canonical_graph(
        cs.strategy,
        [words[i] for i in kept],
        [(words[i],) for i in kept],
        [(remap[i], c, remap[j]) for i, c, j in edges],
        remap[0],
        k,
    )
    logger.info(f"Built constraint graph for {cs}: {len(graph)} nodes, {len(graph.edges)} edges")
    return graph


def is_feasible(g: ConstraintGraph, seq: SequenceLike) -> bool:
    """True iff the walk from the initial node along ``seq`` never leaves the graph."""
    return g.accepts(seq)
