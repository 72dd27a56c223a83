"""
Hopcroft partition refinement for constraint graphs, with wildcard relabeling.
"""
import logging
from typing import Dict, FrozenSet, List, Set, Tuple

from .graph import ANY_TOKEN, COMPLETION_TOKEN, ConstraintGraph, canonical_graph

logger = logging.getLogger(__name__)

_TOKEN_SETS = {
    "H": frozenset("H"),
    "M": frozenset("M"),
    "R": frozenset("R"),
    COMPLETION_TOKEN: frozenset("HR"),
    ANY_TOKEN: frozenset("HMR"),
}


def merge_labels(words) -> str:
    """Wildcard label covering every word: T where the characters are exactly
    {H, R}, the character itself where they agree, X otherwise."""
    words = list(words)
    result = []
    for position in range(len(words[0])):
        chars = frozenset().union(*(_TOKEN_SETS[w[position]] for w in words))
        if len(chars) == 1:
            result.append(next(iter(chars)))
        elif chars == _TOKEN_SETS[COMPLETION_TOKEN]:
            result.append(COMPLETION_TOKEN)
        else:
            result.append(ANY_TOKEN)
    return "".join(result)


def _hopcroft(states: Set[int], sink: int, alphabet, inverse) -> List[FrozenSet[int]]:
    """Partition ``states`` (sink included) into equivalence classes."""
    accepting = frozenset(states - {sink})
    rejecting = frozenset({sink})
    partition = {accepting, rejecting}
    block_of = {s: accepting for s in accepting}
    block_of[sink] = rejecting

    # seed worklist with the smaller group
    worklist = {rejecting if len(rejecting) <= len(accepting) else accepting}

    while worklist:
        splitter = worklist.pop()
        for symbol in alphabet:
            affected: Dict[FrozenSet[int], Set[int]] = {}
            for target in splitter:
                for q in inverse.get((symbol, target), ()):
                    affected.setdefault(block_of[q], set()).add(q)

            for block, overlap in affected.items():
                if len(overlap) == len(block):
                    continue
                part1 = frozenset(overlap)
                part2 = block - part1
                partition.remove(block)
                partition.add(part1)
                partition.add(part2)
                for s in part1:
                    block_of[s] = part1
                for s in part2:
                    block_of[s] = part2
                if block in worklist:
                    worklist.remove(block)
                    worklist.add(part1)
                    worklist.add(part2)
                else:
                    worklist.add(part1 if len(part1) <= len(part2) else part2)

    return [b for b in partition if sink not in b]


def minimize(g: ConstraintGraph) -> ConstraintGraph:
    """Quotient ``g`` by language equivalence.

    Missing transitions go to an implicit rejecting sink, so two nodes merge
    exactly when they admit the same continuations. Merged nodes are labeled
    with X/T wildcards; the labels are for display only.
    """
    n = len(g)
    sink = n
    inverse: Dict[Tuple[str, int], Set[int]] = {}
    for node in range(n + 1):
        for symbol in g.alphabet:
            target = g.successor(node, symbol) if node < n else None
            target = sink if target is None else target
            inverse.setdefault((symbol, target), set()).add(node)

    blocks = _hopcroft(set(range(n + 1)), sink, g.alphabet, inverse)
    blocks.sort(key=min)
    block_index = {s: b for b, block in enumerate(blocks) for s in block}

    members = []
    for block in blocks:
        merged: List[str] = []
        for s in sorted(block):
            merged.extend(g.members[s])
        members.append(tuple(dict.fromkeys(merged)))
    words = [merge_labels(m) for m in members]

    edges = set()
    for i, c, j in g.edges:
        edges.add((block_index[i], c, block_index[j]))

    result = canonical_graph(g.strategy, words, members, edges, block_index[g.initial], g.window)
    logger.info(f"Minimized constraint graph: {n} -> {len(result)} nodes")
    return result
