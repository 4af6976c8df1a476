"""Within-block clustering of pairwise match probabilities into inventor
groups.

Edges are first binarized at a probability threshold. Nodes are then
visited in order of descending match degree; each unvisited node seeds
a candidate group of itself plus its still-free neighbors, from which
the most weakly linked member is removed repeatedly until every member
m keeps links(m, rest) >= l_threshold * |rest|. Groups that share
enough cross links relative to both sizes are merged to a fixed point,
and each final group receives a UID.

Ties everywhere break on ascending record id so identical inputs give
identical output, including UIDs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .dedup import DedupResult, propagate_ids
from .errors import PartitionViolation

Edge = tuple[str, str]


@dataclass(frozen=True)
class ClusterParams:
    p_threshold: float = 0.03  # probability cutoff for a pairwise match
    l_threshold: float = 0.05  # link proportion for membership/merging

    def __post_init__(self):
        if not 0.0 < self.p_threshold < 1.0:
            raise ValueError("p_threshold must be in (0, 1)")
        if not 0.0 < self.l_threshold <= 1.0:
            raise ValueError("l_threshold must be in (0, 1]")


@dataclass
class MatchGraph:
    block_key: str
    nodes: list[str]
    edges: dict[Edge, float] = field(default_factory=dict)

    def __post_init__(self):
        members = set(self.nodes)
        if len(members) != len(self.nodes):
            raise ValueError(f"block {self.block_key}: repeated node")
        fixed = {}
        for (a, b), p in self.edges.items():
            if a == b:
                raise ValueError(f"block {self.block_key}: self edge {a}")
            if a not in members or b not in members:
                raise ValueError(f"block {self.block_key}: edge off the node set")
            fixed[(a, b) if a < b else (b, a)] = p
        self.edges = fixed


@dataclass(frozen=True)
class InventorGroup:
    uid: str
    members: frozenset[str]


def binarize(graph: MatchGraph, p_threshold: float) -> set[Edge]:
    """Edges asserted as matches: probability >= threshold (inclusive)."""
    return {pair for pair, p in graph.edges.items() if p >= p_threshold}


def _prune(members: set[str], adjacency: Mapping[str, set[str]],
           l_threshold: float) -> set[str]:
    """Drop the weakest member until everyone clears the link threshold.

    A member m needs links(m, group minus m) >= l_threshold * (n - 1).
    The seed satisfies this by construction (it is adjacent to every
    member it pulled in), so groups never empty out.
    """
    members = set(members)
    while len(members) > 1:
        links = {m: len(adjacency[m] & members) for m in members}
        need = l_threshold * (len(members) - 1)
        violators = [m for m in members if links[m] < need]
        if not violators:
            break
        members.remove(min(violators, key=lambda m: (links[m], m)))
    return members


def cluster_block(graph: MatchGraph, params: ClusterParams) -> list[InventorGroup]:
    """Partition one block's nodes into inventor groups."""
    kept = binarize(graph, params.p_threshold)
    adjacency: dict[str, set[str]] = {n: set() for n in graph.nodes}
    for a, b in kept:
        adjacency[a].add(b)
        adjacency[b].add(a)

    groups: list[set[str]] = []
    placed: set[str] = set()

    # isolated nodes become singletons up front
    for node in sorted(graph.nodes):
        if not adjacency[node]:
            groups.append({node})
            placed.add(node)

    order = sorted(graph.nodes, key=lambda n: (-len(adjacency[n]), n))
    for seed in order:
        if seed in placed:
            continue
        candidate = {seed} | (adjacency[seed] - placed)
        candidate = _prune(candidate, adjacency, params.l_threshold)
        groups.append(candidate)
        placed |= candidate

    # everyone is placed by now (any leftover node would have seeded
    # itself), but mirror the algorithm's re-run of the singleton step
    for node in sorted(graph.nodes):
        if node not in placed:
            groups.append({node})
            placed.add(node)

    groups = _merge_groups(groups, adjacency, params.l_threshold)

    groups.sort(key=min)
    return [
        InventorGroup(uid=f"{graph.block_key}#{i:04d}", members=frozenset(g))
        for i, g in enumerate(groups)
    ]


def _merge_groups(groups: list[set[str]], adjacency: Mapping[str, set[str]],
                  l_threshold: float) -> list[set[str]]:
    """Merge group pairs whose cross-link count clears the threshold for
    both sizes; repeat until no merge fires."""
    groups = [set(g) for g in groups]
    while True:
        groups.sort(key=lambda g: (-len(g), min(g)))
        merged = False
        for i in range(len(groups)):
            for j in range(i + 1, len(groups)):
                links = sum(len(adjacency[m] & groups[j]) for m in groups[i])
                if (links >= l_threshold * len(groups[i])
                        and links >= l_threshold * len(groups[j])):
                    groups[i] |= groups[j]
                    del groups[j]
                    merged = True
                    break
            if merged:
                break
        if not merged:
            return groups


def assign_uids(groups_by_block: Iterable[list[InventorGroup]],
                dedup: DedupResult) -> dict[str, str]:
    """Flatten per-block groups into record -> UID, folding duplicates in."""
    assignment: dict[str, str] = {}
    for groups in groups_by_block:
        for group in groups:
            for rid in group.members:
                if rid in assignment:
                    raise PartitionViolation(f"record {rid} in two groups")
                assignment[rid] = group.uid
    survivor_ids = set(dedup.survivor_ids())
    missing = survivor_ids - set(assignment)
    extra = set(assignment) - survivor_ids
    if missing or extra:
        raise PartitionViolation(
            f"{len(missing)} survivors unassigned, {len(extra)} unknown records")
    return propagate_ids(assignment, dedup)
