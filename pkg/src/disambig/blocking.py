"""Progressive prefix blocking.

Records are first grouped by the first three letters of the last name
(the whole last name when it is shorter). Any block larger than the
size threshold is re-split by extending the key one character at a
time through the full last name, then a literal comma, then the first
name. A block whose key cannot be extended for any member stays as-is
regardless of size. The comma never occurs in normalized names, so
extended keys cannot collide with plain prefixes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .ingest import LabeledCorpus, Record

DEFAULT_MAX_BLOCK_SIZE = 100


@dataclass
class Blocking:
    """Disjoint blocks covering every input record."""

    blocks: dict[str, list[str]]  # key -> record ids in input order
    max_block_size: int

    def block_of(self) -> dict[str, str]:
        return {rid: key for key, ids in self.blocks.items() for rid in ids}

    def sizes(self) -> dict[str, int]:
        return {key: len(ids) for key, ids in self.blocks.items()}


def _extended_name(record: Record) -> str:
    return record.last_name + "," + record.first_name


def build_blocks(records: Sequence[Record],
                 max_block_size: int = DEFAULT_MAX_BLOCK_SIZE) -> Blocking:
    """Partition records into blocks of at most max_block_size, splitting
    oversize blocks by progressively longer name prefixes until the key
    is exhausted."""
    if max_block_size < 1:
        raise ValueError("max_block_size must be positive")
    by_id = {r.record_id: r for r in records}

    initial: dict[str, list[str]] = {}
    for r in records:
        initial.setdefault(r.last_name[:3], []).append(r.record_id)

    final: dict[str, list[str]] = {}
    stack = sorted(initial.items(), reverse=True)
    while stack:
        key, members = stack.pop()
        if len(members) <= max_block_size:
            final[key] = members
            continue
        depth = len(key) + 1
        children: dict[str, list[str]] = {}
        for rid in members:
            children.setdefault(_extended_name(by_id[rid])[:depth], []).append(rid)
        if list(children) == [key]:
            # every member's full last,first equals the key: exhausted
            final[key] = members
            continue
        for child in sorted(children.items(), reverse=True):
            stack.append(child)
    return Blocking(blocks=dict(sorted(final.items())), max_block_size=max_block_size)


def within_block_pairs(blocking: Blocking) -> Iterator[tuple[str, str]]:
    """Every unordered within-block pair exactly once, canonical id order,
    blocks visited in sorted key order."""
    for key in blocking.blocks:
        members = blocking.blocks[key]
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                a, b = members[i], members[j]
                yield (a, b) if a < b else (b, a)


def pair_count(blocking: Blocking) -> int:
    return sum(n * (n - 1) // 2 for n in blocking.sizes().values())


def estimate_max_recall(corpus: LabeledCorpus, blocking: Blocking) -> float:
    """Fraction of true-match pairs whose records ended up in one block.

    This bounds the recall of everything downstream, since comparisons
    never cross blocks. Records absent from the blocking count as
    unrecoverable. 1.0 by convention when the corpus has no match pairs.
    """
    block_of = blocking.block_of()
    by_entity: dict[str, list[str]] = {}
    for rid, entity in corpus.entity_ids.items():
        by_entity.setdefault(entity, []).append(rid)

    total = 0
    shared = 0
    for ids in by_entity.values():
        for i in range(len(ids)):
            for j in range(i + 1, len(ids)):
                total += 1
                ka = block_of.get(ids[i])
                if ka is not None and ka == block_of.get(ids[j]):
                    shared += 1
    return shared / total if total else 1.0
