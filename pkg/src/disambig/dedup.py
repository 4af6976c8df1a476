"""Exact-key duplicate removal before blocking, and UID propagation after.

Two records are considered obvious duplicates when they agree on
last + first + city + IPC codes, or on last + first + city + assignees.
Groups are the transitive closure over both key kinds; the first record
in input order survives, the rest are removed and later re-inherit the
survivor's UID.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence

from .errors import MissingSurvivorId
from .ingest import Record


class KeyKind(Enum):
    IPC = "ipc"
    ASSIGNEE = "assignee"


@dataclass(frozen=True)
class DuplicationKey:
    key: str
    kind: KeyKind


def duplication_keys(record: Record) -> tuple[DuplicationKey, DuplicationKey]:
    """Both duplication keys of a normalized record.

    IPC codes are joined with "_", assignees with "|", both in stored
    order; the name/city parts are concatenated without separators.
    """
    base = record.last_name + record.first_name + record.city
    return (
        DuplicationKey(base + "_".join(record.ipc_codes), KeyKind.IPC),
        DuplicationKey(base + "|".join(record.assignees), KeyKind.ASSIGNEE),
    )


@dataclass
class DedupResult:
    survivors: list[Record]
    duplicate_of: dict[str, str]

    def survivor_ids(self) -> list[str]:
        return [r.record_id for r in self.survivors]


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the smaller input index as root so "first record wins"
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def remove_duplicates(records: Sequence[Record]) -> DedupResult:
    """Group records sharing either duplication key; first of each group survives."""
    uf = _UnionFind(len(records))
    first_with_key: dict[DuplicationKey, int] = {}
    for i, record in enumerate(records):
        for key in duplication_keys(record):
            if key in first_with_key:
                uf.union(first_with_key[key], i)
            else:
                first_with_key[key] = i

    survivors: list[Record] = []
    duplicate_of: dict[str, str] = {}
    for i, record in enumerate(records):
        root = uf.find(i)
        if root == i:
            survivors.append(record)
        else:
            duplicate_of[record.record_id] = records[root].record_id
    return DedupResult(survivors=survivors, duplicate_of=duplicate_of)


def propagate_ids(assignment: Mapping[str, str], dedup: DedupResult) -> dict[str, str]:
    """Extend a survivor UID assignment to the removed duplicates."""
    out = dict(assignment)
    for removed, survivor in dedup.duplicate_of.items():
        if survivor not in assignment:
            raise MissingSurvivorId(survivor)
        out[removed] = assignment[survivor]
    return out
