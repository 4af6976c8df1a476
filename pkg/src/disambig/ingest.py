"""Record parsing, normalization, and synthetic corpus generation.

A corpus is a flat list of patent-inventor name records, optionally
labeled with the true entity (unique inventor) behind each record.
Supported on-disk formats:

* JSONL -- one object per line with keys record_id, first_name,
  middle_name, last_name, city, ipc_codes, co_inventors, assignees and
  an optional entity_id.
* CSV -- same columns; list-valued cells are "|"-delimited.
"""

from __future__ import annotations

import csv
import json
import random
import unicodedata
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from . import _namepools as pools
from .errors import DuplicateRecordId, EmptyLastName, InvalidConfig, ParseError

_ALLOWED = frozenset("ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789")

CSV_COLUMNS = (
    "record_id", "first_name", "middle_name", "last_name", "city",
    "ipc_codes", "co_inventors", "assignees", "entity_id",
)

MATCH = "Match"
NON_MATCH = "NonMatch"


def normalize_text(s: str) -> str:
    """Normalize one free-text field.

    Uppercase, strip diacritics where a single-letter ASCII base exists,
    keep only A-Z 0-9 and space, collapse whitespace runs. Hyphens,
    apostrophes and other punctuation vanish without leaving a space,
    so "CLAYTON-BROWN" becomes "CLAYTONBROWN".
    """
    s = unicodedata.normalize("NFKD", s)
    s = "".join(ch for ch in s if not unicodedata.combining(ch))
    out = []
    for ch in s.upper():
        if ch in _ALLOWED:
            out.append(ch)
        elif ch.isspace():
            out.append(" ")
    return " ".join("".join(out).split())


def _normalize_list(values: Iterable[str]) -> tuple[str, ...]:
    normalized = (normalize_text(v) for v in values)
    return tuple(v for v in normalized if v)


@dataclass(frozen=True)
class Record:
    """One patent-inventor name instance, already normalized."""

    record_id: str
    first_name: str
    middle_name: str
    last_name: str
    city: str
    ipc_codes: tuple[str, ...]
    co_inventor_last_names: tuple[str, ...]
    assignees: tuple[str, ...]


def normalize_record(raw: Mapping[str, object]) -> Record:
    """Build a Record from a raw mapping, normalizing every field.

    Raises EmptyLastName when nothing survives normalization of the
    last-name field.
    """
    def text(key):
        return normalize_text(str(raw.get(key, "") or ""))

    def items(key):
        value = raw.get(key, ()) or ()
        if isinstance(value, str):
            value = value.split("|")
        return _normalize_list(str(v) for v in value)

    last = text("last_name")
    if not last:
        raise EmptyLastName(f"record {raw.get('record_id')!r}")
    return Record(
        record_id=str(raw.get("record_id", "")),
        first_name=text("first_name"),
        middle_name=text("middle_name"),
        last_name=last,
        city=text("city"),
        ipc_codes=items("ipc_codes"),
        co_inventor_last_names=items("co_inventors"),
        assignees=items("assignees"),
    )


@dataclass(frozen=True)
class LabeledPair:
    """An unordered record pair with a match/non-match label."""

    record_a: str
    record_b: str
    label: str

    def __post_init__(self):
        if self.record_a == self.record_b:
            raise ValueError("pair endpoints must differ")
        if self.record_a > self.record_b:
            a, b = self.record_b, self.record_a
            object.__setattr__(self, "record_a", a)
            object.__setattr__(self, "record_b", b)
        if self.label not in (MATCH, NON_MATCH):
            raise ValueError(f"bad label {self.label!r}")


@dataclass
class LabeledCorpus:
    """Records plus (possibly partial) entity labels."""

    records: list[Record]
    entity_ids: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        ids = [r.record_id for r in self.records]
        seen: set[str] = set()
        for rid in ids:
            if rid in seen:
                raise DuplicateRecordId(rid)
            seen.add(rid)
        unknown = set(self.entity_ids) - set(ids)
        if unknown:
            raise ParseError(f"entity labels for unknown records: {sorted(unknown)[:3]}")

    def __len__(self):
        return len(self.records)

    @property
    def is_labeled(self) -> bool:
        return len(self.entity_ids) == len(self.records)

    def by_id(self) -> dict[str, Record]:
        return {r.record_id: r for r in self.records}

    def subset(self, record_ids: Iterable[str]) -> "LabeledCorpus":
        keep = set(record_ids)
        return LabeledCorpus(
            records=[r for r in self.records if r.record_id in keep],
            entity_ids={k: v for k, v in self.entity_ids.items() if k in keep},
        )


def _record_to_row(record: Record, entity_id: str | None) -> dict:
    row = {
        "record_id": record.record_id,
        "first_name": record.first_name,
        "middle_name": record.middle_name,
        "last_name": record.last_name,
        "city": record.city,
        "ipc_codes": list(record.ipc_codes),
        "co_inventors": list(record.co_inventor_last_names),
        "assignees": list(record.assignees),
    }
    if entity_id is not None:
        row["entity_id"] = entity_id
    return row


def load_corpus(path, format: str = "jsonl") -> LabeledCorpus:
    """Load and normalize a corpus file; see module docstring for formats."""
    records: list[Record] = []
    entity_ids: dict[str, str] = {}
    seen: set[str] = set()

    def add(raw: Mapping[str, object], row_no: int):
        try:
            record = normalize_record(raw)
        except EmptyLastName:
            raise ParseError("empty last name after normalization", row=row_no)
        if not record.record_id:
            raise ParseError("missing record_id", row=row_no)
        if record.record_id in seen:
            raise DuplicateRecordId(record.record_id)
        seen.add(record.record_id)
        records.append(record)
        entity = raw.get("entity_id")
        if entity not in (None, ""):
            entity_ids[record.record_id] = str(entity)

    with open(path, "r", encoding="utf-8") as fh:
        if format == "jsonl":
            for row_no, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    raw = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise ParseError(str(exc), row=row_no) from exc
                if not isinstance(raw, dict):
                    raise ParseError("expected a JSON object", row=row_no)
                add(raw, row_no)
        elif format == "csv":
            reader = csv.DictReader(fh)
            for row_no, raw in enumerate(reader, start=2):
                if raw.get("record_id") is None:
                    raise ParseError("missing record_id column", row=row_no)
                add(raw, row_no)
        else:
            raise InvalidConfig(f"unknown corpus format {format!r}")
    return LabeledCorpus(records=records, entity_ids=entity_ids)


def save_corpus(corpus: LabeledCorpus, path, format: str = "jsonl") -> None:
    """Serialize a corpus; load_corpus(save_corpus(c)) round-trips exactly."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        if format == "jsonl":
            for record in corpus.records:
                row = _record_to_row(record, corpus.entity_ids.get(record.record_id))
                fh.write(json.dumps(row, sort_keys=True) + "\n")
        elif format == "csv":
            writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
            writer.writeheader()
            for record in corpus.records:
                row = _record_to_row(record, corpus.entity_ids.get(record.record_id, ""))
                for key in ("ipc_codes", "co_inventors", "assignees"):
                    row[key] = "|".join(row[key])
                writer.writerow(row)
        else:
            raise InvalidConfig(f"unknown corpus format {format!r}")


# --- synthetic corpora -----------------------------------------------------

_RATE_FIELDS = (
    "last_name_collision_rate", "p_first_typo", "p_middle_truncate",
    "p_middle_drop", "p_last_typo", "p_city_change", "p_ipc_jitter",
    "p_coinv_shuffle", "p_coinv_drop", "p_assignee_suffix",
)


@dataclass(frozen=True)
class SynthConfig:
    """Knobs for generate_synthetic_corpus.

    The perturbation rates are per-record probabilities. Last-name typos
    never touch the first three letters, mirroring the fact that real
    misspellings rarely break prefix blocking.
    """

    n_entities: int = 100
    records_per_entity: int = 2
    records_per_entity_max: int | None = None
    last_name_collision_rate: float = 0.3
    p_first_typo: float = 0.15
    p_middle_truncate: float = 0.5
    p_middle_drop: float = 0.15
    p_last_typo: float = 0.05
    p_city_change: float = 0.05
    p_ipc_jitter: float = 0.4
    p_coinv_shuffle: float = 0.5
    p_coinv_drop: float = 0.3
    p_assignee_suffix: float = 0.4

    def __post_init__(self):
        if self.n_entities < 1:
            raise InvalidConfig("n_entities must be >= 1")
        if self.records_per_entity < 1:
            raise InvalidConfig("records_per_entity must be >= 1")
        if (self.records_per_entity_max is not None
                and self.records_per_entity_max < self.records_per_entity):
            raise InvalidConfig("records_per_entity_max < records_per_entity")
        for name in _RATE_FIELDS:
            rate = getattr(self, name)
            if not 0.0 <= rate <= 1.0:
                raise InvalidConfig(f"{name} must be in [0, 1], got {rate}")

    @classmethod
    def clean(cls, n_entities=100, records_per_entity=2, records_per_entity_max=None):
        """All perturbation rates zero: same-entity records are identical."""
        zeros = {name: 0.0 for name in _RATE_FIELDS}
        return cls(n_entities=n_entities, records_per_entity=records_per_entity,
                   records_per_entity_max=records_per_entity_max, **zeros)


_ALPHABET = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"


def _typo(rng: random.Random, word: str, min_pos: int = 0) -> str:
    """Substitute or delete one letter at position >= min_pos."""
    if len(word) <= min_pos:
        return word
    pos = rng.randrange(min_pos, len(word))
    if rng.random() < 0.5 and len(word) > min_pos + 1:
        return word[:pos] + word[pos + 1:]
    return word[:pos] + rng.choice(_ALPHABET) + word[pos + 1:]


def generate_synthetic_corpus(config: SynthConfig, seed: int) -> LabeledCorpus:
    """Generate a labeled corpus; a pure function of (config, seed).

    Records of one entity are perturbed copies of an entity template;
    distinct entities draw fresh names, except that
    last_name_collision_rate of them deliberately reuse another entity's
    last name so blocking puts different inventors in one block.
    """
    rng = random.Random(seed)
    templates = []
    used_names: set[tuple[str, str]] = set()
    for idx in range(config.n_entities):
        if templates and rng.random() < config.last_name_collision_rate:
            last = rng.choice(templates)["last"]
        else:
            last = rng.choice(pools.LAST_NAMES)
        first = rng.choice(pools.FIRST_NAMES)
        for _ in range(20):
            if (last, first) not in used_names:
                break
            first = rng.choice(pools.FIRST_NAMES)
        used_names.add((last, first))
        templates.append({
            "entity_id": f"E{idx:04d}",
            "last": last,
            "first": first,
            "middle": rng.choice(pools.MIDDLE_NAMES) if rng.random() < 0.7 else "",
            "city": rng.choice(pools.CITIES),
            "ipcs": rng.sample(pools.IPC_CODES, rng.randint(1, 3)),
            "coinvs": rng.sample(pools.LAST_NAMES, rng.randint(1, 4)),
            "assignees": rng.sample(pools.COMPANIES, rng.randint(1, 2)),
        })

    rows = []
    for tpl in templates:
        hi = config.records_per_entity_max or config.records_per_entity
        count = rng.randint(config.records_per_entity, hi)
        for _ in range(count):
            first = tpl["first"]
            if rng.random() < config.p_first_typo:
                first = _typo(rng, first, min_pos=1) or first
            middle = tpl["middle"]
            if middle and rng.random() < config.p_middle_drop:
                middle = ""
            elif middle and rng.random() < config.p_middle_truncate:
                middle = middle[0]
            last = tpl["last"]
            if rng.random() < config.p_last_typo:
                last = _typo(rng, last, min_pos=3)
            city = tpl["city"]
            if rng.random() < config.p_city_change:
                city = rng.choice(pools.CITIES)
            ipcs = list(tpl["ipcs"])
            if rng.random() < config.p_ipc_jitter:
                if len(ipcs) > 1 and rng.random() < 0.5:
                    ipcs.pop(rng.randrange(len(ipcs)))
                else:
                    extra = rng.choice(pools.IPC_CODES)
                    if extra not in ipcs:
                        ipcs.append(extra)
            coinvs = list(tpl["coinvs"])
            if len(coinvs) > 1 and rng.random() < config.p_coinv_drop:
                coinvs.pop(rng.randrange(len(coinvs)))
            if rng.random() < config.p_coinv_shuffle:
                rng.shuffle(coinvs)
            assignees = list(tpl["assignees"])
            if rng.random() < config.p_assignee_suffix:
                which = rng.randrange(len(assignees))
                assignees[which] = assignees[which] + " " + rng.choice(pools.COMPANY_SUFFIXES)
            rows.append((tpl["entity_id"], first, middle, last, city,
                         tuple(ipcs), tuple(coinvs), tuple(assignees)))

    rng.shuffle(rows)
    records = []
    entity_ids = {}
    for i, (entity, first, middle, last, city, ipcs, coinvs, assignees) in enumerate(rows):
        record_id = f"R{i:05d}"
        records.append(Record(
            record_id=record_id, first_name=first, middle_name=middle,
            last_name=last, city=city, ipc_codes=ipcs,
            co_inventor_last_names=coinvs, assignees=assignees,
        ))
        entity_ids[record_id] = entity
    return LabeledCorpus(records=records, entity_ids=entity_ids)


def true_match_pairs(corpus: LabeledCorpus) -> set[tuple[str, str]]:
    """All same-entity record pairs, canonically ordered."""
    by_entity: dict[str, list[str]] = {}
    for rid, entity in corpus.entity_ids.items():
        by_entity.setdefault(entity, []).append(rid)
    out = set()
    for ids in by_entity.values():
        ids.sort()
        for i in range(len(ids)):
            for j in range(i + 1, len(ids)):
                out.add((ids[i], ids[j]))
    return out
