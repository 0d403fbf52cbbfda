"""Raw contribution-record ingestion.

Turns line-oriented "project<TAB>author" link data into a deduplicated set of
(project, canonical author) pairs: author ids are rewritten through an alias
map, checked for an embedded email address, deduplicated, and projects with
too few distinct authors are dropped.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator

__all__ = [
    "LinkRecord",
    "AliasMap",
    "IngestStats",
    "CleanedLinkSet",
    "parse_link_stream",
    "validate_author_id",
    "resolve_alias",
    "load_alias_map",
    "clean_links",
]

# Substring matcher for author ids: the id is considered valid when it
# contains an email-shaped token somewhere (ids are usually "Name <email>").
# Local part, "@", domain, then a literal dot and a TLD of 2+ ASCII letters.
_EMAIL_RE = re.compile(r"[A-Za-z0-9._%+-]+@[A-Za-z0-9.-]+\.[A-Za-z]{2,}")


@dataclass(frozen=True)
class LinkRecord:
    """One (project, author) contribution pair, as read from disk."""

    project: str
    author: str


def parse_link_stream(
    stream: Iterable[str], delimiter: str = "\t"
) -> tuple[list[LinkRecord], int]:
    """Parse lines of "project<delim>author" into records.

    Splits on the FIRST delimiter only, so the author side may contain the
    delimiter verbatim.  Malformed lines (no delimiter, empty project or
    author, or a project containing a tab) are counted and skipped; they never
    abort the stream.  Returns (records, malformed_line_count).
    """
    records: list[LinkRecord] = []
    errors = 0
    for line in stream:
        line = line.rstrip("\n").rstrip("\r")
        if not line:
            continue
        project, sep, author = line.partition(delimiter)
        if not sep or not project or not author:
            errors += 1
            continue
        if "\t" in project:  # possible when delimiter is not tab
            errors += 1
            continue
        records.append(LinkRecord(project, author))
    return records, errors


def validate_author_id(author: str) -> bool:
    """True iff the author string contains an email-shaped substring."""
    return _EMAIL_RE.search(author) is not None


@dataclass
class AliasMap:
    """Raw author id -> canonical author id, transitively collapsed.

    Every stored value is a fixed point, so resolution is a single lookup and
    ``resolve(resolve(x)) == resolve(x)`` holds.  Ids absent from the map
    resolve to themselves.
    """

    entries: dict[str, str] = field(default_factory=dict)

    def resolve(self, author: str) -> str:
        return self.entries.get(author, author)

    def __len__(self) -> int:
        return len(self.entries)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, str]]) -> "AliasMap":
        """Build a collapsed map from (raw, canonical) pairs.

        Chains are followed to their terminal id.  A cycle is broken by
        mapping every member of the cycle (and any chain leading into it) to
        the lexicographically smallest id in the cycle.  When the same raw id
        appears more than once, the last occurrence wins.
        """
        raw: dict[str, str] = {}
        for src, dst in pairs:
            raw[src] = dst

        resolved: dict[str, str] = {}
        for start in raw:
            if start in resolved:
                continue
            path: list[str] = []
            seen_at: dict[str, int] = {}
            node = start
            while True:
                if node in resolved:
                    root = resolved[node]
                    break
                if node in seen_at:  # walked into a cycle
                    cycle = path[seen_at[node]:]
                    root = min(cycle)
                    break
                if node not in raw:  # terminal id
                    root = node
                    break
                seen_at[node] = len(path)
                path.append(node)
                node = raw[node]
            for member in path:
                resolved[member] = root
        return cls(resolved)


def resolve_alias(author: str, aliases: AliasMap) -> str:
    """Canonical id for ``author``; identity when the id is not aliased."""
    return aliases.resolve(author)


def load_alias_map(stream: Iterable[str]) -> tuple[AliasMap, int]:
    """Read "raw<TAB>canonical" lines into a collapsed AliasMap.

    Returns (alias_map, malformed_line_count); malformed lines are skipped.
    """
    pairs: list[tuple[str, str]] = []
    errors = 0
    for line in stream:
        line = line.rstrip("\n").rstrip("\r")
        if not line:
            continue
        src, sep, dst = line.partition("\t")
        if not sep or not src or not dst or "\t" in dst:
            errors += 1
            continue
        pairs.append((src, dst))
    return AliasMap.from_pairs(pairs), errors


@dataclass
class IngestStats:
    """Row accounting for one cleaning run.

    Every input row lands in exactly one of: kept (``pairs_out``),
    ``rows_dropped_invalid``, ``rows_merged_dedup`` or
    ``rows_dropped_min_authors``.  ``rows_merged_alias`` counts rows whose
    author id was rewritten by the alias map and overlaps the other buckets.
    """

    rows_read: int = 0
    rows_dropped_invalid: int = 0
    rows_merged_alias: int = 0
    rows_merged_dedup: int = 0
    rows_dropped_min_authors: int = 0
    pairs_out: int = 0
    projects_out: int = 0
    authors_out: int = 0

    def to_json(self) -> str:
        return json.dumps(self.__dict__, sort_keys=True)


@dataclass
class CleanedLinkSet:
    """Distinct (project, canonical author) pairs surviving the full pipeline."""

    pairs: set[tuple[str, str]]
    stats: IngestStats

    def __iter__(self) -> Iterator[tuple[str, str]]:
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def sorted_pairs(self) -> list[tuple[str, str]]:
        return sorted(self.pairs)


def clean_links(
    records: Iterable[LinkRecord],
    aliases: AliasMap | None = None,
    min_authors: int = 2,
) -> CleanedLinkSet:
    """Run the cleaning pipeline: alias -> validate -> dedup -> min-authors.

    The alias rewrite happens first so that duplicate detection and the
    per-project author count both see canonical ids; the min-authors filter
    runs last because aliasing can merge a project's authors.  Validation is
    applied to the post-alias id.
    """
    if min_authors < 1:
        raise ValueError(f"min_authors must be >= 1, got {min_authors}")
    aliases = aliases if aliases is not None else AliasMap()

    stats = IngestStats()
    pair_seen: set[tuple[str, str]] = set()
    project_authors: dict[str, set[str]] = {}

    for rec in records:
        stats.rows_read += 1
        author = aliases.resolve(rec.author)
        if author != rec.author:
            stats.rows_merged_alias += 1
        if not validate_author_id(author):
            stats.rows_dropped_invalid += 1
            continue
        key = (rec.project, author)
        if key in pair_seen:
            stats.rows_merged_dedup += 1
            continue
        pair_seen.add(key)
        project_authors.setdefault(rec.project, set()).add(author)

    small = {p for p, members in project_authors.items() if len(members) < min_authors}
    pairs = {pa for pa in pair_seen if pa[0] not in small}
    stats.rows_dropped_min_authors = len(pair_seen) - len(pairs)
    stats.pairs_out = len(pairs)
    stats.projects_out = len({p for p, _ in pairs})
    stats.authors_out = len({a for _, a in pairs})
    return CleanedLinkSet(pairs=pairs, stats=stats)
