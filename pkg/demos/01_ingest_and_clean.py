"""
Ingesting raw contribution records
==================================

Parse a tab-separated project/author link file, fold duplicate
identities together through an alias map, drop malformed author ids,
and check that the cleaning statistics account for every input row.
"""

import io

from collabgraph import clean_links, load_alias_map, parse_link_stream

# A raw link file: one "project<TAB>author" row per contribution.
# It contains a duplicate row, a malformed line, a bot-style id with
# no real email, and one author appearing under two spellings.
RAW = """\
kde/kdelibs\tDavid Faure <faure@kde.org>
kde/kdelibs\tStephan Kulow <coolo@kde.org>
kde/kdelibs\tStephan Kulow <coolo@kde.org>
kde/kconfig\tDavid Faure <faure@kde.org>
kde/kconfig\tD. Faure <dfaure@kdab.com>
kde/kconfig\tbuildbot <^^>
this line has no separator
gnome/glib\tPhilip Withnall <pwithnall@gnome.org>
"""

ALIASES = "D. Faure <dfaure@kdab.com>\tDavid Faure <faure@kde.org>\n"

records, bad_lines = parse_link_stream(io.StringIO(RAW))
print(f"parsed {len(records)} records, skipped {bad_lines} malformed line(s)")

# Alias resolution maps every raw id to its canonical form before
# validation and deduplication.
aliases, _ = load_alias_map(io.StringIO(ALIASES))
cleaned = clean_links(records, aliases, min_authors=2)

print("\nsurviving (project, author) pairs:")
for project_id, author_id in cleaned.sorted_pairs():
    print(f"  {project_id}  --  {author_id}")

# Every row read lands in exactly one bucket: kept, invalid, merged as
# a duplicate, or dropped with an under-populated project.
s = cleaned.stats
print("\n" + s.to_json())
assert s.rows_read == (
    s.pairs_out
    + s.rows_dropped_invalid
    + s.rows_merged_dedup
    + s.rows_dropped_min_authors
)
print("conservation identity holds")
