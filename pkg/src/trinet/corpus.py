"""Corpus and vocabulary ingestion, token matching, validation.

A corpus is a time-ordered list of authored notes; the note is the unit
of word co-occurrence. Matching is exact-token against a fixed word
list: no stemming, no fuzzy matching. Word multiplicity within a note is
discarded (co-occurrence is set-based).
"""

from __future__ import annotations

import csv
import json
import unicodedata
from dataclasses import dataclass, field
from datetime import datetime, timezone
from functools import cached_property
from pathlib import Path


class CorpusError(Exception):
    """Raised for unreadable, malformed, or inconsistent corpus input."""


class VocabularyError(Exception):
    """Raised for unreadable or degenerate vocabulary input."""


MATCHING_POLICY = "exact-token/unicode-lower/strip-edge-punctuation"

_REQUIRED_FIELDS = ("note_id", "author_id", "timestamp", "text")


@dataclass(frozen=True)
class Note:
    note_id: str
    author_id: str
    timestamp: datetime
    text: str
    seq: int  # 1-based replay turn, assigned at load time


@dataclass(frozen=True)
class Corpus:
    notes: tuple[Note, ...]
    agents: frozenset[str]

    def __len__(self) -> int:
        return len(self.notes)


@dataclass(frozen=True)
class Vocabulary:
    """Target word list. Each entry is (word_id, surface token sequence).

    word_id is the space-joined normalized surface; multiword entries
    match only as contiguous token runs.
    """

    entries: tuple[tuple[str, tuple[str, ...]], ...]
    matching_policy: str = MATCHING_POLICY

    @property
    def word_ids(self) -> frozenset[str]:
        return frozenset(wid for wid, _ in self.entries)

    @cached_property
    def _single(self) -> dict[str, str]:
        return {surface[0]: wid for wid, surface in self.entries if len(surface) == 1}

    @cached_property
    def _multi(self) -> tuple[tuple[str, tuple[str, ...]], ...]:
        return tuple((wid, surface) for wid, surface in self.entries if len(surface) > 1)

    def subset(self, word_ids: set[str]) -> "Vocabulary":
        """Restrict to the given word_ids, preserving entry order."""
        unknown = set(word_ids) - self.word_ids
        if unknown:
            raise VocabularyError(
                "unknown word_ids: " + ", ".join(sorted(unknown))
            )
        kept = tuple(e for e in self.entries if e[0] in word_ids)
        return Vocabulary(entries=kept, matching_policy=self.matching_policy)


@dataclass(frozen=True)
class NoteWordSet:
    note_id: str
    words: frozenset[str]


@dataclass(frozen=True)
class ValidationReport:
    """Non-fatal findings about a loaded corpus against a vocabulary."""

    zero_match_notes: tuple[str, ...]
    silent_agents: tuple[str, ...]  # agents none of whose notes match any word
    errors: tuple[str, ...] = field(default_factory=tuple)

    @property
    def warnings(self) -> tuple[str, ...]:
        out = [f"note {nid} matches no vocabulary words" for nid in self.zero_match_notes]
        out.extend(
            f"agent {aid} has no notes matching the vocabulary" for aid in self.silent_agents
        )
        return tuple(out)


def _strip_edge_punct(token: str) -> str:
    start, end = 0, len(token)
    while start < end and unicodedata.category(token[start]).startswith("P"):
        start += 1
    while end > start and unicodedata.category(token[end - 1]).startswith("P"):
        end -= 1
    return token[start:end]


def tokenize(text: str) -> list[str]:
    """Split on Unicode whitespace, strip edge punctuation, lowercase."""
    tokens = []
    for raw in text.split():
        tok = _strip_edge_punct(raw).lower()
        if tok:
            tokens.append(tok)
    return tokens


def match_words(text: str, vocab: Vocabulary) -> set[str]:
    """word_ids whose surface occurs as a contiguous run of tokens of text.

    Presence is boolean; multiplicity is discarded.
    """
    tokens = tokenize(text)
    if not tokens:
        return set()
    single = vocab._single
    found = {single[t] for t in set(tokens) if t in single}
    for wid, surface in vocab._multi:
        width = len(surface)
        for i in range(len(tokens) - width + 1):
            if tuple(tokens[i : i + width]) == surface:
                found.add(wid)
                break
    return found


def _parse_timestamp(value: str, where: str) -> datetime:
    text = value.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    try:
        ts = datetime.fromisoformat(text)
    except ValueError as exc:
        raise CorpusError(f"{where}: unparseable timestamp {value!r}") from exc
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc)


def _format_timestamp(ts: datetime) -> str:
    ts = ts.astimezone(timezone.utc)
    if ts.microsecond:
        return ts.strftime("%Y-%m-%dT%H:%M:%S.%f") + "Z"
    return ts.strftime("%Y-%m-%dT%H:%M:%SZ")


def _read_rows_csv(path: Path) -> list[tuple[int, dict]]:
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise CorpusError(f"{path}: empty file, expected header {','.join(_REQUIRED_FIELDS)}")
        missing = [f for f in _REQUIRED_FIELDS if f not in reader.fieldnames]
        if missing:
            raise CorpusError(f"{path}: header missing fields: {', '.join(missing)}")
        rows = []
        for row in reader:
            lineno = reader.line_num
            if any(row.get(f) is None for f in _REQUIRED_FIELDS):
                raise CorpusError(f"{path}:{lineno}: row has missing fields")
            rows.append((lineno, {f: row[f] for f in _REQUIRED_FIELDS}))
        return rows


def _read_rows_jsonl(path: Path) -> list[tuple[int, dict]]:
    rows = []
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"{path}:{lineno}: invalid JSON: {exc.msg}") from exc
            if not isinstance(obj, dict):
                raise CorpusError(f"{path}:{lineno}: expected a JSON object")
            missing = [f for f in _REQUIRED_FIELDS if f not in obj]
            if missing:
                raise CorpusError(f"{path}:{lineno}: missing fields: {', '.join(missing)}")
            rows.append((lineno, {f: str(obj[f]) for f in _REQUIRED_FIELDS}))
    return rows


def load_corpus(path: str | Path, format: str = "csv") -> Corpus:
    """Load a corpus file; seq is assigned by ascending timestamp, ties by file order."""
    path = Path(path)
    if not path.exists():
        raise CorpusError(f"corpus file not found: {path}")
    if format == "csv":
        rows = _read_rows_csv(path)
    elif format == "jsonl":
        rows = _read_rows_jsonl(path)
    else:
        raise CorpusError(f"unknown corpus format: {format!r} (expected csv or jsonl)")
    if not rows:
        raise CorpusError(f"{path}: corpus contains zero notes")

    parsed = []
    seen_ids: set[str] = set()
    for lineno, row in rows:
        where = f"{path}:{lineno}"
        note_id = row["note_id"].strip()
        author_id = row["author_id"].strip()
        if not note_id:
            raise CorpusError(f"{where}: empty note_id")
        if not author_id:
            raise CorpusError(f"{where}: empty author_id")
        if note_id in seen_ids:
            raise CorpusError(f"{where}: duplicate note_id {note_id!r}")
        seen_ids.add(note_id)
        ts = _parse_timestamp(row["timestamp"], where)
        parsed.append((ts, note_id, author_id, row["text"]))

    parsed.sort(key=lambda item: item[0])  # stable: equal timestamps keep file order
    notes = tuple(
        Note(note_id=nid, author_id=aid, timestamp=ts, text=text, seq=i)
        for i, (ts, nid, aid, text) in enumerate(parsed, start=1)
    )
    return Corpus(notes=notes, agents=frozenset(n.author_id for n in notes))


def save_corpus(corpus: Corpus, path: str | Path, format: str = "csv") -> None:
    """Write a corpus back out in seq order (round-trip stable)."""
    path = Path(path)
    if format == "csv":
        with path.open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(_REQUIRED_FIELDS)
            for n in corpus.notes:
                writer.writerow([n.note_id, n.author_id, _format_timestamp(n.timestamp), n.text])
    elif format == "jsonl":
        with path.open("w", encoding="utf-8") as fh:
            for n in corpus.notes:
                fh.write(
                    json.dumps(
                        {
                            "note_id": n.note_id,
                            "author_id": n.author_id,
                            "timestamp": _format_timestamp(n.timestamp),
                            "text": n.text,
                        },
                        ensure_ascii=False,
                    )
                    + "\n"
                )
    else:
        raise CorpusError(f"unknown corpus format: {format!r} (expected csv or jsonl)")


def load_vocabulary(path: str | Path) -> Vocabulary:
    """Load a word list: one entry per line, '#' comments, blanks skipped."""
    path = Path(path)
    if not path.exists():
        raise VocabularyError(f"vocabulary file not found: {path}")
    entries: list[tuple[str, tuple[str, ...]]] = []
    seen: set[str] = set()
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            tokens = tuple(tokenize(stripped))
            if not tokens:
                raise VocabularyError(
                    f"{path}:{lineno}: entry {stripped!r} normalizes to zero tokens"
                )
            wid = " ".join(tokens)
            if wid in seen:
                continue
            seen.add(wid)
            entries.append((wid, tokens))
    if not entries:
        raise VocabularyError(f"{path}: vocabulary contains zero entries")
    return Vocabulary(entries=tuple(entries))


def note_word_sets(corpus: Corpus, vocab: Vocabulary) -> list[NoteWordSet]:
    """Materialize the per-note matched word sets, in seq order."""
    return [
        NoteWordSet(note_id=n.note_id, words=frozenset(match_words(n.text, vocab)))
        for n in corpus.notes
    ]


def validate_corpus(corpus: Corpus, vocab: Vocabulary) -> ValidationReport:
    """Report notes matching zero words and agents whose notes never match."""
    zero_match = []
    matched_agents: set[str] = set()
    for n in corpus.notes:
        words = match_words(n.text, vocab)
        if words:
            matched_agents.add(n.author_id)
        else:
            zero_match.append(n.note_id)
    silent = sorted(corpus.agents - matched_agents)
    return ValidationReport(
        zero_match_notes=tuple(zero_match),
        silent_agents=tuple(silent),
    )
