"""Bipartite word-note incidence and the three derived undirected networks.

The incidence at turn t holds every (word, note) pair for notes with
seq <= t. From it derive:

  word network  - words linked when some note contains both; weight =
                  number of such notes
  note network  - notes linked when they share a word; weight = number
                  of shared words; zero-match notes are isolated nodes
  agent network - authors linked when any of their notes share a word;
                  weight = number of distinct shared words

Networks accumulate over the full history: under replay they only grow.
`step` is an incremental update contractually equivalent to a
from-scratch rebuild at the next turn.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Mapping

from .corpus import Corpus, Note, Vocabulary, match_words

KINDS = ("word", "note", "agent")


@dataclass(frozen=True)
class Incidence:
    turn: int
    pairs: frozenset[tuple[str, str]]  # (word_id, note_id)


@dataclass(frozen=True)
class Network:
    kind: str
    nodes: frozenset[str]
    edges: dict[tuple[str, str], int]  # canonical (min, max) keys, weight >= 1

    def adjacency(self) -> dict[str, set[str]]:
        adj: dict[str, set[str]] = {v: set() for v in self.nodes}
        for (a, b) in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj


def edge_key(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class NetworkState:
    """Immutable snapshot at a turn: incidence, the three networks, and
    replay caches (per-note matched words, authorship, per-agent word sets)."""

    turn: int
    incidence: Incidence
    word_net: Network
    note_net: Network
    agent_net: Network
    note_words: Mapping[str, frozenset[str]]
    note_authors: Mapping[str, str]
    agent_words: Mapping[str, frozenset[str]]

    def network(self, kind: str) -> Network:
        if kind == "word":
            return self.word_net
        if kind == "note":
            return self.note_net
        if kind == "agent":
            return self.agent_net
        raise ValueError(f"unknown network kind: {kind!r}")


def build_incidence(corpus: Corpus, vocab: Vocabulary, turn: int) -> Incidence:
    if not 0 <= turn <= len(corpus.notes):
        raise ValueError(f"turn {turn} out of range 0..{len(corpus.notes)}")
    pairs = set()
    for note in corpus.notes[:turn]:
        for w in match_words(note.text, vocab):
            pairs.add((w, note.note_id))
    return Incidence(turn=turn, pairs=frozenset(pairs))


def _pairs_by_note(inc: Incidence) -> dict[str, set[str]]:
    by_note: dict[str, set[str]] = {}
    for w, nid in inc.pairs:
        by_note.setdefault(nid, set()).add(w)
    return by_note


def derive_word_network(inc: Incidence) -> Network:
    nodes = {w for w, _ in inc.pairs}
    edges: dict[tuple[str, str], int] = {}
    for words in _pairs_by_note(inc).values():
        for a, b in combinations(sorted(words), 2):
            edges[(a, b)] = edges.get((a, b), 0) + 1
    return Network(kind="word", nodes=frozenset(nodes), edges=edges)


def derive_note_network(inc: Incidence, corpus: Corpus) -> Network:
    # Zero-match notes are not in the incidence but are still nodes, so
    # the node roster comes from the corpus prefix.
    nodes = {n.note_id for n in corpus.notes[: inc.turn]}
    by_word: dict[str, list[str]] = {}
    for w, nid in inc.pairs:
        by_word.setdefault(w, []).append(nid)
    edges: dict[tuple[str, str], int] = {}
    for nids in by_word.values():
        for a, b in combinations(sorted(nids), 2):
            edges[(a, b)] = edges.get((a, b), 0) + 1
    return Network(kind="note", nodes=frozenset(nodes), edges=edges)


def derive_agent_network(inc: Incidence, corpus: Corpus) -> Network:
    nodes = {n.author_id for n in corpus.notes[: inc.turn]}
    author_of = {n.note_id: n.author_id for n in corpus.notes[: inc.turn]}
    agent_words: dict[str, set[str]] = {a: set() for a in nodes}
    for w, nid in inc.pairs:
        agent_words[author_of[nid]].add(w)
    edges: dict[tuple[str, str], int] = {}
    for a, b in combinations(sorted(nodes), 2):
        shared = len(agent_words[a] & agent_words[b])
        if shared:
            edges[(a, b)] = shared
    return Network(kind="agent", nodes=frozenset(nodes), edges=edges)


def initial_state() -> NetworkState:
    empty_inc = Incidence(turn=0, pairs=frozenset())
    return NetworkState(
        turn=0,
        incidence=empty_inc,
        word_net=Network(kind="word", nodes=frozenset(), edges={}),
        note_net=Network(kind="note", nodes=frozenset(), edges={}),
        agent_net=Network(kind="agent", nodes=frozenset(), edges={}),
        note_words={},
        note_authors={},
        agent_words={},
    )


def build_state(corpus: Corpus, vocab: Vocabulary, turn: int) -> NetworkState:
    """From-scratch build at a turn (the oracle route for `step`)."""
    inc = build_incidence(corpus, vocab, turn)
    note_words = {
        n.note_id: frozenset(match_words(n.text, vocab)) for n in corpus.notes[:turn]
    }
    note_authors = {n.note_id: n.author_id for n in corpus.notes[:turn]}
    agent_acc: dict[str, set[str]] = {}
    for nid, words in note_words.items():
        agent_acc.setdefault(note_authors[nid], set()).update(words)
    return NetworkState(
        turn=turn,
        incidence=inc,
        word_net=derive_word_network(inc),
        note_net=derive_note_network(inc, corpus),
        agent_net=derive_agent_network(inc, corpus),
        note_words=note_words,
        note_authors=note_authors,
        agent_words={a: frozenset(ws) for a, ws in agent_acc.items()},
    )


def step(state: NetworkState, next_note: Note, vocab: Vocabulary) -> NetworkState:
    """Ingest the next note, returning a new state; the input is unmodified."""
    if next_note.seq != state.turn + 1:
        raise ValueError(
            f"out-of-order note: seq {next_note.seq} at turn {state.turn}"
        )
    if next_note.note_id in state.note_words:
        raise ValueError(f"duplicate note_id {next_note.note_id!r}")
    nid = next_note.note_id
    author = next_note.author_id
    words = frozenset(match_words(next_note.text, vocab))

    pairs = state.incidence.pairs | {(w, nid) for w in words}

    word_nodes = state.word_net.nodes | words
    word_edges = dict(state.word_net.edges)
    for a, b in combinations(sorted(words), 2):
        word_edges[(a, b)] = word_edges.get((a, b), 0) + 1

    note_nodes = state.note_net.nodes | {nid}
    note_edges = dict(state.note_net.edges)
    if words:
        for other, other_words in state.note_words.items():
            shared = len(words & other_words)
            if shared:
                note_edges[edge_key(nid, other)] = shared

    agent_nodes = state.agent_net.nodes | {author}
    agent_edges = dict(state.agent_net.edges)
    prev = state.agent_words.get(author, frozenset())
    new_words = words - prev
    if new_words:
        for other, other_words in state.agent_words.items():
            if other == author:
                continue
            gained = len(new_words & other_words)
            if gained:
                key = edge_key(author, other)
                agent_edges[key] = agent_edges.get(key, 0) + gained

    note_words = dict(state.note_words)
    note_words[nid] = words
    note_authors = dict(state.note_authors)
    note_authors[nid] = author
    agent_words = dict(state.agent_words)
    agent_words[author] = prev | words

    return NetworkState(
        turn=state.turn + 1,
        incidence=Incidence(turn=state.turn + 1, pairs=frozenset(pairs)),
        word_net=Network(kind="word", nodes=frozenset(word_nodes), edges=word_edges),
        note_net=Network(kind="note", nodes=frozenset(note_nodes), edges=note_edges),
        agent_net=Network(kind="agent", nodes=frozenset(agent_nodes), edges=agent_edges),
        note_words=note_words,
        note_authors=note_authors,
        agent_words=agent_words,
    )


def replay(corpus: Corpus, vocab: Vocabulary):
    """Yield the state after each turn 1..N via incremental stepping."""
    state = initial_state()
    for note in corpus.notes:
        state = step(state, note, vocab)
        yield state
