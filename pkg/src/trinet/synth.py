"""Deterministic synthetic corpora for validating the pipeline.

Two regimes:

  centralized - a fixed hub agent bridges otherwise-disjoint word
                clusters, one per spoke agent. The agent network becomes
                a star, so the hub holds the unique maximum betweenness
                at virtually every non-degenerate turn and centralization
                stays near 1.
  rotating    - agents split into two groups with disjoint word pools;
                agents take turns posting a note that uses both groups'
                anchor words. Every past broker is tied for the maximum
                (they are interchangeable by symmetry), so the leader set
                grows agent by agent and centralization stays low. The
                last two agents to broker never lead: by then the groups
                are fully brokered and every value is zero.

Generation is a pure function of the spec.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from pathlib import Path

from .corpus import Corpus, Note, Vocabulary

REGIMES = ("centralized", "rotating")

_FILLERS = ("we", "think", "that", "the", "because", "maybe", "it", "could", "be")
_BASE_TIME = datetime(2024, 1, 1, 9, 0, 0, tzinfo=timezone.utc)


@dataclass(frozen=True)
class SynthSpec:
    agent_count: int
    note_count: int
    vocab_size: int
    regime: str
    seed: int

    def __post_init__(self):
        if self.agent_count < 1 or self.note_count < 1 or self.vocab_size < 1:
            raise ValueError("agent_count, note_count, vocab_size must be >= 1")
        if self.regime not in REGIMES:
            raise ValueError(f"regime must be one of {REGIMES}")


def load_synth_spec(path: str | Path) -> SynthSpec:
    with Path(path).open(encoding="utf-8") as fh:
        data = json.load(fh)
    try:
        return SynthSpec(
            agent_count=int(data["agent_count"]),
            note_count=int(data["note_count"]),
            vocab_size=int(data["vocab_size"]),
            regime=str(data["regime"]),
            seed=int(data["seed"]),
        )
    except KeyError as exc:
        raise ValueError(f"synth spec missing key: {exc}") from exc


def _word(i: int) -> str:
    return f"w{i:03d}"


def synthetic_vocabulary(spec: SynthSpec) -> Vocabulary:
    entries = tuple((_word(i), (_word(i),)) for i in range(spec.vocab_size))
    return Vocabulary(entries=entries)


def _agents(spec: SynthSpec) -> list[str]:
    return [f"a{i:02d}" for i in range(spec.agent_count)]


def _note(idx: int, author: str, words: list[str], rng: random.Random) -> Note:
    filler = [rng.choice(_FILLERS) for _ in range(rng.randrange(0, 3))]
    text = " ".join(filler + words) if words else " ".join(filler or ["hmm"])
    return Note(
        note_id=f"s{idx:04d}",
        author_id=author,
        timestamp=_BASE_TIME + timedelta(minutes=idx),
        text=text,
        seq=idx,
    )


def _centralized_notes(spec: SynthSpec, rng: random.Random) -> list[Note]:
    agents = _agents(spec)
    hub, spokes = agents[0], agents[1:]
    words = [_word(i) for i in range(spec.vocab_size)]
    if not spokes:
        return [
            _note(t, hub, rng.sample(words, min(2, len(words))), rng)
            for t in range(1, spec.note_count + 1)
        ]
    clusters = [words[i :: len(spokes)] for i in range(len(spokes))]
    anchors = {i: c[0] for i, c in enumerate(clusters) if c}
    seen: list[int] = []
    notes = []
    for t in range(1, spec.note_count + 1):
        if t % 2 == 1:
            i = (t // 2) % len(spokes)
            cluster = clusters[i]
            body = []
            if cluster:
                body = [anchors[i]] + rng.sample(cluster[1:], min(len(cluster) - 1, rng.randrange(0, 3)))
                if i not in seen:
                    seen.append(i)
            notes.append(_note(t, spokes[i], body, rng))
        else:
            body = [anchors[i] for i in seen]
            extra_pool = [w for i in seen for w in clusters[i][1:]]
            if extra_pool:
                body += rng.sample(extra_pool, min(2, len(extra_pool)))
            notes.append(_note(t, hub, body, rng))
    return notes


def _rotating_notes(spec: SynthSpec, rng: random.Random) -> list[Note]:
    agents = _agents(spec)
    half = (len(agents) + 1) // 2
    left, right = agents[:half], agents[half:]
    words = [_word(i) for i in range(spec.vocab_size)]
    if len(words) < 2 or not right:
        # Too small for two groups; fall back to round-robin single-word notes.
        return [
            _note(t, agents[(t - 1) % len(agents)], [words[(t - 1) % len(words)]], rng)
            for t in range(1, spec.note_count + 1)
        ]
    left_anchor, right_anchor = words[0], words[1]
    left_extra, right_extra = words[2::2], words[3::2]

    def side_words(agent: str) -> list[str]:
        if agent in left:
            pool, anchor = left_extra, left_anchor
        else:
            pool, anchor = right_extra, right_anchor
        extras = rng.sample(pool, min(len(pool), rng.randrange(0, 2)))
        return [anchor] + extras

    # Brokers alternate sides so both groups keep un-brokered members as
    # long as possible; each broker note carries both anchors.
    brokers: list[str] = []
    for i in range(max(len(left), len(right))):
        if i < len(left):
            brokers.append(left[i])
        if i < len(right):
            brokers.append(right[i])

    notes = []
    t = 1
    # Warmup: every agent introduces itself inside its own group.
    for agent in agents:
        if t > spec.note_count:
            return notes
        notes.append(_note(t, agent, side_words(agent), rng))
        t += 1
    phase = 0
    while t <= spec.note_count:
        broker = brokers[phase % len(brokers)]
        schedule = [
            (broker, [left_anchor, right_anchor]),
            (left[phase % len(left)], side_words(left[phase % len(left)])),
            (right[phase % len(right)], side_words(right[phase % len(right)])),
        ]
        for agent, body in schedule:
            if t > spec.note_count:
                return notes
            notes.append(_note(t, agent, body, rng))
            t += 1
        phase += 1
    return notes


def generate_synthetic(spec: SynthSpec) -> Corpus:
    rng = random.Random(spec.seed)
    if spec.regime == "centralized":
        notes = _centralized_notes(spec, rng)
    else:
        notes = _rotating_notes(spec, rng)
    return Corpus(notes=tuple(notes), agents=frozenset(n.author_id for n in notes))
