"""Corpus replay into metric time series and rotating-leadership statistics.

A turn's leaders are the nodes attaining the exact maximum betweenness
among nodes present at that turn. Turns where every present node shares
one value (including the all-zero early turns) are degenerate: they name
no leaders and are skipped when counting leadership changes.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .corpus import Corpus, CorpusError, Vocabulary
from .metrics import betweenness, centralization, density
from .netbuild import build_incidence, build_state, derive_agent_network
from .netbuild import derive_note_network, derive_word_network, replay


@dataclass(frozen=True)
class MetricsSeries:
    """Per-turn metrics for one network kind over a corpus replay.

    betweenness[t-1] maps node -> value; a node is absent until its
    first appearance (an agent's first authored turn, a note's seq, a
    word's first match).
    """

    kind: str
    betweenness: tuple[dict[str, float], ...]
    centralization: tuple[float, ...]
    density: tuple[float, ...]

    @property
    def turns(self) -> int:
        return len(self.centralization)

    def __post_init__(self):
        if not (len(self.betweenness) == len(self.centralization) == len(self.density)):
            raise ValueError("series length mismatch")


@dataclass(frozen=True)
class SummaryStats:
    mean: float
    sd: float
    min: float
    max: float


class LeaderSet(NamedTuple):
    agents: frozenset[str]
    degenerate: bool


class Episode(NamedTuple):
    agent: str
    turn: int
    value: float


@dataclass(frozen=True)
class LeadershipStats:
    leaders_per_turn: tuple[LeaderSet, ...]
    change_count: int
    distinct_leaders: int
    episodes: tuple[Episode, ...]  # all collapsed episodes, value-descending


def compute_series(
    corpus: Corpus,
    vocab: Vocabulary,
    kind: str = "agent",
    strategy: str = "incremental",
) -> MetricsSeries:
    """Replay the corpus and record betweenness/centralization/density per turn.

    strategy "incremental" steps one state forward; "rebuild" constructs
    each turn from scratch. The results are contractually identical.
    """
    if not corpus.notes:
        raise CorpusError("empty corpus")
    bmaps: list[dict[str, float]] = []
    cents: list[float] = []
    dens: list[float] = []

    if strategy == "incremental":
        nets = (state.network(kind) for state in replay(corpus, vocab))
    elif strategy == "rebuild":
        nets = _rebuilt_networks(corpus, vocab, kind)
    else:
        raise ValueError(f"unknown strategy: {strategy!r}")

    for net in nets:
        bm = betweenness(net)
        bmaps.append(bm)
        cents.append(centralization(bm))
        dens.append(density(net))
    return MetricsSeries(
        kind=kind,
        betweenness=tuple(bmaps),
        centralization=tuple(cents),
        density=tuple(dens),
    )


def _rebuilt_networks(corpus: Corpus, vocab: Vocabulary, kind: str) -> Iterable:
    for t in range(1, len(corpus.notes) + 1):
        inc = build_incidence(corpus, vocab, t)
        if kind == "agent":
            yield derive_agent_network(inc, corpus)
        elif kind == "note":
            yield derive_note_network(inc, corpus)
        elif kind == "word":
            yield derive_word_network(inc)
        else:
            raise ValueError(f"unknown network kind: {kind!r}")


def series_states(corpus: Corpus, vocab: Vocabulary):
    """Full tri-network states per turn, built from scratch (oracle route)."""
    for t in range(1, len(corpus.notes) + 1):
        yield build_state(corpus, vocab, t)


def summarize(series: MetricsSeries) -> SummaryStats:
    """Population mean/sd (divisor N) and exact min/max of centralization."""
    if series.turns == 0:
        raise ValueError("empty series")
    values = series.centralization
    return SummaryStats(
        mean=statistics.fmean(values),
        sd=statistics.pstdev(values),
        min=min(values),
        max=max(values),
    )


def leader_at(series: MetricsSeries, t: int) -> LeaderSet:
    """Argmax set over nodes present at turn t (1-based).

    If every present node shares one value the set holds all of them and
    is flagged degenerate.
    """
    if not 1 <= t <= series.turns:
        raise ValueError(f"turn {t} out of range 1..{series.turns}")
    values = series.betweenness[t - 1]
    if not values:
        return LeaderSet(agents=frozenset(), degenerate=True)
    top = max(values.values())
    leaders = frozenset(a for a, v in values.items() if v == top)
    return LeaderSet(agents=leaders, degenerate=len(leaders) == len(values))


def _episodes(series: MetricsSeries) -> tuple[Episode, ...]:
    # A maximal run of consecutive turns in which the same node holds the
    # (non-degenerate) maximum collapses to its peak turn.
    leader_turns: dict[str, list[int]] = {}
    for t in range(1, series.turns + 1):
        ls = leader_at(series, t)
        if ls.degenerate:
            continue
        for a in ls.agents:
            leader_turns.setdefault(a, []).append(t)

    episodes: list[Episode] = []
    for agent, turns in leader_turns.items():
        run_start = 0
        for i in range(1, len(turns) + 1):
            if i == len(turns) or turns[i] != turns[i - 1] + 1:
                run = turns[run_start:i]
                peak_value = max(series.betweenness[t - 1][agent] for t in run)
                peak_turn = next(
                    t for t in run if series.betweenness[t - 1][agent] == peak_value
                )
                episodes.append(Episode(agent=agent, turn=peak_turn, value=peak_value))
                run_start = i
    episodes.sort(key=lambda e: (-e.value, e.turn, e.agent))
    return tuple(episodes)


def rotation_stats(series: MetricsSeries) -> LeadershipStats:
    """Distinct leaders, leader-change count, and collapsed episodes.

    A change is a consecutive pair of non-degenerate leader sets that are
    disjoint; degenerate turns carry the last non-degenerate set forward.
    """
    if series.turns == 0:
        raise ValueError("empty series")
    per_turn = tuple(leader_at(series, t) for t in range(1, series.turns + 1))
    distinct: set[str] = set()
    change_count = 0
    prev: frozenset[str] | None = None
    for ls in per_turn:
        if ls.degenerate:
            continue
        distinct.update(ls.agents)
        if prev is not None and prev.isdisjoint(ls.agents):
            change_count += 1
        prev = ls.agents
    return LeadershipStats(
        leaders_per_turn=per_turn,
        change_count=change_count,
        distinct_leaders=len(distinct),
        episodes=_episodes(series),
    )


def top_episodes(series: MetricsSeries, k: int) -> list[Episode]:
    """The k highest collapsed leadership episodes (fewer if not available)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return list(_episodes(series)[:k])
