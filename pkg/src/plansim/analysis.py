"""Term weights, thematic-area scores, and document-to-goal alignment."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import NamedTuple

from .corpus import Document, GoalCatalog, normalize_text
from .errors import CorpusError, LexiconError
from .textsim import (
    AggregationPolicy,
    DEFAULT_PARAMS,
    JaroWinklerParams,
    SimilarityMatrix,
    aggregate_scores,
    score_matrix,
)

__all__ = [
    "AreaLexicon",
    "AreaScores",
    "SimilarityMatrix",
    "TermEntry",
    "TermWeights",
    "area_scores",
    "goal_alignment",
    "load_lexicon",
    "term_weights",
]


class TermEntry(NamedTuple):
    term: str
    count: int
    weight: float


@dataclass(frozen=True)
class TermWeights:
    """Word-cloud weights: counts sorted by count desc then term asc,
    normalized by the maximum count (first entry always weighs 1.0)."""

    document_id: str
    entries: tuple[TermEntry, ...]


@dataclass(frozen=True)
class AreaLexicon:
    """Ordered thematic areas, each owning a disjoint keyword set."""

    areas: tuple[tuple[str, frozenset[str]], ...]

    def __post_init__(self) -> None:
        seen: dict[str, str] = {}
        names = set()
        for area, keywords in self.areas:
            if area in names:
                raise LexiconError(f"duplicate area name: '{area}'")
            names.add(area)
            for keyword in keywords:
                if keyword in seen:
                    raise LexiconError(
                        f"keyword '{keyword}' appears in both '{seen[keyword]}' and '{area}'"
                    )
                seen[keyword] = area


@dataclass(frozen=True)
class AreaScores:
    document_id: str
    scores: tuple[tuple[str, float], ...]


def term_weights(doc: Document, top_n: int) -> TermWeights:
    """Count token surfaces and keep the top_n under (count desc, term asc)."""
    if top_n < 1:
        raise ValueError(f"top_n must be >= 1, got {top_n}")
    if not doc.tokens:
        raise CorpusError(f"document '{doc.id}' has no tokens")
    counts = Counter(token.surface for token in doc.tokens)
    ordered = sorted(counts.items(), key=lambda item: (-item[1], item[0]))[:top_n]
    max_count = ordered[0][1]
    entries = tuple(
        TermEntry(term=term, count=count, weight=count / max_count)
        for term, count in ordered
    )
    return TermWeights(document_id=doc.id, entries=entries)


def area_scores(doc: Document, lexicon: AreaLexicon) -> AreaScores:
    """Fraction of the document's tokens falling in each area's keyword set."""
    if not lexicon.areas:
        raise LexiconError("lexicon has no areas")
    if not doc.tokens:
        raise CorpusError(f"document '{doc.id}' has no tokens")
    total = len(doc.tokens)
    counts = Counter(token.surface for token in doc.tokens)
    scores = []
    for area, keywords in lexicon.areas:
        matched = sum(count for term, count in counts.items() if term in keywords)
        scores.append((area, matched / total))
    return AreaScores(document_id=doc.id, scores=tuple(scores))


def load_lexicon(path: str | Path | None = None) -> AreaLexicon:
    """Load an area lexicon JSON object {"area": ["keyword", ...], ...}, or the
    builtin Spanish four-area lexicon when no path is given. Keywords are
    normalized on load; a keyword in two areas is a fatal error."""
    if path is None:
        text = resources.files("plansim.data").joinpath("areas_es.json").read_text("utf-8")
        label = "builtin-areas"
    else:
        path = Path(path)
        if not path.is_file():
            raise LexiconError(f"lexicon file not found: {path}")
        text = path.read_text("utf-8")
        label = str(path)

    def reject_duplicates(pairs):
        keys = [key for key, _ in pairs]
        duplicates = {key for key in keys if keys.count(key) > 1}
        if duplicates:
            raise LexiconError(f"duplicate area name in {label}: '{sorted(duplicates)[0]}'")
        return dict(pairs)

    try:
        raw = json.loads(text, object_pairs_hook=reject_duplicates)
    except json.JSONDecodeError as exc:
        raise LexiconError(f"lexicon is not valid JSON: {label}: {exc}") from exc
    if not isinstance(raw, dict) or not raw:
        raise LexiconError(f"lexicon must be a non-empty JSON object: {label}")
    areas = []
    for area, keywords in raw.items():
        if not isinstance(keywords, list):
            raise LexiconError(f"area '{area}' in {label} must map to a list of keywords")
        normalized = {normalize_text(str(keyword)) for keyword in keywords}
        normalized.discard("")
        areas.append((normalize_text(area), frozenset(normalized)))
    return AreaLexicon(areas=tuple(areas))


def goal_alignment(docs: list[Document], goals: GoalCatalog,
                   params: JaroWinklerParams = DEFAULT_PARAMS,
                   policy: AggregationPolicy = AggregationPolicy(kind="top_k_mean")
                   ) -> SimilarityMatrix:
    """Document rows (sorted by id) against goal columns (catalog order).

    Each cell aggregates the document's per-sentence scores against the goal
    statement under the given policy; with top_k_mean and fewer than k
    sentences, all of them are averaged.
    """
    if not docs:
        raise CorpusError("goal_alignment requires at least one document")
    if not len(goals):
        raise CorpusError("goal_alignment requires a non-empty goal catalog")
    ordered = sorted(docs, key=lambda d: d.id)
    statements = [goal.statement for goal in goals]
    rows = []
    for doc in ordered:
        if not doc.sentences:
            raise CorpusError(f"document '{doc.id}' has no sentences")
        scores = score_matrix([s.text for s in doc.sentences], statements, params)
        row = tuple(
            aggregate_scores([float(x) for x in scores[:, gi]], policy)
            for gi in range(len(statements))
        )
        rows.append(row)
    return SimilarityMatrix(
        row_labels=tuple(doc.id for doc in ordered),
        col_labels=tuple(goal.id for goal in goals),
        values=tuple(rows),
    )
