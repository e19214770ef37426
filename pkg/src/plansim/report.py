"""Serialization of analysis results: CSV matrices, a JSON report bundle, and
deterministic SVG figures (heatmaps and seeded word clouds).

Every writer is a pure function of its inputs (plus the word-cloud seed);
repeated runs produce byte-identical files.
"""

from __future__ import annotations

import csv
import json
import logging
import math
import random
from dataclasses import dataclass
from pathlib import Path
from xml.sax.saxutils import escape

from .analysis import AreaScores, SimilarityMatrix, TermWeights
from .textsim import AggregationPolicy, JaroWinklerParams

log = logging.getLogger("plansim.report")

# word-cloud geometry
CLOUD_WIDTH = 960
CLOUD_HEIGHT = 640
MIN_FONT = 11.0
MAX_FONT = 52.0
_CHAR_WIDTH = 0.58          # crude glyph-width estimate, fraction of font size
_SPIRAL_STEP = 0.30         # radians per probe
_SPIRAL_GROWTH = 1.8        # px of radius per radian
_PALETTE = ("#1f3b73", "#7a1f1f", "#1f5c31", "#5b3a86", "#8a5a18", "#20606b")

# heatmap geometry
_CELL = 24
_LABEL_FONT = 11
_HEAT_DARK = (8, 48, 107)   # value 1.0; value 0.0 is white


@dataclass(frozen=True)
class DocumentStats:
    id: str
    title: str
    sentence_count: int
    token_count: int


@dataclass(frozen=True)
class CorpusSummary:
    document_count: int
    documents: tuple[DocumentStats, ...]


@dataclass(frozen=True)
class ParamsEcho:
    """Every knob that influenced the numbers, echoed for reproducibility."""

    prefix_scale: float
    max_prefix: int
    aggregation_compare: str
    aggregation_align: str
    k: int
    top_n: int
    seed: int
    version: str

    @classmethod
    def build(cls, params: JaroWinklerParams, compare_policy: AggregationPolicy,
              align_policy: AggregationPolicy, top_n: int, seed: int,
              version: str) -> "ParamsEcho":
        return cls(
            prefix_scale=params.prefix_scale,
            max_prefix=params.max_prefix,
            aggregation_compare=compare_policy.kind,
            aggregation_align=align_policy.kind,
            k=align_policy.k,
            top_n=top_n,
            seed=seed,
            version=version,
        )


@dataclass(frozen=True)
class ReportBundle:
    corpus_summary: CorpusSummary
    term_weights: tuple[TermWeights, ...]
    area_scores: tuple[AreaScores, ...]
    doc_matrix: SimilarityMatrix
    alignment_matrix: SimilarityMatrix | None
    params_echo: ParamsEcho


def _round9(x: float) -> float:
    # <= 9 significant digits once serialized: repr of the reparsed value is
    # never longer than the 9-digit literal it round-trips through
    return float(f"{x:.9g}")


def _matrix_dict(m: SimilarityMatrix) -> dict:
    return {
        "row_labels": list(m.row_labels),
        "col_labels": list(m.col_labels),
        "values": [[_round9(v) for v in row] for row in m.values],
    }


def write_matrix_csv(m: SimilarityMatrix, out: str | Path) -> None:
    """CSV with a leading label column, 6-decimal values, LF line endings."""
    with open(out, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow([""] + list(m.col_labels))
        for label, row in zip(m.row_labels, m.values):
            writer.writerow([label] + [f"{value:.6f}" for value in row])


def write_terms_csv(tw: TermWeights, out: str | Path) -> None:
    with open(out, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["term", "count", "weight"])
        for entry in tw.entries:
            writer.writerow([entry.term, entry.count, f"{entry.weight:.6f}"])


def write_json_report(bundle: ReportBundle, out: str | Path) -> None:
    """One JSON document, keys in bundle field order, floats at <= 9
    significant digits, byte-identical across runs."""
    payload = {
        "corpus_summary": {
            "document_count": bundle.corpus_summary.document_count,
            "documents": [
                {
                    "id": stats.id,
                    "title": stats.title,
                    "sentence_count": stats.sentence_count,
                    "token_count": stats.token_count,
                }
                for stats in bundle.corpus_summary.documents
            ],
        },
        "term_weights": [
            {
                "document_id": tw.document_id,
                "entries": [
                    {"term": e.term, "count": e.count, "weight": _round9(e.weight)}
                    for e in tw.entries
                ],
            }
            for tw in bundle.term_weights
        ],
        "area_scores": [
            {
                "document_id": a.document_id,
                "scores": [
                    {"area": area, "fraction": _round9(fraction)}
                    for area, fraction in a.scores
                ],
            }
            for a in bundle.area_scores
        ],
        "doc_matrix": _matrix_dict(bundle.doc_matrix),
        "alignment_matrix": (
            _matrix_dict(bundle.alignment_matrix)
            if bundle.alignment_matrix is not None
            else None
        ),
        "params_echo": {
            "prefix_scale": _round9(bundle.params_echo.prefix_scale),
            "max_prefix": bundle.params_echo.max_prefix,
            "aggregation_compare": bundle.params_echo.aggregation_compare,
            "aggregation_align": bundle.params_echo.aggregation_align,
            "k": bundle.params_echo.k,
            "top_n": bundle.params_echo.top_n,
            "seed": bundle.params_echo.seed,
            "version": bundle.params_echo.version,
        },
    }
    text = json.dumps(payload, ensure_ascii=False, indent=2) + "\n"
    Path(out).write_text(text, encoding="utf-8")


def _heat_color(value: float) -> str:
    r = round(255 + (_HEAT_DARK[0] - 255) * value)
    g = round(255 + (_HEAT_DARK[1] - 255) * value)
    b = round(255 + (_HEAT_DARK[2] - 255) * value)
    return f"#{r:02x}{g:02x}{b:02x}"


def render_heatmap_svg(m: SimilarityMatrix, out: str | Path) -> None:
    """Grid heatmap: one rect per cell on a white-to-dark ramp, labels on the
    left and top edges, the exact value as each cell's tooltip."""
    if not m.row_labels or not m.col_labels:
        raise ValueError("render_heatmap_svg requires a non-empty matrix")
    left = 12 + 7 * max(len(label) for label in m.row_labels)
    top = 12 + 7 * max(len(label) for label in m.col_labels)
    width = left + _CELL * len(m.col_labels) + 12
    height = top + _CELL * len(m.row_labels) + 12

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for j, label in enumerate(m.col_labels):
        x = left + j * _CELL + _CELL // 2
        parts.append(
            f'<text x="{x}" y="{top - 6}" font-size="{_LABEL_FONT}" '
            f'font-family="monospace" text-anchor="start" '
            f'transform="rotate(-60 {x} {top - 6})">{escape(label)}</text>'
        )
    for i, label in enumerate(m.row_labels):
        y = top + i * _CELL + _CELL // 2 + 4
        parts.append(
            f'<text x="{left - 6}" y="{y}" font-size="{_LABEL_FONT}" '
            f'font-family="monospace" text-anchor="end">{escape(label)}</text>'
        )
    for i, (row_label, row) in enumerate(zip(m.row_labels, m.values)):
        for j, (col_label, value) in enumerate(zip(m.col_labels, row)):
            x = left + j * _CELL
            y = top + i * _CELL
            parts.append(
                f'<rect x="{x}" y="{y}" width="{_CELL}" height="{_CELL}" '
                f'fill="{_heat_color(value)}" stroke="#cccccc" stroke-width="1">'
                f"<title>{escape(row_label)} / {escape(col_label)}: {value:.6f}</title>"
                "</rect>"
            )
    parts.append("</svg>")
    Path(out).write_text("\n".join(parts) + "\n", encoding="utf-8")


def _boxes_collide(a: tuple[float, float, float, float],
                   b: tuple[float, float, float, float]) -> bool:
    ax, ay, aw, ah = a
    bx, by, bw, bh = b
    return ax < bx + bw and ax + aw > bx and ay < by + bh and ay + ah > by


def render_wordcloud_svg(tw: TermWeights, out: str | Path, seed: int) -> None:
    """Seeded word-cloud figure.

    Font size is linear in weight between MIN_FONT and MAX_FONT. Each term
    walks an archimedean spiral from the canvas center (seeded start angle)
    until its estimated bounding box clears all placed boxes; terms that
    leave the canvas before fitting are skipped with a warning.
    """
    if not tw.entries:
        raise ValueError("render_wordcloud_svg requires at least one term")
    rng = random.Random(seed)
    cx = CLOUD_WIDTH / 2.0
    cy = CLOUD_HEIGHT / 2.0
    max_radius = math.hypot(cx, cy)

    placed: list[tuple[float, float, float, float]] = []
    texts: list[str] = []
    skipped: list[str] = []
    for index, entry in enumerate(tw.entries):
        size = MIN_FONT + (MAX_FONT - MIN_FONT) * entry.weight
        box_w = _CHAR_WIDTH * size * len(entry.term) + 4.0
        box_h = size + 4.0
        start_angle = rng.uniform(0.0, 2.0 * math.pi)
        position = None
        step = 0
        while True:
            angle = step * _SPIRAL_STEP
            radius = _SPIRAL_GROWTH * angle
            if radius > max_radius:
                break
            x = cx + radius * math.cos(start_angle + angle)
            y = cy + radius * math.sin(start_angle + angle)
            box = (x - box_w / 2.0, y - box_h / 2.0, box_w, box_h)
            inside = (box[0] >= 0.0 and box[1] >= 0.0
                      and box[0] + box_w <= CLOUD_WIDTH and box[1] + box_h <= CLOUD_HEIGHT)
            if inside and not any(_boxes_collide(box, other) for other in placed):
                position = (x, y)
                placed.append(box)
                break
            step += 1
        if position is None:
            skipped.append(entry.term)
            continue
        color = _PALETTE[index % len(_PALETTE)]
        texts.append(
            f'<text x="{position[0]:.2f}" y="{position[1] + size * 0.35:.2f}" '
            f'font-size="{size:.2f}" font-family="sans-serif" fill="{color}" '
            f'text-anchor="middle">{escape(entry.term)}</text>'
        )

    if skipped:
        log.warning("word cloud for '%s': no room for %d terms, skipped: %s",
                    tw.document_id, len(skipped), ", ".join(skipped))

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{CLOUD_WIDTH}" '
        f'height="{CLOUD_HEIGHT}" viewBox="0 0 {CLOUD_WIDTH} {CLOUD_HEIGHT}">',
        '<rect width="100%" height="100%" fill="white"/>',
        *texts,
        "</svg>",
    ]
    Path(out).write_text("\n".join(parts) + "\n", encoding="utf-8")
