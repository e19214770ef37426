"""Command-line interface wiring corpus loading, analysis, and reporting.

One subcommand per result artifact (wordcloud, areas, compare, align) plus
``report``, which runs the whole pipeline into one output directory.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .analysis import area_scores, goal_alignment, load_lexicon, term_weights
from .corpus import load_corpus, load_goals, load_stopwords
from .errors import PlansimError
from .report import (
    CorpusSummary,
    DocumentStats,
    ParamsEcho,
    ReportBundle,
    render_heatmap_svg,
    render_wordcloud_svg,
    write_json_report,
    write_matrix_csv,
    write_terms_csv,
)
from .textsim import (
    AggregationPolicy,
    JaroWinklerParams,
    SimilarityMatrix,
    similarity_matrix,
)

_AGGREGATION_FLAGS = {"mean-of-best": "mean_of_best", "top-k-mean": "top_k_mean"}
_DEFAULT_AGGREGATION = {"compare": "mean-of-best", "align": "top-k-mean"}


@dataclass(frozen=True)
class RunConfig:
    command: str
    corpus_dir: Path
    goals_file: Path | None
    stopwords_file: Path | None
    lexicon_file: Path | None
    output_dir: Path
    top_n: int
    k: int
    prefix_scale: float
    max_prefix: int
    aggregation: str | None
    seed: int


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return value


def _nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be a non-negative integer, got {text}")
    return value


def _scale(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 0.25:
        raise argparse.ArgumentTypeError(f"must be in [0, 0.25], got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plansim",
        description="Measure similarity among plan documents and their "
                    "alignment with a goal catalog.",
    )
    parser.add_argument("--version", action="version", version=f"plansim {__version__}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--corpus", required=True, metavar="DIR", type=Path,
                        help="directory of UTF-8 .txt documents, one per file")
    common.add_argument("--goals", metavar="FILE", type=Path,
                        help="JSON goal catalog [{id, name, statement}, ...]")
    common.add_argument("--stopwords", metavar="FILE", type=Path,
                        help="stopword file, one word per line (default: builtin Spanish)")
    common.add_argument("--lexicon", metavar="FILE", type=Path,
                        help="area lexicon JSON (default: builtin four areas)")
    common.add_argument("--output", metavar="DIR", type=Path, default=Path("out"),
                        help="output directory (default: out)")
    common.add_argument("--top", metavar="N", type=_positive_int, default=100,
                        dest="top_n", help="terms per word cloud (default: 100)")
    common.add_argument("--k", metavar="K", type=_positive_int, default=5,
                        help="k for top-k-mean aggregation (default: 5)")
    common.add_argument("--prefix-scale", metavar="P", type=_scale, default=0.1,
                        help="Winkler prefix scale in [0, 0.25] (default: 0.1)")
    common.add_argument("--max-prefix", metavar="L", type=_nonnegative_int, default=4,
                        help="Winkler prefix cap (default: 4)")
    common.add_argument("--aggregation", choices=sorted(_AGGREGATION_FLAGS),
                        default=None,
                        help="sentence-score aggregation (default: mean-of-best "
                             "for compare, top-k-mean for align)")
    common.add_argument("--seed", metavar="S", type=_nonnegative_int, default=42,
                        help="word-cloud layout seed (default: 42)")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("wordcloud", parents=[common],
                   help="term-frequency csv and word-cloud svg per document")
    sub.add_parser("areas", parents=[common],
                   help="thematic-area fractions per document")
    sub.add_parser("compare", parents=[common],
                   help="document-by-document similarity matrix")
    sub.add_parser("align", parents=[common],
                   help="document-by-goal alignment matrix")
    sub.add_parser("report", parents=[common],
                   help="all analyses plus a JSON report")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        corpus_dir=args.corpus,
        goals_file=args.goals,
        stopwords_file=args.stopwords,
        lexicon_file=args.lexicon,
        output_dir=args.output,
        top_n=args.top_n,
        k=args.k,
        prefix_scale=args.prefix_scale,
        max_prefix=args.max_prefix,
        aggregation=args.aggregation,
        seed=args.seed,
    )


def _policy(cfg: RunConfig, stage: str) -> AggregationPolicy:
    flag = cfg.aggregation or _DEFAULT_AGGREGATION[stage]
    return AggregationPolicy(kind=_AGGREGATION_FLAGS[flag], k=cfg.k)


def _print_config(cfg: RunConfig) -> None:
    fields = [
        f"command={cfg.command}",
        f"corpus={cfg.corpus_dir}",
        f"goals={cfg.goals_file if cfg.goals_file else 'none'}",
        f"stopwords={cfg.stopwords_file if cfg.stopwords_file else 'builtin-spanish'}",
        f"lexicon={cfg.lexicon_file if cfg.lexicon_file else 'builtin-areas'}",
        f"output={cfg.output_dir}",
        f"top_n={cfg.top_n}",
        f"k={cfg.k}",
        f"prefix_scale={cfg.prefix_scale}",
        f"max_prefix={cfg.max_prefix}",
        f"aggregation={cfg.aggregation or 'auto'}",
        f"seed={cfg.seed}",
    ]
    print("plansim config: " + " ".join(fields), file=sys.stderr)


def _load_inputs(cfg: RunConfig):
    stopwords = load_stopwords(cfg.stopwords_file)
    docs = load_corpus(cfg.corpus_dir, stopwords)
    return stopwords, docs


def _params(cfg: RunConfig) -> JaroWinklerParams:
    return JaroWinklerParams(prefix_scale=cfg.prefix_scale, max_prefix=cfg.max_prefix)


def cmd_wordcloud(cfg: RunConfig) -> int:
    _, docs = _load_inputs(cfg)
    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    for doc in docs:
        weights = term_weights(doc, cfg.top_n)
        write_terms_csv(weights, cfg.output_dir / f"terms-{doc.id}.csv")
        render_wordcloud_svg(weights, cfg.output_dir / f"wordcloud-{doc.id}.svg", cfg.seed)
    return 0


def _area_matrix(docs, lexicon) -> tuple[list, SimilarityMatrix]:
    rows = [area_scores(doc, lexicon) for doc in docs]
    matrix = SimilarityMatrix(
        row_labels=tuple(doc.id for doc in docs),
        col_labels=tuple(area for area, _ in lexicon.areas),
        values=tuple(tuple(fraction for _, fraction in row.scores) for row in rows),
    )
    return rows, matrix


def cmd_areas(cfg: RunConfig) -> int:
    _, docs = _load_inputs(cfg)
    lexicon = load_lexicon(cfg.lexicon_file)
    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    _, matrix = _area_matrix(docs, lexicon)
    write_matrix_csv(matrix, cfg.output_dir / "areas.csv")
    return 0


def cmd_compare(cfg: RunConfig) -> int:
    _, docs = _load_inputs(cfg)
    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    matrix = similarity_matrix(docs, _params(cfg), _policy(cfg, "compare"))
    write_matrix_csv(matrix, cfg.output_dir / "doc-similarity.csv")
    render_heatmap_svg(matrix, cfg.output_dir / "doc-similarity.svg")
    return 0


def cmd_align(cfg: RunConfig) -> int:
    if cfg.goals_file is None:
        print("error: align requires --goals FILE (a JSON goal catalog)", file=sys.stderr)
        return 2
    _, docs = _load_inputs(cfg)
    goals = load_goals(cfg.goals_file)
    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    matrix = goal_alignment(docs, goals, _params(cfg), _policy(cfg, "align"))
    write_matrix_csv(matrix, cfg.output_dir / "goal-alignment.csv")
    render_heatmap_svg(matrix, cfg.output_dir / "goal-alignment.svg")
    return 0


def cmd_report(cfg: RunConfig) -> int:
    _, docs = _load_inputs(cfg)
    goals = load_goals(cfg.goals_file) if cfg.goals_file is not None else None
    lexicon = load_lexicon(cfg.lexicon_file)
    params = _params(cfg)
    cfg.output_dir.mkdir(parents=True, exist_ok=True)

    all_weights = []
    for doc in docs:
        weights = term_weights(doc, cfg.top_n)
        all_weights.append(weights)
        write_terms_csv(weights, cfg.output_dir / f"terms-{doc.id}.csv")
        render_wordcloud_svg(weights, cfg.output_dir / f"wordcloud-{doc.id}.svg", cfg.seed)

    scores, area_matrix = _area_matrix(docs, lexicon)
    write_matrix_csv(area_matrix, cfg.output_dir / "areas.csv")

    doc_matrix = similarity_matrix(docs, params, _policy(cfg, "compare"))
    write_matrix_csv(doc_matrix, cfg.output_dir / "doc-similarity.csv")
    render_heatmap_svg(doc_matrix, cfg.output_dir / "doc-similarity.svg")

    alignment = None
    if goals is not None:
        alignment = goal_alignment(docs, goals, params, _policy(cfg, "align"))
        write_matrix_csv(alignment, cfg.output_dir / "goal-alignment.csv")
        render_heatmap_svg(alignment, cfg.output_dir / "goal-alignment.svg")

    bundle = ReportBundle(
        corpus_summary=CorpusSummary(
            document_count=len(docs),
            documents=tuple(
                DocumentStats(id=doc.id, title=doc.title,
                              sentence_count=len(doc.sentences),
                              token_count=len(doc.tokens))
                for doc in docs
            ),
        ),
        term_weights=tuple(all_weights),
        area_scores=tuple(scores),
        doc_matrix=doc_matrix,
        alignment_matrix=alignment,
        params_echo=ParamsEcho.build(params, _policy(cfg, "compare"),
                                     _policy(cfg, "align"), cfg.top_n, cfg.seed,
                                     __version__),
    )
    write_json_report(bundle, cfg.output_dir / "report.json")
    return 0


_COMMANDS = {
    "wordcloud": cmd_wordcloud,
    "areas": cmd_areas,
    "compare": cmd_compare,
    "align": cmd_align,
    "report": cmd_report,
}


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = _config_from_args(args)
    _print_config(cfg)
    try:
        return _COMMANDS[cfg.command](cfg)
    except (PlansimError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
