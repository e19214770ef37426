"""plansim: similarity analytics for plan documents and goal catalogs."""

__version__ = "0.1.0"

from .analysis import (
    AreaLexicon,
    AreaScores,
    TermEntry,
    TermWeights,
    area_scores,
    goal_alignment,
    load_lexicon,
    term_weights,
)
from .corpus import (
    Document,
    Goal,
    GoalCatalog,
    NormalizedSentence,
    StopwordList,
    Token,
    load_corpus,
    load_goals,
    load_stopwords,
    normalize_text,
    segment_sentences,
    tokenize,
)
from .errors import CatalogError, CorpusError, LexiconError, PlansimError
from .textsim import (
    AggregationPolicy,
    JaroWinklerParams,
    MatchStats,
    SimilarityMatrix,
    document_similarity,
    jaro,
    jaro_winkler,
    match_stats,
    match_stats_bruteforce,
    sentence_best_score,
    similarity_matrix,
)

__all__ = [
    "AggregationPolicy",
    "AreaLexicon",
    "AreaScores",
    "CatalogError",
    "CorpusError",
    "Document",
    "Goal",
    "GoalCatalog",
    "JaroWinklerParams",
    "LexiconError",
    "MatchStats",
    "NormalizedSentence",
    "PlansimError",
    "SimilarityMatrix",
    "StopwordList",
    "TermEntry",
    "TermWeights",
    "Token",
    "area_scores",
    "document_similarity",
    "goal_alignment",
    "jaro",
    "jaro_winkler",
    "load_corpus",
    "load_goals",
    "load_lexicon",
    "load_stopwords",
    "match_stats",
    "match_stats_bruteforce",
    "normalize_text",
    "segment_sentences",
    "sentence_best_score",
    "similarity_matrix",
    "term_weights",
    "tokenize",
    "__version__",
]
