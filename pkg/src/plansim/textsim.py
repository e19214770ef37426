"""Jaro and Jaro-Winkler similarity, from character pairs up to document matrices.

The character-level rule: s1[i] and s2[j] match when the characters are
equal, j is not already consumed, and |i - j| <= max(floor(max(|s1|,|s2|)/2) - 1, 0).
Matching is greedy left-to-right, taking the smallest unconsumed j. The
transposition count t is half the number of positions where the i-th matched
character of s1 differs from the i-th matched character of s2.

Jaro similarity is 0 when no characters match, else
(m/|s1| + m/|s2| + (m - t)/m) / 3. The Winkler extension adds
prefix_len * prefix_scale * (1 - jaro) for the common prefix (capped).

Document-level scores average per-sentence best matches; see
:func:`document_similarity` and :class:`AggregationPolicy`.

Two matching kernels implement the same rule: a scalar window-scan behind
:func:`match_stats`, and a batch kernel behind the document-level operations
that walks per-character position lists (much faster over thousands of
sentence pairs). The test suite checks them against each other and against
:func:`match_stats_bruteforce`. With numba available the kernels are JIT
compiled; otherwise the identical code runs as plain Python.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba installed
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def decorate(func):
            return func

        return decorate

from .corpus import Document, NormalizedSentence
from .errors import CorpusError


@dataclass(frozen=True)
class MatchStats:
    """Matching-character and transposition counts for one string pair.

    ``out_of_order`` is twice the transposition count, kept as an integer so
    no rounding ever enters; ``t`` derives from it exactly.
    """

    m: int
    out_of_order: int
    len1: int
    len2: int

    @property
    def t(self) -> float:
        return self.out_of_order / 2.0


@dataclass(frozen=True)
class JaroWinklerParams:
    prefix_scale: float = 0.1
    max_prefix: int = 4

    def __post_init__(self) -> None:
        if not 0.0 <= self.prefix_scale <= 0.25:
            raise ValueError(f"prefix_scale must be in [0, 0.25], got {self.prefix_scale}")
        if self.max_prefix < 0:
            raise ValueError(f"max_prefix must be >= 0, got {self.max_prefix}")
        if self.prefix_scale * self.max_prefix > 1.0:
            raise ValueError(
                "prefix_scale * max_prefix must not exceed 1 "
                f"(got {self.prefix_scale} * {self.max_prefix})"
            )


DEFAULT_PARAMS = JaroWinklerParams()

AGGREGATION_KINDS = ("mean_of_best", "top_k_mean")


@dataclass(frozen=True)
class AggregationPolicy:
    """How per-sentence best scores collapse into one document-level score.

    mean_of_best averages every sentence's best score; top_k_mean averages
    only the k highest (ties broken by ascending sentence index), or all of
    them when fewer than k exist.
    """

    kind: str = "mean_of_best"
    k: int = 5

    def __post_init__(self) -> None:
        if self.kind not in AGGREGATION_KINDS:
            raise ValueError(f"unknown aggregation kind: {self.kind!r}")
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")


@dataclass(frozen=True)
class SimilarityMatrix:
    """Labeled matrix of scores in [0, 1], row-major.

    Square document matrices carry identical row and column labels and are
    symmetric with a unit diagonal; rectangular alignment matrices have
    document rows and goal columns.
    """

    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    values: tuple[tuple[float, ...], ...]

    def __post_init__(self) -> None:
        if len(self.values) != len(self.row_labels):
            raise ValueError("row count does not match row_labels")
        for row in self.values:
            if len(row) != len(self.col_labels):
                raise ValueError("column count does not match col_labels")


# ---------------------------------------------------------------------------
# kernels (numba-compiled when available, plain Python otherwise)


@njit(cache=True)
def _match_counts(s1, s2, matched1, used2):
    """Greedy window matching; returns (m, out_of_order). Scratch arrays must
    be at least len(s1) and len(s2)."""
    l1 = s1.shape[0]
    l2 = s2.shape[0]
    window = max(l1, l2) // 2 - 1
    if window < 0:
        window = 0
    for j in range(l2):
        used2[j] = False
    m = 0
    for i in range(l1):
        lo = i - window
        if lo < 0:
            lo = 0
        hi = i + window + 1
        if hi > l2:
            hi = l2
        found = False
        for j in range(lo, hi):
            if not used2[j] and s2[j] == s1[i]:
                used2[j] = True
                found = True
                break
        matched1[i] = found
        if found:
            m += 1
    out_of_order = 0
    if m > 0:
        k = 0
        for i in range(l1):
            if matched1[i]:
                while not used2[k]:
                    k += 1
                if s1[i] != s2[k]:
                    out_of_order += 1
                k += 1
    return m, out_of_order


@njit(cache=True)
def _jw_value(m, out_of_order, l1, l2, prefix_len, prefix_scale):
    """Jaro-Winkler from match counts. The exact expression and evaluation
    order here are the single source of truth for every code path."""
    if m == 0:
        sim = 0.0
    else:
        t = out_of_order / 2.0
        sim = (m / l1 + m / l2 + (m - t) / m) / 3.0
    w = sim + prefix_len * prefix_scale * (1.0 - sim)
    if w > 1.0:
        w = 1.0
    return w


@njit(cache=True)
def _score_matrix_kernel(qcodes, qoff, tcodes, toff, nsym, prefix_scale, max_prefix):
    """All pairwise Jaro-Winkler scores between two sentence batches.

    Strings arrive as one concatenated symbol array per side plus offsets;
    symbols are already remapped to 0..nsym-1. For each target the positions
    of every symbol are grouped once, so the greedy matcher advances a
    per-symbol pointer instead of rescanning the window: the pointer always
    sits at the smallest unconsumed position at or past the lowest window
    bound seen so far, which is exactly the position the window scan would
    take (window lower bounds only grow with i, and only equal symbols
    compete for the same positions).
    """
    nq = qoff.shape[0] - 1
    nt = toff.shape[0] - 1

    # group[ti, c]..group[ti, c+1] indexes tpos entries holding the positions
    # of symbol c within target ti (ascending)
    group = np.zeros((nt, nsym + 1), np.int32)
    tpos = np.zeros(tcodes.shape[0], np.int32)
    fill = np.zeros(nsym, np.int32)
    for ti in range(nt):
        base = toff[ti]
        lt = toff[ti + 1] - base
        for c in range(nsym + 1):
            group[ti, c] = 0
        for k in range(lt):
            group[ti, tcodes[base + k] + 1] += 1
        for c in range(nsym):
            group[ti, c + 1] += group[ti, c]
        for c in range(nsym):
            fill[c] = group[ti, c]
        for k in range(lt):
            c = tcodes[base + k]
            tpos[base + fill[c]] = k
            fill[c] += 1

    max_q = 0
    for i in range(nq):
        n = qoff[i + 1] - qoff[i]
        if n > max_q:
            max_q = n
    max_t = 0
    for i in range(nt):
        n = toff[i + 1] - toff[i]
        if n > max_t:
            max_t = n
    matched1 = np.zeros(max(max_q, 1), np.bool_)
    used2 = np.zeros(max(max_t, 1), np.bool_)
    taken = np.zeros(nsym, np.int32)

    out = np.zeros((nq, nt), np.float64)
    for qi in range(nq):
        qbase = qoff[qi]
        lq = qoff[qi + 1] - qbase
        for ti in range(nt):
            tbase = toff[ti]
            lt = toff[ti + 1] - tbase
            window = lq if lq > lt else lt
            window = window // 2 - 1
            if window < 0:
                window = 0
            for k in range(lt):
                used2[k] = False
            for c in range(nsym):
                taken[c] = 0
            m = 0
            for i in range(lq):
                c = qcodes[qbase + i]
                p = group[ti, c] + taken[c]
                end = group[ti, c + 1]
                lo = i - window
                while p < end and tpos[tbase + p] < lo:
                    p += 1
                taken[c] = p - group[ti, c]
                found = False
                if p < end:
                    j = tpos[tbase + p]
                    if j <= i + window:
                        found = True
                        used2[j] = True
                        taken[c] += 1
                        m += 1
                matched1[i] = found
            out_of_order = 0
            if m > 0:
                k = 0
                for i in range(lq):
                    if matched1[i]:
                        while not used2[k]:
                            k += 1
                        if qcodes[qbase + i] != tcodes[tbase + k]:
                            out_of_order += 1
                        k += 1
            prefix_len = 0
            cap = max_prefix
            if lq < cap:
                cap = lq
            if lt < cap:
                cap = lt
            while prefix_len < cap and qcodes[qbase + prefix_len] == tcodes[tbase + prefix_len]:
                prefix_len += 1
            out[qi, ti] = _jw_value(m, out_of_order, lq, lt, prefix_len, prefix_scale)
    return out


# ---------------------------------------------------------------------------
# pair-level API


def _encode(text: str) -> np.ndarray:
    return np.frombuffer(text.encode("utf-32-le"), dtype=np.uint32)


def match_stats(s1: str, s2: str) -> MatchStats:
    """Count matching characters and out-of-order matches for two strings."""
    if not s1 or not s2:
        raise ValueError("match_stats requires non-empty strings")
    a = _encode(s1)
    b = _encode(s2)
    matched1 = np.zeros(len(s1), np.bool_)
    used2 = np.zeros(len(s2), np.bool_)
    m, out_of_order = _match_counts(a, b, matched1, used2)
    return MatchStats(m=int(m), out_of_order=int(out_of_order), len1=len(s1), len2=len(s2))


def match_stats_bruteforce(s1: str, s2: str) -> MatchStats:
    """Verification oracle: the window rule written directly, no shared code.

    Restricted to strings of at most 16 characters.
    """
    if not s1 or not s2:
        raise ValueError("match_stats_bruteforce requires non-empty strings")
    if len(s1) > 16 or len(s2) > 16:
        raise ValueError("match_stats_bruteforce accepts strings of length <= 16 only")
    window = max((max(len(s1), len(s2)) // 2) - 1, 0)
    pairs: list[tuple[int, int]] = []
    for i in range(len(s1)):
        for j in range(len(s2)):
            if j in [q for _, q in pairs]:
                continue
            if abs(i - j) > window:
                continue
            if s1[i] == s2[j]:
                pairs.append((i, j))
                break
    first = [s1[i] for i, _ in pairs]
    second = [s2[j] for j in sorted(j for _, j in pairs)]
    out_of_order = sum(1 for x, y in zip(first, second) if x != y)
    return MatchStats(m=len(pairs), out_of_order=out_of_order, len1=len(s1), len2=len(s2))


def common_prefix_len(s1: str, s2: str, cap: int) -> int:
    n = 0
    for a, b in zip(s1, s2):
        if a != b or n >= cap:
            break
        n += 1
    return n


def jaro(s1: str, s2: str) -> float:
    """Jaro similarity in [0, 1]. Two empty strings are identical, so 1;
    one empty string shares nothing, so 0."""
    if not s1 and not s2:
        return 1.0
    if not s1 or not s2:
        return 0.0
    stats = match_stats(s1, s2)
    return _jw_value(stats.m, stats.out_of_order, stats.len1, stats.len2, 0, 0.0)


def jaro_winkler(s1: str, s2: str, params: JaroWinklerParams = DEFAULT_PARAMS) -> float:
    """Jaro-Winkler similarity in [0, 1] with the common-prefix bonus."""
    if not s1 and not s2:
        return 1.0
    if not s1 or not s2:
        return 0.0
    stats = match_stats(s1, s2)
    prefix_len = common_prefix_len(s1, s2, params.max_prefix)
    return _jw_value(stats.m, stats.out_of_order, stats.len1, stats.len2,
                     prefix_len, params.prefix_scale)


# ---------------------------------------------------------------------------
# batch scoring


def _encode_batch(texts: list[str]) -> tuple[np.ndarray, np.ndarray]:
    codes = np.frombuffer("".join(texts).encode("utf-32-le"), dtype=np.uint32)
    offsets = np.zeros(len(texts) + 1, np.int64)
    for i, text in enumerate(texts):
        offsets[i + 1] = offsets[i] + len(text)
    return codes, offsets


def score_matrix(queries: list[str], targets: list[str],
                 params: JaroWinklerParams = DEFAULT_PARAMS) -> np.ndarray:
    """Jaro-Winkler score of every query against every target.

    Returns a float64 array of shape (len(queries), len(targets)); entry
    (i, j) is bitwise-equal to jaro_winkler(queries[i], targets[j], params).
    """
    if not queries or not targets:
        raise ValueError("score_matrix requires non-empty query and target lists")
    if any(not q for q in queries) or any(not t for t in targets):
        raise ValueError("score_matrix strings must be non-empty")
    qcodes, qoff = _encode_batch(queries)
    tcodes, toff = _encode_batch(targets)
    alphabet = np.unique(np.concatenate((qcodes, tcodes)))
    q = np.searchsorted(alphabet, qcodes).astype(np.uint32)
    t = np.searchsorted(alphabet, tcodes).astype(np.uint32)
    return _score_matrix_kernel(q, qoff, t, toff, len(alphabet),
                                params.prefix_scale, params.max_prefix)


def sentence_best_score(query: NormalizedSentence, targets: list[NormalizedSentence],
                        params: JaroWinklerParams = DEFAULT_PARAMS) -> float:
    """Best Jaro-Winkler score of one sentence against a sentence list."""
    if not targets:
        raise ValueError("sentence_best_score requires at least one target sentence")
    scores = score_matrix([query.text], [t.text for t in targets], params)
    return float(scores.max())


def aggregate_scores(scores: list[float], policy: AggregationPolicy) -> float:
    """Collapse per-sentence scores (in sentence order) to one value."""
    if not scores:
        raise ValueError("aggregate_scores requires at least one score")
    if policy.kind == "top_k_mean":
        ranked = sorted(enumerate(scores), key=lambda item: (-item[1], item[0]))
        picked = [value for _, value in ranked[: policy.k]]
        return sum(picked) / len(picked)
    return sum(scores) / len(scores)


def _require_sentences(doc: Document) -> list[str]:
    if not doc.sentences:
        raise CorpusError(f"document '{doc.id}' has no sentences")
    return [s.text for s in doc.sentences]


def _directed_means(a: Document, b: Document, params: JaroWinklerParams,
                    policy: AggregationPolicy) -> tuple[float, float]:
    """(d(A,B), d(B,A)) from one pairwise score matrix: row maxima are A's
    per-sentence bests, column maxima are B's."""
    scores = score_matrix(_require_sentences(a), _require_sentences(b), params)
    forward = [float(x) for x in scores.max(axis=1)]
    backward = [float(x) for x in scores.max(axis=0)]
    return aggregate_scores(forward, policy), aggregate_scores(backward, policy)


def document_similarity(a: Document, b: Document,
                        params: JaroWinklerParams = DEFAULT_PARAMS,
                        policy: AggregationPolicy = AggregationPolicy()) -> float:
    """Symmetric document similarity: mean of the two directed scores."""
    forward, backward = _directed_means(a, b, params, policy)
    return (forward + backward) / 2.0


def similarity_matrix(docs: list[Document],
                      params: JaroWinklerParams = DEFAULT_PARAMS,
                      policy: AggregationPolicy = AggregationPolicy()) -> SimilarityMatrix:
    """Square document-by-document similarity matrix over sorted ids.

    The upper triangle is computed and mirrored; the diagonal is 1 by
    construction.
    """
    if len(docs) < 2:
        raise CorpusError("similarity_matrix requires at least 2 documents")
    ordered = sorted(docs, key=lambda d: d.id)
    for doc in ordered:
        _require_sentences(doc)
    n = len(ordered)
    values = [[1.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            score = document_similarity(ordered[i], ordered[j], params, policy)
            values[i][j] = score
            values[j][i] = score
    labels = tuple(doc.id for doc in ordered)
    return SimilarityMatrix(
        row_labels=labels,
        col_labels=labels,
        values=tuple(tuple(row) for row in values),
    )
