"""Document and goal-catalog ingestion.

Turns a directory of plain-text plan documents into a fully preprocessed,
deterministic corpus: text is lowercased, diacritic-folded and
whitespace-collapsed, split into sentences, and tokenized with stopword
filtering. Goal catalogs (JSON) get the same normalization so that every
downstream string comparison sees one canonical alphabet.
"""

from __future__ import annotations

import json
import re
import unicodedata
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import CatalogError, CorpusError

# Sentence terminators. Newline counts so that headings and list items in
# plan documents become their own sentences instead of merging with the
# surrounding prose.
_TERMINATORS = re.compile(r"[.!?\n]")

# Maximal runs of Unicode letters; digits, underscore and punctuation separate.
_WORD = re.compile(r"[^\W\d_]+", re.UNICODE)

_MIN_TOKEN_LEN = 2


@dataclass(frozen=True)
class NormalizedSentence:
    """One sentence in canonical form: lowercase, folded, single-spaced."""

    index: int
    text: str


@dataclass(frozen=True)
class Token:
    surface: str
    sentence_index: int


@dataclass(frozen=True)
class Document:
    """A preprocessed plan document.

    ``tokens`` is exactly the concatenation of the per-sentence token lists,
    in sentence order.
    """

    id: str
    title: str
    raw_text: str
    sentences: tuple[NormalizedSentence, ...]
    tokens: tuple[Token, ...]


@dataclass(frozen=True)
class Goal:
    id: str
    name: str
    statement: str


@dataclass(frozen=True)
class GoalCatalog:
    goals: tuple[Goal, ...]
    source: str = ""

    def __len__(self) -> int:
        return len(self.goals)

    def __iter__(self):
        return iter(self.goals)


@dataclass(frozen=True)
class StopwordList:
    words: frozenset[str]
    source: str = "builtin-spanish"

    def __contains__(self, word: str) -> bool:
        return word in self.words


EMPTY_STOPWORDS = StopwordList(words=frozenset(), source="empty")


def normalize_text(raw: str) -> str:
    """Canonicalize text: NFKD, diacritics stripped, lowercase, spaces collapsed.

    Total and idempotent; empty input yields empty output. The fold maps
    accented letters to their base letter (including n-tilde to n), so the
    similarity metric downstream compares a small, stable alphabet.
    """
    text = unicodedata.normalize("NFKD", raw)
    text = "".join(ch for ch in text if not unicodedata.combining(ch))
    text = text.lower()
    return " ".join(text.split())


def segment_sentences(normalized: str) -> list[NormalizedSentence]:
    """Split normalized text on sentence terminators (. ! ? and newline).

    Empty fragments are discarded; surviving sentences get consecutive
    indices from 0.
    """
    sentences = []
    for fragment in _TERMINATORS.split(normalized):
        fragment = fragment.strip()
        if fragment:
            sentences.append(NormalizedSentence(index=len(sentences), text=fragment))
    return sentences


def tokenize(sentence: NormalizedSentence, stopwords: StopwordList) -> list[Token]:
    """Extract word tokens from one sentence, dropping stopwords and single letters."""
    return [
        Token(surface=word, sentence_index=sentence.index)
        for word in _WORD.findall(sentence.text)
        if len(word) >= _MIN_TOKEN_LEN and word not in stopwords
    ]


def preprocess_document(doc_id: str, title: str, raw_text: str,
                        stopwords: StopwordList) -> Document:
    """Build a Document from raw text.

    Segmentation runs on the raw text so newline terminators are still
    visible (normalize_text collapses them to spaces); each fragment is then
    normalized individually.
    """
    sentences = []
    for fragment in _TERMINATORS.split(raw_text):
        text = normalize_text(fragment)
        if text:
            sentences.append(NormalizedSentence(index=len(sentences), text=text))
    tokens = []
    for sentence in sentences:
        tokens.extend(tokenize(sentence, stopwords))
    return Document(
        id=doc_id,
        title=title,
        raw_text=raw_text,
        sentences=tuple(sentences),
        tokens=tuple(tokens),
    )


def slugify(name: str) -> str:
    """Derive a document id: lowercase, folded, non-alphanumerics to hyphens."""
    folded = normalize_text(name)
    slug = re.sub(r"[^a-z0-9]+", "-", folded).strip("-")
    return slug


def load_stopwords(path: str | Path | None = None) -> StopwordList:
    """Load a stopword file (one word per line, '#' comments), or the builtin
    Spanish list when no path is given. Entries are normalized on load."""
    if path is None:
        text = resources.files("plansim.data").joinpath("stopwords_es.txt").read_text("utf-8")
        source = "builtin-spanish"
    else:
        path = Path(path)
        if not path.is_file():
            raise CorpusError(f"stopword file not found: {path}")
        text = path.read_text("utf-8")
        source = str(path)
    words = set()
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        word = normalize_text(line)
        if word:
            words.add(word)
    return StopwordList(words=frozenset(words), source=source)


def load_corpus(dir_path: str | Path, stopwords: StopwordList) -> list[Document]:
    """Load every .txt file under dir_path as one Document, sorted by id."""
    directory = Path(dir_path)
    if not directory.is_dir():
        raise CorpusError(f"corpus directory not found: {directory}")
    files = sorted(directory.glob("*.txt"))
    if not files:
        raise CorpusError(f"no documents: {directory} contains no .txt files")
    documents: dict[str, Document] = {}
    for file in files:
        doc_id = slugify(file.stem)
        if not doc_id:
            raise CorpusError(f"cannot derive a document id from file name: {file}")
        if doc_id in documents:
            raise CorpusError(
                f"duplicate document id '{doc_id}': {file} collides with another file"
            )
        try:
            raw = file.read_text(encoding="utf-8")
        except UnicodeDecodeError as exc:
            raise CorpusError(f"file is not valid UTF-8: {file}") from exc
        documents[doc_id] = preprocess_document(doc_id, file.stem, raw, stopwords)
    return [documents[doc_id] for doc_id in sorted(documents)]


def load_goals(file_path: str | Path) -> GoalCatalog:
    """Load a JSON goal catalog: [{"id", "name", "statement"}, ...].

    Names and statements are normalized; file order is preserved.
    """
    path = Path(file_path)
    if not path.is_file():
        raise CatalogError(f"goal catalog not found: {path}")
    try:
        entries = json.loads(path.read_text(encoding="utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise CatalogError(f"goal catalog is not valid JSON: {path}: {exc}") from exc
    if not isinstance(entries, list):
        raise CatalogError(f"goal catalog must be a JSON array: {path}")
    goals = []
    seen = set()
    for position, entry in enumerate(entries):
        label = f"entry {position}"
        if not isinstance(entry, dict):
            raise CatalogError(f"{label} in {path} is not an object")
        missing = [key for key in ("id", "name", "statement") if key not in entry]
        if missing:
            raise CatalogError(f"{label} in {path} is missing keys: {', '.join(missing)}")
        goal_id = str(entry["id"])
        if goal_id in seen:
            raise CatalogError(f"duplicate goal id '{goal_id}' in {path}")
        seen.add(goal_id)
        statement = normalize_text(str(entry["statement"]))
        if not statement:
            raise CatalogError(f"goal '{goal_id}' in {path} has an empty statement")
        goals.append(Goal(id=goal_id, name=normalize_text(str(entry["name"])),
                          statement=statement))
    return GoalCatalog(goals=tuple(goals), source=str(path))
