import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from plansim.corpus import (
    NormalizedSentence,
    StopwordList,
    load_corpus,
    load_goals,
    load_stopwords,
    normalize_text,
    preprocess_document,
    segment_sentences,
    slugify,
    tokenize,
)
from plansim.errors import CatalogError, CorpusError

from conftest import NO_STOPWORDS, write_corpus


class TestNormalizeText:
    @pytest.mark.parametrize(
        "raw, expected",
        [
            ("Salud y Bienestar", "salud y bienestar"),
            ("Educación   Política", "educacion politica"),
            ("", ""),
            ("  ñandú  SÍ  ", "nandu si"),
            ("Paz,\tjusticia\n e  instituciones sólidas", "paz, justicia e instituciones solidas"),
            ("ÁÉÍÓÚÜÑ áéíóúüñ", "aeiouun aeiouun"),
        ],
    )
    def test_examples(self, raw, expected):
        assert normalize_text(raw) == expected

    @given(st.text(max_size=80))
    @settings(max_examples=300)
    def test_idempotent(self, text):
        once = normalize_text(text)
        assert normalize_text(once) == once

    @given(st.text(max_size=80))
    @settings(max_examples=300)
    def test_output_shape(self, text):
        out = normalize_text(text)
        assert out == out.lower()
        assert "  " not in out
        assert out == out.strip()


class TestSegmentSentences:
    def test_terminators_split(self):
        got = segment_sentences("fin de la pobreza. vida submarina.")
        assert [(s.index, s.text) for s in got] == [
            (0, "fin de la pobreza"),
            (1, "vida submarina"),
        ]

    def test_no_terminator(self):
        assert segment_sentences("hola") == [NormalizedSentence(0, "hola")]

    def test_only_terminators(self):
        assert segment_sentences("...") == []

    def test_exclaim_question_newline(self):
        got = segment_sentences("uno! dos? tres\ncuatro")
        assert [s.text for s in got] == ["uno", "dos", "tres", "cuatro"]

    def test_indices_consecutive(self):
        got = segment_sentences("a. b. c. d.")
        assert [s.index for s in got] == [0, 1, 2, 3]


class TestTokenize:
    def test_stopwords_removed(self):
        stopwords = StopwordList(words=frozenset({"la", "y", "el"}), source="test")
        sentence = NormalizedSentence(0, "la salud y el bienestar")
        assert [t.surface for t in tokenize(sentence, stopwords)] == ["salud", "bienestar"]

    def test_empty(self):
        assert tokenize(NormalizedSentence(0, ""), NO_STOPWORDS) == []

    def test_digits_and_punctuation_separate(self):
        sentence = NormalizedSentence(3, "covid-19 2021")
        tokens = tokenize(sentence, NO_STOPWORDS)
        assert [t.surface for t in tokens] == ["covid"]
        assert tokens[0].sentence_index == 3

    def test_single_letters_dropped(self):
        sentence = NormalizedSentence(0, "a la o salud e")
        stopwords = StopwordList(words=frozenset({"la"}), source="test")
        assert [t.surface for t in tokenize(sentence, stopwords)] == ["salud"]


class TestPreprocessDocument:
    def test_newlines_segment(self):
        doc = preprocess_document("d", "D", "Título Uno\nsegunda frase. tercera", NO_STOPWORDS)
        assert [s.text for s in doc.sentences] == ["titulo uno", "segunda frase", "tercera"]

    def test_tokens_concatenate_in_sentence_order(self):
        doc = preprocess_document("d", "D", "uno dos. tres cuatro.", NO_STOPWORDS)
        assert [(t.surface, t.sentence_index) for t in doc.tokens] == [
            ("uno", 0), ("dos", 0), ("tres", 1), ("cuatro", 1),
        ]
        rebuilt = []
        for sentence in doc.sentences:
            rebuilt.extend(tokenize(sentence, NO_STOPWORDS))
        assert list(doc.tokens) == rebuilt

    def test_no_stopword_survives(self):
        stopwords = load_stopwords()
        doc = preprocess_document("d", "D", "La salud y el bienestar de la nación.", stopwords)
        assert all(t.surface not in stopwords.words for t in doc.tokens)


class TestSlugify:
    @pytest.mark.parametrize(
        "name, expected",
        [
            ("Avanza Pais", "avanza-pais"),
            ("Acción Popular", "accion-popular"),
            ("Perú  Libre!", "peru-libre"),
            ("__Somos--Perú__", "somos-peru"),
        ],
    )
    def test_examples(self, name, expected):
        assert slugify(name) == expected


class TestLoadCorpus:
    def test_ids_and_order(self, corpus_dir):
        docs = load_corpus(corpus_dir, NO_STOPWORDS)
        assert [d.id for d in docs] == ["accion-popular", "avanza-pais"]
        assert docs[1].title == "Avanza Pais"

    def test_missing_directory(self, tmp_path):
        missing = tmp_path / "nope"
        with pytest.raises(CorpusError, match="nope"):
            load_corpus(missing, NO_STOPWORDS)

    def test_empty_directory(self, tmp_path):
        empty = tmp_path / "empty"
        empty.mkdir()
        with pytest.raises(CorpusError, match="no documents"):
            load_corpus(empty, NO_STOPWORDS)

    def test_non_utf8_file(self, tmp_path):
        bad = tmp_path / "bad"
        bad.mkdir()
        (bad / "broken.txt").write_bytes(b"plan \xff\xfe nacional")
        with pytest.raises(CorpusError, match="broken.txt"):
            load_corpus(bad, NO_STOPWORDS)

    def test_duplicate_ids(self, tmp_path):
        dup = write_corpus(tmp_path / "dup", {
            "Avanza Pais.txt": "uno.",
            "avanza_pais.txt": "dos.",
        })
        with pytest.raises(CorpusError, match="avanza-pais"):
            load_corpus(dup, NO_STOPWORDS)

    def test_single_sentence_file(self, tmp_path):
        single = write_corpus(tmp_path / "single", {"plan.txt": "una sola frase"})
        docs = load_corpus(single, NO_STOPWORDS)
        assert len(docs) == 1
        assert len(docs[0].sentences) == 1

    def test_deterministic(self, corpus_dir):
        first = load_corpus(corpus_dir, NO_STOPWORDS)
        second = load_corpus(corpus_dir, NO_STOPWORDS)
        assert first == second

    def test_non_txt_ignored(self, tmp_path):
        mixed = write_corpus(tmp_path / "mixed", {"plan.txt": "frase.", "notas.md": "x."})
        docs = load_corpus(mixed, NO_STOPWORDS)
        assert [d.id for d in docs] == ["plan"]


class TestLoadGoals:
    def test_shipped_catalog_has_17_goals(self):
        from importlib import resources

        with resources.as_file(resources.files("plansim.data") / "sdg_es.json") as path:
            catalog = load_goals(path)
        assert len(catalog) == 17
        names = [goal.name for goal in catalog]
        assert "vida submarina" in names
        assert "paz, justicia e instituciones solidas" in names

    def test_normalizes_names_and_statements(self, tmp_path):
        path = tmp_path / "g.json"
        path.write_text(
            '[{"id": "sdg-14", "name": "Vida submarina", "statement": "Conservar  los OCÉANOS"}]',
            encoding="utf-8",
        )
        catalog = load_goals(path)
        assert catalog.goals[0].name == "vida submarina"
        assert catalog.goals[0].statement == "conservar los oceanos"

    def test_duplicate_id(self, tmp_path):
        path = tmp_path / "g.json"
        path.write_text(
            '[{"id": "sdg-1", "name": "a", "statement": "x"},'
            ' {"id": "sdg-1", "name": "b", "statement": "y"}]',
            encoding="utf-8",
        )
        with pytest.raises(CatalogError, match="sdg-1"):
            load_goals(path)

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "g.json"
        path.write_text("[{", encoding="utf-8")
        with pytest.raises(CatalogError, match="not valid JSON"):
            load_goals(path)

    def test_missing_key(self, tmp_path):
        path = tmp_path / "g.json"
        path.write_text('[{"id": "g", "name": "n"}]', encoding="utf-8")
        with pytest.raises(CatalogError, match="statement"):
            load_goals(path)

    def test_empty_statement(self, tmp_path):
        path = tmp_path / "g.json"
        path.write_text('[{"id": "g", "name": "n", "statement": "  "}]', encoding="utf-8")
        with pytest.raises(CatalogError, match="'g'"):
            load_goals(path)

    def test_order_preserved(self, goals_file):
        catalog = load_goals(goals_file)
        assert [goal.id for goal in catalog] == ["g-1", "g-2"]


class TestLoadStopwords:
    def test_builtin_is_normalized(self):
        stopwords = load_stopwords()
        assert len(stopwords.words) > 200
        assert stopwords.source == "builtin-spanish"
        for word in stopwords.words:
            assert normalize_text(word) == word

    def test_common_words_present(self):
        stopwords = load_stopwords()
        for word in ("el", "la", "de", "que", "para", "segun", "tambien"):
            assert word in stopwords

    def test_custom_file_overrides(self, tmp_path):
        path = tmp_path / "stop.txt"
        path.write_text("# comment\nEL\nmás\n\n", encoding="utf-8")
        stopwords = load_stopwords(path)
        assert stopwords.words == frozenset({"el", "mas"})
        assert stopwords.source == str(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(CorpusError, match="stop.txt"):
            load_stopwords(tmp_path / "stop.txt")


def test_idempotence_over_random_unicode():
    rng = random.Random(20240301)
    for _ in range(2000):
        chars = []
        for _ in range(rng.randint(0, 40)):
            cp = rng.randint(0, 0x10FFFF)
            if 0xD800 <= cp <= 0xDFFF:
                cp = 0x61
            chars.append(chr(cp))
        text = "".join(chars)
        once = normalize_text(text)
        assert normalize_text(once) == once
