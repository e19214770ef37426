import random
from pathlib import Path

import pytest

from plansim.corpus import StopwordList, preprocess_document

VOCAB = """gobierno plan nacional salud educacion economia trabajo peru desarrollo
sostenible justicia paz pobreza programa reforma inversion seguridad familia agua
energia crecimiento empleo corrupcion congreso region comunidad derechos ninos
mujeres jovenes cultura ambiente tecnologia innovacion agricultura mineria pesca
turismo transporte vivienda hospital escuela universidad maestro medico impuesto
presupuesto descentralizacion institucion democracia libertad igualdad futuro
ciudad pueblo ley justo digno moderno rural andino costa sierra selva bosque
rio mar tierra aire clima rescate apoyo fondo banco credito deuda reactivacion
emergencia atencion calidad acceso servicio publico privado gestion obra represa
carretera puente puerto aeropuerto tren internet digital ciencia investigacion""".split()

NO_STOPWORDS = StopwordList(words=frozenset(), source="empty")


def make_sentence(rng: random.Random, vocab=VOCAB, min_words=3, max_words=10) -> str:
    return " ".join(rng.choice(vocab) for _ in range(rng.randint(min_words, max_words)))


def make_document(doc_id: str, sentences: list[str], stopwords=NO_STOPWORDS):
    """Document built from already-normalized sentences (joined with periods)."""
    return preprocess_document(doc_id, doc_id, ". ".join(sentences) + ".", stopwords)


def write_corpus(directory: Path, files: dict[str, str]) -> Path:
    directory.mkdir(parents=True, exist_ok=True)
    for name, text in files.items():
        (directory / name).write_text(text, encoding="utf-8")
    return directory


@pytest.fixture
def corpus_dir(tmp_path):
    return write_corpus(
        tmp_path / "plans",
        {
            "Avanza Pais.txt": (
                "Promover el crecimiento económico sostenido y el empleo digno.\n"
                "Reforma del sistema de salud pública. Hospitales para las regiones.\n"
                "Paz, justicia e instituciones sólidas.\n"
            ),
            "accion-popular.txt": (
                "Educación de calidad para todos los niños.\n"
                "Poner fin a la pobreza en todas sus formas y en todo el mundo.\n"
                "Agua limpia y saneamiento\n"
            ),
        },
    )


@pytest.fixture
def goals_file(tmp_path):
    path = tmp_path / "goals.json"
    path.write_text(
        '[{"id": "g-1", "name": "Fin de la pobreza",'
        ' "statement": "Poner fin a la pobreza en todas sus formas"},'
        ' {"id": "g-2", "name": "Vida submarina",'
        ' "statement": "Conservar los océanos y los recursos marinos"}]',
        encoding="utf-8",
    )
    return path
