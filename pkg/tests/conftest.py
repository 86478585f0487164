import random
from importlib.resources import files
from pathlib import Path

import pytest

from hotelqa import build_index, load_corpus, load_gold
from hotelqa.corpus import Corpus, Document
from hotelqa.snapshot import save_snapshot

from mock_external_reader import MockReaderServer

FIXTURES = Path(str(files("hotelqa") / "fixtures"))

# vocabulary for randomized corpora; small enough to force term collisions
WORDS = [
    "harbor", "view", "pool", "gym", "towel", "suite", "breakfast", "coffee",
    "beach", "parking", "valet", "wifi", "spa", "sauna", "yoga", "tennis",
    "shuttle", "airport", "desk", "lobby", "garden", "bar", "menu", "dinner",
    "late", "early", "night", "day", "guest", "room",
]


@pytest.fixture(scope="session")
def fixture_corpus_path() -> Path:
    return FIXTURES / "hospitality_corpus.jsonl"


@pytest.fixture(scope="session")
def fixture_gold_path() -> Path:
    return FIXTURES / "hospitality_gold.jsonl"


@pytest.fixture(scope="session")
def fixture_rooms_path() -> Path:
    return FIXTURES / "rooms.json"


@pytest.fixture(scope="session")
def fixture_corpus(fixture_corpus_path):
    return load_corpus(fixture_corpus_path)


@pytest.fixture(scope="session")
def fixture_index(fixture_corpus):
    return build_index(fixture_corpus)


@pytest.fixture(scope="session")
def fixture_gold(fixture_gold_path):
    return load_gold(fixture_gold_path)


@pytest.fixture(scope="session")
def fixture_snapshot_path(tmp_path_factory, fixture_corpus, fixture_index) -> Path:
    path = tmp_path_factory.mktemp("snapshots") / "hospitality.snapshot.json"
    save_snapshot(path, fixture_corpus, fixture_index)
    return path


@pytest.fixture
def mock_reader():
    server = MockReaderServer().start()
    yield server
    server.stop()


def random_corpus(rng: random.Random, max_docs: int = 10, max_tokens: int = 50) -> Corpus:
    """A small random corpus over a shared word pool (documents may be empty)."""
    n_docs = rng.randint(1, max_docs)
    documents = []
    for i in range(n_docs):
        n_tokens = rng.randint(0, max_tokens)
        text = " ".join(rng.choice(WORDS) for _ in range(n_tokens))
        documents.append(Document(id=f"doc-{i}", title=f"Doc {i}", text=text))
    return Corpus.from_documents(documents)


def random_question(rng: random.Random, max_tokens: int = 8) -> str:
    words = [rng.choice(WORDS + ["zebra", "quasar"]) for _ in range(rng.randint(1, max_tokens))]
    return " ".join(words)
