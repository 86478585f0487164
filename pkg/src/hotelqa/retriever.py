"""TF-IDF indexing over uni/bi-gram terms and cosine-ranked document retrieval.

Weights use raw term counts scaled by a smoothed inverse document frequency,
idf(t) = ln((1 + N) / (1 + df(t))) + 1, and every document vector is
L2-normalized, so all similarities live in [0, 1] and cosine reduces to a
sparse dot product.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass

from .corpus import Corpus, TokenizerConfig, ngram_terms, tokenize

__all__ = [
    "SparseVector",
    "Vocabulary",
    "TfIdfIndex",
    "RetrievalHit",
    "build_index",
    "vectorize_query",
    "cosine",
    "retrieve",
]

log = logging.getLogger(__name__)

DEFAULT_TOP_K = 3


@dataclass(frozen=True)
class SparseVector:
    """Sorted (term_id, weight) pairs; zero weights are never stored."""

    entries: tuple[tuple[int, float], ...]

    def __post_init__(self) -> None:
        prev = -1
        for term_id, weight in self.entries:
            if term_id <= prev:
                raise ValueError("term_ids must be strictly increasing")
            if weight <= 0.0:
                raise ValueError("weights must be positive")
            prev = term_id

    @property
    def is_empty(self) -> bool:
        return not self.entries

    def dot(self, other: "SparseVector") -> float:
        a, b = self.entries, other.entries
        i = j = 0
        total = 0.0
        while i < len(a) and j < len(b):
            ta, tb = a[i][0], b[j][0]
            if ta == tb:
                total += a[i][1] * b[j][1]
                i += 1
                j += 1
            elif ta < tb:
                i += 1
            else:
                j += 1
        return total

    @classmethod
    def from_weights(cls, weights: dict[int, float]) -> "SparseVector":
        """L2-normalize a term_id -> weight mapping into a sparse vector."""
        norm = math.sqrt(sum(w * w for w in weights.values()))
        if norm == 0.0:
            return cls(entries=())
        return cls(entries=tuple((tid, w / norm) for tid, w in sorted(weights.items())))


@dataclass(frozen=True)
class Vocabulary:
    """Dense term ids (assigned in sorted term order) and document frequencies."""

    term_to_id: dict[str, int]
    df: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.term_to_id)

    def id_of(self, term: str) -> int | None:
        return self.term_to_id.get(term)


@dataclass(frozen=True)
class TfIdfIndex:
    n_docs: int
    vocabulary: Vocabulary
    idf: tuple[float, ...]
    doc_vectors: dict[str, SparseVector]  # insertion order = corpus order
    tokenizer_config: TokenizerConfig

    def idf_of_unigram(self, term: str, default: float = 1.0) -> float:
        """IDF weight for a unigram; out-of-vocabulary terms fall back to 1."""
        term_id = self.vocabulary.id_of(term)
        return self.idf[term_id] if term_id is not None else default


@dataclass(frozen=True)
class RetrievalHit:
    doc_id: str
    score: float


def build_index(corpus: Corpus, config: TokenizerConfig | None = None) -> TfIdfIndex:
    """Build the TF-IDF index for a corpus.

    A document whose text yields no terms gets an empty vector (and a
    warning) but never breaks the build.
    """
    config = config or TokenizerConfig()
    doc_counts: list[tuple[str, Counter[str]]] = []
    df_counter: Counter[str] = Counter()
    for doc in corpus.documents:
        counts = Counter(ngram_terms(tokenize(doc.text), config))
        doc_counts.append((doc.id, counts))
        df_counter.update(counts.keys())

    terms = sorted(df_counter)
    term_to_id = {term: tid for tid, term in enumerate(terms)}
    df = tuple(df_counter[term] for term in terms)
    n_docs = len(corpus.documents)
    idf = tuple(math.log((1 + n_docs) / (1 + d)) + 1.0 for d in df)

    doc_vectors: dict[str, SparseVector] = {}
    for doc_id, counts in doc_counts:
        weights = {term_to_id[t]: tf * idf[term_to_id[t]] for t, tf in counts.items()}
        vector = SparseVector.from_weights(weights)
        if vector.is_empty:
            log.warning("document %r has no indexable terms", doc_id)
        doc_vectors[doc_id] = vector

    return TfIdfIndex(
        n_docs=n_docs,
        vocabulary=Vocabulary(term_to_id=term_to_id, df=df),
        idf=idf,
        doc_vectors=doc_vectors,
        tokenizer_config=config,
    )


def vectorize_query(index: TfIdfIndex, question: str) -> SparseVector:
    """Vectorize a question with the index's tokenizer and IDF table.

    Out-of-vocabulary terms are dropped; a fully out-of-vocabulary question
    yields an empty vector.
    """
    counts = Counter(ngram_terms(tokenize(question), index.tokenizer_config))
    weights: dict[int, float] = {}
    for term, tf in counts.items():
        term_id = index.vocabulary.id_of(term)
        if term_id is not None:
            weights[term_id] = tf * index.idf[term_id]
    return SparseVector.from_weights(weights)


def cosine(a: SparseVector, b: SparseVector) -> float:
    """Cosine similarity of two L2-normalized sparse vectors (0 if either is empty)."""
    if a.is_empty or b.is_empty:
        return 0.0
    return a.dot(b)


def retrieve(index: TfIdfIndex, question: str, k: int = DEFAULT_TOP_K) -> list[RetrievalHit]:
    """Rank documents by cosine similarity to the question.

    Zero-score documents are never returned; ties keep corpus document
    order. Returns at most ``k`` hits, or none when the query shares no
    vocabulary with the corpus.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    query = vectorize_query(index, question)
    if query.is_empty:
        return []
    hits = [
        RetrievalHit(doc_id=doc_id, score=score)
        for doc_id, vector in index.doc_vectors.items()
        if (score := cosine(query, vector)) > 0.0
    ]
    hits.sort(key=lambda hit: -hit.score)  # stable: ties stay in corpus order
    return hits[:k]
