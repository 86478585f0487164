"""Retriever-reader orchestration and score fusion.

Candidate answers are the best sentence of every paragraph belonging to the
top-k retrieved documents. Each candidate's fused score is a convex
combination of its document's retrieval cosine and its reader score; the
highest fused score wins, with ties going to the earlier document in
retrieval order and then the lower paragraph index.
"""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import Corpus
from .reader import AnswerSpan, ExternalReaderConfig, external_read, read
from .retriever import DEFAULT_TOP_K, TfIdfIndex, retrieve

__all__ = ["PipelineConfig", "QaResponse", "ScoredCandidate", "select_answer", "answer"]

DEFAULT_FUSION_ALPHA = 0.35
DEFAULT_NO_ANSWER_MESSAGE = "I could not find an answer to that."

READER_MODES = ("lexical", "external")


@dataclass(frozen=True)
class PipelineConfig:
    top_k_docs: int = DEFAULT_TOP_K
    fusion_alpha: float = DEFAULT_FUSION_ALPHA
    no_answer_message: str = DEFAULT_NO_ANSWER_MESSAGE
    reader_mode: str = "lexical"
    external_reader: ExternalReaderConfig | None = None

    def __post_init__(self) -> None:
        if self.top_k_docs < 1:
            raise ValueError("top_k_docs must be >= 1")
        if not 0.0 <= self.fusion_alpha <= 1.0:
            raise ValueError("fusion_alpha must lie in [0, 1]")
        if self.reader_mode not in READER_MODES:
            raise ValueError(f"reader_mode must be one of {READER_MODES}")
        if self.reader_mode == "external" and self.external_reader is None:
            raise ValueError("external reader_mode requires an external_reader config")


@dataclass(frozen=True)
class QaResponse:
    """The wire answer object: what the service returns and the CLI prints."""

    answer: str
    paragraph: str
    title: str
    score: float
    doc_id: str
    degraded: bool = False

    def to_dict(self) -> dict:
        return {
            "answer": self.answer,
            "paragraph": self.paragraph,
            "title": self.title,
            "score": self.score,
            "doc_id": self.doc_id,
            "degraded": self.degraded,
        }


@dataclass(frozen=True)
class ScoredCandidate:
    retrieval_rank: int
    retriever_score: float
    span: AnswerSpan
    fused: float


def select_answer(
    question: str, index: TfIdfIndex, corpus: Corpus, config: PipelineConfig
) -> tuple[ScoredCandidate | None, bool]:
    """Run retrieval, reading and fusion; return the winner and a degraded flag.

    Returns ``(None, degraded)`` when retrieval comes up empty or the best
    fused score is zero.
    """
    hits = retrieve(index, question, config.top_k_docs)
    if not hits:
        return None, False
    paragraphs = [p for hit in hits for p in corpus.paragraphs_of(hit.doc_id)]
    if not paragraphs:
        return None, False

    if config.reader_mode == "external":
        assert config.external_reader is not None
        spans, degraded = external_read(config.external_reader, question, paragraphs, index)
    else:
        spans, degraded = read(question, paragraphs, index), False

    alpha = config.fusion_alpha
    best: ScoredCandidate | None = None
    position = 0
    for rank, hit in enumerate(hits):
        for _ in corpus.paragraphs_of(hit.doc_id):
            span = spans[position]
            position += 1
            fused = alpha * hit.score + (1.0 - alpha) * span.reader_score
            # strict > keeps the earliest (rank, paragraph_index) on ties
            if best is None or fused > best.fused:
                best = ScoredCandidate(
                    retrieval_rank=rank, retriever_score=hit.score, span=span, fused=fused
                )
    assert best is not None
    if best.fused <= 0.0:
        return None, degraded
    return best, degraded


def answer(
    question: str, index: TfIdfIndex, corpus: Corpus, config: PipelineConfig | None = None
) -> QaResponse:
    """Answer a question against the corpus, or return the no-answer response."""
    config = config or PipelineConfig()
    best, degraded = select_answer(question, index, corpus, config)
    if best is None:
        return QaResponse(
            answer=config.no_answer_message,
            paragraph="",
            title="",
            score=0.0,
            doc_id="",
            degraded=degraded,
        )
    span = best.span
    return QaResponse(
        answer=span.text,
        paragraph=corpus.paragraph(span.doc_id, span.paragraph_index).text,
        title=corpus.document(span.doc_id).title,
        score=best.fused,
        doc_id=span.doc_id,
        degraded=degraded,
    )
