"""Answer extraction from candidate paragraphs.

The built-in reader is deterministic and lexical: each paragraph's sentences
are scored by IDF-weighted coverage of the question's unigrams and the best
sentence becomes that paragraph's answer span. A neural reader can be plugged
in over HTTP; when it misbehaves the lexical reader takes over per the
configured fallback policy.
"""

from __future__ import annotations

from dataclasses import dataclass

import httpx

from .corpus import Paragraph, tokenize
from .retriever import TfIdfIndex

__all__ = [
    "Sentence",
    "AnswerSpan",
    "ExternalReaderConfig",
    "ExternalReaderError",
    "split_sentences",
    "score_sentence",
    "read",
    "external_read",
]

_TERMINATORS = ".!?"


class ExternalReaderError(Exception):
    """The external reader failed and lexical fallback is disabled."""


@dataclass(frozen=True)
class Sentence:
    paragraph: Paragraph
    sentence_index: int
    char_start: int
    char_end: int
    text: str


@dataclass(frozen=True)
class AnswerSpan:
    doc_id: str
    paragraph_index: int
    char_start: int
    char_end: int
    text: str
    reader_score: float


@dataclass(frozen=True)
class ExternalReaderConfig:
    endpoint: str
    timeout_ms: int = 5000
    fallback_to_lexical: bool = True

    def __post_init__(self) -> None:
        if self.timeout_ms <= 0:
            raise ValueError("timeout_ms must be positive")


def split_sentences(paragraph: Paragraph) -> list[Sentence]:
    """Split a paragraph after '.', '!' or '?' followed by whitespace or end.

    Trailing unterminated text forms a final sentence. Offsets point at the
    trimmed sentence, so ``paragraph.text[char_start:char_end]`` reconstructs
    the sentence text exactly.
    """
    text = paragraph.text
    n = len(text)
    pieces: list[tuple[int, int]] = []
    start = 0
    for i, ch in enumerate(text):
        if ch in _TERMINATORS and (i + 1 == n or text[i + 1].isspace()):
            pieces.append((start, i + 1))
            start = i + 1
    if start < n:
        pieces.append((start, n))

    sentences = []
    for raw_start, raw_end in pieces:
        lo, hi = raw_start, raw_end
        while lo < hi and text[lo].isspace():
            lo += 1
        while hi > lo and text[hi - 1].isspace():
            hi -= 1
        if lo == hi:
            continue
        sentences.append(
            Sentence(
                paragraph=paragraph,
                sentence_index=len(sentences),
                char_start=lo,
                char_end=hi,
                text=text[lo:hi],
            )
        )
    return sentences


def score_sentence(
    question_terms: set[str], sentence: Sentence, idf_weights: dict[str, float]
) -> float:
    """IDF-weighted fraction of the question's unigrams present in the sentence.

    Terms missing from ``idf_weights`` count with weight 1, so novel question
    words still demand coverage. Returns 0 for a termless question.
    """
    if not question_terms:
        return 0.0
    present = set(tokenize(sentence.text))
    total = 0.0
    covered = 0.0
    for term in question_terms:
        weight = idf_weights.get(term, 1.0)
        total += weight
        if term in present:
            covered += weight
    return covered / total


def read(question: str, paragraphs: list[Paragraph], index: TfIdfIndex) -> list[AnswerSpan]:
    """Pick the best-covering sentence of each paragraph, ties to the earliest.

    Returns exactly one span per paragraph, in input order.
    """
    if not paragraphs:
        raise ValueError("paragraphs must be non-empty")
    question_terms = set(tokenize(question))
    idf_weights = {t: index.idf_of_unigram(t) for t in question_terms}
    spans = []
    for paragraph in paragraphs:
        sentences = split_sentences(paragraph)
        if not sentences:
            raise ValueError(f"paragraph {paragraph.doc_id}:{paragraph.index} has no sentences")
        best = sentences[0]
        best_score = score_sentence(question_terms, best, idf_weights)
        for sentence in sentences[1:]:
            score = score_sentence(question_terms, sentence, idf_weights)
            if score > best_score:
                best, best_score = sentence, score
        spans.append(
            AnswerSpan(
                doc_id=paragraph.doc_id,
                paragraph_index=paragraph.index,
                char_start=best.char_start,
                char_end=best.char_end,
                text=best.text,
                reader_score=best_score,
            )
        )
    return spans


def external_read(
    config: ExternalReaderConfig,
    question: str,
    paragraphs: list[Paragraph],
    index: TfIdfIndex,
) -> tuple[list[AnswerSpan], bool]:
    """Delegate answer extraction to an external reader endpoint.

    Returns ``(spans, degraded)``. Transport errors, timeouts and malformed
    responses fall back to the lexical reader when the config allows it
    (degraded=True) and raise :class:`ExternalReaderError` otherwise. A span
    with out-of-range offsets is rejected individually and replaced by the
    lexical result for its paragraph.
    """
    if not paragraphs:
        raise ValueError("paragraphs must be non-empty")
    payload = {
        "question": question,
        "paragraphs": [
            {"doc_id": p.doc_id, "paragraph_index": p.index, "text": p.text}
            for p in paragraphs
        ],
    }
    try:
        response = httpx.post(config.endpoint, json=payload, timeout=config.timeout_ms / 1000.0)
        response.raise_for_status()
        answers = _match_answers(response.json(), paragraphs)
    except (httpx.HTTPError, ValueError) as exc:
        if config.fallback_to_lexical:
            return read(question, paragraphs, index), True
        raise ExternalReaderError(f"external reader failed: {exc}") from exc

    spans: list[AnswerSpan] = []
    lexical: list[AnswerSpan] | None = None
    degraded = False
    for position, paragraph in enumerate(paragraphs):
        answer = answers[(paragraph.doc_id, paragraph.index)]
        span = _span_from_answer(answer, paragraph)
        if span is None:
            if lexical is None:
                lexical = read(question, paragraphs, index)
            spans.append(lexical[position])
            degraded = True
        else:
            spans.append(span)
    return spans, degraded


def _match_answers(
    data: object, paragraphs: list[Paragraph]
) -> dict[tuple[str, int], dict]:
    """Validate the wire response: exactly one answer per request paragraph."""
    if not isinstance(data, dict) or not isinstance(data.get("answers"), list):
        raise ValueError("response must be an object with an 'answers' list")
    expected = {(p.doc_id, p.index) for p in paragraphs}
    matched: dict[tuple[str, int], dict] = {}
    for answer in data["answers"]:
        if not isinstance(answer, dict):
            raise ValueError("each answer must be an object")
        doc_id = answer.get("doc_id")
        paragraph_index = answer.get("paragraph_index")
        if not isinstance(doc_id, str) or not isinstance(paragraph_index, int):
            raise ValueError("answers must carry doc_id and paragraph_index")
        if not isinstance(answer.get("char_start"), int) or not isinstance(
            answer.get("char_end"), int
        ):
            raise ValueError("answers must carry integer char offsets")
        if not isinstance(answer.get("score"), (int, float)):
            raise ValueError("answers must carry a numeric score")
        key = (doc_id, paragraph_index)
        if key not in expected:
            raise ValueError(f"answer for unknown paragraph {key}")
        if key in matched:
            raise ValueError(f"duplicate answer for paragraph {key}")
        matched[key] = answer
    if set(matched) != expected:
        missing = expected - set(matched)
        raise ValueError(f"missing answers for paragraphs: {sorted(missing)}")
    return matched


def _span_from_answer(answer: dict, paragraph: Paragraph) -> AnswerSpan | None:
    start, end = answer["char_start"], answer["char_end"]
    if not (0 <= start < end <= len(paragraph.text)):
        return None
    score = min(1.0, max(0.0, float(answer["score"])))
    return AnswerSpan(
        doc_id=paragraph.doc_id,
        paragraph_index=paragraph.index,
        char_start=start,
        char_end=end,
        text=paragraph.text[start:end],
        reader_score=score,
    )
