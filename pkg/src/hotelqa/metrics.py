"""Evaluation against a gold question set: exact match, token F1, recall@k.

Normalization follows the standard extractive-QA convention: lowercase,
punctuation replaced by spaces, the articles a/an/the dropped as whole
tokens, whitespace collapsed.
"""

from __future__ import annotations

import json
import string
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from .corpus import Corpus
from .pipeline import PipelineConfig, answer
from .retriever import TfIdfIndex, retrieve

__all__ = [
    "GoldSetError",
    "GoldExample",
    "EvalReport",
    "normalize_answer",
    "answer_tokens",
    "exact_match",
    "token_f1",
    "load_gold",
    "evaluate",
]

_ARTICLES = {"a", "an", "the"}
_PUNCT_TO_SPACE = str.maketrans({ch: " " for ch in string.punctuation})


class GoldSetError(Exception):
    """The gold file is malformed."""


@dataclass(frozen=True)
class GoldExample:
    question: str
    answer: str
    doc_id: str | None = None


@dataclass(frozen=True)
class EvalReport:
    n: int
    exact_match: float
    f1: float
    recall_at_k: float

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "exact_match": self.exact_match,
            "f1": self.f1,
            "recall_at_k": self.recall_at_k,
        }


def normalize_answer(text: str) -> str:
    """Lowercase, strip punctuation to spaces, drop articles, collapse whitespace."""
    tokens = text.lower().translate(_PUNCT_TO_SPACE).split()
    return " ".join(t for t in tokens if t not in _ARTICLES)


def answer_tokens(text: str) -> list[str]:
    return normalize_answer(text).split()


def exact_match(prediction: str, gold: str) -> bool:
    return normalize_answer(prediction) == normalize_answer(gold)


def token_f1(prediction: str, gold: str) -> float:
    """Harmonic mean of precision/recall over normalized token multisets."""
    pred_tokens = answer_tokens(prediction)
    gold_tokens = answer_tokens(gold)
    if not pred_tokens or not gold_tokens:
        return float(pred_tokens == gold_tokens)
    common = Counter(pred_tokens) & Counter(gold_tokens)
    same = sum(common.values())
    if same == 0:
        return 0.0
    precision = same / len(pred_tokens)
    recall = same / len(gold_tokens)
    return 2 * precision * recall / (precision + recall)


def load_gold(path: str | Path) -> list[GoldExample]:
    """Load a JSONL gold set; every record needs a question and an answer."""
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise GoldSetError(f"cannot read gold file {path}: {exc}") from exc
    examples = []
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise GoldSetError(f"{path}:{lineno}: invalid JSON: {exc}") from exc
        if not isinstance(record, dict):
            raise GoldSetError(f"{path}:{lineno}: record must be a JSON object")
        question = record.get("question")
        gold_answer = record.get("answer")
        if not isinstance(question, str) or not question.strip():
            raise GoldSetError(f"{path}:{lineno}: missing or empty 'question'")
        if not isinstance(gold_answer, str) or not gold_answer.strip():
            raise GoldSetError(f"{path}:{lineno}: missing or empty 'answer'")
        doc_id = record.get("doc_id")
        if doc_id is not None and not isinstance(doc_id, str):
            raise GoldSetError(f"{path}:{lineno}: 'doc_id' must be a string")
        examples.append(GoldExample(question=question, answer=gold_answer, doc_id=doc_id))
    if not examples:
        raise GoldSetError(f"gold file {path} contains no examples")
    return examples


def evaluate(
    index: TfIdfIndex,
    corpus: Corpus,
    examples: list[GoldExample],
    config: PipelineConfig | None = None,
    k: int = 3,
) -> EvalReport:
    """Run the pipeline over a gold set and aggregate EM, F1 and recall@k.

    recall@k covers only the examples that name an expected document; it is
    0 when none do.
    """
    config = config or PipelineConfig()
    em_total = 0.0
    f1_total = 0.0
    recall_hits: list[float] = []
    for example in examples:
        prediction = answer(example.question, index, corpus, config)
        em_total += float(exact_match(prediction.answer, example.answer))
        f1_total += token_f1(prediction.answer, example.answer)
        if example.doc_id is not None:
            top = retrieve(index, example.question, k)
            recall_hits.append(float(any(hit.doc_id == example.doc_id for hit in top)))
    n = len(examples)
    return EvalReport(
        n=n,
        exact_match=em_total / n,
        f1=f1_total / n,
        recall_at_k=sum(recall_hits) / len(recall_hits) if recall_hits else 0.0,
    )
