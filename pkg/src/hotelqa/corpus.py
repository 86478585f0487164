"""Corpus loading, paragraph segmentation and n-gram term extraction.

A corpus is an ordered collection of documents. Documents are split into
blank-line-delimited paragraphs; both the retriever and the reader consume
the token streams produced here, so query-time and build-time tokenization
always agree.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

__all__ = [
    "CorpusError",
    "TokenizerConfig",
    "Document",
    "Paragraph",
    "Corpus",
    "segment_paragraphs",
    "tokenize",
    "ngram_terms",
    "load_corpus",
]

# Maximal runs of alphanumeric code points; underscores split like any other
# non-alphanumeric character, so source text can never collide with the "_"
# joiner used for bigram terms.
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)

_TEXT_SUFFIXES = {".txt", ".md"}


class CorpusError(Exception):
    """A corpus could not be loaded or failed validation."""


@dataclass(frozen=True)
class TokenizerConfig:
    """Term-extraction settings shared by index build and query time."""

    ngram_max: int = 2
    stopwords: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        if self.ngram_max < 1:
            raise ValueError("ngram_max must be >= 1")


@dataclass(frozen=True)
class Document:
    id: str
    title: str
    text: str

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("document id must be non-empty")
        if not self.title:
            raise ValueError("document title must be non-empty")


@dataclass(frozen=True)
class Paragraph:
    doc_id: str
    index: int
    text: str


@dataclass(frozen=True)
class Corpus:
    documents: tuple[Document, ...]
    paragraphs: tuple[Paragraph, ...]

    @classmethod
    def from_documents(cls, documents: list[Document] | tuple[Document, ...]) -> "Corpus":
        if not documents:
            raise CorpusError("empty corpus: at least one document is required")
        seen: set[str] = set()
        for doc in documents:
            if doc.id in seen:
                raise CorpusError(f"duplicate document id: {doc.id!r}")
            seen.add(doc.id)
        paragraphs: list[Paragraph] = []
        for doc in documents:
            paragraphs.extend(segment_paragraphs(doc))
        return cls(documents=tuple(documents), paragraphs=tuple(paragraphs))

    @cached_property
    def _by_id(self) -> dict[str, Document]:
        return {doc.id: doc for doc in self.documents}

    @cached_property
    def _paragraphs_by_doc(self) -> dict[str, tuple[Paragraph, ...]]:
        grouped: dict[str, list[Paragraph]] = {doc.id: [] for doc in self.documents}
        for para in self.paragraphs:
            grouped[para.doc_id].append(para)
        return {doc_id: tuple(paras) for doc_id, paras in grouped.items()}

    def document(self, doc_id: str) -> Document:
        return self._by_id[doc_id]

    def paragraphs_of(self, doc_id: str) -> tuple[Paragraph, ...]:
        return self._paragraphs_by_doc[doc_id]

    def paragraph(self, doc_id: str, index: int) -> Paragraph:
        return self._paragraphs_by_doc[doc_id][index]

    def to_jsonable(self) -> list[dict]:
        return [{"id": d.id, "title": d.title, "text": d.text} for d in self.documents]

    def serialize(self) -> bytes:
        """Deterministic byte encoding, used by equality/determinism checks."""
        return json.dumps(self.to_jsonable(), sort_keys=True, ensure_ascii=False).encode("utf-8")


def segment_paragraphs(document: Document) -> list[Paragraph]:
    """Split a document into paragraphs on runs of one or more blank lines.

    Each paragraph is trimmed; blocks that contain only whitespace are
    dropped, so a whitespace-only document yields no paragraphs.
    """
    blocks: list[list[str]] = []
    current: list[str] = []
    for line in document.text.split("\n"):
        if line.strip():
            current.append(line)
        elif current:
            blocks.append(current)
            current = []
    if current:
        blocks.append(current)

    paragraphs = []
    for block in blocks:
        text = "\n".join(block).strip()
        if text:
            paragraphs.append(Paragraph(doc_id=document.id, index=len(paragraphs), text=text))
    return paragraphs


def tokenize(text: str) -> list[str]:
    """Lowercase and split on every non-alphanumeric code point."""
    return _TOKEN_RE.findall(text.lower())


def ngram_terms(tokens: list[str], config: TokenizerConfig) -> list[str]:
    """Expand unigram tokens into the term stream the index counts.

    Unigrams come first (stopwords removed), followed by adjacent-pair
    bigrams joined with "_". Bigram pairs are formed over the original
    token sequence, before stopword removal, and a bigram survives only
    if neither member is a stopword. Duplicates are preserved; term
    frequency is counted downstream.
    """
    stop = config.stopwords
    terms = [t for t in tokens if t not in stop]
    if config.ngram_max >= 2:
        terms.extend(
            f"{a}_{b}" for a, b in zip(tokens, tokens[1:]) if a not in stop and b not in stop
        )
    return terms


def load_corpus(path: str | Path, format: str = "jsonl") -> Corpus:
    """Load a corpus from a JSONL file or a directory of text files.

    JSONL records require ``id`` and ``text``; ``title`` defaults to the id.
    A text directory is read in lexicographic filename order with the file
    stem serving as both id and title. Any malformed record aborts the load;
    there are no partial corpora.
    """
    path = Path(path)
    if not path.exists():
        raise CorpusError(f"corpus path does not exist: {path}")
    if format == "jsonl":
        documents = _load_jsonl(path)
    elif format == "text_dir":
        documents = _load_text_dir(path)
    else:
        raise CorpusError(f"unknown corpus format: {format!r} (expected 'jsonl' or 'text_dir')")
    return Corpus.from_documents(documents)


def _load_jsonl(path: Path) -> list[Document]:
    if not path.is_file():
        raise CorpusError(f"not a file: {path}")
    documents = []
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"{path}:{lineno}: invalid JSON: {exc}") from exc
            if not isinstance(record, dict):
                raise CorpusError(f"{path}:{lineno}: record must be a JSON object")
            doc_id = record.get("id")
            text = record.get("text")
            if not isinstance(doc_id, str) or not doc_id:
                raise CorpusError(f"{path}:{lineno}: missing or empty 'id'")
            if not isinstance(text, str):
                raise CorpusError(f"{path}:{lineno}: missing 'text'")
            title = record.get("title") or doc_id
            if not isinstance(title, str):
                raise CorpusError(f"{path}:{lineno}: 'title' must be a string")
            documents.append(Document(id=doc_id, title=title, text=text))
    if not documents:
        raise CorpusError(f"empty corpus: no records in {path}")
    return documents


def _load_text_dir(path: Path) -> list[Document]:
    if not path.is_dir():
        raise CorpusError(f"not a directory: {path}")
    files = sorted(
        p for p in path.iterdir() if p.is_file() and p.suffix.lower() in _TEXT_SUFFIXES
    )
    if not files:
        raise CorpusError(f"empty corpus: no .txt or .md files in {path}")
    documents = []
    for file in files:
        try:
            text = file.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            raise CorpusError(f"{file}: unreadable: {exc}") from exc
        documents.append(Document(id=file.stem, title=file.stem, text=text))
    return documents
