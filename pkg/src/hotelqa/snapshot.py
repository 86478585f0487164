"""Versioned on-disk snapshot bundling a corpus with its TF-IDF index.

The snapshot is a single JSON document with deterministic encoding:
re-ingesting the same corpus produces byte-identical files. The tokenizer
configuration travels inside the snapshot so query-time tokenization always
matches build time.
"""

from __future__ import annotations

import json
from pathlib import Path

from .corpus import Corpus, Document, TokenizerConfig
from .retriever import SparseVector, TfIdfIndex, Vocabulary

__all__ = ["SnapshotError", "SNAPSHOT_FORMAT_VERSION", "snapshot_bytes", "save_snapshot", "load_snapshot"]

SNAPSHOT_FORMAT_VERSION = 1


class SnapshotError(Exception):
    """A snapshot file is missing, corrupt, or of an unsupported version."""


def snapshot_bytes(corpus: Corpus, index: TfIdfIndex) -> bytes:
    # term ids are dense positions in sorted term order, so the sorted term
    # list alone reconstructs the vocabulary mapping
    terms = sorted(index.vocabulary.term_to_id, key=index.vocabulary.term_to_id.__getitem__)
    payload = {
        "format_version": SNAPSHOT_FORMAT_VERSION,
        "tokenizer": {
            "ngram_max": index.tokenizer_config.ngram_max,
            "stopwords": sorted(index.tokenizer_config.stopwords),
        },
        "documents": corpus.to_jsonable(),
        "index": {
            "n_docs": index.n_docs,
            "terms": terms,
            "df": list(index.vocabulary.df),
            "idf": list(index.idf),
            "doc_vectors": {
                doc_id: [[tid, weight] for tid, weight in vec.entries]
                for doc_id, vec in index.doc_vectors.items()
            },
        },
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False).encode(
        "utf-8"
    )


def save_snapshot(path: str | Path, corpus: Corpus, index: TfIdfIndex) -> None:
    Path(path).write_bytes(snapshot_bytes(corpus, index))


def load_snapshot(path: str | Path) -> tuple[Corpus, TfIdfIndex]:
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise SnapshotError(f"cannot read snapshot {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SnapshotError(f"corrupt snapshot {path}: {exc}") from exc

    if not isinstance(payload, dict):
        raise SnapshotError(f"corrupt snapshot {path}: top level must be an object")
    version = payload.get("format_version")
    if version != SNAPSHOT_FORMAT_VERSION:
        raise SnapshotError(
            f"unsupported snapshot format version {version!r} "
            f"(expected {SNAPSHOT_FORMAT_VERSION})"
        )

    try:
        tokenizer = TokenizerConfig(
            ngram_max=payload["tokenizer"]["ngram_max"],
            stopwords=frozenset(payload["tokenizer"]["stopwords"]),
        )
        documents = [
            Document(id=rec["id"], title=rec["title"], text=rec["text"])
            for rec in payload["documents"]
        ]
        corpus = Corpus.from_documents(documents)

        raw = payload["index"]
        terms = raw["terms"]
        vocabulary = Vocabulary(
            term_to_id={term: tid for tid, term in enumerate(terms)},
            df=tuple(raw["df"]),
        )
        raw_vectors = raw["doc_vectors"]
        # dict order in JSON is not contractual; rebuild in corpus order
        doc_vectors = {
            doc.id: SparseVector(
                entries=tuple((int(tid), float(w)) for tid, w in raw_vectors[doc.id])
            )
            for doc in corpus.documents
        }
        index = TfIdfIndex(
            n_docs=int(raw["n_docs"]),
            vocabulary=vocabulary,
            idf=tuple(float(v) for v in raw["idf"]),
            doc_vectors=doc_vectors,
            tokenizer_config=tokenizer,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise SnapshotError(f"corrupt snapshot {path}: {exc!r}") from exc

    if len(vocabulary.df) != len(terms) or len(index.idf) != len(terms):
        raise SnapshotError(f"corrupt snapshot {path}: vocabulary tables disagree in size")
    return corpus, index
