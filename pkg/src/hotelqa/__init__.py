"""Closed-domain hotel concierge question answering.

Retrieval ranks documents by TF-IDF cosine similarity over uni- and bi-gram
terms; a deterministic lexical reader (or an external one over HTTP) extracts
the best sentence per candidate paragraph; fused scores pick the final
answer. The package also ships a room-availability search, an HTTP service
and an operator CLI.
"""

from .corpus import Corpus, CorpusError, Document, Paragraph, TokenizerConfig, load_corpus
from .metrics import EvalReport, GoldExample, evaluate, load_gold
from .pipeline import PipelineConfig, QaResponse, answer
from .reader import AnswerSpan, ExternalReaderConfig, read
from .retriever import RetrievalHit, TfIdfIndex, build_index, retrieve
from .rooms import Booking, RoomInventory, RoomType, load_rooms, search_rooms
from .service import QaEngine, create_app
from .snapshot import SnapshotError, load_snapshot, save_snapshot

__version__ = "0.1.0"

__all__ = [
    "Corpus",
    "CorpusError",
    "Document",
    "Paragraph",
    "TokenizerConfig",
    "load_corpus",
    "EvalReport",
    "GoldExample",
    "evaluate",
    "load_gold",
    "PipelineConfig",
    "QaResponse",
    "answer",
    "AnswerSpan",
    "ExternalReaderConfig",
    "read",
    "RetrievalHit",
    "TfIdfIndex",
    "build_index",
    "retrieve",
    "Booking",
    "RoomInventory",
    "RoomType",
    "load_rooms",
    "search_rooms",
    "QaEngine",
    "create_app",
    "SnapshotError",
    "load_snapshot",
    "save_snapshot",
    "__version__",
]
