import json
import re

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hotelqa.corpus import (
    Corpus,
    CorpusError,
    Document,
    TokenizerConfig,
    load_corpus,
    ngram_terms,
    segment_paragraphs,
    tokenize,
)

from oracles import ngram_output_length


def doc(text: str) -> Document:
    return Document(id="d", title="d", text=text)


class TestSegmentParagraphs:
    def test_blank_line_runs_split(self):
        assert [p.text for p in segment_paragraphs(doc("a\n\nb\n\n\nc"))] == ["a", "b", "c"]

    def test_single_block(self):
        assert [p.text for p in segment_paragraphs(doc("single block no blanks"))] == [
            "single block no blanks"
        ]

    def test_whitespace_only_document(self):
        assert segment_paragraphs(doc("   \n\n  ")) == []

    def test_indexes_contiguous_from_zero(self):
        paras = segment_paragraphs(doc("a\n\n  \n\nb\n\nc"))
        assert [p.index for p in paras] == [0, 1, 2]

    def test_whitespace_only_lines_count_as_blank(self):
        paras = segment_paragraphs(doc("a\n   \nb"))
        assert [p.text for p in paras] == ["a", "b"]

    @given(st.text(alphabet=st.sampled_from("ab .!?\n\t-"), max_size=120))
    def test_idempotent(self, text):
        for para in segment_paragraphs(doc(text)):
            again = segment_paragraphs(doc(para.text))
            assert [p.text for p in again] == [para.text]

    @given(st.text(alphabet=st.sampled_from("abc xy\n\t._"), max_size=120))
    def test_no_nonwhitespace_lost(self, text):
        source = re.sub(r"\s+", "", text)
        joined = "".join(re.sub(r"\s+", "", p.text) for p in segment_paragraphs(doc(text)))
        assert joined == source


class TestTokenize:
    def test_splits_on_non_alphanumeric(self):
        assert tokenize("Check-in time is 3 PM.") == ["check", "in", "time", "is", "3", "pm"]

    def test_empty(self):
        assert tokenize("") == []

    def test_hyphen_and_slash(self):
        assert tokenize("Wi-Fi/WIFI") == ["wi", "fi", "wifi"]

    def test_underscore_splits(self):
        assert tokenize("a_b") == ["a", "b"]


class TestNgramTerms:
    def test_unigrams_then_bigrams(self):
        assert ngram_terms(["a", "b", "c"], TokenizerConfig()) == ["a", "b", "c", "a_b", "b_c"]

    def test_single_token_has_no_pairs(self):
        assert ngram_terms(["a"], TokenizerConfig()) == ["a"]

    def test_unigram_only_config(self):
        assert ngram_terms(["a", "b"], TokenizerConfig(ngram_max=1)) == ["a", "b"]

    def test_stopwords_gate_both_bigram_members(self):
        config = TokenizerConfig(stopwords=frozenset({"the"}))
        assert ngram_terms(["a", "the", "b"], config) == ["a", "b"]
        assert ngram_terms(["a", "b", "the"], config) == ["a", "b", "a_b"]

    def test_duplicates_preserved(self):
        assert ngram_terms(["a", "a"], TokenizerConfig()) == ["a", "a", "a_a"]

    @given(
        st.lists(st.sampled_from(["a", "b", "c", "the", "of"]), max_size=15),
        st.frozensets(st.sampled_from(["the", "of"])),
        st.sampled_from([1, 2]),
    )
    def test_output_length_matches_counting_oracle(self, tokens, stopwords, ngram_max):
        config = TokenizerConfig(ngram_max=ngram_max, stopwords=stopwords)
        assert len(ngram_terms(tokens, config)) == ngram_output_length(
            tokens, stopwords, ngram_max
        )


class TestLoadCorpus:
    def test_text_dir_single_file_two_paragraphs(self, tmp_path):
        (tmp_path / "amenities.txt").write_text("Pool hours.\n\nGym hours.")
        corpus = load_corpus(tmp_path, format="text_dir")
        assert len(corpus.documents) == 1
        assert corpus.documents[0].id == "amenities"
        assert corpus.documents[0].title == "amenities"
        assert [p.text for p in corpus.paragraphs] == ["Pool hours.", "Gym hours."]

    def test_text_dir_lexicographic_order(self, tmp_path):
        (tmp_path / "b.txt").write_text("second")
        (tmp_path / "a.md").write_text("first")
        corpus = load_corpus(tmp_path, format="text_dir")
        assert [d.id for d in corpus.documents] == ["a", "b"]

    def test_jsonl_missing_text_names_line(self, tmp_path):
        path = tmp_path / "corpus.jsonl"
        path.write_text('{"id": "x", "text": "fine"}\n{"id": "y", "title": "no text"}\n')
        with pytest.raises(CorpusError, match=r":2:"):
            load_corpus(path)

    def test_jsonl_invalid_json_names_line(self, tmp_path):
        path = tmp_path / "corpus.jsonl"
        path.write_text('{"id": "x", "text": "fine"}\nnot json\n')
        with pytest.raises(CorpusError, match=r":2:"):
            load_corpus(path)

    def test_duplicate_id_rejected(self, tmp_path):
        path = tmp_path / "corpus.jsonl"
        path.write_text('{"id": "x", "text": "a"}\n{"id": "x", "text": "b"}\n')
        with pytest.raises(CorpusError, match="duplicate"):
            load_corpus(path)

    def test_empty_inputs_rejected(self, tmp_path):
        empty_file = tmp_path / "empty.jsonl"
        empty_file.write_text("")
        with pytest.raises(CorpusError, match="empty corpus"):
            load_corpus(empty_file)
        empty_dir = tmp_path / "dir"
        empty_dir.mkdir()
        with pytest.raises(CorpusError, match="empty corpus"):
            load_corpus(empty_dir, format="text_dir")

    def test_missing_path_rejected(self, tmp_path):
        with pytest.raises(CorpusError, match="does not exist"):
            load_corpus(tmp_path / "nope.jsonl")

    def test_title_defaults_to_id(self, tmp_path):
        path = tmp_path / "corpus.jsonl"
        path.write_text('{"id": "x", "text": "a"}\n')
        assert load_corpus(path).documents[0].title == "x"

    def test_deterministic_serialization(self, fixture_corpus_path):
        first = load_corpus(fixture_corpus_path).serialize()
        second = load_corpus(fixture_corpus_path).serialize()
        assert first == second

    def test_fixture_counts_match_independent_scan(self, fixture_corpus_path, fixture_corpus):
        # independent scan: JSONL line count and blank-line block count per record
        records = [
            json.loads(line)
            for line in fixture_corpus_path.read_text(encoding="utf-8").splitlines()
            if line.strip()
        ]
        expected_paragraphs = sum(
            len([b for b in re.split(r"\n\s*\n", rec["text"]) if b.strip()]) for rec in records
        )
        assert len(fixture_corpus.documents) == len(records) == 60
        assert len(fixture_corpus.paragraphs) == expected_paragraphs >= 60


class TestCorpusInvariants:
    def test_paragraph_doc_ids_resolve(self, fixture_corpus):
        for para in fixture_corpus.paragraphs:
            assert fixture_corpus.document(para.doc_id) is not None

    def test_at_least_one_document_required(self):
        with pytest.raises(CorpusError):
            Corpus.from_documents([])

    def test_empty_document_id_rejected(self):
        with pytest.raises(ValueError):
            Document(id="", title="t", text="x")
