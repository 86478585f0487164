import dataclasses

import pytest

from hotelqa.corpus import Corpus, Document
from hotelqa.pipeline import PipelineConfig, answer, select_answer
from hotelqa.reader import ExternalReaderConfig, read
from hotelqa.retriever import build_index, retrieve

from oracles import exhaustive_best_triple
from mock_external_reader import echo_script


@pytest.fixture
def tiny():
    corpus = Corpus.from_documents(
        [
            Document(
                id="solo",
                title="Solo",
                text="The pool opens at seven. Towels are by the stand. Closing is at ten.",
            )
        ]
    )
    return corpus, build_index(corpus)


class TestAnswer:
    def test_single_candidate_fuses_cosine_and_full_reader_score(self, tiny):
        corpus, index = tiny
        question = "Towels are by the stand."
        config = PipelineConfig()
        response = answer(question, index, corpus, config)
        assert response.answer == "Towels are by the stand."
        assert response.title == "Solo"
        assert response.doc_id == "solo"
        assert response.paragraph == corpus.paragraphs[0].text
        cosine_score = retrieve(index, question, 1)[0].score
        expected = config.fusion_alpha * cosine_score + (1 - config.fusion_alpha) * 1.0
        assert response.score == pytest.approx(expected, abs=1e-12)
        assert response.degraded is False

    def test_unknown_vocabulary_gives_no_answer(self, tiny):
        corpus, index = tiny
        config = PipelineConfig()
        response = answer("xylophone quartz", index, corpus, config)
        assert response.answer == config.no_answer_message
        assert response.score == 0.0
        assert response.paragraph == "" and response.title == "" and response.doc_id == ""

    def test_custom_no_answer_message(self, tiny):
        corpus, index = tiny
        config = PipelineConfig(no_answer_message="Sorry, ask the front desk.")
        assert answer("qqq", index, corpus, config).answer == "Sorry, ask the front desk."

    def test_answer_is_substring_of_paragraph(self, fixture_corpus, fixture_index, fixture_gold):
        for example in fixture_gold:
            response = answer(example.question, fixture_index, fixture_corpus)
            if response.score > 0:
                assert response.answer in response.paragraph
                assert fixture_corpus.document(response.doc_id).title == response.title

    def test_deterministic(self, fixture_corpus, fixture_index):
        q = "when is breakfast served"
        first = answer(q, fixture_index, fixture_corpus)
        second = answer(q, fixture_index, fixture_corpus)
        assert first == second

    def test_scores_stay_in_unit_interval(self, fixture_corpus, fixture_index, fixture_gold):
        for example in fixture_gold:
            response = answer(example.question, fixture_index, fixture_corpus)
            assert 0.0 <= response.score <= 1.0


class TestFusion:
    def test_chosen_triple_matches_exhaustive_oracle(self, fixture_corpus, fixture_index, fixture_gold):
        config = PipelineConfig()
        for example in fixture_gold[:8]:
            best, _ = select_answer(example.question, fixture_index, fixture_corpus, config)
            expected = exhaustive_best_triple(
                fixture_corpus, example.question, config.fusion_alpha, config.top_k_docs
            )
            assert best is not None and expected is not None
            doc_id, paragraph_index, char_start, char_end, fused = expected
            assert best.span.doc_id == doc_id
            assert best.span.paragraph_index == paragraph_index
            assert (best.span.char_start, best.span.char_end) == (char_start, char_end)
            assert best.fused == pytest.approx(fused, abs=1e-9)

    def test_alpha_zero_selects_reader_argmax(self, fixture_corpus, fixture_index):
        question = "when is breakfast served on weekdays"
        config = PipelineConfig(fusion_alpha=0.0)
        best, _ = select_answer(question, fixture_index, fixture_corpus, config)
        hits = retrieve(fixture_index, question, config.top_k_docs)
        paragraphs = [p for h in hits for p in fixture_corpus.paragraphs_of(h.doc_id)]
        spans = read(question, paragraphs, fixture_index)
        top_score = max(s.reader_score for s in spans)
        winner = next(s for s in spans if s.reader_score == top_score)
        assert best.span == winner
        assert best.fused == top_score  # exact: alpha = 0 contributes nothing

    def test_alpha_one_selects_rank_one_document(self, fixture_corpus, fixture_index, fixture_gold):
        config = PipelineConfig(fusion_alpha=1.0)
        for example in fixture_gold[:10]:
            hits = retrieve(fixture_index, example.question, config.top_k_docs)
            best, _ = select_answer(example.question, fixture_index, fixture_corpus, config)
            assert best.span.doc_id == hits[0].doc_id
            assert best.fused == hits[0].score  # exact: reader weight is zero
            assert best.span.paragraph_index == 0  # tie inside the doc goes to paragraph 0

    def test_fused_dominates_all_candidates(self, fixture_corpus, fixture_index):
        question = "how much is valet parking"
        config = PipelineConfig()
        best, _ = select_answer(question, fixture_index, fixture_corpus, config)
        hits = retrieve(fixture_index, question, config.top_k_docs)
        paragraphs = [p for h in hits for p in fixture_corpus.paragraphs_of(h.doc_id)]
        spans = read(question, paragraphs, fixture_index)
        score_of = {h.doc_id: h.score for h in hits}
        for span in spans:
            fused = config.fusion_alpha * score_of[span.doc_id] + (
                1 - config.fusion_alpha
            ) * span.reader_score
            assert best.fused >= fused - 1e-12

    def test_invalid_configs_rejected(self):
        with pytest.raises(ValueError):
            PipelineConfig(fusion_alpha=1.5)
        with pytest.raises(ValueError):
            PipelineConfig(top_k_docs=0)
        with pytest.raises(ValueError):
            PipelineConfig(reader_mode="neural")
        with pytest.raises(ValueError):
            PipelineConfig(reader_mode="external")  # needs an endpoint config


class TestExternalMode:
    def test_degraded_flag_reaches_response(self, tiny):
        corpus, index = tiny
        config = PipelineConfig(
            reader_mode="external",
            external_reader=ExternalReaderConfig(
                endpoint="http://127.0.0.1:1/read", timeout_ms=200
            ),
        )
        response = answer("pool opens", index, corpus, config)
        assert response.degraded is True
        lexical = answer("pool opens", index, corpus, PipelineConfig())
        assert dataclasses.replace(response, degraded=False) == lexical

    def test_healthy_external_reader_not_degraded(self, tiny, mock_reader):
        corpus, index = tiny
        mock_reader.set_script(echo_script(score=1.0))
        config = PipelineConfig(
            reader_mode="external",
            external_reader=ExternalReaderConfig(endpoint=mock_reader.url),
        )
        response = answer("pool opens", index, corpus, config)
        assert response.degraded is False
        assert response.answer == corpus.paragraphs[0].text  # echo returns whole paragraph

    def test_winner_monotone_in_reader_score(self, mock_reader):
        # two docs sharing query vocabulary; the mock holds every score fixed
        # and then raises only the winner's -- the winner must not change
        corpus = Corpus.from_documents(
            [
                Document(id="a", title="A", text="pool alpha fact. filler line."),
                Document(id="b", title="B", text="pool beta fact. other filler."),
            ]
        )
        index = build_index(corpus)
        scores = {("a", 0): 0.6, ("b", 0): 0.5}

        def script(payload):
            return (
                "json",
                {
                    "answers": [
                        {
                            "doc_id": p["doc_id"],
                            "paragraph_index": p["paragraph_index"],
                            "char_start": 0,
                            "char_end": len(p["text"]),
                            "score": scores[(p["doc_id"], p["paragraph_index"])],
                        }
                        for p in payload["paragraphs"]
                    ]
                },
            )

        mock_reader.set_script(script)
        config = PipelineConfig(
            reader_mode="external",
            external_reader=ExternalReaderConfig(endpoint=mock_reader.url),
        )
        first = answer("pool", index, corpus, config)
        scores[(first.doc_id, 0)] += 0.3
        second = answer("pool", index, corpus, config)
        assert second.doc_id == first.doc_id
        assert second.score >= first.score
