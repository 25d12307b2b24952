import numpy as np
import pytest

from leanvla.attention import (
    AttentionInputs,
    accumulate_importance,
    attention_weights,
    select_semantic,
)
from leanvla.errors import DomainError

from oracles import importance_naive, softmax_rows_naive


def random_inputs(rng, n=8, d=5, d_k=4):
    return AttentionInputs(
        x_emb=rng.normal(size=(n, d)),
        w_q=rng.normal(size=(d, d_k)),
        w_k=rng.normal(size=(d, d_k)),
        w_v=rng.normal(size=(d, d_k)),
    )


class TestWeights:
    def test_rows_are_stochastic(self):
        rng = np.random.default_rng(2)
        w = attention_weights(random_inputs(rng))
        assert np.all(w > 0)
        assert np.allclose(w.sum(axis=1), 1.0, atol=1e-12)

    def test_matches_naive_softmax(self):
        rng = np.random.default_rng(3)
        inputs = random_inputs(rng, n=6)
        q = inputs.x_emb @ inputs.w_q
        k = inputs.x_emb @ inputs.w_k
        logits = (q @ k.T) / np.sqrt(float(q.shape[1]))
        want = softmax_rows_naive(logits)
        got = attention_weights(inputs)
        assert np.allclose(got, want, atol=1e-12)

    def test_large_logits_stay_finite(self):
        x = np.eye(3) * 100.0
        inputs = AttentionInputs(x_emb=x, w_q=np.eye(3) * 10, w_k=np.eye(3) * 10, w_v=np.eye(3))
        w = attention_weights(inputs)
        assert np.all(np.isfinite(w))
        assert np.allclose(w.sum(axis=1), 1.0)

    def test_shape_validation(self):
        with pytest.raises(DomainError):
            AttentionInputs(
                x_emb=np.ones((4, 3)), w_q=np.ones((2, 2)), w_k=np.ones((3, 2)), w_v=np.ones((3, 2))
            )
        with pytest.raises(DomainError):
            AttentionInputs(
                x_emb=np.array([[np.nan, 0.0]]),
                w_q=np.ones((2, 2)),
                w_k=np.ones((2, 2)),
                w_v=np.ones((2, 2)),
            )


class TestImportance:
    def test_sums_to_one_for_row_stochastic_input(self):
        rng = np.random.default_rng(4)
        for n in (4, 16, 196):
            raw = rng.uniform(0.1, 1.0, size=(n, n))
            w = raw / raw.sum(axis=1, keepdims=True)
            scores = accumulate_importance(w)
            assert abs(float(scores.sum()) - 1.0) <= 1e-12

    def test_matches_naive_column_mean(self):
        rng = np.random.default_rng(5)
        raw = rng.uniform(0.1, 1.0, size=(7, 7))
        w = raw / raw.sum(axis=1, keepdims=True)
        assert np.allclose(accumulate_importance(w), importance_naive(w), atol=1e-12)

    def test_uniform_attention_gives_uniform_scores(self):
        w = np.full((10, 10), 0.1)
        assert np.allclose(accumulate_importance(w), 0.1, atol=1e-15)

    def test_rejects_non_stochastic_rows(self):
        with pytest.raises(DomainError):
            accumulate_importance(np.ones((3, 3)))

    def test_rejects_non_square(self):
        with pytest.raises(DomainError):
            accumulate_importance(np.ones((3, 4)) / 4.0)


class TestSelect:
    def test_strictly_above_threshold(self):
        scores = np.array([0.1, 0.25, 0.25, 0.4])
        assert select_semantic(scores, 0.25) == [3]

    def test_ascending_output(self):
        scores = np.array([0.5, 0.1, 0.6, 0.2, 0.7])
        assert select_semantic(scores, 0.15) == [0, 2, 3, 4]

    def test_negative_threshold_rejected(self):
        with pytest.raises(DomainError):
            select_semantic(np.array([0.1]), -0.1)
