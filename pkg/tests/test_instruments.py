import pytest

from questlens.evaluation import seq_score, sus_score, ueqs_scores


class TestSus:
    def test_all_threes_give_midpoint(self):
        assert sus_score([3] * 10) == pytest.approx(50.0)

    def test_ceiling(self):
        responses = [5 if i % 2 == 0 else 1 for i in range(10)]  # odd items 5, even 1
        assert sus_score(responses) == pytest.approx(100.0)

    def test_floor(self):
        responses = [1 if i % 2 == 0 else 5 for i in range(10)]
        assert sus_score(responses) == pytest.approx(0.0)

    def test_wrong_length_rejected(self):
        with pytest.raises(ValueError):
            sus_score([3] * 9)

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            sus_score([3] * 9 + [6])

    def test_non_integer_rejected(self):
        with pytest.raises(ValueError):
            sus_score([3.0] * 10)  # type: ignore[list-item]


class TestUeqs:
    def test_hand_computed_means(self):
        pragmatic, hedonic = ueqs_scores([2, 1, 2, 1, 1, 1, 2, 1])
        assert pragmatic == pytest.approx(1.5)
        assert hedonic == pytest.approx(1.25)

    def test_negative_scale(self):
        pragmatic, hedonic = ueqs_scores([-3, -3, -3, -3, 3, 3, 3, 3])
        assert pragmatic == -3.0
        assert hedonic == 3.0

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            ueqs_scores([0, 0, 0, 4, 0, 0, 0, 0])

    def test_wrong_length_rejected(self):
        with pytest.raises(ValueError):
            ueqs_scores([1] * 7)


class TestSeq:
    def test_passthrough(self):
        assert seq_score(5) == 5

    def test_bounds(self):
        assert seq_score(1) == 1
        assert seq_score(7) == 7
        with pytest.raises(ValueError):
            seq_score(0)
        with pytest.raises(ValueError):
            seq_score(8)

    def test_non_integer_rejected(self):
        with pytest.raises(ValueError):
            seq_score(4.5)  # type: ignore[arg-type]
