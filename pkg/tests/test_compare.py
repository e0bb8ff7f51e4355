import numpy as np
import pytest

from questlens import load_corpus
from questlens.analytics import (
    centroids,
    distance_matrix,
    motif_counts,
    normalize_radar,
    pca_map,
    quality_flow,
    top_counts,
    top_motifs,
    ward_dendrogram,
)
from questlens.analytics.compare import CentroidRow
from questlens.corpus import CorpusError, DIMENSIONS, QualityVector

from conftest import make_vector


def rows_from_vectors(vectors):
    return [
        CentroidRow(
            game_id=f"g{i}",
            kind="action",
            centroid=QualityVector(*v),
            row_percent=(0.0,) * 6,
        )
        for i, v in enumerate(vectors)
    ]


def single_action_game(game_id, name, category, scores, steps):
    return {
        "game_id": game_id,
        "title": game_id,
        "actions": [
            {
                "name": n,
                "category": c,
                "scores": {d: str(s.get(d, 0)) for d in "ucnepa"},
                "description": "",
            }
            for n, c, s in scores
        ],
        "missions": [
            {
                "mission_id": f"{game_id}-m{i}",
                "title": "M",
                "quest_type": "Side",
                "walkthrough_text": " ".join(["w"] * 35),
                "sequence": seq,
            }
            for i, seq in enumerate(steps)
        ],
    }


class TestCentroids:
    def test_action_level_hand_mean(self):
        doc = single_action_game(
            "g",
            None,
            None,
            [("A", "Combat", {"u": 0.2}), ("B", "Traversal", {"u": 0.6})],
            [],
        )
        rows = centroids(load_corpus(doc), "action")
        assert rows[0].centroid.u == pytest.approx(0.4)

    def test_single_action_single_mission_centroids_equal(self):
        doc = single_action_game(
            "g", None, None, [("A", "Combat", {"c": 0.7, "a": 0.1})], [["A"]]
        )
        corpus = load_corpus(doc)
        action_row = centroids(corpus, "action")[0]
        mission_row = centroids(corpus, "mission")[0]
        assert action_row.centroid == mission_row.centroid

    def test_row_percent_scaling(self):
        row = CentroidRow(
            game_id="g",
            kind="action",
            centroid=QualityVector(0.4, 0.2, 0.1, 0.1, 0.1, 0.1),
            row_percent=(0.0,) * 6,
        )
        from questlens.analytics.compare import _row_percent

        assert _row_percent(row.centroid) == pytest.approx((100, 50, 25, 25, 25, 25))

    def test_game_without_extracted_missions_excluded(self):
        doc = single_action_game("g", None, None, [("A", "Combat", {"c": 1})], [])
        doc["missions"] = [
            {
                "mission_id": "m0",
                "title": "M",
                "quest_type": "Side",
                "walkthrough_text": " ".join(["w"] * 35),
            }
        ]
        with pytest.warns(UserWarning, match="no extracted missions"):
            rows = centroids(load_corpus(doc), "mission")
        assert rows == []

    def test_mission_order_invariance(self, corpus):
        rows = centroids(corpus, "mission")
        reversed_docs = []
        for game in corpus.games:
            from questlens.corpus import serialize_game
            import json

            doc = json.loads(serialize_game(game))
            doc["missions"] = doc["missions"][::-1]
            reversed_docs.append(doc)
        shuffled = centroids(load_corpus(reversed_docs), "mission")
        for a, b in zip(rows, shuffled):
            assert a.centroid.isclose(b.centroid)


class TestNormalizeRadar:
    def test_scales_to_unit_max(self):
        result = normalize_radar(make_vector(u=0.5, c=0.25))
        assert result.vector.u == pytest.approx(1.0)
        assert result.vector.c == pytest.approx(0.5)
        assert not result.degenerate

    def test_all_zero_flagged(self):
        result = normalize_radar(make_vector())
        assert result.degenerate
        assert result.vector == make_vector()

    def test_idempotent(self):
        first = normalize_radar(make_vector(u=1.0, c=0.3))
        second = normalize_radar(first.vector)
        assert second.vector == first.vector


class TestPca:
    def test_identical_centroids_project_to_origin(self):
        rows = rows_from_vectors([(0.5, 0.2, 0.1, 0.4, 0.3, 0.2)] * 4)
        result = pca_map(rows)
        for x, y in result.coordinates:
            assert x == pytest.approx(0.0, abs=1e-12)
            assert y == pytest.approx(0.0, abs=1e-12)

    def test_collinear_points_rank_one(self):
        base = np.array([0.1, 0.2, 0.3, 0.1, 0.2, 0.1])
        direction = np.array([0.05, 0.1, 0.0, 0.02, 0.0, 0.01])
        rows = rows_from_vectors([tuple(base + t * direction) for t in (0.0, 1.0, 2.0)])
        result = pca_map(rows)
        assert result.explained_variance_ratio[0] == pytest.approx(1.0, abs=1e-9)

    def test_matches_eigendecomposition_oracle(self):
        rng = np.random.default_rng(3)
        data = rng.uniform(0, 1, size=(4, 6))
        rows = rows_from_vectors([tuple(r) for r in data])
        result = pca_map(rows)

        centered = data - data.mean(axis=0)
        cov = centered.T @ centered / len(data)
        eigenvalues, eigenvectors = np.linalg.eigh(cov)
        order = np.argsort(eigenvalues)[::-1]
        eigenvalues = eigenvalues[order]
        eigenvectors = eigenvectors[:, order]
        for k in range(2):
            direction = eigenvectors[:, k]
            pivot = int(np.argmax(np.abs(direction)))
            if direction[pivot] < 0:
                direction = -direction
            expected = centered @ direction
            got = [c[k] for c in result.coordinates]
            assert got == pytest.approx(list(expected), abs=1e-9)
            assert result.explained_variance_ratio[k] == pytest.approx(
                eigenvalues[k] / eigenvalues.sum(), abs=1e-9
            )

    def test_ratios_non_increasing_in_unit_interval(self):
        rng = np.random.default_rng(5)
        rows = rows_from_vectors([tuple(r) for r in rng.uniform(0, 1, size=(6, 6))])
        r1, r2 = pca_map(rows).explained_variance_ratio
        assert 0.0 <= r2 <= r1 <= 1.0

    def test_needs_two_games(self):
        with pytest.raises(CorpusError):
            pca_map(rows_from_vectors([(0.1,) * 6]))


class TestDistanceMatrix:
    def test_identical_pair_zero(self):
        rows = rows_from_vectors([(0.2,) * 6, (0.2,) * 6])
        _, matrix = distance_matrix(rows)
        assert matrix[0, 1] == 0.0

    def test_single_dimension_difference(self):
        rows = rows_from_vectors([(0.2, 0, 0, 0, 0, 0), (0.5, 0, 0, 0, 0, 0)])
        _, matrix = distance_matrix(rows)
        assert matrix[0, 1] == pytest.approx(0.3)

    def test_symmetric_zero_diagonal_triangle(self):
        rng = np.random.default_rng(9)
        rows = rows_from_vectors([tuple(r) for r in rng.uniform(0, 1, size=(5, 6))])
        _, m = distance_matrix(rows)
        assert np.allclose(m, m.T)
        assert np.all(np.diag(m) == 0.0)
        for i in range(5):
            for j in range(5):
                for k in range(5):
                    assert m[i, j] <= m[i, k] + m[k, j] + 1e-12


def ward_oracle(points):
    """Greedy Ward over explicit cluster members; returns merge list."""
    clusters = [(frozenset([i]), np.array(p, dtype=float)) for i, p in enumerate(points)]
    merges = []
    while len(clusters) > 1:
        best = None
        for i in range(len(clusters)):
            for j in range(i + 1, len(clusters)):
                members_i, _ = clusters[i]
                members_j, _ = clusters[j]
                pts_i = [points[k] for k in members_i]
                pts_j = [points[k] for k in members_j]
                mean_i = np.mean(pts_i, axis=0)
                mean_j = np.mean(pts_j, axis=0)
                ni, nj = len(pts_i), len(pts_j)
                delta_ss = ni * nj / (ni + nj) * float(((mean_i - mean_j) ** 2).sum())
                cost = 2.0 * delta_ss
                if best is None or cost < best[0] - 1e-12:
                    best = (cost, i, j)
        cost, i, j = best
        members = clusters[i][0] | clusters[j][0]
        merges.append((clusters[i][0], clusters[j][0], cost))
        merged_points = [points[k] for k in members]
        new = (members, np.mean(merged_points, axis=0))
        clusters = [c for k, c in enumerate(clusters) if k not in (i, j)] + [new]
    return merges


def tree_merges(node):
    """Flatten a dendrogram into (left leaves, right leaves, height) bottom-up."""
    if isinstance(node, str):
        return []
    out = []
    for child in node.children:
        out.extend(tree_merges(child))
    left, right = node.children
    leaves = lambda n: frozenset([n]) if isinstance(n, str) else frozenset(n.leaves())
    out.append((leaves(left), leaves(right), node.merge_height))
    out.sort(key=lambda m: m[2])
    return out


class TestWard:
    def test_two_identical_points(self):
        rows = rows_from_vectors([(0.3,) * 6, (0.3,) * 6])
        tree = ward_dendrogram(rows)
        assert tree.merge_height == pytest.approx(0.0)

    def test_two_distinct_points(self):
        rows = rows_from_vectors([(0.0,) * 6, (0.4, 0, 0, 0, 0, 0)])
        tree = ward_dendrogram(rows)
        # two singletons merge at squared distance (= twice the SS increase)
        assert tree.merge_height == pytest.approx(0.16)

    def test_heights_non_decreasing_to_root(self):
        def check(node):
            for child in node.children:
                if not isinstance(child, str):
                    assert child.merge_height <= node.merge_height + 1e-12
                    check(child)

        rng = np.random.default_rng(13)
        for _ in range(10):
            rows = rows_from_vectors([tuple(r) for r in rng.uniform(0, 1, size=(7, 6))])
            check(ward_dendrogram(rows))

    def test_merge_order_matches_bruteforce(self):
        rng = np.random.default_rng(21)
        for _ in range(30):
            points = [tuple(r) for r in rng.uniform(0, 1, size=(5, 6))]
            rows = rows_from_vectors(points)
            tree = ward_dendrogram(rows)
            got = tree_merges(tree)
            name_to_idx = {f"g{i}": i for i in range(len(points))}
            got_sets = [
                (
                    frozenset(name_to_idx[n] for n in left),
                    frozenset(name_to_idx[n] for n in right),
                    h,
                )
                for left, right, h in got
            ]
            expected = ward_oracle(points)
            assert len(got_sets) == len(expected)
            for (gl, gr, gh), (el, er, eh) in zip(got_sets, expected):
                assert {gl, gr} == {el, er}
                assert gh == pytest.approx(eh, abs=1e-9)


class TestMotifs:
    def test_hand_enumerated_windows(self):
        doc = single_action_game(
            "g",
            None,
            None,
            [("T", "Traversal", {}), ("C", "Combat", {})],
            [["T", "C", "T", "C", "T"]],
        )
        counts = motif_counts(load_corpus(doc), level="action")
        by_motif = {c.motif: c.support for c in counts}
        assert by_motif[("T", "C", "T")] == 2
        assert by_motif[("C", "T", "C")] == 1

    def test_short_sequences_contribute_nothing(self):
        doc = single_action_game(
            "g", None, None, [("T", "Traversal", {})], [["T", "T"]]
        )
        assert motif_counts(load_corpus(doc), level="action") == []

    def test_support_sums_across_missions(self):
        doc = single_action_game(
            "g",
            None,
            None,
            [("S", "Stealth", {}), ("T", "Traversal", {}), ("C", "Combat", {})],
            [["S", "T", "C"], ["S", "T", "C"]],
        )
        counts = motif_counts(load_corpus(doc), level="category")
        assert counts == [
            type(counts[0])(motif=("Stealth", "Traversal", "Combat"), game_id="g", support=2)
        ]

    def test_motif_conservation(self, corpus):
        counts = motif_counts(corpus, level="category")
        total = sum(c.support for c in counts)
        expected = sum(
            max(0, len(m.sequence) - 2)
            for m in corpus.missions()
            if m.sequence is not None
        )
        assert total == expected

    def test_bruteforce_oracle_random_corpora(self):
        rng = np.random.default_rng(17)
        for _ in range(10):
            n_actions = int(rng.integers(2, 5))
            names = [f"A{i}" for i in range(n_actions)]
            seqs = [
                [names[int(rng.integers(0, n_actions))] for _ in range(int(rng.integers(1, 9)))]
                for _ in range(int(rng.integers(1, 6)))
            ]
            doc = single_action_game(
                "g", None, None, [(n, "Combat", {}) for n in names], seqs
            )
            counts = motif_counts(load_corpus(doc), level="action")
            expected: dict = {}
            for seq in seqs:
                for i in range(len(seq) - 2):
                    key = tuple(seq[i : i + 3])
                    expected[key] = expected.get(key, 0) + 1
            assert {c.motif: c.support for c in counts} == expected

    def test_top_motifs_tiebreak(self):
        doc = single_action_game(
            "g",
            None,
            None,
            [("A", "Combat", {}), ("B", "Traversal", {})],
            [["A", "B", "A"], ["B", "A", "B"]],
        )
        counts = motif_counts(load_corpus(doc), level="action")
        top = top_motifs(counts, "g", k=1)
        assert top[0].motif == ("A", "B", "A")  # tie at support 1 -> lexicographic


class TestTopCounts:
    def test_counting(self):
        doc = single_action_game(
            "g",
            None,
            None,
            [("T", "Traversal", {}), ("C", "Combat", {})],
            [["T"] * 4 + ["C"] * 3, ["T"] * 3],
        )
        ranked = top_counts(load_corpus(doc), level="category")
        assert ranked["g"] == [("Traversal", 7), ("Combat", 3)]

    def test_empty_game(self):
        doc = single_action_game("g", None, None, [("T", "Traversal", {})], [])
        assert top_counts(load_corpus(doc))["g"] == []

    def test_tie_lexicographic(self):
        doc = single_action_game(
            "g",
            None,
            None,
            [("T", "Traversal", {}), ("C", "Combat", {})],
            [["T", "C"] * 4],
        )
        ranked = top_counts(load_corpus(doc), level="category")
        assert ranked["g"] == [("Combat", 4), ("Traversal", 4)]


class TestStatisticsPurity:
    def test_summaries_identical_across_sigma(self, corpus):
        game = corpus.games[0]
        mission = next(m for m in game.missions if m.sequence)
        flows = {
            s: quality_flow(mission.sequence, game.library, sigma=s)
            for s in (0.0, 2.0, 10.0)
        }
        assert flows[0.0].raw == flows[2.0].raw == flows[10.0].raw
        rows = {s: centroids(corpus, "mission") for s in (0.0, 2.0, 10.0)}
        first = rows[0.0]
        for other in (rows[2.0], rows[10.0]):
            for a, b in zip(first, other):
                assert a.centroid == b.centroid
