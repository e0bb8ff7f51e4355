import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import pytest

from questlens.cli import main

from conftest import FIXTURES

CORPUS = str(FIXTURES / "corpus")


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestValidate:
    def test_identical_files_give_perfect_f1(self, capsys, tmp_path):
        gold = {
            "entries": [
                {"mission_id": "m1", "sequence": ["A", "B"]},
                {"mission_id": "m2", "sequence": ["C"]},
            ]
        }
        pred = {"predictions": {"m1": ["A", "B"], "m2": ["C"]}}
        gold_path = tmp_path / "gold.json"
        pred_path = tmp_path / "pred.json"
        gold_path.write_text(json.dumps(gold))
        pred_path.write_text(json.dumps(pred))
        code, out, _ = run_cli(
            capsys, "validate", "--gold", str(gold_path), "--pred", str(pred_path),
            "--resamples", "50",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["metrics"]["f1"]["value"] == 1.0
        assert doc["metrics"]["exact_match_rate"]["value"] == 1.0

    def test_fixture_files(self, capsys):
        code, out, _ = run_cli(
            capsys, "validate",
            "--gold", str(FIXTURES / "gold_set.json"),
            "--pred", str(FIXTURES / "predictions.json"),
            "--resamples", "50", "--format", "csv",
        )
        assert code == 0
        assert out.startswith("metric,value,ci_lo,ci_hi")


class TestIrr:
    def test_prints_published_pooled_kappa(self, capsys):
        code, out, _ = run_cli(
            capsys, "irr", "--grid", str(FIXTURES / "irr_ratings.json"),
            "--resamples", "0",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["pooled"]["kappa_w"] == pytest.approx(0.9131, abs=0.001)
        assert doc["max_step_delta_2_items"] == [
            "GTA V: Parachute Free-fall",
            "GTA V: Stock Market Trade",
        ]

    def test_csv_output(self, capsys):
        code, out, _ = run_cli(
            capsys, "irr", "--grid", str(FIXTURES / "irr_ratings.json"),
            "--resamples", "0", "--format", "csv",
        )
        assert code == 0
        assert out.splitlines()[0] == "scope,kappa_w,ci_lo,ci_hi"


class TestAnalyze:
    def test_motifs_match_hand_enumeration(self, capsys):
        code, out, _ = run_cli(
            capsys, "analyze", "motifs", "--corpus", CORPUS, "--level", "category",
            "--k", "3",
        )
        assert code == 0
        doc = json.loads(out)
        per_game = {g["game_id"]: g["motifs"] for g in doc["per_game"]}
        # hand enumeration for emberwood ew-s3: Soc,Trav,Soc,Trav,Soc ->
        # windows (S,T,S) (T,S,T) (S,T,S)
        ew = {tuple(m["motif"]): m["support"] for m in per_game["emberwood"]}
        assert ew[("Social Interaction", "Traversal", "Social Interaction")] >= 2

    def test_stats(self, capsys):
        code, out, _ = run_cli(capsys, "analyze", "stats", "--corpus", CORPUS)
        assert code == 0
        doc = json.loads(out)
        assert doc["total_missions"] == 19

    def test_writes_file(self, capsys, tmp_path):
        out_path = tmp_path / "out" / "centroids.json"
        code, _, _ = run_cli(
            capsys, "analyze", "centroids", "--corpus", CORPUS, "--kind", "action",
            "--out", str(out_path),
        )
        assert code == 0
        doc = json.loads(out_path.read_text())
        assert doc["kind"] == "centroids"

    def test_centroids_csv(self, capsys):
        code, out, _ = run_cli(
            capsys, "analyze", "centroids", "--corpus", CORPUS, "--format", "csv",
        )
        assert code == 0
        assert out.splitlines()[0].startswith("game_id,u_mean")

    def test_mission_document_requires_mission(self, capsys):
        code, _, err = run_cli(capsys, "analyze", "flows", "--corpus", CORPUS)
        assert code == 2

    def test_flow_document(self, capsys):
        code, out, _ = run_cli(
            capsys, "analyze", "flows", "--corpus", CORPUS, "--mission", "af-m1",
        )
        assert code == 0
        assert json.loads(out)["mission_id"] == "af-m1"


class TestSample:
    def test_deterministic_sample(self, capsys):
        code1, out1, _ = run_cli(capsys, "sample", "--corpus", CORPUS, "--n", "10")
        code2, out2, _ = run_cli(capsys, "sample", "--corpus", CORPUS, "--n", "10")
        assert code1 == code2 == 0
        assert out1 == out2
        doc = json.loads(out1)
        assert len(doc["missions"]) == 10

    def test_csv(self, capsys):
        code, out, _ = run_cli(
            capsys, "sample", "--corpus", CORPUS, "--n", "5", "--format", "csv"
        )
        assert code == 0
        assert out.splitlines()[0] == "mission_id,game_id,quest_type"


class TestExtract:
    def test_stub_backend_extracts_unextracted(self, capsys, tmp_path):
        out_path = tmp_path / "neon-harbor.json"
        log_path = tmp_path / "log.jsonl"
        code, out, _ = run_cli(
            capsys, "extract", "--corpus", CORPUS, "--game", "neon-harbor",
            "--backend", "stub", "--out", str(out_path), "--resume",
            "--log", str(log_path),
        )
        assert code == 0
        doc = json.loads(out_path.read_text())
        sequences = {m["mission_id"]: m.get("sequence") for m in doc["missions"]}
        assert sequences["nh-s3"]  # previously unextracted, now filled by the stub
        for step in sequences["nh-s3"]:
            assert any(a["name"] == step for a in doc["actions"])
        assert log_path.exists()

    def test_resume_skips_everything_second_time(self, capsys, tmp_path):
        out_path = tmp_path / "emberwood.json"
        code, out, _ = run_cli(
            capsys, "extract", "--corpus", CORPUS, "--game", "emberwood",
            "--backend", "stub", "--out", str(out_path), "--resume",
        )
        assert code == 0
        assert "skipped 6" in out


class TestErrors:
    def test_unknown_command_exit_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_missing_corpus_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "sample")
        assert code == 2
        assert "no corpus" in err

    def test_bad_gold_path_runtime_error(self, capsys):
        code, _, err = run_cli(
            capsys, "validate", "--gold", "/nope.json", "--pred", "/nope.json"
        )
        assert code == 1

    def test_bad_config_exit_2(self, capsys, tmp_path):
        bad = tmp_path / "config.json"
        bad.write_text("{not json")
        code, _, err = run_cli(capsys, "--config", str(bad), "sample")
        assert code == 2


class StubWikiHandler(BaseHTTPRequestHandler):
    def do_GET(self):
        from urllib.parse import parse_qs, urlparse

        params = parse_qs(urlparse(self.path).query)
        page = params.get("page", [""])[0]
        if page == "Lost_Cargo":
            text = (
                "<h2>Walkthrough</h2><p>"
                + " ".join(f"step{i}" for i in range(40))
                + "</p>"
            )
            body = json.dumps(
                {"parse": {"title": "Lost Cargo", "revid": 31, "text": {"*": text}}}
            ).encode()
        else:
            body = json.dumps({"error": {"code": "missingtitle"}}).encode()
        self.send_response(200)
        self.send_header("Content-Type", "application/json")
        self.end_headers()
        self.wfile.write(body)

    def log_message(self, *args):
        pass


class TestIngest:
    def test_against_local_stub_server(self, capsys, tmp_path):
        server = ThreadingHTTPServer(("127.0.0.1", 0), StubWikiHandler)
        thread = threading.Thread(target=server.serve_forever, daemon=True)
        thread.start()
        try:
            endpoint = f"http://127.0.0.1:{server.server_port}/api.php"
            titles = tmp_path / "titles.json"
            titles.write_text(
                json.dumps(
                    [
                        {"title": "Lost Cargo", "quest_type": "Side"},
                        {"title": "No Such Page", "quest_type": "POI"},
                    ]
                )
            )
            code, out, err = run_cli(
                capsys, "ingest", "--endpoint", endpoint, "--titles", str(titles),
                "--game-id", "demo", "--out", str(tmp_path / "snaps"),
                "--rate-limit", "0", "--retries", "2", "--timeout", "5",
            )
            assert code == 0
            assert "admitted 1" in out
            manifest = json.loads((tmp_path / "snaps" / "demo_missions.json").read_text())
            assert manifest["missions"][0]["title"] == "Lost Cargo"
            assert manifest["missions"][0]["snapshot"]["revision_id"] == 31
            assert (tmp_path / "snaps" / "31.html").exists()
        finally:
            server.shutdown()
