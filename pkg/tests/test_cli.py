import json

import pytest

from clusterpoisson import cli
from clusterpoisson.corpus import g25_seed, rank2_acyclic_seed
from clusterpoisson.seedio import render_seed_file


@pytest.fixture
def g25_file(tmp_path):
    ps = g25_seed()
    path = tmp_path / "g25.json"
    path.write_text(render_seed_file(ps.seed, ps.lam))
    return str(path)


@pytest.fixture
def rank2_file(tmp_path):
    ps = rank2_acyclic_seed(2)
    path = tmp_path / "rank2.json"
    path.write_text(render_seed_file(ps.seed, ps.lam))
    return str(path)


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestHappyPaths:
    def test_mutate_involution(self, capsys, g25_file):
        code, out, _ = run(capsys, "mutate", g25_file, "1", "1")
        assert code == 0
        assert "d13 = x1" in out

    def test_check_pair_text(self, capsys, g25_file):
        code, out, _ = run(capsys, "check-pair", g25_file)
        assert code == 0
        assert "(1, 6) = -1" in out
        assert "compatible: False" in out

    def test_check_pair_json(self, capsys, g25_file):
        code, out, _ = run(capsys, "--json", "check-pair", g25_file)
        assert code == 0
        data = json.loads(out)
        assert data["diagonal"] == [2, 2]

    def test_kernel(self, capsys, g25_file):
        code, out, _ = run(capsys, "kernel", g25_file)
        assert code == 0 and "rank 5" in out

    def test_invariant(self, capsys, g25_file):
        code, out, _ = run(capsys, "invariant", g25_file, "--poly", "x1")
        assert code == 0 and "NOT invariant" in out

    def test_tpp_scan(self, capsys, g25_file):
        code, out, _ = run(capsys, "tpp-scan", g25_file)
        assert code == 0
        assert "candidate sets" in out

    def test_member(self, capsys, g25_file):
        code, out, _ = run(capsys, "member", g25_file, "--set", "x3,x4", "--poly", "x2*x4 + x3*x5")
        assert code == 0 and "is in" in out

    def test_poset(self, capsys, g25_file):
        code, out, _ = run(capsys, "poset", g25_file, "--defining")
        assert code == 0

    def test_acyclic(self, capsys, rank2_file):
        code, out, _ = run(capsys, "acyclic", rank2_file)
        assert code == 0 and "smooth" in out

    def test_supertoric(self, capsys, g25_file):
        code, out, _ = run(capsys, "supertoric", g25_file, "--max-subset", "1")
        assert code == 0 and "FAILED" in out

    def test_mutate_pair(self, capsys, rank2_file):
        code, out, _ = run(capsys, "mutate-pair", rank2_file, "1", "--eps", "-1")
        assert code == 0 and "compatible before: True, after: True" in out

    def test_corpus_verify(self, capsys):
        code, out, _ = run(capsys, "corpus", "verify", "singular")
        assert code == 0 and "all checks passed" in out

    def test_corpus_seed_output_is_parseable(self, capsys):
        code, out, _ = run(capsys, "--json", "corpus", "seed", "g25")
        assert code == 0
        data = json.loads(out)
        assert data["n"] == 7 and data["m"] == 2


class TestErrorPaths:
    def test_missing_file(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["kernel", "/nonexistent/seed.json"])
        assert exc.value.code == cli.EXIT_USAGE

    def test_invalid_json_file(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{nope")
        with pytest.raises(SystemExit) as exc:
            cli.main(["kernel", str(bad)])
        assert exc.value.code == cli.EXIT_USAGE

    def test_bad_seed_content(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"schema": 1, "n": 2, "m": 2, "labels": ["a", "b"], "B": [[0, 1], [1, 0]]}))
        code, _, err = run(capsys, "kernel", str(bad))
        assert code == cli.EXIT_USAGE
        assert "skew-symmetrizable" in err

    def test_out_of_range_direction(self, capsys, g25_file):
        code, _, err = run(capsys, "mutate", g25_file, "9")
        assert code == cli.EXIT_USAGE and "out of range" in err

    def test_bad_poly(self, capsys, g25_file):
        code, _, err = run(capsys, "invariant", g25_file, "--poly", "x1 $ x2")
        assert code == cli.EXIT_USAGE

    def test_missing_lambda(self, capsys, tmp_path):
        seed = {"schema": 1, "n": 2, "m": 2, "labels": ["x1", "x2"], "B": [[0, 1], [-1, 0]]}
        path = tmp_path / "nolam.json"
        path.write_text(json.dumps(seed))
        code, _, err = run(capsys, "check-pair", str(path))
        assert code == cli.EXIT_USAGE and "Lambda" in err

    def test_server_error_maps_to_invariant_exit(self, capsys, monkeypatch, g25_file):
        class FakeResponse:
            status_code = 500

            @staticmethod
            def json():
                return {"detail": "invariant violation: synthetic"}

            text = "boom"

        class FakeClient:
            def __enter__(self):
                return self

            def __exit__(self, *exc):
                return False

            def post(self, url, json=None):
                return FakeResponse()

            def get(self, url):
                return FakeResponse()

        monkeypatch.setattr(cli, "_client", lambda server: FakeClient())
        code, _, err = run(capsys, "kernel", g25_file)
        assert code == cli.EXIT_INVARIANT
        assert "synthetic" in err


class TestRemoteFlag:
    def test_server_flag_builds_httpx_client(self):
        client = cli._client("http://example.invalid:9")
        import httpx

        assert isinstance(client, httpx.Client)
        client.close()

    def test_unreachable_server_is_a_usage_error(self, capsys, g25_file):
        with pytest.raises(SystemExit) as exc:
            cli.main(["--server", "http://127.0.0.1:1", "kernel", g25_file])
        assert exc.value.code == cli.EXIT_USAGE


class TestServe:
    def test_serve_invokes_uvicorn(self, monkeypatch):
        calls = {}

        def fake_run(target, host=None, port=None):
            calls["args"] = (target, host, port)

        import uvicorn

        monkeypatch.setattr(uvicorn, "run", fake_run)
        assert cli.main(["serve", "--host", "0.0.0.0", "--port", "9999"]) == 0
        assert calls["args"] == ("clusterpoisson.service.app:app", "0.0.0.0", 9999)
