import json
import os

import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

from internmatch import rounds as rounds_mod
from internmatch.api import create_app
from internmatch.cli import main as cli_main
from internmatch.config import Config
from internmatch.ontology import (InstanceStore, dump_json, save_store,
                                  store_to_doc)

from test_match import matching_store


@pytest.fixture()
def config():
    return Config(clusterK=2)


@pytest.fixture()
def client(config, tmp_path):
    app = create_app(config=config, store=matching_store(),
                     rounds_dir=str(tmp_path / "rounds"))
    return TestClient(app)


@pytest.fixture()
def store_file(tmp_path):
    path = tmp_path / "store.json"
    save_store(matching_store(), path)
    return str(path)


@pytest.fixture()
def config_file(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(dump_json(Config(clusterK=2).to_doc()), encoding="utf-8")
    return str(path)


class TestPersistence:
    def test_save_load_round_trip(self, tmp_path):
        store = matching_store()
        rs = rounds_mod.build_round("r1", store, Config(clusterK=2))
        rs.overrides["stu1"] = "m1"
        rounds_mod.persist_round(rs, str(tmp_path))
        again = rounds_mod.load_round("r1", str(tmp_path))
        assert again.to_doc() == rs.to_doc()

    def test_load_unknown_round(self, tmp_path):
        with pytest.raises(rounds_mod.RoundNotFound):
            rounds_mod.load_round("nope", str(tmp_path))

    def test_interrupted_write_keeps_last_snapshot(self, tmp_path, monkeypatch):
        store = matching_store()
        rs = rounds_mod.build_round("r1", store, Config(clusterK=2))
        path = rounds_mod.persist_round(rs, str(tmp_path))
        good = open(path, encoding="utf-8").read()

        def crash(*_args, **_kwargs):
            raise OSError("simulated crash before rename")

        monkeypatch.setattr(rounds_mod.os, "replace", crash)
        rs.overrides["stu1"] = "m1"
        with pytest.raises(OSError):
            rounds_mod.persist_round(rs, str(tmp_path))
        monkeypatch.undo()
        assert open(path, encoding="utf-8").read() == good
        assert rounds_mod.load_round("r1", str(tmp_path)).overrides == {}
        assert rounds_mod.list_rounds(str(tmp_path)) == ["r1"]

    def test_list_rounds_missing_dir(self, tmp_path):
        assert rounds_mod.list_rounds(str(tmp_path / "absent")) == []


class TestStoreEndpoints:
    def test_export_import_round_trip(self, client):
        exported = client.get("/v1/store/export").json()
        resp = client.post("/v1/store/import", json=exported)
        assert resp.status_code == 200
        assert resp.json() == {"imported": True, "report": []}
        assert client.get("/v1/store/export").json() == exported

    def test_import_unknown_field(self, client):
        resp = client.post("/v1/store/import", json={"bogus": []})
        assert resp.status_code == 422
        assert resp.json()["code"] == "store_format"

    def test_validate_reports_violations(self, client):
        doc = client.get("/v1/store/export").json()
        doc["marks"].append({"studentId": "stu1", "courseId": "crs_a1",
                             "value": 25.0})
        client.post("/v1/store/import", json=doc)
        report = client.get("/v1/store/validate").json()["report"]
        assert any("out of [0,20]" in msg for _eid, msg in report)


class TestAnnotateEndpoint:
    def test_raw_text(self, client):
        resp = client.post("/v1/missions/annotate",
                           json={"rawText": "develop a sales dashboard"})
        assert resp.status_code == 200
        body = resp.json()
        assert body["competencies"] == [{"action": "a1", "domainAction": "d1"}]
        assert body["activityAreas"] == ["s1"]

    def test_unknown_mission(self, client):
        resp = client.post("/v1/missions/annotate", json={"missionId": "m99"})
        assert resp.status_code == 404

    def test_missing_keys(self, client):
        resp = client.post("/v1/missions/annotate", json={})
        assert resp.status_code == 422


class TestRounds:
    def test_create_on_empty_store(self, tmp_path):
        app = create_app(config=Config(), store=InstanceStore(),
                         rounds_dir=str(tmp_path))
        client = TestClient(app)
        resp = client.post("/v1/rounds")
        assert resp.status_code == 422
        assert "no annotated missions" in resp.json()["message"]

    def test_create_and_get(self, client):
        resp = client.post("/v1/rounds")
        assert resp.status_code == 201
        body = resp.json()
        assert body["roundId"] == "r001"
        assert body["status"] == "Computed"
        assert {m["id"] for m in body["missions"]} == {"m1", "m2", "m3"}
        assert client.get("/v1/rounds/r001").json() == body

    def test_unknown_round(self, client):
        assert client.get("/v1/rounds/r999").status_code == 404

    def test_candidates_limit_matches_ranking(self, client, config):
        from internmatch import engine
        from internmatch.match import build_knowledge_base, rank_candidates

        client.post("/v1/rounds")
        resp = client.get("/v1/rounds/r001/missions/m1/candidates?limit=1")
        assert resp.status_code == 200
        body = resp.json()
        assert len(body["entries"]) == 1

        store = matching_store()
        model = engine.build_cluster_model(store, config)
        kb = build_knowledge_base(store, model)
        ranked = rank_candidates(store.missions[0],
                                 sorted(store.students, key=lambda s: s.id),
                                 kb, store, config.matchWeights)
        assert body["entries"][0]["studentId"] == ranked.entries[0][0]
        assert body["weights"] == {"alpha": 0.6, "beta": 0.2, "gamma": 0.2}
        assert "thresholds" in body

    def test_candidates_unknown_mission(self, client):
        client.post("/v1/rounds")
        resp = client.get("/v1/rounds/r001/missions/m99/candidates")
        assert resp.status_code == 404

    def test_student_missions(self, client):
        client.post("/v1/rounds")
        resp = client.get("/v1/rounds/r001/students/stu2/missions?limit=2")
        assert resp.status_code == 200
        body = resp.json()
        assert body["studentId"] == "stu2"
        assert len(body["entries"]) == 2
        assert client.get(
            "/v1/rounds/r001/students/nobody/missions").status_code == 404

    def test_assign_then_summary_counts(self, client):
        client.post("/v1/rounds")
        plan = client.post("/v1/rounds/r001/assign").json()
        assert plan["feasible"]
        summary = client.get("/v1/rounds/r001").json()
        assert summary["currentPlan"]["assignment"] == plan["assignment"]
        assigned = sum(m["assignedCount"] for m in summary["missions"])
        expected = sum(1 for mid in plan["assignment"].values()
                       if mid is not None)
        assert assigned == expected

    def test_override_pins_assignment(self, client):
        client.post("/v1/rounds")
        resp = client.post("/v1/rounds/r001/overrides",
                           json={"studentId": "stu3", "missionId": "m1"})
        assert resp.json() == {"overrides": {"stu3": "m1"}}
        plan = client.post("/v1/rounds/r001/assign").json()
        assert plan["assignment"]["stu3"] == "m1"

    def test_override_null_clears(self, client):
        client.post("/v1/rounds")
        client.post("/v1/rounds/r001/overrides",
                    json={"studentId": "stu3", "missionId": "m1"})
        resp = client.post("/v1/rounds/r001/overrides",
                           json={"studentId": "stu3", "missionId": None})
        assert resp.json() == {"overrides": {}}

    def test_override_unknown_ids(self, client):
        client.post("/v1/rounds")
        assert client.post("/v1/rounds/r001/overrides",
                           json={"studentId": "ghost",
                                 "missionId": "m1"}).status_code == 404
        assert client.post("/v1/rounds/r001/overrides",
                           json={"studentId": "stu1",
                                 "missionId": "m99"}).status_code == 404

    def test_assign_with_custom_ga_params(self, client):
        client.post("/v1/rounds")
        plan = client.post("/v1/rounds/r001/assign",
                           json={"gaParams": {"seed": 9, "generations": 30}}
                           ).json()
        assert plan["gaParams"]["seed"] == 9
        assert plan["gaParams"]["generations"] == 30

    def test_publish_freezes_round(self, client):
        client.post("/v1/rounds")
        client.post("/v1/rounds/r001/assign")
        before = client.get("/v1/rounds/r001").json()
        resp = client.post("/v1/rounds/r001/publish")
        assert resp.json()["status"] == "Published"
        for call in [
            lambda: client.post("/v1/rounds/r001/overrides",
                                json={"studentId": "stu1", "missionId": "m1"}),
            lambda: client.post("/v1/rounds/r001/assign"),
            lambda: client.post("/v1/rounds/r001/publish"),
        ]:
            resp = call()
            assert resp.status_code == 409
            assert resp.json()["code"] == "round_published"
        after = client.get("/v1/rounds/r001").json()
        before["status"] = "Published"
        assert after == before

    def test_round_survives_restart(self, config, tmp_path):
        rounds_dir = str(tmp_path / "rounds")
        app = create_app(config=config, store=matching_store(),
                         rounds_dir=rounds_dir)
        client = TestClient(app)
        client.post("/v1/rounds")
        body = client.get("/v1/rounds/r001").json()

        fresh = create_app(config=config, store=matching_store(),
                           rounds_dir=rounds_dir)
        client2 = TestClient(fresh)
        assert client2.get("/v1/rounds/r001").json() == body
        assert client2.post("/v1/rounds").json()["roundId"] == "r002"


class TestConfigEndpoints:
    def test_get_and_put(self, client):
        doc = client.get("/v1/config").json()
        assert doc["matchWeights"] == {"alpha": 0.6, "beta": 0.2, "gamma": 0.2}
        doc["kMax"] = 5
        resp = client.put("/v1/config", json=doc)
        assert resp.status_code == 200
        assert client.get("/v1/config").json()["kMax"] == 5

    def test_put_invalid(self, client):
        doc = client.get("/v1/config").json()
        doc["matchWeights"] = {"alpha": 0.9, "beta": 0.9, "gamma": 0.9}
        resp = client.put("/v1/config", json=doc)
        assert resp.status_code == 422
        assert resp.json()["code"] == "config"


class TestCli:
    def run(self, *args):
        return CliRunner().invoke(cli_main, list(args))

    def test_validate_ok(self, store_file):
        result = self.run("validate", store_file)
        assert result.exit_code == 0
        assert json.loads(result.output) == {"report": []}

    def test_validate_failure_exit_1(self, tmp_path):
        store = matching_store()
        store.marks[0].value = 42.0
        path = tmp_path / "bad.json"
        save_store(store, path)
        result = self.run("validate", str(path))
        assert result.exit_code == 1
        assert json.loads(result.output)["report"]

    def test_missing_file_exit_2(self):
        assert self.run("validate", "no-such-file.json").exit_code == 2

    def test_annotate_writes_store_and_log(self, tmp_path):
        store = matching_store()
        save_store(store, tmp_path / "in.json")
        out = tmp_path / "out.json"
        log = tmp_path / "log.jsonl"
        result = self.run("annotate", str(tmp_path / "in.json"),
                          "--out", str(out), "--log", str(log))
        assert result.exit_code == 0
        lines = [json.loads(l) for l in log.read_text().splitlines()]
        assert [e["missionId"] for e in lines] == ["m3"]
        assert "s1" in lines[0]["concepts"]

    def test_cluster_fixed_k(self, store_file, config_file):
        result = self.run("--config", config_file, "cluster", store_file,
                          "--k", "2", "--seed", "0")
        assert result.exit_code == 0
        model = json.loads(result.output)
        assert model["k"] == 2

    def test_cluster_conflicting_flags(self, store_file):
        result = self.run("cluster", store_file, "--k", "2", "--k-auto")
        assert result.exit_code == 2

    def test_match_requires_one_side(self, store_file):
        assert self.run("match", store_file).exit_code == 2
        assert self.run("match", store_file, "--mission", "m1",
                        "--student", "stu1").exit_code == 2

    def test_export_triples(self, store_file):
        result = self.run("export-triples", store_file)
        assert result.exit_code == 0
        lines = result.output.splitlines()
        assert "m1\ttype\tmission" in lines
        assert lines == sorted(lines)

    def test_assign_deterministic_bytes(self, store_file, config_file, tmp_path):
        out_a = tmp_path / "a.json"
        out_b = tmp_path / "b.json"
        for out in (out_a, out_b):
            result = self.run("--config", config_file, "assign", store_file,
                              "--seed", "42", "--out", str(out))
            assert result.exit_code == 0
        assert out_a.read_bytes() == out_b.read_bytes()

    def test_assign_overrides_params(self, store_file, config_file):
        result = self.run("--config", config_file, "assign", store_file,
                          "--seed", "5", "--pop", "20", "--gens", "30",
                          "--weights", "0.5,0.3,0.2")
        assert result.exit_code == 0
        doc = json.loads(result.output)
        assert doc["gaParams"]["populationSize"] == 20
        assert doc["matchWeights"] == {"alpha": 0.5, "beta": 0.3, "gamma": 0.2}


class TestCrossInterfaceConsistency:
    def test_match_bytes_identical(self, client, store_file, config_file):
        client.post("/v1/rounds")
        http_body = client.get(
            "/v1/rounds/r001/missions/m1/candidates").content
        result = CliRunner().invoke(
            cli_main, ["--config", config_file, "match", store_file,
                       "--mission", "m1"])
        assert result.exit_code == 0
        assert result.output.encode("utf-8") == http_body

    def test_export_bytes_identical(self, client, store_file, config_file):
        http_body = client.get("/v1/store/export").content
        result = CliRunner().invoke(
            cli_main, ["--config", config_file, "export-store", store_file])
        assert result.exit_code == 0
        assert result.output.encode("utf-8") == http_body
