#!/usr/bin/env python3
"""Record HTTP API responses as JSON fixtures for the frontend tests.

Drives the real service (in-process test client) against the annotated demo
store and writes every body byte-for-byte into frontend/fixtures/. The
frontend mock server replays these, so its contract tests compare displayed
values against genuine server output.
"""

import json
import pathlib
import sys
import tempfile

from fastapi.testclient import TestClient

ROOT = pathlib.Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from internmatch import engine  # noqa: E402
from internmatch.api import create_app  # noqa: E402
from internmatch.config import Config  # noqa: E402
from internmatch.ontology import UniversityConstraint, load_store  # noqa: E402

OUT = ROOT / "frontend" / "fixtures"


def save(name: str, resp_or_doc):
    OUT.mkdir(parents=True, exist_ok=True)
    if hasattr(resp_or_doc, "content"):
        (OUT / name).write_bytes(resp_or_doc.content)
    else:
        (OUT / name).write_text(
            json.dumps(resp_or_doc, indent=2, sort_keys=True) + "\n",
            encoding="utf-8")
    print(f"wrote {name}")


def main():
    store, _ = engine.annotate_all(load_store(ROOT / "fixtures" / "demo_store.json"))
    config = Config(clusterK=3)

    with tempfile.TemporaryDirectory() as rounds_dir:
        client = TestClient(create_app(config=config, store=store,
                                       rounds_dir=rounds_dir))
        save("config.json", client.get("/v1/config"))

        resp = client.post("/v1/rounds")
        assert resp.status_code == 201, resp.content
        save("round_summary_initial.json", resp)

        save("candidates_m01.json",
             client.get("/v1/rounds/r001/missions/m01/candidates"))
        save("candidates_m01_fr.json",
             client.get("/v1/rounds/r001/missions/m01/candidates?locale=fr"))
        save("student_missions_s01.json",
             client.get("/v1/rounds/r001/students/s01/missions?limit=5"))

        resp = client.post("/v1/rounds/r001/assign")
        assert resp.status_code == 200, resp.content
        save("plan.json", resp)
        plan = resp.json()
        save("round_summary.json", client.get("/v1/rounds/r001"))

        weights = {"match": 1.0, "interest": 0.0, "unassigned": 2.0,
                   "capacityPenalty": 10.0}
        save("plan_interest_zero.json",
             client.post("/v1/rounds/r001/assign",
                         json={"objectiveWeights": weights}))

        # pin a student onto a mission the optimizer did not pick for them
        sid = next(s for s in sorted(plan["assignment"])
                   if plan["assignment"][s] not in (None, "m01"))
        save("pin.json", {"studentId": sid, "missionId": "m01"})
        resp = client.post("/v1/rounds/r001/overrides",
                           json={"studentId": sid, "missionId": "m01"})
        assert resp.status_code == 200, resp.content
        resp = client.post("/v1/rounds/r001/assign")
        assert resp.json()["assignment"][sid] == "m01"
        save("plan_pinned.json", resp)

        assert client.post("/v1/rounds/r001/publish").status_code == 200
        save("round_summary_published.json", client.get("/v1/rounds/r001"))
        resp = client.post("/v1/rounds/r001/assign")
        assert resp.status_code == 409, resp.content
        save("error_published.json", resp)

    # a round whose optimum necessarily breaks a proposal bound, for the
    # dashboard violation badge
    broken = engine.annotate_all(load_store(ROOT / "fixtures" / "demo_store.json"))[0]
    broken.constraints = list(broken.constraints) + [
        UniversityConstraint(missionId="m12", minProposed=30, maxProposed=30)]
    with tempfile.TemporaryDirectory() as rounds_dir:
        client = TestClient(create_app(config=config, store=broken,
                                       rounds_dir=rounds_dir))
        assert client.post("/v1/rounds").status_code == 201
        resp = client.post("/v1/rounds/r001/assign")
        assert resp.json()["violations"], "expected a proposal-bound violation"
        save("plan_violation.json", resp)
        save("round_summary_violation.json", client.get("/v1/rounds/r001"))


if __name__ == "__main__":
    main()
