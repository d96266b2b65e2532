"""Driving the HTTP API in-process.

The same engine is exposed over HTTP (`pegcert serve`).  Here we exercise
the endpoints through an in-process test client: create a problem, play a
move with live re-checking, then launch a full run and poll the report.
"""

import time

from fastapi.testclient import TestClient

from pegcert import engine
from pegcert.http_api import create_app

client = TestClient(create_app())

pb = client.post("/problems", json={"start": "oo.\n", "end": "..o\n"}).json()
pid = pb["id"]
print("created problem", pid, "on board", pb["board_id"])

# Play the only legal move; the live ladder re-runs on the working position.
r = client.post(f"/problems/{pid}/moves", json={
    "move": {"p": "0,0", "q": "0,1", "r": "0,2"}}).json()
print("after move, working position:", r["working"].strip(),
      "| live verdict:", r["live"]["status"])

# Full asynchronous run with polling.
client.post(f"/problems/{pid}/run", json={"full_ladder": True})
while True:
    rep = client.get(f"/problems/{pid}/report").json()
    if rep["state"] == "done":
        break
    time.sleep(0.02)
report = engine.Report.from_json(rep["report"])
print("run finished:", report.status,
      "| certificates verify:", engine.verify_certificate(report))

# Reachability heat grid for the board.
grid = client.get(f"/boards/{pb['board_id']}/reach",
                  params={"mode": "height", "problem": pid}).json()
print("height grid:", grid["grid"])
