#!/usr/bin/env python3
"""Drive the robot the way the browser panel does: start the HTTP
service in-process and control it purely over JSON requests, including
a look at the busy rejection two simultaneous operators would see.

Run:  python demos/03_remote_control.py
"""

import json
import tempfile
import threading
import time
from pathlib import Path

import httpx

from cablebot.service import build_server

workdir = Path(tempfile.mkdtemp(prefix="cablebot-demo-"))
config_path = workdir / "cablebot.json"

# rate-limit the motors a little so the busy window is observable
server = build_server(config_path, port=0, rate=2000.0)
threading.Thread(target=server.serve_forever, daemon=True).start()
base = f"http://127.0.0.1:{server.port}"
client = httpx.Client(base_url=base, timeout=30.0)
print(f"service listening on {base} (config: {config_path})")

print("\n=== GET /api/status ===")
status = client.get("/api/status").json()
print(json.dumps(status, indent=2)[:400], "...")

print("\n=== Calibrate over HTTP: POST /api/coil/<id>/zero ===")
for coil in "ABCD":
    client.post(f"/api/coil/{coil}/zero")
print("all_zeroed:", client.get("/api/status").json()["all_zeroed"])

print("\n=== POST /api/move/goto ===")
response = client.post("/api/move/goto", json={"x": 80, "y": 45, "z": 60})
print("orders:", response.json()["orders"])
position = client.get("/api/status").json()["position"]
print(f"now at ({position['x']:.2f}, {position['y']:.2f}, {position['z']:.2f})")

print("\n=== Two operators at once: the loser gets 'busy' ===")
results = {}

def operator(name, target_x):
    response = client.post("/api/move/goto",
                           json={"x": target_x, "y": 45.0, "z": 60.0})
    results[name] = (response.status_code,
                     response.json().get("code", "ok"))

threads = [threading.Thread(target=operator, args=("alice", 30.0)),
           threading.Thread(target=operator, args=("bob", 100.0))]
for thread in threads:
    thread.start()
for thread in threads:
    thread.join()
for name, (code, detail) in sorted(results.items()):
    print(f"  {name}: HTTP {code} ({detail})")

print("\n=== Status polling keeps working while the robot moves ===")
mover = threading.Thread(
    target=client.post, args=("/api/move/goto",),
    kwargs={"json": {"x": 60.0, "y": 60.0, "z": 90.0}})
mover.start()
time.sleep(0.05)
for _ in range(3):
    poll = client.get("/api/status")
    print(f"  poll -> HTTP {poll.status_code}, "
          f"z = {poll.json()['position']['z']:.2f}")
    time.sleep(0.1)
mover.join()

print("\n=== Saved positions and the persisted config file ===")
client.post("/api/positions", json={"label": "front of the blackboard"})
print("positions:", client.get("/api/positions").json()["positions"])
print("config on disk keeps them:",
      json.loads(config_path.read_text())["saved_positions"])

server.shutdown()
server.server_close()
print("\ndone; the same API drives the browser panel in frontend/")
