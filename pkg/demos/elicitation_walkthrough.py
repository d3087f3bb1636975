"""Walk the judgment elicitation HTTP API end to end.

Boots the service in-process on a local port, then plays one expert
session: answer pairs, hit an inconsistent state, get refused at
finalize, revise the offending judgments, and finalize successfully.
"""

import json
import tempfile
import threading
import time
import urllib.error
import urllib.request

import uvicorn

from riskmcdm import fixtures
from riskmcdm.service import create_app

HOST, PORT = "127.0.0.1", 8123
BASE = f"http://{HOST}:{PORT}"


def call(method: str, path: str, body=None):
    data = None if body is None else json.dumps(body).encode()
    req = urllib.request.Request(
        BASE + path, data=data, method=method,
        headers={"Content-Type": "application/json"})
    try:
        with urllib.request.urlopen(req) as resp:
            return resp.status, json.loads(resp.read())
    except urllib.error.HTTPError as err:
        return err.code, json.loads(err.read())


def wait_until_up(timeout=10.0):
    deadline = time.monotonic() + timeout
    while time.monotonic() < deadline:
        try:
            status, _ = call("GET", "/healthz")
            if status == 200:
                return
        except urllib.error.URLError:
            time.sleep(0.05)
    raise RuntimeError("service did not come up")


def main():
    with tempfile.TemporaryDirectory() as sessions_dir:
        app = create_app(fixtures.path("synthetic/hierarchy.json"),
                         sessions_dir=sessions_dir)
        server = uvicorn.Server(uvicorn.Config(
            app, host=HOST, port=PORT, log_level="error"))
        thread = threading.Thread(target=server.run, daemon=True)
        thread.start()
        wait_until_up()

        try:
            _, doc = call("GET", "/api/hierarchies")
            model = doc["hierarchies"][0]
            print(f"Hosted model: {model['goal']}")
            for node in model["nodes"]:
                print(f"  node {node['node_id']:<5} {node['total_pairs']} pair(s)")
            print()

            _, session = call("POST", "/api/sessions", {
                "expert": {"name": "Walkthrough", "experience_years": 8}})
            sid = session["id"]
            print(f"Session {sid} created, completion {session['completion']:.0%}")

            def put(node, i, j, value):
                status, resp = call("PUT", f"/api/sessions/{sid}/judgments",
                                    {"node_id": node, "i": i, "j": j, "value": value})
                assert status == 200, resp
                return resp

            # a wildly cyclic goal grid: A > B, B > C, yet C > A
            for i, j, value in [(0, 1, 9), (1, 2, 9), (0, 2, "1/9")]:
                put("goal", i, j, value)
            put("CSR", 0, 1, 3)
            resp = put("CFR", 0, 1, "1/2")
            print(f"All pairs answered, completion {resp['completion']:.0%}")

            _, report = call("GET", f"/api/sessions/{sid}/consistency")
            goal = next(n for n in report["nodes"] if n["node_id"] == "goal")
            print(f"Goal CR = {goal['consistency']['cr']:.4f} "
                  f"({goal['consistency']['verdict']})")
            print(f"Worst triad: {goal['worst_triad']['items']} "
                  f"discrepancy {goal['worst_triad']['discrepancy']:.3f}")

            status, refusal = call("POST", f"/api/sessions/{sid}/finalize")
            blocking = refusal["error"]["details"]["blocking"]
            print(f"Finalize -> HTTP {status}: {refusal['error']['message']}")
            print(f"  blocking: {[b['node_id'] for b in blocking]}")
            print()

            print("Revising the goal judgments to a consistent set...")
            for i, j, value in [(0, 1, 2), (0, 2, "1/2"), (1, 2, "1/4")]:
                put("goal", i, j, value)
            status, questionnaire = call("POST", f"/api/sessions/{sid}/finalize")
            print(f"Finalize -> HTTP {status}")
            print("Exported questionnaire document:")
            print(json.dumps(questionnaire, indent=2))
        finally:
            server.should_exit = True
            thread.join(timeout=5)


if __name__ == "__main__":
    main()
