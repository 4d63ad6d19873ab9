#!/usr/bin/env python3
"""Regenerate frontend/tests/fixtures/ from the live API over the demo
scenario.  Run from the repository root after any wire-format change."""

import json
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from classtrack.pipeline import analyze
from classtrack.server import SessionStore, create_app
from classtrack.session import save_session
from classtrack.simulate import generate, make_demo_spec, scenario_config

ENDPOINTS = [
    ("sessions", "/sessions"),
    ("meta", "/sessions/demo/meta"),
    ("grid", "/sessions/demo/grid"),
    ("heatmap", "/sessions/demo/heatmap?t=120"),
    ("sequence_R2C7", "/sessions/demo/seats/R2C7/sequence"),
    ("sequence_R4C9", "/sessions/demo/seats/R4C9/sequence"),
    ("flow", "/sessions/demo/flow"),
    ("version", "/sessions/demo/version"),
]


def main() -> None:
    out = Path(__file__).resolve().parent.parent / "frontend" / "tests" / "fixtures"
    out.mkdir(parents=True, exist_ok=True)
    spec = make_demo_spec()
    records, _ = generate(spec)
    session = analyze(records, scenario_config(spec), "demo")
    with tempfile.TemporaryDirectory() as td:
        save_session(session, Path(td) / "demo.json")
        client = TestClient(create_app(SessionStore(td)))
        for name, path in ENDPOINTS:
            body = client.get(path).json()
            target = out / f"{name}.json"
            target.write_text(json.dumps(body, indent=2, sort_keys=True) + "\n")
            print(f"wrote {target}")


if __name__ == "__main__":
    main()
