"""HTTP service over stored sessions, with an optional live stream feed.

Read endpoints are side-effect free; live sessions are republished as an
immutable snapshot after every consumed frame (one sampling interval of
stream time), so counts only ever grow and clients can poll /version.
"""

from __future__ import annotations

import threading
import time
from pathlib import Path

from fastapi import FastAPI, HTTPException

from .config import ClassroomConfig, config_to_dict
from .model import SeatId, TRACKED_CATEGORIES
from .pipeline import StreamAnalyzer
from .session import ClassSession, flow, heatmap, load_session, sequence
from .stream import parse_stream


class SessionStore:
    """Directory of persisted session documents plus a live-snapshot registry."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self._cache: dict[str, tuple[float, ClassSession]] = {}
        self._live: dict[str, tuple[int, ClassSession]] = {}
        self._lock = threading.Lock()

    def list_ids(self) -> list[str]:
        ids = {p.stem for p in self.root.glob("*.json")}
        with self._lock:
            ids.update(self._live)
        return sorted(ids)

    def get(self, session_id: str) -> ClassSession:
        with self._lock:
            live = self._live.get(session_id)
        if live is not None:
            return live[1]
        path = self.root / f"{session_id}.json"
        if not path.is_file():
            raise KeyError(session_id)
        mtime = path.stat().st_mtime
        cached = self._cache.get(session_id)
        if cached is not None and cached[0] == mtime:
            return cached[1]
        session = load_session(path)
        self._cache[session_id] = (mtime, session)
        return session

    def publish(self, session_id: str, session: ClassSession) -> int:
        """Atomically swap in a new live snapshot; returns its version."""
        with self._lock:
            version = self._live.get(session_id, (0, None))[0] + 1
            self._live[session_id] = (version, session)
        return version

    def version(self, session_id: str) -> int:
        with self._lock:
            live = self._live.get(session_id)
        if live is not None:
            return live[0]
        if (self.root / f"{session_id}.json").is_file():
            return 1
        raise KeyError(session_id)


def create_app(store: SessionStore, ui_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="classtrack", docs_url=None, redoc_url=None)
    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

    def _session(session_id: str) -> ClassSession:
        try:
            return store.get(session_id)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id!r}")

    @app.get("/sessions")
    def sessions():
        return {"sessions": store.list_ids()}

    @app.get("/sessions/{session_id}/meta")
    def meta(session_id: str):
        s = _session(session_id)
        return {
            "id": session_id,
            "config": config_to_dict(s.config),
            "duration_s": s.meta.duration_s,
            "occupancy": sorted(str(seat) for seat, occ in s.occupancy.items() if occ),
            "version": store.version(session_id),
        }

    @app.get("/sessions/{session_id}/grid")
    def grid(session_id: str):
        s = _session(session_id)
        cells = []
        for r in range(1, s.config.rows + 1):
            for c in range(1, s.config.cols + 1):
                tracklet = s.tracklets[SeatId(r, c)]
                cells.append(
                    {
                        "seat": str(tracklet.seat),
                        "row": r,
                        "col": c,
                        "occupied": tracklet.occupied,
                        "counts": {cat.value: n for cat, n in tracklet.counts.items()},
                    }
                )
        return {"rows": s.config.rows, "cols": s.config.cols, "cells": cells}

    @app.get("/sessions/{session_id}/heatmap")
    def heatmap_endpoint(session_id: str, t: float):
        s = _session(session_id)
        try:
            scores = heatmap(s, t)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return {"t": t, "rows": s.config.rows, "cols": s.config.cols, "scores": scores}

    @app.get("/sessions/{session_id}/seats/{seat}/sequence")
    def seat_sequence(session_id: str, seat: str):
        s = _session(session_id)
        try:
            seat_id = SeatId.parse(seat)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        try:
            events = sequence(s, seat_id)
        except ValueError as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        return {
            "seat": seat,
            "events": [{"t": t, "category": cat.value} for t, cat in events],
        }

    @app.get("/sessions/{session_id}/flow")
    def flow_endpoint(session_id: str):
        s = _session(session_id)
        samples = [
            {
                "index": i,
                "t": i * s.config.sample_interval_s,
                "counts": {cat.value: counts[cat] for cat in TRACKED_CATEGORIES},
            }
            for i, counts in enumerate(flow(s))
        ]
        return {
            "interval_s": s.config.sample_interval_s,
            "categories": [cat.value for cat in TRACKED_CATEGORIES],
            "samples": samples,
        }

    @app.get("/sessions/{session_id}/version")
    def version(session_id: str):
        try:
            return {"id": session_id, "version": store.version(session_id)}
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id!r}")

    return app


class LiveFeed:
    """Tails a growing stream file and republishes a snapshot per frame."""

    def __init__(
        self,
        store: SessionStore,
        session_id: str,
        cfg: ClassroomConfig,
        path: str | Path,
        poll_s: float = 0.2,
    ):
        self.store = store
        self.session_id = session_id
        self.path = Path(path)
        self.poll_s = poll_s
        self.analyzer = StreamAnalyzer(cfg, course_id=session_id)
        self._stop = threading.Event()
        self._thread: threading.Thread | None = None
        self._buffer = ""
        self._offset = 0

    def start(self) -> None:
        self.store.publish(self.session_id, self.analyzer.snapshot())
        self._thread = threading.Thread(target=self._run, daemon=True)
        self._thread.start()

    def stop(self) -> None:
        self._stop.set()
        if self._thread is not None:
            self._thread.join(timeout=5.0)

    def drain(self) -> int:
        """Consume every complete line currently in the file; returns the
        number of frames fed."""
        if not self.path.exists():
            return 0
        with self.path.open("r", encoding="utf-8") as fh:
            fh.seek(self._offset)
            chunk = fh.read()
            self._offset = fh.tell()
        if not chunk:
            return 0
        self._buffer += chunk
        fed = 0
        while "\n" in self._buffer:
            line, self._buffer = self._buffer.split("\n", 1)
            if not line.strip():
                continue
            for rec in parse_stream([line]):
                self.analyzer.feed(rec)
                fed += 1
                self.store.publish(self.session_id, self.analyzer.snapshot())
        return fed

    def _run(self) -> None:
        while not self._stop.is_set():
            self.drain()
            time.sleep(self.poll_s)


def serve(
    store_dir: str | Path,
    port: int,
    live_input: str | Path | None = None,
    live_config: ClassroomConfig | None = None,
    live_id: str = "live",
    host: str = "127.0.0.1",
    ui_dir: str | Path | None = None,
) -> None:
    import uvicorn

    store = SessionStore(store_dir)
    feed = None
    if live_input is not None:
        if live_config is None:
            raise ValueError("live mode needs a classroom config")
        feed = LiveFeed(store, live_id, live_config, live_input)
        feed.start()
    app = create_app(store, ui_dir=ui_dir)
    try:
        uvicorn.run(app, host=host, port=port, log_level="warning")
    finally:
        if feed is not None:
            feed.stop()
