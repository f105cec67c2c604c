"""HTTP/JSON service exposing the engine over a store.

Responses are the same canonical documents the CLI prints; domain errors map
one-to-one onto HTTP statuses (404 not-found, 403 permission-denied, 409
conflict or invalid-state, 422 validation failure).
"""

from __future__ import annotations

import re
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from . import documents
from .changes import ChangeWorkflow
from .engine import filtering_info_artifact
from .errors import DomainError, InvalidInputError, NotFoundError
from .store import Store


def _get_model_current(store: Store, match, query, body):
    return 200, store.export_model()


def _post_model(store: Store, match, query, body):
    return 201, {"version": store.import_model(body)}


def _get_actor_viewpoints(store: Store, match, query, body):
    actor_id = match.group("actor_id")
    store.get_actor(actor_id)
    return 200, {"viewpoints": [documents.viewpoint_to_doc(vp) for vp in store.list_viewpoints(actor_id)]}


def _get_actor_annotations(store: Store, match, query, body):
    actor_id = match.group("actor_id")
    store.get_actor(actor_id)
    return 200, {"annotations": [documents.annotation_to_doc(a) for a in store.list_annotations(actor_id)]}


def _get_filter(store: Store, match, query, body):
    actors = query.get("actor", [])
    if len(actors) != 1:
        raise InvalidInputError("query parameter 'actor' is required exactly once")
    result = filtering_info_artifact(store.load_workspace(), match.group("artifact_id"), actors[0])
    return 200, documents.filter_result_to_doc(result, include_audit=True)


def _post_changes(store: Store, match, query, body):
    if not isinstance(body, dict):
        raise InvalidInputError("request body must be an object")
    required = {"author_actor_id", "artifact_id", "batch"}
    missing = required - set(body)
    if missing:
        raise InvalidInputError(f"request body missing keys {sorted(missing)}")
    unknown = set(body) - required - {"delta"}
    if unknown:
        raise InvalidInputError(f"request body has unknown keys {sorted(unknown)}")
    change = ChangeWorkflow(store).propose(
        body["author_actor_id"],
        body["artifact_id"],
        body["batch"],
        body.get("delta", {"description": ""}),
    )
    return 201, documents.change_to_doc(change)


def _post_decision(store: Store, match, query, body):
    if not isinstance(body, dict):
        raise InvalidInputError("request body must be an object")
    for key in ("actor_id", "decision"):
        if key not in body:
            raise InvalidInputError(f"request body missing key {key!r}")
    change = ChangeWorkflow(store).decide(match.group("change_id"), body["actor_id"], body["decision"])
    return 200, documents.change_to_doc(change)


def _post_withdraw(store: Store, match, query, body):
    if not isinstance(body, dict) or "actor_id" not in body:
        raise InvalidInputError("request body must be an object with key 'actor_id'")
    change = ChangeWorkflow(store).withdraw(match.group("change_id"), body["actor_id"])
    return 200, documents.change_to_doc(change)


def _get_change(store: Store, match, query, body):
    return 200, documents.change_to_doc(store.get_change(match.group("change_id")))


_ROUTES = [
    ("GET", re.compile(r"^/model/current$"), _get_model_current),
    ("POST", re.compile(r"^/model$"), _post_model),
    ("GET", re.compile(r"^/actors/(?P<actor_id>[^/]+)/viewpoints$"), _get_actor_viewpoints),
    ("GET", re.compile(r"^/actors/(?P<actor_id>[^/]+)/annotations$"), _get_actor_annotations),
    ("GET", re.compile(r"^/artifacts/(?P<artifact_id>[^/]+)/filter$"), _get_filter),
    ("POST", re.compile(r"^/changes$"), _post_changes),
    ("POST", re.compile(r"^/changes/(?P<change_id>[^/]+)/decisions$"), _post_decision),
    ("POST", re.compile(r"^/changes/(?P<change_id>[^/]+)/withdraw$"), _post_withdraw),
    ("GET", re.compile(r"^/changes/(?P<change_id>[^/]+)$"), _get_change),
]


def make_handler(store: Store):
    class Handler(BaseHTTPRequestHandler):
        server_version = "viewfilter"

        def log_message(self, format, *args):  # noqa: A002 - stdlib signature
            pass

        def _respond(self, status: int, doc) -> None:
            payload = documents.canonical_dumps(doc).encode("utf-8")
            self.send_response(status)
            self.send_header("Content-Type", "application/json; charset=utf-8")
            self.send_header("Content-Length", str(len(payload)))
            self.end_headers()
            self.wfile.write(payload)

        def _dispatch(self, method: str) -> None:
            parsed = urlparse(self.path)
            query = parse_qs(parsed.query)
            body = None
            try:
                if method == "POST":
                    length = int(self.headers.get("Content-Length", 0))
                    raw = self.rfile.read(length).decode("utf-8") if length else ""
                    body = documents.canonical_loads(raw) if raw else None
                for route_method, pattern, handler in _ROUTES:
                    if route_method != method:
                        continue
                    match = pattern.match(parsed.path)
                    if match:
                        status, doc = handler(store, match, query, body)
                        self._respond(status, doc)
                        return
                raise NotFoundError(f"no route for {method} {parsed.path}")
            except DomainError as exc:
                self._respond(exc.http_status, exc.to_doc())

        def do_GET(self):
            self._dispatch("GET")

        def do_POST(self):
            self._dispatch("POST")

    return Handler


def create_server(store: Store, host: str = "127.0.0.1", port: int = 0) -> ThreadingHTTPServer:
    """Bound, not-yet-serving HTTP server (port 0 picks a free port)."""
    return ThreadingHTTPServer((host, port), make_handler(store))


def serve(store_root: str | Path, host: str = "127.0.0.1", port: int = 8085) -> None:
    """Run the service until interrupted."""
    server = create_server(Store(store_root), host, port)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
