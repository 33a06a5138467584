"""JSON instance documents.

Documents use 1-based agent ids::

    {"schema_version": "1.0", "n": 2,
     "agents": [{"id": 1, "ranks": [1, 0, 2], "accept": [], "reject": [2]},
                {"id": 2, "ranks": [1, 2, 0], "accept": [], "reject": []}]}

A document with ``"slots": m`` is a multi-slot anonymous instance whose
rank lists have ``m*n + 1`` entries (outside option first, then slot by
slot, sizes 1..n within each slot).
"""

from __future__ import annotations

import json

import numpy as np

from .asip import MultiSlotInstance
from .core import GsipInstance, InstanceError

SCHEMA_VERSION = "1.0"


class DocumentError(InstanceError):
    """Malformed or invalid instance document."""


def _fail(agent_id, field, msg):
    where = f"agent {agent_id}: {field}: " if agent_id is not None else f"{field}: "
    raise DocumentError(where + msg)


def _int_list(value, agent_id, field):
    if not isinstance(value, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        _fail(agent_id, field, "expected a list of integers")
    return value


def parse_document(doc: dict) -> GsipInstance | MultiSlotInstance:
    if not isinstance(doc, dict):
        _fail(None, "document", "expected a JSON object")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        _fail(None, "schema_version", f"expected {SCHEMA_VERSION!r}, got {version!r}")
    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        _fail(None, "n", "expected a non-negative integer")
    m = doc.get("slots")
    if m is not None and (not isinstance(m, int) or isinstance(m, bool) or m < 1):
        _fail(None, "slots", "expected a positive integer")
    agents = doc.get("agents")
    if not isinstance(agents, list) or len(agents) != n:
        _fail(None, "agents", f"expected a list of {n} agent records")
    width = (m or 1) * n + 1
    rows: dict[int, list[int]] = {}
    accept: dict[int, frozenset] = {}
    reject: dict[int, frozenset] = {}
    for rec in agents:
        if not isinstance(rec, dict):
            _fail(None, "agents", "each agent must be an object")
        aid = rec.get("id")
        if not isinstance(aid, int) or isinstance(aid, bool) or not 1 <= aid <= n:
            _fail(aid, "id", f"expected an integer in 1..{n}")
        if aid in rows:
            _fail(aid, "id", "repeated agent id")
        ranks = _int_list(rec.get("ranks"), aid, "ranks")
        if len(ranks) != width:
            _fail(aid, "ranks", f"expected {width} entries, got {len(ranks)}")
        if any(r < 0 for r in ranks):
            _fail(aid, "ranks", "ranks must be non-negative")
        for x in range(1, width):
            if ranks[x] == ranks[0]:
                label = f"outcome {x}" if m is None else f"slot {(x - 1) // n + 1} size {(x - 1) % n + 1}"
                _fail(aid, "ranks", f"{label} ties outcome 0")
        rows[aid] = ranks
        for field, store in (("accept", accept), ("reject", reject)):
            ids = _int_list(rec.get(field, []), aid, field)
            if m is not None and ids:
                _fail(aid, field, "multi-slot documents cannot declare acceptance or rejection sets")
            for j in ids:
                if not 1 <= j <= n:
                    _fail(aid, field, f"unknown agent id {j}")
                if j == aid:
                    _fail(aid, field, "an agent cannot list itself")
            store[aid] = frozenset(j - 1 for j in ids)
    ranks = np.array([rows[i] for i in range(1, n + 1)], dtype=np.int64).reshape(n, width)
    if m is not None:
        return MultiSlotInstance(n, m, ranks)
    return GsipInstance(
        ranks,
        tuple(accept[i] for i in range(1, n + 1)),
        tuple(reject[i] for i in range(1, n + 1)),
    )


def parse_instance(text: str) -> GsipInstance | MultiSlotInstance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"syntax error: {exc}") from None
    return parse_document(doc)


def to_document(instance: GsipInstance | MultiSlotInstance) -> dict:
    doc: dict = {"schema_version": SCHEMA_VERSION, "n": instance.n}
    if isinstance(instance, MultiSlotInstance):
        doc["slots"] = instance.m
    agents = []
    for i in range(instance.n):
        rec = {"id": i + 1, "ranks": [int(r) for r in instance.ranks[i]]}
        if isinstance(instance, GsipInstance):
            rec["accept"] = sorted(j + 1 for j in instance.accept[i])
            rec["reject"] = sorted(j + 1 for j in instance.reject[i])
        agents.append(rec)
    doc["agents"] = agents
    return doc


def serialize_instance(instance: GsipInstance | MultiSlotInstance) -> str:
    # one agent per line keeps fixtures diffable
    doc = to_document(instance)
    head = {k: v for k, v in doc.items() if k != "agents"}
    lines = [json.dumps(a) for a in doc["agents"]]
    body = ",\n    ".join(lines)
    prefix = json.dumps(head)[:-1]
    return f'{prefix}, "agents": [\n    {body}\n]}}\n' if lines else json.dumps(doc) + "\n"


def load_instance(path) -> GsipInstance | MultiSlotInstance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())
