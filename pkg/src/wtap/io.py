"""Instance parsing and serialization.

Two textual formats are accepted:

* JSON::

    {"n": 5, "root": 0, "edges": [[0,1],...], "links": [{"u":1,"v":2,"w":3},...]}

* line-oriented text::

    n root
    u v            # n-1 edge lines
    m
    u v w          # m link lines

Weights may be rational (decimals in JSON, ``p/q`` or decimals in text).
They are scaled by the least common multiple of their denominators so the
stored instance carries positive integer weights; the scale factor is
recorded on the instance and in the ``meta`` block of serialized output.
Serialization round-trips byte-exactly after that scaling.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import lcm
from pathlib import Path

from .model import Instance, Link


def _scale_weights(raw: list[Fraction]) -> tuple[list[int], int]:
    if not raw:
        return [], 1
    denom = lcm(*(w.denominator for w in raw))
    return [int(w * denom) for w in raw], denom


def _build(n: int, root: int, edges: list[tuple[int, int]],
           raw_links: list[tuple[int, int, Fraction]],
           prior_scale: int = 1) -> Instance:
    weights, scale = _scale_weights([w for _, _, w in raw_links])
    links = [Link(id=i, u=u, v=v, weight=weights[i])
             for i, (u, v, _) in enumerate(raw_links)]
    return Instance(n=n, root=root, edges=edges, links=links,
                    scale=scale * prior_scale)


def _parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "/" in text:
        p, q = text.split("/", 1)
        return Fraction(int(p), int(q))
    return Fraction(text)


def loads_json(text: str) -> Instance:
    data = json.loads(text, parse_float=Fraction, parse_int=int)
    edges = [(int(u), int(v)) for u, v in data.get("edges", [])]
    raw_links = []
    for item in data["links"]:
        w = item["w"]
        if isinstance(w, str):
            w = _parse_rational(w)
        raw_links.append((int(item["u"]), int(item["v"]), Fraction(w)))
    prior = int(data.get("meta", {}).get("scale", 1))
    return _build(int(data["n"]), int(data["root"]), edges, raw_links, prior)


def loads_text(text: str) -> Instance:
    lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    head = lines[0].split()
    n, root = int(head[0]), int(head[1])
    edges = []
    for ln in lines[1:n]:
        u, v = ln.split()[:2]
        edges.append((int(u), int(v)))
    m = int(lines[n].split()[0])
    raw_links = []
    for ln in lines[n + 1:n + 1 + m]:
        parts = ln.split()
        raw_links.append((int(parts[0]), int(parts[1]), _parse_rational(parts[2])))
    return _build(n, root, edges, raw_links)


def loads(text: str) -> Instance:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return loads_json(text)
    return loads_text(text)


def load(path: str | Path) -> Instance:
    return loads(Path(path).read_text())


def dumps(instance: Instance) -> str:
    """Canonical JSON with integer (scaled) weights; stable byte-for-byte."""
    doc = {
        "n": instance.n,
        "root": instance.root,
        "edges": [[u, v] for u, v in instance.edges],
        "links": [{"u": lk.u, "v": lk.v, "w": lk.weight} for lk in instance.links],
        "meta": {"scale": instance.scale},
    }
    return json.dumps(doc, separators=(",", ":"), sort_keys=True)


def dump(instance: Instance, path: str | Path) -> None:
    Path(path).write_text(dumps(instance) + "\n")
