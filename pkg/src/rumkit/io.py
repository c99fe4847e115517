"""JSON framework files, character strings, and CSV/JSON exporters.

File layout::

    {
      "group": {"free_rank": 1, "torsion": [2]},
      "space": {"dim_x": 2, "dim_y": 1},
      "representation": {"free": [{"matrix": [[1, 0], [0, 1]], "translation": [1, 0]}],
                         "torsion": [{"matrix": [[1, 0], [0, -1]], "translation": [0, 0]}]},
      "vertex_orbits": [{"id": "v", "placement": [0, -1]}],
      "edge_orbits": [{"id": "e1", "tail": "v", "head": "v",
                       "gain": {"free": [1], "torsion": [0]},
                       "constraint": {"type": "direction"}}]
    }

Constraint types are ``euclidean``, ``direction``, ``length``, ``l2q``
(needs ``q``) and ``explicit`` (needs ``A``, optionally ``B``; complex entries
may be written as ``[re, im]`` pairs).  Keys starting with ``_`` are ignored.
"""

from __future__ import annotations

import csv
import json
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

import numpy as np

from .coboundary import CoboundaryMatrix
from .framework import (
    BlockPair,
    FrameworkError,
    Representation,
    SymmetricFramework,
    build_direction_length,
    build_euclidean,
    build_explicit,
    build_l2q,
    validate_equivariance,
)
from .gain_graph import EdgeOrbit, GainGraph, ValidationError, Violation
from .groups import Character, GroupSpec
from .rum import FlexField, SpectrumSample

FIXTURES = ("cycle4", "doublehelix", "diamond", "boxkite")
CONSTRAINT_TYPES = ("euclidean", "direction", "length", "l2q", "explicit")


class FrameworkFileError(ValueError):
    """Aggregated problems found while reading a framework description."""

    def __init__(self, problems: list[tuple[str, str]]):
        self.problems = problems
        super().__init__("\n".join(f"{path}: {msg}" for path, msg in problems))


class FrameworkValidationError(FrameworkFileError):
    """The file is well-formed but describes an invalid symmetric framework."""


def _ints(value, path, problems, length=None):
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        problems.append((path, "expected a list of integers"))
        return None
    if length is not None and len(value) != length:
        problems.append((path, f"expected {length} entries, got {len(value)}"))
        return None
    return value


def _matrix(value, path, problems, shape=None, complex_ok=False):
    try:
        arr = np.asarray(value, dtype=float)
        if complex_ok and arr.ndim == 3 and arr.shape[-1] == 2:
            arr = arr[..., 0] + 1j * arr[..., 1]
    except (TypeError, ValueError):
        problems.append((path, "expected a numeric matrix"))
        return None
    if arr.ndim != 2:
        problems.append((path, f"expected a 2-d matrix, got {arr.ndim} dimensions"))
        return None
    if shape is not None and arr.shape != shape:
        problems.append((path, f"expected shape {shape}, got {arr.shape}"))
        return None
    return arr


def _vector(value, path, problems, size):
    try:
        arr = np.asarray(value, dtype=float)
    except (TypeError, ValueError):
        problems.append((path, "expected a numeric vector"))
        return None
    if arr.shape != (size,):
        problems.append((path, f"expected {size} entries, got shape {arr.shape}"))
        return None
    return arr


def parse_framework(data: Any, q: float | None = None) -> SymmetricFramework:
    """Build a validated framework from decoded JSON.

    ``q`` overrides the exponent of every ``l2q`` constraint.
    """
    problems: list[tuple[str, str]] = []
    if not isinstance(data, dict):
        raise FrameworkFileError([("$", "top level must be an object")])

    for key in ("group", "space", "representation", "vertex_orbits", "edge_orbits"):
        if key not in data:
            problems.append((key, "missing field"))
    if problems:
        raise FrameworkFileError(problems)

    grp = data["group"]
    try:
        spec = GroupSpec(int(grp.get("free_rank", 0)), tuple(grp.get("torsion", [])))
    except (TypeError, ValueError, AttributeError) as exc:
        raise FrameworkFileError([("group", str(exc))]) from None

    space = data["space"]
    dim_x, dim_y = space.get("dim_x"), space.get("dim_y")
    for name, val in (("dim_x", dim_x), ("dim_y", dim_y)):
        if not isinstance(val, int) or val < 1:
            problems.append((f"space.{name}", "expected a positive integer"))
    if problems:
        raise FrameworkFileError(problems)

    rep_data = data["representation"]
    gens = {}
    for kind, count in (("free", spec.free_rank), ("torsion", len(spec.torsion))):
        items = rep_data.get(kind, [])
        if len(items) != count:
            problems.append((f"representation.{kind}", f"expected {count} generators, got {len(items)}"))
            continue
        gens[kind] = []
        for k, gen in enumerate(items):
            path = f"representation.{kind}[{k}]"
            m = _matrix(gen.get("matrix"), f"{path}.matrix", problems, (dim_x, dim_x))
            t = _vector(gen.get("translation", [0.0] * dim_x), f"{path}.translation", problems, dim_x)
            gens[kind].append((m, t))
    if problems:
        raise FrameworkFileError(problems)
    rep = Representation(spec, gens["free"], gens["torsion"], dim=dim_x)

    vertex_ids, placements = [], {}
    for k, v in enumerate(data["vertex_orbits"]):
        path = f"vertex_orbits[{k}]"
        if not isinstance(v, dict) or not isinstance(v.get("id"), str):
            problems.append((f"{path}.id", "expected a string id"))
            continue
        vertex_ids.append(v["id"])
        if "placement" in v:
            p = _vector(v["placement"], f"{path}.placement", problems, dim_x)
            if p is not None:
                placements[v["id"]] = p

    edges, constraints = [], []
    for k, e in enumerate(data["edge_orbits"]):
        path = f"edge_orbits[{k}]"
        if not isinstance(e, dict):
            problems.append((path, "expected an object"))
            continue
        for key in ("id", "tail", "head"):
            if not isinstance(e.get(key), str):
                problems.append((f"{path}.{key}", "expected a string"))
        if "gain" not in e:
            problems.append((f"{path}.gain", "missing field"))
            continue
        gain = e["gain"]
        free = _ints(gain.get("free", []), f"{path}.gain.free", problems, spec.free_rank)
        tor = _ints(gain.get("torsion", []), f"{path}.gain.torsion", problems, len(spec.torsion))
        con = e.get("constraint")
        if not isinstance(con, dict) or con.get("type") not in CONSTRAINT_TYPES:
            problems.append((f"{path}.constraint.type", f"expected one of {', '.join(CONSTRAINT_TYPES)}"))
            con = None
        if free is None or tor is None or con is None or not all(isinstance(e.get(x), str) for x in ("id", "tail", "head")):
            continue
        edges.append(EdgeOrbit(e["id"], e["tail"], e["head"], spec.element(free, tor)))
        constraints.append((path, con))
    if problems:
        raise FrameworkFileError(problems)

    graph = GainGraph(spec, tuple(vertex_ids), tuple(edges))
    violations = graph.validate()
    if violations:
        raise FrameworkValidationError([(v.path or "gain graph", f"{v.code}: {v.message}") for v in violations])

    kinds = {c["type"] for _, c in constraints}
    if len(kinds) > 1 and not kinds <= {"direction", "length"}:
        raise FrameworkFileError([("edge_orbits", f"constraint types {sorted(kinds)} cannot be mixed")])
    kind = kinds.pop() if len(kinds) == 1 else ("direction" if kinds else "explicit")
    if not constraints:
        kind = "explicit"

    if kind != "explicit":
        missing = [v for v in vertex_ids if v not in placements]
        if missing:
            raise FrameworkFileError([("vertex_orbits", f"placements required for {kind} constraints; missing {missing}")])

    try:
        if kind == "explicit":
            blocks = {}
            for (path, con), e in zip(constraints, edges):
                a = _matrix(con.get("A"), f"{path}.constraint.A", problems, complex_ok=True)
                if a is None:
                    continue
                if "B" in con:
                    b = _matrix(con["B"], f"{path}.constraint.B", problems, complex_ok=True)
                    if b is not None:
                        blocks[e.id] = BlockPair(a, b)
                else:
                    blocks[e.id] = a
            if problems:
                raise FrameworkFileError(problems)
            fw = build_explicit(graph, rep, blocks, dim_y=dim_y, placements=placements or None)
        elif kind == "euclidean":
            fw = build_euclidean(graph, placements, rep)
        elif kind == "l2q":
            qs = set()
            for path, con in constraints:
                value = q if q is not None else con.get("q")
                if not isinstance(value, (int, float)) or isinstance(value, bool) or value <= 1:
                    problems.append((f"{path}.constraint.q", "expected a number > 1"))
                qs.add(value)
            if len(qs) > 1:
                problems.append(("edge_orbits", "all l2q constraints must share one q"))
            if problems:
                raise FrameworkFileError(problems)
            fw = build_l2q(graph, placements, rep, float(qs.pop()))
        else:
            edge_kinds = {e.id: con["type"] for (_, con), e in zip(constraints, edges)}
            fw = build_direction_length(graph, placements, rep, edge_kinds)
    except FrameworkFileError:
        raise
    except FrameworkError as exc:
        idx = next((k for k, e in enumerate(edges) if e.id == exc.orbit), None)
        raise FrameworkValidationError([(f"edge_orbits[{idx}]" if idx is not None else "edge_orbits", str(exc))]) from None
    except ValidationError as exc:
        raise FrameworkValidationError([(v.path, f"{v.code}: {v.message}") for v in exc.violations]) from None
    except ValueError as exc:
        raise FrameworkFileError([("$", str(exc))]) from None

    if fw.dim_y != dim_y:
        raise FrameworkFileError([("space.dim_y", f"constraints produce dim_y = {fw.dim_y}, file says {dim_y}")])
    report = validate_equivariance(fw)
    if not report.ok:
        raise FrameworkValidationError([(v.path or "framework", f"{v.code}: {v.message}") for v in report.violations])
    return fw


def parse_framework_file(path: str | Path, q: float | None = None) -> SymmetricFramework:
    """Read a framework file; a bare fixture name such as ``diamond`` also works."""
    path = resolve_path(path)
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FrameworkFileError([(f"line {exc.lineno}", f"invalid JSON: {exc.msg}")]) from None
    return parse_framework(data, q=q)


def resolve_path(path: str | Path) -> Path:
    p = Path(path)
    if p.exists():
        return p
    name = p.name[:-5] if p.name.endswith(".json") else p.name
    if name in FIXTURES and p.parent == Path("."):
        return fixture_path(name)
    return p


def fixture_path(name: str) -> Path:
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; choose from {FIXTURES}")
    return Path(str(resources.files("rumkit") / "data" / f"{name}.json"))


def load_fixture(name: str, q: float | None = None) -> SymmetricFramework:
    return parse_framework_file(fixture_path(name), q=q)


def _num(x: complex):
    x = complex(x)
    if x.imag == 0:
        return x.real
    return [x.real, x.imag]


def _matrix_json(m: np.ndarray):
    return [[_num(x) for x in row] for row in np.asarray(m)]


def serialize_framework(fw: SymmetricFramework) -> dict:
    """The file representation of ``fw``; parsing it rebuilds an identical framework."""
    spec = fw.group
    rep = fw.representation

    def gen(q, t):
        return {"matrix": q.tolist(), "translation": t.tolist()}

    vertices = []
    for v in fw.gain_graph.vertex_orbits:
        item = {"id": v}
        if fw.placements is not None and v in fw.placements:
            item["placement"] = np.asarray(fw.placements[v]).tolist()
        vertices.append(item)
    edges = []
    for e in fw.gain_graph.edge_orbits:
        recipe = dict(fw.recipes.get(e.id, {"type": "explicit"}))
        if recipe["type"] == "explicit":
            pair = fw.blocks[e.id]
            recipe["A"] = _matrix_json(pair.A)
            recipe["B"] = _matrix_json(pair.B)
        edges.append({
            "id": e.id,
            "tail": e.tail,
            "head": e.head,
            "gain": {"free": list(e.gain.free), "torsion": list(e.gain.torsion)},
            "constraint": recipe,
        })
    return {
        "group": {"free_rank": spec.free_rank, "torsion": list(spec.torsion)},
        "space": {"dim_x": fw.dim_x, "dim_y": fw.dim_y},
        "representation": {
            "free": [gen(q, t) for q, t in rep.free_generators],
            "torsion": [gen(q, t) for q, t in rep.torsion_generators],
        },
        "vertex_orbits": vertices,
        "edge_orbits": edges,
    }


def write_framework(fw: SymmetricFramework, path: str | Path):
    Path(path).write_text(json.dumps(serialize_framework(fw), indent=2) + "\n", encoding="utf-8")


def _parse_turn(s: str):
    s = s.strip()
    try:
        return Fraction(s)
    except ValueError:
        return float(s)


def parse_character(spec: GroupSpec, text: str) -> Character:
    """Parse ``"t1,t2,...;k1,k2,..."``: free turns (decimals or ``p/q``) then torsion indices."""
    free_part, _, tor_part = text.partition(";")
    turns = [_parse_turn(x) for x in free_part.split(",") if x.strip()]
    indices = [int(x) for x in tor_part.split(",") if x.strip()]
    if len(turns) != spec.free_rank or len(indices) != len(spec.torsion):
        raise ValueError(
            f"character {text!r} needs {spec.free_rank} turns and {len(spec.torsion)} torsion indices for {spec}"
        )
    return spec.character(turns, indices)


def format_turn(t) -> str:
    if isinstance(t, Fraction):
        return str(t)
    return repr(float(t))


def write_spectrum_csv(samples: list[SpectrumSample], out):
    """One row per sample: turn_i, torsion_j, sigma_min, kernel_dim, in_spectrum."""
    if not samples:
        return
    spec = samples[0].character.spec
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(
        [f"turn_{i}" for i in range(spec.free_rank)]
        + [f"torsion_{j}" for j in range(len(spec.torsion))]
        + ["sigma_min", "kernel_dim", "in_spectrum"]
    )
    for s in samples:
        chi = s.character
        writer.writerow(
            [format_turn(t) for t in chi.turns]
            + list(chi.indices)
            + [f"{s.sigma_min:.17g}", s.kernel_dim, int(s.in_spectrum)]
        )


def read_spectrum_csv(inp) -> list[dict]:
    return list(csv.DictReader(inp))


def flex_to_json(flex: FlexField) -> list[dict]:
    out = []
    for i, gamma in enumerate(flex.window):
        for k, vid in enumerate(flex.vertex_orbits):
            val = flex.values[i, k]
            out.append({
                "gamma": {"free": list(gamma.free), "torsion": list(gamma.torsion)},
                "orbit": vid,
                "value_re": val.real.tolist(),
                "value_im": val.imag.tolist(),
            })
    return out


def write_coboundary_csv(c: CoboundaryMatrix, out):
    """Nonzero entries as ``row, col, real, imag``."""
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["row", "col", "real", "imag"])
    m = c.dense()
    for r, col in zip(*np.nonzero(m)):
        writer.writerow([int(r), int(col), f"{m[r, col].real:.17g}", f"{m[r, col].imag:.17g}"])


__all__ = [
    "FIXTURES",
    "FrameworkFileError",
    "FrameworkValidationError",
    "Violation",
    "fixture_path",
    "flex_to_json",
    "load_fixture",
    "parse_character",
    "parse_framework",
    "parse_framework_file",
    "serialize_framework",
    "write_coboundary_csv",
    "write_framework",
    "write_spectrum_csv",
]
