"""File formats: spaces, set expressions, and certificates.

Space files are JSON: `points` (labels), `atoms` (lists of point
indices or labels), and either an explicit `monoid` table with an
`action` map, or `generators` given as partial point maps that get
closed into an inverse monoid acting through a designated sink point.
Set expressions on the command line are comma-separated atom indices
or atom labels; the empty string is the empty set.

Certificate files mirror the symbolic backends: integer sets as
`{"mod": M, "residues": [...], "add": [...], "remove": [...]}` or
`{"halfline": n}`, word languages as regular expressions over
`a A b B` (with `%` for the empty word) or as `{"op": ..., "args":
[...]}` trees over them.
"""

import json
from dataclasses import asdict, is_dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from .certificates import Certificate, HalfLine
from .corpus import statspace_from_maps, statspace_from_partial_maps
from .errors import MalformedCertificateError, TypemonoidError
from .monoid import InverseMonoidTable
from .partial_bijection import PartialBijection
from .spaces import StatSpace, build_space
from .words import compile_word_regex, dfa_complement, dfa_difference, dfa_intersect, dfa_union
from .zsets import ep_set

__all__ = [
    "SpaceFormatError",
    "load_space",
    "space_from_dict",
    "parse_set_expr",
    "load_certificate",
    "certificate_from_dict",
    "fixture_space_dict",
    "report_to_json",
]


class SpaceFormatError(TypemonoidError):
    """Input file does not describe a space; the message locates the field."""


def _fail(where: str, why: str):
    raise SpaceFormatError(f"{where}: {why}")


def space_from_dict(doc: Dict) -> StatSpace:
    if not isinstance(doc, dict):
        _fail("document", "expected a JSON object")
    points = doc.get("points")
    if not isinstance(points, list) or not points:
        _fail("points", "expected a nonempty list of labels")
    points = [str(p) for p in points]
    index = {p: i for i, p in enumerate(points)}

    def point_ref(v, where):
        if isinstance(v, bool) or not isinstance(v, (int, str)):
            _fail(where, f"expected point index or label, got {v!r}")
        if isinstance(v, str):
            if v in index:  # labels win over numeric indices
                return index[v]
            try:
                v = int(v)
            except ValueError:
                _fail(where, f"unknown point label {v!r}")
        if not (0 <= v < len(points)):
            _fail(where, f"point index {v} out of range")
        return v

    atoms_doc = doc.get("atoms")
    if not isinstance(atoms_doc, list) or not atoms_doc:
        _fail("atoms", "expected a nonempty list of point lists")
    atoms = [
        [point_ref(p, f"atoms[{i}]") for p in block]
        for i, block in enumerate(atoms_doc)
    ]

    has_table = "monoid" in doc and "action" in doc
    has_generators = "generators" in doc
    if has_table == has_generators:
        _fail("monoid", "give either monoid+action or generators, not both")

    if has_generators:
        gens_doc = doc["generators"]
        if not isinstance(gens_doc, list) or not gens_doc:
            _fail("generators", "expected a nonempty list of point maps")
        maps = []
        for k, g in enumerate(gens_doc):
            if not isinstance(g, dict):
                _fail(f"generators[{k}]", "expected an object of point: point")
            maps.append(
                {
                    point_ref(a, f"generators[{k}]"): point_ref(
                        b, f"generators[{k}]"
                    )
                    for a, b in g.items()
                }
            )
        labels = doc.get("generator_labels", [])
        if "sink" not in doc:
            for k, m in enumerate(maps):
                if len(m) != len(points):
                    _fail(
                        f"generators[{k}]",
                        "map is partial; give a sink point or make it total",
                    )
            return statspace_from_maps(
                points,
                atoms,
                [tuple(m[i] for i in range(len(points))) for m in maps],
                gen_labels=[str(x) for x in labels],
            )
        sink = point_ref(doc["sink"], "sink")
        gens = [
            PartialBijection(len(points), tuple(sorted(m.items()))) for m in maps
        ]
        return statspace_from_partial_maps(
            points, atoms, gens, sink=sink, gen_labels=[str(x) for x in labels]
        )

    mon_doc = doc["monoid"]
    if not isinstance(mon_doc, dict):
        _fail("monoid", "expected an object")
    mul = mon_doc.get("table")
    if not isinstance(mul, list):
        _fail("monoid.table", "expected a multiplication table")
    order = len(mul)
    if any(not isinstance(row, list) or len(row) != order for row in mul):
        _fail("monoid.table", "table must be square")
    unit = mon_doc.get("unit", 0)
    labels = [str(x) for x in mon_doc.get("labels", [str(i) for i in range(order)])]
    if len(labels) != order:
        _fail("monoid.labels", "one label per element")
    table = InverseMonoidTable(
        order=order,
        unit=unit,
        mul=tuple(tuple(row) for row in mul),
        labels=tuple(labels),
    )
    action_doc = doc["action"]
    if not isinstance(action_doc, dict):
        _fail("action", "expected an object keyed by monoid element")
    elem_index = {lab: i for i, lab in enumerate(labels)}
    action: List[Tuple[int, ...]] = [None] * order
    for key, pm in action_doc.items():
        if key in elem_index:
            s = elem_index[key]
        else:
            try:
                s = int(key)
            except ValueError:
                _fail("action", f"unknown element {key!r}")
            if not (0 <= s < order):
                _fail("action", f"element index {s} out of range")
        if not isinstance(pm, dict) or len(pm) != len(points):
            _fail(f"action[{key}]", "expected a total point map")
        row = [None] * len(points)
        for a, b in pm.items():
            row[point_ref(a, f"action[{key}]")] = point_ref(b, f"action[{key}]")
        action[s] = tuple(row)
    missing = [labels[s] for s in range(order) if action[s] is None]
    if missing:
        _fail("action", f"missing point maps for {missing}")
    return StatSpace(
        space=build_space(points, atoms), monoid=table, action=tuple(action)
    )


def load_space(path: str) -> StatSpace:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SpaceFormatError(
                f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}"
            ) from exc
    return space_from_dict(doc)


def parse_set_expr(ss: StatSpace, expr: str):
    """Comma-separated atom indices or atom labels; '' is empty."""
    expr = expr.strip()
    if not expr:
        return frozenset()
    label_index = {lab: i for i, lab in enumerate(ss.space.atom_labels)}
    out = set()
    for token in expr.split(","):
        token = token.strip()
        if token in label_index:
            out.add(label_index[token])
            continue
        try:
            i = int(token)
        except ValueError:
            raise SpaceFormatError(f"set expression: unknown atom {token!r}")
        if not (0 <= i < ss.n_atoms):
            raise SpaceFormatError(f"set expression: atom index {i} out of range")
        out.add(i)
    return frozenset(out)


# ---------------------------------------------------------------------------
# Certificates


def _zset_from_doc(doc, where: str):
    if isinstance(doc, dict) and "halfline" in doc:
        return HalfLine(int(doc["halfline"]))
    if not isinstance(doc, dict) or "mod" not in doc:
        raise MalformedCertificateError(
            f"{where}: integer sets need mod/residues/add/remove or halfline"
        )
    return ep_set(
        int(doc["mod"]),
        [int(r) for r in doc.get("residues", [])],
        add=[int(x) for x in doc.get("add", [])],
        remove=[int(x) for x in doc.get("remove", [])],
    )


_F2_OPS = {
    "union": dfa_union,
    "inter": dfa_intersect,
    "diff": dfa_difference,
}


def _f2_from_doc(doc, where: str):
    if isinstance(doc, str):
        try:
            return compile_word_regex(doc)
        except ValueError as exc:
            raise MalformedCertificateError(f"{where}: {exc}") from exc
    if isinstance(doc, dict) and "op" in doc:
        op = doc["op"]
        args = [
            _f2_from_doc(a, f"{where}.args[{i}]")
            for i, a in enumerate(doc.get("args", []))
        ]
        if op == "complement":
            if len(args) != 1:
                raise MalformedCertificateError(f"{where}: complement takes one set")
            return dfa_complement(args[0])
        if op in _F2_OPS and len(args) >= 2:
            out = args[0]
            for a in args[1:]:
                out = _F2_OPS[op](out, a)
            return out
        raise MalformedCertificateError(f"{where}: bad op {op!r}")
    raise MalformedCertificateError(f"{where}: expected regex or op tree")


def certificate_from_dict(doc: Dict) -> Certificate:
    if not isinstance(doc, dict):
        raise MalformedCertificateError("certificate: expected a JSON object")
    backend = doc.get("backend")
    if backend not in ("zperiodic", "f2"):
        raise MalformedCertificateError(f"certificate: unknown backend {backend!r}")
    parse = _zset_from_doc if backend == "zperiodic" else _f2_from_doc
    left = tuple(
        parse(w, f"left[{i}]") for i, w in enumerate(doc.get("left", []))
    )
    right = tuple(
        parse(w, f"right[{i}]") for i, w in enumerate(doc.get("right", []))
    )
    if not left or not right:
        raise MalformedCertificateError("certificate: left and right required")
    pieces_doc = doc.get("pieces")
    if isinstance(pieces_doc, dict):
        return Certificate(backend, left, right, dict(pieces_doc), ())
    if not isinstance(pieces_doc, list):
        raise MalformedCertificateError("certificate: pieces must be list or schema")
    pieces = []
    for i, p in enumerate(pieces_doc):
        if not isinstance(p, dict):
            raise MalformedCertificateError(f"pieces[{i}]: expected an object")
        pieces.append(
            (int(p.get("copy", 0)), parse(p.get("set"), f"pieces[{i}].set"))
        )
    moves_doc = doc.get("moves", [])
    if not isinstance(moves_doc, list):
        raise MalformedCertificateError("certificate: moves must be a list")
    moves = []
    for i, m in enumerate(moves_doc):
        if not isinstance(m, dict):
            raise MalformedCertificateError(f"moves[{i}]: expected an object")
        mover = m.get("mover")
        if backend == "zperiodic":
            mover = int(mover)
        image = m.get("image")
        entry = (mover, int(m.get("to", 0)))
        if image is not None:
            entry = entry + (parse(image, f"moves[{i}].image"),)
        moves.append(entry)
    return Certificate(backend, left, right, tuple(pieces), tuple(moves))


def load_certificate(path: str) -> Certificate:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MalformedCertificateError(
                f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}"
            ) from exc
    return certificate_from_dict(doc)


# ---------------------------------------------------------------------------
# Reports and fixtures


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, frozenset):
        return sorted(value)
    if isinstance(value, (set, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, list):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if is_dataclass(value) and not isinstance(value, type):
        return _jsonable(asdict(value))
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return str(value)


def report_to_json(report: Dict) -> str:
    return json.dumps(_jsonable(report), indent=2, sort_keys=True)


def fixture_space_dict(ss: StatSpace) -> Dict:
    """Serialize a space to the explicit table format."""
    return {
        "points": list(ss.space.points),
        "atoms": [sorted(a) for a in ss.space.atoms],
        "monoid": {
            "table": [list(row) for row in ss.monoid.mul],
            "unit": ss.monoid.unit,
            "labels": list(ss.monoid.labels),
        },
        "action": {
            ss.monoid.labels[s]: {
                str(p): ss.action[s][p] for p in range(len(ss.space.points))
            }
            for s in range(ss.monoid.order)
        },
    }
