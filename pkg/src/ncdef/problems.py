"""Problem-file parsing: self-describing JSON in, validated objects out.

Matrices travel as arrays of arrays of exact-scalar strings so nothing
ever passes through a float.  The canonical echo emitted in reports
re-parses to an equivalent problem.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Dict, List

from .errors import ProblemFormatError, ValidationError
from .linalg import Matrix, PrimeField, QQ, Rationals
from .quiver import Arrow, Presentation, Quiver, Relation, Representation, validate
from .tower import Collection

FIXTURE_NAMES = ("fx_a2", "fx_loop2", "fx_cyc2", "fx_aba", "fx_st",
                 "fx_fat3", "fx_2loop0")


@dataclass
class ProblemFile:
    field: object
    pres: Presentation
    modules: Dict[str, Representation]
    collections: Dict[str, List[str]]
    options: dict

    def collection(self, name=None) -> Collection:
        if name is None:
            if len(self.collections) == 1:
                name = next(iter(self.collections))
            elif "simples" in self.collections:
                name = "simples"
            else:
                raise ProblemFormatError(
                    "multiple collections; pass --collection", "collections")
        if name not in self.collections:
            raise ProblemFormatError(f"unknown collection {name!r}", "collections")
        return Collection([self.modules[m] for m in self.collections[name]])

    def module(self, name: str) -> Representation:
        if name not in self.modules:
            raise ProblemFormatError(f"unknown module {name!r}", "modules")
        return self.modules[name]


def _expect(cond, message, location):
    if not cond:
        raise ProblemFormatError(message, location)


def _parse_field(spec):
    if spec is None or spec == "Q":
        return QQ
    if isinstance(spec, dict) and set(spec) == {"Fp"}:
        p = spec["Fp"]
        _expect(isinstance(p, int), "Fp modulus must be an integer", "field")
        return PrimeField(p)
    raise ProblemFormatError('field must be "Q" or {"Fp": p}', "field")


def _parse_scalar(field, s, location):
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise ProblemFormatError(f"scalar {s!r} must be a string or int", location)
    try:
        return field.parse(str(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ProblemFormatError(f"bad scalar {s!r}: {exc}", location)


def _parse_matrix(field, data, rows, cols, location) -> Matrix:
    _expect(isinstance(data, list), "matrix must be a list of rows", location)
    if rows > 0:
        _expect(len(data) == rows, f"expected {rows} rows, got {len(data)}", location)
    entries = []
    for i, row in enumerate(data):
        _expect(isinstance(row, list) and len(row) == cols,
                f"row {i} must have {cols} entries", location)
        entries.append([_parse_scalar(field, x, f"{location}[{i}][{j}]")
                        for j, x in enumerate(row)])
    return Matrix(field, rows, cols, entries)


def parse_problem(data: dict) -> ProblemFile:
    _expect(isinstance(data, dict), "top level must be an object", "$")
    unknown = set(data) - {"field", "quiver", "relations", "modules",
                           "collections", "options"}
    _expect(not unknown, f"unknown top-level keys {sorted(unknown)}", "$")
    field = _parse_field(data.get("field"))

    qspec = data.get("quiver")
    _expect(isinstance(qspec, dict), "missing quiver object", "quiver")
    verts = qspec.get("vertices")
    _expect(isinstance(verts, list) and verts and all(isinstance(v, str) for v in verts),
            "quiver.vertices must be a non-empty list of strings", "quiver.vertices")
    arrows = []
    for k, a in enumerate(qspec.get("arrows", [])):
        loc = f"quiver.arrows[{k}]"
        _expect(isinstance(a, dict) and {"name", "from", "to"} <= set(a),
                "arrow needs name/from/to", loc)
        _expect(a["from"] in verts, f"unknown vertex {a['from']!r}", loc)
        _expect(a["to"] in verts, f"unknown vertex {a['to']!r}", loc)
        arrows.append(Arrow(a["name"], a["from"], a["to"]))
    try:
        quiver = Quiver(verts, arrows)
    except Exception as exc:
        raise ProblemFormatError(str(exc), "quiver")

    relations = []
    for k, rspec in enumerate(data.get("relations", [])):
        loc = f"relations[{k}]"
        _expect(isinstance(rspec, list) and rspec, "relation must be a non-empty list", loc)
        terms = []
        for t, term in enumerate(rspec):
            _expect(isinstance(term, dict) and "path" in term,
                    "relation term needs a path", f"{loc}[{t}]")
            coeff = _parse_scalar(field, term.get("coeff", "1"), f"{loc}[{t}].coeff")
            path = term["path"]
            _expect(isinstance(path, list) and all(isinstance(x, str) for x in path),
                    "path must be a list of arrow names", f"{loc}[{t}].path")
            terms.append((coeff, path))
        try:
            relations.append(Relation(quiver, terms))
        except Exception as exc:
            raise ProblemFormatError(str(exc), loc)

    pres = Presentation(field, quiver, relations)

    modules = {}
    mspec = data.get("modules", {})
    _expect(isinstance(mspec, dict), "modules must be an object", "modules")
    for name, spec in mspec.items():
        loc = f"modules.{name}"
        _expect(isinstance(spec, dict) and "dims" in spec, "module needs dims", loc)
        dims = {}
        for v, n in spec["dims"].items():
            _expect(v in quiver.vertex_index, f"unknown vertex {v!r}", f"{loc}.dims")
            _expect(isinstance(n, int) and n >= 0, "dims must be counts", f"{loc}.dims")
            dims[v] = n
        maps = {}
        for aname, mat in spec.get("arrows", {}).items():
            _expect(aname in quiver.arrow_by_name, f"unknown arrow {aname!r}",
                    f"{loc}.arrows")
            arr = quiver.arrow_by_name[aname]
            maps[aname] = _parse_matrix(field, mat,
                                        dims.get(arr.target, 0), dims.get(arr.source, 0),
                                        f"{loc}.arrows.{aname}")
        try:
            rep = Representation(pres, dims, maps)
        except Exception as exc:
            raise ProblemFormatError(str(exc), loc)
        report = validate(rep)
        if not report.ok:
            v = report.violations[0]
            raise ValidationError(
                f"module {name!r} violates relation {v['relation']} "
                f"(first nonzero entry {v['nonzero_entry']})")
        modules[name] = rep

    collections = {}
    cspec = data.get("collections", {})
    _expect(isinstance(cspec, dict), "collections must be an object", "collections")
    for cname, names in cspec.items():
        loc = f"collections.{cname}"
        _expect(isinstance(names, list) and names, "collection must be non-empty", loc)
        for m in names:
            _expect(m in modules, f"unknown module {m!r}", loc)
        collections[cname] = list(names)

    options = data.get("options", {})
    _expect(isinstance(options, dict), "options must be an object", "options")
    return ProblemFile(field, pres, modules, collections, options)


def load_problem(path_or_fixture: str) -> ProblemFile:
    """Load from a file path, or from the shipped fixtures by bare name."""
    text = None
    if path_or_fixture in FIXTURE_NAMES:
        text = resources.files("ncdef.fixtures").joinpath(
            path_or_fixture + ".json").read_text()
    else:
        try:
            with open(path_or_fixture) as fh:
                text = fh.read()
        except OSError as exc:
            raise ProblemFormatError(f"cannot read input: {exc}", path_or_fixture)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFormatError(f"invalid JSON: {exc}", path_or_fixture)
    return parse_problem(data)


def scalar_str(field, a) -> str:
    """Round-trippable exact-scalar string (field.parse inverse)."""
    if isinstance(field, Rationals):
        return str(a)
    return str(a % field.p)


def matrix_json(m: Matrix):
    return [[scalar_str(m.field, x) for x in row] for row in m.entries]


def problem_json(p: ProblemFile) -> dict:
    """Canonical echo of a parsed problem; re-parses to an equivalent one."""
    field = p.field
    fspec = "Q" if isinstance(field, Rationals) else {"Fp": field.p}
    q = p.pres.quiver
    rels = []
    for rel in p.pres.relations:
        rels.append([{"coeff": scalar_str(field, c), "path": list(path)}
                     for c, path in rel.terms])
    mods = {}
    for name, rep in p.modules.items():
        mods[name] = {
            "dims": {v: rep.dims[v] for v in q.vertices},
            "arrows": {a.name: matrix_json(rep.arrow_maps[a.name])
                       for a in q.arrows
                       if not rep.arrow_maps[a.name].is_zero()},
        }
    return {
        "field": fspec,
        "quiver": {
            "vertices": list(q.vertices),
            "arrows": [{"name": a.name, "from": a.source, "to": a.target}
                       for a in q.arrows],
        },
        "relations": rels,
        "modules": mods,
        "collections": {k: list(v) for k, v in p.collections.items()},
        "options": dict(p.options),
    }
