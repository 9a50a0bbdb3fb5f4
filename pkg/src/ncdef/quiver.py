"""Quivers with relations and their finite-dimensional representations.

A path (a_1, ..., a_k) acts by applying a_1 first, so a representation
is a left module over the path algebra and all Ext conventions downstream
are fixed by this choice.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import ConfigurationError, UsageError
from .linalg import Matrix


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


class Quiver:
    def __init__(self, vertices: Sequence[str], arrows: Sequence[Arrow]):
        if len(set(vertices)) != len(vertices):
            raise UsageError("duplicate vertex names")
        if len({a.name for a in arrows}) != len(arrows):
            raise UsageError("duplicate arrow names")
        vset = set(vertices)
        for a in arrows:
            if a.source not in vset or a.target not in vset:
                raise UsageError(f"arrow {a.name} references unknown vertex")
        self.vertices = tuple(vertices)
        self.arrows = tuple(arrows)
        self.arrow_by_name = {a.name: a for a in arrows}
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}

    def arrow(self, name: str) -> Arrow:
        if name not in self.arrow_by_name:
            raise UsageError(f"unknown arrow {name!r}")
        return self.arrow_by_name[name]


class Relation:
    """A uniform k-linear combination of composable paths of length >= 2."""

    def __init__(self, quiver: Quiver, terms: Sequence[Tuple[object, Sequence[str]]]):
        if not terms:
            raise UsageError("empty relation")
        self.terms: List[Tuple[object, Tuple[str, ...]]] = []
        src = tgt = None
        for coeff, path in terms:
            path = tuple(path)
            if len(path) < 2:
                raise UsageError("relation paths must have length >= 2")
            for m in range(len(path) - 1):
                if quiver.arrow(path[m]).target != quiver.arrow(path[m + 1]).source:
                    raise UsageError(f"path {path} is not composable")
            psrc = quiver.arrow(path[0]).source
            ptgt = quiver.arrow(path[-1]).target
            if src is None:
                src, tgt = psrc, ptgt
            elif (psrc, ptgt) != (src, tgt):
                raise UsageError("relation terms do not share source/target")
            self.terms.append((coeff, path))
        self.source = src
        self.target = tgt


class Presentation:
    """A quiver with relations over a fixed field: the ambient category."""

    def __init__(self, field, quiver: Quiver, relations: Sequence[Relation]):
        self.field = field
        self.quiver = quiver
        self.relations = tuple(relations)

    def __eq__(self, other):
        return self is other


class Representation:
    """One vector space per vertex, one exact matrix per arrow."""

    def __init__(self, pres: Presentation, dims: Dict[str, int], arrow_maps: Dict[str, Matrix]):
        self.pres = pres
        q = pres.quiver
        self.dims = {v: int(dims.get(v, 0)) for v in q.vertices}
        self.arrow_maps = {}
        for a in q.arrows:
            m = arrow_maps.get(a.name)
            if m is None:
                m = Matrix.zeros(pres.field, self.dims[a.target], self.dims[a.source])
            if m.field != pres.field:
                raise ConfigurationError("arrow map field differs from the presentation field")
            if (m.rows, m.cols) != (self.dims[a.target], self.dims[a.source]):
                raise UsageError(f"arrow map {a.name} has shape {m.rows}x{m.cols}, "
                                 f"expected {self.dims[a.target]}x{self.dims[a.source]}")
            self.arrow_maps[a.name] = m

    @property
    def field(self):
        return self.pres.field

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def dim_vector(self) -> Tuple[int, ...]:
        return tuple(self.dims[v] for v in self.pres.quiver.vertices)

    def path_map(self, path: Sequence[str]) -> Matrix:
        """Matrix of a path acting on this representation (first arrow first)."""
        q = self.pres.quiver
        if not path:
            raise UsageError("empty path has no single source vertex")
        m = self.arrow_maps[path[0]]
        for name in path[1:]:
            m = self.arrow_maps[name] @ m
        return m

    def relation_defect(self, rel: Relation) -> Matrix:
        f = self.pres.field
        out = Matrix.zeros(f, self.dims[rel.target], self.dims[rel.source])
        for coeff, path in rel.terms:
            out = out + self.path_map(path).scale(coeff)
        return out

    def equal_to(self, other: "Representation") -> bool:
        return (
            self.pres is other.pres
            and self.dims == other.dims
            and all(self.arrow_maps[a] == other.arrow_maps[a] for a in self.arrow_maps)
        )


@dataclass
class ValidationReport:
    ok: bool
    violations: List[dict] = dc_field(default_factory=list)


def validate(rep: Representation) -> ValidationReport:
    """Check relation annihilation; structured report, never raises."""
    violations = []
    f = rep.pres.field
    for idx, rel in enumerate(rep.pres.relations):
        defect = rep.relation_defect(rel)
        if not defect.is_zero():
            entry = None
            for i in range(defect.rows):
                for j in range(defect.cols):
                    if not f.is_zero(defect.entries[i][j]):
                        entry = (i, j, f.fmt(defect.entries[i][j]))
                        break
                if entry:
                    break
            violations.append({"relation": idx, "nonzero_entry": entry})
    return ValidationReport(ok=not violations, violations=violations)


class Morphism:
    """Per-vertex matrices commuting with the arrow maps."""

    def __init__(self, source: Representation, target: Representation,
                 components: Dict[str, Matrix]):
        self.source = source
        self.target = target
        self.components = {}
        for v in source.pres.quiver.vertices:
            m = components.get(v)
            if m is None:
                m = Matrix.zeros(source.field, target.dims[v], source.dims[v])
            if (m.rows, m.cols) != (target.dims[v], source.dims[v]):
                raise UsageError(f"component at {v} has wrong shape")
            self.components[v] = m

    def is_valid(self) -> bool:
        for a in self.source.pres.quiver.arrows:
            lhs = self.target.arrow_maps[a.name] @ self.components[a.source]
            rhs = self.components[a.target] @ self.source.arrow_maps[a.name]
            if lhs != rhs:
                return False
        return True

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.components.values())

    def compose(self, first: "Morphism") -> "Morphism":
        """self after first."""
        if first.target is not self.source and not first.target.equal_to(self.source):
            raise UsageError("morphisms not composable")
        return Morphism(first.source, self.target,
                        {v: self.components[v] @ first.components[v]
                         for v in self.components})

    def __add__(self, other: "Morphism") -> "Morphism":
        return Morphism(self.source, self.target,
                        {v: self.components[v] + other.components[v]
                         for v in self.components})

    def __sub__(self, other: "Morphism") -> "Morphism":
        return Morphism(self.source, self.target,
                        {v: self.components[v] - other.components[v]
                         for v in self.components})

    def scale(self, c) -> "Morphism":
        return Morphism(self.source, self.target,
                        {v: self.components[v].scale(c) for v in self.components})

    @classmethod
    def identity(cls, rep: Representation) -> "Morphism":
        return cls(rep, rep, {v: Matrix.identity(rep.field, rep.dims[v])
                              for v in rep.pres.quiver.vertices})

    @classmethod
    def zero(cls, source: Representation, target: Representation) -> "Morphism":
        return cls(source, target, {})

    def flatten(self):
        """Vertex-ordered, row-major vectorization of all components."""
        out = []
        for v in self.source.pres.quiver.vertices:
            out.extend(self.components[v].flatten())
        return out


def morphism_from_flat(source: Representation, target: Representation, flat) -> Morphism:
    comps = {}
    pos = 0
    for v in source.pres.quiver.vertices:
        r, c = target.dims[v], source.dims[v]
        comps[v] = Matrix.from_flat(source.field, r, c, flat[pos:pos + r * c])
        pos += r * c
    return Morphism(source, target, comps)


def direct_sum(parts: Sequence[Representation], pres: Optional[Presentation] = None):
    """Block-diagonal sum with canonical injections and projections."""
    if not parts:
        if pres is None:
            raise UsageError("empty direct sum needs an explicit presentation")
        zero = Representation(pres, {}, {})
        return zero, [], []
    pres = parts[0].pres
    for p in parts[1:]:
        if p.pres is not pres:
            raise ConfigurationError("direct sum parts live over different presentations")
    q = pres.quiver
    dims = {v: sum(p.dims[v] for p in parts) for v in q.vertices}
    offsets = {v: [] for v in q.vertices}
    for v in q.vertices:
        pos = 0
        for p in parts:
            offsets[v].append(pos)
            pos += p.dims[v]
    maps = {}
    for a in q.arrows:
        m = Matrix.zeros(pres.field, dims[a.target], dims[a.source])
        for k, p in enumerate(parts):
            block = p.arrow_maps[a.name]
            ro, co = offsets[a.target][k], offsets[a.source][k]
            for i in range(block.rows):
                for j in range(block.cols):
                    m.entries[ro + i][co + j] = block.entries[i][j]
        maps[a.name] = m
    total = Representation(pres, dims, maps)
    injections, projections = [], []
    for k, p in enumerate(parts):
        inj, proj = {}, {}
        for v in q.vertices:
            im = Matrix.zeros(pres.field, dims[v], p.dims[v])
            pm = Matrix.zeros(pres.field, p.dims[v], dims[v])
            o = offsets[v][k]
            for i in range(p.dims[v]):
                im.entries[o + i][i] = pres.field.one
                pm.entries[i][o + i] = pres.field.one
            inj[v] = im
            proj[v] = pm
        injections.append(Morphism(p, total, inj))
        projections.append(Morphism(total, p, proj))
    return total, injections, projections


def kernel_of(f: Morphism):
    """Kernel representation and its inclusion morphism."""
    src = f.source
    pres = src.pres
    field = pres.field
    kernel_cols = {}
    for v in pres.quiver.vertices:
        kernel_cols[v] = f.components[v].kernel_basis()
    dims = {v: len(kernel_cols[v]) for v in pres.quiver.vertices}
    incl_comps = {v: Matrix.from_columns(field, src.dims[v], kernel_cols[v])
                  for v in pres.quiver.vertices}
    maps = {}
    for a in pres.quiver.arrows:
        # arrow maps restrict to kernels: solve K_t X = M_a K_s columnwise
        ks = incl_comps[a.source]
        kt = incl_comps[a.target]
        image = src.arrow_maps[a.name] @ ks
        cols = []
        for j in range(image.cols):
            x = kt.solve(image.col(j))
            if x is None:
                raise UsageError("arrow map does not preserve kernel (invalid morphism?)")
            cols.append(x)
        maps[a.name] = Matrix.from_columns(field, dims[a.target], cols)
    ker = Representation(pres, dims, maps)
    return ker, Morphism(ker, src, incl_comps)


@dataclass
class IsoVerdict:
    is_iso: bool
    witness: Optional[Morphism]
    reason: str
    seed: Optional[int] = None
    trials_used: int = 0

    def __bool__(self):
        return self.is_iso


def is_isomorphic(a: Representation, b: Representation, trials: int = 20,
                  seed: int = 0) -> IsoVerdict:
    """Iso(witness) or LikelyNot(evidence); randomized after exact pre-checks."""
    from .homext import hom_space  # local import to avoid a cycle

    if a.dim_vector() != b.dim_vector():
        return IsoVerdict(False, None, "dimension vectors differ")
    if a.total_dim == 0:
        return IsoVerdict(True, Morphism.zero(a, b), "zero representations")
    hab = hom_space(a, b)
    hba = hom_space(b, a)
    if hab.dim != hba.dim:
        return IsoVerdict(False, None,
                          f"hom dimension asymmetry: {hab.dim} vs {hba.dim}")
    da, db = hom_space(a, a).dim, hom_space(b, b).dim
    if da != db:
        return IsoVerdict(False, None,
                          f"endomorphism dimension mismatch: {da} vs {db}")
    if hab.dim == 0:
        return IsoVerdict(False, None, "no nonzero morphisms")
    field = a.field
    rng = random.Random(seed)
    for t in range(trials):
        cand = Morphism.zero(a, b)
        for g in hab.basis:
            cand = cand + g.scale(field.of(rng.randint(-9, 9)))
        if all(cand.components[v].is_invertible()
               for v in a.pres.quiver.vertices):
            return IsoVerdict(True, cand, "random witness invertible", seed, t + 1)
    return IsoVerdict(False, None,
                      f"no invertible combination found in {trials} trials",
                      seed, trials)
