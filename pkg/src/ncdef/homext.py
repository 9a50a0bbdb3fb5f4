"""Hom spaces, Ext^1 cocycles, and extension constructions.

Ext^1(M, N) is computed from the arrow/relation cochain complex

    C^0 = +_v Hom(M_v, N_v)   -d0->   C^1 = +_a Hom(M_s(a), N_t(a))
          -d1->   C^2 = +_rel Hom(M_src(rel), N_tgt(rel))

with d0(f)_a = N_a f_s(a) - f_t(a) M_a and d1 the mixed relation
derivative: for a term c * (a_1 ... a_k) of a relation,

    c * sum_m  N_(a_{m+1}..a_k) . eta_(a_m) . M_(a_1..a_{m-1}).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import EngineError, PreconditionError, UsageError
from .linalg import Matrix, independent_subset
from .quiver import (Morphism, Representation, direct_sum, kernel_of,
                     morphism_from_flat, validate)


@dataclass
class HomSpace:
    source: Representation
    target: Representation
    basis: List[Morphism]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinates_of(self, f: Morphism):
        """Exact coordinates of a morphism in this basis, or None."""
        n = len(f.flatten())
        mat = Matrix.from_columns(self.source.field, n, [b.flatten() for b in self.basis])
        return mat.solve(f.flatten())


def _hom_system(m: Representation, n: Representation) -> Matrix:
    """Coefficient matrix of the per-arrow commuting equations.

    Unknowns: components f_v of shape n_v x m_v, vertex order, row-major.
    """
    pres = m.pres
    field = pres.field
    q = pres.quiver
    offsets = {}
    pos = 0
    for v in q.vertices:
        offsets[v] = pos
        pos += n.dims[v] * m.dims[v]
    ncols = pos
    rows = []
    for a in q.arrows:
        na = n.arrow_maps[a.name]
        ma = m.arrow_maps[a.name]
        nt, ms = n.dims[a.target], m.dims[a.source]
        for i in range(nt):
            for j in range(ms):
                row = [field.zero] * ncols
                # N_a f_s: coefficient of f_s[k][j] is N_a[i][k]
                base = offsets[a.source]
                for k in range(n.dims[a.source]):
                    c = na.entries[i][k]
                    if not field.is_zero(c):
                        row[base + k * m.dims[a.source] + j] = field.add(
                            row[base + k * m.dims[a.source] + j], c)
                # - f_t M_a: coefficient of f_t[i][l] is -M_a[l][j]
                base = offsets[a.target]
                for l in range(m.dims[a.target]):
                    c = ma.entries[l][j]
                    if not field.is_zero(c):
                        idx = base + i * m.dims[a.target] + l
                        row[idx] = field.sub(row[idx], c)
                rows.append(row)
    return Matrix(field, len(rows), ncols, rows) if rows else Matrix.zeros(field, 0, ncols)


def hom_space(m: Representation, n: Representation) -> HomSpace:
    """Exact basis of Hom(m, n)."""
    if m.pres is not n.pres:
        raise UsageError("hom between different presentations")
    sys = _hom_system(m, n)
    basis = [morphism_from_flat(m, n, v) for v in sys.kernel_basis()]
    return HomSpace(m, n, basis)


class _CellLayout:
    """Flattening of an arrow-indexed family of matrices into one vector."""

    def __init__(self, field, cells: Sequence[Tuple[str, int, int]]):
        self.field = field
        self.cells = list(cells)
        self.offsets = []
        pos = 0
        for _, r, c in self.cells:
            self.offsets.append(pos)
            pos += r * c
        self.size = pos

    def flatten(self, family: Dict[str, Matrix]):
        out = []
        for name, r, c in self.cells:
            out.extend(family[name].flatten())
        return out

    def unflatten(self, flat) -> Dict[str, Matrix]:
        fam = {}
        for (name, r, c), off in zip(self.cells, self.offsets):
            fam[name] = Matrix.from_flat(self.field, r, c, flat[off:off + r * c])
        return fam


@dataclass
class ExtSpace:
    source: Representation          # M, the quotient of the extensions
    target: Representation          # N, the sub
    cocycle_basis: List[Dict[str, Matrix]]
    coboundary_rank: int
    _layout: _CellLayout
    _coboundary_basis: List[list]   # independent coboundary vectors

    @property
    def dim(self) -> int:
        return len(self.cocycle_basis)

    def flatten_cocycle(self, family: Dict[str, Matrix]):
        return self._layout.flatten(family)

    def coordinates_of(self, family: Dict[str, Matrix]):
        """Class coordinates of a cocycle modulo coboundaries."""
        field = self.source.field
        vec = self._layout.flatten(family)
        cols = [self._layout.flatten(b) for b in self.cocycle_basis] + \
            list(self._coboundary_basis)
        if not cols:
            if all(field.is_zero(x) for x in vec):
                return []
            raise EngineError("nonzero cocycle in a zero Ext space")
        sol = Matrix.from_columns(field, self._layout.size, cols).solve(vec)
        if sol is None:
            raise EngineError("cocycle does not lie in ker(d1) span; complex bug")
        return sol[: self.dim]

    def cls(self, coordinates) -> "ExtClass":
        field = self.source.field
        coords = [c if not isinstance(c, int) else field.of(c) for c in coordinates]
        if len(coords) != self.dim:
            raise UsageError("coordinate length must equal Ext basis size")
        return ExtClass(self, coords)

    def basis_class(self, k: int) -> "ExtClass":
        field = self.source.field
        coords = [field.one if i == k else field.zero for i in range(self.dim)]
        return ExtClass(self, coords)

    def zero_class(self) -> "ExtClass":
        return ExtClass(self, [self.source.field.zero] * self.dim)


@dataclass
class ExtClass:
    space: ExtSpace
    coordinates: List[object]

    def is_zero(self) -> bool:
        f = self.space.source.field
        return all(f.is_zero(c) for c in self.coordinates)

    def cocycle(self) -> Dict[str, Matrix]:
        """The represented arrow-indexed cocycle family."""
        sp = self.space
        field = sp.source.field
        fam = {}
        for name, r, c in sp._layout.cells:
            fam[name] = Matrix.zeros(field, r, c)
        for coord, basis_fam in zip(self.coordinates, sp.cocycle_basis):
            if field.is_zero(coord):
                continue
            for name in fam:
                fam[name] = fam[name] + basis_fam[name].scale(coord)
        return fam


def ext1_space(m: Representation, n: Representation) -> ExtSpace:
    """Basis of Ext^1(m, n) = ker(d1) / im(d0)."""
    if m.pres is not n.pres:
        raise UsageError("ext between different presentations")
    pres = m.pres
    field = pres.field
    q = pres.quiver
    layout = _CellLayout(field, [(a.name, n.dims[a.target], m.dims[a.source])
                                 for a in q.arrows])

    # d1: C^1 -> C^2, one block row per relation
    d1_rows = []
    for rel in pres.relations:
        nr, mc = n.dims[rel.target], m.dims[rel.source]
        block = [[ [field.zero] * layout.size for _ in range(mc)] for _ in range(nr)]
        for coeff, path in rel.terms:
            for pos in range(len(path)):
                a = q.arrow(path[pos])
                head = path[:pos]
                tail = path[pos + 1:]
                mhead = (m.path_map(head) if head
                         else Matrix.identity(field, m.dims[a.source]))
                ntail = (n.path_map(tail) if tail
                         else Matrix.identity(field, n.dims[a.target]))
                aidx = q.arrows.index(a)
                off = layout.offsets[aidx]
                eta_rows, eta_cols = n.dims[a.target], m.dims[a.source]
                for i in range(nr):
                    for k in range(eta_rows):
                        cik = ntail.entries[i][k]
                        if field.is_zero(cik):
                            continue
                        for l in range(eta_cols):
                            for j in range(mc):
                                clj = mhead.entries[l][j]
                                if field.is_zero(clj):
                                    continue
                                idx = off + k * eta_cols + l
                                block[i][j][idx] = field.add(
                                    block[i][j][idx], field.mul(coeff, field.mul(cik, clj)))
        for i in range(nr):
            for j in range(mc):
                d1_rows.append(block[i][j])
    d1 = (Matrix(field, len(d1_rows), layout.size, d1_rows)
          if d1_rows else Matrix.zeros(field, 0, layout.size))
    kernel = d1.kernel_basis()

    # d0: C^0 -> C^1, one column per unit vertex map
    d0_cols = []
    for v in q.vertices:
        nv, mv = n.dims[v], m.dims[v]
        for k in range(nv):
            for l in range(mv):
                col = [field.zero] * layout.size
                for aidx, a in enumerate(q.arrows):
                    off = layout.offsets[aidx]
                    eta_cols = m.dims[a.source]
                    if a.source == v:
                        na = n.arrow_maps[a.name]
                        for i in range(n.dims[a.target]):
                            c = na.entries[i][k]
                            if not field.is_zero(c):
                                col[off + i * eta_cols + l] = field.add(
                                    col[off + i * eta_cols + l], c)
                    if a.target == v:
                        ma = m.arrow_maps[a.name]
                        for j in range(m.dims[a.source]):
                            c = ma.entries[l][j]
                            if not field.is_zero(c):
                                col[off + k * eta_cols + j] = field.sub(
                                    col[off + k * eta_cols + j], c)
                d0_cols.append(col)
    cob_basis = independent_subset(field, layout.size, d0_cols)
    cob_rank = len(cob_basis)

    chosen = independent_subset(field, layout.size, kernel, seed_vectors=cob_basis)
    basis = [layout.unflatten(v) for v in chosen]
    return ExtSpace(m, n, basis, cob_rank, layout, cob_basis)


@dataclass
class Extension:
    middle: Representation
    inclusion: Morphism     # N -> E
    projection: Morphism    # E -> M


def extension_of(cls: ExtClass) -> Extension:
    """Middle term with vertex spaces N_v + M_v and maps [[N_a, eta_a], [0, M_a]]."""
    sp = cls.space
    m, n = sp.source, sp.target
    pres = m.pres
    field = pres.field
    eta = cls.cocycle()
    dims = {v: n.dims[v] + m.dims[v] for v in pres.quiver.vertices}
    maps = {}
    for a in pres.quiver.arrows:
        maps[a.name] = Matrix.block([
            [n.arrow_maps[a.name], eta[a.name]],
            [Matrix.zeros(field, m.dims[a.target], n.dims[a.source]), m.arrow_maps[a.name]],
        ])
    mid = Representation(pres, dims, maps)
    report = validate(mid)
    if not report.ok:
        raise EngineError(f"extension middle term violates relations: {report.violations}")
    incl_c, proj_c = {}, {}
    for v in pres.quiver.vertices:
        iv = Matrix.zeros(field, dims[v], n.dims[v])
        pv = Matrix.zeros(field, m.dims[v], dims[v])
        for i in range(n.dims[v]):
            iv.entries[i][i] = field.one
        for i in range(m.dims[v]):
            pv.entries[i][n.dims[v] + i] = field.one
        incl_c[v] = iv
        proj_c[v] = pv
    return Extension(mid, Morphism(n, mid, incl_c), Morphism(mid, m, proj_c))


def pullback_class(xi: ExtClass, f: Morphism,
                   target_space: Optional[ExtSpace] = None) -> ExtClass:
    """Image of xi in Ext^1(source(f), N) along f: G' -> G."""
    if not f.target.equal_to(xi.space.source):
        raise UsageError("pullback morphism target must be the class source object")
    eta = xi.cocycle()
    pulled = {name: mat @ f.components[f.source.pres.quiver.arrow(name).source]
              for name, mat in eta.items()}
    sp = target_space or ext1_space(f.source, xi.space.target)
    return sp.cls(sp.coordinates_of(pulled))


@dataclass
class UniversalExtension:
    middle: Representation
    inclusion: Morphism     # +_j F_j^{d_j} -> E
    projection: Morphism    # E -> G
    ext_dims: List[int]     # d_j = dim Ext^1(G, F_j), in collection order


def universal_extension(gi: Representation,
                        collection: Sequence[Representation]) -> UniversalExtension:
    """Extension of gi by +_j F_j^{d_j} using all basis cocycles at once.

    Cocycles are stacked lexicographically in (collection index j, basis
    order), which fixes the tower and the End-algebra bases.
    """
    pres = gi.pres
    field = pres.field
    spaces = [ext1_space(gi, fj) for fj in collection]
    ext_dims = [sp.dim for sp in spaces]
    if all(d == 0 for d in ext_dims):
        ident = Morphism.identity(gi)
        zero_rep = Representation(pres, {}, {})
        return UniversalExtension(gi, Morphism.zero(zero_rep, gi), ident, ext_dims)

    sub_parts = []
    cocycles = []
    for j, (fj, sp) in enumerate(zip(collection, spaces)):
        for b in range(sp.dim):
            sub_parts.append(fj)
            cocycles.append(sp.cocycle_basis[b])
    sub, sub_injs, _ = direct_sum(sub_parts, pres)

    dims = {v: sub.dims[v] + gi.dims[v] for v in pres.quiver.vertices}
    maps = {}
    for a in pres.quiver.arrows:
        eta_rows = []
        for inj, eta in zip(sub_injs, cocycles):
            eta_rows.append(inj.components[a.target] @ eta[a.name])
        stacked = eta_rows[0]
        for blockrow in eta_rows[1:]:
            stacked = stacked + blockrow
        maps[a.name] = Matrix.block([
            [sub.arrow_maps[a.name], stacked],
            [Matrix.zeros(field, gi.dims[a.target], sub.dims[a.source]),
             gi.arrow_maps[a.name]],
        ])
    mid = Representation(pres, dims, maps)
    report = validate(mid)
    if not report.ok:
        raise EngineError(f"universal extension violates relations: {report.violations}")
    incl_c, proj_c = {}, {}
    for v in pres.quiver.vertices:
        iv = Matrix.zeros(field, dims[v], sub.dims[v])
        pv = Matrix.zeros(field, gi.dims[v], dims[v])
        for i in range(sub.dims[v]):
            iv.entries[i][i] = field.one
        for i in range(gi.dims[v]):
            pv.entries[i][sub.dims[v] + i] = field.one
        incl_c[v] = iv
        proj_c[v] = pv
    return UniversalExtension(mid, Morphism(sub, mid, incl_c),
                              Morphism(mid, gi, proj_c), ext_dims)


@dataclass
class CommonExtension:
    middle: Representation                 # H
    maps_to_sides: Tuple[Morphism, Morphism]   # H -> G_0, H -> G_1
    sides: Tuple[Extension, Extension]     # the extensions G_0, G_1 of G
    pulled_classes: Tuple[ExtClass, ExtClass]  # xi_{1-j} pulled to G_j


def common_extension(xi0: ExtClass, xi1: ExtClass) -> CommonExtension:
    """Common extension H = ker(p0 - p1 : G_0 + G_1 -> G) of two classes.

    Requires both classes nonzero; equal-target classes must be linearly
    independent (the non-isomorphic extensions hypothesis).
    """
    g = xi0.space.source
    if not xi1.space.source.equal_to(g):
        raise UsageError("common extension classes must share their source object")
    if xi0.is_zero() or xi1.is_zero():
        raise PreconditionError("common extension requires nonzero classes")
    field = g.field
    same_target = xi0.space.target.equal_to(xi1.space.target)
    if same_target:
        n = len(xi0.coordinates)
        coords = Matrix(field, n, 2,
                        [[xi0.coordinates[i], xi1.coordinates[i]] for i in range(n)])
        if coords.rank() < 2:
            raise PreconditionError(
                "equal-target classes are proportional; the extensions are isomorphic")

    side0 = extension_of(xi0)
    side1 = extension_of(xi1)
    total, injs, projs = direct_sum([side0.middle, side1.middle])
    p0 = side0.projection.compose(projs[0])
    p1 = side1.projection.compose(projs[1])
    h, incl = kernel_of(p0 - p1)
    expected = side0.middle.total_dim + side1.middle.total_dim - g.total_dim
    if h.total_dim != expected:
        raise EngineError("common extension kernel has unexpected dimension")
    to_g0 = projs[0].compose(incl)
    to_g1 = projs[1].compose(incl)

    # non-triviality of both output extensions (xi'_j != 0)
    pulled1 = pullback_class(xi1, side0.projection)
    pulled0 = pullback_class(xi0, side1.projection)
    if pulled1.is_zero() or pulled0.is_zero():
        raise EngineError("common extension produced a trivial side extension")
    return CommonExtension(h, (to_g0, to_g1), (side0, side1), (pulled1, pulled0))
