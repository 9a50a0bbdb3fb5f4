"""End(F^(N)) as an r-pointed Artin algebra, and the algebra-level checks.

The augmentation R -> k^r is computed by descending each endomorphism
along the tower projections to F^(0); solvability of the descent is an
engine invariant, not an assumption.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import EngineError, PreconditionError, UsageError
from .homext import hom_space
from .linalg import Matrix, independent_subset, quotient_map
from .quiver import (Morphism, Representation, direct_sum, is_isomorphic)
from .tower import Collection, TowerResult


class PointedAlgebra:
    """An r-pointed algebra by basis and exact structure constants."""

    def __init__(self, field, r: int, dim: int, structure_constants,
                 unit, idempotents, augmentation,
                 basis_morphisms: Optional[List[Morphism]] = None,
                 labels: Optional[List[str]] = None):
        self.field = field
        self.r = r
        self.dim = dim
        # sc[i][j] = coordinates of b_i * b_j
        self.sc = structure_constants
        self.unit = list(unit)
        self.idempotents = [list(e) for e in idempotents]
        # augmentation: r x dim matrix of functionals R -> k^r
        self.augmentation = augmentation
        self.basis_morphisms = basis_morphisms
        self.labels = labels or [f"b{i}" for i in range(dim)]
        if len(idempotents) != r:
            raise UsageError("need exactly r idempotent coordinate vectors")

    def multiply(self, x, y):
        """Coordinates of x * y."""
        f = self.field
        out = [f.zero] * self.dim
        for i, xi in enumerate(x):
            if f.is_zero(xi):
                continue
            for j, yj in enumerate(y):
                if f.is_zero(yj):
                    continue
                c = f.mul(xi, yj)
                for k, s in enumerate(self.sc[i][j]):
                    if not f.is_zero(s):
                        out[k] = f.add(out[k], f.mul(c, s))
        return out

    def augment(self, x):
        """Image of x in k^r."""
        f = self.field
        return [sum_product(f, self.augmentation[i], x) for i in range(self.r)]

    def radical_basis(self):
        """Basis of M = ker(augmentation)."""
        aug = Matrix(self.field, self.r, self.dim, self.augmentation)
        return aug.kernel_basis()

    def right_multiplication_matrix(self, y) -> Matrix:
        """Matrix of x -> x*y in basis coordinates."""
        cols = []
        f = self.field
        for i in range(self.dim):
            ei = [f.one if k == i else f.zero for k in range(self.dim)]
            cols.append(self.multiply(ei, y))
        # column i is b_i * y
        return Matrix.from_columns(self.field, self.dim, cols)

    def left_multiplication_matrix(self, x) -> Matrix:
        cols = []
        f = self.field
        for i in range(self.dim):
            ei = [f.one if k == i else f.zero for k in range(self.dim)]
            cols.append(self.multiply(x, ei))
        return Matrix.from_columns(self.field, self.dim, cols)

    def is_commutative(self) -> bool:
        f = self.field
        for i in range(self.dim):
            ei = [f.one if k == i else f.zero for k in range(self.dim)]
            for j in range(i + 1, self.dim):
                ej = [f.one if k == j else f.zero for k in range(self.dim)]
                if self.multiply(ei, ej) != self.multiply(ej, ei):
                    return False
        return True

    def is_associative(self) -> bool:
        f = self.field
        units = [[f.one if k == i else f.zero for k in range(self.dim)]
                 for i in range(self.dim)]
        for a in units:
            for b in units:
                ab = self.multiply(a, b)
                for c in units:
                    if self.multiply(ab, c) != self.multiply(a, self.multiply(b, c)):
                        return False
        return True


def sum_product(field, xs, ys):
    acc = field.zero
    for a, b in zip(xs, ys):
        if not field.is_zero(a) and not field.is_zero(b):
            acc = field.add(acc, field.mul(a, b))
    return acc


@dataclass
class AlgebraModule:
    """A right module over a PointedAlgebra, by per-basis action matrices."""
    algebra: PointedAlgebra
    dim: int
    actions: List[Matrix]    # actions[i] = right action of basis element b_i

    @classmethod
    def regular_right(cls, a: PointedAlgebra) -> "AlgebraModule":
        f = a.field
        acts = []
        for i in range(a.dim):
            ei = [f.one if k == i else f.zero for k in range(a.dim)]
            acts.append(a.right_multiplication_matrix(ei))
        return cls(a, a.dim, acts)

    @classmethod
    def simple_right(cls, a: PointedAlgebra, i: int) -> "AlgebraModule":
        """R/M_i: one-dimensional, b acting by its i-th augmentation value."""
        f = a.field
        acts = []
        for k in range(a.dim):
            ek = [f.one if t == k else f.zero for t in range(a.dim)]
            acts.append(Matrix(f, 1, 1, [[a.augment(ek)[i]]]))
        return cls(a, 1, acts)


@dataclass
class EndAlgebraResult:
    algebra: PointedAlgebra
    total: Representation            # F^(N) as one object
    injections: List[Morphism]
    projections: List[Morphism]


def _coordinates_in_hom_basis(basis: List[Morphism], f: Morphism):
    flat = f.flatten()
    mat = Matrix.from_columns(f.source.field, len(flat), [b.flatten() for b in basis])
    sol = mat.solve(flat)
    if sol is None:
        raise EngineError("endomorphism not in the computed End basis span")
    return sol


def end_algebra(tower: TowerResult, c: Collection) -> EndAlgebraResult:
    """Extract End(F^(N)) with idempotents, augmentation, structure constants."""
    field = c.pres.field
    total, injs, projs = direct_sum(list(tower.summands), c.pres)
    basis = hom_space(total, total).basis
    dim = len(basis)

    def coords(f: Morphism):
        return _coordinates_in_hom_basis(basis, f)

    unit = coords(Morphism.identity(total))
    idempotents = [coords(injs[i].compose(projs[i])) for i in range(c.r)]

    # augmentation by descent along the tower projections
    to_base = [tower.state.projection_to_base(i) for i in range(c.r)]
    aug_rows = []
    for i in range(c.r):
        pi = to_base[i]
        row = []
        for b in basis:
            descended = pi.compose(projs[i].compose(b.compose(injs[i])))
            lam = _scalar_ratio(field, descended, pi)
            row.append(lam)
        aug_rows.append(row)

    sc = []
    for bi in basis:
        row = []
        for bj in basis:
            row.append(coords(bi.compose(bj)))
        sc.append(row)

    algebra = PointedAlgebra(field, c.r, dim, sc, unit, idempotents, aug_rows,
                             basis_morphisms=basis)
    return EndAlgebraResult(algebra, total, injs, projs)


def _scalar_ratio(field, candidate: Morphism, reference: Morphism):
    """The exact scalar lam with candidate = lam * reference; engine-checked."""
    lam = None
    for v, ref in reference.components.items():
        for i in range(ref.rows):
            for j in range(ref.cols):
                if not field.is_zero(ref.entries[i][j]):
                    lam = field.div(candidate.components[v].entries[i][j],
                                    ref.entries[i][j])
                    break
            if lam is not None:
                break
        if lam is not None:
            break
    if lam is None:
        raise EngineError("tower projection is zero; descent impossible")
    if not (candidate - reference.scale(lam)).is_zero():
        raise EngineError("endomorphism descent is not scalar; filtration bug")
    return lam


@dataclass
class ArtinReport:
    ok: bool
    dim: int
    idempotents_ok: bool
    augmentation_splits: bool
    nilpotency: Optional[int]    # smallest t with M^t = 0; None if not nilpotent
    details: List[str] = dc_field(default_factory=list)


def verify_pointed_artin(a: PointedAlgebra) -> ArtinReport:
    """Check Art_r axioms: idempotents, augmentation splitting, nilpotent M."""
    f = a.field
    details = []

    total = [f.zero] * a.dim
    for e in a.idempotents:
        total = [f.add(x, y) for x, y in zip(total, e)]
    idem_ok = total == a.unit
    for i, ei in enumerate(a.idempotents):
        if a.multiply(ei, ei) != ei:
            idem_ok = False
            details.append(f"e{i} is not idempotent")
        for j, ej in enumerate(a.idempotents):
            if i != j and any(not f.is_zero(x) for x in a.multiply(ei, ej)):
                idem_ok = False
                details.append(f"e{i} e{j} != 0")
    if total != a.unit:
        details.append("sum of idempotents differs from the unit")

    aug_ok = True
    for i, ei in enumerate(a.idempotents):
        img = a.augment(ei)
        if img != [f.one if k == i else f.zero for k in range(a.r)]:
            aug_ok = False
            details.append(f"augmentation does not split on e{i}")

    nilpotency = _nilpotency_index(a)
    if nilpotency is None:
        details.append("augmentation ideal is not nilpotent")
    ok = idem_ok and aug_ok and nilpotency is not None
    return ArtinReport(ok, a.dim, idem_ok, aug_ok, nilpotency, details)


def radical_power_basis(a: PointedAlgebra, m: int):
    """Basis vectors spanning M^m (M^0 = R)."""
    f = a.field
    if m == 0:
        return [[f.one if k == i else f.zero for k in range(a.dim)]
                for i in range(a.dim)]
    rad = a.radical_basis()
    current = rad
    for _ in range(m - 1):
        products = [a.multiply(x, y) for x in rad for y in current]
        current = independent_subset(f, a.dim, products)
        if not current:
            break
    return current


def _nilpotency_index(a: PointedAlgebra) -> Optional[int]:
    # if M is nilpotent its index is at most dim + 1
    for t in range(1, a.dim + 2):
        if not radical_power_basis(a, t):
            return t
    return None


@dataclass
class AlgebraSignature:
    grid: List[List[List[int]]]   # grid[m][j][i] = dim(e_j M^m e_i)
    nilpotency: int


def dimension_signature(a: PointedAlgebra) -> AlgebraSignature:
    """Dimension grid of e_j M^m e_i for m = 0 .. nilpotency index."""
    nil = _nilpotency_index(a)
    if nil is None:
        raise PreconditionError("dimension signature requires a nilpotent radical")
    f = a.field
    grid = []
    for m in range(nil + 1):
        power = radical_power_basis(a, m)
        layer = []
        for j in range(a.r):
            row = []
            for i in range(a.r):
                sandwiched = [a.multiply(a.idempotents[j], a.multiply(x, a.idempotents[i]))
                              for x in power]
                row.append(len(independent_subset(f, a.dim, sandwiched)))
            layer.append(row)
        grid.append(layer)
    return AlgebraSignature(grid, nil)


@dataclass
class FlatnessReport:
    ok: bool
    dimension_identity_ok: bool
    fiber_identity_ok: bool
    mismatches: List[dict] = dc_field(default_factory=list)


def flatness_check(a: PointedAlgebra, tower: TowerResult, c: Collection,
                   trials: int = 20, seed: int = 0) -> FlatnessReport:
    """Numerical shadow of flatness: F^(N) ~ R (x)_{k^r} F, plus the fiber check."""
    f = a.field
    q = c.pres.quiver
    sig_dims = [[None] * a.r for _ in range(a.r)]
    for j in range(a.r):
        for i in range(a.r):
            sandwiched = [a.multiply(a.idempotents[j],
                                     a.multiply(x, a.idempotents[i]))
                          for x in radical_power_basis(a, 0)]
            sig_dims[j][i] = len(independent_subset(f, a.dim, sandwiched))

    mismatches = []
    for j, gj in enumerate(tower.summands):
        for v in q.vertices:
            expected = sum(sig_dims[j][i] * c.members[i].dims[v] for i in range(a.r))
            if gj.dims[v] != expected:
                mismatches.append({"summand": j, "vertex": v,
                                   "dim": gj.dims[v], "expected": expected})
    dim_ok = not mismatches

    # a failed dimension identity already falsifies flatness; the fiber
    # computation would act on mismatched shapes, so skip it
    fiber_ok = dim_ok and _fiber_identity(a, tower, c, trials, seed)
    return FlatnessReport(dim_ok and fiber_ok, dim_ok, fiber_ok, mismatches)


def _fiber_identity(a: PointedAlgebra, tower: TowerResult, c: Collection,
                    trials: int, seed: int) -> bool:
    """F^(N) / (M . F^(N)) must be isomorphic to +_i F_i."""
    if a.basis_morphisms is None:
        raise UsageError("fiber identity needs an algebra with basis morphisms")
    f = a.field
    total, _, _ = direct_sum(list(tower.summands), c.pres)
    pres = c.pres
    rad_morphisms = []
    for coords in a.radical_basis():
        m = Morphism.zero(total, total)
        for coef, b in zip(coords, a.basis_morphisms):
            if not f.is_zero(coef):
                m = m + b.scale(coef)
        rad_morphisms.append(m)

    sub_cols = {v: [] for v in pres.quiver.vertices}
    for m in rad_morphisms:
        for v in pres.quiver.vertices:
            sub_cols[v].extend(m.components[v].columns())
    qmaps = {v: quotient_map(f, total.dims[v], sub_cols[v])
             for v in pres.quiver.vertices}
    dims = {v: qmaps[v].rows for v in pres.quiver.vertices}
    maps = {}
    for arr in pres.quiver.arrows:
        # induced arrow map: solve Q_t M_a = X Q_s columnwise via transposes
        lhs = qmaps[arr.target] @ total.arrow_maps[arr.name]
        qs_t = qmaps[arr.source].transpose()
        cols = []
        for i in range(dims[arr.target]):
            x = qs_t.solve([lhs.entries[i][j] for j in range(lhs.cols)])
            if x is None:
                return False
            cols.append(x)
        maps[arr.name] = Matrix.from_columns(f, dims[arr.target], cols).transpose()
    quotient = Representation(pres, dims, maps)
    fiber, _, _ = direct_sum(list(c.members), pres)
    return bool(is_isomorphic(quotient, fiber, trials=trials, seed=seed))


@dataclass
class SocleReport:
    gorenstein: bool
    socle_dim: int
    color_dims: List[int]
    socle_basis: List[list]


def socle_and_gorenstein(a: PointedAlgebra) -> SocleReport:
    """Right socle {x : x M = 0}; Gorenstein iff one simple of each color."""
    f = a.field
    rad = a.radical_basis()
    if not rad:
        # semisimple k^r: socle is everything, one simple per color
        colors = []
        for i in range(a.r):
            cols = [a.multiply(x, a.idempotents[i])
                    for x in radical_power_basis(a, 0)]
            colors.append(len(independent_subset(f, a.dim, cols)))
        basis = radical_power_basis(a, 0)
        return SocleReport(colors == [1] * a.r, a.dim, colors, basis)
    stacked = None
    for m in rad:
        rm = a.right_multiplication_matrix(m)
        stacked = rm if stacked is None else stacked.vstack(rm)
    socle = stacked.kernel_basis()
    colors = []
    for i in range(a.r):
        cols = [a.multiply(x, a.idempotents[i]) for x in socle]
        colors.append(len(independent_subset(f, a.dim, cols)))
    return SocleReport(colors == [1] * a.r, len(socle), colors, socle)


@dataclass
class DualityReport:
    ok: bool
    module_dim: int
    hom_to_r_dim: int


def duality_check(a: PointedAlgebra, m: AlgebraModule) -> DualityReport:
    """dim Hom_R(m, R) must equal dim_k m on a Gorenstein algebra."""
    soc = socle_and_gorenstein(a)
    if not soc.gorenstein:
        raise PreconditionError("duality check requires a Gorenstein algebra",
                                report=soc)
    f = a.field
    # unknown F: m -> R, a (dim R x dim m) matrix with F rho_b = R_b F
    n_unknowns = a.dim * m.dim
    rows = []
    for k in range(a.dim):
        ek = [f.one if t == k else f.zero for t in range(a.dim)]
        rb = a.right_multiplication_matrix(ek)
        rho = m.actions[k]
        for i in range(a.dim):
            for j in range(m.dim):
                row = [f.zero] * n_unknowns
                # (F rho)_ij = sum_l F_il rho_lj
                for l in range(m.dim):
                    c = rho.entries[l][j]
                    if not f.is_zero(c):
                        row[i * m.dim + l] = f.add(row[i * m.dim + l], c)
                # -(R_b F)_ij = -sum_l rb_il F_lj
                for l in range(a.dim):
                    c = rb.entries[i][l]
                    if not f.is_zero(c):
                        row[l * m.dim + j] = f.sub(row[l * m.dim + j], c)
                rows.append(row)
    sys = Matrix(f, len(rows), n_unknowns, rows)
    hom_dim = len(sys.kernel_basis())
    return DualityReport(hom_dim == m.dim, m.dim, hom_dim)


@dataclass
class SphericalReport:
    ok: bool
    permutation: Optional[List[int]]     # sigma[i] = j, 0-based
    hom_grid: List[List[int]]
    failing_rows: List[int]


def spherical_permutation(tower: TowerResult, c: Collection) -> SphericalReport:
    """sigma with dim Hom(F_i, F^(N)_j) = delta_{j, sigma(i)}, if it exists."""
    grid = [[hom_space(fi, gj).dim for gj in tower.summands]
            for fi in c.members]
    failing = [i for i, row in enumerate(grid) if sum(row) != 1]
    if failing:
        return SphericalReport(False, None, grid, failing)
    sigma = [row.index(1) for row in grid]
    if sorted(sigma) != list(range(c.r)):
        return SphericalReport(False, None, grid, [])
    return SphericalReport(True, sigma, grid, [])
