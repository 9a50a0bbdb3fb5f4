"""Iterated extension towers over a simple collection.

run_tower performs whole universal-extension steps; run_custom_sequence
performs single (i, j) non-trivial extensions.  Both drivers must reach
isomorphic final objects when the tower terminates.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import List, Optional, Sequence, Tuple

from .errors import PreconditionError, UsageError
from .homext import ExtClass, ext1_space, extension_of, hom_space, universal_extension
from .quiver import Morphism, Representation, direct_sum

DEFAULT_MAX_STEPS = 10
DIMENSION_GUARD = 2000


@dataclass
class Collection:
    members: List[Representation]

    @property
    def r(self) -> int:
        return len(self.members)

    @property
    def pres(self):
        return self.members[0].pres


@dataclass
class SimpleCollectionReport:
    ok: bool
    hom_table: List[List[int]]
    failures: List[Tuple[int, int]] = dc_field(default_factory=list)


def check_simple_collection(c: Collection) -> SimpleCollectionReport:
    """Full r x r Hom-dimension table; pass iff it is the identity."""
    table = []
    failures = []
    for i, fi in enumerate(c.members):
        row = []
        for j, fj in enumerate(c.members):
            d = hom_space(fi, fj).dim
            row.append(d)
            if d != (1 if i == j else 0):
                failures.append((i, j))
        table.append(row)
    return SimpleCollectionReport(ok=not failures, hom_table=table, failures=failures)


@dataclass
class TowerState:
    level: int
    summands: List[Representation]
    step_projections: List[List[Morphism]]   # per level: summand_i^(m+1) -> summand_i^(m)
    level_dims: List[int]                    # total dim of F^(m) for m = 0..level
    r_sequence: List[int]
    multiplicities: List[int]
    ext_tables: List[List[List[int]]]        # per step: d[i][j]

    @property
    def total_dim(self) -> int:
        return sum(s.total_dim for s in self.summands)

    def filtration_dims(self) -> List[int]:
        """dims of G^p = Ker(F^(n) -> F^(p-1)) for p = 0..n+1."""
        top = self.total_dim
        dims = [top]
        for p in range(1, self.level + 2):
            dims.append(top - self.level_dims[p - 1])
        return dims

    def projection_to_base(self, i: int) -> Morphism:
        """Composed projection summand_i^(level) -> F_i."""
        chain = [steps[i] for steps in self.step_projections]
        if not chain:
            return Morphism.identity(self.summands[i])
        m = chain[-1]
        for nxt in reversed(chain[:-1]):
            m = nxt.compose(m)
        return m


@dataclass
class TowerResult:
    state: TowerState
    status: str                 # "terminated" | "cutoff"
    terminated_level: Optional[int]
    cutoff_reason: Optional[str] = None

    @property
    def summands(self) -> List[Representation]:
        return self.state.summands


def initial_state(c: Collection) -> TowerState:
    return TowerState(
        level=0,
        summands=list(c.members),
        step_projections=[],
        level_dims=[sum(m.total_dim for m in c.members)],
        r_sequence=[c.r],
        multiplicities=[1] * c.r,
        ext_tables=[],
    )


def tower_step(state: TowerState, c: Collection) -> TowerState:
    """Replace every summand by its universal extension; no-op if all Ext vanish."""
    new_summands = []
    projections = []
    table = []
    r_next = 0
    for i, g in enumerate(state.summands):
        ue = universal_extension(g, c.members)
        table.append(ue.ext_dims)
        r_next += sum(ue.ext_dims)
        new_summands.append(ue.middle)
        projections.append(ue.projection)
    if r_next == 0:
        return state
    mult = list(state.multiplicities)
    for row in table:
        for j, d in enumerate(row):
            mult[j] += d
    return TowerState(
        level=state.level + 1,
        summands=new_summands,
        step_projections=state.step_projections + [projections],
        level_dims=state.level_dims + [sum(s.total_dim for s in new_summands)],
        r_sequence=state.r_sequence + [r_next],
        multiplicities=mult,
        ext_tables=state.ext_tables + [table],
    )


def run_tower(c: Collection, max_steps: int = DEFAULT_MAX_STEPS,
              dimension_guard: int = DIMENSION_GUARD,
              require_simple: bool = True) -> TowerResult:
    """Iterate universal extensions until Ext^1 vanishes or the cutoff hits."""
    if require_simple:
        rep = check_simple_collection(c)
        if not rep.ok:
            raise PreconditionError("collection is not simple", report=rep)
    state = initial_state(c)
    for _ in range(max_steps):
        nxt = tower_step(state, c)
        if nxt is state:
            return TowerResult(state, "terminated", state.level)
        state = nxt
        if state.total_dim > dimension_guard:
            return TowerResult(state, "cutoff", None, "dimension_guard")
    # check whether the last state is already final
    if all(ext1_space(g, fj).dim == 0
           for g in state.summands for fj in c.members):
        return TowerResult(state, "terminated", state.level)
    return TowerResult(state, "cutoff", None, "max_steps")


@dataclass
class CustomStep:
    i: int
    j: int
    selector: object    # basis index, coordinate list, or callable(space) -> ExtClass


@dataclass
class CustomSequenceResult:
    summands: List[Representation]
    history: List[List[Representation]]
    steps_taken: List[Tuple[int, int]]


def _select_class(space, selector) -> ExtClass:
    if callable(selector):
        return selector(space)
    if isinstance(selector, int):
        if not 0 <= selector < space.dim:
            raise PreconditionError(
                f"class selector {selector} out of range for Ext space of dim {space.dim}")
        return space.basis_class(selector)
    return space.cls(list(selector))


def run_custom_sequence(c: Collection, steps: Sequence[CustomStep],
                        max_steps: Optional[int] = None) -> CustomSequenceResult:
    """Build G^0, ..., G^N one non-trivial (i, j) extension at a time."""
    if max_steps is not None and len(steps) > max_steps:
        raise UsageError("more steps than the allowed maximum")
    summands = list(c.members)
    history = [list(summands)]
    taken = []
    for step in steps:
        if not 0 <= step.i < c.r or not 0 <= step.j < c.r:
            raise UsageError("step indices out of range")
        space = ext1_space(summands[step.i], c.members[step.j])
        if space.dim == 0:
            raise PreconditionError(
                f"Ext^1(G_{step.i}, F_{step.j}) = 0; cannot extend non-trivially")
        cls = _select_class(space, step.selector)
        if cls.is_zero():
            raise PreconditionError("selected extension class is zero")
        summands = list(summands)
        summands[step.i] = extension_of(cls).middle
        history.append(list(summands))
        taken.append((step.i, step.j))
    return CustomSequenceResult(summands, history, taken)


def random_maximal_sequence(c: Collection, seed: int,
                            max_steps: int = 50) -> CustomSequenceResult:
    """A seeded random maximal run of single non-trivial extensions.

    Any two maximal runs end at isomorphic objects, so this doubles as an
    independent check on the whole-step driver.
    """
    rng = random.Random(seed)
    field = c.pres.field
    summands = list(c.members)
    history = [list(summands)]
    taken = []
    for _ in range(max_steps):
        options = []
        for i in range(c.r):
            for j in range(c.r):
                sp = ext1_space(summands[i], c.members[j])
                if sp.dim > 0:
                    options.append((i, j, sp))
        if not options:
            break
        i, j, sp = options[rng.randrange(len(options))]
        coords = [field.zero] * sp.dim
        while all(field.is_zero(x) for x in coords):
            coords = [field.of(rng.randint(-9, 9)) for _ in range(sp.dim)]
        summands = list(summands)
        summands[i] = extension_of(sp.cls(coords)).middle
        history.append(list(summands))
        taken.append((i, j))
    return CustomSequenceResult(summands, history, taken)


@dataclass
class VersalityReport:
    ok: bool
    hom_table: List[List[int]]
    ext_row: List[int]


def verify_versality(summands: Sequence[Representation], c: Collection) -> VersalityReport:
    """Pass iff dim Hom(g_i, F_j) = delta_ij and Ext^1(g, F_j) = 0 for all j."""
    hom_table = [[hom_space(g, fj).dim for fj in c.members] for g in summands]
    total, _, _ = direct_sum(list(summands), c.pres)
    ext_row = [ext1_space(total, fj).dim for fj in c.members]
    ok = all(hom_table[i][j] == (1 if i == j else 0)
             for i in range(len(summands)) for j in range(c.r))
    ok = ok and all(d == 0 for d in ext_row)
    return VersalityReport(ok, hom_table, ext_row)
