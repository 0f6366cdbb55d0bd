"""Opposition relations between quantum propositions.

The classifier answers two existential questions (can both be true? can
both be false?) and two entailment questions, then reads the relation off
the square-of-opposition taxonomy.  For literal pairs and for compounds
whose leaves all live in one orthogonal family, the answers are exact
subspace decisions; everything else falls back to a seeded randomized
witness search and may come back Undecided.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .linalg import EPS, DimensionMismatch, Subspace
from .quantum import (And, Literal, Or, OrthoFamily, Proposition, State,
                      ambient_dim_of, leaves, superpose, truth)

DEFAULT_SEED = 42
DEFAULT_TRIALS = 2000


class OppositionError(Exception):
    pass


class Relation(enum.Enum):
    CONTRADICTORY = "Contradictory"
    CONTRARY = "Contrary"
    SUBCONTRARY = "Subcontrary"
    SUBALTERN = "Subaltern"
    EQUIVALENT = "Equivalent"
    INDEPENDENT = "Independent"
    UNDECIDED = "Undecided"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Witness:
    """A concrete state realizing a truth-value pattern on some propositions."""
    state: State
    props: tuple
    pattern: tuple

    def replay(self, eps: float = EPS) -> bool:
        return all(truth(p, self.state, eps) == want
                   for p, want in zip(self.props, self.pattern))


@dataclass(frozen=True)
class Classification:
    relation: Relation
    # for SUBALTERN: "forward" means the first argument entails the second
    direction: str | None = None
    witnesses: dict = field(default_factory=dict, compare=False)

    def describe(self, first: str = "p", second: str = "q") -> str:
        if self.relation is Relation.SUBALTERN:
            a, b = (first, second) if self.direction == "forward" else (second, first)
            return f"Subaltern ({a} -> {b})"
        return self.relation.value

    def swapped(self) -> "Classification":
        if self.relation is Relation.SUBALTERN:
            d = "backward" if self.direction == "forward" else "forward"
            return Classification(self.relation, d, self.witnesses)
        return self


def _check_same_ambient(p: Proposition, q: Proposition) -> int:
    dp, dq = ambient_dim_of(p), ambient_dim_of(q)
    if dp != dq:
        raise DimensionMismatch(f"propositions live in dims {dp} vs {dq}")
    return dp


def _shared_family(p: Proposition, q: Proposition) -> OrthoFamily | None:
    lits = leaves(p) + leaves(q)
    fams = [lit.family for lit in lits]
    if any(f is None for f in fams) or any(lit.member is None for lit in lits):
        return None
    first = fams[0]
    if all(f is first for f in fams):
        return first
    return None


# --- cell calculus over one orthogonal family ---------------------------
#
# For a complete pairwise-orthogonal family {S_1..S_k} a membership
# pattern is realizable iff it asserts membership in at most one nonzero
# S_i, or in none at all provided at least two members are nonzero (a
# genuine superposition needs two components).  Cells are encoded as the
# member index, or -1 for "in no member".

def _realizable_cells(family: OrthoFamily):
    nonzero = [i for i, (_, sub) in enumerate(family.members) if sub.dim > 0]
    cells = list(nonzero)
    if len(nonzero) >= 2:
        cells.append(-1)
    return cells


def _truth_in_cell(p: Proposition, cell: int, family: OrthoFamily) -> bool:
    if isinstance(p, Literal):
        idx = family.labels.index(p.member)
        inside = (cell == idx)
        return inside if p.asserted else not inside
    if isinstance(p, And):
        return all(_truth_in_cell(part, cell, family) for part in p.parts)
    return any(_truth_in_cell(part, cell, family) for part in p.parts)


def _cell_witness(cell: int, family: OrthoFamily, eps: float) -> State:
    if cell >= 0:
        return State(family.members[cell][1].basis[:, 0], eps)
    nonzero = [sub for _, sub in family.members if sub.dim > 0]
    a = State(nonzero[0].basis[:, 0], eps)
    b = State(nonzero[1].basis[:, 0], eps)
    c = 1.0 / np.sqrt(2.0)
    return superpose([c, c], [a, b], eps)


# --- exact rules for a pair of arbitrary literals ------------------------

def _outside_both(sa: Subspace, sb: Subspace, eps: float) -> State:
    """A unit vector outside two proper subspaces.  Exists because the
    union of two proper subspaces never covers a complex vector space."""
    ca, cb = sa.orthocomplement(eps), sb.orthocomplement(eps)
    for i in range(ca.dim):
        v = ca.basis[:, i]
        if not sb.contains(v, eps):
            return State(v, eps)
    for i in range(cb.dim):
        w = cb.basis[:, i]
        if not sa.contains(w, eps):
            return State(w, eps)
    # every vector of sa-perp lies in sb and vice versa: mix one of each
    v, w = ca.basis[:, 0], cb.basis[:, 0]
    return State.normalized(v + w, eps)


def _literal_both_true(p: Literal, q: Literal, eps: float):
    sa, sb = p.subspace, q.subspace
    if p.asserted and q.asserted:
        inter = sa.intersect(sb, eps)
        if inter.is_zero():
            return False, None
        return True, State(inter.basis[:, 0], eps)
    if p.asserted and not q.asserted:
        for i in range(sa.dim):
            v = sa.basis[:, i]
            if not sb.contains(v, eps):
                return True, State(v, eps)
        return False, None
    if not p.asserted and q.asserted:
        got, st = _literal_both_true(q, p, eps)
        return got, st
    # both negated: possible iff neither subspace is the whole space
    if sa.is_full() or sb.is_full():
        return False, None
    return True, _outside_both(sa, sb, eps)


def _literal_entails(p: Literal, q: Literal, eps: float) -> bool:
    sa, sb = p.subspace, q.subspace
    if p.asserted and q.asserted:
        return sa.is_subset(sb, eps)
    if p.asserted and not q.asserted:
        return sa.intersect(sb, eps).is_zero()
    if not p.asserted and q.asserted:
        return sb.is_full() or sa.is_full()
    return sb.is_subset(sa, eps)


# --- public decision procedures ------------------------------------------

def _truth_batch(p: Proposition, z: np.ndarray, eps: float) -> np.ndarray:
    """Truth of a proposition at each unit column of z, vectorized."""
    if isinstance(p, Literal):
        if p.subspace.is_zero():
            inside = np.zeros(z.shape[1], dtype=bool)
        else:
            b = p.subspace.basis
            residual = z - b @ (b.conj().T @ z)
            inside = np.linalg.norm(residual, axis=0) < eps
        return inside if p.asserted else ~inside
    if isinstance(p, And):
        out = np.ones(z.shape[1], dtype=bool)
        for part in p.parts:
            out &= _truth_batch(part, z, eps)
        return out
    out = np.zeros(z.shape[1], dtype=bool)
    for part in p.parts:
        out |= _truth_batch(part, z, eps)
    return out


def random_witness_search(props, pattern, seed: int = DEFAULT_SEED,
                          trials: int = DEFAULT_TRIALS, eps: float = EPS) -> Witness | None:
    """Sample seeded Haar-like random unit states until one realizes the
    requested truth pattern; None if the budget runs out.  States are
    drawn in batches; the returned witness is the first match in the
    sampled stream, so a fixed seed gives an identical outcome."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    props = tuple(props)
    pattern = tuple(bool(b) for b in pattern)
    if len(props) != len(pattern):
        raise ValueError("props and pattern lengths differ")
    n = ambient_dim_of(props[0])
    for p in props[1:]:
        if ambient_dim_of(p) != n:
            raise DimensionMismatch("propositions live in different dimensions")
    rng = np.random.default_rng(seed)
    remaining = trials
    while remaining > 0:
        m = min(remaining, 512)
        z = rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))
        z /= np.linalg.norm(z, axis=0)
        ok = np.ones(m, dtype=bool)
        for p, want in zip(props, pattern):
            ok &= _truth_batch(p, z, eps) == want
        hits = np.flatnonzero(ok)
        if hits.size:
            return Witness(State(z[:, hits[0]], eps), props, pattern)
        remaining -= m
    return None


def can_both_be_true(p: Proposition, q: Proposition, eps: float = EPS,
                     seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS):
    """(answer, witness): answer is True/False when decided exactly or a
    witness was found, None when undecided (mixed-family compound with no
    witness within the search budget)."""
    _check_same_ambient(p, q)
    fam = _shared_family(p, q)
    if fam is not None:
        for cell in _realizable_cells(fam):
            if _truth_in_cell(p, cell, fam) and _truth_in_cell(q, cell, fam):
                st = _cell_witness(cell, fam, eps)
                return True, Witness(st, (p, q), (True, True))
        return False, None
    if isinstance(p, Literal) and isinstance(q, Literal):
        got, st = _literal_both_true(p, q, eps)
        if got:
            return True, Witness(st, (p, q), (True, True))
        return False, None
    w = random_witness_search((p, q), (True, True), seed, trials, eps)
    if w is not None:
        return True, w
    return None, None


def can_both_be_false(p: Proposition, q: Proposition, eps: float = EPS,
                      seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS):
    """Dual of can_both_be_true: falsity of a proposition is truth of its
    negation."""
    got, w = can_both_be_true(p.negate(), q.negate(), eps, seed, trials)
    if w is not None:
        w = Witness(w.state, (p, q), (False, False))
    return got, w


def entails(p: Proposition, q: Proposition, eps: float = EPS,
            seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS) -> bool | None:
    """Does every state making p true make q true?  Exact for literals and
    single-family compounds; None when only a failed counterexample search
    is available."""
    _check_same_ambient(p, q)
    fam = _shared_family(p, q)
    if fam is not None:
        return all(_truth_in_cell(q, cell, fam)
                   for cell in _realizable_cells(fam)
                   if _truth_in_cell(p, cell, fam))
    if isinstance(p, Literal) and isinstance(q, Literal):
        return _literal_entails(p, q, eps)
    counter = random_witness_search((p, q), (True, False), seed, trials, eps)
    if counter is not None:
        return False
    return None


def classify(p: Proposition, q: Proposition, eps: float = EPS,
             seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS) -> Classification:
    """Classify the opposition relation between two propositions."""
    ct, wt = can_both_be_true(p, q, eps, seed, trials)
    cf, wf = can_both_be_false(p, q, eps, seed, trials)
    witnesses = {}
    if wt is not None:
        witnesses["both_true"] = wt
    if wf is not None:
        witnesses["both_false"] = wf
    if ct is None or cf is None:
        return Classification(Relation.UNDECIDED, witnesses=witnesses)
    if not ct and not cf:
        return Classification(Relation.CONTRADICTORY, witnesses=witnesses)
    if not ct:
        return Classification(Relation.CONTRARY, witnesses=witnesses)
    if not cf:
        return Classification(Relation.SUBCONTRARY, witnesses=witnesses)
    fwd = entails(p, q, eps, seed, trials)
    bwd = entails(q, p, eps, seed, trials)
    if fwd is None or bwd is None:
        return Classification(Relation.UNDECIDED, witnesses=witnesses)
    if fwd and bwd:
        return Classification(Relation.EQUIVALENT, witnesses=witnesses)
    if fwd:
        return Classification(Relation.SUBALTERN, "forward", witnesses)
    if bwd:
        return Classification(Relation.SUBALTERN, "backward", witnesses)
    return Classification(Relation.INDEPENDENT, witnesses=witnesses)


# --- square and hexagon ---------------------------------------------------

SQUARE_POSITIONS = ("A", "E", "I", "O")
HEXAGON_POSITIONS = ("A", "E", "I", "O", "U", "Y")

# the classical hexagon pattern the construction is checked against
_SUB = lambda d: (Relation.SUBALTERN, d)
HEXAGON_PATTERN = {
    ("A", "E"): (Relation.CONTRARY, None),
    ("A", "I"): _SUB("forward"),
    ("A", "O"): (Relation.CONTRADICTORY, None),
    ("A", "U"): _SUB("forward"),
    ("A", "Y"): (Relation.CONTRARY, None),
    ("E", "I"): (Relation.CONTRADICTORY, None),
    ("E", "O"): _SUB("forward"),
    ("E", "U"): _SUB("forward"),
    ("E", "Y"): (Relation.CONTRARY, None),
    ("I", "O"): (Relation.SUBCONTRARY, None),
    ("I", "U"): (Relation.SUBCONTRARY, None),
    ("I", "Y"): _SUB("backward"),
    ("O", "U"): (Relation.SUBCONTRARY, None),
    ("O", "Y"): _SUB("backward"),
    ("U", "Y"): (Relation.CONTRADICTORY, None),
}
SQUARE_PATTERN = {k: v for k, v in HEXAGON_PATTERN.items()
                  if k[0] in SQUARE_POSITIONS[:4] and k[1] in SQUARE_POSITIONS}


@dataclass(frozen=True)
class Polygon:
    """A square or hexagon of opposition: named positions plus the
    classification of every unordered pair, and any deviations from the
    classical pattern."""
    positions: dict
    relations: dict
    deviations: tuple

    @property
    def names(self):
        return tuple(self.positions.keys())


def _build(a: Proposition, e: Proposition, names, pattern, eps, seed, trials) -> Polygon:
    base = classify(a, e, eps, seed, trials)
    if base.relation is not Relation.CONTRARY:
        raise OppositionError(
            f"base pair is {base.describe('A', 'E')}, not Contrary; "
            "cannot place it at the A and E corners")
    positions = {"A": a, "E": e, "I": e.negate(), "O": a.negate()}
    if "U" in names:
        positions["U"] = Or((a, e))
        positions["Y"] = And((positions["I"], positions["O"]))
    relations = {}
    deviations = []
    for i, x in enumerate(names):
        for y in names[i + 1:]:
            c = classify(positions[x], positions[y], eps, seed, trials)
            relations[(x, y)] = c
            want_rel, want_dir = pattern[(x, y)]
            if (c.relation, c.direction) != (want_rel, want_dir):
                deviations.append((x, y, want_rel.value, c.describe(x, y)))
    return Polygon(positions, relations, tuple(deviations))


def build_square(a: Proposition, e: Proposition, eps: float = EPS,
                 seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS) -> Polygon:
    return _build(a, e, SQUARE_POSITIONS, SQUARE_PATTERN, eps, seed, trials)


def build_hexagon(a: Proposition, e: Proposition, eps: float = EPS,
                  seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS) -> Polygon:
    return _build(a, e, HEXAGON_POSITIONS, HEXAGON_PATTERN, eps, seed, trials)
