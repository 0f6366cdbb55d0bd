"""Three-valued paraconsistent propositional engine (logic of paradox),
with classical two-valued evaluation as the comparison mode.

Truth values are ordered F < B < T with designated set {T, B}; negation
swaps T and F and fixes B; conjunction and disjunction are min and max in
that order.  Satisfiability and consequence are decided by exhaustive
enumeration of valuations (the atom budget keeps this at desk scale).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

ATOM_BUDGET = 20

CLASSICAL = "classical"
LP = "lp"
MODES = (CLASSICAL, LP)


class LogicError(Exception):
    pass


class TV(enum.IntEnum):
    """Truth value: F < B < T; T and B are designated."""
    F = 0
    B = 1
    T = 2

    @property
    def designated(self) -> bool:
        return self is not TV.F

    def neg(self) -> "TV":
        return TV(2 - self.value)

    def __str__(self):
        return self.name


# --- formulas -------------------------------------------------------------

@dataclass(frozen=True)
class Atom:
    name: str

    def __post_init__(self):
        if not self.name:
            raise LogicError("atom name must be nonempty")

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Not:
    arg: "Formula"

    def __str__(self):
        return f"!{_wrap(self.arg)}"


@dataclass(frozen=True)
class BinOp:
    left: "Formula"
    right: "Formula"

    SYMBOL = "?"

    def __str__(self):
        return f"({self.left} {self.SYMBOL} {self.right})"


class AndF(BinOp):
    SYMBOL = "&"


class OrF(BinOp):
    SYMBOL = "|"


class Imp(BinOp):
    SYMBOL = "->"


class Iff(BinOp):
    SYMBOL = "<->"


Formula = Atom | Not | AndF | OrF | Imp | Iff


def atoms(f: Formula) -> set:
    if isinstance(f, Atom):
        return {f.name}
    if isinstance(f, Not):
        return atoms(f.arg)
    return atoms(f.left) | atoms(f.right)


def eval3(f: Formula, valuation: dict) -> TV:
    """Evaluate under a (total) valuation.  Implication is material
    (!a | b); the biconditional is the conjunction of both implications."""
    if isinstance(f, Atom):
        try:
            return valuation[f.name]
        except KeyError:
            raise LogicError(f"valuation misses atom {f.name!r}") from None
    if isinstance(f, Not):
        return eval3(f.arg, valuation).neg()
    a, b = eval3(f.left, valuation), eval3(f.right, valuation)
    if isinstance(f, AndF):
        return min(a, b)
    if isinstance(f, OrF):
        return max(a, b)
    if isinstance(f, Imp):
        return max(a.neg(), b)
    if isinstance(f, Iff):
        return min(max(a.neg(), b), max(b.neg(), a))
    raise TypeError(f"not a formula: {f!r}")


def _valuations(names, mode):
    """All valuations over sorted atom names, values cycling F < (B) < T,
    last atom fastest.  Deterministic enumeration order."""
    values = (TV.F, TV.T) if mode == CLASSICAL else (TV.F, TV.B, TV.T)
    for combo in itertools.product(values, repeat=len(names)):
        yield dict(zip(names, combo))


def _checked_atoms(formulas, mode) -> list:
    if mode not in MODES:
        raise LogicError(f"unknown mode {mode!r} (expected one of {MODES})")
    names = sorted(set().union(*[atoms(f) for f in formulas]) if formulas else set())
    if len(names) > ATOM_BUDGET:
        raise LogicError(f"{len(names)} atoms exceed the enumeration budget {ATOM_BUDGET}")
    return names


def satisfiable(constraints, mode: str = LP) -> dict | None:
    """First valuation (in enumeration order) designating every constraint,
    or None."""
    constraints = list(constraints)
    names = _checked_atoms(constraints, mode)
    for v in _valuations(names, mode):
        if all(eval3(f, v).designated for f in constraints):
            return v
    return None


def models(constraints, mode: str = LP) -> list:
    """All valuations designating every constraint, in enumeration order."""
    constraints = list(constraints)
    names = _checked_atoms(constraints, mode)
    return [v for v in _valuations(names, mode)
            if all(eval3(f, v).designated for f in constraints)]


def consequence(premises, conclusion: Formula, mode: str = LP) -> bool:
    """Designation-preserving consequence: every valuation designating all
    premises designates the conclusion."""
    premises = list(premises)
    names = _checked_atoms(premises + [conclusion], mode)
    for v in _valuations(names, mode):
        if all(eval3(f, v).designated for f in premises):
            if not eval3(conclusion, v).designated:
                return False
    return True


def postulate_of_contradiction(labels) -> list:
    """For each superposition component s, the pair K_s and !K_s."""
    labels = [str(x) for x in labels]
    if not labels:
        raise LogicError("at least one component label is required")
    if len(set(labels)) != len(labels):
        raise LogicError(f"duplicate component labels: {labels}")
    out = []
    for lab in labels:
        k = Atom(f"K_{lab}")
        out.extend([k, Not(k)])
    return out


def equivalence_chain(labels) -> list:
    """The biconditional p_i <-> !p_j for every unordered pair of distinct
    component labels."""
    labels = [str(x) for x in labels]
    if len(labels) < 2:
        raise LogicError("the equivalence chain needs at least two labels")
    if len(set(labels)) != len(labels):
        raise LogicError(f"duplicate component labels: {labels}")
    out = []
    for i, a in enumerate(labels):
        for b in labels[i + 1:]:
            out.append(Iff(Atom(f"p_{a}"), Not(Atom(f"p_{b}"))))
    return out


# --- concrete syntax ------------------------------------------------------
#
# atoms are identifiers; connectives ! & | -> <->, parentheses, whitespace
# insensitive; precedence ! > & > | > -> > <->, arrows right-associative.

class ParseError(LogicError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at column {position + 1})")
        self.position = position


def _wrap(f: Formula) -> str:
    return str(f) if isinstance(f, (Atom, Not)) else f"({f})"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s: str) -> bool:
        self.skip_ws()
        return self.text.startswith(s, self.pos)

    def eat(self, s: str) -> bool:
        if self.peek(s):
            self.pos += len(s)
            return True
        return False

    def parse(self) -> Formula:
        f = self.iff()
        self.skip_ws()
        if self.pos != len(self.text):
            raise ParseError(f"unexpected input {self.text[self.pos:]!r}", self.pos)
        return f

    def iff(self) -> Formula:
        left = self.imp()
        if self.eat("<->"):
            return Iff(left, self.iff())
        return left

    def imp(self) -> Formula:
        left = self.disj()
        # careful: '->' must not swallow the '-' of a '<->' (handled by
        # ordering: iff() consumes '<->' before imp() sees the tail)
        if self.peek("->"):
            self.eat("->")
            return Imp(left, self.imp())
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.eat("|"):
            f = OrF(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.eat("&"):
            f = AndF(f, self.unary())
        return f

    def unary(self) -> Formula:
        if self.eat("!"):
            return Not(self.unary())
        if self.eat("("):
            f = self.iff()
            if not self.eat(")"):
                raise ParseError("expected ')'", self.pos)
            return f
        return self.atom()

    def atom(self) -> Formula:
        self.skip_ws()
        start = self.pos
        while (self.pos < len(self.text)
               and (self.text[self.pos].isalnum() or self.text[self.pos] == "_")):
            self.pos += 1
        if self.pos == start:
            found = self.text[start:start + 1] or "end of input"
            raise ParseError(f"expected an atom, found {found!r}", start)
        return Atom(self.text[start:self.pos])


def parse_formula(text: str) -> Formula:
    """Parse the CLI formula syntax into a formula tree."""
    return _Parser(text).parse()
