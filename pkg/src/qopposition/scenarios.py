"""Built-in desk-scale scenarios plus a JSON scenario-file loader.

A scenario bundles named states, observables, orthogonal families,
propositions, and queries into a reproducible unit.  Serialization is
canonical (keys sorted, floats at 17 significant digits) so golden files
are byte-stable.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import lp
from .linalg import EPS, Subspace, gram_schmidt
from .opposition import (DEFAULT_SEED, DEFAULT_TRIALS, build_hexagon,
                         build_square, classify)
from .quantum import (And, Literal, Observable, Or, OrthoFamily, Proposition,
                      State, born, minimal_attribution,
                      paraconsistent_attribution, superpose)

BUILTIN_NAMES = ("spin_half_x", "double_slit", "cat", "three_level", "skewed")


class ScenarioError(Exception):
    pass


@dataclass
class Scenario:
    name: str
    dim: int
    states: dict = field(default_factory=dict)
    observables: dict = field(default_factory=dict)
    families: dict = field(default_factory=dict)
    propositions: dict = field(default_factory=dict)
    queries: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    def resolve_state(self, name: str) -> State:
        if name not in self.states:
            raise ScenarioError(f"unknown state {name!r} (have {sorted(self.states)})")
        return self.states[name]

    def resolve_family(self, name: str) -> OrthoFamily:
        if name not in self.families:
            raise ScenarioError(f"unknown family {name!r} (have {sorted(self.families)})")
        return self.families[name]

    def resolve_proposition(self, text: str) -> Proposition:
        """Resolve a proposition reference: a named proposition or a
        family.member path, either with a leading '!' for negation."""
        text = text.strip()
        negated = text.startswith("!")
        if negated:
            text = text[1:].strip()
        if text in self.propositions:
            p = self.propositions[text]
        elif "." in text:
            fam_name, member = text.split(".", 1)
            fam = self.resolve_family(fam_name)
            if member not in fam:
                raise ScenarioError(
                    f"family {fam_name!r} has no member {member!r} (have {fam.labels})")
            p = Literal(fam.subspace(member), True, fam, member, member)
        else:
            raise ScenarioError(
                f"unknown proposition {text!r} (have {sorted(self.propositions)})")
        return p.negate() if negated else p

    def __eq__(self, other):
        if not isinstance(other, Scenario):
            return NotImplemented
        return serialize(self) == serialize(other)


# --- canonical JSON -------------------------------------------------------

def _canon(obj) -> str:
    if isinstance(obj, dict):
        items = sorted(obj.items())
        return "{" + ",".join(f"{json.dumps(k)}:{_canon(v)}" for k, v in items) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_canon(x) for x in obj) + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        return f"{obj:.17g}"
    if isinstance(obj, (int, str)):
        return json.dumps(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def canonical_json(obj) -> str:
    """Canonical rendering: keys sorted, floats at 17 significant digits."""
    return _canon(obj)


def _vec_out(v) -> list:
    return [[float(x.real), float(x.imag)] for x in np.asarray(v, dtype=complex)]


def _prop_out(p: Proposition):
    if isinstance(p, Literal):
        if p.family is None or p.member is None:
            raise ScenarioError("only family-member propositions are serializable")
        fam_name = getattr(p.family, "_scenario_name", None)
        ref = f"{fam_name}.{p.member}"
        return ref if p.asserted else "!" + ref
    key = "and" if isinstance(p, And) else "or"
    return {key: [_prop_out(x) for x in p.parts]}


def serialize(sc: Scenario) -> str:
    doc = {
        "name": sc.name,
        "dim": sc.dim,
        "states": {n: _vec_out(s.vector) for n, s in sc.states.items()},
        "observables": {n: [_vec_out(row) for row in o.matrix]
                        for n, o in sc.observables.items()},
        "families": {n: {"members": [[lab, [_vec_out(f.members[i][1].basis[:, j])
                                             for j in range(f.members[i][1].dim)]]
                                     for i, (lab, _) in enumerate(f.members)]}
                     for n, f in sc.families.items()},
        "propositions": {n: _prop_out(p) for n, p in sc.propositions.items()},
        "queries": sc.queries,
    }
    return canonical_json(doc)


# --- loading --------------------------------------------------------------

def _vec_in(raw, dim: int, what: str) -> np.ndarray:
    if not isinstance(raw, list) or len(raw) != dim:
        raise ScenarioError(f"{what}: expected {dim} components of [re, im]")
    comps = []
    for pair in raw:
        if not (isinstance(pair, list) and len(pair) == 2):
            raise ScenarioError(f"{what}: components must be [re, im] pairs")
        comps.append(complex(float(pair[0]), float(pair[1])))
    return np.array(comps, dtype=complex)


def load_scenario(text: str, eps: float = EPS) -> Scenario:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"parse error at line {exc.lineno}, column {exc.colno}: "
                            f"{exc.msg}") from None
    if not isinstance(doc, dict):
        raise ScenarioError("scenario document must be a JSON object")
    for key in ("name", "dim"):
        if key not in doc:
            raise ScenarioError(f"missing top-level key {key!r}")
    dim = int(doc["dim"])
    sc = Scenario(name=str(doc["name"]), dim=dim)

    for sname, raw in sorted(doc.get("states", {}).items()):
        v = _vec_in(raw, dim, f"state {sname!r}")
        n = float(np.linalg.norm(v))
        if n < 1e-6:
            raise ScenarioError(f"state {sname!r} is (near-)zero and cannot be normalized")
        if abs(n - 1.0) <= eps:
            # already unit within tolerance: keep the components bit-exact
            sc.states[sname] = State(v, eps)
        else:
            sc.warnings.append(f"state {sname!r} renormalized (norm was {n:.6g})")
            sc.states[sname] = State(v / n, eps)

    for oname, rows in sorted(doc.get("observables", {}).items()):
        if not isinstance(rows, list) or len(rows) != dim:
            raise ScenarioError(f"observable {oname!r}: expected {dim} rows")
        m = np.array([_vec_in(r, dim, f"observable {oname!r} row") for r in rows])
        sc.observables[oname] = Observable(m, oname)

    for fname, raw_fam in sorted(doc.get("families", {}).items()):
        if not (isinstance(raw_fam, dict) and "members" in raw_fam):
            raise ScenarioError(f"family {fname!r}: expected a 'members' list")
        members = []
        for entry in raw_fam["members"]:
            if not (isinstance(entry, list) and len(entry) == 2):
                raise ScenarioError(f"family {fname!r}: members are [label, vectors] pairs")
            label, vecs = entry
            if not vecs:
                members.append((str(label), Subspace.zero(dim)))
                continue
            basis = [_vec_in(v, dim, f"family {fname!r} member {label!r}") for v in vecs]
            mat = np.column_stack(basis)
            gram = mat.conj().T @ mat
            if float(np.max(np.abs(gram - np.eye(len(basis))))) <= eps:
                # already orthonormal: keep the components bit-exact so
                # serialize(load(text)) reproduces text byte for byte
                sub = Subspace(dim, mat, eps)
            else:
                sub = gram_schmidt(basis, eps)
            members.append((str(label), sub))
        fam = OrthoFamily(dim, members, eps)
        fam._scenario_name = fname
        sc.families[fname] = fam

    for pname, raw in sorted(doc.get("propositions", {}).items()):
        sc.propositions[pname] = _parse_prop(raw, sc, pname)

    queries = doc.get("queries", [])
    if not isinstance(queries, list):
        raise ScenarioError("'queries' must be a list")
    sc.queries = queries
    return sc


def _parse_prop(raw, sc: Scenario, pname: str) -> Proposition:
    if isinstance(raw, str):
        try:
            p = sc.resolve_proposition(raw)
        except ScenarioError as exc:
            raise ScenarioError(f"proposition {pname!r}: {exc}") from None
        if isinstance(p, Literal):
            return Literal(p.subspace, p.asserted, p.family, p.member, pname)
        return p
    if isinstance(raw, dict) and len(raw) == 1:
        key, parts = next(iter(raw.items()))
        if key in ("and", "or") and isinstance(parts, list) and parts:
            sub = tuple(_parse_prop(x, sc, pname) for x in parts)
            return And(sub) if key == "and" else Or(sub)
    raise ScenarioError(f"proposition {pname!r}: expected 'family.member', "
                        "'!family.member', or a {'and'|'or': [...]} object")


def load_file(path: str, eps: float = EPS) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        return load_scenario(fh.read(), eps)


# --- builtins -------------------------------------------------------------

def _line(vec) -> Subspace:
    return gram_schmidt([np.asarray(vec, dtype=complex)])


def _family(sc: Scenario, name: str, members) -> OrthoFamily:
    fam = OrthoFamily(sc.dim, members)
    fam._scenario_name = name
    sc.families[name] = fam
    return fam


def _literal(sc: Scenario, pname: str, fam: OrthoFamily, member: str) -> None:
    sc.propositions[pname] = Literal(fam.subspace(member), True, fam, member, pname)


def builtin(name: str) -> Scenario:
    """One of the bundled scenarios; see BUILTIN_NAMES."""
    if name not in BUILTIN_NAMES:
        raise ScenarioError(f"unknown builtin {name!r} (have {BUILTIN_NAMES})")
    return _BUILDERS[name]()


def _spin_states(sc: Scenario) -> None:
    r = 1.0 / math.sqrt(2.0)
    sc.states["up_z"] = State([1, 0])
    sc.states["down_z"] = State([0, 1])
    sc.states["up_x"] = State([r, r])
    sc.states["down_x"] = State([r, -r])


def _x_family(sc: Scenario) -> OrthoFamily:
    r = 1.0 / math.sqrt(2.0)
    return _family(sc, "x", [("up_x", _line([r, r])), ("down_x", _line([r, -r]))])


def _build_spin_half_x() -> Scenario:
    sc = Scenario("spin_half_x", 2)
    _spin_states(sc)
    sc.observables["X"] = Observable(np.array([[0, 1], [1, 0]], dtype=complex), "X")
    fam = _x_family(sc)
    _literal(sc, "u_x", fam, "up_x")
    _literal(sc, "d_x", fam, "down_x")
    sc.queries = [
        {"op": "classify", "args": {"p": "u_x", "q": "d_x"}},
        {"op": "classify", "args": {"p": "u_x", "q": "!u_x"}},
        {"op": "classify", "args": {"p": "!u_x", "q": "!d_x"}},
        {"op": "hexagon", "args": {"a": "u_x", "e": "d_x"}},
        {"op": "attribute", "args": {"state": "up_z", "family": "x",
                                     "semantics": "minimal"}},
        {"op": "attribute", "args": {"state": "up_z", "family": "x",
                                     "semantics": "paraconsistent"}},
        {"op": "prob", "args": {"state": "up_z", "family": "x"}},
    ]
    return sc


def _build_double_slit() -> Scenario:
    sc = Scenario("double_slit", 2)
    r = 1.0 / math.sqrt(2.0)
    sc.states["psi_1"] = State([1, 0])
    sc.states["psi_2"] = State([0, 1])
    # equal weights are the symmetric default; a scenario file can vary them
    sc.states["Psi"] = State([r, r])
    fam = _family(sc, "slit", [("slit_1", _line([1, 0])),
                               ("slit_2", _line([0, 1]))])
    _literal(sc, "went_1", fam, "slit_1")
    _literal(sc, "went_2", fam, "slit_2")
    sc.queries = [
        {"op": "classify", "args": {"p": "went_1", "q": "went_2"}},
        {"op": "hexagon", "args": {"a": "went_1", "e": "went_2"}},
        {"op": "attribute", "args": {"state": "Psi", "family": "slit",
                                     "semantics": "paraconsistent"}},
        {"op": "lp_postulate", "args": {"labels": ["s1", "s2"], "mode": "lp"}},
    ]
    return sc


def _build_cat() -> Scenario:
    sc = Scenario("cat", 2)
    r = 1.0 / math.sqrt(2.0)
    sc.states["C_d"] = State([1, 0])
    sc.states["C_a"] = State([0, 1])
    sc.states["Phi"] = State([r, r])
    fam = _family(sc, "fate", [("dead", _line([1, 0])), ("alive", _line([0, 1]))])
    _literal(sc, "dead", fam, "dead")
    _literal(sc, "alive", fam, "alive")
    sc.queries = [
        {"op": "classify", "args": {"p": "dead", "q": "alive"}},
        {"op": "hexagon", "args": {"a": "dead", "e": "alive"}},
        {"op": "attribute", "args": {"state": "Phi", "family": "fate",
                                     "semantics": "paraconsistent"}},
    ]
    return sc


def _build_three_level() -> Scenario:
    sc = Scenario("three_level", 3)
    r = 1.0 / math.sqrt(3.0)
    sc.states["a"] = State([1, 0, 0])
    sc.states["b"] = State([0, 1, 0])
    sc.states["c"] = State([0, 0, 1])
    sc.states["abc"] = State([r, r, r])
    fam = _family(sc, "level", [("a", _line([1, 0, 0])),
                                ("b", _line([0, 1, 0])),
                                ("c", _line([0, 0, 1]))])
    for lab in ("a", "b", "c"):
        _literal(sc, f"p_{lab}", fam, lab)
    sc.queries = [
        {"op": "classify", "args": {"p": "p_a", "q": "p_b"}},
        {"op": "hexagon", "args": {"a": "p_a", "e": "p_b"}},
        {"op": "lp_chain", "args": {"labels": ["a", "b", "c"],
                                    "conclude": "p_a <-> !p_a",
                                    "mode": "classical"}},
        {"op": "lp_chain", "args": {"labels": ["a", "b", "c"], "mode": "lp"}},
    ]
    return sc


def _build_skewed() -> Scenario:
    sc = Scenario("skewed", 2)
    _spin_states(sc)
    fam = _x_family(sc)
    _literal(sc, "u_x", fam, "up_x")
    _literal(sc, "d_x", fam, "down_x")
    sc.states["skewed"] = superpose([2.0 / math.sqrt(7.0), math.sqrt(3.0 / 7.0)],
                                    [sc.states["up_x"], sc.states["down_x"]])
    sc.queries = [
        {"op": "prob", "args": {"state": "skewed", "family": "x"}},
        {"op": "attribute", "args": {"state": "skewed", "family": "x",
                                     "semantics": "minimal"}},
        {"op": "attribute", "args": {"state": "skewed", "family": "x",
                                     "semantics": "paraconsistent"}},
    ]
    return sc


_BUILDERS = {
    "spin_half_x": _build_spin_half_x,
    "double_slit": _build_double_slit,
    "cat": _build_cat,
    "three_level": _build_three_level,
    "skewed": _build_skewed,
}


# --- query execution ------------------------------------------------------

def run_query(sc: Scenario, query: dict, eps: float = EPS,
              seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS) -> dict:
    """Execute one scenario query; returns a JSON-compatible result dict."""
    if not (isinstance(query, dict) and "op" in query):
        raise ScenarioError(f"malformed query {query!r}")
    op = query["op"]
    args = query.get("args", {})
    out = {"op": op, "args": args}

    if op == "classify":
        p = sc.resolve_proposition(args["p"])
        q = sc.resolve_proposition(args["q"])
        c = classify(p, q, eps, seed, trials)
        out["relation"] = c.describe(args["p"], args["q"])
        out["witnesses"] = {k: _vec_out(w.state.vector)
                            for k, w in sorted(c.witnesses.items())}
    elif op in ("square", "hexagon"):
        a = sc.resolve_proposition(args["a"])
        e = sc.resolve_proposition(args["e"])
        build = build_square if op == "square" else build_hexagon
        poly = build(a, e, eps, seed, trials)
        out["relations"] = {f"{x}-{y}": c.describe(x, y)
                            for (x, y), c in sorted(poly.relations.items())}
        out["deviations"] = [list(d) for d in poly.deviations]
    elif op == "prob":
        psi = sc.resolve_state(args["state"])
        fam = sc.resolve_family(args["family"])
        out["probabilities"] = {lab: born(psi, sub) for lab, sub in fam.members}
    elif op == "attribute":
        psi = sc.resolve_state(args["state"])
        fam = sc.resolve_family(args["family"])
        semantics = args.get("semantics", "minimal")
        if semantics == "minimal":
            attributed = minimal_attribution(psi, fam, eps)
        elif semantics == "paraconsistent":
            attributed = paraconsistent_attribution(psi, fam, eps)
        else:
            raise ScenarioError(f"unknown semantics {semantics!r}")
        out["semantics"] = semantics
        out["attributed"] = sorted(attributed)
        out["weights"] = {lab: born(psi, sub) for lab, sub in fam.members}
    elif op in ("lp_postulate", "lp_chain"):
        labels = [str(x) for x in args["labels"]]
        mode = args.get("mode", "lp")
        make = lp.postulate_of_contradiction if op == "lp_postulate" else lp.equivalence_chain
        constraints = make(labels)
        out["constraints"] = [str(f) for f in constraints]
        out["mode"] = mode
        model = lp.satisfiable(constraints, mode)
        out["satisfiable"] = model is not None
        if model is not None:
            out["model"] = {k: str(v) for k, v in sorted(model.items())}
        if "conclude" in args:
            conclusion = lp.parse_formula(args["conclude"])
            out["conclusion"] = str(conclusion)
            out["consequence"] = lp.consequence(constraints, conclusion, mode)
    else:
        raise ScenarioError(f"unknown query op {op!r}")
    return out


def run_all(sc: Scenario, eps: float = EPS, seed: int = DEFAULT_SEED,
            trials: int = DEFAULT_TRIALS) -> list:
    return [run_query(sc, q, eps, seed, trials) for q in sc.queries]
