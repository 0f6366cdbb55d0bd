import itertools

import pytest

from qopposition.lp import (CLASSICAL, LP, TV, AndF, Atom, Iff, Imp, LogicError,
                            Not, OrF, ParseError, atoms, consequence,
                            equivalence_chain, eval3, models,
                            parse_formula, postulate_of_contradiction,
                            satisfiable)


def classical_eval(f, v):
    """Independent two-valued oracle using Python booleans."""
    if isinstance(f, Atom):
        return v[f.name]
    if isinstance(f, Not):
        return not classical_eval(f.arg, v)
    a, b = classical_eval(f.left, v), classical_eval(f.right, v)
    if isinstance(f, AndF):
        return a and b
    if isinstance(f, OrF):
        return a or b
    if isinstance(f, Imp):
        return (not a) or b
    return a == b


def random_formula(rng, names, depth):
    if depth == 0 or rng.random() < 0.3:
        return Atom(names[rng.randrange(len(names))])
    kind = rng.randrange(5)
    if kind == 0:
        return Not(random_formula(rng, names, depth - 1))
    ctor = (AndF, OrF, Imp, Iff)[kind - 1]
    return ctor(random_formula(rng, names, depth - 1),
                random_formula(rng, names, depth - 1))


class TestEval3:
    def test_contradiction_designated_at_b(self):
        k = Atom("k")
        assert eval3(AndF(k, Not(k)), {"k": TV.B}) is TV.B
        assert eval3(AndF(k, Not(k)), {"k": TV.B}).designated

    def test_contradiction_false_classically(self):
        k = Atom("k")
        assert eval3(AndF(k, Not(k)), {"k": TV.T}) is TV.F

    def test_iff_classical_case(self):
        f = Iff(Atom("a"), Not(Atom("b")))
        assert eval3(f, {"a": TV.T, "b": TV.F}) is TV.T

    def test_negation_involution_fixing_b(self):
        assert TV.T.neg() is TV.F
        assert TV.F.neg() is TV.T
        assert TV.B.neg() is TV.B

    def test_and_or_are_min_max(self):
        # exhaustive 9-pair table
        a, b = Atom("a"), Atom("b")
        for x, y in itertools.product(TV, TV):
            v = {"a": x, "b": y}
            assert eval3(AndF(a, b), v) is TV(min(x, y))
            assert eval3(OrF(a, b), v) is TV(max(x, y))

    def test_missing_atom(self):
        with pytest.raises(LogicError):
            eval3(Atom("a"), {})

    def test_classical_restriction_agrees(self):
        import random
        rng = random.Random(12345)
        names = ["p", "q", "r", "s"]
        for _ in range(200):
            f = random_formula(rng, names, 4)
            for combo in itertools.product([TV.F, TV.T], repeat=4):
                v = dict(zip(names, combo))
                want = classical_eval(f, {k: val is TV.T for k, val in v.items()})
                assert (eval3(f, v) is TV.T) == want


class TestSatisfiable:
    def test_postulate_classically_unsat(self):
        assert satisfiable(postulate_of_contradiction(["s1", "s2"]), CLASSICAL) is None

    def test_postulate_lp_sat_forces_b(self):
        got = satisfiable(postulate_of_contradiction(["s1", "s2"]), LP)
        assert got == {"K_s1": TV.B, "K_s2": TV.B}

    def test_empty_constraints(self):
        assert satisfiable([], CLASSICAL) == {}

    def test_first_model_deterministic_order(self):
        # atoms sorted, values cycling F < B < T: first model of {p | q}
        # has p=F, q=B under LP
        got = satisfiable([OrF(Atom("p"), Atom("q"))], LP)
        assert got == {"p": TV.F, "q": TV.B}

    def test_atom_budget(self):
        constraints = [Atom(f"a{i}") for i in range(21)]
        with pytest.raises(LogicError):
            satisfiable(constraints, LP)


class TestModels:
    def test_contradiction_models_lp(self):
        k = Atom("K1")
        got = models([k, Not(k)], LP)
        assert got == [{"K1": TV.B}]

    def test_single_atom_classical(self):
        assert models([Atom("p")], CLASSICAL) == [{"p": TV.T}]

    def test_explicit_contradiction_classical(self):
        p = Atom("p")
        assert models([AndF(p, Not(p))], CLASSICAL) == []

    def test_postulate_lp_all_models_assign_b(self):
        got = models(postulate_of_contradiction(["s1", "s2"]), LP)
        assert got == [{"K_s1": TV.B, "K_s2": TV.B}]


class TestConsequence:
    def test_chain_classical_consequence_vacuous(self):
        premises = equivalence_chain(["a", "b", "c"])
        conclusion = Iff(Atom("p_a"), Not(Atom("p_a")))
        assert satisfiable(premises, CLASSICAL) is None
        assert consequence(premises, conclusion, CLASSICAL) is True

    def test_chain_lp_verdict_matches_enumeration(self):
        premises = equivalence_chain(["a", "b", "c"])
        conclusion = Iff(Atom("p_a"), Not(Atom("p_a")))
        names = sorted(set().union(*[atoms(f) for f in premises]))
        verdict = True
        for combo in itertools.product([TV.F, TV.B, TV.T], repeat=len(names)):
            v = dict(zip(names, combo))
            if all(eval3(f, v).designated for f in premises):
                if not eval3(conclusion, v).designated:
                    verdict = False
        assert consequence(premises, conclusion, LP) is verdict
        # the all-B valuation designates premises and conclusion alike
        all_b = {n: TV.B for n in names}
        assert all(eval3(f, all_b).designated for f in premises)
        assert eval3(conclusion, all_b).designated

    def test_excluded_middle_classical(self):
        p = Atom("p")
        assert consequence([], OrF(p, Not(p)), CLASSICAL) is True

    def test_lp_has_no_explosion(self):
        p, q = Atom("p"), Atom("q")
        assert consequence([p, Not(p)], q, LP) is False

    def test_classical_explosion(self):
        p, q = Atom("p"), Atom("q")
        assert consequence([p, Not(p)], q, CLASSICAL) is True


class TestGenerators:
    def test_postulate_two_components(self):
        got = [str(f) for f in postulate_of_contradiction(["s1", "s2"])]
        assert got == ["K_s1", "!K_s1", "K_s2", "!K_s2"]

    def test_postulate_single_component(self):
        assert len(postulate_of_contradiction(["s1"])) == 2

    def test_postulate_three_components(self):
        assert len(postulate_of_contradiction(["s1", "s2", "s3"])) == 6

    def test_postulate_duplicates_rejected(self):
        with pytest.raises(LogicError):
            postulate_of_contradiction(["s", "s"])

    def test_chain_three_labels(self):
        got = [str(f) for f in equivalence_chain(["a", "b", "c"])]
        assert got == ["(p_a <-> !p_b)", "(p_a <-> !p_c)", "(p_b <-> !p_c)"]

    def test_chain_two_labels(self):
        assert len(equivalence_chain(["a", "b"])) == 1

    def test_chain_four_labels(self):
        assert len(equivalence_chain(["a", "b", "c", "d"])) == 6

    def test_chain_needs_two(self):
        with pytest.raises(LogicError):
            equivalence_chain(["a"])

    def test_chain_satisfiability_by_size(self):
        # classically satisfiable for n = 2, unsatisfiable for n >= 3
        labels = ["a", "b", "c", "d", "e"]
        assert satisfiable(equivalence_chain(labels[:2]), CLASSICAL) is not None
        for n in (3, 4, 5):
            assert satisfiable(equivalence_chain(labels[:n]), CLASSICAL) is None


class TestParser:
    def test_atoms_and_connectives(self):
        assert parse_formula("p") == Atom("p")
        assert parse_formula("!p") == Not(Atom("p"))
        assert parse_formula("p & q") == AndF(Atom("p"), Atom("q"))
        assert parse_formula("p | q") == OrF(Atom("p"), Atom("q"))
        assert parse_formula("p -> q") == Imp(Atom("p"), Atom("q"))
        assert parse_formula("p <-> q") == Iff(Atom("p"), Atom("q"))

    def test_precedence(self):
        # ! > & > | > -> > <->
        got = parse_formula("!a & b | c -> d <-> e")
        assert got == Iff(Imp(OrF(AndF(Not(Atom("a")), Atom("b")), Atom("c")),
                              Atom("d")),
                          Atom("e"))

    def test_imp_right_associative(self):
        assert parse_formula("a -> b -> c") == Imp(Atom("a"), Imp(Atom("b"), Atom("c")))

    def test_parentheses(self):
        assert parse_formula("(a | b) & c") == AndF(OrF(Atom("a"), Atom("b")), Atom("c"))

    def test_whitespace_insensitive(self):
        assert parse_formula("p_a<->!p_a") == parse_formula("  p_a  <->  !  p_a ")

    def test_parse_error_reports_position(self):
        with pytest.raises(ParseError) as exc:
            parse_formula("p & ")
        assert "column" in str(exc.value)

    def test_trailing_garbage_rejected(self):
        with pytest.raises(ParseError):
            parse_formula("p q")
