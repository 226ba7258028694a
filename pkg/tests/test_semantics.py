import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from soritica.formulas import (
    And,
    Atom,
    Iff,
    Implies,
    Index,
    Not,
    Or,
    PropVar,
    parse_formula,
)
from soritica.semantics import (
    FALSE,
    HALF,
    TRUE,
    BoundExceeded,
    EmptyFamily,
    SuperVerdict,
    UnboundAtom,
    eval_classical,
    eval_fuzzy,
    eval_k3,
    eval_super,
    is_tautology_k3,
    kleene_tables,
    quasi_tautology_k3,
)

F = Fraction

P, Q = PropVar("p"), PropVar("q")


class TestKleene:
    # rows straight from the strong-connective tables
    TABLE = [
        # (p, q, or, and, implies, iff)
        (TRUE, TRUE, TRUE, TRUE, TRUE, TRUE),
        (TRUE, FALSE, TRUE, FALSE, FALSE, FALSE),
        (TRUE, HALF, TRUE, HALF, HALF, HALF),
        (FALSE, TRUE, TRUE, FALSE, TRUE, FALSE),
        (FALSE, FALSE, FALSE, FALSE, TRUE, TRUE),
        (FALSE, HALF, HALF, FALSE, TRUE, HALF),
        (HALF, TRUE, TRUE, HALF, TRUE, HALF),
        (HALF, FALSE, HALF, FALSE, HALF, HALF),
        (HALF, HALF, HALF, HALF, HALF, HALF),
    ]

    @pytest.mark.parametrize("p,q,v_or,v_and,v_imp,v_iff", TABLE)
    def test_binary_tables(self, p, q, v_or, v_and, v_imp, v_iff):
        env = {"p": p, "q": q}
        assert eval_k3(Or(P, Q), propvars=env) == v_or
        assert eval_k3(And(P, Q), propvars=env) == v_and
        assert eval_k3(Implies(P, Q), propvars=env) == v_imp
        assert eval_k3(Iff(P, Q), propvars=env) == v_iff

    @pytest.mark.parametrize("p,expected", [(TRUE, FALSE), (FALSE, TRUE), (HALF, HALF)])
    def test_negation_table(self, p, expected):
        assert eval_k3(Not(P), propvars={"p": p}) == expected

    def test_excluded_middle_indefinite(self):
        assert eval_k3(Or(P, Not(P)), propvars={"p": HALF}) == HALF

    def test_quantifiers(self):
        formula = parse_formula("forall n in 1..3. S(n)")
        assert eval_k3(formula, {("S", 1): TRUE, ("S", 2): TRUE, ("S", 3): TRUE}) == TRUE
        assert eval_k3(formula, {("S", 1): TRUE, ("S", 2): HALF, ("S", 3): TRUE}) == HALF
        assert eval_k3(formula, {("S", 1): TRUE, ("S", 2): HALF, ("S", 3): FALSE}) == FALSE
        exists = parse_formula("exists n in 1..3. S(n)")
        assert eval_k3(exists, {("S", 1): FALSE, ("S", 2): HALF, ("S", 3): FALSE}) == HALF

    def test_unbound(self):
        with pytest.raises(UnboundAtom):
            eval_k3(P)

    def test_rejects_degrees(self):
        with pytest.raises(ValueError):
            eval_k3(P, propvars={"p": F(1, 3)})


class TestTautology:
    def test_excluded_middle(self):
        formula = Or(P, Not(P))
        assert not is_tautology_k3(formula)
        assert quasi_tautology_k3(formula)

    def test_identity_implication(self):
        # oracle: enumerate the 3 assignments directly
        values = [max(1 - v, v) for v in (TRUE, FALSE, HALF)]
        assert all(v != FALSE for v in values)
        assert quasi_tautology_k3(Implies(P, P))
        assert not is_tautology_k3(Implies(P, P))

    def test_contradiction_not_quasi(self):
        assert not quasi_tautology_k3(And(P, Not(P)))

    def test_bound(self):
        formula = PropVar("x0")
        for i in range(1, 13):
            formula = And(formula, PropVar(f"x{i}"))
        with pytest.raises(BoundExceeded):
            is_tautology_k3(formula)


def linear_membership(pred: str, n: int) -> Fraction:
    return F(100 - n, 99)


class TestFuzzy:
    def test_boundary(self):
        assert eval_fuzzy(Atom("S", Index(None, 1)), linear_membership) == 1

    def test_midpoint(self):
        assert eval_fuzzy(Atom("S", Index(None, 50)), linear_membership) == F(50, 99)

    def test_step_implication_near_maximal(self):
        formula = parse_formula("S(1) -> S(2)")
        assert eval_fuzzy(formula, linear_membership) == F(98, 99)

    def test_quantifier_is_min(self):
        # min over n of max((n-1)/99, (99-n)/99); tightest at the midpoint
        formula = parse_formula("forall n in 1..99. S(n) -> S(n+1)")
        assert eval_fuzzy(formula, linear_membership) == F(49, 99)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            eval_fuzzy(Atom("S", Index(None, 1)), lambda p, n: F(3, 2))


class TestClassical:
    def test_cutoff(self):
        atom = Atom("S", Index(None, 4))
        assert eval_classical(atom, cutoff=5)
        assert not eval_classical(Atom("S", Index(None, 5)), cutoff=5)

    def test_sharp_boundary_conjunction(self):
        formula = parse_formula("S(4) & ~S(5)")
        assert eval_classical(formula, cutoff=5)

    def test_induction_step_fails(self):
        formula = parse_formula("forall n in 1..9. S(n) -> S(n+1)")
        assert not eval_classical(formula, cutoff=5)
        # counterexample at n=4
        assert not eval_classical(parse_formula("S(4) -> S(5)"), cutoff=5)


class TestSuper:
    FAMILY = (2, 3)

    def test_supertrue(self):
        assert (
            eval_super(Atom("S", Index(None, 1)), self.FAMILY)
            is SuperVerdict.SUPERTRUE
        )

    def test_indeterminate(self):
        assert (
            eval_super(Atom("S", Index(None, 2)), self.FAMILY)
            is SuperVerdict.INDETERMINATE
        )

    def test_tautology_instance_supertrue(self):
        formula = parse_formula("S(2) | ~S(2)")
        assert eval_super(formula, self.FAMILY) is SuperVerdict.SUPERTRUE

    def test_not_truth_functional(self):
        # same component verdict patterns, different compound verdicts
        a = parse_formula("S(2) | ~S(2)")
        b = parse_formula("S(2) | S(2)")
        parts = Atom("S", Index(None, 2)), Not(Atom("S", Index(None, 2)))
        assert all(
            eval_super(p, self.FAMILY) is SuperVerdict.INDETERMINATE
            for p in parts
        )
        assert eval_super(a, self.FAMILY) is SuperVerdict.SUPERTRUE
        assert eval_super(b, self.FAMILY) is SuperVerdict.INDETERMINATE

    def test_sharp_boundary_formula(self):
        family = range(2, 7)
        exists = parse_formula("exists n in 1..9. S(n) & ~S(n+1)")
        assert eval_super(exists, family) is SuperVerdict.SUPERTRUE
        for n in range(1, 10):
            instance = parse_formula(f"S({n}) & ~S({n + 1})")
            assert eval_super(instance, family) is not SuperVerdict.SUPERTRUE

    def test_empty_family(self):
        with pytest.raises(EmptyFamily):
            eval_super(P, [], propvars={"p": True})


formulas = st.recursive(
    st.sampled_from([PropVar(f"p{i}") for i in range(6)]),
    lambda children: st.one_of(
        st.builds(Not, children),
        st.builds(And, children, children),
        st.builds(Or, children, children),
        st.builds(Implies, children, children),
        st.builds(Iff, children, children),
    ),
    max_leaves=10,
)

VARS = [f"p{i}" for i in range(6)]


class TestConservativity:
    @given(formulas, st.randoms(use_true_random=False))
    @settings(max_examples=200)
    def test_k3_extends_classical(self, formula, rng):
        bools = {v: rng.choice((True, False)) for v in VARS}
        graded = {v: TRUE if b else FALSE for v, b in bools.items()}
        assert (eval_k3(formula, propvars=graded) == TRUE) == eval_classical(
            formula, propvars=bools
        )

    @given(formulas, st.randoms(use_true_random=False))
    @settings(max_examples=200)
    def test_fuzzy_extends_k3(self, formula, rng):
        values = {v: rng.choice((TRUE, FALSE, HALF)) for v in VARS}
        assert eval_fuzzy(formula, propvars=values) == eval_k3(
            formula, propvars=values
        )

    def test_classical_tautology_supertrue(self):
        taut = parse_formula("(S(3) -> S(4)) | (S(4) -> S(3))")
        for family in ([2], [2, 5], range(2, 9)):
            assert eval_super(taut, family) is SuperVerdict.SUPERTRUE


class TestTables:
    def test_twelve_value_rows(self):
        lines = kleene_tables().splitlines()
        value_rows = [
            l for l in lines if l and not l.startswith("p")
        ]
        assert len(value_rows) == 12

    def test_spec_rows(self):
        text = kleene_tables()
        assert "1     1/2   1     1/2   1/2   1/2" in text
        assert "1/2   1/2   1/2   1/2   1/2   1/2" in text
