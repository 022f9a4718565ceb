"""Term language: parsing, printing, substitution, alpha-equivalence."""

import pytest
from hypothesis import given, settings

from ctkernel.syntax import ParseError, parse, pretty
from ctkernel.terms import (
    App, Case, Disj, Exists, Forall, Fst, IT, Inl, Inr, Lam, Pair,
    TRUE, FALSE, Var, alpha_eq, constructor_depth, free_vars, is_closed,
    normalize_binders, substitute, term_key,
)
from termgen import closed_terms, terms


class TestParse:
    def test_lambda_pair(self):
        assert parse("lam x. <it, it>") == Lam("x", Pair(IT, IT))

    def test_atomic_it(self):
        assert parse("it") == IT

    def test_implication_is_sugar(self):
        t = parse("False => True")
        assert isinstance(t, Forall)
        assert t.domain == FALSE
        assert t.family == TRUE
        assert t.binder not in free_vars(t.family)

    def test_conjunction_is_sugar(self):
        t = parse("True /\\ False")
        assert isinstance(t, Exists)
        assert (t.domain, t.family) == (TRUE, FALSE)

    def test_case(self):
        t = parse("case inl it of inl x -> x | inr y -> <y, y>")
        assert t == Case(Inl(IT), "x", Var("x"), "y", Pair(Var("y"), Var("y")))

    def test_nested_case_in_left_branch(self):
        t = parse(
            "case x of inl a -> case a of inl b -> b | inr c -> c | inr d -> d"
        )
        assert isinstance(t, Case)
        assert isinstance(t.left_body, Case)
        assert t.right_body == Var("d")

    def test_application_left_associative(self):
        assert parse("f x y") == App(App(Var("f"), Var("x")), Var("y"))

    def test_imp_right_associative(self):
        t = parse("True => False => True")
        assert isinstance(t, Forall) and isinstance(t.family, Forall)

    def test_precedence_and_over_or(self):
        t = parse("True /\\ False \\/ True")
        assert isinstance(t, Disj)
        assert isinstance(t.left, Exists)

    def test_dependent_quantifier(self):
        t = parse("forall x : True . x")
        assert t == Forall(TRUE, "x", Var("x"))

    def test_prefix_projection(self):
        assert parse("fst <it, it>") == Fst(Pair(IT, IT))
        assert parse("inl inl it") == Inl(Inl(IT))

    def test_open_terms_parse(self):
        t = parse("x y")
        assert free_vars(t) == {"x", "y"}

    def test_syntax_error_carries_position(self):
        with pytest.raises(ParseError) as err:
            parse("lam x. <it,")
        assert err.value.line == 1
        assert err.value.col > 0

    def test_trailing_input_rejected(self):
        with pytest.raises(ParseError):
            parse("it it)")


class TestPrint:
    def test_sugar_folds_back(self):
        assert pretty(Forall(FALSE, "_", TRUE)) == "False => True"
        assert pretty(Exists(TRUE, "_", TRUE)) == "True /\\ True"

    def test_dependent_prints_quantifier(self):
        assert pretty(Forall(TRUE, "x", Var("x"))) == "forall x : True . x"

    def test_application_parenthesization(self):
        t = App(Lam("x", Var("x")), IT)
        assert pretty(t) == "(lam x. x) it"
        assert parse(pretty(t)) == t

    @given(terms())
    @settings(max_examples=200)
    def test_parse_print_roundtrip(self, t):
        assert alpha_eq(parse(pretty(t)), t)


class TestSubstitute:
    def test_binder_unused(self):
        assert substitute(Pair(IT, IT), "x", IT) == Pair(IT, IT)

    def test_direct_replacement(self):
        assert substitute(Var("x"), "x", Inl(IT)) == Inl(IT)

    def test_shadowing_blocks(self):
        t = Lam("x", Var("x"))
        assert substitute(t, "x", IT) == t

    def test_capture_renames(self):
        # lam y. x with x := y must not capture
        t = Lam("y", Var("x"))
        out = substitute(t, "x", Var("y"))
        assert isinstance(out, Lam)
        assert out.binder != "y"
        assert out.body == Var("y")

    @given(terms(), closed_terms())
    @settings(max_examples=200)
    def test_capture_avoiding_free_vars(self, body, value):
        out = substitute(body, "x", value)
        assert free_vars(out) == free_vars(body) - {"x"}


class TestAlphaEq:
    def test_bound_renaming(self):
        assert alpha_eq(Lam("x", Var("x")), Lam("y", Var("y")))

    def test_head_constructor_differs(self):
        assert not alpha_eq(Inl(IT), Inr(IT))

    def test_type_former_binder_renaming(self):
        assert alpha_eq(
            Forall(TRUE, "x", Var("x")), Forall(TRUE, "z", Var("z"))
        )

    def test_free_variables_not_identified(self):
        assert not alpha_eq(Var("x"), Var("y"))

    @given(terms())
    @settings(max_examples=150)
    def test_reflexive(self, t):
        assert alpha_eq(t, t)

    @given(terms())
    @settings(max_examples=150)
    def test_symmetric_via_normalization(self, t):
        u = normalize_binders(t)
        assert alpha_eq(t, u) and alpha_eq(u, t)

    @given(terms(), terms())
    @settings(max_examples=150)
    def test_symmetric(self, a, b):
        assert alpha_eq(a, b) == alpha_eq(b, a)

    @given(terms())
    @settings(max_examples=100)
    def test_transitive_through_renamings(self, t):
        u = normalize_binders(t)
        v = normalize_binders(u)
        assert alpha_eq(t, u) and alpha_eq(u, v) and alpha_eq(t, v)


class TestAlphaCongruence:
    @given(terms(), closed_terms(max_leaves=5))
    @settings(max_examples=120)
    def test_substitution_respects_alpha(self, t, v):
        u = normalize_binders(t)
        assert alpha_eq(substitute(t, "x", v), substitute(u, "x", v))

    @given(closed_terms(max_leaves=6))
    @settings(max_examples=100, deadline=None)
    def test_evaluation_respects_alpha(self, t):
        from ctkernel.evaluation import Canonical, evaluate
        u = normalize_binders(t)
        rt, ru = evaluate(t, 200), evaluate(u, 200)
        assert type(rt) is type(ru)
        if isinstance(rt, Canonical):
            assert alpha_eq(rt.term, ru.term)
            assert rt.steps == ru.steps


class TestOrdering:
    def test_normalization_canonical(self):
        a = Lam("x", Var("x"))
        b = Lam("y", Var("y"))
        assert normalize_binders(a) == normalize_binders(b)

    def test_term_key_discriminates(self):
        assert term_key(Inl(IT)) != term_key(Inr(IT))
        assert term_key(Lam("x", Var("x"))) == term_key(Lam("y", Var("y")))

    def test_constructor_depth(self):
        assert constructor_depth(IT) == 1
        assert constructor_depth(Inl(IT)) == 2
        assert constructor_depth(Pair(Inl(IT), IT)) == 3

    def test_closedness(self):
        assert is_closed(Lam("x", Var("x")))
        assert not is_closed(Var("x"))
