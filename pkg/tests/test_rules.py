"""Rule lab: derivability, admissibility, and their separation."""

import hypothesis.strategies as st
import itertools
import pytest
from hypothesis import given, settings

from ctkernel.judgments import Status
from ctkernel.rules import (
    Derivation, NotDerivable, admissible, check_derivation,
    compare_readings, derivation_size, derive, extract_realizer,
    instantiate, parse_rule, parse_rule_file,
)
from ctkernel.syntax import ParseError, parse, pretty
from ctkernel.terms import FALSE, TRUE, Var, substitute
from ctkernel.unary import check_member, enumerate_canonical, ground_types


class TestParseRule:
    def test_inline(self):
        r = parse_rule("P /\\ Q true |- P true")
        assert r.metavariables == ("P", "Q")
        assert len(r.premises) == 1
        assert pretty(r.conclusion.a) == "P"

    def test_multiple_premises(self):
        r = parse_rule("P true; Q true |- P /\\ Q true")
        assert len(r.premises) == 2

    def test_no_premises(self):
        r = parse_rule("|- True true")
        assert r.premises == ()
        r2 = parse_rule("True true")
        assert r2.premises == ()

    def test_labels_optional(self):
        r = parse_rule("premises: P true; Q true |- conclusion: P /\\ Q true")
        assert len(r.premises) == 2
        assert pretty(r.conclusion.a) == "P /\\ Q"

    def test_must_end_in_true(self):
        with pytest.raises(ParseError):
            parse_rule("P |- Q")

    def test_fragment_enforced(self):
        with pytest.raises(ParseError):
            parse_rule("lam x. x true |- P true")

    def test_rule_file_blocks(self):
        text = """
# two rules
P true; Q true |- P /\\ Q true

P /\\ Q true |-
  P true
"""
        rules = parse_rule_file(text)
        assert len(rules) == 2
        assert rules[1].render() == "P /\\ Q true |- P true"


class TestDerive:
    def test_conjunction_elimination_not_derivable(self):
        d = derive(parse_rule("P /\\ Q true |- P true"), 5)
        assert isinstance(d, NotDerivable)
        assert d.exhausted  # the whole search space was explored

    def test_conjunction_introduction_derivable(self):
        d = derive(parse_rule("P true; Q true |- P /\\ Q true"), 5)
        assert isinstance(d, Derivation)
        assert d.rule == "and-intro"
        assert {c.rule for c in d.children} == {"hypothesis"}

    def test_hypothesis(self):
        d = derive(parse_rule("P true |- P true"), 5)
        assert isinstance(d, Derivation)
        assert d.rule == "hypothesis"

    def test_truth_introduction(self):
        d = derive(parse_rule("|- True true"), 5)
        assert isinstance(d, Derivation)
        assert d.rule == "truth-intro"

    def test_implication_introduction_discharges(self):
        d = derive(parse_rule("|- P => P true"), 5)
        assert isinstance(d, Derivation)
        assert d.rule == "imp-intro"
        assert d.children[0].rule == "hypothesis"

    def test_disjunction_introduction(self):
        d = derive(parse_rule("P true |- Q \\/ P true"), 5)
        assert isinstance(d, Derivation)
        assert d.rule == "or-intro-right"

    def test_modus_ponens_not_derivable(self):
        d = derive(parse_rule("P true; P => Q true |- Q true"), 5)
        assert isinstance(d, NotDerivable) and d.exhausted

    def test_depth_cutoff_reported(self):
        # needs three intro steps; at depth 2 the cutoff bites
        d = derive(parse_rule("P true |- P /\\ (P /\\ (P /\\ P)) true"), 2)
        assert isinstance(d, NotDerivable)
        assert not d.exhausted
        assert isinstance(derive(parse_rule("P true |- P /\\ (P /\\ (P /\\ P)) true"), 5),
                          Derivation)


class TestCheckDerivation:
    def test_valid_derivations_check_linearly(self):
        for src in (
            "P true; Q true |- P /\\ Q true",
            "|- P => P true",
            "P true |- (Q \\/ P) /\\ True true",
        ):
            d = derive(parse_rule(src), 6)
            assert isinstance(d, Derivation)
            ok, visited = check_derivation(d)
            assert ok
            assert visited == derivation_size(d)

    def test_malformed_rejected_without_raising(self):
        d = derive(parse_rule("P true; Q true |- P /\\ Q true"), 5)
        bad = Derivation(d.conclusion, "and-intro", (d.children[0],))
        ok, _ = check_derivation(bad)
        assert not ok
        worse = Derivation(d.conclusion, "imaginary-rule", ())
        assert check_derivation(worse) == (False, 1)


class TestRealizers:
    def test_extraction_shapes(self):
        d = derive(parse_rule("P true; Q true |- P /\\ Q true"), 5)
        assert pretty(extract_realizer(d)) == "<h0, h1>"
        d = derive(parse_rule("|- P => P true"), 5)
        assert pretty(extract_realizer(d)) == "lam h0. h0"

    def test_derivations_realize_witnesses(self):
        schemes = [
            "P true; Q true |- P /\\ Q true",
            "P true |- Q \\/ P true",
            "|- P => P true",
            "P true |- True /\\ P true",
        ]
        for src in schemes:
            rule = parse_rule(src)
            d = derive(rule, 6)
            assert isinstance(d, Derivation)
            skeleton = extract_realizer(d)
            for values in itertools.product(ground_types(1), repeat=len(rule.metavariables)):
                assignment = dict(zip(rule.metavariables, values))
                witness_lists = [
                    enumerate_canonical(instantiate(p.a, assignment), 3).witnesses
                    for p in rule.premises
                ]
                if not all(witness_lists):
                    continue  # some premise unverifiable: nothing to realize
                for combo in itertools.product(*witness_lists):
                    term = skeleton
                    for i, w in enumerate(combo):
                        term = substitute(term, f"h{i}", w)
                    conclusion = instantiate(rule.conclusion.a, assignment)
                    assert check_member(term, conclusion).status is Status.VERIFIED


class TestAdmissible:
    def test_conjunction_elimination(self):
        v = admissible(parse_rule("P /\\ Q true |- P true"), 2, 3)
        assert v.status is Status.VERIFIED
        assert v.bounds["instance_depth"] == 2
        assert v.bounds["witness_depth"] == 3

    def test_vacuous_premise(self):
        v = admissible(parse_rule("False true |- Q true"), 2, 3)
        assert v.status is Status.VERIFIED

    def test_disjunction_elimination_refuted(self):
        v = admissible(parse_rule("P \\/ Q true |- P true"), 1, 3)
        assert v.status is Status.REFUTED
        assert {k: pretty(t) for k, t in v.instantiation.items()} == {
            "P": "False", "Q": "True",
        }
        assert [pretty(w) for w in v.premise_witnesses] == ["inr it"]

    def test_modus_ponens_admissible(self):
        v = admissible(parse_rule("P true; P => Q true |- Q true"), 2, 3)
        assert v.status is Status.VERIFIED


class TestCompareReadings:
    def test_and_elim_flagged(self):
        rep = compare_readings(parse_rule("P /\\ Q true |- P true"),
                               search_depth=5, instance_depth=2, witness_depth=3)
        assert not rep.derivable
        assert rep.admissibility.status is Status.VERIFIED
        assert rep.flagged

    def test_and_intro_not_flagged(self):
        rep = compare_readings(parse_rule("P true; Q true |- P /\\ Q true"),
                               search_depth=5, instance_depth=2, witness_depth=3)
        assert rep.derivable
        assert rep.admissibility.status is Status.VERIFIED
        assert not rep.flagged

    def test_or_elim_refuted_not_flagged(self):
        rep = compare_readings(parse_rule("P \\/ Q true |- P true"),
                               search_depth=5, instance_depth=2, witness_depth=3)
        assert not rep.derivable
        assert rep.admissibility.status is Status.REFUTED
        assert not rep.flagged

    def test_render_mentions_quadrant(self):
        rep = compare_readings(parse_rule("P /\\ Q true |- P true"))
        assert "FLAGGED" in rep.render()


# -- derivability implies admissibility, over random schemes ---------------

_metavar = st.sampled_from(("P", "Q"))
_props = st.recursive(
    st.one_of(st.builds(Var, _metavar), st.just(TRUE), st.just(FALSE)),
    lambda ps: st.one_of(
        st.builds(lambda a, b: parse(f"({pretty(a)}) /\\ ({pretty(b)})"), ps, ps),
        st.builds(lambda a, b: parse(f"({pretty(a)}) \\/ ({pretty(b)})"), ps, ps),
        st.builds(lambda a, b: parse(f"({pretty(a)}) => ({pretty(b)})"), ps, ps),
    ),
    max_leaves=4,
)


@st.composite
def rule_schemes(draw):
    premises = draw(st.lists(_props, max_size=2))
    conclusion = draw(_props)
    text = "; ".join(f"{pretty(p)} true" for p in premises)
    rendered = f"{text} |- {pretty(conclusion)} true" if text else f"{pretty(conclusion)} true"
    return parse_rule(rendered)


@given(rule_schemes())
@settings(max_examples=80, deadline=None)
def test_derivable_implies_admissible(rule):
    d = derive(rule, 6)
    if isinstance(d, Derivation):
        v = admissible(rule, 1, 3)
        assert v.status is not Status.REFUTED, rule.render()
