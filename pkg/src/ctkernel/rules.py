"""Rule lab: derivability against admissibility for inference rules.

A rule scheme has truth-judgment premises and conclusion over
metavariables (free, conventionally uppercase, names standing for
arbitrary ground propositions).  Two readings are contrasted:

* *Derivable*: there is a uniform schematic derivation in a formal
  system containing only the introduction rules (truth introduction,
  conjunction/disjunction/implication introduction with hypothesis
  discharge) plus the hypothesis rule.  No elimination rules exist in
  the system.  Because goal-directed search over this calculus strictly
  shrinks the goal, a failed exhaustive search is definitive, and the
  result says so.

* *Admissible*: for every ground instantiation of the metavariables (up
  to an instance-depth bound) under which every premise has a canonical
  verification (up to a witness-depth bound), the conclusion has one
  too.  This is the material reading: it looks at what verifications
  can exist, not at derivations, so it is certified only relative to
  its bounds.  A refutation ships a concrete instantiation together
  with premise witnesses whose conclusion is uninhabited.

The interesting quadrant is admissible-but-not-derivable: rules the
formal system cannot state uniformly whose semantic closure still
holds.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

from .config import (
    DEFAULT_DEPTH, DEFAULT_FUEL, DEFAULT_INSTANCE_DEPTH, DEFAULT_SEARCH_DEPTH,
)
from .evaluation import Strategy
from .judgments import (
    IsTrue, Status, Trace, TraceStep, Verdict, diverged, refuted, unknown,
    verified,
)
from .syntax import ParseError, _Parser, pretty, tokenize
from .terms import (
    Disj, Exists, Forall, Inl, Inr, It, Lam, Pair, TFalse, TTrue, Term, Var,
    alpha_eq, free_vars, substitute,
)
from .unary import enumerate_canonical, ground_types

CBN = Strategy.CALL_BY_NAME


@dataclass(frozen=True)
class RuleScheme:
    metavariables: Tuple[str, ...]
    premises: Tuple[IsTrue, ...]
    conclusion: IsTrue

    def render(self) -> str:
        left = "; ".join(f"{pretty(p.a)} true" for p in self.premises)
        right = f"{pretty(self.conclusion.a)} true"
        return f"{left} |- {right}" if left else f"|- {right}"


def _validate_scheme_prop(t: Term) -> None:
    match t:
        case Var(_) | TTrue() | TFalse():
            return
        case Disj(l, r):
            _validate_scheme_prop(l)
            _validate_scheme_prop(r)
        case (Forall(d, b, f) | Exists(d, b, f)) if b not in free_vars(f):
            _validate_scheme_prop(d)
            _validate_scheme_prop(f)
        case _:
            raise ParseError(
                "rule propositions are the propositional fragment: "
                "metavariables, True, False, /\\, \\/, =>", 1, 1,
            )


def _parse_judgment_text(text: str) -> IsTrue:
    tokens = tokenize(text)
    if len(tokens) < 2 or tokens[-2].kind != "name" or tokens[-2].text != "true":
        tok = tokens[-1]
        raise ParseError("a rule judgment must end in 'true'", tok.line, tok.col)
    parser = _Parser(tokens[:-2] + tokens[-1:])
    prop = parser.term()
    tok = parser.peek()
    if tok.kind != "eof":
        raise ParseError(f"trailing input at {tok.text!r}", tok.line, tok.col)
    _validate_scheme_prop(prop)
    return IsTrue(prop)


def parse_rule(text: str) -> RuleScheme:
    """Parse ``premises: J1; J2 |- conclusion: J`` (labels optional)."""
    body = text.strip()
    if body.startswith("premises:"):
        body = body[len("premises:"):]
    if "|-" in body:
        left, right = body.rsplit("|-", 1)
    else:
        left, right = "", body
    right = right.strip()
    if right.startswith("conclusion:"):
        right = right[len("conclusion:"):]
    premises = tuple(
        _parse_judgment_text(part)
        for part in left.split(";")
        if part.strip()
    )
    conclusion = _parse_judgment_text(right)
    seen: List[str] = []
    for j in (*premises, conclusion):
        for name in _metavars_in_order(j.a):
            if name not in seen:
                seen.append(name)
    return RuleScheme(tuple(seen), premises, conclusion)


def _metavars_in_order(t: Term) -> List[str]:
    out: List[str] = []

    def go(t: Term) -> None:
        match t:
            case Var(n):
                if n not in out:
                    out.append(n)
            case Disj(l, r):
                go(l)
                go(r)
            case Forall(d, _, f) | Exists(d, _, f):
                go(d)
                go(f)
            case _:
                pass

    go(t)
    return out


def parse_rule_file(text: str) -> List[RuleScheme]:
    """One rule per block; blocks are separated by blank lines."""
    rules = []
    for block in text.split("\n\n"):
        lines = [ln for ln in block.splitlines() if ln.strip() and not ln.strip().startswith("#")]
        if lines:
            rules.append(parse_rule(" ".join(lines)))
    return rules


# -- derivability -------------------------------------------------------------


@dataclass(frozen=True)
class Sequent:
    hypotheses: Tuple[Tuple[str, Term], ...]
    goal: Term

    def render(self) -> str:
        hyp = ", ".join(f"{n}: {pretty(p)} true" for n, p in self.hypotheses)
        return f"{hyp} |- {pretty(self.goal)} true" if hyp else f"|- {pretty(self.goal)} true"


@dataclass(frozen=True)
class Derivation:
    """Finitary derivation tree; leaves discharge hypotheses or close goals."""
    conclusion: Sequent
    rule: str
    children: Tuple["Derivation", ...] = ()

    def render(self, indent: int = 0) -> str:
        lines = [f"{'  ' * indent}{self.conclusion.render()}    [{self.rule}]"]
        for child in self.children:
            lines.append(child.render(indent + 1))
        return "\n".join(lines)


@dataclass(frozen=True)
class NotDerivable:
    at_depth: int
    exhausted: bool


def derive(rule: RuleScheme, search_depth: int = DEFAULT_SEARCH_DEPTH) -> Union[Derivation, NotDerivable]:
    """Goal-directed schematic search in the introduction-only calculus.

    Metavariables are rigid: only the hypothesis rule can close an
    atomic goal.  When the search fails without ever hitting the depth
    cutoff the failure is exhaustive, hence definitive for this
    calculus."""
    if search_depth < 1:
        raise ValueError("search_depth must be >= 1")
    hyps = tuple((f"h{i}", p.a) for i, p in enumerate(rule.premises))
    found, exhausted = _search(hyps, rule.conclusion.a, search_depth)
    if found is not None:
        return found
    return NotDerivable(search_depth, exhausted)


def _search(
    hyps: Tuple[Tuple[str, Term], ...], goal: Term, budget: int
) -> Tuple[Optional[Derivation], bool]:
    seq = Sequent(hyps, goal)
    for name, prop in hyps:
        if alpha_eq(prop, goal):
            return Derivation(seq, "hypothesis"), True
    if isinstance(goal, TTrue):
        return Derivation(seq, "truth-intro"), True
    if budget <= 0:
        return None, False
    match goal:
        case Exists(p, b, q) if b not in free_vars(q):
            left, e1 = _search(hyps, p, budget - 1)
            if left is None:
                return None, e1
            right, e2 = _search(hyps, q, budget - 1)
            if right is None:
                return None, e2
            return Derivation(seq, "and-intro", (left, right)), True
        case Disj(p, q):
            left, e1 = _search(hyps, p, budget - 1)
            if left is not None:
                return Derivation(seq, "or-intro-left", (left,)), True
            right, e2 = _search(hyps, q, budget - 1)
            if right is not None:
                return Derivation(seq, "or-intro-right", (right,)), True
            return None, e1 and e2
        case Forall(p, b, q) if b not in free_vars(q):
            name = f"h{len(hyps)}"
            body, e = _search(hyps + ((name, p),), q, budget - 1)
            if body is not None:
                return Derivation(seq, "imp-intro", (body,)), True
            return None, e
        case _:
            # Atomic metavariable (or out-of-fragment goal): no
            # introduction applies and the hypothesis rule already failed.
            return None, True


def check_derivation(d: Derivation) -> Tuple[bool, int]:
    """Local wellformedness of every node; linear in the tree size.

    Returns (ok, nodes visited); never raises on malformed trees."""
    visited = 0

    def go(d: Derivation) -> bool:
        nonlocal visited
        visited += 1
        seq = d.conclusion
        try:
            match d.rule:
                case "hypothesis":
                    return not d.children and any(
                        alpha_eq(p, seq.goal) for _, p in seq.hypotheses
                    )
                case "truth-intro":
                    return not d.children and isinstance(seq.goal, TTrue)
                case "and-intro":
                    match seq.goal:
                        case Exists(p, b, q) if b not in free_vars(q):
                            left, right = d.children
                            return (
                                left.conclusion == Sequent(seq.hypotheses, p)
                                and right.conclusion == Sequent(seq.hypotheses, q)
                                and go(left)
                                and go(right)
                            )
                    return False
                case "or-intro-left":
                    match seq.goal:
                        case Disj(p, _):
                            (left,) = d.children
                            return left.conclusion == Sequent(seq.hypotheses, p) and go(left)
                    return False
                case "or-intro-right":
                    match seq.goal:
                        case Disj(_, q):
                            (right,) = d.children
                            return right.conclusion == Sequent(seq.hypotheses, q) and go(right)
                    return False
                case "imp-intro":
                    match seq.goal:
                        case Forall(p, b, q) if b not in free_vars(q):
                            (body,) = d.children
                            hyps = body.conclusion.hypotheses
                            return (
                                len(hyps) == len(seq.hypotheses) + 1
                                and hyps[:-1] == seq.hypotheses
                                and alpha_eq(hyps[-1][1], p)
                                and alpha_eq(body.conclusion.goal, q)
                                and go(body)
                            )
                    return False
                case _:
                    return False
        except (ValueError, TypeError):
            return False

    return go(d), visited


def derivation_size(d: Derivation) -> int:
    return 1 + sum(derivation_size(c) for c in d.children)


def extract_realizer(d: Derivation) -> Term:
    """Witness skeleton of a derivation; hypothesis leaves stay variables.

    Substituting concrete premise witnesses for the hypothesis variables
    yields a closed witness for the conclusion."""
    match d.rule:
        case "hypothesis":
            name = next(
                n for n, p in d.conclusion.hypotheses if alpha_eq(p, d.conclusion.goal)
            )
            return Var(name)
        case "truth-intro":
            return It()
        case "and-intro":
            return Pair(extract_realizer(d.children[0]), extract_realizer(d.children[1]))
        case "or-intro-left":
            return Inl(extract_realizer(d.children[0]))
        case "or-intro-right":
            return Inr(extract_realizer(d.children[0]))
        case "imp-intro":
            body = d.children[0]
            name = body.conclusion.hypotheses[-1][0]
            return Lam(name, extract_realizer(body))
        case _:
            raise ValueError(f"unknown rule in derivation: {d.rule}")


# -- admissibility -------------------------------------------------------------


def instantiate(t: Term, assignment: Dict[str, Term]) -> Term:
    out = t
    for name, value in assignment.items():
        out = substitute(out, name, value)
    return out


def admissible(
    rule: RuleScheme,
    instance_depth: int = DEFAULT_INSTANCE_DEPTH,
    witness_depth: int = DEFAULT_DEPTH - 1,
    fuel: int = DEFAULT_FUEL,
    strategy: Strategy = CBN,
) -> Verdict:
    """Bounded admissibility over ground instantiations.

    Walks every instantiation of the metavariables by ground types of
    former depth <= instance_depth; an instantiation passes when some
    premise is provably uninhabited (vacuous), or the conclusion has a
    canonical witness within witness_depth.  The verification is a
    bound-relative certificate, never an unconditional theorem."""
    if instance_depth < 1 or witness_depth < 1:
        raise ValueError("bounds must be >= 1")
    space = ground_types(instance_depth)
    exhausted = True
    checked = 0
    for values in itertools.product(space, repeat=len(rule.metavariables)):
        assignment = dict(zip(rule.metavariables, values))
        checked += 1
        premise_props = [instantiate(p.a, assignment) for p in rule.premises]
        conclusion_prop = instantiate(rule.conclusion.a, assignment)

        premise_enums = []
        vacuous = False
        undetermined = False
        for prop in premise_props:
            er = enumerate_canonical(prop, witness_depth, fuel, strategy)
            if er.failure is not None and er.failure.status is Status.DIVERGED:
                return diverged(er.failure.fuel_report or "premise enumeration diverged")
            if not er.witnesses:
                if er.complete:
                    vacuous = True
                    break
                undetermined = True
            premise_enums.append(er)
        if vacuous:
            continue

        ec = enumerate_canonical(conclusion_prop, witness_depth, fuel, strategy)
        if ec.failure is not None and ec.failure.status is Status.DIVERGED:
            return diverged(ec.failure.fuel_report or "conclusion enumeration diverged")
        if ec.witnesses:
            continue
        if not ec.complete or undetermined:
            exhausted = False
            continue
        witness_tuple = tuple(er.witnesses[0] for er in premise_enums)
        counter_steps = [
            TraceStep(
                IsTrue(instantiate(p.a, assignment)),
                f"premise witness {pretty(w)}",
            )
            for p, w in zip(rule.premises, witness_tuple)
        ]
        counter_steps.append(TraceStep(IsTrue(conclusion_prop), "conclusion uninhabited"))
        return refuted(
            Trace(tuple(counter_steps)),
            instantiation=assignment,
            premise_witnesses=witness_tuple,
        )

    bounds = {
        "instance_depth": instance_depth,
        "witness_depth": witness_depth,
        "instantiations": checked,
    }
    cert = Trace((
        TraceStep(
            IsTrue(rule.conclusion.a),
            f"admissible-at-bound(instance_depth={instance_depth}, "
            f"witness_depth={witness_depth}, instantiations={checked})",
        ),
    ))
    if not exhausted:
        return unknown(witness_depth, cert, bounds=bounds)
    return verified(cert, bounds=bounds)


# -- the joint report -----------------------------------------------------------


@dataclass(frozen=True)
class ReadingsReport:
    rule: RuleScheme
    derivation: Union[Derivation, NotDerivable]
    admissibility: Verdict

    @property
    def derivable(self) -> bool:
        return isinstance(self.derivation, Derivation)

    @property
    def flagged(self) -> bool:
        """The interesting quadrant: admissible but not derivable."""
        return (not self.derivable) and self.admissibility.verified

    def render(self) -> str:
        lines = [f"rule: {self.rule.render()}"]
        if self.derivable:
            lines.append("derivable: yes")
            lines.append(self.derivation.render(1))
        else:
            kind = "exhaustive" if self.derivation.exhausted else "cut off"
            lines.append(
                f"derivable: no ({kind} at search depth {self.derivation.at_depth})"
            )
        adm = self.admissibility
        if adm.verified:
            b = adm.bounds or {}
            lines.append(
                "admissible: verified at bound "
                f"(instance depth {b.get('instance_depth')}, "
                f"witness depth {b.get('witness_depth')}, "
                f"{b.get('instantiations')} instantiations)"
            )
        elif adm.refuted:
            inst = ", ".join(
                f"{k} := {pretty(v)}" for k, v in (adm.instantiation or {}).items()
            )
            ws = ", ".join(pretty(w) for w in adm.premise_witnesses or ())
            lines.append(f"admissible: refuted at [{inst}] with premise witness {ws}")
        else:
            lines.append(f"admissible: {adm.status.value}")
        if self.flagged:
            lines.append("FLAGGED: admissible but not derivable")
        return "\n".join(lines)


def compare_readings(
    rule: RuleScheme,
    search_depth: int = DEFAULT_SEARCH_DEPTH,
    instance_depth: int = DEFAULT_INSTANCE_DEPTH,
    witness_depth: int = DEFAULT_DEPTH - 1,
    fuel: int = DEFAULT_FUEL,
    strategy: Strategy = CBN,
) -> ReadingsReport:
    """Run both readings and flag the admissible-but-not-derivable quadrant."""
    return ReadingsReport(
        rule,
        derive(rule, search_depth),
        admissible(rule, instance_depth, witness_depth, fuel, strategy),
    )
