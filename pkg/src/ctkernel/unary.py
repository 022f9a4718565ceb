"""Unary realizability model: set-hood, membership, inhabitation, enumeration.

Every type denotes a relation of canonical witnesses:

* ``canon(True)``  is ``{it}``
* ``canon(False)`` is empty
* ``canon(forall x : A . B)`` holds the functions ``lam y. E`` such that
  for every member ``w`` of ``A``, the instance ``E[w/y]`` is a member of
  ``B[w/x]``
* ``canon(exists x : A . B)`` holds the pairs ``<M, N>`` with ``M`` a
  member of ``A`` and ``N`` a member of ``B[M/x]``
* ``canon(A \\/ B)`` holds ``inl M`` for members of ``A`` and ``inr N``
  for members of ``B``

Membership is the evaluation closure of those relations: ``member(M, A)``
holds when ``A`` evaluates to a former whose relation is defined and
``M`` evaluates into it.  The hypothetical premise of a quantifier is
read materially: if the domain is provably uninhabited, the premise is
discharged vacuously, with no witness for the body required at all.
Otherwise canonical domain witnesses are enumerated up to the depth
bound and each instance is checked; the check reports VERIFIED only when
that enumeration is provably complete, and UNKNOWN when the bound ran
out first.  Refutations and verifications are definitive; larger budgets
can only resolve UNKNOWN and DIVERGED.

Function-witness enumeration draws lambda bodies from canonical members
of the family instances lifted to constant functions, plus the identity
when the domain and family coincide, plus the identity as the canonical
representative over a provably empty domain.  The completeness flag is
relative to this documented grammar: for the ground fragment it exhausts
inhabitation (every member acts like some listed representative on every
canonical input of former depth below the bound), although at deeper
function domains behaviours outside the grammar exist, e.g. the swap
function among the members of (True \\/ True) => (True \\/ True).
Genuinely dependent families can hide dispatching members the grammar
cannot see, so their enumerations claim completeness only when some
family instance is provably empty (no function can exist at all).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import List, Optional, Tuple

from .config import DEFAULT_DEPTH, DEFAULT_FUEL
from .evaluation import FuelExhausted, Strategy, Stuck, Tank, run
from .judgments import (
    Blocked, Both, CanonClosureIn, CanonDefined, CanonEmpty, CanonIn,
    CanonNotIn, Evals, Gen, Hyp, IsSet, Member, Status, Trace, TraceStep,
    Verdict, diverged, refuted, unknown, verified, worst,
)
from .syntax import describe, pretty
from .terms import (
    Disj, Exists, Forall, Inl, Inr, It, Lam, Pair, TFalse, TTrue, Term,
    TRUE, FALSE, IT, Var, alpha_eq, constructor_depth, free_vars,
    require_closed, substitute, term_key,
)

CBN = Strategy.CALL_BY_NAME


class Inhabitation(Enum):
    INHABITED = "inhabited"
    UNINHABITED = "uninhabited"
    NOT_GROUND = "not-ground"
    DIVERGED = "diverged"


@dataclass(frozen=True)
class EnumResult:
    """Outcome of bounded witness enumeration.

    ``complete`` is True when the list provably exhausts the type's
    witnesses (up to the documented function-witness grammar); see the
    module docstring.  ``failure`` carries a DIVERGED or REFUTED verdict
    when the type itself would not even evaluate to a set.
    """

    witnesses: Tuple[Term, ...]
    complete: bool
    failure: Optional[Verdict] = None


# -- ground fragment -----------------------------------------------------


def is_ground(t: Term) -> bool:
    """Built from True/False by the connectives, with every binder unused."""
    match t:
        case TTrue() | TFalse():
            return True
        case Disj(l, r):
            return is_ground(l) and is_ground(r)
        case Forall(d, b, f) | Exists(d, b, f):
            return b not in free_vars(f) and is_ground(d) and is_ground(f)
        case _:
            return False


def former_depth(t: Term) -> int:
    """Former nesting of a ground type; equals its constructor depth."""
    return constructor_depth(t)


@lru_cache(maxsize=None)
def ground_types(max_depth: int) -> Tuple[Term, ...]:
    """All ground types of former depth <= max_depth, shallow first.

    Depth-1 layer is (True, False); each deeper layer closes under
    conjunction, disjunction and implication in that order.  The
    ordering is part of the contract: instantiation searches walk it."""
    if max_depth < 1:
        return ()
    layers: List[List[Term]] = [[TRUE, FALSE]]
    for d in range(2, max_depth + 1):
        upto = [t for layer in layers for t in layer]
        layer = []
        for build in (
            lambda p, q: Exists(p, "_", q),
            lambda p, q: Disj(p, q),
            lambda p, q: Forall(p, "_", q),
        ):
            for p in upto:
                for q in upto:
                    if max(former_depth(p), former_depth(q)) == d - 1:
                        layer.append(build(p, q))
        layers.append(layer)
    return tuple(t for layer in layers for t in layer)


# -- exact inhabitation oracle (ground fragment) --------------------------


def inhabited_exact(a: Term, fuel: int = DEFAULT_FUEL, strategy: Strategy = CBN) -> Inhabitation:
    """Exact inhabitation for ground types.

    True is inhabited, False is not; an implication is inhabited iff its
    domain is empty or its codomain inhabited; a conjunction iff both
    sides are; a disjunction iff either side is.  Genuinely dependent
    families (the binder occurs in the family) are out of scope and
    report NOT_GROUND, as does anything that is not a set."""
    require_closed("type", a)
    return _inhabited(a, Tank(fuel), strategy)


def _inhabited(a: Term, tank: Tank, strategy: Strategy) -> Inhabitation:
    res = run(a, tank, strategy)
    if isinstance(res, FuelExhausted):
        return Inhabitation.DIVERGED
    if isinstance(res, Stuck):
        return Inhabitation.NOT_GROUND
    match res.term:
        case TTrue():
            return Inhabitation.INHABITED
        case TFalse():
            return Inhabitation.UNINHABITED
        case Disj(l, r):
            il = _inhabited(l, tank, strategy)
            ir = _inhabited(r, tank, strategy)
            return _combine_or(il, ir)
        case Exists(d, b, f):
            if b in free_vars(f):
                return Inhabitation.NOT_GROUND
            return _combine_and(_inhabited(d, tank, strategy), _inhabited(f, tank, strategy))
        case Forall(d, b, f):
            if b in free_vars(f):
                return Inhabitation.NOT_GROUND
            idom = _inhabited(d, tank, strategy)
            icod = _inhabited(f, tank, strategy)
            if idom is Inhabitation.UNINHABITED or icod is Inhabitation.INHABITED:
                return Inhabitation.INHABITED
            if idom is Inhabitation.INHABITED:
                return icod
            if Inhabitation.DIVERGED in (idom, icod):
                return Inhabitation.DIVERGED
            return Inhabitation.NOT_GROUND
        case _:
            return Inhabitation.NOT_GROUND


def _combine_or(il: Inhabitation, ir: Inhabitation) -> Inhabitation:
    if Inhabitation.INHABITED in (il, ir):
        return Inhabitation.INHABITED
    if Inhabitation.DIVERGED in (il, ir):
        return Inhabitation.DIVERGED
    if Inhabitation.NOT_GROUND in (il, ir):
        return Inhabitation.NOT_GROUND
    return Inhabitation.UNINHABITED


def _combine_and(il: Inhabitation, ir: Inhabitation) -> Inhabitation:
    if Inhabitation.UNINHABITED in (il, ir):
        return Inhabitation.UNINHABITED
    if Inhabitation.DIVERGED in (il, ir):
        return Inhabitation.DIVERGED
    if Inhabitation.NOT_GROUND in (il, ir):
        return Inhabitation.NOT_GROUND
    return Inhabitation.INHABITED


# -- witness enumeration ---------------------------------------------------


def enumerate_canonical(
    a: Term,
    depth: int = DEFAULT_DEPTH,
    fuel: int = DEFAULT_FUEL,
    strategy: Strategy = CBN,
) -> EnumResult:
    """All canonical witnesses of constructor depth <= depth.

    Results are pairwise non-alpha-equivalent and sorted by the
    documented term order (constructor depth, then normalized tree)."""
    require_closed("type", a)
    if depth < 0:
        raise ValueError("depth must be >= 0")
    return _enumerate(a, depth, Tank(fuel), strategy)


def _dedupe_sorted(ws: List[Term]) -> Tuple[Term, ...]:
    out: List[Term] = []
    for w in sorted(ws, key=term_key):
        if not any(alpha_eq(w, seen) for seen in out):
            out.append(w)
    return tuple(out)


def _enumerate(a: Term, depth: int, tank: Tank, strategy: Strategy) -> EnumResult:
    res = run(a, tank, strategy)
    if isinstance(res, FuelExhausted):
        return EnumResult((), False, diverged(f"type diverged: {res.remaining}"))
    if isinstance(res, Stuck):
        return EnumResult(
            (), False,
            refuted(Trace((TraceStep(Blocked(res.offending), "stuck-type"),))),
        )
    ac = res.term
    match ac:
        case TTrue():
            if depth >= 1:
                return EnumResult((IT,), True)
            return EnumResult((), False)
        case TFalse():
            return EnumResult((), True)
        case Disj(l, r):
            el = _enumerate(l, depth - 1, tank, strategy)
            if el.failure is not None:
                return el
            er = _enumerate(r, depth - 1, tank, strategy)
            if er.failure is not None:
                return er
            ws = [Inl(w) for w in el.witnesses] + [Inr(w) for w in er.witnesses]
            return EnumResult(_dedupe_sorted(ws), el.complete and er.complete)
        case Exists(d, b, f):
            ed = _enumerate(d, depth - 1, tank, strategy)
            if ed.failure is not None:
                return ed
            complete = ed.complete
            ws: List[Term] = []
            for m in ed.witnesses:
                ef = _enumerate(substitute(f, b, m), depth - 1, tank, strategy)
                if ef.failure is not None:
                    return ef
                complete = complete and ef.complete
                ws.extend(Pair(m, n) for n in ef.witnesses)
            return EnumResult(_dedupe_sorted(ws), complete)
        case Forall(d, b, f):
            return _enumerate_functions(d, b, f, depth, tank, strategy)
        case _:
            return EnumResult(
                (), False,
                refuted(Trace((TraceStep(CanonNotIn(ac, ()), "not-a-set"),))),
            )


def _enumerate_functions(
    d: Term, b: str, f: Term, depth: int, tank: Tank, strategy: Strategy
) -> EnumResult:
    identity = Lam("x", Var("x"))
    ed = _enumerate(d, depth - 1, tank, strategy)
    if ed.failure is not None:
        return ed

    if not ed.witnesses and ed.complete:
        # Provably empty domain: every function is vacuously a witness;
        # the identity stands for them all.
        if depth >= 2:
            return EnumResult((identity,), True)
        return EnumResult((), False)

    dependent = b in free_vars(f)
    complete = ed.complete
    provably_empty_instance = False
    candidates: List[Term] = []
    if not dependent and alpha_eq(d, f):
        candidates.append(identity)
    for w in ed.witnesses:
        ef = _enumerate(substitute(f, b, w), depth - 1, tank, strategy)
        if ef.failure is not None:
            return ef
        complete = complete and ef.complete
        if ef.complete and not ef.witnesses:
            provably_empty_instance = True
        candidates.extend(Lam("_", m) for m in ef.witnesses)

    kept: List[Term] = []
    for cand in _dedupe_sorted(candidates):
        if constructor_depth(cand) > depth:
            complete = False
            continue
        ok = True
        for w in ed.witnesses:
            instance = substitute(cand.body, cand.binder, w)
            v = _check_member(instance, substitute(f, b, w), tank, depth, strategy)
            if v.status is Status.REFUTED:
                ok = False
                break
            if not v.verified:
                # Cannot certify this candidate within the bounds.
                ok = False
                complete = False
                break
        if ok:
            kept.append(cand)

    # The constant-plus-identity grammar exhausts behaviours only for
    # non-dependent families; a dependent family whose instances are all
    # inhabited may admit dispatching members the grammar cannot see, so
    # the list is exhaustive there only when some instance is provably
    # empty (then no function can exist at all).
    if dependent and not provably_empty_instance:
        complete = False
    return EnumResult(tuple(kept), complete)


# -- set-hood --------------------------------------------------------------


def check_is_set(
    a: Term,
    fuel: int = DEFAULT_FUEL,
    depth: int = DEFAULT_DEPTH,
    strategy: Strategy = CBN,
) -> Verdict:
    """Does the type evaluate to a former whose witness relation is defined?

    Component types must themselves be sets: hereditarily for
    non-dependent components, pointwise at enumerated domain witnesses
    for genuinely dependent families."""
    require_closed("type", a)
    _check_budgets(fuel, depth)
    return _check_is_set(a, Tank(fuel), depth, strategy)


def _check_is_set(a: Term, tank: Tank, depth: int, strategy: Strategy) -> Verdict:
    head = TraceStep(IsSet(a), "set-formation")
    res = run(a, tank, strategy)
    if isinstance(res, FuelExhausted):
        return diverged(f"type diverged: {res.remaining}", Trace((head,)))
    if isinstance(res, Stuck):
        return refuted(Trace((head, TraceStep(Blocked(res.offending), "stuck-type"))))
    ac = res.term
    evals = (Evals(a, ac),) if res.steps else ()

    def assemble(rule: str, subs: Tuple[Verdict, ...]) -> Verdict:
        status = worst(v.status for v in subs)
        body = TraceStep(
            Both(evals + (CanonDefined(ac),)), rule,
            tuple(v.trace for v in subs),
        )
        out = Trace((head, body))
        if status is Status.VERIFIED:
            return verified(out)
        picked = next(v for v in subs if v.status is status)
        return Verdict(status, out, bound=picked.bound, fuel_report=picked.fuel_report,
                       instance=picked.instance)

    match ac:
        case TTrue() | TFalse():
            return verified(Trace((head, TraceStep(Both(evals + (CanonDefined(ac),)), "former-base"))))
        case Disj(l, r):
            return assemble(
                "former-disj",
                (_check_is_set(l, tank, depth, strategy),
                 _check_is_set(r, tank, depth, strategy)),
            )
        case Forall(d, b, f) | Exists(d, b, f):
            rule = "former-forall" if isinstance(ac, Forall) else "former-exists"
            vd = _check_is_set(d, tank, depth, strategy)
            if vd.status is not Status.VERIFIED:
                return assemble(rule, (vd,))
            if b not in free_vars(f):
                return assemble(rule, (vd, _check_is_set(f, tank, depth, strategy)))
            ed = _enumerate(d, depth, tank, strategy)
            if ed.failure is not None:
                return assemble(rule, (vd, ed.failure))
            subs = [vd]
            for w in ed.witnesses:
                subs.append(_check_is_set(substitute(f, b, w), tank, depth, strategy))
            v = assemble(rule, tuple(subs))
            if v.status is Status.VERIFIED and not ed.complete:
                return unknown(depth, v.trace)
            return v
        case _:
            return refuted(
                Trace((head, TraceStep(Both(evals + (CanonNotIn(ac, ()),)), "no-former"))),
            )


# -- membership -------------------------------------------------------------


def check_member(
    m: Term,
    a: Term,
    fuel: int = DEFAULT_FUEL,
    depth: int = DEFAULT_DEPTH,
    strategy: Strategy = CBN,
) -> Verdict:
    """Membership of a term in a type, checked through evaluation."""
    require_closed("term", m)
    require_closed("type", a)
    _check_budgets(fuel, depth)
    return _check_member(m, a, Tank(fuel), depth, strategy)


def _check_budgets(fuel: int, depth: int) -> None:
    if fuel < 1:
        raise ValueError("fuel must be >= 1")
    if depth < 1:
        raise ValueError("depth must be >= 1")


def _check_member(m: Term, a: Term, tank: Tank, depth: int, strategy: Strategy) -> Verdict:
    head = TraceStep(Member(m, a), "membership")
    ra = run(a, tank, strategy)
    if isinstance(ra, FuelExhausted):
        return diverged(f"type diverged: {ra.remaining}", Trace((head,)))
    if isinstance(ra, Stuck):
        return refuted(Trace((head, TraceStep(Blocked(ra.offending), "stuck-type"))))
    rm = run(m, tank, strategy)
    if isinstance(rm, FuelExhausted):
        return diverged(f"term diverged: {rm.remaining}", Trace((head,)))
    if isinstance(rm, Stuck):
        return refuted(Trace((head, TraceStep(Blocked(rm.offending), "stuck-term"))))
    return _canon_member(m, a, rm.term, ra.term, ra.steps, tank, depth, strategy, head)


def val_member(
    mc: Term,
    ac: Term,
    fuel: int = DEFAULT_FUEL,
    depth: int = DEFAULT_DEPTH,
    strategy: Strategy = CBN,
) -> Verdict:
    """Relation-level membership of a canonical witness in a canonical type.

    This is the half of membership that remains once both sides have
    been evaluated; exposed so tests can exercise the factoring of
    membership into evaluation plus relation membership."""
    require_closed("term", mc)
    require_closed("type", ac)
    _check_budgets(fuel, depth)
    head = TraceStep(Member(mc, ac), "membership")
    return _canon_member(mc, ac, mc, ac, 0, Tank(fuel), depth, strategy, head)


def _eval_statements(m0: Term, mc: Term, a0: Term, ac: Term, a_steps: int) -> Tuple:
    # The type's evaluation is recorded only when it actually computes,
    # so a canonical type keeps the derivation at its minimal length.
    out = []
    if a_steps:
        out.append(Evals(a0, ac))
    out.append(Evals(m0, mc))
    return tuple(out)


def _canon_member(
    m0: Term, a0: Term, mc: Term, ac: Term, a_steps: int,
    tank: Tank, depth: int, strategy: Strategy, head: TraceStep,
) -> Verdict:
    evals = _eval_statements(m0, mc, a0, ac, a_steps)

    def claim(rule: str, children: Tuple[Trace, ...] = ()) -> TraceStep:
        return TraceStep(Both(evals + (CanonIn(ac, (mc,)),)), rule, children)

    def mismatch(rule: str) -> Verdict:
        return refuted(Trace((
            head,
            TraceStep(Both(evals), "evaluate"),
            TraceStep(CanonNotIn(ac, (mc,)), rule),
        )))

    def wrap(rule: str, subs: Tuple[Verdict, ...]) -> Verdict:
        status = worst(v.status for v in subs)
        out = Trace((head, claim(rule, tuple(v.trace for v in subs))))
        if status is Status.VERIFIED:
            return verified(out)
        picked = next(v for v in subs if v.status is status)
        return Verdict(status, out, bound=picked.bound,
                       fuel_report=picked.fuel_report,
                       pair=picked.pair, instance=picked.instance)

    match ac:
        case TTrue():
            if isinstance(mc, It):
                return verified(Trace((head, claim("canon-true"))))
            return mismatch("canon-true")
        case TFalse():
            return refuted(Trace((
                head,
                TraceStep(Both(evals), "evaluate"),
                TraceStep(CanonEmpty(ac), "canon-false"),
            )))
        case Disj(l, r):
            match mc:
                case Inl(x):
                    return wrap("canon-disj-left",
                                (_check_member(x, l, tank, depth, strategy),))
                case Inr(x):
                    return wrap("canon-disj-right",
                                (_check_member(x, r, tank, depth, strategy),))
                case _:
                    return mismatch("canon-disj")
        case Exists(d, b, f):
            match mc:
                case Pair(x, y):
                    return wrap("canon-exists", (
                        _check_member(x, d, tank, depth, strategy),
                        _check_member(y, substitute(f, b, x), tank, depth, strategy),
                    ))
                case _:
                    return mismatch("canon-exists")
        case Forall(d, b, f):
            match mc:
                case Lam(_, _):
                    return _forall_member(
                        m0, a0, mc, ac, evals, tank, depth, strategy, head
                    )
                case _:
                    return mismatch("canon-forall")
        case _:
            # Canonical, but no witness relation is defined at this shape.
            return mismatch("no-former")


def _family_at(binder: str, family: Term, value: Term) -> Term:
    return substitute(family, binder, value)


def _forall_member(
    m0: Term, a0: Term, mc: Lam, ac: Forall, evals: Tuple,
    tank: Tank, depth: int, strategy: Strategy, head: TraceStep,
) -> Verdict:
    d, b, f = ac.domain, ac.binder, ac.family
    y, body = mc.binder, mc.body
    rd = run(d, tank, strategy)
    if isinstance(rd, FuelExhausted):
        return diverged(f"domain diverged: {rd.remaining}", Trace((head,)))
    if isinstance(rd, Stuck):
        return refuted(Trace((head, TraceStep(Blocked(rd.offending), "stuck-type"))))
    dc = rd.term
    fam_display = _family_at(b, f, Var(y)) if b != y else f

    gen_hyp = TraceStep(
        Gen((y,), Hyp((Member(Var(y), d),), Member(body, fam_display))),
        "canon-forall",
    )

    inh = _inhabited(dc, tank, strategy)
    if inh is Inhabitation.DIVERGED:
        return diverged(f"domain inhabitation diverged: {describe(dc)}", Trace((head,)))
    if inh is Inhabitation.UNINHABITED:
        # Material discharge: the hypothesis can never be verified, so
        # the whole hypothetical-general premise holds vacuously.
        mvar = "m" if "m" not in free_vars(body) | {y} else "m0"
        step4 = TraceStep(
            Gen((y,), Hyp((CanonClosureIn(dc, (Var(y),)),), Member(body, fam_display))),
            "hypothesis-membership",
        )
        step5 = TraceStep(
            Gen((y,), Hyp(
                (Both((Evals(Var(y), Var(mvar)), CanonIn(dc, (Var(mvar),)))),),
                Member(body, fam_display),
            )),
            "membership-closure",
            (Trace((TraceStep(CanonEmpty(dc), "vacuous-discharge"),)),),
        )
        claim = TraceStep(Both(evals + (CanonIn(ac, (mc,)),)), "canonical-closure")
        return verified(Trace((head, claim, gen_hyp, step4, step5)))

    ed = _enumerate(dc, depth, tank, strategy)
    if ed.failure is not None:
        fv = ed.failure
        if fv.status is Status.DIVERGED:
            return diverged(fv.fuel_report or "domain enumeration diverged", Trace((head,)))
        return refuted(Trace((head,) + tuple(fv.trace.steps)))

    subs: List[Verdict] = []
    instance_traces: List[Trace] = []
    failing: Optional[Verdict] = None
    failing_stmt = None
    for w in ed.witnesses:
        inst_term = substitute(body, y, w)
        inst_type = _family_at(b, f, w)
        v = _check_member(inst_term, inst_type, tank, depth, strategy)
        subs.append(v)
        instance_traces.append(Trace((
            TraceStep(Member(inst_term, inst_type), f"instance [{pretty(w)}]", (v.trace,)),
        )))
        if v.status is Status.REFUTED and failing is None:
            failing = v
            failing_stmt = Member(inst_term, inst_type)

    claim = TraceStep(Both(evals + (CanonIn(ac, (mc,)),)), "canonical-closure")
    gen = TraceStep(gen_hyp.statement, "instances", tuple(instance_traces))
    out = Trace((head, claim, gen))

    status = worst(v.status for v in subs) if subs else Status.VERIFIED
    if status is Status.REFUTED:
        assert failing is not None
        return Verdict(Status.REFUTED, out, pair=failing.pair, instance=failing_stmt)
    if status is Status.DIVERGED:
        picked = next(v for v in subs if v.status is status)
        return diverged(picked.fuel_report or "instance diverged", out)
    if status is Status.UNKNOWN or not ed.complete:
        return unknown(depth, out)
    return verified(out)
