"""Fueled weak evaluation to canonical form.

Big-step behaviour is implemented as an iterative head-reduction loop so
divergent programs burn fuel instead of the Python stack.  Evaluation is
weak: nothing is rewritten under a lambda, inside pair components,
injection arguments or type-former fields; canonical forms are values
exactly as constructed.

The default strategy is call-by-name: beta substitutes the unevaluated
argument.  A call-by-value variant (the argument is reduced to canonical
form first) exists purely so tests can demonstrate that verdicts do not
depend on the strategy; step counts do.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Union

from .syntax import describe
from .terms import (
    App, Case, CanonicalForm, Fst, Inl, Inr, Lam, Pair, Snd, Term, Var,
    classify, substitute,
)


class Strategy(Enum):
    CALL_BY_NAME = "call-by-name"
    CALL_BY_VALUE = "call-by-value"


@dataclass(frozen=True)
class Canonical:
    """Evaluation reached a canonical form in ``steps`` reductions."""
    term: Term
    form: CanonicalForm
    steps: int


@dataclass(frozen=True)
class FuelExhausted:
    """The step budget ran out; ``remaining`` describes the pending redex."""
    remaining: str


@dataclass(frozen=True)
class Stuck:
    """No rule applies: an eliminator met the wrong canonical shape, or a
    free variable reached head position."""
    offending: Term


EvalResult = Union[Canonical, FuelExhausted, Stuck]


@dataclass
class Tank:
    """Mutable step budget shared across every evaluation inside one check."""
    remaining: int


@dataclass(frozen=True)
class _StuckAt:
    subterm: Term


def _step(t: Term, strategy: Strategy):
    """One head reduction; returns the reduct or a _StuckAt marker."""
    match t:
        case App(fn, arg):
            match fn:
                case Lam(b, body):
                    if strategy is Strategy.CALL_BY_VALUE and classify(arg) is None:
                        inner = _step(arg, strategy)
                        if isinstance(inner, _StuckAt):
                            return inner
                        return App(fn, inner)
                    return substitute(body, b, arg)
                case _ if classify(fn) is not None:
                    return _StuckAt(t)
                case _:
                    inner = _step(fn, strategy)
                    if isinstance(inner, _StuckAt):
                        return inner
                    return App(inner, arg)
        case Fst(p):
            match p:
                case Pair(l, _):
                    return l
                case _ if classify(p) is not None:
                    return _StuckAt(t)
                case _:
                    inner = _step(p, strategy)
                    if isinstance(inner, _StuckAt):
                        return inner
                    return Fst(inner)
        case Snd(p):
            match p:
                case Pair(_, r):
                    return r
                case _ if classify(p) is not None:
                    return _StuckAt(t)
                case _:
                    inner = _step(p, strategy)
                    if isinstance(inner, _StuckAt):
                        return inner
                    return Snd(inner)
        case Case(s, lb, lbody, rb, rbody):
            match s:
                case Inl(v):
                    return substitute(lbody, lb, v)
                case Inr(v):
                    return substitute(rbody, rb, v)
                case _ if classify(s) is not None:
                    return _StuckAt(t)
                case _:
                    inner = _step(s, strategy)
                    if isinstance(inner, _StuckAt):
                        return inner
                    return Case(inner, lb, lbody, rb, rbody)
        case Var(_):
            return _StuckAt(t)
        case _:
            raise AssertionError(f"no step for canonical term {t!r}")


def run(t: Term, tank: Tank, strategy: Strategy = Strategy.CALL_BY_NAME) -> EvalResult:
    """Reduce to canonical form, drawing steps from the shared tank."""
    steps = 0
    while True:
        form = classify(t)
        if form is not None:
            return Canonical(t, form, steps)
        if tank.remaining <= 0:
            return FuelExhausted(describe(t))
        nxt = _step(t, strategy)
        if isinstance(nxt, _StuckAt):
            return Stuck(nxt.subterm)
        tank.remaining -= 1
        steps += 1
        t = nxt


def evaluate(t: Term, fuel: int, strategy: Strategy = Strategy.CALL_BY_NAME) -> EvalResult:
    """Evaluate with a private fuel budget; fuel must be >= 1."""
    if fuel < 1:
        raise ValueError("fuel must be >= 1")
    return run(t, Tank(fuel), strategy)
