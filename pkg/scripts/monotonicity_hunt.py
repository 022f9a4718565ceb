#!/usr/bin/env python3
"""Hunt random finite world models for monotonicity failures.

Rule validity at a world quantifies over present knowledge only, so a
future world can break it; the hypothetical reading quantifies over all
futures and cannot.  This script measures how often random models
exhibit the breakage and prints the minimal two-world example.
"""

import argparse
import random

from ctkernel.worlds import (
    Atom, HypForced, RuleValid, chain_model, check_monotone, forces,
    random_model, render_wjudgment,
)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--models", type=int, default=500)
    ap.add_argument("--seed", type=int, default=20260811)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    rule_breaks = 0
    hyp_breaks = 0
    first = None
    for index in range(args.models):
        model = random_model(rng)
        for a in model.atoms:
            for b in model.atoms:
                ra = check_monotone(model, RuleValid(Atom(a), Atom(b)))
                if ra is not None:
                    rule_breaks += 1
                    if first is None:
                        first = (index, a, b, ra, model)
                if check_monotone(model, HypForced(Atom(a), Atom(b))) is not None:
                    hyp_breaks += 1

    print(f"models sampled:                {args.models}")
    print(f"rule-validity monotonicity failures: {rule_breaks}")
    print(f"hypothetical monotonicity failures:  {hyp_breaks} (provably zero)")
    if first:
        index, a, b, (u, v), model = first
        print(f"\nfirst failure at model {index}: rule {a} {b} forced at {u}, broken at {v}")
        print(f"worlds: {', '.join(model.worlds)}")

    print("\nthe two-world chain, atom A learned only above, B never:")
    chain = chain_model()
    for j in (RuleValid(Atom("A"), Atom("B")), HypForced(Atom("A"), Atom("B"))):
        values = {w: forces(chain, w, j) for w in chain.worlds}
        print(f"  {render_wjudgment(j):<14} {values}")


if __name__ == "__main__":
    main()
