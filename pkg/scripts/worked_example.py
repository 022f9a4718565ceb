#!/usr/bin/env python3
"""Walk the flagship vacuous-implication check in both models.

Shows the numbered derivation for membership of the constant pair
function in False => True, then the binary (equality) reading of the
same fact, then a contrasting refutation.
"""

from ctkernel.binary import check_eq_member
from ctkernel.syntax import parse
from ctkernel.unary import check_member


def show(title: str, verdict) -> None:
    print(f"== {title}")
    print(verdict.trace.render())
    print(f"verdict: {verdict.status.value}")
    print()


def main() -> None:
    witness = parse("lam x. <it, it>")
    claim = parse("False => True")

    show("membership, unary model", check_member(witness, claim))
    show("reflexive equality, binary model",
         check_eq_member(witness, witness, claim))
    show("a refutation for contrast",
         check_member(parse("<it, it>"), claim))


if __name__ == "__main__":
    main()
