#!/usr/bin/env python3
"""Classify a battery of inference rules into the four quadrants of
derivable x admissible, printing the joint report for each."""

from ctkernel.rules import compare_readings, parse_rule

GALLERY = [
    ("conjunction introduction", "P true; Q true |- P /\\ Q true"),
    ("conjunction elimination (left)", "P /\\ Q true |- P true"),
    ("conjunction elimination (right)", "P /\\ Q true |- Q true"),
    ("disjunction introduction (left)", "P true |- P \\/ Q true"),
    ("disjunction elimination to left disjunct", "P \\/ Q true |- P true"),
    ("modus ponens", "P true; P => Q true |- Q true"),
    ("ex falso", "False true |- Q true"),
    ("weakening to truth", "P true |- True true"),
    ("identity", "P true |- P true"),
    ("conjunction commutation", "P /\\ Q true |- Q /\\ P true"),
]


def main() -> None:
    quadrants = {}
    for name, source in GALLERY:
        report = compare_readings(
            parse_rule(source), search_depth=5, instance_depth=2, witness_depth=3
        )
        key = (report.derivable, report.admissibility.verified)
        quadrants.setdefault(key, []).append(name)
        print(f"--- {name}")
        print(report.render())
        print()

    print("=== quadrant summary (derivable, admissible)")
    for key in sorted(quadrants, reverse=True):
        names = ", ".join(quadrants[key])
        print(f"{key}: {names}")


if __name__ == "__main__":
    main()
