"""Walkthrough: mechanical axiom checking with replayable counterexamples.

Run with: python3 demos/04_axiom_checking.py
"""

from setvote import (
    Axiom,
    Outcome,
    Universe,
    check_axiom,
    check_robust_dominant,
    corroborate_theorems,
    parse_rule,
    replay,
)

universe = Universe(3, 3)

print("Each axiom checker walks every profile with three alternatives and up")
print("to three voters, in one fixed order, and stops at the first violation.\n")

print("Omninomination reads ballots, not margins; two profiles with the same")
print("margin matrix expose it:")
verdict = check_axiom(Axiom.PAIRWISENESS, parse_rule("omninomination"), universe)
p, q = verdict.witness["profiles"]
print("  ", p.ballots, "->", verdict.witness["outputs"][0])
print("  ", q.ballots, "->", verdict.witness["outputs"][1])
print("  witness replays:", replay(verdict))

print("\nThe winner-or-everything rule never outputs a two-element set, so")
print("requiring every set to be reachable gives the weaker 'not witnessed'")
print("verdict, never a refutation:")
verdict = check_axiom(Axiom.SET_NON_IMPOSITION, parse_rule("condorcet"), universe)
print("  ", verdict.outcome.value, "missing:", [str(s) for s in verdict.witness["missing"]])

print("\nThe margin-threshold rule always returns dominant sets, yet fails the")
print("robustness pair scan because it reads margin sizes:")
verdict = check_robust_dominant(parse_rule("margin-threshold"), universe)
print("  ", verdict.outcome.value, "- witness is a pair of profiles:", "profiles" in verdict.witness)

print("\nThe full corroboration sweep runs the whole catalog through the suite")
print("and checks the expected pattern:")
report = corroborate_theorems(universe)
for name, ok, detail in report.assertions:
    print(f"  {'pass' if ok else 'FAIL'}  {name}" + (f"  [{detail}]" if detail else ""))
print("\nRules passing all four headline axioms on this universe:")
print("  ", ", ".join(report.bracket_passers))
print("(with at most three voters, several rules pass vacuously; their")
print("cheapest counterexamples need four voters or more)")

violated = sum(1 for v in report.verdicts if v.outcome == Outcome.VIOLATED)
print(f"\n{len(report.verdicts)} verdicts, {violated} violations, all replayable.")
