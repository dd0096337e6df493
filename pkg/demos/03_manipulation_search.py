"""Walkthrough: hunting for profitable deviations, alone and in groups.

Run with: python3 demos/03_manipulation_search.py
"""

from setvote import (
    ExtensionKind,
    Universe,
    find_group_manipulation,
    find_manipulation,
    find_strong_manipulation,
    parse_rule,
    sweep_strategyproofness,
)
from setvote.io import fixture_path, parse_profile


def letters(ballot):
    return " > ".join("abc"[x] for x in ballot)


left = parse_profile(fixture_path("fig2-left.prof").read_text())
print("Five voters over a, b, c; plurality elects {a,c}.")
print("A deviation is profitable when every way of breaking ties leaves the")
print("deviator at least as happy, and some way leaves them happier.\n")

man = find_manipulation(parse_rule("plurality"), left)
print(f"plurality: voter {man.voter + 1} (truly {letters(man.true_ballot)})")
print(f"  reports {letters(man.misreport)} and turns {man.honest_set} into {man.manipulated_set}")

print("\nThe top cycle admits no such deviation on this profile:")
print("  ", find_manipulation(parse_rule("tc"), left))

print("\n...nor anywhere else with three alternatives and up to four voters:")
verdict = sweep_strategyproofness(parse_rule("tc"), Universe(3, 4))
print("  ", verdict.outcome.value)

print("\nBorda is already manipulable with two voters; the sweep returns the")
print("first witness in scan order, which replays exactly:")
verdict = sweep_strategyproofness(parse_rule("borda"), Universe(3, 3))
man = verdict.witness["manipulation"]
print(f"  ballots {[letters(b) for b in man.profile.ballots]}: voter {man.voter + 1}")
print(f"  reports {letters(man.misreport)}: {man.honest_set} -> {man.manipulated_set}")

print("\nWhole groups can deviate jointly; with plurality even a pair finds a")
print("deal both members like:")
group = find_group_manipulation(parse_rule("plurality"), left, 2)
print(f"  voters {tuple(v + 1 for v in group.voters)} -> {group.manipulated_set}")

print("\nA much stronger requirement: the honest outcome should be at least as")
print("good as everything reachable. Even the top cycle fails that (a lone")
print("deviation can force an incomparable set)...")
strong = None
for profile in Universe(3, 2).profiles():
    strong = find_strong_manipulation(parse_rule("tc"), profile, ExtensionKind.FISHBURN)
    if strong is not None:
        break
print(f"  ballots {[letters(b) for b in strong.profile.ballots]}: "
      f"{strong.honest_set} -> {strong.manipulated_set}")
print("...while under the optimistic weak comparison it is safe on this scale.")
