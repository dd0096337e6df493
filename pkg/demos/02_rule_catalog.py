"""Walkthrough: the rule catalog and what each rule reads from a profile.

Run with: python3 demos/02_rule_catalog.py
"""

from setvote import TiesUnsupportedError, basis, catalog, evaluate, parse_rule
from setvote.io import fixture_path, parse_profile

fig1 = parse_profile(fixture_path("fig1.prof").read_text())
fig2 = parse_profile(fixture_path("fig2-left.prof").read_text())

print("Every rule is addressable by a stable string name and is classified by")
print("how much of the profile it actually reads:\n")
print(f"{'rule':22}{'basis':16}{'five alternatives':20}{'three alternatives'}")
for rule in catalog():
    try:
        on_fig1 = str(evaluate(rule, fig1))
    except (TiesUnsupportedError, ValueError) as exc:
        on_fig1 = "(undefined: ties)" if isinstance(exc, TiesUnsupportedError) else "(n/a)"
    try:
        on_fig2 = str(evaluate(rule, fig2))
    except (TiesUnsupportedError, ValueError):
        on_fig2 = "(undefined)"
    print(f"{rule.name:22}{basis(rule).value:16}{on_fig1:20}{on_fig2}")

print("\nParameterized rules parse their arguments from the name:")
for name in ("supermajority-tc:k=4", "shifted-tc:k=0", "fab:bc"):
    rule = parse_rule(name)
    print(f"  {name:22} -> {evaluate(rule, fig2)} on the three-alternative profile")

print("\nThe lenient top cycle keeps everything a single voter says,")
print("but collapses once the electorate doubles (margins grow, the slack does not):")
from setvote.core import Profile

one = Profile.from_rankings([(0, 1, 2)])
tc_star = parse_rule("tc-star")
print("  one voter a>b>c:   ", evaluate(tc_star, one))
print("  the same voter twice:", evaluate(tc_star, one.tiled(2)))
