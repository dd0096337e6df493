"""Walkthrough: from ballots to margins, majority relation, and dominance.

Run with: python3 demos/01_profiles_and_dominance.py
"""

from setvote import (
    MajorityRelation,
    condorcet_loser,
    condorcet_winner,
    connected_set,
    covering_cycle,
    dominant_chain,
    margins,
    schwartz_set,
    to_letters,
    top_cycle,
)
from setvote.io import fixture_path, parse_profile

profile = parse_profile(fixture_path("fig1.prof").read_text())
print("A four-voter election over the alternatives a..e. Ballots, best first:")
for i, ballot in enumerate(profile.ballots, start=1):
    print(f"  voter {i}: " + " > ".join("abcde"[x] for x in ballot))

print("\nMajority margins g[x][y] = #(x over y) - #(y over x):")
print(margins(profile))

rel = MajorityRelation.from_profile(profile)
print("\nSign pattern (the majority relation):")
print("  a and b tie, d and e tie, c beats a, b beats c,")
print("  and each of a, b, c beats both d and e.")
assert rel.ties(0, 1) and rel.ties(3, 4)

print("\nNo alternative beats all others and none loses to all others:")
print("  condorcet winner:", condorcet_winner(rel), " condorcet loser:", condorcet_loser(rel))

chain = dominant_chain(rel)
print("\nDominant sets form a chain under inclusion:")
for s in chain:
    print("  ", s)

tc = top_cycle(rel)
print("\nThe top cycle is the smallest dominant set:", tc)
print("It is held together by a cycle in the weak relation (ties go both ways):")
cyc = covering_cycle(rel)
print("  ", " -> ".join("abcde"[x] for x in cyc), "-> back to", "abcde"[cyc[0]])

print("\nThe Schwartz set follows strict edges only and can be smaller:", schwartz_set(rel))

print("\nConnected sets: which alternatives fall out of the top cycle when one is removed?")
for x in tc:
    print(f"  removing {'abcde'[x]} also drops {to_letters(connected_set(rel, x).members)}")
