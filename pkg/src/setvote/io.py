"""File formats: profile documents, margin-graph documents, verdict reports.

The profile format is line oriented and human writable::

    # optional comments
    m=3 n=2
    a b c
    c a b

Alternatives are letters ``a``..``z`` (mapped to 0..25) or plain integers.
Margin graphs are JSON documents ``{"m": int, "margins": [[int, ...], ...]}``.
Verdict reports are emitted both as aligned text and as a JSON payload in
which every witness profile is embedded as a parseable profile document, so
any reported counterexample can be replayed.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from string import ascii_lowercase

import numpy as np

from .core import ChoiceSet, Profile
from .mcgarvey import WeightedMajorityGraph
from .verify import AxiomVerdict, Manipulation, Outcome, Universe
from .rules import parse_rule

__all__ = [
    "ParseError",
    "fixture_path",
    "parse_graph",
    "parse_profile",
    "parse_report",
    "serialize_graph",
    "serialize_profile",
    "serialize_report",
]


class ParseError(ValueError):
    pass


def fixture_path(name: str) -> Path:
    """Path of a bundled example file such as 'fig1.prof'."""
    return Path(str(resources.files("setvote") / "fixtures" / name))


# ---------------------------------------------------------------------------
# profile documents


def _parse_token(token: str, m: int, line_no: int) -> int:
    if token.isdigit() or (token[0] == "-" and token[1:].isdigit()):
        value = int(token)
    elif len(token) == 1 and token in ascii_lowercase:
        value = ascii_lowercase.index(token)
    else:
        raise ParseError(f"line {line_no}: cannot read alternative {token!r}")
    if not 0 <= value < m:
        raise ParseError(f"line {line_no}: alternative {token!r} out of range for m={m}")
    return value


def parse_profile(text: str) -> Profile:
    lines = []
    for raw_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            lines.append((raw_no, stripped))
    if not lines:
        raise ParseError("empty profile document")
    header_no, header = lines[0]
    parts = dict(
        item.split("=", 1) for item in header.split() if "=" in item
    )
    if set(parts) != {"m", "n"} or len(header.split()) != 2:
        raise ParseError(f"line {header_no}: expected header 'm=<int> n=<int>', got {header!r}")
    try:
        m, n = int(parts["m"]), int(parts["n"])
    except ValueError:
        raise ParseError(f"line {header_no}: m and n must be integers") from None
    if m < 1 or n < 1:
        raise ParseError(f"line {header_no}: m and n must be positive")
    body = lines[1:]
    if len(body) != n:
        raise ParseError(f"expected {n} ballot lines, found {len(body)}")
    ballots = []
    for line_no, line in body:
        tokens = line.split()
        if len(tokens) != m:
            raise ParseError(f"line {line_no}: expected {m} alternatives, found {len(tokens)}")
        ballot = tuple(_parse_token(tok, m, line_no) for tok in tokens)
        if len(set(ballot)) != m:
            raise ParseError(f"line {line_no}: ballot repeats an alternative")
        ballots.append(ballot)
    return Profile(m, tuple(ballots))


def _ballot_text(ballot) -> str:
    if len(ballot) <= 26:
        return " ".join(ascii_lowercase[x] for x in ballot)
    return " ".join(str(x) for x in ballot)


def serialize_profile(profile: Profile) -> str:
    lines = [f"m={profile.m} n={profile.n}"]
    lines.extend(_ballot_text(b) for b in profile.ballots)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# margin-graph documents


def parse_graph(text: str) -> WeightedMajorityGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"graph document is not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or set(doc) != {"m", "margins"}:
        raise ParseError("graph document must be an object with keys 'm' and 'margins'")
    try:
        return WeightedMajorityGraph(int(doc["m"]), np.array(doc["margins"], dtype=np.int64))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def serialize_graph(graph: WeightedMajorityGraph) -> str:
    return json.dumps({"m": graph.m, "margins": graph.target.tolist()}, indent=1) + "\n"


# ---------------------------------------------------------------------------
# report documents


def _encode(value):
    if isinstance(value, Profile):
        return {"$profile": serialize_profile(value)}
    if isinstance(value, ChoiceSet):
        return {"$choice_set": {"m": value.m, "members": list(value.members)}}
    if isinstance(value, Manipulation):
        return {"$manipulation": {
            "profile": _encode(value.profile),
            "voter": value.voter,
            "true_ballot": _encode(value.true_ballot),
            "misreport": _encode(value.misreport),
            "honest_set": _encode(value.honest_set),
            "manipulated_set": _encode(value.manipulated_set),
            "extension": value.extension.value,
        }}
    if isinstance(value, (tuple, list)):
        return {"$tuple": [_encode(v) for v in value]}
    if isinstance(value, dict):
        return {k: _encode(v) for k, v in value.items()}
    if isinstance(value, (int, str, bool)) or value is None:
        return value
    raise TypeError(f"cannot encode {type(value).__name__} into a report")


def _decode(value):
    from .extensions import ExtensionKind

    if isinstance(value, dict):
        if "$profile" in value:
            return parse_profile(value["$profile"])
        if "$choice_set" in value:
            inner = value["$choice_set"]
            return ChoiceSet.from_members(inner["m"], inner["members"])
        if "$manipulation" in value:
            inner = {k: _decode(v) for k, v in value["$manipulation"].items()}
            inner["extension"] = ExtensionKind(inner["extension"])
            return Manipulation(**inner)
        if "$tuple" in value:
            return tuple(_decode(v) for v in value["$tuple"])
        return {k: _decode(v) for k, v in value.items()}
    return value


def _universe_payload(universe: Universe) -> dict:
    return {
        "m": universe.m,
        "n_max": universe.n_max,
        "k_hom": universe.k_hom,
        "margin_cap": universe.margin_cap,
    }


def serialize_report(verdicts, assertions=None) -> tuple[str, dict]:
    """Render verdicts as aligned text plus a machine-readable JSON payload."""
    verdicts = list(verdicts)
    lines = ["axiom report", "============"]
    if verdicts:
        width_rule = max(len(v.rule.name) for v in verdicts)
        width_axiom = max(len(v.axiom) for v in verdicts)
        for v in verdicts:
            u = v.universe
            scope = f"m={u.m} n<={u.n_max}"
            lines.append(
                f"{v.rule.name:<{width_rule}}  {v.axiom:<{width_axiom}}  "
                f"{v.outcome.value}  [{scope}]"
            )
    witnessed = [v for v in verdicts if v.witness]
    for v in witnessed:
        lines.append("")
        lines.append(f"witness for {v.rule.name} / {v.axiom}:")
        for key, value in sorted(v.witness.items()):
            if isinstance(value, Profile):
                lines.append(f"  {key}:")
                lines.extend("    " + ln for ln in serialize_profile(value).splitlines())
            else:
                lines.append(f"  {key}: {value}")
    if assertions:
        lines.append("")
        lines.append("assertions")
        lines.append("----------")
        for name, ok, detail in assertions:
            status = "pass" if ok else "FAIL"
            lines.append(f"{status}  {name}" + (f"  ({detail})" if detail else ""))
    payload = {
        "kind": "axiom-report",
        "verdicts": [
            {
                "axiom": v.axiom,
                "rule": v.rule.name,
                "universe": _universe_payload(v.universe),
                "outcome": v.outcome.value,
                "witness": _encode(v.witness) if v.witness else None,
            }
            for v in verdicts
        ],
    }
    if assertions is not None:
        payload["assertions"] = [
            {"name": name, "ok": ok, "detail": detail} for name, ok, detail in assertions
        ]
    return "\n".join(lines) + "\n", payload


def parse_report(payload) -> list[AxiomVerdict]:
    """Rebuild the verdict list from a JSON payload (inverse of serialize_report)."""
    if isinstance(payload, str):
        payload = json.loads(payload)
    if payload.get("kind") != "axiom-report":
        raise ParseError("not an axiom report document")
    out = []
    for item in payload["verdicts"]:
        u = item["universe"]
        out.append(
            AxiomVerdict(
                axiom=item["axiom"],
                rule=parse_rule(item["rule"]),
                universe=Universe(u["m"], u["n_max"], u["k_hom"], u["margin_cap"]),
                outcome=Outcome(item["outcome"]),
                witness=_decode(item["witness"]) if item["witness"] else None,
            )
        )
    return out
