"""Independent nine-valued logic oracles.

These derive the IEEE-1164 behaviour from the strength/value structure of
the carrier rather than transcribing the standard's tables, so they stay
independent of the table-driven implementation they check.
"""

LOGIC9 = "UX01ZWLH-"

# effective binary value classes: forcing/weak collapse for the gates
_GATE_CLASS = {
    "U": "U",
    "X": "X", "Z": "X", "W": "X", "-": "X",
    "0": "0", "L": "0",
    "1": "1", "H": "1",
}


def gate_and(a, b):
    ca, cb = _GATE_CLASS[a], _GATE_CLASS[b]
    if "0" in (ca, cb):
        return "0"
    if "U" in (ca, cb):
        return "U"
    if "X" in (ca, cb):
        return "X"
    return "1"


def gate_or(a, b):
    ca, cb = _GATE_CLASS[a], _GATE_CLASS[b]
    if "1" in (ca, cb):
        return "1"
    if "U" in (ca, cb):
        return "U"
    if "X" in (ca, cb):
        return "X"
    return "0"


def gate_xor(a, b):
    ca, cb = _GATE_CLASS[a], _GATE_CLASS[b]
    if "U" in (ca, cb):
        return "U"
    if "X" in (ca, cb):
        return "X"
    return "1" if ca != cb else "0"


def gate_not(a):
    c = _GATE_CLASS[a]
    return {"U": "U", "X": "X", "0": "1", "1": "0"}[c]


def gate_nand(a, b):
    return gate_not(gate_and(a, b))


def gate_nor(a, b):
    return gate_not(gate_or(a, b))


def gate_xnor(a, b):
    return gate_not(gate_xor(a, b))


def resolve_pair(a, b):
    """Pairwise resolution from driver strengths: U dominates, then any
    unknown-ish ('X'/'-') wins, forcing beats weak beats high-impedance,
    and equal-strength conflicts degrade to the unknown of that strength."""
    if a == "U" or b == "U":
        return "U"
    if a == "-" or b == "-" or a == "X" or b == "X":
        return "X"
    if a == b:
        return a
    if a == "Z":
        return b
    if b == "Z":
        return a
    forcing = {"0", "1"}
    if a in forcing and b in forcing:
        return "X"  # 0 vs 1
    if a in forcing:
        return a  # forcing beats weak
    if b in forcing:
        return b
    return "W"  # weak conflict (L/H/W combinations)


def resolve_list(drivers):
    acc = drivers[0]
    for d in drivers[1:]:
        acc = resolve_pair(acc, d)
    return acc
