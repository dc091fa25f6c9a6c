#!/usr/bin/env python3
"""Regenerates the synthetic oracle fixtures in this directory."""

import json
import os

HERE = os.path.dirname(os.path.abspath(__file__))


def group(free=0, factors=()):
    return {"free_rank": str(free), "invariant_factors": [str(f) for f in factors]}


def matrix(rows):
    return [[str(x) for x in row] for row in rows]


def family_objects(base, var="t", twist=None):
    adj = lambda kind: [{"kind": kind, "var": var, **({"twist": twist} if twist else {})}]
    tw = f"_{twist}" if twist else ""
    return [
        {"name": base, "adjunctions": []},
        {"name": f"{base}{tw}[{var}]", "base": base, "adjunctions": adj("poly")},
        {"name": f"{base}{tw}[{var}^-1]", "base": base, "adjunctions": adj("negpoly")},
        {"name": f"{base}{tw}[{var},{var}^-1]", "base": base, "adjunctions": adj("laurent")},
    ]


def family_keys(base, var="t", twist=None):
    tw = f"_{twist}" if twist else ""
    return (base, f"{base}{tw}[{var}]", f"{base}{tw}[{var}^-1]", f"{base}{tw}[{var},{var}^-1]")


def write(name, doc):
    path = os.path.join(HERE, name)
    with open(path, "w") as f:
        json.dump(doc, f, indent=2)
        f.write("\n")
    print("wrote", path)


def zero_matrix(rows, cols):
    return matrix([[0] * cols for _ in range(rows)])


def constant_family(base, lo, hi, k, var="t"):
    """Groups/maps for A[t], A[t^-1] equal to A and A[t,t^-1] = K_d + K_{d-1}.

    `k` maps degree -> number of Z summands (free only, for simplicity).
    Below the declared window K is treated as zero, matching the seeds of
    the serving layer."""
    b, p, n, l = family_keys(base, var)
    groups = {}
    maps = []
    for d in range(lo, hi + 1):
        kd = k(d)
        kdm1 = k(d - 1) if d - 1 >= lo else 0
        groups[f"{b}@{d}"] = group(kd)
        groups[f"{p}@{d}"] = group(kd)
        groups[f"{n}@{d}"] = group(kd)
        groups[f"{l}@{d}"] = group(kd + kdm1)
        ident = matrix([[1 if i == j else 0 for j in range(kd)] for i in range(kd)])
        incl = matrix([[1 if i == j else 0 for j in range(kd)] for i in range(kd + kdm1)])
        for kind in ("i_plus", "i_minus"):
            maps.append({"kind": kind, "object": b, "var": var, "degree": d, "matrix": ident})
        for kind in ("ev0_plus", "ev0_minus"):
            maps.append({"kind": kind, "object": b, "var": var, "degree": d, "matrix": ident})
        for kind in ("j_plus", "j_minus"):
            maps.append({"kind": kind, "object": b, "var": var, "degree": d, "matrix": incl})
    return groups, maps


# 1. pi_0 tables for Z and Z/4 (the polynomial/Laurent extensions keep the
#    projective class group of the base; identity structure maps).
for base, desc in (("Z", "pi_0 of the Z family"), ("Zmod4", "pi_0 of the Z/4 family")):
    groups, maps = constant_family(base, 0, 0, lambda d: 1 if d == 0 else 0)
    write(
        f"{'z' if base == 'Z' else 'zmod4'}_pi0.json",
        {
            "schema_version": "1",
            "mode": "oracle",
            "description": desc,
            "objects": family_objects(base),
            "degrees": {"lo": 0, "hi": 0},
            "groups": groups,
            "maps": maps,
        },
    )

# 2. 0-contracted synthetic instance with K_{-1} = Z. Degrees -2..3 so the
#    tower has headroom; all NK vanish and the Laurent carries the shift.
groups, maps = constant_family("Y", -2, 3, lambda d: 1 if d in (0, -1) else 0)
write(
    "contracted_knegone.json",
    {
        "schema_version": "1",
        "mode": "oracle",
        "description": "0-contracted synthetic instance with K_{-1} = Z",
        "objects": family_objects("Y"),
        "degrees": {"lo": -2, "hi": 3},
        "groups": groups,
        "maps": maps,
    },
)

# 3. An instance whose Bass-Heller-Swan map is an isomorphism in every
#    degree (constant K_d = Z).
groups, maps = constant_family("C", -3, 3, lambda d: 1)
write(
    "infty_contracted.json",
    {
        "schema_version": "1",
        "mode": "oracle",
        "description": "BHS isomorphism in all degrees",
        "objects": family_objects("C"),
        "degrees": {"lo": -3, "hi": 3},
        "groups": groups,
        "maps": maps,
    },
)

# 4. Negative controls for the fundamental sequence. Documented failures:
#    corrupt_spot2.json     -> inexact at spot 2 (j_+ = j_- = 0)
#    corrupt_section.json   -> boundary admits no section (j = x2)
#    corrupt_spot4.json     -> cokernel mismatch with the declared K_0
one = matrix([[1]])


def simple_family(jval):
    b, p, n, l = family_keys("X")
    groups = {f"{b}@1": group(1), f"{p}@1": group(1), f"{n}@1": group(1), f"{l}@1": group(1)}
    maps = [
        {"kind": "i_plus", "object": "X", "var": "t", "degree": 1, "matrix": one},
        {"kind": "i_minus", "object": "X", "var": "t", "degree": 1, "matrix": one},
        {"kind": "ev0_plus", "object": "X", "var": "t", "degree": 1, "matrix": one},
        {"kind": "ev0_minus", "object": "X", "var": "t", "degree": 1, "matrix": one},
        {"kind": "j_plus", "object": "X", "var": "t", "degree": 1, "matrix": matrix([[jval]])},
        {"kind": "j_minus", "object": "X", "var": "t", "degree": 1, "matrix": matrix([[jval]])},
    ]
    return groups, maps


groups, maps = simple_family(0)
write(
    "corrupt_spot2.json",
    {
        "schema_version": "1",
        "mode": "oracle",
        "description": "negative control: fails exactness at spot 2",
        "objects": family_objects("X"),
        "degrees": {"lo": 1, "hi": 1},
        "groups": groups,
        "maps": maps,
    },
)

groups, maps = simple_family(2)
write(
    "corrupt_section.json",
    {
        "schema_version": "1",
        "mode": "oracle",
        "description": "negative control: the boundary has no section",
        "objects": family_objects("X"),
        "degrees": {"lo": 1, "hi": 1},
        "groups": groups,
        "maps": maps,
    },
)

b, p, n, l = family_keys("X")
groups = {
    f"{b}@1": group(0, [4]),
    f"{p}@1": group(0, [4]),
    f"{n}@1": group(0, [4]),
    f"{l}@1": group(1, [4]),
}
incl_torsion = matrix([[0], [1]])  # canonical order: free generator first
maps = []
for kind in ("i_plus", "i_minus", "ev0_plus", "ev0_minus"):
    maps.append({"kind": kind, "object": "X", "var": "t", "degree": 1, "matrix": one})
for kind in ("j_plus", "j_minus"):
    maps.append({"kind": kind, "object": "X", "var": "t", "degree": 1, "matrix": incl_torsion})
g0, m0 = constant_family("X", 0, 0, lambda d: 2 if d == 0 else 0)
groups.update(g0)
maps.extend(m0)
write(
    "corrupt_spot4.json",
    {
        "schema_version": "1",
        "mode": "oracle",
        "description": "negative control: Bass cokernel disagrees with the declared K_0",
        "objects": family_objects("X"),
        "degrees": {"lo": 0, "hi": 1},
        "groups": groups,
        "maps": maps,
    },
)

# 5. load-time rejection: ev0+ o i+ != id at degree 0
b, p, n, l = family_keys("X")
groups = {f"{b}@0": group(1), f"{p}@0": group(1), f"{n}@0": group(1), f"{l}@0": group(1)}
maps = [
    {"kind": "i_plus", "object": "X", "var": "t", "degree": 0, "matrix": one},
    {"kind": "ev0_plus", "object": "X", "var": "t", "degree": 0, "matrix": matrix([[2]])},
]
write(
    "bad_identity.json",
    {
        "schema_version": "1",
        "mode": "oracle",
        "description": "invalid: ev0_plus o i_plus is multiplication by 2",
        "objects": family_objects("X"),
        "degrees": {"lo": 0, "hi": 0},
        "groups": groups,
        "maps": maps,
    },
)

# 6. twisted instance: phi^{-1} acts by -1 on K_0(A) = Z; the K_1-level
#    twisted family has NK+ = Z/2 and the mapping torus resolves to 0.
objects = family_objects("A", var="t", twist="phi")
groups = {
    "A@0": group(1),
    "A@1": group(0),
    "A_phi[t]@1": group(0, [2]),
    "A_phi[t^-1]@1": group(0),
    "A_phi[t,t^-1]@1": group(0, [2]),
}
maps = [
    {"kind": "phi_inverse", "object": "A", "twist": "phi", "degree": 0, "matrix": matrix([[-1]])},
    {"kind": "phi_inverse", "object": "A", "twist": "phi", "degree": 1, "matrix": []},
    {"kind": "i_plus", "object": "A", "var": "t", "twist": "phi", "degree": 1, "matrix": [[]]},
    {"kind": "i_minus", "object": "A", "var": "t", "twist": "phi", "degree": 1, "matrix": []},
    {"kind": "ev0_plus", "object": "A", "var": "t", "twist": "phi", "degree": 1, "matrix": []},
    {"kind": "ev0_minus", "object": "A", "var": "t", "twist": "phi", "degree": 1, "matrix": []},
    {"kind": "j_plus", "object": "A", "var": "t", "twist": "phi", "degree": 1, "matrix": one},
    {"kind": "j_minus", "object": "A", "var": "t", "twist": "phi", "degree": 1, "matrix": [[]]},
]
nil = [
    {"object": "A", "degree": 0, "k_nil": group(1, [2]), "nk_shift": group(0, [2])},
    {"object": "A", "degree": 1, "k_nil": group(1), "nk_shift": group(0, [2])},
]
write(
    "twisted_phi.json",
    {
        "schema_version": "1",
        "mode": "oracle",
        "description": "twist acting by -1 on K_0; NK+ = Z/2 at degree 1; nil tables",
        "objects": objects,
        "degrees": {"lo": 0, "hi": 1},
        "groups": groups,
        "maps": maps,
        "nil": nil,
    },
)

print("done")
