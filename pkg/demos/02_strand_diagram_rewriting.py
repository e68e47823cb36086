#!/usr/bin/env python3
"""Strand diagrams and their rewriting to unique reduced form.

An element's diagram hangs its domain tree as splits below a source, its
range tree as merges above a sink, and joins leaf i to leaf tau(i) with a
sigma-vertex carrying the leaf's label.  Four local moves (split/merge
collapse, merge/split resolution, composing adjacent sigma-vertices, and
pushing a sigma-vertex through a merge or split) rewrite every diagram to
a unique reduced form; diagrams compose by gluing sinks to sources.
"""

import random

from vnh import (
    Perm,
    Subgroup,
    TreePairElement,
    build_diagram,
    compose,
    concatenate,
    cut_to_element,
    diagram_equal,
    find_redexes,
    identity_diagram,
    invert,
    parse_tree,
    reduce,
    reduce_element,
)
from vnh.elements import expand_representative, random_element
from vnh.rewriting import format_trace

n = 2
H = Subgroup.symmetric(2)
one = Perm.identity(2)
swap = Perm((2, 1))

g = TreePairElement(
    n, H, parse_tree("(* (* *))", n), parse_tree("((* *) *)", n),
    (3, 1, 2), (one, swap, one),
)
d = build_diagram(g)
print(f"diagram of g: {d}")
print("\nDOT output is deterministic; feed it to graphviz:")
print(d.to_dot())

print("== an unreduced representative has redexes ==")
bloat = build_diagram(expand_representative(g, 2))
print(f"  bloated diagram: {bloat}")
for r in find_redexes(bloat):
    print(f"  redex: {r}")

trace = []
reduced = reduce(bloat, trace=trace)
print(f"  reduced back: {diagram_equal(reduced, reduce(d))}")
print("  reduction log:")
for line in format_trace(trace).splitlines():
    print(f"    {line}")

print("\n== concatenation realizes composition ==")
rng = random.Random(7)
f = random_element(n, H, rng)
both = concatenate(build_diagram(g), build_diagram(f))  # g acts first
print(f"  concatenated: {both}")
expected = build_diagram(reduce_element(compose(f, g)))
print(f"  reduces to the diagram of f o g: {diagram_equal(reduce(both), expected)}")
undone = concatenate(build_diagram(g), build_diagram(invert(g)))
print(f"  g glued to its inverse reduces to the identity strand: "
      f"{diagram_equal(reduce(undone), identity_diagram(n, 1))}")

print("\n== two independent random schedules, one normal form ==")
for seed in (1, 2, 3):
    r1 = reduce(both, rng=random.Random(seed))
    r2 = reduce(both, rng=random.Random(seed + 100))
    print(f"  schedules {seed}/{seed+100} agree: {diagram_equal(r1, r2)}")

print("\n== cutting a reduced diagram recovers the reduced element ==")
back = cut_to_element(reduce(d), H)
print(f"  cut(reduce(build(g))) == reduce(g): {back.key() == reduce_element(g).key()}")
