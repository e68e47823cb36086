#!/usr/bin/env python3
"""Tree-pair arithmetic in V_n(H), step by step.

An element of the Thompson-like group V_n(H) is a quadruple
(domain tree, range tree, tau, labels): it maps the branch below the i-th
domain leaf onto the branch below the tau(i)-th range leaf, twisting the
infinite tail letter-wise by the label attached to that range leaf.

This walkthrough builds a few elements of V_2(Z_2), composes and inverts
them exactly, and shows that reduction collapses every representative of a
homeomorphism to the same canonical tree pair.
"""

from vnh import (
    Perm,
    Subgroup,
    TreePairElement,
    compose,
    element_order,
    equal_elements,
    eval_prefix,
    identity_element,
    invert,
    parse_tree,
    reduce_element,
)
from vnh.elements import expand_representative

n = 2
H = Subgroup.symmetric(2)  # Z_2 inside Sym(2)
swap = Perm((2, 1))
one = Perm.identity(2)

print("== elements ==")
# a: the letter-wise swap of every digit of the binary Cantor set.
a = TreePairElement(n, H, parse_tree("*", n), parse_tree("*", n), (1,), (swap,))
# b: exchange the two halves of the Cantor set, no tail twist.
b = TreePairElement(
    n, H, parse_tree("(* *)", n), parse_tree("(* *)", n), (2, 1), (one, one)
)
# x: the classic non-torsion shift between an unbalanced pair of trees.
x = TreePairElement(
    n, H, parse_tree("((* *) *)", n), parse_tree("(* (* *))", n),
    (1, 2, 3), (one, one, one),
)
for name, g in [("a", a), ("b", b), ("x", x)]:
    print(f"  {name} = {g}")

print("\n== evaluation ==")
for word in [(1, 2, 2), (2, 1, 1)]:
    image, tail = eval_prefix(a, word)
    print(f"  a maps branch {word} to {image} with residual tail action {tail}")

print("\n== composition and inversion ==")
ab = compose(a, b)  # apply b first, then a
print(f"  a o b = {reduce_element(ab)}")
print(f"  (a o b) o (a o b) is the identity: "
      f"{equal_elements(compose(ab, ab), identity_element(n, H))}")
print(f"  x o x^-1 reduces to the identity: "
      f"{equal_elements(compose(x, invert(x)), identity_element(n, H))}")

print("\n== representatives collapse to one reduced form ==")
bloated = expand_representative(expand_representative(b, 1), 3)
print(f"  b re-encoded on {bloated.k} leaves: {bloated}")
print(f"  reduce_element gives back b: {reduce_element(bloated).key() == b.key()}")

print("\n== orders ==")
for name, g in [("a", a), ("b", b), ("a o b", ab), ("x", x)]:
    m = element_order(g, cap=64)
    print(f"  order({name}) = {'exceeds 64' if m is None else m}")
