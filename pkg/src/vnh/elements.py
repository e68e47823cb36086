"""Elements of the Thompson-like group V_n(H) as tree-pair quadruples.

An element is (domain tree, range tree, tau, labels): the homeomorphism of
the n-adic Cantor set sending u_i w  |->  u'_{tau(i)} s_{tau(i)}(w), where
u_i is the i-th domain leaf address, u'_j the j-th range leaf address, and
labels[j] = s_j in H is the tail permutation attached to range leaf j,
acting letter-wise on the infinite suffix.

The unreduced representatives of one homeomorphism differ by caret
expansions; `reduce_element` collapses to the unique fully reduced
representative, which doubles as the canonical form for equality, hashing
and enumeration.

Internally most arithmetic runs on the *triple view*: the sorted list of
(domain leaf address, range leaf address, label) with one entry per leaf.
Composition takes a common expansion of the middle trees and transports
addresses through labels letter-wise; that letter-wise relabeling is what
makes the pulled-back address sets valid trees again.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .perms import Perm, Subgroup, all_perms
from .trees import (
    LEAF,
    all_trees,
    common_expansion,
    leaf_addresses,
    leaf_count,
    locate,
    random_tree,
    tree_from_addresses,
    validate_tree,
)


class ArityMismatch(ValueError):
    pass


class SubgroupMismatch(ValueError):
    pass


@dataclass(frozen=True)
class TreePairElement:
    n: int
    subgroup: Subgroup
    domain_tree: tuple
    range_tree: tuple
    tau: tuple  # tau[i-1] = image of domain leaf i, 1-based
    labels: tuple  # labels[j-1] = Perm attached to range leaf j

    def __post_init__(self):
        validate_tree(self.domain_tree, self.n)
        validate_tree(self.range_tree, self.n)
        k = leaf_count(self.domain_tree)
        if leaf_count(self.range_tree) != k:
            raise ValueError("domain and range leaf counts differ")
        if sorted(self.tau) != list(range(1, k + 1)):
            raise ValueError(f"tau is not a bijection on 1..{k}: {self.tau}")
        if len(self.labels) != k:
            raise ValueError("one label per range leaf required")
        for lab in self.labels:
            if lab not in self.subgroup:
                raise ValueError(f"label {lab!r} not in H")

    @property
    def k(self) -> int:
        return len(self.tau)

    def domain_addresses(self):
        return leaf_addresses(self.domain_tree)

    def range_addresses(self):
        return leaf_addresses(self.range_tree)

    def triples(self):
        """Sorted list of (domain address, range address, label)."""
        dom = self.domain_addresses()
        ran = self.range_addresses()
        return [
            (dom[i], ran[self.tau[i] - 1], self.labels[self.tau[i] - 1])
            for i in range(self.k)
        ]

    def key(self):
        """Hashable identity of the representative (not of the homeomorphism)."""
        return (
            self.n,
            self.domain_tree,
            self.range_tree,
            self.tau,
            tuple(l.images for l in self.labels),
        )

    def __repr__(self):
        from .trees import format_tree

        labs = [list(l.images) for l in self.labels]
        return (
            f"TreePairElement(n={self.n}, {format_tree(self.domain_tree)} -> "
            f"{format_tree(self.range_tree)}, tau={list(self.tau)}, labels={labs})"
        )


def element_from_triples(n, subgroup, triples) -> TreePairElement:
    triples = sorted(triples)
    dom_addrs = [t[0] for t in triples]
    ran_addrs = sorted(t[1] for t in triples)
    ran_index = {a: j for j, a in enumerate(ran_addrs, start=1)}
    domain_tree = tree_from_addresses(dom_addrs, n)
    range_tree = tree_from_addresses(ran_addrs, n)
    tau = tuple(ran_index[b] for _, b, _ in triples)
    labels = [None] * len(triples)
    for _, b, lab in triples:
        labels[ran_index[b] - 1] = lab
    return TreePairElement(n, subgroup, domain_tree, range_tree, tau, tuple(labels))


def identity_element(n: int, subgroup: Subgroup) -> TreePairElement:
    one = Perm.identity(n)
    return TreePairElement(n, subgroup, LEAF, LEAF, (1,), (one,))


def _check_compatible(f: TreePairElement, g: TreePairElement):
    if f.n != g.n:
        raise ArityMismatch(f"arity {f.n} != {g.n}")
    if f.subgroup != g.subgroup:
        raise SubgroupMismatch("elements live over different subgroups H")


def eval_prefix(g: TreePairElement, word):
    """Image of the branch B_word under g.

    Returns (image word, residual tail permutation); word must reach at
    least one domain leaf.
    """
    i, suffix = locate(g.domain_addresses(), tuple(word))
    j = g.tau[i - 1]
    lab = g.labels[j - 1]
    return g.range_addresses()[j - 1] + lab.act_word(suffix), lab


def compose(g: TreePairElement, f: TreePairElement) -> TreePairElement:
    """Representative of g o f (f applied first)."""
    _check_compatible(f, g)
    mid, _, _ = common_expansion(f.range_tree, g.domain_tree, f.n)
    f_ran = f.range_addresses()
    f_dom = f.domain_addresses()
    g_dom = g.domain_addresses()
    g_ran = g.range_addresses()
    f_tau_inv = {j: i for i, j in enumerate(f.tau, start=1)}
    triples = []
    for w in leaf_addresses(mid):
        j, x = locate(f_ran, w)
        lab_f = f.labels[j - 1]
        a = f_dom[f_tau_inv[j] - 1] + lab_f.inverse().act_word(x)
        m, y = locate(g_dom, w)
        q = g.tau[m - 1]
        lab_g = g.labels[q - 1]
        b = g_ran[q - 1] + lab_g.act_word(y)
        triples.append((a, b, lab_g * lab_f))
    return element_from_triples(f.n, f.subgroup, triples)


def invert(g: TreePairElement) -> TreePairElement:
    """Inverse homeomorphism: g(u_i w) = u'_j s_j(w) gives
    g^-1(u'_j v) = u_i s_j^-1(v); trees swap intact."""
    tau_inv = [0] * g.k
    for i, j in enumerate(g.tau, start=1):
        tau_inv[j - 1] = i
    labels = tuple(g.labels[g.tau[i - 1] - 1].inverse() for i in range(1, g.k + 1))
    return TreePairElement(
        g.n, g.subgroup, g.range_tree, g.domain_tree, tuple(tau_inv), labels
    )


def _collapse_once(n, triple_by_dom):
    """Find one collapsible caret pair; collapse it in place. True if found.

    A domain caret at u collapses when all children u.1 .. u.n are leaves
    mapped to r.s(1) .. r.s(n) for one permutation s equal to all n labels
    (then necessarily s in H, since labels live in H).
    """
    parents = {}
    for a in triple_by_dom:
        if a:
            parents.setdefault(a[:-1], set()).add(a[-1])
    full = range(1, n + 1)
    for u, children in parents.items():
        if len(children) != n:
            continue
        first = triple_by_dom.get(u + (1,))
        if first is None:
            continue
        b1, s = first
        if not b1 or b1[-1] != s(1):
            continue
        r = b1[:-1]
        ok = True
        for c in full:
            entry = triple_by_dom.get(u + (c,))
            if entry is None:
                ok = False
                break
            b, lab = entry
            if lab != s or b != r + (s(c),):
                ok = False
                break
        if ok:
            for c in full:
                del triple_by_dom[u + (c,)]
            triple_by_dom[u] = (r, s)
            return True
    return False


def reduce_element(g: TreePairElement) -> TreePairElement:
    """Unique fully collapsed representative of the same homeomorphism."""
    triple_by_dom = {a: (b, lab) for a, b, lab in g.triples()}
    while _collapse_once(g.n, triple_by_dom):
        pass
    triples = [(a, b, lab) for a, (b, lab) in triple_by_dom.items()]
    return element_from_triples(g.n, g.subgroup, triples)


def is_reduced(g: TreePairElement) -> bool:
    return not _collapse_once(g.n, {a: (b, lab) for a, b, lab in g.triples()})


def equal_elements(f: TreePairElement, g: TreePairElement) -> bool:
    """True iff f and g define the same bijection of the Cantor set."""
    _check_compatible(f, g)
    return reduce_element(f).key() == reduce_element(g).key()


def element_order(g: TreePairElement, cap: int = 10_000):
    """Smallest m <= cap with g^m = id, else None ("exceeds cap")."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    ident = reduce_element(identity_element(g.n, g.subgroup))
    base = reduce_element(g)
    acc = base
    for m in range(1, cap + 1):
        if acc.key() == ident.key():
            return m
        acc = reduce_element(compose(base, acc))
    return None


def expand_representative(g: TreePairElement, leaf_index: int) -> TreePairElement:
    """Re-encode g on a finer branch set: expand domain leaf i and the matching
    range leaf, acting on the new carets per the leaf's label."""
    if not 1 <= leaf_index <= g.k:
        raise IndexError(f"leaf index {leaf_index} out of range")
    triples = g.triples()
    a, b, lab = triples.pop(leaf_index - 1)
    for c in range(1, g.n + 1):
        triples.append((a + (c,), b + (lab(c),), lab))
    return element_from_triples(g.n, g.subgroup, triples)


def random_element(
    n: int, subgroup: Subgroup, rng: random.Random, max_carets: int = 3
) -> TreePairElement:
    """Random (not necessarily reduced) element with small trees."""
    m = rng.randrange(max_carets + 1)
    leaves = 1 + m * (n - 1)
    dom = random_tree(n, leaves, rng)
    ran = random_tree(n, leaves, rng)
    tau = list(range(1, leaves + 1))
    rng.shuffle(tau)
    elems = sorted(subgroup.elements)
    labels = tuple(rng.choice(elems) for _ in range(leaves))
    return TreePairElement(n, subgroup, dom, ran, tuple(tau), labels)


def reduced_elements(n: int, subgroup: Subgroup, max_leaves: int):
    """All reduced elements with at most max_leaves leaves, deterministically.

    Each homeomorphism with a representative in range appears exactly once,
    as its reduced tree pair.
    """
    elems = sorted(subgroup.elements)
    k = 1
    while k <= max_leaves:
        shapes = list(all_trees(n, k))
        perms = all_perms(k)
        for dom in shapes:
            for ran in shapes:
                for tau in perms:
                    for labels in itertools.product(elems, repeat=k):
                        g = TreePairElement(n, subgroup, dom, ran, tau.images, labels)
                        if is_reduced(g):
                            yield g
        k += n - 1
