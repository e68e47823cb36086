import itertools

import pytest

from vnh.elements import (
    ArityMismatch,
    TreePairElement,
    compose,
    element_order,
    equal_elements,
    eval_prefix,
    expand_representative,
    identity_element,
    invert,
    is_reduced,
    random_element,
    reduce_element,
    reduced_elements,
)
from vnh.perms import Perm, Subgroup
from vnh.trees import LEAF, parse_tree


def caret_swap_v2(h=None):
    h = h or Subgroup.trivial(2)
    one = Perm.identity(2)
    return TreePairElement(2, h, (LEAF, LEAF), (LEAF, LEAF), (2, 1), (one, one))


def eval_on_depth(g, d):
    """Images of all depth-d branches under g (d at least the domain depth)."""
    words = list(itertools.product(range(1, g.n + 1), repeat=d))
    return words, [eval_prefix(g, w)[0] for w in words]


def test_eval_prefix_identity():
    g = identity_element(2, Subgroup.trivial(2))
    assert eval_prefix(g, (1, 2, 1)) == ((1, 2, 1), Perm.identity(2))


def test_eval_prefix_caret_swap():
    g = caret_swap_v2()
    word, tail = eval_prefix(g, (1, 2))
    assert word == (2, 2) and tail.is_identity()


def test_eval_prefix_label_acts_letterwise():
    h = Subgroup.symmetric(2)
    s = Perm((2, 1))
    g = TreePairElement(2, h, LEAF, LEAF, (1,), (s,))
    word, tail = eval_prefix(g, (1, 2, 1))
    assert word == (2, 1, 2) and tail == s


def test_eval_prefix_too_shallow():
    g = caret_swap_v2()
    with pytest.raises(ValueError):
        eval_prefix(g, ())


def test_eval_bijective_on_deep_words(rng, group):
    # The images of all depth-d branches form a complete pairwise
    # independent branch set: g permutes the Cantor set.
    from vnh.trees import tree_from_addresses

    n, h = group
    for _ in range(10):
        g = random_element(n, h, rng)
        d = 1 + max(len(a) for a in g.domain_addresses())
        words, images = eval_on_depth(g, d)
        assert len(set(images)) == len(words)
        tree_from_addresses(images, n)  # raises unless complete + independent


def test_compose_identity_laws(rng, group):
    n, h = group
    e = identity_element(n, h)
    for _ in range(10):
        f = random_element(n, h, rng)
        assert equal_elements(compose(e, f), f)
        assert equal_elements(compose(f, e), f)


def test_compose_matches_pointwise_evaluation(rng, group):
    n, h = group
    for _ in range(15):
        f = random_element(n, h, rng)
        g = random_element(n, h, rng)
        gf = compose(g, f)
        d = 0
        for elem in (f, g, gf):
            d = max(d, *(len(a) for a in elem.domain_addresses()))
        d += 1
        for w in itertools.product(range(1, n + 1), repeat=d):
            via_f, _ = eval_prefix(f, w)
            expect, _ = eval_prefix(g, via_f)
            got, _ = eval_prefix(gf, w)
            assert got == expect


def test_compose_labels_stay_in_subgroup(rng, group):
    n, h = group
    for _ in range(15):
        f = random_element(n, h, rng)
        g = random_element(n, h, rng)
        for lab in compose(g, f).labels:
            assert lab in h


def test_invert_round_trips(rng, group):
    n, h = group
    ident = identity_element(n, h)
    for _ in range(15):
        g = random_element(n, h, rng)
        assert equal_elements(compose(g, invert(g)), ident)
        assert equal_elements(compose(invert(g), g), ident)
        assert equal_elements(invert(invert(g)), g)
    assert equal_elements(invert(ident), ident)


def test_reduce_collapses_expansion(rng, group):
    n, h = group
    for _ in range(15):
        g = reduce_element(random_element(n, h, rng))
        expanded = g
        for _ in range(3):
            expanded = expand_representative(
                expanded, rng.randrange(expanded.k) + 1
            )
        assert expanded.k == g.k + 3 * (n - 1)
        assert reduce_element(expanded).key() == g.key()


def test_reduce_idempotent(rng, group):
    n, h = group
    for _ in range(10):
        r = reduce_element(random_element(n, h, rng))
        assert reduce_element(r).key() == r.key()


def test_reduce_identity_on_big_pair():
    h = Subgroup.trivial(2)
    one = Perm.identity(2)
    t = parse_tree("((* *) (* (* *)))", 2)
    k = 5
    g = TreePairElement(2, h, t, t, tuple(range(1, k + 1)), (one,) * k)
    r = reduce_element(g)
    assert r.key() == identity_element(2, h).key()


def test_reduce_respects_label_pattern():
    # The collapse demands child pattern AND labels equal the same element of H.
    h = Subgroup.symmetric(2)
    one, s = Perm.identity(2), Perm((2, 1))
    # tau = swap with both labels s: this is the expansion of the global swap.
    g = TreePairElement(2, h, (LEAF, LEAF), (LEAF, LEAF), (2, 1), (s, s))
    r = reduce_element(g)
    assert r.domain_tree == LEAF and r.labels == (s,)
    # tau = swap with identity labels: reduced already (pattern != labels).
    g2 = TreePairElement(2, h, (LEAF, LEAF), (LEAF, LEAF), (2, 1), (one, one))
    assert is_reduced(g2)
    # In V2(Id) the same pattern cannot collapse either (s not in H).
    g3 = caret_swap_v2()
    assert is_reduced(g3)


def test_equal_elements_examples(rng, group):
    n, h = group
    for _ in range(10):
        f = random_element(n, h, rng)
        assert equal_elements(f, expand_representative(f, 1))
    ident = identity_element(2, Subgroup.trivial(2))
    assert not equal_elements(ident, caret_swap_v2())


def test_equal_elements_agrees_with_evaluation(rng, group):
    n, h = group
    for _ in range(10):
        f = random_element(n, h, rng)
        g = random_element(n, h, rng)
        d = 1 + max(
            max(len(a) for a in f.domain_addresses()),
            max(len(a) for a in g.domain_addresses()),
        )
        same_eval = all(
            eval_prefix(f, w)[0] == eval_prefix(g, w)[0]
            for w in itertools.product(range(1, n + 1), repeat=d)
        )
        assert equal_elements(f, g) == same_eval


def test_element_order_basics():
    h = Subgroup.trivial(2)
    assert element_order(identity_element(2, h)) == 1
    assert element_order(caret_swap_v2()) == 2
    hz = Subgroup.symmetric(2)
    s = Perm((2, 1))
    glob = TreePairElement(2, hz, LEAF, LEAF, (1,), (s,))
    assert element_order(glob) == 2
    assert element_order(glob, cap=1) is None


def test_element_order_of_conjugate_matches(rng):
    n, h = 2, Subgroup.symmetric(2)
    s = Perm((2, 1))
    base = TreePairElement(2, h, LEAF, LEAF, (1,), (s,))
    for _ in range(10):
        c = random_element(n, h, rng)
        conj = compose(compose(c, base), invert(c))
        assert element_order(conj, 100) == 2


def test_group_axioms_randomized(rng, group):
    n, h = group
    for _ in range(20):
        a = random_element(n, h, rng)
        b = random_element(n, h, rng)
        c = random_element(n, h, rng)
        assert equal_elements(compose(compose(a, b), c), compose(a, compose(b, c)))


def test_reduced_elements_enumeration_counts():
    h = Subgroup.trivial(2)
    elems = list(reduced_elements(2, h, 2))
    # identity plus the caret swap.
    assert len(elems) == 2
    keys = {e.key() for e in elems}
    assert identity_element(2, h).key() in keys
    hz = Subgroup.symmetric(2)
    elems2 = list(reduced_elements(2, hz, 2))
    # k=1: two label choices; k=2: 8 combos minus 2 collapsible.
    assert len(elems2) == 8
    assert len({e.key() for e in elems2}) == 8


def test_arity_mismatch_raises():
    f = identity_element(2, Subgroup.trivial(2))
    g = identity_element(3, Subgroup.trivial(3))
    with pytest.raises(ArityMismatch):
        compose(f, g)
