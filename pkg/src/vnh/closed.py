"""Closed strand diagrams, winding classes, and the conjugacy decision.

Closing a (p,p,n)-strand diagram identifies each main sink with the matching
main source and erases the joint; every closure edge carries winding weight
1 and all others 0, so the per-edge integer cochain represents the class
that counts trips around the annulus.  Equality of closed diagrams is
equality of the underlying port graph together with that cohomology class,
decided by spanning-tree normalization inside the canonical serialization.

Components without splits and merges are free loops.  A vertex-free cycle
is stored as a FreeLoop record the moment it appears; reduction composes
any remaining sigma-cycle down to a single label per loop.  Two reduced
closed diagrams decide conjugacy in V_n(H) by matching up to the moves
conjugation can perform:

  * relabelling a free loop within its H-conjugacy class (re-rooting the
    composite of its sigma-vertices, refactored over H),
  * refining a free loop through its label's orbits: (w, t) with orbits
    O_i of size L_i splits into loops (w * L_i, t^L_i) -- re-encoding the
    same return map on the n child branches, and
  * gauge-twisting the sigma-decorations of the split/merge skeleton by
    elements of H at its vertices (the composition-order residue of the
    type III moves can land anywhere along a cycle).

The record matching explores the first two moves breadth-first to a
canonical minimal multiset; the gauge quotient is canonicalized exactly by
nonabelian spanning-tree gauge fixing.  The oracle cross-check in the
census module guards these readings empirically.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .diagrams import (
    MERGE,
    SIGMA,
    SPLIT,
    TEMP,
    DiagramError,
    StrandDiagram,
    _Graph,
    _loop_token,
    _scan_ports,
    _to_dot,
    build_diagram,
)
from .elements import TreePairElement, _check_compatible, reduce_element
from .perms import Perm, Subgroup
from .rewriting import CochainError, _reduce_graph


@dataclass(frozen=True)
class FreeLoop:
    """A vertex-free oriented loop: positive winding plus the composite of
    the sigma-vertices it carried (identity allowed here)."""

    winding: int
    label: Perm

    def __post_init__(self):
        if self.winding < 1:
            raise ValueError("free loop winding must be >= 1")


class ClosedDiagram:
    """Pitchfork graph without main sources/sinks, with per-edge winding
    weights positive on every directed loop, plus free-loop records."""

    def __init__(self, graph: _Graph):
        if graph.sources or graph.sinks:
            raise DiagramError("closed diagram cannot have main sources or sinks")
        for kind in graph.kind.values():
            if kind not in (SPLIT, MERGE, SIGMA):
                raise DiagramError(f"closed diagram cannot contain a {kind} vertex")
        graph.check_ports()
        if not graph.positive_on_loops():
            raise CochainError("winding must be positive on every oriented loop")
        self._g = graph
        self._canon = None

    @classmethod
    def _from_graph(cls, graph):
        return cls(graph)

    @classmethod
    def from_loops(cls, n, loops):
        """A purely free-loop diagram from (winding, label) pairs."""
        g = _Graph(n)
        g.free_loops = [(fl.winding, fl.label) for fl in map(_as_loop, loops)]
        return cls(g)

    @property
    def n(self):
        return self._g.n

    @property
    def free_loops(self):
        return tuple(
            FreeLoop(w, lab) for w, lab in sorted(self._g.free_loops, key=_loop_token)
        )

    def counts(self):
        return self._g.counts()

    def has_graph_part(self):
        return bool(self._g.kind)

    def sigma_vertex_count(self):
        return self.counts()[SIGMA]

    def graph_canonical(self):
        self.canonical()
        return self._graph_canon

    def canonical(self):
        if self._canon is None:
            s, order = self._g.closed_canonical()
            self._graph_canon = s.split("||")[0]
            self._order = order
            self._canon = s
        return self._canon

    def canonical_order(self):
        self.canonical()
        return list(self._order)

    def __eq__(self, other):
        return isinstance(other, ClosedDiagram) and self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def __repr__(self):
        c = self.counts()
        loops = [(fl.winding, list(fl.label.images)) for fl in self.free_loops]
        return (
            f"ClosedDiagram(n={self.n}, splits={c[SPLIT]}, merges={c[MERGE]}, "
            f"sigmas={c[SIGMA]}, free_loops={loops})"
        )

    def to_dot(self):
        return _to_dot(
            self._g,
            self.canonical_order(),
            with_weights=True,
            loop_records=self._g.free_loops,
        )


def _as_loop(x):
    if isinstance(x, FreeLoop):
        return x
    return FreeLoop(x[0], x[1])


def close(d: StrandDiagram) -> ClosedDiagram:
    """Identify the i-th main sink with the i-th main source and erase the
    joint; every closure edge gets winding 1."""
    if d.p != d.q:
        raise DiagramError(f"can only close (p,p,n) diagrams, got ({d.p},{d.q})")
    g = d._g.copy()
    pairs = list(zip(list(g.sinks), list(g.sources)))
    for snk, src in pairs:
        e_in = g.in_at[(snk, 0)]
        e_out = g.out_at[(src, 0)]
        t = g.new_vertex(TEMP)
        g.set_head(e_in, t, 0)
        g.set_tail(e_out, t, 1)
        g.del_vertex(snk)
        g.del_vertex(src)
        g.smooth(t, extra_weight=1)
    return ClosedDiagram(g)


def _extract_sigma_cycles(g):
    """Turn every all-sigma component (a directed cycle) into a free-loop
    record carrying the canonical rotation composite of its labels."""
    for comp in g.components():
        if not all(g.kind[v] == SIGMA for v in comp):
            continue
        start = min(comp)
        seq = []
        winding = 0
        v = start
        while True:
            seq.append(g.label[v])
            eid = g.out_at[(v, 1)]
            winding += g.edges[eid][4]
            v = g.edges[eid][2]
            if v == start:
                break
        k = len(seq)
        composites = []
        for r in range(k):
            comp_perm = Perm.identity(g.n)
            for t in range(k):
                comp_perm = seq[(r + t) % k] * comp_perm
            composites.append(comp_perm)
        label = min(composites)
        for v in list(comp):
            eid = g.out_at[(v, 1)]
            g.del_edge(eid)
            g.del_vertex(v)
        g.free_loops.append((winding, label))


def reduce_closed(cd: ClosedDiagram, *, rng=None, trace=None) -> ClosedDiagram:
    """Reduced form: no graph redex remains and every free loop is a record
    with a single composite label."""
    g = cd._g.copy()
    _reduce_graph(g, rng=rng, trace=trace, closed=True)
    _extract_sigma_cycles(g)
    return ClosedDiagram(g)


def closed_equal(c1: ClosedDiagram, c2: ClosedDiagram) -> bool:
    """Kind/label/port-preserving isomorphism whose pullback preserves the
    winding class; free-loop records compare exactly."""
    return c1 == c2


def add_coboundary(cd: ClosedDiagram, potential) -> ClosedDiagram:
    """Shift each edge weight by potential[tail] - potential[head]; the
    winding class, hence equality, is unchanged."""
    g = cd._g.copy()
    for rec in g.edges.values():
        rec[4] += potential.get(rec[0], 0) - potential.get(rec[2], 0)
    return ClosedDiagram(g)


# -- gauge canonicalization of the graph part -------------------------------
#
# Twisting a split or merge v by a in H inserts a on every in-edge and a^-1
# on every out-edge of v, permuting ports >= 1 by a; every path through v
# computes the same map, so the twisted diagram represents the same
# conjugacy data (type IV is precisely the twist by the out-edge's own
# label).  Conjugation can deposit the type-III composition residue
# anywhere along the cycles of the skeleton, so conjugacy comparison must
# quotient the sigma-decorations by this gauge action.  Twists cannot
# enable new type I collapses (equalizing d*l_i*c^-1 across strands forces
# the l_i already equal), so gauging commutes with reduction.


def _skeleton(g):
    """Smooth sigma-vertices into edge labels on the split/merge skeleton."""
    verts = {v: k for v, k in g.kind.items() if k in (SPLIT, MERGE)}
    out_at, in_at = {}, {}
    for (v, p), eid in g.out_at.items():
        if v not in verts:
            continue
        lab = Perm.identity(g.n)
        w = 0
        cur = eid
        while True:
            _, _, head, hport, wt = g.edges[cur]
            w += wt
            if g.kind[head] == SIGMA:
                lab = g.label[head] * lab
                cur = g.out_at[(head, 1)]
            else:
                edge = (v, p, head, hport, lab, w)
                out_at[(v, p)] = edge
                in_at[(head, hport)] = edge
                break
    return verts, out_at, in_at


def _gauge_serialize(n, verts, out_at, in_at, comp, start, h0):
    gauge = {start: h0}
    phi = {start: 0}
    num = {start: 0}
    order = [start]
    tokens = []
    qi = 0
    while qi < len(order):
        v = order[qi]
        qi += 1
        gv_inv = gauge[v].inverse()
        tokens.append(verts[v][0])
        for d, p in _scan_ports(verts[v], n):
            pre = p if p == 0 else gv_inv(p)
            tail, tport, head, hport, lab, w = (
                out_at[(v, pre)] if d == "o" else in_at[(v, pre)]
            )
            peer = head if d == "o" else tail
            if peer not in gauge:
                if d == "o":
                    gauge[peer] = gauge[v] * lab.inverse()
                    phi[peer] = phi[v] + w
                else:
                    gauge[peer] = gauge[v] * lab
                    phi[peer] = phi[v] - w
                num[peer] = len(order)
                order.append(peer)
            gl = gauge[head] * lab * gauge[tail].inverse()
            nw = w + phi[tail] - phi[head]
            pt = tport if tport == 0 else gauge[tail](tport)
            ph = hport if hport == 0 else gauge[head](hport)
            tokens.append(f"{d}{p}>{num[peer]}:{pt}.{ph}:{gl.images}w{nw}")
    return ";".join(tokens)


def gauge_canonical(cd: ClosedDiagram, subgroup: Subgroup) -> str:
    """Canonical string of the graph part modulo vertex twists over H,
    coboundaries, and port-graph isomorphism: per component the minimum
    gauge-fixed BFS serialization over every (start vertex, root twist)."""
    g = cd._g
    verts, out_at, in_at = _skeleton(g)
    if not verts:
        return ""
    adj = {v: set() for v in verts}
    for (v, _p), (tail, _tp, head, _hp, _l, _w) in out_at.items():
        adj[tail].add(head)
        adj[head].add(tail)
    comps, left = [], set(verts)
    while left:
        v0 = min(left)
        comp, stack = {v0}, [v0]
        while stack:
            u = stack.pop()
            for x in adj[u]:
                if x not in comp:
                    comp.add(x)
                    stack.append(x)
        left -= comp
        comps.append(sorted(comp))
    elems = sorted(subgroup.elements)
    comp_strs = []
    for comp in comps:
        best = min(
            _gauge_serialize(g.n, verts, out_at, in_at, comp, start, h0)
            for start in comp
            for h0 in elems
        )
        comp_strs.append(best)
    return "#".join(sorted(comp_strs))


# -- free-loop record equivalence ------------------------------------------


_LOOP_TABLES = {}
_NORMALIZE_CACHE = {}


def _loop_tables(subgroup: Subgroup):
    """Per class representative s: sorted ((L, rep(s^L)) per orbit of s).

    The same table drives both directions of the refinement move: (w, s)
    refines into {(w*L, rep(s^L))}, and that family consolidates to (w, s).
    """
    tables = _LOOP_TABLES.get(subgroup)
    if tables is None:
        rep = subgroup.class_rep
        tables = {}
        for sig in sorted({rep(p) for p in subgroup.elements}):
            children = tuple(
                sorted((len(o), rep(sig ** len(o))) for o in sig.orbits())
            )
            tables[sig] = children
        _LOOP_TABLES[subgroup] = tables
    return tables


def _normalize_loops(records, subgroup: Subgroup, max_states=6000):
    """Canonical minimal multiset reachable via loop refinement (both ways)
    and per-loop H-conjugation; deterministic bounded BFS."""
    rep = subgroup.class_rep
    for _, label in records:
        if label not in subgroup:
            raise ValueError(f"free-loop label {label!r} outside H")
    start = tuple(sorted((w, rep(label)) for w, label in records))
    if not start:
        return start
    cached = _NORMALIZE_CACHE.get((subgroup, start))
    if cached is not None:
        return cached
    n = subgroup.n
    cap_total = max(12, n * sum(w for w, _ in start) + 4)
    tables = _loop_tables(subgroup)

    def moves(state):
        out = []
        done = set()
        total = sum(x[0] for x in state)
        for idx, (w, label) in enumerate(state):
            if (w, label) in done:
                continue
            done.add((w, label))
            children = tuple((w * L, cl) for L, cl in tables[label])
            if total - w + sum(x[0] for x in children) <= cap_total:
                out.append(tuple(sorted(state[:idx] + state[idx + 1 :] + children)))
        max_w = max(x[0] for x in state)
        pool_count = {}
        for item in state:
            pool_count[item] = pool_count.get(item, 0) + 1
        for sig, children in tables.items():
            for w0 in range(1, max_w + 1):
                family = {}
                for L, cl in children:
                    item = (w0 * L, cl)
                    family[item] = family.get(item, 0) + 1
                if all(pool_count.get(it, 0) >= c for it, c in family.items()):
                    pool = list(state)
                    for it, c in family.items():
                        for _ in range(c):
                            pool.remove(it)
                    pool.append((w0, sig))
                    out.append(tuple(sorted(pool)))
        return out

    def key(state):
        return (sum(x[0] for x in state), len(state), state)

    best = start
    seen = {start}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        if len(seen) >= max_states:
            break
        for nxt in moves(state):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
                if key(nxt) < key(best):
                    best = nxt
    _NORMALIZE_CACHE[(subgroup, start)] = best
    return best


def conjugating_equivalent(
    c1: ClosedDiagram, c2: ClosedDiagram, subgroup: Subgroup, label_mode="conjugacy"
) -> bool:
    """Equality up to conjugating transformations: graph parts equal, free
    loops matched under the loop moves (see module docstring).

    label_mode="exact" is the stricter comparison-mode switch: records must
    match verbatim, loops are not refined or relabelled.
    """
    if c1.n != c2.n:
        return False
    r1 = [(fl.winding, fl.label) for fl in c1.free_loops]
    r2 = [(fl.winding, fl.label) for fl in c2.free_loops]
    if label_mode == "exact":
        return c1.graph_canonical() == c2.graph_canonical() and sorted(
            r1, key=_loop_token
        ) == sorted(r2, key=_loop_token)
    if label_mode != "conjugacy":
        raise ValueError(f"unknown label_mode {label_mode!r}")
    return gauge_canonical(c1, subgroup) == gauge_canonical(c2, subgroup) and (
        _normalize_loops(r1, subgroup) == _normalize_loops(r2, subgroup)
    )


# -- conjugacy decision for elements ---------------------------------------


def reduced_closure(g: TreePairElement) -> ClosedDiagram:
    return reduce_closed(close(build_diagram(reduce_element(g))))


def conjugacy_invariant(g: TreePairElement, label_mode="conjugacy"):
    """Hashable complete invariant: two elements are conjugate iff their
    invariants are equal (at the default mode)."""
    cd = reduced_closure(g)
    records = [(fl.winding, fl.label) for fl in cd.free_loops]
    if label_mode == "exact":
        return cd.graph_canonical(), tuple(sorted(records, key=_loop_token))
    return gauge_canonical(cd, g.subgroup), _normalize_loops(records, g.subgroup)


def are_conjugate(f: TreePairElement, g: TreePairElement, label_mode="conjugacy") -> bool:
    """Conjugacy in V_n(H): reduce, build diagrams, close, reduce, compare
    up to conjugating transformations."""
    _check_compatible(f, g)
    return conjugacy_invariant(f, label_mode) == conjugacy_invariant(g, label_mode)


def is_torsion(g: TreePairElement) -> bool:
    """True iff the reduced closure consists solely of free loops."""
    return not reduced_closure(g).has_graph_part()


def torsion_order(g: TreePairElement):
    """Order computed from the reduced closure: lcm over loops of
    winding * ord(label); None when g is not torsion."""
    import math

    cd = reduced_closure(g)
    if cd.has_graph_part():
        return None
    out = 1
    for fl in cd.free_loops:
        out = math.lcm(out, fl.winding * fl.label.order())
    return out
