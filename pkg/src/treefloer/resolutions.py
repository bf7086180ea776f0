"""Connected resolutions: spanning trees, circle tracing, successor pairs.

A complete resolution I in {0,1}^n picks one smoothing per crossing; it is
connected exactly when the black-graph edges it keeps form a spanning
tree.  Each such circle is oriented with the black regions on its left,
which orders the marked points and turns the per-crossing weights into
cumulative exponents.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .diagram import BLACK, SMOOTHING, BlackGraph, Coloring, PlanarDiagram
from .errors import InterleavingViolation, InternalGeometry, NonGenericWeights, NotSingleCircle
from .marking import Marking, WeightTable


def joins_black(bg: BlackGraph, crossing: int, bit: int) -> bool:
    """Does smoothing `bit` at this crossing merge the two black quadrants?"""
    return bit == bg.joins_black[crossing]


def matrix_tree_count(bg: BlackGraph) -> int:
    """Spanning-tree count via a Kirchhoff cofactor, exact over the rationals.

    Independent of the enumeration below: builds the Laplacian of the black
    multigraph (loops dropped) and evaluates one cofactor by elimination.
    """
    verts = list(bg.vertices)
    k = len(verts)
    if k == 1:
        return 1
    index = {v: i for i, v in enumerate(verts)}
    lap = [[0] * k for _ in range(k)]
    for c in range(bg.edge_count):
        u, v = index[bg.tail[c]], index[bg.head[c]]
        if u == v:
            continue
        lap[u][u] += 1
        lap[v][v] += 1
        lap[u][v] -= 1
        lap[v][u] -= 1
    a = [[Fraction(x) for x in row[1:]] for row in lap[1:]]
    det = Fraction(1)
    size = k - 1
    for i in range(size):
        if a[i][i] == 0:
            for j in range(i + 1, size):
                if a[j][i]:
                    a[i], a[j] = a[j], a[i]
                    det = -det
                    break
            else:
                return 0
        det *= a[i][i]
        inv = 1 / a[i][i]
        for j in range(i + 1, size):
            f = a[j][i] * inv
            if f:
                for t in range(i, size):
                    a[j][t] -= f * a[i][t]
    assert det.denominator == 1
    return abs(int(det))


def enumerate_trees(bg: BlackGraph, brute_force: bool = False) -> list[tuple[int, ...]]:
    """All I in {0,1}^n whose kept edges form a spanning tree, lexicographic.

    Default is contraction/deletion over the multigraph; brute_force scans
    all 2^n subsets instead (oracle for small n).
    """
    n = bg.edge_count
    if brute_force:
        if n > 16:
            raise InternalGeometry("brute-force tree enumeration capped at 16 crossings")
        subsets = [
            frozenset(t)
            for mask in range(1 << n)
            if _is_spanning_tree(bg, t := [c for c in range(n) if mask >> c & 1])
        ]
    else:
        edges = [
            (c, bg.tail[c], bg.head[c]) for c in range(n) if bg.tail[c] != bg.head[c]
        ]
        parent = {v: v for v in bg.vertices}
        subsets = []
        _contract_delete(edges, parent, len(bg.vertices), [], subsets)
        subsets = [frozenset(t) for t in subsets]

    out = []
    for tree in subsets:
        bits = tuple(
            bg.joins_black[c] if c in tree else 1 - bg.joins_black[c] for c in range(n)
        )
        out.append(bits)
    out.sort()
    return out


def _is_spanning_tree(bg: BlackGraph, edges: list[int]) -> bool:
    verts = set(bg.vertices)
    if len(edges) != len(verts) - 1:
        return False
    parent = {v: v for v in verts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in edges:
        u, v = find(bg.tail[c]), find(bg.head[c])
        if u == v:
            return False
        parent[u] = v
    return True


def _contract_delete(edges, parent, nverts, chosen, out):
    """Enumerate spanning trees of a multigraph given as (id, u, v) edges."""

    def find(p, x):
        while p[x] != x:
            x = p[x]
        return x

    # count components reachable with remaining edges; prune dead branches
    p = dict(parent)
    comp = nverts
    for _, u, v in edges:
        ru, rv = find(p, u), find(p, v)
        if ru != rv:
            p[ru] = rv
            comp -= 1
    if comp > 1:
        return
    if nverts == 1:
        out.append(list(chosen))
        return
    if not edges:
        return
    eid, u, v = edges[0]
    rest = edges[1:]
    ru, rv = find(parent, u), find(parent, v)
    if ru == rv:
        # self-loop after contraction: can never enter a tree
        _contract_delete(rest, parent, nverts, chosen, out)
        return
    # include: contract u-v
    parent2 = dict(parent)
    parent2[ru] = rv
    chosen.append(eid)
    _contract_delete(rest, parent2, nverts - 1, chosen, out)
    chosen.pop()
    # exclude
    _contract_delete(rest, parent, nverts, chosen, out)


@dataclass(frozen=True)
class TreeResolution:
    """One connected resolution: its bits, circle order, and cumulative weights."""

    I: tuple[int, ...]
    sigma: tuple[int, ...]  # points in circle order, sigma[-1] == m
    rank: dict  # point -> 1-based rank
    cum: dict  # point -> W_I at that point (weights summed from rank 1)

    @property
    def weight(self) -> int:
        return sum(self.I)

    @property
    def m(self) -> int:
        return len(self.sigma)


def trace_resolution(
    d: PlanarDiagram,
    col: Coloring,
    bg: BlackGraph,
    mk: Marking,
    wt: WeightTable,
    I: tuple[int, ...],
) -> TreeResolution:
    """Walk the single circle of a tree resolution, black regions on the left.

    An arc is traversed against its strand direction when the black face
    lies on the strand's right; a smoothing arc around a white quadrant is
    traversed from the lower slot of its pair to the higher, around a black
    quadrant the other way.
    """
    # arc traversal direction: start end -> finish end
    start_end = {}
    for a in range(d.arc_count):
        c_in, s_in = d.arc_in[a]
        left_of_strand = col.face_of_dart[4 * c_in + s_in]
        if col.color[left_of_strand] == BLACK:
            start_end[a] = d.arc_out[a]
        else:
            start_end[a] = d.arc_in[a]

    def smoothing_exit(c: int, s: int) -> int:
        for u, v in SMOOTHING[I[c]]:
            quad_color = col.color[col.quadrant_face(c, u)]
            if s == u and quad_color != BLACK:
                return v
            if s == v and quad_color == BLACK:
                return u
        raise NotSingleCircle(
            f"resolution walk arrives at crossing {c} slot {s} against orientation"
        )

    points: list[int] = []
    seen_arcs = set()
    a = 0
    while True:
        if a in seen_arcs:
            raise NotSingleCircle("arc revisited before closing the circle")
        seen_arcs.add(a)
        pts = mk.points_on_arc[a]
        if start_end[a] == d.arc_out[a]:
            points.extend(pts)
            finish = d.arc_in[a]
        else:
            points.extend(reversed(pts))
            finish = d.arc_out[a]
        c, s = finish
        exit_slot = smoothing_exit(c, s)
        a = d.crossings[c][exit_slot]
        if start_end[a] != (c, exit_slot):
            raise NotSingleCircle("smoothing exit disagrees with arc orientation")
        if a == 0:
            break
    if len(seen_arcs) != d.arc_count or len(points) != mk.m:
        raise NotSingleCircle(
            f"tree resolution traced {len(seen_arcs)} arcs / {len(points)} points"
        )

    cut = points.index(mk.m)
    sigma = tuple(points[cut + 1 :] + points[: cut + 1])
    rank = {p: i + 1 for i, p in enumerate(sigma)}
    cum = {}
    acc = 0
    for p in sigma:
        acc += wt.weight(p)
        cum[p] = acc
    if cum[mk.m] != 0:
        raise InternalGeometry("total weight around the circle is nonzero")
    return TreeResolution(I=I, sigma=sigma, rank=rank, cum=cum)


@dataclass(frozen=True)
class SuccessorPair:
    """A double successor I -> I'' with its interleaving and segment data.

    Ranks a < b < c < d are sigma_I positions: {a, c} the special points of
    the crossing j1, {b, d} of j2 (which flipped crossing is j1 is exactly
    what the interleaving dictates).  Segment weights A, B, C, D sum the
    r_i over (0,a], (a,b], (b,c], (c,d] in circle order.
    """

    source: int  # index into the tree list
    target: int
    j1: int
    j2: int
    a: int
    b: int
    c: int
    d: int
    nu: int
    A: int
    B: int
    C: int
    D: int


def double_successors(
    trees: list[TreeResolution],
    bg: BlackGraph,
    wt: WeightTable,
) -> list[SuccessorPair]:
    """All pairs (I, I'') differing by two 0->1 flips, with pair data filled."""
    by_bits = {t.I: i for i, t in enumerate(trees)}
    pairs = []
    for si, src in enumerate(trees):
        n = len(src.I)
        zeros = [j for j in range(n) if src.I[j] == 0]
        for x in range(len(zeros)):
            for y in range(x + 1, len(zeros)):
                bits = list(src.I)
                bits[zeros[x]] = 1
                bits[zeros[y]] = 1
                ti = by_bits.get(tuple(bits))
                if ti is None:
                    continue
                pairs.append(
                    _pair_data(si, ti, zeros[x], zeros[y], trees[si], bg, wt)
                )
    pairs.sort(key=lambda p: (trees[p.source].I, trees[p.target].I))
    return pairs


def _pair_data(si, ti, jx, jy, src: TreeResolution, bg: BlackGraph, wt: WeightTable):
    rank = src.rank
    sx = tuple(sorted(rank[p] for p in wt.special[jx]))
    sy = tuple(sorted(rank[p] for p in wt.special[jy]))
    if len(set(sx + sy)) != 4:
        raise InterleavingViolation(
            f"special points of crossings {jx},{jy} collide in one marking point"
        )
    if sx[0] < sy[0] < sx[1] < sy[1]:
        j1, j2, (a, c), (b, d) = jx, jy, sx, sy
    elif sy[0] < sx[0] < sy[1] < sx[1]:
        j1, j2, (a, c), (b, d) = jy, jx, sy, sx
    else:
        raise InterleavingViolation(
            f"special ranks {sx} / {sy} of crossings {jx},{jy} do not interleave"
        )
    _check_trace_adjacency(src, bg, wt, j1)
    _check_trace_adjacency(src, bg, wt, j2)
    nu = bg.joins_black[j1]  # 1 iff flipping j1 adds its edge to the tree
    cum = src.cum
    point_at = {r: p for p, r in rank.items()}
    W = lambda r: cum[point_at[r]]
    A = W(a)
    B = W(b) - W(a)
    C = W(c) - W(b)
    D = W(d) - W(c)
    if B + C == 0 or C + D == 0:
        raise NonGenericWeights(
            f"component weight vanished for pair {src.I}->flips({j1},{j2}): "
            f"B+C={B + C}, C+D={C + D}"
        )
    return SuccessorPair(
        source=si, target=ti, j1=j1, j2=j2, a=a, b=b, c=c, d=d, nu=nu, A=A, B=B, C=C, D=D
    )


def _check_trace_adjacency(src: TreeResolution, bg: BlackGraph, wt: WeightTable, j: int):
    """Each special point must immediately precede its crossing's trace.

    In the source resolution the circle enters every smoothing arc of a
    flipped crossing right after passing a special point, whose partner
    across the trace is the matching weighted point; their ranks are
    cyclically consecutive.  A violation means broken role geometry.
    """
    m = len(src.sigma)
    p1, p3 = wt.special[j]
    p2, p4 = wt.weighted[j]
    partners = ((p1, p4), (p3, p2)) if bg.joins_black[j] == 1 else ((p1, p2), (p3, p4))
    for sp, pr in partners:
        if src.rank[sp] % m + 1 != src.rank[pr]:
            raise InterleavingViolation(
                f"crossing {j}: special point {sp} (rank {src.rank[sp]}) not followed "
                f"by its partner {pr} (rank {src.rank[pr]})"
            )
