"""Marked points, generic weight functions, and per-crossing weights.

Every arc carries at least one marked point; the distinguished last point
p_m sits on an arc bordering the unbounded face.  Each crossing assigns
+Omega(j) to the nearest point on its role-2 arc end and -Omega(j) to the
nearest point on its role-4 end; the nearest points on the role-1/role-3
ends are its special pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .diagram import ROLE_I1, ROLE_I2, ROLE_I3, ROLE_I4, BlackGraph, Coloring, PlanarDiagram
from .errors import MalformedInput, NotGeneric, WeightConflict

WEIGHT_ROLES = (ROLE_I2, ROLE_I4)
SPECIAL_ROLES = (ROLE_I1, ROLE_I3)


@dataclass(frozen=True)
class Marking:
    """Points 1..m distributed over arcs, listed in strand order per arc."""

    points_on_arc: tuple[tuple[int, ...], ...]
    m: int
    outer_arc: int

    def arc_of(self) -> dict[int, int]:
        return {p: a for a, pts in enumerate(self.points_on_arc) for p in pts}

    def nearest_from_end(self, d: PlanarDiagram, c: int, s: int) -> int:
        """Nearest marked point walking away from crossing c along slot s's arc."""
        a = d.crossings[c][s]
        pts = self.points_on_arc[a]
        if d.arc_in[a] == (c, s):
            return pts[-1]  # strand flows into c here; walking away goes backwards
        return pts[0]


@dataclass(frozen=True)
class OmegaAssignment:
    values: tuple[int, ...]  # Omega(1..n)
    mode: str  # "verified" | "assumed"

    def __post_init__(self):
        if any(v == 0 for v in self.values):
            raise NotGeneric("Omega values must be nonzero", witness=None)


@dataclass(frozen=True)
class WeightTable:
    r: tuple[int, ...]  # weight per point, index 1..m (slot 0 unused)
    special: tuple[tuple[int, int], ...]  # per crossing (point at i1, point at i3)
    weighted: tuple[tuple[int, int], ...]  # per crossing (point at i2, point at i4)

    def weight(self, p: int) -> int:
        return self.r[p]


def default_omega(n: int) -> OmegaAssignment:
    """Omega(j) = 2^j, generic because binary expansions are unique."""
    if n < 1:
        raise MalformedInput("need at least one crossing")
    return OmegaAssignment(values=tuple(2 ** j for j in range(1, n + 1)), mode="verified")


def check_generic(om: OmegaAssignment, n: int, exhaustive: bool = True) -> OmegaAssignment:
    """Verify no nontrivial {-1,0,1}-combination of Omega values vanishes.

    Exhaustive mode scans all 3^n - 1 sign vectors (guarded to n <= 20);
    lazy mode marks the assignment "assumed" and defers to the nonzero
    denominator checks when the differential is assembled.
    """
    if len(om.values) != n:
        raise MalformedInput(f"Omega has {len(om.values)} values for {n} crossings")
    if not exhaustive or n > 20:
        return OmegaAssignment(values=om.values, mode="assumed")
    for signs in product((-1, 0, 1), repeat=n):
        if all(s == 0 for s in signs):
            continue
        if sum(s * v for s, v in zip(signs, om.values)) == 0:
            raise NotGeneric(
                f"Omega {om.values} satisfies the relation {signs}", witness=signs
            )
    return OmegaAssignment(values=om.values, mode="verified")


def _end_roles(d: PlanarDiagram, bg: BlackGraph):
    """For each arc, the (crossing, role) carried by each of its two ends."""
    out = []
    for a in range(d.arc_count):
        roles = []
        for c, s in d.arc_ends(a):
            roles.append((c, bg.roles[c][s]))
        out.append(tuple(roles))
    return out


def auto_mark(
    d: PlanarDiagram,
    bg: BlackGraph,
    col: Coloring,
    points_per_arc: dict[int, int] | None = None,
    outer_arc: int | None = None,
    coflip_pairs: set[frozenset] | None = None,
) -> Marking:
    """One point per arc, subdividing only where a shared point would clash.

    A single shared point on an arc is unsafe when its two end selections
    (a) belong to the same crossing, (b) both carry weight roles, or
    (c) are special for two crossings that co-flip in some double-successor
    pair (`coflip_pairs`; all pairs assumed co-flippable when omitted).
    Two points per arc always suffice, so this terminates with m <= 4n.
    """
    counts = []
    end_roles = _end_roles(d, bg)
    for a in range(d.arc_count):
        want = (points_per_arc or {}).get(a, 1)
        if want < 1:
            raise MalformedInput(f"arc {a} needs at least one point")
        if want == 1 and _needs_split(end_roles[a], coflip_pairs):
            want = 2
        counts.append(want)

    if outer_arc is None:
        outer = min(a for a in range(d.arc_count) if _borders_unbounded(d, col, a))
    else:
        outer = outer_arc
        if not _borders_unbounded(d, col, outer):
            raise MalformedInput(f"arc {outer} does not border the unbounded face")

    points: list[tuple[int, ...]] = []
    next_id = 1
    for a in range(d.arc_count):
        ids = tuple(range(next_id, next_id + counts[a]))
        next_id += counts[a]
        points.append(ids)

    # re-index so the outer arc's last point is m
    m = next_id - 1
    last = points[outer][-1]
    if last != m:
        swap = {last: m, m: last}
        points = [tuple(swap.get(p, p) for p in pts) for pts in points]
    return Marking(points_on_arc=tuple(points), m=m, outer_arc=outer)


def _borders_unbounded(d: PlanarDiagram, col: Coloring, a: int) -> bool:
    return any(
        col.face_of_dart[4 * c + s] == col.unbounded for (c, s) in d.arc_ends(a)
    )


def _needs_split(roles, coflip_pairs) -> bool:
    (c1, r1), (c2, r2) = roles
    if c1 == c2:
        return True
    if r1 in WEIGHT_ROLES and r2 in WEIGHT_ROLES:
        return True
    if r1 in SPECIAL_ROLES and r2 in SPECIAL_ROLES:
        if coflip_pairs is None or frozenset((c1, c2)) in coflip_pairs:
            return True
    return False


def assign_weights(mk: Marking, d: PlanarDiagram, bg: BlackGraph, om: OmegaAssignment) -> WeightTable:
    """Weights and special pairs per the role geometry.

    Raises WeightConflict when the marking is too sparse: either two
    nonzero assignments land on one point, or a crossing's special pair
    meets its own weighted pair.
    """
    r = [0] * (mk.m + 1)
    taken: dict[int, tuple[int, int]] = {}
    special = []
    weighted = []
    for c in range(d.n):
        i2_slot, i4_slot = bg.weight_slots(c)
        i1_slot, i3_slot = bg.special_slots(c)
        p2 = mk.nearest_from_end(d, c, i2_slot)
        p4 = mk.nearest_from_end(d, c, i4_slot)
        p1 = mk.nearest_from_end(d, c, i1_slot)
        p3 = mk.nearest_from_end(d, c, i3_slot)
        for p, w in ((p2, om.values[c]), (p4, -om.values[c])):
            if p in taken:
                raise WeightConflict(
                    f"point {p} already weighted by crossing {taken[p][0]}, "
                    f"hit again by crossing {c}"
                )
            taken[p] = (c, w)
            r[p] = w
        if {p1, p3} & {p2, p4} or p1 == p3:
            raise WeightConflict(
                f"special pair {p1, p3} of crossing {c} meets its weighted pair {p2, p4}"
            )
        special.append((p1, p3))
        weighted.append((p2, p4))
    assert sum(r) == 0
    return WeightTable(r=tuple(r), special=tuple(special), weighted=tuple(weighted))
