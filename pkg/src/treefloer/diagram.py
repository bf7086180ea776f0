"""PD codes, faces, checkerboard coloring, and the black graph.

Conventions fixed here and consumed everywhere downstream:

* A crossing record X[a,b,c,d] lists the four incident arc ends
  counterclockwise starting at the incoming under-strand, in a plane with
  the standard (counterclockwise-positive) orientation.
* Darts are arc ends (crossing, slot).  With rotation rho = next slot
  counterclockwise and alpha = other end of the same arc, faces are the
  orbits of rho o alpha; such a face walk keeps its face on the RIGHT of
  each traversed arc, and the quadrant between slots k and k+1 of a
  crossing belongs to the face containing dart (crossing, k+1).
* The 0-resolution connects slots (0,1) and (2,3) (the smoothing obtained
  by rotating the over-strand counterclockwise onto the under-strand); the
  1-resolution connects (1,2) and (3,0).
* A crossing is positive iff its over-strand enters at slot 1.
* Viewing a crossing so the oriented black-graph edge points left to
  right, the four arc ends counterclockwise from the upper right take
  roles 1..4; if the head quadrant sits between slots h and h+1 this means
  role(h) = 4, role(h+1) = 1, role(h+2) = 2, role(h+3) = 3.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .errors import ArcMultiplicity, Disconnected, EmptyDiagram, InternalGeometry, MalformedInput

WHITE, BLACK = 0, 1

ROLE_I1, ROLE_I2, ROLE_I3, ROLE_I4 = 1, 2, 3, 4

# slot pairs connected by each resolution bit
SMOOTHING = {0: ((0, 1), (2, 3)), 1: ((1, 2), (3, 0))}


@dataclass(frozen=True)
class PlanarDiagram:
    """A validated oriented planar projection.

    Arcs are relabeled to 0..2n-1; ``arc_out[a]``/``arc_in[a]`` give the
    (crossing, slot) where the strand leaves a crossing into arc a resp.
    enters the next crossing.  ``over_in[c]`` is 1 or 3.
    """

    crossings: tuple[tuple[int, int, int, int], ...]
    over_in: tuple[int, ...]
    arc_out: tuple[tuple[int, int], ...]
    arc_in: tuple[tuple[int, int], ...]
    comp_of_arc: tuple[int, ...]
    components: int
    original_labels: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.crossings)

    @property
    def arc_count(self) -> int:
        return 2 * len(self.crossings)

    def arc_ends(self, a: int) -> tuple[tuple[int, int], tuple[int, int]]:
        return self.arc_out[a], self.arc_in[a]

    def dart_arc(self, c: int, s: int) -> int:
        return self.crossings[c][s]


@dataclass(frozen=True)
class Coloring:
    """Face orbits plus the unique checkerboard coloring with a white unbounded face."""

    faces: tuple[tuple[int, ...], ...]  # darts 4*c+s, orbit order
    face_of_dart: tuple[int, ...]
    unbounded: int
    color: tuple[int, ...]  # WHITE / BLACK per face

    @property
    def face_count(self) -> int:
        return len(self.faces)

    def black_faces(self) -> tuple[int, ...]:
        return tuple(f for f, col in enumerate(self.color) if col == BLACK)

    def quadrant_face(self, c: int, k: int) -> int:
        """Face filling the quadrant between slots k and k+1 of crossing c."""
        return self.face_of_dart[4 * c + (k + 1) % 4]


@dataclass(frozen=True)
class BlackGraph:
    """One vertex per black face, one oriented edge per crossing, plus roles."""

    vertices: tuple[int, ...]  # black face ids
    tail: tuple[int, ...]  # per crossing, black face id
    head: tuple[int, ...]
    head_slot: tuple[int, ...]  # h with head quadrant between slots h,h+1
    joins_black: tuple[int, ...]  # resolution bit that merges the black quadrants
    roles: tuple[tuple[int, int, int, int], ...]  # role of each slot, values ROLE_I1..I4

    @property
    def edge_count(self) -> int:
        return len(self.tail)

    def edge(self, c: int) -> tuple[int, int]:
        return self.tail[c], self.head[c]

    def special_slots(self, c: int) -> tuple[int, int]:
        """Slots carrying roles i1 and i3 at crossing c."""
        r = self.roles[c]
        return r.index(ROLE_I1), r.index(ROLE_I3)

    def weight_slots(self, c: int) -> tuple[int, int]:
        """Slots carrying roles i2 (+Omega) and i4 (-Omega) at crossing c."""
        r = self.roles[c]
        return r.index(ROLE_I2), r.index(ROLE_I4)


@dataclass(frozen=True)
class SignData:
    n_plus: int
    n_minus: int
    components: int

    @property
    def n(self) -> int:
        return self.n_plus + self.n_minus


_X_RECORD = re.compile(r"[Xx]\s*\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]")


def _read_records(text: str) -> list[tuple[int, int, int, int]]:
    text = text.strip()
    if not text:
        raise EmptyDiagram("no crossings in PD input")
    if text[0] in "[{":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"bad JSON PD input: {exc}") from None
        if not isinstance(data, list) or not all(
            isinstance(r, list) and len(r) == 4 and all(isinstance(x, int) and x > 0 for x in r)
            for r in data
        ):
            raise MalformedInput("JSON PD input must be a list of 4-tuples of positive integers")
        return [tuple(r) for r in data]
    records = [tuple(int(g) for g in m.groups()) for m in _X_RECORD.finditer(text)]
    leftover = _X_RECORD.sub("", text).replace(",", " ").strip()
    if leftover:
        raise MalformedInput(f"unparsed PD text: {leftover!r}")
    if any(x <= 0 for rec in records for x in rec):
        raise MalformedInput("arc labels must be positive integers")
    return records


def parse_pd(text: str) -> PlanarDiagram:
    """Parse and validate PD notation (X[a,b,c,d] records or a JSON array)."""
    records = _read_records(text)
    if not records:
        raise EmptyDiagram("no crossings in PD input")
    n = len(records)

    ends: dict[int, list[tuple[int, int]]] = {}
    for c, rec in enumerate(records):
        for s, label in enumerate(rec):
            ends.setdefault(label, []).append((c, s))
    bad = {lab: len(e) for lab, e in ends.items() if len(e) != 2}
    if bad:
        raise ArcMultiplicity(f"arc labels not used exactly twice: {bad}")
    if len(ends) != 2 * n:
        raise ArcMultiplicity(f"expected {2 * n} arcs, found {len(ends)}")

    # connectivity of the underlying 4-valent graph
    adj: dict[int, set[int]] = {c: set() for c in range(n)}
    for (c1, _), (c2, _) in ends.values():
        adj[c1].add(c2)
        adj[c2].add(c1)
    seen = {0}
    stack = [0]
    while stack:
        for nb in adj[stack.pop()]:
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    if len(seen) != n:
        raise Disconnected(f"projection splits into {n - len(seen)}+ unreachable crossings")

    labels = sorted(ends)
    idx = {lab: i for i, lab in enumerate(labels)}
    crossings = tuple(tuple(idx[x] for x in rec) for rec in records)

    arc_dirs = _orient(crossings, labels)
    arc_out, arc_in, over_in, comp_of_arc, comps = arc_dirs
    return PlanarDiagram(
        crossings=crossings,
        over_in=over_in,
        arc_out=arc_out,
        arc_in=arc_in,
        comp_of_arc=comp_of_arc,
        components=comps,
        original_labels=tuple(labels),
    )


def _orient(crossings, labels):
    """Resolve strand directions: under-passages are forced (slot0 in,
    slot2 out); over-passages propagate along components; components that
    never underpass are oriented by label succession."""
    n = len(crossings)
    arc_ends: list[list[tuple[int, int]]] = [[] for _ in range(2 * n)]
    for c, rec in enumerate(crossings):
        for s, a in enumerate(rec):
            arc_ends[a].append((c, s))

    # arc direction = which of its two ends is the "in" end (strand flows into it)
    in_end: list[int | None] = [None] * (2 * n)  # value 0/1 indexing arc_ends[a]

    def set_in(a: int, which: int):
        if in_end[a] is None:
            in_end[a] = which
        elif in_end[a] != which:
            raise MalformedInput(f"inconsistent orientation at arc {labels[a]}")

    over_in: list[int | None] = [None] * n
    pending = []
    for c, rec in enumerate(crossings):
        a_in, a_out = rec[0], rec[2]
        set_in(a_in, arc_ends[a_in].index((c, 0)))
        set_in(a_out, 1 - arc_ends[a_out].index((c, 2)))
        pending.append(a_in)
        pending.append(a_out)

    def propagate(worklist):
        while worklist:
            a = worklist.pop()
            if in_end[a] is None:
                continue
            c, s = arc_ends[a][in_end[a]]
            if s in (1, 3) and over_in[c] is None:
                over_in[c] = s
                out_s = (s + 2) % 4
                b = crossings[c][out_s]
                set_in(b, 1 - arc_ends[b].index((c, out_s)))
                worklist.append(b)
            # also push backwards through an over-exit
            c2, s2 = arc_ends[a][1 - in_end[a]]
            if s2 in (1, 3) and over_in[c2] is None:
                over_in[c2] = (s2 + 2) % 4
                in_s = over_in[c2]
                b = crossings[c2][in_s]
                set_in(b, arc_ends[b].index((c2, in_s)))
                worklist.append(b)

    propagate(pending)

    # components made only of over-passages: orient by label succession
    for a in range(2 * n):
        if in_end[a] is not None:
            continue
        for which in (0, 1):
            trial = dict()
            if _try_orient_component(a, which, crossings, arc_ends, labels, trial):
                for b, w in trial.items():
                    set_in(b, w)
                propagate(list(trial))
                break
        else:
            raise MalformedInput(f"cannot orient component through arc {labels[a]}")

    # walk components, validating label succession along each strand
    comp_of_arc = [-1] * (2 * n)
    comps = 0
    for a0 in range(2 * n):
        if comp_of_arc[a0] != -1:
            continue
        comp_arcs = []
        a = a0
        while comp_of_arc[a] == -1:
            comp_of_arc[a] = comps
            comp_arcs.append(a)
            c, s = arc_ends[a][in_end[a]]
            if s == 2:
                raise InternalGeometry("in-end landed on an out slot")
            out_s = 2 if s == 0 else (s + 2) % 4
            a = crossings[c][out_s]
        ordered = sorted(comp_arcs)
        succ = {ordered[i]: ordered[(i + 1) % len(ordered)] for i in range(len(ordered))}
        b = a0
        for _ in comp_arcs:
            c, s = arc_ends[b][in_end[b]]
            out_s = 2 if s == 0 else (s + 2) % 4
            nxt = crossings[c][out_s]
            if nxt != succ[b]:
                raise MalformedInput(
                    f"arc labels do not ascend along a component: "
                    f"{labels[b]} is followed by {labels[nxt]}"
                )
            b = nxt
        comps += 1

    arc_out = []
    arc_in = []
    for a in range(2 * n):
        w = in_end[a]
        arc_in.append(arc_ends[a][w])
        arc_out.append(arc_ends[a][1 - w])
    if any(v is None for v in over_in):
        raise InternalGeometry("unresolved over-strand direction")
    return tuple(arc_out), tuple(arc_in), tuple(over_in), tuple(comp_of_arc), comps


def _try_orient_component(a0, which, crossings, arc_ends, labels, trial) -> bool:
    """Tentatively orient the all-over component through a0 and check that
    labels ascend cyclically; fills `trial` with in-end choices."""
    comp = []
    a, w = a0, which
    while a not in trial:
        trial[a] = w
        comp.append(a)
        c, s = arc_ends[a][w]
        if s in (0, 2):
            return False  # touches an under-passage: not actually ambiguous
        out_s = (s + 2) % 4
        b = crossings[c][out_s]
        # next arc flows out of (c, out_s); its in end is the other one
        w = 1 - arc_ends[b].index((c, out_s))
        a = b
    ordered = sorted(comp)
    succ = {ordered[i]: ordered[(i + 1) % len(ordered)] for i in range(len(ordered))}
    for i, b in enumerate(comp):
        if succ[b] != comp[(i + 1) % len(comp)]:
            return False
    return True


def faces_and_coloring(d: PlanarDiagram, unbounded_face_hint: int | None = None) -> Coloring:
    """Trace face orbits and checkerboard-color them, unbounded face white.

    Without a hint the unbounded face is the one with the most arc sides
    (smallest id on ties); the homology output is invariant either way.
    """
    n = d.n
    ndarts = 4 * n
    alpha = [0] * ndarts
    seen_arc: dict[int, int] = {}
    for c in range(n):
        for s in range(4):
            a = d.crossings[c][s]
            dart = 4 * c + s
            if a in seen_arc:
                alpha[dart] = seen_arc[a]
                alpha[seen_arc[a]] = dart
            else:
                seen_arc[a] = dart

    face_of_dart = [-1] * ndarts
    faces = []
    for start in range(ndarts):
        if face_of_dart[start] != -1:
            continue
        orbit = []
        dart = start
        while face_of_dart[dart] == -1:
            face_of_dart[dart] = len(faces)
            orbit.append(dart)
            ad = alpha[dart]
            dart = 4 * (ad // 4) + (ad % 4 + 1) % 4  # rho o alpha
        faces.append(tuple(orbit))
    if len(faces) != n + 2:
        raise InternalGeometry(f"face count {len(faces)} != n + 2 = {n + 2}")

    if unbounded_face_hint is not None:
        if not 0 <= unbounded_face_hint < len(faces):
            raise MalformedInput(f"no face with id {unbounded_face_hint}")
        unbounded = unbounded_face_hint
    else:
        unbounded = max(range(len(faces)), key=lambda f: (len(faces[f]), -f))

    color = [-1] * len(faces)
    color[unbounded] = WHITE
    stack = [unbounded]
    while stack:
        f = stack.pop()
        for dart in faces[f]:
            g = face_of_dart[alpha[dart]]
            if color[g] == -1:
                color[g] = 1 - color[f]
                stack.append(g)
            elif color[g] == color[f]:
                raise InternalGeometry("checkerboard coloring impossible")
    return Coloring(
        faces=tuple(faces),
        face_of_dart=tuple(face_of_dart),
        unbounded=unbounded,
        color=tuple(color),
    )


def black_graph(d: PlanarDiagram, col: Coloring, orientation: str = "min-tail") -> BlackGraph:
    """Black graph with deterministic edge orientations and per-slot roles.

    orientation: "min-tail" (default) points every edge from the smaller
    black face id to the larger; "max-tail" reverses all edges (used to
    check that the homology does not depend on this choice).
    """
    if orientation not in ("min-tail", "max-tail"):
        raise MalformedInput(f"unknown edge orientation {orientation!r}")
    vertices = col.black_faces()
    tails, heads, head_slots, joins, roles = [], [], [], [], []
    for c in range(d.n):
        quad = [col.quadrant_face(c, k) for k in range(4)]
        blackq = [k for k in range(4) if col.color[quad[k]] == BLACK]
        if blackq not in ([0, 2], [1, 3]):
            raise InternalGeometry(f"black quadrants at crossing {c} are {blackq}")
        k0 = blackq[0]
        u, v = quad[k0], quad[k0 + 2]
        lo, hi = (u, v) if u <= v else (v, u)
        tail, head = (lo, hi) if orientation == "min-tail" else (hi, lo)
        if u == v:
            h = k0  # loop edge: either choice is a legal edge orientation
        else:
            h = k0 if quad[k0] == head else k0 + 2
        role = [0, 0, 0, 0]
        role[h % 4] = ROLE_I4
        role[(h + 1) % 4] = ROLE_I1
        role[(h + 2) % 4] = ROLE_I2
        role[(h + 3) % 4] = ROLE_I3
        tails.append(tail)
        heads.append(head)
        head_slots.append(h % 4)
        # the 0-resolution cuts quadrants Q01 and Q23, merging Q12 and Q30
        joins.append(0 if k0 == 1 else 1)
        roles.append(tuple(role))
    return BlackGraph(
        vertices=vertices,
        tail=tuple(tails),
        head=tuple(heads),
        head_slot=tuple(head_slots),
        joins_black=tuple(joins),
        roles=tuple(roles),
    )


def sign_data(d: PlanarDiagram) -> SignData:
    pos = sum(1 for s in d.over_in if s == 1)
    return SignData(n_plus=pos, n_minus=d.n - pos, components=d.components)


def mirror(d: PlanarDiagram) -> PlanarDiagram:
    """The diagram with every crossing's over/under exchanged.

    Rotating each record so the old over-strand's entry slot becomes the
    incoming under-strand preserves the rotation system (faces, coloring,
    black graph) and flips every crossing sign.
    """
    records = []
    for c, rec in enumerate(d.crossings):
        s = d.over_in[c]
        records.append(tuple(d.original_labels[rec[(s + i) % 4]] for i in range(4)))
    text = json.dumps([list(r) for r in records])
    return parse_pd(text)


def pd_text(d: PlanarDiagram) -> str:
    """Render back to X[...] notation with the original labels."""
    return " ".join(
        "X[%d,%d,%d,%d]" % tuple(d.original_labels[a] for a in rec) for rec in d.crossings
    )
