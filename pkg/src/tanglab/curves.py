"""Polygonal curves, contact classification and family validation.

Curves are simple oriented polygonal chains with exact rational vertices.
Two simple curves meeting at a point p either *cross* (the arcs of one
separate the arcs of the other in the cyclic order around p) or *touch*
(they do not).  A family is 1-intersecting when every pair shares at most
one point, and precisely-1-intersecting when every pair shares exactly one.

Tangency types: at a touch point both curves are oriented, so each has a
left and a right side.  The type is a two-letter code — first letter the
side of c1 on which c2 lies locally, second letter the side of c2 on which
c1 lies.  Example: a rightward horizontal line c1 touched from above at its
interior by a rightward vee c2 gives LR (c2 above = left of c1; c1 below
c2's rightward-then-leftward arcs = right of c2... the vee travels through
its apex, and the line sits on its right).

Internally, pairwise scans rescale both chains to a common integer grid so
the orientation arithmetic runs on plain ints; results are exact Fractions.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .geom import GeometryError, Point, Segment, format_rat, on_segment, orient, pt


class DegeneracyError(GeometryError):
    """Contact that the theory excludes: overlaps, ambiguous cyclic orders."""


class TangencyType(enum.Enum):
    LL = "LL"
    LR = "LR"
    RL = "RL"
    RR = "RR"

    @property
    def side1(self) -> str:
        return self.value[0]

    @property
    def side2(self) -> str:
        return self.value[1]

    def swapped(self) -> "TangencyType":
        return TangencyType(self.value[1] + self.value[0])


class ContactKind(enum.Enum):
    DISJOINT = "disjoint"
    CROSSING = "crossing"
    TANGENCY = "tangency"
    MULTI = "multi"
    DEGENERATE = "degenerate"


class PolyChain:
    """A simple oriented polygonal chain with rational vertices."""

    __slots__ = ("cid", "vertices", "_scale", "_scaled", "__weakref__")

    def __init__(self, cid: str, vertices: Iterable[Point]):
        self.cid = str(cid)
        self.vertices: Tuple[Point, ...] = tuple(
            Point(Fraction(v[0]), Fraction(v[1])) for v in vertices
        )
        if len(self.vertices) < 2:
            raise ValueError(f"chain {cid}: need at least 2 vertices")
        for a, b in zip(self.vertices, self.vertices[1:]):
            if a == b:
                raise ValueError(f"chain {cid}: repeated consecutive vertex {a}")
        self._scale: Optional[int] = None
        self._scaled: Dict[int, list] = {}

    def __repr__(self) -> str:
        return f"PolyChain({self.cid!r}, {len(self.vertices)} vertices)"

    @property
    def start(self) -> Point:
        return self.vertices[0]

    @property
    def end(self) -> Point:
        return self.vertices[-1]

    def edges(self) -> List[Segment]:
        return [Segment(a, b) for a, b in zip(self.vertices, self.vertices[1:])]

    def x_range(self) -> Tuple[Fraction, Fraction]:
        xs = [v.x for v in self.vertices]
        return min(xs), max(xs)

    def is_x_monotone(self) -> bool:
        """Strict monotonicity: vertex abscissas strictly increase (no vertical edges)."""
        return all(a.x < b.x for a, b in zip(self.vertices, self.vertices[1:]))

    # --- integer fast path -------------------------------------------------

    @property
    def scale(self) -> int:
        if self._scale is None:
            s = 1
            for v in self.vertices:
                s = lcm(s, v.x.denominator, v.y.denominator)
            self._scale = s
        return self._scale

    def scaled_segments(self, scale: int) -> list:
        """Segments as int tuples (minx, maxx, miny, maxy, ax, ay, bx, by),
        sorted by minx.  `scale` must be a multiple of self.scale."""
        segs = self._scaled.get(scale)
        if segs is None:
            ints = [
                (int(v.x * scale), int(v.y * scale)) for v in self.vertices
            ]
            segs = []
            for (ax, ay), (bx, by) in zip(ints, ints[1:]):
                if ax <= bx:
                    minx, maxx = ax, bx
                else:
                    minx, maxx = bx, ax
                if ay <= by:
                    miny, maxy = ay, by
                else:
                    miny, maxy = by, ay
                segs.append((minx, maxx, miny, maxy, ax, ay, bx, by))
            segs.sort(key=lambda s: s[0])
            if len(self._scaled) > 4:  # keep the cache tiny
                self._scaled.clear()
            self._scaled[scale] = segs
        return segs

    def is_simple(self) -> bool:
        """No self-intersections: non-adjacent edges disjoint, adjacent edges
        meeting only at the shared vertex (no turn-backs)."""
        edges = self.edges()
        n = len(edges)
        for i in range(n):
            for j in range(i + 1, n):
                a, b = edges[i], edges[j]
                if j == i + 1:
                    # shared vertex only; a turn-back makes the arcs collinear
                    da = (a.a.x - a.b.x, a.a.y - a.b.y)
                    db = (b.b.x - b.a.x, b.b.y - b.a.y)
                    if da[0] * db[1] - da[1] * db[0] == 0 and da[0] * db[0] + da[1] * db[1] > 0:
                        return False
                    continue
                from .geom import OverlapError, segment_intersect

                try:
                    p = segment_intersect(a, b)
                except OverlapError:
                    return False
                if p is not None:
                    # allowed only for a closed chain; we do not use those
                    return False
        return True


# --- locating a point on a chain -----------------------------------------


def locate_on_chain(chain: PolyChain, p: Point) -> Tuple[str, Tuple[int, Fraction]]:
    """Where does p sit on the chain?  Returns (kind, (edge_index, parameter))
    with kind in {start, end, vertex, interior}.  Position orders points along
    the chain.  Raises ValueError when p is not on the chain."""
    verts = chain.vertices
    for j, v in enumerate(verts):
        if v == p:
            if j == 0:
                return "start", (0, Fraction(0))
            if j == len(verts) - 1:
                return "end", (j - 1, Fraction(1))
            return "vertex", (j, Fraction(0))
    for i, (a, b) in enumerate(zip(verts, verts[1:])):
        if on_segment(p, Segment(a, b)):
            dx, dy = b.x - a.x, b.y - a.y
            t = (p.x - a.x) / dx if dx != 0 else (p.y - a.y) / dy
            return "interior", (i, t)
    raise ValueError(f"point {p} not on chain {chain.cid}")


def chain_position(chain: PolyChain, p: Point) -> Tuple[int, Fraction]:
    """Sort key for the order of points along the chain."""
    kind, pos = locate_on_chain(chain, p)
    if kind == "vertex":
        return pos[0] - 1, Fraction(1)  # canonical: end of the previous edge
    return pos


def emanating_dirs(chain: PolyChain, p: Point) -> Tuple[str, List[Tuple[Fraction, Fraction]]]:
    """Directions of the arcs of the chain leaving p: [toward previous, toward next]
    where present.  Kind as in locate_on_chain."""
    kind, (i, t) = locate_on_chain(chain, p)
    verts = chain.vertices
    if kind == "start":
        v = verts[1]
        return kind, [(v.x - p.x, v.y - p.y)]
    if kind == "end":
        v = verts[-2]
        return kind, [(v.x - p.x, v.y - p.y)]
    if kind == "vertex":
        a, b = verts[i - 1], verts[i + 1]
        return kind, [(a.x - p.x, a.y - p.y), (b.x - p.x, b.y - p.y)]
    a, b = verts[i], verts[i + 1]
    return kind, [(a.x - p.x, a.y - p.y), (b.x - p.x, b.y - p.y)]


def _cross(u, w) -> Fraction:
    return u[0] * w[1] - u[1] * w[0]


def _in_ccw_arc(u1, u2, w) -> bool:
    """Is direction w strictly inside the ccw arc from u1 to u2?
    Assumes w is not collinear-equal to u1 or u2 (caller screens that)."""
    c12 = _cross(u1, u2)
    c1w = _cross(u1, w)
    cw2 = _cross(w, u2)
    if c12 > 0:
        return c1w > 0 and cw2 > 0
    if c12 < 0:
        return c1w > 0 or cw2 > 0
    # u1, u2 exactly opposite: the arc is the open half-plane left of u1
    return c1w > 0


def classify_contact(c1: PolyChain, c2: PolyChain, p: Point) -> str:
    """'cross' or 'touch' at a known common point p (cyclic-order test)."""
    _, d1 = emanating_dirs(c1, p)
    _, d2 = emanating_dirs(c2, p)
    for u in d1:
        for w in d2:
            if _cross(u, w) == 0 and u[0] * w[0] + u[1] * w[1] > 0:
                raise DegeneracyError(
                    f"collinear emanating arcs of {c1.cid} and {c2.cid} at {p}"
                )
    if len(d1) == 1 or len(d2) == 1:
        return "touch"
    inside = [_in_ccw_arc(d1[0], d1[1], w) for w in d2]
    return "touch" if inside[0] == inside[1] else "cross"


def tangency_type(c1: PolyChain, c2: PolyChain, p: Point) -> TangencyType:
    """Type of the touch at p (letters: side of c1, then side of c2)."""
    if classify_contact(c1, c2, p) != "touch":
        raise DegeneracyError(f"{c1.cid} and {c2.cid} cross at {p}; no tangency type")
    s1 = _side_letter(c1, c2, p)
    s2 = _side_letter(c2, c1, p)
    return TangencyType(s1 + s2)


def _side_letter(c: PolyChain, other: PolyChain, p: Point) -> str:
    """On which side of c (L/R w.r.t. its orientation) does `other` lie near p?"""
    kind, dirs = emanating_dirs(c, p)
    _, odirs = emanating_dirs(other, p)
    if kind in ("interior", "vertex"):
        d_back, d_fwd = dirs[0], dirs[1]
        lefts = [_in_ccw_arc(d_fwd, d_back, w) for w in odirs]
    else:
        if kind == "start":
            travel = dirs[0]
        else:
            travel = (-dirs[0][0], -dirs[0][1])
        lefts = [_cross(travel, w) > 0 for w in odirs]
    if len(set(lefts)) != 1:
        raise DegeneracyError(
            f"side of {c.cid} ambiguous at endpoint contact {p} with {other.cid}"
        )
    return "L" if lefts[0] else "R"


# --- pairwise common points -----------------------------------------------


def _pair_points_int(segs1: list, segs2: list, scale: int) -> Dict[Point, bool]:
    """Common points of two chains given their scaled segment lists, mapped to
    True when the point is a strictly interior transversal crossing (which
    needs no further classification).  Raises DegeneracyError on
    positive-length overlap."""
    out: Dict[Point, bool] = {}
    j_lo = 0
    n2 = len(segs2)
    for s1 in segs1:
        minx1, maxx1, miny1, maxy1, ax, ay, bx, by = s1
        while j_lo < n2 and segs2[j_lo][1] < minx1:
            j_lo += 1
        j = j_lo
        while j < n2 and segs2[j][0] <= maxx1:
            s2 = segs2[j]
            j += 1
            if s2[2] > maxy1 or s2[3] < miny1:
                continue
            cx, cy, dx_, dy_ = s2[4], s2[5], s2[6], s2[7]
            # orientation tests on ints
            d1x, d1y = bx - ax, by - ay
            d2x, d2y = dx_ - cx, dy_ - cy
            o1 = d1x * (cy - ay) - d1y * (cx - ax)
            o2 = d1x * (dy_ - ay) - d1y * (dx_ - ax)
            o3 = d2x * (ay - cy) - d2y * (ax - cx)
            o4 = d2x * (by - cy) - d2y * (bx - cx)
            if o1 == 0 and o2 == 0:
                # collinear: overlap or single touch
                pts = []
                for px, py in ((cx, cy), (dx_, dy_)):
                    if minx1 <= px <= maxx1 and miny1 <= py <= maxy1:
                        pts.append((px, py))
                for px, py in ((ax, ay), (bx, by)):
                    if s2[0] <= px <= s2[1] and s2[2] <= py <= s2[3]:
                        pts.append((px, py))
                if not pts:
                    continue
                if any(q != pts[0] for q in pts):
                    raise DegeneracyError("collinear overlap of positive length")
                px, py = pts[0]
                out[Point(Fraction(px, scale), Fraction(py, scale))] = False
                continue
            if (o1 > 0) != (o2 > 0) and (o3 > 0) != (o4 > 0) and 0 not in (o1, o2, o3, o4):
                denom = d1x * d2y - d1y * d2x
                tn = (cx - ax) * d2y - (cy - ay) * d2x
                px = Fraction(ax * denom + tn * d1x, denom * scale)
                py = Fraction(ay * denom + tn * d1y, denom * scale)
                q = Point(px, py)
                out[q] = q not in out
                continue
            hit = None
            if o1 == 0 and minx1 <= cx <= maxx1 and miny1 <= cy <= maxy1:
                hit = (cx, cy)
            elif o2 == 0 and minx1 <= dx_ <= maxx1 and miny1 <= dy_ <= maxy1:
                hit = (dx_, dy_)
            elif o3 == 0 and s2[0] <= ax <= s2[1] and s2[2] <= ay <= s2[3]:
                hit = (ax, ay)
            elif o4 == 0 and s2[0] <= bx <= s2[1] and s2[2] <= by <= s2[3]:
                hit = (bx, by)
            if hit is not None:
                out[Point(Fraction(hit[0], scale), Fraction(hit[1], scale))] = False
    return out


def common_points(c1: PolyChain, c2: PolyChain, scale: Optional[int] = None) -> List[Tuple[Point, str]]:
    """All common points of two simple chains, each classified 'cross'/'touch'.

    Raises DegeneracyError when the chains overlap along a sub-segment or the
    cyclic order at a common point is ambiguous.
    """
    if scale is None:
        scale = lcm(c1.scale, c2.scale)
    segs1 = c1.scaled_segments(scale)
    segs2 = c2.scaled_segments(scale)
    if len(segs1) > len(segs2):
        segs1, segs2 = segs2, segs1
    try:
        hits = _pair_points_int(segs1, segs2, scale)
    except DegeneracyError as e:
        raise DegeneracyError(f"{c1.cid}/{c2.cid}: {e}") from None
    return [
        (p, "cross" if proper else classify_contact(c1, c2, p))
        for p, proper in sorted(hits.items())
    ]


# --- families --------------------------------------------------------------


class CurveFamily:
    """An ordered collection of chains plus window/ground metadata.

    window: (lo, hi) abscissas; bi-infinite curves span exactly [lo, hi].
    ground: abscissa of a vertical ground line (grounded families).
    Treated as immutable after construction; pairwise contacts are cached.
    """

    def __init__(
        self,
        curves: Iterable[PolyChain],
        window: Optional[Tuple[Fraction, Fraction]] = None,
        ground: Optional[Fraction] = None,
        x_monotone: bool = False,
        bi_infinite: bool = False,
    ):
        self.curves: Tuple[PolyChain, ...] = tuple(curves)
        ids = [c.cid for c in self.curves]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate curve ids")
        self.window = None if window is None else (Fraction(window[0]), Fraction(window[1]))
        self.ground = None if ground is None else Fraction(ground)
        self.x_monotone = bool(x_monotone)
        self.bi_infinite = bool(bi_infinite)
        self._by_id = {c.cid: c for c in self.curves}
        self._contacts: Optional[Dict[Tuple[str, str], tuple]] = None
        self._scale: Optional[int] = None

    def __len__(self) -> int:
        return len(self.curves)

    def curve(self, cid: str) -> PolyChain:
        return self._by_id[cid]

    @property
    def ids(self) -> List[str]:
        return [c.cid for c in self.curves]

    @property
    def scale(self) -> int:
        if self._scale is None:
            s = 1
            for c in self.curves:
                s = lcm(s, c.scale)
            self._scale = s
        return self._scale

    def contacts(self) -> Dict[Tuple[str, str], tuple]:
        """Pairwise contact map {(id_i, id_j): ('ok', [(pt, kind), ...]) or
        ('degenerate', reason)} for i < j in family order."""
        if self._contacts is None:
            scale = self.scale
            result: Dict[Tuple[str, str], tuple] = {}
            cs = self.curves
            for i in range(len(cs)):
                for j in range(i + 1, len(cs)):
                    key = (cs[i].cid, cs[j].cid)
                    try:
                        result[key] = ("ok", common_points(cs[i], cs[j], scale))
                    except DegeneracyError as e:
                        result[key] = ("degenerate", str(e))
            self._contacts = result
        return self._contacts

    def subfamily(self, ids: Sequence[str]) -> "CurveFamily":
        return CurveFamily(
            [self._by_id[i] for i in ids],
            window=self.window,
            ground=self.ground,
            x_monotone=self.x_monotone,
            bi_infinite=self.bi_infinite,
        )


@dataclass
class ValidationReport:
    n: int
    is_1_intersecting: bool
    is_precisely_1: bool
    non_simple: List[str]
    degenerate_pairs: List[Tuple[str, str, str]]
    multi_pairs: List[Tuple[str, str, int]]
    triple_points: List[Tuple[Point, Tuple[str, ...]]]
    endpoint_contacts: List[Tuple[str, str, Point]]
    all_x_monotone: bool
    bi_infinite_ok: bool
    grounded_ok: bool
    tangency_count: int
    crossing_count: int
    disjoint_count: int

    @property
    def ok(self) -> bool:
        return self.is_1_intersecting and not self.non_simple

    def summary(self) -> str:
        flags = []
        flags.append("1-intersecting" if self.is_1_intersecting else "NOT 1-intersecting")
        if self.is_precisely_1:
            flags.append("precisely-1")
        if self.all_x_monotone:
            flags.append("x-monotone")
        if self.bi_infinite_ok:
            flags.append("bi-infinite")
        if self.grounded_ok:
            flags.append("grounded")
        return (
            f"n={self.n} [{', '.join(flags)}] tangencies={self.tangency_count} "
            f"crossings={self.crossing_count} disjoint={self.disjoint_count} "
            f"degenerate={len(self.degenerate_pairs)} multi={len(self.multi_pairs)} "
            f"triples={len(self.triple_points)} non_simple={len(self.non_simple)}"
        )


def validate_family(family: CurveFamily) -> ValidationReport:
    """Full pairwise scan: simplicity, contact multiplicities, triple points,
    window/ground discipline.  This is the oracle everything else trusts."""
    non_simple = [c.cid for c in family.curves if not c.is_simple()]
    contacts = family.contacts()
    degenerate = []
    multi = []
    endpointish = []
    tang = 0
    crossn = 0
    disj = 0
    precisely = True
    point_owners: Dict[Point, set] = {}
    for (i, j), (status, data) in contacts.items():
        if status == "degenerate":
            degenerate.append((i, j, data))
            precisely = False
            continue
        pts = data
        if len(pts) == 0:
            disj += 1
            precisely = False
        elif len(pts) > 1:
            multi.append((i, j, len(pts)))
            precisely = False
        else:
            p, kind = pts[0]
            if kind == "touch":
                tang += 1
            else:
                crossn += 1
        for p, kind in pts:
            point_owners.setdefault(p, set()).update((i, j))
            ci, cj = family.curve(i), family.curve(j)
            if p in (ci.start, ci.end, cj.start, cj.end):
                endpointish.append((i, j, p))
    triples = sorted(
        (p, tuple(sorted(owners)))
        for p, owners in point_owners.items()
        if len(owners) >= 3
    )

    all_mono = all(c.is_x_monotone() for c in family.curves)
    bi_ok = False
    if family.window is not None:
        lo, hi = family.window
        bi_ok = all(c.start.x == lo and c.end.x == hi for c in family.curves)
    grounded_ok = False
    if family.ground is not None:
        g = family.ground
        grounded_ok = True
        for c in family.curves:
            if c.start.x != g:
                grounded_ok = False
                break
            # the rest of the chain must stay strictly right of the ground line
            if any(v.x <= g for v in c.vertices[1:]):
                grounded_ok = False
                break

    is_one = (
        not degenerate
        and not multi
        and not triples
        and not non_simple
    )
    return ValidationReport(
        n=len(family),
        is_1_intersecting=is_one,
        is_precisely_1=is_one and precisely,
        non_simple=non_simple,
        degenerate_pairs=degenerate,
        multi_pairs=multi,
        triple_points=triples,
        endpoint_contacts=endpointish,
        all_x_monotone=all_mono,
        bi_infinite_ok=bi_ok,
        grounded_ok=grounded_ok,
        tangency_count=tang,
        crossing_count=crossn,
        disjoint_count=disj,
    )


@dataclass
class TangencyEdge:
    c1: str
    c2: str
    point: Point
    type: TangencyType


@dataclass
class TangencyGraph:
    nodes: List[str]
    edges: List[TangencyEdge]

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, cid: str) -> int:
        return sum(1 for e in self.edges if cid in (e.c1, e.c2))

    def adjacency(self) -> Dict[str, List[str]]:
        adj: Dict[str, List[str]] = {v: [] for v in self.nodes}
        for e in self.edges:
            adj[e.c1].append(e.c2)
            adj[e.c2].append(e.c1)
        return adj

    def is_forest(self) -> bool:
        parent = {v: v for v in self.nodes}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            ra, rb = find(e.c1), find(e.c2)
            if ra == rb:
                return False
            parent[ra] = rb
        return True


def tangency_graph(family: CurveFamily, strict: bool = True) -> TangencyGraph:
    """Graph with one edge per touching pair (point and type attached).

    With strict=True (default) a degenerate or non-1-intersecting family is
    refused; validate first."""
    contacts = family.contacts()
    edges = []
    for (i, j), (status, data) in contacts.items():
        if status == "degenerate":
            if strict:
                raise DegeneracyError(f"{i}/{j}: {data}")
            continue
        if strict and len(data) > 1:
            raise DegeneracyError(f"{i}/{j}: {len(data)} common points; not 1-intersecting")
        for p, kind in data:
            if kind == "touch":
                edges.append(
                    TangencyEdge(i, j, p, tangency_type(family.curve(i), family.curve(j), p))
                )
    return TangencyGraph(nodes=family.ids, edges=edges)


def subchain(chain: PolyChain, p: Point, q: Optional[Point] = None, cid: Optional[str] = None) -> PolyChain:
    """The portion of the chain from p to q (or to the end when q is None),
    in chain order.  p must come before q along the chain."""
    pos_p = chain_position(chain, p)
    if q is None:
        qkind, pos_q = "end", (len(chain.vertices) - 2, Fraction(1))
        q = chain.end
    else:
        pos_q = chain_position(chain, q)
    if pos_q < pos_p:
        raise ValueError("q precedes p on the chain")
    (ei, ti), (ej, tj) = pos_p, pos_q
    verts: List[Point] = [p]
    for k in range(ei + 1, ej + 1):
        v = chain.vertices[k]
        if v != verts[-1]:
            verts.append(v)
    if q != verts[-1]:
        verts.append(q)
    return PolyChain(cid or f"{chain.cid}[{format_rat(p.x)}..{format_rat(q.x)}]", verts)
