"""Machinery for x-monotone chains.

Vertical order, lower envelopes, vertical visibility, the trapezoidal
(vertical) decomposition of the plane induced by a family, randomized
cutting search, and bi-infinite extension by steep rays.

Everything sweeps over *event* abscissas — vertices and pairwise common
points — and only ever evaluates curves at exact rational midpoints of
event intervals, so all comparisons are exact.
"""

from __future__ import annotations

import random
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .curves import CurveFamily, DegeneracyError, PolyChain, common_points, validate_family
from .geom import Point, pt

NEG_INF = float("-inf")
POS_INF = float("inf")


def is_x_monotone(c: PolyChain) -> bool:
    return c.is_x_monotone()


def value_at(c: PolyChain, x: Fraction) -> Fraction:
    """y-value of an x-monotone chain at abscissa x (exact interpolation)."""
    x = Fraction(x)
    verts = c.vertices
    if not (verts[0].x <= x <= verts[-1].x):
        raise ValueError(f"x={x} outside the span of {c.cid}")
    lo, hi = 0, len(verts) - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if verts[mid].x <= x:
            lo = mid
        else:
            hi = mid
    a, b = verts[lo], verts[hi]
    if x == a.x:
        return a.y
    if x == b.x:
        return b.y
    return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x)


def _event_xs(chains: Sequence[PolyChain], scale: Optional[int] = None) -> List[Fraction]:
    xs: Set[Fraction] = set()
    for c in chains:
        for v in c.vertices:
            xs.add(v.x)
    for i in range(len(chains)):
        for j in range(i + 1, len(chains)):
            for p, _ in common_points(chains[i], chains[j], scale):
                xs.add(p.x)
    return sorted(xs)


def starts_below(c1: PolyChain, c2: PolyChain) -> bool:
    """Does c1 start below c2?  True when c1 lies below c2 everywhere, or is
    strictly lower just left of their leftmost common point."""
    if c1.vertices == c2.vertices:
        raise ValueError("identical chains have no vertical order")
    lo = max(c1.start.x, c2.start.x)
    hi = min(c1.end.x, c2.end.x)
    if lo > hi:
        raise ValueError("chains do not share any abscissa")
    pts = common_points(c1, c2)
    if not pts:
        mid = (lo + hi) / 2
        return value_at(c1, mid) < value_at(c2, mid)
    leftmost = pts[0][0]
    if leftmost.x <= lo:
        raise ValueError(
            f"{c1.cid} and {c2.cid} already meet at the left edge x={leftmost.x}"
        )
    probe = (lo + leftmost.x) / 2
    return value_at(c1, probe) < value_at(c2, probe)


# --- lower envelope --------------------------------------------------------


@dataclass
class EnvelopePiece:
    lo: Fraction
    hi: Fraction
    cid: str


def lower_envelope(family: CurveFamily) -> List[EnvelopePiece]:
    """Maximal pieces of the pointwise minimum over the shared window."""
    chains = family.curves
    if not chains:
        return []
    if family.window is not None:
        lo, hi = family.window
    else:
        lo = max(c.start.x for c in chains)
        hi = min(c.end.x for c in chains)
    if lo >= hi:
        raise ValueError("chains share no open x-interval")
    xs = [x for x in _event_xs(chains, family.scale) if lo < x < hi]
    bounds = [lo] + xs + [hi]
    pieces: List[EnvelopePiece] = []
    for a, b in zip(bounds, bounds[1:]):
        mid = (a + b) / 2
        winner = min(chains, key=lambda c: value_at(c, mid))
        if pieces and pieces[-1].cid == winner.cid:
            pieces[-1].hi = b
        else:
            pieces.append(EnvelopePiece(a, b, winner.cid))
    return pieces


def vertical_visibility_pairs(family: CurveFamily) -> Set[Tuple[str, str]]:
    """Disjoint pairs that are vertically adjacent on some open event interval."""
    chains = family.curves
    scale = family.scale
    disjoint = set()
    for i in range(len(chains)):
        for j in range(i + 1, len(chains)):
            if not common_points(chains[i], chains[j], scale):
                disjoint.add(frozenset((chains[i].cid, chains[j].cid)))
    xs = _event_xs(chains, scale)
    out: Set[Tuple[str, str]] = set()
    for a, b in zip(xs, xs[1:]):
        mid = (a + b) / 2
        present = [c for c in chains if c.start.x <= mid <= c.end.x]
        present.sort(key=lambda c: value_at(c, mid))
        for u, v in zip(present, present[1:]):
            if frozenset((u.cid, v.cid)) in disjoint:
                out.add(tuple(sorted((u.cid, v.cid))))
    return out


# --- trapezoidal decomposition --------------------------------------------


@dataclass
class Trapezoid:
    index: int
    x_lo: Optional[Fraction]  # None = unbounded left
    x_hi: Optional[Fraction]  # None = unbounded right
    bottom: Optional[str]  # floor curve id, None = open below
    top: Optional[str]  # ceiling curve id, None = open above
    strips: List[Tuple[int, int]] = field(default_factory=list)


class Partition:
    """Vertical decomposition of the plane induced by a family of x-monotone
    chains: walls erected up and down from every endpoint and intersection
    point until the first curve hit; cells tile the plane."""

    def __init__(self, defining: CurveFamily):
        self.defining = defining
        self.defining_ids = list(defining.ids)
        self._build()

    def _build(self) -> None:
        chains = self.defining.curves
        scale = self.defining.scale
        # event points: chain endpoints and pairwise common points
        events: Set[Point] = set()
        for c in chains:
            events.add(c.start)
            events.add(c.end)
        for i in range(len(chains)):
            for j in range(i + 1, len(chains)):
                for p, _ in common_points(chains[i], chains[j], scale):
                    events.add(p)
        xs = sorted({p.x for p in events})
        self.xs = xs
        self.events_by_x: Dict[Fraction, List[Fraction]] = {}
        for p in events:
            self.events_by_x.setdefault(p.x, []).append(p.y)

        # slab j spans (bounds[j], bounds[j+1]); outermost slabs unbounded
        nslab = len(xs) + 1
        self.slab_curves: List[List[PolyChain]] = []
        for j in range(nslab):
            if j == 0 or j == nslab - 1 or not xs:
                self.slab_curves.append([])
                continue
            a, b = xs[j - 1], xs[j]
            mid = (a + b) / 2
            inside = [c for c in chains if c.start.x <= a and c.end.x >= b]
            inside.sort(key=lambda c: value_at(c, mid))
            self.slab_curves.append(inside)

        # union-find over strips (slab, strip index)
        parent: Dict[Tuple[int, int], Tuple[int, int]] = {}

        def find(s):
            root = s
            while parent[root] != root:
                root = parent[root]
            while parent[s] != root:
                parent[s], s = root, parent[s]
            return root

        for j in range(nslab):
            for k in range(len(self.slab_curves[j]) + 1):
                parent[(j, k)] = (j, k)

        for j, x_e in enumerate(xs):
            left, right = j, j + 1
            lg = self._gaps_at(left, x_e)
            rg = self._gaps_at(right, x_e)
            walls = self._walls_at(x_e)
            for kl, (llo, lhi) in enumerate(lg):
                for kr, (rlo, rhi) in enumerate(rg):
                    ilo = max(llo, rlo)
                    ihi = min(lhi, rhi)
                    if not ilo < ihi:
                        continue
                    if any(max(ilo, wlo) < min(ihi, whi) for wlo, whi in walls):
                        continue
                    ra, rb = find((left, kl)), find((right, kr))
                    if ra != rb:
                        parent[ra] = rb

        groups: Dict[Tuple[int, int], List[Tuple[int, int]]] = {}
        for s in parent:
            groups.setdefault(find(s), []).append(s)
        self.cells: List[Trapezoid] = []
        self._strip_cell: Dict[Tuple[int, int], int] = {}
        bounds: List[object] = [None] + list(xs) + [None]
        for strips in groups.values():
            strips.sort()
            idx = len(self.cells)
            jmin = strips[0][0]
            jmax = strips[-1][0]
            bottoms = set()
            tops = set()
            for (j, k) in strips:
                sc = self.slab_curves[j]
                bottoms.add(sc[k - 1].cid if k > 0 else None)
                tops.add(sc[k].cid if k < len(sc) else None)
                self._strip_cell[(j, k)] = idx
            if len(bottoms) != 1 or len(tops) != 1:
                raise DegeneracyError("merged cell with inconsistent floor/ceiling")
            self.cells.append(
                Trapezoid(
                    index=idx,
                    x_lo=bounds[jmin],
                    x_hi=bounds[jmax + 1],
                    bottom=bottoms.pop(),
                    top=tops.pop(),
                    strips=strips,
                )
            )

    @property
    def cell_count(self) -> int:
        return len(self.cells)

    def _gaps_at(self, slab: int, x: Fraction) -> List[Tuple[object, object]]:
        """Open y-gaps of a slab's strips, with bounds evaluated at x."""
        vals = [value_at(c, x) for c in self.slab_curves[slab]]
        cuts = [NEG_INF] + vals + [POS_INF]
        return list(zip(cuts, cuts[1:]))

    def _walls_at(self, x_e: Fraction) -> List[Tuple[object, object]]:
        """Open y-intervals of the vertical walls erected at abscissa x_e."""
        vals = sorted(
            value_at(c, x_e)
            for c in self.defining.curves
            if c.start.x <= x_e <= c.end.x
        )
        walls = []
        for yp in self.events_by_x.get(x_e, ()):
            lo = NEG_INF
            hi = POS_INF
            i = bisect_left(vals, yp)
            if i > 0:
                lo = vals[i - 1]
            i = bisect_right(vals, yp)
            if i < len(vals):
                hi = vals[i]
            walls.append((lo, hi))
        return walls

    def _strip_of(self, slab: int, x: Fraction, y: Fraction) -> Optional[int]:
        """Strip index holding (x, y), or None when y lies on a slab curve."""
        for k, c in enumerate(self.slab_curves[slab]):
            v = value_at(c, x)
            if y == v:
                return None
            if y < v:
                return k
        return len(self.slab_curves[slab])

    def locate(self, p: Point) -> Optional[int]:
        """Cell whose open interior contains p, or None when p lies on a cell
        boundary (a curve or a wall)."""
        x, y = Fraction(p[0]), Fraction(p[1])
        xs = self.xs
        if not xs:
            return 0
        i = bisect_left(xs, x)
        if i < len(xs) and xs[i] == x:
            kl = self._strip_of(i, x, y)
            kr = self._strip_of(i + 1, x, y)
            if kl is None or kr is None:
                return None
            cl = self._strip_cell[(i, kl)]
            if cl != self._strip_cell[(i + 1, kr)]:
                return None  # p sits on a wall
            return cl
        k = self._strip_of(i, x, y)
        if k is None:
            return None
        return self._strip_cell[(i, k)]


def trapezoidal_partition(defining: CurveFamily) -> Partition:
    rep = validate_family(defining)
    if rep.degenerate_pairs or rep.non_simple:
        raise DegeneracyError(f"degenerate defining family: {rep.summary()}")
    if not rep.all_x_monotone:
        raise ValueError("defining family must be x-monotone")
    return Partition(defining)


@dataclass
class CellStats:
    cell: int
    long_ids: List[str]
    short_ids: List[str]

    @property
    def total(self) -> int:
        return len(self.long_ids) + len(self.short_ids)


def cell_stats(partition: Partition, family: CurveFamily) -> List[CellStats]:
    """Per cell: curves of `family` meeting the open interior, split into
    long (no endpoint inside) and short (at least one endpoint inside)."""
    meets: Dict[int, Set[str]] = {}
    short: Dict[int, Set[str]] = {}
    xs = partition.xs
    scale = None
    for c in family.curves:
        lo, hi = c.start.x, c.end.x
        bps = {lo, hi}
        i = bisect_right(xs, lo)
        while i < len(xs) and xs[i] < hi:
            bps.add(xs[i])
            i += 1
        for d in partition.defining.curves:
            if d.cid == c.cid:
                continue
            for p, _ in common_points(c, d):
                if lo < p.x < hi:
                    bps.add(p.x)
        sb = sorted(bps)
        for a, b in zip(sb, sb[1:]):
            mx = (a + b) / 2
            cell = partition.locate(Point(mx, value_at(c, mx)))
            if cell is not None:
                meets.setdefault(cell, set()).add(c.cid)
        for e in (c.start, c.end):
            cell = partition.locate(e)
            if cell is not None:
                meets.setdefault(cell, set()).add(c.cid)
                short.setdefault(cell, set()).add(c.cid)
    out = []
    for cell in range(partition.cell_count):
        s = short.get(cell, set())
        m = meets.get(cell, set())
        out.append(CellStats(cell, sorted(m - s), sorted(s)))
    return out


# --- cutting search --------------------------------------------------------


@dataclass
class CuttingFailure:
    tries: int
    best_cells: Optional[int]
    best_max_load: Optional[int]
    message: str


def cutting_search(
    family: CurveFamily,
    r: int,
    c_max: int = 64,
    seed: int = 0,
    tries: int = 100,
    a: int = 4,
):
    """Random-subset search for a 1/r-cutting: partition induced by a sample of
    size min(n, ceil(a*r)) whose cells number at most c_max*r^2 and whose open
    interiors each meet at most n/r curves of the family.  Returns
    (subset_ids, Partition, stats) or a CuttingFailure after `tries` draws."""
    n = len(family)
    if n < 1 or r < 1:
        raise ValueError("need n >= 1 and r >= 1")
    size = min(n, int(-(-a * r // 1)))  # ceil(a*r)
    rng = random.Random(seed)
    budget_cells = c_max * r * r
    load_limit = Fraction(n, r)
    best = (None, None)
    for t in range(tries):
        ids = sorted(rng.sample(family.ids, size))
        part = trapezoidal_partition(family.subfamily(ids))
        stats = cell_stats(part, family)
        max_load = max((s.total for s in stats), default=0)
        if best[0] is None or (part.cell_count, max_load) < best:
            best = (part.cell_count, max_load)
        if part.cell_count <= budget_cells and all(s.total <= load_limit for s in stats):
            return ids, part, stats
    return CuttingFailure(
        tries=tries,
        best_cells=best[0],
        best_max_load=best[1],
        message=f"no 1/{r}-cutting found in {tries} tries (best: {best[0]} cells, load {best[1]})",
    )


# --- bi-infinite extension -------------------------------------------------


def biinfinite_extend(
    family: CurveFamily,
    mode="above",
    window: Optional[Tuple[Fraction, Fraction]] = None,
    verify: bool = True,
) -> CurveFamily:
    """Extend every chain to span a common window by shooting steep rays from
    both endpoints: upward for mode 'above', downward for 'below' (the left
    and right rays get opposite slopes, so extensions of same-mode curves are
    parallel and each pair gains at most two new crossings).

    mode: a single 'above'/'below' or a {cid: mode} map.  When verify is on,
    the ray slope is bumped until no pair gains more than two common points
    and no degeneracy appears (gives up after 32 bumps).
    """
    for c in family.curves:
        if not c.is_x_monotone():
            raise ValueError(f"{c.cid} is not x-monotone")
    modes = {c.cid: mode for c in family.curves} if isinstance(mode, str) else dict(mode)
    for cid, m in modes.items():
        if m not in ("above", "below"):
            raise ValueError(f"bad mode {m!r} for {cid}")
    if window is None:
        if family.window is not None:
            window = family.window
        else:
            window = (
                min(c.start.x for c in family.curves) - 1,
                max(c.end.x for c in family.curves) + 1,
            )
    lo, hi = Fraction(window[0]), Fraction(window[1])
    if any(c.start.x < lo or c.end.x > hi for c in family.curves):
        raise ValueError("window does not contain the family")

    steep = Fraction(1)
    for c in family.curves:
        for a, b in zip(c.vertices, c.vertices[1:]):
            s = abs((b.y - a.y) / (b.x - a.x))
            if s >= steep:
                steep = s + 1

    before = {
        key: len(data) if status == "ok" else None
        for key, (status, data) in family.contacts().items()
    }

    last_error = None
    for bump in range(32):
        s = steep + bump
        new_chains = []
        for c in family.curves:
            sign = 1 if modes[c.cid] == "above" else -1
            verts = list(c.vertices)
            if c.start.x > lo:
                verts.insert(0, Point(lo, c.start.y + sign * s * (c.start.x - lo)))
            if c.end.x < hi:
                verts.append(Point(hi, c.end.y + sign * s * (hi - c.end.x)))
            new_chains.append(PolyChain(c.cid, verts))
        out = CurveFamily(
            new_chains,
            window=(lo, hi),
            ground=family.ground,
            x_monotone=True,
            bi_infinite=True,
        )
        if not verify:
            return out
        ok = True
        for key, (status, data) in out.contacts().items():
            if status == "degenerate":
                ok, last_error = False, f"{key}: {data}"
                break
            prev = before[key]
            if prev is None or len(data) > prev + 2:
                ok, last_error = False, f"{key}: {prev} -> {len(data)} common points"
                break
        if ok:
            return out
    raise DegeneracyError(f"bi-infinite extension failed: {last_error}")
