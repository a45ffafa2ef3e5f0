"""Text formats: curve-family files and bipartite-graph edge lists.

Family files are canonical (curves sorted by id, rationals normalized), so
saving the same family twice is byte-identical.  Declared flags are re-checked
on load and a mismatch is an error.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .bipartite import BipartiteGraph
from .curves import CurveFamily, PolyChain, validate_family
from .geom import Point, format_rat, rat

FAMILY_HEADER = "tanglab-family 1"
KNOWN_FLAGS = ("x_monotone", "bi_infinite", "one_intersecting", "precisely_1")


class FormatError(ValueError):
    def __init__(self, path, lineno, message):
        super().__init__(f"{path}:{lineno}: {message}")
        self.path, self.lineno = path, lineno


def save_family(family: CurveFamily, path, extra_flags: Sequence[str] = ()) -> None:
    lines = [FAMILY_HEADER]
    if family.window is not None:
        lines.append(f"window {format_rat(family.window[0])} {format_rat(family.window[1])}")
    if family.ground is not None:
        lines.append(f"ground {format_rat(family.ground)}")
    flags = []
    if family.x_monotone:
        flags.append("x_monotone")
    if family.bi_infinite:
        flags.append("bi_infinite")
    for f in extra_flags:
        if f not in KNOWN_FLAGS:
            raise ValueError(f"unknown flag {f!r}")
        if f not in flags:
            flags.append(f)
    if flags:
        lines.append("flags " + " ".join(flags))
    for c in sorted(family.curves, key=lambda c: c.cid):
        lines.append(f"curve {c.cid} {len(c.vertices)}")
        for v in c.vertices:
            lines.append(f"{format_rat(v.x)} {format_rat(v.y)}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def load_family(path) -> CurveFamily:
    with open(path) as fh:
        raw = fh.read().splitlines()
    if not raw or raw[0].strip() != FAMILY_HEADER:
        raise FormatError(path, 1, f"expected header {FAMILY_HEADER!r}")
    window = ground = None
    flags: List[str] = []
    chains: List[PolyChain] = []
    i = 1

    def parse_rat(tok, lineno):
        try:
            r = rat(tok)
        except (ValueError, ZeroDivisionError) as e:
            raise FormatError(path, lineno, f"bad rational {tok!r}: {e}") from None
        return r

    n = len(raw)
    while i < n:
        line = raw[i].strip()
        i += 1
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "window" and len(parts) == 3:
            window = (parse_rat(parts[1], i), parse_rat(parts[2], i))
        elif parts[0] == "ground" and len(parts) == 2:
            ground = parse_rat(parts[1], i)
        elif parts[0] == "flags":
            for f in parts[1:]:
                if f not in KNOWN_FLAGS:
                    raise FormatError(path, i, f"unknown flag {f!r}")
                flags.append(f)
        elif parts[0] == "curve" and len(parts) == 3:
            cid = parts[1]
            try:
                count = int(parts[2])
            except ValueError:
                raise FormatError(path, i, f"bad vertex count {parts[2]!r}") from None
            verts = []
            for _ in range(count):
                if i >= n:
                    raise FormatError(path, i + 1, f"curve {cid}: unexpected end of file")
                toks = raw[i].split()
                i += 1
                if len(toks) != 2:
                    raise FormatError(path, i, f"curve {cid}: expected 'x y'")
                verts.append(Point(parse_rat(toks[0], i), parse_rat(toks[1], i)))
            try:
                chains.append(PolyChain(cid, verts))
            except ValueError as e:
                raise FormatError(path, i, str(e)) from None
        else:
            raise FormatError(path, i, f"unrecognized line {line!r}")

    fam = CurveFamily(
        chains,
        window=window,
        ground=ground,
        x_monotone="x_monotone" in flags,
        bi_infinite="bi_infinite" in flags,
    )
    _check_flags(fam, flags, path)
    return fam


def _check_flags(fam: CurveFamily, flags: List[str], path) -> None:
    if "x_monotone" in flags and not all(c.is_x_monotone() for c in fam.curves):
        raise ValueError(f"{path}: flag x_monotone violated")
    if "bi_infinite" in flags:
        if fam.window is None:
            raise ValueError(f"{path}: flag bi_infinite requires a window")
        lo, hi = fam.window
        if not all(c.start.x == lo and c.end.x == hi for c in fam.curves):
            raise ValueError(f"{path}: flag bi_infinite violated")
    if "one_intersecting" in flags or "precisely_1" in flags:
        rep = validate_family(fam)
        if not rep.is_1_intersecting:
            raise ValueError(f"{path}: flag one_intersecting violated: {rep.summary()}")
        if "precisely_1" in flags and not rep.is_precisely_1:
            raise ValueError(f"{path}: flag precisely_1 violated: {rep.summary()}")


def save_graph(g: BipartiteGraph, path) -> None:
    """Header 'A <m> B <n>', then one '<a> <b>' line per edge, 0-indexed by
    position in each side's id list."""
    ai = {a: i for i, a in enumerate(g.a_ids)}
    bi = {b: i for i, b in enumerate(g.b_ids)}
    lines = [f"A {len(g.a_ids)} B {len(g.b_ids)}"]
    lines += [f"{a} {b}" for a, b in sorted((ai[a], bi[b]) for a, b in g.edges())]
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def load_graph(path) -> BipartiteGraph:
    with open(path) as fh:
        raw = [l.strip() for l in fh.read().splitlines() if l.strip() and not l.startswith("#")]
    if not raw:
        raise FormatError(path, 1, "empty graph file")
    head = raw[0].split()
    if len(head) != 4 or head[0] != "A" or head[2] != "B":
        raise FormatError(path, 1, "expected header 'A <size> B <size>'")
    try:
        na, nb = int(head[1]), int(head[3])
    except ValueError:
        raise FormatError(path, 1, "bad side sizes") from None
    edges = []
    for lineno, line in enumerate(raw[1:], start=2):
        toks = line.split()
        try:
            a, b = int(toks[0]), int(toks[1])
        except (ValueError, IndexError):
            raise FormatError(path, lineno, f"bad edge line {line!r}") from None
        if not (0 <= a < na and 0 <= b < nb):
            raise FormatError(path, lineno, f"edge ({a},{b}) out of range")
        edges.append((a, b))
    return BipartiteGraph(range(na), range(nb), edges)
