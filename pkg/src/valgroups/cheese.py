"""Definable subsets of K in Swiss cheese normal form.

A Swiss cheese is outer minus finitely many holes, where outer is a ball,
a point, or all of K, and the holes are balls or points strictly inside the
outer set.  Every one-variable set definable from valuation comparisons of
factored polynomials is a finite disjoint union of these; ``realize_formula``
computes that union exactly by a case analysis over the finite tree of balls
spanned by the roots appearing in the formula.

The canonical normal form produced by ``DefSet.normalize``:

* every ball is written closed on the lattice (1/e)Z (an open ball of
  radius r equals the closed ball of radius r + 1/e) with the
  minimal-support center representative,
* pieces are pairwise disjoint with maximal holes,
* pieces and holes are sorted by (radius, center), so equal sets render
  byte-identically.

This module assumes an infinite residue field and is therefore restricted
to base Q: over F_p a closed ball is the union of its p maximal open
sub-balls, which breaks uniqueness of the normal form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .balls import Ball, BallKind, BallRelation, canonical_center, compare
from .errors import NotInDomain, PrecisionLoss, Unsupported
from .formulas import And, Atom, EqAtom, FactoredPoly, Not, Or, formula_atoms
from .gamma import (
    INF,
    GammaValue,
    gamma,
    lattice_ceil,
    lattice_ceil_strict,
)
from .laurent import FieldContext, LaurentElement
from .residues import Rationals


def _require_rational_base(ctx: FieldContext):
    if not isinstance(ctx.base, Rationals):
        raise Unsupported("set algebra needs an infinite residue field; use base Q")


class SwissCheese:
    """outer minus the union of the holes."""

    __slots__ = ("outer", "holes")

    def __init__(self, outer: Ball, holes=()):
        self.outer = outer
        self.holes = tuple(holes)

    def contains(self, x: LaurentElement) -> bool:
        if not self.outer.contains(x):
            return False
        return not any(h.contains(x) for h in self.holes)

    def render(self) -> str:
        out = _ball_str(self.outer)
        if not self.holes:
            return out
        return f"{out} \\ {{{', '.join(_ball_str(h) for h in self.holes)}}}"

    def __repr__(self):
        return f"SwissCheese({self.render()})"


def _ball_str(b: Ball) -> str:
    if b.kind is BallKind.ALLK:
        return "K"
    if b.kind is BallKind.POINT:
        return f"point({b.center.render()})"
    return f"B({b.center.render()}; >= {b.radius})"


class DefSet:
    """A finite union of Swiss cheeses (disjoint after normalize)."""

    __slots__ = ("ctx", "pieces")

    def __init__(self, ctx: FieldContext, pieces=()):
        self.ctx = ctx
        self.pieces = tuple(pieces)

    @staticmethod
    def empty(ctx) -> "DefSet":
        return DefSet(ctx, ())

    @staticmethod
    def everything(ctx) -> "DefSet":
        return DefSet(ctx, (SwissCheese(Ball.all()),))

    @staticmethod
    def from_ball(ctx, ball: Ball) -> "DefSet":
        return DefSet(ctx, (SwissCheese(ball),)).normalize()

    def contains(self, x: LaurentElement) -> bool:
        return any(p.contains(x) for p in self.pieces)

    def is_empty(self) -> bool:
        return not self.normalize().pieces

    # --- boolean algebra ---

    def union(self, other: "DefSet") -> "DefSet":
        return DefSet(self.ctx, self.pieces + other.pieces).normalize()

    def intersect(self, other: "DefSet") -> "DefSet":
        out = []
        for p in self.pieces:
            for q in other.pieces:
                piece = _intersect_pieces(p, q)
                if piece is not None:
                    out.append(piece)
        return DefSet(self.ctx, out).normalize()

    def complement(self) -> "DefSet":
        result = DefSet.everything(self.ctx)
        for p in self.pieces:
            result = result.intersect(_piece_complement(self.ctx, p))
        return result.normalize()

    def minus(self, other: "DefSet") -> "DefSet":
        return self.intersect(other.complement())

    # --- canonical form ---

    def normalize(self) -> "DefSet":
        _require_rational_base(self.ctx)
        dedupe = {}  # key -> canonical Ball (None marks all of K)
        piece_refs = []
        for p in self.pieces:
            o = _canonical_ball(p.outer, dedupe)
            hs = [_canonical_ball(h, dedupe) for h in p.holes]
            piece_refs.append((o, hs))
        nodes = list(dedupe.values())
        parent = {}
        children = {id(b): [] for b in nodes}
        top = []
        for b in nodes:
            best = None
            for c in nodes:
                if c is b:
                    continue
                if compare(b, c) is BallRelation.FIRST_INSIDE_SECOND:
                    if best is None or compare(c, best) is BallRelation.FIRST_INSIDE_SECOND:
                        best = c
            parent[id(b)] = best
            if best is None:
                top.append(b)
            else:
                children[id(best)].append(b)

        def chain_ids(b):
            out = set()
            cur = b
            while cur is not None:
                out.add(id(cur))
                cur = parent[id(cur)]
            return out

        def node_in(b) -> bool:
            chain = chain_ids(b)
            for o, hs in piece_refs:
                if o is not None and id(o) not in chain:
                    continue
                if any(id(h) in chain for h in hs):
                    continue
                return True
            return False

        in_flag = {id(b): node_in(b) for b in nodes}
        root_in = any(o is None for o, _ in piece_refs)

        pieces_out = []

        def find_tops(ns):
            for n in ns:
                if in_flag[id(n)]:
                    build(n, children[id(n)])
                else:
                    find_tops(children[id(n)])

        def build(outer_ball, child_list):
            holes = []

            def absorb(cs):
                for c in cs:
                    if in_flag[id(c)]:
                        absorb(children[id(c)])
                    else:
                        holes.append(c)
                        find_tops(children[id(c)])

            absorb(child_list)
            holes.sort(key=_ball_sort_key)
            pieces_out.append(
                SwissCheese(outer_ball if outer_ball is not None else Ball.all(), holes)
            )

        if root_in:
            build(None, top)
        else:
            find_tops(top)

        pieces_out.sort(key=lambda p: _ball_sort_key(p.outer))
        return DefSet(self.ctx, pieces_out)

    def canonical_key(self):
        norm = self.normalize()
        return tuple(
            (_ball_sort_key(p.outer), tuple(_ball_sort_key(h) for h in p.holes))
            for p in norm.pieces
        )

    def __eq__(self, other):
        if not isinstance(other, DefSet):
            return NotImplemented
        return self.canonical_key() == other.canonical_key()

    def __hash__(self):
        return hash(self.canonical_key())

    def render(self) -> str:
        if not self.pieces:
            return "(empty)"
        return "  u  ".join(p.render() for p in self.pieces)

    def __repr__(self):
        return f"DefSet[{self.render()}]"

    def to_jsonable(self):
        def ball_json(b: Ball):
            if b.kind is BallKind.ALLK:
                return {"kind": "allK"}
            if b.kind is BallKind.POINT:
                return {"kind": "point", "center": b.center.render()}
            return {
                "kind": "closed",
                "center": b.center.render(),
                "radius": str(b.radius),
            }

        return [
            {"outer": ball_json(p.outer), "holes": [ball_json(h) for h in p.holes]}
            for p in self.pieces
        ]


def _canonical_ball(b: Ball, dedupe: dict):
    if b.kind is BallKind.ALLK:
        return None
    cb = b.as_closed()
    center = canonical_center(cb)
    if cb.kind is BallKind.POINT:
        key = ("point", center.sort_key())
        ball = Ball.point(center)
    else:
        key = ("closed", cb.radius.value, center.sort_key())
        ball = Ball.closed(center, cb.radius)
    if key not in dedupe:
        dedupe[key] = ball
    return dedupe[key]


def _ball_sort_key(b: Ball):
    if b is None or b.kind is BallKind.ALLK:
        return (0, 0, ())
    if b.kind is BallKind.POINT:
        return (2, 0, b.center.sort_key())
    return (1, b.radius.value, b.center.sort_key())


def _intersect_pieces(p: SwissCheese, q: SwissCheese):
    outer = _intersect_balls(p.outer, q.outer)
    if outer is None:
        return None
    holes = []
    for h in list(p.holes) + list(q.holes):
        if outer.kind is BallKind.ALLK:
            holes.append(h)
            continue
        rel = compare(h, outer)
        if rel in (BallRelation.EQUAL, BallRelation.SECOND_INSIDE_FIRST):
            return None  # hole swallows the whole outer
        if rel is BallRelation.FIRST_INSIDE_SECOND:
            holes.append(h)
        # disjoint holes are dropped
    return SwissCheese(outer, holes)


def _intersect_balls(a: Ball, b: Ball):
    if a.kind is BallKind.ALLK:
        return b
    if b.kind is BallKind.ALLK:
        return a
    rel = compare(a, b)
    if rel is BallRelation.DISJOINT:
        return None
    if rel in (BallRelation.FIRST_INSIDE_SECOND, BallRelation.EQUAL):
        return a
    return b


def _piece_complement(ctx, p: SwissCheese) -> "DefSet":
    pieces = []
    if p.outer.kind is not BallKind.ALLK:
        pieces.append(SwissCheese(Ball.all(), [p.outer]))
    for h in p.holes:
        pieces.append(SwissCheese(h))
    return DefSet(ctx, pieces)


# --- realization of formulas ------------------------------------------------
#
# s-intervals are tuples (lo, lo_strict, hi, hi_strict) of Fractions;
# lo None = -inf, hi None = +inf (s = infinity is a separate region kind).


def _iv_nonempty(iv):
    lo, lo_s, hi, hi_s = iv
    if lo is None or hi is None:
        return True
    if lo < hi:
        return True
    return lo == hi and not lo_s and not hi_s


def _iv_intersect(a, b):
    if a[0] is None:
        lo, lo_s = b[0], b[1]
    elif b[0] is None or a[0] > b[0]:
        lo, lo_s = a[0], a[1]
    elif b[0] > a[0]:
        lo, lo_s = b[0], b[1]
    else:
        lo, lo_s = a[0], a[1] or b[1]
    if a[2] is None:
        hi, hi_s = b[2], b[3]
    elif b[2] is None or a[2] < b[2]:
        hi, hi_s = a[2], a[3]
    elif b[2] < a[2]:
        hi, hi_s = b[2], b[3]
    else:
        hi, hi_s = a[2], a[3] or b[3]
    iv = (lo, lo_s, hi, hi_s)
    return iv if _iv_nonempty(iv) else None


def _set_intersect(xs, ys):
    out = []
    for a in xs:
        for b in ys:
            iv = _iv_intersect(a, b)
            if iv is not None:
                out.append(iv)
    return _set_normal(out)


def _set_union(xs, ys):
    return _set_normal(list(xs) + list(ys))


def _set_normal(ivs):
    ivs = [iv for iv in ivs if _iv_nonempty(iv)]

    def lo_key(iv):
        return (0, Fraction(0), 0) if iv[0] is None else (1, iv[0], 1 if iv[1] else 0)

    ivs.sort(key=lo_key)
    out = []
    for iv in ivs:
        if out and _iv_touches(tuple(out[-1]), iv):
            _iv_extend(out[-1], iv)
        else:
            out.append(list(iv))
    return [tuple(iv) for iv in out]


def _iv_touches(a, b):
    if a[2] is None or b[0] is None:
        return True
    if b[0] < a[2]:
        return True
    if b[0] == a[2]:
        return not (a[3] and b[1])  # two strict endpoints leave a pinhole
    return False


def _iv_extend(cur, iv):
    if cur[2] is None:
        return
    if iv[2] is None:
        cur[2], cur[3] = None, False
        return
    if iv[2] > cur[2] or (iv[2] == cur[2] and not iv[3]):
        cur[2], cur[3] = iv[2], iv[3]


def _set_complement(xs, piece):
    """Complement of the interval set xs inside the open piece (plo, phi)."""
    plo, phi = piece
    result = [(plo, True, phi, True)]
    for lo, lo_s, hi, hi_s in xs:
        new = []
        for r in result:
            left = (None, False, lo, not lo_s) if lo is not None else None
            right = (hi, not hi_s, None, False) if hi is not None else None
            for cand in (left, right):
                if cand is None:
                    continue
                iv = _iv_intersect(cand, r)
                if iv is not None:
                    new.append(iv)
        result = new
    return _set_normal(result)


class _Region:
    """One center paired with one piece of the s-line."""

    __slots__ = ("center_idx", "kind", "lo", "hi", "r")

    def __init__(self, center_idx, kind, lo=None, hi=None, r=None):
        self.center_idx = center_idx
        self.kind = kind  # "interval" | "point" | "infinity"
        self.lo = lo
        self.hi = hi
        self.r = r


def realize_formula(ctx: FieldContext, formula) -> DefSet:
    """Exact Swiss-cheese realization of a parsed formula."""
    _require_rational_base(ctx)
    centers, delta, root_index = _collect_centers(ctx, formula)
    crits = sorted({d for row in delta for d in row if d is not None})
    pieces = []
    for i in range(len(centers)):
        m_i = max((delta[i][j] for j in range(i)), default=None)
        bounds = [None] + crits + [None]
        for k in range(len(bounds) - 1):
            lo, hi = bounds[k], bounds[k + 1]
            admissible = m_i is None or (lo is not None and lo >= m_i)
            if admissible:
                region = _Region(i, "interval", lo=lo, hi=hi)
                truth = _eval_formula_region(ctx, formula, delta, root_index, region)
                for iv in truth:
                    sc = _emit_interval(ctx, centers[i], iv)
                    if sc is not None:
                        pieces.append(sc)
            if hi is not None:
                if m_i is not None and not (hi > m_i):
                    continue
                region = _Region(i, "point", r=hi)
                if _eval_formula_region(ctx, formula, delta, root_index, region):
                    pieces.append(_emit_point_piece(ctx, centers, delta, i, hi))
        region = _Region(i, "infinity")
        if _eval_formula_region(ctx, formula, delta, root_index, region):
            pieces.append(SwissCheese(Ball.point(centers[i])))
    return DefSet(ctx, pieces).normalize()


def _collect_centers(ctx, formula):
    """Dedupe the roots and equality constants appearing in the formula."""
    raw = []
    for atom in formula_atoms(formula):
        if isinstance(atom, EqAtom):
            raw.append(atom.value)
        else:
            raw.extend(atom.lhs.roots())
            raw.extend(atom.rhs.roots())
    if not raw:
        raw = [ctx.zero()]
    centers = []
    root_index = {}
    for a in raw:
        found = None
        for idx, c in enumerate(centers):
            d = a - c
            if d.terms:
                continue
            if d.is_exact:
                found = idx
                break
            raise PrecisionLoss("cannot decide whether two formula constants coincide")
        if found is None:
            centers.append(a)
            found = len(centers) - 1
        root_index[id(a)] = found
    order = sorted(range(len(centers)), key=lambda i: centers[i].sort_key())
    rank = {old: new for new, old in enumerate(order)}
    centers = [centers[i] for i in order]
    root_index = {k: rank[v] for k, v in root_index.items()}
    n = len(centers)
    delta = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j:
                delta[i][j] = (centers[i] - centers[j]).valuation().finite()
    return centers, delta, root_index


def _poly_affine(poly: FactoredPoly, delta, root_index, region):
    """v(P(x)) = A*s + B on the region; None when the value is +infinity."""
    A = 0
    B = poly.unit.valuation().finite()
    i = region.center_idx
    for root, mult in poly.factors:
        j = root_index[id(root)]
        if j == i:
            if region.kind == "infinity":
                return None
            A += mult
            continue
        d = delta[i][j]
        if region.kind == "interval":
            # d is a critical value: either d <= lo or d >= hi
            if region.lo is not None and d <= region.lo:
                B += mult * d
            else:
                A += mult
        elif region.kind == "point":
            if d > region.r:
                A += mult
            else:
                B += mult * min(d, region.r)
        else:  # infinity region: x equals the center
            B += mult * d
    return (A, B)


def _eval_formula_region(ctx, f, delta, root_index, region):
    if region.kind == "interval":
        return _eval_interval(ctx, f, delta, root_index, region)
    return _eval_at(ctx, f, delta, root_index, region)


def _eval_interval(ctx, f, delta, root_index, region):
    piece = (region.lo, region.hi)
    if isinstance(f, Or):
        return _set_union(
            _eval_interval(ctx, f.left, delta, root_index, region),
            _eval_interval(ctx, f.right, delta, root_index, region),
        )
    if isinstance(f, And):
        return _set_intersect(
            _eval_interval(ctx, f.left, delta, root_index, region),
            _eval_interval(ctx, f.right, delta, root_index, region),
        )
    if isinstance(f, Not):
        return _set_complement(
            _eval_interval(ctx, f.inner, delta, root_index, region), piece
        )
    if isinstance(f, EqAtom):
        return []  # x = a never holds at finite s
    lhs = _poly_affine(f.lhs, delta, root_index, region)
    rhs = _poly_affine(f.rhs, delta, root_index, region)
    return _atom_interval_truth(f.cmp, lhs, rhs, f.shift, piece)


def _atom_interval_truth(cmp, lhs, rhs, shift, piece):
    plo, phi = piece
    full = (plo, True, phi, True)
    dA = lhs[0] - rhs[0]
    dB = lhs[1] - (rhs[1] + shift)
    if dA == 0:
        if cmp == ">=":
            ok = dB >= 0
        elif cmp == ">":
            ok = dB > 0
        else:
            ok = dB == 0
        return [full] if ok else []
    tau = Fraction(-dB, dA)
    if cmp == "=":
        iv = _iv_intersect((tau, False, tau, False), full)
        return [iv] if iv is not None else []
    strict = cmp == ">"
    cand = (tau, strict, None, False) if dA > 0 else (None, False, tau, strict)
    iv = _iv_intersect(cand, full)
    return [iv] if iv is not None else []


def _eval_at(ctx, f, delta, root_index, region):
    """Boolean evaluation on point / infinity regions."""
    if isinstance(f, Or):
        return _eval_at(ctx, f.left, delta, root_index, region) or _eval_at(
            ctx, f.right, delta, root_index, region
        )
    if isinstance(f, And):
        return _eval_at(ctx, f.left, delta, root_index, region) and _eval_at(
            ctx, f.right, delta, root_index, region
        )
    if isinstance(f, Not):
        return not _eval_at(ctx, f.inner, delta, root_index, region)
    if isinstance(f, EqAtom):
        return region.kind == "infinity" and root_index[id(f.value)] == region.center_idx
    lhs = _poly_affine(f.lhs, delta, root_index, region)
    rhs = _poly_affine(f.rhs, delta, root_index, region)

    def value(p):
        if p is None:
            return INF
        A, B = p
        if region.kind == "point":
            return gamma(A * region.r + B)
        return gamma(B) if A == 0 else INF

    lv = value(lhs)
    rv = value(rhs) + f.shift
    if f.cmp == ">=":
        return lv >= rv
    if f.cmp == ">":
        return lv > rv
    return lv == rv


def _emit_interval(ctx, center, iv):
    lo, lo_s, hi, hi_s = iv
    e = ctx.e
    if lo is None:
        outer = Ball.all()
    else:
        alpha = lattice_ceil_strict(lo, e) if lo_s else lattice_ceil(lo, e)
        outer = Ball.closed(center, alpha)
    if hi is None:
        hole = Ball.point(center)
    else:
        rho = lattice_ceil(hi, e) if hi_s else lattice_ceil_strict(hi, e)
        if outer.kind is not BallKind.ALLK and not (outer.radius < gamma(rho)):
            return None  # empty annulus on the lattice
        hole = Ball.closed(center, rho)
    return SwissCheese(outer, [hole])


def _emit_point_piece(ctx, centers, delta, i, r):
    step = Fraction(1, ctx.e)
    holes = [Ball.closed(centers[i], r + step)]
    for j in range(len(centers)):
        if j != i and delta[i][j] == r:
            holes.append(Ball.closed(centers[j], r + step))
    return SwissCheese(Ball.closed(centers[i], r), holes)


# --- value-group images and aas analysis ------------------------------------


@dataclass(frozen=True)
class GammaSegment:
    """Lattice gammas with lo <= gamma <= hi; lo None = -inf, hi None = +inf."""

    lo: object  # Fraction | None
    hi: object  # Fraction | None

    def render(self) -> str:
        if self.lo is not None and self.lo == self.hi:
            return f"{{{self.lo}}}"
        lo = "-inf" if self.lo is None else str(self.lo)
        hi = "inf)" if self.hi is None else f"{self.hi}]"
        return f"[{lo}, {hi}" if self.hi is not None else f"[{lo}, {hi}"


class GammaSet:
    """A finite union of lattice segments in Gamma, plus optionally infinity."""

    def __init__(self, segments, e: int, has_infinity: bool = False):
        self.e = e
        self.has_infinity = has_infinity
        self.segments = self._merge(list(segments))

    def _merge(self, segs):
        segs.sort(key=lambda s: (0, Fraction(0)) if s.lo is None else (1, s.lo))
        out = []
        for s in segs:
            if not out:
                out.append(s)
                continue
            cur = out[-1]
            touches = cur.hi is None or s.lo is None or s.lo <= cur.hi + Fraction(1, self.e)
            if touches:
                if cur.hi is None or s.hi is None:
                    hi = None
                else:
                    hi = max(cur.hi, s.hi)
                out[-1] = GammaSegment(cur.lo, hi)
            else:
                out.append(s)
        return tuple(out)

    def contains(self, g) -> bool:
        g = gamma(g)
        if g.is_infinite:
            return self.has_infinity
        for s in self.segments:
            if (s.lo is None or g.value >= s.lo) and (s.hi is None or g.value <= s.hi):
                return True
        return False

    def render(self) -> str:
        parts = [s.render() for s in self.segments]
        if self.has_infinity:
            if self.segments and self.segments[-1].hi is None:
                parts[-1] = parts[-1][:-1] + "]"
            else:
                parts.append("{inf}")
        return " u ".join(parts) if parts else "(empty)"

    def __eq__(self, other):
        return (
            isinstance(other, GammaSet)
            and self.segments == other.segments
            and self.has_infinity == other.has_infinity
        )

    def __repr__(self):
        return f"GammaSet[{self.render()}]"


def v_image(s: DefSet) -> GammaSet:
    """The exact image of the set under v: segments and points of Gamma_inf."""
    norm = s.normalize()
    ctx = norm.ctx
    zero = ctx.zero()
    segs = []
    has_inf = False
    for p in norm.pieces:
        outer = p.outer
        if outer.kind is BallKind.POINT:
            if outer.center.is_exact_zero:
                has_inf = True
            else:
                vv = outer.center.valuation().finite()
                segs.append(GammaSegment(vv, vv))
            continue
        zero_in = outer.kind is BallKind.ALLK or outer.contains(zero)
        if not zero_in:
            vv = outer.center.valuation().finite()
            segs.append(GammaSegment(vv, vv))
            continue
        lo = None if outer.kind is BallKind.ALLK else outer.radius.finite()
        zero_hole = None
        for h in p.holes:
            if h.contains(zero):
                zero_hole = h
                break
        if zero_hole is None:
            segs.append(GammaSegment(lo, None))
            has_inf = True
        elif zero_hole.kind is BallKind.POINT:
            segs.append(GammaSegment(lo, None))
        else:
            hi = zero_hole.radius.finite() - Fraction(1, ctx.e)
            segs.append(GammaSegment(lo, hi))
    return GammaSet(segs, ctx.e, has_inf)


@dataclass(frozen=True)
class AasReport:
    """Result of an almost-saturation analysis for v or res."""

    map_name: str
    saturated: bool
    exceptional: tuple

    def render(self) -> str:
        if self.saturated:
            return f"aas({self.map_name}): saturated"
        vals = ", ".join(str(x) for x in self.exceptional)
        return f"aas({self.map_name}): exceptional set {{{vals}}}"


def aas_analyze(s: DefSet, map_name: str) -> AasReport:
    """Finite exceptional fiber set of the set under v or res.

    Exceptional sets are minimal piece by piece (a fiber enters when some
    normalized piece meets it partially), per the normal-form convention.
    """
    norm = s.normalize()
    ctx = norm.ctx
    zero = ctx.zero()
    if map_name == "v":
        exc = set()
        for p in norm.pieces:
            outer = p.outer
            if outer.kind is BallKind.POINT:
                if not outer.center.is_exact_zero:
                    exc.add(gamma(outer.center.valuation()))
                continue
            zero_in = outer.kind is BallKind.ALLK or outer.contains(zero)
            if not zero_in:
                exc.add(gamma(outer.center.valuation()))
                continue
            for h in p.holes:
                if not h.contains(zero):
                    exc.add(gamma(h.center.valuation()))
        exc_sorted = tuple(sorted(exc, key=lambda g: g.value))
        return AasReport("v", not exc_sorted, exc_sorted)
    if map_name == "res":
        ball_O = Ball.closed(zero, 0)
        for p in norm.pieces:
            if p.outer.kind is BallKind.ALLK or compare(p.outer, ball_O) in (
                BallRelation.SECOND_INSIDE_FIRST,
                BallRelation.DISJOINT,
            ):
                raise NotInDomain("res needs the set inside O")
        one_fiber = Fraction(1, ctx.e)

        def res_full(b: Ball) -> bool:
            # a union of whole res fibers: radius <= 0, or exactly one
            # fiber c + M = {v(x-c) >= 1/e}
            return b.kind is BallKind.CLOSED and b.radius.finite() <= one_fiber

        exc = set()
        for p in norm.pieces:
            if not res_full(p.outer):
                exc.add(p.outer.center.residue())
                continue
            for h in p.holes:
                if not res_full(h):
                    exc.add(h.center.residue())
        exc_sorted = tuple(sorted(exc))
        return AasReport("res", not exc_sorted, exc_sorted)
    raise ValueError(f"unknown map {map_name!r} (expected 'v' or 'res')")
