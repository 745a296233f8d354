"""Exhaustive projective point enumeration and Hasse-Weil verdicts.

Points are swept in normalized-representative order ((1:y:z), then (0:1:z),
then (0:0:1)); fields small enough for discrete-log tables go through a
vectorized numpy path, everything else through a scalar fallback.  Each
vanishing point is classified smooth or singular via the three partials.

A plane model of a curve with rational singular points undercounts the
places of the nonsingular model, so the report also carries a resolved
count: at every rational singular point that is an ordinary multiple point
(distinct tangents) the rational branches are counted from the rational
tangent directions.  The degree-3 quotient models need this; their plane
models acquire rational nodes away from the coordinate triangle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .curves import CurveModel, HomPoly3, ProjMatrix
from .errors import CapError
from .fields import ExtField, FPoly, build_field, embed, poly_roots

DEFAULT_ENUM_CAP = 1 << 26
_SCALAR_POINT_CAP = 1 << 22


@dataclass(frozen=True)
class CountReport:
    """Exact point census of a plane model over F_{q^k}."""

    model_tag: str
    q: int
    k: int
    total: int
    singular: int
    smooth: int
    rational_branches: int | None
    resolved_total: int | None
    singular_points: tuple = ()

    def to_dict(self) -> dict:
        d = asdict(self)
        d["singular_points"] = [list(p) for p in self.singular_points]
        return d


@dataclass(frozen=True)
class MaximalityVerdict:
    genus: int
    count_used: int | None
    lower: int
    upper: int
    verdict: str          # maximal | minimal | neither | inconsistent
    reason: str = ""

    def to_dict(self) -> dict:
        return asdict(self)


# ---------------------------------------------------------------------------
# sweep machinery
# ---------------------------------------------------------------------------

def _lift_poly(model: CurveModel, k: int) -> tuple[HomPoly3, ExtField]:
    base = model.field
    if k == 1:
        return model.poly, base
    L = build_field(base.p, base.k * k, cap=None)
    return model.poly.map_coefficients(embed(base, L)), L


def _np_tables(L: ExtField):
    exp = np.asarray(L.exp_table, dtype=np.int64)
    log = np.asarray(L.log_table, dtype=np.int64)
    unp = np.zeros((L.order, L.k), dtype=np.int32)
    vals = np.arange(L.order, dtype=np.int64)
    for i in range(L.k):
        unp[:, i] = vals % L.p
        vals //= L.p
    return exp, log, unp


def _bulk_affine_zeros(poly: HomPoly3, L: ExtField, y_lo: int, y_hi: int):
    """Packed (y, z) pairs with poly(1, y, z) = 0, y in [y_lo, y_hi)."""
    exp, log, unp = _np_tables(L)
    n = L.group_order
    q = L.order
    ys = np.repeat(np.arange(y_lo, y_hi, dtype=np.int64), q)
    zs = np.tile(np.arange(q, dtype=np.int64), y_hi - y_lo)
    acc = np.zeros((ys.size, L.k), dtype=np.int64)
    logy = log[ys]
    logz = log[zs]
    for (i, j, kk), c in poly.terms.items():
        tl = log[c] + j * logy + kk * logz
        mask = np.ones(ys.size, dtype=bool)
        if j:
            mask &= ys != 0
        if kk:
            mask &= zs != 0
        vals = np.where(mask, exp[tl % n], 0)
        acc += unp[vals]
    zero = np.all(acc % L.p == 0, axis=1)
    idx = np.nonzero(zero)[0]
    return ys[idx], zs[idx]


def _scalar_affine_zeros(poly: HomPoly3, L: ExtField, y_lo: int, y_hi: int):
    ys, zs = [], []
    q = L.order
    ev = poly.eval_i
    for y in range(y_lo, y_hi):
        for z in range(q):
            if ev(1, y, z) == 0:
                ys.append(y)
                zs.append(z)
    return ys, zs


def _sweep_zeros(poly: HomPoly3, L: ExtField, *, workers: int = 1,
                 chunks: int | None = None) -> list[tuple[int, int, int]]:
    """All normalized projective zeros of poly over L, in sweep order."""
    q = L.order
    use_bulk = L.ensure_tables()
    if not use_bulk and q * q > _SCALAR_POINT_CAP:
        raise CapError(
            f"field of size {q} has no tables and the scalar sweep of {q * q} points is capped"
        )
    if chunks is None:
        chunks = max(1, min(q, (q * q) // (1 << 20))) if use_bulk else 1
    bounds = [(q * i // chunks, q * (i + 1) // chunks) for i in range(chunks)]
    fn = _bulk_affine_zeros if use_bulk else _scalar_affine_zeros

    def run(b):
        return fn(poly, L, b[0], b[1])

    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, bounds))
    else:
        parts = [run(b) for b in bounds]
    pts = []
    for ys, zs in parts:
        pts.extend((1, int(y), int(z)) for y, z in zip(ys, zs))
    for z in range(q):
        if poly.eval_i(0, 1, z) == 0:
            pts.append((0, 1, z))
    if poly.eval_i(0, 0, 1) == 0:
        pts.append((0, 0, 1))
    return pts


# ---------------------------------------------------------------------------
# branch resolution at rational singular points
# ---------------------------------------------------------------------------

def tangent_cone_data(poly: HomPoly3, pt: tuple[int, int, int]):
    """(multiplicity, ordinary, rational_tangents) at a normalized point.

    The point is translated to the origin of its chart; the lowest-degree
    binary form of the dehomogenized polynomial is the tangent cone.  The
    point is ordinary when that form has distinct roots over the closure;
    rational branches of an ordinary point biject with rational tangent
    directions.
    """
    F = poly.field
    shifted = poly.compose_linear(_translation(F, pt))
    ua, va = _chart_axes(pt)
    by_deg: dict[int, dict[tuple[int, int], int]] = {}
    for (i, j, kk), c in shifted.terms.items():
        e = (i, j, kk)
        d = e[ua] + e[va]
        by_deg.setdefault(d, {})[(e[ua], e[va])] = c
    mult = min(by_deg)
    if mult == 0:
        raise ValueError("point is not on the curve")
    if mult == 1:
        raise ValueError("point is smooth")
    form = by_deg[mult]
    coeffs = [form.get((mult - j, j), 0) for j in range(mult + 1)]
    f = FPoly(F, coeffs)
    dstar = f.degree()
    inf_mult = mult - dstar
    roots = poly_roots(f)
    squarefree = all(m == 1 for _, m in roots) and f.gcd(f.derivative()).degree() == 0
    ordinary = squarefree and inf_mult <= 1
    rational = len(roots) + (1 if inf_mult == 1 else 0)
    return mult, ordinary, rational


def _chart_axes(pt):
    if pt[0] == 1:
        return 1, 2
    if pt[1] == 1:
        return 0, 2
    return 0, 1


def _translation(F: ExtField, pt) -> ProjMatrix:
    # linear map sending the chart origin to pt (columns); P(M x) recentres
    x0, y0, z0 = pt
    if x0 == 1:
        return ProjMatrix(F, [[1, 0, 0], [y0, 1, 0], [z0, 0, 1]], check=False)
    if y0 == 1:
        return ProjMatrix(F, [[1, x0, 0], [0, 1, 0], [0, z0, 1]], check=False)
    return ProjMatrix(F, [[1, 0, x0], [0, 1, y0], [0, 0, 1]], check=False)


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def count_projective_points(model: CurveModel, k: int = 1, *,
                            enum_cap: int = DEFAULT_ENUM_CAP,
                            workers: int = 1,
                            chunks: int | None = None) -> CountReport:
    """Exact census of model points over the degree-k extension of its field.

    total/singular/smooth describe the plane model; resolved_total counts
    places of the nonsingular model (smooth points plus rational branches),
    available when every rational singular point is ordinary.
    """
    base = model.field
    if base.order**k > enum_cap:
        raise CapError(f"extension size {base.order}^{k} exceeds enumeration cap")
    poly, L = _lift_poly(model, k)
    zeros = _sweep_zeros(poly, L, workers=workers, chunks=chunks)
    parts = [poly.partial(i) for i in range(3)]
    sing_pts = [
        pt for pt in zeros
        if all(pp.eval_i(*pt) == 0 for pp in parts)
    ]
    total = len(zeros)
    singular = len(sing_pts)
    smooth = total - singular
    branches: int | None = 0
    for pt in sing_pts:
        mult, ordinary, rational = tangent_cone_data(poly, pt)
        if not ordinary:
            branches = None
            break
        branches += rational
    resolved = smooth + branches if branches is not None else None
    return CountReport(
        model_tag=model.tag(),
        q=base.order,
        k=k,
        total=total,
        singular=singular,
        smooth=smooth,
        rational_branches=branches,
        resolved_total=resolved,
        singular_points=tuple(sing_pts),
    )


def singular_points(model: CurveModel, k: int = 1, *,
                    enum_cap: int = DEFAULT_ENUM_CAP) -> list[tuple[int, int, int]]:
    """Normalized points over F_{q^k} where the model and all partials vanish."""
    base = model.field
    if base.order**k > enum_cap:
        raise CapError(f"extension size {base.order}^{k} exceeds enumeration cap")
    poly, L = _lift_poly(model, k)
    zeros = _sweep_zeros(poly, L)
    parts = [poly.partial(i) for i in range(3)]
    return [pt for pt in zeros if all(pp.eval_i(*pt) == 0 for pp in parts)]


def hasse_weil_bounds(q: int, g: int) -> tuple[int, int]:
    """(max(0, q+1-2g*sqrt(q)), q+1+2g*sqrt(q)); q must be a square."""
    s = math.isqrt(q)
    if s * s != q:
        raise ValueError(f"{q} is not a square")
    return max(0, q + 1 - 2 * g * s), q + 1 + 2 * g * s


def maximality_check(report: CountReport, g: int) -> MaximalityVerdict:
    """Verdict for a k=1 report against the Hasse-Weil bound at genus g.

    Uses the resolved (nonsingular-model) count when the plane model has
    rational singular points; returns 'inconsistent' if those could not be
    resolved or the count violates the Weil interval.
    """
    q = report.q
    lower, upper = hasse_weil_bounds(q, g)
    s = math.isqrt(q)
    raw_lower = q + 1 - 2 * g * s
    if report.k != 1:
        return MaximalityVerdict(g, None, lower, upper, "inconsistent",
                                 "maximality is a statement about k = 1")
    if report.singular and report.resolved_total is None:
        return MaximalityVerdict(g, None, lower, upper, "inconsistent",
                                 "rational singular points could not be resolved")
    count = report.resolved_total if report.singular else report.total
    if count == upper:
        verdict = "maximal"
    elif count == raw_lower:
        verdict = "minimal"
    elif lower <= count <= upper:
        verdict = "neither"
    else:
        return MaximalityVerdict(g, count, lower, upper, "inconsistent",
                                 "count violates the Weil interval for this genus")
    return MaximalityVerdict(g, count, lower, upper, verdict)


def extension_count_prediction(q: int, g: int, k: int) -> int:
    """Point count over F_{q^k} of a curve maximal over F_q:
    all Frobenius eigenvalues equal -sqrt(q), so the count is
    q^k + 1 - 2g(-sqrt(q))^k."""
    s = math.isqrt(q)
    if s * s != q:
        raise ValueError(f"{q} is not a square")
    return q**k + 1 - 2 * g * (-s) ** k


def genus_from_count(n_points: int, q: int) -> int:
    """Solve n = q + 1 + 2g*sqrt(q) for g; errors when g is not a
    nonnegative integer (the curve is then not maximal or the count wrong)."""
    s = math.isqrt(q)
    if s * s != q:
        raise ValueError(f"{q} is not a square")
    delta = n_points - q - 1
    if delta < 0 or delta % (2 * s):
        raise ValueError(f"count {n_points} is not maximal over F_{q}")
    return delta // (2 * s)
