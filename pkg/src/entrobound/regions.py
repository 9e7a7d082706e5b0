"""Uncertainty-set sampling, tangent hulls, and Minkowski composition.

The attainable entropy pairs (H(X|state), H(Y|state)) form the uncertainty
set; each weight pair (lam, mu) with an optimal constant c describes a
tangent halfplane lam*hx + mu*hy >= c.  The hull is stored tangent-first
(support-function samples) because tangent offsets compose additively under
tensor products, which makes the Minkowski sum the natural hull operation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    InputError,
    MeasurementPair,
    ParameterError,
    QuantumState,
    ResourceGuardError,
    random_pure_states,
    tensor_pair,
)
from .entropy import Weights, shannon
from .bounds import DEFAULT_DIM_CAP, optimal_bound

CERTIFIED_GAP_TOL = 1e-4
BOUNDARY_SLACK = 1e-9


@dataclass(frozen=True)
class UncertaintyPoint:
    hx: float
    hy: float
    state_ref: QuantumState | None = None


@dataclass(frozen=True)
class Tangent:
    lam: float
    mu: float
    c: float
    certified: bool


@dataclass(frozen=True)
class PositiveHull:
    """Tangent family of the lower-left boundary, with derived vertices."""

    tangents: tuple[Tangent, ...]
    vertices: tuple[tuple[float, float], ...]


def sample_region(
    pair: MeasurementPair, n: int, seed: int, keep_states: bool = False
) -> list[UncertaintyPoint]:
    """n Haar-random pure-state points plus the 2d basis-state corners."""
    if n < 1:
        raise ParameterError(f"sample count must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    states = random_pure_states(pair.dim, n, rng)
    u = pair.unitary
    corners = np.vstack([np.eye(pair.dim, dtype=np.complex128), u.T])
    all_states = np.vstack([states, corners])
    px = np.abs(all_states) ** 2
    py = np.abs(all_states @ u.conj()) ** 2
    points = []
    for i in range(all_states.shape[0]):
        ref = QuantumState.pure(all_states[i]) if keep_states else None
        points.append(
            UncertaintyPoint(hx=shannon(px[i]), hy=shannon(py[i]), state_ref=ref)
        )
    return points


def _envelope_vertices(tangents: list[Tangent]) -> tuple[tuple[float, float], ...]:
    """Intersections of adjacent tangents, filtered to the dominant boundary."""
    finite = sorted(
        (t for t in tangents if t.lam > 0 and t.mu > 0), key=lambda t: t.lam
    )
    vertices = []
    for t1, t2 in zip(finite, finite[1:]):
        a = np.array([[t1.lam, t1.mu], [t2.lam, t2.mu]])
        det = float(np.linalg.det(a))
        if abs(det) < 1e-14:
            continue
        hx, hy = np.linalg.solve(a, np.array([t1.c, t2.c]))
        hx, hy = float(hx) + 0.0, float(hy) + 0.0
        if all(
            t.lam * hx + t.mu * hy >= t.c - BOUNDARY_SLACK for t in tangents
        ):
            if not any(abs(hx - vx) < 1e-9 and abs(hy - vy) < 1e-9 for vx, vy in vertices):
                vertices.append((hx, hy))
    vertices.sort(key=lambda v: (v[0], -v[1]))
    return tuple(vertices)


def positive_hull(
    pair: MeasurementPair,
    sweep: list[Weights],
    *,
    certified_tol: float = CERTIFIED_GAP_TOL,
    **bound_kwargs,
) -> PositiveHull:
    """One tangent per sweep entry: offset from the witnessed optimal bound."""
    if not sweep:
        raise ParameterError("sweep must contain at least one weight pair")
    for w in sweep:
        if abs(w.lam + w.mu - 1.0) > 1e-12:
            raise ParameterError(
                f"sweep weights must be normalized to lam + mu = 1, got "
                f"({w.lam}, {w.mu})"
            )
    tangents = []
    for w in sweep:
        res = optimal_bound(pair, w, **bound_kwargs)
        tangents.append(
            Tangent(
                lam=w.lam,
                mu=w.mu,
                c=res.upper,
                certified=res.gap <= certified_tol,
            )
        )
    return PositiveHull(tangents=tuple(tangents), vertices=_envelope_vertices(tangents))


def _grids_match(a: PositiveHull, b: PositiveHull) -> bool:
    if len(a.tangents) != len(b.tangents):
        return False
    return all(
        abs(ta.lam - tb.lam) <= 1e-12 and abs(ta.mu - tb.mu) <= 1e-12
        for ta, tb in zip(a.tangents, b.tangents)
    )


def minkowski_sum(a: PositiveHull, b: PositiveHull) -> PositiveHull:
    """Tangent-wise composition: matching weights add their offsets.

    Vertices are re-extremized from pairwise sums of the generating vertices
    (Pareto filter on the lower-left frontier).
    """
    if not _grids_match(a, b):
        raise InputError("hull weight grids do not match; recompute on a shared sweep")
    tangents = tuple(
        Tangent(
            lam=ta.lam,
            mu=ta.mu,
            c=ta.c + tb.c,
            certified=ta.certified and tb.certified,
        )
        for ta, tb in zip(a.tangents, b.tangents)
    )
    candidates = sorted(
        {(va[0] + vb[0], va[1] + vb[1]) for va in a.vertices for vb in b.vertices}
    )
    frontier = [
        c
        for c in candidates
        if not any(
            o != c and o[0] <= c[0] + 1e-12 and o[1] <= c[1] + 1e-12
            for o in candidates
        )
    ]
    frontier.sort(key=lambda v: (v[0], -v[1]))
    return PositiveHull(tangents=tangents, vertices=tuple(frontier))


@dataclass(frozen=True)
class HullCompositionReport:
    max_discrepancy: float
    discrepancies: tuple[float, ...]
    tol: float
    passed: bool
    direct: PositiveHull
    composed: PositiveHull


def verify_hull_composition(
    a: MeasurementPair,
    b: MeasurementPair,
    sweep: list[Weights],
    tol: float = 1e-3,
    *,
    dim_cap: int = DEFAULT_DIM_CAP,
    **bound_kwargs,
) -> HullCompositionReport:
    """Compare the product pair's hull with the Minkowski sum of local hulls."""
    if a.dim * b.dim > dim_cap:
        raise ResourceGuardError(
            f"product dimension {a.dim * b.dim} exceeds cap {dim_cap}"
        )
    hull_a = positive_hull(a, sweep, **bound_kwargs)
    hull_b = positive_hull(b, sweep, **bound_kwargs)
    composed = minkowski_sum(hull_a, hull_b)
    direct = positive_hull(tensor_pair(a, b), sweep, **bound_kwargs)
    discrepancies = tuple(
        abs(td.c - tc.c) for td, tc in zip(direct.tangents, composed.tangents)
    )
    max_disc = max(discrepancies)
    return HullCompositionReport(
        max_discrepancy=max_disc,
        discrepancies=discrepancies,
        tol=tol,
        passed=max_disc <= tol,
        direct=direct,
        composed=composed,
    )


def _format_float(x: float) -> str:
    return format(float(x), ".17g")


def export_samples_csv(points: list[UncertaintyPoint], path) -> None:
    """One row per sample: "hx,hy" with 17 significant digits."""
    with open(path, "w", encoding="utf-8") as fh:
        for p in points:
            fh.write(f"{_format_float(p.hx)},{_format_float(p.hy)}\n")


def export_hull_json(hull: PositiveHull, path) -> None:
    """Hull JSON: {"tangents": [{"lambda","mu","c","certified"}], "vertices": [[hx,hy]]}."""
    from ._serialize import dumps_canonical

    payload = {
        "tangents": [
            {"lambda": t.lam, "mu": t.mu, "c": t.c, "certified": t.certified}
            for t in hull.tangents
        ],
        "vertices": [[v[0], v[1]] for v in hull.vertices],
    }
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_canonical(payload))
        fh.write("\n")
