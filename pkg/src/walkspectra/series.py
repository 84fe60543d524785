"""Certified evaluation of the walk-count series attached to multipartite
embeddings.

Two series are handled.  For a host graph H with max degree D and a value
x > D, the per-vertex entry series

    1 + sum_{i>=1} w_i(u) / x^i

reconstructs the Perron entry of u when the host sits fully joined inside a
larger graph and x is that graph's spectral radius (normalizing the joined
set's entries to sum to x).  The per-part denominator series

    1 + n_s/x + sum_{i>=1} W_i(H_s) / x^{i+1}

drives the spectral-radius equation: summing its reciprocals over all parts
equals r - 1 exactly at x = rho.  Truncations carry explicit geometric tail
bounds, so every value returned here is a certified enclosure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import HypothesisNotMet, SeriesError
from .graphs import empty, join
from .intervals import Ival, powers
from .spectral import SpectralResult, rho_power
from .walks import walk_profile, walk_totals

__all__ = [
    "EntrySeries",
    "SeriesEvaluation",
    "entry_series",
    "tail_bound",
    "inner_series",
    "f_eval",
    "solve_rho_series",
]

DEFAULT_SOLVE_TOL = 1e-10
INITIAL_DEPTH = 8
MAX_DEPTH = 1 << 15
BISECTION_STEPS = 60


@dataclass(frozen=True)
class EntrySeries:
    """Certified bracket [lower, upper] for one Perron entry."""

    vertex: int
    rho: float
    depth: int
    lower: float
    upper: float

    @property
    def width(self):
        return self.upper - self.lower


@dataclass(frozen=True)
class SeriesEvaluation:
    """Certified enclosure of the part-sum f at one evaluation point."""

    x: float
    depth: int
    value_lo: float
    value_hi: float
    tail_bound: float

    @property
    def width(self):
        return self.value_hi - self.value_lo


def entry_series(host, vertex, rho, depth):
    """Certified bracket for the Perron entry of ``vertex``.

    Valid whenever rho exceeds the host's max degree: the truncated sum is a
    lower bound, and adding D/(rho - D) times the last term dominates the
    tail because per-vertex counts grow at most by a factor D per level.
    """
    if depth < 1:
        raise SeriesError("depth must be at least 1")
    if not 0 <= vertex < host.n:
        raise SeriesError(f"vertex {vertex} not in host of order {host.n}")
    delta = host.max_degree()
    rho = float(rho)
    if not rho > delta:
        raise HypothesisNotMet(
            f"entry series needs rho > max host degree ({rho} <= {delta})"
        )
    prof = walk_profile(host, depth)
    rho_iv = Ival(rho)
    pw = powers(rho_iv, depth)
    acc = Ival(1.0)
    for i in range(1, depth + 1):
        w = prof.counts(i)[vertex]
        if w:  # zero terms are exact; adding them would only widen
            acc = acc + Ival.from_int(w) / pw[i]
    w_last = prof.counts(depth)[vertex]
    if w_last and delta:
        last = Ival.from_int(w_last) / pw[depth]
        tail = (Ival(float(delta)) / (rho_iv - float(delta))) * last
    else:
        tail = Ival(0.0)
    return EntrySeries(
        vertex=vertex,
        rho=rho,
        depth=depth,
        lower=acc.lo,
        upper=(acc + tail).hi,
    )


def tail_bound(host_order, delta, x, depth):
    """Upper bound on the dropped part of sum_{i>depth} W_i / x^{i+1}.

    Uses W_i <= |V| * delta^i and geometric summation:
    |V| * delta^(depth+1) / (x^depth * (x - delta)).  Rounded upward.
    """
    if depth < 1:
        raise SeriesError("depth must be at least 1")
    if host_order < 0:
        raise SeriesError("host order must be nonnegative")
    x = float(x)
    delta = float(delta)
    if not x > delta:
        raise HypothesisNotMet(f"tail bound needs x > delta ({x} <= {delta})")
    if delta == 0.0 or host_order == 0:
        return 0.0
    num = Ival(float(host_order)) * powers(Ival(delta), depth + 1)[depth + 1]
    den = powers(Ival(x), depth)[depth] * (Ival(x) - delta)
    return (num / den).hi


def _host_tail(host, x, depth):
    """Tail bound for one host, taking the sharper of two geometric bounds.

    Both W_i <= |V| * D^i (degree bound) and W_i <= 2 e^i (edge bound, since
    W_1 = 2e and each level multiplies by at most D <= e) are valid; the
    minimum of the two still dominates the tail.
    """
    if host is None or host.num_edges == 0:
        return 0.0
    bound = tail_bound(host.n, host.max_degree(), x, depth)
    e = host.num_edges
    if x > e:
        num = Ival(2.0) * powers(Ival(float(e)), depth + 1)[depth + 1]
        den = powers(Ival(float(x)), depth)[depth] * (Ival(float(x)) - float(e))
        bound = min(bound, (num / den).hi)
    return bound


def inner_series(host, x, depth):
    """Certified enclosure of sum_{i>=1} W_i(host) / x^{i+1}.

    An empty host has every total zero, so its series is exactly 0 with no
    truncation error.
    """
    if host is None or host.num_edges == 0:
        return Ival(0.0)
    x = float(x)
    if not x > host.max_degree():
        raise HypothesisNotMet(
            f"inner series needs x > max host degree ({x} <= {host.max_degree()})"
        )
    totals = walk_totals(host, depth)
    pw = powers(Ival(x), depth + 1)
    acc = Ival(0.0)
    for i in range(1, depth + 1):
        acc = acc + Ival.from_int(totals[i - 1]) / pw[i + 1]
    tail = _host_tail(host, x, depth)
    return Ival(acc.lo, (acc + tail).hi)


def f_eval(embedding, x, depth):
    """Certified enclosure of the part-sum f(x) for an embedding.

    f(x) sums, over the parts, the reciprocals of
    1 + n_s/x + sum_i W_i(H_s)/x^{i+1}; it is strictly increasing for
    x above the max host degree and equals r - 1 exactly at the spectral
    radius of the realized graph.
    """
    if depth < 1:
        raise SeriesError("depth must be at least 1")
    x = float(x)
    if not x > embedding.delta:
        raise HypothesisNotMet(
            f"series evaluation needs x > max host degree ({x} <= {embedding.delta})"
        )
    x_iv = Ival(x)
    total = Ival(0.0)
    tails = 0.0
    for size, host in zip(embedding.part_sizes, embedding.hosts):
        denom = Ival(1.0) + Ival(float(size)) / x_iv
        inner = inner_series(host, x, depth)
        tails += _host_tail(host, x, depth)
        denom = denom + inner
        total = total + Ival(1.0) / denom
    return SeriesEvaluation(
        x=x,
        depth=depth,
        value_lo=total.lo,
        value_hi=total.hi,
        tail_bound=tails,
    )


def _schedule_depth(embedding, x_low, tol):
    """Starting truncation depth: double from 8 until the total tail at the
    bracket's low end drops below tol / (4r)."""
    target = tol / (4.0 * embedding.r)
    depth = INITIAL_DEPTH
    while depth <= MAX_DEPTH:
        total = sum(_host_tail(h, x_low, depth) for h in embedding.hosts)
        if total < target:
            return depth
        depth *= 2
    raise SeriesError(
        "tail bound does not reach the tolerance target; evaluation point too "
        "close to the max host degree"
    )


def _slope_lower(embedding, a, b, depth):
    """Certified lower bound on the derivative of f over [a, b], a > delta.

    Each part contributes at least (n_s / b^2) / D_s(a)^2: the derivative of
    the denominator is at most -n_s/x^2, and the denominator itself peaks at
    the interval's low end because it decreases in x.
    """
    b_iv = Ival(float(b))
    total = Ival(0.0)
    for size, host in zip(embedding.part_sizes, embedding.hosts):
        d_at_a = Ival(1.0) + Ival(float(size)) / Ival(float(a)) + inner_series(host, a, depth)
        d_hi = Ival(d_at_a.hi)
        total = total + Ival(float(size)) / (b_iv * b_iv * d_hi * d_hi)
    return total.lo


def _bracket_low(embedding):
    """Best certified lower bound on the realized spectral radius.

    The hostless graph is a spanning subgraph, and so is each host joined to
    every vertex outside its own part; the radius of any subgraph is a lower
    bound.  The join bounds matter when small parts make the hostless radius
    fall below the max host degree.
    """
    best = rho_power(embedding.hostless().realize(), tol=1e-12).rho
    n = embedding.n
    for size, host in zip(embedding.part_sizes, embedding.hosts):
        if host is not None and host.num_edges > 0:
            sub = join(host, empty(n - size))
            best = max(best, rho_power(sub, tol=1e-12).rho)
    return best


def solve_rho_series(embedding, tol=DEFAULT_SOLVE_TOL):
    """Spectral radius of the realized embedding via the series equation.

    Brackets rho between a certified subgraph lower bound and the hostless
    radius plus sqrt(2t) (adding t edges cannot raise the radius by more),
    then bisects the strictly increasing map x -> f(x) against r - 1 using
    certified interval evaluations.  A probe only moves an endpoint when its
    interval separates from r - 1; depth doubles adaptively when it does
    not.
    """
    if tol <= 0:
        raise SeriesError("tolerance must be positive")
    base = rho_power(embedding.hostless().realize(), tol=1e-12)
    # Cover the power-iteration error: a unit vector with max-norm residual r
    # puts an eigenvalue within sqrt(n) * r of the Rayleigh quotient.
    cushion = max(tol / 4.0, 4e-12 * math.sqrt(max(embedding.n, 1)))
    lo = _bracket_low(embedding) - cushion
    hi = base.rho + math.sqrt(2.0 * embedding.t) + cushion
    if not lo > embedding.delta:
        raise HypothesisNotMet(
            f"bracket low end {lo:.6g} does not exceed max host degree "
            f"{embedding.delta}; the series equation is not certified here"
        )
    target = float(embedding.r - 1)
    depth = _schedule_depth(embedding, lo, tol)
    max_depth_used = depth

    a, b = lo, hi
    steps = 0
    for steps in range(1, BISECTION_STEPS + 1):
        if b - a <= tol:
            break
        x = 0.5 * (a + b)
        probe_depth = depth
        prev_width = None
        while True:
            ev = f_eval(embedding, x, probe_depth)
            max_depth_used = max(max_depth_used, probe_depth)
            if ev.value_hi < target:
                a = x
                break
            if ev.value_lo > target:
                b = x
                break
            at_floor = prev_width is not None and ev.width > 0.5 * prev_width
            if at_floor or probe_depth >= MAX_DEPTH:
                # The enclosure is pinned on the target at its precision
                # floor, so x sits within resolution of rho: a certified
                # slope bound turns the f-interval width into a bracket.
                slope = _slope_lower(embedding, a, b, probe_depth)
                if slope > 0:
                    bound = (Ival(ev.width) / Ival(slope)).hi
                    na, nb = max(a, x - bound), min(b, x + bound)
                    if nb - na < b - a:
                        a, b = na, nb
                        break
                return SpectralResult(
                    rho=x,
                    vector=None,
                    residual=b - a,
                    iterations=steps,
                    method="series",
                    converged=b - a <= tol,
                    bracket=(a, b),
                    depth=max_depth_used,
                )
            prev_width = ev.width
            probe_depth *= 2

    return SpectralResult(
        rho=0.5 * (a + b),
        vector=None,
        residual=b - a,
        iterations=steps,
        method="series",
        converged=b - a <= tol,
        bracket=(a, b),
        depth=max_depth_used,
    )
