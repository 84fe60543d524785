"""Isomorph-free enumeration of small graph families and executable
verifiers for the walk/spectral-radius statements this package targets.

Families:
  * all graphs with m edges and no isolated vertices (m <= 7),
  * the same classes padded with isolated vertices to a fixed order,
  * balanced complete-multipartite graphs with t extra edges embedded into
    their parts, up to part symmetry (t <= 5).

Verifiers return :class:`VerificationReport` records rather than raising,
so callers can scan parameter ranges and observe onset thresholds.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import product

from .errors import FormatError, GraphError, HypothesisNotMet, SeriesError, SpectralError
from .graphio import from_graph6, to_graph6
from .graphs import (
    MultipartiteEmbedding,
    canonical_form,
    complete,
    join,
    star,
    turan_part_sizes,
)
from .series import _schedule_depth, f_eval, solve_rho_series
from .spectral import DENSE_LIMIT, rho_dense, rho_power
from .walks import Ordering, ex_filter, ex_infinity, walk_compare

__all__ = [
    "EnumerationFamily",
    "VerificationReport",
    "enumerate_m_edge",
    "enumerate_m_edge_order",
    "enumerate_embeddings",
    "sample_embedding",
    "spex",
    "verify_lemma_2degree",
    "verify_corollary_2inf",
    "verify_one_set",
    "verify_multi_set",
    "verify_corollary_tnrk",
]

M_EDGE_LIMIT = 7
EMBED_EDGE_LIMIT = 5
SPEX_TIE_TOL = 1e-9
ORACLE_AGREEMENT = 1e-9

# Dense cross-checks cost n^3 per member; only candidates this close to the
# running maximum can influence the argmax decision.
_CROSS_CHECK_WINDOW = 1e-7


@dataclass
class EnumerationFamily:
    """A deduplicated family of graphs or embeddings."""

    descriptor: str
    members: list

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


@dataclass
class VerificationReport:
    theorem: str
    parameters: dict
    verdict: str  # "pass" | "fail" | "inapplicable"
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.verdict == "pass"

    def as_dict(self):
        return {
            "theorem": self.theorem,
            "parameters": dict(self.parameters),
            "verdict": self.verdict,
            "witnesses": list(self.witnesses),
            "details": dict(self.details),
        }


# ---- enumeration -----------------------------------------------------------


def _extensions(g):
    """All one-edge extensions of g that keep minimum degree >= 1."""
    out = []
    n = g.n
    for u in range(n):
        for v in range(u + 1, n):
            if not g.has_edge(u, v):
                out.append(g.with_edges([(u, v)]))
    padded = g.add_isolated(1)
    for u in range(n):
        out.append(padded.with_edges([(u, n)]))
    out.append(g.add_isolated(2).with_edges([(n, n + 1)]))
    return out


def _cache_path(cache_dir, name):
    if cache_dir is None:
        return None
    os.makedirs(cache_dir, exist_ok=True)
    return os.path.join(cache_dir, name)


def enumerate_m_edge(m, cache_dir=None):
    """All isomorphism classes with exactly m edges and no isolated vertices.

    Grown edge by edge: deleting any edge of such a graph and stripping the
    (at most two) vertices it isolates leaves a smaller graph of the same
    kind, so extending every (m-1)-class by one edge in all ways - between
    existing vertices, to one new vertex, or as a fresh disjoint edge -
    reaches every m-class.  Classes are deduplicated by canonical form and
    returned in canonical-byte order.
    """
    if not 1 <= m <= M_EDGE_LIMIT:
        raise GraphError(f"edge count must be in 1..{M_EDGE_LIMIT}, got {m}")

    path = _cache_path(cache_dir, f"m_edge_{m}.g6")
    if path is not None and os.path.exists(path):
        try:
            members = _read_g6_file(path)
            return EnumerationFamily(f"m-edge:m={m}", members)
        except FormatError:
            pass  # stale cache; regenerate below

    level = {}
    seed = complete(2)
    level[canonical_form(seed).data] = seed
    for _ in range(m - 1):
        nxt = {}
        for g in level.values():
            for h in _extensions(g):
                key = canonical_form(h).data
                if key not in nxt:
                    nxt[key] = h
        level = nxt
    members = [level[k] for k in sorted(level)]

    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            for g in members:
                fh.write(to_graph6(g) + "\n")
    return EnumerationFamily(f"m-edge:m={m}", members)


def _read_g6_file(path):
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(from_graph6(line))
    if not out:
        raise FormatError("empty cache file")
    return out


def enumerate_m_edge_order(n, m, cache_dir=None):
    """All isomorphism classes of order n with m edges (isolated vertices
    allowed): the m-edge classes that fit, padded to order n."""
    if n < 2:
        raise GraphError("order must be at least 2")
    base = enumerate_m_edge(m, cache_dir=cache_dir)
    members = [g.add_isolated(n - g.n) for g in base.members if g.n <= n]
    if not members:
        raise GraphError(f"no graph with {m} edges fits in order {n}")
    return EnumerationFamily(f"order-m-edge:n={n},m={m}", members)


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def enumerate_embeddings(n, r, t, cache_dir=None):
    """All inequivalent ways to embed t edges into the parts of the balanced
    complete r-partite graph of order n.

    Per part, the embedded subgraph is an m-edge class without isolated
    vertices; parts of equal size are interchangeable, and placement inside
    a part carries no labels, so equivalence is decided by the multiset of
    (part size, host class) pairs.
    """
    if r < 2:
        raise GraphError("need at least two parts")
    if not 1 <= t <= EMBED_EDGE_LIMIT:
        raise GraphError(f"embedded edge count must be in 1..{EMBED_EDGE_LIMIT}")
    sizes = turan_part_sizes(n, r)
    hosts_by_count = {0: [None]}
    for c in range(1, t + 1):
        hosts_by_count[c] = list(enumerate_m_edge(c, cache_dir=cache_dir).members)

    seen = {}
    for comp in _compositions(t, r):
        slots = []
        for c, size in zip(comp, sizes):
            fits = [h for h in hosts_by_count[c] if h is None or h.n <= size]
            if not fits:
                slots = None
                break
            slots.append(fits)
        if slots is None:
            continue
        for hosts in product(*slots):
            emb = MultipartiteEmbedding(sizes, hosts)
            key = emb.key()
            if key not in seen:
                seen[key] = emb
    if not seen:
        raise GraphError(
            f"no embedding of {t} edges fits the parts of order {n} with {r} parts"
        )
    members = [seen[k] for k in sorted(seen)]
    return EnumerationFamily(f"turan-embedding:n={n},r={r},t={t}", members)


def sample_embedding(
    rng,
    r_range=(2, 4),
    part_range=(3, 30),
    t_range=(1, 5),
    cache_dir=None,
    max_tries=200,
):
    """Random embedding: r parts with sizes in part_range and t embedded
    edges split uniformly over the parts, each part's host drawn from the
    classes that fit.  Resamples until every assigned edge count fits."""
    for _ in range(max_tries):
        r = rng.randint(*r_range)
        sizes = [rng.randint(*part_range) for _ in range(r)]
        t = rng.randint(*t_range)
        counts = [0] * r
        for _ in range(t):
            counts[rng.randrange(r)] += 1
        hosts = []
        ok = True
        for c, size in zip(counts, sizes):
            if c == 0:
                hosts.append(None)
                continue
            fits = [
                h
                for h in enumerate_m_edge(c, cache_dir=cache_dir).members
                if h.n <= size
            ]
            if not fits:
                ok = False
                break
            hosts.append(rng.choice(fits))
        if ok:
            return MultipartiteEmbedding(sizes, hosts)
    raise GraphError("could not sample a fitting embedding")


# ---- spectral argmax -------------------------------------------------------


def _realized(member):
    if isinstance(member, MultipartiteEmbedding):
        return member.realize()
    return member


@dataclass
class _SpexDetail:
    members: list
    rhos: list
    top: float
    winners: list


def _spex_detail(members, tol=SPEX_TIE_TOL, cross_check=True):
    members = list(members)
    if not members:
        raise ValueError("family must be nonempty")
    graphs = [_realized(m) for m in members]
    rhos = [rho_power(g, tol=1e-12).rho for g in graphs]
    top = max(rhos)
    if cross_check:
        window = max(_CROSS_CHECK_WINDOW, 10 * tol)
        for g, rho in zip(graphs, rhos):
            if rho >= top - window and g.n <= DENSE_LIMIT:
                other = rho_dense(g).rho
                if abs(other - rho) > ORACLE_AGREEMENT:
                    raise SpectralError(
                        f"spectral oracles disagree by {abs(other - rho):.3e} "
                        f"on a graph of order {g.n}"
                    )
    winners = [m for m, rho in zip(members, rhos) if rho >= top - tol]
    return _SpexDetail(members=members, rhos=rhos, top=top, winners=winners)


def spex(family, tol=SPEX_TIE_TOL, cross_check=True):
    """Members of maximum spectral radius, ties within tol kept.

    Radii come from power iteration; candidates near the maximum are
    cross-checked against the dense solver when small enough for it.
    """
    members = family.members if isinstance(family, EnumerationFamily) else family
    return _spex_detail(members, tol=tol, cross_check=cross_check).winners


# ---- verifiers -------------------------------------------------------------


def _canon_set(graphs):
    return {canonical_form(g).data for g in graphs}


def verify_lemma_2degree(n, m):
    """Second-level filter of the order-n m-edge family: the star plus
    isolated vertices, with the triangle tying exactly at m = 3."""
    if not 1 <= m <= 6:
        return VerificationReport(
            "lemma-2degree", {"n": n, "m": m}, "inapplicable",
            details={"reason": "m out of verified range 1..6"},
        )
    if not (m + 2 <= n <= 14):
        return VerificationReport(
            "lemma-2degree", {"n": n, "m": m}, "inapplicable",
            details={"reason": "n out of verified range m+2..14"},
        )
    family = enumerate_m_edge_order(n, m)
    survivors = ex_filter(family.members, 2)
    expected = [star(m + 1).add_isolated(n - m - 1)]
    if m == 3:
        expected.append(complete(3).add_isolated(n - 3))
    verdict = "pass" if _canon_set(survivors) == _canon_set(expected) else "fail"
    return VerificationReport(
        theorem="lemma-2degree",
        parameters={"n": n, "m": m},
        verdict=verdict,
        witnesses=sorted(to_graph6(g) for g in survivors),
        details={
            "family_size": len(family),
            "expected": sorted(to_graph6(g) for g in expected),
        },
    )


def verify_corollary_2inf(m):
    """Filter levels 2, 3, and the stable limit on the m-edge family:
    level 2 keeps the star (plus the triangle at m = 3), level 3 onward is a
    singleton, and level 3 already equals the stable limit."""
    if not 1 <= m <= 6:
        return VerificationReport(
            "cor-2inf", {"m": m}, "inapplicable",
            details={"reason": "m out of verified range 1..6"},
        )
    family = enumerate_m_edge(m)
    lvl2 = ex_filter(family.members, 2)
    lvl3 = ex_filter(family.members, 3)
    stable = ex_infinity(family.members)
    if m == 3:
        expected2 = [star(4), complete(3)]
        expected3 = [complete(3)]
    else:
        expected2 = [star(m + 1)]
        expected3 = [star(m + 1)]
    ok = (
        _canon_set(lvl2) == _canon_set(expected2)
        and _canon_set(lvl3) == _canon_set(expected3)
        and _canon_set(stable) == _canon_set(lvl3)
    )
    return VerificationReport(
        theorem="cor-2inf",
        parameters={"m": m},
        verdict="pass" if ok else "fail",
        witnesses=sorted(to_graph6(g) for g in stable),
        details={
            "family_size": len(family),
            "level2": sorted(to_graph6(g) for g in lvl2),
            "level3": sorted(to_graph6(g) for g in lvl3),
            "stable": sorted(to_graph6(g) for g in stable),
        },
    )


def verify_one_set(s_size, t_size, host1, host2, n_range, tol=ORACLE_AGREEMENT):
    """Check that the walk comparison of two hosts predicts the ordering of
    the spectral radii of their embeddings, once the ambient graph is large.

    The ambient graph of order n is a clique of ``s_size`` vertices joined
    to an independent set; each host's edges are placed on the first
    ``t_size`` independent vertices.  Reports the least tested n from which
    the sign of the radius difference matches the certificate for all larger
    tested n (the observed onset).
    """
    if s_size < 1:
        raise GraphError("clique side must have at least one vertex")
    if host1.n > t_size or host2.n > t_size:
        raise GraphError("hosts must fit in the designated vertex set")
    h1 = host1.add_isolated(t_size - host1.n)
    h2 = host2.add_isolated(t_size - host2.n)
    cert = walk_compare(h1, h2)

    ns = sorted(set(int(n) for n in n_range))
    if not ns:
        raise GraphError("empty n range")
    if ns[0] < s_size + t_size:
        raise GraphError(
            f"n must be at least s_size + t_size = {s_size + t_size}"
        )

    diffs = []
    for n in ns:
        p = n - s_size
        g1 = join(complete(s_size), h1.add_isolated(p - t_size))
        g2 = join(complete(s_size), h2.add_isolated(p - t_size))
        r1 = rho_power(g1, tol=1e-12).rho
        r2 = rho_power(g2, tol=1e-12).rho
        diffs.append((n, r1 - r2))

    if cert.ordering is Ordering.EQUAL:
        ok_all = all(abs(d) <= tol for _, d in diffs)
        onset = ns[0] if ok_all else None
        verdict = "pass" if ok_all else "fail"
    else:
        want = 1.0 if cert.ordering is Ordering.GREATER else -1.0
        onset = None
        for n, d in reversed(diffs):
            if d * want <= 0:
                break
            onset = n
        verdict = "pass" if onset is not None else "fail"

    return VerificationReport(
        theorem="one-set",
        parameters={
            "s_size": s_size,
            "t_size": t_size,
            "host1": to_graph6(h1),
            "host2": to_graph6(h2),
            "n_min": ns[0],
            "n_max": ns[-1],
        },
        verdict=verdict,
        witnesses=[to_graph6(h1), to_graph6(h2)],
        details={
            "ordering": cert.ordering.value,
            "witness_index": cert.witness_index,
            "onset": onset,
            "diffs": [[n, d] for n, d in diffs],
        },
    )


def verify_multi_set(embedding, tol=1e-8):
    """Check the series identity at the measured spectral radius and the
    agreement of the series solver with power iteration.

    Inapplicable (not a failure) when the radius does not exceed the max
    host degree: the identity is only asserted above it.
    """
    realized = embedding.realize()
    measured = rho_power(realized, tol=1e-12)
    target = float(embedding.r - 1)
    params = {
        "parts": list(embedding.part_sizes),
        "t": embedding.t,
        "delta": embedding.delta,
    }
    if not measured.rho > embedding.delta:
        return VerificationReport(
            "multi-set", params, "inapplicable",
            details={
                "reason": "spectral radius does not exceed max host degree",
                "rho_power": measured.rho,
            },
        )
    try:
        depth = _schedule_depth(embedding, measured.rho, min(tol, 1e-9))
        ev = f_eval(embedding, measured.rho, depth)
        solved = solve_rho_series(embedding, tol=min(tol, 1e-10))
    except HypothesisNotMet as exc:
        return VerificationReport(
            "multi-set", params, "inapplicable",
            details={"reason": str(exc), "rho_power": measured.rho},
        )
    except SeriesError as exc:
        return VerificationReport(
            "multi-set", params, "inapplicable",
            details={"reason": str(exc), "rho_power": measured.rho},
        )
    gap = max(0.0, ev.value_lo - target, target - ev.value_hi)
    identity_ok = gap <= tol
    solver_ok = abs(solved.rho - measured.rho) <= tol
    return VerificationReport(
        theorem="multi-set",
        parameters=params,
        verdict="pass" if identity_ok and solver_ok else "fail",
        witnesses=[to_graph6(h) for h in embedding.hosts if h is not None],
        details={
            "rho_power": measured.rho,
            "rho_series": solved.rho,
            "depth": ev.depth,
            "interval": [ev.value_lo, ev.value_hi],
            "interval_width": ev.width,
            "identity_gap": gap,
            "solver_gap": abs(solved.rho - measured.rho),
        },
    )


def _expected_tnrk_host(k):
    return complete(3) if k == 4 else star(k)


def verify_corollary_tnrk(n, r, k, cross_check=True):
    """Check that the unique spectral-radius maximizer among t = k-1 embedded
    edges is the expected host (triangle at k = 4, star otherwise) placed in
    a smallest part."""
    if r < 2 or not 2 <= k <= 6:
        return VerificationReport(
            "cor-tnrk", {"n": n, "r": r, "k": k}, "inapplicable",
            details={"reason": "parameters out of verified range"},
        )
    t = k - 1
    sizes = turan_part_sizes(n, r)
    expected_host = _expected_tnrk_host(k)
    params = {"n": n, "r": r, "k": k, "part_sizes": list(sizes)}
    if expected_host.n > sizes[0]:
        return VerificationReport(
            "cor-tnrk", params, "fail",
            details={"reason": "expected host does not fit a smallest part"},
        )
    family = enumerate_embeddings(n, r, t)
    detail = _spex_detail(family.members, cross_check=cross_check)

    hosts = [None] * r
    hosts[0] = expected_host
    expected_key = MultipartiteEmbedding(sizes, hosts).key()
    winners = detail.winners
    ok = len(winners) == 1 and winners[0].key() == expected_key

    runner_up = None
    winner_set = {id(w) for w in winners}
    others = [rho for m, rho in zip(detail.members, detail.rhos) if id(m) not in winner_set]
    if others:
        runner_up = detail.top - max(others)

    return VerificationReport(
        theorem="cor-tnrk",
        parameters=params,
        verdict="pass" if ok else "fail",
        witnesses=[repr(w) for w in winners],
        details={
            "family_size": len(family),
            "rho_max": detail.top,
            "margin": runner_up,
            "winner_hosts": [
                [to_graph6(h) for h in w.hosts if h is not None] for w in winners
            ],
            "expected_host": to_graph6(expected_host),
        },
    )
