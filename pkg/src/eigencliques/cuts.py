"""MaxCut, surplus, spectral surplus certificates, bisection width, discrepancy.

Exact routines enumerate sign patterns and are gated by size cutoffs; the
surplus lower bounds come from closed-form spectral certificates rather than
solving the semidefinite relaxation itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError, SizeError
from .graphs import Graph, pair_uniforms
from .spectral import spectrum

__all__ = [
    "CutReport",
    "SurplusBounds",
    "DiscrepancyReport",
    "EXHAUSTIVE_CUT_LIMIT",
    "EXHAUSTIVE_SUBSET_LIMIT",
    "maxcut_exact",
    "maxcut_local_search",
    "surplus_lb_spectral",
    "spectral_surplus_caps",
    "unbalanced_cut",
    "bisection_exact",
    "discrepancy",
    "edwards_floor",
    "cut_size",
]

EXHAUSTIVE_CUT_LIMIT = 24
EXHAUSTIVE_SUBSET_LIMIT = 20


@dataclass
class CutReport:
    """A cut with its size, surplus (exact rational), and attached certificates."""

    partition: tuple[int, ...]
    cut_size: int
    surplus: Fraction
    method: str
    certificates: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "method": self.method,
            "value": self.cut_size,
            "surplus": float(self.surplus),
            "partition": list(self.partition),
            "certificates": self.certificates,
        }


def cut_size(g: Graph, partition: Sequence[int]) -> int:
    """Number of edges crossing the 0/1 assignment; recomputed from scratch."""
    sides = np.asarray(partition, dtype=np.int8)
    if sides.shape != (g.n,):
        raise InputError("partition length must equal n")
    diff = sides[:, None] != sides[None, :]
    return int((g.adjacency * diff).sum()) // 2


def _surplus(g: Graph, cut: int) -> Fraction:
    return Fraction(cut) - Fraction(g.m, 2)


def edwards_floor(m: int) -> float:
    return m / 2.0 + (math.sqrt(8.0 * m + 1.0) - 1.0) / 8.0


def maxcut_exact(g: Graph, cutoff: int = EXHAUSTIVE_CUT_LIMIT) -> CutReport:
    """Optimal cut by enumeration of all 2^(n-1) sign patterns (vertex 0 fixed).

    Ties break to the lexicographically smallest optimal assignment.
    """
    n = g.n
    if n > cutoff:
        raise SizeError(f"n={n} exceeds exhaustive cutoff {cutoff}; use maxcut_local_search")
    if n == 0:
        return CutReport((), 0, Fraction(0), "exact")
    edges = g.edges()
    shifts = [n - 1 - i for i in range(n)]  # ascending k == lexicographic assignment
    total = 1 << max(n - 1, 0)
    best_cut = -1
    best_k = 0
    chunk = 1 << 18
    for start in range(0, total, chunk):
        ks = np.arange(start, min(start + chunk, total), dtype=np.uint64)
        cuts = np.zeros(len(ks), dtype=np.int64)
        for u, v in edges:
            bu = (ks >> np.uint64(shifts[u])) & np.uint64(1) if u > 0 else np.uint64(0)
            bv = (ks >> np.uint64(shifts[v])) & np.uint64(1)
            cuts += (bu ^ bv).astype(np.int64)
        local_best = int(cuts.max()) if len(cuts) else 0
        if local_best > best_cut:
            best_cut = local_best
            best_k = start + int(np.argmax(cuts))
    partition = tuple(int((best_k >> shifts[i]) & 1) if i > 0 else 0 for i in range(n))
    return CutReport(partition, best_cut, _surplus(g, best_cut), "exact")


def maxcut_local_search(g: Graph, seed: int = 0) -> CutReport:
    """1-flip local optimum: every vertex has at least half its edges crossing."""
    n = g.n
    if n == 0:
        return CutReport((), 0, Fraction(0), "local-search")
    u = pair_uniforms(seed, np.arange(n, dtype=np.uint64), np.zeros(n, dtype=np.uint64))
    sides = (u < 0.5).astype(np.int8)
    adj = g.adjacency
    improved = True
    while improved:
        improved = False
        for v in range(n):
            nbrs = adj[v]
            cross = int(nbrs[sides != sides[v]].sum())
            deg = int(nbrs.sum())
            if deg - cross > cross:
                sides[v] ^= 1
                improved = True
    cut = cut_size(g, sides)
    return CutReport(tuple(int(x) for x in sides), cut, _surplus(g, cut), "local-search")


@dataclass
class SurplusBounds:
    """Closed-form spectral bounds on the surplus relaxation."""

    lb_linear: float
    lb_quadratic: float
    lb_cubic: float
    ub_lambda: float
    ub_surp_quarter: float
    c: float
    certificate_diag_ok: bool
    diagnostics: dict = field(default_factory=dict)


def surplus_lb_spectral(g: Graph, c: float = 1.0 / 60.0, tol: float | None = None) -> SurplusBounds:
    """Lower bounds on surp* from the negative spectrum, with PSD certificates.

    The linear bound is exact: -<A, X> for X the projector onto the negative
    eigenspace; X has unit-capped diagonal. The cubic bound scales that
    projector by beta = 1/(120 (Delta*+1)) against squared eigenvalues. Both
    certificate matrices are checked for positive semidefiniteness and the
    diagonal cap; a failure flags the result but the values are still reported.
    """
    s = spectrum(g, tol)
    tol = s.tol
    n = g.n
    neg = np.flatnonzero(s.eigenvalues < 0)
    lam_neg = np.abs(s.eigenvalues[neg])
    delta_star = g.stats().delta_star
    beta = 1.0 / (120.0 * (delta_star + 1.0))
    lb_linear = float(lam_neg.sum())
    lb_quadratic = float(c / math.sqrt(delta_star + 1.0) * (lam_neg**2).sum())
    lb_cubic = float(beta * (lam_neg**3).sum())
    diag_ok = True
    diagnostics: dict = {"delta_star": delta_star, "beta": beta}
    if neg.size:
        v_neg = s.eigenvectors[:, neg]
        a = g.adjacency.astype(np.float64)
        x1 = v_neg @ v_neg.T
        x3 = beta * (v_neg * (lam_neg**2)) @ v_neg.T
        for name, x in (("X_linear", x1), ("X_cubic", x3)):
            evs = np.linalg.eigvalsh(x)
            psd_ok = bool(evs[0] >= -tol * max(1.0, abs(evs[-1])))
            dcap_ok = bool(np.diagonal(x).max() <= 1.0 + tol)
            diagnostics[name] = {"min_eig": float(evs[0]), "max_diag": float(np.diagonal(x).max()), "psd_ok": psd_ok, "diag_ok": dcap_ok}
            diag_ok = diag_ok and psd_ok and dcap_ok
        pairing = -float((a * x1).sum())
        diagnostics["linear_pairing"] = pairing
        diag_ok = diag_ok and abs(pairing - lb_linear) <= tol * max(1.0, lb_linear)
    caps = spectral_surplus_caps(g, tol)
    return SurplusBounds(
        lb_linear=lb_linear,
        lb_quadratic=lb_quadratic,
        lb_cubic=lb_cubic,
        ub_lambda=caps.ub_lambda,
        ub_surp_quarter=caps.ub_surp_quarter,
        c=c,
        certificate_diag_ok=diag_ok,
        diagnostics=diagnostics,
    )


def spectral_surplus_caps(g: Graph, tol: float | None = None) -> SurplusBounds:
    """Upper caps |lambda_n| n / 4 on the surplus and |lambda_n| n on surp*."""
    if g.n == 0 or g.m == 0:
        return SurplusBounds(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, True)
    lam_n = abs(spectrum(g, tol).lambda_min)
    return SurplusBounds(0.0, 0.0, 0.0, lam_n * g.n, lam_n * g.n / 4.0, 0.0, True)


def unbalanced_cut(g: Graph, x_side: Iterable[int], tol: float = 1e-12) -> CutReport:
    """Cut guarantee from an unbalanced split (X, Y).

    With a = e(G[X]), b = e(G[X,Y]), c = e(G[Y]): if a <= b/2 the plain cut
    (X, Y) already has surplus (b-a-c)/2. Otherwise the randomized biased cut
    with inclusion probability 1/2 + b/(4a) is derandomized by greedy
    conditional-expectation rounding, meeting surplus b^2/(8a) - c/2.
    """
    xs = sorted(set(int(v) for v in x_side))
    if not xs or any(v < 0 or v >= g.n for v in xs):
        raise InputError("X must be a nonempty subset of the vertices")
    ys = sorted(set(range(g.n)) - set(xs))
    if not ys:
        raise InputError("Y = V \\ X must be nonempty")
    xi = np.asarray(xs, dtype=int)
    yi = np.asarray(ys, dtype=int)
    a = int(g.adjacency[np.ix_(xi, xi)].sum()) // 2
    b = int(g.adjacency[np.ix_(xi, yi)].sum())
    c = int(g.adjacency[np.ix_(yi, yi)].sum()) // 2
    certs: dict = {"a": a, "b": b, "c": c}
    if a <= b / 2.0:
        sides = [0] * g.n
        for v in xs:
            sides[v] = 1
        cut = cut_size(g, sides)
        certs.update({"branch": "plain", "guarantee": (b - a - c) / 2.0})
        return CutReport(tuple(sides), cut, _surplus(g, cut), "unbalanced", certs)
    p = min(max(b / (4.0 * a), 0.0), 0.5 - 1e-15)
    q = 0.5 + p
    in_u: dict[int, bool] = {}
    deg_y = {v: int(g.adjacency[v, yi].sum()) for v in xs}
    for v in xs:
        delta = float(deg_y[v])
        for w in xs:
            if w == v or not g.adjacency[v, w]:
                continue
            if w in in_u:
                delta += -1.0 if in_u[w] else 1.0
            else:
                delta += 1.0 - 2.0 * q
        in_u[v] = delta >= 0.0
    sides = [0] * g.n
    for v in xs:
        if in_u[v]:
            sides[v] = 1
    cut = cut_size(g, sides)
    guarantee = b * b / (8.0 * a) - c / 2.0
    certs.update({"branch": "biased", "p": p, "guarantee": guarantee})
    report = CutReport(tuple(sides), cut, _surplus(g, cut), "unbalanced", certs)
    certs["guarantee_met"] = bool(float(report.surplus) >= guarantee - tol)
    return report


@dataclass
class DiscrepancyReport:
    """Bisection width, deficit, and positive/negative discrepancy with witnesses."""

    bw: int | None = None
    dfc: Fraction | None = None
    disc_plus: Fraction | None = None
    disc_minus: Fraction | None = None
    witnesses: dict = field(default_factory=dict)
    method: str = "exact"

    def to_json_dict(self) -> dict:
        out: dict = {"method": self.method}
        if self.bw is not None:
            out["bw"] = self.bw
            out["dfc"] = float(self.dfc)
        if self.disc_plus is not None:
            out["disc_plus"] = float(self.disc_plus)
            out["disc_minus"] = float(self.disc_minus)
        out["witnesses"] = {k: list(v) for k, v in self.witnesses.items()}
        return out


def bisection_exact(g: Graph, cutoff: int = EXHAUSTIVE_CUT_LIMIT) -> DiscrepancyReport:
    """Minimum balanced cut over all floor(n/2) / ceil(n/2) splits, plus deficit."""
    n = g.n
    if n > cutoff:
        raise SizeError(f"n={n} exceeds exhaustive cutoff {cutoff}")
    if n <= 1:
        return DiscrepancyReport(bw=0, dfc=Fraction(0), witnesses={"bisection": [0] * n})
    from itertools import combinations

    nbr = [0] * n
    for u, v in g.edges():
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
    k = n // 2
    best = None
    best_set: tuple[int, ...] = ()
    if n % 2 == 0:
        # pin vertex 0 to the k-side so each unordered partition appears once
        candidates = ((0,) + combo for combo in combinations(range(1, n), k - 1))
    else:
        candidates = combinations(range(n), k)
    for combo in candidates:
        mask = 0
        for v in combo:
            mask |= 1 << v
        cut = sum((nbr[v] & ~mask).bit_count() for v in combo)
        if best is None or cut < best or (cut == best and combo < best_set):
            best = cut
            best_set = tuple(combo)
    dfc = Fraction(g.m) * (Fraction(1, 2) + Fraction(1, 2 * n - 2)) - best
    sides = [0] * n
    for v in best_set:
        sides[v] = 1
    return DiscrepancyReport(bw=int(best), dfc=dfc, witnesses={"bisection": sides})


def _all_subset_edge_counts(g: Graph) -> np.ndarray:
    """e(G[U]) for every subset mask, by peeling the lowest set bit level by level."""
    n = g.n
    nbr = np.zeros(n, dtype=np.uint64)
    for u, v in g.edges():
        nbr[u] |= np.uint64(1) << np.uint64(v)
        nbr[v] |= np.uint64(1) << np.uint64(u)
    masks = np.arange(1 << n, dtype=np.uint64)
    e = np.zeros(1 << n, dtype=np.int64)
    sizes = np.bitwise_count(masks).astype(np.int64)
    low = masks & (~masks + np.uint64(1))
    lowidx = np.zeros(1 << n, dtype=np.int64)
    lowidx[1:] = np.round(np.log2(low[1:].astype(np.float64))).astype(np.int64)
    rest = masks ^ low
    for level in range(2, n + 1):
        sel = np.flatnonzero(sizes == level)
        e[sel] = e[rest[sel]] + np.bitwise_count(nbr[lowidx[sel]] & rest[sel]).astype(np.int64)
    return e


def discrepancy(g: Graph, cutoff: int = EXHAUSTIVE_SUBSET_LIMIT, seed: int = 0) -> DiscrepancyReport:
    """disc+ and disc- with witness subsets; exact by subset enumeration up to cutoff."""
    n = g.n
    if n <= 1 or g.m == 0:
        return DiscrepancyReport(disc_plus=Fraction(0), disc_minus=Fraction(0), witnesses={"disc_plus": [], "disc_minus": []})
    denom = n * (n - 1) // 2
    if n <= cutoff:
        e = _all_subset_edge_counts(g)
        sizes = np.bitwise_count(np.arange(1 << n, dtype=np.uint64)).astype(np.int64)
        pairs = sizes * (sizes - 1) // 2
        score = e * denom - g.m * pairs  # disc+ scaled by C(n,2)
        plus_mask = int(np.argmax(score))
        minus_mask = int(np.argmin(score))
        wit_p = [v for v in range(n) if (plus_mask >> v) & 1]
        wit_m = [v for v in range(n) if (minus_mask >> v) & 1]
        return DiscrepancyReport(
            disc_plus=Fraction(int(score[plus_mask]), denom),
            disc_minus=Fraction(-int(score[minus_mask]), denom),
            witnesses={"disc_plus": wit_p, "disc_minus": wit_m},
        )
    # heuristic: greedy 1-flip search from seeded starts, for both signs
    p = Fraction(g.m, denom)

    def score_of(mask_bits: np.ndarray, sign: int) -> Fraction:
        idx = np.flatnonzero(mask_bits)
        k = len(idx)
        e_u = int(g.adjacency[np.ix_(idx, idx)].sum()) // 2
        return sign * (Fraction(e_u) - p * Fraction(k * (k - 1), 2))

    results = {}
    for sign, key in ((1, "disc_plus"), (-1, "disc_minus")):
        u = pair_uniforms(seed + (0 if sign == 1 else 1), np.arange(n, dtype=np.uint64), np.zeros(n, dtype=np.uint64))
        bits = (u < 0.5).astype(np.int8)
        best = score_of(bits, sign)
        improved = True
        while improved:
            improved = False
            for v in range(n):
                bits[v] ^= 1
                sc = score_of(bits, sign)
                if sc > best:
                    best = sc
                    improved = True
                else:
                    bits[v] ^= 1
        if best < 0:
            best, bits = Fraction(0), np.zeros(n, dtype=np.int8)  # empty set witnesses 0
        results[key] = (best, [int(v) for v in np.flatnonzero(bits)])
    return DiscrepancyReport(
        disc_plus=results["disc_plus"][0],
        disc_minus=results["disc_minus"][0],
        witnesses={"disc_plus": results["disc_plus"][1], "disc_minus": results["disc_minus"][1]},
        method="local-search",
    )
