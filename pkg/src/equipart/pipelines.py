"""Constructive partition pipelines.

The theorems behind these procedures hold for astronomically large n
with tower-type constants; at desk scale the pipelines keep the proof
shape but swap the constants for user budgets, and every run either
certifies its postconditions or returns an explicit Incomplete status
with named reasons. Nothing is silently clamped or faked.

Pipeline shape, shared by the clique and induced variants:
  1. budgeted uniform partition (stand-in for the uniformity lemma),
  2. classify clusters by clique / pattern counts,
  3. recurse on the low-count clusters, collect sparse or dense pieces,
  4. scoop every piece to one common class size,
  5. even out the exceptional set, certify every class.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
from pathlib import Path

from .counting import count_cliques, count_induced
from .exact import as_fraction, frac_floor
from .graph import (
    Graph,
    complement,
    edge_count_between,
    edge_count_within,
    induced_subgraph,
    mask_of,
)
from .magnitude import Magnitude
from .partition import Certificate, Partition, certify
from .patterns import PatternGraph, pattern_from_edges
from .schedules import _maint
from .scooping import scoop
from .uniformity import (
    PartitionUniformityReport,
    UniformityParams,
    check_partition,
    slice_bound,
)


class PipelineError(ValueError):
    pass


@dataclass
class PipelineParams:
    """Budgets and knobs shared by the partition pipelines.

    delta is the inner uniformity target, l / max_k the cluster budget
    standing in for the uniformity lemma's constant, b the cluster group
    size for the induced pipeline, xi_override a manual cluster
    classification coefficient (default: the theorem schedule).
    """

    epsilon: Fraction = Fraction(1, 4)
    r: int = 3
    delta: Fraction | None = None
    l: int = 2
    max_k: int = 16
    s_override: int | None = None
    seed: int = 0
    mode: str = "sparse"  # sparse | dense | sparse_or_dense
    strategy: str = "conditional"
    sample_count: int = 64
    exact_budget: int = 16
    max_rounds: int = 32
    b: int = 2
    xi_override: Fraction | None = None

    def __post_init__(self):
        self.epsilon = as_fraction(self.epsilon)
        self.delta = as_fraction(self.delta) if self.delta is not None else self.epsilon / 4
        if self.xi_override is not None:
            self.xi_override = as_fraction(self.xi_override)
        if not 0 < self.delta <= self.epsilon < 1:
            raise PipelineError(
                f"need 0 < delta <= epsilon < 1, got delta={self.delta}, epsilon={self.epsilon}"
            )
        if self.l < 1:
            raise PipelineError(f"l must be >= 1, got {self.l}")
        if self.max_k < self.l:
            raise PipelineError(f"max_k must be >= l, got {self.max_k} < {self.l}")
        if self.b < 2:
            raise PipelineError(f"cluster group size b must be >= 2, got {self.b}")
        if self.mode not in ("sparse", "dense", "sparse_or_dense"):
            raise PipelineError(f"unknown mode {self.mode!r}")

    def uniformity(self, epsilon=None, seed=None) -> UniformityParams:
        return UniformityParams(
            epsilon if epsilon is not None else self.delta,
            exact_budget=self.exact_budget,
            sample_count=self.sample_count,
            seed=self.seed if seed is None else seed,
        )

    def to_json(self) -> dict:
        out = {}
        for key in (
            "epsilon r delta l max_k s_override seed mode strategy "
            "sample_count exact_budget max_rounds b xi_override".split()
        ):
            val = getattr(self, key)
            out[key] = str(val) if isinstance(val, Fraction) else val
        return out

    @classmethod
    def from_file(cls, path: str | Path) -> "PipelineParams":
        """Parse key=value lines (# starts a comment, blanks ignored)."""
        ints = {"r", "l", "max_k", "s_override", "seed", "sample_count",
                "exact_budget", "max_rounds", "b"}
        fracs = {"epsilon", "delta", "xi_override"}
        strings = {"mode", "strategy"}
        kwargs = {}
        for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise PipelineError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if key in ints:
                kwargs[key] = int(value) if value else None
            elif key in fracs:
                kwargs[key] = Fraction(value) if value else None
            elif key in strings:
                kwargs[key] = value
            else:
                raise PipelineError(f"{path}:{lineno}: unknown parameter {key!r}")
        return cls(**kwargs)


def _derive_seed(seed: int, *salt: int) -> int:
    out = seed & 0xFFFFFFFF
    for s in salt:
        out = (out * 1000003 + s + 0x9E3779B9) & 0xFFFFFFFF
    return out


# -- budgeted uniform partition --------------------------------------------


@dataclass
class UniformPartitionResult:
    partition: Partition
    report: PartitionUniformityReport
    trace: list  # (q, mean-square density index) per accepted refinement
    status: str
    reasons: list[str]
    seed: int

    @property
    def class_size(self) -> int:
        return self.partition.class_size


def _chunks(order: list[int], q: int) -> Partition:
    n = len(order)
    t = n // q
    classes = tuple(frozenset(order[i * t : (i + 1) * t]) for i in range(q))
    return Partition(n, classes, frozenset(order[q * t :]))


def _ms_index(g: Graph, partition: Partition) -> Fraction:
    """Mean-square cross density, weighted by pair sizes over n^2."""
    total = Fraction(0)
    classes = partition.classes
    for i, j in combinations(range(len(classes)), 2):
        e = edge_count_between(g, classes[i], classes[j])
        total += Fraction(e * e, len(classes[i]) * len(classes[j]))
    return total / (partition.n**2) if partition.n else Fraction(0)


def uniform_partition(g: Graph, params: PipelineParams) -> UniformPartitionResult:
    """Heuristic equitable partition with few non-delta-uniform pairs.

    Starts from an index-order split into l classes and refines: find a
    failing pair, reorder both classes witness-first, re-chunk at the
    doubled class count, and accept the step only if the mean-square
    density index does not decrease. Stops at a passing report, the
    cluster budget, or the round cap; never silently.
    """
    n = g.n
    if n < 1:
        raise PipelineError("graph is empty")
    q = min(params.l, n)
    order = list(range(n))
    reasons: list[str] = []
    trace = []
    status = "incomplete"
    partition = _chunks(order, q)
    report = check_partition(g, partition, params.uniformity())
    trace.append((q, _ms_index(g, partition)))
    for round_no in range(params.max_rounds):
        if report.passed:
            status = "complete"
            break
        q2 = min(2 * q, params.max_k, n)
        if q2 <= q:
            reasons.append(f"cluster budget exhausted at q={q} (max_k={params.max_k})")
            break
        bad = sorted(
            report.bad_pairs,
            key=lambda ij: (-report.verdicts[ij].witness.deviation, ij),
        )
        current = trace[-1][1]
        accepted = False
        for i, j in bad:
            witness = report.verdicts[(i, j)].witness
            new_order = _witness_first(g, order, q, i, j, witness)
            candidate = _chunks(new_order, q2)
            idx = _ms_index(g, candidate)
            if idx >= current:
                order, q, partition = new_order, q2, candidate
                trace.append((q, idx))
                report = check_partition(
                    g, partition, params.uniformity(seed=_derive_seed(params.seed, round_no))
                )
                accepted = True
                break
        if not accepted:
            reasons.append("no index-improving refinement among failing pairs")
            break
    else:
        reasons.append(f"round cap {params.max_rounds} reached")
    if status != "complete" and report.passed:
        status = "complete"
        reasons = []
    return UniformPartitionResult(partition, report, trace, status, reasons, params.seed)


def _witness_first(g: Graph, order: list[int], q: int, i: int, j: int, witness) -> list[int]:
    """Reorder the failing pair's classes by degree into the opposite
    witness set, so the next re-chunk splits along the defect."""
    n = len(order)
    t = n // q
    out = []
    mx, my = 0, 0
    for v in witness.x:
        mx |= 1 << v
    for v in witness.y:
        my |= 1 << v
    for c in range(q):
        chunk = order[c * t : (c + 1) * t]
        if c == i:
            out.extend(sorted(chunk, key=lambda v: ((g.neighbors_mask(v) & my).bit_count(), v)))
        elif c == j:
            out.extend(sorted(chunk, key=lambda v: ((g.neighbors_mask(v) & mx).bit_count(), v)))
        else:
            out.extend(chunk)
    out.extend(order[q * t :])
    return out


# -- cluster classification helpers ----------------------------------------


def _xi_threshold(params: PipelineParams, eps: Fraction, r_inner: int):
    """Classification coefficient: override or the theorem schedule."""
    if params.xi_override is not None:
        return Magnitude.exact(params.xi_override)
    return _maint(eps**3, r_inner)["xi"]


def _count_at_most(count: int, coeff, size: int, power: int) -> bool:
    if count == 0:
        return True
    bound = coeff * Magnitude.exact(Fraction(size) ** power)
    return not Magnitude.exact(count) > bound


# -- sparse pieces (clique pipeline recursion) -------------------------------


def _sparse_pieces(g: Graph, vertices: list[int], r: int, eps: Fraction,
                   params: PipelineParams, reasons: list[str], diag: dict,
                   level: int = 0):
    """Recursive decomposition into pieces intended for one final scoop.

    Returns (pieces, exceptional, cluster_count, max_pieces_per_cluster).
    Pieces carry the sparsity intent e(P) <= eps^3-ish * C(|P|, 2); the
    caller scoops them all to a common class size at eps.
    """
    vertices = sorted(vertices)
    if r == 2:
        return [frozenset(vertices)], set(), 1, 1
    sub, mapping = induced_subgraph(g, vertices)
    local = replace(
        params,
        l=max(1, min(params.l, sub.n)),
        max_k=max(1, min(params.max_k, sub.n)),
        seed=_derive_seed(params.seed, level, len(vertices)),
    )
    up = uniform_partition(sub, local)
    if up.status != "complete":
        reasons.append(
            f"inner uniform partition incomplete at r={r} on {len(vertices)} vertices: "
            + "; ".join(up.reasons)
        )
    clusters = [frozenset(mapping[v] for v in c) for c in up.partition.classes]
    exceptional = {mapping[v] for v in up.partition.exceptional}
    t = up.partition.class_size or 1
    k = len(clusters)
    xi = _xi_threshold(params, eps, r - 1)
    pieces: list[frozenset[int]] = []
    sparse_idx: list[int] = []
    isolated: list[int] = []
    max_pieces = 1
    for idx, cluster in enumerate(clusters):
        cluster_sub, _ = induced_subgraph(g, cluster)
        kc = count_cliques(cluster_sub, r - 1) if r - 1 <= cluster_sub.n else 0
        if _count_at_most(kc, xi, t, r - 1):
            sparse_idx.append(idx)
        else:
            isolated.append(idx)
    diag[f"level{level}"] = {
        "r": r, "k": k, "t": t, "low_count_clusters": len(sparse_idx),
        "isolated_clusters": len(isolated), "uniform_status": up.status,
    }
    for idx in sparse_idx:
        sub_pieces, sub_exc, _, _ = _sparse_pieces(
            g, sorted(clusters[idx]), r - 1, eps**3, params, reasons, diag, level + 1
        )
        pieces.extend(sub_pieces)
        exceptional |= sub_exc
        max_pieces = max(max_pieces, len(sub_pieces))
    if isolated:
        union = set()
        for idx in isolated:
            union |= clusters[idx]
        if Fraction(len(union)) < eps * len(vertices):
            exceptional |= union
        else:
            e_union = edge_count_within(g, union)
            cap = eps**3 * Fraction(len(union) * (len(union) - 1), 2)
            if Fraction(e_union) > cap:
                reasons.append(
                    "isolated-union-precondition: e(V'') = "
                    f"{e_union} exceeds eps^3 * C({len(union)},2) = {cap}"
                )
            pieces.append(frozenset(union))
    return pieces, exceptional, k, max_pieces


# -- class-size selection, scooping, leftover redistribution ----------------


@dataclass
class PipelineResult:
    partition: Partition
    certificate: Certificate | None
    status: str
    reasons: list[str]
    s: int | None
    seed: int
    diagnostics: dict = field(default_factory=dict)
    report: PartitionUniformityReport | None = None

    @property
    def complete(self) -> bool:
        return self.status == "complete"

    def to_json(self) -> dict:
        from .partition import partition_to_json

        out = partition_to_json(self.partition, self.certificate, self.status, self.seed)
        out["reasons"] = self.reasons
        out["s"] = self.s
        if self.report is not None:
            out["uniformity_report"] = self.report.to_json()
        return out


def _select_class_size(eps: Fraction, n: int, k: int, l_emp: int,
                       pieces: list[frozenset[int]],
                       params: PipelineParams, reasons: list[str]) -> int | None:
    cap = frac_floor(eps * min(len(p) for p in pieces))
    if params.s_override is not None:
        s = params.s_override
        if s < 1 or s > cap:
            reasons.append(f"s_override={s} outside [1, {cap}]")
            return None
        return s
    if cap < 1:
        reasons.append(
            f"class size formula vanished: eps*min_piece = {eps * min(len(p) for p in pieces)} < 1"
        )
        return None
    s = frac_floor(eps * n / (4 * k * l_emp))
    s = max(1, min(s, cap))
    # Size-1 classes can never meet a strict density threshold; prefer 2.
    if s == 1 and cap >= 2:
        s = 2
    if s == 1:
        reasons.append("class size collapsed to 1; classes cannot be certified")
    return s


def _redistribute(g: Graph, classes: list[frozenset[int]], orientations: list[str],
                  leftover: set[int]) -> tuple[list[frozenset[int]], frozenset[int]]:
    """Even out the exceptional set: every class takes floor(w/q) extra
    vertices. Assignments are drained globally cheapest-first, where the
    cost of placing a vertex is the number of edges it adds to a sparse
    class or non-edges to a dense one (against the pre-growth classes)."""
    q = len(classes)
    if q == 0:
        return classes, frozenset(leftover)
    per_class = len(leftover) // q
    if per_class == 0:
        return classes, frozenset(leftover)
    grown = [set(c) for c in classes]
    masks = [mask_of(cls) for cls in classes]
    pool = sorted(leftover)
    assigned: set[int] = set()
    # One vertex per class per round, always the cheapest against the
    # grown class, so mutually adjacent leftovers spread out.
    for _ in range(per_class):
        for ci in range(q):
            best = None
            for v in pool:
                if v in assigned:
                    continue
                links = (g.neighbors_mask(v) & masks[ci]).bit_count()
                cost = links if orientations[ci] == "sparse" else len(grown[ci]) - links
                if best is None or (cost, v) < best:
                    best = (cost, v)
            if best is None:
                break
            _, v = best
            grown[ci].add(v)
            masks[ci] |= 1 << v
            assigned.add(v)
    remaining = frozenset(v for v in leftover if v not in assigned)
    return [frozenset(c) for c in grown], remaining


def _assemble(g: Graph, oriented_pieces: list[tuple[frozenset[int], str]],
              eps: Fraction, params: PipelineParams, reasons: list[str],
              k: int, l_emp: int, exceptional: set[int],
              diagnostics: dict) -> PipelineResult:
    """Scoop every piece to a common size, even out, certify."""
    comp = None
    if not oriented_pieces:
        reasons.append("no pieces to scoop; everything fell into the exceptional set")
        partition = Partition(g.n, (), frozenset(exceptional))
        return PipelineResult(partition, None, "incomplete", reasons, None,
                              params.seed, diagnostics)
    s = _select_class_size(eps, g.n, k, l_emp, [p for p, _ in oriented_pieces],
                          params, reasons)
    if s is None:
        covered = set(exceptional)
        for p, _ in oriented_pieces:
            covered |= p
        partition = Partition(g.n, (), frozenset(covered))
        return PipelineResult(partition, None, "incomplete", reasons, None,
                              params.seed, diagnostics)
    classes: list[frozenset[int]] = []
    orientations: list[str] = []
    leftover = set(exceptional)
    for pi, (piece, orient) in enumerate(oriented_pieces):
        if Fraction(s) > eps * len(piece):
            leftover |= piece
            reasons.append(
                f"piece of size {len(piece)} too small for class size {s} at eps={eps}"
            )
            continue
        if orient == "dense" and comp is None:
            comp = complement(g)
        work = g if orient == "sparse" else comp
        res = scoop(
            work, piece, s, eps, mode="sparse", strategy=params.strategy,
            seed=_derive_seed(params.seed, 7, pi), sample_count=params.sample_count,
        )
        if not res.precondition_held:
            reasons.append(
                f"scoop precondition missed on piece {pi}: e={res.target_edges} "
                f"> eps^3*C({len(piece)},2)"
            )
        for c in res.partition.classes:
            classes.append(c)
            orientations.append(orient)
        leftover |= res.partition.exceptional
    classes, v0 = _redistribute(g, classes, orientations, leftover)
    partition = Partition(g.n, tuple(classes), v0)
    partition.validate(require_cover=True)
    modes = set(orientations)
    mode = "sparse" if modes == {"sparse"} else "dense" if modes == {"dense"} else "sparse_or_dense"
    cert = certify(g, partition, eps, mode=mode, allow_relaxed=True)
    diagnostics.update({
        "s": s, "k": k, "l_emp": l_emp, "pieces": len(oriented_pieces),
        "orientations": orientations,
    })
    status = "complete"
    if not cert.complete:
        status = "incomplete"
        untagged = [i for i, c in enumerate(cert.classes) if c.tag == "untagged"]
        reasons.append(f"classes {untagged} missed both density thresholds")
    if partition.q and len(v0) >= partition.q:
        status = "incomplete"
        reasons.append(f"|V0| = {len(v0)} >= q = {partition.q}")
    if not partition.q:
        status = "incomplete"
    return PipelineResult(partition, cert, status, reasons, s, params.seed, diagnostics)


# -- public pipelines --------------------------------------------------------


def sparse_equitable_partition(g: Graph, r: int, epsilon, params: PipelineParams | None = None) -> PipelineResult:
    """Equitable partition with every class sparse-certified at eps.

    Base r = 2 scoops the whole vertex set; r >= 3 classifies the
    clusters of a budgeted uniform partition by (r-1)-clique counts,
    recurses on the low-count ones at eps^3, treats the isolated rest as
    one sparse piece, and scoops everything to a common class size. In
    dense mode the whole pipeline runs on the complement and classes are
    certified dense in the original graph.
    """
    params = params or PipelineParams(epsilon=as_fraction(epsilon), r=r)
    eps = as_fraction(epsilon)
    if r < 2:
        raise PipelineError(f"r must be >= 2, got {r}")
    if not 0 < eps < 1:
        raise PipelineError(f"epsilon must be in (0,1), got {eps}")
    dense_mode = params.mode == "dense"
    work = complement(g) if dense_mode else g
    reasons: list[str] = []
    diag: dict = {}
    if r == 2:
        pieces = [frozenset(range(g.n))]
        exceptional: set[int] = set()
        k, l_emp = 1, 1
    else:
        pieces, exceptional, k, l_emp = _sparse_pieces(
            work, list(range(g.n)), r, eps, params, reasons, diag
        )
    oriented = [(p, "sparse") for p in pieces]
    result = _assemble(work, oriented, eps, params, reasons, k, l_emp, exceptional, diag)
    if dense_mode:
        cert = (
            certify(g, result.partition, eps, mode="dense", allow_relaxed=True)
            if result.certificate is not None
            else None
        )
        status = result.status
        if cert is not None and not cert.complete and status == "complete":
            status = "incomplete"
        result = replace(result, certificate=cert, status=status)
    return result


def sparse_uniform_partition(g: Graph, r: int, epsilon, k_min: int,
                             params: PipelineParams | None = None) -> PipelineResult:
    """Sparse equitable partition that is additionally eps-uniform.

    Adds q >= k_min and a final pair-uniformity report counting bad
    pairs against eps * q^2; the class pairs inherit uniformity from the
    cluster pairs by slicing, which the diagnostics record.
    """
    eps = as_fraction(epsilon)
    params = params or PipelineParams(epsilon=eps, r=r)
    if k_min < 1:
        raise PipelineError(f"k_min must be >= 1, got {k_min}")
    params = replace(params, l=max(params.l, min(k_min, g.n)))
    result = sparse_equitable_partition(g, r, eps, params)
    report = check_partition(
        g, result.partition, params.uniformity(epsilon=eps, seed=_derive_seed(params.seed, 99))
    ) if result.partition.q else None
    reasons = list(result.reasons)
    status = result.status
    if result.partition.q < k_min:
        status = "incomplete"
        reasons.append(f"q = {result.partition.q} < k_min = {k_min}")
    if report is not None and not report.passed:
        status = "incomplete"
        reasons.append(
            f"bad pair count {report.bad_pair_count} exceeds eps*q^2 = {eps * result.partition.q ** 2}"
        )
    diag = dict(result.diagnostics)
    level0 = diag.get("level0")
    if level0 and result.partition.class_size and level0.get("t"):
        alpha = Fraction(result.partition.class_size, level0["t"])
        if params.delta < alpha <= 1:
            diag["slicing"] = {
                "alpha": str(alpha),
                "inherited_uniformity": str(slice_bound(params.delta, alpha)),
            }
    return replace(result, status=status, reasons=reasons, report=report, diagnostics=diag)


# -- Ramsey grouping of clusters ---------------------------------------------


COLORS = ("red", "blue", "green")


@dataclass(frozen=True)
class ClusterColoring:
    """Complete red/blue/green coloring of unordered cluster-index pairs."""

    g: int
    colors: dict  # (i, j) with i < j -> color

    def __post_init__(self):
        for i, j in combinations(range(self.g), 2):
            color = self.colors.get((i, j))
            if color not in COLORS:
                raise PipelineError(f"pair ({i},{j}) missing or miscolored: {color!r}")

    def color(self, i: int, j: int) -> str:
        return self.colors[(min(i, j), max(i, j))]

    def neighbors_in_color(self, v: int, color: str, allowed: set[int]) -> set[int]:
        return {
            u for u in allowed
            if u != v and self.color(u, v) == color
        }

    def green_fraction(self) -> Fraction:
        if self.g < 2:
            return Fraction(0)
        green = sum(1 for c in self.colors.values() if c == "green")
        return Fraction(green, self.g * (self.g - 1) // 2)


@dataclass
class RamseyGrouping:
    groups: list[tuple[str, frozenset[int]]]
    leftover: frozenset[int]
    green_fraction: Fraction

    def validate(self, coloring: ClusterColoring) -> None:
        used: set[int] = set()
        for color, members in self.groups:
            if color not in ("red", "blue"):
                raise PipelineError(f"group colored {color!r}")
            if used & members:
                raise PipelineError("groups overlap")
            used |= members
            for i, j in combinations(sorted(members), 2):
                if coloring.color(i, j) != color:
                    raise PipelineError(
                        f"pair ({i},{j}) is {coloring.color(i, j)}, group is {color}"
                    )


def _find_mono_clique_exact(coloring: ClusterColoring, unused: set[int], b: int) -> tuple[str, frozenset[int]] | None:
    for color in ("red", "blue"):
        for combo in combinations(sorted(unused), b):
            if all(coloring.color(i, j) == color for i, j in combinations(combo, 2)):
                return color, frozenset(combo)
    return None


def _find_mono_clique_greedy(coloring: ClusterColoring, unused: set[int], b: int,
                             rng: random.Random, restarts: int) -> tuple[str, frozenset[int]] | None:
    for color in ("red", "blue"):
        for _ in range(restarts):
            pool = sorted(unused)
            if not pool:
                return None
            start = rng.choice(pool)
            clique = [start]
            cands = coloring.neighbors_in_color(start, color, unused)
            while cands and len(clique) < b:
                v = rng.choice(sorted(cands))
                clique.append(v)
                cands &= coloring.neighbors_in_color(v, color, unused)
            if len(clique) == b:
                return color, frozenset(clique)
    return None


def ramsey_group_clusters(coloring: ClusterColoring, b: int, seed: int = 0,
                          restarts: int = 32) -> RamseyGrouping:
    """Greedily assemble disjoint monochromatic groups of b cluster
    indices (red or blue only, never green or mixed).

    Exact clique search for b <= 4, seeded greedy extension with
    restarts above. A small leftover is only guaranteed in the
    few-green-edges regime; the actual leftover is always reported.
    """
    if b < 2:
        raise PipelineError(f"group size b must be >= 2, got {b}")
    rng = random.Random(seed)
    unused = set(range(coloring.g))
    groups: list[tuple[str, frozenset[int]]] = []
    while len(unused) >= b:
        if b <= 4:
            found = _find_mono_clique_exact(coloring, unused, b)
        else:
            found = _find_mono_clique_greedy(coloring, unused, b, rng, restarts)
        if found is None:
            break
        groups.append(found)
        unused -= found[1]
    grouping = RamseyGrouping(groups, frozenset(unused), coloring.green_fraction())
    grouping.validate(coloring)
    return grouping


# -- sparse/dense pipeline for induced patterns ------------------------------


def _pattern_minus_vertex(pattern: PatternGraph, v: int) -> PatternGraph:
    keep = [u for u in range(pattern.r) if u != v]
    index = {u: i for i, u in enumerate(keep)}
    edges = [
        (index[a], index[b])
        for a, b in pattern.graph.edges()
        if a != v and b != v
    ]
    return pattern_from_edges(pattern.r - 1, edges)


def _tricolor(up: UniformPartitionResult, isolated: list[int], r_f: int,
              delta: Fraction, diag: dict) -> ClusterColoring:
    """Color isolated-cluster pairs: red for uniform+sparse, blue for
    uniform+dense, green otherwise. Mid-density uniform pairs cannot
    occur under the theorem's premise; at desk scale they go green and
    are counted."""
    pos = {c: i for i, c in enumerate(isolated)}
    colors = {}
    anomalies = 0
    bound = 2**r_f * delta
    for a, b in combinations(isolated, 2):
        verdict = up.report.verdicts[(min(a, b), max(a, b))]
        key = (pos[a], pos[b])
        if verdict.is_bad:
            colors[key] = "green"
            continue
        d = verdict.density
        sparse_ok = d**r_f < bound
        dense_ok = (1 - d) ** r_f < bound
        if sparse_ok and dense_ok:
            colors[key] = "red" if d <= Fraction(1, 2) else "blue"
        elif sparse_ok:
            colors[key] = "red"
        elif dense_ok:
            colors[key] = "blue"
        else:
            colors[key] = "green"
            anomalies += 1
    diag["mid_density_uniform_pairs"] = anomalies
    return ClusterColoring(len(isolated), colors)


def _sd_pieces(g: Graph, vertices: list[int], pattern: PatternGraph, eps: Fraction,
               params: PipelineParams, reasons: list[str], diag: dict,
               level: int = 0):
    """Recursive oriented decomposition for the induced-pattern pipeline."""
    vertices = sorted(vertices)
    r = pattern.r
    if r == 2:
        # An edge pattern points at scooping the graph, a non-edge
        # pattern at its complement; if the indicated side misses the
        # scooping precondition while the other side meets it, switch.
        orient = "sparse" if pattern.is_complete() else "dense"
        e_here = edge_count_within(g, vertices)
        cap = eps**3 * Fraction(len(vertices) * (len(vertices) - 1), 2)
        e_other = Fraction(len(vertices) * (len(vertices) - 1), 2) - e_here
        side = Fraction(e_here) if orient == "sparse" else Fraction(e_other)
        other = Fraction(e_other) if orient == "sparse" else Fraction(e_here)
        if side > cap and other <= cap:
            orient = "dense" if orient == "sparse" else "sparse"
            reasons.append(
                f"pattern-indicated side missed the scooping precondition; "
                f"scooping the {orient} side instead"
            )
        return [(frozenset(vertices), orient)], set(), 1, 1
    sub, mapping = induced_subgraph(g, vertices)
    local = replace(
        params,
        l=max(1, min(params.l, sub.n)),
        max_k=max(1, min(params.max_k, sub.n)),
        seed=_derive_seed(params.seed, level, len(vertices), 5),
    )
    up = uniform_partition(sub, local)
    if up.status != "complete":
        reasons.append(
            f"inner uniform partition incomplete at pattern order {r}: "
            + "; ".join(up.reasons)
        )
    clusters = [frozenset(mapping[v] for v in c) for c in up.partition.classes]
    exceptional = {mapping[v] for v in up.partition.exceptional}
    t = up.partition.class_size or 1
    k = len(clusters)
    sub_pattern = _pattern_minus_vertex(pattern, 0)
    xi = _xi_threshold(params, eps, r - 1)
    low: list[int] = []
    isolated: list[int] = []
    for idx, cluster in enumerate(clusters):
        cluster_sub, _ = induced_subgraph(g, cluster)
        kc = (
            count_induced(cluster_sub, sub_pattern)
            if sub_pattern.r <= cluster_sub.n
            else 0
        )
        if _count_at_most(kc, xi, t, sub_pattern.r):
            low.append(idx)
        else:
            isolated.append(idx)
    diag[f"level{level}"] = {
        "pattern_order": r, "k": k, "t": t,
        "low_count_clusters": len(low), "isolated_clusters": len(isolated),
        "uniform_status": up.status,
    }
    pieces: list[tuple[frozenset[int], str]] = []
    max_pieces = 1
    for idx in low:
        sub_pieces, sub_exc, _, _ = _sd_pieces(
            g, sorted(clusters[idx]), sub_pattern, eps**3, params, reasons, diag, level + 1
        )
        pieces.extend(sub_pieces)
        exceptional |= sub_exc
        max_pieces = max(max_pieces, len(sub_pieces))
    if isolated:
        if Fraction(len(isolated)) < eps * k:
            for idx in isolated:
                exceptional |= clusters[idx]
        else:
            coloring = _tricolor(up, isolated, sub_pattern.r, params.delta,
                                 diag.setdefault(f"tricolor{level}", {}))
            grouping = ramsey_group_clusters(
                coloring, params.b, seed=_derive_seed(params.seed, level, 13)
            )
            diag[f"grouping{level}"] = {
                "groups": len(grouping.groups),
                "leftover_clusters": len(grouping.leftover),
                "green_fraction": str(grouping.green_fraction),
            }
            for color, members in grouping.groups:
                union = set()
                for local_idx in members:
                    union |= clusters[isolated[local_idx]]
                pieces.append((frozenset(union), "sparse" if color == "red" else "dense"))
            for local_idx in grouping.leftover:
                exceptional |= clusters[isolated[local_idx]]
    return pieces, exceptional, k, max_pieces


def sparse_dense_partition(g: Graph, pattern: PatternGraph | str, epsilon,
                           params: PipelineParams | None = None) -> PipelineResult:
    """Equitable partition with every class sparse- or dense-certified.

    Order-2 patterns scoop the graph (edge pattern) or its complement
    (non-edge pattern) directly. Larger patterns drop a fixed vertex,
    classify clusters by induced counts of the rest, recurse on the
    low-count clusters, and assemble the isolated ones into
    monochromatic groups of b clusters (sparse or dense pairs only)
    before scooping each group or its complement.
    """
    if isinstance(pattern, str):
        from .patterns import named_pattern

        pattern = named_pattern(pattern)
    eps = as_fraction(epsilon)
    if pattern.r < 2:
        raise PipelineError("pattern must have at least 2 vertices")
    params = params or PipelineParams(epsilon=eps, r=pattern.r, mode="sparse_or_dense")
    reasons: list[str] = []
    diag: dict = {}
    pieces, exceptional, k, l_emp = _sd_pieces(
        g, list(range(g.n)), pattern, eps, params, reasons, diag
    )
    return _assemble(g, pieces, eps, params, reasons, k, l_emp, exceptional, diag)


# -- refinement of mixed partitions ------------------------------------------


def refine_mixed_partition(g: Graph, partition: Partition, r: int, epsilon,
                           params: PipelineParams | None = None) -> PipelineResult:
    """Refine a delta-uniform partition whose classes have few r-cliques
    in the class or its complement into a sparse/dense certified one.

    Per class, the side (graph or complement) satisfying the few-cliques
    condition is decomposed into sparse pieces and scooped to a common
    size; precondition violations are reported per class, the offending
    class falling back to its thinner side.
    """
    eps = as_fraction(epsilon)
    params = params or PipelineParams(epsilon=eps, r=r)
    if r < 2:
        raise PipelineError(f"r must be >= 2, got {r}")
    partition.validate(require_cover=True)
    if partition.q < 1:
        raise PipelineError("input partition has no classes")
    reasons: list[str] = []
    diag: dict = {}
    delta_report = check_partition(
        g, partition, params.uniformity(seed=_derive_seed(params.seed, 3))
    )
    if not delta_report.passed:
        reasons.append(
            f"input partition not delta-uniform: {delta_report.bad_pair_count} bad pairs"
        )
    rho = _xi_threshold(params, eps, r)
    comp = complement(g)
    oriented_pieces: list[tuple[frozenset[int], str]] = []
    exceptional: set[int] = set(partition.exceptional)
    l_emp = 1
    class_checks = []
    for ci, cls in enumerate(partition.classes):
        sub, _ = induced_subgraph(g, cls)
        k_sparse = count_cliques(sub, r) if r <= sub.n else 0
        k_dense = count_cliques(complement(sub), r) if r <= sub.n else 0
        sparse_ok = _count_at_most(k_sparse, rho, len(cls), r)
        dense_ok = _count_at_most(k_dense, rho, len(cls), r)
        if sparse_ok:
            orient = "sparse"
        elif dense_ok:
            orient = "dense"
        else:
            orient = "sparse" if k_sparse <= k_dense else "dense"
            reasons.append(
                f"class {ci} violates the few-cliques precondition on both sides "
                f"(k_r={k_sparse}, complement {k_dense}); refining the thinner side"
            )
        class_checks.append({"class": ci, "k_r": k_sparse, "k_r_complement": k_dense,
                             "orientation": orient})
        work = g if orient == "sparse" else comp
        sub_pieces, sub_exc, _, m_i = _sparse_pieces(
            work, sorted(cls), r, eps, params, reasons, diag, level=ci + 1
        )
        oriented_pieces.extend((p, orient) for p in sub_pieces)
        exceptional |= sub_exc
        l_emp = max(l_emp, m_i, len(sub_pieces))
    diag["class_checks"] = class_checks
    result = _assemble(g, oriented_pieces, eps, params, reasons, partition.q,
                       l_emp, exceptional, diag)
    report = check_partition(
        g, result.partition, params.uniformity(epsilon=eps, seed=_derive_seed(params.seed, 17))
    ) if result.partition.q else None
    status = result.status
    reasons = list(result.reasons)
    if result.partition.q < partition.q:
        status = "incomplete"
        reasons.append(f"q = {result.partition.q} < input q = {partition.q}")
    if report is not None and not report.passed:
        status = "incomplete"
        reasons.append(
            f"bad pair count {report.bad_pair_count} exceeds eps*q^2"
        )
    return replace(result, status=status, reasons=reasons, report=report)
