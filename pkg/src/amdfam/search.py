"""Exhaustive backtracking search for families with prescribed parameters.

The search places elements set by set in canonical group order, keeps every
partial difference count up to date, and cuts a branch as soon as a count
exceeds its target.  Once the counting identity holds, "no count above
lambda" at a complete leaf already forces every count to equal lambda, so
upper bounds are the only test the kernel needs; every solution is still
re-verified.

Symmetry reduction is by translation only: the first set contains 0 and
interchangeable sets (same size, same target) appear with increasing
minimum.  Solutions equal up to translation are merged afterwards.

Work can be split at a prefix depth and spread over processes.  Node stamps
are reassembled into the order a single-process run would produce, so node
counts and the reported first solution never depend on the job count.
"""

from __future__ import annotations

import hashlib
import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from . import families, kernel
from .diffcore import SetFamily
from .errors import IdentityError, InternalConsistencyError, ParameterError, WrongTypeError
from .group import FiniteAbelianGroup, abelian_groups, as_group, parse_group

log = logging.getLogger(__name__)

MODES = ("first", "all", "count")
FOUND = "found"
EXHAUSTED = "exhausted-no-solution"
BUDGET_EXHAUSTED = "budget-exhausted"


@dataclass(frozen=True)
class SearchSpec:
    group: FiniteAbelianGroup
    family_type: str
    sizes: tuple[int, ...]
    lambdas: tuple[int, ...]
    classes: tuple[tuple[int, int], ...] = ()
    mode: str = "first"
    node_budget: int | None = None
    time_budget: float | None = None
    jobs: int = 1
    split_depth: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "group", as_group(self.group))
        object.__setattr__(self, "family_type", families.normalize_type(self.family_type))
        if self.mode not in MODES:
            raise ParameterError(f"mode must be one of {', '.join(MODES)}, got {self.mode!r}")
        if self.node_budget is not None and self.node_budget < 0:
            raise ParameterError("node budget must be nonnegative")
        if self.jobs < 1:
            raise ParameterError("jobs must be >= 1")

    @classmethod
    def make(cls, group, family_type, sizes=None, lambdas=None, m=None, k=None, lam=None, classes=None, **kw) -> "SearchSpec":
        G = as_group(group)
        p = families.make_parameters(family_type, G.size, sizes=sizes, lambdas=lambdas, m=m, k=k, lam=lam, classes=classes)
        if p.family_type == "PEDF" and not classes:
            # sets must come grouped by class for the kernel's channels
            sizes = tuple(kk for c, kk in p.classes for _ in range(c))
            p = families.FamilyParameters("PEDF", p.n, sizes, p.lambdas, p.classes)
        return cls(G, p.family_type, p.sizes, p.lambdas, p.classes, **kw)

    @classmethod
    def from_json(cls, obj: dict, **overrides) -> "SearchSpec":
        kw = {
            key: obj[key]
            for key in ("mode", "node_budget", "time_budget", "jobs", "split_depth")
            if obj.get(key) is not None
        }
        kw.update({k: v for k, v in overrides.items() if v is not None})
        G = as_group(parse_group(obj["group"]))
        if "n" in obj and int(obj["n"]) != G.size:
            raise ParameterError(f"n = {obj['n']} but the group has order {G.size}")
        lam = obj.get("lambda", obj.get("lam"))
        lambdas = obj.get("lambdas")
        return cls.make(
            G, obj["type"], sizes=obj.get("sizes"), lambdas=lambdas, m=obj.get("m"), k=obj.get("k"),
            lam=lam, classes=obj.get("classes"), **kw,
        )

    @property
    def parameters(self) -> families.FamilyParameters:
        return families.FamilyParameters(self.family_type, self.group.size, self.sizes, self.lambdas, self.classes)

    def to_json(self) -> dict:
        """The part of the spec that determines the search tree."""
        out = {
            "group": self.group.to_json(),
            "type": self.family_type,
            "sizes": list(self.sizes),
            "lambdas": list(self.lambdas),
            "mode": self.mode,
            "node_budget": self.node_budget,
        }
        if self.classes:
            out["classes"] = [list(c) for c in self.classes]
        return out

    def digest(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


@dataclass
class Solution:
    stamp: int
    family: SetFamily

    def to_json(self) -> dict:
        return {"node": self.stamp, "sets": [[list(x) for x in s] for s in self.family.sets]}


@dataclass
class SearchCertificate:
    spec: SearchSpec
    outcome: str
    nodes: int
    pruned: int
    solutions: list[Solution] = field(default_factory=list)
    solution_count: int = 0
    reason: str | None = None
    backend: str = kernel.BACKEND
    elapsed: float = 0.0

    @property
    def found(self) -> bool:
        return self.outcome == FOUND

    def to_json(self) -> dict:
        """Deterministic content only (no timings, no backend name)."""
        out = {
            "spec": self.spec.to_json(),
            "spec_hash": self.spec.digest(),
            "outcome": self.outcome,
            "nodes_explored": self.nodes,
            "pruning": {"count_overflow": self.pruned},
            "solution_count": self.solution_count,
        }
        if self.spec.mode != "count":
            out["solutions"] = [s.to_json() for s in self.solutions]
        if self.reason:
            out["reason"] = self.reason
        return out


# ---------------------------------------------------------------------------
# Spec -> kernel arguments
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Plan:
    n: int
    sub: tuple[int, ...]
    sizes: tuple[int, ...]
    chan: tuple[int, ...]
    bound: tuple[int, ...]
    internal: int
    disjoint: int
    tie: tuple[int, ...]
    zero_first: tuple[int, ...]

    def args(self):
        return (self.n, self.sub, self.sizes, self.chan, self.bound, self.internal, self.disjoint, self.tie, self.zero_first)


def _plan(spec: SearchSpec) -> _Plan:
    G, t = spec.group, spec.family_type
    n, sizes, lams = G.size, spec.sizes, spec.lambdas
    m = len(sizes)
    sub = tuple(v for row in G.sub_table for v in row)
    if t == "DS":
        return _Plan(n, sub, sizes, (0,), (lams[0],), 1, 1, (0,), (1,))
    if t == "DF":
        tie = tuple(int(i > 0 and sizes[i] == sizes[i - 1]) for i in range(m))
        return _Plan(n, sub, sizes, (0,) * m, (lams[0],), 1, 0, tie, (1,) * m)
    if t in ("EDF", "GEDF", "BEDF"):
        chan, bound = (0,) * m, (lams[0],)
    elif t in ("SEDF",):
        chan, bound = tuple(range(m)), (lams[0],) * m
    elif t in ("GSEDF", "BGSEDF"):
        # a bound on incoming differences of A_j is the same bound on its outgoing ones
        chan, bound = tuple(range(m)), tuple(lams)
    elif t == "PEDF":
        chan_of = {}
        for h, (c, kk) in enumerate(spec.classes):
            chan_of[kk] = h
        chan, bound = tuple(chan_of[kk] for kk in sizes), tuple(lams)
    else:  # pragma: no cover
        raise WrongTypeError(t)
    tie = tuple(
        int(i > 0 and sizes[i] == sizes[i - 1] and bound[chan[i]] == bound[chan[i - 1]]
            and (chan[i] == chan[i - 1] or chan == tuple(range(m))))
        for i in range(m)
    )
    return _Plan(n, sub, sizes, chan, bound, 0, 1, tie, (1,) + (0,) * (m - 1))


def _check_spec(spec: SearchSpec) -> None:
    p = spec.parameters
    if p.family_type in ("EDF", "SEDF", "BEDF", "DS") and len(p.sizes) < (1 if p.family_type == "DS" else 2):
        raise ParameterError(f"a {p.family_type} needs at least two sets")
    if p.family_type == "DS" and len(p.sizes) != 1:
        raise ParameterError("a difference set is a single set")
    if p.family_type not in ("DS", "DF") and len(p.sizes) < 2:
        raise ParameterError(f"a {p.family_type} needs at least two sets")
    if any(k < 1 for k in p.sizes):
        raise ParameterError("set sizes must be positive")
    if any(x < 0 for x in p.lambdas):
        raise ParameterError("lambdas must be nonnegative")
    chk = families.check_parameter_identity(p)
    if not chk:
        bad = chk.failures[0]
        raise IdentityError(
            f"{p} violates {bad['identity']}: {bad['lhs']} {bad['relation']} {bad['rhs']} is false"
        )


# ---------------------------------------------------------------------------
# Canonical forms and verification
# ---------------------------------------------------------------------------


def _family_of(spec: SearchSpec, flat: Sequence[int]) -> SetFamily:
    G = spec.group
    out, pos = [], 0
    for k in spec.sizes:
        out.append([G.element(x) for x in flat[pos : pos + k]])
        pos += k
    return SetFamily.of(G, out, allow_overlap=spec.family_type == "DF")


def _runs(plan: _Plan) -> list[tuple[int, int]]:
    """Maximal index ranges of interchangeable sets."""
    runs, i, m = [], 0, len(plan.sizes)
    while i < m:
        j = i + 1
        while j < m and (plan.tie[j] or (plan.internal and plan.sizes[j] == plan.sizes[i])):
            j += 1
        runs.append((i, j))
        i = j
    return runs


def canonical_key(spec: SearchSpec, flat: Sequence[int], plan: _Plan | None = None) -> tuple:
    """Smallest representative of a solution's translation class.

    Difference families are translated block by block; every external type
    is translated as a whole.  Interchangeable sets are sorted within their
    run.
    """
    plan = plan or _plan(spec)
    G = spec.group
    sub, neg = G.sub_table, G.neg_table
    add = [[sub[x][neg[t]] for x in range(G.size)] for t in range(G.size)]
    sets, pos = [], 0
    for k in spec.sizes:
        sets.append(list(flat[pos : pos + k]))
        pos += k
    runs = _runs(plan)
    if plan.internal:
        blocks = [min(tuple(sorted(add[t][x] for x in s)) for t in range(G.size)) for s in sets]
        return tuple(tuple(sorted(blocks[a:b])) for a, b in runs)
    best = None
    for t in range(G.size):
        moved = [tuple(sorted(add[t][x] for x in s)) for s in sets]
        key = tuple(tuple(sorted(moved[a:b])) for a, b in runs)
        if best is None or key < best:
            best = key
    return best


def _verify(spec: SearchSpec, F: SetFamily) -> families.VerificationReport:
    t = spec.family_type
    if t == "DS":
        return families.verify_ds(F.group, F.sets[0])
    if t == "BEDF":
        return families.verify_bedf(F.group, F, spec.lambdas[0])
    if t == "BGSEDF":
        return families.verify_bgsedf(F.group, F, spec.lambdas)
    if t == "PEDF":
        return families.verify_pedf(F.group, F, spec.classes)
    return families.verify(t, F.group, F)


def _accept(spec: SearchSpec, F: SetFamily) -> None:
    rep = _verify(spec, F)
    if not rep:
        raise InternalConsistencyError(f"search produced {F} which fails verification: {rep.counterexample}")
    if spec.family_type not in ("BEDF", "BGSEDF") and tuple(rep.parameters.lambdas) != tuple(spec.lambdas):
        raise InternalConsistencyError(f"search produced {rep.parameters}, wanted lambdas {spec.lambdas}")


# ---------------------------------------------------------------------------
# Running the kernel
# ---------------------------------------------------------------------------


def _run_subtree(args):
    """Worker entry point: (plan args, find_all, budget, prefix, backend)."""
    plan_args, find_all, budget, prefix, backend = args
    fn = kernel.BACKENDS.get(backend, kernel.search)
    return fn(*plan_args, find_all, budget, 0, prefix)


def _default_split(plan: _Plan) -> int:
    total = sum(plan.sizes)
    return max(1, min(total - 1, 3))


def _raw_search(spec: SearchSpec, plan: _Plan, backend: str):
    """Run the kernel, possibly split; return (status, nodes, pruned, [(stamp, flat)], reason)."""
    fn = kernel.BACKENDS[backend]
    find_all = spec.mode != "first"
    budget = -1 if spec.node_budget is None else spec.node_budget
    total = sum(plan.sizes)

    def sequential(b=budget):
        st, nodes, pruned, sols, _ = fn(*plan.args(), find_all, b, 0, [])
        return st, nodes, pruned, sols, None

    if not (spec.jobs > 1 or spec.time_budget is not None) or total < 2:
        return sequential()

    t0 = time.monotonic()
    depth = max(1, min(spec.split_depth or _default_split(plan), total - 1))
    st, enum_nodes, pruned, _, prefixes = fn(*plan.args(), find_all, budget, depth, [])
    if st == kernel.BUDGET:
        return sequential()
    tasks = [
        (plan.args(), find_all, -1 if budget < 0 else budget - stamp, pre, backend) for stamp, pre in prefixes
    ]
    results = []
    reason = None
    if spec.jobs > 1 and len(tasks) > 1:
        ex = ProcessPoolExecutor(max_workers=spec.jobs)
        it = ex.map(_run_subtree, tasks, chunksize=max(1, len(tasks) // (8 * spec.jobs)))
    else:
        ex, it = None, map(_run_subtree, tasks)
    try:
        for res in it:
            results.append(res)
            if not find_all and res[3]:
                break
            if spec.time_budget is not None and time.monotonic() - t0 > spec.time_budget:
                reason = "time"
                break
    finally:
        if ex is not None:
            ex.shutdown(wait=True, cancel_futures=True)

    # A subtree node's sequential stamp is its prefix's enumeration stamp,
    # plus every node of the earlier subtrees, plus its local stamp.
    offset, sols = 0, []
    for (stamp, _), (sst, snodes, spruned, ssols, _) in zip(prefixes, results):
        if sst != kernel.DONE:
            # stopped early: only a sequential run knows the exact stop point
            return sequential()
        sols.extend((stamp + offset + local, flat) for local, flat in ssols)
        offset += snodes
        pruned += spruned
    nodes = enum_nodes + offset
    if reason is not None and len(results) < len(prefixes):
        return kernel.BUDGET, nodes, pruned, sols, reason
    if budget >= 0 and nodes > budget:
        return sequential()
    return kernel.DONE, nodes, pruned, sols, None


def search_family(spec: SearchSpec, backend: str | None = None) -> SearchCertificate:
    """Search for families matching ``spec``; every hit is re-verified."""
    _check_spec(spec)
    plan = _plan(spec)
    backend = backend or kernel.BACKEND
    if backend not in kernel.BACKENDS:
        raise ParameterError(f"kernel backend {backend!r} is not available")
    t0 = time.monotonic()
    status, nodes, pruned, raw, reason = _raw_search(spec, plan, backend)
    seen = set()
    sols = []
    for stamp, flat in sorted(raw):
        key = canonical_key(spec, flat, plan)
        if key in seen:
            continue
        seen.add(key)
        F = _family_of(spec, flat)
        _accept(spec, F)
        sols.append(Solution(stamp, F))
    if status == kernel.BUDGET:
        outcome = BUDGET_EXHAUSTED
        reason = reason or "nodes"
    elif sols:
        outcome = FOUND
    else:
        outcome = EXHAUSTED
    cert = SearchCertificate(
        spec, outcome, nodes, pruned, sols if spec.mode != "count" else [], len(sols), reason, backend,
        time.monotonic() - t0,
    )
    if outcome == BUDGET_EXHAUSTED and sols:
        cert.reason = f"{cert.reason}; partial: {len(sols)} solution(s) before the budget ran out"
    return cert


def certify_nonexistence(spec: SearchSpec, backend: str | None = None) -> SearchCertificate:
    """Exhaust the canonical search tree; ``found`` means the certificate failed."""
    if spec.mode == "first":
        return search_family(spec, backend)
    return search_family(
        SearchSpec(spec.group, spec.family_type, spec.sizes, spec.lambdas, spec.classes, "first",
                   spec.node_budget, spec.time_budget, spec.jobs, spec.split_depth),
        backend,
    )


# ---------------------------------------------------------------------------
# SEDF sweep
# ---------------------------------------------------------------------------


@dataclass
class SweepRow:
    n: int
    m: int
    k: int
    lam: int
    group: str
    outcome: str
    nodes: int

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "k": self.k, "lambda": self.lam, "group": self.group,
                "outcome": self.outcome, "nodes_explored": self.nodes}


@dataclass
class SweepReport:
    n_max: int
    rows: list[SweepRow]
    excluded: list[dict]

    def to_json(self) -> dict:
        return {"n_max": self.n_max, "rows": [r.to_json() for r in self.rows], "excluded": self.excluded}

    def format_table(self) -> str:
        head = f"{'n':>3} {'m':>3} {'k':>3} {'lam':>4}  {'group':<14} {'outcome':<22} nodes"
        lines = [head, "-" * len(head)]
        for r in self.rows:
            lines.append(f"{r.n:>3} {r.m:>3} {r.k:>3} {r.lam:>4}  {r.group:<14} {r.outcome:<22} {r.nodes}")
        return "\n".join(lines)


def sedf_candidates(n_max: int, n_min: int = 2):
    """(n, m, k, lambda) with m > 2, k > 1, mk <= n and lambda(n-1) = k^2(m-1).

    Also returns the tuples rejected only because lambda is not integral.
    """
    ok, bad = [], []
    for n in range(max(2, n_min), n_max + 1):
        for k in range(2, n // 3 + 1):
            for m in range(3, n // k + 1):
                num = k * k * (m - 1)
                if num % (n - 1):
                    bad.append({"n": n, "m": m, "k": k, "reason": f"k^2(m-1) = {num} not divisible by n-1 = {n - 1}"})
                else:
                    ok.append((n, m, k, num // (n - 1)))
    return ok, bad


def sweep_sedf_open_problem(n_max: int, node_budget: int | None = 2_000_000, jobs: int = 1,
                            n_min: int = 2, backend: str | None = None) -> SweepReport:
    """Run the search on every feasible SEDF tuple with m > 2, k > 1 over every abelian group.

    A ``found`` row with lambda = 1 would contradict a proven theorem and
    raises :class:`InternalConsistencyError`.  Rows with lambda > 1 are
    desk-scale data only.
    """
    ok, bad = sedf_candidates(n_max, n_min)
    for b in bad:
        log.info("sweep: excluded (%d,%d,%d): %s", b["n"], b["m"], b["k"], b["reason"])
    rows = []
    for n, m, k, lam in ok:
        for G in abelian_groups(n):
            spec = SearchSpec.make(G, "SEDF", m=m, k=k, lam=lam, node_budget=node_budget, jobs=jobs)
            cert = certify_nonexistence(spec, backend)
            if cert.found and lam == 1:
                raise InternalConsistencyError(f"found a ({n},{m},{k},1)-SEDF over {G}: {cert.solutions[0].family}")
            rows.append(SweepRow(n, m, k, lam, str(G), cert.outcome, cert.nodes))
    return SweepReport(n_max, rows, bad)
