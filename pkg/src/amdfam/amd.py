"""AMD codes over finite abelian groups and exact evaluation of the weak and
strong adversary games.

Sources are equiprobable throughout.  The optimum over randomized strategies
is found by enumerating deterministic offsets: the success probability of a
strategy is an affine function of its distribution over offsets, so its
maximum is attained at a point mass.  :func:`eval_strategy` exists so that
this can be property-tested rather than assumed.

All probabilities are :class:`fractions.Fraction`; nothing on the evaluation
path touches floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from . import families
from .diffcore import SetFamily
from .errors import (
    CodeError,
    ElementDomainError,
    InternalConsistencyError,
    PreconditionError,
    WrongTypeError,
    ZeroDeltaError,
)
from .group import Element, FiniteAbelianGroup, as_group, parse_group


def fraction_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(s) -> Fraction:
    if isinstance(s, bool):
        raise CodeError(f"not a probability: {s!r}")
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    if isinstance(s, str):
        try:
            return Fraction(s.strip())
        except ValueError:
            pass
    raise CodeError(f"probabilities must be exact 'num/den' strings, got {s!r}")


@dataclass(frozen=True)
class AmdCode:
    """Sources, their disjoint sets of valid encodings, and the encoding law.

    ``probs[i][j]`` is Pr[E(s_i) = valid_sets[i][j]]; every entry is positive
    and each row sums to exactly 1, so A(s) is the support of E(s).
    """

    group: FiniteAbelianGroup
    sources: tuple[str, ...]
    valid_sets: tuple[tuple[Element, ...], ...]
    probs: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        G = as_group(self.group)
        object.__setattr__(self, "group", G)
        if G.size < 2:  # pragma: no cover - groups already reject this
            raise CodeError("the group needs a nonzero element")
        if not self.sources:
            raise CodeError("a code needs at least one source")
        if not (len(self.sources) == len(self.valid_sets) == len(self.probs)):
            raise CodeError("sources, valid sets and probabilities must align")
        if len(set(self.sources)) != len(self.sources):
            raise CodeError("source names must be distinct")
        sets, probs, seen = [], [], {}
        for name, A, P in zip(self.sources, self.valid_sets, self.probs):
            A = tuple(G.coerce(x) for x in A)
            P = tuple(parse_fraction(p) for p in P)
            if not A:
                raise CodeError(f"source {name!r} has no valid encoding")
            if len(A) != len(P):
                raise CodeError(f"source {name!r}: {len(A)} encodings but {len(P)} probabilities")
            if len(set(A)) != len(A):
                raise CodeError(f"source {name!r} lists an encoding twice")
            for g, p in zip(A, P):
                if p <= 0:
                    raise CodeError(f"source {name!r}: Pr[E(s)={list(g)}] = {p} must be positive")
                if g in seen:
                    raise CodeError(f"encoding {list(g)} is valid for both {seen[g]!r} and {name!r}")
                seen[g] = name
            if sum(P) != 1:
                raise CodeError(f"source {name!r}: probabilities sum to {sum(P)}, not 1")
            sets.append(A)
            probs.append(P)
        object.__setattr__(self, "sources", tuple(str(s) for s in self.sources))
        object.__setattr__(self, "valid_sets", tuple(sets))
        object.__setattr__(self, "probs", tuple(probs))

    # -- construction ---------------------------------------------------------

    @classmethod
    def build(cls, group, sets: Iterable[Iterable], probs=None, names=None) -> "AmdCode":
        """Equiprobable encoding unless ``probs`` is given."""
        G = as_group(group)
        sets = [tuple(s) for s in sets]
        if names is None:
            names = [f"s{i}" for i in range(1, len(sets) + 1)]
        if probs is None:
            probs = [[Fraction(1, len(s))] * len(s) for s in sets]
        return cls(G, tuple(names), tuple(sets), tuple(tuple(p) for p in probs))

    @classmethod
    def from_family(cls, F: SetFamily, names=None) -> "AmdCode":
        return cls.build(F.group, F.sets, names=names)

    @classmethod
    def from_json(cls, obj: Mapping) -> "AmdCode":
        G = as_group(parse_group(obj["group"]))
        names, sets, probs = [], [], []
        for i, src in enumerate(obj["sources"], start=1):
            names.append(str(src.get("name", f"s{i}")))
            A = [G.coerce(x) for x in src["set"]]
            sets.append(A)
            if "probs" in src and src["probs"] is not None:
                probs.append([parse_fraction(p) for p in src["probs"]])
            else:
                probs.append([Fraction(1, len(A))] * len(A))
        return cls(G, tuple(names), tuple(tuple(s) for s in sets), tuple(tuple(p) for p in probs))

    def to_json(self) -> dict:
        return {
            "group": self.group.to_json(),
            "sources": [
                {"name": s, "set": [list(g) for g in A], "probs": [fraction_str(p) for p in P]}
                for s, A, P in zip(self.sources, self.valid_sets, self.probs)
            ],
        }

    # -- derived quantities ---------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.sources)

    @property
    def n(self) -> int:
        return self.group.size

    @property
    def set_sizes(self) -> tuple[int, ...]:
        return tuple(len(A) for A in self.valid_sets)

    @property
    def a(self) -> int:
        return sum(self.set_sizes)

    @cached_property
    def support(self) -> frozenset:
        return frozenset(g for A in self.valid_sets for g in A)

    @property
    def is_uniform(self) -> bool:
        return len(set(self.set_sizes)) == 1

    @property
    def k(self) -> int | None:
        return self.set_sizes[0] if self.is_uniform else None

    @property
    def equiprobable_encoding(self) -> bool:
        return all(p == Fraction(1, len(P)) for P in self.probs for p in P)

    @property
    def is_regular(self) -> bool:
        """k-uniform with equiprobable encoding (sources are always equiprobable)."""
        return self.is_uniform and self.equiprobable_encoding

    @property
    def is_deterministic(self) -> bool:
        return self.is_regular and self.k == 1

    @property
    def is_degenerate(self) -> bool:
        return self.m == 1

    def source_index(self, s) -> int:
        if isinstance(s, int) and not isinstance(s, bool):
            if not 0 <= s < self.m:
                raise CodeError(f"source index {s} out of range 0..{self.m - 1}")
            return s
        try:
            return self.sources.index(str(s))
        except ValueError:
            raise CodeError(f"unknown source {s!r}") from None

    def encoding_prob(self, s, g) -> Fraction:
        i = self.source_index(s)
        g = self.group.coerce(g)
        for x, p in zip(self.valid_sets[i], self.probs[i]):
            if x == g:
                return p
        return Fraction(0)

    # -- index-level tables used by the evaluators -----------------------------

    @cached_property
    def _owner(self) -> list[int]:
        G = self.group
        own = [-1] * G.size
        for i, A in enumerate(self.valid_sets):
            for g in A:
                own[G.index(g)] = i
        return own

    @cached_property
    def _scale(self) -> int:
        """Common denominator of all encoding probabilities."""
        return math.lcm(*(p.denominator for P in self.probs for p in P))

    @cached_property
    def _weights(self) -> list[tuple[int, int, int]]:
        """(element index, source index, Pr[E(s)=g] * scale) for g in G0."""
        G, D = self.group, self._scale
        out = []
        for i, (A, P) in enumerate(zip(self.valid_sets, self.probs)):
            for g, p in zip(A, P):
                out.append((G.index(g), i, p.numerator * (D // p.denominator)))
        return out

    @cached_property
    def _strong_numerators(self) -> list[list[int]]:
        """num[i][d]: scaled Pr[E(s_i) in Good(delta, s_i)] for delta index d."""
        G = self.group
        n, sub, neg, own = G.size, G.sub_table, G.neg_table, self._owner
        num = [[0] * n for _ in range(self.m)]
        for gi, si, w in self._weights:
            row = sub[gi]
            acc = num[si]
            for d in range(1, n):
                o = own[row[neg[d]]]  # owner of g + delta
                if o >= 0 and o != si:
                    acc[d] += w
        return num


def code_from_json(obj) -> AmdCode:
    return AmdCode.from_json(obj)


# ---------------------------------------------------------------------------
# Induced distribution and Good sets
# ---------------------------------------------------------------------------


def induced_message_distribution(code: AmdCode) -> dict:
    """Pr[g] = Pr[E(s) = g] / m on G0 (equiprobable sources)."""
    out = {}
    for A, P in zip(code.valid_sets, code.probs):
        for g, p in zip(A, P):
            out[g] = p / code.m
    return dict(sorted(out.items()))


def _delta(code: AmdCode, delta) -> Element:
    d = code.group.coerce(delta)
    if d == code.group.zero:
        raise ZeroDeltaError("the offset must be nonzero")
    return d


def good_set(code: AmdCode, delta, s=None) -> list[Element]:
    """Encodings g from which g + delta lands in the set of a different source.

    With ``s`` given, only encodings of that source (Good(delta, s)).
    """
    G = code.group
    d = _delta(code, delta)
    only = None if s is None else code.source_index(s)
    own = code._owner
    out = []
    for i, A in enumerate(code.valid_sets):
        if only is not None and i != only:
            continue
        for g in A:
            o = own[G.index(G.add(g, d))]
            if o >= 0 and o != i:
                out.append(g)
    return sorted(out)


def eval_weak_delta(code: AmdCode, delta) -> Fraction:
    d = code.group.index(_delta(code, delta))
    return Fraction(sum(num[d] for num in code._strong_numerators), code._scale * code.m)


def eval_strong_delta(code: AmdCode, s, delta) -> Fraction:
    d = code.group.index(_delta(code, delta))
    return Fraction(code._strong_numerators[code.source_index(s)][d], code._scale)


# ---------------------------------------------------------------------------
# Bounds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WeakBounds:
    rand: Fraction  # a(m-1) / (m(n-1))
    guess: Fraction  # 1/a
    product: Fraction  # lower bound on eps^2: (m-1) / (m(n-1))
    uniform: Fraction | None  # k(m-1)/(n-1) for k-uniform codes
    sources_only: Fraction  # (m-1)/(n-1)

    def to_json(self) -> dict:
        return {
            "rand": fraction_str(self.rand),
            "guess": fraction_str(self.guess),
            "product": fraction_str(self.product),
            "uniform": None if self.uniform is None else fraction_str(self.uniform),
            "sources_only": fraction_str(self.sources_only),
        }


def weak_bounds(code: AmdCode) -> WeakBounds:
    m, n, a = code.m, code.n, code.a
    return WeakBounds(
        rand=Fraction(a * (m - 1), m * (n - 1)),
        guess=Fraction(1, a),
        product=Fraction(m - 1, m * (n - 1)),
        uniform=Fraction(code.k * (m - 1), n - 1) if code.is_uniform else None,
        sources_only=Fraction(m - 1, n - 1),
    )


@dataclass(frozen=True)
class StrongBounds:
    rand: tuple[Fraction, ...]  # per source (a - a_s)/(n-1)
    guess: tuple[Fraction, ...]  # per source 1/a_s
    global_rand: Fraction  # (a - min a_s)/(n-1)
    global_guess: Fraction  # 1/min a_s
    product: Fraction | None  # (m-1)/(n-1), k-uniform codes only

    def to_json(self) -> dict:
        return {
            "rand": [fraction_str(x) for x in self.rand],
            "guess": [fraction_str(x) for x in self.guess],
            "global_rand": fraction_str(self.global_rand),
            "global_guess": fraction_str(self.global_guess),
            "product": None if self.product is None else fraction_str(self.product),
        }


def strong_bounds(code: AmdCode) -> StrongBounds:
    n, a, sizes = code.n, code.a, code.set_sizes
    amin = min(sizes)
    return StrongBounds(
        rand=tuple(Fraction(a - k, n - 1) for k in sizes),
        guess=tuple(Fraction(1, k) for k in sizes),
        global_rand=Fraction(a - amin, n - 1),
        global_guess=Fraction(1, amin),
        product=Fraction(code.m - 1, n - 1) if code.is_uniform else None,
    )


# ---------------------------------------------------------------------------
# Game evaluation
# ---------------------------------------------------------------------------


@dataclass
class GameEvaluation:
    mode: str
    optimum: Fraction
    values: dict  # weak: delta -> eps; strong: source name -> {delta -> eps}
    argmax: list  # weak: deltas; strong: source names attaining the optimum
    source_optima: dict = field(default_factory=dict)  # strong: name -> eps_s
    source_argmax: dict = field(default_factory=dict)  # strong: name -> deltas
    bounds: WeakBounds | StrongBounds | None = None
    flags: dict = field(default_factory=dict)

    def to_json(self, full_table: bool = False) -> dict:
        out: dict = {"mode": self.mode, "optimum": fraction_str(self.optimum)}
        if self.mode == "weak":
            out["argmax"] = [list(d) for d in self.argmax]
            if full_table:
                out["table"] = [[list(d), fraction_str(v)] for d, v in self.values.items()]
        else:
            out["argmax_sources"] = list(self.argmax)
            out["source_optima"] = {s: fraction_str(v) for s, v in self.source_optima.items()}
            out["source_argmax"] = {s: [list(d) for d in ds] for s, ds in self.source_argmax.items()}
            if full_table:
                out["table"] = {
                    s: [[list(d), fraction_str(v)] for d, v in row.items()] for s, row in self.values.items()
                }
        if self.bounds is not None:
            out["bounds"] = self.bounds.to_json()
        if self.flags:
            out["flags"] = dict(self.flags)
        return out


def weak_values(code: AmdCode) -> dict:
    G = code.group
    den = code._scale * code.m
    nums = code._strong_numerators
    return {G.element(d): Fraction(sum(row[d] for row in nums), den) for d in range(1, G.size)}


def strong_values(code: AmdCode) -> list[dict]:
    G, D = code.group, code._scale
    return [{G.element(d): Fraction(row[d], D) for d in range(1, G.size)} for row in code._strong_numerators]


def eval_weak_optimum(code: AmdCode) -> GameEvaluation:
    vals = weak_values(code)
    best = max(vals.values())
    b = weak_bounds(code)
    flags = {"R_optimal": best == b.rand, "G_optimal": best == b.guess, "degenerate": code.is_degenerate}
    return GameEvaluation("weak", best, vals, [d for d, v in vals.items() if v == best], bounds=b, flags=flags)


def eval_strong_optimum(code: AmdCode) -> GameEvaluation:
    rows = strong_values(code)
    names = code.sources
    opt = {s: max(row.values()) for s, row in zip(names, rows)}
    arg = {s: [d for d, v in row.items() if v == opt[s]] for s, row in zip(names, rows)}
    best = max(opt.values())
    b = strong_bounds(code)
    flags = {
        "R_optimal": all(opt[s] == r for s, r in zip(names, b.rand)),
        "G_optimal": all(opt[s] == g for s, g in zip(names, b.guess)),
        "degenerate": code.is_degenerate,
    }
    return GameEvaluation(
        "strong",
        best,
        dict(zip(names, rows)),
        [s for s in names if opt[s] == best],
        source_optima=opt,
        source_argmax=arg,
        bounds=b,
        flags=flags,
    )


# ---------------------------------------------------------------------------
# Strategies
# ---------------------------------------------------------------------------


def _check_dist(G: FiniteAbelianGroup, dist: Mapping) -> dict:
    out = {}
    for d, p in dist.items():
        d = G.coerce(d)
        if d == G.zero:
            raise ZeroDeltaError("a strategy cannot put mass on the zero offset")
        p = parse_fraction(p)
        if p < 0:
            raise CodeError(f"negative probability {p} on offset {list(d)}")
        out[d] = out.get(d, Fraction(0)) + p
    if sum(out.values()) != 1:
        raise CodeError(f"strategy probabilities sum to {sum(out.values())}, not 1")
    return out


@dataclass(frozen=True)
class WeakStrategy:
    dist: Mapping  # delta -> probability


@dataclass(frozen=True)
class StrongStrategy:
    dists: Mapping  # source name -> {delta -> probability}


def uniform_strategy(code: AmdCode) -> WeakStrategy:
    n = code.n
    return WeakStrategy({g: Fraction(1, n - 1) for g in code.group.nonzero()})


def eval_strategy(code: AmdCode, strategy: WeakStrategy | StrongStrategy):
    """Success probability of a randomized strategy.

    Weak strategies give one Fraction; strong strategies give a dict
    source name -> Fraction.
    """
    G = code.group
    nums = code._strong_numerators
    if isinstance(strategy, WeakStrategy):
        dist = _check_dist(G, strategy.dist)
        den = code._scale * code.m
        total = Fraction(0)
        for d, p in dist.items():
            di = G.index(d)
            total += p * Fraction(sum(row[di] for row in nums), den)
        return total
    out = {}
    for s, dist in strategy.dists.items():
        i = code.source_index(s)
        dist = _check_dist(G, dist)
        out[code.sources[i]] = sum(
            (p * Fraction(nums[i][G.index(d)], code._scale) for d, p in dist.items()), Fraction(0)
        )
    return out


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------


@dataclass
class Classification:
    weak_R: bool
    weak_G: bool
    strong_R: bool
    strong_G: bool
    weak: GameEvaluation
    strong: GameEvaluation

    def to_json(self) -> dict:
        return {
            "weak_R": self.weak_R,
            "weak_G": self.weak_G,
            "strong_R": self.strong_R,
            "strong_G": self.strong_G,
            "weak_optimum": fraction_str(self.weak.optimum),
            "strong_optimum": fraction_str(self.strong.optimum),
            "weak_bounds": self.weak.bounds.to_json(),
            "strong_bounds": self.strong.bounds.to_json(),
            "strong_source_optima": {s: fraction_str(v) for s, v in self.strong.source_optima.items()},
            "degenerate": self.weak.flags["degenerate"],
        }


def classify(code: AmdCode) -> Classification:
    """R/G optimality in both games.

    R-optimality is decided twice: by comparing the optimum with the rand
    bound, and by checking that every single offset achieves exactly that
    bound (the average of the offsets' values always equals it).  The two
    routes must agree.
    """
    weak = eval_weak_optimum(code)
    strong = eval_strong_optimum(code)
    wb, sb = weak.bounds, strong.bounds
    weak_R = weak.optimum == wb.rand
    if weak_R != all(v == wb.rand for v in weak.values.values()):
        raise InternalConsistencyError("weak R-optimality: optimum route and per-offset route disagree")
    strong_R = True
    for s, r in zip(code.sources, sb.rand):
        by_opt = strong.source_optima[s] == r
        if by_opt != all(v == r for v in strong.values[s].values()):
            raise InternalConsistencyError(f"strong R-optimality at {s!r}: routes disagree")
        strong_R &= by_opt
    weak_G = weak.optimum == wb.guess
    strong_G = all(strong.source_optima[s] == g for s, g in zip(code.sources, sb.guess))
    return Classification(weak_R, weak_G, strong_R, strong_G, weak, strong)


# ---------------------------------------------------------------------------
# Code <-> family translations
# ---------------------------------------------------------------------------

CODE_SOURCE_TYPES = ("DS", "EDF", "BEDF", "SEDF", "GEDF", "GSEDF", "BGSEDF", "PEDF")


def code_from_family(F: SetFamily, family_type: str, lam=None, lambdas=None, classes=None, names=None) -> AmdCode:
    """Equiprobable-encoding code with A(s_i) = A_i, after verifying F.

    A difference set becomes a deterministic code (one source per point).
    """
    t = families.normalize_type(family_type)
    if t not in CODE_SOURCE_TYPES:
        raise WrongTypeError(f"no code construction from a {t}")
    if t == "DS":
        rep = families.verify_ds(F.group, F)
        F = families.singleton_lift(F.group, F)
    else:
        if t == "BEDF" and lam is None:
            lam = 1
        if t == "BGSEDF" and lambdas is None:
            lambdas = [1] * F.m
        rep = families.verify(t, F.group, F, lam=lam, lambdas=lambdas, classes=classes)
    if not rep:
        raise WrongTypeError(f"family does not verify as {t}: {rep.counterexample}")
    return AmdCode.from_family(F, names=names)


def family_from_code(code: AmdCode, target_type: str) -> SetFamily:
    """Recover {A(s)} as a family of the target type when a converse theorem applies.

    EDF/PEDF: needs a k-regular weak R-optimal code.  BEDF: weak G-optimal.
    GSEDF: equiprobable encoding and strong R-optimal (SEDF additionally
    k-uniform).  BGSEDF: strong G-optimal.  The recovered family is verified before it is returned.
    """
    t = families.normalize_type(target_type)
    G = code.group
    F = SetFamily.of(G, code.valid_sets)
    n, m, a = code.n, code.m, code.a
    if m < 2:
        raise PreconditionError("code has a single source; no family to recover")
    if t in ("EDF", "PEDF"):
        if not code.is_uniform:
            raise PreconditionError(f"not k-regular: set sizes {list(code.set_sizes)} differ")
        if not code.equiprobable_encoding:
            raise PreconditionError("not k-regular: encoding is not equiprobable")
        if not classify(code).weak_R:
            raise PreconditionError("not R-optimal in the weak game")
        k = code.k
        rep = families.verify_edf(G, F) if t == "EDF" else families.verify_pedf(G, F, ((m, k),))
        expected = (Fraction(k * k * m * (m - 1), n - 1),)
    elif t == "BEDF":
        if not classify(code).weak_G:
            raise PreconditionError("not G-optimal in the weak game")
        if not code.is_regular:
            raise InternalConsistencyError("G-optimal weak code that is not k-regular")
        rep = families.verify_bedf(G, F, 1)
        expected = (1,)
    elif t in ("GSEDF", "SEDF"):
        if t == "SEDF" and not code.is_uniform:
            raise PreconditionError(f"not k-uniform: set sizes {list(code.set_sizes)} differ")
        if not code.equiprobable_encoding:
            raise PreconditionError("encoding is not equiprobable")
        if not classify(code).strong_R:
            raise PreconditionError("not R-optimal in the strong game")
        if t == "SEDF":
            rep = families.verify_sedf(G, F)
            expected = (Fraction(code.k * code.k * (m - 1), n - 1),)
        else:
            rep = families.verify_gsedf(G, F)
            expected = tuple(Fraction(k * (a - k), n - 1) for k in code.set_sizes)
    elif t == "BGSEDF":
        if not classify(code).strong_G:
            raise PreconditionError("not G-optimal in the strong game")
        rep = families.verify_bgsedf(G, F, [1] * m)
        expected = (1,) * m
    else:
        raise PreconditionError(f"no converse theorem recovers a {t} from a code")
    if not rep:
        raise InternalConsistencyError(f"hypotheses hold but family fails as {t}: {rep.counterexample}")
    if tuple(rep.parameters.lambdas) != expected:
        raise InternalConsistencyError(f"recovered {rep.parameters}, predicted lambdas {expected}")
    return F


# ---------------------------------------------------------------------------
# Simultaneous optimality
# ---------------------------------------------------------------------------


@dataclass
class SimultaneousReport:
    weak: dict
    strong: dict

    def to_json(self) -> dict:
        return {"weak": self.weak, "strong": self.strong}


def check_simultaneous_optimality(code: AmdCode) -> SimultaneousReport:
    """Cross-check the simultaneous R+G characterizations.

    Weak: a k-regular code is R- and G-optimal iff its sets form an
    (n,m,k,1)-EDF.  Strong: R+G with m >= 3 and optimum < 1 cannot happen,
    and a k-uniform code meeting eps^2 = (m-1)/(n-1) < 1 has m = 2,
    n = k^2 + 1.  A violation raises :class:`InternalConsistencyError`.
    """
    c = classify(code)
    n, m = code.n, code.m
    weak = {"k_regular": code.is_regular, "R": c.weak_R, "G": c.weak_G, "simultaneous": c.weak_R and c.weak_G}
    if code.is_regular and m >= 2:
        edf = families.verify_edf(code.group, SetFamily.of(code.group, code.valid_sets))
        edf1 = bool(edf) and edf.parameters.lam == 1
        weak["edf_lambda_1"] = edf1
        if edf1 != weak["simultaneous"]:
            raise InternalConsistencyError(
                f"k-regular code: simultaneous R+G = {weak['simultaneous']} but (n,m,k,1)-EDF = {edf1}"
            )
    eps = c.strong.optimum
    strong = {
        "R": c.strong_R,
        "G": c.strong_G,
        "simultaneous": c.strong_R and c.strong_G,
        "optimum": fraction_str(eps),
        "k_uniform": code.is_uniform,
    }
    if m >= 3 and eps < 1 and strong["simultaneous"]:
        raise InternalConsistencyError("strong code with m >= 3 and optimum < 1 is both R- and G-optimal")
    if code.is_uniform and m >= 2:
        bound = Fraction(m - 1, n - 1)
        equality = eps * eps == bound and eps < 1
        strong["product_equality"] = equality
        if equality and not (m == 2 and n == code.k**2 + 1):
            raise InternalConsistencyError(f"eps^2 = (m-1)/(n-1) < 1 with m={m}, n={n}, k={code.k}")
    return SimultaneousReport(weak, strong)
