"""The ten headline acceptance criteria, one test each.

Each test records its wall time and checks it against the allowance.  The
conftest prints a one-line pass/fail summary per criterion.
"""

import random
import time
from fractions import Fraction

import pytest

from amdfam import (
    AmdCode,
    StrongStrategy,
    WeakStrategy,
    certify_nonexistence,
    classify,
    code_from_family,
    eval_strategy,
    eval_strong_optimum,
    eval_weak_delta,
    eval_weak_optimum,
    family_from_code,
    make_group,
    outgoing_differences,
    search_family,
    strong_bounds,
    tonchev_edf,
    two_set_sedf,
    verify,
    weak_bounds,
)
from amdfam.constructions import pedf_example_z13, qr_gsedf
from amdfam.corpus import lattice_soundness
from amdfam.errors import PreconditionError
from amdfam.families import verify_edf, verify_gsedf, verify_pedf
from amdfam.search import EXHAUSTED, FOUND, SearchSpec

from codegen import random_code, random_weak_strategy


class Timer:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.2f}s, allowance {self.limit}s"


Z = make_group


@pytest.mark.criterion(1, "Z21 deterministic code: eps = 1/5 for every offset")
def test_c01_z21_deterministic_code():
    with Timer(1.0):
        code = AmdCode.build(Z(21), [[x] for x in (3, 6, 12, 7, 14)])
        assert code.is_deterministic
        assert eval_weak_optimum(code).optimum == Fraction(1, 5)
        vals = [eval_weak_delta(code, d) for d in range(1, 21)]
        assert len(vals) == 20 and set(vals) == {Fraction(1, 5)}


@pytest.mark.criterion(2, "Z7 strong code: per-source optima 1,1,1,1/2; strong R but not G")
def test_c02_z7_strong_code():
    with Timer(1.0):
        code = AmdCode.build(Z(7), [[1], [2], [4], [0, 3, 5, 6]])
        ev = eval_strong_optimum(code)
        assert [ev.source_optima[s] for s in code.sources] == [1, 1, 1, Fraction(1, 2)]
        cl = classify(code)
        assert cl.strong_R is True and cl.strong_G is False
        b = strong_bounds(code)
        assert b.guess[3] == Fraction(1, 4) < Fraction(1, 2)


@pytest.mark.criterion(3, "cyclotomic EDF over GF(19) with alpha = 2")
def test_c03_tonchev_19_3_3():
    with Timer(1.0):
        F = tonchev_edf(19, 3, 3, alpha=2)
        assert {frozenset(x[0] for x in A) for A in F.sets} == {
            frozenset({1, 7, 11}), frozenset({4, 9, 6}), frozenset({16, 17, 5})
        }
        rep = verify_edf(None, F)
        assert rep and str(rep.parameters) == "(19,3,3,3)-EDF"


@pytest.mark.criterion(4, "Z13 PEDF: outgoing tables, PEDF (5,3,3), GSEDF fails at index 1")
def test_c04_pedf_z13():
    with Timer(1.0):
        F = pedf_example_z13()
        G = F.group
        assert outgoing_differences(G, F, 1).table() == [2, 3, 2, 2, 3, 3, 3, 3, 2, 2, 3, 2]
        assert outgoing_differences(G, F, 2).table() == [3, 2, 3, 3, 2, 2, 2, 2, 3, 3, 2, 3]
        rep = verify_pedf(G, F, [(2, 3), (1, 4), (3, 1)])
        assert rep and rep.parameters.lambdas == (5, 3, 3)
        bad = verify_gsedf(G, F)
        assert not bad and bad.counterexample.index == 1


@pytest.mark.criterion(5, "Z13 GEDF code: eps_1 = 1/4 above rand bound 5/24, not weak R-optimal")
def test_c05_gedf_counterexample():
    with Timer(1.0):
        code = AmdCode.build(Z(13), [[0, 1], [2, 4, 6]])
        assert eval_weak_delta(code, 1) == Fraction(1, 4)
        assert weak_bounds(code).rand == Fraction(5, 24)
        assert classify(code).weak_R is False


@pytest.mark.criterion(6, "Z10 code: optimum 1/2 equals rand bound; no PEDF recovery")
def test_c06_z10_not_from_pedf():
    with Timer(1.0):
        code = AmdCode.build(Z(10), [[0], [5], [1, 9], [2, 3]])
        assert eval_weak_optimum(code).optimum == Fraction(1, 2) == weak_bounds(code).rand
        assert classify(code).weak_R is True
        with pytest.raises(PreconditionError, match="not k-regular"):
            family_from_code(code, "PEDF")


@pytest.mark.criterion(7, "no (9,3,2,1)-SEDF over Z9 or Z3xZ3; a (10,2,3,1)-SEDF over Z10")
def test_c07_sedf_search():
    with Timer(60.0):
        for G in (Z(9), Z(3, 3)):
            cert = certify_nonexistence(SearchSpec.make(G, "SEDF", m=3, k=2, lam=1))
            assert cert.outcome == EXHAUSTED, cert.to_json()
        cert = search_family(SearchSpec.make(Z(10), "SEDF", m=2, k=3, lam=1))
        assert cert.outcome == FOUND
        F = cert.solutions[0].family
        assert verify("SEDF", F.group, F)


@pytest.mark.criterion(8, "randomized bound, sum-identity and strategy properties on 1000 codes")
def test_c08_property_suite():
    rng = random.Random(20240601)
    with Timer(300.0):
        for _ in range(1000):
            _, sets, _, code = random_code(rng, n_max=50, m_max=6)
            m, a = code.m, code.a
            weak = eval_weak_optimum(code)
            strong = eval_strong_optimum(code)
            wb, sb = weak_bounds(code), strong_bounds(code)
            eps = weak.optimum
            assert eps >= wb.rand
            assert eps >= wb.guess or m == 1
            assert eps * eps >= wb.product
            assert sum(weak.values.values()) == Fraction(a * (m - 1), m)
            for i, s in enumerate(code.sources):
                opt = strong.source_optima[s]
                assert sum(strong.values[s].values()) == a - len(sets[i])
                assert opt >= sb.rand[i]
                if m > 1:
                    assert opt >= sb.guess[i]
            if code.is_uniform and m > 1:
                assert strong.optimum ** 2 >= sb.product
            for _ in range(100):
                assert eval_strategy(code, WeakStrategy(random_weak_strategy(rng, code))) <= eps
            for _ in range(100):
                s = rng.choice(code.sources)
                got = eval_strategy(code, StrongStrategy({s: random_weak_strategy(rng, code)}))
                assert got[s] <= strong.source_optima[s]


@pytest.mark.criterion(9, "every implication edge holds on every corpus family")
def test_c09_lattice_soundness():
    with Timer(30.0):
        rows = lattice_soundness()
        assert rows, "no edges were applicable"
        bad = [r for r in rows if not r["passed"]]
        assert not bad, bad[:5]


@pytest.mark.criterion(10, "family -> code -> family round trips (EDF, GSEDF, SEDF k = 2,3,4)")
def test_c10_round_trips():
    with Timer(10.0):
        cases = [(tonchev_edf(19, 3, 3, alpha=2), "EDF"), (qr_gsedf(), "GSEDF")]
        cases += [(two_set_sedf(k), "SEDF") for k in (2, 3, 4)]
        for F, t in cases:
            before = verify(t, F.group, F)
            assert before
            back = family_from_code(code_from_family(F, t), t)
            assert back.sets == F.sets
            assert verify(t, back.group, back).parameters == before.parameters
