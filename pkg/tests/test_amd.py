import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from amdfam import (
    AmdCode,
    SetFamily,
    StrongStrategy,
    WeakStrategy,
    check_simultaneous_optimality,
    classify,
    code_from_family,
    eval_strategy,
    eval_strong_delta,
    eval_strong_optimum,
    eval_weak_delta,
    eval_weak_optimum,
    family_from_code,
    good_set,
    induced_message_distribution,
    make_group,
    strong_bounds,
    two_set_sedf,
    weak_bounds,
)
from amdfam.amd import fraction_str, parse_fraction, uniform_strategy
from amdfam.constructions import complement_gsedf, pedf_example_z13, qr_gsedf, singleton_sedf, tonchev_edf
from amdfam.errors import CodeError, PreconditionError, WrongTypeError, ZeroDeltaError

import oracles
from codegen import random_code, random_weak_strategy

F_ = Fraction
Z = make_group

DS21 = AmdCode.build(Z(21), [[x] for x in (3, 6, 12, 7, 14)])
QR = AmdCode.build(Z(7), [[1], [2], [4], [0, 3, 5, 6]])
GEDF13 = AmdCode.build(Z(13), [[0, 1], [2, 4, 6]])
Z10 = AmdCode.build(Z(10), [[0], [5], [1, 9], [2, 3]])


class TestModel:
    def test_flags(self):
        assert DS21.is_deterministic and DS21.is_regular and DS21.k == 1
        assert not QR.is_uniform and QR.equiprobable_encoding and QR.a == 7
        assert AmdCode.build(Z(5), [[0, 1]]).is_degenerate

    def test_rejects_overlap(self):
        with pytest.raises(CodeError):
            AmdCode.build(Z(5), [[0, 1], [1, 2]])

    def test_rejects_bad_probabilities(self):
        with pytest.raises(CodeError):
            AmdCode.build(Z(5), [[0, 1]], probs=[[F_(1, 2), F_(1, 3)]])
        with pytest.raises(CodeError):
            AmdCode.build(Z(5), [[0, 1]], probs=[[F_(1), F_(0)]])

    def test_rejects_duplicate_names(self):
        with pytest.raises(CodeError):
            AmdCode.build(Z(5), [[0], [1]], names=["a", "a"])

    def test_json_round_trip(self):
        code = AmdCode.build(Z(3, 3), [[(0, 1), (1, 1)], [(2, 2)]], probs=[[F_(1, 3), F_(2, 3)], [F_(1)]])
        again = AmdCode.from_json(code.to_json())
        assert again == code
        assert code.to_json()["sources"][0]["probs"] == ["1/3", "2/3"]

    def test_fraction_strings(self):
        assert fraction_str(F_(2, 4)) == "1/2" and fraction_str(F_(1)) == "1/1"
        assert parse_fraction("3/9") == F_(1, 3)


class TestEvaluation:
    def test_deterministic_difference_set(self):
        assert eval_weak_optimum(DS21).optimum == F_(1, 5)
        assert all(eval_weak_delta(DS21, d) == F_(1, 5) for d in range(1, 21))
        assert all(len(good_set(DS21, d)) == 1 for d in range(1, 21))
        assert set(induced_message_distribution(DS21).values()) == {F_(1, 5)}

    def test_qr_strong(self):
        assert all(eval_strong_delta(QR, "s4", d) == F_(1, 2) for d in range(1, 7))
        assert eval_strong_delta(QR, "s1", 1) == 1
        ev = eval_strong_optimum(QR)
        assert ev.optimum == 1 and ev.source_optima["s4"] == F_(1, 2)
        dist = induced_message_distribution(QR)
        assert [dist[(g,)] for g in (1, 2, 4)] == [F_(1, 4)] * 3
        assert [dist[(g,)] for g in (0, 3, 5, 6)] == [F_(1, 16)] * 4

    def test_gedf_counterexample(self):
        assert eval_weak_delta(GEDF13, 1) == F_(1, 4)
        assert eval_weak_optimum(GEDF13).optimum == F_(1, 4)
        b = weak_bounds(GEDF13)
        assert (b.rand, b.guess) == (F_(5, 24), F_(1, 5))

    def test_z10(self):
        assert eval_weak_optimum(Z10).optimum == F_(1, 2) == weak_bounds(Z10).rand

    def test_single_source(self):
        code = AmdCode.build(Z(5), [[0, 1]])
        assert eval_weak_optimum(code).optimum == 0
        assert good_set(code, 1) == []

    def test_zero_delta(self):
        with pytest.raises(ZeroDeltaError):
            eval_weak_delta(DS21, 0)
        with pytest.raises(ZeroDeltaError):
            good_set(DS21, 0)

    def test_strong_constructions(self):
        ev = eval_strong_optimum(code_from_family(two_set_sedf(3), "SEDF"))
        assert set(ev.source_optima.values()) == {F_(1, 3)}
        ev = eval_strong_optimum(code_from_family(singleton_sedf(6), "SEDF"))
        assert set(ev.source_optima.values()) == {1}

    def test_strong_bounds(self):
        b = strong_bounds(QR)
        assert (b.rand[3], b.guess[3]) == (F_(1, 2), F_(1, 4))
        assert (b.rand[0], b.guess[0]) == (1, 1)
        b = strong_bounds(code_from_family(two_set_sedf(3), "SEDF"))
        assert b.rand == (F_(1, 3),) * 2 and b.product == F_(1, 9)


class TestStrategies:
    def test_uniform_hits_rand_bound(self):
        for code in (DS21, QR, GEDF13, Z10):
            assert eval_strategy(code, uniform_strategy(code)) == weak_bounds(code).rand

    def test_point_mass(self):
        assert eval_strategy(GEDF13, WeakStrategy({1: 1})) == F_(1, 4)

    def test_strong_strategy(self):
        got = eval_strategy(QR, StrongStrategy({"s4": {1: F_(1, 2), 3: F_(1, 2)}, "s1": {1: 1}}))
        assert got == {"s4": F_(1, 2), "s1": 1}

    def test_invalid(self):
        with pytest.raises(ZeroDeltaError):
            eval_strategy(QR, WeakStrategy({0: 1}))
        with pytest.raises(CodeError):
            eval_strategy(QR, WeakStrategy({1: F_(1, 2)}))


class TestClassify:
    def test_examples(self):
        assert classify(Z10).weak_R
        assert not classify(GEDF13).weak_R
        c = classify(QR)
        assert c.strong_R and not c.strong_G
        assert classify(DS21).weak_R and classify(DS21).weak_G

    def test_qr_all_offsets_at_rand(self):
        b = strong_bounds(QR)
        for i, s in enumerate(QR.sources):
            assert all(eval_strong_delta(QR, s, d) == b.rand[i] for d in range(1, 7))


class TestTranslations:
    def test_pedf_code(self):
        code = code_from_family(pedf_example_z13(), "PEDF", classes=[(2, 3), (1, 4), (3, 1)])
        assert eval_weak_optimum(code).optimum == F_(65, 72) == weak_bounds(code).rand

    def test_edf_code(self):
        code = code_from_family(tonchev_edf(19, 3, 3), "EDF")
        assert code.is_regular and eval_weak_optimum(code).optimum == F_(1, 3)

    def test_qr_gives_strong_code(self):
        assert code_from_family(qr_gsedf(), "GSEDF").valid_sets == QR.valid_sets

    def test_ds_gives_deterministic(self):
        F = SetFamily.of(Z(21), [[3, 6, 12, 7, 14]])
        code = code_from_family(F, "DS")
        assert code.is_deterministic and set(code.valid_sets) == set(DS21.valid_sets)

    def test_wrong_type(self):
        with pytest.raises(WrongTypeError):
            code_from_family(pedf_example_z13(), "GSEDF")

    def test_recover_gsedf(self):
        F = family_from_code(QR, "GSEDF")
        assert F.sets == qr_gsedf().sets

    def test_preconditions(self):
        with pytest.raises(PreconditionError, match="not k-regular"):
            family_from_code(Z10, "PEDF")
        with pytest.raises(PreconditionError, match="not R-optimal"):
            family_from_code(AmdCode.build(Z(7), [[0, 1], [2, 3]]), "EDF")
        with pytest.raises(PreconditionError, match="no converse"):
            family_from_code(QR, "GEDF")
        with pytest.raises(PreconditionError, match="G-optimal"):
            family_from_code(QR, "BGSEDF")

    @pytest.mark.parametrize("n", [2, 5, 9])
    def test_complement_round_trip(self, n):
        F = complement_gsedf(n)
        assert family_from_code(code_from_family(F, "GSEDF"), "GSEDF").sets == F.sets

    def test_bedf_round_trip(self):
        F = SetFamily.of(Z(7), [[1], [2], [4]])
        assert family_from_code(code_from_family(F, "BEDF"), "BEDF").sets == F.sets


class TestSimultaneous:
    def test_two_set(self):
        rep = check_simultaneous_optimality(code_from_family(two_set_sedf(3), "SEDF"))
        assert rep.strong["simultaneous"] and rep.strong["product_equality"]

    def test_gedf(self):
        assert not check_simultaneous_optimality(GEDF13).weak["simultaneous"]

    def test_difference_set_lift(self):
        rep = check_simultaneous_optimality(DS21)
        assert rep.weak["simultaneous"] and rep.weak["edf_lambda_1"]


# -- oracle agreement ------------------------------------------------------------


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_game_values_match_oracle(seed):
    rng = random.Random(seed)
    orders, sets, probs, code = random_code(rng, n_max=16, m_max=4)
    nz = [d for d in oracles.elements(orders) if d != oracles.zero(orders)]
    for d in nz:
        assert eval_weak_delta(code, d) == oracles.weak_eps(orders, sets, probs, d)
        for i, s in enumerate(code.sources):
            assert eval_strong_delta(code, s, d) == oracles.strong_eps(orders, sets, probs, i, d)
    assert eval_weak_optimum(code).optimum == oracles.weak_opt(orders, sets, probs)
    ev = eval_strong_optimum(code)
    assert [ev.source_optima[s] for s in code.sources] == oracles.strong_opts(orders, sets, probs)


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_properties_on_random_codes(seed):
    rng = random.Random(seed)
    _, sets, _, code = random_code(rng, n_max=30, m_max=6)
    c = classify(code)
    m, a = code.m, code.a
    assert sum(c.weak.values.values()) == F_(a * (m - 1), m)
    assert c.weak.optimum >= weak_bounds(code).rand
    for i, s in enumerate(code.sources):
        assert sum(c.strong.values[s].values()) == a - len(sets[i])
    assert eval_strategy(code, uniform_strategy(code)) == weak_bounds(code).rand
    for _ in range(10):
        assert eval_strategy(code, WeakStrategy(random_weak_strategy(rng, code))) <= c.weak.optimum
    check_simultaneous_optimality(code)  # raises on a contradiction


@st.composite
def partitions(draw):
    """Random partitions of Z_n; these verify as GSEDF/PEDF often enough to matter."""
    n = draw(st.integers(3, 13))
    perm = draw(st.permutations(range(n)))
    m = draw(st.integers(2, min(4, n)))
    cuts = sorted(draw(st.lists(st.integers(1, n - 1), min_size=m - 1, max_size=m - 1, unique=True)))
    b = [0] + cuts + [n]
    return SetFamily.of(Z(n), [perm[b[i]:b[i + 1]] for i in range(m)])


@settings(max_examples=300, deadline=None)
@given(partitions())
def test_family_guarantees(F):
    from amdfam.families import verify_gsedf, verify_pedf

    if verify_pedf(None, F):
        assert classify(code_from_family(F, "PEDF")).weak_R
    if verify_gsedf(None, F):
        code = code_from_family(F, "GSEDF")
        c = classify(code)
        assert c.weak_R and c.strong_R
        assert family_from_code(code, "GSEDF").sets == F.sets
    else:
        code = AmdCode.from_family(F)
        assert not classify(code).strong_R
        with pytest.raises(PreconditionError):
            family_from_code(code, "GSEDF")
