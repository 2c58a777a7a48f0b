import json
import os
import subprocess
import sys

import pytest

from amdfam import kernel, make_group
from amdfam.errors import IdentityError, ParameterError
from amdfam.families import verify
from amdfam.search import (
    BUDGET_EXHAUSTED,
    EXHAUSTED,
    FOUND,
    SearchSpec,
    canonical_key,
    certify_nonexistence,
    search_family,
    sedf_candidates,
    sweep_sedf_open_problem,
)

import oracles

Z = make_group
HAVE_CYTHON = "cython" in kernel.BACKENDS
BACKENDS = sorted(kernel.BACKENDS)


def oracle_classes(orders, t, m, k, lam):
    """Translation classes of unordered families, by exhaustive enumeration."""
    out = set()
    for fam in oracles.all_disjoint_families(orders, m, k):
        if t == "EDF" and oracles.is_edf(orders, fam, lam):
            out.add(oracles.translation_orbit_key(orders, fam))
        elif t == "SEDF" and oracles.is_sedf(orders, fam, lam):
            out.add(oracles.translation_orbit_key(orders, fam))
        elif t == "DS" and all(v == lam for v in oracles.internal(orders, fam[0]).values()):
            out.add(oracles.translation_orbit_key(orders, fam))
    return out


def found_classes(cert):
    return {oracles.translation_orbit_key(cert.spec.group.orders, s.family.sets) for s in cert.solutions}


ORACLE_CASES = [
    ((7,), "DS", 1, 3, 1),
    ((7,), "DS", 1, 4, 2),
    ((11,), "DS", 1, 5, 2),
    ((13,), "DS", 1, 4, 1),
    ((4, 4), "DS", 1, 6, 2),
    ((5,), "EDF", 2, 2, 2),
    ((7,), "EDF", 3, 1, 1),
    ((7,), "EDF", 2, 3, 3),
    ((9,), "EDF", 2, 2, 1),
    ((3, 3), "EDF", 2, 2, 1),
    ((10,), "EDF", 2, 3, 2),
    ((10,), "SEDF", 2, 3, 1),
    ((5,), "SEDF", 2, 2, 1),
    ((2, 2), "SEDF", 4, 1, 1),
    ((9,), "SEDF", 3, 2, 1),
    ((3, 3), "SEDF", 3, 2, 1),
]


@pytest.mark.parametrize("orders, t, m, k, lam", ORACLE_CASES)
def test_all_mode_matches_oracle(orders, t, m, k, lam):
    spec = SearchSpec.make(Z(*orders), t, m=m, k=k, lam=lam, mode="all")
    cert = search_family(spec)
    want = oracle_classes(orders, t, m, k, lam)
    assert found_classes(cert) == want
    assert cert.solution_count == len(want)
    assert cert.outcome == (FOUND if want else EXHAUSTED)
    for s in cert.solutions:
        assert verify(t, s.family.group, s.family if t != "DS" else s.family.sets[0], lam=lam)


def test_planar_difference_set():
    cert = search_family(SearchSpec.make(Z(21), "DS", k=5, lam=1, mode="all"))
    target = oracles.translation_orbit_key((21,), [[(x,) for x in (3, 6, 12, 7, 14)]])
    assert target in found_classes(cert)


def test_cyclotomic_edf_found():
    cert = search_family(SearchSpec.make(Z(19), "EDF", m=3, k=3, lam=3))
    assert cert.found and verify("EDF", None, cert.solutions[0].family)


def test_sedf_desk_scale_certificates():
    for G in (Z(9), Z(3, 3)):
        assert certify_nonexistence(SearchSpec.make(G, "SEDF", m=3, k=2, lam=1)).outcome == EXHAUSTED
    cert = search_family(SearchSpec.make(Z(10), "SEDF", m=2, k=3, lam=1))
    assert cert.found
    assert [sorted(x[0] for x in A) for A in cert.solutions[0].family.sets] == [[0, 1, 2], [3, 6, 9]]


def test_certify_and_search_agree():
    for spec in [SearchSpec.make(Z(9), "SEDF", m=3, k=2, lam=1), SearchSpec.make(Z(7), "EDF", m=3, k=1, lam=1)]:
        assert certify_nonexistence(spec).found == search_family(spec).found


def test_mixed_types():
    qr = search_family(SearchSpec.make(Z(7), "GSEDF", sizes=[1, 1, 1, 4], lambdas=[1, 1, 1, 2], mode="all"))
    assert qr.found and all(verify("GSEDF", None, s.family) for s in qr.solutions)
    pedf = search_family(SearchSpec.make(Z(13), "PEDF", classes=[(2, 3), (1, 4), (3, 1)], lambdas=[5, 3, 3]))
    assert pedf.found and verify("PEDF", None, pedf.solutions[0].family, classes=[(2, 3), (1, 4), (3, 1)])
    gedf = search_family(SearchSpec.make(Z(13), "GEDF", sizes=[2, 3], lam=1, mode="all"))
    assert gedf.found
    bedf = search_family(SearchSpec.make(Z(7), "BEDF", m=2, k=2, lam=2))
    assert bedf.found
    df = search_family(SearchSpec.make(Z(13), "DF", sizes=[3, 3], lam=1, mode="all"))
    assert df.found and all(verify("DF", None, s.family) for s in df.solutions)


def test_identity_gate():
    with pytest.raises(IdentityError, match="lambda"):
        search_family(SearchSpec.make(Z(5), "EDF", m=2, k=2, lam=1))


def test_bad_spec_fields():
    with pytest.raises(ParameterError):
        SearchSpec.make(Z(9), "SEDF", m=3, k=2, lam=1, mode="sometimes")
    with pytest.raises(ParameterError):
        SearchSpec.make(Z(9), "SEDF", m=3, k=2, lam=1, jobs=0)


def test_budget_is_a_separate_outcome():
    spec = SearchSpec.make(Z(9), "SEDF", m=3, k=2, lam=1, node_budget=50)
    cert = certify_nonexistence(spec)
    assert cert.outcome == BUDGET_EXHAUSTED and cert.nodes == 50 and cert.reason == "nodes"
    full = certify_nonexistence(SearchSpec.make(Z(9), "SEDF", m=3, k=2, lam=1, node_budget=10**6))
    assert full.outcome == EXHAUSTED


def test_count_mode_omits_solutions():
    cert = search_family(SearchSpec.make(Z(13), "DS", k=4, lam=1, mode="count"))
    assert cert.solution_count >= 1 and "solutions" not in cert.to_json()


def test_certificate_json_is_deterministic():
    spec = SearchSpec.make(Z(10), "SEDF", m=2, k=3, lam=1, mode="all")
    a, b = search_family(spec).to_json(), search_family(spec).to_json()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert a["spec_hash"] == spec.digest() and len(a["spec_hash"]) == 64


def test_spec_from_json():
    spec = SearchSpec.from_json({"group": {"cyclic": [3, 3]}, "type": "sedf", "m": 3, "k": 2, "lambda": 1})
    assert spec.group.orders == (3, 3) and spec.family_type == "SEDF"
    with pytest.raises(ParameterError):
        SearchSpec.from_json({"group": {"cyclic": [9]}, "n": 10, "type": "SEDF", "m": 3, "k": 2, "lambda": 1})


def test_canonical_key_translation_invariant():
    spec = SearchSpec.make(Z(10), "SEDF", m=2, k=3, lam=1)
    G = spec.group
    base = [0, 1, 2, 3, 6, 9]
    keys = {canonical_key(spec, [G.index(G.add(G.element(x), (t,))) for x in base]) for t in range(10)}
    assert len(keys) == 1


# -- determinism across workers and backends -----------------------------------

DETERMINISM_SPECS = [
    dict(orders=(9,), t="SEDF", kw=dict(m=3, k=2, lam=1)),
    dict(orders=(3, 3), t="SEDF", kw=dict(m=3, k=2, lam=1)),
    dict(orders=(10,), t="SEDF", kw=dict(m=2, k=3, lam=1, mode="all")),
    dict(orders=(21,), t="DS", kw=dict(k=5, lam=1, mode="all")),
    dict(orders=(13,), t="PEDF", kw=dict(classes=[(2, 3), (1, 4), (3, 1)], lambdas=[5, 3, 3], mode="count")),
    dict(orders=(13,), t="DF", kw=dict(sizes=[3, 3], lam=1, mode="all")),
    dict(orders=(9,), t="SEDF", kw=dict(m=3, k=2, lam=1, node_budget=50)),
    dict(orders=(25,), t="EDF", kw=dict(m=3, k=2, lam=1, node_budget=400)),
]


@pytest.mark.parametrize("case", DETERMINISM_SPECS, ids=lambda c: f"{c['t']}{c['orders']}")
def test_jobs_do_not_change_certificates(case):
    certs = [
        search_family(SearchSpec.make(Z(*case["orders"]), case["t"], jobs=j, **case["kw"])).to_json()
        for j in (1, 2, 3)
    ]
    assert certs[0] == certs[1] == certs[2]


@pytest.mark.parametrize("depth", [1, 2, 4])
def test_split_depth_does_not_change_certificates(depth):
    base = search_family(SearchSpec.make(Z(9), "SEDF", m=3, k=2, lam=1)).to_json()
    split = search_family(SearchSpec.make(Z(9), "SEDF", m=3, k=2, lam=1, jobs=2, split_depth=depth)).to_json()
    assert split == base


@pytest.mark.skipif(not HAVE_CYTHON, reason="compiled kernel not built")
@pytest.mark.parametrize("case", DETERMINISM_SPECS, ids=lambda c: f"{c['t']}{c['orders']}")
def test_backends_agree(case):
    out = [
        search_family(SearchSpec.make(Z(*case["orders"]), case["t"], **case["kw"]), backend=b).to_json()
        for b in ("python", "cython")
    ]
    assert out[0] == out[1]


@pytest.mark.skipif(not HAVE_CYTHON, reason="compiled kernel not built")
def test_kernel_raw_outputs_agree():
    from amdfam.search import _plan

    for orders, t, kw in [((9,), "SEDF", dict(m=3, k=2, lam=1)), ((13,), "DF", dict(sizes=[3, 3], lam=1))]:
        plan = _plan(SearchSpec.make(Z(*orders), t, **kw))
        for find_all, budget, depth in [(True, -1, 0), (False, -1, 0), (True, 37, 0), (True, -1, 2)]:
            a = kernel.BACKENDS["python"](*plan.args(), find_all, budget, depth, [])
            b = kernel.BACKENDS["cython"](*plan.args(), find_all, budget, depth, [])
            assert a == b


def test_pure_python_switch():
    code = "from amdfam import kernel; print(kernel.BACKEND)"
    env = dict(os.environ, AMDFAM_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_unknown_backend():
    with pytest.raises(ParameterError):
        search_family(SearchSpec.make(Z(10), "SEDF", m=2, k=3, lam=1), backend="fortran")


# -- SEDF sweep -----------------------------------------------------------------


def test_sedf_candidates():
    ok, bad = sedf_candidates(12)
    assert (9, 3, 2, 1) in ok
    assert all(lam * (n - 1) == k * k * (m - 1) for n, m, k, lam in ok)
    assert all(m > 2 and k > 1 and m * k <= n for n, m, k, _ in ok)
    assert bad and all("not divisible" in b["reason"] for b in bad)


def test_sweep_lambda_one_rows_exhausted():
    rep = sweep_sedf_open_problem(12, node_budget=2_000_000)
    rows = rep.rows
    assert {(r.n, r.group) for r in rows if (r.n, r.m, r.k) == (9, 3, 2)} == {(9, "Z9"), (9, "Z3 x Z3")}
    for r in rows:
        assert r.outcome != FOUND or r.lam > 1
        if r.lam == 1:
            assert r.outcome == EXHAUSTED
    assert "exhausted-no-solution" in rep.format_table()
