"""Writes the JSON regression fixtures under src/amdfam/fixtures.

Expected values are typed in by hand from the worked examples; nothing here
is computed by the package.
"""

import json
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "amdfam" / "fixtures"


def Z(n):
    return {"cyclic": [n]}


def src(name, elems):
    return {"name": name, "set": elems}


FIXTURES = {
    "ds_z21_deterministic_code": {
        "about": "deterministic weak code whose encodings form a (21,5,1) difference set",
        "group": Z(21),
        "family": [[3, 6, 12, 7, 14]],
        "sources": [src(str(i + 1), [e]) for i, e in enumerate([3, 6, 12, 7, 14])],
        "checks": [
            {"op": "verify", "type": "DS", "expect": "pass", "label": "(21,5,1)-DS"},
            {"op": "internal", "uniform": 1},
            {"op": "induced", "values": {"3": "1/5", "6": "1/5", "7": "1/5", "12": "1/5", "14": "1/5"}},
            {"op": "weak_delta", "delta": "*", "value": "1/5"},
            {"op": "weak_optimum", "value": "1/5"},
            {"op": "weak_bounds", "rand": "1/5", "guess": "1/5"},
            {"op": "implication", "from": "DS", "to": "EDF", "label": "(21,5,1,1)-EDF"},
            {"op": "implication", "from": "DS", "to": "DF", "label": "(21,1,5,1)-DF"},
            {"op": "search", "spec": {"type": "DS", "k": 5, "lambda": 1, "mode": "all"},
             "outcome": "found", "translate_of": [[3, 6, 12, 7, 14]]},
        ],
    },
    "ds_trivial_z7": {
        "about": "a single point is a difference set with lambda 0",
        "group": Z(7),
        "family": [[3]],
        "checks": [{"op": "verify", "type": "DS", "expect": "pass", "label": "(7,1,0)-DS"}],
    },
    "gsedf_qr_z7_strong_code": {
        "about": "quadratic residues of Z7 as singletons plus the rest; its strong code",
        "group": Z(7),
        "family": [[1], [2], [4], [0, 3, 5, 6]],
        "sources": [src("1", [1]), src("2", [2]), src("3", [4]), src("4", [0, 3, 5, 6])],
        "checks": [
            {"op": "verify", "type": "GSEDF", "expect": "pass", "label": "(7,4;1,1,1,4;1,1,1,2)-GSEDF"},
            {"op": "verify", "type": "BGSEDF", "lambdas": [1, 1, 1, 2], "expect": "pass"},
            {"op": "outgoing", "index": 1, "uniform": 1},
            {"op": "incoming", "index": 4, "uniform": 2},
            {"op": "maximal_gsedf_ds", "expect": "pass"},
            {"op": "construct", "recipe": "qr-gsedf", "sets": [[1], [2], [4], [0, 3, 5, 6]],
             "label": "(7,4;1,1,1,4;1,1,1,2)-GSEDF"},
            {"op": "code_from_family", "type": "GSEDF", "names": ["1", "2", "3", "4"], "equals_code": True},
            {"op": "induced", "values": {"0": "1/16", "1": "1/4", "2": "1/4", "3": "1/16", "4": "1/4",
                                          "5": "1/16", "6": "1/16"}},
            {"op": "strong_delta", "source": "4", "delta": "*", "value": "1/2"},
            {"op": "strong_delta", "source": "1", "delta": 1, "value": "1/1"},
            {"op": "strong_optimum", "value": "1/1",
             "sources": {"1": "1/1", "2": "1/1", "3": "1/1", "4": "1/2"}},
            {"op": "strong_bounds", "source": "4", "rand": "1/2", "guess": "1/4"},
            {"op": "strong_bounds", "source": "1", "rand": "1/1", "guess": "1/1"},
            {"op": "classify", "expect": {"strong_R": True, "strong_G": False}},
            {"op": "family_from_code", "type": "GSEDF", "label": "(7,4;1,1,1,4;1,1,1,2)-GSEDF",
             "sets": [[1], [2], [4], [0, 3, 5, 6]]},
        ],
    },
    "edf_z19_cyclotomic": {
        "about": "three cosets of the order-3 subgroup of GF(19)*, primitive element 2",
        "group": Z(19),
        "family": [[1, 7, 11], [4, 9, 6], [16, 17, 5]],
        "checks": [
            {"op": "verify", "type": "EDF", "expect": "pass", "label": "(19,3,3,3)-EDF"},
            {"op": "external", "uniform": 3},
            {"op": "verify", "type": "BEDF", "lam": 3, "expect": "pass"},
            {"op": "verify", "type": "BEDF", "lam": 2, "expect": "fail", "counterexample_count": 3},
            {"op": "construct", "recipe": "tonchev", "params": {"q": 19, "u": 3, "l": 3, "alpha": 2},
             "sets": [[1, 7, 11], [4, 9, 6], [16, 17, 5]], "label": "(19,3,3,3)-EDF"},
            {"op": "weak_optimum", "value": "1/3"},
            {"op": "weak_bounds", "rand": "1/3", "uniform": "1/3"},
            {"op": "classify", "expect": {"weak_R": True}},
            {"op": "family_from_code", "type": "EDF", "label": "(19,3,3,3)-EDF",
             "sets": [[1, 7, 11], [4, 6, 9], [5, 16, 17]]},
            {"op": "implication", "from": "EDF", "to": "PEDF", "label": "(19,3;3;3;3)-PEDF"},
            {"op": "implication", "from": "EDF", "to": "BEDF", "label": "(19,3,3,3)-BEDF"},
            {"op": "search", "spec": {"type": "EDF", "m": 3, "k": 3, "lambda": 3, "mode": "all"},
             "outcome": "found", "translate_of": [[1, 7, 11], [4, 9, 6], [16, 17, 5]]},
        ],
    },
    "sedf_two_set_z10": {
        "about": "{0,...,k-1} and {k,...,k^2} in Z_(k^2+1) with k = 3; its strong code",
        "group": Z(10),
        "family": [[0, 1, 2], [3, 6, 9]],
        "checks": [
            {"op": "verify", "type": "SEDF", "expect": "pass", "label": "(10,2,3,1)-SEDF"},
            {"op": "construct", "recipe": "two-set-sedf", "params": {"k": 3}, "sets": [[0, 1, 2], [3, 6, 9]],
             "label": "(10,2,3,1)-SEDF"},
            {"op": "implication", "from": "SEDF", "to": "EDF", "label": "(10,2,3,2)-EDF"},
            {"op": "implication", "from": "SEDF", "to": "GSEDF", "label": "(10,2;3,3;1,1)-GSEDF"},
            {"op": "strong_optimum", "value": "1/3", "sources": {"s1": "1/3", "s2": "1/3"}},
            {"op": "strong_bounds", "source": "s1", "rand": "1/3", "guess": "1/3", "product": "1/9"},
            {"op": "classify", "expect": {"strong_R": True, "strong_G": True}},
            {"op": "simultaneous", "expect": {"strong": {"simultaneous": True, "product_equality": True}}},
            {"op": "family_from_code", "type": "SEDF", "label": "(10,2,3,1)-SEDF", "sets": [[0, 1, 2], [3, 6, 9]]},
            {"op": "search", "spec": {"type": "SEDF", "m": 2, "k": 3, "lambda": 1}, "certify": True,
             "outcome": "found"},
        ],
    },
    "sedf_singletons_z7": {
        "about": "every point of Z7 as its own set",
        "group": Z(7),
        "family": [[i] for i in range(7)],
        "checks": [
            {"op": "verify", "type": "SEDF", "expect": "pass", "label": "(7,7,1,1)-SEDF"},
            {"op": "construct", "recipe": "singleton-sedf", "params": {"n": 7},
             "sets": [[i] for i in range(7)], "label": "(7,7,1,1)-SEDF"},
            {"op": "strong_optimum", "value": "1/1"},
        ],
    },
    "gsedf_complement_z7": {
        "about": "{0} and its complement in Z7",
        "group": Z(7),
        "family": [[0], [1, 2, 3, 4, 5, 6]],
        "checks": [
            {"op": "verify", "type": "GSEDF", "expect": "pass", "label": "(7,2;1,6;1,1)-GSEDF"},
            {"op": "construct", "recipe": "complement-gsedf", "params": {"n": 7},
             "sets": [[0], [1, 2, 3, 4, 5, 6]], "label": "(7,2;1,6;1,1)-GSEDF"},
            {"op": "maximal_gsedf_ds", "expect": "pass", "parts": ["(7,1,0)-DS", "(7,6,5)-DS"]},
        ],
    },
    "pedf_z13": {
        "about": "partition of Z13 into classes of sizes 3, 4 and 1 that is a PEDF but not a GSEDF",
        "group": Z(13),
        "family": [[0, 1, 4], [3, 5, 10], [2, 6, 7, 9], [8], [11], [12]],
        "df_size3": [[0, 1, 4], [3, 5, 10]],
        "df_size4": [[2, 6, 7, 9]],
        "df_size1": [[8], [11], [12]],
        "checks": [
            {"op": "outgoing", "index": 1, "table": [2, 3, 2, 2, 3, 3, 3, 3, 2, 2, 3, 2]},
            {"op": "outgoing", "index": 2, "table": [3, 2, 3, 3, 2, 2, 2, 2, 3, 3, 2, 3]},
            {"op": "class", "indices": [1, 2], "uniform": 5},
            {"op": "class", "indices": [3], "uniform": 3},
            {"op": "class", "indices": [4, 5, 6], "uniform": 3},
            {"op": "verify", "type": "PEDF", "classes": [[2, 3], [1, 4], [3, 1]], "expect": "pass",
             "label": "(13,6;2,1,3;3,4,1;5,3,3)-PEDF"},
            {"op": "verify", "type": "GSEDF", "expect": "fail", "counterexample_index": 1},
            {"op": "verify", "type": "GEDF", "expect": "pass", "label": "(13,6;3,3,4,1,1,1;11)-GEDF"},
            {"op": "verify", "type": "DF", "family": "df_size3", "expect": "pass", "label": "(13,2,3,1)-DF"},
            {"op": "verify", "type": "DF", "family": "df_size4", "expect": "pass", "label": "(13,1,4,1)-DF"},
            {"op": "verify", "type": "DF", "family": "df_size1", "expect": "pass", "label": "(13,3,1,0)-DF"},
            {"op": "maximal_pedf_df", "classes": [[2, 3], [1, 4], [3, 1]], "expect": "pass",
             "class_labels": ["(13,2,3,1)-DF", "(13,1,4,1)-DF", "(13,3,1,0)-DF"]},
            {"op": "implication", "from": "PEDF", "to": "GEDF", "label": "(13,6;3,3,4,1,1,1;11)-GEDF"},
            {"op": "construct", "recipe": "pedf-z13", "sets": [[0, 1, 4], [3, 5, 10], [2, 6, 7, 9], [8], [11], [12]],
             "label": "(13,6;2,1,3;3,4,1;5,3,3)-PEDF"},
            {"op": "weak_optimum", "value": "65/72"},
            {"op": "weak_bounds", "rand": "65/72"},
            {"op": "classify", "expect": {"weak_R": True}},
        ],
    },
    "gedf_z13_not_r_optimal": {
        "about": "a GEDF whose equiprobable code is not R-optimal",
        "group": Z(13),
        "family": [[0, 1], [2, 4, 6]],
        "checks": [
            {"op": "verify", "type": "GEDF", "expect": "pass", "label": "(13,2;2,3;1)-GEDF"},
            {"op": "external", "uniform": 1},
            {"op": "verify", "type": "BEDF", "lam": 1, "require_uniform_k": False, "expect": "pass"},
            {"op": "weak_delta", "delta": 1, "value": "1/4"},
            {"op": "weak_bounds", "rand": "5/24", "guess": "1/5"},
            {"op": "weak_optimum", "value": "1/4"},
            {"op": "classify", "expect": {"weak_R": False}},
            {"op": "simultaneous", "expect": {"weak": {"simultaneous": False}}},
        ],
    },
    "gedf_z11": {
        "about": "{0}, {1}, {3,5} in Z11",
        "group": Z(11),
        "family": [[0], [1], [3, 5]],
        "checks": [{"op": "verify", "type": "GEDF", "expect": "pass", "label": "(11,3;1,1,2;1)-GEDF"}],
    },
    "weak_code_z10_not_from_pedf": {
        "about": "R-optimal weak code over Z10 whose valid sets do not form a PEDF",
        "group": Z(10),
        "sources": [src("1", [0]), src("2", [5]), src("3", [1, 9]), src("4", [2, 3])],
        "checks": [
            {"op": "weak_delta", "delta": 5, "value": "1/2"},
            {"op": "weak_delta", "delta": 1, "value": "1/2"},
            {"op": "weak_delta", "delta": 2, "value": "1/2"},
            {"op": "weak_optimum", "value": "1/2"},
            {"op": "weak_bounds", "rand": "1/2"},
            {"op": "classify", "expect": {"weak_R": True}},
            {"op": "family_from_code", "type": "PEDF", "error": "PreconditionError", "match": "not k-regular"},
        ],
    },
    "sedf_nonexistence_z9": {
        "about": "no (9,3,2,1)-SEDF over Z9",
        "group": Z(9),
        "checks": [
            {"op": "search", "spec": {"type": "SEDF", "m": 3, "k": 2, "lambda": 1}, "certify": True,
             "outcome": "exhausted-no-solution"},
        ],
    },
    "sedf_nonexistence_z3xz3": {
        "about": "no (9,3,2,1)-SEDF over Z3 x Z3",
        "group": {"cyclic": [3, 3]},
        "checks": [
            {"op": "search", "spec": {"type": "SEDF", "m": 3, "k": 2, "lambda": 1}, "certify": True,
             "outcome": "exhausted-no-solution"},
        ],
    },
}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, data in FIXTURES.items():
        (OUT / f"{name}.json").write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")
    print(f"wrote {len(FIXTURES)} fixtures to {OUT}")


if __name__ == "__main__":
    main()
