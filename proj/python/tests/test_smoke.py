import itertools
import math

import pytest

import sparsemobius as sm


def bits(n, mask):
    return "".join("1" if mask >> (n - 1 - i) & 1 else "0" for i in range(n))


@pytest.mark.parametrize("alg", ["fasmt", "pasmt", "hybrid"])
def test_reconstruct_matches_generator(alg):
    spectrum = sm.generate_synthetic(40, 6, 2, seed=3)
    out = sm.reconstruct(alg, 40, spectrum, 2, seed=1)
    assert out["spectrum"].keys() == spectrum.keys()
    for k, v in spectrum.items():
        assert out["spectrum"][k] == pytest.approx(v, abs=1e-9)
    assert out["queries"] >= 1 and out["rounds"] >= 1


def test_callable_oracle_counts_edges():
    # Triangle on vertices 1..3: f(x) counts induced edges.
    edges = ["1100", "0110", "1010"]

    def f(x):
        return sum(all(x[i] == "1" for i, c in enumerate(e) if c == "1") for e in edges)

    out = sm.reconstruct_function("fasmt", 4, f, 2, tau=0.0)
    assert out["spectrum"] == {e: 1.0 for e in edges}


def test_brute_force_and_transforms_agree():
    spectrum = {"101": 2.0, "010": -1.0}
    dense = [0.0] * 8
    for k, v in spectrum.items():
        dense[int(k, 2)] = v
    table = sm.zeta_transform(3, dense)
    for m in range(8):
        assert table[m] == sm.evaluate(3, spectrum, bits(3, m))
    assert sm.mobius_transform(3, table) == dense
    assert sm.brute_force_learn(3, spectrum) == spectrum


def test_bounds():
    assert sm.lower_bound(1024, 16, 4) == pytest.approx(512 / 9, abs=1e-12)
    assert sm.optimality_ratio(1000, 1024, 16, 4) == pytest.approx(7.8125)
    with pytest.raises(sm.ParameterError):
        sm.lower_bound(10, 1, 2)


def test_group_testing():
    assert sm.gbsa_run("0010", 1) == ("0010", 4)
    assert sm.gbsa_test_budget(10, 3) == 15
    cols = sm.construct_disjunct(30, 2)
    assert sm.verify_disjunct(30, cols, 2)
    for i, j in itertools.combinations(range(30), 2):
        k = ["0"] * 30
        k[i] = k[j] = "1"
        k = "".join(k)
        label = "".join("1" if any(a == b == "1" for a, b in zip(c, k)) else "0" for c in cols)
        assert sm.decode_disjunct(30, cols, label, 2) == k


def test_errors_map_to_exception_hierarchy():
    with pytest.raises(sm.DegreeOverflowError):
        sm.reconstruct("fasmt", 6, {"111000": 1.0}, 1)
    assert issubclass(sm.DegreeOverflowError, sm.AlgorithmError)
    assert issubclass(sm.Error, ValueError)
    with pytest.raises(sm.ValidationError):
        sm.reconstruct("fft", 3, {"100": 1.0}, 1)
    with pytest.raises(sm.DimensionError):
        sm.reconstruct("fasmt", 3, {"10": 1.0}, 1)
    assert not sm.check_subset_sum_independence([1, 2, -3])


def test_benchmark_rows():
    rows = sm.run_benchmark([("fasmt", 64, 8, 2, 1), ("pasmt", 64, 8, 2, 1)])
    assert [r["algorithm"] for r in rows] == ["fasmt", "pasmt"]
    assert all(r["exact"] for r in rows)
    assert all(math.isfinite(r["optimality_ratio"]) for r in rows)
    assert sm.CSV_HEADER.split(",")[0] == "algorithm"
