import cmath
import math

import numpy as np
import pytest

import ultrashort as us


def test_arith_roundtrip():
    assert us.discriminant("X^2-2") == 8
    primes = us.find_split_primes("X^3-1", 10, 50)
    assert primes == [13, 19, 31, 37, 43]
    roots = us.roots_mod_prime("X^3-1", 13)
    assert sorted(roots) == roots
    assert all((r**3 - 1) % 13 == 0 for r in roots)
    lifted = us.hensel_roots("X^2-2", 7, 3)
    assert all((r * r - 2) % 343 == 0 for r in lifted)


def test_smith_normal_form():
    U, S, V = us.smith_normal_form([[2, 0], [0, 3]])
    assert S == [[1, 0], [0, 6]]
    A = np.array([[2, 0], [0, 3]])
    assert (np.array(U) @ A @ np.array(V) == np.array(S)).all()


def test_relations():
    R = us.additive_relations("X^3+X+3")
    assert R.rank == 1 and R.d == 3 and R.kind == "additive"
    assert R.basis == [[1, 1, 1]]
    assert R.contains([2, 2, 2]) and not R.contains([1, 0, 0])
    again = us.RelationModule.from_json(R.to_json())
    assert again.basis == R.basis
    assert us.value_relations("X^5-1", "X+X^-1").rank == 3
    assert us.index_ind("X-5") == 5
    assert us.dominant_root_holds("X^2-6X+1")


def test_additive_grid_moments():
    params, values = us.additive_sum_grid("X^3+X+3", 30223)
    assert len(params) == len(values) == 30223
    assert values[0] == pytest.approx(3)
    R = us.additive_relations("X^3+X+3")
    for m, n in [(1, 1), (3, 0), (2, 1)]:
        emp = us.empirical_mixed_moment(values, m, n)
        assert emp.real == pytest.approx(us.exact_mixed_moment(R, m, n), abs=1e-6)


def test_kloosterman_and_weyl():
    a, q = 5, 101
    direct = sum(cmath.exp(2j * math.pi * (x + a * pow(x, -1, q)) / q) for x in range(1, q)) / math.sqrt(q)
    assert us.hyper_kloosterman(2, a, q) == pytest.approx(direct, abs=1e-9)
    assert us.weyl_sum_full("X^5-1", 11, 1, [1, 1, 1, 1, 1]) == 1
    assert us.uniformity_metric(99989, 1, "interval:0.5") == pytest.approx(2 / math.pi, abs=0.01)


def test_samplers_are_seeded():
    st = us.sato_tate_samples(20000, seed=3)
    assert np.mean(st**2) == pytest.approx(1, abs=0.05)
    assert (us.sato_tate_samples(20000, seed=3) == st).all()
    R = us.additive_relations("X^3-1")
    s1 = us.sigma_samples(R, 500, seed=9)
    s2 = us.sigma_samples(R, 500, seed=9, threads=2)
    assert (s1 == s2).all()
    assert us.ks_distance(st, st) == 0
    su = us.haar_trace_samples("SU", 2, 1000, seed=4)
    assert np.abs(su.imag).max() < 1e-9


def test_errors_carry_kind():
    with pytest.raises(us.UltrashortError) as info:
        us.additive_sum_grid("X^2+1", 7)
    assert info.value.kind == "NotSplit"
    with pytest.raises(ValueError):
        us.additive_relations("2X^2+1")
