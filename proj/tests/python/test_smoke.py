import kpell
import pytest


def naive_pell(k, n):
    seq = [0] * (k - 1) + [1]
    while len(seq) < n + k - 1:
        seq.append(2 * seq[-1] + sum(seq[-k:-1]))
    return seq[n + k - 2]


@pytest.mark.parametrize("k", [2, 3, 5])
def test_terms_match_naive_recurrence(k):
    for n in range(1, 40):
        assert kpell.term(k, n) == naive_pell(k, n)


def test_big_terms_are_python_ints():
    t = kpell.term(3, 300)
    assert isinstance(t, int) and t.bit_length() > 300


def test_identity_check():
    assert kpell.check_identity("kilic", 6, 5)["pass"]
    assert not kpell.check_identity("pow2", 2, 3)["pass"]
    with pytest.raises(ValueError):
        kpell.check_identity("nope", 3, 3)


def test_root_of_pell_is_one_plus_sqrt2():
    lo, hi = kpell.root(2)["alpha"]
    assert lo <= 1 + 2 ** 0.5 <= hi


def test_height_of_k2():
    h = kpell.height(2)
    assert h["minpoly_ascending"] == [-1, 0, 8]
    assert h["below_bound"]


def test_matveev_and_Mk():
    lo, hi = kpell.matveev_constant(2)
    assert 7.69e8 < lo <= hi < 7.71e8
    assert kpell.eval_Mk(850)["below_one"]
    assert not kpell.eval_Mk(100)["below_one"]
    assert kpell.Mk_crossover() <= 850


def test_reduce_and_bound1():
    r = kpell.reduce(5)
    assert r["ok"] and r["n_bound"] < 300
    assert kpell.bound1(5)["case2_dominates"] in (True, False)


def test_mul_dep():
    assert kpell.mul_dep(8, 32)["dependent"]
    assert kpell.mul_dep(8, 32)["witness"] == (2, 3, 5)
    assert not kpell.mul_dep(6, 12)["dependent"]
    assert kpell.mul_dep(2 ** 200, 2 ** 300)["dependent"]
    assert kpell.mul_dep(1, 5)["degenerate"]


def test_audit_subset():
    rep = kpell.audit(["algebraic.g-range", "sequence.power-of-two-segment"], threads=1)
    assert rep["schema_version"] == 1
    status = {c["claim_id"]: c["status"] for c in rep["claims"]}
    assert status == {"algebraic.g-range": "pass", "sequence.power-of-two-segment": "fail"}
    assert len(kpell.claim_ids()) >= 70
    with pytest.raises(ValueError):
        kpell.audit(["no.such.claim"])
