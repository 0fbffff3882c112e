import pytest

from formalcr import (
    TruncatedSeries,
    finite_type_search,
    generic_rank,
    jacobian,
    minor_series,
    parse_series,
    revalidate_certificate,
    segre_v1,
    segre_vj,
)
from formalcr.segre import DEFAULT_SEED, certify_minor, chain_space, full_minor_rank
from helpers import CORPUS_MANIFOLDS, FINITE_TYPE, INFINITE_TYPE, corpus_manifold, lebl, manifold

LEWY = manifold(1, 1, "tau1 + 2*i*z1*chi1")
FLAT = manifold(1, 1, "tau1")
ZFOUR = manifold(1, 1, "tau1 + 2*i*z1^2*chi1^2")
CODIM2 = manifold(1, 2, "tau1 + 2*i*z1*chi1", "tau2 + 2*i*z1^2*chi1^2")


def in_chain(text, n=1, d=1, j=1, with_w=True, K=8):
    return parse_series(text, chain_space(n, d, j, with_w), K)


def test_chain_space_layout():
    assert chain_space(1, 1, 2, True).names == ("z1", "chi1", "z1_1", "chi1_1", "z1_2", "w1")
    assert chain_space(2, 1, 1, False).names == ("z1", "z2", "chi1", "chi2", "z1_1", "z2_1")


def test_v1_examples():
    assert segre_v1(LEWY) == [in_chain("w1 + 2*i*chi1*(z1 - z1_1)")]
    assert segre_v1(FLAT) == [in_chain("w1")]
    assert segre_v1(ZFOUR) == [in_chain("w1 + 2*i*chi1^2*(z1^2 - z1_1^2)")]


def test_vj_examples():
    v2 = segre_vj(LEWY, 2).v
    assert list(v2) == [in_chain("w1 + 2*i*chi1_1*(z1_1 - z1_2) + 2*i*chi1*(z1 - z1_1)", j=2)]
    for j in (1, 2, 3):
        assert list(segre_vj(FLAT, j).v) == [in_chain("w1", j=j)]
        assert all(v.is_zero() for v in segre_vj(FLAT, j, with_w=False).v)
        assert all(v.is_zero() for v in segre_vj(lebl(1, 2), j, with_w=False).v)


def test_jacobian_examples():
    J = jacobian(segre_vj(LEWY, 1, with_w=False))
    expected = ["2*i*chi1", "2*i*z1 - 2*i*z1_1", "-2*i*chi1"]
    assert J == [[in_chain(t, with_w=False, K=7) for t in expected]]
    assert all(e.is_zero() for row in jacobian(segre_vj(FLAT, 2, with_w=False)) for e in row)
    J2 = jacobian(segre_vj(CODIM2, 1, with_w=False))
    sp = J2[0][0].space
    rows = [["2*i*chi1", "2*i*(z1 - z1_1)", "-2*i*chi1"],
            ["4*i*z1*chi1^2", "4*i*chi1*(z1^2 - z1_1^2)", "-4*i*chi1^2*z1_1"]]
    assert J2 == [[parse_series(t, sp, 7) for t in row] for row in rows]


def test_generic_rank_examples():
    J = jacobian(segre_vj(LEWY, 1, with_w=False))
    r, cert = generic_rank(J)
    assert r == 1
    assert str(cert.minor) == "2*i*chi1"
    assert cert.monomial == {"chi1": 1} and cert.coefficient == parse_series("2*i", J[0][0].space, 0).constant_term
    zero = [[TruncatedSeries.zero(J[0][0].space, 7)] * 3]
    assert generic_rank(zero) == (0, None)


def test_codim2_certificate():
    J = jacobian(segre_vj(CODIM2, 1, with_w=False))
    r, _ = generic_rank(J)
    assert r == 2
    # the (z, z_1) columns: 8 chi^3 (z_1 - z)
    cert = certify_minor(J, (0, 1), (0, 2))
    assert cert.minor == parse_series("8*chi1^3*(z1_1 - z1)", J[0][0].space, 7)


def test_finite_type_examples():
    v = finite_type_search(LEWY)
    assert (v.status, v.j, v.max_rank_seen) == ("FiniteType", 1, 1)
    for M in (FLAT, lebl(1, 2)):
        v = finite_type_search(M)
        assert v.status == "NotDetected" and v.max_rank_seen == 0
        assert "not a proof" in v.to_dict()["note"]


# -- invariants over the corpus ----------------------------------------------------

@pytest.mark.parametrize("name", CORPUS_MANIFOLDS)
def test_reality_and_normality_collapse(name):
    M = corpus_manifold(name)
    sp = chain_space(M.n, M.d, 1, True)
    w = [TruncatedSeries.variable(sp, M.K, f"w{k}") for k in range(1, M.d + 1)]
    v1 = segre_v1(M)
    diag = {f"z{i}_1": f"z{i}" for i in range(1, M.n + 1)}
    assert [v.rename(sp, diag) for v in v1] == w
    assert [v.set_zero([f"chi{i}" for i in range(1, M.n + 1)]) for v in v1] == w
    for j in (1, 2, 3):
        res = segre_vj(M, j)
        chain = [x for x in res.space.names if not x.startswith("w")]
        sp = res.space
        assert [v.set_zero(chain) for v in res.v] == [
            TruncatedSeries.variable(sp, M.K, f"w{k}") for k in range(1, M.d + 1)]


@pytest.mark.parametrize("name", CORPUS_MANIFOLDS)
def test_rank_monotone_bounded_and_sound(name):
    M = corpus_manifold(name)
    ranks = []
    for j in (1, 2, 3):
        J = jacobian(segre_vj(M, j, with_w=False))
        r, cert = generic_rank(J)
        assert r <= M.d
        ranks.append(r)
        if cert is not None:
            again = minor_series(J, cert.rows, cert.cols)
            assert again == cert.minor
            assert again.coefficient(cert.monomial) == cert.coefficient
            assert cert.degree < cert.faithful_through
    assert ranks == sorted(ranks)


@pytest.mark.parametrize("name", CORPUS_MANIFOLDS)
def test_rank_matches_exhaustive_minors(name):
    M = corpus_manifold(name)
    for j in (1, 2):
        J = jacobian(segre_vj(M, j, with_w=False))
        assert generic_rank(J)[0] == full_minor_rank(J)


@pytest.mark.parametrize("name", FINITE_TYPE)
def test_certificates_revalidate(name):
    M = corpus_manifold(name)
    v = finite_type_search(M, 3)
    assert v.finite_type and v.j == 1
    assert revalidate_certificate(M, v.j, v.certificate)
    assert revalidate_certificate(M, v.j, v.certificate.to_dict())
    forged = dict(v.certificate.to_dict(), coefficient="12345")
    assert not revalidate_certificate(M, v.j, forged)


@pytest.mark.parametrize("name", INFINITE_TYPE)
def test_not_detected(name):
    v = finite_type_search(corpus_manifold(name), 3)
    assert v.status == "NotDetected" and v.ranks == (0, 0, 0)


def test_seed_independence_of_verdict():
    for seed in (DEFAULT_SEED, 1, 99):
        assert finite_type_search(CODIM2, seed=seed).j == 1
