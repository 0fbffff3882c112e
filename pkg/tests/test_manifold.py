import pytest

from formalcr import (
    NotNormalForm,
    NotReal,
    NotThroughOrigin,
    RankDeficientAtOrigin,
    SingularTransverseBlock,
    normal_space,
    parse_series,
    rho_space,
    solve_graph_from_rho,
    validate_defining_system,
    validate_normal_form,
)
from formalcr.manifold import conjugate_Q, relabel_transverse
from helpers import CORPUS_MANIFOLDS, corpus_manifold, lebl, manifold

SP = normal_space(1, 1)


def Q(text, K=8):
    return [parse_series(text, SP, K)]


def test_lewy_valid():
    M = validate_normal_form(Q("tau1 + 2*i*z1*chi1"))
    assert (M.n, M.d, M.K) == (1, 1, 8)


def test_not_normal():
    with pytest.raises(NotNormalForm) as info:
        validate_normal_form(Q("tau1 + z1^2"))
    e = info.value
    assert e.identity == "Q(z,0,tau) = tau"
    assert e.monomial == {"z1": 2} and e.component == 1
    assert (e.lhs, e.rhs) == (1, 0)


def test_not_real():
    with pytest.raises(NotReal) as info:
        validate_normal_form(Q("tau1 + z1*chi1"))
    e = info.value
    assert e.monomial == {"z1": 1, "chi1": 1}
    # Q(z, chi, Qbar(chi, z, w)) = w + 2 z chi
    assert (e.lhs, e.rhs) == (2, 0)


def test_rejects_degenerate_dimensions():
    with pytest.raises((ValueError, NotNormalForm)):
        validate_normal_form([])


def test_conjugate_Q():
    def text(M):
        return [str(q) for q in conjugate_Q(M)]
    assert text(manifold(1, 1, "tau1 + 2*i*z1*chi1")) == ["w1 - 2*i*chi1*z1_1"]
    assert text(manifold(1, 1, "tau1")) == ["w1"]
    M = lebl(1, 2, K=4)
    sp = conjugate_Q(M)[0].space
    expected = parse_series("w1*exp(-i*chi1*z1_1)", sp, 4)
    assert conjugate_Q(M)[0] == expected


@pytest.mark.parametrize("name", CORPUS_MANIFOLDS)
def test_corpus_is_valid(name):
    M = corpus_manifold(name)
    assert M.K == 8


R = rho_space(1, 1)


def rho(text, K=8):
    return [parse_series(text, R, K)]


def test_solve_from_rho():
    sys = validate_defining_system(rho("i*(w1 - tau1) + 2*z1*chi1"))
    assert solve_graph_from_rho(sys) == Q("tau1 + 2*i*z1*chi1")


def test_fixed_point_example():
    # w = tau + z chi (1 + w), checked as a graph solve without the reality test
    from formalcr.manifold import DefiningSystem
    # the z^2 chi^2 term has degree 4, so K = 4 is the smallest order that shows it
    sys = DefiningSystem(1, 1, 4, tuple(rho("w1 - tau1 - z1*chi1*(1 + w1)", K=4)))
    assert solve_graph_from_rho(sys) == Q("tau1 + z1*chi1 + z1*chi1*tau1 + z1^2*chi1^2", K=4)


def test_trivial_solve():
    sys = validate_defining_system(rho("i*(w1 - tau1)"))
    assert solve_graph_from_rho(sys) == Q("tau1")


def test_rho_errors():
    with pytest.raises(NotReal):
        validate_defining_system(rho("w1 - tau1 - 2*i*z1*chi1"))
    with pytest.raises(RankDeficientAtOrigin):
        validate_defining_system(rho("w1*tau1"))
    with pytest.raises(NotThroughOrigin):
        validate_defining_system(rho("1 + w1 + tau1"))


def test_transverse_split():
    # Im z1 = |w1|^2: the w1-block is singular, the z1-block is not
    r = rho("i*(z1 - chi1) + 2*w1*tau1")
    with pytest.raises(SingularTransverseBlock):
        solve_graph_from_rho(validate_defining_system(r))
    swapped = relabel_transverse(r, ["z1"])
    sol = solve_graph_from_rho(validate_defining_system(swapped))
    assert validate_normal_form(sol) == validate_normal_form(Q("tau1 + 2*i*z1*chi1"))


@pytest.mark.parametrize("name", CORPUS_MANIFOLDS)
def test_reverse_reality(name):
    # Qbar(chi, z, Q(z, chi, tau)) = tau
    M = corpus_manifold(name)
    from formalcr.manifold import _reverse_reality_composite
    tau = [parse_series(f"tau{k}", normal_space(M.n, M.d), M.K) for k in range(1, M.d + 1)]
    assert _reverse_reality_composite(M) == tau
