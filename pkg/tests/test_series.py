import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from formalcr import (
    DegreeOverflow,
    I,
    NonNilpotentArgument,
    NonNilpotentSubstitution,
    NonUnit,
    SpaceMismatch,
    TruncatedSeries,
    UnknownVariable,
    parse_series,
)
from helpers import series, space, to_sympy, truncate_sympy

Z = space("z")
ZC = space("z", "chi")
XYZW = space("x", "y", "u", "v")


def S(text, sp=ZC, K=6):
    return parse_series(text, sp, K)


class TestExamples:
    def test_add(self):
        assert S("1 + z") + S("-1 + z") == S("2*z")
        f = S("1 + 3*z*chi")
        assert f + TruncatedSeries.zero(ZC, 6) == f
        assert S("z^2", K=1) + S("z", K=1) == S("z", K=1)

    def test_mul(self):
        assert S("1 + i*z") * S("1 - i*z") == S("1 + z^2")
        assert S("z + chi") * S("z + chi") == S("z^2 + 2*z*chi + chi^2")
        assert S("1 + z", K=1) * S("1 + z", K=1) == S("1 + 2*z", K=1)

    def test_compose(self):
        sp = space("z", "chi", "tau", "z1", "w")
        Q = parse_series("tau + 2*i*z*chi", sp, 6)
        Qbar = parse_series("w - 2*i*chi*z1", sp, 6)
        assert Q.compose({"tau": Qbar}, sp) == parse_series("w - 2*i*chi*z1 + 2*i*z*chi", sp, 6)
        f = S("1 + z^3*chi - i*chi^2")
        assert f.compose({"z": S("z"), "chi": S("chi")}) == f
        assert S("z^2", K=2).compose({"z": S("z + chi", K=2)}) == S("z^2 + 2*z*chi + chi^2", K=2)

    def test_invert(self):
        assert S("1 - z", K=3).invert() == S("1 + z + z^2 + z^3", K=3)
        assert S("1 + i*z", K=2).invert() == S("1 - i*z - z^2", K=2)
        assert S("2").invert() == S("1/2")

    def test_derivative(self):
        sp = space("z", "chi", "tau")
        d = parse_series("tau + 2*i*z*chi", sp, 6).derivative("z")
        assert d == parse_series("2*i*chi", sp, 5)
        assert S("7").derivative("z").is_zero()
        assert S("z^2*chi^2").derivative("chi") == S("2*z^2*chi", K=5)

    def test_exp(self):
        assert S("i*z*chi", K=4).exp() == S("1 + i*z*chi - 1/2*z^2*chi^2", K=4)
        assert S("0").exp() == S("1")
        assert S("i*2*z*chi", K=2).exp() == S("1 + 2*i*z*chi", K=2)

    def test_conjugate(self):
        assert S("3/2 - 5*i*z").conjugate() == S("3/2 + 5*i*z")


class TestErrors:
    def test_space_mismatch(self):
        with pytest.raises(SpaceMismatch):
            S("z") + S("z", Z)

    def test_non_unit(self):
        with pytest.raises(NonUnit):
            S("z").invert()
        with pytest.raises(NonUnit):
            S("1") / S("z")

    def test_non_nilpotent(self):
        with pytest.raises(NonNilpotentSubstitution):
            S("z^2").compose({"z": S("1 + z")})
        with pytest.raises(NonNilpotentArgument):
            S("1 + z").exp()

    def test_polynomial_composition_allows_units(self):
        f = S("z^2").compose({"z": S("1 + chi")}, polynomial=True)
        assert f == S("1 + 2*chi + chi^2")

    def test_unknown_variable(self):
        with pytest.raises(UnknownVariable):
            S("z").derivative("w")

    def test_derivative_at_zero_order(self):
        with pytest.raises(DegreeOverflow):
            S("1", K=0).derivative("z")


def test_invariants_of_storage():
    f = TruncatedSeries(ZC, 2, {(0, 0): 0, (1, 0): 1, (3, 0): 5})
    assert dict(f.terms) == {(1, 0): 1}
    assert f != TruncatedSeries(ZC, 3, {(1, 0): 1})
    with pytest.raises(AttributeError):
        f.max_degree = 4


def test_str_is_graded_and_parseable():
    f = S("chi^2 + 2*z*chi + z^2 + 3 - i*z")
    assert str(f) == "3 - i*z + z^2 + 2*z*chi + chi^2"
    assert S(str(f)) == f
    assert str(S("(3/2 + 5*i)*z")) == "(3/2 + 5*i)*z"


# -- properties at K = 8 in up to four variables --------------------------------

K8 = 8
s4 = series(XYZW, K8)
s4_nil = series(XYZW, K8, zero_constant=True, max_degree=3)


@given(s4, s4, s4)
def test_ring_axioms(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert f + g == g + f
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f
    assert f * (g + h) == f * g + f * h
    assert f - f == TruncatedSeries.zero(XYZW, K8)


@given(series(XYZW, K8, max_degree=4), series(XYZW, K8, max_degree=4))
def test_faithful_product_matches_exact(f, g):
    assert to_sympy(f * g) == sympy.expand(to_sympy(f) * to_sympy(g))


@given(series(XYZW, K8), series(XYZW, K8))
def test_truncated_product_matches_truncated_exact(f, g):
    exact = truncate_sympy(to_sympy(f) * to_sympy(g), XYZW.names, K8)
    assert to_sympy(f * g) == exact


@settings(max_examples=60)
@given(series(XYZW, K8), st.tuples(s4_nil, s4_nil, s4_nil, s4_nil),
       st.tuples(s4_nil, s4_nil, s4_nil, s4_nil))
def test_compose_associative(f, a, b):
    names = XYZW.names
    A = dict(zip(names, a))
    B = dict(zip(names, b))
    AB = {x: A[x].compose(B, XYZW) for x in names}
    assert f.compose(A, XYZW).compose(B, XYZW) == f.compose(AB, XYZW)


@settings(max_examples=60)
@given(series(XYZW, K8, max_degree=3), st.tuples(s4_nil, s4_nil, s4_nil, s4_nil))
def test_compose_matches_sympy(f, a):
    syms = [sympy.Symbol(n) for n in XYZW.names]
    exact = to_sympy(f).subs({s: to_sympy(g) for s, g in zip(syms, a)}, simultaneous=True)
    expected = truncate_sympy(exact, XYZW.names, K8)
    assert to_sympy(f.compose(dict(zip(XYZW.names, a)), XYZW)) == expected


@given(series(XYZW, K8, unit=True))
def test_invert_two_sided(f):
    one = TruncatedSeries.constant(XYZW, K8, 1)
    g = f.invert()
    assert f * g == one and g * f == one


@given(s4, s4)
def test_conjugation_involution_and_multiplicative(f, g):
    assert f.conjugate().conjugate() == f
    assert (f * g).conjugate() == f.conjugate() * g.conjugate()
    assert (f + g).conjugate() == f.conjugate() + g.conjugate()


@settings(max_examples=50)
@given(series(XYZW, K8, zero_constant=True), series(XYZW, K8, zero_constant=True))
def test_exp_additive(f, g):
    assert (f + g).exp() == f.exp() * g.exp()


@given(series(XYZW, K8))
def test_derivative_matches_sympy(f):
    d = f.derivative("u")
    assert d.K == K8 - 1
    exact = sympy.diff(to_sympy(f), sympy.Symbol("u"))
    assert to_sympy(d) == truncate_sympy(exact, XYZW.names, K8 - 1)


@given(series(XYZW, K8))
def test_str_round_trip(f):
    assert parse_series(str(f), XYZW, K8) == f


def test_imaginary_unit_scaling():
    assert S("z") * I == S("i*z")
