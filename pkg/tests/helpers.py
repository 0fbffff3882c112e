"""Shared builders and hypothesis strategies for the test suite."""

from __future__ import annotations

from pathlib import Path

import sympy
from hypothesis import strategies as st

from formalcr.series import Block
from formalcr import (
    GaussianRational,
    MeromorphicMap,
    TruncatedSeries,
    VariableSpace,
    load_manifold,
    map_space,
    normal_space,
    parse_series,
    transverse_space,
    validate_normal_form,
)

CORPUS = Path(__file__).resolve().parent.parent / "corpus"

# criterion number -> "ACCEPTANCE n PASS|FAIL ..." line, printed at session end
ACCEPTANCE_LINES: dict = {}

CORPUS_MANIFOLDS = ["lewy", "zfour", "codim2", "flat", "lebl11", "lebl12", "lebl23"]
FINITE_TYPE = ["lewy", "zfour", "codim2"]
INFINITE_TYPE = ["flat", "lebl11", "lebl12", "lebl23"]


def corpus_manifold(name: str, K: int = 8):
    return load_manifold(CORPUS / f"{name}.man", K)[0]


def manifold(n: int, d: int, *Q: str, K: int = 8):
    sp = normal_space(n, d)
    return validate_normal_form([parse_series(q, sp, K) for q in Q])


def lebl(p: int, q: int, K: int = 8):
    return manifold(1, 2, f"tau1*exp(i*{p}*z1*chi1)", f"tau2*exp(i*{q}*z1*chi1)", K=K)


def hmap(n: int, d: int, N, D: str, K: int = 8, transverse: bool = False):
    sp = transverse_space(d) if transverse else map_space(n, d)
    if isinstance(N, str):
        N = [N]
    return MeromorphicMap.make([parse_series(x, sp, K) for x in N], parse_series(D, sp, K))


def space(*names: str) -> VariableSpace:
    """A one-block space with the given variable names."""
    return VariableSpace([Block("x", "test", tuple(names))])


# -- sympy oracle --------------------------------------------------------------

def to_sympy(f: TruncatedSeries):
    syms = [sympy.Symbol(n) for n in f.space.names]
    expr = sympy.Integer(0)
    for e, c in f.terms.items():
        term = sympy.Rational(int(c.re.numerator), int(c.re.denominator)) + sympy.I * sympy.Rational(
            int(c.im.numerator), int(c.im.denominator))
        for s, k in zip(syms, e):
            term *= s ** k
        expr += term
    return sympy.expand(expr)


def truncate_sympy(expr, names, K):
    """Drop all terms of total degree > K from a sympy polynomial."""
    syms = [sympy.Symbol(n) for n in names]
    poly = sympy.Poly(sympy.expand(expr), *syms)
    out = sympy.Integer(0)
    for monom, coeff in poly.terms():
        if sum(monom) <= K:
            term = coeff
            for s, k in zip(syms, monom):
                term *= s ** k
            out += term
    return sympy.expand(out)


# -- hypothesis strategies ------------------------------------------------------

small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
gaussians = st.builds(GaussianRational, small_rationals, small_rationals)
nonzero_gaussians = gaussians.filter(bool)


@st.composite
def series(draw, sp: VariableSpace, K: int, max_terms: int = 6, max_degree: int | None = None,
           zero_constant: bool = False, unit: bool = False):
    top = K if max_degree is None else max_degree
    n = len(sp)
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        e = tuple(draw(st.lists(st.integers(0, top), min_size=n, max_size=n)))
        if sum(e) > top:
            continue
        terms[e] = draw(gaussians)
    zero = (0,) * n
    if zero_constant:
        terms.pop(zero, None)
    if unit:
        terms[zero] = draw(nonzero_gaussians)
    return TruncatedSeries(sp, K, terms)


def real_map_cases():
    """(manifold name, map, coprime) with the map real on the manifold.

    ``coprime`` is False where N and D share a factor by construction.
    """
    cases = []
    for name in CORPUS_MANIFOLDS:
        M = corpus_manifold(name)
        cases.append((name, hmap(M.n, M.d, "1/2", "1"), True))
        cases.append((name, hmap(M.n, M.d, "-3 - 3*w1", "1 + w1"), False))
    cases += [
        ("flat", hmap(1, 1, "w1", "1"), True),
        ("flat", hmap(1, 1, "w1^2 - 2*w1", "1 + w1"), True),
        ("lebl11", hmap(1, 2, "w1", "w2"), True),
        ("lebl11", hmap(1, 2, "w1^2 + w2^2", "w1*w2"), True),
        ("lebl12", hmap(1, 2, "w1^2", "w2"), True),
        ("lebl23", hmap(1, 2, "w1^3", "w2^2"), True),
        ("lewy", hmap(1, 1, "w1", "w1"), False),
    ]
    return cases
