"""Constancy of real-valued maps on manifolds of finite type.

The reflection identity propagates along Segre chains:

    N_l(v_j(S; w)) * D(w) = D(v_j(S; w)) * N_l(w)

and once some ``v_j(.; 0)`` has generic rank ``d`` this forces ``H`` to be
constant.  :func:`decide_constancy` runs the whole pipeline and re-verifies
the conclusion instead of taking it for granted.
:func:`enumerate_real_holomorphic` is an independent check by brute-force
linear algebra: it solves for every polynomial numerator of bounded degree
that is real on ``M`` for a fixed denominator.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations_with_replacement

from . import linalg
from .errors import DegreeOverflow, SpaceMismatch, ZeroDenominator
from .manifold import NormalManifold, map_space
from .reflection import (
    IdentityReport,
    MeromorphicMap,
    check_real_on_M,
    check_transverse_dependence,
    compare,
    reduce_to_transverse,
)
from .scalars import I, GaussianRational
from .segre import DEFAULT_SEED, FiniteTypeVerdict, chain_space, finite_type_search, segre_vj
from .series import TruncatedSeries, VariableSpace

__all__ = [
    "Constancy",
    "ConstancyVerdict",
    "verify_prolongation",
    "decide_constancy",
    "check_orbit_vanishing",
    "enumerate_real_holomorphic",
    "RealSolutionSpace",
]


class Constancy(str, Enum):
    YES = "Yes"
    NOT_REAL_ON_M = "NotRealOnM"
    INFINITE_TYPE_UNDETERMINED = "InfiniteTypeUndetermined"
    THEOREM_VIOLATION_SUSPECTED = "TheoremViolationSuspected"
    TRUNCATION_INSUFFICIENT = "TruncationInsufficient"


@dataclass(frozen=True)
class ConstancyVerdict:
    """Pipeline outcome; ``constant`` is ``YES`` only with every supporting check passed."""

    constant: Constancy
    real_on_M: bool
    finite_type: FiniteTypeVerdict | None
    value: tuple | None = None
    witness: dict = field(default_factory=dict)
    notes: tuple = ()

    def to_dict(self) -> dict:
        return {
            "constant": self.constant.value,
            "real_on_M": self.real_on_M,
            "finite_type": self.finite_type.to_dict() if self.finite_type else None,
            "value": [str(v) for v in self.value] if self.value is not None else None,
            "witness": {k: [r.to_dict() for r in v] for k, v in sorted(self.witness.items())},
            "notes": list(self.notes),
        }


def _as_transverse(H: MeromorphicMap) -> MeromorphicMap:
    if not H.transverse_only:
        raise SpaceMismatch("expected a map in the w variables only; use reduce_to_transverse")
    return H


def verify_prolongation(M: NormalManifold, H: MeromorphicMap, j: int) -> list:
    """Check ``N_l(v_j) D(w) = D(v_j) N_l(w)`` through the truncation order.

    When ``D(0) != 0`` the unit ``a_j = D(v_j) / D(w)`` is also formed and
    checked to equal 1 where all chain variables vanish.
    """
    H = _as_transverse(H)
    K = min(M.K, H.K)
    target = chain_space(M.n, M.d, j, True)
    v = [x.truncate(K) for x in segre_vj(M, j, with_w=True).v]
    w_names = H.space.block("w").names
    assignment = dict(zip(w_names, v))
    D_w = H.D.rename(target)
    D_v = H.D.compose(assignment, target)
    reports = []
    for l, N in enumerate(H.N, start=1):
        reports.append(compare(f"N(v{j})*D(w) = D(v{j})*N(w)",
                               N.compose(assignment, target) * D_w, D_v * N.rename(target), l))
    if H.D.constant_term:
        a_j = D_v * D_w.invert()
        chain = [name for b in target.blocks if b.name != "w" for name in b.names]
        one = TruncatedSeries.constant(target, a_j.K, 1)
        reports.append(compare(f"a{j}(0,w) = 1", a_j.set_zero(chain), one))
    return reports


def check_orbit_vanishing(M: NormalManifold, H: MeromorphicMap, j: int) -> list:
    """Check that ``N_l - N_l(0)`` and ``D - D(0)`` vanish on the image of ``v_j(.; 0)``."""
    H = _as_transverse(H)
    K = min(M.K, H.K)
    target = chain_space(M.n, M.d, j, False)
    v = [x.truncate(K) for x in segre_vj(M, j, with_w=False).v]
    assignment = dict(zip(H.space.block("w").names, v))
    zero = TruncatedSeries.zero(target, K)
    reports = []
    for l, N in enumerate(H.N, start=1):
        f = (N - N.constant_term).compose(assignment, target)
        reports.append(compare(f"(N-N(0))(v{j}(.;0)) = 0", f, zero, l))
    f = (H.D - H.D.constant_term).compose(assignment, target)
    reports.append(compare(f"(D-D(0))(v{j}(.;0)) = 0", f, zero))
    return reports


def _constancy_identity(H: MeromorphicMap) -> tuple:
    """Reports for ``N_l = c_l D`` and the constants ``c_l``."""
    D = H.D
    exp, dcoef = D.lowest_term()
    values = []
    reports = []
    for l, N in enumerate(H.N, start=1):
        c = N.coefficient(exp) / dcoef
        values.append(c)
        if D.constant_term:
            lhs, rhs = N * D.constant_term, D * N.constant_term
            label = "N(w)*D(0) = D(w)*N(0)"
        else:
            lhs, rhs = N, D * c
            label = "N(w) = c*D(w)"
        reports.append(compare(label, lhs, rhs, l))
    return tuple(values), reports


def decide_constancy(M: NormalManifold, H: MeromorphicMap, j_max: int | None = None,
                     seed: int = DEFAULT_SEED) -> ConstancyVerdict:
    """Decide whether a map real on ``M`` is constant, with supporting evidence."""
    witness: dict = {}
    real = check_real_on_M(M, H)
    witness["real_on_M"] = real
    if not all(real):
        return ConstancyVerdict(Constancy.NOT_REAL_ON_M, False, None, witness=witness)

    transverse = check_transverse_dependence(M, H)
    witness["transverse_dependence"] = transverse
    if not all(transverse):
        return ConstancyVerdict(
            Constancy.THEOREM_VIOLATION_SUSPECTED, True, None, witness=witness,
            notes=("map is real on M but depends on z; this indicates an engine defect",))
    try:
        Hw = reduce_to_transverse(H)
    except ZeroDenominator:
        return ConstancyVerdict(
            Constancy.TRUNCATION_INSUFFICIENT, True, None, witness=witness,
            notes=("D(0, w) vanishes through the truncation order; raise the order",))

    ft = finite_type_search(M, j_max, seed)
    if not ft.finite_type:
        for j in range(1, ft.j_max + 1):
            witness[f"orbit_vanishing_j{j}"] = check_orbit_vanishing(M, Hw, j)
            witness[f"prolongation_j{j}"] = verify_prolongation(M, Hw, j)
        return ConstancyVerdict(
            Constancy.INFINITE_TYPE_UNDETERMINED, True, ft, witness=witness,
            notes=("finite type not detected; constancy is neither claimed nor refuted",))

    j = ft.j
    witness[f"prolongation_j{j}"] = verify_prolongation(M, Hw, j)
    notes = []
    if not Hw.D.constant_term:
        # For coprime N, D this is impossible: D(v_j(.;0)) = 0 contradicts full rank.
        # What remains is a common factor, N = c*D.
        witness["denominator_on_orbit"] = check_orbit_vanishing(M, Hw, j)[-1:]
        notes.append("D(0) = 0: constant only through a common factor N = c*D")
    values, reports = _constancy_identity(Hw)
    witness["constancy"] = reports
    if not (all(reports) and all(witness[f"prolongation_j{j}"])):
        return ConstancyVerdict(
            Constancy.THEOREM_VIOLATION_SUSPECTED, True, ft, witness=witness,
            notes=tuple(notes) + ("constancy identities failed on a certified finite-type "
                                  "manifold; this indicates an engine defect",))
    return ConstancyVerdict(Constancy.YES, True, ft, values, witness, tuple(notes))


# -- independent oracle -------------------------------------------------------

@dataclass(frozen=True)
class RealSolutionSpace:
    """Real vector space of numerators ``N`` with ``N / D`` real on ``M``.

    ``basis`` holds series in the ``(z, w)`` space; coordinates are the real
    and imaginary parts of the coefficients at ``monomials``.
    """

    basis: tuple
    monomials: tuple
    denominator: TruncatedSeries
    deg_bound: int

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def _coords(self, N: TruncatedSeries) -> list:
        out = []
        for e in self.monomials:
            c = N.coefficient(e)
            out.extend([c.re, c.im])
        return out

    def contains(self, N: TruncatedSeries) -> bool:
        rows = [self._coords(b) for b in self.basis]
        base = linalg.rational_rank(rows, 2 * len(self.monomials))
        return linalg.rational_rank(rows + [self._coords(N)], 2 * len(self.monomials)) == base

    def equals_span(self, others) -> bool:
        """Whether ``others`` spans exactly this space over the reals."""
        others = list(others)
        ncols = 2 * len(self.monomials)
        mine = [self._coords(b) for b in self.basis]
        theirs = [self._coords(b) for b in others]
        r = linalg.rational_rank(mine, ncols)
        return (linalg.rational_rank(theirs, ncols) == r
                and linalg.rational_rank(mine + theirs, ncols) == r)


def _monomials(nvars: int, deg_bound: int) -> list:
    out = []
    for deg in range(deg_bound + 1):
        for combo in combinations_with_replacement(range(nvars), deg):
            e = [0] * nvars
            for k in combo:
                e[k] += 1
            out.append(tuple(e))
    return sorted(set(out), key=lambda e: (sum(e), tuple(-x for x in e)))


def enumerate_real_holomorphic(M: NormalManifold, D_fixed: TruncatedSeries | None,
                               deg_bound: int) -> RealSolutionSpace:
    """All polynomial numerators of degree ``<= deg_bound`` making ``N / D_fixed`` real on ``M``.

    The real-on-M identity is linear in the real and imaginary parts of the
    unknown coefficients; the exact system from coefficient matching through
    degree ``K`` is solved over the rationals.
    """
    if 2 * deg_bound > M.K:
        raise DegreeOverflow(f"deg_bound {deg_bound} exceeds K/2 = {M.K / 2}")
    msp = map_space(M.n, M.d)
    K = M.K
    D = TruncatedSeries.constant(msp, K, 1) if D_fixed is None else D_fixed.truncate(K)
    if D.space != msp:
        raise SpaceMismatch(f"denominator must live in {msp!r}")
    if D.is_zero():
        raise ZeroDenominator("fixed denominator is zero")
    sp = M.space
    z = list(sp.block("z").names)
    chi = list(sp.block("chi").names)
    tau = list(sp.block("tau").names)
    to_M = {name: TruncatedSeries.variable(sp, K, name) for name in z}
    to_M.update(zip(msp.block("w").names, M.Q))
    conj_names = dict(zip(msp.names, chi + tau))
    D_on_M = D.compose(to_M, sp)
    Dbar = D.conjugate().rename(sp, conj_names)

    monomials = _monomials(len(msp), deg_bound)
    columns = []
    for e in monomials:
        m = TruncatedSeries(msp, K, {e: 1})
        A = Dbar * m.compose(to_M, sp)
        B = m.rename(sp, conj_names) * D_on_M
        columns.append(A - B)          # real part of the unknown coefficient
        columns.append((A + B) * I)    # imaginary part
    keys = sorted({e for col in columns for e in col.terms})
    rows = []
    for e in keys:
        coeffs = [col.coefficient(e) for col in columns]
        rows.append([c.re for c in coeffs])
        rows.append([c.im for c in coeffs])
    basis = []
    for vec in linalg.nullspace(rows, len(columns)):
        terms = {}
        for k, e in enumerate(monomials):
            c = GaussianRational(vec[2 * k], vec[2 * k + 1])
            if c:
                terms[e] = c
        basis.append(TruncatedSeries(msp, K, terms))
    return RealSolutionSpace(tuple(basis), tuple(monomials), D, deg_bound)
