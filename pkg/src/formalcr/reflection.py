"""Real-valued formal meromorphic maps and the reflection identities.

A map ``H = N / D`` takes ``M`` into the reals when, along the canonical
parametrization ``(z, chi, tau) -> ((z, Q(z, chi, tau)), (chi, tau))``,

    Dbar(chi, tau) * N_j(z, Q) = Nbar_j(chi, tau) * D(z, Q)          (real_on_M)

Substituting ``tau = Qbar(chi, z_1, w)`` and cancelling the conjugate factor
gives the cross identity

    D(z_1, w) * N_j(z, v1) = D(z, v1) * N_j(z_1, w),   v1 = Q(z, chi, Qbar(chi, z_1, w))

All checks are denominator-free and exact through the truncation order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import NonUnit, SpaceMismatch, ZeroDenominator
from .manifold import NormalManifold, transverse_space
from .scalars import GaussianRational
from .segre import chain_space, segre_v1
from .series import TruncatedSeries, VariableSpace

__all__ = [
    "MeromorphicMap",
    "IdentityReport",
    "check_real_on_M",
    "verify_cross_identity",
    "compute_unit_a",
    "check_unit_a",
    "check_transverse_dependence",
    "reduce_to_transverse",
    "compare",
]


@dataclass(frozen=True)
class MeromorphicMap:
    """``H = (N_1, ..., N_m) / D`` with series in ``(z, w)`` or in ``w`` alone.

    Use :meth:`make` to build one; it divides ``N`` and ``D`` by the
    graded-lex least coefficient of ``D`` so that this coefficient is 1.
    """

    N: tuple
    D: TruncatedSeries
    K: int
    name: str = field(default="", compare=False)

    @classmethod
    def make(cls, N: Sequence[TruncatedSeries], D: TruncatedSeries, name: str = "") -> "MeromorphicMap":
        N = tuple(N)
        if not N:
            raise ValueError("a map needs at least one component")
        if any(f.space != D.space for f in N):
            raise SpaceMismatch("numerators and denominator must share one space")
        if not (D.space.has_block("w") and {b.name for b in D.space.blocks} <= {"z", "w"}):
            raise SpaceMismatch(f"maps live in the (z, w) or (w) space, got {D.space!r}")
        K = min([D.K] + [f.K for f in N])
        D = D.truncate(K)
        N = tuple(f.truncate(K) for f in N)
        lowest = D.lowest_term()
        if lowest is None:
            raise ZeroDenominator("denominator vanishes through the truncation order")
        scale = lowest[1].inverse()
        return cls(tuple(f * scale for f in N), D * scale, K, name)

    @property
    def m(self) -> int:
        return len(self.N)

    @property
    def space(self) -> VariableSpace:
        return self.D.space

    @property
    def transverse_only(self) -> bool:
        return not self.space.has_block("z")

    @property
    def n(self) -> int:
        return len(self.space.block("z")) if self.space.has_block("z") else 0

    @property
    def d(self) -> int:
        return len(self.space.block("w"))


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of checking ``lhs == rhs`` coefficientwise through ``degree``."""

    identity: str
    holds: bool
    degree: int
    component: int | None = None
    monomial: dict | None = None
    lhs_coefficient: GaussianRational | None = None
    rhs_coefficient: GaussianRational | None = None
    monomial_text: str | None = None

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict:
        out = {
            "identity": self.identity,
            "component": self.component,
            "holds": self.holds,
            "degrees_checked": self.degree,
        }
        if not self.holds:
            out["first_failing_monomial"] = dict(sorted(self.monomial.items()))
            out["first_failing_monomial_text"] = self.monomial_text
            out["lhs_coefficient"] = str(self.lhs_coefficient)
            out["rhs_coefficient"] = str(self.rhs_coefficient)
        return out


def compare(identity: str, lhs: TruncatedSeries, rhs: TruncatedSeries,
            component: int | None = None) -> IdentityReport:
    """Report on ``lhs == rhs`` through the smaller of the two bounds."""
    degree = min(lhs.K, rhs.K)
    diff = lhs.first_difference(rhs)
    if diff is None:
        return IdentityReport(identity, True, degree, component)
    e, a, b = diff
    return IdentityReport(identity, False, degree, component, lhs.space.monomial(e), a, b,
                          lhs.space.format_monomial(e))


def _check_compatible(M: NormalManifold, H: MeromorphicMap) -> None:
    if H.d != M.d or (not H.transverse_only and H.n != M.n):
        raise SpaceMismatch(f"map dimensions (n={H.n}, d={H.d}) do not match manifold "
                            f"(n={M.n}, d={M.d})")


def _at(f: TruncatedSeries, target: VariableSpace, z_names: Sequence[str] | None,
        w_images: Sequence[TruncatedSeries]) -> TruncatedSeries:
    """``f(z_names, w_images)``; ``z_names = None`` sets ``z`` to zero."""
    assignment = {}
    if f.space.has_block("z"):
        for k, src in enumerate(f.space.block("z").names):
            if z_names is None:
                assignment[src] = TruncatedSeries.zero(target, f.K)
            else:
                assignment[src] = TruncatedSeries.variable(target, f.K, z_names[k])
    assignment.update(zip(f.space.block("w").names, w_images))
    return f.compose(assignment, target)


def _rename_zw(f: TruncatedSeries, target: VariableSpace, z_names, w_names) -> TruncatedSeries:
    """``f`` with its z/w variables renamed (or conjugate-slot renamed)."""
    mapping = {}
    if f.space.has_block("z"):
        mapping.update(zip(f.space.block("z").names, z_names))
    mapping.update(zip(f.space.block("w").names, w_names))
    return f.rename(target, mapping)


def check_real_on_M(M: NormalManifold, H: MeromorphicMap) -> list:
    """Check ``Dbar(chi, tau) N_j(z, Q) = Nbar_j(chi, tau) D(z, Q)`` for every component."""
    _check_compatible(M, H)
    sp = M.space
    K = min(M.K, H.K)
    z = list(sp.block("z").names)
    chi = list(sp.block("chi").names)
    tau = list(sp.block("tau").names)
    Q = [q.truncate(K) for q in M.Q]
    D_on_M = _at(H.D, sp, z, Q)
    Dbar = _rename_zw(H.D.conjugate(), sp, chi, tau)
    reports = []
    for j, N in enumerate(H.N, start=1):
        lhs = Dbar * _at(N, sp, z, Q)
        rhs = _rename_zw(N.conjugate(), sp, chi, tau) * D_on_M
        reports.append(compare("Dbar(chi,tau)*N(z,Q) = Nbar(chi,tau)*D(z,Q)", lhs, rhs, j))
    return reports


def _v1_parts(M: NormalManifold, H: MeromorphicMap):
    K = min(M.K, H.K)
    target = chain_space(M.n, M.d, 1, True)
    v1 = [v.truncate(K) for v in segre_v1(M)]
    z = [f"z{i}" for i in range(1, M.n + 1)]
    z1 = [f"z{i}_1" for i in range(1, M.n + 1)]
    w = list(target.block("w").names)
    if H.transverse_only:
        z = z1 = []
    return target, v1, z, z1, w


def verify_cross_identity(M: NormalManifold, H: MeromorphicMap) -> list:
    """Check ``D(z_1, w) N_j(z, v1) = D(z, v1) N_j(z_1, w)`` in ``(z, chi, z_1, w)``."""
    _check_compatible(M, H)
    target, v1, z, z1, w = _v1_parts(M, H)
    D_base = _rename_zw(H.D, target, z1, w)
    D_v1 = _at(H.D, target, z, v1)
    reports = []
    for j, N in enumerate(H.N, start=1):
        lhs = D_base * _at(N, target, z, v1)
        rhs = D_v1 * _rename_zw(N, target, z1, w)
        reports.append(compare("D(z1,w)*N(z,v1) = D(z,v1)*N(z1,w)", lhs, rhs, j))
    return reports


def compute_unit_a(M: NormalManifold, H: MeromorphicMap) -> TruncatedSeries:
    """The unit ``a = D(z, v1) / D(z_1, w)``; requires ``D(0) != 0``."""
    _check_compatible(M, H)
    if not H.D.constant_term:
        raise NonUnit("D(0) = 0: the unit a is only computed when D is a unit")
    target, v1, z, z1, w = _v1_parts(M, H)
    return _at(H.D, target, z, v1) * _rename_zw(H.D, target, z1, w).invert()


def check_unit_a(M: NormalManifold, H: MeromorphicMap, a: TruncatedSeries) -> list:
    """Postconditions on ``a``: ``a(0) = 1``, both reflection lines, ``a(z, chi, z, w) = 1``."""
    target, v1, z, z1, w = _v1_parts(M, H)
    one = TruncatedSeries.constant(target, a.K, 1)
    reports = [compare("a(0) = 1", TruncatedSeries.constant(target, a.K, a.constant_term), one)]
    for j, N in enumerate(H.N, start=1):
        reports.append(compare("N(z,v1) = a*N(z1,w)", _at(N, target, z, v1),
                               a * _rename_zw(N, target, z1, w), j))
    reports.append(compare("D(z,v1) = a*D(z1,w)", _at(H.D, target, z, v1),
                           a * _rename_zw(H.D, target, z1, w)))
    diag = a.rename(target, {f"z{i}_1": f"z{i}" for i in range(1, M.n + 1)})
    reports.append(compare("a(z,chi,z,w) = 1", diag, one))
    return reports


def check_transverse_dependence(M: NormalManifold, H: MeromorphicMap) -> list:
    """Check ``N_j(z, w) D(0, w) = D(z, w) N_j(0, w)`` in the ``(z, w)`` space."""
    _check_compatible(M, H)
    sp = H.space
    if H.transverse_only:
        return [IdentityReport("N(z,w)*D(0,w) = D(z,w)*N(0,w)", True, H.K, j)
                for j in range(1, H.m + 1)]
    zs = sp.block("z").names
    D0 = H.D.set_zero(zs)
    return [compare("N(z,w)*D(0,w) = D(z,w)*N(0,w)", N * D0, H.D * N.set_zero(zs), j)
            for j, N in enumerate(H.N, start=1)]


def reduce_to_transverse(H: MeromorphicMap) -> MeromorphicMap:
    """``N(0, w) / D(0, w)`` as a map in ``w`` alone, renormalized."""
    if H.transverse_only:
        return H
    target = transverse_space(H.d)
    D0 = H.D.rename(target, drop_unmapped=True)
    if D0.is_zero():
        raise ZeroDenominator("D(0, w) vanishes through the truncation order")
    N0 = [N.rename(target, drop_unmapped=True) for N in H.N]
    return MeromorphicMap.make(N0, D0, H.name)
