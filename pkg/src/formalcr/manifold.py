"""Formal generic submanifolds: normal-coordinate graphs and defining systems.

A manifold of CR dimension ``n`` and codimension ``d`` in normal coordinates
is the graph ``w = Q(z, chi, tau)`` with ``Q(z, 0, tau) = Q(0, chi, tau) = tau``.
Reality means ``Q(z, chi, Qbar(chi, z, w)) = w``, where ``Qbar`` has the
conjugated coefficients of ``Q``.

Variable conventions: ``z1..zn`` holomorphic, ``chi1..chin`` their conjugates,
``w1..wd`` transverse, ``tau1..taud`` their conjugates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import linalg
from .errors import (
    DivisionByZero,
    NoConvergenceAtOrder,
    NotNormalForm,
    NotReal,
    NotThroughOrigin,
    RankDeficientAtOrigin,
    SingularTransverseBlock,
)
from .series import TruncatedSeries, VariableSpace, make_block

__all__ = [
    "normal_space",
    "map_space",
    "transverse_space",
    "rho_space",
    "NormalManifold",
    "DefiningSystem",
    "validate_normal_form",
    "conjugate_Q",
    "validate_defining_system",
    "solve_graph_from_rho",
    "conjugate_swap",
    "relabel_transverse",
]


def normal_space(n: int, d: int) -> VariableSpace:
    """The ``(z, chi, tau)`` space in which ``Q`` lives."""
    return VariableSpace([make_block("z", "z", n), make_block("chi", "chi", n),
                          make_block("tau", "tau", d)])


def map_space(n: int, d: int) -> VariableSpace:
    """The ambient ``(z, w)`` space of holomorphic functions."""
    return VariableSpace([make_block("z", "z", n), make_block("w", "w", d)])


def transverse_space(d: int) -> VariableSpace:
    return VariableSpace([make_block("w", "w", d)])


def rho_space(n: int, d: int) -> VariableSpace:
    """``(Z, zeta) = ((z, w), (chi, tau))`` for defining functions."""
    return VariableSpace([make_block("z", "z", n), make_block("w", "w", d),
                          make_block("chi", "chi", n), make_block("tau", "tau", d)])


def _names(prefix: str, count: int, suffix: str = "") -> list:
    return [f"{prefix}{k}{suffix}" for k in range(1, count + 1)]


def _fail(cls, identity: str, component: int, series: TruncatedSeries,
          expected: TruncatedSeries):
    e, got, want = series.first_difference(expected)
    mono = series.space.monomial(e)
    raise cls(
        f"{identity} fails for component {component} at monomial "
        f"{series.space.format_monomial(e)}: {got} != {want}",
        identity=identity, component=component, monomial=mono, lhs=got, rhs=want)


@dataclass(frozen=True)
class NormalManifold:
    """A validated manifold ``w = Q(z, chi, tau)`` known through degree ``K``."""

    n: int
    d: int
    K: int
    Q: tuple
    name: str = field(default="", compare=False)

    @property
    def space(self) -> VariableSpace:
        return self.Q[0].space

    def conjugate_Q_into(self, target: VariableSpace, first: Sequence[str],
                         second: Sequence[str], third: Sequence[str]) -> list:
        """The series ``Qbar_j(first, second, third)`` in ``target``.

        ``first`` replaces the z-slot, ``second`` the chi-slot and ``third``
        the tau-slot of ``Q`` after conjugating coefficients.
        """
        mapping = dict(zip(_names("z", self.n), first))
        mapping.update(zip(_names("chi", self.n), second))
        mapping.update(zip(_names("tau", self.d), third))
        return [q.conjugate().rename(target, mapping) for q in self.Q]

    def Q_into(self, target: VariableSpace, first: Sequence[str], second: Sequence[str],
               third: Sequence[TruncatedSeries]) -> list:
        """``Q_j(first, second, third)``: variables in the first two slots, series in the third."""
        assignment = {}
        for src, dst in zip(_names("z", self.n), first):
            assignment[src] = TruncatedSeries.variable(target, self.K, dst)
        for src, dst in zip(_names("chi", self.n), second):
            assignment[src] = TruncatedSeries.variable(target, self.K, dst)
        assignment.update(zip(_names("tau", self.d), third))
        return [q.compose(assignment, target) for q in self.Q]


def _check_normality(Q: Sequence[TruncatedSeries], n: int, d: int) -> None:
    z = _names("z", n)
    chi = _names("chi", n)
    for j, q in enumerate(Q, start=1):
        tau_j = TruncatedSeries.variable(q.space, q.K, f"tau{j}")
        for zeroed, label in ((chi, "Q(z,0,tau) = tau"), (z, "Q(0,chi,tau) = tau")):
            restricted = q.set_zero(zeroed)
            if restricted != tau_j:
                _fail(NotNormalForm, label, j, restricted, tau_j)


def _reality_composite(Q: Sequence[TruncatedSeries], n: int, d: int, K: int) -> list:
    """``Q(z, chi, Qbar(chi, z, w))`` in the ``(z, chi, w)`` space."""
    target = VariableSpace([make_block("z", "z", n), make_block("chi", "chi", n),
                            make_block("w", "w", d)])
    M = NormalManifold(n, d, K, tuple(Q))
    qbar = M.conjugate_Q_into(target, _names("chi", n), _names("z", n), _names("w", d))
    return M.Q_into(target, _names("z", n), _names("chi", n), qbar)


def _reverse_reality_composite(M: NormalManifold) -> list:
    """``Qbar(chi, z, Q(z, chi, tau))`` in the normal space."""
    sp = M.space
    assignment = {}
    for a, b in zip(_names("z", M.n), _names("chi", M.n)):
        assignment[a] = TruncatedSeries.variable(sp, M.K, b)
        assignment[b] = TruncatedSeries.variable(sp, M.K, a)
    assignment.update(zip(_names("tau", M.d), M.Q))
    return [q.conjugate().compose(assignment, sp) for q in M.Q]


def validate_normal_form(Q: Sequence[TruncatedSeries], name: str = "") -> NormalManifold:
    """Check normality and reality of ``Q`` and wrap it as a :class:`NormalManifold`.

    Raises :class:`NotNormalForm` or :class:`NotReal` naming the identity,
    the component (1-based) and the graded-lex least offending monomial.
    """
    Q = tuple(Q)
    if not Q:
        raise ValueError("codimension d = 0 is not allowed")
    sp = Q[0].space
    if any(q.space != sp for q in Q):
        raise ValueError("all components of Q must share one space")
    n = len(sp.block("z"))
    d = len(sp.block("tau"))
    if sp != normal_space(n, d):
        raise ValueError(f"Q must live in the (z, chi, tau) space, got {sp!r}")
    if n == 0:
        raise ValueError("CR dimension n = 0 is not allowed")
    if d != len(Q):
        raise ValueError(f"expected {d} components of Q, got {len(Q)}")
    K = min(q.K for q in Q)
    Q = tuple(q.truncate(K) for q in Q)
    _check_normality(Q, n, d)
    composite = _reality_composite(Q, n, d, K)
    for j, c in enumerate(composite, start=1):
        w_j = TruncatedSeries.variable(c.space, c.K, f"w{j}")
        if c != w_j:
            _fail(NotReal, "Q(z,chi,Qbar(chi,z,w)) = w", j, c, w_j)
    M = NormalManifold(n, d, K, Q, name)
    for j, c in enumerate(_reverse_reality_composite(M), start=1):
        tau_j = TruncatedSeries.variable(c.space, c.K, f"tau{j}")
        if c != tau_j:
            _fail(NotReal, "Qbar(chi,z,Q(z,chi,tau)) = tau", j, c, tau_j)
    return M


def conjugate_Q(M: NormalManifold) -> list:
    """``Qbar(chi, z^1, w)`` in the space with blocks ``chi, z_1, w``."""
    target = VariableSpace([make_block("chi", "chi", M.n),
                            make_block("z_1", "z", M.n, prefix="z", suffix="_1"),
                            make_block("w", "w", M.d)])
    return M.conjugate_Q_into(target, _names("chi", M.n), _names("z", M.n, "_1"),
                              _names("w", M.d))


# -- defining functions -------------------------------------------------------

def conjugate_swap(f: TruncatedSeries) -> TruncatedSeries:
    """``fbar(zeta, Z)``: conjugate coefficients and swap ``z<->chi``, ``w<->tau``."""
    sp = f.space
    n = len(sp.block("z"))
    d = len(sp.block("w"))
    mapping = {}
    for a, b in zip(_names("z", n), _names("chi", n)):
        mapping[a], mapping[b] = b, a
    for a, b in zip(_names("w", d), _names("tau", d)):
        mapping[a], mapping[b] = b, a
    return f.conjugate().rename(sp, mapping)


@dataclass(frozen=True)
class DefiningSystem:
    """Validated real defining functions ``rho_1..rho_d`` in ``(z, w, chi, tau)``."""

    n: int
    d: int
    K: int
    rho: tuple

    @property
    def N_amb(self) -> int:
        return self.n + self.d

    @property
    def space(self) -> VariableSpace:
        return self.rho[0].space


def _linear_part(rho: Sequence[TruncatedSeries], names: Sequence[str]) -> list:
    return [[r.coefficient({v: 1}) for v in names] for r in rho]


def relabel_transverse(rho: Sequence[TruncatedSeries], transverse: Sequence[str]) -> list:
    """Rename so that the designated holomorphic variables become ``w1..wd``.

    The remaining holomorphic variables become ``z1..zn`` in their original
    order, and conjugate variables follow their partners.
    """
    sp = rho[0].space
    n = len(sp.block("z"))
    d = len(sp.block("w"))
    Z = _names("z", n) + _names("w", d)
    zeta = _names("chi", n) + _names("tau", d)
    if len(transverse) != d or len(set(transverse)) != d or not set(transverse) <= set(Z):
        raise ValueError(f"transverse split must name {d} distinct variables among {Z}")
    rest = [v for v in Z if v not in transverse]
    order = rest + list(transverse)
    mapping = {}
    for src, dst in zip(order, Z):
        mapping[src] = dst
        mapping[zeta[Z.index(src)]] = zeta[Z.index(dst)]
    return [r.rename(sp, mapping) for r in rho]


def validate_defining_system(rho: Sequence[TruncatedSeries]) -> DefiningSystem:
    """Check reality ``rhobar(zeta, Z) = rho(Z, zeta)`` and the rank condition at 0."""
    rho = tuple(rho)
    if not rho:
        raise ValueError("need at least one defining function")
    sp = rho[0].space
    n = len(sp.block("z"))
    d = len(sp.block("w"))
    if sp != rho_space(n, d) or len(rho) != d:
        raise ValueError("rho must be d series in the (z, w, chi, tau) space")
    if n == 0:
        raise ValueError("CR dimension n = 0 is not allowed")
    K = min(r.K for r in rho)
    rho = tuple(r.truncate(K) for r in rho)
    for j, r in enumerate(rho, start=1):
        if r.constant_term:
            raise NotThroughOrigin(f"rho{j}(0) = {r.constant_term} != 0")
        swapped = conjugate_swap(r)
        if swapped != r:
            _fail(NotReal, "rhobar(zeta,Z) = rho(Z,zeta)", j, swapped, r)
    lin = _linear_part(rho, _names("z", n) + _names("w", d))
    if linalg.rank(lin) < d:
        raise RankDeficientAtOrigin(
            f"holomorphic differentials of rho at 0 have rank {linalg.rank(lin)} < {d}")
    return DefiningSystem(n, d, K, rho)


def solve_graph_from_rho(system: DefiningSystem) -> list:
    """Solve ``rho(z, w, chi, tau) = 0`` for ``w = Q(z, chi, tau)`` order by order.

    The transverse variables are ``w1..wd``; use :func:`relabel_transverse`
    beforehand for another split.  The result is not checked for normal form.
    """
    n, d, K = system.n, system.d, system.K
    w_names = _names("w", d)
    A = _linear_part(system.rho, w_names)
    try:
        A_inv = linalg.inverse(A)
    except DivisionByZero:
        raise SingularTransverseBlock("d rho / d w at 0 is singular for this split") from None
    sp = system.space
    remainders = []
    for j, r in enumerate(system.rho):
        lin = TruncatedSeries.zero(sp, K)
        for k, w in enumerate(w_names):
            lin = lin + TruncatedSeries.variable(sp, K, w) * A[j][k]
        remainders.append(r - lin)
    target = normal_space(n, d)
    sol = [TruncatedSeries.zero(target, K) for _ in range(d)]
    for _ in range(K + 2):
        assignment = dict(zip(w_names, sol))
        R = [rem.compose(assignment, target) for rem in remainders]
        new = []
        for j in range(d):
            acc = TruncatedSeries.zero(target, K)
            for k in range(d):
                acc = acc - R[k] * A_inv[j][k]
            new.append(acc)
        if new == sol:
            break
        sol = new
    assignment = dict(zip(w_names, sol))
    for j, r in enumerate(system.rho, start=1):
        residual = r.compose(assignment, target)
        if not residual.is_zero():
            raise NoConvergenceAtOrder(f"residual of rho{j} is {residual}")
    return sol
