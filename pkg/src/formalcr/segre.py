"""Iterated Segre maps and the generic-rank test for finite type.

The chain variables of depth ``j`` are ``z, chi, z_1, chi_1, ..., chi_{j-1}, z_j``
(``2j + 1`` blocks of length ``n``), optionally followed by the transverse
block ``w``.  The first Segre map is

    v1(z, chi, z_1; w) = Q(z, chi, Qbar(chi, z_1, w))

and deeper maps are obtained by feeding the chain shifted by one level into
the ``w`` slot of ``v1``.  The manifold is of finite type as soon as some
``v_j(.; 0)`` has generic rank ``d``; a rank claim is certified by one minor
of the Jacobian whose expansion has a nonzero coefficient inside the degree
window where the truncation is exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from . import linalg
from .manifold import NormalManifold
from .parser import constant_value
from .scalars import GaussianRational
from .series import TruncatedSeries, VariableSpace, make_block

__all__ = [
    "chain_space",
    "chain_variables",
    "segre_v1",
    "segre_vj",
    "jacobian",
    "minor_series",
    "certify_minor",
    "generic_rank",
    "finite_type_search",
    "revalidate_certificate",
    "full_minor_rank",
    "SegreChainResult",
    "RankCertificate",
    "FiniteTypeVerdict",
    "DEFAULT_SEED",
    "EVALUATION_BOX",
]

DEFAULT_SEED = 20240917
EVALUATION_BOX = 1000
EVALUATION_TRIES = 3


def _level_suffix(k: int) -> str:
    return "" if k == 0 else f"_{k}"


@lru_cache(maxsize=None)
def chain_space(n: int, d: int, j: int, with_w: bool = True) -> VariableSpace:
    """Space of ``S^(j) = (z, chi, z_1, chi_1, ..., z_j)``, plus ``w`` if requested."""
    blocks = []
    for k in range(j):
        s = _level_suffix(k)
        blocks.append(make_block(f"z{s}", "z", n, prefix="z", suffix=s))
        blocks.append(make_block(f"chi{s}", "chi", n, prefix="chi", suffix=s))
    s = _level_suffix(j)
    blocks.append(make_block(f"z{s}", "z", n, prefix="z", suffix=s))
    if with_w:
        blocks.append(make_block("w", "w", d))
    return VariableSpace(blocks)


def chain_variables(n: int, j: int) -> list:
    """Names of the chain variables of depth ``j`` in order."""
    return [v for b in chain_space(n, 1, j, False).blocks for v in b.names]


def _shift_mapping(n: int, d: int, j: int) -> dict:
    """Rename depth-``j`` chain variables one level up (``z -> z_1``, ``chi -> chi_1`` ...)."""
    mapping = {}
    for k in range(j + 1):
        for i in range(1, n + 1):
            mapping[f"z{i}{_level_suffix(k)}"] = f"z{i}_{k + 1}"
            if k < j:
                mapping[f"chi{i}{_level_suffix(k)}"] = f"chi{i}_{k + 1}"
    return mapping


@dataclass(frozen=True)
class RankCertificate:
    """A nonvanishing minor of a Jacobian matrix.

    ``rows`` and ``cols`` are 0-based indices; ``monomial`` is the graded-lex
    least monomial of the expanded minor and ``coefficient`` its
    coefficient, of total ``degree`` below ``faithful_through``.
    """

    rows: tuple
    cols: tuple
    column_names: tuple
    monomial: dict
    coefficient: GaussianRational
    degree: int
    faithful_through: int
    minor: TruncatedSeries = field(compare=False, repr=False)

    @property
    def size(self) -> int:
        return len(self.rows)

    def to_dict(self) -> dict:
        return {
            "minor_rows": list(self.rows),
            "minor_cols": list(self.cols),
            "column_names": list(self.column_names),
            "monomial": dict(sorted(self.monomial.items())),
            "monomial_text": self.minor.space.format_monomial(
                self.minor.space.exponent(self.monomial)),
            "coefficient": str(self.coefficient),
            "degree": self.degree,
            "faithful_through": self.faithful_through,
            "minor": str(self.minor),
        }


@dataclass(frozen=True)
class SegreChainResult:
    j: int
    with_w: bool
    v: tuple
    jacobian: tuple | None = None
    rank: int | None = None
    certificate: RankCertificate | None = None

    @property
    def space(self) -> VariableSpace:
        return self.v[0].space


@lru_cache(maxsize=64)
def _v1(M: NormalManifold) -> tuple:
    target = chain_space(M.n, M.d, 1, True)
    z = [f"z{i}" for i in range(1, M.n + 1)]
    chi = [f"chi{i}" for i in range(1, M.n + 1)]
    z1 = [f"z{i}_1" for i in range(1, M.n + 1)]
    w = [f"w{l}" for l in range(1, M.d + 1)]
    qbar = M.conjugate_Q_into(target, chi, z1, w)
    return tuple(M.Q_into(target, z, chi, qbar))


@lru_cache(maxsize=256)
def _vj(M: NormalManifold, j: int, with_w: bool) -> tuple:
    if j == 1:
        v1 = _v1(M)
        if with_w:
            return v1
        target = chain_space(M.n, M.d, 1, False)
        return tuple(v.rename(target, {f"w{l}": None for l in range(1, M.d + 1)})
                     for v in v1)
    target = chain_space(M.n, M.d, j, with_w)
    prev = _vj(M, j - 1, with_w)
    shift = _shift_mapping(M.n, M.d, j - 1)
    shifted = [p.rename(target, shift) for p in prev]
    assignment = {f"w{l}": s for l, s in zip(range(1, M.d + 1), shifted)}
    for name in chain_space(M.n, M.d, 1, False).names:
        assignment[name] = TruncatedSeries.variable(target, M.K, name)
    return tuple(v.compose(assignment, target) for v in _v1(M))


def segre_v1(M: NormalManifold) -> list:
    """``v1(z, chi, z_1; w) = Q(z, chi, Qbar(chi, z_1, w))``."""
    return list(_v1(M))


def segre_vj(M: NormalManifold, j: int, with_w: bool = True) -> SegreChainResult:
    """The depth-``j`` Segre map, with ``w`` kept or set to zero."""
    if j < 1:
        raise ValueError("chain depth must be at least 1")
    return SegreChainResult(j=j, with_w=with_w, v=_vj(M, j, with_w))


def jacobian(result: SegreChainResult) -> list:
    """Rows ``d v_l / d s`` for ``s`` over the chain variables; entries exact through ``K - 1``."""
    sp = result.space
    cols = [name for b in sp.blocks if b.name != "w" for name in b.names]
    return [[v.derivative(s) for s in cols] for v in result.v]


def _column_names(jac: Sequence[Sequence[TruncatedSeries]]) -> list:
    if not jac or not jac[0]:
        return []
    sp = jac[0][0].space
    return [name for b in sp.blocks if b.name != "w" for name in b.names][: len(jac[0])]


def minor_series(jac, rows: Sequence[int], cols: Sequence[int]) -> TruncatedSeries:
    """Determinant of the ``rows`` x ``cols`` submatrix, expanded as a series."""
    rows, cols = list(rows), list(cols)
    if len(rows) != len(cols):
        raise ValueError("minor must be square")
    memo: dict = {}

    def det(k: int, avail: tuple) -> TruncatedSeries:
        # expand along row rows[k] using the still-available columns
        if k == len(rows):
            entry = jac[rows[0]][cols[0]]
            return TruncatedSeries.constant(entry.space, entry.K, 1)
        key = (k, avail)
        if key in memo:
            return memo[key]
        total = None
        sign = 1
        for pos, c in enumerate(avail):
            entry = jac[rows[k]][c]
            if entry.is_zero():
                sign = -sign
                continue
            rest = det(k + 1, avail[:pos] + avail[pos + 1:])
            term = entry * rest
            term = term if sign > 0 else -term
            total = term if total is None else total + term
            sign = -sign
        if total is None:
            e = jac[rows[0]][cols[0]]
            K = min(jac[r][c].K for r in rows for c in cols)
            total = TruncatedSeries.zero(e.space, K)
        memo[key] = total
        return total

    return det(0, tuple(cols))


def certify_minor(jac, rows: Sequence[int], cols: Sequence[int]) -> RankCertificate | None:
    """Expand one minor; return a certificate if it is provably nonzero."""
    minor = minor_series(jac, rows, cols)
    faithful = min(jac[r][c].K for r in rows for c in cols)
    lowest = minor.lowest_term()
    if lowest is None:
        return None
    e, coeff = lowest
    degree = sum(e)
    if degree >= faithful:
        return None
    names = _column_names(jac)
    return RankCertificate(
        rows=tuple(rows), cols=tuple(cols),
        column_names=tuple(names[c] for c in cols),
        monomial=minor.space.monomial(e), coefficient=coeff, degree=degree,
        faithful_through=faithful, minor=minor)


def _evaluate(jac, point: dict) -> list:
    return [[entry.evaluate(point) for entry in row] for row in jac]


def generic_rank(jac, seed: int = DEFAULT_SEED, *, box: int = EVALUATION_BOX,
                 tries: int = EVALUATION_TRIES) -> tuple:
    """Certified lower bound for the generic rank of a matrix of series.

    Random exact evaluation at integer points in ``[-box, box]`` locates a
    candidate nonsingular submatrix via fraction-free elimination; only that
    minor is then expanded symbolically.  Returns ``(rank, certificate)``.
    """
    if not jac or not jac[0]:
        return 0, None
    nrows, ncols = len(jac), len(jac[0])
    names = list(jac[0][0].space.names)
    rng = random.Random(seed)
    best, best_cert = 0, None
    full = min(nrows, ncols)
    for _ in range(tries):
        point = {v: rng.randint(-box, box) for v in names}
        r, prow, pcol = linalg.rank_profile(_evaluate(jac, point))
        for k in range(r, best, -1):
            cert = certify_minor(jac, prow[:k], pcol[:k])
            if cert is not None:
                best, best_cert = k, cert
                break
        if best == full:
            break
    return best, best_cert


@dataclass(frozen=True)
class FiniteTypeVerdict:
    """Outcome of the rank search over chain depths ``1..j_max``.

    ``finite_type`` true is a proof.  False means no certificate was found
    within ``j_max`` and the truncation order; it does not prove infinite type.
    """

    finite_type: bool
    j: int | None
    certificate: RankCertificate | None
    max_rank_seen: int
    ranks: tuple
    j_max: int
    K: int
    d: int
    seed: int

    @property
    def status(self) -> str:
        return "FiniteType" if self.finite_type else "NotDetected"

    def to_dict(self) -> dict:
        out = {
            "status": self.status,
            "j": self.j,
            "j_max": self.j_max,
            "order": self.K,
            "codimension": self.d,
            "seed": self.seed,
            "ranks_by_depth": list(self.ranks),
            "max_rank_seen": self.max_rank_seen,
            "certificate": self.certificate.to_dict() if self.certificate else None,
        }
        if not self.finite_type:
            out["note"] = ("no full-rank certificate within j_max and truncation order; "
                           "this is not a proof of infinite type")
        return out


def finite_type_search(M: NormalManifold, j_max: int | None = None,
                       seed: int = DEFAULT_SEED) -> FiniteTypeVerdict:
    """Look for the first depth ``j <= j_max`` with a certified rank-``d`` Jacobian."""
    j_max = M.d + 1 if j_max is None else j_max
    if j_max < 1:
        raise ValueError("j_max must be at least 1")
    ranks = []
    for j in range(1, j_max + 1):
        jac = jacobian(segre_vj(M, j, with_w=False))
        r, cert = generic_rank(jac, seed)
        ranks.append(r)
        if r == M.d:
            return FiniteTypeVerdict(True, j, cert, r, tuple(ranks), j_max, M.K, M.d, seed)
    return FiniteTypeVerdict(False, None, None, max(ranks), tuple(ranks), j_max, M.K, M.d, seed)


def revalidate_certificate(M: NormalManifold, j: int, certificate: dict | RankCertificate) -> bool:
    """Re-expand a certified minor from scratch and compare with the certificate.

    Accepts either a :class:`RankCertificate` or its ``to_dict`` form as found
    in JSON reports.
    """
    if isinstance(certificate, RankCertificate):
        certificate = certificate.to_dict()
    jac = jacobian(segre_vj(M, j, with_w=False))
    names = _column_names(jac)
    cols = list(certificate["minor_cols"])
    rows = list(certificate["minor_rows"])
    if [names[c] for c in cols] != list(certificate["column_names"]):
        return False
    fresh = certify_minor(jac, rows, cols)
    if fresh is None:
        return False
    return (fresh.monomial == dict(certificate["monomial"])
            and fresh.coefficient == constant_value(certificate["coefficient"])
            and fresh.degree == certificate["degree"]
            and fresh.degree < fresh.faithful_through)


def full_minor_rank(jac) -> int:
    """Generic rank by expanding every minor; exponential, meant for tests."""
    if not jac or not jac[0]:
        return 0
    nrows, ncols = len(jac), len(jac[0])
    for k in range(min(nrows, ncols), 0, -1):
        for rows in combinations(range(nrows), k):
            for cols in combinations(range(ncols), k):
                if certify_minor(jac, rows, cols) is not None:
                    return k
    return 0
