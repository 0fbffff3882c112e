"""Truncated multivariate formal power series with Gaussian-rational coefficients.

A :class:`TruncatedSeries` lives in a :class:`VariableSpace` and carries a
total-degree bound ``K``.  Every term of degree above ``K`` is discarded
eagerly, and every operation is *faithful*: coefficients of degree at most the
result's bound agree with the exact (untruncated) operation.

Monomials are stored as exponent tuples, one entry per variable of the space.
Two orders on monomials are used throughout:

* the graded lexicographic order ``(total degree, exponent tuple)``, used to
  report the *least* monomial at which something happens;
* the display order, which is graded with earlier variables first, so that
  ``(z1 + chi1)^2`` prints as ``z1^2 + 2*z1*chi1 + chi1^2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from operator import add
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from gmpy2 import mpq

from .errors import (
    DegreeOverflow,
    NonNilpotentArgument,
    NonNilpotentSubstitution,
    NonUnit,
    SpaceMismatch,
    UnknownVariable,
)
from .scalars import ONE, ZERO, GaussianRational, as_gaussian

__all__ = [
    "Block",
    "VariableSpace",
    "TruncatedSeries",
    "graded_key",
    "make_block",
]

Exponent = tuple


@dataclass(frozen=True)
class Block:
    """A named group of variables sharing a role.

    Roles used by the package: ``"z"`` (holomorphic), ``"chi"`` (conjugate of
    ``z``), ``"w"`` (transverse), ``"tau"`` (conjugate of ``w``).
    """

    name: str
    role: str
    names: tuple

    def __len__(self) -> int:
        return len(self.names)


def make_block(name: str, role: str, length: int, prefix: str | None = None,
               suffix: str = "") -> Block:
    """Block whose variables are ``prefix1 suffix, ..., prefixN suffix``."""
    prefix = name if prefix is None else prefix
    return Block(name, role, tuple(f"{prefix}{k}{suffix}" for k in range(1, length + 1)))


class VariableSpace:
    """Ordered sequence of variable blocks; the ambient ring of a series."""

    __slots__ = ("blocks", "names", "index", "_hash", "_block_index")

    def __init__(self, blocks: Iterable[Block]):
        blocks = tuple(blocks)
        names = tuple(n for b in blocks for n in b.names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        if len({b.name for b in blocks}) != len(blocks):
            raise ValueError("duplicate block names")
        self.blocks = blocks
        self.names = names
        self.index = MappingProxyType({n: k for k, n in enumerate(names)})
        self._block_index = {b.name: b for b in blocks}
        self._hash = hash(blocks)

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, VariableSpace):
            return NotImplemented
        return self._hash == other._hash and self.blocks == other.blocks

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        inner = ", ".join(f"{b.name}[{len(b)}]" for b in self.blocks)
        return f"VariableSpace({inner})"

    def block(self, name: str) -> Block:
        try:
            return self._block_index[name]
        except KeyError:
            raise UnknownVariable(f"no block {name!r} in {self!r}") from None

    def has_block(self, name: str) -> bool:
        return name in self._block_index

    def position(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise UnknownVariable(f"unknown variable {name!r} in {self!r}") from None

    def monomial(self, exponents: Exponent) -> dict:
        """Exponent tuple as ``{name: power}`` with zero powers omitted."""
        return {n: e for n, e in zip(self.names, exponents) if e}

    def exponent(self, monomial: Mapping[str, int]) -> Exponent:
        out = [0] * len(self.names)
        for name, power in monomial.items():
            if power < 0:
                raise ValueError("negative exponent")
            out[self.position(name)] += power
        return tuple(out)

    def format_monomial(self, exponents: Exponent) -> str:
        parts = []
        for name, e in zip(self.names, exponents):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"


def graded_key(exponents: Exponent) -> tuple:
    """Sort key of the graded lexicographic order (least monomial first)."""
    return (sum(exponents), exponents)


def _display_key(exponents: Exponent) -> tuple:
    return (sum(exponents), tuple(-e for e in exponents))


# -- term-dictionary kernels ---------------------------------------------------
# Terms are dicts {exponent tuple: GaussianRational}; kernels never store zeros.

def _prune(terms: dict, K: int) -> dict:
    return {e: c for e, c in terms.items() if c and sum(e) <= K}


def _add_terms(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for e, c in b.items():
        if sign < 0:
            c = -c
        prev = out.get(e)
        if prev is None:
            out[e] = c
        else:
            s = prev + c
            if s:
                out[e] = s
            else:
                del out[e]
    return out


def _mul_terms(a: dict, b: dict, K: int) -> dict:
    if len(a) > len(b):
        a, b = b, a
    if not a:
        return {}
    bl = sorted((sum(e), e, c.re, c.im) for e, c in b.items())
    acc: dict = {}
    for ea, ca in a.items():
        room = K - sum(ea)
        if room < 0:
            continue
        ar, ai = ca.re, ca.im
        for db, eb, br, bi in bl:
            if db > room:
                break
            e = tuple(map(add, ea, eb))
            if ai:
                if bi:
                    re = ar * br - ai * bi
                    im = ar * bi + ai * br
                else:
                    re = ar * br
                    im = ai * br
            elif bi:
                re = ar * br
                im = ar * bi
            else:
                re = ar * br
                im = None
            slot = acc.get(e)
            if slot is None:
                acc[e] = [re, im if im is not None else _Q0]
            else:
                slot[0] += re
                if im is not None:
                    slot[1] += im
    raw = GaussianRational._raw
    return {e: raw(r, i) for e, (r, i) in acc.items() if r or i}


def _scale_terms(a: dict, c: GaussianRational) -> dict:
    if not c:
        return {}
    if c == ONE:
        return dict(a)
    return {e: v * c for e, v in a.items()}


_Q0 = mpq(0)


class TruncatedSeries:
    """Element of ``Q(i)[[x_1, ..., x_n]]`` known through total degree ``K``.

    Instances are immutable and hashable.  Arithmetic between two series
    requires equal spaces; the result bound is the minimum of the operands'
    bounds.  Plain numbers (int, rational, :class:`GaussianRational`) act as
    constants.
    """

    __slots__ = ("space", "max_degree", "_terms", "_hash")

    def __init__(self, space: VariableSpace, max_degree: int,
                 terms: Mapping | None = None, *, _trusted: bool = False):
        if max_degree < 0:
            raise DegreeOverflow(f"truncation order must be nonnegative, got {max_degree}")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "max_degree", int(max_degree))
        if terms is None:
            clean = {}
        elif _trusted:
            clean = terms
        else:
            nv = len(space)
            clean = {}
            for e, c in terms.items():
                if isinstance(e, Mapping):
                    e = space.exponent(e)
                else:
                    e = tuple(int(x) for x in e)
                    if len(e) != nv or any(x < 0 for x in e):
                        raise ValueError(f"bad exponent vector {e} for {space!r}")
                c = as_gaussian(c)
                if c and sum(e) <= max_degree:
                    clean[e] = clean.get(e, ZERO) + c
            clean = {e: c for e, c in clean.items() if c}
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, space: VariableSpace, K: int) -> "TruncatedSeries":
        return cls(space, K, {}, _trusted=True)

    @classmethod
    def constant(cls, space: VariableSpace, K: int, value=1) -> "TruncatedSeries":
        c = as_gaussian(value)
        terms = {(0,) * len(space): c} if c else {}
        return cls(space, K, terms, _trusted=True)

    @classmethod
    def variable(cls, space: VariableSpace, K: int, name: str) -> "TruncatedSeries":
        e = [0] * len(space)
        e[space.position(name)] = 1
        terms = {tuple(e): ONE} if K >= 1 else {}
        return cls(space, K, terms, _trusted=True)

    @classmethod
    def monomial(cls, space: VariableSpace, K: int, monomial: Mapping[str, int],
                 coefficient=1) -> "TruncatedSeries":
        return cls(space, K, {space.exponent(monomial): coefficient})

    # -- inspection -----------------------------------------------------------

    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._terms)

    @property
    def K(self) -> int:
        return self.max_degree

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator:
        """Iterate ``(exponent, coefficient)`` pairs in graded-lex order."""
        for e in sorted(self._terms, key=graded_key):
            yield e, self._terms[e]

    def coefficient(self, monomial) -> GaussianRational:
        if isinstance(monomial, Mapping):
            monomial = self.space.exponent(monomial)
        return self._terms.get(tuple(monomial), ZERO)

    @property
    def constant_term(self) -> GaussianRational:
        return self._terms.get((0,) * len(self.space), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def order(self) -> int | None:
        """Lowest total degree of a nonzero term, ``None`` for the zero series."""
        return min((sum(e) for e in self._terms), default=None)

    def degree(self) -> int | None:
        return max((sum(e) for e in self._terms), default=None)

    def lowest_term(self) -> tuple | None:
        """Graded-lex least ``(exponent, coefficient)``, or ``None``."""
        if not self._terms:
            return None
        e = min(self._terms, key=graded_key)
        return e, self._terms[e]

    def variables(self) -> set:
        """Names of variables that occur in some term."""
        used = set()
        for e in self._terms:
            for name, x in zip(self.space.names, e):
                if x:
                    used.add(name)
        return used

    def is_real(self) -> bool:
        """All coefficients are real."""
        return all(not c.im for c in self._terms.values())

    # -- equality -------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.max_degree == other.max_degree and self.space == other.space
                and self._terms == other._terms)

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.space, self.max_degree, frozenset(self._terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def agrees_with(self, other: "TruncatedSeries", through: int | None = None) -> bool:
        """Coefficients agree in every degree up to ``through`` (default: both bounds)."""
        return self.first_difference(other, through) is None

    def first_difference(self, other: "TruncatedSeries", through: int | None = None):
        """Least monomial (graded lex) where the two series differ.

        Returns ``(exponent, self_coefficient, other_coefficient)`` or ``None``.
        """
        self._check_space(other)
        bound = min(self.max_degree, other.max_degree)
        if through is not None:
            bound = min(bound, through)
        diff = []
        for e in set(self._terms) | set(other._terms):
            if sum(e) > bound:
                continue
            a = self._terms.get(e, ZERO)
            b = other._terms.get(e, ZERO)
            if a != b:
                diff.append(e)
        if not diff:
            return None
        e = min(diff, key=graded_key)
        return e, self._terms.get(e, ZERO), other._terms.get(e, ZERO)

    # -- arithmetic -----------------------------------------------------------

    def _check_space(self, other: "TruncatedSeries") -> None:
        if self.space != other.space:
            raise SpaceMismatch(f"{self.space!r} vs {other.space!r}")

    def _lift(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            self._check_space(other)
            return other
        return TruncatedSeries.constant(self.space, self.max_degree, other)

    def truncate(self, K: int) -> "TruncatedSeries":
        if K >= self.max_degree:
            return self if K == self.max_degree else TruncatedSeries(
                self.space, self.max_degree, self._terms, _trusted=True)
        return TruncatedSeries(self.space, K, _prune(self._terms, K), _trusted=True)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.space, self.max_degree,
                               {e: -c for e, c in self._terms.items()}, _trusted=True)

    def __pos__(self) -> "TruncatedSeries":
        return self

    def __add__(self, other) -> "TruncatedSeries":
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        K = min(self.max_degree, other.max_degree)
        terms = _add_terms(self._terms, other._terms)
        return TruncatedSeries(self.space, K, _prune(terms, K), _trusted=True)

    __radd__ = __add__

    def __sub__(self, other) -> "TruncatedSeries":
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        K = min(self.max_degree, other.max_degree)
        terms = _add_terms(self._terms, other._terms, sign=-1)
        return TruncatedSeries(self.space, K, _prune(terms, K), _trusted=True)

    def __rsub__(self, other) -> "TruncatedSeries":
        return (-self).__add__(other)

    def __mul__(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            self._check_space(other)
            K = min(self.max_degree, other.max_degree)
            return TruncatedSeries(self.space, K, _mul_terms(self._terms, other._terms, K),
                                   _trusted=True)
        try:
            c = as_gaussian(other)
        except TypeError:
            return NotImplemented
        return TruncatedSeries(self.space, self.max_degree, _scale_terms(self._terms, c),
                               _trusted=True)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return self * other.invert()
        try:
            c = as_gaussian(other)
        except TypeError:
            return NotImplemented
        return self * c.inverse()

    def __rtruediv__(self, other) -> "TruncatedSeries":
        return self.invert() * other

    def __pow__(self, k: int) -> "TruncatedSeries":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.invert() ** (-k)
        result = TruncatedSeries.constant(self.space, self.max_degree, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def conjugate(self) -> "TruncatedSeries":
        """Conjugate every coefficient; variables are left in place."""
        return TruncatedSeries(self.space, self.max_degree,
                               {e: c.conjugate() for e, c in self._terms.items()},
                               _trusted=True)

    def invert(self) -> "TruncatedSeries":
        """Multiplicative inverse; requires a nonzero constant term."""
        c0 = self.constant_term
        if not c0:
            raise NonUnit("series with zero constant term is not invertible")
        inv0 = c0.inverse()
        h = self * inv0 - 1  # zero constant term
        neg_h = -h
        result = TruncatedSeries.constant(self.space, self.max_degree, 1)
        power = result
        for _ in range(self.max_degree):
            power = power * neg_h
            if power.is_zero():
                break
            result = result + power
        return result * inv0

    def exp(self) -> "TruncatedSeries":
        """``sum f^k / k!`` for ``f`` with zero constant term."""
        if self.constant_term:
            raise NonNilpotentArgument("exp needs an argument with zero constant term")
        result = TruncatedSeries.constant(self.space, self.max_degree, 1)
        power = result
        for k in range(1, self.max_degree + 1):
            power = power * self * GaussianRational(mpq(1, k))
            if power.is_zero():
                break
            result = result + power
        return result

    def derivative(self, var: str) -> "TruncatedSeries":
        """Partial derivative; the result is faithful only through ``K - 1``."""
        k = self.space.position(var)
        if self.max_degree == 0:
            raise DegreeOverflow("derivative of an order-0 truncation carries no information")
        out = {}
        for e, c in self._terms.items():
            x = e[k]
            if x:
                ne = e[:k] + (x - 1,) + e[k + 1:]
                out[ne] = c * x
        K = self.max_degree - 1
        return TruncatedSeries(self.space, K, _prune(out, K), _trusted=True)

    # -- change of variables --------------------------------------------------

    def rename(self, target: VariableSpace, mapping: Mapping[str, str | None] | None = None,
               *, drop_unmapped: bool = False) -> "TruncatedSeries":
        """Move exponents to other variables (a monomial substitution).

        ``mapping`` sends source names to target names; names absent from
        ``mapping`` go to the same-named target variable when it exists.  A
        source variable mapped to ``None`` (or unmapped with ``drop_unmapped``)
        is set to zero.  Several sources may share one target.
        """
        mapping = dict(mapping or {})
        dest = []
        for name in self.space.names:
            if name in mapping:
                t = mapping[name]
            elif name in target.index:
                t = name
            elif drop_unmapped:
                t = None
            else:
                t = False
            dest.append(t if t in (None, False) else target.position(t))
        nt = len(target)
        out: dict = {}
        for e, c in self._terms.items():
            ne = [0] * nt
            keep = True
            for k, (x, t) in enumerate(zip(e, dest)):
                if not x:
                    continue
                if t is None:
                    keep = False
                    break
                if t is False:
                    raise UnknownVariable(
                        f"variable {self.space.names[k]!r} has no image in {target!r}")
                ne[t] += x
            if keep:
                key = tuple(ne)
                prev = out.get(key)
                out[key] = c if prev is None else prev + c
        return TruncatedSeries(target, self.max_degree,
                               {e: c for e, c in out.items() if c}, _trusted=True)

    def set_zero(self, names: Iterable[str]) -> "TruncatedSeries":
        """Substitute zero for the given variables, staying in the same space."""
        idx = [self.space.position(n) for n in names]
        terms = {e: c for e, c in self._terms.items() if not any(e[k] for k in idx)}
        return TruncatedSeries(self.space, self.max_degree, terms, _trusted=True)

    def compose(self, assignment: Mapping[str, "TruncatedSeries"],
                target: VariableSpace | None = None, *,
                polynomial: bool = False) -> "TruncatedSeries":
        """Substitute series for variables.

        Every variable occurring in ``self`` must be assigned a series in the
        common ``target`` space, except that variables left out of
        ``assignment`` go to the same-named variable of ``target``.  All
        substituted series must have zero constant term unless ``polynomial``
        is true, which asserts that ``self`` is an exact polynomial (its
        truncation loses nothing).
        """
        subs = dict(assignment)
        if target is None:
            if not subs:
                return self
            target = next(iter(subs.values())).space
        used = self.variables()
        images: list = []
        bound = None if polynomial else self.max_degree
        for name in self.space.names:
            if name in subs:
                g = subs[name]
                if g.space != target:
                    raise SpaceMismatch(f"image of {name!r} lives in {g.space!r}, expected {target!r}")
            elif name in used:
                if name not in target.index:
                    raise UnknownVariable(f"variable {name!r} has no image in {target!r}")
                g = None
            else:
                images.append(None)
                continue
            images.append(g)
            if name in used and g is not None:
                bound = g.max_degree if bound is None else min(bound, g.max_degree)
        if bound is None:
            bound = self.max_degree
        # identity images become plain variables in the target at the result bound
        for k, name in enumerate(self.space.names):
            if images[k] is None and name in used:
                images[k] = TruncatedSeries.variable(target, bound, name)
        orders = []
        for k, name in enumerate(self.space.names):
            g = images[k]
            if g is None or name not in used:
                orders.append(0)
                continue
            if g.constant_term and not polynomial:
                raise NonNilpotentSubstitution(
                    f"image of {name!r} has nonzero constant term {g.constant_term}")
            o = g.order()
            orders.append(math.inf if o is None else o)
        return _compose_kernel(self._terms, images, orders, target, bound)

    def evaluate(self, point: Mapping[str, object]) -> GaussianRational:
        """Value of the truncation (a polynomial) at a point; unlisted variables are 0."""
        vals = [as_gaussian(point.get(n, 0)) for n in self.space.names]
        cache: dict = {}
        total = ZERO
        for e, c in self._terms.items():
            term = c
            for k, x in enumerate(e):
                if x:
                    key = (k, x)
                    p = cache.get(key)
                    if p is None:
                        p = cache[key] = vals[k] ** x
                    term = term * p
                    if not term:
                        break
            total = total + term
        return total

    # -- formatting -----------------------------------------------------------

    def __str__(self) -> str:
        """Polynomial part in the expression grammar (parseable)."""
        if not self._terms:
            return "0"
        pieces = []
        for e in sorted(self._terms, key=_display_key):
            c = self._terms[e]
            mono = self.space.format_monomial(e) if any(e) else ""
            neg = False
            if not c.im:
                r = c.re
                if r < 0:
                    neg, r = True, -r
                cs = "" if (r == 1 and mono) else str(r)
            elif not c.re:
                im = c.im
                if im < 0:
                    neg, im = True, -im
                cs = "i" if im == 1 else f"{im}*i"
            else:
                cs = f"({c})"
            body = "*".join(p for p in (cs, mono) if p)
            pieces.append((neg, body))
        out = ("-" if pieces[0][0] else "") + pieces[0][1]
        for neg, body in pieces[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self) -> str:
        return f"TruncatedSeries({str(self)!r}, K={self.max_degree}, space={self.space!r})"


def _compose_kernel(terms: dict, images: list, orders: list, target: VariableSpace,
                    bound: int) -> TruncatedSeries:
    """Sum of ``c * prod images[k]^e[k]`` over the terms, truncated at ``bound``."""
    nt = len(target)
    power_cache: dict = {}
    unit = {(0,) * nt: ONE}

    def power(k: int, x: int) -> dict:
        key = (k, x)
        p = power_cache.get(key)
        if p is None:
            if x == 1:
                p = _prune(images[k]._terms, bound)
            else:
                half = power(k, x // 2)
                p = _mul_terms(half, half, bound)
                if x % 2:
                    p = _mul_terms(p, power(k, 1), bound)
            power_cache[key] = p
        return p

    prefix_cache: dict = {}
    acc: dict = {}
    for e in sorted(terms):
        lowest = 0
        for x, o in zip(e, orders):
            if x:
                lowest += x * o
        if lowest > bound:
            continue
        prod = unit
        for k, x in enumerate(e):
            if not x:
                continue
            key = e[: k + 1]
            cached = prefix_cache.get(key)
            if cached is None:
                cached = prefix_cache[key] = _mul_terms(prod, power(k, x), bound)
            prod = cached
            if not prod:
                break
        if not prod:
            continue
        c = terms[e]
        for ne, v in prod.items():
            v = v * c
            prev = acc.get(ne)
            acc[ne] = v if prev is None else prev + v
    return TruncatedSeries(target, bound, {e: c for e, c in acc.items() if c}, _trusted=True)
