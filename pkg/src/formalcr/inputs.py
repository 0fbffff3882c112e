"""Manifold (``.man``) and map (``.map``) input files.

Both are INI-style files with one section; expressions are double-quoted
strings in the syntax of :mod:`formalcr.parser`.  Lines starting with ``#``
or ``;`` are comments.

Manifold file::

    [manifold]
    n = 1
    d = 1
    order = 8                 # optional default truncation order
    form = normal             # optional, "normal" (default) or "rho"
    Q1 = "tau1 + 2*i*z1*chi1"

With ``form = rho`` the keys are ``rho1..rhod``, in the variables
``z1..zn, w1..wd, chi1..chin, tau1..taud``, and an optional
``transverse = "w1 z2"`` names the holomorphic variables to solve for.

Map file::

    [map]
    m = 1
    N1 = "1"
    D = "2"

Map expressions use ``z1..zn`` and ``w1..wd``; ``n`` and ``d`` may be given
and must then match the manifold.
"""

from __future__ import annotations

import configparser
import hashlib
import re
from dataclasses import dataclass
from pathlib import Path

from .errors import FormalCRError, InputError, with_context
from .manifold import (
    NormalManifold,
    map_space,
    normal_space,
    relabel_transverse,
    rho_space,
    solve_graph_from_rho,
    validate_defining_system,
    validate_normal_form,
)
from .parser import parse_series
from .reflection import MeromorphicMap

__all__ = ["DEFAULT_ORDER", "InputFile", "canonical_bytes", "digest",
           "load_manifold", "load_map"]

DEFAULT_ORDER = 8


def canonical_bytes(text: str) -> bytes:
    """Normalized line endings, no trailing whitespace, single final newline."""
    lines = [line.rstrip() for line in text.replace("\r\n", "\n").replace("\r", "\n").split("\n")]
    while lines and not lines[-1]:
        lines.pop()
    return ("\n".join(lines) + "\n").encode("utf-8")


def digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(canonical_bytes(text)).hexdigest()


@dataclass(frozen=True)
class InputFile:
    """Parsed key/value content plus enough to locate each key in the source."""

    path: Path
    section: str
    values: dict
    lines: dict
    digest: str

    def line(self, key: str) -> int | None:
        return self.lines.get(key)

    def integer(self, key: str, default: int | None = None) -> int:
        if key not in self.values:
            if default is None:
                raise with_context(InputError(f"missing key {key!r}"), self.path)
            return default
        try:
            value = int(self.values[key])
        except ValueError:
            raise with_context(InputError(f"{key} must be an integer, got {self.values[key]!r}"),
                               self.path, self.line(key)) from None
        if value < 0:
            raise with_context(InputError(f"{key} must be nonnegative"), self.path, self.line(key))
        return value

    def expression(self, key: str) -> str:
        if key not in self.values:
            raise with_context(InputError(f"missing expression {key!r}"), self.path)
        raw = self.values[key].strip()
        if len(raw) < 2 or raw[0] != '"' or raw[-1] != '"':
            raise with_context(InputError(f"{key} must be a double-quoted expression"),
                               self.path, self.line(key))
        return raw[1:-1]

    def series(self, key: str, space, K: int):
        try:
            return parse_series(self.expression(key), space, K)
        except FormalCRError as exc:
            if getattr(exc, "path", None):
                raise
            raise with_context(exc, self.path, self.line(key)) from None


def _read(path, section: str) -> InputFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise with_context(InputError(f"cannot read file: {exc.strerror}"), path) from None
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"), interpolation=None)
    parser.optionxform = str
    try:
        parser.read_string(text, source=str(path))
    except configparser.Error as exc:
        raise with_context(InputError(str(exc).splitlines()[0]), path) from None
    if parser.sections() != [section]:
        raise with_context(InputError(f"expected exactly one section [{section}]"), path)
    lines = {}
    current = None
    for number, line in enumerate(text.splitlines(), start=1):
        header = re.match(r"\s*\[(.+)\]\s*$", line)
        if header:
            current = header.group(1)
            continue
        key = re.match(r"\s*([^#;=:\s][^=:]*?)\s*[=:]", line)
        if key and current == section:
            lines.setdefault(key.group(1), number)
    return InputFile(path, section, dict(parser[section]), lines, digest(text))


def _check_keys(f: InputFile, allowed: set) -> None:
    for key in f.values:
        if key not in allowed:
            raise with_context(InputError(f"unexpected key {key!r}"), f.path, f.line(key))


def load_manifold(path, order: int | None = None) -> tuple:
    """Read and validate a manifold file; returns ``(NormalManifold, InputFile)``.

    ``order`` overrides the file's ``order`` key, which defaults to 8.
    """
    f = _read(path, "manifold")
    n, d = f.integer("n"), f.integer("d")
    if n == 0 or d == 0:
        raise with_context(InputError("n and d must be positive"), f.path)
    K = order if order is not None else f.integer("order", DEFAULT_ORDER)
    form = f.values.get("form", "normal").strip()
    if form == "normal":
        _check_keys(f, {"n", "d", "order", "form"} | {f"Q{k}" for k in range(1, d + 1)})
        sp = normal_space(n, d)
        Q = [f.series(f"Q{k}", sp, K) for k in range(1, d + 1)]
    elif form == "rho":
        _check_keys(f, {"n", "d", "order", "form", "transverse"}
                    | {f"rho{k}" for k in range(1, d + 1)})
        sp = rho_space(n, d)
        rho = [f.series(f"rho{k}", sp, K) for k in range(1, d + 1)]
        try:
            if "transverse" in f.values:
                names = f.expression("transverse").split()
                try:
                    rho = relabel_transverse(rho, names)
                except ValueError as exc:
                    raise InputError(str(exc)) from None
            Q = solve_graph_from_rho(validate_defining_system(rho))
        except FormalCRError as exc:
            raise with_context(exc, f.path) from None
    else:
        raise with_context(InputError(f"form must be 'normal' or 'rho', got {form!r}"),
                           f.path, f.line("form"))
    try:
        M = validate_normal_form(Q, name=f.path.stem)
    except FormalCRError as exc:
        component = getattr(exc, "component", None)
        key = f"Q{component}" if form == "normal" and component else None
        raise with_context(exc, f.path, f.line(key) if key else None) from None
    return M, f


def load_map(path, M: NormalManifold) -> tuple:
    """Read a map file against manifold ``M``; returns ``(MeromorphicMap, InputFile)``."""
    f = _read(path, "map")
    m = f.integer("m")
    if m == 0:
        raise with_context(InputError("m must be positive"), f.path, f.line("m"))
    _check_keys(f, {"n", "d", "m", "D"} | {f"N{k}" for k in range(1, m + 1)})
    for key, expected in (("n", M.n), ("d", M.d)):
        if key in f.values and f.integer(key) != expected:
            raise with_context(InputError(f"{key} = {f.integer(key)} does not match the "
                                          f"manifold ({expected})"), f.path, f.line(key))
    sp = map_space(M.n, M.d)
    N = [f.series(f"N{k}", sp, M.K) for k in range(1, m + 1)]
    D = f.series("D", sp, M.K)
    try:
        H = MeromorphicMap.make(N, D, name=f.path.stem)
    except FormalCRError as exc:
        raise with_context(exc, f.path, f.line("D")) from None
    return H, f
