"""Command-line front end: parse state descriptions, reproduce the survey
figures and the entropy-scaling table, and analyze arbitrary state families.

State grammar (whitespace-insensitive)::

    magnons(N=<n>; k=<j>[^<count>][,<j>[^<count>]...])
    dicke(<n>,<m>) | band(<n>,<m>[,<extra j>...]) | product(<n>,<theta>,<alpha>)
    ghz(<n>) | w(<n>) | modexp(<n1>,<x>,<M>)

Integer slots accept the symbol N with an optional divisor and offset
(N, N/2, N/2-1, ...) so one spec can sweep a size range; `k=0^8` repeats a
wavenumber index eight times.

Output is CSV with `#` metadata lines, a header row, and 12-significant-
digit values; reruns with equal configuration are byte-identical.

Exit codes: 0 success, 2 spec/usage error, 3 size cap exceeded,
4 numerical failure.
"""

from __future__ import annotations

import argparse
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import __version__
from .analytic import (
    dicke_emax,
    dicke_halfchain_entropy,
    dicke_spectrum,
    dicke_vcm,
    hypergeometric_weights,
)
from .entropy import halfchain_entropy, reduced_density, schmidt_decomposition
from .errors import CapExceededError, NumericalError, SpecError, VanishingStateError
from .fits import ScalingSeries, linear_fit
from .states import StateSpec, build_state, dicke_state, m_magnon_state
from .vcm import additive_fluctuation, build_vcm, estimate_p, max_eigen

VCM_MAX_SITES = 24          # binom(24,12) amplitudes is the practical VCM bound
ENTROPY_MAX_SITES = 20      # generic blocked partial trace
ENTROPY_MAX_SITES_DICKE = 40  # closed-form hypergeometric path
MODEXP_MAX_REGISTER = 16


# -- state-spec grammar -------------------------------------------------------

_VALUE_CHARS = re.compile(r"[0-9A-Za-z_.+\-/]")
_INT_RE = re.compile(r"^[+-]?\d+$")
_SYM_RE = re.compile(r"^N(?:/(\d+))?(?:([+-]\d+))?$")
_FLOAT_RE = re.compile(r"^[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?$")


class _Cursor:
    """Character cursor over the original text; positions refer to it."""

    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def _skip_ws(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self._skip_ws()
        return self.text[self.i] if self.i < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            raise SpecError(f"expected {ch!r}", self.i)
        self.i += 1

    def accept(self, ch: str) -> bool:
        if self.peek() == ch:
            self.i += 1
            return True
        return False

    def ident(self) -> str:
        self._skip_ws()
        start = self.i
        while self.i < len(self.text) and self.text[self.i].isalpha():
            self.i += 1
        if self.i == start:
            raise SpecError("expected a name", start)
        return self.text[start:self.i]

    def value(self) -> Tuple[str, int]:
        """A raw value token (number or N-expression) and its position."""
        self._skip_ws()
        start = self.i
        while self.i < len(self.text) and _VALUE_CHARS.match(self.text[self.i]):
            self.i += 1
        if self.i == start:
            raise SpecError("expected a value", start)
        return self.text[start:self.i], start

    def end(self):
        self._skip_ws()
        if self.i < len(self.text):
            raise SpecError("unexpected trailing input", self.i)


def _key_value(cur: _Cursor, *allowed: str) -> Tuple[str, int]:
    """A value token with an optional `name=` prefix restricted to `allowed`."""
    save = cur.i
    cur._skip_ws()
    start = cur.i
    if cur.text[cur.i:cur.i + 1].isalpha():
        name = cur.ident()
        if cur.accept("="):
            if allowed and name.lower() not in allowed:
                raise SpecError(f"unexpected argument name {name!r}", start)
            return cur.value()
        cur.i = save  # bare symbol like N: treat as the value itself
    return cur.value()


@dataclass(frozen=True)
class _Item:
    """One wavenumber entry: raw j expression and raw repeat count."""

    j: Tuple[str, int]
    count: Optional[Tuple[str, int]]


@dataclass(frozen=True)
class SpecTemplate:
    """Parsed state description, possibly still symbolic in N."""

    family: str
    fields: tuple  # family-specific raw tokens

    @property
    def is_symbolic(self) -> bool:
        return any("N" in raw for raw in _raw_tokens(self.fields))

    def bind(self, n: Optional[int] = None) -> StateSpec:
        """Evaluate all tokens at chain size n and build a concrete spec."""
        return _BINDERS[self.family](self.fields, n)


def _raw_tokens(fields):
    for f in fields:
        if isinstance(f, _Item):
            yield f.j[0]
            if f.count is not None:
                yield f.count[0]
        elif isinstance(f, tuple) and len(f) == 2 and isinstance(f[0], str):
            yield f[0]
        elif isinstance(f, tuple):
            yield from _raw_tokens(f)


def _eval_int(token: Tuple[str, int], n: Optional[int]) -> int:
    raw, pos = token
    if _INT_RE.match(raw):
        return int(raw)
    m = _SYM_RE.match(raw)
    if not m:
        raise SpecError(f"expected an integer or N-expression, got {raw!r}", pos)
    if n is None:
        raise SpecError(f"{raw!r} is symbolic; an N sweep is required", pos)
    val = n
    if m.group(1):
        div = int(m.group(1))
        if n % div:
            raise SpecError(f"N={n} not divisible by {div} in {raw!r}", pos)
        val = n // div
    if m.group(2):
        val += int(m.group(2))
    return val


def _eval_float(token: Tuple[str, int]) -> float:
    raw, pos = token
    if not _FLOAT_RE.match(raw):
        raise SpecError(f"expected a number, got {raw!r}", pos)
    return float(raw)


def _parse_items(cur: _Cursor) -> Tuple[_Item, ...]:
    items = []
    while True:
        j = cur.value()
        count = cur.value() if cur.accept("^") else None
        items.append(_Item(j, count))
        if not cur.accept(","):
            return tuple(items)


def _eval_items(items, n) -> Tuple[int, ...]:
    ks: List[int] = []
    for it in items:
        reps = _eval_int(it.count, n) if it.count else 1
        if reps < 0:
            raise SpecError(f"negative repeat count {reps}", it.count[1])
        ks.extend([_eval_int(it.j, n)] * reps)
    return tuple(ks)


def parse_template(text: str) -> SpecTemplate:
    """Parse a state description, leaving N-expressions unevaluated."""
    cur = _Cursor(text)
    family = cur.ident().lower()
    cur.expect("(")
    if family in ("ghz", "w"):
        fields = (_key_value(cur, "n"),)
    elif family == "dicke":
        n = _key_value(cur, "n")
        cur.expect(",") if cur.peek() == "," else cur.expect(";")
        fields = (n, _key_value(cur, "m"))
    elif family == "band":
        n = _key_value(cur, "n")
        cur.expect(",") if cur.peek() == "," else cur.expect(";")
        m = _key_value(cur, "m")
        extras = ()
        if cur.accept(",") or cur.accept(";"):
            extras = _parse_items(cur)
        fields = (n, m, extras)
    elif family == "product":
        n = _key_value(cur, "n")
        cur.expect(",")
        theta = _key_value(cur, "theta")
        cur.expect(",")
        alpha = _key_value(cur, "alpha")
        fields = (n, theta, alpha)
    elif family == "magnons":
        n = _key_value(cur, "n")
        cur.expect(";") if cur.peek() == ";" else cur.expect(",")
        cur._skip_ws()
        pos = cur.i
        if cur.ident().lower() != "k":
            raise SpecError("magnons needs a k=... wavenumber list", pos)
        cur.expect("=")
        fields = (n, _parse_items(cur))
    elif family == "modexp":
        n1 = _key_value(cur, "n1", "n")
        cur.expect(",")
        x = _key_value(cur, "x")
        cur.expect(",")
        mod = _key_value(cur, "m", "mod", "modulus")
        fields = (n1, x, mod)
    else:
        raise SpecError(f"unknown state family {family!r}", 0)
    cur.expect(")")
    cur.end()
    return SpecTemplate(family, fields)


_BINDERS = {
    "ghz": lambda f, n: StateSpec("ghz", n=_eval_int(f[0], n)),
    "w": lambda f, n: StateSpec("w", n=_eval_int(f[0], n)),
    "dicke": lambda f, n: StateSpec("dicke", n=_eval_int(f[0], n),
                                    m=_eval_int(f[1], n)),
    "band": lambda f, n: StateSpec(
        "band", n=_eval_int(f[0], n), m=_eval_int(f[1], n),
        extras=_eval_items(f[2], _eval_int(f[0], n)) if f[2] else ()),
    "product": lambda f, n: StateSpec("product", n=_eval_int(f[0], n),
                                      theta=_eval_float(f[1]),
                                      alpha=_eval_float(f[2])),
    "magnons": lambda f, n: StateSpec(
        "magnons", n=_eval_int(f[0], n),
        ks=_eval_items(f[1], _eval_int(f[0], n))),
    "modexp": lambda f, n: StateSpec("modexp", n=_eval_int(f[0], n),
                                     x=_eval_int(f[1], n),
                                     modulus=_eval_int(f[2], n)),
}


def parse_state_spec(text: str, n: Optional[int] = None) -> StateSpec:
    """Parse a state description into a concrete StateSpec.

    Descriptions using the symbol N need the sweep size n; fully numeric
    ones ignore it.
    """
    tpl = parse_template(text)
    return tpl.bind(n)


# -- caps ---------------------------------------------------------------------


def _check_vcm_cap(spec: StateSpec):
    if spec.n_sites > VCM_MAX_SITES:
        raise CapExceededError(
            f"N={spec.n_sites} exceeds the VCM cap {VCM_MAX_SITES} (magnonlab.vcm)")
    if spec.family == "modexp" and spec.n > MODEXP_MAX_REGISTER:
        raise CapExceededError(
            f"first register {spec.n} exceeds cap {MODEXP_MAX_REGISTER} "
            "(magnonlab.states)")


def _check_entropy_cap(spec: StateSpec):
    cap = ENTROPY_MAX_SITES_DICKE if spec.family == "dicke" else ENTROPY_MAX_SITES
    if spec.n_sites > cap:
        raise CapExceededError(
            f"N={spec.n_sites} exceeds the entropy cap {cap} (magnonlab.entropy)")


def _entropy_of_spec(spec: StateSpec, base: float = 2.0):
    """Half-chain entropy with the closed-form shortcut for large Dicke states."""
    _check_entropy_cap(spec)
    if spec.family == "dicke" and spec.n_sites > ENTROPY_MAX_SITES:
        s_bits = dicke_halfchain_entropy(spec.n, spec.m)
        return s_bits if base == 2.0 else s_bits * np.log(2.0) / np.log(base)
    return halfchain_entropy(build_state(spec), base=base)


# -- CSV ----------------------------------------------------------------------


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.12g}"


class CsvTable:
    """Rectangular CSV payload with `#` metadata comment lines."""

    def __init__(self, header: Sequence[str], metadata: Sequence[str] = ()):
        self.header = list(header)
        self.metadata = list(metadata)
        self.rows: List[tuple] = []

    def add(self, *row):
        if len(row) != len(self.header):
            raise ValueError("row width does not match header")
        self.rows.append(row)

    def dumps(self) -> str:
        lines = [f"# {m}" for m in self.metadata]
        lines.append(",".join(self.header))
        lines.extend(",".join(_fmt(v) for v in row) for row in self.rows)
        return "\n".join(lines) + "\n"

    def write(self, path: Optional[str]):
        text = self.dumps()
        if path is None:
            sys.stdout.write(text)
        else:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)

    @staticmethod
    def parse(text: str):
        """Inverse of dumps(): (metadata, header, rows with parsed numbers)."""
        metadata, header, rows = [], None, []
        for line in text.splitlines():
            if not line:
                continue
            if line.startswith("#"):
                metadata.append(line[1:].strip())
                continue
            cells = line.split(",")
            if header is None:
                header = cells
                continue
            parsed = []
            for c in cells:
                try:
                    parsed.append(int(c))
                except ValueError:
                    try:
                        parsed.append(float(c))
                    except ValueError:
                        parsed.append(c)
            rows.append(parsed)
        return metadata, header, rows


def _meta(command: str, **config) -> List[str]:
    lines = [f"generator: magnonlab {__version__}", f"command: {command}"]
    lines += [f"{k}: {v}" for k, v in config.items()]
    return lines


def _pmap(fn, jobs, threads):
    if threads is not None and threads <= 1:
        return [fn(j) for j in jobs]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, jobs))


# -- figure and table reproductions -------------------------------------------


def _emax_of_spec(spec: StateSpec, eigensolver: str = "auto") -> float:
    _check_vcm_cap(spec)
    return max_eigen(build_vcm(build_state(spec)), method=eigensolver)[0]


def _figure_series(fig_id: int, nmin: int, nmax: int):
    """(label, N list, per-N spec or callable) for each series of a figure."""
    evens = [n for n in range(max(nmin, 4), nmax + 1) if n % 2 == 0]

    def magnon_series(label, jfun):
        return (label, evens, lambda n: StateSpec("magnons", n=n, ks=tuple(jfun(n))))

    if fig_id == 1:
        return [
            magnon_series("k2=k1=0", lambda n: (0, 0)),
            magnon_series("k2=2pi/N", lambda n: (0, 1)),
            magnon_series("k2=4pi/N", lambda n: (0, 2)),
            ("analytic 1+(5N-12)/N", evens, None),
        ]
    if fig_id == 2 or fig_id == 5:
        series = []
        for div in (2, 4, 6):
            ns = [n for n in range(max(nmin, 4), nmax + 1)
                  if n % 2 == 0 and n % div == 0]
            series.append((f"m=N/{div}", ns,
                           lambda n, d=div: StateSpec("band", n=n, m=n // d)))
        return series
    if fig_id == 3:
        # defect series only where a condensate of >= 2 magnons remains
        defect1 = [n for n in evens if n >= 6]
        defect2 = [n for n in evens if n >= 8]
        return [
            ("condensed m=N/2", evens, lambda n: StateSpec("dicke", n=n, m=n // 2)),
            ("one defect", defect1,
             lambda n: StateSpec("magnons", n=n, ks=(0,) * (n // 2 - 1) + (1,))),
            ("two defects", defect2,
             lambda n: StateSpec("magnons", n=n, ks=(0,) * (n // 2 - 2) + (-1, 1))),
            ("analytic 1+N/2", evens, None),
        ]
    if fig_id == 4:
        return [
            magnon_series("distinct k=(0,2pi/N,pi)", lambda n: (0, 1, n // 2)),
            magnon_series("two equal k=(0,0,pi)", lambda n: (0, 0, n // 2)),
            magnon_series("all equal k=0", lambda n: (0, 0, 0)),
            ("limit distinct m=3", evens, None),
        ]
    raise SpecError(f"unknown figure id {fig_id}; expected 1..5")


_FIG_ANALYTIC = {
    1: lambda n: 1.0 + (5.0 * n - 12.0) / n,
    3: lambda n: 1.0 + n / 2.0,
    4: lambda n: 3.0,
}


def run_figure(fig_id: int, nmax: Optional[int] = None, nmin: int = 4,
               threads: Optional[int] = None) -> CsvTable:
    """Reproduce one survey figure as a (N, series, value) table.

    Figures 1-3 report the maximum VCM eigenvalue of two-magnon states,
    band states at several fillings, and half-filled condensates with
    wavenumber defects; figures 4 and 5 report half-chain entropies of
    three-magnon states and of the band states.
    """
    nmax = nmax if nmax is not None else 20
    quantity = "emax" if fig_id in (1, 2, 3) else "entropy_bits"
    series = _figure_series(fig_id, nmin, nmax)
    for label, ns, spec_of in series:  # reject over-cap requests up front
        for n in ns if spec_of is not None else ():
            spec = spec_of(n)
            if quantity == "emax":
                _check_vcm_cap(spec)
            else:
                _check_entropy_cap(spec)
    table = CsvTable(["N", "series", quantity],
                     _meta(f"fig --id {fig_id}", nmin=nmin, nmax=nmax))
    for label, ns, spec_of in series:
        if spec_of is None:
            values = [_FIG_ANALYTIC[fig_id](n) for n in ns]
        elif quantity == "emax":
            values = _pmap(lambda n: _emax_of_spec(spec_of(n)), ns, threads)
        else:
            values = _pmap(lambda n: _entropy_of_spec(spec_of(n)), ns, threads)
        for n, v in zip(ns, values):
            table.add(n, label, v)
    return table


TABLE1_FAMILIES = (("m=N/2", 2), ("m=N/4", 4), ("m=N/6", 6))


def run_table1(nmax: Optional[int] = None, nmin: int = 4,
               threads: Optional[int] = None) -> CsvTable:
    """Linear fits S = a*N + b of the half-chain entropy of band states.

    Each family m = N/divisor runs over every divisible even N in range;
    the fit range is recorded in the rows since the slope depends on it.
    """
    nmax = nmax if nmax is not None else 20
    table = CsvTable(
        ["family", "a", "a_stderr", "b", "b_stderr", "n_min", "n_max", "points"],
        _meta("table1", nmin=nmin, nmax=nmax))
    for label, div in TABLE1_FAMILIES:
        ns = [n for n in range(max(nmin, 4), nmax + 1)
              if n % 2 == 0 and n % div == 0 and n // div >= 1]
        if len(ns) < 3:
            raise SpecError(f"family {label} has {len(ns)} points in "
                            f"[{nmin},{nmax}]; need 3 for a fit")
        for n in ns:
            _check_entropy_cap(StateSpec("band", n=n, m=n // div))
        values = _pmap(
            lambda n, d=div: _entropy_of_spec(StateSpec("band", n=n, m=n // d)),
            ns, threads)
        fit = linear_fit(ScalingSeries(ns, values, label=label))
        table.add(label, fit.slope, fit.slope_stderr, fit.intercept,
                  fit.intercept_stderr, ns[0], ns[-1], len(ns))
    return table


def _parse_nrange(text: str) -> range:
    m = re.match(r"^(\d+):(\d+)(?::(\d+))?$", text)
    if not m:
        raise SpecError(f"bad N range {text!r}; expected start:stop[:step]")
    start, stop = int(m.group(1)), int(m.group(2))
    step = int(m.group(3)) if m.group(3) else 2
    if step <= 0:
        raise SpecError("N range step must be positive")
    return range(start, stop + 1, step)


def run_analyze(spec_text: str, nrange: str, entropy_base: float = 2.0,
                eigensolver: str = "auto", spectrum: bool = False,
                threads: Optional[int] = None) -> CsvTable:
    """Sweep a state family over N: e_max, half-chain entropy, Schmidt rank,
    and the scaling classification of the collected e_max series."""
    template = parse_template(spec_text)
    ns = list(_parse_nrange(nrange))
    if not ns:
        raise SpecError(f"empty N range {nrange!r}")
    if not template.is_symbolic and len(ns) > 1:
        raise SpecError("spec has fixed N; write N (or N/2, ...) in the spec "
                        "to sweep a range")
    specs = [template.bind(n) for n in ns]
    for sp in specs:
        if sp.n_sites % 2:
            raise SpecError(f"half-chain cut needs even N, got {sp.n_sites} "
                            f"(from N={sp.n})")
        _check_vcm_cap(sp)
        _check_entropy_cap(sp)

    header = ["N", "emax", "entropy", "schmidt_rank"]
    if spectrum:
        header += ["e_min", "vcm_trace"]

    def job(sp: StateSpec):
        state = build_state(sp)
        vcm = build_vcm(state)
        e_max, _ = max_eigen(vcm, method=eigensolver)
        sd = schmidt_decomposition(state)
        row = [sp.n_sites, e_max, sd.entropy(base=entropy_base), sd.rank()]
        if spectrum:
            row += [float(vcm.eigenvalues()[0]), vcm.trace()]
        return tuple(row)

    rows = _pmap(job, specs, threads)
    meta = _meta("analyze", spec=spec_text.strip(), nrange=nrange,
                 entropy_base=("e" if entropy_base != 2.0 else 2),
                 eigensolver=eigensolver)
    if len(rows) >= 4:
        cls = estimate_p(ScalingSeries([r[0] for r in rows], [r[1] for r in rows]))
        meta += [f"loglog_slope: {cls.slope:.12g}",
                 f"slope_stderr: {cls.stderr:.12g}",
                 f"verdict: {cls.verdict}"]
    table = CsvTable(header, meta)
    for row in sorted(rows):
        table.add(*row)
    return table


# -- selftest -----------------------------------------------------------------


def run_selftest(seed: int = 0, out=sys.stdout) -> int:
    """Oracle-equivalence suite: numerical paths against closed forms."""
    rng = np.random.default_rng(seed)
    failures = 0

    def check(name, ok):
        nonlocal failures
        out.write(f"{'ok' if ok else 'FAIL'} - {name}\n")
        failures += 0 if ok else 1

    v_num = build_vcm(dicke_state(8, 3)).matrix
    check("condensate VCM matches closed form (N=8, m=3)",
          np.abs(v_num - dicke_vcm(8, 3)).max() < 1e-10)

    spec = dicke_spectrum(10, 3)
    ev = np.linalg.eigvalsh(build_vcm(dicke_state(10, 3)).matrix)
    check("condensate VCM spectrum matches the six families (N=10, m=3)",
          np.abs(np.sort(ev) - spec.expanded()).max() < 1e-9)

    ok = all(abs(max_eigen(build_vcm(dicke_state(n, m)))[0] - dicke_emax(n, m)) < 1e-8
             for n in range(4, 13, 2) for m in range(n // 2 + 1))
    check("e_max formula over N<=12", ok)

    from .states import ghz_state, product_state, w_state

    check("GHZ half-chain entropy = 1",
          abs(halfchain_entropy(ghz_state(10)) - 1.0) < 1e-10)
    check("W half-chain entropy = 1",
          abs(halfchain_entropy(w_state(12)) - 1.0) < 1e-10)
    check("product state entropy = 0",
          halfchain_entropy(product_state(10, 1.0, 0.5)) < 1e-10)
    check("Dicke(4,2) entropy matches hypergeometric oracle",
          abs(halfchain_entropy(dicke_state(4, 2)) -
              dicke_halfchain_entropy(4, 2)) < 1e-12)

    ok = True
    for n, m in [(8, 1), (8, 4), (10, 5), (12, 4)]:
        _, w = hypergeometric_weights(n, m)
        s_closed = -np.sum(w[w > 0] * np.log2(w[w > 0]))
        ok &= abs(halfchain_entropy(dicke_state(n, m)) - s_closed) < 1e-10
    check("Dicke entropy equals hypergeometric entropy", ok)

    n = 10
    state = m_magnon_state(n, [0] * (n // 2))
    vcm = build_vcm(state)
    e_max, op = max_eigen(vcm)
    c = rng.standard_normal((2000, 3 * n)) + 1j * rng.standard_normal((2000, 3 * n))
    c *= np.sqrt(n / np.sum(np.abs(c) ** 2, axis=1))[:, None]
    quad = np.real(np.einsum("ki,ij,kj->k", c.conj(), vcm.matrix, c))
    check("random additive operators never beat N*e_max",
          float(quad.max()) <= n * e_max + 1e-6)
    check("direct fluctuation agrees with the quadratic form",
          abs(additive_fluctuation(state, op) - n * e_max) < 1e-8)

    from .entropy import von_neumann_entropy

    sd = schmidt_decomposition(state)
    rd = reduced_density(state)
    check("Schmidt and partial-trace entropies agree",
          abs(sd.entropy() - von_neumann_entropy(rd)) < 1e-9)

    out.write(f"{'all checks passed' if not failures else f'{failures} checks FAILED'}\n")
    return 0 if failures == 0 else 4


# -- entry point --------------------------------------------------------------


def _build_argparser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="magnonlab",
        description="Magnon-state fluctuation and entanglement experiments")
    sub = ap.add_subparsers(dest="command", required=True)

    fig = sub.add_parser("fig", help="reproduce figure 1-5 as CSV")
    fig.add_argument("--id", type=int, required=True, choices=range(1, 6))
    fig.add_argument("--nmax", type=int, default=None)
    fig.add_argument("--nmin", type=int, default=4)
    fig.add_argument("--out", default=None)
    fig.add_argument("--threads", type=int, default=None)

    tab = sub.add_parser("table1", help="entropy-scaling linear fits as CSV")
    tab.add_argument("--nmax", type=int, default=None)
    tab.add_argument("--nmin", type=int, default=4)
    tab.add_argument("--out", default=None)
    tab.add_argument("--threads", type=int, default=None)

    ana = sub.add_parser("analyze", help="sweep one state family over N")
    ana.add_argument("--spec", required=True)
    ana.add_argument("--nrange", required=True, metavar="START:STOP[:STEP]")
    ana.add_argument("--out", default=None)
    ana.add_argument("--entropy-base", choices=("2", "e"), default="2")
    ana.add_argument("--eigensolver", choices=("auto", "dense", "iterative"),
                     default="auto")
    ana.add_argument("--spectrum", action="store_true",
                     help="add min eigenvalue and trace columns")
    ana.add_argument("--threads", type=int, default=None)

    st = sub.add_parser("selftest", help="run the oracle-equivalence suite")
    st.add_argument("--seed", type=int, default=0)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_argparser().parse_args(argv)
    try:
        if args.command == "fig":
            run_figure(args.id, nmax=args.nmax, nmin=args.nmin,
                       threads=args.threads).write(args.out)
        elif args.command == "table1":
            run_table1(nmax=args.nmax, nmin=args.nmin,
                       threads=args.threads).write(args.out)
        elif args.command == "analyze":
            base = 2.0 if args.entropy_base == "2" else float(np.e)
            run_analyze(args.spec, args.nrange, entropy_base=base,
                        eigensolver=args.eigensolver, spectrum=args.spectrum,
                        threads=args.threads).write(args.out)
        elif args.command == "selftest":
            return run_selftest(seed=args.seed)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (NumericalError, VanishingStateError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
