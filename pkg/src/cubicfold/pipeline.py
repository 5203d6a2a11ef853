"""End-to-end verification of table rows and of ideals read from files."""

from __future__ import annotations

import csv
import io
import json
import logging
import os
import re
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from math import comb

import numpy as np

from .arith import DEFAULT_Q, PrimeField, matmul, rank
from .groebner import jacobian_smooth
from .hassett import discriminant, dimension_identity, self_intersection
from .imageideal import DEFAULT_D, IdealModel, degree_linear_normality_check, image_model, presented_model
from .normal import NotStabilized, h0_normal_ambient, h0_normal_in_X, random_cubic
from .poly import HomogeneousPoly, ParseError, evaluate_monomials, format_poly, parse_poly
from .surface import (
    DegenerateConfiguration,
    Polarization,
    SurfaceInvariants,
    WrongDimension,
    invariants,
    rational_map,
    sample_points,
)
from .tables import ENRIQUES, TABLE, TableRow, find_row

log = logging.getLogger("cubicfold")

RETRY_CAP = 5
SMOOTHNESS_MODES = ("off", "probabilistic", "jacobian")


class ConfigError(ValueError):
    pass


class RetriesExhausted(RuntimeError):
    pass


class WrongVariableCount(ValueError):
    pass


@dataclass(frozen=True)
class Options:
    q: int = DEFAULT_Q
    max_gen_degree: int = DEFAULT_D
    syzygy_bound: int | None = None  # default: max generator degree + 3
    smoothness: str = "probabilistic"
    retries: int = RETRY_CAP
    sample_points: int = 40

    def validate(self) -> "Options":
        try:
            PrimeField(self.q)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if self.smoothness not in SMOOTHNESS_MODES:
            raise ConfigError(f"unknown smoothness mode {self.smoothness!r}")
        if self.max_gen_degree < 3:
            raise ConfigError("max generator degree must be at least 3")
        if self.retries < 1:
            raise ConfigError("need at least one attempt")
        return self


def derive_seed(*parts: int) -> int:
    """Mix integers into a 64-bit seed (numpy SeedSequence hashing)."""
    state = np.random.SeedSequence([int(p) & 0xFFFFFFFFFFFFFFFF for p in parts]).generate_state(2, np.uint32)
    return int(state[0]) | (int(state[1]) << 32)


@dataclass
class VerificationReport:
    label: str
    d: int | None
    p: int | None
    row: int | None
    polarization: str
    seed: int
    q: int
    attempts: int
    status: str  # pass, degenerate or fail
    I3: int | None = None
    h0N: int | None = None
    h0NX: int | None = None
    expected_I3: int | None = None
    expected_h0N: int | None = None
    expected_h0NX: int | None = None
    table_I3: int | None = None
    table_h0N: int | None = None
    table_h0NX: int | None = None
    H2: int | None = None
    HK: int | None = None
    S2: int | None = None
    discriminant: int | None = None
    generator_degrees: str = ""
    linear_normality: bool | None = None
    hilbert_ok: bool | None = None
    generator_normality: bool | None = None
    stabilized: bool | None = None
    identity: bool | None = None
    smoothness_mode: str = "off"
    smooth: bool | None = None
    erratum: str | None = None
    note: str = ""
    timings: dict = field(default_factory=dict)

    @property
    def computed(self) -> tuple:
        return (self.I3, self.h0N, self.h0NX)

    @property
    def passed(self) -> bool:
        return self.status == "pass"


# ---------------------------------------------------------------- smoothness


def _gradients(gens: list[tuple[int, np.ndarray]], Y: np.ndarray, q: int) -> np.ndarray:
    """``out[pt, j, v]`` = d g_j / d x_v at ``Y[pt]``."""
    out = np.zeros((Y.shape[0], len(gens), 6))
    for j, (d, g) in enumerate(gens):
        f = HomogeneousPoly.from_vector(6, d, g, q)
        for v in range(6):
            dv = f.partial_derivative(v)
            if not dv.is_zero():
                out[:, j, v] = matmul(evaluate_monomials(Y, d - 1, q).T, dv.to_vector()[:, None], q)[:, 0]
    return out


def smooth_at_sampled_points(model: IdealModel, f: HomogeneousPoly, npts: int, seed: int) -> bool:
    """S has a rank-3 Jacobian and X a nonzero gradient at random points of S."""
    q = model.q
    M = model.map
    rng = np.random.Generator(np.random.Philox(seed))
    Y = []
    while len(Y) < npts:
        pt = rng.integers(0, q, size=(1, 3)).astype(np.float64)
        y = M.evaluate(pt)[0]
        if y.any():
            Y.append(y)
    Y = np.array(Y)
    J = _gradients(model.gens, Y, q)
    gf = _gradients([(3, f.to_vector())], Y, q)[:, 0]
    for n in range(npts):
        if rank(J[n], q) != 3 or not gf[n].any():
            return False
    return True


# ---------------------------------------------------------------- core runs


def _hilbert_verdicts(model: IdealModel, inv: SurfaceInvariants) -> tuple[bool, bool, bool]:
    verdict = degree_linear_normality_check(model, inv)
    lin, hil = verdict.linear_forms == 0, verdict.hilbert == verdict.expected
    gen = all(model.quotient.hilbert(d) == inv.chi(d) for d in {d for d, _ in model.gens})
    return lin, hil, gen


def _normal_sheaves(model: IdealModel, opts: Options, cubic_seed: int, rep: VerificationReport):
    t0 = time.perf_counter()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", NotStabilized)
        res = h0_normal_ambient(model, opts.syzygy_bound)
    rep.stabilized = res.stabilized and not any(issubclass(w.category, NotStabilized) for w in caught)
    rep.timings["h0N"] = round(time.perf_counter() - t0, 3)
    t0 = time.perf_counter()
    cubic = random_cubic(model, cubic_seed)
    rep.h0N = res.dim
    rep.h0NX = h0_normal_in_X(res, cubic, model)
    rep.timings["h0NX"] = round(time.perf_counter() - t0, 3)
    return res, cubic


def _attempt(row: TableRow, seed: int, opts: Options, rep: VerificationReport) -> str:
    """One sampling attempt; returns 'pass', 'degenerate' or 'fail'."""
    P = Polarization.from_counts(row.a, *row.counts)
    inv = invariants(P)
    t0 = time.perf_counter()
    C = sample_points(P.p, opts.q, seed)
    try:
        M = rational_map(C, P)
    except (WrongDimension, DegenerateConfiguration) as exc:
        rep.note = str(exc)
        return "degenerate"
    model = image_model(M, opts.max_gen_degree)
    rep.timings["ideal"] = round(time.perf_counter() - t0, 3)
    rep.I3 = model.piece(3).dim
    rep.generator_degrees = " ".join(str(d) for d, _ in model.gens)
    rep.linear_normality, rep.hilbert_ok, rep.generator_normality = _hilbert_verdicts(model, inv)
    if not (rep.linear_normality and rep.hilbert_ok and rep.generator_normality):
        rep.note = "Hilbert function not of maximal rank"
        return "degenerate"
    _, cubic = _normal_sheaves(model, opts, derive_seed(seed, 1), rep)
    rep.identity = dimension_identity(rep.h0N, rep.I3, rep.h0NX)
    rep.smoothness_mode = opts.smoothness
    t0 = time.perf_counter()
    if opts.smoothness == "probabilistic":
        rep.smooth = smooth_at_sampled_points(model, cubic.f, opts.sample_points, derive_seed(seed, 2))
    elif opts.smoothness == "jacobian":
        rep.smooth = jacobian_smooth(cubic.f) and smooth_at_sampled_points(
            model, cubic.f, opts.sample_points, derive_seed(seed, 2)
        )
    rep.timings["smooth"] = round(time.perf_counter() - t0, 3)
    if rep.smooth is False:
        rep.note = "singular cubic or surface at a sampled point"
        return "degenerate"
    ok = (
        rep.computed == (rep.expected_I3, rep.expected_h0N, rep.expected_h0NX)
        and rep.identity
        and rep.stabilized
    )
    return "pass" if ok else "fail"


def verify_row(d: int, p: int, row: int | None = None, seed: int = 0, options: Options | None = None) -> VerificationReport:
    """Run a table row end to end, resampling degenerate configurations."""
    opts = (options or Options()).validate()
    r = find_row(d, p, row)
    P = Polarization.from_counts(r.a, *r.counts)
    inv = invariants(P)
    S2 = self_intersection(inv)
    base = dict(
        label=f"d={r.d} p={r.p}", d=r.d, p=r.p, row=r.index, polarization=str(P), q=opts.q,
        expected_I3=56 - inv.chi(3), expected_h0N=2 * r.p + 27,
        expected_h0NX=2 * r.p + 27 + 56 - inv.chi(3) - 55,
        table_I3=r.h0_I3, table_h0N=r.h0_N, table_h0NX=r.h0_NX,
        H2=inv.H2, HK=inv.HK, S2=S2, discriminant=discriminant(S2, inv.H2), erratum=r.erratum,
    )
    rep = None
    for attempt in range(opts.retries):
        s = derive_seed(seed, r.index, attempt)
        rep = VerificationReport(seed=s, attempts=attempt + 1, status="fail", **base)
        t0 = time.perf_counter()
        rep.status = _attempt(r, s, opts, rep)
        rep.timings["total"] = round(time.perf_counter() - t0, 3)
        if rep.status != "degenerate":
            return rep
        log.info("row %s attempt %d degenerate: %s", rep.label, attempt + 1, rep.note)
    return rep


def _verify_index(args):
    r, seed, opts = args
    return verify_row(r.d, r.p, r.index, seed, opts)


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("CUBICFOLD_THREADS", "1")))
    except ValueError:
        return 1


def verify_all(seed: int = 0, options: Options | None = None, rows=TABLE, workers: int | None = None) -> list[VerificationReport]:
    """One report per table row, in table order.

    Row seeds depend only on ``(seed, row index, attempt)``, so parallel
    and sequential runs agree.
    """
    opts = (options or Options()).validate()
    workers = worker_count() if workers is None else workers
    jobs = [(r, seed, opts) for r in rows]
    if workers <= 1:
        return [_verify_index(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_verify_index, jobs))


# ---------------------------------------------------------------- ingestion


@dataclass
class IngestedIdeal:
    q: int
    nvars: int
    generators: list[HomogeneousPoly]
    expected: dict[str, int] = field(default_factory=dict)  # degS, HK, chi
    source: str = ""


_HEADER = re.compile(r"^q\s*=\s*(\d+)\s+vars\s*=\s*(\d+)$")
_EXPECT = re.compile(r"^expect((?:\s+\w+\s*=\s*-?\d+)+)$")


def parse_ideal(text: str, source: str = "") -> IngestedIdeal:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty ideal file")
    m = _HEADER.match(lines[0])
    if not m:
        raise ParseError(f"bad header {lines[0]!r}; expected 'q=<prime> vars=6'")
    q, nvars = int(m.group(1)), int(m.group(2))
    if nvars != 6:
        raise WrongVariableCount(f"vars={nvars}; only 6 is supported")
    try:
        PrimeField(q)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    expected: dict[str, int] = {}
    body = lines[1:]
    if body and body[0].startswith("expect"):
        em = _EXPECT.match(body[0])
        if not em:
            raise ParseError(f"bad expect line {body[0]!r}")
        for key, val in re.findall(r"(\w+)\s*=\s*(-?\d+)", em.group(1)):
            if key not in ("degS", "HK", "chi"):
                raise ParseError(f"unknown expectation {key!r}")
            expected[key] = int(val)
        body = body[1:]
    gens = [parse_poly(ln, nvars, q) for ln in body]
    if not gens:
        raise ParseError("no generators")
    return IngestedIdeal(q, nvars, gens, expected, source)


def ingest_ideal(path: str) -> IngestedIdeal:
    with open(path, encoding="utf-8") as fh:
        return parse_ideal(fh.read(), source=str(path))


def format_ideal(ideal: IngestedIdeal) -> str:
    out = [f"q={ideal.q} vars={ideal.nvars}"]
    if ideal.expected:
        out.append("expect " + " ".join(f"{k}={v}" for k, v in ideal.expected.items()))
    out.extend(format_poly(g) for g in ideal.generators)
    return "\n".join(out) + "\n"


def hilbert_polynomial(model: IdealModel, ts=(4, 5, 6)) -> tuple[int, int, int]:
    """Coefficients ``(c2, c1, c0)`` (times 2) of the quadratic through h(t).

    Returns ``2 P(t) = c2 t^2 + c1 t + c0`` with integer coefficients.
    """
    h = [model.quotient.hilbert(t) for t in ts]
    A = np.array([[t * t, t, 1] for t in ts], dtype=float)
    c = np.linalg.solve(A, 2 * np.array(h, dtype=float))
    return tuple(int(round(x)) for x in c)


def verify_ingested(ideal: IngestedIdeal, options: Options | None = None) -> VerificationReport:
    """Ideal-side pipeline for a surface given by generators."""
    opts = options or Options(q=ideal.q)
    t0 = time.perf_counter()
    model = presented_model(ideal.generators, max(opts.max_gen_degree, max(g.degree for g in ideal.generators)))
    rep = VerificationReport(
        label=f"ingested:{os.path.basename(ideal.source) or 'ideal'}", d=None, p=None, row=None,
        polarization="", seed=0, q=ideal.q, attempts=1, status="fail",
    )
    rep.timings["ideal"] = round(time.perf_counter() - t0, 3)
    rep.I3 = model.piece(3).dim
    rep.generator_degrees = " ".join(str(d) for d, _ in model.gens)
    rep.linear_normality = model.piece(1).dim == 0
    c2, c1, c0 = hilbert_polynomial(model)
    degS, HK = c2, -c1  # 2P(t) = H^2 t^2 - H.K t + 2 chi(O_S)
    rep.H2, rep.HK = degS, HK
    exp = ideal.expected
    header_ok = all(exp.get(k, v) == v for k, v in (("degS", degS), ("HK", HK)))
    if "chi" in exp:
        chi_O = c0 // 2
        K2 = 12 * chi_O - exp["chi"]
        inv = SurfaceInvariants(degS, HK, K2, exp["chi"], 1 + (degS - HK) // 2, 0)
        rep.S2 = self_intersection(inv)
        rep.discriminant = discriminant(rep.S2, degS)
        rep.hilbert_ok = all(
            model.quotient.hilbert(t) == min(comb(t + 5, 5), chi_O + (t * t * degS - t * HK) // 2) for t in (1, 2, 3)
        )
        rep.expected_I3 = 56 - (chi_O + (9 * degS - 3 * HK) // 2)
    enriques = all(exp.get(k) == ENRIQUES[v] for k, v in (("degS", "H2"), ("HK", "HK"), ("chi", "chi_top")))
    if enriques:
        rep.d = ENRIQUES["d"]
        rep.expected_h0N = ENRIQUES["h0_N"]
        rep.expected_h0NX = ENRIQUES["h0_NX"]
        rep.table_I3, rep.table_h0N, rep.table_h0NX = ENRIQUES["h0_I3"], ENRIQUES["h0_N"], ENRIQUES["h0_NX"]
    _normal_sheaves(model, opts, derive_seed(ideal.q, 44), rep)
    rep.identity = dimension_identity(rep.h0N, rep.I3, rep.h0NX)
    if rep.expected_h0N is not None and rep.expected_I3 is not None:
        rep.expected_h0NX = rep.expected_h0N + rep.expected_I3 - 55
    checks = [rep.identity, rep.stabilized, rep.linear_normality, header_ok]
    for got, want in ((rep.I3, rep.expected_I3), (rep.h0N, rep.expected_h0N), (rep.h0NX, rep.expected_h0NX)):
        if want is not None:
            checks.append(got == want)
    if not header_ok:
        rep.note = f"header disagrees with Hilbert polynomial (degS={degS}, HK={HK})"
    rep.status = "pass" if all(checks) else "fail"
    rep.timings["total"] = round(time.perf_counter() - t0, 3)
    return rep


# ---------------------------------------------------------------- reports

_FIELDS = [f for f in fields(VerificationReport)]


def _as_dict(rep: VerificationReport, timings: bool) -> dict:
    d = asdict(rep)
    if not timings:
        d.pop("timings")
    return d


def report_to_json(reports: list[VerificationReport], timings: bool = False) -> str:
    return json.dumps([_as_dict(r, timings) for r in reports], indent=2, sort_keys=True) + "\n"


def report_to_csv(reports: list[VerificationReport], timings: bool = False) -> str:
    names = [f.name for f in _FIELDS if timings or f.name != "timings"]
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=names, lineterminator="\n")
    w.writeheader()
    for r in reports:
        row = _as_dict(r, timings)
        if "timings" in row:
            row["timings"] = json.dumps(row["timings"], sort_keys=True)
        w.writerow({k: "" if v is None else v for k, v in row.items()})
    return buf.getvalue()


def _parse_cell(value: str, typ: str):
    if value == "":
        return None if "None" in typ else ""
    if typ.startswith("dict"):
        return json.loads(value)
    if "bool" in typ:
        return value == "True"
    if "int" in typ:
        return int(value)
    return value


def reports_from_csv(text: str) -> list[VerificationReport]:
    types = {f.name: str(f.type) for f in _FIELDS}
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        kwargs = {k: _parse_cell(v, types[k]) for k, v in row.items()}
        if kwargs.get("timings") is None:
            kwargs["timings"] = {}
        out.append(VerificationReport(**kwargs))
    return out


def reports_from_json(text: str) -> list[VerificationReport]:
    out = []
    for d in json.loads(text):
        d.setdefault("timings", {})
        out.append(VerificationReport(**d))
    return out


def report_to_markdown(reports: list[VerificationReport]) -> str:
    head = (
        "| d | p | H | h^0(I_{S/P^5}(3)) | h^0(N_{S/P^5})=2p+27 | h^0(N_{S/X}) | identity | status |\n"
        "|---|---|---|---|---|---|---|---|\n"
    )
    lines = []
    for r in reports:
        def cell(got, want):
            if got is None:
                return "-"
            return f"{got}" if want is None or got == want else f"{got} (expected {want})"

        lines.append(
            f"| {r.d if r.d is not None else '-'} | {r.p if r.p is not None else '-'} | {r.polarization or r.label} "
            f"| {cell(r.I3, r.expected_I3)} | {cell(r.h0N, r.expected_h0N)} | {cell(r.h0NX, r.expected_h0NX)} "
            f"| {'yes' if r.identity else 'no'} | {r.status}{' *' if r.erratum else ''} |"
        )
    foot = ""
    if any(r.erratum for r in reports):
        foot = "\n* printed divisor disagrees with its (H^2, H.K) columns; the columns were used.\n"
    return head + "\n".join(lines) + "\n" + foot


def emit_report(reports: list[VerificationReport], fmt: str, path: str | None = None, timings: bool = False) -> str:
    if fmt == "json":
        text = report_to_json(reports, timings)
    elif fmt == "csv":
        text = report_to_csv(reports, timings)
    elif fmt == "md":
        text = report_to_markdown(reports)
    else:
        raise ConfigError(f"unknown report format {fmt!r}")
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text
