"""Command-line interface: verification suites, exact computations, spectra."""
from __future__ import annotations

import csv
import io
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

import click

from .exact import I, random_rational, rat, scalar

COMPUTE_ANCHORS = {
    "genfun": "weighted enumeration of ASM symmetry classes",
    "closed_form": "determinant and pfaffian generating functions",
    "partition": "closed-form partition function with exhaustive lattice oracle",
    "component": "component of the zero-energy state at rational q",
    "sumrule": "homogeneous anti-diagonal sum rule: spin-chain sum and determinant",
    "spectrum": "sector-resolved spectrum of the twisted spin-one chain (floating point)",
}


# --------------------------------------------------------------------------
# parsing and output helpers

def _fmt(as_json: bool, as_csv: bool) -> str:
    if as_json and as_csv:
        raise click.UsageError("--json and --csv are mutually exclusive")
    return "json" if as_json else "csv" if as_csv else "human"


def _rational(value, name: str):
    try:
        return rat(Fraction(str(value)))
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"{value!r} is not a rational number", param_hint=name)


def _rationals(values, name: str) -> list:
    return [_rational(v, name) for v in values]


def _params(q=None, s=None):
    from .vertex import ModelParams
    try:
        if s is not None:
            return ModelParams.from_s(s)
        return ModelParams(q)
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--q")


def _json_dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def _csv_dump(rows: list, columns: list) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow(["" if r.get(c) is None else
                    (json.dumps(r[c], sort_keys=True) if isinstance(r[c], (dict, list)) else r[c])
                    for c in columns])
    return buf.getvalue()


def _emit_record(record: dict, fmt: str, anchor: str) -> None:
    """One computed record: human lines, a JSON object or a two-line CSV."""
    record = {"anchor": anchor, **record}
    if fmt == "json":
        click.echo(_json_dump(record))
    elif fmt == "csv":
        click.echo(_csv_dump([record], list(record)), nl=False)
    else:
        click.echo(f"# {anchor}")
        for k, v in record.items():
            if k != "anchor":
                if isinstance(v, (dict, list)):
                    v = json.dumps(v, sort_keys=True, ensure_ascii=False)
                click.echo(f"{k}: {v}")


common_format = [
    click.option("--json", "as_json", is_flag=True, help="JSON output (numbers as strings)."),
    click.option("--csv", "as_csv", is_flag=True, help="CSV output."),
]


def with_format(fn):
    for opt in reversed(common_format):
        fn = opt(fn)
    return fn


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def main():
    """Exact checks and computations for the fused vertex models, spin-one chains and ASMs."""


# --------------------------------------------------------------------------
# verify

@main.command()
@click.argument("suite", type=click.Choice(["local", "transfer", "sov", "partition", "asm", "all"]))
@click.option("--seed", default=0, show_default=True, type=int, help="Seed for all random rational draws.")
@click.option("--max-n", default=3, show_default=True, type=click.IntRange(1, 5),
              help="Largest chain length / size used by the suite.")
@click.option("--jobs", default=1, show_default=True, type=click.IntRange(1, 64))
@click.option("--timings", is_flag=True, help="Include per-check elapsed times in the report.")
@with_format
def verify(suite, seed, max_n, jobs, timings, as_json, as_csv):
    """Run a verification suite; exit status 0 iff every check passes."""
    from .suites import run_suite
    fmt = _fmt(as_json, as_csv)
    report = run_suite(suite, seed=seed, max_n=max_n, jobs=jobs)
    if fmt == "json":
        click.echo(_json_dump(report.to_dict(timings)))
    elif fmt == "csv":
        cols = ["id", "anchor", "status", "params", "lhs", "rhs", "detail"] + (["elapsed"] if timings else [])
        click.echo(_csv_dump([r.to_dict(timings) for r in report.results], cols), nl=False)
    else:
        for r in report.results:
            line = f"{r.status.upper():7s} {r.id}  ({r.anchor})"
            if timings:
                line += f"  {r.elapsed:.3f}s"
            click.echo(line)
            if r.status == "fail":
                for key in ("lhs", "rhs", "detail"):
                    val = getattr(r, key)
                    if val:
                        click.echo(f"        {key}: {val}")
        c = report.counts()
        click.echo(f"suite {suite}: {c['pass']} passed, {c['fail']} failed, {c['skipped']} skipped")
    sys.exit(0 if report.passed else 1)


# --------------------------------------------------------------------------
# ASM generating functions and enumeration

def _asm_kind(value):
    from .asm import AsmKind
    try:
        return AsmKind.parse(value)
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--class")


def _run_genfun(cls, size, closed, compare, jobs, fmt):
    from .asm import EnumerationTooLarge, closed_form_for_class, genfun
    kind = _asm_kind(cls)
    record = {"class": kind.value, "size": str(size)}
    try:
        if closed or compare:
            record["closed_form"] = str(closed_form_for_class(kind, size))
        if compare or not closed:
            record["enumeration"] = str(genfun(kind, size, jobs=jobs))
    except (EnumerationTooLarge, ValueError) as exc:
        raise click.UsageError(str(exc))
    if compare:
        record["match"] = record["closed_form"] == record["enumeration"]
    if fmt == "human" and not compare:
        click.echo(record.get("closed_form") or record["enumeration"])
        return
    _emit_record(record, fmt, COMPUTE_ANCHORS["genfun"])


genfun_options = [
    click.option("--class", "cls", required=True, help="plain, ht, htminus, qt, vs, uu or vhp."),
    click.option("--size", required=True, type=click.IntRange(0, 64)),
    click.option("--closed-form", "closed", is_flag=True, help="Use the determinant/pfaffian pipeline."),
    click.option("--compare", is_flag=True, help="Print both pipelines and whether they agree."),
    click.option("--jobs", default=1, type=click.IntRange(1, 64)),
]


def with_genfun(fn):
    for opt in reversed(genfun_options):
        fn = opt(fn)
    return with_format(fn)


@main.command("genfun")
@with_genfun
def genfun_cmd(cls, size, closed, compare, jobs, as_json, as_csv):
    """Weighted generating function of an ASM class."""
    _run_genfun(cls, size, closed, compare, jobs, _fmt(as_json, as_csv))


@main.command("enumerate")
@click.option("--class", "cls", required=True)
@click.option("--size", required=True, type=click.IntRange(0, 64))
@click.option("--limit", default=None, type=click.IntRange(0), help="Print at most this many matrices.")
@with_format
def enumerate_cmd(cls, size, limit, as_json, as_csv):
    """List the matrices of an ASM class with their weight counters."""
    from .asm import EnumerationTooLarge, enumerate_asms
    fmt = _fmt(as_json, as_csv)
    kind = _asm_kind(cls)
    try:
        mats = enumerate_asms(kind, size)
    except (EnumerationTooLarge, ValueError) as exc:
        raise click.UsageError(str(exc))
    shown = mats if limit is None else mats[:limit]
    rows = [{"index": str(i), "entries": [[str(e) for e in r] for r in m.entries],
             "counters": {k: str(v) for k, v in m.counters().items()}, "weight": str(m.weight())}
            for i, m in enumerate(shown)]
    if fmt == "json":
        click.echo(_json_dump({"class": kind.value, "size": str(size), "count": str(len(mats)),
                               "matrices": rows}))
    elif fmt == "csv":
        click.echo(_csv_dump(rows, ["index", "entries", "counters", "weight"]), nl=False)
    else:
        for i, m in enumerate(shown):
            click.echo(f"[{i}] weight {m.weight()}")
            click.echo(str(m))
            click.echo("")
        click.echo(f"{len(mats)} matrices")


# --------------------------------------------------------------------------
# spectra

def _spectrum_figure(reports, path: Path) -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4.5))
    r0 = reports[0]
    markers = ("o", "x")
    if len(reports) == 1:
        for k, sec in enumerate(r0.sectors):
            ax.scatter([k] * len(sec.eigenvalues), sec.eigenvalues, marker=markers[k % 2], label=sec.label)
        ax.set_xticks(range(len(r0.sectors)), [s.label for s in r0.sectors])
        ax.set_xlim(-0.8, len(r0.sectors) - 0.2)
        ax.set_title(f"N={r0.n}, twist {r0.twist}, x={float(Fraction(str(r0.x))):g}")
    else:
        xs = [float(Fraction(str(r.x))) for r in reports]
        for k in range(len(r0.sectors)):
            first = True
            for x, r in zip(xs, reports):
                ev = r.sectors[k].eigenvalues
                ax.scatter([x] * len(ev), ev, s=12, marker=markers[k % 2], color=f"C{k}",
                           label=r.sectors[k].label if first else None)
                first = False
        ax.set_xlabel("x")
        ax.set_title(f"N={r0.n}, twist {r0.twist}")
    ax.axhline(0.0, color="grey", lw=0.6)
    ax.set_ylabel("energy")
    ax.legend(loc="best", fontsize="small")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def _run_spectrum(n, xs, twist, figure, no_figure, fmt):
    from .transfer import spectrum_probe
    values = []
    for chunk in xs:
        values += [v for v in chunk.split(",") if v]
    if not values:
        raise click.UsageError("give at least one --x value")
    xs = [Fraction(_rational(v, "--x")) for v in values]
    try:
        reports = [spectrum_probe(n, x, twist) for x in xs]
    except ValueError as exc:
        raise click.UsageError(str(exc))
    if not no_figure:
        path = Path(figure) if figure else Path(f"spectrum_N{n}_{reports[0].twist}.png")
        _spectrum_figure(reports, path)
    dicts = []
    for r in reports:
        d = r.to_dict()
        d["x"] = str(Fraction(str(r.x)))
        dicts.append(d)
    if fmt == "json":
        click.echo(_json_dump(dicts[0] if len(dicts) == 1 else {"approximate": True, "probes": dicts}))
    elif fmt == "csv":
        rows = [{"N": d["N"], "x": d["x"], "twist": d["twist"], "sector": s["sector"],
                 "eigenvalues": s["eigenvalues"], "zero_degeneracy": s["zero_degeneracy"],
                 "min_eigenvalue": s["min_eigenvalue"]} for d in dicts for s in d["sectors"]]
        click.echo(_csv_dump(rows, ["N", "x", "twist", "sector", "zero_degeneracy",
                                    "min_eigenvalue", "eigenvalues"]), nl=False)
    else:
        click.echo(f"# {COMPUTE_ANCHORS['spectrum']} (approximate, tolerance {reports[0].tolerance:g})")
        for r, d in zip(reports, dicts):
            click.echo(f"N={r.n} x={d['x']} twist={r.twist}")
            for s in r.sectors:
                ev = " ".join(f"{v:.10g}" for v in s.eigenvalues)
                click.echo(f"  {s.label}: zero_degeneracy={s.zero_degeneracy} "
                           f"min={s.min_eigenvalue:.10g}")
                click.echo(f"    {ev}")
            click.echo(f"  non-zero parts coincide: {r.nonzero_parts_coincide}; "
                       f"E=0 degeneracy {r.zero_degeneracy} "
                       f"(special sector {r.special_sector_zero_degeneracy}); "
                       f"min eigenvalue {r.min_eigenvalue:.10g}")
        if not no_figure:
            click.echo(f"figure: {path}")


spectrum_options = [
    click.option("--N", "n", required=True, type=click.IntRange(1, 8)),
    click.option("--x", "xs", required=True, multiple=True,
                 help="Coupling x (rational); repeat or comma-separate for a sweep."),
    click.option("--twist", required=True, type=click.Choice(["d", "ad"])),
    click.option("--figure", default=None, help="Figure file (default spectrum_N<N>_<twist>.png)."),
    click.option("--no-figure", is_flag=True, help="Skip the matplotlib figure."),
]


def with_spectrum(fn):
    for opt in reversed(spectrum_options):
        fn = opt(fn)
    return with_format(fn)


@main.command("spectrum")
@with_spectrum
def spectrum_cmd(n, xs, twist, figure, no_figure, as_json, as_csv):
    """Floating-point spectrum of the spin-one chain, split into symmetry sectors."""
    _run_spectrum(n, xs, twist, figure, no_figure, _fmt(as_json, as_csv))


# --------------------------------------------------------------------------
# partition functions

PARTITION_KINDS = ("dwbc", "htplus", "htminus", "qt", "uturn", "uuturn", "zcap", "za", "ad", "mixed")


def _partition_values(kind: str, n: int, given: dict, seed: int):
    """(closed form, oracle or None, parameters used)."""
    from . import partition as pf
    from .lattice import DomainTooLarge
    from .transfer import Inhom
    from .vertex import ModelParams

    rng = random.Random(f"{seed}:partition:{kind}")
    used: list = []

    def draw(name, count):
        if name in given:
            vals = given[name] if isinstance(given[name], list) else [given[name]]
            vals = _rationals(vals, "--params-json")
            if len(vals) != count:
                raise click.BadParameter(f"{name!r} needs {count} values", param_hint="--params-json")
        else:
            vals = [random_rational(rng, avoid=used) for _ in range(count)]
        used.extend(vals)
        return vals

    half = kind in ("zcap", "za")
    if "s" in given:
        params = _params(s=_rational(given["s"], "--params-json"))
    elif "q" in given:
        if half:
            raise click.BadParameter("this domain needs the half parameter 's'", param_hint="--params-json")
        params = _params(q=_rational(given["q"], "--params-json"))
    else:
        s = random_rational(rng, bound=12)
        params = ModelParams.from_s(s) if half else ModelParams(s)
    info = {"q": str(params.q)}
    if params.s is not None:
        info["s"] = str(params.s)

    def out(closed, oracle, **vals):
        info.update({k: ([str(x) for x in v] if isinstance(v, list) else str(v)) for k, v in vals.items()})
        return closed, oracle, info

    def brute(spec):
        try:
            return lambda: pf.z_bruteforce(spec, params)
        except DomainTooLarge:
            return None

    if kind == "dwbc":
        z, w = draw("z", n), draw("w", n)
        return out(lambda: pf.z_ik(z, w, params), brute(pf.DomainSpec("dwbc", z, w)), z=z, w=w)
    if kind in ("htplus", "htminus"):
        z, w = draw("z", n), draw("w", n)
        sign = 1 if kind == "htplus" else -1
        return out(lambda: pf.z_ht(sign, z, w, params), brute(pf.DomainSpec(kind, z, w)), z=z, w=w)
    if kind == "qt":
        w = draw("w", n)
        return out(lambda: pf.z_qt_full(w, params), brute(pf.DomainSpec("qt", (), w)), w=w)
    if kind in ("uturn", "uuturn", "zcap"):
        x, y = draw("x", n), draw("y", n)
        b = draw("b", 1)[0]
        if kind == "uturn":
            return out(lambda: pf.z_u(x, y, b, params), brute(pf.DomainSpec("uturn", x, y, b=b)),
                       x=x, y=y, b=b)
        if kind == "zcap":
            return out(lambda: pf.z_cap(x, y, b, params), brute(pf.DomainSpec("zcap", y, x, b=b)),
                       x=x, y=y, b=b)
        c = draw("c", 1)[0]
        return out(lambda: pf.z_uu(x, y, b, c, params), brute(pf.DomainSpec("uuturn", x, y, b=b, c=c)),
                   x=x, y=y, b=b, c=c)
    if kind == "za":
        x, y = draw("x", n), draw("y", 2 * n)
        b = draw("b", 1)[0]
        return out(lambda: pf.z_a(x, y, b, params), brute(pf.DomainSpec("zadomain", y, x, b=b)),
                   x=x, y=y, b=b)
    if kind == "ad":
        w = draw("w", n)
        y = draw("y", 1)[0]
        inhom = Inhom(w)
        return out(lambda: pf.z_ad(y, inhom, params), lambda: pf.z_ad_direct(y, inhom, params), w=w, y=y)
    w = draw("w", n)
    return out(lambda: pf.z_qt_full(w, params), lambda: pf.z_mixed_direct(Inhom(w), params), w=w)


def _run_partition(kind, sizes, params_json, seed, fmt):
    from .lattice import DomainTooLarge
    from .partition import SingularParameters
    try:
        given = json.loads(params_json) if params_json else {}
    except json.JSONDecodeError as exc:
        raise click.BadParameter(str(exc), param_hint="--params-json")
    if not isinstance(given, dict):
        raise click.BadParameter("expected a JSON object", param_hint="--params-json")
    for n in sizes:
        closed, oracle, info = _partition_values(kind, n, given, seed)
        record = {"kind": kind, "size": str(n), "params": info}
        try:
            value = closed()
            record["value"] = str(value)
            if oracle is not None:
                try:
                    ref = oracle()
                    record["oracle"] = str(ref)
                    record["match"] = ref == value
                except DomainTooLarge:
                    record["oracle"] = None
        except SingularParameters as exc:
            record["value"] = None
            record["error"] = str(exc)
        except (ValueError, ZeroDivisionError) as exc:
            raise click.UsageError(f"{kind} at size {n}: {exc}")
        _emit_record(record, fmt, COMPUTE_ANCHORS["partition"])


partition_options = [
    click.option("--kind", required=True, type=click.Choice(PARTITION_KINDS)),
    click.option("--sizes", default="1", show_default=True,
                 help="Comma-separated sizes n (number of independent spectral parameters)."),
    click.option("--params-json", default=None,
                 help='Parameters, e.g. {"q": "2", "z": ["3", "5"], "w": ["7", "11"]}; '
                      "missing ones are drawn from --seed."),
    click.option("--seed", default=0, show_default=True, type=int),
]


def with_partition(fn):
    for opt in reversed(partition_options):
        fn = opt(fn)
    return with_format(fn)


def _sizes(text) -> list:
    try:
        sizes = [int(v) for v in str(text).split(",") if v.strip()]
    except ValueError:
        raise click.BadParameter(f"{text!r} is not a list of integers", param_hint="--sizes")
    if not sizes or min(sizes) < 0:
        raise click.BadParameter("sizes must be non-negative integers", param_hint="--sizes")
    return sizes


@main.command("partition")
@with_partition
def partition_cmd(kind, sizes, params_json, seed, as_json, as_csv):
    """Exact partition function, with its lattice or direct oracle when affordable."""
    _run_partition(kind, _sizes(sizes), params_json, seed, _fmt(as_json, as_csv))


# --------------------------------------------------------------------------
# zero-energy states

ROOT_OF_UNITY_EPS = (Fraction(1, 64), Fraction(1, 128), Fraction(1, 256))


def _phi_at(twist, n, q):
    from .sov import phi
    try:
        return phi(twist, n, _params(q=q))
    except ValueError as exc:
        raise click.UsageError(str(exc))


def _extrapolate(fn, qc):
    """Quadratic extrapolation to eps = 0 from q = qc (1 + eps)."""
    from .exact import interpolate
    pts = [(e, fn(qc * (1 + rat(e)))) for e in ROOT_OF_UNITY_EPS]
    return interpolate(pts)[0]


def _component_value(twist, n, q, pattern):
    from .sov import component
    if q == 0:
        raise click.BadParameter("q must be non-zero", param_hint="--q")
    if q ** 4 == 1:
        val = _extrapolate(lambda qq: rat(component(_phi_at(twist, n, qq), pattern, n)), q)
        return val, "extrapolated from q = q_c (1 + eps), eps in {1/64, 1/128, 1/256}"
    return component(_phi_at(twist, n, q), pattern, n), "exact"


def _run_component(twist, n, q, pattern, fmt):
    q = _rational(q, "--q")
    try:
        value, how = _component_value(twist, n, q, pattern)
    except (KeyError, IndexError) as exc:
        raise click.BadParameter(f"bad pattern {pattern!r}: {exc}", param_hint="--pattern")
    x = q + 1 / q
    record = {"twist": twist, "N": str(n), "q": str(q), "x": str(x), "pattern": pattern,
              "value": str(value), "evaluation": how}
    _emit_record(record, fmt, COMPUTE_ANCHORS["component"])


component_options = [
    click.option("--twist", required=True, type=click.Choice(["d", "ad"])),
    click.option("--N", "n", required=True, type=click.IntRange(1, 6)),
    click.option("--q", required=True, help="Rational q; q = 1 or -1 is reached by extrapolation."),
    click.option("--pattern", required=True, help="Spin pattern, e.g. +0- or ⇑0⇓ (u/d also accepted)."),
]


def with_component(fn):
    for opt in reversed(component_options):
        fn = opt(fn)
    return with_format(fn)


@main.command("component")
@with_component
def component_cmd(twist, n, q, pattern, as_json, as_csv):
    """One exact component of the zero-energy state."""
    _run_component(twist, n, q, pattern, _fmt(as_json, as_csv))


@main.command("vector")
@click.option("--twist", required=True, type=click.Choice(["d", "ad"]))
@click.option("--N", "n", required=True, type=click.IntRange(1, 6))
@click.option("--q", required=True)
@click.option("--dump", is_flag=True, help="List every non-zero component.")
@with_format
def vector_cmd(twist, n, q, dump, as_json, as_csv):
    """The zero-energy state at rational q."""
    from .ops import digits
    from .transfer import chain_dims
    fmt = _fmt(as_json, as_csv)
    qv = _rational(q, "--q")
    if qv == 0 or qv ** 4 == 1:
        raise click.BadParameter("the full vector needs q away from 0 and the fourth roots of unity",
                                 param_hint="--q")
    vec = _phi_at(twist, n, qv)
    symbols = "+0-"
    rows = [{"pattern": "".join(symbols[d] for d in digits(k, chain_dims(n))), "value": str(v)}
            for k, v in sorted(vec.items())]
    if not dump:
        rows = rows[:1]
    if fmt == "json":
        click.echo(_json_dump({"anchor": COMPUTE_ANCHORS["component"], "twist": twist, "N": str(n),
                               "q": str(qv), "nonzero": str(len(vec)), "components": rows}))
    elif fmt == "csv":
        click.echo(_csv_dump(rows, ["pattern", "value"]), nl=False)
    else:
        click.echo(f"# {COMPUTE_ANCHORS['component']}")
        for r in rows:
            click.echo(f"{r['pattern']} {r['value']}")
        click.echo(f"{len(vec)} non-zero components")


def _parse_y(text, q):
    t = str(text).strip().lower()
    if t == "q":
        return scalar(q), "q"
    if t == "i":
        return I, "i"
    if t == "-i":
        return -I, "-i"
    return scalar(_rational(text, "--y")), t


def _run_sumrule(twist, n, q, y, fmt):
    from .asm import eval_t, zad_hom
    from .transfer import magnetization_values
    if twist != "ad":
        raise click.BadParameter("the closed-form sum rule exists for the anti-diagonal twist only",
                                 param_hint="--twist")
    qv = _rational(q, "--q")
    if qv == 0 or qv ** 4 == 1:
        raise click.BadParameter("q must avoid 0 and the fourth roots of unity", param_hint="--q")
    yv, ylabel = _parse_y(y, qv)
    if not yv:
        raise click.BadParameter("y must be non-zero", param_hint="--y")
    vec = _phi_at("ad", n, qv)
    mags = magnetization_values(n)
    chain = sum((scalar(v * v) * yv ** mags[k] for k, v in vec.items()), scalar(0))
    x = qv + 1 / qv
    closed = eval_t(zad_hom(n), x * x, y=yv)
    record = {"twist": twist, "N": str(n), "q": str(qv), "x": str(x), "y": ylabel,
              "spin_chain": str(chain), "determinant": str(closed), "match": chain == closed}
    _emit_record(record, fmt, COMPUTE_ANCHORS["sumrule"])


sumrule_options = [
    click.option("--twist", default="ad", show_default=True, type=click.Choice(["d", "ad"])),
    click.option("--N", "n", required=True, type=click.IntRange(1, 6)),
    click.option("--q", required=True),
    click.option("--y", default="q", show_default=True, help="q, i, -i or a rational."),
]


def with_sumrule(fn):
    for opt in reversed(sumrule_options):
        fn = opt(fn)
    return with_format(fn)


@main.command("sumrule")
@with_sumrule
def sumrule_cmd(twist, n, q, y, as_json, as_csv):
    """<phi|y^M|phi> from the spin chain and from the homogeneous determinant."""
    _run_sumrule(twist, n, q, y, _fmt(as_json, as_csv))


# --------------------------------------------------------------------------
# compute: the same computations grouped under one command

@main.group()
def compute():
    """Single exact computations (genfun, partition, component, sumrule, spectrum)."""


@compute.command("genfun")
@with_genfun
def compute_genfun(cls, size, closed, compare, jobs, as_json, as_csv):
    """Weighted generating function of an ASM class."""
    _run_genfun(cls, size, closed, compare, jobs, _fmt(as_json, as_csv))


@compute.command("partition")
@with_partition
def compute_partition(kind, sizes, params_json, seed, as_json, as_csv):
    """Exact partition function with its oracle."""
    _run_partition(kind, _sizes(sizes), params_json, seed, _fmt(as_json, as_csv))


@compute.command("component")
@with_component
def compute_component(twist, n, q, pattern, as_json, as_csv):
    """One exact component of the zero-energy state."""
    _run_component(twist, n, q, pattern, _fmt(as_json, as_csv))


@compute.command("sumrule")
@with_sumrule
def compute_sumrule(twist, n, q, y, as_json, as_csv):
    """Homogeneous sum rule, both pipelines."""
    _run_sumrule(twist, n, q, y, _fmt(as_json, as_csv))


@compute.command("spectrum")
@with_spectrum
def compute_spectrum(n, xs, twist, figure, no_figure, as_json, as_csv):
    """Sector table of the spin-chain spectrum."""
    _run_spectrum(n, xs, twist, figure, no_figure, _fmt(as_json, as_csv))


if __name__ == "__main__":
    main()
