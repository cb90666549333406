"""Verification suites: named exact checks with reproducible random draws.

Each check is a module-level function ``fn(rng, max_n) -> list[Outcome]`` so
that suites can be spread over worker processes.  The random generator of a
check is seeded from the run seed and the check id only, which makes a
report independent of scheduling.
"""
from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .exact import random_rational, scalar

# check id prefix -> anchor describing the identity under test
ANCHORS = {
    "local.ybe": "Yang-Baxter relation for the fused R-matrices",
    "local.inversion": "inversion and crossing relations of the R-matrices",
    "local.inversion22": "inversion relation of the spin-one R-matrix",
    "local.qinversion": "R-matrix under q -> 1/q",
    "local.boundary": "boundary Yang-Baxter and fish relations of the boundary vectors",
    "transfer.fusion": "fusion identity T2(z) = T1(z) T1(qz) - a(qz) d(z)",
    "transfer.nullvector": "special eigenvector: T1 psi = 0, T2 psi = theta2 psi",
    "transfer.hamiltonian": "zero-energy state of the spin-chain Hamiltonian",
    "transfer.eigenvector": "transposition, exchange and translation covariance of the special eigenvector",
    "transfer.spectrum": "sector structure of the spectrum and the simple zero eigenvalue",
    "sov.structure": "actions of the monodromy blocks on the separated basis, overlaps, completeness",
    "sov.reconstruction": "separated-variable reconstruction of the anti-diagonal eigenvector",
    "partition.oracle": "closed-form partition function against exhaustive lattice sum",
    "partition.recursion": "domain-wall recursion at z_1 = q w_1",
    "partition.wheel": "vanishing on geometric triples of spectral parameters",
    "partition.zad": "anti-diagonal sum rule determinant against direct scalar product",
    "partition.zad_special": "anti-diagonal sum rule at y = q, 1, i",
    "partition.mixed": "mixed scalar product: direct, subset sum and quarter-turn factorisation",
    "partition.mixed_recurrence": "recurrence of the mixed scalar product",
    "partition.spin_reversal": "spin-reversal of the diagonal eigenvector",
    "partition.xi": "boundary-vector scalar products of the special eigenvectors",
    "partition.odd_ad": "odd-length anti-diagonal boundary scalar product",
    "asm.baseline": "plain ASM counts and small generating functions",
    "asm.closed_form": "determinant and pfaffian generating functions against enumeration",
    "asm.sum_rule": "homogeneous sum rule against ASM generating functions",
    "asm.links": "zero-energy-state components and scalar products against ASM enumeration",
    "asm.lmatrix": "binomial matrices L(alpha, beta): determinant, L L^t, product law",
}


def anchor_for(check_id: str) -> str:
    base = check_id.split("[", 1)[0].split("#", 1)[0]
    return ANCHORS[base]


@dataclass
class Outcome:
    id: str
    ok: bool | None             # None: skipped
    params: dict = field(default_factory=dict)
    lhs: str | None = None
    rhs: str | None = None
    detail: str = ""


@dataclass
class CheckResult:
    id: str
    anchor: str
    params: dict
    status: str
    lhs: str | None
    rhs: str | None
    elapsed: float
    detail: str = ""

    def to_dict(self, timings: bool = False) -> dict:
        d = {"id": self.id, "anchor": self.anchor, "params": self.params,
             "status": self.status, "lhs": self.lhs, "rhs": self.rhs}
        if self.detail:
            d["detail"] = self.detail
        if timings:
            d["elapsed"] = f"{self.elapsed:.3f}"
        return d


@dataclass
class Report:
    suite: str
    seed: int
    max_n: int
    results: list

    @property
    def passed(self) -> bool:
        return all(r.status != "fail" for r in self.results)

    def counts(self) -> dict:
        out = {"pass": 0, "fail": 0, "skipped": 0}
        for r in self.results:
            out[r.status] += 1
        return out

    def to_dict(self, timings: bool = False) -> dict:
        return {"suite": self.suite, "seed": str(self.seed), "max_n": str(self.max_n),
                "passed": self.passed, "counts": {k: str(v) for k, v in self.counts().items()},
                "results": [r.to_dict(timings) for r in self.results]}


def _s(x) -> str:
    return str(x)


def _rng_point(rng, n, avoid=()):
    """n random rationals with pairwise distinct squares, avoiding the given values.

    Distinct squares keep every bracket [v_i / v_j] non-zero.
    """
    out = []
    for _ in range(n):
        out.append(random_rational(rng, avoid=list(avoid) + out + [-v for v in out]))
    return out


def _params(rng):
    from .vertex import ModelParams
    s = random_rational(rng, bound=12)
    return ModelParams.from_s(s)


# --------------------------------------------------------------------------
# local relations

def check_local(rng, max_n):
    from .vertex import (check_boundary_ybe_and_fish, check_inversion_crossing,
                         check_inversion_r22, check_q_inversion, check_yang_baxter)
    out = []
    for k in range(3):
        params = _params(rng)
        z, w, b = _rng_point(rng, 3)
        p = {"s": _s(params.s), "z": _s(z), "w": _s(w), "b": _s(b)}
        for m, n, pp in ((1, 1, 1), (1, 1, 2), (1, 2, 1), (1, 2, 2),
                         (2, 1, 1), (2, 1, 2), (2, 2, 1), (2, 2, 2)):
            out.append(Outcome(f"local.ybe[{m},{n},{pp}]#{k}",
                               check_yang_baxter(m, n, pp, z, w, params), p))
        out.append(Outcome(f"local.inversion#{k}", check_inversion_crossing(params, z), p))
        out.append(Outcome(f"local.inversion22#{k}", check_inversion_r22(params, z), p))
        out.append(Outcome(f"local.qinversion#{k}", check_q_inversion(params, z), p))
        for model in (1, 2):
            out.append(Outcome(f"local.boundary[{model}]#{k}",
                               check_boundary_ybe_and_fish(model, z, w, b, params), p))
    return out


# --------------------------------------------------------------------------
# transfer matrices and special eigenvectors

def check_fusion_suite(rng, max_n):
    from .transfer import Inhom, check_fusion
    out = []
    for n in range(1, min(max_n, 4) + 1):
        for twist in ("d", "ad"):
            for k in range(3):
                params = _params(rng)
                w = _rng_point(rng, n)
                z = random_rational(rng, avoid=w)
                ok = check_fusion(z, twist, params, Inhom(w))
                out.append(Outcome(f"transfer.fusion[{twist},N={n}]#{k}", ok,
                                   {"q": _s(params.q), "z": _s(z), "w": [_s(v) for v in w]}))
    return out


def _special(twist, inhom, params):
    from .sov import DegenerateError, special_vector
    try:
        return special_vector(twist, inhom, params)
    except DegenerateError:
        return special_vector(twist, inhom, params, method="kernel")


def check_null_vectors(rng, max_n):
    from .sov import check_null_vector
    from .transfer import Inhom
    out = []
    for twist in ("d", "ad"):
        for n in range(1, min(max_n, 5) + 1):
            cases = [("hom", Inhom.homogeneous(n))]
            if n <= 4:
                cases.insert(0, ("inhom", None))
            for label, inhom in cases:
                params = _params(rng)
                if inhom is None:
                    inhom = Inhom(_rng_point(rng, n))
                z = random_rational(rng)
                vec = _special(twist, inhom, params)
                rep = check_null_vector(twist, vec, inhom, params, z)
                out.append(Outcome(f"transfer.nullvector[{twist},{label},N={n}]",
                                   all(rep.values()) and bool(vec),
                                   {"q": _s(params.q), "z": _s(z),
                                    "w": [_s(v) for v in inhom.w]}, detail=_s(rep)))
    return out


def check_hamiltonians(rng, max_n):
    from .ops import vec_equal
    from .sov import phi
    from .transfer import hamiltonian
    from .vertex import ModelParams
    out = []
    for twist in ("d", "ad"):
        for n in range(2, min(max_n, 5) + 1):
            q = random_rational(rng, bound=12)
            params = ModelParams(q)
            vec = {k: scalar(v) for k, v in phi(twist, n, params).items()}
            h = hamiltonian(n, params.x, twist)
            out.append(Outcome(f"transfer.hamiltonian[{twist},N={n}]",
                               vec_equal(h @ vec, {}) and bool(vec),
                               {"q": _s(q), "x": _s(params.x)}))
    return out


def check_eigenvector_props(rng, max_n):
    from .sov import check_eigenvector_properties
    from .transfer import Inhom
    out = []
    for twist in ("d", "ad"):
        for n in range(2, min(max_n, 3) + 1):
            params = _params(rng)
            inhom = Inhom(_rng_point(rng, n))
            rep = check_eigenvector_properties(twist, inhom, params)
            out.append(Outcome(f"transfer.eigenvector[{twist},N={n}]", all(rep.values()),
                               {"q": _s(params.q), "w": [_s(v) for v in inhom.w]},
                               detail=_s(rep)))
    return out


def check_spectra(rng, max_n):
    from fractions import Fraction
    from .transfer import spectrum_probe
    out = []
    for n in range(2, min(max_n, 3) + 1):
        for twist in ("d", "ad"):
            x = Fraction(rng.randint(-300, 300), 100)
            if x == 0:
                x = Fraction(1, 100)
            r = spectrum_probe(n, x, twist)
            ok = r.nonzero_parts_coincide and r.special_sector_zero_degeneracy == 1
            out.append(Outcome(f"transfer.spectrum[{twist},N={n}]", ok,
                               {"x": _s(x)},
                               detail=f"min eigenvalue {r.min_eigenvalue:.6g} (reported only)"))
    return out


# --------------------------------------------------------------------------
# separation of variables

def check_sov(rng, max_n):
    from .ops import vec_equal
    from .sov import psi_ad, sov_structure_checks
    from .transfer import Inhom
    out = []
    for n in range(1, min(max_n, 3) + 1):
        params = _params(rng)
        inhom = Inhom(_rng_point(rng, n))
        z = random_rational(rng)
        rep = sov_structure_checks(inhom, params, z)
        p = {"q": _s(params.q), "z": _s(z), "w": [_s(v) for v in inhom.w]}
        for key, ok in rep.items():
            out.append(Outcome(f"sov.structure[{key},N={n}]", ok, p))
        a = psi_ad(inhom, params, method="sov")
        b = psi_ad(inhom, params, method="kernel")
        out.append(Outcome(f"sov.reconstruction[N={n}]", vec_equal(a, b), p))
    return out


# --------------------------------------------------------------------------
# partition functions

def _domain_oracles(rng):
    from .partition import (DomainSpec, z_bruteforce, z_cap, z_ht, z_ik, z_qt_full, z_u, z_uu)
    from .vertex import ModelParams
    q = random_rational(rng, bound=12)
    params = ModelParams(q)
    s = random_rational(rng, bound=12)
    half = ModelParams.from_s(s)
    a1, a2, b1, b2, c1, c2, b, c = _rng_point(rng, 8)
    cases = [
        ("dwbc", lambda: z_ik([a1, a2], [b1, b2], params),
         lambda: z_bruteforce(DomainSpec("dwbc", [a1, a2], [b1, b2]), params), params),
        ("htplus", lambda: z_ht(1, [a1, a2], [b1, b2], params),
         lambda: z_bruteforce(DomainSpec("htplus", [a1, a2], [b1, b2]), params), params),
        ("htminus", lambda: z_ht(-1, [a1, a2], [b1, b2], params),
         lambda: z_bruteforce(DomainSpec("htminus", [a1, a2], [b1, b2]), params), params),
        ("qt", lambda: z_qt_full([a1, a2], params),
         lambda: z_bruteforce(DomainSpec("qt", (), [a1, a2]), params), params),
        ("uturn", lambda: z_u([a1], [b1], b, params),
         lambda: z_bruteforce(DomainSpec("uturn", [a1], [b1], b=b), params), params),
        ("uuturn", lambda: z_uu([a1], [b1], b, c, params),
         lambda: z_bruteforce(DomainSpec("uuturn", [a1], [b1], b=b, c=c), params), params),
        ("zcap", lambda: z_cap([a1], [b1], b, half),
         lambda: z_bruteforce(DomainSpec("zcap", [b1], [a1], b=b), half), half),
    ]
    return cases, (a1, a2, b1, b2, c1, c2, b, c), params, half


def check_partition(rng, max_n):
    from .partition import (SingularParameters, wheel_check, z_a_checks, z_ik_recursion)
    out = []
    cases, pts, params, half = _domain_oracles(rng)
    a1, a2, b1, b2, c1, c2, b, c = pts
    for name, closed, brute, pr in cases:
        try:
            lhs, rhs = closed(), brute()
            out.append(Outcome(f"partition.oracle[{name}]", lhs == rhs, {"q": _s(pr.q)},
                               _s(lhs), _s(rhs)))
        except SingularParameters as exc:
            out.append(Outcome(f"partition.oracle[{name}]", None, {"q": _s(pr.q)}, detail=str(exc)))
    for n in (1, 2):
        xs = [a1, a2][:n]
        ys = [b1, b2, c1, c2][: 2 * n]
        rep = z_a_checks(xs, ys, b, half)
        out.append(Outcome(f"partition.oracle[za,n={n}]", all(rep.values()),
                           {"s": _s(half.s)}, detail=_s(rep)))
    rec = z_ik_recursion([a1, a2, c1], [b1, b2, c2], params)
    out.append(Outcome("partition.recursion", rec["ok"], {"q": _s(params.q)},
                       _s(rec["lhs"]), _s(rec["rhs"])))
    wheel = wheel_check([a1, a2], [c1], b, params)
    out.append(Outcome("partition.wheel[n=2]", wheel["ok"], {"q": _s(params.q)},
                       _s(wheel["direct"]), _s(wheel["bruteforce"])))
    return out


def check_sum_rules(rng, max_n):
    from .partition import z_ad, z_ad_direct, z_ad_special_values
    from .transfer import Inhom
    out = []
    for n in range(1, min(max_n, 4) + 1):
        params = _params(rng)
        inhom = Inhom(_rng_point(rng, n))
        y = random_rational(rng)
        lhs, rhs = z_ad(y, inhom, params), z_ad_direct(y, inhom, params)
        p = {"q": _s(params.q), "y": _s(y), "w": [_s(v) for v in inhom.w]}
        out.append(Outcome(f"partition.zad[N={n}]", lhs == rhs, p, _s(lhs), _s(rhs)))
        rep = z_ad_special_values(inhom, params)
        out.append(Outcome(f"partition.zad_special[N={n}]", all(rep.values()), p, detail=_s(rep)))
    return out


def check_mixed(rng, max_n):
    from .partition import (z_mixed_all, z_mixed_recurrence, z_mixed_symmetry,
                            spin_reversal_check)
    from .transfer import Inhom
    out = []
    for n in range(2, min(max_n, 4) + 1):
        params = _params(rng)
        w = _rng_point(rng, n)
        vals = z_mixed_all(Inhom(w), params)
        distinct = {str(v) for v in vals.values()}
        ok = len(distinct) == 1 and (n % 2 == 0 or not next(iter(vals.values())))
        out.append(Outcome(f"partition.mixed[N={n}]", ok,
                           {"q": _s(params.q), "w": [_s(v) for v in w]}, detail=_s(vals)))
    if max_n >= 4:
        params = _params(rng)
        w = _rng_point(rng, 4)
        rec = z_mixed_recurrence(w, params)
        out.append(Outcome("partition.mixed_recurrence[n=2]", rec["ok"], {"q": _s(params.q)},
                           _s(rec["lhs"]), _s(rec["rhs"])))
        sym = z_mixed_symmetry(w, params)
        out.append(Outcome("partition.mixed[symmetry]", all(sym.values()), {"q": _s(params.q)}))
    for n in range(2, min(max_n, 3) + 1):
        params = _params(rng)
        w = _rng_point(rng, 2 * n)
        rep = spin_reversal_check(w[n:], Inhom(w[:n]), params)
        out.append(Outcome(f"partition.spin_reversal[N={n}]", all(rep.values()),
                           {"q": _s(params.q)}, detail=_s(rep)))
    return out


def check_boundary_products(rng, max_n):
    from .partition import xi_scalar, z_odd_ad
    out = []
    for twist in ("d", "ad"):
        for n in (1, 2):
            params = _params(rng)
            x = _rng_point(rng, n)
            b = random_rational(rng)
            lhs, rhs = xi_scalar(twist, x, b, params), xi_scalar(twist, x, b, params, "direct")
            out.append(Outcome(f"partition.xi[{twist},n={n}]", lhs == rhs,
                               {"q": _s(params.q), "b": _s(b)}, _s(lhs), _s(rhs)))
    for n in (0, 1, 2):
        params = _params(rng)
        x = _rng_point(rng, n)
        lhs, rhs = z_odd_ad(x, params), z_odd_ad(x, params, "direct")
        out.append(Outcome(f"partition.odd_ad[n={n}]", lhs == rhs, {"q": _s(params.q)},
                           _s(lhs), _s(rhs)))
    return out


# --------------------------------------------------------------------------
# ASM links

def check_asm(rng, max_n):
    from .asm import (check_kuperberg_links, closed_form_checks, enumeration_baselines,
                      l_matrix_checks, sum_rule_identities)
    out = []
    for key, ok in enumeration_baselines().items():
        out.append(Outcome(f"asm.baseline[{key}]", ok))
    for key, ok in closed_form_checks(min(max_n, 2)).items():
        out.append(Outcome(f"asm.closed_form[{key}]", ok))
    for key, ok in sum_rule_identities(min(max_n, 4)).items():
        out.append(Outcome(f"asm.sum_rule[{key}]", ok))
    for key, ok in check_kuperberg_links(min(max_n, 5)).items():
        out.append(Outcome(f"asm.links[{key}]", ok))
    a, b, ap, bp = _rng_point(rng, 4)
    q = random_rational(rng, bound=12)
    for N in (2, 3):
        rep = l_matrix_checks(a, b, ap, bp, N, q=q)
        for key, ok in rep.items():
            out.append(Outcome(f"asm.lmatrix[{key},N={N}]", ok,
                               {"alpha": _s(a), "beta": _s(b), "q": _s(q)}))
    return out


SUITES = {
    "local": [check_local],
    "transfer": [check_fusion_suite, check_null_vectors, check_hamiltonians,
                 check_eigenvector_props, check_spectra],
    "sov": [check_sov],
    "partition": [check_partition, check_sum_rules, check_mixed, check_boundary_products],
    "asm": [check_asm],
}


def _run_one(args):
    fn_name, seed, max_n = args
    fn = _FUNCTIONS[fn_name]
    rng = random.Random(f"{seed}:{fn_name}")
    start = time.perf_counter()
    try:
        outcomes = fn(rng, max_n)
    except Exception as exc:     # a crashing check is a failed check, not a crashed run
        outcomes = [Outcome(f"{_PREFIX[fn_name]}#error", False, detail=f"{type(exc).__name__}: {exc}")]
    elapsed = (time.perf_counter() - start) / max(1, len(outcomes))
    return [CheckResult(o.id, anchor_for(o.id), o.params,
                        "skipped" if o.ok is None else ("pass" if o.ok else "fail"),
                        o.lhs, o.rhs, elapsed, o.detail) for o in outcomes]


_FUNCTIONS = {fn.__name__: fn for fns in SUITES.values() for fn in fns}
_PREFIX = {
    "check_local": "local.ybe", "check_fusion_suite": "transfer.fusion",
    "check_null_vectors": "transfer.nullvector", "check_hamiltonians": "transfer.hamiltonian",
    "check_eigenvector_props": "transfer.eigenvector", "check_spectra": "transfer.spectrum",
    "check_sov": "sov.structure", "check_partition": "partition.oracle",
    "check_sum_rules": "partition.zad", "check_mixed": "partition.mixed",
    "check_boundary_products": "partition.xi", "check_asm": "asm.baseline",
}


def run_suite(suite: str, seed: int = 0, max_n: int = 3, jobs: int = 1) -> Report:
    names = list(SUITES) if suite == "all" else [suite]
    if any(n not in SUITES for n in names):
        raise ValueError(f"unknown suite {suite!r}; choose from {sorted(SUITES) + ['all']}")
    tasks = [(fn.__name__, seed, max_n) for n in names for fn in SUITES[n]]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_run_one, tasks))
    else:
        chunks = [_run_one(t) for t in tasks]
    results = sorted((r for chunk in chunks for r in chunk), key=lambda r: r.id)
    return Report(suite, seed, max_n, results)


__all__ = ["ANCHORS", "CheckResult", "Outcome", "Report", "SUITES", "anchor_for", "run_suite"]
