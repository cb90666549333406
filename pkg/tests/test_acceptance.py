"""Acceptance criteria 1-10, each at its stated scale and tolerance.

Every test records one line "criterion <k>: PASS|FAIL ..." which is printed
in the pytest terminal summary (and immediately, when run with -s).
"""
from __future__ import annotations

import random
import time
from fractions import Fraction

import pytest

from vertexlab import asm, suites
from vertexlab.asm import AsmKind, eval_t, genfun
from vertexlab.exact import GenPoly, scalar
from vertexlab.partition import z_mixed_all, z_mixed_recurrence
from vertexlab.sov import phi
from vertexlab.transfer import Inhom, spectrum_probe
from vertexlab.vertex import ModelParams


def _rng(k):
    return random.Random(f"acceptance:{k}")


def _report(log, k, ok, detail):
    line = f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}"
    log.append(line)
    print(line)


def _failed(outcomes):
    return [o.id for o in outcomes if o.ok is not True]


def test_criterion_01_local_relations(acceptance_log):
    start = time.perf_counter()
    outcomes = suites.check_local(_rng(1), 2)
    elapsed = time.perf_counter() - start
    bad = _failed(outcomes)
    ok = not bad and elapsed < 10
    _report(acceptance_log, 1, ok, f"{len(outcomes)} exact local identities, {elapsed:.1f}s (< 10s)"
            + (f"; failing {bad}" if bad else ""))
    assert ok


def test_criterion_02_fusion(acceptance_log):
    start = time.perf_counter()
    outcomes = suites.check_fusion_suite(_rng(2), 4)
    elapsed = time.perf_counter() - start
    bad = _failed(outcomes)
    ok = not bad and elapsed < 60 and len(outcomes) == 4 * 2 * 3
    _report(acceptance_log, 2, ok, f"fusion N<=4, both twists, 3 points: {len(outcomes)} checks, "
            f"{elapsed:.1f}s (< 60s)" + (f"; failing {bad}" if bad else ""))
    assert ok


def test_criterion_03_null_vectors(acceptance_log):
    start = time.perf_counter()
    rng = _rng(3)
    outcomes = suites.check_null_vectors(rng, 5) + suites.check_hamiltonians(rng, 5)
    elapsed = time.perf_counter() - start
    bad = _failed(outcomes)
    ids = {o.id for o in outcomes}
    covered = all(f"transfer.nullvector[{t},inhom,N={n}]" in ids for t in ("d", "ad") for n in range(1, 5))
    covered &= all(f"transfer.nullvector[{t},hom,N={n}]" in ids for t in ("d", "ad") for n in range(1, 6))
    covered &= all(f"transfer.hamiltonian[{t},N={n}]" in ids for t in ("d", "ad") for n in range(2, 6))
    ok = not bad and covered and elapsed < 300
    _report(acceptance_log, 3, ok, f"T1 psi = 0, T2 psi = theta2 psi, H phi = 0: {len(outcomes)} checks, "
            f"{elapsed:.1f}s (< 300s)" + (f"; failing {bad}" if bad else ""))
    assert ok


def test_criterion_04_sov_structure(acceptance_log):
    outcomes = suites.check_sov(_rng(4), 3)
    bad = _failed(outcomes)
    recon = [o for o in outcomes if o.id.startswith("sov.reconstruction")]
    ok = not bad and len(recon) == 3
    _report(acceptance_log, 4, ok, f"separated basis actions, overlaps, completeness and reconstruction "
            f"N<=3: {len(outcomes)} checks" + (f"; failing {bad}" if bad else ""))
    assert ok


def test_criterion_05_sum_rule(acceptance_log):
    outcomes = suites.check_sum_rules(_rng(5), 4)
    bad = _failed(outcomes)
    identities = asm.sum_rule_identities(4)
    needed = [f"Z(q)=x^N A N={n}" for n in range(1, 5)] + [f"Z(1)A=Aht+ N={n}" for n in range(1, 4)]
    needed += ["Z(i)A=i^N Aht- N=2"]
    bad += [k for k in needed if not identities.get(k)]
    links = asm.check_kuperberg_links(max_N=4, n_interp=5)
    link_keys = [k for k in links if k.startswith(("Z(q)", "Z(1)", "Z(i)"))]
    bad += [k for k in link_keys if not links[k]]
    ok = not bad and bool(link_keys)
    _report(acceptance_log, 5, ok, f"determinant = direct pairing N<=4; {len(needed)} homogeneous polynomial "
            f"identities; {len(link_keys)} interpolated spin-chain links" + (f"; failing {bad}" if bad else ""))
    assert ok


def test_criterion_06_mixed_scalar_product(acceptance_log):
    rng = _rng(6)
    bad = []
    for N in (2, 4):
        s = suites.random_rational(rng, bound=12)
        params = ModelParams(s)
        w = suites._rng_point(rng, N)
        vals = z_mixed_all(Inhom(w), params)
        if len({str(v) for v in vals.values()}) != 1 or len(vals) != 3:
            bad.append(f"three-way N={N}")
    params = ModelParams(suites.random_rational(rng, bound=12))
    if not z_mixed_recurrence(suites._rng_point(rng, 4), params)["ok"]:
        bad.append("recurrence n=2")
    qt4 = genfun(AsmKind.QT, 4)
    for q in (Fraction(2), Fraction(3, 2), Fraction(-5, 3)):
        p = ModelParams(q)
        pd, pa = phi("d", 2, p), phi("ad", 2, p)
        lhs = sum(v * pa.get(k, 0) for k, v in pd.items())
        if scalar(lhs) != eval_t(qt4, p.x * p.x):
            bad.append(f"<phi_d|phi_ad> q={q}")
    ok = not bad
    _report(acceptance_log, 6, ok, "direct / subset sum / quarter-turn at n=1,2; recurrence n=2; "
            f"<phi_d|phi_ad> = Aqt(4) = {qt4}" + (f"; failing {bad}" if bad else ""))
    assert ok


def test_criterion_07_component_theorems(acceptance_log):
    links = asm.check_kuperberg_links(max_N=5)
    closed = asm.closed_form_checks(3)
    small = {
        "tilde n=1": asm.a_uu2_tilde(1) == GenPoly.constant(1),
        "tilde n=2": asm.a_uu2_tilde(2) == 1 + asm.T,
        "vhp2 n=2": asm.a_vhp2(2) == 1 + 2 * asm.T,
        "av n=2": asm.a_v(2) == 2 + asm.T,
    }
    kinds = ("norm_d", "simple_d", "alt_d", "zeros_d", "zeros_ad", "alt_ad", "alt_ad_odd")
    present = {k.rsplit(" N=", 1)[0] for k in links}
    labels = [asm.LINK_LABELS[k] for k in kinds] + ["phi_ad up..up = 1"]
    missing = [label for label in labels if label not in present]
    bad = [k for k, v in {**links, **closed, **small}.items() if not v] + missing
    ok = not bad and any(k.endswith("N=5") for k in links)
    _report(acceptance_log, 7, ok, f"{len(links)} component/link identities N<=5, {len(closed)} closed-form "
            f"checks, {len(small)} small determinants" + (f"; failing {bad}" if bad else ""))
    assert ok


def test_criterion_08_partition_oracles(acceptance_log):
    start = time.perf_counter()
    outcomes = suites.check_partition(_rng(8), 3)
    elapsed = time.perf_counter() - start
    bad = _failed(outcomes)
    names = {o.id for o in outcomes}
    expected = {f"partition.oracle[{k}]" for k in
                ("dwbc", "htplus", "htminus", "qt", "uturn", "uuturn", "zcap", "za,n=1")}
    ok = not bad and expected <= names and "partition.wheel[n=2]" in names and elapsed < 120
    _report(acceptance_log, 8, ok, f"{len(outcomes)} closed forms against lattice sums incl. wheel n=2, "
            f"{elapsed:.1f}s (< 120s)" + (f"; failing {bad}" if bad else ""))
    assert ok


SPECTRUM_XS = [Fraction(-3), Fraction(-1), Fraction(0), Fraction(1, 2), Fraction(1),
               Fraction(3, 2), Fraction(2), Fraction(3)]


@pytest.mark.xfail(strict=True, reason="E=0 is doubly degenerate in the special sector at N=2, "
                                       "anti-diagonal twist, x=0 (recorded in the decisions ledger)")
def test_criterion_09_spectral_structure(acceptance_log):
    bad, minima = [], []
    for n in (2, 3):
        for twist in ("d", "ad"):
            for x in SPECTRUM_XS:
                r = spectrum_probe(n, x, twist, rel_tol=1e-9)
                if not r.nonzero_parts_coincide:
                    bad.append(f"non-zero parts differ N={n} {twist} x={x}")
                if r.special_sector_zero_degeneracy != 1:
                    bad.append(f"E=0 degeneracy {r.special_sector_zero_degeneracy} in the special sector "
                               f"N={n} {twist} x={x}")
                minima.append(r.min_eigenvalue)
    ok = not bad
    _report(acceptance_log, 9, ok, f"{2 * 2 * len(SPECTRUM_XS)} probes; smallest eigenvalue seen "
            f"{min(minima):.4g} (reported only)" + (f"; failing {bad}" if bad else ""))
    assert ok


def test_criterion_10_enumeration_baselines(acceptance_log):
    counts = [asm.count(AsmKind.PLAIN, n) for n in range(1, 6)]
    a3 = genfun(AsmKind.PLAIN, 3)
    av5 = genfun(AsmKind.VS, 5)
    ok = counts == [1, 2, 7, 42, 429] and a3 == 6 + asm.T and av5 == 2 + asm.T
    _report(acceptance_log, 10, ok, f"counts {counts}; A(3;t) = {a3}; A_V(5;t) = {av5}")
    assert ok
