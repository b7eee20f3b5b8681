"""Acceptance battery: one test per criterion, each printing a PASS/FAIL
line (run with -s to stream them).

Every tolerance is fixed here, not calibrated.  Criterion 8 is known to
be partially unattainable: the large-t remainder of the normalized
K-type function is exactly |B/A| (sech^2 t)^{|Im lam|} (connection-
formula coefficients B, A), which at t = 18 and decay margin 0.3 is
about 4e-5 for every choice of Re lam, above the 1e-5 target; the
margin-0.8 instances pass with orders of magnitude to spare.  The
assertion is kept at the stated tolerance rather than loosened, so the
0.3 instances fail visibly.  See also the monotonicity sub-check, which
passes at both margins.
"""

import cmath
import math
import time

import numpy as np
import pytest

from sphfun import cfun
from sphfun import complexmath as cm
from sphfun import higherrank as hr
from sphfun import models as md
from sphfun import rankone as r1
from sphfun import rootdata as rd

from test_complexmath import hyp2f1_at_one_oracle

H2 = r1.RankOneSpace(1, 0)
H3 = r1.RankOneSpace(2, 0)
H5 = r1.RankOneSpace(4, 0)


def report(num, name, ok, detail, budget, elapsed):
    status = "PASS" if ok else "FAIL"
    print(f"[acceptance] criterion {num:2d} ({name}): {status} "
          f"[{detail}; {elapsed:.2f}s of {budget:.0f}s budget]")


def strip_samples(count, seed):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        z = complex(rng.uniform(-10, 10), rng.uniform(-10, 10))
        if min(cm.distance_to_nonpos_int(w)
               for w in (z, 1 - z, z + 0.5, 2 * z)) > 0.1:
            out.append(z)
    return out


def margin_samples(count, seed, lo=0.2, hi=1.2):
    rng = np.random.default_rng(seed)
    return [complex(rng.uniform(0.3, 2.5), -rng.uniform(lo, hi))
            for _ in range(count)]


def test_criterion_01_gamma_identities():
    budget, t0 = 1.0, time.time()
    worst = 0.0
    for z in strip_samples(1000, seed=101):
        refl = abs(cm.gamma(z) * cm.gamma(1 - z)
                   * cmath.sin(cmath.pi * z) / cmath.pi - 1.0)
        dup = cm.gamma(2 * z)
        dup_err = abs(dup - cm.gamma(z) * cm.gamma(z + 0.5)
                      * 2.0 ** (2 * z - 1) / math.sqrt(math.pi)) / abs(dup)
        worst = max(worst, refl, dup_err)
    elapsed = time.time() - t0
    ok = worst <= 1e-12 and elapsed < budget
    report(1, "gamma identities", ok, f"worst rel {worst:.2e}",
           budget, elapsed)
    assert worst <= 1e-12
    assert elapsed < budget


def test_criterion_02_gauss_summation():
    budget, t0 = 5.0, time.time()
    rng = np.random.default_rng(102)
    worst = 0.0
    for _ in range(100):
        a = complex(rng.uniform(0.1, 1.5), rng.uniform(-1, 1))
        b = complex(rng.uniform(0.1, 1.5), rng.uniform(-1, 1))
        c = a + b + complex(rng.uniform(0.55, 2.0), rng.uniform(-1, 1))
        val = cm.gauss_2f1_at_one(a, b, c)
        oracle = hyp2f1_at_one_oracle(a, b, c)
        worst = max(worst, abs(val - oracle) / abs(oracle))
    elapsed = time.time() - t0
    ok = worst <= 1e-8 and elapsed < budget
    report(2, "gauss summation", ok, f"worst rel {worst:.2e}",
           budget, elapsed)
    assert worst <= 1e-8
    assert elapsed < budget


def test_criterion_03_c_vs_defining_integral():
    budget, t0 = 30.0, time.time()
    lams = margin_samples(20, seed=103)
    worst = 0.0
    for n in (2, 3, 4):
        for lam in lams:
            closed = cfun.c_alpha(lam, n - 1, 0).value
            quad = md.quad_c_Nbar(n, lam)
            worst = max(worst, abs(closed - quad) / abs(closed))
    elapsed = time.time() - t0
    ok = worst <= 1e-6 and elapsed < budget
    report(3, "c vs defining integral", ok, f"worst rel {worst:.2e}",
           budget, elapsed)
    assert worst <= 1e-6
    assert elapsed < budget


def test_criterion_04_zonal_vs_boundary_integral():
    budget, t0 = 30.0, time.time()
    rng = np.random.default_rng(104)
    worst = 0.0
    for _ in range(10):
        lam = complex(rng.uniform(0.2, 2.0), rng.uniform(-0.8, 0.8))
        for t in (0.0, 0.5, 1.0, 2.0, 3.0):
            closed = r1.phi_tau(H2, r1.TRIVIAL_KTYPE, lam, t)
            quad = md.quad_phi_K(2, lam, t)
            worst = max(worst, abs(closed - quad))
    elapsed = time.time() - t0
    ok = worst <= 1e-8 and elapsed < budget
    report(4, "zonal vs boundary integral", ok, f"worst abs {worst:.2e}",
           budget, elapsed)
    assert worst <= 1e-8
    assert elapsed < budget


def test_criterion_05_functional_equation():
    budget, t0 = 120.0, time.time()
    rng = np.random.default_rng(105)
    worst = 0.0
    for _ in range(5):
        lam = complex(rng.uniform(0.3, 1.5), rng.uniform(-0.4, 0.4))
        for (t1, t2) in ((0.0, 1.0), (1.0, 1.0), (0.5, 2.0)):
            rep = md.functional_equation_check(2, lam, t1, t2)
            worst = max(worst, rep.rel_err)
    worst_entry = 0.0
    for _ in range(5):
        lam = complex(rng.uniform(0.3, 1.5), rng.uniform(-0.4, 0.4))
        rep = md.functional_equation_entry_sl2(2, lam, 1.0, 1.0)
        worst_entry = max(worst_entry, rep.rel_err)
    elapsed = time.time() - t0
    ok = worst <= 1e-6 and worst_entry <= 1e-6 and elapsed < budget
    report(5, "functional equation", ok,
           f"zonal {worst:.2e} entry {worst_entry:.2e}", budget, elapsed)
    assert worst <= 1e-6
    assert worst_entry <= 1e-6
    assert elapsed < budget


def test_criterion_06_series_vs_closed_form():
    budget, t0 = 5.0, time.time()
    rng = np.random.default_rng(106)
    worst = 0.0
    for space in (H2, H3):
        for _ in range(10):
            lam = complex(rng.uniform(0.3, 2.0), rng.uniform(-0.9, 0.9))
            for t in (1.0, 1.5, 2.0, 3.0):
                series = r1.hc_series_eval(space, lam, t, 40)
                closed = r1.phi_tau(space, r1.TRIVIAL_KTYPE, lam, t)
                worst = max(worst, abs(series - closed) / abs(closed))
    elapsed = time.time() - t0
    ok = worst <= 1e-8 and elapsed < budget
    report(6, "series vs closed form", ok, f"worst rel {worst:.2e}",
           budget, elapsed)
    assert worst <= 1e-8
    assert elapsed < budget


def test_criterion_07_coefficient_growth():
    budget, t0 = 1.0, time.time()
    rng = np.random.default_rng(107)
    worst = -math.inf
    for _ in range(10):
        lam = complex(rng.uniform(0.3, 2.5), rng.uniform(-1.0, 1.0))
        sc = r1.hc_series_gammas(H2, lam, 60)
        worst = max(worst, sc.growth_exponent(20))
    elapsed = time.time() - t0
    ok = worst < 0.5 and elapsed < budget
    report(7, "coefficient growth", ok, f"max log|g_n|/n = {worst:.3f}",
           budget, elapsed)
    assert worst < 0.5
    assert elapsed < budget


@pytest.mark.parametrize("space,name,eta", [
    (H2, "s2r0", 0.3), (H2, "s2r0", 0.8),
    (H3, "s1r0", 0.3), (H3, "s1r0", 0.8)])
def test_criterion_08_asymptotic_limit(space, name, eta):
    # decay margin |Im lam| = eta; the limit regime is Im lam < 0 (the
    # reflected series term decays), so lam = 0.5 - i eta
    budget, t0 = 5.0, time.time()
    kt = r1.catalog_lookup(r1.load_ktype_catalog(), name, space)
    lam = 0.5 - 1j * eta
    target = r1.limit_large_t_target(space, kt, lam)
    e18 = abs(r1.limit_large_t(space, kt, lam, 18.0) - target) / abs(target)
    e10 = abs(r1.limit_large_t(space, kt, lam, 10.0) - target) / abs(target)
    elapsed = time.time() - t0
    ok = e18 <= 1e-5 and e10 > e18 and elapsed < budget
    report(8, f"asymptotic limit m={space.m_alpha} eta={eta}", ok,
           f"rel(18) {e18:.2e} rel(10) {e10:.2e}", budget, elapsed)
    assert e10 > e18
    assert elapsed < budget
    assert e18 <= 1e-5


def test_criterion_09_second_coefficient_integral():
    budget, t0 = 30.0, time.time()
    lams = margin_samples(10, seed=109)
    worst = 0.0
    for char_n in (0, 2, 4):
        kt = r1.sl2_ktype_for_char(char_n)
        for lam in lams:
            closed = r1.C_sigma_minus(H2, kt, lam)
            quad = md.quad_Csigma_sl2(char_n, lam)
            worst = max(worst, abs(closed - quad) / abs(closed))
    elapsed = time.time() - t0
    ok = worst <= 1e-6 and elapsed < budget
    report(9, "second coefficient vs integral", ok,
           f"worst rel {worst:.2e}", budget, elapsed)
    assert worst <= 1e-6
    assert elapsed < budget


def test_criterion_10_hilbert_schmidt_identity():
    budget, t0 = 2.0, time.time()
    rng = np.random.default_rng(110)
    worst = 0.0
    for space in (H2, H5):
        for s in (1, 2):
            kt = r1.ktype_from_rs(space, 0, s)
            for _ in range(20):
                lam = float(rng.uniform(0.3, 3.0))
                rep = hr.hs_norm_check(space, kt, lam)
                worst = max(worst, rep.rel_err)
    elapsed = time.time() - t0
    ok = worst <= 1e-8 and elapsed < budget
    report(10, "hilbert-schmidt identity", ok, f"worst rel {worst:.2e}",
           budget, elapsed)
    assert worst <= 1e-8
    assert elapsed < budget


def test_criterion_11_cocycle_law():
    budget, t0 = 5.0, time.time()
    rng = np.random.default_rng(111)
    worst_pair = 0.0
    worst_longest = 0.0
    for datum in (rd.datum_a2(), rd.datum_b2()):
        elements = rd.enumerate_weyl(datum)
        pairs = []
        for u in elements:
            for v in elements:
                if not u.word or not v.word:
                    continue
                uv = rd.WeylElement(u.word + v.word)
                if rd.is_reduced(datum, uv):
                    pairs.append((u, v, uv))
        assert pairs
        for _ in range(100):
            lam = rd.SpectralParam.of(
                rng.uniform(0.2, 2.0, 2) - 1j * rng.uniform(0.1, 1.2, 2))
            for u, v, uv in pairs:
                lhs = cfun.c_sigma(datum, uv, lam).value
                rhs = (cfun.c_sigma(datum, u,
                                    rd.weyl_apply(datum, v, lam)).value
                       * cfun.c_sigma(datum, v, lam).value)
                worst_pair = max(worst_pair, abs(lhs - rhs) / abs(lhs))
        w0 = rd.longest_element(datum)
        for _ in range(20):
            lam = rd.SpectralParam.of(
                rng.uniform(0.2, 2.0, 2) - 1j * rng.uniform(0.1, 1.2, 2))
            a = cfun.c_sigma(datum, w0, lam).value
            b = cfun.c_full(datum, lam).value
            worst_longest = max(worst_longest, abs(a - b) / abs(b))
    elapsed = time.time() - t0
    ok = worst_pair <= 1e-10 and worst_longest <= 1e-13 and elapsed < budget
    report(11, "cocycle law", ok,
           f"pairs {worst_pair:.2e} longest {worst_longest:.2e}",
           budget, elapsed)
    assert worst_pair <= 1e-10
    assert worst_longest <= 1e-13
    assert elapsed < budget


def test_criterion_12_determinant_formula():
    budget, t0 = 1.0, time.time()
    rng = np.random.default_rng(112)
    d1 = rd.datum_a1(1, 0)
    kt = r1.ktype_from_rs(H2, 0, 2)
    table1 = hr.FactorKTypeTable((1,), 1, {(1, 1): kt})
    worst_rankone = 0.0
    for _ in range(20):
        lam = complex(rng.uniform(0.3, 2.0), rng.uniform(-1.0, 1.0))
        det = hr.det_A(d1, rd.WeylElement.of(1),
                       rd.SpectralParam.of([lam]), table1)
        ref = r1.C_sigma_minus(H2, kt, lam)
        worst_rankone = max(worst_rankone, abs(det - ref) / abs(ref))
    a2 = rd.datum_a2()
    w0 = rd.longest_element(a2)
    import pathlib
    table = hr.table_from_json(
        pathlib.Path(__file__).parent / "data" / "a2_table.json")
    worst_paths = 0.0
    for _ in range(20):
        lam = rd.SpectralParam.of(
            rng.uniform(0.2, 2.0, 2) - 1j * rng.uniform(0.1, 1.2, 2))
        v1 = hr.det_A(a2, w0, lam, table)
        v2 = hr.det_A_by_factors(a2, w0, lam, table)
        worst_paths = max(worst_paths, abs(v1 - v2) / abs(v1))
    elapsed = time.time() - t0
    ok = worst_rankone <= 1e-12 and worst_paths <= 1e-10 and \
        elapsed < budget
    report(12, "determinant formula", ok,
           f"rank-one {worst_rankone:.2e} two-path {worst_paths:.2e}",
           budget, elapsed)
    assert worst_rankone <= 1e-12
    assert worst_paths <= 1e-10
    assert elapsed < budget


def test_criterion_13_simplicity_predicate():
    budget, t0 = 1.0, time.time()
    d = rd.datum_a1(1, 0)
    flagged = not cfun.is_simple(d, rd.SpectralParam.of([1.5j]))
    rng = np.random.default_rng(113)
    generic_ok = True
    for _ in range(50):
        lam = complex(rng.uniform(0.1, 3.0), rng.uniform(-2.0, 2.0))
        generic_ok = generic_ok and cfun.is_simple(
            d, rd.SpectralParam.of([lam]))
    # flipping multiplicities moves the flagged set exactly as the
    # recomputed arguments dictate
    consistent = True
    candidates = [0.5j * k for k in range(-8, 9)]
    for (m, m2) in ((1, 0), (2, 0), (3, 0), (2, 1)):
        dm = rd.datum_a1(m, m2)
        for lam in candidates:
            w = 1j * lam
            args = (0.5 * (0.5 * m + 1 + w), 0.5 * (0.5 * m + m2 + w))
            brute = all(cm.distance_to_nonpos_int(a) >= 1e-9 for a in args)
            consistent = consistent and (
                cfun.is_simple(dm, rd.SpectralParam.of([lam])) == brute)
    elapsed = time.time() - t0
    ok = flagged and generic_ok and consistent and elapsed < budget
    report(13, "simplicity predicate", ok,
           f"flagged={flagged} generic={generic_ok} "
           f"flip-consistent={consistent}", budget, elapsed)
    assert flagged and generic_ok and consistent
    assert elapsed < budget


def test_criterion_14_small_t_limit():
    budget, t0 = 1.0, time.time()
    worst = 0.0
    for s in (1, 2):
        kt = r1.ktype_from_rs(H2, 0, s)
        for lam in (0.7 + 0j, 1.1 - 0.3j):
            got = r1.small_t_ratio(H2, kt, lam, 1e-3)
            want = r1.small_t_target(H2, kt, lam)
            worst = max(worst, abs(got - want) / abs(want))
    elapsed = time.time() - t0
    ok = worst <= 1e-4 and elapsed < budget
    report(14, "small-t limit", ok, f"worst rel {worst:.2e}",
           budget, elapsed)
    assert worst <= 1e-4
    assert elapsed < budget


def test_criterion_15_radial_eigen_equation():
    budget, t0 = 1.0, time.time()
    lam = 0.9 - 0.6j
    worst = 0.0
    for t in np.linspace(0.4, 3.0, 20):
        worst = max(worst, r1.radial_eigen_residual(H2, lam, float(t)))
    elapsed = time.time() - t0
    ok = worst <= 1e-6 and elapsed < budget
    report(15, "radial eigen-equation", ok, f"worst rel {worst:.2e}",
           budget, elapsed)
    assert worst <= 1e-6
    assert elapsed < budget
