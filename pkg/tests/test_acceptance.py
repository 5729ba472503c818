"""Acceptance criteria, each checked at its stated tolerance.

Every test records a one-line PASS/FAIL verdict (printed inline with ``-s``
and collected in the "acceptance criteria" section of the terminal summary)
before asserting.  Criterion 11, the runtime of the whole suite, is judged
in ``conftest.py`` once all tests have run.
"""

import math
import xml.etree.ElementTree as ET

import numpy as np

from qbouncer import bouncer as bc
from qbouncer import cli
from qbouncer import correspondence as cr
from qbouncer.quadrature import (airy_squared_tail_bound, integrate_adaptive,
                                 integrate_semi_infinite)
from qbouncer.special import airy_ai, airy_zero, airy_zero_asymptotic
from acceptance_log import record


def test_criterion_01_airy_kernel():
    a1 = airy_zero(1).value
    rel = max(abs(airy_zero_asymptotic(n) - airy_zero(n).value) / abs(airy_zero(n).value)
              for n in range(5, 201))
    x = np.linspace(-30.0, 5.0, 701)

    def second_difference(h):
        return (airy_ai(x + h) - 2 * airy_ai(x) + airy_ai(x - h)) / h ** 2

    h = 5e-3
    residual = np.max(np.abs((4 * second_difference(h / 2) - second_difference(h)) / 3 - x * airy_ai(x)))
    ok = abs(a1 + 2.33811) < 1e-4 and rel < 1e-3 and residual < 1e-8
    assert record(1, "Airy kernel", ok,
                  f"a1={a1:.8f}, max asymptotic rel err (n=5..200)={rel:.2e}, residual={residual:.2e}")


def test_criterion_02_normalization():
    worst = max(abs(bc.moment_z_quantum(bc.make_state(n), 0) - 1.0) for n in (1, 5, 10, 50, 200))
    h = 7.3
    exact = bc.moment_z_classical(h, 0)
    numeric = integrate_adaptive(lambda z: 0.5 / np.sqrt(h * (h - z)), 0.0, h, tol=1e-12,
                                 singular_endpoint="right").value
    ok = worst < 1e-8 and abs(exact - 1.0) < 1e-15 and abs(numeric - 1.0) < 1e-10
    assert record(2, "normalization", ok,
                  f"quantum max |1-N|={worst:.1e}, classical analytic={exact!r}, "
                  f"classical numeric |1-N|={abs(numeric - 1):.1e}")


def test_criterion_03_albright_recursion():
    worst = 0.0
    for n in (1, 5, 20):
        s = bc.make_state(n)
        points = [airy_zero(j).value for j in range(1, n)] + [0.0]
        for k in range(10):
            scale = max(1.0, abs(s.a_n)) ** k * s.ai_prime ** 2
            oracle = integrate_semi_infinite(lambda x: x ** k * airy_ai(x) ** 2, s.a_n,
                                             tol=1e-13 * scale, tail_bound=airy_squared_tail_bound(k),
                                             points=points).value
            got = cr.albright_moment(s, k).value
            worst = max(worst, abs(got - oracle) / abs(oracle))
    assert record(3, "Albright recursion vs quadrature", worst <= 1e-8,
                  f"max relative error over k<=9, n in (1,5,20): {worst:.1e}")


def test_criterion_04_series_closed_form():
    s = bc.make_state(10)
    worst = 0.0
    for Q in np.linspace(0.0, 30.0, 100):
        q = Q / s.turning_point
        worst = max(worst, abs(cr.quantum_coefficient_albright(s, q, 0).value
                               - cr.quantum_coefficient_closed(s, q).value))
    assert record(4, "series vs closed form", worst < 1e-10, f"max deviation on Q in [0,30]: {worst:.1e}")


def test_criterion_05_central_theorem():
    worst = 0.0
    for n in (5, 50):
        s = bc.make_state(n)
        h = s.turning_point
        for Q in np.linspace(0.0, 50.0, 101):
            worst = max(worst, abs(cr.quantum_coefficient_closed(s, Q / h).value
                                   - cr.classical_coefficient(h, Q / h).value))
    assert record(5, "leading quantum term equals classical coefficient", worst < 1e-6,
                  f"max deviation on Q in [0,50], n in (5,50): {worst:.1e}")


def test_criterion_06_correction_suppression():
    ns = (10, 20, 50, 100, 200)
    a, dev = [], []
    for n in ns:
        s = bc.make_state(n)
        q = 5.0 / s.turning_point
        a.append(abs(s.a_n))
        dev.append(abs(cr.quantum_coefficient_numeric(s, q).value - cr.quantum_coefficient_closed(s, q).value))
    slope = cr.fit_power_law(a, dev)
    assert record(6, "correction suppression", abs(slope + 3.0) <= 0.5,
                  f"fitted slope {slope:.4f} (target -3 +/- 0.5)")


def test_criterion_07_local_average(tmp_path):
    e20 = cr.interior_l1_error(bc.make_state(20))
    e200 = cr.interior_l1_error(bc.make_state(200))
    figures = []
    for n in (3, 10):
        assert cli.main(["density", "--n", str(n), "--out-dir", str(tmp_path), "--reproducible"]) == 0
        root = ET.parse(tmp_path / f"density_n{n}.svg").getroot()
        figures.append(len(root.findall("{http://www.w3.org/2000/svg}polyline")) == 2)
    ok = e200 < e20 and e200 < 0.03 and all(figures)
    assert record(7, "local-average convergence", ok,
                  f"L1(20)={e20:.4f}, L1(200)={e200:.4f}, figures n=3,10 written={all(figures)}")


def test_criterion_08_regime_table():
    table = bc.load_species()
    targets = {"cesium": (62_500, 0.02, 1e-11), "sodium": (10_000, 0.10, 1e-10), "neutron": (470, 0.05, 1e-7)}
    parts, ok = [], True
    for key, (n_target, band, supp_target) in targets.items():
        est = bc.regime_estimate(table[key].l_g, 1e-3, table[key].label)
        n_ok = abs(est.n_estimate / n_target - 1) <= band
        s_ok = abs(math.log10(est.suppression / supp_target)) <= 1.0
        ok = ok and n_ok and s_ok
        parts.append(f"{est.species_label} n={est.n_estimate:.0f} supp={est.suppression:.1e}")
    assert record(8, "regime table", ok, "; ".join(parts))


def test_criterion_09_tail_probability():
    parts, worst = [], 0.0
    for n in (1, 2, 10, 30):
        tp = bc.tail_probability(bc.make_state(n), agreement=1e-8)
        worst = max(worst, abs(tp.closed_form - tp.quadrature))
        parts.append(f"P{n}={tp.closed_form:.5f} (quoted {tp.quoted_value})")
    assert record(9, "tail probability", worst < 1e-8,
                  f"max |closed-quadrature|={worst:.1e}; " + ", ".join(parts))


def test_criterion_10_moments():
    s = bc.make_state(200)
    h = s.turning_point
    r1 = bc.moment_z_quantum(s, 1) / h / (2 / 3) - 1
    r2 = bc.moment_z_quantum(s, 2) / h ** 2 / (8 / 15) - 1
    assert record(10, "position moments at n=200", abs(r1) < 0.01 and abs(r2) < 0.01,
                  f"relative offsets {r1:.1e} and {r2:.1e} from 2/3 and 8/15")
