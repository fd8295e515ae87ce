import math

import numpy as np
import pytest

from eulerlab.arith import chebyshev_ap
from eulerlab.characters import character_from_label, characters_mod, delta_m, principal
from eulerlab.errors import MissingZerosError, PoleError, ZeroFileError
from eulerlab.lfunctions import l_value
from eulerlab.zeros import (ZeroBank, ZeroList, default_zero_bank, explicit_psi_rhs, load_zeros,
                            zero_reciprocal_sum, zero_sum_S, zeros_label)

HEADER = "# label=t\n# source=hand\n# complete_to=50\n"


def write(tmp_path, body, name="t.txt"):
    p = tmp_path / name
    p.write_text(HEADER + body, encoding="utf-8")
    return p


def test_load_three_lines(tmp_path):
    z = load_zeros(write(tmp_path, "14.134725141734693\n21.022039638771555\n25.010857580145689\n"))
    assert z.count == 3 and z.label == "t" and z.complete_to == 50 and z.source == "hand"


def test_load_empty_body(tmp_path):
    assert load_zeros(write(tmp_path, "")).count == 0


@pytest.mark.parametrize("body,line", [
    ("3.0\n2.0\n", 5),
    ("1.0\n1.0\n", 5),
    ("-1.0\n", 4),
    ("0\n", 4),
    ("2.0\nabc\n", 5),
])
def test_load_errors_carry_line_number(tmp_path, body, line):
    with pytest.raises(ZeroFileError) as err:
        load_zeros(write(tmp_path, body))
    assert err.value.lineno == line
    assert f":{line}" in str(err.value) or f"line {line}" in str(err.value)


def test_zerolist_validation():
    with pytest.raises(ValueError):
        ZeroList("x", np.array([2.0, 1.0]))
    z = ZeroList("x", np.array([1.0, 2.0, 3.0]), complete_to=3.5)
    assert z.first(2).complete_to == 2.0
    assert z.truncated(2.5).count == 2


def test_bundled_fixtures(bank):
    assert bank["zeta"].count >= 100
    assert bank["zeta"].ordinates[0] == pytest.approx(14.134725141734693, abs=1e-12)
    assert bank["4.1"].ordinates[0] == pytest.approx(6.0209489046975965, abs=1e-12)
    for label in ("zeta", "3.1", "4.1", "5.1", "5.2", "5.3"):
        z = bank[label]
        assert z.count >= 50
        assert z.complete_to >= z.ordinates[-1]


@pytest.mark.parametrize("label", ["3.1", "4.1", "5.1", "5.2", "5.3"])
def test_fixture_ordinates_are_zeros(bank, label):
    chi = character_from_label(label)
    for g in bank[label].ordinates[[0, 1, 10, -1]]:
        assert abs(l_value(complex(0.5, g), chi).value) < 1e-8


def test_zeta_fixture_are_zeros(bank):
    for g in bank["zeta"].ordinates[[0, 50, 99]]:
        assert abs(l_value(complex(0.5, g), principal(1)).value) < 1e-8


def test_labels():
    assert zeros_label(principal(4)) == "zeta"
    induced = next(c for c in characters_mod(12) if c.conductor == 4)
    assert zeros_label(induced) == "4.1"


def empty_bank(*labels, height=100.0):
    return ZeroBank(None, [ZeroList(l, np.zeros(0), complete_to=height) for l in labels])


def test_zero_sum_empty_lists(chi4):
    assert zero_sum_S(0.75, 100, chi4, empty_bank("zeta", "4.1")).value == 0


def test_zero_sum_missing_list(chi4):
    with pytest.raises(MissingZerosError):
        zero_sum_S(0.75, 100, chi4, empty_bank("zeta"))


def test_zeta_case_reduces(bank):
    s, x = 0.75 + 2j, 1000.0
    g = bank["zeta"].ordinates
    rho = np.concatenate([0.5 + 1j * g, 0.5 - 1j * g])
    direct = -s * np.sum(x ** (rho - s) / (rho * (rho - s)))
    assert abs(zero_sum_S(s, x, principal(1), bank).value - direct) < 1e-12


def test_toy_pair_two_terms():
    bank = ZeroBank(None, [ZeroList("zeta", np.array([6.0]), complete_to=7.0)])
    s, x = 0.75, 100.0
    r1, r2 = 0.5 + 6j, 0.5 - 6j
    direct = -s * (x ** (r1 - s) / (r1 * (r1 - s)) + x ** (r2 - s) / (r2 * (r2 - s)))
    got = zero_sum_S(s, x, principal(1), bank).value
    assert abs(got - direct) < 1e-12
    assert abs(got.imag) < 1e-15


def test_complex_character_pairs(bank, chi5):
    # zeros of L(s, chi) below the axis are conjugates of those of L(s, conj chi) above it
    s, x = 0.8, 500.0
    val = zero_sum_S(s, x, chi5, bank).value
    val_conj = zero_sum_S(s, x, chi5.conjugate(), bank).value
    assert abs(val - val_conj.conjugate()) < 1e-12


def test_pole_guard(bank, chi4):
    g1 = float(bank["4.1"].ordinates[0])
    with pytest.raises(PoleError):
        zero_sum_S(complex(0.5, g1), 1e4, chi4, bank)
    skipped = zero_sum_S(complex(0.5, g1), 1e4, chi4, bank, skip_at_s=True)
    assert math.isfinite(abs(skipped.value))


def test_tail_bound_shrinks(bank, chi4):
    bounds = [zero_sum_S(0.75, 1e4, chi4, bank.truncated(h)).tail_bound for h in (30, 60, 120)]
    assert bounds[0] > bounds[1] > bounds[2] > 0


def test_explicit_empty_zeros():
    x = 1000.0
    for q, a in ((1, 0), (8, 1), (7, 2)):
        bank = empty_bank("zeta", *[c.primitive_inducer().label for c in characters_mod(q)
                                    if c.primitive_inducer().modulus > 1])
        want = delta_m(q, a % q, 2) * math.sqrt(x) + delta_m(q, a % q, 3) * x ** (1 / 3)
        assert explicit_psi_rhs(x, q, a if q > 1 else 1, bank, 50.0) == pytest.approx(want, rel=1e-15)


def test_explicit_reconstruction(bank):
    x = 1000.0
    actual = x - chebyshev_ap(x, 1).theta[0]
    t100 = float(bank["zeta"].ordinates[99])
    err = abs(explicit_psi_rhs(x, 1, 1, bank, t100) - actual) / math.sqrt(x)
    assert err < 0.5


def test_explicit_error_decreases_10_to_100(bank):
    x = 1000.0
    actual = x - chebyshev_ap(x, 1).theta[0]
    g = bank["zeta"].ordinates
    e10 = abs(explicit_psi_rhs(x, 1, 1, bank, float(g[9])) - actual)
    e100 = abs(explicit_psi_rhs(x, 1, 1, bank, float(g[99])) - actual)
    assert e100 < e10


def test_explicit_missing_height(bank):
    with pytest.raises(MissingZerosError):
        explicit_psi_rhs(1000.0, 1, 1, bank, 10_000.0)


def test_explicit_progression_real(bank):
    # q = 5 mixes complex characters; the imaginary parts cancel inside the routine
    val = explicit_psi_rhs(5000.0, 5, 2, bank, 60.0)
    s = chebyshev_ap(5000.0, 5)
    assert abs(val - 4 * s.remainder[2]) / math.sqrt(5000) < 1.0


def test_zero_reciprocal_sum(bank):
    z = bank["zeta"]
    assert zero_reciprocal_sum(ZeroList("e", np.zeros(0), complete_to=10), 10) == 0
    g1 = z.ordinates[0]
    assert zero_reciprocal_sum(z, 15) == pytest.approx(1 / math.sqrt(0.25 + g1 * g1), rel=1e-15)
    vals = [zero_reciprocal_sum(z, T) for T in np.linspace(10, z.complete_to, 40)]
    assert all(b >= a for a, b in zip(vals, vals[1:]))
    with pytest.raises(Exception):
        zero_reciprocal_sum(z, z.complete_to + 1)


def test_env_override(tmp_path, monkeypatch):
    (tmp_path / "zeta.txt").write_text("# label=zeta\n# complete_to=20\n14.134725141734693\n")
    monkeypatch.setenv("EULERLAB_ZEROS", str(tmp_path))
    bank = default_zero_bank("/nonexistent")
    assert bank["zeta"].count == 1
