import json
import math
from fractions import Fraction

import pytest

from charsum.characters import quadratic_character
from charsum.constructions import build_mimicking_character
from charsum.errors import InvalidArgumentError
from charsum.experiments import (
    ExperimentReport,
    run_corollary,
    run_lemma3,
    run_smoothness,
    run_thm1,
    run_thm2,
    run_thm3,
    run_thm4,
    sqrt_power_b_list,
)


def test_sqrt_power_b_list():
    assert sqrt_power_b_list(4) == [2]
    assert sqrt_power_b_list(3) == []
    assert sqrt_power_b_list(2000) == [2, 4, 8, 16, 32]


def test_thm1_single_row_example():
    rep = run_thm1([4], alphas=[Fraction(1, 2)], b_list=[4])
    assert len(rep.rows) == 1
    row = rep.rows[0]
    assert row["q"] == 4 and row["b"] == 4 and row["alpha"] == "1/2"
    assert abs(row["lhs_re"] - 1.0) < 1e-9
    assert abs(row["residual_over_sqrt_q"] - 0.0378) < 1e-4
    assert rep.summary["c_obs"] == row["residual_over_sqrt_q"]


def test_thm1_degenerate_b2():
    rep = run_thm1([5, 7], alphas=[Fraction(0), Fraction(1, 3)], b_list=[2])
    assert all(r["b"] == 2 for r in rep.rows)
    assert len(rep.rows) == 2 * (3 + 5)


def test_thm1_validates_grids():
    with pytest.raises(InvalidArgumentError):
        run_thm1([], alphas=[Fraction(0)], b_list=[2])
    with pytest.raises(InvalidArgumentError):
        run_thm1([5], alphas=[], b_list=[2])
    with pytest.raises(InvalidArgumentError):
        run_thm1([5], alphas=[Fraction(0)], b_list=[])
    with pytest.raises(InvalidArgumentError):
        run_thm1([5], alphas=[Fraction(0)], b_list=[1])


def test_thm1_reproducible_and_thread_invariant():
    a = run_thm1(range(3, 30), b_list=[2, 4], seed=7)
    b = run_thm1(range(3, 30), b_list=[2, 4], seed=7)
    assert a.to_json() == b.to_json()
    c = run_thm1(range(3, 30), b_list=[2, 4], seed=7, threads=3)
    c.inputs["threads"] = 1  # merge order must not affect anything else
    assert c.to_json() == a.to_json()


def test_thm1_sweep_mode_rows():
    rep = run_thm1(range(3, 60), sweep=True)
    assert all(set(r) >= {"q", "n_primitive", "max_residual_over_sqrt_q"} for r in rep.rows)
    qs = [r["q"] for r in rep.rows]
    assert qs == sorted(qs)
    assert not any(q % 4 == 2 for q in qs)  # no primitive characters there
    assert rep.summary["c_obs"] == max(r["max_residual_over_sqrt_q"] for r in rep.rows)


def test_report_round_trips():
    rep = run_thm1([4, 5], alphas=[Fraction(1, 2), Fraction(1, 4)], b_list=[2, 4])
    assert ExperimentReport.from_json(rep.to_json()) == rep
    assert ExperimentReport.from_csv(rep.to_csv()) == rep
    rep4 = run_thm4([3])
    assert ExperimentReport.from_json(rep4.to_json()) == rep4
    assert ExperimentReport.from_csv(rep4.to_csv()) == rep4


def test_summary_tampering_detected():
    rep = run_thm1([4], alphas=[Fraction(1, 2)], b_list=[4])
    obj = json.loads(rep.to_json())
    obj["summary"]["c_obs"] = 0.0
    with pytest.raises(InvalidArgumentError):
        ExperimentReport.from_json(json.dumps(obj))


def test_thm2_rows():
    rep = run_thm2(3, y=7)
    assert rep.inputs["q1"] == 71 and rep.inputs["q"] == 213
    assert [r["a"] for r in rep.rows] == [1, 2]  # a = b is rejected as non-coprime
    r1, r2 = rep.rows
    # conjugate symmetry of the predicted phases for a real character
    assert abs(r1["predicted_re"] - r2["predicted_re"] * -1) < 1e-9
    assert abs(r1["predicted_im"] + r2["predicted_im"]) < 1e-9
    # psi odd and chi even here, so no GRH comparison fields
    assert r1["l_one_re"] is None


def test_thm2_paley_case():
    rep = run_thm2(1, y=7)
    assert rep.inputs["q"] == rep.inputs["q1"]
    assert [r["a"] for r in rep.rows] == [1, 3]
    assert rep.inputs["chi_parity"] == 1


def test_thm2_odd_chi_reports_l_comparison():
    # psi even quadratic mod 5 gives an odd product character
    rep = run_thm2(5, psi_index="2", y=5)
    assert rep.inputs["chi_parity"] == -1
    assert rep.rows[0]["l_one_re"] is not None
    assert rep.rows[0]["l_grh_bound_re"] is not None


def test_thm3_signs_and_window():
    rep = run_thm3(3, y=7)
    rows = {r["a"]: r for r in rep.rows}
    assert rows[1]["psi_a"] == 1 and rows[2]["psi_a"] == -1
    assert rows[1]["s_at_alpha"] > 0 and rows[2]["s_at_alpha"] < 0
    assert rows[1]["sign_matches"] and rows[2]["sign_matches"]
    b_window = rep.inputs["b_window"]
    for r in rep.rows:
        frac = Fraction(r["alpha_star"])
        assert abs(frac - Fraction(r["a"], 3)) <= Fraction(1, b_window)


def test_thm3_requires_odd_quadratic():
    with pytest.raises(InvalidArgumentError):
        run_thm3(5, y=5)  # quadratic mod 5 is even


def test_thm4_rows():
    rep = run_thm4([3, 5, 7])
    assert [r["q"] for r in rep.rows] == [7, 23, 71]
    for r in rep.rows:
        assert r["gap"] >= 0
        assert abs(r["identity_residual"]) < 1e-6 * math.sqrt(r["q"])
        assert r["b"] >= r["y"]
    assert rep.summary["largest_y"] == 7
    assert rep.summary["normalized_gap_at_largest_y"] == rep.rows[-1]["normalized_gap"]


def test_corollary_even_only():
    chi = build_mimicking_character(quadratic_character(3), 7)
    rep = run_corollary(chi, 1.0)
    row = rep.rows[0]
    assert row["short_best"] >= 0 and row["b"] >= 2
    assert row["bound_main"] == pytest.approx(math.sqrt(213) * math.log(row["b"]) / math.pi, rel=1e-9)
    with pytest.raises(InvalidArgumentError):
        run_corollary(quadratic_character(71), 1.0)  # odd character
    with pytest.raises(InvalidArgumentError):
        run_corollary(quadratic_character(5), 0.2)  # B = (log 5)^0.2 < 2


def test_smoothness_grid():
    rep = run_smoothness(range(2, 8), range(10, 40, 9))
    assert rep.summary["max_ratio"] <= 2.0
    for r in rep.rows:
        assert r["ratio"] == pytest.approx(r["count"] / (r["a"] ** 2 * r["b"] / math.log(r["a"] * r["b"])), rel=1e-9)


def test_lemma3_driver():
    rep = run_lemma3(q=4, a=1, x_lo=100, x_hi=10**4, n_points=12)
    assert rep.summary["max_abs_deviation"] < 1.0
    assert all(r["x"] >= 100 for r in rep.rows)
