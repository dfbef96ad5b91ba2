import math

import schwarz_ocp


def test_elliptic_cell_matches_first_table_entry():
    rec = schwarz_ocp.run_cell(kind="elliptic", delta=1)
    assert schwarz_ocp.format_sci5(rec["errors"][0]) == "9.2738e-1"
    assert rec["rates"][0] is None
    assert abs(rec["rates"][1] - 0.85204) < 1e-4


def test_ocp_cell_small_grid():
    rec = schwarz_ocp.run_cell(kind="ocp", alpha=1e-2, delta=1, n=16, max_sweeps=3)
    assert rec["kind"] == "ocp"
    assert len(rec["errors"]) == 3
    assert all(0 < r < 1 for r in rec["rates"][1:])


def test_closed_forms():
    assert math.isclose(schwarz_ocp.rho_e(0.4, 0.6), 4 / 9)
    assert schwarz_ocp.rho_c(0.4, 0.6, 1e-4) < schwarz_ocp.rho_e(0.4, 0.6) ** 2
    assert schwarz_ocp.g(0.0) == 0.0
    scan = schwarz_ocp.rate_vs_gamma_scan(0.4, 0.6, 0.1, 10.0, 10)
    assert len(scan) == 10
    assert all(b[1] < a[1] for a, b in zip(scan, scan[1:]))


def test_verify_small():
    out = schwarz_ocp.verify([4], 0, 3)
    assert out["failures"] == []
    assert out["lemma"] == (3, 3)


def test_cli_usage_error():
    assert schwarz_ocp.main(["--N", "63", "table1"]) == 1
