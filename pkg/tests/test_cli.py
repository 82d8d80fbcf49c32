import numpy as np
import pytest

import magnonlab as ml
from magnonlab.cli import (
    CsvTable,
    main,
    parse_state_spec,
    parse_template,
    run_analyze,
    run_figure,
    run_table1,
)
from magnonlab.errors import SpecError


def test_parse_concrete_families():
    spec = parse_state_spec("dicke(N=16,m=8)")
    assert spec.family == "dicke" and spec.n == 16 and spec.m == 8
    spec = parse_state_spec("magnons(N=12; k=0^5,1)")
    assert spec.ks == (0, 0, 0, 0, 0, 1)
    spec = parse_state_spec("band(N=12,m=6)")
    assert spec.family == "band" and spec.m == 6 and spec.extras == ()
    spec = parse_state_spec("band(8,2,3,-1)")
    assert spec.extras == (3, -1)
    spec = parse_state_spec("product(6, 1.5, -0.25)")
    assert spec.theta == 1.5 and spec.alpha == -0.25
    assert parse_state_spec("ghz(10)").family == "ghz"
    assert parse_state_spec("w(N=6)").n == 6
    spec = parse_state_spec("modexp(4,2,15)")
    assert (spec.n, spec.x, spec.modulus) == (4, 2, 15)
    assert spec.n_sites == 8


def test_parse_is_whitespace_insensitive():
    a = parse_state_spec(" dicke ( N = 16 , m = 8 ) ")
    b = parse_state_spec("dicke(16,8)")
    assert a == b


def test_parse_symbolic_requires_sweep_size():
    tpl = parse_template("dicke(N, m=N/2)")
    assert tpl.is_symbolic
    spec = tpl.bind(12)
    assert spec.n == 12 and spec.m == 6
    with pytest.raises(SpecError):
        tpl.bind(None)
    with pytest.raises(SpecError):
        parse_template("dicke(N, m=N/4)").bind(10)  # 10 % 4 != 0


def test_parse_symbolic_offsets():
    spec = parse_state_spec("magnons(N; k=0^N/2-1,1)", n=12)
    assert spec.ks == (0,) * 5 + (1,)


def test_parse_errors_carry_positions():
    for text, pos_at_least in [("dicke(16", 0), ("dicke(16,8))", 0),
                               ("unknown(4)", 0), ("dicke[16,8]", 0),
                               ("", 0), ("w()", 0)]:
        with pytest.raises(SpecError) as err:
            parse_state_spec(text)
        assert "position" in str(err.value)


def test_parse_range_violations():
    with pytest.raises(SpecError):
        parse_state_spec("magnons(N=8; k=5)")  # outside the zone
    with pytest.raises(SpecError):
        parse_state_spec("dicke(4, 6)")  # m > N
    with pytest.raises(SpecError):
        parse_state_spec("modexp(4, 3, 15)")  # gcd > 1


def test_parser_never_crashes_on_garbage():
    rng = np.random.default_rng(13)
    corpora = ["dicke(N=16,m=8)", "magnons(N=12; k=0^5,1)", "band(8,4)"]
    for _ in range(400):
        if rng.random() < 0.5:
            text = "".join(chr(c) for c in rng.integers(1, 128, size=rng.integers(0, 30)))
        else:
            base = list(rng.choice(corpora))
            for _ in range(rng.integers(1, 4)):
                op = rng.integers(3)
                pos = rng.integers(0, max(len(base), 1))
                if op == 0 and base:
                    base.pop(min(pos, len(base) - 1))
                elif op == 1:
                    base.insert(pos, chr(rng.integers(32, 127)))
                else:
                    base[min(pos, len(base) - 1)] = chr(rng.integers(32, 127))
            text = "".join(base)
        try:
            parse_state_spec(text, n=12)
        except SpecError:
            pass  # structured failure is the only acceptable outcome


def test_csv_round_trip_recovers_12_digits():
    table = run_figure(3, nmax=8)
    text = table.dumps()
    _, header, rows = CsvTable.parse(text)
    assert header == ["N", "series", "emax"]
    for (n, label, value), parsed in zip(table.rows, rows):
        assert parsed[0] == n and parsed[1] == label
        if value != 0:
            assert abs(parsed[2] - value) <= abs(value) * 5e-12


def test_reruns_are_byte_identical():
    a = run_figure(1, nmax=10).dumps()
    b = run_figure(1, nmax=10).dumps()
    assert a == b
    assert "generator: magnonlab" in a


def test_fig3_condensed_matches_line():
    _, _, rows = CsvTable.parse(run_figure(3, nmax=12).dumps())
    condensed = {r[0]: r[2] for r in rows if r[1] == "condensed m=N/2"}
    for n, val in condensed.items():
        assert abs(val - (1 + n / 2)) < 1e-8


def test_fig1_equal_k_value():
    _, _, rows = CsvTable.parse(run_figure(1, nmax=10).dumps())
    equal = {r[0]: r[2] for r in rows if r[1] == "k2=k1=0"}
    assert abs(equal[10] - 4.8) < 1e-9


def test_table1_layout():
    table = run_table1(nmax=20)
    assert [r[0] for r in table.rows] == ["m=N/2", "m=N/4", "m=N/6"]
    for row in table.rows:
        assert row[5] >= 4 and row[6] <= 20 and row[7] >= 3


def test_analyze_ghz():
    table = run_analyze("ghz(N)", "4:12:2")
    meta = "\n".join(table.metadata)
    assert "verdict: p=2" in meta
    for n, emax, entropy, rank in table.rows:
        assert abs(emax - n) < 1e-9
        assert abs(entropy - 1.0) < 1e-10
        assert rank == 2


def test_analyze_product_is_normal():
    table = run_analyze("product(N, 1.0, 0.5)", "8:14:2")
    meta = "\n".join(table.metadata)
    assert "verdict: p=1" in meta
    for n, emax, entropy, rank in table.rows:
        assert abs(emax - 2.0) < 1e-9
        assert entropy < 1e-10 and rank == 1


def test_analyze_rejects_fixed_n_sweeps_and_odd_sizes():
    with pytest.raises(SpecError):
        run_analyze("dicke(8,4)", "4:12:2")
    with pytest.raises(SpecError):
        run_analyze("w(N)", "5:9:2")


def test_exit_codes():
    assert main(["analyze", "--spec", "dicke(N,m=N/2)", "--nrange", "8:10:2"]) == 0
    assert main(["analyze", "--spec", "dicke(N,m=", "--nrange", "8:10:2"]) == 2
    assert main(["analyze", "--spec", "dicke(N,m=N/2)", "--nrange", "26:28:2"]) == 3
    assert main(["fig", "--id", "2", "--nmax", "30"]) == 3


def test_analyze_spectrum_columns(tmp_path):
    out = tmp_path / "t.csv"
    code = main(["analyze", "--spec", "w(N)", "--nrange", "6:12:2",
                 "--spectrum", "--out", str(out)])
    assert code == 0
    _, header, rows = CsvTable.parse(out.read_text())
    assert header[-2:] == ["e_min", "vcm_trace"]
    for row in rows:
        assert row[-2] >= -1e-9
