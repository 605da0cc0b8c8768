import io

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import TAU_OUTPUT
from macfactor.cli import InputError, parse_filling, parse_shape, render_filling, run


def call(*argv: str) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_parse_shape():
    assert parse_shape("4,3,2") == (4, 3, 2)
    assert parse_shape(" 2, 1 ") == (2, 1)
    assert parse_shape("") == ()
    with pytest.raises(InputError, match="not an integer"):
        parse_shape("2,x")
    with pytest.raises(InputError, match="positive"):
        parse_shape("2,0")
    with pytest.raises(InputError, match="weakly decreasing"):
        parse_shape("1,2")


def test_parse_filling():
    T = parse_filling((4, 3, 2), "6,2;2,4,8;4,4,1,3")
    assert T.rows == ((4, 4, 1, 3), (2, 4, 8), (6, 2))
    assert parse_filling(None, "1,4;3,5;6,2;3,1;4,2;3,3,3;4,4,4") == TAU_OUTPUT
    with pytest.raises(InputError, match="row length mismatch: row 2 from the top has 2 entries, expected 3"):
        parse_filling((4, 3, 2), "6,2;2,4;4,4,1,3")
    with pytest.raises(InputError, match="rows"):
        parse_filling((2, 1), "1,2")
    with pytest.raises(InputError, match="positive"):
        parse_filling((1,), "0")
    with pytest.raises(InputError, match="not an integer"):
        parse_filling((1,), "a")


rows = st.lists(st.integers(1, 4), min_size=1, max_size=4).flatmap(
    lambda widths: st.tuples(*[st.lists(st.integers(1, 9), min_size=w, max_size=w) for w in sorted(widths)])
)


@given(rows)
def test_filling_text_round_trip(top_down):
    text = ";".join(",".join(map(str, r)) for r in top_down)
    T = parse_filling(None, text)
    assert render_filling(T) == text
    assert parse_filling(T.shape, render_filling(T)) == T


def test_stats_golden():
    code, out, err = call("stats", "--shape", "4,3,2", "--filling", "6,2;2,4,8;4,4,1,3")
    assert code == 0 and err == ""
    lines = out.splitlines()
    assert "maj = 2" in lines and "inv = 6" in lines
    assert "descents = (2,3) (3,1)" in lines
    assert "row 3: Inv_same=1 Inv_below=0 maj=1 arm=1 inv=0" in lines


def test_stats_machine_lines():
    code, out, _ = call("stats", "--filling", "1;4,7;3,2;5,6", "--format", "machine-lines")
    assert code == 0
    lines = out.splitlines()
    assert "maj=3" in lines and "inv=1" in lines
    assert "row.3.maj=3" in lines and "row.3.arm=1" in lines and "row.2.inv=1" in lines


def test_tau_golden():
    code, out, _ = call("tau", "--mu-prime", "3,3", "--n", "2", "--l", "5",
                        "--filling", "1,4;3,5;2,6;1,3;2,4;3,3,3;4,4,4")
    assert code == 0
    assert out.splitlines() == [
        "step.1 = 1,4;3,5;2,6;1,3;4,2;3,3,3;4,4,4",
        "step.2 = 1,4;3,5;2,6;3,1;4,2;3,3,3;4,4,4",
        "step.3 = 1,4;3,5;6,2;3,1;4,2;3,3,3;4,4,4",
        "tau = 1,4;3,5;6,2;3,1;4,2;3,3,3;4,4,4",
        "tau.maj = 13",
        "tau.inv = 2",
        "split.maj = 8",
        "split.inv = 2",
        "maj_congruent_mod_l = true",
        "inv_equal = true",
    ]


def test_split_n1():
    code, out, _ = call("split", "--mu-prime", "2,2", "--n", "1", "--l", "3", "--filling", "2;1;3;2,3;1,2")
    assert code == 0
    lines = out.splitlines()
    assert "body = 2,3;1,2" in lines and "tail = 2;1;3" in lines
    assert "split.maj = 3" in lines


def test_compute_golden():
    code, out, _ = call("compute", "--shape", "2,1")
    assert code == 0
    assert out.splitlines()[-3:] == ["1,1,1 : 1 + 2*t + 2*q + q*t", "2,1 : 1 + t + q", "3 : 1"]
    code, out, _ = call("compute", "--shape", "1,1", "--l", "2", "--format", "machine-lines")
    assert code == 0
    assert "m[2]=1 (mod Phi_2)" in out.splitlines()
    assert not any(line.startswith("m[1,1]") for line in out.splitlines())


def test_verify_factorization_verified():
    code, out, _ = call("verify-factorization", "--mu-prime", "2", "--n", "1", "--l", "2", "--vars", "4")
    assert code == 0
    assert out.splitlines()[-1].startswith("VERIFIED")


def test_verify_factorization_partial():
    code, out, _ = call("verify-factorization", "--mu-prime", "2", "--n", "2", "--l", "2", "--vars", "3")
    assert code == 0
    assert "VERIFIED (partial check)" in out
    code, out, _ = call("verify-factorization", "--mu-prime", "2", "--n", "2", "--l", "2", "--vars", "3",
                        "--format", "machine-lines")
    assert "status=verified" in out.splitlines() and "partial=true" in out.splitlines()


def test_failed_check_exits_1(monkeypatch):
    import macfactor.bijections as bij

    monkeypatch.setattr(bij, "tau_batch", lambda V, ts: V)
    code, out, _ = call("verify-bijection", "--mu-prime", "2", "--n", "2", "--l", "2", "--vars", "3")
    assert code == 1
    assert "FAILED" in out and "  T = " in out


@pytest.mark.parametrize("argv, needle", [
    (["stats", "--shape", "2,1", "--filling", "1,2;3"], "row"),
    (["stats", "--filling", "1,x"], "not an integer"),
    (["compute", "--shape", "1,2"], "weakly decreasing"),
    (["verify-factorization", "--mu-prime", "2", "--n", "3", "--l", "2"], ""),
    (["verify-factorization", "--mu-prime", "2", "--n", "1", "--l", "0"], "--l"),
    (["verify-involution", "--mu-prime", "2", "--n", "1", "--l", "2"], "identity"),
    (["verify-bijection", "--mu-prime", "2", "--n", "2", "--l", "0"], ""),
    (["verify-lemmas", "--max-entry", "1"], "max-entry"),
    (["verify-lemmas", "--mu-prime", "2"], "--l"),
    (["compute", "--shape", "2", "--workers", "0"], "workers"),
    (["no-such-command"], ""),
    (["compute"], "--shape"),
])
def test_bad_input_exits_2_with_one_line(argv, needle):
    code, out, err = call(*argv)
    assert code == 2
    assert out == ""
    assert err.startswith("error: ") and err.count("\n") == 1
    assert needle in err


def test_budget_refusal():
    code, out, err = call("compute", "--shape", "3,3", "--vars", "6", "--max-states", "1000")
    assert code == 2
    assert err == "error: budget: 6^6 = 46656 fillings exceeds the budget of 1000 states\n"


@pytest.mark.parametrize("argv", [
    ["compute", "--shape", "2,2,1"],
    ["verify-factorization", "--mu-prime", "2", "--n", "2", "--l", "2", "--vars", "4"],
    ["verify-bijection", "--mu-prime", "2", "--n", "2", "--l", "2", "--vars", "4"],
    ["verify-lemmas", "--max-entry", "4", "--mu-prime", "2", "--l", "2", "--vars", "3"],
    ["verify-symmetry", "--shape", "3,1"],
])
def test_output_identical_across_workers(argv):
    outputs = {call(*argv, "--workers", str(w))[1] for w in (1, 2, 3)}
    assert len(outputs) == 1


def test_verify_symmetry_reports_both_checks():
    code, out, _ = call("verify-symmetry", "--shape", "2,1")
    assert code == 0
    assert out.count("VERIFIED") == 2
