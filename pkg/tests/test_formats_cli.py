import random

import pytest

from algdet.algebra import AlgMatrix, matrix_algebra, upper_triangular
from algdet.bench import checksum, parse_grid, records_to_csv, run_bench
from algdet.cli import main
from algdet.determinant import det_cayley_bruteforce
from algdet.errors import ParseError
from algdet.exactfield import GF, QQ
from algdet.formats import (format_algebra, format_matrix, load_algebra, parse_algebra,
                            parse_matrix, render_element)


def test_algebra_file_round_trip():
    for A in (upper_triangular(GF(7), 3), matrix_algebra(QQ, 2)):
        B = parse_algebra(format_algebra(A))
        assert B.table == A.table and B.unit == A.unit and B.labels == A.labels


def test_preset_line_and_inline_preset():
    A = parse_algebra("algebra\nfield GF 5\npreset upper_triangular 2\n")
    assert A.dim == 3 and A.provenance.kind == "upper_triangular"
    assert load_algebra("preset:matrix:2", GF(7)).dim == 4


def test_composite_presets(tmp_path):
    (tmp_path / "u2.alg").write_text("algebra\nfield GF 7\npreset upper_triangular 2\n")
    (tmp_path / "d1.alg").write_text("algebra\nfield GF 7\npreset diagonal 1\n")
    (tmp_path / "sum.alg").write_text("algebra\nfield GF 7\npreset direct_sum d1.alg u2.alg\n")
    assert load_algebra(str(tmp_path / "sum.alg")).dim == 4


@pytest.mark.parametrize("text", [
    "field GF 7\npreset matrix 2",                          # missing header
    "algebra\npreset matrix 2",                             # no field
    "algebra\nfield GF 7\npreset blob 2",                   # unknown preset
    "algebra\nfield GF 7\ndim 1\nunit 1",                   # missing mul lines
    "algebra\nfield GF 7\ndim 1\nunit 1\nmul 1 1 1\nmul 1 1 1",
    "algebra\nfield GF 7\nfrobnicate",
])
def test_algebra_parse_errors(text):
    with pytest.raises(ParseError):
        parse_algebra(text)


def test_requested_field_must_agree():
    with pytest.raises(ParseError):
        parse_algebra("algebra\nfield GF 7\npreset matrix 2\n", GF(5))


def test_matrix_round_trip_and_sparse_entries():
    A = matrix_algebra(GF(7), 2)
    M = AlgMatrix.random(A, 3, random.Random(0))
    assert parse_matrix(format_matrix(M), A) == M
    sparse = parse_matrix("matrix 2\nentry 1 1 1 0 0 1\n", A)
    assert sparse[1, 1] == A.zero and sparse[0, 0] == A.one


@pytest.mark.parametrize("text", ["entry 1 1 1 0 0 1", "matrix 1\nentry 2 1 1 0 0 1",
                                  "matrix 1\nentry 1 1 1 0", "matrix 1\nentry 1 1 a 0 0 1"])
def test_matrix_parse_errors(text):
    with pytest.raises(ParseError):
        parse_matrix(text, matrix_algebra(GF(7), 2))


def test_render_element_grid():
    A = upper_triangular(GF(7), 2)
    text = render_element(A.element((1, 2, 3)))
    assert text.splitlines() == ["[1, 2, 3]", "1  2", "0  3"]


# -- bench ---------------------------------------------------------------------

def test_parse_grid():
    assert parse_grid("U2:5,10;D3:4") == [("U", 2, [5, 10]), ("D", 3, [4])]
    for bad in ("X2:5", "U2", "U:5"):
        with pytest.raises(ParseError):
            parse_grid(bad)


def test_small_bench_is_verified():
    records, mismatches = run_bench(GF(7), "U2:3,5;D2:4;S2:3", seed=1)
    assert not mismatches
    assert all(r.verified_by for r in records)
    csv = records_to_csv(records)
    assert csv.splitlines()[0] == "family,n,d,algorithm,ms,checksum"
    assert len(csv.splitlines()) == 5


def test_checksum_is_deterministic():
    A = upper_triangular(GF(7), 2)
    M = AlgMatrix.random(A, 4, random.Random(3))
    assert checksum(det_cayley_bruteforce(M)) == checksum(det_cayley_bruteforce(M))
    assert len(checksum(A.one)) == 16


# -- command line --------------------------------------------------------------

def write_matrix(tmp_path, A, n, seed):
    M = AlgMatrix.random(A, n, random.Random(seed))
    path = tmp_path / "m.mat"
    path.write_text(format_matrix(M))
    return M, str(path)


def test_cli_det_upper(tmp_path, capsys):
    A = upper_triangular(GF(7), 2)
    M, path = write_matrix(tmp_path, A, 4, 0)
    out = tmp_path / "det.txt"
    rc = main(["det", "--algebra", "preset:upper_triangular:2", "--field", "GF", "7",
               "--matrix", path, "--out", str(out)])
    assert rc == 0
    text = capsys.readouterr().out
    assert "upper-triangular" in text
    want = det_cayley_bruteforce(M)
    assert out.read_text().split() == [str(c) for c in want.coords]


def test_cli_det_hard_needs_force(tmp_path, capsys):
    A = matrix_algebra(GF(7), 2)
    M, path = write_matrix(tmp_path, A, 3, 1)
    assert main(["det", "--algebra", "preset:matrix:2", "--field", "7", "--matrix", path]) == 0
    assert "HARD" in capsys.readouterr().out
    assert main(["det", "--algebra", "preset:matrix:2", "--field", "7", "--matrix", path,
                 "--force-oracle"]) == 0
    assert "det = " in capsys.readouterr().out


def test_cli_classify(capsys):
    assert main(["classify", "--algebra", "preset:matrix:2", "--field", "GF", "7"]) == 0
    assert "witness E12,E21" in capsys.readouterr().out
    assert main(["classify", "--algebra", "preset:upper_triangular:3", "--field", "GF", "7"]) == 0
    assert capsys.readouterr().out.strip() == "EASY, d = 3, algorithm: upper-triangular, poly(N^3)"


def test_cli_reduce_and_verify(tmp_path, capsys):
    cnf = tmp_path / "x.cnf"
    cnf.write_text("p cnf 1 1\n1 1 1 0\n")
    out = tmp_path / "h.graph"
    assert main(["reduce", "--cnf", str(cnf), "--field", "GF", "7", "--out", str(out)]) == 0
    assert out.read_text().startswith("graph 22 det GF 7")
    assert main(["verify-reduction", "--cnf", str(cnf), "--field", "GF", "5"]) == 0
    text = capsys.readouterr().out
    assert "a = 0, b = 4" in text and text.strip().endswith("PASS")


def test_cli_guard_flag(tmp_path, capsys):
    cnf = tmp_path / "y.cnf"
    cnf.write_text("p cnf 2 1\n1 2 2 0\n")
    assert main(["verify-reduction", "--cnf", str(cnf), "--field", "7"]) == 2
    assert "expansion" in capsys.readouterr().err
    assert main(["verify-reduction", "--cnf", str(cnf), "--field", "7", "--guard", "expansion=25"]) == 0


def test_cli_usage_errors(tmp_path, capsys):
    assert main(["classify", "--algebra", "preset:matrix:2", "--field", "GF", "8"]) == 2
    assert main(["det", "--algebra", str(tmp_path / "missing.alg"), "--field", "7",
                 "--matrix", "nope"]) == 2
    bad = tmp_path / "bad.cnf"
    bad.write_text("p cnf 1 1\n1 2 0\n")
    assert main(["reduce", "--cnf", str(bad), "--field", "7"]) == 2
    with pytest.raises(SystemExit):
        main(["reduce", "--cnf", str(bad)])          # --field is required


def test_cli_gadget_checks(capsys):
    assert main(["gadget", "--check", "variable"]) == 0
    assert main(["gadget", "--check", "clause"]) == 0
    assert main(["gadget", "--check", "xor", "--trials", "5"]) == 0
    assert capsys.readouterr().out.strip().endswith("PASS")


def test_cli_bench(tmp_path, capsys):
    out = tmp_path / "bench.csv"
    assert main(["bench", "--field", "7", "--grid", "U2:3,4", "--out", str(out)]) == 0
    assert out.read_text().splitlines()[0] == "family,n,d,algorithm,ms,checksum"
