import json
import subprocess
import sys
from fractions import Fraction

import pytest

from segre_sigma3 import Family, NormalFormSpec, Tensor, generate, simple_tensor
from segre_sigma3.cli import run
from segre_sigma3.errors import TensorFileError
from segre_sigma3.tensorfile import dumps, loads, read_tensor, write_tensor


@pytest.fixture
def cli(capsys):
    def call(*argv):
        code = run([str(a) for a in argv])
        out, err = capsys.readouterr()
        return code, out, err

    return call


def test_gen_then_sigma3_member(cli, tmp_path):
    f = tmp_path / "t.json"
    assert cli("gen", "--family", "sigma3-type1", "--dims", "3,3,3", "--seed", 7, "--out", f)[0] == 0
    code, out, _ = cli("sigma3", "--tensor", f)
    assert code == 0 and out.strip() == "member"


def test_generic_rank4_json(cli, tmp_path):
    f = tmp_path / "t.json"
    cli("gen", "--family", "generic-rank4", "--dims", "3,3,3", "--seed", 7, "--out", f)
    code, out, _ = cli("sigma3", "--tensor", f, "--json")
    assert code == 1
    doc = json.loads(out)
    assert doc["verdict"] == "non-member"
    w = doc["witness"]
    assert w["family"] == "strassen" and w["partition"] == {"a": 0, "b": 1} and w["rank"] >= 7 and w["bound"] == 6
    assert doc["trace"][-1] == w


def test_rank_of_simple_tensor(cli, tmp_path):
    f = tmp_path / "s.json"
    write_tensor(f, simple_tensor([[1, 2], [3, 4], [0, 1]]))
    code, out, _ = cli("rank", "--tensor", f, "--left", "0")
    assert code == 0 and out.strip() == "1"


def test_other_subcommands(cli, tmp_path):
    diag = tmp_path / "d.json"
    t = sum((simple_tensor([[int(i == k) for k in range(3)]] * 3) for i in range(3)), Tensor.zeros((3, 3, 3)))
    write_tensor(diag, t)
    assert cli("strassen", "--tensor", diag, "--a", 0, "--b", 1) == (0, "rank 6 bound 6\n", "")
    code, out, _ = cli("commutator", "--tensor", diag)
    assert code == 0 and out.split() == ["0"] * 9
    assert cli("sigma2", "--tensor", diag)[0] == 1
    assert cli("classify", "--tensor", diag)[1].strip() == "Case1"

    c3 = tmp_path / "c.json"
    form = tmp_path / "f.json"
    cli("gen", "--family", "Case3_Type1", "--dims", "2,2,2,2,2,2", "--seed", 3, "--out", c3)
    code, out, _ = cli("symmetrize", "--tensor", c3, "--pivot", 0, "--out", form)
    assert code == 0 and read_tensor(form).shape == (2,) * 6
    assert cli("catalecticant", "--form", form, "--a", 3)[0] == 0

    c2 = tmp_path / "c2.json"
    cli("gen", "--family", "case3-type2", "--dims", "2,2,2,2", "--seed", 3, "--out", c2)
    code, out, _ = cli("symmetrize", "--tensor", c2, "--pivot", 0, "--out", form)
    assert code == 1 and "mode 1" in out


@pytest.mark.parametrize(
    "text,fragment",
    [
        ('{"shape": [2, 2], "entries": ["1", "x", "0", "0"]}', "entries[1]"),
        ('{"shape": [2, 2], "entries": ["1", "0", "0"]}', "dense length"),
        ('{"shape": [2, 2], "entries": [1, 0, 0, 0]}', "entries[0]"),
        ('{"shape": [2, 2], "entries": ["1/0", "0", "0", "0"]}', "entries[0]"),
        ('{"shape": [2, 2], "entries": ["0.5", "0", "0", "0"]}', "entries[0]"),
        ('{"shape": [2, 2],\n "entries": [1,}', "line 2"),
        ('{"shape": [2], "entries": ["1", "2"]}', "shape"),
        ('{"shape": [2, 2], "format": "sparse", "entries": [{"index": [0, 2], "value": "1"}]}', "entries[0].index"),
        ('{"shape": [2, 2], "format": "sparse", "entries": [{"index": [0, 1], "value": "1"}, {"index": [0, 1], "value": "2"}]}', "duplicate"),
        ('{"shape": [2, 2], "format": "csv", "entries": []}', "format"),
        ('[1, 2]', "top level"),
    ],
)
def test_malformed_files(cli, tmp_path, text, fragment):
    f = tmp_path / "bad.json"
    f.write_text(text)
    code, out, err = cli("sigma3", "--tensor", f)
    assert code == 2 and fragment in err and out == ""


def test_usage_and_contract_errors(cli, tmp_path):
    assert cli("bogus")[0] == 2
    assert cli("sigma3")[0] == 2
    assert cli("sigma3", "--tensor", tmp_path / "missing.json")[0] == 2
    f = tmp_path / "t.json"
    write_tensor(f, Tensor.zeros((2, 2, 2)))
    assert cli("commutator", "--tensor", f)[0] == 2
    assert cli("rank", "--tensor", f, "--left", "0,1,2")[0] == 2
    assert cli("catalecticant", "--form", f, "--a", 3)[0] == 2
    assert cli("gen", "--family", "case3-type1", "--dims", "3,2,2", "--seed", 0, "--out", f)[0] == 2
    write_tensor(f, Tensor([[1, 2], [3, 4]]))
    assert cli("catalecticant", "--form", f, "--a", 1)[0] == 2


def test_sparse_and_dense_round_trip():
    t = generate(NormalFormSpec(Family.SIGMA3_TYPE3, (3, 2, 2), 9)) * Fraction(-2, 3)
    for fmt in ("dense", "sparse"):
        text = dumps(t, fmt)
        assert loads(text) == t
        assert dumps(loads(text), fmt) == text
    assert all(str(Fraction(x)) == x for x in json.loads(dumps(t, "dense"))["entries"])
    # format is inferred when absent
    assert loads('{"shape": [1, 2], "entries": [{"index": [0, 1], "value": "-3/6"}]}')[0, 1] == Fraction(-1, 2)
    with pytest.raises(TensorFileError):
        loads('{"shape": [1, 2], "entries": ["1", "2"], "extra": 1}')


def test_console_entry_point(tmp_path):
    f = tmp_path / "t.json"
    gen = [sys.executable, "-m", "segre_sigma3", "gen", "--family", "sigma2-point", "--dims", "2,2,2", "--seed", "1", "--out", str(f)]
    assert subprocess.run(gen).returncode == 0
    runs = [subprocess.run([sys.executable, "-m", "segre_sigma3", "sigma3", "--tensor", str(f), "--json"], capture_output=True) for _ in range(2)]
    assert runs[0].returncode == 0 and runs[0].stdout == runs[1].stdout
