import json
import subprocess
import sys

import numpy as np
import pytest

import tubal.transform as tf
from tubal import io
from tubal.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def tensor_file(tmp_path):
    path = tmp_path / "a.txt"
    io.write_text(path, np.random.default_rng(0).standard_normal((4, 3, 5)))
    return path


class TestTransform:
    def test_ndft(self, capsys):
        code, out, _ = run(capsys, "transform", "--builtin", "ndft", "--p", "4")
        obj = json.loads(out)
        assert code == 0 and obj["unitary"] and obj["doubly_real_preserving"]

    def test_dft_not_unitary(self, capsys):
        code, out, _ = run(capsys, "transform", "--builtin", "dft", "--p", "4")
        assert code == 0 and not json.loads(out)["unitary"]

    def test_pf_file(self, capsys, tmp_path):
        s = np.sqrt(2) / 2
        PF = tf.from_matrix(np.array([[s, s, 0], [s, -s, 0], [0, 0, 1]]) @ tf.make_dft(3).L)
        tf.save(PF, tmp_path / "pf.json")
        code, out, _ = run(capsys, "transform", "--file", str(tmp_path / "pf.json"))
        assert code == 0 and not json.loads(out)["real_preserving"]

    def test_missing_p(self, capsys):
        assert run(capsys, "transform", "--builtin", "dct")[0] == 2

    def test_save(self, capsys, tmp_path):
        out = tmp_path / "l.json"
        run(capsys, "transform", "--builtin", "dct", "--p", "3", "--out", str(out))
        assert np.allclose(tf.load(out).L, tf.make_dct(3).L)


class TestScalar:
    def test_tprod(self, capsys):
        code, out, _ = run(capsys, "scalar", "tprod", "--a", "0,1,0", "--b", "0,0,1")
        assert code == 0 and np.allclose(json.loads(out)["result"], [1, 0, 0])

    def test_transpose(self, capsys):
        _, out, _ = run(capsys, "scalar", "transpose", "--a", "1,2,3,4")
        assert json.loads(out)["result"] == [1, 4, 3, 2]

    def test_not_real_preserving(self, capsys, tmp_path):
        tf.save(tf.from_matrix(1j * np.eye(2)), tmp_path / "i.json")
        code, _, err = run(capsys, "scalar", "tprod", "--a", "1,1", "--b", "1,0", "--transform", str(tmp_path / "i.json"))
        assert code == 3 and "NotRealPreserving" in err

    def test_bad_vector(self, capsys):
        assert run(capsys, "scalar", "unit", "--a", "1,x")[0] == 2


class TestTsvd:
    def test_outputs(self, capsys, tmp_path, tensor_file):
        prefix = tmp_path / "f"
        code, out, _ = run(capsys, "tsvd", "--input", str(tensor_file), "--out", str(prefix))
        assert code == 0 and json.loads(out)["relative_residual"] <= 1e-8
        U = io.read_tensor(f"{prefix}_U.txt")
        assert U.shape == (4, 4, 5)
        spec = json.loads((tmp_path / "f_spectrum.json").read_text())
        assert len(spec["spectrum"]["tau"]) == 4

    def test_binary(self, capsys, tmp_path, tensor_file):
        prefix = tmp_path / "g"
        run(capsys, "tsvd", "--input", str(tensor_file), "--out", str(prefix), "--binary")
        assert io.read_tensor(f"{prefix}_S.tubl").shape == (4, 3, 5)

    def test_wrong_transform_size(self, capsys, tmp_path, tensor_file):
        tf.save(tf.make_dct(3), tmp_path / "l.json")
        assert run(capsys, "tsvd", "--input", str(tensor_file), "--transform", str(tmp_path / "l.json"))[0] == 2

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "tsvd", "--input", str(tmp_path / "nope.txt"))[0] == 2


class TestTruncateSpectrum:
    def test_tubal(self, capsys, tensor_file):
        code, out, _ = run(capsys, "truncate", "--input", str(tensor_file), "--mode", "tubal", "--rank", "1")
        obj = json.loads(out)
        assert code == 0 and obj["passed"]
        assert abs(obj["achieved_error"] - obj["predicted_error"]) <= 1e-6 * obj["predicted_error"]

    def test_brank_dct(self, capsys, tensor_file):
        code, out, _ = run(capsys, "truncate", "--input", str(tensor_file), "--mode", "brank", "--rank", "7",
                           "--transform", "dct")
        assert code == 0 and json.loads(out)["passed"]

    def test_rank_out_of_range(self, capsys, tensor_file):
        assert run(capsys, "truncate", "--input", str(tensor_file), "--mode", "tubal", "--rank", "3")[0] == 5

    def test_not_unitary(self, capsys, tensor_file):
        code = run(capsys, "truncate", "--input", str(tensor_file), "--mode", "tubal", "--rank", "1",
                   "--transform", "dft")[0]
        assert code == 3

    def test_spectrum(self, capsys, tensor_file):
        code, out, _ = run(capsys, "spectrum", "--input", str(tensor_file), "--transform", "dct")
        obj = json.loads(out)
        assert code == 0 and obj["rank_t"] == 3 and obj["rank_b"] == 15
        assert len(obj["nu"]) == 16 and np.array(obj["eta"]).shape == (3, 5)


class TestVerify:
    def test_ring(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "ring")
        obj = json.loads(out)
        assert code == 0 and obj["passed"] and obj["checks"]

    def test_deterministic(self, capsys, tmp_path):
        run(capsys, "verify", "--suite", "transform", "--seed", "3", "--out", str(tmp_path / "a.json"))
        run(capsys, "verify", "--suite", "transform", "--seed", "3", "--out", str(tmp_path / "b.json"))
        assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()

    def test_corrupted_fixture(self, capsys, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_text("2 2 2\n1 2 3\n")
        code, out, _ = run(capsys, "verify", "--suite", "tsvd", "--input", str(bad))
        obj = json.loads(out)
        assert code == 1 and not obj["passed"]
        assert obj["checks"][0]["name"] == "fixture.parse"

    def test_good_fixture(self, capsys, tensor_file):
        code, out, _ = run(capsys, "verify", "--suite", "tsvd", "--input", str(tensor_file))
        assert code == 0


def test_module_entry_point(tensor_file):
    proc = subprocess.run([sys.executable, "-m", "tubal.cli", "spectrum", "--input", str(tensor_file)],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["rank_t"] == 3
