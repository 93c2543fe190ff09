import json

import pytest

from rainbow_hcd.cli import main
from rainbow_hcd.files import certificate_from_text, format_instance
from rainbow_hcd.graph_core import verify_certificate


def write_instance(tmp_path, edges, name="instance.txt"):
    path = tmp_path / name
    path.write_text(format_instance(edges))
    return str(path)


class TestSolve:
    def test_stdout_certificate(self, tmp_path, capsys):
        inst = write_instance(tmp_path, [(0, 1), (1, 2), (2, 3)])
        assert main(["solve", inst, "--seed", "2"]) == 0
        cert = certificate_from_text(capsys.readouterr().out)
        assert verify_certificate(cert).ok

    def test_out_file_and_summary_line(self, tmp_path, capsys):
        inst = write_instance(tmp_path, [(0, 1), (1, 2), (2, 3)])
        dest = tmp_path / "cert.json"
        assert main(["solve", inst, "--out", str(dest)]) == 0
        out = capsys.readouterr().out
        assert "certificate: n=3 order=7" in out
        assert verify_certificate(certificate_from_text(dest.read_text())).ok

    def test_trace_flag(self, tmp_path, capsys):
        inst = write_instance(tmp_path, [(0, 1), (1, 2), (2, 3)])
        dest = tmp_path / "cert.json"
        assert main(["solve", inst, "--trace", "--out", str(dest)]) == 0
        assert "route: base-small" in capsys.readouterr().out

    def test_missing_file(self, tmp_path, capsys):
        assert main(["solve", str(tmp_path / "absent.txt")]) == 1
        assert "parse error" in capsys.readouterr().err

    def test_zero_edge_instance(self, tmp_path, capsys):
        path = tmp_path / "zero.txt"
        path.write_text("0\n")
        assert main(["solve", str(path)]) == 1

    def test_loop_instance(self, tmp_path, capsys):
        path = tmp_path / "loop.txt"
        path.write_text("1\n4 4\n")
        assert main(["solve", str(path)]) == 2
        assert "rejected input" in capsys.readouterr().err


class TestVerify:
    def roundtrip(self, tmp_path):
        inst = write_instance(tmp_path, [(0, 1), (1, 2), (5, 9)])
        cert = tmp_path / "cert.json"
        assert main(["solve", inst, "--out", str(cert)]) == 0
        return inst, cert

    def test_good_certificate(self, tmp_path, capsys):
        inst, cert = self.roundtrip(tmp_path)
        capsys.readouterr()
        assert main(["verify", str(cert), inst]) == 0
        out = capsys.readouterr().out
        assert "instance: ok" in out
        assert "verification passed" in out

    def test_tampered_assignment(self, tmp_path, capsys):
        inst, cert = self.roundtrip(tmp_path)
        doc = json.loads(cert.read_text())
        doc["assignment"] = [0] * doc["n"]
        cert.write_text(json.dumps(doc))
        capsys.readouterr()
        assert main(["verify", str(cert), inst]) == 5
        assert "rainbow violation" in capsys.readouterr().out

    def test_wrong_instance(self, tmp_path, capsys):
        inst, cert = self.roundtrip(tmp_path)
        other = write_instance(tmp_path, [(0, 1), (1, 2), (2, 3)], "other.txt")
        capsys.readouterr()
        assert main(["verify", str(cert), other]) == 5
        assert "instance violation" in capsys.readouterr().out

    def test_truncated_json(self, tmp_path, capsys):
        inst, cert = self.roundtrip(tmp_path)
        cert.write_text(cert.read_text()[:40])
        assert main(["verify", str(cert), inst]) == 1


class TestOracle:
    def test_found(self, tmp_path, capsys):
        inst = write_instance(tmp_path, [(0, 1), (1, 2), (0, 2)])
        assert main(["oracle", inst]) == 0
        out = capsys.readouterr().out
        assert out.startswith("found ")
        assert "nodes=" in out

    def test_budget_exhausted(self, tmp_path, capsys):
        inst = write_instance(tmp_path, [(0, 1), (1, 2), (2, 3), (3, 4)])
        assert main(["oracle", inst, "--budget", "1"]) == 4
        assert "budget exhausted" in capsys.readouterr().err

    def test_large_instance_rejected(self, tmp_path, capsys):
        edges = [(2 * i, 2 * i + 1) for i in range(6)]
        inst = write_instance(tmp_path, edges)
        assert main(["oracle", inst]) == 2


class TestWalecki:
    def test_stdout(self, capsys):
        assert main(["walecki", "3"]) == 0
        out = capsys.readouterr().out
        assert out.splitlines()[0] == "order 7 classes 3"
        assert len(out.splitlines()) == 4

    def test_out_file(self, tmp_path):
        dest = tmp_path / "walecki.txt"
        assert main(["walecki", "4", "--out", str(dest)]) == 0
        assert dest.read_text().splitlines()[0] == "order 9 classes 4"


class TestBench:
    def test_exhaustive_n3(self, capsys):
        assert main(["bench", "--n-range", "3..3", "--exhaustive"]) == 0
        out = capsys.readouterr().out
        assert "n3-c000" in out
        assert "5 instances, 0 failures" in out

    def test_sampled(self, capsys):
        assert main(
            ["bench", "--n-range", "6..7", "--samples", "2", "--seed", "1"]
        ) == 0
        out = capsys.readouterr().out
        assert "n6-s000" in out
        assert "4 instances, 0 failures" in out

    def test_sampled_deterministic(self, capsys):
        # only the seconds column may differ between identical invocations
        def stable(out):
            return [
                (row.split()[0], row.split()[-1]) for row in out.splitlines()
            ]

        argv = ["bench", "--n-range", "6..6", "--samples", "3", "--seed", "9"]
        assert main(argv) == 0
        first = capsys.readouterr().out
        assert main(argv) == 0
        assert stable(capsys.readouterr().out) == stable(first)

    def test_bad_range(self, capsys):
        assert main(["bench", "--n-range", "3-5"]) == 2
        assert "rejected arguments" in capsys.readouterr().err

    def test_exhaustive_cap(self, capsys):
        assert main(["bench", "--n-range", "7..7", "--exhaustive"]) == 2
