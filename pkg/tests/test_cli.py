import io as stdio
import json

import pytest

from lcmlattice.cli import run_command

from conftest import FIXTURES

THREE_ATOMS = str(FIXTURES / "lattice_three_atoms.json")
FIVE_ATOMS = str(FIXTURES / "lattice_five_atoms.json")


def run(*argv):
    out, err = stdio.StringIO(), stdio.StringIO()
    code = run_command(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_betti_example():
    code, out, _ = run("betti", "--ideal", "bd,cd,ac", "--compact", "--field", "q")
    assert code == 0
    assert "total: 1 3 2" in out
    assert "beta_2,bcd = 1" in out and "beta_2,acd = 1" in out
    assert "pd = 2, reg = 2" in out


def test_betti_json():
    code, out, _ = run("betti", "--ideal", "x,y", "--json")
    data = json.loads(out)
    assert code == 0 and len(data["entries"]) == 3


def test_primes_example():
    code, out, _ = run("primes", "--ideal", "bde,cde,ace,acd", "--compact")
    assert code == 0
    assert out.strip() == "(bde,cde,ace,acd) = (a,d) ∩ (a,e) ∩ (b,c) ∩ (c,d) ∩ (c,e) ∩ (d,e)"


def test_minimal_from_fixture():
    code, out, _ = run("minimal", "--lattice", THREE_ATOMS, "--json")
    data = json.loads(out)
    assert code == 0
    assert len(data["generators"]) == 3 and len(data["variables"]) == 4


def test_minimal_with_id_names():
    code, out, _ = run("minimal", "--lattice", FIVE_ATOMS, "--id-names")
    assert code == 0
    assert out.strip() == "(b*e*f*g, d*f*g, c*e*g, a*c*d, b*d*e*f)"


def test_lcm_and_nlattice():
    code, out, _ = run("lcm", "--ideal", "bd,cd,ac", "--compact")
    assert code == 0 and out.startswith("7 elements, 3 atoms, 4 meet-irreducible")
    code, out, _ = run("nlattice", "--lattice", THREE_ATOMS, "--json")
    assert code == 0 and len(json.loads(out)["generators"]) == 3


def test_scarf():
    code, out, _ = run("scarf", "--ideal", "bd,cd,ac", "--compact")
    assert code == 0
    assert "Scarf facets: {1,2} {2,3}" in out
    assert "supports the minimal resolution: yes" in out


def test_dual_and_cm(tmp_path):
    p = tmp_path / "k.json"
    p.write_text(json.dumps({"vertices": [1, 2, 3, 4], "facets": [[1, 2], [3, 4]]}))
    code, out, _ = run("cm", "--complex", str(p))
    assert code == 0 and "Cohen-Macaulay over q: no" in out
    code, out, _ = run("dual", "--complex", str(p), "--json")
    assert code == 0 and "facets" in json.loads(out)
    code, out, _ = run("dual", "--ideal", "ab,bc", "--compact")
    assert code == 0 and out.strip() == "(b, a*c)"


def test_depolarize_and_distributive():
    code, out, _ = run("depolarize", "--lattice", FIVE_ATOMS, "--id-names")
    assert code == 0 and out.startswith("chains: ")
    code, out, _ = run("distributive", "--ideal", "bd,cd,ac", "--compact")
    assert code == 0 and "distributive: True" in out


def test_check_minimal():
    code, out, _ = run("check-minimal", "--ideal", "ab,bc,cd", "--compact")
    assert code == 0 and out.startswith("minimal: yes")
    code, out, _ = run("check-minimal", "--ideal", "ab,cd", "--compact")
    assert code == 0 and out.startswith("minimal: no")


def test_dot_to_file(tmp_path):
    target = tmp_path / "l.dot"
    code, out, _ = run("dot", "--ideal", "bd,cd,ac", "--compact", "--dot", str(target), "--name", "lcm")
    assert code == 0 and out == ""
    assert target.read_text().startswith('digraph "lcm"')


def test_verify_small():
    code, out, _ = run("verify", "--max-atoms", "2", "--ideals", "5", "--complex-vertices", "3", "--json")
    data = json.loads(out)
    assert code == 0 and data["ok"] is True


def test_determinism():
    argv = ("betti", "--ideal", "ab,bc,cd,ad", "--compact")
    assert run(*argv) == run(*argv)


@pytest.mark.parametrize("argv", [[], ["frobnicate"], ["betti", "--ideal", "x", "--bogus"],
                                  ["betti"], ["betti", "--ideal", "x", "--ideal-file", "f"]])
def test_usage_errors_exit_2(argv):
    code, _, err = run(*argv)
    assert code == 2 and err.startswith("usage error")


@pytest.mark.parametrize("argv", [["minimal", "--ideal", "x"],
                                  ["betti", "--ideal", "x^-1"],
                                  ["minimal", "--lattice", "/nonexistent.json"],
                                  ["primes", "--ideal", "x^2", "--compact"]])
def test_domain_errors_exit_1(argv):
    code, _, err = run(*argv)
    assert code == 1 and err.startswith("error:")
