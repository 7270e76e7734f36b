from __future__ import annotations

import json
import random
import subprocess
import sys

from equibundle import serialize
from equibundle.cli import main
from equibundle.equivariant import build_from_canonical
from equibundle.matgroup import catalog
from equibundle.plant import random_canonical_form
from equibundle.ratfun import RatFun, RatMat
from equibundle.cyclotomic import CycNum


def run_cli(capsys, *argv) -> tuple[int, dict]:
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_catalog_command(tmp_path, capsys):
    out = tmp_path / "group.json"
    code, report = run_cli(
        capsys, "catalog", "--family", "binary_dihedral", "--n", "3",
        "--output", str(out),
    )
    assert code == 0
    assert report["order"] == 12
    assert report["conjugacy_classes"] == 6
    assert out.exists()
    saved = json.loads(out.read_text())
    assert saved["group"]["modulus"] == 12


def test_split_command(tmp_path, capsys):
    n = 12
    one = CycNum.one(n)
    cocycle = RatMat.diag([RatFun.monomial(one, 3), RatFun.monomial(one, -1)])
    from equibundle.bundle import TransitionCocycle

    path = tmp_path / "cocycle.json"
    path.write_text(serialize.dumps(serialize.cocycle_to_json(TransitionCocycle(2, cocycle))))
    code, report = run_cli(capsys, "split", "--input", str(path))
    assert code == 0
    assert report["splitting_type"] == [3, -1]
    assert report["residual_zero"] is True


def test_split_rejects_non_cocycle(tmp_path, capsys):
    n = 12
    bad = {
        "rank": 1,
        "modulus": n,
        "transition": serialize.ratmat_to_json(
            RatMat([[RatFun.from_poly(__import__("equibundle.ratfun", fromlist=["Poly"]).Poly.from_ints(n, [1, 1]))]])
        ),
    }
    path = tmp_path / "bad.json"
    path.write_text(serialize.dumps(bad))
    code, report = run_cli(capsys, "split", "--input", str(path))
    assert code == 1
    assert report["error"] == "mathematical_rejection"


def test_split_certificate_revalidates_from_report(tmp_path, capsys):
    # A third party can re-multiply the emitted factors and compare against
    # the input transition without trusting the tool.
    rng = random.Random(77)
    from equibundle.plant import planted_cocycle
    from equibundle.ratfun import RatFun as RF

    cocycle, _, _ = planted_cocycle(rng, 12, [2, 0, -1])
    path = tmp_path / "cocycle.json"
    path.write_text(serialize.dumps(serialize.cocycle_to_json(cocycle)))
    code, report = run_cli(capsys, "split", "--input", str(path))
    assert code == 0
    fact = report["factorization"]
    u_plus = serialize.ratmat_from_json(12, fact["u_plus"])
    u_minus = serialize.ratmat_from_json(12, fact["u_minus"])
    diag = RatMat.diag([RF.monomial(CycNum.one(12), d) for d in fact["degrees"]])
    assert u_plus * diag * u_minus == cocycle.transition


def test_classify_command(tmp_path, capsys):
    rng = random.Random(12)
    g = catalog("cyclic", 4).group()
    cf = random_canonical_form(rng, g, max_entries=2, max_dim=2)
    bundle = build_from_canonical(cf, g)
    path = tmp_path / "bundle.json"
    path.write_text(serialize.dumps(serialize.bundle_to_json(bundle)))
    code, report = run_cli(capsys, "classify", "--input", str(path))
    assert code == 0
    assert report["degrees"] == list(cf.degrees())
    assert report["certificates"]["factorization_residual_zero"] is True
    # The emitted canonical form re-parses and matches.
    back = serialize.canonical_form_from_json(report["canonical_form"])
    assert back.equal_up_to_iso(cf)


def test_ext_split_command(tmp_path, capsys):
    from equibundle.extensions import pgl_group
    from equibundle.matgroup import SL2Elem

    h = pgl_group([SL2Elem.from_ints(4, 0, 1, -1, 0)])
    path = tmp_path / "h.json"
    path.write_text(serialize.dumps(serialize.group_to_json(h)))
    code, report = run_cli(capsys, "ext-split", "--input", str(path))
    assert code == 0
    assert report["splits"] is False
    assert report["gamma"] is None
    assert report["preimage_order"] == 4


def test_iso_command(tmp_path, capsys):
    rng = random.Random(31)
    g = catalog("cyclic", 3).group()
    cf = random_canonical_form(rng, g, max_entries=1, max_dim=2)
    b1 = build_from_canonical(cf, g)
    from equibundle.plant import conjugated_modules, random_retrivialization

    b2 = random_retrivialization(rng, build_from_canonical(conjugated_modules(rng, cf), g))
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    p1.write_text(serialize.dumps(serialize.bundle_to_json(b1)))
    p2.write_text(serialize.dumps(serialize.bundle_to_json(b2)))
    code, report = run_cli(capsys, "iso", "--input-a", str(p1), "--input-b", str(p2))
    assert code == 0
    assert report["isomorphic"] is True


def test_sections_command(tmp_path, capsys):
    g = catalog("cyclic", 3).group()
    from equibundle.equivariant import CanonicalEntry, CanonicalForm
    from equibundle.matgroup import trivial_representation

    cf = CanonicalForm([CanonicalEntry(1, trivial_representation(g))])
    path = tmp_path / "cf.json"
    path.write_text(serialize.dumps(serialize.canonical_form_to_json(cf)))
    code, report = run_cli(capsys, "sections", "--input", str(path))
    assert code == 0
    assert report["dimension"] == 2


def test_malformed_input_exit_code(tmp_path, capsys):
    path = tmp_path / "garbage.json"
    path.write_text("{not json")
    code, report = run_cli(capsys, "split", "--input", str(path))
    assert code == 2
    assert report["error"] == "malformed_input"


def test_verify_determinism_byte_identical(tmp_path, capsys):
    out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
    code1, _ = run_cli(
        capsys, "verify", "--suite", "sections", "--seed", "5", "--cases", "4",
        "--output", str(out1),
    )
    code2, _ = run_cli(
        capsys, "verify", "--suite", "sections", "--seed", "5", "--cases", "4",
        "--output", str(out2),
    )
    assert code1 == code2 == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_cli_entry_point_subprocess():
    result = subprocess.run(
        [sys.executable, "-m", "equibundle.cli", "verify", "--suite", "birkhoff",
         "--seed", "3", "--cases", "2"],
        capture_output=True,
        text=True,
        timeout=300,
    )
    assert result.returncode == 0, result.stderr
    report = json.loads(result.stdout)
    assert report["pass"] is True
