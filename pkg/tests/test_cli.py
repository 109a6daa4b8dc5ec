import subprocess
import sys

import pytest

from cmreg.cli import DocumentError, parse_document, run

DOC = """\
ring 3 32003
# the coordinate points [1:0:0] and [0:1:0]
ideal two_points
x2
x0*x1
end
ideal line
x0
end
ideal fat
x0^2
x0*x1
x0*x2
end
arrangement pair
subspace x1; x2
subspace x0; x2
end
"""


@pytest.fixture
def doc_path(tmp_path):
    p = tmp_path / "pts.ring"
    p.write_text(DOC)
    return str(p)


def test_reg_golden(doc_path):
    code, out = run(["reg", doc_path, "two_points"])
    assert code == 0
    assert out == "regularity = 2\n   0 1\n1: 1 .\n2: 1 1\n"


def test_betti_key_values(doc_path):
    code, out = run(["betti", doc_path, "two_points"])
    assert code == 0
    assert "beta_0_1=1" in out and "beta_1_3=1" in out
    assert out.rstrip().endswith("projective_dimension=1")


def test_sheaf_reg_of_arrangement(doc_path):
    code, out = run(["sheaf-reg", doc_path, "pair"])
    assert code == 0
    assert out.startswith("sheaf_regularity = 2\n")
    assert "h^1" in out


def test_saturate(doc_path):
    code, out = run(["saturate", doc_path, "fat"])
    assert code == 0
    assert out == "saturation:\n  x0\nalready_saturated=false\n"


def test_product_verdict(doc_path):
    code, out = run(["product", doc_path, "two_points", "line"])
    assert code == 0
    assert "verdict=pass" in out
    assert "regularity = 3" in out


def test_missing_file():
    code, out = run(["reg", "missing.ring", "X"])
    assert code == 2
    assert "missing.ring" in out


def test_unknown_name_and_command(doc_path):
    assert run(["reg", doc_path, "nope"])[0] == 2
    assert run(["frobnicate"])[0] == 2
    assert run([])[0] == 2


@pytest.mark.parametrize(
    "text,line",
    [
        ("ring 3 32003\nideal a\nx0 +\nend\n", 3),
        ("ring 3 32003\nideal a\nx0 + x1^2\nend\n", 3),
        ("ring 3 32003\nideal a\nx0\n", 2),
        ("ideal a\nx0\nend\n", 1),
        ("ring 3 32003\nideal a\nx0\nend\nideal a\nx1\nend\n", 5),
        ("ring 3 32003\narrangement b\nsubspace x0; 2*x0\nend\n", 3),
        ("ring 3 12\n", 1),
    ],
)
def test_parse_errors_name_line(text, line):
    with pytest.raises(DocumentError) as info:
        parse_document(text, "f.ring")
    assert f"f.ring:{line}:" in str(info.value)


def test_campaign_smoke(tmp_path):
    code, out = run(["campaign", "thm-prod", "--trials", "5", "--seed", "1", "--n", "2", "--replay-dir", str(tmp_path)])
    assert code == 0
    trial_lines = [l for l in out.splitlines() if l.startswith("trial=") and "verdict=rejected" not in l]
    assert len(trial_lines) == 5
    assert all("verdict=pass" in l for l in trial_lines)
    assert "status=PASS" in out
    assert list(tmp_path.iterdir()) == []


def test_campaign_output_is_stable():
    argv = ["campaign", "lines", "--trials", "3", "--seed", "4"]
    assert run(argv) == run(argv)


def test_module_entry_point(doc_path):
    proc = subprocess.run([sys.executable, "-m", "cmreg", "reg", doc_path, "line"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("regularity = 1")
    proc = subprocess.run([sys.executable, "-m", "cmreg", "reg", "nowhere.ring", "x"], capture_output=True, text=True)
    assert proc.returncode == 2 and "nowhere.ring" in proc.stderr
