"""Python smoke tests for the endotriv extension module."""

import json
import os

import pytest

endotriv = pytest.importorskip("endotriv")

FIXTURES = os.environ.get("ENDOTRIV_FIXTURES", "fixtures")


def fixture(name):
    with open(os.path.join(FIXTURES, name)) as fh:
        return fh.read()


def test_field_arithmetic():
    f4 = endotriv.Field.get(2, 2)
    assert f4.q == 4
    assert f4.modulus() == [1, 1, 1]
    w = 2  # the class of x
    assert f4.mul(w, f4.mul(w, w)) == 1  # w^3 = 1


def test_strip_and_omega():
    g = endotriv.Group.cyclic(9)
    f3 = endotriv.Field.get(3)
    reg = endotriv.Module.regular(g, f3)
    stripped, free_rank = endotriv.strip(reg)
    assert stripped.dim == 0
    assert free_rank == 1
    om = endotriv.omega(endotriv.Module.trivial(g, f3), 1)
    assert om.dim == 8
    assert endotriv.omega(om, 1).dim == 1
    order, dims = endotriv.omega_order(g, f3)
    assert order == 2 and dims == [8, 1]


def test_q8_tgroup_with_exotic_module():
    group = endotriv.Group.from_json(fixture("q8.json"))
    exotic = endotriv.Module.from_json(fixture("q8_exotic.json"))
    f4 = endotriv.Field.get(2, 2)
    assert endotriv.is_endotrivial(exotic, 2)
    report = endotriv.t_group(group, f4, [exotic])
    assert report["value"]["canonical"] == "Z/2 ⊕ Z/4"
    assert report["completeness"] == "Verified"
    assert report["omega"]["order"] == 4
    assert report["omega"]["syzygy_dims"] == [7, 9, 7, 1]


def test_sl2z_amalgam():
    result = endotriv.amalgam(fixture("sl2z.json"))
    assert result["T"]["canonical"] == "Z/2"
    assert result["exactness_audit"] is True
    over_f4 = endotriv.amalgam(fixture("sl2z.json"), (2, 2))
    assert over_f4["T"]["canonical"] == "Z/6"


def test_hnn_extension_report():
    result = endotriv.hnn(fixture("c3_x_z.json"))
    ext = result["extension"]
    assert ext["sub"]["canonical"] == "Z/8"
    assert ext["quotient"]["canonical"] == "Z/2"
    assert ext["resolved"]["canonical"] == "Z/2 ⊕ Z/8"


def test_components_and_inflation():
    assert endotriv.components(fixture("c3_free_c3.json"))["count"] == 2
    result = endotriv.inflation_map(fixture("q8_inflation.json"))
    assert result["T_quotient"]["canonical"] == "Z/4"
    assert result["T_G"]["canonical"] == "Z/2 ⊕ Z/2"
    assert result["kernel"]["canonical"] == "Z/2"


def test_stable_iso_and_ext_hat():
    g = endotriv.Group.cyclic(3)
    f3 = endotriv.Field.get(3)
    k = endotriv.Module.trivial(g, f3)
    om = endotriv.omega(k, 1)
    co = endotriv.omega(k, -1)
    assert endotriv.stable_iso(om.tensor(co), k) == "Iso"
    assert endotriv.stable_iso(om, k) == "NotIso"
    dims = endotriv.ext_hat(g, f3, -4, 4)
    assert all(dims[i] == 1 for i in range(-4, 5))


def test_snf():
    d, u, v = endotriv.snf([[2, 0], [0, 3]])
    assert d == [["1", "0"], ["0", "6"]]


def test_validation_error():
    broken = json.loads(fixture("q8_exotic.json"))
    broken["matrices"]["j"][1][0] = [1, 1]
    with pytest.raises(endotriv.ValidationError):
        endotriv.Module.from_json(json.dumps(broken))
