"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import pytest

from harmquat import acceptance

CRITERIA = [
    ("dims", acceptance.dimension_table),
    ("axial-dim", acceptance.axial_dimension),
    ("identity", acceptance.coordinate_identity),
    ("decompose", acceptance.decomposition_roundtrip),
    ("star", acceptance.star_construction),
    ("density", acceptance.density_certificates),
    ("characters", acceptance.character_reconstruction),
    ("module", acceptance.module_property),
    ("agreement", acceptance.dirac_agreement),
]


@pytest.mark.parametrize("name,check", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(name, check, capsys):
    result = check()
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.failures[:5]
