import copy
from pathlib import Path

import pytest
import yaml

from application.algebra_core import Algebra, Generator, GeneratorTable, RewriteRule, check_local_confluence
from application.algebra_file import dump_definition, load_definition, read_definition, write_definition
from application.errors import DefinitionFileError
from application.hopf_structures import HOPF_CHECKS
from application.quantum_algebras import build_uq_sl2

SL2_FILE = Path(__file__).resolve().parent.parent / "data" / "uq_sl2.yaml"


@pytest.fixture
def sl2_data():
    with open(SL2_FILE) as f:
        return yaml.safe_load(f)


def test_bundled_file_is_the_built_algebra(sl2_data):
    built = build_uq_sl2(1, 2)
    assert sl2_data == dump_definition(built.algebra, built)


def test_loaded_algebra_is_a_hopf_algebra():
    algebra, hopf = read_definition(SL2_FILE)
    assert algebra.order == 2
    built = build_uq_sl2(1, 2)
    for b, a in (('H', 'E'), ('F', 'E'), ('F', 'H')):
        assert algebra.rule_rhs(b, a).named_terms() == built.algebra.rule_rhs(b, a).named_terms()
    assert check_local_confluence(algebra).passed
    for name, check in HOPF_CHECKS.items():
        assert check(hopf).passed, name


def test_write_then_read(tmp_path, kxi_one):
    path = tmp_path / "k_xi.yaml"
    text = write_definition(path, kxi_one.algebra, kxi_one)
    assert path.read_text() == text
    algebra, hopf = read_definition(path)
    assert dump_definition(algebra, hopf) == dump_definition(kxi_one.algebra, kxi_one)


def test_odd_generators_survive_the_file():
    table = GeneratorTable([Generator('psi', 1, 0), Generator('chi', 1, 1)])
    algebra = Algebra("clifford", table, 1, [RewriteRule(('chi', 'psi'), tail={(): 1})])
    data = dump_definition(algebra)
    assert [g["parity"] for g in data["generators"]] == ["odd", "odd"]
    loaded, hopf = load_definition(data)
    assert hopf is None
    assert (loaded.gen('psi') * loaded.gen('psi')).is_zero()
    assert dump_definition(loaded) == data


def test_broken_jacobi_identity_is_found(sl2_data):
    sl2_data["rules"][0]["tail"][0]["coefficient"] = ['3']
    algebra, _ = load_definition(sl2_data)
    result = check_local_confluence(algebra)
    assert not result.passed
    assert "F·H·E" in result.data["failures"]


def mutate(data, path, value):
    data = copy.deepcopy(data)
    target = data
    for key in path[:-1]:
        target = target[key]
    if value is None:
        del target[path[-1]]
    else:
        target[path[-1]] = value
    return data


@pytest.mark.parametrize("path, value", [
    (("rules",), None),
    (("generators", 0, "parity"), "neutral"),
    (("order",), -1),
    (("rules", 0, "lhs"), ["E", "H"]),
    (("rules", 0, "lhs"), ["H", "X"]),
    (("rules", 0, "tail", 0, "coefficient"), ["1.5"]),
    (("coproduct", "E", 0, "words"), [["H", "E"], []]),
    (("coproduct", "X"), [{"words": [[], ["E"]], "coefficient": ["1"]}]),
    (("colour",), "blue"),
])
def test_invalid_definitions(sl2_data, path, value):
    with pytest.raises(DefinitionFileError):
        load_definition(mutate(sl2_data, path, value))


def test_unreadable_files(tmp_path):
    listing = tmp_path / "list.yaml"
    listing.write_text("- a\n- b\n")
    with pytest.raises(DefinitionFileError):
        read_definition(listing)
    with pytest.raises(DefinitionFileError):
        read_definition(tmp_path / "missing.yaml")
