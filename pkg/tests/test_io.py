import json
from pathlib import Path

import pytest

from twistk.core.errors import FormatError, GroupTooLarge, InvalidCochain, ValidationError
from twistk.core.settings import Settings
from twistk.groups.builders import cyclic, symmetric
from twistk.io.codecs import (
    cochain_from_json,
    complex_from_json,
    elements_from_json,
    group_from_json,
    group_to_json,
    rep_from_json,
)
from twistk.io.workspace import Workspace, fixture_names, read_fixture

from .samples import RP2_GENERATOR_EDGES


def test_group_documents() -> None:
    """Tables, permutation generators and builtins all decode to groups."""

    from_table = group_from_json({"mult": [[0, 1], [1, 0]], "labels": ["e", "a"]})
    from_perms = group_from_json({"generators": [[1, 0, 2], [1, 2, 0]]})

    assert from_table.labels == ("e", "a")
    assert from_perms.order == 6
    assert group_from_json({"builtin": "d4"}).order == 8
    assert group_from_json(group_to_json(symmetric(3))).mult == symmetric(3).mult


@pytest.mark.parametrize(
    ("data", "message"),
    [
        pytest.param({}, "needs one of", id="empty"),
        pytest.param({"mult": [[0, 1], [1, "x"]]}, "list of integers", id="bad-entry"),
        pytest.param({"mult": [[0, 1], [1, 0]], "order": 3}, "Declared order", id="order"),
        pytest.param([1, 2], "JSON object", id="not-an-object"),
    ],
)
def test_malformed_group_documents(data, message: str) -> None:
    with pytest.raises(FormatError, match=message):
        group_from_json(data)


def test_group_order_cap_applies_to_documents() -> None:
    with pytest.raises(GroupTooLarge):
        group_from_json({"mult": [list(row) for row in cyclic(6).mult]}, max_order=5)


def test_elements_by_label_or_index() -> None:
    s3 = symmetric(3)

    assert elements_from_json(s3, ["()", 1, "2"]) == [0, 1, 2]
    assert elements_from_json(s3, "(0 1), (0 1 2)") == [s3.index_of("(0 1)"), s3.index_of("(0 1 2)")]
    with pytest.raises(FormatError, match="Unknown group element"):
        elements_from_json(s3, ["(0 3)"])
    with pytest.raises(FormatError, match="outside"):
        elements_from_json(s3, [6])


def test_complex_and_cochain_documents() -> None:
    square = complex_from_json({"vertices": 4, "facets": [[0, 1], [1, 2], [2, 3], [0, 3]]})
    z2 = cyclic(2)

    cochain = cochain_from_json({"edges": {"0-1": 1, "3,0": 1}, "default": 0}, square, z2)

    assert square.edges == ((0, 1), (0, 3), (1, 2), (2, 3))
    assert cochain(0, 1) == 1
    assert cochain(0, 3) == 1
    assert cochain(1, 2) == 0
    with pytest.raises(FormatError, match="'i-j'"):
        cochain_from_json({"edges": {"01": 1}}, square, z2)
    with pytest.raises(InvalidCochain):
        cochain_from_json({"edges": {"0-1": 1}}, square, z2)


def test_representation_by_matrices() -> None:
    z2 = cyclic(2)

    rep = rep_from_json({"matrices": [[["1"]], [["-1"]]], "d": 1}, group=z2)

    assert rep.d == 1
    assert rep.character == (1, -1)
    with pytest.raises(FormatError, match="needs a 'group'"):
        rep_from_json({"matrices": [[["1"]], [["-1"]]]})
    with pytest.raises(FormatError, match="Declared dimension"):
        rep_from_json({"matrices": [[["1"]], [["-1"]]], "d": 2}, group=z2)


def test_bundled_fixtures_are_listed_and_readable() -> None:
    names = fixture_names()

    assert {"rp2.json", "z2z4.json", "rp2gen.json", "a3s3-circle.json"} <= set(names)
    assert all("kind" in json.loads(read_fixture(name)) for name in names)
    assert read_fixture("rp2") == read_fixture("rp2.json")
    with pytest.raises(ValidationError, match="No file or bundled fixture"):
        read_fixture("missing")


def test_workspace_shares_objects_between_documents(workspace) -> None:
    """A cocycle loaded against an extension's quotient keeps that exact group object."""

    extension = workspace.extension("z2z4.json")
    cocycle = workspace.cochain("rp2gen.json", group=extension.Q)

    assert workspace.extension("z2z4.json") is extension
    assert cocycle.group is extension.Q
    assert {edge for edge, g in zip(cocycle.complex.edges, cocycle.values) if g} == set(RP2_GENERATOR_EDGES)
    assert workspace.complex("rp2.json") is cocycle.complex


def test_workspace_rejects_mismatched_overrides(workspace) -> None:
    with pytest.raises(ValidationError, match="different group"):
        workspace.cochain("rp2gen.json", group=cyclic(3))


def test_local_files_take_precedence(tmp_path: Path) -> None:
    (tmp_path / "rp2.json").write_text(json.dumps({"builtin": "circle"}), encoding="utf-8")
    workspace = Workspace(tmp_path)

    assert len(workspace.complex("rp2.json").triangles) == 0
    assert str(tmp_path / "rp2.json") in workspace.loaded


def test_nested_references_resolve_relative_to_their_document(tmp_path: Path) -> None:
    nested = tmp_path / "data"
    nested.mkdir()
    (nested / "band.json").write_text(json.dumps({"vertices": 2, "facets": [[0, 1]]}), encoding="utf-8")
    (nested / "twist.json").write_text(
        json.dumps({"complex": "band.json", "group": {"builtin": "z2"}, "edges": {"0-1": 1}}),
        encoding="utf-8",
    )

    cochain = Workspace(tmp_path).cochain("data/twist.json")

    assert cochain.values == (1,)


def test_inline_and_invalid_documents(workspace, tmp_path: Path) -> None:
    assert workspace.group('{"builtin": "z5"}').order == 5
    assert workspace.group({"builtin": "z5"}) is workspace.group('{"builtin": "z5"}')
    with pytest.raises(FormatError, match="not valid JSON"):
        workspace.group("{builtin")
    (tmp_path / "broken.json").write_text("{", encoding="utf-8")
    with pytest.raises(FormatError, match="not valid JSON"):
        workspace.group("broken.json")


def test_workspace_settings_limit_group_orders(tmp_path: Path) -> None:
    workspace = Workspace(tmp_path, settings=Settings(max_group_order=3))

    with pytest.raises(GroupTooLarge):
        workspace.group({"mult": [list(row) for row in cyclic(4).mult]})
