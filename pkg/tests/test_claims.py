import textwrap

import pytest

from braidkit.claims import (
    OPS,
    load_corpus,
    resolve_group,
    resolve_presentation,
    run_corpus,
)
from braidkit.errors import InvalidInputError


def write_corpus(tmp_path, text):
    path = tmp_path / "corpus.yaml"
    path.write_text(textwrap.dedent(text), encoding="utf-8")
    return str(path)


PASSING_CLAIM = """\
    id: paper.gam3closed.1.g1n3
    description: abelianization of the genus-1 three-strand group
    command:
      op: abelianize
      args: {surface: closed-orientable, genus: 1, strands: 3}
    expect: {free_rank: 2, torsion: [2]}
    anchor: {location: "Theorem gam3closed(1)", quote: "Z^{2g} + Z_2 if n >= 2"}
    provenance: PAPER
"""


def test_single_claim_passes(tmp_path):
    report = run_corpus(write_corpus(tmp_path, PASSING_CLAIM))
    assert report.counts == {"pass": 1, "fail": 0, "error": 0}
    assert report.passed


def test_failing_claim_reports_actual_value(tmp_path):
    text = PASSING_CLAIM.replace("torsion: [2]", "torsion: [3]")
    report = run_corpus(write_corpus(tmp_path, text))
    assert report.counts["fail"] == 1
    outcome = report.outcomes[0]
    assert outcome.actual == {"free_rank": 2, "torsion": [2]}
    assert not report.passed


def test_empty_corpus(tmp_path):
    report = run_corpus(write_corpus(tmp_path, ""))
    assert report.counts == {"pass": 0, "fail": 0, "error": 0}
    assert report.passed


def test_runner_continues_past_failures(tmp_path):
    text = (
        PASSING_CLAIM.replace("torsion: [2]", "torsion: [7]")
        + "---\n"
        + PASSING_CLAIM.replace("paper.gam3closed.1.g1n3", "paper.gam3closed.1.again")
    )
    report = run_corpus(write_corpus(tmp_path, text))
    assert [o.status for o in report.outcomes] == ["fail", "pass"]


def test_erroring_claim_is_contained(tmp_path):
    text = PASSING_CLAIM.replace("strands: 3", "strands: -1") + "---\n" + PASSING_CLAIM.replace(
        "paper.gam3closed.1.g1n3", "paper.ok"
    )
    report = run_corpus(write_corpus(tmp_path, text))
    assert [o.status for o in report.outcomes] == ["error", "pass"]


def test_malformed_yaml_reports_line(tmp_path):
    path = tmp_path / "bad.yaml"
    path.write_text("id: x\ncommand: {op: abelianize\n", encoding="utf-8")
    with pytest.raises(InvalidInputError) as err:
        load_corpus(str(path))
    assert "line" in str(err.value)


def test_unknown_op_is_rejected(tmp_path):
    text = PASSING_CLAIM.replace("op: abelianize", "op: frobnicate")
    with pytest.raises(InvalidInputError):
        load_corpus(write_corpus(tmp_path, text))


def test_paper_claim_requires_quote(tmp_path):
    text = PASSING_CLAIM.replace('quote: "Z^{2g} + Z_2 if n >= 2"', 'quote: ""')
    with pytest.raises(InvalidInputError):
        load_corpus(write_corpus(tmp_path, text))


def test_derived_claim_needs_no_anchor(tmp_path):
    text = """\
        id: derived.count
        description: transitive census
        command:
          op: homsearch
          args: {surface: artin, strands: 4, target_sym: 3, filter: transitive}
        expect: {count: 8}
        provenance: DERIVED
        derived_oracle: brute force over all 216 generator assignments
    """
    report = run_corpus(write_corpus(tmp_path, text))
    assert report.passed


def test_run_is_deterministic(tmp_path):
    path = write_corpus(tmp_path, PASSING_CLAIM + "---\n" + PASSING_CLAIM.replace("n3", "n3b"))
    first = run_corpus(path).to_json()
    second = run_corpus(path).to_json()
    assert first == second


def test_report_table_contains_summary(tmp_path):
    report = run_corpus(write_corpus(tmp_path, PASSING_CLAIM))
    table = report.table()
    assert "1 claims: 1 passed, 0 failed, 0 errored" in table
    assert "PASS" in table


def test_shipped_corpus_is_well_formed():
    from pathlib import Path

    corpus = Path(__file__).resolve().parent.parent / "corpus" / "paper.yaml"
    records = load_corpus(str(corpus))
    assert len(records) >= 100
    assert len({r.id for r in records}) == len(records)
    for record in records:
        assert record.op in OPS
        if record.provenance == "PAPER":
            assert record.anchor is not None and record.anchor.quote
        else:
            assert record.note, f"derived record {record.id} lacks an oracle note"


# --- op registry ------------------------------------------------------------


def test_resolve_presentation_inline():
    p = resolve_presentation(
        {"presentation": {"generators": ["x"], "relators": [[1, 1]], "family": None}}
    )
    assert p.generator_count == 1


def test_resolve_presentation_unknown_family():
    with pytest.raises(InvalidInputError):
        resolve_presentation({"surface": "moebius"})


def test_resolve_group_forms():
    literal = resolve_group({"free_rank": 1, "torsion": [2]})
    assert literal.free_rank == 1
    via_lcs = resolve_group(
        {"lcs": {"surface": "closed-orientable", "genus": 1, "strands": 3, "layer": 2}}
    )
    assert via_lcs.to_json() == {"free_rank": 0, "torsion": [3]}
    via_ab = resolve_group(
        {"abelianization": {"surface": "artin", "strands": 5}}
    )
    assert via_ab.to_json() == {"free_rank": 1, "torsion": []}


def test_epi_op():
    assert OPS["epi"](
        {"from": {"free_rank": 0, "torsion": [4]}, "to": {"free_rank": 0, "torsion": [2]}}
    )
    assert not OPS["epi"](
        {"from": {"free_rank": 0, "torsion": [6]}, "to": {"free_rank": 0, "torsion": [4]}}
    )


def test_verify_and_image_order_ops():
    out = OPS["verify-hom"]({"builtin": "imprimitive-s8"})
    assert out == {"ok": True}
    order = OPS["image-order"]({"builtin": "wreath-cycle", "block_count": 3, "generator": "sigma"})
    assert order == 6


def test_classify_op_reports_block():
    out = OPS["classify-hom"]({"builtin": "imprimitive-s8"})
    assert out["transitive"] and not out["primitive"]
    assert out["block"] == [1, 2, 3, 4]
    assert out["image_order"] == 16


def test_symmetric_lcs_op():
    out = OPS["symmetric-lcs"]({"n": 4})
    assert out["orders"] == [24, 12, 12]
    assert out["terminal_abelianization"] == {"free_rank": 0, "torsion": [3]}


def test_dicyclic_quotient_op():
    out = OPS["dicyclic-central-quotient"]({"n": 4})
    assert out == {"order": 8, "dihedral": True}
