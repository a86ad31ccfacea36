import json

import pytest

from arquiver import ar_quiver, verify
from arquiver.ar_quiver import ARQuiver
from arquiver.verify import check_catalog, run_suite


def test_catalog_contents():
    catalog = check_catalog()
    ids = {entry["check_id"] for entry in catalog}
    assert "mesh_additivity" in ids
    assert "surj_free_multiplicity" in ids
    assert "non_adapted_word" in ids
    for entry in catalog:
        assert entry["suite"] in verify.SUITES
        assert entry["description"]


def test_run_suite_rank4_all_pass():
    report = run_suite(4)
    assert report.ok
    ranks = {r.rank for r in report.records if r.rank is not None}
    assert ranks == {4}
    orientations = {
        r.orientation for r in report.records if r.orientation is not None
    }
    assert len(orientations) == 8


def test_run_suite_is_deterministic_and_parallel_safe():
    first = run_suite(4, suites={"structure"})
    second = run_suite(4, suites={"structure"})
    strip = lambda rep: [
        (r.check_id, r.rank, r.orientation, r.status) for r in rep.records
    ]
    assert strip(first) == strip(second)
    parallel = run_suite(4, suites={"structure"}, parallelism=2)
    assert strip(parallel) == strip(first)


def test_run_suite_validates_arguments():
    with pytest.raises(ValueError):
        run_suite(3)
    with pytest.raises(ValueError):
        run_suite(4, suites={"nonsense"})


def test_report_json_schema():
    report = run_suite(4, suites={"orders"})
    payload = json.loads(report.to_json())
    assert all(
        set(rec) >= {"check_id", "suite", "status", "counterexample", "elapsed"}
        for rec in payload
    )


def test_injected_fault_is_caught(example1_ar):
    # flip one arrow: the mesh at its former target loses a summand
    target_arrow = ((1, -2), (2, -1))
    assert target_arrow in example1_ar.arrows
    tampered_arrows = (set(example1_ar.arrows) - {target_arrow}) | {
        ((2, -1), (1, -2))
    }
    broken = ARQuiver(
        example1_ar.quiver,
        example1_ar.xi,
        example1_ar.tau_word,
        dict(example1_ar.root_at),
        frozenset(tampered_arrows),
        example1_ar.m,
    )
    message = verify.check_mesh_additivity(broken)
    assert message is not None and "(2,-1)" in message.replace(" ", "")
    assert verify.check_arrow_rule(broken) is not None
    # the pristine quiver passes both
    assert verify.check_mesh_additivity(example1_ar) is None
    assert verify.check_arrow_rule(example1_ar) is None


def test_every_structure_check_passes_examplewise(example1_ar):
    for check_id, (suite, fn) in verify.ORIENTATION_CHECKS.items():
        if suite != "structure":
            continue
        assert fn(example1_ar) is None, check_id
