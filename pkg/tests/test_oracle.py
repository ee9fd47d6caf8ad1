import pytest

from rees_ag.errors import InputError
from rees_ag.oracle import (
    FAIL,
    IDENTITIES,
    PASS,
    SKIP,
    Instance,
    check_instance,
    example_family,
    monomial_sweep,
    near_monomial_sweep,
    run_suite,
    summarize,
    verify_identity,
)


XYZ = ("x", "y", "z")


def test_lemma_mu_q():
    report = verify_identity("lemma_muQ", Instance("(x^2, y^2, z^2)", XYZ, ("x^2", "y^2", "z^2")))
    assert report.status == PASS
    assert report.computed == 9
    assert report.expected == 9
    assert report.provenance


def test_prop_mu_mq_i2():
    report = verify_identity("prop_muMQI2", Instance("ex", XYZ, ("x", "y^2", "z^2"), split_i=1))
    assert report.passed
    assert report.computed == 6


def test_duality():
    assert verify_identity("duality", Instance("ex", XYZ, ("x", "y^2", "z^5"))).passed


def test_hypothesis_failures_are_skipped():
    report = verify_identity("lemma_muQ", Instance("ex", XYZ, ("x", "y^2", "z^2")))
    assert report.status == SKIP
    assert "m^2" in report.reason
    wrong_split = verify_identity("setting_type", Instance("ex", XYZ, ("x", "y", "z^2"), split_i=1))
    assert wrong_split.status == SKIP
    maximal = verify_identity("length_step", Instance("m", XYZ, XYZ))
    assert maximal.status == SKIP


def test_unknown_identity():
    with pytest.raises(InputError):
        verify_identity("no_such_identity", Instance("ex", XYZ, ("x", "y^2", "z^2")))


def test_integrally_closed_socle():
    assert verify_identity("integrally_closed_socle", Instance("ex", XYZ, ("x", "y", "z^4"))).passed
    assert verify_identity("integrally_closed_socle", Instance("ex", XYZ, ("x", "y^2", "z^4"))).status == SKIP


def test_example_family_passes_everything():
    reports = run_suite(example_family(2, 4))
    counts = summarize(reports)
    assert counts[FAIL] == 0
    assert counts[PASS] > 0
    assert counts["total"] == 3 * len(IDENTITIES)
    passed = {report.name for report in reports if report.passed}
    assert {"reduction", "delta_socle", "setting_type", "setting_colon", "prop_muMQI2"} <= passed


def test_monomial_sweep_duality_and_reduction():
    instances = monomial_sweep()
    assert len(instances) == 26
    reports = run_suite(instances, names=["duality", "reduction", "length_step"])
    assert summarize(reports)[FAIL] == 0
    assert sum(1 for report in reports if report.name == "duality" and report.passed) == 26


def test_near_monomial_sweep_has_no_failures():
    reports = run_suite(near_monomial_sweep())
    counts = summarize(reports)
    assert counts[FAIL] == 0
    assert counts[PASS] >= 60


def test_empty_family():
    assert run_suite([]) == []
    assert summarize([]) == {PASS: 0, FAIL: 0, SKIP: 0, "total": 0}


def test_parallel_suite_preserves_order():
    instances = example_family(2, 3)
    names = ["duality", "length_step"]
    serial = run_suite(instances, names=names)
    parallel = run_suite(instances, names=names, jobs=2)
    assert [r.to_dict() for r in parallel] == [r.to_dict() for r in serial]


def test_check_instance_selects_names():
    reports = check_instance(Instance("ex", XYZ, ("x", "y^2", "z^3"), split_i=1), ["setting_mu_m_mod_I", "setting_mu_I_plus_m2"])
    assert [r.name for r in reports] == ["setting_mu_m_mod_I", "setting_mu_I_plus_m2"]
    assert all(r.passed for r in reports)
    assert reports[0].computed == 2
    assert reports[1].computed == 4


def test_monomial_sweep_generator_counts_for_q_in_m_squared():
    reports = run_suite(monomial_sweep(), names=["lemma_muQ", "mu_I_q_in_m2"])
    counts = summarize(reports)
    assert counts[FAIL] == 0
    # exponents from {2, 3} in each of three variables
    assert counts[PASS] == 2 * 8
    assert all(report.computed == 9 for report in reports if report.name == "lemma_muQ" and report.passed)
    assert all(report.computed == 4 for report in reports if report.name == "mu_I_q_in_m2" and report.passed)
