import pytest

from bench.exceptions import ConfigParseError
from bench.suite import ExperimentSuite, MethodEntry, apply_overrides, load_suite, suite_from_mapping
from spectral.problems import SpectrumKind
from spectral.solver import MethodId


class TestLoadSuite:
    def test_parse(self, suite_file):
        suite = load_suite(suite_file)
        assert suite.kind is SpectrumKind.SET1
        assert suite.kappas == [100.0, 1000.0]
        assert suite.epsilons == [1e-6]
        assert [entry.name for entry in suite.methods] == ["BB1", "FAMILY_FIXED(gamma=0.5)"]
        assert (suite.instances, suite.seed, suite.max_iter) == (2, 3, 20000)

    def test_invalid_toml(self, tmp_path):
        path = tmp_path / "broken.toml"
        path.write_text("[problem\nkind = ")
        with pytest.raises(ConfigParseError):
            load_suite(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            load_suite(tmp_path / "missing.toml")

    @pytest.mark.parametrize(
        "data",
        [
            {"problem": {"kind": "set1", "n": 10, "kappa": 100.0, "size": 3}, "methods": [{"id": "BB1"}]},
            {"problem": {"kind": "set9", "n": 10, "kappa": 100.0}, "methods": [{"id": "BB1"}]},
            {"problem": {"kind": "set1", "n": 10}, "methods": [{"id": "BB1"}]},
            {"problem": {"kind": "set1", "n": 10, "kappa": 100.0}, "methods": [{"id": "NEWTON"}]},
            {"problem": {"kind": "set1", "n": 10, "kappa": 100.0}, "methods": [{"id": "ATC1", "m": 0}]},
            {"problem": {"kind": "set1", "n": 10, "kappa": 100.0}, "methods": []},
            {"problem": {"kind": "set1", "n": 10, "kappa": 1.0}, "methods": [{"id": "BB1"}]},
            {"problem": {"kind": "set1", "n": 10, "kappa": 100.0}, "run": {"epsilon": 0}, "methods": [{"id": "BB1"}]},
            {"problem": {"kind": "set1", "n": 10, "kappa": 100.0}, "methods": [{"id": "BB1"}, {"id": "bb1"}]},
            {"methods": [{"id": "BB1"}]},
        ],
    )
    def test_invalid_suites(self, data):
        with pytest.raises(ConfigParseError):
            suite_from_mapping(data)


class TestJobs:
    def test_expansion(self, small_suite):
        jobs = small_suite.jobs()
        assert len(jobs) == 1 * 2 * 2 * 2
        assert [job.sort_key for job in jobs] == sorted(job.sort_key for job in jobs)
        assert {job.seed for job in jobs} == {5, 6}
        assert jobs[0].problem_id == "set1-n20-k100-i0"
        assert jobs[0].start == "ones"

    def test_run_config(self, small_suite):
        job = next(job for job in small_suite.jobs() if job.entry.method is MethodId.ATC1)
        config = job.run_config()
        assert (config.m, config.seed, config.epsilon) == (30, job.seed, job.epsilon)

    def test_nonrand_starts_uniform(self):
        suite = ExperimentSuite(
            kind=SpectrumKind.NONRAND, n=10, kappas=[100.0], epsilons=[1e-6], methods=[MethodEntry(method=MethodId.BB1)]
        )
        assert suite.start_rule == "uniform"
        assert suite.jobs()[0].problem_id == "nonrand-n10-k100-i0"


class TestOverrides:
    def test_flags_only(self):
        suite = apply_overrides(None, kind="2", methods=["atc1"], m=5)
        assert suite.kind is SpectrumKind.SET2
        assert (suite.n, suite.kappas, suite.epsilons) == (100, [1e4], [1e-6])
        assert suite.methods == [MethodEntry(method=MethodId.ATC1, m=5)]

    def test_replace_fields(self, small_suite):
        suite = apply_overrides(small_suite, n=30, kappas=[1e3], seed=9, instances=1)
        assert (suite.n, suite.kappas, suite.seed, suite.instances) == (30, [1e3], 9, 1)
        assert suite.methods == small_suite.methods

    def test_m_needs_method(self, small_suite):
        with pytest.raises(ConfigParseError):
            apply_overrides(small_suite, gamma=0.5)

    def test_no_method(self):
        with pytest.raises(ConfigParseError):
            apply_overrides(None, kind="set1")

    def test_unknown_kind(self, small_suite):
        with pytest.raises(ConfigParseError):
            apply_overrides(small_suite, kind="set8")
