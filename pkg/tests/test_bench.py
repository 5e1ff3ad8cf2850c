import pytest

from src.bench import SUITES, BenchOptions, run_bench
from src.errors import BadParameters
from src.estimate import COLUMNS
from src.utils.exporter import write_records


class TestSuites:
    def test_registered_suites(self):
        assert sorted(SUITES) == ["lowerbound-families", "query-g1", "query-mst",
                                  "stream-mst-sweep", "stream-tsp-sandwich"]

    def test_unknown_suite(self):
        with pytest.raises(BadParameters, match="unknown suite"):
            run_bench("query-g2", [0])

    def test_lowerbound_closed_forms(self):
        records = run_bench("lowerbound-families", [0, 1])
        assert len(records) == 10
        for record in records:
            assert record.algorithm == "exact-mst"
            assert record.branch == "closed-form"
            assert record.ratio == 1.0

    def test_seeds_deduplicated_and_sorted(self):
        records = run_bench("lowerbound-families", [3, 1, 1, 2])
        assert [r.seed for r in records] == [1] * 5 + [2] * 5 + [3] * 5

    def test_no_seeds(self):
        assert run_bench("lowerbound-families", []) == []
        assert write_records([]).strip() == ",".join(COLUMNS)

    def test_query_g1_rows(self):
        records = run_bench("query-g1", [0, 1], BenchOptions(sizes=(6,)))
        assert [r.n for r in records] == [6, 6]
        for record in records:
            assert record.algorithm == "g1-connected"
            assert record.profile == "desk"
            assert record.ratio >= 1.0
            assert record.distinct_queries > 0

    def test_stream_mst_sweep_rows(self):
        records = run_bench("stream-mst-sweep", [0], BenchOptions(sizes=(16,)))
        assert [r.params["alpha"] for r in records] == [2, 4, 8, 16]
        assert all(r.ratio >= 1.0 and r.passes == 1 for r in records)

    def test_without_exact(self):
        records = run_bench("stream-tsp-sandwich", [2], BenchOptions(sizes=(7,), exact=False))
        assert records[0].exact is None
        assert records[0].ratio is None

    @pytest.mark.slow
    def test_workers_match_serial(self):
        serial = run_bench("lowerbound-families", range(4))
        pooled = run_bench("lowerbound-families", range(4), workers=2)
        assert [(r.instance, r.value) for r in serial] == [(r.instance, r.value) for r in pooled]
