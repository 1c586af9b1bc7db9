import subprocess
import sys

import pytest

from satlab.cli import (
    CSV_HEADER,
    ExperimentSpec,
    main,
    parse_pattern,
    run_sweep,
    verify_cmd,
    write_rows,
)
from satlab.constructions import Params
from satlab.embed import isomorphic, complete_multipartite, cycle
from satlab.errors import ParameterError
from satlab.graphs import Graph, write_edge_list


class TestParsePattern:
    def test_triangle(self):
        p = parse_pattern("K3")
        assert p.n == 3 and p.graph.edge_count == 3

    def test_multipartite(self):
        p = parse_pattern("M:1,1,2")
        assert p.n == 4 and p.graph.edge_count == 5

    def test_c4_is_k22(self):
        assert isomorphic(parse_pattern("C4").graph, parse_pattern("M:2,2").graph)

    def test_star_and_path(self):
        assert parse_pattern("S3").graph.edge_count == 3
        assert parse_pattern("P4").graph.edge_count == 3

    def test_file_pattern(self, tmp_path):
        path = tmp_path / "pat.el"
        write_edge_list(Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)]), str(path))
        p = parse_pattern(f"@{path}")
        assert p.graph.edge_count == 3

    @pytest.mark.parametrize("bad", ["K1", "C2", "X5", "M:", "K", "M:0,2"])
    def test_malformed(self, bad):
        with pytest.raises(ParameterError):
            parse_pattern(bad)


class TestSweep:
    def test_greedy_rows(self, tmp_path):
        spec = ExperimentSpec(
            construction="greedy",
            pattern="K3",
            n_list=[64],
            p_list=[0.5],
            seed_list=[1, 2, 3],
            out_path=str(tmp_path / "out.csv"),
        )
        rows = run_sweep(spec)
        assert len(rows) == 3
        assert all(r.verified == "true" for r in rows)

    def test_row_count_and_sorting(self, tmp_path):
        spec = ExperimentSpec(
            construction="greedy",
            pattern="K3",
            n_list=[48, 32],
            p_list=[0.5, 0.3],
            seed_list=[2, 1],
            out_path=str(tmp_path / "out.csv"),
        )
        rows = run_sweep(spec)
        assert len(rows) == 8
        keys = [(r.n, r.p, r.seed) for r in rows]
        assert keys == sorted(keys)

    def test_inapplicable_rows_tagged_and_run_continues(self, tmp_path):
        spec = ExperimentSpec(
            construction="star",
            pattern="C4",
            n_list=[48],
            p_list=[0.5],
            seed_list=[1, 2],
            out_path=str(tmp_path / "out.csv"),
        )
        rows = run_sweep(spec)
        assert len(rows) == 2
        assert all(r.verified.startswith("error:") for r in rows)

    def test_empty_seed_list_rejected(self, tmp_path):
        with pytest.raises(ParameterError):
            ExperimentSpec(
                construction="greedy",
                pattern="K3",
                n_list=[8],
                p_list=[0.5],
                seed_list=[],
                out_path=str(tmp_path / "x.csv"),
            )

    def test_schema_and_determinism(self, tmp_path):
        out1, out2 = str(tmp_path / "a.csv"), str(tmp_path / "b.csv")
        for out in (out1, out2):
            spec = ExperimentSpec(
                construction="greedy",
                pattern="C4",
                n_list=[40],
                p_list=[0.5],
                seed_list=[1, 2],
                out_path=out,
                params=Params(),
            )
            write_rows(run_sweep(spec), out)
        a = open(out1).read().splitlines()
        b = open(out2).read().splitlines()
        assert a[0] == CSV_HEADER
        strip = lambda line: line.rsplit(",", 1)[0]  # drop runtime_ms
        assert [strip(x) for x in a] == [strip(x) for x in b]


class TestVerifyCmd:
    def test_exit_codes(self, tmp_path):
        host = tmp_path / "host.el"
        sub = tmp_path / "sub.el"
        write_edge_list(Graph.complete(4), str(host))
        write_edge_list(Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)]), str(sub))
        assert verify_cmd(str(host), str(sub), "K3") == 0

        write_edge_list(Graph.complete(3), str(host))
        write_edge_list(Graph.empty(3), str(sub))
        assert verify_cmd(str(host), str(sub), "K3") == 1

        # sub not contained in host
        write_edge_list(Graph.empty(3), str(host))
        write_edge_list(Graph.from_edges(3, [(0, 1)]), str(sub))
        assert verify_cmd(str(host), str(sub), "K3") == 2


class TestMainEntry:
    def test_gen_and_props(self, tmp_path, capsys):
        out = tmp_path / "g.el"
        assert main(["gen", "--n", "12", "--p", "0.5", "--seed", "1", "--out", str(out)]) == 0
        assert main(["props", "--pattern", "C5"]) == 0
        text = capsys.readouterr().out
        assert "chromatic_number=3" in text

    def test_construct_prints_report(self, tmp_path, capsys):
        code = main(
            ["construct", "--name", "greedy", "--pattern", "K3",
             "--n", "24", "--p", "0.5", "--seed", "1"]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "edges_final=" in out and "verified=true" in out

    def test_sat_exact_cmd(self, capsys):
        assert main(["sat-exact", "--pattern", "K3", "--complete", "5"]) == 0
        assert capsys.readouterr().out.strip() == "4"
