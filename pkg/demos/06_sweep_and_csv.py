"""Deterministic sweeps into CSV, the format the plotting frontend reads."""

from satlab.cli import ExperimentSpec, run_sweep, write_rows

spec = ExperimentSpec(
    construction="greedy",
    pattern="K3",
    n_list=[64, 128, 256],
    p_list=[0.5],
    seed_list=[1, 2, 3],
    out_path="/tmp/demo_sweep.csv",
)
rows = run_sweep(spec)
write_rows(rows, spec.out_path)
print(open(spec.out_path).read())
