//! Runs the θ sweep on the rayon pool and writes the CSV table to stdout.

use ybsys::cli::{run_sweep, sweep_csv, Quantity, SweepArgs, SweepSpec};

fn main() {
    let args = SweepArgs {
        theta_min: 0.0,
        theta_max: std::f64::consts::PI,
        steps: 13,
        phi: 0.0,
        input: "000".into(),
        quantities: vec![Quantity::Tangle, Quantity::PairConcurrence, Quantity::OneVsRestSq],
        berry_steps: 1000,
    };
    let spec = SweepSpec::new(&args, false).expect("valid sweep");
    let rows = run_sweep(&spec).expect("sweep runs");
    print!("{}", sweep_csv(&rows));
}
