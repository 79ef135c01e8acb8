//! Spectrum of the driven Hamiltonian at θ = π/3, the tabulated eigenstates,
//! and the measured ladder algebra.

use std::f64::consts::FRAC_PI_3;

use ybsys::dynamics::{spectrum, su2_report, DriveParams};

fn main() -> ybsys::Result<()> {
    let d = DriveParams::unit(FRAC_PI_3, 0.4);
    let s = spectrum(&d)?;
    println!("eigenvalues: {:?}", s.eigenvalues.iter().map(|l| format!("{l:+.6}")).collect::<Vec<_>>());
    println!("degeneracy pattern (ascending): {:?}", s.degeneracy_pattern);
    for f in &s.fixtures {
        println!(
            "  chi{}  level {:<5?} E = {:+.4}  |H chi - E chi| = {:.2e}  (printed E = {:+.4}: {:.2e})",
            f.index, f.level, f.energy, f.residual, f.printed_energy, f.printed_residual
        );
    }
    let su2 = su2_report(&d)?;
    println!("[I3, I+] = {:.6} I+", su2.ladder_scale);
    println!("|H - (B+ I+ + B- I- + B3 I3)|_F = {:.3e}", su2.decomposition);
    println!("|I3^2 - 1/4|_F global {:.4}, on span(chi5..chi8) {:.4}", su2.i3_squared_global, su2.i3_squared_on_span);
    Ok(())
}
