//! Unitarity of R̆(θ, φ) and the Yang-Baxter residual for a few spectral
//! parameters on the unit circle.

use std::f64::consts::PI;

use ybsys::yangbaxter::{unitarity_residual, ybe_residual, RParams, SpectralParam, System};

fn main() {
    let p = RParams::new(0.9, 1.3);
    for system in [System::TwoQubit, System::ThreeQubit] {
        println!("{system:?}: |R^dag R - I|_F = {:.3e}", unitarity_residual(system, p));
    }
    println!("\n    arg x     arg y    4x4 YBE    8x8 YBE");
    for (a, b) in [(0.0, 0.0), (PI / 6.0, PI / 8.0), (0.4, -1.1), (2.0, 0.3)] {
        let (x, y) = (SpectralParam::from_arg(a), SpectralParam::from_arg(b));
        let r2 = ybe_residual(System::TwoQubit, x, y, 0.5).expect("regular point");
        let r3 = ybe_residual(System::ThreeQubit, x, y, 0.5).expect("regular point");
        println!("{a:>9.4} {b:>9.4} {r2:>10.3e} {r3:>10.3e}");
    }
}
