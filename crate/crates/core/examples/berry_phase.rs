//! Berry phases of the φ loop from the tabulated states and from the
//! Wilson loop over each degenerate level.

use ybsys::berry::{berry_report, Method};
use ybsys::dynamics::Level;

fn main() -> ybsys::Result<()> {
    for theta in [0.5, 1.0, 2.5] {
        println!("theta = {theta}");
        for level in [Level::Minus, Level::Plus, Level::Zero] {
            for (method, steps) in [(Method::Analytic, 10_000), (Method::Wilson, 2000)] {
                let r = berry_report(theta, level, method, steps)?;
                println!(
                    "  {:<5?} {:<8?} phases {:?}  closed form {:?}",
                    level,
                    method,
                    r.phases.iter().map(|p| format!("{p:+.6}")).collect::<Vec<_>>(),
                    r.closed_form.iter().map(|p| format!("{p:+.6}")).collect::<Vec<_>>()
                );
            }
        }
    }
    Ok(())
}
