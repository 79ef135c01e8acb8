//! Builds the braid generators and prints the relation residuals, plus the
//! entries where the tabulated 4×4 generator disagrees with the built one.

use ybsys::braid::{build_braidset, check_es2_relations, compare_with_printed};

fn main() {
    let phi = 0.7;
    let bs = build_braidset(phi);
    let report = check_es2_relations(&bs, 1e-10);
    println!("phi = {phi}, alpha = {}", report.alpha);
    for c in &report.checks {
        let gate = if c.asserted { "asserted" } else { "reported" };
        println!("  {:<28} {:>10.3e}  {gate:<8}  {}", c.name, c.residual, if c.pass { "ok" } else { "fails" });
    }
    let printed = compare_with_printed(&bs, 1e-12);
    for m in &printed.m4_mismatches {
        println!("  printed M differs at ({}, {}): built {:?}, printed {:?}", m.row, m.col, m.built, m.printed);
    }
    println!("  printed 8x8 generator mismatches: {}", printed.mcal_mismatches.len());
}
