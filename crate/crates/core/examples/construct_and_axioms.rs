//! Build L_2^2 and R(3,9), then check the rectangle axioms.

use prect::construct::{build_l2k, build_subplane_rect};
use prect::incidence::{check_axioms, elementary_counts, A6Mode};

fn main() {
    for model in [build_l2k(2).unwrap(), build_subplane_rect(3, 1, 2).unwrap()] {
        let rep = check_axioms(&model.structure, A6Mode::Full);
        println!(
            "{:?}: order ({}, {}), {} points, {} lines",
            model.family,
            model.order.m,
            model.order.n,
            model.structure.num_points(),
            model.structure.num_lines()
        );
        for v in &rep.verdicts {
            println!("  {} {}", v.axiom, if v.passed { "ok" } else { "FAILED" });
        }
        println!("  A6 quadruples checked: {}", rep.a6.checked);
        let counts = elementary_counts(&model.structure).unwrap();
        println!("  counts agree with (m, n): {}", counts.all_passed());
        for (line, label) in &model.special {
            println!("  special line {line}: {label:?}");
        }
    }
}
