//! Certify the graph of lines of R(4,16) as strongly regular.

use prect::construct::build_subplane_rect;
use prect::linegraph::{build_line_graph, certify_srg};

fn main() {
    let model = build_subplane_rect(2, 2, 2).unwrap();
    let (m, n) = (model.order.m, model.order.n);
    let g = build_line_graph(&model).unwrap();
    let cert = certify_srg(&g, m, n).unwrap();
    println!("(nu, r, lambda, mu) = ({}, {}, {}, {})", cert.nu, cert.r, cert.lambda, cert.mu);
    println!(
        "eigenvalues {} ^1, {} ^{}, {} ^{}",
        cert.tau0, cert.tau1, cert.mult1, cert.tau2, cert.mult2
    );
    for v in &cert.verdicts {
        println!("  {:<20} {}", v.check, if v.passed { "ok" } else { "FAILED" });
    }

    // one missing edge is caught with a pair witness
    let (u, w, _) = g.edges().next().unwrap();
    let broken = certify_srg(&g.without_edge(u, w), m, n).unwrap();
    println!("after removing {u}-{w}: valid = {}, witness {:?}", broken.is_valid(), broken.first_witness());
}
