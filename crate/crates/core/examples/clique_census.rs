//! Maximal cliques of the graph of lines of L_2^3, classified as point or
//! plane cliques, with one plane extracted back into a projective plane.

use prect::cliques::{classify_census, clique_intersections, enumerate_maximal_cliques, extract_plane};
use prect::construct::build_l2k;
use prect::linegraph::build_line_graph;

fn main() {
    let model = build_l2k(3).unwrap();
    let g = build_line_graph(&model).unwrap();
    let cliques = enumerate_maximal_cliques(&g, 1024).unwrap();
    let census = classify_census(&g, &model, &cliques).unwrap();
    for c in &census.checks {
        println!("{:<28} expected {:?} actual {} {}", c.name, c.expected, c.actual, if c.passed { "ok" } else { "FAILED" });
    }
    let inter = clique_intersections(&census, &g, &model);
    println!("intersection laws hold: {}", inter.passed);

    let plane = extract_plane(&census.plane_cliques[0], &model).unwrap();
    println!(
        "first plane: {} points ({} ordinary), {} ordinary lines, projective plane of order 2: {}",
        plane.points.len(),
        plane.ordinary_points,
        plane.ordinary_lines,
        plane.is_plane_of_order_m
    );
}
