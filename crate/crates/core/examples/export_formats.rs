//! graph6, DOT and JSON output for R(2,4) and its bilinear forms graph.

use prect::bilinear::build_hq2k;
use prect::construct::build_subplane_rect;
use prect::formats::{from_graph6, to_dot, to_graph6};
use prect::linegraph::build_line_graph;
use prect::pipeline::{model_from_json, model_to_json};

fn main() {
    let model = build_subplane_rect(2, 1, 2).unwrap();
    let g = build_line_graph(&model).unwrap();
    let g6 = to_graph6(&g).unwrap();
    println!("graph6: {g6}");
    assert_eq!(from_graph6(&g6).unwrap().num_edges(), g.num_edges());
    println!("H_2(2,2) graph6: {}", to_graph6(&build_hq2k(2, 1, 2).unwrap().graph).unwrap());

    let dot = to_dot(&g, "R(2,4)");
    println!("{}", dot.lines().take(4).collect::<Vec<_>>().join("\n"));

    let json = model_to_json(&model).unwrap();
    let back = model_from_json(&json).unwrap();
    println!("model JSON: {} bytes, round trip stable: {}", json.len(), model_to_json(&back).unwrap() == json);
}
