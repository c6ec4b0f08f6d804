//! The graph of lines of R(3,9) is the bilinear forms graph H_3(2,2).

use prect::bilinear::{build_hq2k, certify_isomorphism, clique_sizes, mapping_table};
use prect::construct::build_subplane_rect;
use prect::linegraph::build_line_graph;

fn main() {
    let model = build_subplane_rect(3, 1, 2).unwrap();
    let g = build_line_graph(&model).unwrap();
    let h = build_hq2k(3, 1, 2).unwrap();
    let cert = certify_isomorphism(&g, &model, &h).unwrap();
    println!(
        "bijective {}, adjacency preserved {}, pairs checked {}, valid {}",
        cert.bijective, cert.adjacency_preserved, cert.pairs_checked, cert.valid
    );
    println!("maximal clique sizes of H_3(2,2): {:?}", clique_sizes(&h).unwrap());
    let table = mapping_table(&model, &h).unwrap();
    for row in table.entries.iter().take(5) {
        println!("  {row:?}");
    }
}
