//! Planarity, Euler and Hamilton cycles, colourings and Krein conditions
//! for the graph of lines of L_2^2.

use prect::analysis::{
    chromatic_analysis, chromatic_index_bracket, eulerian_verdict, hamiltonian_search, krein_check,
    planarity_verdict, validate_cycle, Budget, L22_HAMILTON_CYCLE,
};
use prect::construct::build_l2k;
use prect::linegraph::{build_line_graph, certify_srg, vertex_connectivity, ConnectivityMode};

fn main() {
    let model = build_l2k(2).unwrap();
    let g = build_line_graph(&model).unwrap();
    let cert = certify_srg(&g, 2, 4).unwrap();

    println!("planarity: {:?}", planarity_verdict(&g, 2, 4));
    println!("eulerian: {:?}", eulerian_verdict(&g, 2, 4));
    println!("connectivity: {:?}", vertex_connectivity(&g, ConnectivityMode::Exact).unwrap());
    println!("given cycle: {:?}", validate_cycle(&g, &L22_HAMILTON_CYCLE));
    println!("search: {:?}", hamiltonian_search(&g, 2, 4, Budget::new(5_000)).outcome);

    let chi = chromatic_analysis(&g, Some(&cert), 2, 4, 100, Budget::new(10_000));
    println!(
        "chromatic number {:?}, Haemers {:?}, clique {}, claimed {}",
        chi.exact_chromatic, chi.haemers_bound, chi.clique_lower_bound, chi.claimed_bound
    );
    for f in &chi.flags {
        println!("  flag: {f}");
    }
    let ci = chromatic_index_bracket(&g, 2, 4, Budget::new(10_000));
    println!("chromatic index {:?} in {:?}", ci.value, ci.bracket);
    println!("krein: {:?}", krein_check(&cert).conditions);
}
