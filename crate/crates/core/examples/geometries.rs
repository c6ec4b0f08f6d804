//! Point-clique and plane-clique geometries of L_2^2 and L_2^3.

use prect::construct::build_l2k;
use prect::geometry::{build_plane_clique_structure, build_point_clique_geometry};
use prect::pipeline::census_for;

fn main() {
    for k in [2, 3] {
        let model = build_l2k(k).unwrap();
        let (g, census) = census_for(&model).unwrap();
        let nv = g.num_vertices();
        let pg = build_point_clique_geometry(&census, nv);
        println!(
            "L_2^{k} point cliques: (K, R, T) = {:?}, usually quoted as pg{:?}",
            pg.measured, pg.quoted_label
        );
        let pl = build_plane_clique_structure(&census, nv);
        println!(
            "L_2^{k} plane cliques: t values {:?}, histogram {:?}, partial geometry {}",
            pl.t_support, pl.measurement.t_histogram, pl.is_partial_geometry
        );
    }
}
