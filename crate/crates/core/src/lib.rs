pub mod bitset;
pub mod construct;
pub mod gf;
pub mod incidence;
pub mod linegraph;
pub mod formats;
pub mod cliques;
pub mod bilinear;
pub mod geometry;
pub mod analysis;
pub mod pipeline;
