//! Construction and symmetry analysis of the cubic coset graphs
//! `Cos(G, L, L g_alpha L)` over `G = PSL(2,2^f)^2 : <pi>`.

pub mod analysis;
pub mod bigroup;
pub mod closure;
pub mod cosetgraph;
pub mod gf2;
pub mod graph;
pub mod psl2;
pub mod suite;
pub mod zpfamily;
