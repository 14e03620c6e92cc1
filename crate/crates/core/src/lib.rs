pub mod exact_arith;
pub mod net_geometry;
pub mod divisor_lattice;
pub mod hj_chains;
pub mod dedekind_defect;
pub mod signature_engine;
pub mod certifier;
