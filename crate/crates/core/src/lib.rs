pub mod arith;
pub mod corpus;
pub mod coeff_rings;
pub mod geometry;
pub mod groups;
pub mod io;
pub mod lattice;
pub mod linsolve;
pub mod matrix;
pub mod monoid_ring;
pub mod par;
pub mod reduction;
pub mod ring;
