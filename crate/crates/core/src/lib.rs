//! Exact sum-of-squares certificates for symmetric polynomial matrices.

pub mod exactarith;
pub mod multipoly;
pub mod polymatrix;
pub mod scalarsos;
pub mod matrixcert;
pub mod cli;
