//! Exact computations for covers, monodromy and descent: free groups and
//! braids, permutation groups, extension models, finite group cohomology,
//! cyclotomic and Kummer fields, and curve descent data.

pub mod braid;
pub mod cohomology;
pub mod corpus;
pub mod curves;
pub mod cyclo;
pub mod extension;
pub mod linalg;
pub mod permgroup;
pub mod words;
