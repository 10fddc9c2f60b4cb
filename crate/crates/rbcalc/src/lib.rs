//! Symbolic computation for Rota-Baxter algebras of arbitrary weight and
//! their homotopy versions.

pub mod cohomology;
pub mod cooperad;
pub mod freeoperad;
pub mod linalg;
pub mod linfty;
pub mod rbinfty;
pub mod report;
pub mod scalar;
pub mod sign;
pub mod trees;
