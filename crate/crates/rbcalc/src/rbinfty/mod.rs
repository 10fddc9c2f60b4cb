//! The dg operad RB∞: generator differentials, the monomial order,
//! effective monomials and the contracting homotopy.

pub mod boundary;
pub mod effective;
pub mod homotopy;
pub mod order;
pub mod verify;

pub use boundary::{boundary, boundary_generator, boundary_with};
pub use effective::{effective_divisor, is_typical, typical_source, EffectiveData};
pub use homotopy::{hbar, homotopy, Homotopy, HomotopyError};
pub use order::{compare, path_sequence, PathSequence};
pub use verify::{all_monomials, generators, verify_d2, verify_leading_terms, verify_minimal_model};

use crate::freeoperad::{OperadElement, OperadError};
use crate::scalar::Scalar;
use crate::freeoperad::TreeMonomial;

pub fn leading_term(e: &OperadElement) -> Result<(Scalar, TreeMonomial), OperadError> {
    e.leading_term()
}
