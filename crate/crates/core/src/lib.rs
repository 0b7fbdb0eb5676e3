//! Grevlex Gröbner bases of maximal-minor ideals and critical-point ideals
//! over prime fields, by signature-based Macaulay matrices.
//!
//! The engine is [`sig_gb::sig_gb`]; [`determinantal`] feeds it the
//! Eagon-Northcott syzygy leading terms, and [`hilbert`] predicts the row
//! counts and ranks it should see on generic input.

pub mod determinantal;
pub mod error;
pub mod field;
pub mod hilbert;
pub mod instance;
pub mod macaulay;
pub mod matrix;
pub mod monomial;
pub mod poly;
pub mod sig_gb;

pub use determinantal::{crit_gb, max_minors_sig_gb, CritSystem, DeterminantalRun};
pub use error::{Error, Result};
pub use field::{Coeff, PrimeField, DEFAULT_PRIME};
pub use hilbert::Mode;
pub use instance::{Instance, InstanceSpec};
pub use macaulay::{MacaulayMatrix, RowStats, Signature};
pub use matrix::PolyMatrix;
pub use monomial::{enumerate_monomials, grevlex_cmp, pot_cmp, BasisIndex, ModuleMonomial, Monomial};
pub use poly::{ModuleElement, Polynomial};
pub use sig_gb::{lazard_gb, sig_gb, GBResult, SyzygySignatureSet};
