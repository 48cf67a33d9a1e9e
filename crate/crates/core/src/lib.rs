//! Word-level tools for the Torelli group of a non-orientable surface
//! `N_g^b`.
//!
//! The crate works in the punctured surface group `π_1(N_{g,1}^{b-1})`,
//! free on `x_1..x_g, y_1..y_{b-1}`, and decides membership in the kernel
//! `Γ` of the push map into the Torelli group, computes the homology
//! action of pushing a puncture, builds Reidemeister-Schreier
//! presentations of the orientation-double-cover subgroup and produces
//! checkable normal-closure certificates.
//!
//! ```
//! use torelli::{in_gamma, parse_word, SurfaceParams};
//!
//! let params = SurfaceParams::new(3, 1).unwrap();
//! let w = parse_word("x1 x2 x2 x1", &params).unwrap();
//! assert!(in_gamma(&w, &params));
//! ```

pub mod catalog;
pub mod certificates;
pub mod error;
pub mod homology;
pub mod presentations;
pub mod quotient;
pub mod sample;
pub mod suite;
pub mod surface;
pub mod words;

pub use certificates::{
    gamma_certificate, verify_certificate, Certificate, Entry, RelatorInstance,
};
pub use error::{Error, Result};
pub use homology::{push_action, H1Matrix, H1Vector};
pub use quotient::{nf, NormalForm};
pub use surface::{in_gamma, in_plus, oe_profile, project_p, OEProfile, SurfaceParams};
pub use words::{format_word, parse_word, FreeWord, Generator, Letter, Word};
