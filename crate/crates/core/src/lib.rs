//! Word problem, conjugacy and automorphism computations for the
//! Baumslag–Solitar group `H = <x, y | y^-1 x y = x^2>` and its HNN extension
//! `G = <x, y, t | y^-1 x y = x^2, t^-1 x t = y>`.
//!
//! ```
//! use bgkit_core::automorphisms::{classify, std_aut};
//! use bgkit_core::britton::g_is_identity;
//! use bgkit_core::{Budget, Classification, Dyadic, Word};
//!
//! # fn main() -> Result<(), bgkit_core::Error> {
//! let b = Budget::default();
//! let w: Word = "t^-1 x t y^-1".parse()?;
//! assert!(g_is_identity(&w, &b)?);
//!
//! // std_aut(3/4) twisted by an inner automorphism is recovered exactly
//! let d: Dyadic = "3/4".parse()?;
//! let twisted = std_aut(&d).conjugated_by(&"t x".parse()?);
//! match classify(&twisted, &b)? {
//!     Classification::Aut { out, conjugator } => {
//!         assert_eq!(out.0, d);
//!         println!("conjugator: {conjugator}");
//!     }
//!     other => panic!("unexpected {other}"),
//! }
//! # Ok(())
//! # }
//! ```

pub mod automorphisms;
pub mod britton;
pub mod budget;
pub mod conjugacy;
pub mod dyadic;
pub mod error;
pub mod h_arith;
pub mod words;

pub use automorphisms::{AutImages, Classification, ClassifyTrace, HomCheck, OutClass, Relation};
pub use britton::{GWord, Reducer, Sign};
pub use budget::Budget;
pub use conjugacy::{ChainCertificate, ChainLink, ChainSearch, Direction, Power, ZeroClass};
pub use dyadic::Dyadic;
pub use error::{Error, Result};
pub use h_arith::AffineElem;
pub use words::{Generator, Syllable, Word};
