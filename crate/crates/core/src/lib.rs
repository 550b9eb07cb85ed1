//! Presentations of mapping class groups of nonorientable surfaces, with
//! machinery to check them against faithful-enough representations.

pub mod abelianize;
pub mod closed;
pub mod enumerate;
pub mod error;
pub mod presentation;
pub mod rep_homology;
pub mod rep_pi1;
pub mod replay;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use presentation::{Presentation, Relator, RelatorTag};
pub use word::{GenId, Letter, Word};
