//! Region crossing change on 2-bridge knots and links.
//!
//! Build the standard alternating diagram of a Conway word, label its
//! regions, bound or compute its region unknotting number, and compute Arf
//! invariants from trivializing region selections. Every closed form is
//! checked against independent polynomial oracles.
//!
//! ```
//! use twobridge::{ConwayWord, PlanarDiagram};
//!
//! let word: ConwayWord = "C(2,3)".parse().unwrap();
//! let diagram = PlanarDiagram::from_word(&word);
//! assert_eq!(diagram.face_count(), diagram.crossing_count() + 2);
//! ```

pub mod arf;
pub mod bounds;
pub mod conway;
pub mod diagram;
pub mod oracle;
pub mod poly;
pub mod search;
pub mod sweep;

pub use conway::{ConwayWord, LinkClass, LinkKind, ParseError};
pub use diagram::{Orientation, PlanarDiagram, RegionLabel, RegionSelection};
pub use poly::LaurentPoly;

// The guide's code blocks run as doc-tests.
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
pub mod chapter0 {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/conway-words.md")]
pub mod chapter1 {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/diagrams.md")]
pub mod chapter2 {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/oracles.md")]
pub mod chapter3 {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/bounds.md")]
pub mod chapter4 {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/search.md")]
pub mod chapter5 {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/arf.md")]
pub mod chapter6 {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
pub mod chapter7 {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/verification.md")]
pub mod chapter8 {}
