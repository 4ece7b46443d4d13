//! Exact arithmetic for Steinberg groups over commutative rings: rings,
//! root systems, Chevalley matrices, Steinberg words and the van der Kallen /
//! Tulenbaev generator constructions.

pub mod chevalley;
pub mod error;
pub mod matrix;
pub mod ring;
pub mod roots;
pub mod semidirect;
pub mod tulenbaev;
pub mod vdk;
pub mod word;

pub use error::{Error, Result};
pub use matrix::{transvection, RMatrix, RVector};
pub use ring::{Elem, Ideal, Ring, RingMorphism};
pub use roots::{Family, RootDatum};
pub use word::{StWord, Tier};
