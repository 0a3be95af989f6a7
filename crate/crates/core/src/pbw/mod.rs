//! The divided-power PBW basis of Kostant's ℤ-form and its straightening
//! multiplication.

mod algebra;
mod element;
mod monomial;
pub mod ordinary;
mod ring;
mod straighten;

pub use algebra::Algebra;
pub use element::{big, Element, Engine};
pub use monomial::{Layout, Letter, Monomial};
pub use ring::{binom, Integers, PrimeField, Rationals, Ring};
