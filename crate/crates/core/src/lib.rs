//! Lommel functions, half-integer Padé triples for sin/cos, and the
//! trigonometric closed form of ₂F₁(½+ν, ½−ν; n+½; sin²(θ/2)).

pub mod cli;
pub mod error;
pub mod gamma;
pub mod hyp_trig;
pub mod lommel;
pub mod pade;
pub mod quadrature;
pub mod ratpoly;
pub mod roots;
pub mod verify;

pub use error::{LommelError, Result};
pub use lommel::{EvalResult, LommelParams};
pub use pade::{ApproximantTriple, Normalization};
pub use ratpoly::{Rational, RationalPoly};
