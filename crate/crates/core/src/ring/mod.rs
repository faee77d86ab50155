//! Graded-commutative algebras over `F_p`: polynomials, Gröbner bases,
//! ideal arithmetic and homomorphisms.

mod groebner;
mod poly;
mod presentation;

pub use groebner::{groebner, is_unit_ideal, normal_form};
pub use poly::{mono_divides, Mono, Order, Poly};
pub(crate) use presentation::eliminate_polys;
pub use presentation::{GradedRing, Ideal, RingHom, Variable};
