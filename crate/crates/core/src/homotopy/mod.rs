//! Bounded complexes of permutation modules over `F_p`, equivariant chain
//! maps, and a homotopy decision procedure by exact linear algebra.

mod complex;
mod functor;
mod module;
mod solve;
mod unit;

pub use complex::{coevaluation, switch_map, tensor_vectors, ChainMap, PermComplex, TensorLayout};
pub use functor::{inflate, psi, res, Psi, Pullback};
pub use module::{Orbit, PermModule};
pub use solve::{
    find_compatible_iso, hom_basis, hom_dim, homotopic, is_contractible, is_null_homotopic, null_homotopy,
    verify_homotopy, Homotopy,
};
pub use unit::{
    all_coordinates, build_u, power_complex, scalar_change, tau, twisted_hom_dim, twisted_unit, two_prime,
    master_relation, GroupCoordinate, MasterRelation, UnitComplex,
};
