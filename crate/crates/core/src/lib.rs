//! Component lattices of linear quotient stacks and quiver moduli stacks,
//! computed as concrete combinatorial objects.
//!
//! * [`qlinalg`]: exact rational subspaces and covectors.
//! * [`arrangement`]: hyperplane arrangements, cells, cones and the Tits
//!   product.
//! * [`stackmodel`]: special faces, special cones and Hall categories of
//!   `V / G`.
//! * [`linmoduli`]: quiver moduli stacks, class tuples and the counting Hall
//!   algebra over small finite fields.
//! * [`cli`]: the `component-lattice` command line.

pub mod arrangement;
pub mod cli;
pub mod document;
pub mod linmoduli;
pub mod qlinalg;
pub mod stackmodel;
