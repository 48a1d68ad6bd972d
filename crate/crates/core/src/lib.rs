//! Exact formal Laurent series and bi-infinite Riordan matrices.
//!
//! * [`series`]: Laurent series on either side (`K((x))` or `K((1/x))`) with
//!   a sound precision calculus, composition and compositional inverse.
//! * [`riordan`]: implicit matrices `R_{α,ω}`, their echelon classes,
//!   products, inverses and `J` conjugation.
//! * [`window`]: dense finite blocks and the brute-force product oracle.
//! * [`simplicial`]: f/h-vectors and the Dehn–Sommerville relations.

pub mod error;
pub mod field;
pub mod riordan;
pub mod series;
pub mod simplicial;
pub mod window;

pub use error::{Error, Result};
pub use field::{parse_rational, Field, Fp, Rational};
pub use riordan::{product_class, EchelonClass, EchelonClassSet, JSide, RiordanMatrix};
pub use series::{parse, CompositionCase, LaurentSeries, Order, Side, SideTag};
pub use window::{
    oracle_apply, oracle_image, oracle_matmul, oracle_product, ColumnSupport, MatrixWindow,
    OffsetVector,
};
