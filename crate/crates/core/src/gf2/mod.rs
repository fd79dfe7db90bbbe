//! GF(2) linear algebra, code construction and matrix files.

mod bch;
mod code;
pub mod io;
mod matrix;

pub use bch::{
    bch_code, bch_generator_polynomial, cyclotomic_coset, default_primitive_poly, is_irreducible,
    FieldElement2m, Gf2m,
};
pub use code::{builtin_code, hamming_8_4_paper, LinearCode, BUILTIN_CODES, MAX_ENUMERATION_DIM};
pub use matrix::{rank, row_reduce, tanner_subgraph_has_cycle, BitMatrix};
