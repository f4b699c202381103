//! Quiddity sequences, friezes and SL₂-tilings.
//!
//! - [`sl2`]: matrices, words in `S`, `T`, `U`, normal forms and orders.
//! - [`eta`]: η-sequences, the expand/contract rules and the validity test.
//! - [`frieze`]: integer and matrix friezes generated from a quiddity row.
//! - [`tiling`]: windows of positive SL₂-tilings and their factor vectors.
//! - [`polygon`]: triangulations, dual binary trees, exhaustive enumeration.
//! - [`supplement`]: basic sequences, supplements and embeddings.
//! - [`similarity`]: dihedral types of friezes and their count `Kn`.
//!
//! ```
//! use frieze_core::{is_eta, similarity::{count_types, Method}};
//!
//! assert!(is_eta(&[2, 1, 3, 1, 2]).unwrap());
//! assert_eq!(count_types(13, Method::Formula).unwrap(), 2282u32.into());
//! ```

pub mod error;
pub mod eta;
pub mod frieze;
pub mod polygon;
pub mod similarity;
pub mod sl2;
pub mod supplement;
pub mod tiling;

pub use error::{Error, Result};
pub use eta::{format_sequence, is_eta, parse_sequence, EtaSeq};
pub use frieze::{generate_frieze, generate_matrix_frieze, FriezeWindow, MatrixFriezeWindow};
pub use polygon::{enumerate_triangulations, to_dual_tree, DualNode, DualTree, Triangulation};
pub use similarity::{
    canonicalize, classify, count_types, enumerate_types, Category, Method, OrbitCanon,
    SeqClassification, TriPartition,
};
pub use sl2::{element_order, ts_normal_form, Mat2, Order, SUWord, TSNormalForm, Word};
pub use supplement::{
    extend_superbasic, is_embeddable, supplement, BasicSeq, Embedding, SuperBasicSeq,
};
pub use tiling::{
    extract_factors, formula_tiling, fractures, generate_tiling, FactorVectors, Fractures, Span,
    TilingWindow,
};
