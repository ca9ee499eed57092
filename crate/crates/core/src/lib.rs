//! Exact structure constants `a_{u,v}^w` of Schubert classes in the
//! cohomology of a flag manifold `G/H`, starting from nothing but a Cartan
//! matrix and a parabolic subset `K`.
//!
//! The pipeline: [`cartan`] fixes the root datum, [`weyl`] encodes Weyl group
//! elements by `b(w) = w(δ)`, [`coset`] enumerates minimal coset
//! representatives by length, and [`schubert`] evaluates
//! `a_{u,v}^w = T_{A_w}[p_w(u) p_w(v)]` with the operator of [`trioper`] over
//! the polynomials of [`polyring`].
//!
//! ```
//! use schubert_core::{CosetTable, BuildOptions, FlagSpec, ElementId, EvalOptions};
//!
//! let spec = FlagSpec::preset_with_complement("E6", &[2]).unwrap();
//! let table = CosetTable::build(&spec, BuildOptions::up_to(9)).unwrap();
//! let u = table.get(ElementId::new(4, 2)).unwrap();
//! let v = table.get(ElementId::new(5, 3)).unwrap();
//! let e = schubert_core::expand_product(&table, u, v, EvalOptions::default()).unwrap();
//! assert_eq!(e.values(), vec![5, 5, 2, 1, 1]);
//! ```

pub mod cartan;
pub mod coset;
pub mod error;
pub mod golden;
pub mod oracle;
mod par;
pub mod polyring;
pub mod render;
pub mod schubert;
pub mod trioper;
pub mod verify;
pub mod weyl;

pub use cartan::{CartanMatrix, FlagSpec, ParabolicSubset};
pub use coset::{BuildOptions, CosetElement, CosetTable, ElementId, ElementKey};
pub use error::{Error, Result};
pub use par::Execution;
pub use polyring::{GradedPoly, Monomial};
pub use schubert::{
    expand_product, multiplication_table, select_subwords, structure_constant, EvalOptions, ProductExpansion,
    SelectionMode, Term,
};
pub use trioper::{eval_t, StrictUpperTriangular};
pub use weyl::{BVector, Word};
