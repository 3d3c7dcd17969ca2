//! Letterplace ideals of posets and their flat deformations over rooted
//! trees.
//!
//! ```
//! use lpdeform::{deformation::DeformationContext, grading::default_order, poly::render_polynomial, Poset};
//!
//! let tree = Poset::parse("a < b\nb < c").unwrap().as_rooted_tree().unwrap();
//! let ctx = DeformationContext::new(tree.clone());
//! let order = default_order(&tree);
//! let gens: Vec<String> = ctx
//!     .j_ideal_generators()
//!     .iter()
//!     .map(|g| render_polynomial(&g.polynomial, &tree, Some(&order)))
//!     .collect();
//! assert_eq!(gens[0], "a1*a2 - b1*u[0,a]");
//! assert_eq!(gens[3], "b1*b2 - a2*c1*u[a,b]");
//! ```

pub mod cotangent;
pub mod deformation;
pub mod error;
pub mod fixture;
pub mod grading;
pub mod letterplace;
pub mod poly;
pub mod poset;
pub mod verifier;

pub use error::{Error, Result};
pub use poset::{rooted_trees, ElemId, Poset, PosetJson, RootedTree};
