//! Nielsen reduction, free-basis detection and constructive membership for
//! finitely generated groups acting on trees.
//!
//! The main instance is PGL₂(Q_p) acting on its Bruhat-Tits tree, with exact
//! p-adic arithmetic ([`padic`], [`projlinear`], [`bttree`]). The free group
//! on its Cayley tree ([`cayley`]) is a second backend where everything can
//! be checked by string algebra. Algorithms are generic over
//! [`treeaction::TreeAction`].
//!
//! ```
//! use hyperbasis::{reduce, BruhatTitsTree, PadicContext, ProjMatrix};
//!
//! let tree = BruhatTitsTree::new(PadicContext::new(5, 100).unwrap());
//! let g = ProjMatrix::from_strings(tree.context(), &[["5", "0"], ["0", "1"]]).unwrap();
//! let out = reduce(&tree, &[g.clone(), g]).unwrap();
//! assert!(out.flag.is_free());
//! assert_eq!(out.basis.len(), 1);
//! ```

pub mod bench;
pub mod bttree;
pub mod cayley;
pub mod error;
pub mod fundamental;
pub mod nielsen;
pub mod padic;
pub mod path;
pub mod problem;
pub mod projlinear;
pub mod treeaction;
pub mod word;

pub use bttree::{BruhatTitsTree, Label, Vertex};
pub use cayley::{scramble, scramble_seeded, CayleyTree, StallingsGraph};
pub use error::{Error, Result};
pub use fundamental::{
    admits_fundamental_system, in_fundamental_domain, membership, to_fundamental_domain,
    MembershipSolver, ReducedBasis, SystemCheck,
};
pub use nielsen::{
    groups_equal, is_strongly_reduced, reduce, Flag, Reducer, ReductionOutcome, TrackedGen,
};
pub use padic::{PAdic, PadicContext};
pub use path::{compare_paths, TreePath};
pub use problem::Problem;
pub use projlinear::ProjMatrix;
pub use treeaction::{delta, norm, translation_length, TreeAction};
pub use word::{Letter, Word};
