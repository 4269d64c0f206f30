//! Ind- and pro-objects over finite filtrant indices.

pub mod adjoint;
pub mod essconst;
pub mod extend;
pub mod hom;
pub mod object;
pub mod parallel;

pub use adjoint::{generalized_adjunction_check, AdjReport, PairSizes};
pub use essconst::{essentially_constant, EssConst};
pub use extend::{extend_to_ind, nested_hom_check, IndValuedFunctor, ObjectFunctor, Transition};
pub use hom::{canonicalize, colim_hom, compose, find_iso, identity, ind_hom, inverse, ColimHom, IndHomSet, IndMorphism};
pub use object::{point, IndObject};
pub use parallel::{is_cofinal, parallelize, ParallelReport, ParallelizationResult};
