//! Bounded complexes over finite chain rings: homotopy classes, derived Hom,
//! triangles, and the comparison between complexes of ind-objects and
//! ind-objects of complexes.

pub mod amalgam;
pub mod complex;
pub mod fixture;
pub mod homotopy;
pub mod matrix;
pub mod module;
pub mod parallel;
pub mod probe;
pub mod resolve;
pub mod ring;

pub use amalgam::{amalgamate_triangles, Amalgam, TriangleMorphism};
pub use complex::{cone, ChainMap, Complex, Triangle};
pub use fixture::{ComplexData, ComplexFixture, MapData};
pub use homotopy::{
    extend_along, homotopic, homotopy_classes, in_null_system, is_nullhomotopic, is_qis, null_homotopy, HomComplex,
    HomotopyClasses, Unsolvable,
};
pub use matrix::{normal_form, Mat, NormalForm};
pub use module::{presentations, FModule, Presentations, Sub};
pub use parallel::{complex_parallelize, hom_comparison, hp_probe, terminal_object, HomComparison, HpReport, IndChainMorphism, IndComplex, IndDegree, ParallelComplex, UniformBound};
pub use probe::{inert_retraction_probe, triangle_closure_check, Certificate, ClosureReport, Property, RetractionReport, Sample};
pub use resolve::{derived_hom, derived_hom_window, ext, injective_resolution, projective_resolution, DerivedHom, Resolution, Route};
pub use ring::{CoeffRing, RingKind};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TriError {
    #[error("ring: {0}")]
    Ring(String),
    #[error("malformed: {0}")]
    Malformed(String),
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("no retraction: {0:?}")]
    NoRetraction(Unsolvable),
    #[error("construction failed: {0:?}")]
    ConstructionFailed(Unsolvable),
    #[error(transparent)]
    Exhausted(#[from] fincat::Exhausted),
    #[error("internal: {0}")]
    Internal(String),
}
