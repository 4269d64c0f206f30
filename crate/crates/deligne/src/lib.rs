//! Localizing functors, Deligne and Grothendieck–Verdier localized functors,
//! and the checks of their universal properties.

pub mod functor;
pub mod hombif;
pub mod localize;
pub mod probe;
pub mod sufficiency;
pub mod tower;
pub mod transport;

pub use functor::{deligne_localize, gv_functor, push_morphism, DeligneResult, Gv};
pub use hombif::{hom_bifunctor_check, HomBifReport};
pub use localize::{
    fraction_action, ind_adjointness_check, localize_morphism, localize_object, localizing_object,
    Classification, IndAdjPair, IndAdjReport, LocalizeResult, MorphismLocalization,
};
pub use probe::{universal_property_probe, ProbeMode, ProbeReport, ProbeTarget};
pub use sufficiency::{sufficiency_analysis, Condition, ObjectConsequence, Relative, SuffReport};
pub use tower::{associativity_check, composition_constraint, AssocReport, CompositionConstraint, GvComparison, Pipeline};
pub use transport::{adjunction_transport_check, TransportReport};

use serde::{Deserialize, Serialize};

use fincat::{Exhausted, Violation};
use multsys::{validate_mult_system, LocError, MorphismClass, Side};

/// Which localizing functor: `r_S` into ind-objects or `l_S` into pro-objects.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Hand {
    #[default]
    Right,
    Left,
}

impl Hand {
    pub fn side(self) -> Side {
        match self {
            Hand::Right => Side::Right,
            Hand::Left => Side::Left,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DeligneError {
    #[error("{side:?} localization unsupported, failing: {missing:?}")]
    SideUnsupported { side: Hand, missing: Vec<String> },
    #[error("square completion failed for {0:?}")]
    CompletionNotFound(Vec<String>),
    #[error(transparent)]
    Loc(#[from] LocError),
    #[error(transparent)]
    Exhausted(#[from] Exhausted),
    #[error("invalid input: {0:?}")]
    Invalid(Vec<Violation>),
}

/// The declared side of `s` and its axioms, quasi-saturation included, must allow `hand`.
pub fn require_side(c: &fincat::Category, s: &MorphismClass, hand: Hand) -> Result<(), DeligneError> {
    let r = validate_mult_system(c, s);
    let side = hand.side();
    let mut missing = r.missing(side);
    let (declared, qs) = match hand {
        Hand::Right => (s.side.has_right(), r.right_quasi_saturated),
        Hand::Left => (s.side.has_left(), r.left_quasi_saturated),
    };
    if !declared {
        missing.push(format!("declared side {:?}", s.side).to_lowercase());
    }
    if !qs {
        missing.push(format!("{side:?}-quasi-saturation").to_lowercase());
    }
    if missing.is_empty() {
        Ok(())
    } else {
        Err(DeligneError::SideUnsupported { side: hand, missing })
    }
}
