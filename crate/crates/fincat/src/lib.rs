//! Finite categories, functors, slices and finite limits/colimits of sets.

use std::cell::Cell;

use serde::{Deserialize, Serialize};

pub mod category;
pub mod data;
pub mod filtered;
pub mod fixture;
pub mod functor;
pub mod setdiag;
pub mod slice;

pub use category::{Builder, Category, Violation};
pub use data::{
    validate_structure, CategoryData, ComposeData, FunctorData, FunctorInput, MorphismData,
    ValidationReport,
};
pub use fixture::{DiagramData, Fixture, Variance, MAIN, SCHEMA_VERSION};
pub use filtered::{classify_filtered, FilteredReport};
pub use functor::Functor;
pub use setdiag::{colimit_raw, limit_raw, Colimit, Limit, SetDiagram};
pub use slice::{coslice_category, slice_category, Slice, SliceSide};

/// Returned when an enumeration runs out of steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("step budget of {limit} exhausted")]
pub struct Exhausted {
    pub limit: u64,
}

/// A step counter shared by one enumeration run.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: Cell<u64>,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Self {
            limit,
            used: Cell::new(0),
        }
    }

    pub fn unlimited() -> Self {
        Self::new(u64::MAX)
    }

    pub fn tick(&self) -> Result<(), Exhausted> {
        let u = self.used.get().saturating_add(1);
        self.used.set(u);
        if u > self.limit {
            Err(Exhausted { limit: self.limit })
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used.get()
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::unlimited()
    }
}

/// Which end of the id order a search prefers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TieBreak {
    #[default]
    Normal,
    Reversed,
}

impl TieBreak {
    /// First element satisfying `p`, scanning from the preferred end.
    pub fn find<T, I>(self, it: I, mut p: impl FnMut(&T) -> bool) -> Option<T>
    where
        I: DoubleEndedIterator<Item = T>,
    {
        match self {
            TieBreak::Normal => it.into_iter().find(|x| p(x)),
            TieBreak::Reversed => it.into_iter().rev().find(|x| p(x)),
        }
    }

    pub fn order<T>(self, mut v: Vec<T>) -> Vec<T> {
        if self == TieBreak::Reversed {
            v.reverse();
        }
        v
    }
}
