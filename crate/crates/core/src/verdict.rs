//! Structured results for decisions and bounded searches.

use std::collections::BTreeMap;

use crate::bimodal::{BimodalFrame, GlModel};
use crate::kripke::{IntFrame, Valuation};
use crate::poset::WorldMask;

/// Outcome of a validity check, decision procedure or bounded search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Established positively (exhaustive check or sound-and-complete
    /// decision procedure).
    Holds,
    /// Refuted, with a concrete witness.
    Refuted(Box<Witness>),
    /// A bounded search found no refutation. Not a proof unless the bound is
    /// known to be complete for the class at hand.
    Unrefuted { bound: usize },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn refuted(&self) -> bool {
        matches!(self, Verdict::Refuted(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Refuted(w) => Some(w),
            _ => None,
        }
    }
}

/// Concrete refutation evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A birelational frame, an up-set valuation and a world where the
    /// formula fails.
    Kripke {
        frame: IntFrame,
        valuation: Valuation,
        world: usize,
    },
    /// A classical bimodal frame, a plain valuation and a failing world.
    Bimodal {
        frame: BimodalFrame,
        valuation: BTreeMap<String, WorldMask>,
        world: usize,
    },
    /// A finite transitive irreflexive model refuting a classical formula at
    /// its root.
    Classical { model: GlModel, world: usize },
}
