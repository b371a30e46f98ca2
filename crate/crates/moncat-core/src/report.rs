//! Law-violation reports.
//!
//! Checkers return a [`LawReport`]: an empty report means every checked
//! equation holds. Each violation names the law and the witnessing ids, so
//! failures can be replayed by hand against the tables.

use serde::Serialize;
use std::fmt;

use crate::fincat::{MorId, ObjId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum Violation {
    /// src/tgt of a composite disagree with the composable pair.
    CompositeEndpoints { f: MorId, g: MorId, composite: MorId },
    /// id_src(f) . f != f
    IdentityLeft { f: MorId },
    /// f . id_tgt(f) != f
    IdentityRight { f: MorId },
    /// (f.g).h != f.(g.h)
    Associativity { f: MorId, g: MorId, h: MorId },

    /// Functor maps f: x -> y to a morphism with the wrong endpoints.
    FunctorEndpoints { f: MorId },
    /// Functor does not preserve the identity of `x`.
    FunctorIdentity { x: ObjId },
    /// Functor does not preserve the composite of (f, g).
    FunctorComposition { f: MorId, g: MorId },

    /// Component at `x` is not a morphism F(x) -> G(x).
    ComponentEndpoints { x: ObjId },
    /// Naturality square at f: x -> y fails.
    Naturality { f: MorId },

    /// forward . backward or backward . forward is not the identity.
    IsoWitness { forward: MorId, backward: MorId },
    /// A structure cell that must be invertible has no two-sided inverse.
    NotInvertible { role: String, at: String, morphism: MorId },

    /// Monoidal triangle law fails at (x, y).
    Triangle { x: ObjId, y: ObjId },
    /// Monoidal pentagon law fails at (w, x, y, z).
    Pentagon { w: ObjId, x: ObjId, y: ObjId, z: ObjId },

    /// Lax functor: mu component at (x, y) has the wrong endpoints.
    MuEndpoints { x: ObjId, y: ObjId },
    /// Lax functor: mu is not natural at a pair of morphisms.
    MuNaturality { f: MorId, g: MorId },
    /// Lax functor: eps has the wrong endpoints.
    EpsEndpoints,
    /// Lax functor: left unitor compatibility fails at x.
    LaxLeftUnitor { x: ObjId },
    /// Lax functor: right unitor compatibility fails at x.
    LaxRightUnitor { x: ObjId },
    /// Lax functor: associator (hexagon) compatibility fails at (x, y, z).
    LaxHexagon { x: ObjId, y: ObjId, z: ObjId },

    /// Monoidal nat trans: tensor compatibility fails at (x, y).
    MonNatTensor { x: ObjId, y: ObjId },
    /// Monoidal nat trans: unit compatibility fails.
    MonNatUnit,

    /// Signature mismatch (wrong dom/cod category) detected during a check.
    Signature { detail: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            CompositeEndpoints { f, g, composite } => {
                write!(out, "composite m{composite} of (m{f}, m{g}) has wrong endpoints")
            }
            IdentityLeft { f } => write!(out, "left identity law fails at m{f}"),
            IdentityRight { f } => write!(out, "right identity law fails at m{f}"),
            Associativity { f, g, h } => {
                write!(out, "associativity fails at (m{f}, m{g}, m{h})")
            }
            FunctorEndpoints { f } => write!(out, "functor breaks src/tgt at m{f}"),
            FunctorIdentity { x } => write!(out, "functor breaks identity at o{x}"),
            FunctorComposition { f, g } => {
                write!(out, "functor breaks composition at (m{f}, m{g})")
            }
            ComponentEndpoints { x } => write!(out, "component at o{x} has wrong endpoints"),
            Naturality { f } => write!(out, "naturality square fails at m{f}"),
            IsoWitness { forward, backward } => {
                write!(out, "(m{forward}, m{backward}) is not an iso pair")
            }
            NotInvertible { role, at, morphism } => {
                write!(out, "{role} at {at} (m{morphism}) is not invertible")
            }
            Triangle { x, y } => write!(out, "triangle law fails at (o{x}, o{y})"),
            Pentagon { w, x, y, z } => {
                write!(out, "pentagon law fails at (o{w}, o{x}, o{y}, o{z})")
            }
            MuEndpoints { x, y } => write!(out, "mu at (o{x}, o{y}) has wrong endpoints"),
            MuNaturality { f, g } => write!(out, "mu is not natural at (m{f}, m{g})"),
            EpsEndpoints => write!(out, "eps has wrong endpoints"),
            LaxLeftUnitor { x } => write!(out, "lax left-unitor law fails at o{x}"),
            LaxRightUnitor { x } => write!(out, "lax right-unitor law fails at o{x}"),
            LaxHexagon { x, y, z } => {
                write!(out, "lax hexagon law fails at (o{x}, o{y}, o{z})")
            }
            MonNatTensor { x, y } => {
                write!(out, "monoidal nat trans tensor law fails at (o{x}, o{y})")
            }
            MonNatUnit => write!(out, "monoidal nat trans unit law fails"),
            Signature { detail } => write!(out, "signature mismatch: {detail}"),
        }
    }
}

/// Outcome of an exhaustive law check. Empty means all laws hold.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct LawReport {
    pub violations: Vec<Violation>,
}

impl LawReport {
    pub fn ok() -> Self {
        LawReport::default()
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }

    pub fn merge(&mut self, other: LawReport) {
        self.violations.extend(other.violations);
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(out, "all laws hold");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(out)?;
            }
            write!(out, "{v}")?;
        }
        Ok(())
    }
}
