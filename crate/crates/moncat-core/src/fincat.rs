//! Finite categories as explicit tables.
//!
//! Objects and morphisms are dense integer ids. The composition table is
//! total over composable pairs (`tgt(f) == src(g)`) and undefined elsewhere.
//! Composition is written in diagrammatic order throughout the crate:
//! `compose(f, g)` is "f, then g".

use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::report::{LawReport, Violation};

pub type ObjId = usize;
pub type MorId = usize;

/// Malformed table data: ids out of range, wrong table shapes, or a
/// composition table defined on the wrong domain. Distinct from law
/// violations, which concern a structurally well-formed category.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StructuralError {
    #[error("object id {id} out of range (n_objects = {n})")]
    ObjOutOfRange { id: ObjId, n: usize },
    #[error("morphism id {id} out of range (n_morphisms = {n})")]
    MorOutOfRange { id: MorId, n: usize },
    #[error("identity table has {got} entries for {expected} objects")]
    IdentityShape { expected: usize, got: usize },
    #[error("identity of object {x} is m{id}, which is not an endomorphism of {x}")]
    IdentityEndpoints { x: ObjId, id: MorId },
    #[error("composition table has {got} entries, expected {expected}")]
    ComposeShape { expected: usize, got: usize },
    #[error("composite missing for composable pair (m{f}, m{g})")]
    MissingComposite { f: MorId, g: MorId },
    #[error("composite defined for non-composable pair (m{f}, m{g})")]
    SpuriousComposite { f: MorId, g: MorId },
    #[error("map has {got} entries, expected {expected}")]
    MapShape { expected: usize, got: usize },
}

/// A two-sided inverse pair. `forward . backward = id_src(forward)` and
/// `backward . forward = id_tgt(forward)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IsoWitness {
    pub forward: MorId,
    pub backward: MorId,
}

#[derive(Clone, PartialEq, Eq)]
pub struct FinCat {
    n_objects: usize,
    mor_src: Vec<ObjId>,
    mor_tgt: Vec<ObjId>,
    identity: Vec<MorId>,
    /// Row-major `[f * n_morphisms + g]`; `Some` exactly when composable.
    compose: Vec<Option<MorId>>,
}

impl fmt::Debug for FinCat {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            out,
            "FinCat({} objects, {} morphisms)",
            self.n_objects,
            self.mor_src.len()
        )
    }
}

impl FinCat {
    /// Builds a category from raw tables, validating structure (not laws).
    pub fn from_tables(
        n_objects: usize,
        morphisms: Vec<(ObjId, ObjId)>,
        identity: Vec<MorId>,
        compose: Vec<Option<MorId>>,
    ) -> Result<Self, StructuralError> {
        let cat = FinCat {
            n_objects,
            mor_src: morphisms.iter().map(|&(s, _)| s).collect(),
            mor_tgt: morphisms.iter().map(|&(_, t)| t).collect(),
            identity,
            compose,
        };
        cat.check_structure()?;
        Ok(cat)
    }

    /// Builds without validation. For tests that need malformed values;
    /// everything else should go through [`FinCat::from_tables`].
    pub fn from_tables_unchecked(
        n_objects: usize,
        morphisms: Vec<(ObjId, ObjId)>,
        identity: Vec<MorId>,
        compose: Vec<Option<MorId>>,
    ) -> Self {
        FinCat {
            n_objects,
            mor_src: morphisms.iter().map(|&(s, _)| s).collect(),
            mor_tgt: morphisms.iter().map(|&(_, t)| t).collect(),
            identity,
            compose,
        }
    }

    /// The discrete category: `n` objects, identities only.
    pub fn discrete(n: usize) -> Arc<FinCat> {
        let mut compose = vec![None; n * n];
        for i in 0..n {
            compose[i * n + i] = Some(i);
        }
        Arc::new(FinCat {
            n_objects: n,
            mor_src: (0..n).collect(),
            mor_tgt: (0..n).collect(),
            identity: (0..n).collect(),
            compose,
        })
    }

    pub fn n_objects(&self) -> usize {
        self.n_objects
    }

    pub fn n_morphisms(&self) -> usize {
        self.mor_src.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> {
        0..self.n_objects
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorId> {
        0..self.mor_src.len()
    }

    pub fn src(&self, f: MorId) -> ObjId {
        self.mor_src[f]
    }

    pub fn tgt(&self, f: MorId) -> ObjId {
        self.mor_tgt[f]
    }

    pub fn identity(&self, x: ObjId) -> MorId {
        self.identity[x]
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        self.identity[self.mor_src[f]] == f && self.mor_src[f] == self.mor_tgt[f]
    }

    pub fn composable(&self, f: MorId, g: MorId) -> bool {
        self.mor_tgt[f] == self.mor_src[g]
    }

    pub fn compose(&self, f: MorId, g: MorId) -> Option<MorId> {
        self.compose[f * self.mor_src.len() + g]
    }

    /// Composition that must succeed; panics on a non-composable pair.
    /// For internal use on validated data.
    pub fn comp(&self, f: MorId, g: MorId) -> MorId {
        self.compose(f, g)
            .unwrap_or_else(|| panic!("non-composable pair (m{f}, m{g})"))
    }

    /// Left-to-right composite of a chain. Empty chains are not allowed.
    pub fn comp_seq(&self, chain: &[MorId]) -> MorId {
        let mut acc = chain[0];
        for &f in &chain[1..] {
            acc = self.comp(acc, f);
        }
        acc
    }

    /// Morphisms x -> y in ascending id order.
    pub fn hom(&self, x: ObjId, y: ObjId) -> Vec<MorId> {
        self.morphisms()
            .filter(|&f| self.mor_src[f] == x && self.mor_tgt[f] == y)
            .collect()
    }

    pub fn check_structure(&self) -> Result<(), StructuralError> {
        let n = self.n_objects;
        let m = self.mor_src.len();
        for f in 0..m {
            for &o in [self.mor_src[f], self.mor_tgt[f]].iter() {
                if o >= n {
                    return Err(StructuralError::ObjOutOfRange { id: o, n });
                }
            }
        }
        if self.identity.len() != n {
            return Err(StructuralError::IdentityShape {
                expected: n,
                got: self.identity.len(),
            });
        }
        for x in 0..n {
            let id = self.identity[x];
            if id >= m {
                return Err(StructuralError::MorOutOfRange { id, n: m });
            }
            if self.mor_src[id] != x || self.mor_tgt[id] != x {
                return Err(StructuralError::IdentityEndpoints { x, id });
            }
        }
        if self.compose.len() != m * m {
            return Err(StructuralError::ComposeShape {
                expected: m * m,
                got: self.compose.len(),
            });
        }
        for f in 0..m {
            for g in 0..m {
                match self.compose[f * m + g] {
                    Some(h) => {
                        if !self.composable(f, g) {
                            return Err(StructuralError::SpuriousComposite { f, g });
                        }
                        if h >= m {
                            return Err(StructuralError::MorOutOfRange { id: h, n: m });
                        }
                    }
                    None => {
                        if self.composable(f, g) {
                            return Err(StructuralError::MissingComposite { f, g });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Exhaustive category-law check: composite endpoints, identity units,
    /// associativity over all composable triples. Structural problems are
    /// reported as an error, distinct from law violations.
    pub fn check_category_laws(&self) -> Result<LawReport, StructuralError> {
        self.check_structure()?;
        let mut report = LawReport::ok();
        let m = self.mor_src.len();
        for f in 0..m {
            for g in 0..m {
                if let Some(h) = self.compose(f, g) {
                    if self.mor_src[h] != self.mor_src[f] || self.mor_tgt[h] != self.mor_tgt[g] {
                        report.push(Violation::CompositeEndpoints { f, g, composite: h });
                    }
                }
            }
        }
        for f in 0..m {
            if self.compose(self.identity[self.mor_src[f]], f) != Some(f) {
                report.push(Violation::IdentityLeft { f });
            }
            if self.compose(f, self.identity[self.mor_tgt[f]]) != Some(f) {
                report.push(Violation::IdentityRight { f });
            }
        }
        for f in 0..m {
            for g in 0..m {
                let Some(fg) = self.compose(f, g) else { continue };
                for h in 0..m {
                    let Some(gh) = self.compose(g, h) else { continue };
                    if self.compose(fg, h) != self.compose(f, gh) {
                        report.push(Violation::Associativity { f, g, h });
                    }
                }
            }
        }
        Ok(report)
    }

    /// All iso witnesses x -> y, ordered by (forward, backward) id.
    pub fn find_isos(&self, x: ObjId, y: ObjId) -> Vec<IsoWitness> {
        let mut out = Vec::new();
        for h in self.hom(x, y) {
            for k in self.hom(y, x) {
                if self.compose(h, k) == Some(self.identity[x])
                    && self.compose(k, h) == Some(self.identity[y])
                {
                    out.push(IsoWitness {
                        forward: h,
                        backward: k,
                    });
                }
            }
        }
        out
    }

    /// Smallest iso witness with `forward = f`, if f is invertible.
    pub fn is_iso(&self, f: MorId) -> Option<IsoWitness> {
        let (x, y) = (self.mor_src[f], self.mor_tgt[f]);
        self.hom(y, x)
            .into_iter()
            .find(|&k| {
                self.compose(f, k) == Some(self.identity[x])
                    && self.compose(k, f) == Some(self.identity[y])
            })
            .map(|k| IsoWitness {
                forward: f,
                backward: k,
            })
    }

    /// Inverts a known-invertible morphism; panics otherwise.
    pub fn inverse(&self, f: MorId) -> MorId {
        self.is_iso(f)
            .unwrap_or_else(|| panic!("m{f} is not invertible"))
            .backward
    }

    /// No isomorphisms between distinct objects.
    pub fn is_skeletal(&self) -> bool {
        for x in 0..self.n_objects {
            for y in (x + 1)..self.n_objects {
                if !self.find_isos(x, y).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// Checks a would-be iso pair.
    pub fn check_iso_witness(&self, w: IsoWitness) -> bool {
        let (x, y) = (self.mor_src[w.forward], self.mor_tgt[w.forward]);
        self.mor_src[w.backward] == y
            && self.mor_tgt[w.backward] == x
            && self.compose(w.forward, w.backward) == Some(self.identity[x])
            && self.compose(w.backward, w.forward) == Some(self.identity[y])
    }
}

/// Incremental construction with synthesized identities.
///
/// Identities get ids `0..n_objects` in object order; morphisms added with
/// [`CatBuilder::mor`] follow. Composites with identities are filled in
/// automatically. With `derive` enabled, missing entries that are forced by
/// associativity are closed over; a conflict is an error, never a guess.
pub struct CatBuilder {
    n_objects: usize,
    mors: Vec<(ObjId, ObjId)>,
    entries: BTreeMap<(MorId, MorId), MorId>,
    derive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuildError {
    #[error("composite of (m{f}, m{g}) declared twice with different values (m{old} vs m{new})")]
    Conflict { f: MorId, g: MorId, old: MorId, new: MorId },
    #[error("derive found contradictory composites for (m{f}, m{g}): m{old} vs m{new}")]
    DeriveConflict { f: MorId, g: MorId, old: MorId, new: MorId },
    #[error("composite of composable pair (m{f}, m{g}) is neither declared nor derivable")]
    Missing { f: MorId, g: MorId },
    #[error("morphism pair (m{f}, m{g}) is not composable")]
    NotComposable { f: MorId, g: MorId },
    #[error("declared composite (m{f}, m{g}) = m{h} has mismatched endpoints")]
    BadEndpoints { f: MorId, g: MorId, h: MorId },
}

impl CatBuilder {
    pub fn new(n_objects: usize) -> Self {
        CatBuilder {
            n_objects,
            mors: (0..n_objects).map(|x| (x, x)).collect(),
            entries: BTreeMap::new(),
            derive: false,
        }
    }

    pub fn derive(&mut self) -> &mut Self {
        self.derive = true;
        self
    }

    pub fn identity(&self, x: ObjId) -> MorId {
        x
    }

    pub fn mor(&mut self, src: ObjId, tgt: ObjId) -> MorId {
        self.mors.push((src, tgt));
        self.mors.len() - 1
    }

    pub fn comp(&mut self, f: MorId, g: MorId, h: MorId) -> Result<(), BuildError> {
        let (fs, ft) = self.mors[f];
        let (gs, gt) = self.mors[g];
        let (hs, ht) = self.mors[h];
        if ft != gs {
            return Err(BuildError::NotComposable { f, g });
        }
        if hs != fs || ht != gt {
            return Err(BuildError::BadEndpoints { f, g, h });
        }
        if let Some(&old) = self.entries.get(&(f, g)) {
            if old != h {
                return Err(BuildError::Conflict { f, g, old, new: h });
            }
            return Ok(());
        }
        self.entries.insert((f, g), h);
        Ok(())
    }

    pub fn build(mut self) -> Result<FinCat, BuildError> {
        let m = self.mors.len();
        // Identity composites are forced.
        for f in 0..m {
            let (s, t) = self.mors[f];
            self.force((s, f), f)?;
            self.force((f, t), f)?;
        }
        if self.derive {
            self.close()?;
        }
        let mut compose = vec![None; m * m];
        for f in 0..m {
            for g in 0..m {
                if self.mors[f].1 == self.mors[g].0 {
                    match self.entries.get(&(f, g)) {
                        Some(&h) => compose[f * m + g] = Some(h),
                        None => return Err(BuildError::Missing { f, g }),
                    }
                }
            }
        }
        Ok(FinCat {
            n_objects: self.n_objects,
            mor_src: self.mors.iter().map(|&(s, _)| s).collect(),
            mor_tgt: self.mors.iter().map(|&(_, t)| t).collect(),
            identity: (0..self.n_objects).collect(),
            compose,
        })
    }

    fn force(&mut self, key: (MorId, MorId), value: MorId) -> Result<(), BuildError> {
        if let Some(&old) = self.entries.get(&key) {
            if old != value {
                return Err(BuildError::Conflict {
                    f: key.0,
                    g: key.1,
                    old,
                    new: value,
                });
            }
            return Ok(());
        }
        self.entries.insert(key, value);
        Ok(())
    }

    /// Associativity closure: when (f.g), (g.h) and one bracketing of the
    /// triple composite are known, the other bracketing is forced.
    fn close(&mut self) -> Result<(), BuildError> {
        let m = self.mors.len();
        loop {
            let mut changed = false;
            for f in 0..m {
                for g in 0..m {
                    if self.mors[f].1 != self.mors[g].0 {
                        continue;
                    }
                    let Some(&fg) = self.entries.get(&(f, g)) else { continue };
                    for h in 0..m {
                        if self.mors[g].1 != self.mors[h].0 {
                            continue;
                        }
                        let Some(&gh) = self.entries.get(&(g, h)) else { continue };
                        let left = self.entries.get(&(fg, h)).copied();
                        let right = self.entries.get(&(f, gh)).copied();
                        match (left, right) {
                            (Some(l), None) => {
                                self.entries.insert((f, gh), l);
                                changed = true;
                            }
                            (None, Some(r)) => {
                                self.entries.insert((fg, h), r);
                                changed = true;
                            }
                            (Some(l), Some(r)) if l != r => {
                                return Err(BuildError::DeriveConflict {
                                    f,
                                    g: gh,
                                    old: r,
                                    new: l,
                                });
                            }
                            _ => {}
                        }
                    }
                }
            }
            if !changed {
                return Ok(());
            }
        }
    }
}

/// Binary product category with its pairing codecs.
///
/// Objects and morphisms are encoded row-major: `(x, y)` becomes
/// `x * |right| + y`. Rebuilding the product of the same factors yields a
/// structurally equal category.
#[derive(Clone)]
pub struct Product {
    pub cat: Arc<FinCat>,
    pub left: Arc<FinCat>,
    pub right: Arc<FinCat>,
}

pub fn product_category(left: &Arc<FinCat>, right: &Arc<FinCat>) -> Product {
    let (nl, nr) = (left.n_objects(), right.n_objects());
    let (ml, mr) = (left.n_morphisms(), right.n_morphisms());
    let mut mors = Vec::with_capacity(ml * mr);
    for f in 0..ml {
        for g in 0..mr {
            mors.push((
                left.src(f) * nr + right.src(g),
                left.tgt(f) * nr + right.tgt(g),
            ));
        }
    }
    let identity = (0..nl * nr)
        .map(|p| left.identity(p / nr) * mr + right.identity(p % nr))
        .collect();
    let m = ml * mr;
    let mut compose = vec![None; m * m];
    for f1 in 0..ml {
        for g1 in 0..mr {
            let a = f1 * mr + g1;
            for f2 in 0..ml {
                for g2 in 0..mr {
                    if let (Some(fl), Some(gr)) =
                        (left.compose(f1, f2), right.compose(g1, g2))
                    {
                        compose[a * m + (f2 * mr + g2)] = Some(fl * mr + gr);
                    }
                }
            }
        }
    }
    Product {
        cat: Arc::new(FinCat {
            n_objects: nl * nr,
            mor_src: mors.iter().map(|&(s, _)| s).collect(),
            mor_tgt: mors.iter().map(|&(_, t)| t).collect(),
            identity,
            compose,
        }),
        left: Arc::clone(left),
        right: Arc::clone(right),
    }
}

impl Product {
    pub fn obj(&self, x: ObjId, y: ObjId) -> ObjId {
        x * self.right.n_objects() + y
    }

    pub fn obj_parts(&self, p: ObjId) -> (ObjId, ObjId) {
        let nr = self.right.n_objects();
        (p / nr, p % nr)
    }

    pub fn mor(&self, f: MorId, g: MorId) -> MorId {
        f * self.right.n_morphisms() + g
    }

    pub fn mor_parts(&self, m: MorId) -> (MorId, MorId) {
        let mr = self.right.n_morphisms();
        (m / mr, m % mr)
    }
}
