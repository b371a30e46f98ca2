//! Functors, natural transformations, and weak equivalences between finite
//! categories, with exhaustive law checks and bounded enumeration.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::bounds::{Bounds, WorkLimit};
use crate::fincat::{FinCat, IsoWitness, MorId, ObjId, Product, StructuralError};
use crate::report::{LawReport, Violation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functor {
    dom: Arc<FinCat>,
    cod: Arc<FinCat>,
    omap: Vec<ObjId>,
    mmap: Vec<MorId>,
}

impl Functor {
    pub fn new(
        dom: Arc<FinCat>,
        cod: Arc<FinCat>,
        omap: Vec<ObjId>,
        mmap: Vec<MorId>,
    ) -> Result<Self, StructuralError> {
        if omap.len() != dom.n_objects() {
            return Err(StructuralError::MapShape {
                expected: dom.n_objects(),
                got: omap.len(),
            });
        }
        if mmap.len() != dom.n_morphisms() {
            return Err(StructuralError::MapShape {
                expected: dom.n_morphisms(),
                got: mmap.len(),
            });
        }
        for &x in &omap {
            if x >= cod.n_objects() {
                return Err(StructuralError::ObjOutOfRange {
                    id: x,
                    n: cod.n_objects(),
                });
            }
        }
        for &f in &mmap {
            if f >= cod.n_morphisms() {
                return Err(StructuralError::MorOutOfRange {
                    id: f,
                    n: cod.n_morphisms(),
                });
            }
        }
        Ok(Functor { dom, cod, omap, mmap })
    }

    pub fn identity(c: &Arc<FinCat>) -> Self {
        Functor {
            dom: Arc::clone(c),
            cod: Arc::clone(c),
            omap: c.objects().collect(),
            mmap: c.morphisms().collect(),
        }
    }

    /// Constant functor at `x`: every morphism goes to `id_x`.
    pub fn constant(dom: &Arc<FinCat>, cod: &Arc<FinCat>, x: ObjId) -> Self {
        Functor {
            dom: Arc::clone(dom),
            cod: Arc::clone(cod),
            omap: vec![x; dom.n_objects()],
            mmap: vec![cod.identity(x); dom.n_morphisms()],
        }
    }

    pub fn dom(&self) -> &Arc<FinCat> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FinCat> {
        &self.cod
    }

    pub fn ob(&self, x: ObjId) -> ObjId {
        self.omap[x]
    }

    pub fn mor(&self, f: MorId) -> MorId {
        self.mmap[f]
    }

    pub fn omap(&self) -> &[ObjId] {
        &self.omap
    }

    pub fn mmap(&self) -> &[MorId] {
        &self.mmap
    }

    /// Diagrammatic composite: `self` first, then `g`.
    pub fn then(&self, g: &Functor) -> Functor {
        assert_eq!(
            self.cod, g.dom,
            "functor composition: codomain/domain mismatch"
        );
        Functor {
            dom: Arc::clone(&self.dom),
            cod: Arc::clone(&g.cod),
            omap: self.omap.iter().map(|&x| g.omap[x]).collect(),
            mmap: self.mmap.iter().map(|&f| g.mmap[f]).collect(),
        }
    }

    /// Exhaustive functor-law check: endpoint, identity, and composition
    /// preservation.
    pub fn check_laws(&self) -> LawReport {
        let mut report = LawReport::ok();
        for f in self.dom.morphisms() {
            let ff = self.mmap[f];
            if self.cod.src(ff) != self.omap[self.dom.src(f)]
                || self.cod.tgt(ff) != self.omap[self.dom.tgt(f)]
            {
                report.push(Violation::FunctorEndpoints { f });
            }
        }
        for x in self.dom.objects() {
            if self.mmap[self.dom.identity(x)] != self.cod.identity(self.omap[x]) {
                report.push(Violation::FunctorIdentity { x });
            }
        }
        for f in self.dom.morphisms() {
            for g in self.dom.morphisms() {
                if let Some(h) = self.dom.compose(f, g) {
                    if self.cod.compose(self.mmap[f], self.mmap[g]) != Some(self.mmap[h]) {
                        report.push(Violation::FunctorComposition { f, g });
                    }
                }
            }
        }
        report
    }
}

pub fn check_functor_laws(f: &Functor) -> LawReport {
    f.check_laws()
}

/// The functor A x B -> C x D acting as `f` on the left and `g` on the
/// right component.
pub fn product_functor(dom: &Product, cod: &Product, f: &Functor, g: &Functor) -> Functor {
    assert_eq!(&dom.left, f.dom());
    assert_eq!(&dom.right, g.dom());
    assert_eq!(&cod.left, f.cod());
    assert_eq!(&cod.right, g.cod());
    let omap = dom
        .cat
        .objects()
        .map(|p| {
            let (x, y) = dom.obj_parts(p);
            cod.obj(f.ob(x), g.ob(y))
        })
        .collect();
    let mmap = dom
        .cat
        .morphisms()
        .map(|m| {
            let (a, b) = dom.mor_parts(m);
            cod.mor(f.mor(a), g.mor(b))
        })
        .collect();
    Functor {
        dom: Arc::clone(&dom.cat),
        cod: Arc::clone(&cod.cat),
        omap,
        mmap,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatTrans {
    source: Functor,
    target: Functor,
    components: Vec<MorId>,
}

impl NatTrans {
    pub fn new(
        source: Functor,
        target: Functor,
        components: Vec<MorId>,
    ) -> Result<Self, StructuralError> {
        assert_eq!(source.dom, target.dom, "nat trans endpoints: domain mismatch");
        assert_eq!(source.cod, target.cod, "nat trans endpoints: codomain mismatch");
        if components.len() != source.dom.n_objects() {
            return Err(StructuralError::MapShape {
                expected: source.dom.n_objects(),
                got: components.len(),
            });
        }
        for &c in &components {
            if c >= source.cod.n_morphisms() {
                return Err(StructuralError::MorOutOfRange {
                    id: c,
                    n: source.cod.n_morphisms(),
                });
            }
        }
        Ok(NatTrans {
            source,
            target,
            components,
        })
    }

    pub fn identity(f: &Functor) -> Self {
        let components = f
            .dom
            .objects()
            .map(|x| f.cod.identity(f.ob(x)))
            .collect();
        NatTrans {
            source: f.clone(),
            target: f.clone(),
            components,
        }
    }

    pub fn source(&self) -> &Functor {
        &self.source
    }

    pub fn target(&self) -> &Functor {
        &self.target
    }

    pub fn at(&self, x: ObjId) -> MorId {
        self.components[x]
    }

    pub fn components(&self) -> &[MorId] {
        &self.components
    }

    /// Component endpoints plus every naturality square.
    pub fn check_naturality(&self) -> LawReport {
        let mut report = LawReport::ok();
        let dom = &self.source.dom;
        let cod = &self.source.cod;
        for x in dom.objects() {
            let t = self.components[x];
            if cod.src(t) != self.source.ob(x) || cod.tgt(t) != self.target.ob(x) {
                report.push(Violation::ComponentEndpoints { x });
            }
        }
        if !report.is_ok() {
            return report;
        }
        for f in dom.morphisms() {
            let (x, y) = (dom.src(f), dom.tgt(f));
            let lhs = cod.comp(self.source.mor(f), self.components[y]);
            let rhs = cod.comp(self.components[x], self.target.mor(f));
            if lhs != rhs {
                report.push(Violation::Naturality { f });
            }
        }
        report
    }

    /// Vertical composite: `self: F => G`, then `other: G => H`.
    pub fn then_vertical(&self, other: &NatTrans) -> NatTrans {
        assert_eq!(self.target, other.source, "vertical composition mismatch");
        let cod = &self.source.cod;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(&a, &b)| cod.comp(a, b))
            .collect();
        NatTrans {
            source: self.source.clone(),
            target: other.target.clone(),
            components,
        }
    }

    /// Inverse witnesses for every component, if all are invertible.
    pub fn pointwise_isos(&self) -> Option<Vec<IsoWitness>> {
        self.components
            .iter()
            .map(|&c| self.source.cod.is_iso(c))
            .collect()
    }
}

pub fn check_naturality(t: &NatTrans) -> LawReport {
    t.check_naturality()
}

/// Left whiskering `h <| t`: for `h: A -> B` and `t: F => G` with
/// `F, G: B -> C`, the transformation `h.F => h.G` with components `t_{h x}`.
pub fn whisker_left(h: &Functor, t: &NatTrans) -> NatTrans {
    assert_eq!(&h.cod, &t.source.dom, "whisker_left composition mismatch");
    NatTrans {
        source: h.then(&t.source),
        target: h.then(&t.target),
        components: h.omap.iter().map(|&x| t.components[x]).collect(),
    }
}

/// Right whiskering `t |> h`: for `t: F => G` with `F, G: A -> B` and
/// `h: B -> C`, the transformation `F.h => G.h` with components `h(t_x)`.
pub fn whisker_right(t: &NatTrans, h: &Functor) -> NatTrans {
    assert_eq!(&t.source.cod, &h.dom, "whisker_right composition mismatch");
    NatTrans {
        source: t.source.then(h),
        target: t.target.then(h),
        components: t.components.iter().map(|&f| h.mmap[f]).collect(),
    }
}

/// All natural transformations F => G, by exhaustive component search.
///
/// The candidate space is the product over objects of |hom(Fx, Gx)|; inputs
/// whose product exceeds the budget are refused. Output is in lexicographic
/// component order.
pub fn enumerate_nat_trans(
    f: &Functor,
    g: &Functor,
    bounds: &Bounds,
) -> Result<Vec<NatTrans>, WorkLimit> {
    assert_eq!(f.dom, g.dom, "enumerate_nat_trans: domain mismatch");
    assert_eq!(f.cod, g.cod, "enumerate_nat_trans: codomain mismatch");
    let dom = &f.dom;
    let cod = &f.cod;
    let homs: Vec<Vec<MorId>> = dom
        .objects()
        .map(|x| cod.hom(f.ob(x), g.ob(x)))
        .collect();
    let mut total: u128 = 1;
    for h in &homs {
        total = total.saturating_mul(h.len() as u128);
    }
    bounds.admit("enumerate_nat_trans", total)?;
    if total == 0 {
        return Ok(Vec::new());
    }
    let n = dom.n_objects();
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let components: Vec<MorId> = (0..n).map(|x| homs[x][idx[x]]).collect();
        let cand = NatTrans {
            source: f.clone(),
            target: g.clone(),
            components,
        };
        if cand.check_naturality().is_ok() {
            out.push(cand);
        }
        // Odometer over component choices, last object fastest.
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < homs[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// All functors C -> D, by exhaustive search over object maps and then
/// endpoint-compatible morphism maps, filtered by the functor laws.
///
/// Only viable for very small categories; the candidate-space size is
/// checked against the budget before any work is done.
pub fn enumerate_functors(
    dom: &Arc<FinCat>,
    cod: &Arc<FinCat>,
    bounds: &Bounds,
) -> Result<Vec<Functor>, WorkLimit> {
    let n = dom.n_objects();
    let nd = cod.n_objects();
    if n == 0 {
        return Ok(vec![Functor {
            dom: Arc::clone(dom),
            cod: Arc::clone(cod),
            omap: Vec::new(),
            mmap: Vec::new(),
        }]);
    }
    let mut total: u128 = 1;
    for _ in 0..n {
        total = total.saturating_mul(nd as u128);
    }
    // Pessimistic morphism-map bound: the largest hom-set to the power of
    // the morphism count, per object map.
    let max_hom = (0..nd)
        .flat_map(|x| (0..nd).map(move |y| (x, y)))
        .map(|(x, y)| cod.hom(x, y).len())
        .max()
        .unwrap_or(0);
    let mut per_omap: u128 = 1;
    for _ in dom.morphisms() {
        per_omap = per_omap.saturating_mul(max_hom as u128);
    }
    bounds.admit("enumerate_functors", total.saturating_mul(per_omap))?;

    let mut out = Vec::new();
    let mut omap = vec![0usize; n];
    loop {
        let homs: Vec<Vec<MorId>> = dom
            .morphisms()
            .map(|f| cod.hom(omap[dom.src(f)], omap[dom.tgt(f)]))
            .collect();
        if homs.iter().all(|h| !h.is_empty()) {
            let nm = dom.n_morphisms();
            let mut idx = vec![0usize; nm];
            'mmaps: loop {
                let mmap: Vec<MorId> = (0..nm).map(|f| homs[f][idx[f]]).collect();
                let cand = Functor {
                    dom: Arc::clone(dom),
                    cod: Arc::clone(cod),
                    omap: omap.clone(),
                    mmap,
                };
                if cand.check_laws().is_ok() {
                    out.push(cand);
                }
                let mut pos = nm;
                loop {
                    if pos == 0 {
                        break 'mmaps;
                    }
                    pos -= 1;
                    idx[pos] += 1;
                    if idx[pos] < homs[pos].len() {
                        break;
                    }
                    idx[pos] = 0;
                }
            }
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            omap[pos] += 1;
            if omap[pos] < nd {
                break;
            }
            omap[pos] = 0;
        }
    }
}

/// Why a functor fails to be fully faithful on a hom-set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FfFailure {
    /// Two distinct morphisms x -> y with the same image.
    NotInjective { x: ObjId, y: ObjId, f1: MorId, f2: MorId },
    /// A morphism Fx -> Fy with no preimage.
    NotSurjective { x: ObjId, y: ObjId, g: MorId },
}

/// Per-pair inverse maps hom(Fx, Fy) -> hom(x, y), indexed `x * n + y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FfEvidence {
    pub inverse: Vec<BTreeMap<MorId, MorId>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FfOutcome {
    pub evidence: Option<FfEvidence>,
    pub failures: Vec<FfFailure>,
}

impl FfOutcome {
    pub fn is_ff(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that each hom-set map is a bijection, collecting witnesses for
/// every failing pair, and the inverse maps on success.
pub fn fully_faithful(f: &Functor) -> FfOutcome {
    let n = f.dom.n_objects();
    let mut failures = Vec::new();
    let mut inverse = vec![BTreeMap::new(); n * n];
    for x in f.dom.objects() {
        for y in f.dom.objects() {
            let slot = &mut inverse[x * n + y];
            for m in f.dom.hom(x, y) {
                if let Some(&prev) = slot.get(&f.mor(m)) {
                    failures.push(FfFailure::NotInjective { x, y, f1: prev, f2: m });
                } else {
                    slot.insert(f.mor(m), m);
                }
            }
            for g in f.cod.hom(f.ob(x), f.ob(y)) {
                if !slot.contains_key(&g) {
                    failures.push(FfFailure::NotSurjective { x, y, g });
                }
            }
        }
    }
    let evidence = failures.is_empty().then_some(FfEvidence { inverse });
    FfOutcome { evidence, failures }
}

pub fn is_fully_faithful(f: &Functor) -> bool {
    fully_faithful(f).is_ff()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitEso {
    /// For each codomain object d, a domain object s(d) with F(s(d)) iso d.
    pub section: Vec<ObjId>,
    /// eta_d: F(s(d)) iso d, in the codomain.
    pub eta: Vec<IsoWitness>,
}

/// Split essential surjectivity witness: for every codomain object, the
/// smallest-id preimage-up-to-iso and a chosen iso. The identity iso is
/// preferred whenever `F(s(d)) == d`; otherwise the smallest witness wins.
pub fn split_eso_witness(f: &Functor) -> Option<SplitEso> {
    let mut section = Vec::new();
    let mut eta = Vec::new();
    for d in f.cod.objects() {
        let mut found = None;
        for c in f.dom.objects() {
            if f.ob(c) == d {
                found = Some((
                    c,
                    IsoWitness {
                        forward: f.cod.identity(d),
                        backward: f.cod.identity(d),
                    },
                ));
                break;
            }
            if let Some(&w) = f.cod.find_isos(f.ob(c), d).first() {
                found = Some((c, w));
                break;
            }
        }
        let (c, w) = found?;
        section.push(c);
        eta.push(w);
    }
    Some(SplitEso { section, eta })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeqError {
    #[error("functor law check failed:\n{0}")]
    FunctorLaws(LawReport),
    #[error("functor is not fully faithful ({0} failing hom-pairs)")]
    NotFullyFaithful(usize),
    #[error("functor is not essentially surjective (no preimage for some object)")]
    NotEso,
}

/// A weak equivalence: a fully faithful functor with a chosen section and
/// iso witnesses making it split essentially surjective.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakEquivalence {
    pub functor: Functor,
    pub ff: FfEvidence,
    pub section: Vec<ObjId>,
    pub eta: Vec<IsoWitness>,
}

impl WeakEquivalence {
    /// Verifies the laws and synthesizes the evidence.
    pub fn promote(functor: Functor) -> Result<Self, WeqError> {
        let laws = functor.check_laws();
        if !laws.is_ok() {
            return Err(WeqError::FunctorLaws(laws));
        }
        let ff = fully_faithful(&functor);
        let Some(evidence) = ff.evidence else {
            return Err(WeqError::NotFullyFaithful(ff.failures.len()));
        };
        let Some(split) = split_eso_witness(&functor) else {
            return Err(WeqError::NotEso);
        };
        Ok(WeakEquivalence {
            functor,
            ff: evidence,
            section: split.section,
            eta: split.eta,
        })
    }

    pub fn dom(&self) -> &Arc<FinCat> {
        self.functor.dom()
    }

    pub fn cod(&self) -> &Arc<FinCat> {
        self.functor.cod()
    }

    /// The unique f: x -> y with F(f) = g. Panics if g is not in the image
    /// hom-set, which cannot happen for valid evidence.
    pub fn ff_inverse(&self, x: ObjId, y: ObjId, g: MorId) -> MorId {
        let n = self.functor.dom().n_objects();
        *self.ff.inverse[x * n + y]
            .get(&g)
            .unwrap_or_else(|| panic!("ff_inverse: m{g} is not in hom(F{x}, F{y})"))
    }

    /// Re-validates all stored evidence.
    pub fn check(&self) -> LawReport {
        let mut report = self.functor.check_laws();
        let cod = self.functor.cod();
        let outcome = fully_faithful(&self.functor);
        if !outcome.is_ff() {
            report.push(Violation::Signature {
                detail: format!("{} fully-faithfulness failures", outcome.failures.len()),
            });
        } else if outcome.evidence.as_ref() != Some(&self.ff) {
            report.push(Violation::Signature {
                detail: "stored ff evidence disagrees with recomputed bijections".into(),
            });
        }
        if self.section.len() != cod.n_objects() || self.eta.len() != cod.n_objects() {
            report.push(Violation::Signature {
                detail: "section/eta tables have the wrong length".into(),
            });
            return report;
        }
        for d in cod.objects() {
            let w = self.eta[d];
            let ok = cod.check_iso_witness(w)
                && cod.src(w.forward) == self.functor.ob(self.section[d])
                && cod.tgt(w.forward) == d;
            if !ok {
                report.push(Violation::IsoWitness {
                    forward: w.forward,
                    backward: w.backward,
                });
            }
        }
        report
    }
}

/// The product of two weak equivalences is a weak equivalence; evidence is
/// built componentwise.
pub fn weq_product(
    w1: &WeakEquivalence,
    w2: &WeakEquivalence,
    dom: &Product,
    cod: &Product,
) -> WeakEquivalence {
    let functor = product_functor(dom, cod, &w1.functor, &w2.functor);
    let n1 = w1.functor.dom().n_objects();
    let n2 = w2.functor.dom().n_objects();
    let n = n1 * n2;
    let mut inverse = vec![BTreeMap::new(); n * n];
    for x1 in 0..n1 {
        for x2 in 0..n2 {
            for y1 in 0..n1 {
                for y2 in 0..n2 {
                    let x = dom.obj(x1, x2);
                    let y = dom.obj(y1, y2);
                    let slot = &mut inverse[x * n + y];
                    for (&g1, &f1) in &w1.ff.inverse[x1 * n1 + y1] {
                        for (&g2, &f2) in &w2.ff.inverse[x2 * n2 + y2] {
                            slot.insert(cod.mor(g1, g2), dom.mor(f1, f2));
                        }
                    }
                }
            }
        }
    }
    let mut section = Vec::new();
    let mut eta = Vec::new();
    for d in cod.cat.objects() {
        let (d1, d2) = cod.obj_parts(d);
        section.push(dom.obj(w1.section[d1], w2.section[d2]));
        eta.push(IsoWitness {
            forward: cod.mor(w1.eta[d1].forward, w2.eta[d2].forward),
            backward: cod.mor(w1.eta[d1].backward, w2.eta[d2].backward),
        });
    }
    WeakEquivalence {
        functor,
        ff: FfEvidence { inverse },
        section,
        eta,
    }
}

/// Precomposition with a fixed functor `h: C -> D`, as an action on
/// functors `D -> E` and on natural transformations between them.
pub struct Precomp {
    pub h: Functor,
}

impl Precomp {
    pub fn new(h: Functor) -> Self {
        Precomp { h }
    }

    pub fn on_functor(&self, f: &Functor) -> Functor {
        self.h.then(f)
    }

    pub fn on_nat(&self, t: &NatTrans) -> NatTrans {
        whisker_left(&self.h, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn identity_functor_laws() {
        let wi = fixtures::walking_iso();
        let idf = Functor::identity(&wi);
        assert!(idf.check_laws().is_ok());
    }

    #[test]
    fn functor_composition_violation_on_z3() {
        // B(Z/3) endo-map sigma -> sigma^2, sigma^2 -> sigma^2 preserves
        // endpoints and identity but breaks composition.
        let z3 = fixtures::bzn(3);
        let f = Functor::new(Arc::clone(&z3), Arc::clone(&z3), vec![0], vec![0, 2, 2]).unwrap();
        let report = f.check_laws();
        let comp_violations = report
            .violations
            .iter()
            .filter(|v| matches!(v, Violation::FunctorComposition { .. }))
            .count();
        // Frozen by hand from the tables: all four non-identity pairs
        // (s,s), (s,s2), (s2,s), (s2,s2) disagree.
        assert_eq!(comp_violations, 4);
        assert!(report
            .violations
            .iter()
            .all(|v| matches!(v, Violation::FunctorComposition { .. })));
    }

    #[test]
    fn nat_trans_enumeration_frozen_counts() {
        // Frozen values from the brute-force component filter:
        // walking iso: hom(a,a) and hom(b,b) are singletons, so exactly 1.
        let wi = fixtures::walking_iso();
        let idf = Functor::identity(&wi);
        let nats = enumerate_nat_trans(&idf, &idf, &Bounds::new(1000)).unwrap();
        assert_eq!(nats.len(), 1);

        // B(Z/2): both component choices are natural (abelian), so 2.
        let z2 = fixtures::bzn(2);
        let idf = Functor::identity(&z2);
        let nats = enumerate_nat_trans(&idf, &idf, &Bounds::new(1000)).unwrap();
        assert_eq!(nats.len(), 2);

        // Z/2 discrete: identities only.
        let d = FinCat::discrete(2);
        let idf = Functor::identity(&d);
        let nats = enumerate_nat_trans(&idf, &idf, &Bounds::new(1000)).unwrap();
        assert_eq!(nats.len(), 1);

        // Full transformation monoid on 2 points: center is trivial.
        let t2 = fixtures::bt2();
        let idf = Functor::identity(&t2);
        let nats = enumerate_nat_trans(&idf, &idf, &Bounds::new(1000)).unwrap();
        assert_eq!(nats.len(), 1);
    }

    #[test]
    fn naturality_failure_witness() {
        // On B(T2), t = c1 is well-typed but fails the square at f = c2.
        let t2 = fixtures::bt2();
        let idf = Functor::identity(&t2);
        let t = NatTrans::new(idf.clone(), idf, vec![1]).unwrap();
        let report = t.check_naturality();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::Naturality { f: 2 })));
    }

    #[test]
    fn enumeration_respects_bounds() {
        let z2 = fixtures::bzn(2);
        let idf = Functor::identity(&z2);
        let err = enumerate_nat_trans(&idf, &idf, &Bounds::new(1)).unwrap_err();
        assert_eq!(err.needed, 2);
    }

    #[test]
    fn ff_and_eso_frozen_examples() {
        // Walking iso -> T1 is fully faithful: all hom-sets pairwise
        // singletons on both sides.
        let wi = fixtures::walking_iso();
        let t1 = fixtures::t1();
        let collapse = Functor::new(Arc::clone(&wi), Arc::clone(&t1), vec![0, 0], vec![0; 4]).unwrap();
        assert!(is_fully_faithful(&collapse));
        let w = WeakEquivalence::promote(collapse).unwrap();
        assert_eq!(w.section, vec![0]); // smallest preimage
        assert!(w.check().is_ok());

        // Z/2 discrete -> T1 is NOT fully faithful: hom(0,1) is empty but
        // hom(F0, F1) is a singleton.
        let d2 = FinCat::discrete(2);
        let collapse = Functor::new(Arc::clone(&d2), Arc::clone(&t1), vec![0, 0], vec![0, 0]).unwrap();
        let out = fully_faithful(&collapse);
        assert!(!out.is_ff());
        assert!(out
            .failures
            .iter()
            .any(|f| matches!(f, FfFailure::NotSurjective { x: 0, y: 1, .. })));
    }

    #[test]
    fn whiskering_shapes() {
        let wi = fixtures::walking_iso();
        let t1 = fixtures::t1();
        let h = Functor::new(Arc::clone(&t1), Arc::clone(&wi), vec![1], vec![1]).unwrap();
        let idf = Functor::identity(&wi);
        let t = NatTrans::identity(&idf);
        let left = whisker_left(&h, &t);
        assert!(left.check_naturality().is_ok());
        assert_eq!(left.components(), &[1]); // id_b
        let collapse = Functor::new(Arc::clone(&wi), Arc::clone(&t1), vec![0, 0], vec![0; 4]).unwrap();
        let right = whisker_right(&t, &collapse);
        assert!(right.check_naturality().is_ok());
    }

    #[test]
    fn empty_category_nat_trans() {
        // Functors out of the empty category have exactly one (empty)
        // natural transformation between them.
        let empty = Arc::new(FinCat::from_tables(0, vec![], vec![], vec![]).unwrap());
        let t1 = fixtures::t1();
        let f = Functor::new(Arc::clone(&empty), Arc::clone(&t1), vec![], vec![]).unwrap();
        let nats = enumerate_nat_trans(&f, &f, &Bounds::new(10)).unwrap();
        assert_eq!(nats.len(), 1);
    }
}
