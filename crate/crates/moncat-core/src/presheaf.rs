//! Finite-set-valued presheaves on a finite category: values, maps,
//! bounded enumeration, the Yoneda embedding, and the Yoneda lemma as an
//! explicit verified bijection.

use std::sync::Arc;

use crate::bounds::{Bounds, WorkLimit};
use crate::fincat::{FinCat, MorId, ObjId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresheafError {
    #[error("value/action tables do not match the base category shape")]
    Shape,
    #[error("element labels at object {object} are not distinct")]
    DuplicateLabels { object: ObjId },
    #[error("action of morphism {morphism} has the wrong endpoints")]
    ActionShape { morphism: MorId },
    #[error("action does not preserve the identity at object {object}")]
    IdentityAction { object: ObjId },
    #[error("action is not contravariantly functorial at composite ({f}, {g})")]
    CompositeAction { f: MorId, g: MorId },
    #[error("component at object {object} has the wrong endpoints")]
    ComponentShape { object: ObjId },
    #[error("naturality square fails at morphism {morphism}, element {element}")]
    Naturality { morphism: MorId, element: usize },
    #[error("presheaf construction needs identity-only morphisms (discrete base)")]
    NotDiscrete,
}

/// A finite set presented by its element labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinSet {
    pub labels: Vec<String>,
}

impl FinSet {
    pub fn indexed(prefix: &str, n: usize) -> FinSet {
        FinSet {
            labels: (0..n).map(|i| format!("{prefix}{i}")).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    fn distinct(&self) -> bool {
        let mut sorted: Vec<&String> = self.labels.iter().collect();
        sorted.sort();
        sorted.windows(2).all(|w| w[0] != w[1])
    }
}

/// A function between finite sets, by element index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFn {
    pub map: Vec<usize>,
    pub cod: usize,
}

impl SetFn {
    pub fn identity(n: usize) -> SetFn {
        SetFn {
            map: (0..n).collect(),
            cod: n,
        }
    }

    pub fn dom(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// Diagrammatic composition: self then other.
    pub fn then(&self, other: &SetFn) -> SetFn {
        assert_eq!(self.cod, other.dom(), "SetFn::then: endpoint mismatch");
        SetFn {
            map: self.map.iter().map(|&x| other.map[x]).collect(),
            cod: other.cod,
        }
    }

    pub fn is_bijection(&self) -> bool {
        if self.map.len() != self.cod {
            return false;
        }
        let mut hit = vec![false; self.cod];
        for &x in &self.map {
            if hit[x] {
                return false;
            }
            hit[x] = true;
        }
        true
    }

    pub fn inverse(&self) -> Option<SetFn> {
        if !self.is_bijection() {
            return None;
        }
        let mut map = vec![0usize; self.cod];
        for (x, &y) in self.map.iter().enumerate() {
            map[y] = x;
        }
        Some(SetFn {
            map,
            cod: self.dom(),
        })
    }
}

/// A contravariant functor base^op -> FinSet. `action[f]` for f: x -> y is
/// the restriction map at(y) -> at(x).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presheaf {
    base: Arc<FinCat>,
    at: Vec<FinSet>,
    action: Vec<SetFn>,
}

impl Presheaf {
    pub fn new(
        base: Arc<FinCat>,
        at: Vec<FinSet>,
        action: Vec<SetFn>,
    ) -> Result<Presheaf, PresheafError> {
        let p = Presheaf { base, at, action };
        p.check()?;
        Ok(p)
    }

    pub fn new_unchecked(base: Arc<FinCat>, at: Vec<FinSet>, action: Vec<SetFn>) -> Presheaf {
        Presheaf { base, at, action }
    }

    /// Constant-free presheaf on an identity-only base: just a size per
    /// object.
    pub fn discrete(base: &Arc<FinCat>, sizes: &[usize]) -> Result<Presheaf, PresheafError> {
        if sizes.len() != base.n_objects() {
            return Err(PresheafError::Shape);
        }
        if base.morphisms().any(|f| !base.is_identity(f)) {
            return Err(PresheafError::NotDiscrete);
        }
        let at: Vec<FinSet> = sizes.iter().map(|&n| FinSet::indexed("e", n)).collect();
        let action = base
            .morphisms()
            .map(|f| SetFn::identity(at[base.src(f)].size()))
            .collect();
        Ok(Presheaf {
            base: Arc::clone(base),
            at,
            action,
        })
    }

    pub fn empty(base: &Arc<FinCat>) -> Presheaf {
        let at = vec![FinSet { labels: Vec::new() }; base.n_objects()];
        let action = base
            .morphisms()
            .map(|_| SetFn {
                map: Vec::new(),
                cod: 0,
            })
            .collect();
        Presheaf {
            base: Arc::clone(base),
            at,
            action,
        }
    }

    pub fn base(&self) -> &Arc<FinCat> {
        &self.base
    }

    pub fn at(&self, c: ObjId) -> &FinSet {
        &self.at[c]
    }

    pub fn size(&self, c: ObjId) -> usize {
        self.at[c].size()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.at.iter().map(FinSet::size).collect()
    }

    pub fn action(&self, f: MorId) -> &SetFn {
        &self.action[f]
    }

    /// F(f)(e) for f: x -> y and e in F(y).
    pub fn apply(&self, f: MorId, e: usize) -> usize {
        self.action[f].apply(e)
    }

    pub fn check(&self) -> Result<(), PresheafError> {
        let c = &self.base;
        if self.at.len() != c.n_objects() || self.action.len() != c.n_morphisms() {
            return Err(PresheafError::Shape);
        }
        for (x, set) in self.at.iter().enumerate() {
            if !set.distinct() {
                return Err(PresheafError::DuplicateLabels { object: x });
            }
        }
        for f in c.morphisms() {
            let a = &self.action[f];
            if a.dom() != self.at[c.tgt(f)].size() || a.cod != self.at[c.src(f)].size() {
                return Err(PresheafError::ActionShape { morphism: f });
            }
        }
        for x in c.objects() {
            if self.action[c.identity(x)] != SetFn::identity(self.at[x].size()) {
                return Err(PresheafError::IdentityAction { object: x });
            }
        }
        for f in c.morphisms() {
            for g in c.morphisms() {
                if let Some(h) = c.compose(f, g) {
                    // Contravariance: F(f.g) = F(g) then F(f).
                    if self.action[h] != self.action[g].then(&self.action[f]) {
                        return Err(PresheafError::CompositeAction { f, g });
                    }
                }
            }
        }
        Ok(())
    }
}

/// A natural transformation of presheaves, with per-object component
/// functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresheafMap {
    source: Presheaf,
    target: Presheaf,
    components: Vec<SetFn>,
}

impl PresheafMap {
    /// Shape-validated construction; use [`PresheafMap::check_naturality`]
    /// for the law.
    pub fn new(
        source: Presheaf,
        target: Presheaf,
        components: Vec<SetFn>,
    ) -> Result<PresheafMap, PresheafError> {
        if source.base != target.base || components.len() != source.base.n_objects() {
            return Err(PresheafError::Shape);
        }
        for (c, f) in components.iter().enumerate() {
            if f.dom() != source.size(c) || f.cod != target.size(c) {
                return Err(PresheafError::ComponentShape { object: c });
            }
        }
        Ok(PresheafMap {
            source,
            target,
            components,
        })
    }

    pub fn identity(f: &Presheaf) -> PresheafMap {
        PresheafMap {
            source: f.clone(),
            target: f.clone(),
            components: (0..f.base.n_objects())
                .map(|c| SetFn::identity(f.size(c)))
                .collect(),
        }
    }

    pub fn source(&self) -> &Presheaf {
        &self.source
    }

    pub fn target(&self) -> &Presheaf {
        &self.target
    }

    pub fn at(&self, c: ObjId) -> &SetFn {
        &self.components[c]
    }

    pub fn apply(&self, c: ObjId, e: usize) -> usize {
        self.components[c].apply(e)
    }

    pub fn components(&self) -> &[SetFn] {
        &self.components
    }

    pub fn check_naturality(&self) -> Result<(), PresheafError> {
        let base = &self.source.base;
        for g in base.morphisms() {
            // source action then component-at-src vs component-at-tgt then
            // target action, both at(tgt g) of the source -> at(src g) of
            // the target.
            let lhs = self.source.action(g).then(&self.components[base.src(g)]);
            let rhs = self.components[base.tgt(g)].then(self.target.action(g));
            if lhs != rhs {
                let element = (0..lhs.dom())
                    .find(|&e| lhs.apply(e) != rhs.apply(e))
                    .unwrap_or(0);
                return Err(PresheafError::Naturality {
                    morphism: g,
                    element,
                });
            }
        }
        Ok(())
    }

    /// Diagrammatic composition: self then other.
    pub fn then_vertical(&self, other: &PresheafMap) -> PresheafMap {
        assert_eq!(
            self.target, other.source,
            "PresheafMap::then_vertical: endpoint mismatch"
        );
        PresheafMap {
            source: self.source.clone(),
            target: other.target.clone(),
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(f, g)| f.then(g))
                .collect(),
        }
    }

    pub fn is_iso(&self) -> bool {
        self.components.iter().all(SetFn::is_bijection)
    }

    pub fn inverse(&self) -> Option<PresheafMap> {
        let components = self
            .components
            .iter()
            .map(SetFn::inverse)
            .collect::<Option<Vec<_>>>()?;
        Some(PresheafMap {
            source: self.target.clone(),
            target: self.source.clone(),
            components,
        })
    }
}

/// All presheaf maps F => G by componentwise function search, filtered by
/// naturality. Candidate-space size is budget-checked before any work.
pub fn enumerate_presheaf_maps(
    f: &Presheaf,
    g: &Presheaf,
    bounds: &Bounds,
) -> Result<Vec<PresheafMap>, WorkLimit> {
    assert_eq!(f.base, g.base, "enumerate_presheaf_maps: base mismatch");
    let n = f.base.n_objects();
    let mut total: u128 = 1;
    for c in 0..n {
        let options = (g.size(c) as u128).checked_pow(f.size(c) as u32);
        total = options
            .map(|o| total.saturating_mul(o))
            .unwrap_or(u128::MAX);
    }
    bounds.admit("enumerate_presheaf_maps", total)?;
    if total == 0 {
        return Ok(Vec::new());
    }

    // All functions [f.size(c)] -> [g.size(c)] per object, odometer order.
    let per_object: Vec<Vec<SetFn>> = (0..n)
        .map(|c| {
            let (dn, cn) = (f.size(c), g.size(c));
            let mut fns = Vec::new();
            let mut map = vec![0usize; dn];
            loop {
                fns.push(SetFn {
                    map: map.clone(),
                    cod: cn,
                });
                let mut pos = dn;
                loop {
                    if pos == 0 {
                        return fns;
                    }
                    pos -= 1;
                    map[pos] += 1;
                    if map[pos] < cn {
                        break;
                    }
                    map[pos] = 0;
                }
            }
        })
        .collect();

    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let components: Vec<SetFn> = (0..n).map(|c| per_object[c][idx[c]].clone()).collect();
        let cand = PresheafMap {
            source: f.clone(),
            target: g.clone(),
            components,
        };
        if cand.check_naturality().is_ok() {
            out.push(cand);
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < per_object[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Position of morphism h inside hom(a, x), the element index used by the
/// Yoneda presheaf.
pub fn yoneda_elem(base: &FinCat, x: ObjId, a: ObjId, h: MorId) -> usize {
    base.hom(a, x)
        .iter()
        .position(|&m| m == h)
        .expect("morphism is not in the stated hom-set")
}

/// The morphism at element position e of y(x) at a.
pub fn yoneda_mor(base: &FinCat, x: ObjId, a: ObjId, e: usize) -> MorId {
    base.hom(a, x)[e]
}

/// The representable presheaf y(x): at(c) = hom(c, x), action by
/// precomposition.
pub fn yoneda(base: &Arc<FinCat>, x: ObjId) -> Presheaf {
    let at: Vec<FinSet> = base
        .objects()
        .map(|a| FinSet {
            labels: base.hom(a, x).iter().map(|m| format!("m{m}")).collect(),
        })
        .collect();
    let action = base
        .morphisms()
        .map(|g| {
            let (a, a2) = (base.src(g), base.tgt(g));
            let from = base.hom(a2, x);
            SetFn {
                map: from
                    .iter()
                    .map(|&h| yoneda_elem(base, x, a, base.comp(g, h)))
                    .collect(),
                cod: at[a].size(),
            }
        })
        .collect();
    Presheaf {
        base: Arc::clone(base),
        at,
        action,
    }
}

/// y on morphisms: f: x -> y gives the postcomposition map y(x) => y(y).
pub fn yoneda_on_morphisms(base: &Arc<FinCat>, f: MorId) -> PresheafMap {
    let (x, y) = (base.src(f), base.tgt(f));
    let source = yoneda(base, x);
    let target = yoneda(base, y);
    let components = base
        .objects()
        .map(|a| SetFn {
            map: base
                .hom(a, x)
                .iter()
                .map(|&h| yoneda_elem(base, y, a, base.comp(h, f)))
                .collect(),
            cod: target.size(a),
        })
        .collect();
    PresheafMap {
        source,
        target,
        components,
    }
}

/// The Yoneda lemma, constructively: e in F(x) corresponds to the map
/// y(x) => F sending h to F(h)(e).
pub fn yoneda_lemma_forward(f: &Presheaf, x: ObjId, e: usize) -> PresheafMap {
    let base = f.base();
    let source = yoneda(base, x);
    let components = base
        .objects()
        .map(|a| SetFn {
            map: base.hom(a, x).iter().map(|&h| f.apply(h, e)).collect(),
            cod: f.size(a),
        })
        .collect();
    PresheafMap {
        source,
        target: f.clone(),
        components,
    }
}

/// Inverse direction: evaluate a map y(x) => F at the identity.
pub fn yoneda_lemma_backward(t: &PresheafMap, x: ObjId) -> usize {
    let base = t.source.base();
    t.apply(x, yoneda_elem(base, x, x, base.identity(x)))
}

/// The full bijection F(x) = Nat(y(x), F), as the ordered image of each
/// element. Mutual inversion is the caller's (test's) concern.
pub fn yoneda_lemma_bijection(f: &Presheaf, x: ObjId) -> Vec<PresheafMap> {
    (0..f.size(x))
        .map(|e| yoneda_lemma_forward(f, x, e))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn yoneda_on_fixtures_is_functorial() {
        for (name, c) in fixtures::all_categories() {
            for x in c.objects() {
                let y = yoneda(&c, x);
                assert!(y.check().is_ok(), "{name}: y({x}) not a presheaf");
            }
            for f in c.morphisms() {
                let t = yoneda_on_morphisms(&c, f);
                assert!(t.check_naturality().is_ok(), "{name}: y(m{f}) not natural");
            }
        }
    }

    #[test]
    fn yoneda_sizes_frozen() {
        let z2 = fixtures::z2d();
        assert_eq!(yoneda(z2.base(), 1).sizes(), vec![0, 1]);
        let wi = fixtures::walking_iso();
        assert_eq!(yoneda(&wi, 0).sizes(), vec![1, 1]);
        assert_eq!(yoneda(&fixtures::t1(), 0).sizes(), vec![1]);
    }

    #[test]
    fn yoneda_lemma_counts_and_inversion() {
        for (name, c) in fixtures::all_categories() {
            if c.n_objects() == 0 {
                continue;
            }
            for x in c.objects() {
                for j in c.objects() {
                    let f = yoneda(&c, j);
                    let maps = enumerate_presheaf_maps(
                        &yoneda(&c, x),
                        &f,
                        &crate::bounds::Bounds::new(1_000_000),
                    )
                    .unwrap();
                    assert_eq!(
                        maps.len(),
                        c.hom(x, j).len(),
                        "{name}: |Nat(y({x}), y({j}))| != |hom({x},{j})|"
                    );
                    // Forward then backward is the identity on F(x).
                    for e in 0..f.size(x) {
                        let t = yoneda_lemma_forward(&f, x, e);
                        assert!(t.check_naturality().is_ok());
                        assert_eq!(yoneda_lemma_backward(&t, x), e);
                    }
                    // Backward then forward recovers each enumerated map.
                    for t in &maps {
                        let e = yoneda_lemma_backward(t, x);
                        assert_eq!(&yoneda_lemma_forward(&f, x, e), t, "{name}");
                    }
                }
            }
        }
    }

    #[test]
    fn discrete_and_empty_presheaves() {
        let z2 = fixtures::z2d();
        let f = Presheaf::discrete(z2.base(), &[1, 2]).unwrap();
        assert_eq!(f.sizes(), vec![1, 2]);
        assert!(f.check().is_ok());
        let e = Presheaf::empty(z2.base());
        assert!(e.check().is_ok());
        assert_eq!(e.sizes(), vec![0, 0]);
        let wi = fixtures::walking_iso();
        assert!(matches!(
            Presheaf::discrete(&wi, &[1, 1]),
            Err(PresheafError::NotDiscrete)
        ));
    }

    #[test]
    fn enumeration_respects_naturality() {
        // On B(Z/2), maps y(0) => y(0) are exactly the 2 group elements.
        let c = fixtures::bzn(2);
        let y0 = yoneda(&c, 0);
        let maps =
            enumerate_presheaf_maps(&y0, &y0, &crate::bounds::Bounds::new(1_000)).unwrap();
        assert_eq!(maps.len(), 2);
        for t in &maps {
            assert!(t.is_iso());
        }
    }

    #[test]
    fn presheaf_check_catches_broken_action() {
        let z2 = fixtures::bzn(2);
        let y0 = yoneda(&z2, 0);
        let mut action: Vec<SetFn> = y0.action.clone();
        // Collapse the action of the non-identity element; squaring it no
        // longer gives the identity action, so functoriality must fail.
        action[1] = SetFn {
            map: vec![0, 0],
            cod: 2,
        };
        let broken = Presheaf::new_unchecked(Arc::clone(&z2), y0.at.clone(), action);
        assert_eq!(
            broken.check(),
            Err(PresheafError::CompositeAction { f: 1, g: 1 })
        );
    }
}
