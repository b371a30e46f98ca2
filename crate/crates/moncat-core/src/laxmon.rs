//! Lax/strong monoidal functors and monoidal natural transformations,
//! with exhaustive checks of the coherence laws, bounded enumeration of
//! 2-cells, and the hom-category of monoidal functors presented as a
//! finite category.

use std::sync::Arc;

use crate::bounds::{Bounds, WorkLimit};
use crate::fincat::{FinCat, MorId, ObjId};
use crate::functor::{enumerate_functors, enumerate_nat_trans, whisker_left, Functor, NatTrans};
use crate::monoidal::MonoidalCategory;
use crate::report::{LawReport, Violation};

/// A lax monoidal functor (F, mu, eps): C -> D.
///
/// `mu[(x,y)]: Fx (x)_D Fy -> F(x (x)_C y)` indexed by the domain's product
/// pairing; `eps: I_D -> F(I_C)`. Strong means both are invertible; see
/// [`strong_witnesses`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaxMonoidalFunctor {
    dom: Arc<MonoidalCategory>,
    cod: Arc<MonoidalCategory>,
    functor: Functor,
    mu: Vec<MorId>,
    eps: MorId,
}

impl LaxMonoidalFunctor {
    pub fn new(
        dom: Arc<MonoidalCategory>,
        cod: Arc<MonoidalCategory>,
        functor: Functor,
        mu: Vec<MorId>,
        eps: MorId,
    ) -> Self {
        let n = dom.base().n_objects();
        assert_eq!(mu.len(), n * n, "mu must have one component per object pair");
        LaxMonoidalFunctor {
            dom,
            cod,
            functor,
            mu,
            eps,
        }
    }

    /// The identity functor with identity witnesses.
    pub fn identity(m: &Arc<MonoidalCategory>) -> Self {
        let base = m.base();
        let n = base.n_objects();
        let mu = (0..n * n)
            .map(|p| {
                let (x, y) = m.prod2().obj_parts(p);
                base.identity(m.tensor_obj(x, y))
            })
            .collect();
        LaxMonoidalFunctor {
            dom: Arc::clone(m),
            cod: Arc::clone(m),
            functor: Functor::identity(base),
            mu,
            eps: base.identity(m.unit()),
        }
    }

    pub fn dom(&self) -> &Arc<MonoidalCategory> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<MonoidalCategory> {
        &self.cod
    }

    pub fn functor(&self) -> &Functor {
        &self.functor
    }

    pub fn mu(&self) -> &[MorId] {
        &self.mu
    }

    pub fn mu_at(&self, x: ObjId, y: ObjId) -> MorId {
        self.mu[self.dom.prod2().obj(x, y)]
    }

    pub fn eps(&self) -> MorId {
        self.eps
    }

    /// mu as a natural transformation `(F x F).tensor_D => tensor_C.F`
    /// over C x C.
    pub fn mu_nat(&self) -> NatTrans {
        let p2 = self.dom.prod2();
        let dbase = self.cod.base();
        let source = {
            let omap = p2
                .cat
                .objects()
                .map(|p| {
                    let (x, y) = p2.obj_parts(p);
                    self.cod.tensor_obj(self.functor.ob(x), self.functor.ob(y))
                })
                .collect();
            let mmap = p2
                .cat
                .morphisms()
                .map(|m| {
                    let (f, g) = p2.mor_parts(m);
                    self.cod.tensor_mor(self.functor.mor(f), self.functor.mor(g))
                })
                .collect();
            Functor::new(Arc::clone(&p2.cat), Arc::clone(dbase), omap, mmap)
                .expect("mu_nat source functor is total")
        };
        let target = self.dom.tensor().then(&self.functor);
        NatTrans::new(source, target, self.mu.clone()).expect("mu components are total")
    }
}

/// Exhaustive lax-monoidal-functor law check: signature, underlying functor
/// laws, endpoints and naturality of mu, endpoints of eps, unitor
/// compatibility, and the hexagon.
pub fn check_lax_monoidal_functor(f: &LaxMonoidalFunctor) -> LawReport {
    let mut report = LawReport::ok();
    let c = f.dom.base();
    let d = f.cod.base();
    if f.functor.dom() != c || f.functor.cod() != d {
        report.push(Violation::Signature {
            detail: "underlying functor does not match the monoidal bases".into(),
        });
        return report;
    }
    report.merge(f.functor.check_laws());
    if !report.is_ok() {
        return report;
    }

    let n = c.n_objects();
    for x in 0..n {
        for y in 0..n {
            let mu = f.mu_at(x, y);
            let src_ok = d.src(mu) == f.cod.tensor_obj(f.functor.ob(x), f.functor.ob(y));
            let tgt_ok = d.tgt(mu) == f.functor.ob(f.dom.tensor_obj(x, y));
            if !src_ok || !tgt_ok {
                report.push(Violation::MuEndpoints { x, y });
            }
        }
    }
    if !report.is_ok() {
        return report;
    }

    // Naturality of mu over all pairs of domain morphisms.
    for a in c.morphisms() {
        for b in c.morphisms() {
            let (x, y) = (c.src(a), c.src(b));
            let (x2, y2) = (c.tgt(a), c.tgt(b));
            let lhs = d.comp(
                f.cod.tensor_mor(f.functor.mor(a), f.functor.mor(b)),
                f.mu_at(x2, y2),
            );
            let rhs = d.comp(
                f.mu_at(x, y),
                f.functor.mor(f.dom.tensor_mor(a, b)),
            );
            if lhs != rhs {
                report.push(Violation::MuNaturality { f: a, g: b });
            }
        }
    }

    let i = f.dom.unit();
    if d.src(f.eps) != f.cod.unit() || d.tgt(f.eps) != f.functor.ob(i) {
        report.push(Violation::EpsEndpoints);
        return report;
    }

    // (eps (x) id_Fx) . mu_{I,x} . F(lambda_x) = lambda_{Fx}
    for x in 0..n {
        let fx = f.functor.ob(x);
        let lhs = d.comp_seq(&[
            f.cod.tensor_mor(f.eps, d.identity(fx)),
            f.mu_at(i, x),
            f.functor.mor(f.dom.lunitor_at(x).forward),
        ]);
        if lhs != f.cod.lunitor_at(fx).forward {
            report.push(Violation::LaxLeftUnitor { x });
        }
    }

    // (id_Fx (x) eps) . mu_{x,I} . F(rho_x) = rho_{Fx}
    for x in 0..n {
        let fx = f.functor.ob(x);
        let lhs = d.comp_seq(&[
            f.cod.tensor_mor(d.identity(fx), f.eps),
            f.mu_at(x, i),
            f.functor.mor(f.dom.runitor_at(x).forward),
        ]);
        if lhs != f.cod.runitor_at(fx).forward {
            report.push(Violation::LaxRightUnitor { x });
        }
    }

    // (mu_{x,y} (x) id_Fz) . mu_{x(x)y, z} . F(assoc_{x,y,z})
    //   = assoc_{Fx,Fy,Fz} . (id_Fx (x) mu_{y,z}) . mu_{x, y(x)z}
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (fx, fy, fz) = (f.functor.ob(x), f.functor.ob(y), f.functor.ob(z));
                let lhs = d.comp_seq(&[
                    f.cod.tensor_mor(f.mu_at(x, y), d.identity(fz)),
                    f.mu_at(f.dom.tensor_obj(x, y), z),
                    f.functor.mor(f.dom.assoc_at(x, y, z).forward),
                ]);
                let rhs = d.comp_seq(&[
                    f.cod.assoc_at(fx, fy, fz).forward,
                    f.cod.tensor_mor(d.identity(fx), f.mu_at(y, z)),
                    f.mu_at(x, f.dom.tensor_obj(y, z)),
                ]);
                if lhs != rhs {
                    report.push(Violation::LaxHexagon { x, y, z });
                }
            }
        }
    }
    report
}

/// Inverses for eps and every mu component, synthesized by iso search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongWitnesses {
    pub mu_inv: Vec<MorId>,
    pub eps_inv: MorId,
}

pub fn strong_witnesses(f: &LaxMonoidalFunctor) -> Option<StrongWitnesses> {
    let d = f.cod.base();
    let eps_inv = d.is_iso(f.eps)?.backward;
    let mu_inv = f
        .mu
        .iter()
        .map(|&m| d.is_iso(m).map(|w| w.backward))
        .collect::<Option<Vec<_>>>()?;
    Some(StrongWitnesses { mu_inv, eps_inv })
}

pub fn is_strong_monoidal(f: &LaxMonoidalFunctor) -> bool {
    strong_witnesses(f).is_some()
}

/// Diagrammatic composite of lax monoidal functors:
/// mu^{F.G}_{x,y} = mu^G_{Fx,Fy} . G(mu^F_{x,y}), eps^{F.G} = eps^G . G(eps^F).
pub fn compose_lax_monoidal(f: &LaxMonoidalFunctor, g: &LaxMonoidalFunctor) -> LaxMonoidalFunctor {
    assert_eq!(f.cod, g.dom, "compose_lax_monoidal: middle category mismatch");
    let e = g.cod.base();
    let n = f.dom.base().n_objects();
    let mu = (0..n * n)
        .map(|p| {
            let (x, y) = f.dom.prod2().obj_parts(p);
            e.comp(
                g.mu_at(f.functor.ob(x), f.functor.ob(y)),
                g.functor.mor(f.mu_at(x, y)),
            )
        })
        .collect();
    let eps = e.comp(g.eps, g.functor.mor(f.eps));
    LaxMonoidalFunctor {
        dom: Arc::clone(&f.dom),
        cod: Arc::clone(&g.cod),
        functor: f.functor.then(&g.functor),
        mu,
        eps,
    }
}

/// A natural transformation between lax monoidal functors, together with
/// its endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidalNatTrans {
    pub source: LaxMonoidalFunctor,
    pub target: LaxMonoidalFunctor,
    pub nat: NatTrans,
}

impl MonoidalNatTrans {
    pub fn identity(f: &LaxMonoidalFunctor) -> Self {
        MonoidalNatTrans {
            source: f.clone(),
            target: f.clone(),
            nat: NatTrans::identity(&f.functor),
        }
    }

    pub fn at(&self, x: ObjId) -> MorId {
        self.nat.at(x)
    }
}

/// Naturality plus the monoidal 2-cell laws:
/// `(t_x (x) t_y) . mu^G = mu^F . t_{x (x) y}` and `eps^F . t_I = eps^G`.
pub fn check_monoidal_nat_trans(t: &MonoidalNatTrans) -> LawReport {
    let mut report = LawReport::ok();
    let f = &t.source;
    let g = &t.target;
    if f.dom != g.dom || f.cod != g.cod {
        report.push(Violation::Signature {
            detail: "monoidal nat trans endpoints live in different hom-categories".into(),
        });
        return report;
    }
    if t.nat.source() != &f.functor || t.nat.target() != &g.functor {
        report.push(Violation::Signature {
            detail: "underlying nat trans endpoints disagree with the lax functors".into(),
        });
        return report;
    }
    report.merge(t.nat.check_naturality());
    if !report.is_ok() {
        return report;
    }
    let d = f.cod.base();
    let n = f.dom.base().n_objects();
    for x in 0..n {
        for y in 0..n {
            let lhs = d.comp(
                f.cod.tensor_mor(t.nat.at(x), t.nat.at(y)),
                g.mu_at(x, y),
            );
            let rhs = d.comp(f.mu_at(x, y), t.nat.at(f.dom.tensor_obj(x, y)));
            if lhs != rhs {
                report.push(Violation::MonNatTensor { x, y });
            }
        }
    }
    let i = f.dom.unit();
    if d.comp(f.eps, t.nat.at(i)) != g.eps {
        report.push(Violation::MonNatUnit);
    }
    report
}

/// All monoidal natural transformations F => G: enumerate candidate
/// component families, filter by naturality and the monoidal 2-cell laws.
pub fn enumerate_monoidal_nat_trans(
    f: &LaxMonoidalFunctor,
    g: &LaxMonoidalFunctor,
    bounds: &Bounds,
) -> Result<Vec<MonoidalNatTrans>, WorkLimit> {
    let nats = enumerate_nat_trans(&f.functor, &g.functor, bounds)?;
    Ok(nats
        .into_iter()
        .map(|nat| MonoidalNatTrans {
            source: f.clone(),
            target: g.clone(),
            nat,
        })
        .filter(|t| check_monoidal_nat_trans(t).is_ok())
        .collect())
}

/// All lax monoidal functors dom -> cod, capped at `cap` results: brute
/// force over the carrier functors and every mu/eps cell assignment,
/// filtered by the coherence laws. Enumeration order is carrier order,
/// then lexicographic over cells, so output is deterministic.
pub fn enumerate_lax_monoidal(
    dom: &Arc<MonoidalCategory>,
    cod: &Arc<MonoidalCategory>,
    cap: usize,
    bounds: &Bounds,
) -> Result<Vec<LaxMonoidalFunctor>, WorkLimit> {
    let mut out = Vec::new();
    let n = dom.base().n_objects();
    let e = cod.base();
    for f in enumerate_functors(dom.base(), cod.base(), bounds)? {
        // One hom-set per mu cell, plus one for eps at the end.
        let mut slots: Vec<Vec<MorId>> = Vec::with_capacity(n * n + 1);
        for x in 0..n {
            for y in 0..n {
                slots.push(e.hom(
                    cod.tensor_obj(f.ob(x), f.ob(y)),
                    f.ob(dom.tensor_obj(x, y)),
                ));
            }
        }
        slots.push(e.hom(cod.unit(), f.ob(dom.unit())));
        if slots.iter().any(Vec::is_empty) {
            continue;
        }
        let combos: u128 = slots.iter().map(|s| s.len() as u128).product();
        bounds.admit("enumerate_lax_monoidal", combos)?;
        let mut idx = vec![0usize; slots.len()];
        'odometer: loop {
            let mu: Vec<MorId> = (0..n * n).map(|i| slots[i][idx[i]]).collect();
            let eps = slots[n * n][idx[n * n]];
            let cand =
                LaxMonoidalFunctor::new(Arc::clone(dom), Arc::clone(cod), f.clone(), mu, eps);
            if check_lax_monoidal_functor(&cand).is_ok() {
                out.push(cand);
                if out.len() == cap {
                    return Ok(out);
                }
            }
            let mut pos = slots.len();
            loop {
                if pos == 0 {
                    break 'odometer;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < slots[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomCatError {
    #[error("candidate {index} does not share the common dom/cod monoidal categories")]
    MixedSignature { index: usize },
    #[error("candidate {index} has no identity 2-cell (is it lawful?)")]
    MissingIdentity { index: usize },
    #[error("vertical composite of cells {left} and {right} is not among the enumerated cells")]
    CompositionNotClosed { left: usize, right: usize },
    #[error(transparent)]
    WorkLimit(#[from] WorkLimit),
}

/// The hom-category of lax monoidal functors, presented on a finite
/// candidate list: objects are the candidates, morphisms are all monoidal
/// natural transformations between them, composition is vertical.
pub struct HomCat {
    pub cat: Arc<FinCat>,
    pub functors: Vec<LaxMonoidalFunctor>,
    pub cells: Vec<MonoidalNatTrans>,
    /// Endpoints of each cell as candidate indices.
    pub cell_endpoints: Vec<(usize, usize)>,
}

pub fn monoidal_hom_category(
    candidates: &[LaxMonoidalFunctor],
    bounds: &Bounds,
) -> Result<HomCat, HomCatError> {
    for (i, f) in candidates.iter().enumerate() {
        if f.dom != candidates[0].dom || f.cod != candidates[0].cod {
            return Err(HomCatError::MixedSignature { index: i });
        }
    }
    let mut cells = Vec::new();
    let mut cell_endpoints = Vec::new();
    for (i, f) in candidates.iter().enumerate() {
        for (j, g) in candidates.iter().enumerate() {
            for t in enumerate_monoidal_nat_trans(f, g, bounds)? {
                cells.push(t);
                cell_endpoints.push((i, j));
            }
        }
    }
    let mut identity = vec![usize::MAX; candidates.len()];
    for (k, t) in cells.iter().enumerate() {
        let (i, j) = cell_endpoints[k];
        if i == j && t.nat.components() == NatTrans::identity(&t.source.functor).components() {
            identity[i] = k;
        }
    }
    for (i, &id) in identity.iter().enumerate() {
        if id == usize::MAX {
            return Err(HomCatError::MissingIdentity { index: i });
        }
    }
    let m = cells.len();
    let mut compose = vec![None; m * m];
    for a in 0..m {
        for b in 0..m {
            let (i, j) = cell_endpoints[a];
            let (j2, k) = cell_endpoints[b];
            if j != j2 {
                continue;
            }
            let composite = cells[a].nat.then_vertical(&cells[b].nat);
            let found = cells.iter().enumerate().position(|(c, t)| {
                cell_endpoints[c] == (i, k) && t.nat.components() == composite.components()
            });
            match found {
                Some(c) => compose[a * m + b] = Some(c),
                None => return Err(HomCatError::CompositionNotClosed { left: a, right: b }),
            }
        }
    }
    let morphisms = cell_endpoints.iter().map(|&(i, j)| (i, j)).collect();
    let cat = FinCat::from_tables(candidates.len(), morphisms, identity, compose)
        .expect("hom-category tables are well-formed by construction");
    Ok(HomCat {
        cat: Arc::new(cat),
        functors: candidates.to_vec(),
        cells,
        cell_endpoints,
    })
}

/// Precomposition with a fixed lax monoidal functor `h: C -> D`, acting on
/// lax monoidal functors `D -> E` and monoidal 2-cells between them.
pub struct MonoidalPrecomp {
    pub h: LaxMonoidalFunctor,
}

impl MonoidalPrecomp {
    pub fn new(h: LaxMonoidalFunctor) -> Self {
        MonoidalPrecomp { h }
    }

    pub fn on_functor(&self, g: &LaxMonoidalFunctor) -> LaxMonoidalFunctor {
        compose_lax_monoidal(&self.h, g)
    }

    pub fn on_cell(&self, t: &MonoidalNatTrans) -> MonoidalNatTrans {
        MonoidalNatTrans {
            source: self.on_functor(&t.source),
            target: self.on_functor(&t.target),
            nat: whisker_left(self.h.functor(), &t.nat),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn arc(m: MonoidalCategory) -> Arc<MonoidalCategory> {
        Arc::new(m)
    }

    #[test]
    fn identity_lax_functors_are_lawful_and_strong() {
        for (_, m) in fixtures::all_monoidal() {
            let m = arc(m);
            let id = LaxMonoidalFunctor::identity(&m);
            assert!(check_lax_monoidal_functor(&id).is_ok());
            assert!(is_strong_monoidal(&id));
        }
    }

    #[test]
    fn parity_functor_is_strong_monoidal() {
        // Z2FAT -> Z2D: objects to their parity, the unique morphisms to
        // identities; mu and eps are identities.
        let fat = arc(fixtures::z2fat());
        let z2 = arc(fixtures::z2d());
        let omap: Vec<_> = vec![0, 1, 0, 1];
        let mmap: Vec<_> = fat
            .base()
            .morphisms()
            .map(|m| omap[fat.base().src(m)])
            .collect();
        let functor = Functor::new(
            Arc::clone(fat.base()),
            Arc::clone(z2.base()),
            omap.clone(),
            mmap,
        )
        .unwrap();
        let mu = (0..16)
            .map(|p| {
                let (x, y) = fat.prod2().obj_parts(p);
                (omap[x] + omap[y]) % 2
            })
            .collect();
        let eps = 0; // I_Z2D = 0 = F(2)
        let f = LaxMonoidalFunctor::new(fat, z2, functor, mu, eps);
        assert!(check_lax_monoidal_functor(&f).is_ok());
        assert!(is_strong_monoidal(&f));
    }

    #[test]
    fn non_invertible_eps_is_not_strong() {
        // Identity functor on B(M2) with eps = z. The unitor laws fail (the
        // checker must say so) and strongness fails because z has no inverse.
        let m = arc(fixtures::bm2_mon());
        let mut f = LaxMonoidalFunctor::identity(&m);
        f.eps = 1;
        let report = check_lax_monoidal_functor(&f);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::LaxLeftUnitor { .. })));
        assert!(!is_strong_monoidal(&f));
    }

    #[test]
    fn monoidal_filter_is_strictly_finer_on_bz2() {
        // On B(Z/2) there are two natural transformations id => id but only
        // the identity satisfies the monoidal 2-cell law (t + t = t).
        let m = arc(fixtures::bz2_mon());
        let id = LaxMonoidalFunctor::identity(&m);
        let plain = enumerate_nat_trans(id.functor(), id.functor(), &Bounds::new(100)).unwrap();
        assert_eq!(plain.len(), 2);
        let monoidal = enumerate_monoidal_nat_trans(&id, &id, &Bounds::new(100)).unwrap();
        assert_eq!(monoidal.len(), 1);
        assert!(check_monoidal_nat_trans(&monoidal[0]).is_ok());
    }

    #[test]
    fn composition_of_lax_functors() {
        let m = arc(fixtures::z2fatg());
        let id = LaxMonoidalFunctor::identity(&m);
        let twice = compose_lax_monoidal(&id, &id);
        assert!(check_lax_monoidal_functor(&twice).is_ok());
        assert_eq!(&twice, &id);
    }

    #[test]
    fn hom_category_closes_vertically() {
        let m = arc(fixtures::bz2_mon());
        let id = LaxMonoidalFunctor::identity(&m);
        let hom = monoidal_hom_category(&[id.clone(), id], &Bounds::new(100)).unwrap();
        assert_eq!(hom.cat.n_objects(), 2);
        // One monoidal cell per ordered pair.
        assert_eq!(hom.cat.n_morphisms(), 4);
        assert!(hom.cat.check_category_laws().unwrap().is_ok());
    }

    #[test]
    fn precomposition_acts_on_cells() {
        let m = arc(fixtures::z2d());
        let id = LaxMonoidalFunctor::identity(&m);
        let pre = MonoidalPrecomp::new(id.clone());
        let cell = MonoidalNatTrans::identity(&id);
        let out = pre.on_cell(&cell);
        assert!(check_monoidal_nat_trans(&out).is_ok());
    }

    #[test]
    fn lax_enumeration_on_bz2_finds_all_four() {
        // Endofunctors of B(Z/2): identity and collapse; each admits
        // exactly the untwisted and the sigma-twisted cell pair.
        let m = arc(fixtures::bz2_mon());
        let all = enumerate_lax_monoidal(&m, &m, 10, &Bounds::new(10_000)).unwrap();
        assert_eq!(all.len(), 4);
        assert!(all.iter().any(|f| f == &LaxMonoidalFunctor::identity(&m)));
        for f in &all {
            assert!(check_lax_monoidal_functor(f).is_ok());
            assert!(is_strong_monoidal(f));
        }
        let capped = enumerate_lax_monoidal(&m, &m, 2, &Bounds::new(10_000)).unwrap();
        assert_eq!(capped.len(), 2);
    }

    #[test]
    fn lax_enumeration_between_discrete_groups_is_hom_count() {
        // On discrete bases every hom-set is {id}, so lax functors are
        // exactly monoid homomorphisms: Z/2 -> Z/3 has only zero, and
        // Z/2 -> Z/2 has zero and the identity.
        let z2 = arc(fixtures::zkd(2));
        let z3 = arc(fixtures::zkd(3));
        let to_z3 = enumerate_lax_monoidal(&z2, &z3, 10, &Bounds::new(10_000)).unwrap();
        assert_eq!(to_z3.len(), 1);
        assert_eq!(to_z3[0].functor().omap(), &[0, 0]);
        let endo = enumerate_lax_monoidal(&z2, &z2, 10, &Bounds::new(10_000)).unwrap();
        assert_eq!(endo.len(), 2);
    }
}
