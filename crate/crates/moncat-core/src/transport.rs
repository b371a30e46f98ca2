//! Skeletalization and transport of monoidal structure along a weak
//! equivalence into a skeletal target, plus the machinery for verifying
//! that precomposition with the transporting functor is an equivalence on
//! lax monoidal functor categories.
//!
//! All liftings are computed pointwise via the weak equivalence's section,
//! eta isos, and fully-faithfulness inverse — never by searching functor
//! spaces. When the target is reached by `skeletalize`, every eta is an
//! identity and the formulas collapse to the textbook ones; the general
//! eta-conjugated forms are kept so transport works along any weak
//! equivalence with a skeletal codomain.

use std::sync::Arc;

use serde::Serialize;

use crate::bounds::{Bounds, WorkLimit};
use crate::fincat::{product_category, FinCat, IsoWitness, MorId, ObjId};
use crate::functor::{weq_product, Functor, NatTrans, WeakEquivalence};
use crate::laxmon::{
    check_lax_monoidal_functor, check_monoidal_nat_trans, compose_lax_monoidal,
    enumerate_monoidal_nat_trans, is_strong_monoidal, strong_witnesses, LaxMonoidalFunctor,
    MonoidalPrecomp, MonoidalNatTrans, StrongWitnesses,
};
use crate::monoidal::{
    assemble_monoidal, AssociatorData, MonoidalCategory, StagedError, TensorData, UnitData,
    UnitorData,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransportError {
    #[error("category is not skeletal: distinct objects are isomorphic")]
    NotSkeletal,
    #[error("weak equivalence domain does not match the monoidal base")]
    BaseMismatch,
    #[error("transported tensor-preservation witness is not componentwise invertible")]
    NotStrong,
    #[error(transparent)]
    Layer(#[from] StagedError),
}

/// A finite category with checked evidence that isomorphic objects are
/// equal. Targets of transport must be skeletal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeletalCat {
    cat: Arc<FinCat>,
}

impl SkeletalCat {
    pub fn new(cat: Arc<FinCat>) -> Result<Self, TransportError> {
        if cat.is_skeletal() {
            Ok(SkeletalCat { cat })
        } else {
            Err(TransportError::NotSkeletal)
        }
    }

    pub fn cat(&self) -> &Arc<FinCat> {
        &self.cat
    }
}

/// Collapses each iso class of C onto its smallest object. Returns the
/// skeleton D (the full subcategory on class representatives, morphisms
/// re-indexed densely in id order) and the normalization weak equivalence
/// H: C -> D, whose section picks the representatives with identity etas.
pub fn skeletalize(c: &Arc<FinCat>) -> (SkeletalCat, WeakEquivalence) {
    let n = c.n_objects();
    // rep[x] = smallest object isomorphic to x; phi[x]: rep[x] -> x.
    let mut rep = vec![0usize; n];
    let mut phi = vec![
        IsoWitness {
            forward: 0,
            backward: 0,
        };
        n
    ];
    for x in 0..n {
        let mut chosen = None;
        for y in 0..x {
            if rep[y] != y {
                continue;
            }
            if let Some(&w) = c.find_isos(y, x).first() {
                chosen = Some((y, w));
                break;
            }
        }
        let (r, w) = chosen.unwrap_or((
            x,
            IsoWitness {
                forward: c.identity(x),
                backward: c.identity(x),
            },
        ));
        rep[x] = r;
        phi[x] = w;
    }

    let reps: Vec<ObjId> = (0..n).filter(|&x| rep[x] == x).collect();
    let mut obj_new = vec![usize::MAX; n];
    for (i, &r) in reps.iter().enumerate() {
        obj_new[r] = i;
    }

    let ms: Vec<MorId> = c
        .morphisms()
        .filter(|&f| rep[c.src(f)] == c.src(f) && rep[c.tgt(f)] == c.tgt(f))
        .collect();
    let mut mor_new = vec![usize::MAX; c.n_morphisms()];
    for (i, &f) in ms.iter().enumerate() {
        mor_new[f] = i;
    }

    let morphisms = ms
        .iter()
        .map(|&f| (obj_new[c.src(f)], obj_new[c.tgt(f)]))
        .collect();
    let identity = reps.iter().map(|&r| mor_new[c.identity(r)]).collect();
    let mut compose = vec![None; ms.len() * ms.len()];
    for (a, &f) in ms.iter().enumerate() {
        for (b, &g) in ms.iter().enumerate() {
            if let Some(h) = c.compose(f, g) {
                compose[a * ms.len() + b] = Some(mor_new[h]);
            }
        }
    }
    let d = Arc::new(
        FinCat::from_tables(reps.len(), morphisms, identity, compose)
            .expect("full subcategory tables are well-formed"),
    );

    let omap = (0..n).map(|x| obj_new[rep[x]]).collect();
    let mmap = c
        .morphisms()
        .map(|f| {
            let (x, y) = (c.src(f), c.tgt(f));
            mor_new[c.comp_seq(&[phi[x].forward, f, phi[y].backward])]
        })
        .collect();
    let h = Functor::new(Arc::clone(c), Arc::clone(&d), omap, mmap)
        .expect("skeletalization functor is total");
    let weq = WeakEquivalence::promote(h).expect("skeletalization is a weak equivalence");
    (
        SkeletalCat::new(d).expect("representatives are pairwise non-isomorphic"),
        weq,
    )
}

/// Lifts G0: C -> E along a weak equivalence W: C -> D to G: D -> E with a
/// natural isomorphism W.G => G0.
///
/// G(d) = G0(s d); on a morphism g the transported preimage
/// ff_inverse(eta_d.fwd . g . eta_d'.bwd) is pushed through G0.
pub fn lift_functor_along(w: &WeakEquivalence, g0: &Functor) -> (Functor, NatTrans) {
    assert_eq!(w.dom(), g0.dom(), "lift_functor_along: domain mismatch");
    let d = w.cod();
    let omap: Vec<ObjId> = d.objects().map(|x| g0.ob(w.section[x])).collect();
    let mmap: Vec<MorId> = d
        .morphisms()
        .map(|g| {
            let (x, y) = (d.src(g), d.tgt(g));
            let pre = d.comp_seq(&[w.eta[x].forward, g, w.eta[y].backward]);
            g0.mor(w.ff_inverse(w.section[x], w.section[y], pre))
        })
        .collect();
    let lifted = Functor::new(Arc::clone(d), Arc::clone(g0.cod()), omap, mmap)
        .expect("lifted functor is total");
    let components = w
        .dom()
        .objects()
        .map(|c| {
            let wc = w.functor.ob(c);
            g0.mor(w.ff_inverse(w.section[wc], c, w.eta[wc].forward))
        })
        .collect();
    let iso = NatTrans::new(w.functor.then(&lifted), g0.clone(), components)
        .expect("lift comparison components are total");
    (lifted, iso)
}

/// The lifted tensor on W's codomain plus the tensor-preservation iso
/// mu_H: (W x W).tensor_hat => tensor.W, obtained by lifting tensor.W
/// along W x W.
pub fn transport_tensor(w: &WeakEquivalence, m: &MonoidalCategory) -> (TensorData, NatTrans) {
    let d = w.cod();
    let p2d = product_category(d, d);
    let ww = weq_product(w, w, m.prod2(), &p2d);
    let g0 = m.tensor().then(&w.functor);
    let (tensor, mu_h) = lift_functor_along(&ww, &g0);
    (TensorData { tensor }, mu_h)
}

/// The lifted unit W(I) with its (identity) unit-preservation witness.
pub fn transport_unit(w: &WeakEquivalence, m: &MonoidalCategory) -> (ObjId, MorId) {
    let unit = w.functor.ob(m.unit());
    (unit, w.cod().identity(unit))
}

fn tensor_of(
    tensor_hat: &Functor,
    p2d: &crate::fincat::Product,
    f: MorId,
    g: MorId,
) -> MorId {
    tensor_hat.mor(p2d.mor(f, g))
}

/// Transported unitors. At d with c = s(d):
/// lambda_hat_d = (id (x) eta_d.bwd) . mu_{I,c} . W(lambda_c) . eta_d.fwd,
/// and symmetrically for rho_hat; backward components are the reversed
/// chains of inverses.
pub fn transport_unitors(
    w: &WeakEquivalence,
    m: &MonoidalCategory,
    tensor_hat: &Functor,
    mu: &[IsoWitness],
    unit_hat: ObjId,
) -> (Vec<IsoWitness>, Vec<IsoWitness>) {
    let d = w.cod();
    let p2d = product_category(d, d);
    let id_unit = d.identity(unit_hat);
    let i = m.unit();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for dd in d.objects() {
        let c = w.section[dd];
        let eta = w.eta[dd];
        let lam = m.lunitor_at(c);
        let mu_ic = mu[m.prod2().obj(i, c)];
        left.push(IsoWitness {
            forward: d.comp_seq(&[
                tensor_of(tensor_hat, &p2d, id_unit, eta.backward),
                mu_ic.forward,
                w.functor.mor(lam.forward),
                eta.forward,
            ]),
            backward: d.comp_seq(&[
                eta.backward,
                w.functor.mor(lam.backward),
                mu_ic.backward,
                tensor_of(tensor_hat, &p2d, id_unit, eta.forward),
            ]),
        });
        let rho = m.runitor_at(c);
        let mu_ci = mu[m.prod2().obj(c, i)];
        right.push(IsoWitness {
            forward: d.comp_seq(&[
                tensor_of(tensor_hat, &p2d, eta.backward, id_unit),
                mu_ci.forward,
                w.functor.mor(rho.forward),
                eta.forward,
            ]),
            backward: d.comp_seq(&[
                eta.backward,
                w.functor.mor(rho.backward),
                mu_ci.backward,
                tensor_of(tensor_hat, &p2d, eta.forward, id_unit),
            ]),
        });
    }
    (left, right)
}

/// Transported associator: conjugate W(assoc) by the eta isos and the
/// mu_H witnesses on both sides.
pub fn transport_associator(
    w: &WeakEquivalence,
    m: &MonoidalCategory,
    tensor_hat: &Functor,
    mu: &[IsoWitness],
) -> Vec<IsoWitness> {
    let d = w.cod();
    let p2d = product_category(d, d);
    let p2c = m.prod2();
    let nd = d.n_objects();
    let mut out = Vec::with_capacity(nd * nd * nd);
    for d1 in 0..nd {
        for d2 in 0..nd {
            for d3 in 0..nd {
                let (c1, c2, c3) = (w.section[d1], w.section[d2], w.section[d3]);
                let (e1, e2, e3) = (w.eta[d1], w.eta[d2], w.eta[d3]);
                let (wc1, wc3) = (w.functor.ob(c1), w.functor.ob(c3));
                let c12 = m.tensor_obj(c1, c2);
                let c23 = m.tensor_obj(c2, c3);
                let alpha = m.assoc_at(c1, c2, c3);
                let (id1, id3) = (d.identity(wc1), d.identity(wc3));
                let t = |f, g| tensor_of(tensor_hat, &p2d, f, g);
                let forward = d.comp_seq(&[
                    t(t(e1.backward, e2.backward), e3.backward),
                    t(mu[p2c.obj(c1, c2)].forward, id3),
                    mu[p2c.obj(c12, c3)].forward,
                    w.functor.mor(alpha.forward),
                    mu[p2c.obj(c1, c23)].backward,
                    t(id1, mu[p2c.obj(c2, c3)].backward),
                    t(e1.forward, t(e2.forward, e3.forward)),
                ]);
                let backward = d.comp_seq(&[
                    t(e1.backward, t(e2.backward, e3.backward)),
                    t(id1, mu[p2c.obj(c2, c3)].forward),
                    mu[p2c.obj(c1, c23)].forward,
                    w.functor.mor(alpha.backward),
                    mu[p2c.obj(c12, c3)].backward,
                    t(mu[p2c.obj(c1, c2)].backward, id3),
                    t(t(e1.forward, e2.forward), e3.forward),
                ]);
                out.push(IsoWitness { forward, backward });
            }
        }
    }
    out
}

/// The full transported package: a monoidal structure on the codomain
/// (validated layer by layer) and the transporting functor equipped as a
/// strong monoidal functor.
#[derive(Debug, Clone)]
pub struct TransportedMonoidal {
    pub monoidal: Arc<MonoidalCategory>,
    pub h_mon: LaxMonoidalFunctor,
    pub strong: StrongWitnesses,
    pub weq: WeakEquivalence,
}

pub fn transport_monoidal(
    w: &WeakEquivalence,
    m: &Arc<MonoidalCategory>,
) -> Result<TransportedMonoidal, TransportError> {
    if w.dom() != m.base() {
        return Err(TransportError::BaseMismatch);
    }
    if !w.cod().is_skeletal() {
        return Err(TransportError::NotSkeletal);
    }
    let (tensor, mu_h) = transport_tensor(w, m);
    let mu_iso = mu_h.pointwise_isos().ok_or(TransportError::NotStrong)?;
    let (unit_hat, eps_h) = transport_unit(w, m);
    let (left, right) = transport_unitors(w, m, &tensor.tensor, &mu_iso, unit_hat);
    let assoc = transport_associator(w, m, &tensor.tensor, &mu_iso);
    let monoidal = Arc::new(assemble_monoidal(
        tensor,
        UnitData { unit: unit_hat },
        UnitorData { left, right },
        AssociatorData { components: assoc },
    )?);
    let h_mon = LaxMonoidalFunctor::new(
        Arc::clone(m),
        Arc::clone(&monoidal),
        w.functor.clone(),
        mu_h.components().to_vec(),
        eps_h,
    );
    let strong = strong_witnesses(&h_mon).ok_or(TransportError::NotStrong)?;
    Ok(TransportedMonoidal {
        monoidal,
        h_mon,
        strong,
        weq: w.clone(),
    })
}

/// The natural isomorphisms W.(I_hat (x)_hat -) => (I (x) -).W and
/// W.(- (x)_hat I_hat) => (- (x) I).W. Componentwise these are the mu_H
/// witnesses at (I, c) and (c, I); the unit side contributes nothing
/// because I_hat = W(I) on the nose.
pub fn lift_pretensor_iso(t: &TransportedMonoidal) -> (NatTrans, NatTrans) {
    let w = &t.weq;
    let m_c = t.h_mon.dom();
    let m_d = &t.monoidal;
    let i = m_c.unit();
    let left_source = w.functor.then(&m_d.fix_left(m_d.unit()));
    let left_target = m_c.fix_left(i).then(&w.functor);
    let left = NatTrans::new(
        left_source,
        left_target,
        w.dom().objects().map(|c| t.h_mon.mu_at(i, c)).collect(),
    )
    .expect("pretensor components are total");
    let right_source = w.functor.then(&m_d.fix_right(m_d.unit()));
    let right_target = m_c.fix_right(i).then(&w.functor);
    let right = NatTrans::new(
        right_source,
        right_target,
        w.dom().objects().map(|c| t.h_mon.mu_at(c, i)).collect(),
    )
    .expect("pretensor components are total");
    (left, right)
}

/// Given G: D -> E and a lax structure on the composite W.G, produces the
/// unique lax structure on G whose composite with H_mon reproduces the
/// given one, together with that comparison (an identity-component
/// monoidal nat iso).
pub fn lift_lax_structure(
    t: &TransportedMonoidal,
    g: &Functor,
    composite: &LaxMonoidalFunctor,
) -> (LaxMonoidalFunctor, MonoidalNatTrans) {
    let w = &t.weq;
    assert_eq!(
        composite.functor(),
        &w.functor.then(g),
        "lift_lax_structure: composite functor must be W.G"
    );
    let m_d = &t.monoidal;
    let m_e = composite.cod();
    let e = m_e.base();
    let d = w.cod();
    let p2d = product_category(d, d);
    let p2c = t.h_mon.dom().prod2();
    let nd = d.n_objects();
    let mut mu = Vec::with_capacity(nd * nd);
    for d1 in 0..nd {
        for d2 in 0..nd {
            let (c1, c2) = (w.section[d1], w.section[d2]);
            let (e1, e2) = (w.eta[d1], w.eta[d2]);
            mu.push(e.comp_seq(&[
                m_e.tensor_mor(g.mor(e1.backward), g.mor(e2.backward)),
                composite.mu_at(c1, c2),
                g.mor(t.strong.mu_inv[p2c.obj(c1, c2)]),
                g.mor(tensor_of(m_d.tensor(), &p2d, e1.forward, e2.forward)),
            ]));
        }
    }
    let eps = composite.eps();
    let lifted = LaxMonoidalFunctor::new(
        Arc::clone(m_d),
        Arc::clone(m_e),
        g.clone(),
        mu,
        eps,
    );
    let recomposed = compose_lax_monoidal(&t.h_mon, &lifted);
    let nat = NatTrans::new(
        recomposed.functor().clone(),
        composite.functor().clone(),
        w.dom()
            .objects()
            .map(|c| e.identity(composite.functor().ob(c)))
            .collect(),
    )
    .expect("comparison components are total");
    let comparison = MonoidalNatTrans {
        source: recomposed,
        target: composite.clone(),
        nat,
    };
    (lifted, comparison)
}

/// Per-pair 2-cell counts for the fully-faithfulness half of the
/// universal property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairCount {
    pub source: usize,
    pub target: usize,
    pub direct: usize,
    pub whiskered: usize,
    pub bijective: bool,
}

/// Outcome of factoring one lax monoidal functor C -> E through H.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub target: usize,
    pub lifted_lawful: bool,
    pub comparison_ok: bool,
    pub iso_ok: bool,
    pub strong_ok: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrecompReport {
    /// Candidate indices rejected by the law checker before counting.
    pub invalid_candidates: Vec<usize>,
    /// Target indices rejected by the law checker before factoring.
    pub invalid_targets: Vec<usize>,
    /// Indices skipped in strong mode for lacking invertible witnesses.
    pub skipped_non_strong: Vec<usize>,
    pub pairs: Vec<PairCount>,
    pub factorizations: Vec<Factorization>,
    pub strong_mode: bool,
}

impl PrecompReport {
    pub fn is_ok(&self) -> bool {
        self.invalid_candidates.is_empty()
            && self.invalid_targets.is_empty()
            && self.pairs.iter().all(|p| p.bijective)
            && self.factorizations.iter().all(|f| {
                f.lifted_lawful && f.comparison_ok && f.iso_ok && f.strong_ok != Some(false)
            })
    }
}

/// Executable form of the completion's universal property, on finite data:
/// (a) whiskering by H is a bijection between monoidal nat trans sets for
/// every pair of valid candidates D -> E; (b) every supplied lax monoidal
/// functor C -> E factors through H up to a verified monoidal nat iso.
pub fn verify_precomp_equivalence(
    t: &TransportedMonoidal,
    e_mon: &Arc<MonoidalCategory>,
    candidates: &[LaxMonoidalFunctor],
    targets: &[LaxMonoidalFunctor],
    strong_mode: bool,
    bounds: &Bounds,
) -> Result<PrecompReport, WorkLimit> {
    let mut report = PrecompReport {
        invalid_candidates: Vec::new(),
        invalid_targets: Vec::new(),
        skipped_non_strong: Vec::new(),
        pairs: Vec::new(),
        factorizations: Vec::new(),
        strong_mode,
    };
    let mut valid = Vec::new();
    for (i, cand) in candidates.iter().enumerate() {
        if cand.dom() != &t.monoidal || cand.cod() != e_mon {
            report.invalid_candidates.push(i);
            continue;
        }
        if !check_lax_monoidal_functor(cand).is_ok() {
            report.invalid_candidates.push(i);
            continue;
        }
        if strong_mode && !is_strong_monoidal(cand) {
            report.skipped_non_strong.push(i);
            continue;
        }
        valid.push(i);
    }

    let pre = MonoidalPrecomp::new(t.h_mon.clone());
    for &i in &valid {
        for &j in &valid {
            let direct = enumerate_monoidal_nat_trans(&candidates[i], &candidates[j], bounds)?;
            let hf = pre.on_functor(&candidates[i]);
            let hg = pre.on_functor(&candidates[j]);
            let whiskered = enumerate_monoidal_nat_trans(&hf, &hg, bounds)?;
            let mut images: Vec<Vec<MorId>> = direct
                .iter()
                .map(|cell| pre.on_cell(cell).nat.components().to_vec())
                .collect();
            images.sort();
            let distinct = images.windows(2).all(|w| w[0] != w[1]);
            let covered = images.iter().all(|img| {
                whiskered
                    .iter()
                    .any(|cell| cell.nat.components() == img.as_slice())
            });
            report.pairs.push(PairCount {
                source: i,
                target: j,
                direct: direct.len(),
                whiskered: whiskered.len(),
                bijective: distinct && covered && direct.len() == whiskered.len(),
            });
        }
    }

    let e = e_mon.base();
    for (k, f0) in targets.iter().enumerate() {
        if f0.dom() != t.h_mon.dom() || f0.cod() != e_mon {
            report.invalid_targets.push(k);
            continue;
        }
        if !check_lax_monoidal_functor(f0).is_ok() {
            report.invalid_targets.push(k);
            continue;
        }
        if strong_mode && !is_strong_monoidal(f0) {
            report.skipped_non_strong.push(candidates.len() + k);
            continue;
        }
        let (g, nu) = lift_functor_along(&t.weq, f0.functor());
        let nu_iso = nu
            .pointwise_isos()
            .expect("lift comparison is componentwise iso");
        // Conjugate F0's witnesses along nu to equip the composite W.G.
        let m_c = t.h_mon.dom();
        let nc = m_c.base().n_objects();
        let mut mu_prime = Vec::with_capacity(nc * nc);
        for c1 in 0..nc {
            for c2 in 0..nc {
                mu_prime.push(e.comp_seq(&[
                    e_mon.tensor_mor(nu_iso[c1].forward, nu_iso[c2].forward),
                    f0.mu_at(c1, c2),
                    nu_iso[m_c.tensor_obj(c1, c2)].backward,
                ]));
            }
        }
        let eps_prime = e.comp(f0.eps(), nu_iso[m_c.unit()].backward);
        let composite = LaxMonoidalFunctor::new(
            Arc::clone(m_c),
            Arc::clone(e_mon),
            t.weq.functor.then(&g),
            mu_prime,
            eps_prime,
        );
        let (lifted, comparison) = lift_lax_structure(t, &g, &composite);
        let lifted_lawful = check_lax_monoidal_functor(&lifted).is_ok();
        let comparison_ok = check_monoidal_nat_trans(&comparison).is_ok();
        let nu_mon = MonoidalNatTrans {
            source: compose_lax_monoidal(&t.h_mon, &lifted),
            target: f0.clone(),
            nat: nu,
        };
        let iso_ok = check_monoidal_nat_trans(&nu_mon).is_ok()
            && nu_mon.nat.pointwise_isos().is_some();
        let strong_ok = strong_mode.then(|| is_strong_monoidal(&lifted));
        report.factorizations.push(Factorization {
            target: k,
            lifted_lawful,
            comparison_ok,
            iso_ok,
            strong_ok,
        });
    }
    Ok(report)
}
