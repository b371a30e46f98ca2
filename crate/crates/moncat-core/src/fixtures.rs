//! Shared example categories.
//!
//! These are the reference objects for unit tests, the acceptance suite,
//! and the `fixtures/` files; they are constructed in code so tests do not
//! depend on the parser. Monoidal fixtures go through [`assemble_monoidal`]
//! and are therefore validated on construction.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::fincat::{product_category, CatBuilder, FinCat, IsoWitness, MorId, ObjId};
use crate::functor::Functor;
use crate::monoidal::{
    assemble_monoidal, AssociatorData, MonoidalCategory, StagedError, TensorData, UnitData,
    UnitorData,
};

/// The terminal category: one object, its identity.
pub fn t1() -> Arc<FinCat> {
    FinCat::discrete(1)
}

/// The walking isomorphism: objects a, b; morphisms id_a, id_b, f: a -> b,
/// g: b -> a with f.g = id_a and g.f = id_b.
pub fn walking_iso() -> Arc<FinCat> {
    let mut b = CatBuilder::new(2);
    let f = b.mor(0, 1);
    let g = b.mor(1, 0);
    b.comp(f, g, 0).unwrap();
    b.comp(g, f, 1).unwrap();
    Arc::new(b.build().unwrap())
}

/// Delooping of a monoid given by its multiplication table (diagrammatic:
/// `mult(i, j)` is "i, then j"). Element 0 must be the unit.
pub fn delooping(m: usize, mult: impl Fn(usize, usize) -> usize) -> Arc<FinCat> {
    let mut compose = vec![None; m * m];
    for i in 0..m {
        for j in 0..m {
            compose[i * m + j] = Some(mult(i, j));
        }
    }
    Arc::new(
        FinCat::from_tables(1, vec![(0, 0); m], vec![0], compose)
            .expect("delooping tables are well-formed"),
    )
}

/// Delooping of Z/n; morphism ids are group elements, 0 the unit.
pub fn bzn(n: usize) -> Arc<FinCat> {
    delooping(n, move |i, j| (i + j) % n)
}

/// Delooping of the two-element monoid {e, z} with z absorbing (z.z = z).
pub fn bm2() -> Arc<FinCat> {
    delooping(2, |i, j| i.max(j))
}

/// Delooping of the full transformation monoid on two points:
/// {id, c1, c2} with constants absorbing on the right (i.c_j = c_j).
pub fn bt2() -> Arc<FinCat> {
    delooping(3, |i, j| if j == 0 { i } else { j })
}

/// Chaotic class category: objects are partitioned by `class_of`, and
/// hom(x, y) is Z/k when x and y share a class, empty otherwise.
/// Composition adds group labels. Returns the category and the id of each
/// `(src, tgt, element)` morphism.
pub fn chaotic_zk(
    class_of: &[usize],
    k: usize,
) -> (Arc<FinCat>, BTreeMap<(ObjId, ObjId, usize), MorId>) {
    assert!(k >= 1);
    let n = class_of.len();
    let mut b = CatBuilder::new(n);
    let mut ids: BTreeMap<(ObjId, ObjId, usize), MorId> = BTreeMap::new();
    for x in 0..n {
        ids.insert((x, x, 0), b.identity(x));
    }
    for x in 0..n {
        for y in 0..n {
            if class_of[x] != class_of[y] {
                continue;
            }
            for g in 0..k {
                if x == y && g == 0 {
                    continue;
                }
                ids.insert((x, y, g), b.mor(x, y));
            }
        }
    }
    let entries: Vec<((ObjId, ObjId, usize), MorId)> =
        ids.iter().map(|(&key, &v)| (key, v)).collect();
    for &((x, y, g), f) in &entries {
        for &((y2, z, h), f2) in &entries {
            if y2 == y {
                b.comp(f, f2, ids[&(x, z, (g + h) % k)]).unwrap();
            }
        }
    }
    (Arc::new(b.build().expect("chaotic tables close")), ids)
}

fn witness(base: &FinCat, forward: MorId) -> IsoWitness {
    base.is_iso(forward).expect("fixture structure cell must be invertible")
}

/// Discrete monoidal category on Z/k: objects 0..k, tensor is addition
/// mod k, unit 0, all structure cells identities.
pub fn zkd(k: usize) -> MonoidalCategory {
    let base = FinCat::discrete(k);
    let prod = product_category(&base, &base);
    let omap: Vec<ObjId> = prod
        .cat
        .objects()
        .map(|p| {
            let (x, y) = prod.obj_parts(p);
            (x + y) % k
        })
        .collect();
    let mmap: Vec<MorId> = prod
        .cat
        .morphisms()
        .map(|m| {
            let (f, g) = prod.mor_parts(m);
            (f + g) % k
        })
        .collect();
    let tensor = Functor::new(Arc::clone(&prod.cat), Arc::clone(&base), omap, mmap).unwrap();
    let id_cells: Vec<IsoWitness> = (0..k)
        .map(|x| witness(&base, base.identity(x)))
        .collect();
    let assoc = (0..k * k * k)
        .map(|p| {
            let z = p % k;
            let y = (p / k) % k;
            let x = p / (k * k);
            witness(&base, base.identity((x + y + z) % k))
        })
        .collect();
    assemble_monoidal(
        TensorData { tensor },
        UnitData { unit: 0 },
        UnitorData {
            left: id_cells.clone(),
            right: id_cells,
        },
        AssociatorData { components: assoc },
    )
    .expect("discrete Z/k monoidal structure is lawful")
}

/// Z/2 as a discrete monoidal category (tensor = xor, unit 0).
pub fn z2d() -> MonoidalCategory {
    zkd(2)
}

/// Z/3 as a discrete monoidal category.
pub fn z3d() -> MonoidalCategory {
    zkd(3)
}

/// The trivial monoidal structure on the terminal category.
pub fn t1_mon() -> MonoidalCategory {
    zkd(1)
}

/// Monoidal structure on a chaotic class category whose classes form Z/c
/// under addition. Tensor of objects is the smallest object of the summed
/// class; tensor of morphisms adds labels. Unitor components carry the
/// group element `unitor_elt`; associators are neutral.
/// Chaotic Z/k groupoid over a class partition, made monoidal: tensor adds
/// classes and lands on each class representative; unitors carry
/// `unitor_elt`. `unit` must lie in class 0.
pub fn chaotic_monoidal(
    class_of: &[usize],
    classes: usize,
    k: usize,
    unit: ObjId,
    unitor_elt: usize,
) -> MonoidalCategory {
    let (base, ids) = chaotic_zk(class_of, k);
    let n = class_of.len();
    let rep: Vec<ObjId> = (0..classes)
        .map(|c| (0..n).find(|&x| class_of[x] == c).expect("class inhabited"))
        .collect();
    let tob = |x: ObjId, y: ObjId| rep[(class_of[x] + class_of[y]) % classes];
    let prod = product_category(&base, &base);

    // Decode a base morphism back to (src, tgt, element).
    let mut elt_of: BTreeMap<MorId, usize> = BTreeMap::new();
    for (&(_, _, g), &m) in &ids {
        elt_of.insert(m, g);
    }

    let omap: Vec<ObjId> = prod
        .cat
        .objects()
        .map(|p| {
            let (x, y) = prod.obj_parts(p);
            tob(x, y)
        })
        .collect();
    let mmap: Vec<MorId> = prod
        .cat
        .morphisms()
        .map(|m| {
            let (f, g) = prod.mor_parts(m);
            let (sf, tf) = (base.src(f), base.tgt(f));
            let (sg, tg) = (base.src(g), base.tgt(g));
            ids[&(tob(sf, sg), tob(tf, tg), (elt_of[&f] + elt_of[&g]) % k)]
        })
        .collect();
    let tensor = Functor::new(Arc::clone(&prod.cat), Arc::clone(&base), omap, mmap).unwrap();

    let lunitor: Vec<IsoWitness> = (0..n)
        .map(|x| witness(&base, ids[&(tob(unit, x), x, unitor_elt % k)]))
        .collect();
    let runitor: Vec<IsoWitness> = (0..n)
        .map(|x| witness(&base, ids[&(tob(x, unit), x, unitor_elt % k)]))
        .collect();
    let assoc: Vec<IsoWitness> = (0..n * n * n)
        .map(|p| {
            let z = p % n;
            let y = (p / n) % n;
            let x = p / (n * n);
            let src = tob(tob(x, y), z);
            let tgt = tob(x, tob(y, z));
            witness(&base, ids[&(src, tgt, 0)])
        })
        .collect();
    assemble_monoidal(
        TensorData { tensor },
        UnitData { unit },
        UnitorData {
            left: lunitor,
            right: runitor,
        },
        AssociatorData { components: assoc },
    )
    .expect("chaotic monoidal structure is lawful")
}

/// Four-object parity category: objects {0,1,2,3} with singleton hom-sets
/// inside each parity class. Unit is object 2, the non-representative even
/// object; the tensor lands on the smallest object of the summed parity.
/// Weakly equivalent, but not equal, to the Z/2 discrete fixture.
pub fn z2fat() -> MonoidalCategory {
    chaotic_monoidal(&[0, 1, 0, 1], 2, 1, 2, 0)
}

/// Like [`z2fat`] but hom-sets are Z/2 and the unitors carry the
/// involution, so the transported structure has non-identity cells.
pub fn z2fatg() -> MonoidalCategory {
    chaotic_monoidal(&[0, 1, 0, 1], 2, 2, 2, 1)
}

/// Delooping of Z/2 with tensor = multiplication and neutral cells.
pub fn bz2_mon() -> MonoidalCategory {
    bzn_mon(2, 0)
}

/// Delooping of Z/n as a monoidal category; `unitor_elt` picks the group
/// element used for both unitors (the triangle forces lambda = rho when the
/// associator is neutral).
pub fn bzn_mon(n: usize, unitor_elt: usize) -> MonoidalCategory {
    let base = bzn(n);
    let prod = product_category(&base, &base);
    let omap = vec![0; 1];
    let mmap: Vec<MorId> = prod
        .cat
        .morphisms()
        .map(|m| {
            let (f, g) = prod.mor_parts(m);
            (f + g) % n
        })
        .collect();
    let tensor = Functor::new(Arc::clone(&prod.cat), Arc::clone(&base), omap, mmap).unwrap();
    let u = witness(&base, unitor_elt % n);
    assemble_monoidal(
        TensorData { tensor },
        UnitData { unit: 0 },
        UnitorData {
            left: vec![u],
            right: vec![u],
        },
        AssociatorData {
            components: vec![witness(&base, 0)],
        },
    )
    .expect("delooping monoidal structure is lawful")
}

/// Delooping of the absorbing monoid {e, z} with tensor = multiplication
/// (= max). Only e is invertible, so only neutral cells are possible.
pub fn bm2_mon() -> MonoidalCategory {
    let base = bm2();
    let prod = product_category(&base, &base);
    let mmap: Vec<MorId> = prod
        .cat
        .morphisms()
        .map(|m| {
            let (f, g) = prod.mor_parts(m);
            f.max(g)
        })
        .collect();
    let tensor = Functor::new(Arc::clone(&prod.cat), Arc::clone(&base), vec![0], mmap).unwrap();
    let e = witness(&base, 0);
    assemble_monoidal(
        TensorData { tensor },
        UnitData { unit: 0 },
        UnitorData {
            left: vec![e],
            right: vec![e],
        },
        AssociatorData { components: vec![e] },
    )
    .expect("absorbing-monoid delooping is lawful")
}

/// B(Z/2) with associator sigma and unitors (e, sigma): every layer is
/// natural and the triangle holds, but the pentagon fails, so assembly
/// stops at the laws layer. Returned as the raw assembly result.
pub fn bz2_mon_bad_pentagon() -> Result<MonoidalCategory, StagedError> {
    let base = bzn(2);
    let prod = product_category(&base, &base);
    let mmap: Vec<MorId> = prod
        .cat
        .morphisms()
        .map(|m| {
            let (f, g) = prod.mor_parts(m);
            (f + g) % 2
        })
        .collect();
    let tensor = Functor::new(Arc::clone(&prod.cat), Arc::clone(&base), vec![0], mmap).unwrap();
    assemble_monoidal(
        TensorData { tensor },
        UnitData { unit: 0 },
        UnitorData {
            left: vec![witness(&base, 0)],
            right: vec![witness(&base, 1)],
        },
        AssociatorData {
            components: vec![witness(&base, 1)],
        },
    )
}

/// Z/2 discrete with the tensor's morphism map corrupted on one entry;
/// assembly fails at the tensor layer.
pub fn z2d_broken_tensor() -> Result<MonoidalCategory, StagedError> {
    let base = FinCat::discrete(2);
    let prod = product_category(&base, &base);
    let omap: Vec<ObjId> = prod
        .cat
        .objects()
        .map(|p| {
            let (x, y) = prod.obj_parts(p);
            (x + y) % 2
        })
        .collect();
    let mut mmap: Vec<MorId> = prod
        .cat
        .morphisms()
        .map(|m| {
            let (f, g) = prod.mor_parts(m);
            (f + g) % 2
        })
        .collect();
    mmap[0] = 1; // (id_0, id_0) no longer lands on id_{0+0}
    let tensor = Functor::new(Arc::clone(&prod.cat), Arc::clone(&base), omap, mmap).unwrap();
    let cells: Vec<IsoWitness> = (0..2).map(|x| witness(&base, x)).collect();
    assemble_monoidal(
        TensorData { tensor },
        UnitData { unit: 0 },
        UnitorData {
            left: cells.clone(),
            right: cells,
        },
        AssociatorData {
            components: (0..8).map(|_| witness(&base, 0)).collect(),
        },
    )
}

/// The walking isomorphism with the collapse tensor: everything tensors to
/// object a, and the unitors at b are the isomorphism itself.
pub fn wi_mon() -> MonoidalCategory {
    let base = walking_iso();
    let prod = product_category(&base, &base);
    let tensor = Functor::new(
        Arc::clone(&prod.cat),
        Arc::clone(&base),
        vec![0; prod.cat.n_objects()],
        vec![0; prod.cat.n_morphisms()],
    )
    .unwrap();
    let f = 2; // the iso a -> b
    let unitors: Vec<IsoWitness> = vec![witness(&base, 0), witness(&base, f)];
    assemble_monoidal(
        TensorData { tensor },
        UnitData { unit: 0 },
        UnitorData {
            left: unitors.clone(),
            right: unitors,
        },
        AssociatorData {
            components: (0..8).map(|_| witness(&base, 0)).collect(),
        },
    )
    .expect("walking-iso collapse tensor is lawful")
}

/// All plain category fixtures, with names, for corpus-style tests.
pub fn all_categories() -> Vec<(&'static str, Arc<FinCat>)> {
    vec![
        ("t1", t1()),
        ("walking_iso", walking_iso()),
        ("bz2", bzn(2)),
        ("bz3", bzn(3)),
        ("bm2", bm2()),
        ("bt2", bt2()),
        ("z2_discrete", FinCat::discrete(2)),
        ("z2fat_base", chaotic_zk(&[0, 1, 0, 1], 1).0),
        ("z2fatg_base", chaotic_zk(&[0, 1, 0, 1], 2).0),
    ]
}

/// All monoidal fixtures, with names.
pub fn all_monoidal() -> Vec<(&'static str, MonoidalCategory)> {
    vec![
        ("t1", t1_mon()),
        ("z2d", z2d()),
        ("z3d", z3d()),
        ("z2fat", z2fat()),
        ("z2fatg", z2fatg()),
        ("bz2", bz2_mon()),
        ("bz2_sigma", bzn_mon(2, 1)),
        ("wi", wi_mon()),
    ]
}
