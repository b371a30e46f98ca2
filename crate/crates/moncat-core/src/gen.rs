//! Seeded random corpora of small categories, with monoidal enrichments
//! where the family supports one. Used by randomized law tests; all
//! generation is deterministic in the seed.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::fincat::{product_category, FinCat, MorId, ObjId};
use crate::fixtures;
use crate::monoidal::MonoidalCategory;

#[derive(Debug, Clone)]
pub struct CorpusItem {
    pub name: String,
    pub cat: Arc<FinCat>,
    pub monoidal: Option<Arc<MonoidalCategory>>,
}

/// Free category on a random DAG (edges only point forward), capped at 40
/// morphisms by deleting edges until the path count fits.
fn free_dag(rng: &mut ChaCha8Rng) -> Arc<FinCat> {
    let n = rng.gen_range(2..=5usize);
    let mut edges: Vec<(ObjId, ObjId)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.45) {
                edges.push((i, j));
            }
        }
    }
    loop {
        if let Some(cat) = path_category(n, &edges, 40) {
            return cat;
        }
        let drop = rng.gen_range(0..edges.len());
        edges.remove(drop);
    }
}

/// All paths of the DAG, identities first; None if the cap is exceeded.
fn path_category(n: usize, edges: &[(ObjId, ObjId)], cap: usize) -> Option<Arc<FinCat>> {
    // Key: (source object, composed edge list). Identities are empty paths.
    let mut paths: Vec<(ObjId, Vec<usize>)> = (0..n).map(|x| (x, Vec::new())).collect();
    let mut frontier: Vec<(ObjId, Vec<usize>)> = paths.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (src, p) in &frontier {
            let at = p.last().map_or(*src, |&e| edges[e].1);
            for (ei, &(a, _)) in edges.iter().enumerate() {
                if a == at {
                    let mut q = p.clone();
                    q.push(ei);
                    next.push((*src, q));
                }
            }
        }
        paths.extend(next.iter().cloned());
        if paths.len() > cap {
            return None;
        }
        frontier = next;
    }
    // Deterministic id order: identities, then by (src, tgt, length, edges).
    let tgt_of = |src: ObjId, p: &[usize]| p.last().map_or(src, |&e| edges[e].1);
    let (ids, mut rest): (Vec<_>, Vec<_>) = paths.into_iter().partition(|(_, p)| p.is_empty());
    rest.sort_by_key(|(src, p)| (*src, tgt_of(*src, p), p.len(), p.clone()));
    let all: Vec<(ObjId, Vec<usize>)> = ids.into_iter().chain(rest).collect();
    let index: BTreeMap<(ObjId, Vec<usize>), MorId> = all
        .iter()
        .enumerate()
        .map(|(i, k)| (k.clone(), i))
        .collect();
    let morphisms: Vec<(ObjId, ObjId)> = all
        .iter()
        .map(|(src, p)| (*src, tgt_of(*src, p)))
        .collect();
    let identity: Vec<MorId> = (0..n).collect();
    let m = all.len();
    let mut compose = vec![None; m * m];
    for (f, (fs, fp)) in all.iter().enumerate() {
        for (g, (gs, gp)) in all.iter().enumerate() {
            if tgt_of(*fs, fp) != *gs {
                continue;
            }
            let mut cat = fp.clone();
            cat.extend(gp.iter().copied());
            compose[f * m + g] = Some(index[&(*fs, cat)]);
        }
    }
    Some(Arc::new(
        FinCat::from_tables(n, morphisms, identity, compose).expect("path category closes"),
    ))
}

/// Thin category from the reflexive-transitive closure of a random forward
/// relation: at most one morphism per ordered pair, so always skeletal.
fn thin_poset(rng: &mut ChaCha8Rng) -> Arc<FinCat> {
    let n = rng.gen_range(2..=5usize);
    let mut le = vec![false; n * n];
    for i in 0..n {
        le[i * n + i] = true;
        for j in i + 1..n {
            le[i * n + j] = rng.gen_bool(0.4);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i * n + k] && le[k * n + j] {
                    le[i * n + j] = true;
                }
            }
        }
    }
    let mut morphisms = Vec::new();
    let mut mor_of = vec![None; n * n];
    for i in 0..n {
        mor_of[i * n + i] = Some(morphisms.len());
        morphisms.push((i, i));
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && le[i * n + j] {
                mor_of[i * n + j] = Some(morphisms.len());
                morphisms.push((i, j));
            }
        }
    }
    let m = morphisms.len();
    let mut compose = vec![None; m * m];
    for f in 0..m {
        for g in 0..m {
            if morphisms[f].1 == morphisms[g].0 {
                compose[f * m + g] = mor_of[morphisms[f].0 * n + morphisms[g].1];
            }
        }
    }
    let identity: Vec<MorId> = (0..n).collect();
    Arc::new(FinCat::from_tables(n, morphisms, identity, compose).expect("poset closes"))
}

/// Chaotic groupoid over a random class partition with Z/k hom-torsors,
/// plus its canonical monoidal structure.
fn chaotic(rng: &mut ChaCha8Rng) -> (Arc<FinCat>, Arc<MonoidalCategory>) {
    // Base morphism count is kept <= 16: monoidal staged validation
    // materializes the triple product, whose tables grow with the sixth
    // power of the morphism count.
    let n = rng.gen_range(2..=4usize);
    let classes = if n <= 3 { rng.gen_range(1..=2.min(n)) } else { 2 };
    let mut class_of: Vec<usize> = (0..classes).collect();
    while class_of.len() < n {
        class_of.push(rng.gen_range(0..classes));
    }
    class_of.shuffle(rng);
    // Every class below `classes` appears (shuffle preserves the multiset).
    let same_pairs: usize = (0..classes)
        .map(|c| class_of.iter().filter(|&&x| x == c).count().pow(2))
        .sum();
    // Z/2 homs on a singleton class form a lone Z/2 delooping, whose one
    // parallel mutation lands on another lawful monoid; keep torsion to
    // classes of size >= 2 so mutation testing retains its floor.
    let min_class = (0..classes)
        .map(|c| class_of.iter().filter(|&&x| x == c).count())
        .min()
        .unwrap_or(0);
    let k = if same_pairs * 2 <= 16 && min_class >= 2 && rng.gen_bool(0.5) {
        2
    } else {
        1
    };
    let zeros: Vec<ObjId> = (0..n).filter(|&x| class_of[x] == 0).collect();
    let unit = zeros[rng.gen_range(0..zeros.len())];
    let unitor_elt = rng.gen_range(0..k);
    let m = Arc::new(fixtures::chaotic_monoidal(
        &class_of, classes, k, unit, unitor_elt,
    ));
    (Arc::clone(m.base()), m)
}

/// One corpus entry per index, cycling through the families.
fn item(seed: u64, i: usize) -> CorpusItem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (i as u64).wrapping_mul(0x9E3779B97F4A7C15));
    match i % 6 {
        0 => {
            let cat = free_dag(&mut rng);
            CorpusItem {
                name: format!("dag-{i}"),
                cat,
                monoidal: None,
            }
        }
        1 => {
            let cat = thin_poset(&mut rng);
            CorpusItem {
                name: format!("poset-{i}"),
                cat,
                monoidal: None,
            }
        }
        2 => {
            let (cat, m) = chaotic(&mut rng);
            CorpusItem {
                name: format!("chaotic-{i}"),
                cat,
                monoidal: Some(m),
            }
        }
        3 => {
            // Deloopings: cyclic groups with a twisted unitor, and the
            // two-element idempotent monoid. Kept rare relative to the
            // other families (single-entry mutations of a one-object
            // multiplication table can land on another lawful monoid).
            if rng.gen_bool(0.25) {
                CorpusItem {
                    name: format!("bm2-{i}"),
                    cat: fixtures::bm2(),
                    monoidal: Some(Arc::new(fixtures::bm2_mon())),
                }
            } else {
                // Z/2 is excluded: its only parallel mutation (s.s -> s)
                // produces the lawful idempotent monoid, which bm2 above
                // already contributes at a controlled rate.
                let nels = rng.gen_range(3..=5usize);
                let e = rng.gen_range(0..nels);
                let m = Arc::new(fixtures::bzn_mon(nels, e));
                CorpusItem {
                    name: format!("bz{nels}-{i}"),
                    cat: Arc::clone(m.base()),
                    monoidal: Some(m),
                }
            }
        }
        4 => {
            let k = rng.gen_range(1..=5usize);
            let m = Arc::new(fixtures::zkd(k));
            CorpusItem {
                name: format!("z{k}d-{i}"),
                cat: Arc::clone(m.base()),
                monoidal: Some(m),
            }
        }
        _ => {
            // Group factors use Z/3: a Z/2 factor times a discrete one
            // yields disjoint Z/2 deloopings, whose parallel mutations are
            // lawful (see the bzn note above).
            let left = match rng.gen_range(0..3) {
                0 => FinCat::discrete(rng.gen_range(1..=2)),
                1 => fixtures::bzn(3),
                _ => fixtures::walking_iso(),
            };
            let right = match rng.gen_range(0..2) {
                0 => FinCat::discrete(rng.gen_range(1..=2)),
                _ => fixtures::bzn(3),
            };
            let cat = if left.n_morphisms() * right.n_morphisms() <= 40 {
                product_category(&left, &right).cat
            } else {
                left
            };
            CorpusItem {
                name: format!("product-{i}"),
                cat,
                monoidal: None,
            }
        }
    }
}

pub fn corpus(seed: u64, count: usize) -> Vec<CorpusItem> {
    (0..count).map(|i| item(seed, i)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mutation {
    pub f: MorId,
    pub g: MorId,
    pub old: MorId,
    pub new: MorId,
}

/// Replaces one composition-table entry with a different morphism. The
/// replacement is parallel (same endpoints) so the corruption is not
/// detectable by endpoint checks alone, and pairs that extend by a
/// non-identity morphism on either side are preferred: those swaps always
/// disturb an associativity triple, while a swap at a composition-maximal
/// pair can produce a different but lawful category. None if the table has
/// a single morphism everywhere.
pub fn mutate_composition(
    cat: &FinCat,
    rng: &mut ChaCha8Rng,
) -> Option<(Arc<FinCat>, Mutation)> {
    let m = cat.n_morphisms();
    let is_id = |f: MorId| cat.identity(cat.src(f)) == f;
    let mut slots: Vec<(MorId, MorId, MorId, Vec<MorId>)> = Vec::new();
    let mut extendable: Vec<usize> = Vec::new();
    for f in 0..m {
        for g in 0..m {
            let Some(h) = cat.compose(f, g) else { continue };
            let parallel: Vec<MorId> = cat
                .hom(cat.src(h), cat.tgt(h))
                .into_iter()
                .filter(|&x| x != h)
                .collect();
            if parallel.is_empty() {
                continue;
            }
            let extends = (0..m).any(|e| {
                !is_id(e) && (cat.compose(g, e).is_some() || cat.compose(e, f).is_some())
            });
            if extends {
                extendable.push(slots.len());
            }
            slots.push((f, g, h, parallel));
        }
    }
    if slots.is_empty() {
        return None;
    }
    let pick = if extendable.is_empty() {
        rng.gen_range(0..slots.len())
    } else {
        extendable[rng.gen_range(0..extendable.len())]
    };
    let (f, g, old, choices) = &slots[pick];
    let new = choices[rng.gen_range(0..choices.len())];
    let morphisms: Vec<(ObjId, ObjId)> = cat.morphisms().map(|x| (cat.src(x), cat.tgt(x))).collect();
    let identity: Vec<MorId> = cat.objects().map(|x| cat.identity(x)).collect();
    let mut compose = Vec::with_capacity(m * m);
    for a in 0..m {
        for b in 0..m {
            compose.push(cat.compose(a, b));
        }
    }
    compose[f * m + g] = Some(new);
    let mutant = FinCat::from_tables_unchecked(cat.n_objects(), morphisms, identity, compose);
    Some((
        Arc::new(mutant),
        Mutation {
            f: *f,
            g: *g,
            old: *old,
            new,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_deterministic_and_lawful() {
        let a = corpus(42, 60);
        let b = corpus(42, 60);
        assert_eq!(a.len(), 60);
        for (x, y) in a.iter().zip(b.iter()) {
            assert_eq!(x.cat.as_ref(), y.cat.as_ref(), "{}", x.name);
        }
        for it in &a {
            assert!(it.cat.n_objects() <= 10, "{}", it.name);
            assert!(it.cat.n_morphisms() <= 40, "{}", it.name);
            let report = it.cat.check_category_laws().unwrap();
            assert!(report.is_ok(), "{}: {report}", it.name);
            if let Some(m) = &it.monoidal {
                assert!(crate::monoidal::check_monoidal_laws(m).is_ok(), "{}", it.name);
            }
        }
        let monoidal = a.iter().filter(|i| i.monoidal.is_some()).count();
        assert!(monoidal >= 20, "only {monoidal} monoidal items");
    }

    #[test]
    fn different_seeds_differ() {
        let a = corpus(1, 24);
        let b = corpus(2, 24);
        assert!(
            a.iter()
                .zip(b.iter())
                .any(|(x, y)| x.cat.as_ref() != y.cat.as_ref()),
            "seeds 1 and 2 generated identical corpora"
        );
    }

    #[test]
    fn mutants_differ_in_exactly_one_entry() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cat = fixtures::bzn(3);
        let (mutant, mu) = mutate_composition(&cat, &mut rng).unwrap();
        assert_ne!(mu.old, mu.new);
        let m = cat.n_morphisms();
        let mut diffs = 0;
        for f in 0..m {
            for g in 0..m {
                if cat.compose(f, g) != mutant.compose(f, g) {
                    diffs += 1;
                    assert_eq!((f, g), (mu.f, mu.g));
                }
            }
        }
        assert_eq!(diffs, 1);
        // Z/3 group table: any single swap breaks the laws.
        let report = mutant.check_category_laws().unwrap();
        assert!(!report.is_ok());
    }

    #[test]
    fn thin_families_have_no_parallel_mutation() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        // Hom-sets in a poset are singletons: no parallel swap exists.
        let poset = thin_poset(&mut rng);
        assert!(mutate_composition(&poset, &mut rng).is_none());
    }
}
