//! End-to-end acceptance gate. Each test covers one shipping criterion and
//! prints a single `ACCEPT <n> <name>: PASS|FAIL` line.
//!
//! The category/monoidal law oracles here are written directly from the
//! axioms as single-pass table sweeps and deliberately share no code with
//! the library's staged checkers.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use moncat_core::day::{
    compare_day_vs_transport, day_tensor, representability_witness, PresheafIso,
};
use moncat_core::dsl;
use moncat_core::fixtures;
use moncat_core::functor::{enumerate_functors, enumerate_nat_trans, whisker_left};
use moncat_core::gen::{corpus, mutate_composition};
use moncat_core::json::{self, Artifact};
use moncat_core::laxmon::{
    check_lax_monoidal_functor, check_monoidal_nat_trans, compose_lax_monoidal,
    is_strong_monoidal,
};
use moncat_core::monoidal::check_monoidal_laws;
use moncat_core::presheaf::{enumerate_presheaf_maps, yoneda, yoneda_lemma_bijection, Presheaf, SetFn};
use moncat_core::transport::{
    lift_functor_along, skeletalize, transport_monoidal, verify_precomp_equivalence,
};
use moncat_core::{
    Bounds, FinCat, Functor, LaxMonoidalFunctor, MonoidalCategory, MonoidalNatTrans, MorId,
    NatTrans,
};

fn conclude(n: usize, name: &str, pass: bool) {
    println!("ACCEPT {n} {name}: {}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "acceptance criterion {n} ({name}) failed");
}

// ---------------------------------------------------------------------------
// Independent oracles

/// One-pass brute-force category checker straight from the axioms.
fn brute_category_ok(c: &FinCat) -> bool {
    let n = c.n_objects();
    let m = c.n_morphisms();
    for x in 0..n {
        let i = c.identity(x);
        if i >= m || c.src(i) != x || c.tgt(i) != x {
            return false;
        }
    }
    for f in 0..m {
        if c.src(f) >= n || c.tgt(f) >= n {
            return false;
        }
        if c.compose(c.identity(c.src(f)), f) != Some(f) {
            return false;
        }
        if c.compose(f, c.identity(c.tgt(f))) != Some(f) {
            return false;
        }
        for g in 0..m {
            match c.compose(f, g) {
                Some(h) => {
                    if c.tgt(f) != c.src(g)
                        || h >= m
                        || c.src(h) != c.src(f)
                        || c.tgt(h) != c.tgt(g)
                    {
                        return false;
                    }
                }
                None => {
                    if c.tgt(f) == c.src(g) {
                        return false;
                    }
                }
            }
        }
    }
    for f in 0..m {
        for g in 0..m {
            let Some(fg) = c.compose(f, g) else { continue };
            for h in 0..m {
                let Some(gh) = c.compose(g, h) else { continue };
                if c.compose(fg, h) != c.compose(f, gh) {
                    return false;
                }
            }
        }
    }
    true
}

/// One-pass brute-force monoidal checker: functoriality of the tensor,
/// iso-ness and naturality of the structure cells, triangle, pentagon.
fn brute_monoidal_ok(m: &MonoidalCategory) -> bool {
    let c = m.base();
    if !brute_category_ok(c) {
        return false;
    }
    let n = c.n_objects();
    let nm = c.n_morphisms();
    let unit = m.unit();
    if unit >= n {
        return false;
    }
    for x in 0..n {
        for y in 0..n {
            if m.tensor_obj(x, y) >= n {
                return false;
            }
            if m.tensor_mor(c.identity(x), c.identity(y)) != c.identity(m.tensor_obj(x, y)) {
                return false;
            }
        }
    }
    for f in 0..nm {
        for g in 0..nm {
            let t = m.tensor_mor(f, g);
            if t >= nm
                || c.src(t) != m.tensor_obj(c.src(f), c.src(g))
                || c.tgt(t) != m.tensor_obj(c.tgt(f), c.tgt(g))
            {
                return false;
            }
        }
    }
    for f1 in 0..nm {
        for f2 in 0..nm {
            let Some(f12) = c.compose(f1, f2) else { continue };
            for g1 in 0..nm {
                for g2 in 0..nm {
                    let Some(g12) = c.compose(g1, g2) else { continue };
                    if c.compose(m.tensor_mor(f1, g1), m.tensor_mor(f2, g2))
                        != Some(m.tensor_mor(f12, g12))
                    {
                        return false;
                    }
                }
            }
        }
    }
    for x in 0..n {
        let l = m.lunitor_at(x);
        if c.src(l.forward) != m.tensor_obj(unit, x)
            || c.tgt(l.forward) != x
            || c.compose(l.forward, l.backward) != Some(c.identity(m.tensor_obj(unit, x)))
            || c.compose(l.backward, l.forward) != Some(c.identity(x))
        {
            return false;
        }
        let r = m.runitor_at(x);
        if c.src(r.forward) != m.tensor_obj(x, unit)
            || c.tgt(r.forward) != x
            || c.compose(r.forward, r.backward) != Some(c.identity(m.tensor_obj(x, unit)))
            || c.compose(r.backward, r.forward) != Some(c.identity(x))
        {
            return false;
        }
    }
    for f in 0..nm {
        let (x, y) = (c.src(f), c.tgt(f));
        let id_i = c.identity(unit);
        if c.compose(m.tensor_mor(id_i, f), m.lunitor_at(y).forward)
            != c.compose(m.lunitor_at(x).forward, f)
        {
            return false;
        }
        if c.compose(m.tensor_mor(f, id_i), m.runitor_at(y).forward)
            != c.compose(m.runitor_at(x).forward, f)
        {
            return false;
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let a = m.assoc_at(x, y, z);
                let lhs = m.tensor_obj(m.tensor_obj(x, y), z);
                let rhs = m.tensor_obj(x, m.tensor_obj(y, z));
                if c.src(a.forward) != lhs
                    || c.tgt(a.forward) != rhs
                    || c.compose(a.forward, a.backward) != Some(c.identity(lhs))
                    || c.compose(a.backward, a.forward) != Some(c.identity(rhs))
                {
                    return false;
                }
            }
        }
    }
    for f in 0..nm {
        for g in 0..nm {
            for h in 0..nm {
                let a_src = m.assoc_at(c.src(f), c.src(g), c.src(h)).forward;
                let a_tgt = m.assoc_at(c.tgt(f), c.tgt(g), c.tgt(h)).forward;
                let lhs = c.compose(m.tensor_mor(m.tensor_mor(f, g), h), a_tgt);
                let rhs = c.compose(a_src, m.tensor_mor(f, m.tensor_mor(g, h)));
                if lhs.is_none() || lhs != rhs {
                    return false;
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            let via = c.compose(
                m.assoc_at(x, unit, y).forward,
                m.tensor_mor(c.identity(x), m.lunitor_at(y).forward),
            );
            if via != Some(m.tensor_mor(m.runitor_at(x).forward, c.identity(y))) {
                return false;
            }
        }
    }
    for w in 0..n {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let p1 = m.tensor_mor(m.assoc_at(w, x, y).forward, c.identity(z));
                    let p2 = m.assoc_at(w, m.tensor_obj(x, y), z).forward;
                    let p3 = m.tensor_mor(c.identity(w), m.assoc_at(x, y, z).forward);
                    let left = c.compose(p1, p2).and_then(|q| c.compose(q, p3));
                    let right = c.compose(
                        m.assoc_at(m.tensor_obj(w, x), y, z).forward,
                        m.assoc_at(w, x, m.tensor_obj(y, z)).forward,
                    );
                    if left.is_none() || left != right {
                        return false;
                    }
                }
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Criterion 1: staged checker vs oracle, plus mutation detection

#[test]
fn criterion_1_checker_oracle_and_mutations() {
    let start = Instant::now();
    let items = corpus(0xACCE97, 204);
    let mut ok = items.len() >= 200;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    let mut mutants = 0usize;
    let mut detected = 0usize;
    for it in &items {
        if it.cat.n_objects() > 5 || it.cat.n_morphisms() > 40 {
            eprintln!("{}: out of size envelope", it.name);
            ok = false;
        }
        let staged = matches!(it.cat.check_category_laws(), Ok(r) if r.is_ok());
        let brute = brute_category_ok(&it.cat);
        if staged != brute {
            eprintln!("{}: checkers disagree (staged={staged}, brute={brute})", it.name);
            ok = false;
        }
        if !staged {
            eprintln!("{}: generated category is unlawful", it.name);
            ok = false;
        }
        if let Some(m) = &it.monoidal {
            let staged_m = check_monoidal_laws(m).is_ok();
            let brute_m = brute_monoidal_ok(m);
            if staged_m != brute_m || !staged_m {
                eprintln!(
                    "{}: monoidal checkers disagree (staged={staged_m}, brute={brute_m})",
                    it.name
                );
                ok = false;
            }
        }
        for _ in 0..3 {
            let Some((mutant, mu)) = mutate_composition(&it.cat, &mut rng) else {
                break;
            };
            let staged = matches!(mutant.check_category_laws(), Ok(r) if r.is_ok());
            let brute = brute_category_ok(&mutant);
            if staged != brute {
                eprintln!("{}: mutant {mu:?} splits the checkers", it.name);
                ok = false;
            }
            mutants += 1;
            if !brute {
                detected += 1;
            } else {
                // A lawful mutant: the swap produced a different but valid
                // category, which no sound checker can flag.
                eprintln!("lawful mutant on {}: {mu:?}", it.name);
            }
        }
    }
    let rate = detected as f64 / mutants as f64;
    if mutants == 0 || rate < 0.95 {
        eprintln!("mutation detection too weak: {detected}/{mutants}");
        ok = false;
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(60) {
        eprintln!("criterion 1 over budget: {elapsed:?}");
        ok = false;
    }
    eprintln!(
        "criterion 1: {} categories, {detected}/{mutants} mutants detected ({:.1}%), {elapsed:?}",
        items.len(),
        rate * 100.0
    );
    conclude(1, "law-checker oracle equivalence", ok);
}

// ---------------------------------------------------------------------------
// Criterion 2: transported structure is lawful and strongly carried

#[test]
fn criterion_2_transported_laws() {
    let start = Instant::now();
    let mut ok = true;
    for (name, m) in fixtures::all_monoidal() {
        let m = Arc::new(m);
        let (_, w) = skeletalize(m.base());
        match transport_monoidal(&w, &m) {
            Ok(t) => {
                let report = check_monoidal_laws(&t.monoidal);
                if !report.is_ok() {
                    eprintln!("{name}: transported laws fail:\n{report}");
                    ok = false;
                }
                if !check_lax_monoidal_functor(&t.h_mon).is_ok() {
                    eprintln!("{name}: carrier is not lax monoidal");
                    ok = false;
                }
                if !is_strong_monoidal(&t.h_mon) {
                    eprintln!("{name}: carrier is not strong monoidal");
                    ok = false;
                }
            }
            Err(e) => {
                eprintln!("{name}: transport failed: {e}");
                ok = false;
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(30) {
        eprintln!("criterion 2 over budget: {elapsed:?}");
        ok = false;
    }
    conclude(2, "transported pentagon/triangle", ok);
}

// ---------------------------------------------------------------------------
// Criterion 3: universal property of precomposition

/// All lax monoidal functors `dom -> cod`, by brute force over the carrier
/// functors and every mu/eps assignment, capped at `cap` results.
fn lax_structures(
    dom: &Arc<MonoidalCategory>,
    cod: &Arc<MonoidalCategory>,
    cap: usize,
) -> Vec<LaxMonoidalFunctor> {
    let bounds = Bounds::new(10_000_000);
    let mut out = Vec::new();
    let n = dom.base().n_objects();
    let e = cod.base();
    for f in enumerate_functors(dom.base(), cod.base(), &bounds).unwrap() {
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
        assert!(combos <= 100_000, "lax-structure search space too large");
        let mut idx = vec![0usize; slots.len()];
        'odometer: loop {
            let mu: Vec<MorId> = (0..n * n).map(|i| slots[i][idx[i]]).collect();
            let eps = slots[n * n][idx[n * n]];
            let cand =
                LaxMonoidalFunctor::new(Arc::clone(dom), Arc::clone(cod), f.clone(), mu, eps);
            if check_lax_monoidal_functor(&cand).is_ok() {
                out.push(cand);
                if out.len() == cap {
                    return out;
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
    out
}

/// The collapse-to-unit lax functor, strong whenever the unit cells are
/// untwisted; callers must law-check before use.
fn collapse_to_unit(
    dom: &Arc<MonoidalCategory>,
    cod: &Arc<MonoidalCategory>,
) -> LaxMonoidalFunctor {
    let i = cod.unit();
    let f = Functor::constant(dom.base(), cod.base(), i);
    let mu = vec![cod.lunitor_at(i).forward; dom.base().n_objects().pow(2)];
    LaxMonoidalFunctor::new(
        Arc::clone(dom),
        Arc::clone(cod),
        f,
        mu,
        cod.base().identity(i),
    )
}

fn run_precomp_triple(
    label: &str,
    c: &Arc<MonoidalCategory>,
    e: Option<Arc<MonoidalCategory>>,
) -> bool {
    let bounds = Bounds::new(1_000_000);
    let (_, w) = skeletalize(c.base());
    let t = match transport_monoidal(&w, c) {
        Ok(t) => t,
        Err(err) => {
            eprintln!("{label}: transport failed: {err}");
            return false;
        }
    };
    let e_mon = e.unwrap_or_else(|| Arc::clone(&t.monoidal));
    if !e_mon.base().is_skeletal() || e_mon.base().n_objects() > 3 {
        eprintln!("{label}: target out of envelope");
        return false;
    }
    let candidates = lax_structures(&t.monoidal, &e_mon, 5);
    if candidates.is_empty() {
        eprintln!("{label}: no lax candidates D -> E");
        return false;
    }
    let mut targets: Vec<LaxMonoidalFunctor> = candidates
        .iter()
        .map(|g| compose_lax_monoidal(&t.h_mon, g))
        .collect();
    let collapse = collapse_to_unit(c, &e_mon);
    if check_lax_monoidal_functor(&collapse).is_ok() {
        targets.push(collapse);
    }
    targets.truncate(5);

    let mut ok = true;
    for strong_mode in [false, true] {
        match verify_precomp_equivalence(&t, &e_mon, &candidates, &targets, strong_mode, &bounds) {
            Ok(report) => {
                if !report.is_ok() {
                    eprintln!("{label} (strong={strong_mode}): {report:?}");
                    ok = false;
                }
                if !report
                    .pairs
                    .iter()
                    .all(|p| p.bijective && p.direct == p.whiskered)
                {
                    eprintln!("{label} (strong={strong_mode}): 2-cell counts differ");
                    ok = false;
                }
                if !strong_mode
                    && (report.pairs.len() != candidates.len() * candidates.len()
                        || report.factorizations.len() != targets.len())
                {
                    eprintln!("{label}: candidates or targets were dropped");
                    ok = false;
                }
            }
            Err(limit) => {
                eprintln!("{label} (strong={strong_mode}): {limit}");
                ok = false;
            }
        }
    }
    ok
}

#[test]
fn criterion_3_precomp_universal_property() {
    let mut ok = true;
    let triples: Vec<(&str, Arc<MonoidalCategory>, Option<Arc<MonoidalCategory>>)> = vec![
        ("z2fat/self", Arc::new(fixtures::z2fat()), None),
        ("z2fatg/self", Arc::new(fixtures::z2fatg()), None),
        ("bz2/self", Arc::new(fixtures::bz2_mon()), None),
        (
            "wi->t1",
            Arc::new(fixtures::wi_mon()),
            Some(Arc::new(fixtures::t1_mon())),
        ),
        (
            "z2fat->z3d",
            Arc::new(fixtures::z2fat()),
            Some(Arc::new(fixtures::z3d())),
        ),
    ];
    for (label, c, e) in triples {
        ok &= run_precomp_triple(label, &c, e);
    }
    conclude(3, "precomposition universal property", ok);
}

// ---------------------------------------------------------------------------
// Criterion 4: Day convolution against the convolution formula

fn iso_two_sided(w: &PresheafIso) -> bool {
    if !w.forward.check_naturality().is_ok() || !w.backward.check_naturality().is_ok() {
        return false;
    }
    let fb = w.forward.then_vertical(&w.backward);
    let bf = w.backward.then_vertical(&w.forward);
    fb.components()
        .iter()
        .enumerate()
        .all(|(c, f)| *f == SetFn::identity(w.forward.source().size(c)))
        && bf
            .components()
            .iter()
            .enumerate()
            .all(|(c, f)| *f == SetFn::identity(w.backward.source().size(c)))
}

#[test]
fn criterion_4_day_convolution_oracle() {
    let bounds = Bounds::new(1_000_000);
    let mut ok = true;

    let z2 = fixtures::zkd(2);
    let f = Presheaf::discrete(z2.base(), &[1, 2]).unwrap();
    let g = Presheaf::discrete(z2.base(), &[3, 1]).unwrap();
    let d = day_tensor(&z2, &f, &g, &bounds).unwrap();
    if (d.size(0), d.size(1)) != (5, 7) {
        eprintln!("frozen Z/2 example: got ({}, {})", d.size(0), d.size(1));
        ok = false;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0xDA1);
    for round in 0..50 {
        let k = rng.gen_range(1..=5usize);
        let m = fixtures::zkd(k);
        let fs: Vec<usize> = (0..k).map(|_| rng.gen_range(0..=3)).collect();
        let gs: Vec<usize> = (0..k).map(|_| rng.gen_range(0..=3)).collect();
        let f = Presheaf::discrete(m.base(), &fs).unwrap();
        let g = Presheaf::discrete(m.base(), &gs).unwrap();
        let d = day_tensor(&m, &f, &g, &bounds).unwrap();
        for c in 0..k {
            let expect: usize = (0..k).map(|a| fs[a] * gs[(c + k - a) % k]).sum();
            if d.size(c) != expect {
                eprintln!("round {round}: Z/{k} at {c}: got {}, want {expect}", d.size(c));
                ok = false;
            }
        }
    }

    for (name, m) in fixtures::all_monoidal() {
        for x in m.base().objects() {
            for y in m.base().objects() {
                match representability_witness(&m, x, y, &bounds) {
                    Ok(w) => {
                        if !iso_two_sided(&w) {
                            eprintln!("{name}: representability not iso at ({x}, {y})");
                            ok = false;
                        }
                    }
                    Err(e) => {
                        eprintln!("{name}: representability at ({x}, {y}): {e}");
                        ok = false;
                    }
                }
            }
        }
    }

    for (name, c) in fixtures::all_categories() {
        for z in c.objects() {
            let f = yoneda(&c, z);
            for x in c.objects() {
                let via_lemma = yoneda_lemma_bijection(&f, x);
                let direct = enumerate_presheaf_maps(&yoneda(&c, x), &f, &bounds).unwrap();
                if via_lemma.len() != f.size(x) || direct.len() != f.size(x) {
                    eprintln!(
                        "{name}: Yoneda cardinality at (x={x}, z={z}): lemma {}, direct {}, want {}",
                        via_lemma.len(),
                        direct.len(),
                        f.size(x)
                    );
                    ok = false;
                }
            }
        }
    }

    conclude(4, "Day convolution oracle", ok);
}

// ---------------------------------------------------------------------------
// Criterion 5: Rezk-vs-Day comparison

#[test]
fn criterion_5_rezk_vs_day() {
    let start = Instant::now();
    let mut ok = true;
    let cases = [
        ("t1", fixtures::t1_mon()),
        ("z2d", fixtures::z2d()),
        ("z2fat", fixtures::z2fat()),
        ("bz2", fixtures::bz2_mon()),
    ];
    for (name, m) in cases {
        let m = Arc::new(m);
        match compare_day_vs_transport(&m, &Bounds::new(1_000_000)) {
            Ok(cmp) => {
                if !cmp.is_ok() {
                    eprintln!("{name}: comparison cell fails its law checks");
                    ok = false;
                }
                let Some(isos) = cmp.whisker.nat.pointwise_isos() else {
                    eprintln!("{name}: comparison is not pointwise iso");
                    ok = false;
                    continue;
                };
                let inv_nat = NatTrans::new(
                    cmp.whisker.target.functor().clone(),
                    cmp.whisker.source.functor().clone(),
                    isos.iter().map(|w| w.backward).collect(),
                )
                .unwrap();
                let inv = MonoidalNatTrans {
                    source: cmp.whisker.target.clone(),
                    target: cmp.whisker.source.clone(),
                    nat: inv_nat,
                };
                if !check_monoidal_nat_trans(&inv).is_ok() {
                    eprintln!("{name}: inverse cell is not monoidal");
                    ok = false;
                }
                let fwd_bwd = cmp.whisker.nat.then_vertical(&inv.nat);
                let bwd_fwd = inv.nat.then_vertical(&cmp.whisker.nat);
                let id_src = NatTrans::identity(cmp.whisker.source.functor());
                let id_tgt = NatTrans::identity(cmp.whisker.target.functor());
                if fwd_bwd.components() != id_src.components()
                    || bwd_fwd.components() != id_tgt.components()
                {
                    eprintln!("{name}: inverse does not cancel");
                    ok = false;
                }
                if !cmp.cells_equal {
                    eprintln!("{name}: transported and Day cells differ extensionally");
                    ok = false;
                }
            }
            Err(e) => {
                eprintln!("{name}: comparison failed: {e}");
                ok = false;
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(120) {
        eprintln!("criterion 5 over budget: {elapsed:?}");
        ok = false;
    }
    conclude(5, "Rezk-vs-Day comparison", ok);
}

// ---------------------------------------------------------------------------
// Criterion 6: whiskering bijections and functor lifting

#[test]
fn criterion_6_whiskering_and_lifts() {
    let bounds = Bounds::new(5_000_000);
    let mut ok = true;
    let targets: Vec<(&str, Arc<FinCat>)> = vec![
        ("t1", fixtures::t1()),
        ("d2", FinCat::discrete(2)),
        ("bz2", fixtures::bzn(2)),
    ];
    for (cname, c) in fixtures::all_categories() {
        let (d, w) = skeletalize(&c);
        for (ename, e) in &targets {
            let gs = enumerate_functors(d.cat(), e, &bounds).unwrap();
            for g1 in &gs {
                for g2 in &gs {
                    let direct = enumerate_nat_trans(g1, g2, &bounds).unwrap();
                    let wg1 = w.functor.then(g1);
                    let wg2 = w.functor.then(g2);
                    let whiskered = enumerate_nat_trans(&wg1, &wg2, &bounds).unwrap();
                    let mut images: Vec<Vec<MorId>> = direct
                        .iter()
                        .map(|cell| whisker_left(&w.functor, cell).components().to_vec())
                        .collect();
                    images.sort();
                    let distinct = images.windows(2).all(|p| p[0] != p[1]);
                    let covered = whiskered
                        .iter()
                        .all(|cell| images.binary_search(&cell.components().to_vec()).is_ok());
                    if !(distinct && covered && direct.len() == whiskered.len()) {
                        eprintln!(
                            "{cname}->{ename}: whiskering not bijective ({} vs {})",
                            direct.len(),
                            whiskered.len()
                        );
                        ok = false;
                    }
                }
            }
            for g0 in enumerate_functors(&c, e, &bounds).unwrap() {
                let (g, nu) = lift_functor_along(&w, &g0);
                let composite = w.functor.then(&g);
                if nu.source() != &composite || nu.target() != &g0 {
                    eprintln!("{cname}->{ename}: lift comparison has wrong endpoints");
                    ok = false;
                }
                if !nu.check_naturality().is_ok() || nu.pointwise_isos().is_none() {
                    eprintln!("{cname}->{ename}: lift comparison is not a natural iso");
                    ok = false;
                }
            }
        }
    }
    conclude(6, "adjoint-equivalence set level", ok);
}

// ---------------------------------------------------------------------------
// Criterion 7: I/O round-trips and parser fuzzing

#[test]
fn criterion_7_io_roundtrips() {
    let mut ok = true;

    for (name, c) in fixtures::all_categories() {
        let named = dsl::name_category(&c, None);
        let text = dsl::print_canonical("C", &named);
        match dsl::load(&text) {
            Ok(module) => {
                let back = module.category("C").expect("category round-trips");
                if back.cat.as_ref() != c.as_ref() {
                    eprintln!("{name}: DSL round-trip changed the category");
                    ok = false;
                }
                if dsl::print_canonical("C", back) != text {
                    eprintln!("{name}: canonical text is not a fixed point");
                    ok = false;
                }
            }
            Err(e) => {
                eprintln!("{name}: DSL reload failed: {e}");
                ok = false;
            }
        }
    }
    for (name, m) in fixtures::all_monoidal() {
        let m = Arc::new(m);
        let named = dsl::name_category(m.base(), Some(Arc::clone(&m)));
        let text = dsl::print_canonical("M", &named);
        match dsl::load(&text) {
            Ok(module) => {
                let back = module.category("M").expect("category round-trips");
                if back.cat.as_ref() != m.base().as_ref()
                    || back.monoidal.as_deref() != Some(m.as_ref())
                {
                    eprintln!("{name}: DSL round-trip changed the monoidal structure");
                    ok = false;
                }
                if dsl::print_canonical("M", back) != text {
                    eprintln!("{name}: canonical text is not a fixed point");
                    ok = false;
                }
            }
            Err(e) => {
                eprintln!("{name}: DSL reload failed: {e}");
                ok = false;
            }
        }
    }

    // Parser fuzz: 10^5 random inputs, half raw bytes and half printable
    // ASCII, must produce diagnostics rather than panics.
    let mut rng = ChaCha8Rng::seed_from_u64(0xF022);
    for round in 0..100_000usize {
        let len = rng.gen_range(0..=64usize);
        let bytes: Vec<u8> = if round % 2 == 0 {
            (0..len).map(|_| rng.gen()).collect()
        } else {
            (0..len).map(|_| rng.gen_range(0x20..0x7fu8)).collect()
        };
        let outcome = dsl::parse_bytes(&bytes);
        if !outcome.is_ok() && outcome.diagnostics.is_empty() {
            eprintln!("fuzz round {round}: error outcome without diagnostics");
            ok = false;
        }
    }

    // JSON round-trips preserve law-check outcomes, including failures.
    for (name, c) in fixtures::all_categories() {
        let text = json::to_json(&Artifact::Category(Arc::clone(&c)));
        match json::from_json(&text) {
            Ok(Artifact::Category(back)) => {
                if back.as_ref() != c.as_ref() {
                    eprintln!("{name}: JSON round-trip changed the category");
                    ok = false;
                }
            }
            other => {
                eprintln!("{name}: JSON reload failed: {other:?}");
                ok = false;
            }
        }
    }
    for (name, m) in fixtures::all_monoidal() {
        let m = Arc::new(m);
        let text = json::to_json(&Artifact::Monoidal(Arc::clone(&m)));
        match json::from_json(&text) {
            Ok(Artifact::Monoidal(back)) => {
                if back.as_ref() != m.as_ref() || !check_monoidal_laws(&back).is_ok() {
                    eprintln!("{name}: JSON round-trip changed the monoidal structure");
                    ok = false;
                }
            }
            other => {
                eprintln!("{name}: JSON reload failed: {other:?}");
                ok = false;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x90CA);
    for it in corpus(9, 24) {
        let Some((mutant, _)) = mutate_composition(&it.cat, &mut rng) else {
            continue;
        };
        let before = matches!(mutant.check_category_laws(), Ok(r) if r.is_ok());
        let text = json::to_json(&Artifact::Category(Arc::clone(&mutant)));
        match json::from_json(&text) {
            Ok(Artifact::Category(back)) => {
                let after = matches!(back.check_category_laws(), Ok(r) if r.is_ok());
                if before != after || back.as_ref() != mutant.as_ref() {
                    eprintln!("{}: law outcome not preserved by JSON", it.name);
                    ok = false;
                }
            }
            other => {
                eprintln!("{}: JSON reload failed: {other:?}", it.name);
                ok = false;
            }
        }
    }

    conclude(7, "I/O round-trips and fuzzing", ok);
}
