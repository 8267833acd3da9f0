//! The acceptance checks, one group per criterion. Every group returns its
//! lines in a fixed order; independent cases run in parallel and are
//! collected in enumeration order, so reports do not depend on scheduling.
//!
//! Each check compares a library computation against an oracle that does
//! not share its code path: brute force over all subsets or all candidate
//! elements, or the hard-coded reference table.

use std::collections::BTreeMap;
use std::sync::Arc;

use esakia::brouwerian::{
    compose_star, dual_relation, filter_frame, optimal_filters, pointed_spectrum, prime_elements,
    prime_filters_ms, pseudoprime_elements,
};
use esakia::canon::enumerate_posets_upto;
use esakia::duality::{check_triangle_dl, h_star, ideal_frame, preimage_hom, FrameView};
use esakia::fan::examples::{ne_space, x2, x3, x4};
use esakia::fan::random::{random_esakia_space, random_map};
use esakia::fan::{validate, FanSpace, Point};
use esakia::hom::{all_homs, Signature};
use esakia::lattice::{downset_lattice, enumerate_lattices, lattices_upto};
use esakia::morphism::examples::golden_table;
use esakia::morphism::{classify, is_spectral_open, FanMap, Verdict};
use esakia::poset::all_functions;
use esakia::{FinLattice, FinPoset, MeetSemilatticeView, PosetMap, Subset};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::recheck::witness_fails;
use crate::report::{Format, Line, Report};

pub const DEFAULT_SEED: u64 = 0x5eed;

/// Flag names in `Verdict::flags` order, then spectral openness.
pub const CELLS: [&str; 6] = [
    "es_minus",
    "es",
    "es_plus",
    "es_star",
    "es_dagger",
    "spectral_open",
];

/// Enumeration bounds for every group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Posets whose downset lattices are checked for ideal implication.
    pub ideal_posets: usize,
    /// Heyting algebras for the `h*` bridge.
    pub heyting: usize,
    /// Posets for the p-morphism bridge and the finite classifier sweep.
    pub map_posets: usize,
    pub triangle_posets: usize,
    /// Posets whose downset lattices supply the naturality homs.
    pub naturality_posets: usize,
    pub random_maps: usize,
    pub optimal_filters: usize,
    pub semilattice_isos: usize,
    pub boxes: usize,
    pub frames: usize,
}

impl Bounds {
    pub const ACCEPTANCE: Bounds = Bounds {
        ideal_posets: 4,
        heyting: 5,
        map_posets: 4,
        triangle_posets: 4,
        naturality_posets: 3,
        random_maps: 10_000,
        optimal_filters: 8,
        semilattice_isos: 6,
        boxes: 4,
        frames: 8,
    };

    /// Every finite-tier bound set to `n`, naturality one below.
    pub fn uniform(n: usize) -> Bounds {
        Bounds {
            ideal_posets: n,
            heyting: n,
            map_posets: n,
            triangle_posets: n,
            naturality_posets: n.saturating_sub(1),
            random_maps: 0,
            optimal_filters: n,
            semilattice_isos: n,
            boxes: n,
            frames: n,
        }
    }
}

pub struct Criterion {
    pub number: usize,
    pub title: &'static str,
    pub lines: Vec<Line>,
}

impl Criterion {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    pub fn failures(&self) -> usize {
        self.lines.iter().filter(|l| !l.pass).count()
    }
}

type CaseResult = esakia::Result<(bool, Value)>;

/// Turns a computation into a line; a library error is a failure.
fn case(id: String, f: impl FnOnce() -> CaseResult) -> Line {
    match f() {
        Ok((pass, w)) => Line::new(id, pass, w),
        Err(e) => Line::new(id, false, json!({ "error": e.to_string() })),
    }
}

fn poset_json(p: &FinPoset) -> Value {
    json!({ "size": p.size(), "covers": p.cover_pairs() })
}

/// `(size, index within that size)` labels for an enumeration.
fn labels(posets: &[FinPoset]) -> Vec<String> {
    let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
    posets
        .iter()
        .map(|p| {
            let k = seen.entry(p.size()).or_default();
            *k += 1;
            format!("n{}#{}", p.size(), *k - 1)
        })
        .collect()
}

/// The reference table of the four maps, cell by cell.
pub fn golden() -> Vec<Line> {
    golden_table()
        .into_iter()
        .flat_map(|row| {
            let name = row.name;
            let map = Arc::new(row.map);
            let got = classify(&map).and_then(|v| Ok((v.clone(), is_spectral_open(&map)?)));
            row.expected
                .iter()
                .enumerate()
                .filter_map(|(i, e)| e.map(|e| (i, e)))
                .map(|(i, expected)| {
                    let id = format!("golden/{name}/{}", CELLS[i]);
                    match &got {
                        Ok((v, open)) => {
                            let value = if i < 5 { v.flags()[i] } else { *open };
                            let witness = v.witnesses.get(CELLS[i]).cloned();
                            let line = Line::new(
                                id,
                                value == expected,
                                json!({ "expected": expected, "got": value, "witness": witness }),
                            );
                            // A mismatch on a cell that should hold is reproduced by
                            // re-evaluating the classifier's witness.
                            match witness {
                                Some(w) if expected => {
                                    let m = map.clone();
                                    line.with_recheck(move || witness_fails(&m, &w))
                                }
                                _ => line,
                            }
                        }
                        Err(e) => Line::new(id, false, json!({ "error": e.to_string() })),
                    }
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Priestley and Esakia verdicts for the bundled spaces: `x2`, `x3`, `x4`
/// are Esakia through both routes, and `ne` is Priestley but fails both
/// routes with certificates whose offending sets are indeed not clopen.
pub fn bundled_spaces() -> Vec<Line> {
    let mut out = Vec::new();
    for (name, x) in [("x2", x2()), ("x3", x3()), ("x4", x4())] {
        let v = validate(&x);
        let pass = v.priestley && v.esakia && v.down_route && v.implication_route;
        out.push(Line::new(
            format!("space/{name}/esakia"),
            pass,
            serde_json::to_value(&v).expect("serializable"),
        ));
    }
    let v = validate(&ne_space());
    out.push(Line::new(
        "space/ne/priestley",
        v.priestley,
        json!({ "failure": v.priestley_failure }),
    ));
    let down_cert = v.down_failure.as_ref().is_some_and(|d| {
        d.clopen.is_clopen() && !d.down.is_clopen() && d.down == d.clopen.down_closure()
    });
    out.push(Line::new(
        "space/ne/not_esakia_down_route",
        !v.esakia && !v.down_route && down_cert,
        json!({ "certificate": v.down_failure }),
    ));
    let imp_cert = v.implication_failure.as_ref().is_some_and(|f| {
        f.u.is_clopen()
            && f.u.is_upset_def()
            && f.v.is_clopen()
            && f.v.is_upset_def()
            && !f.implication.is_clopen()
    });
    out.push(Line::new(
        "space/ne/not_esakia_implication_route",
        !v.implication_route && imp_cert,
        json!({ "certificate": v.implication_failure }),
    ));
    out
}

/// The largest ideal `K` with `K ∩ I ⊆ J`, found by trying every ideal.
fn brute_residual(ideals: &[Subset], i: Subset, j: Subset) -> Option<Subset> {
    let fits: Vec<Subset> = ideals
        .iter()
        .copied()
        .filter(|k| k.intersection(i).is_subset(j))
        .collect();
    fits.iter()
        .copied()
        .find(|&c| fits.iter().all(|k| k.is_subset(c)))
}

/// Ideal implication against the brute-force residual on downset lattices.
pub fn ideal_implication(max: usize) -> Vec<Line> {
    let posets = enumerate_posets_upto(max).unwrap_or_default();
    let names = labels(&posets);
    posets
        .par_iter()
        .zip(names)
        .map(|(p, name)| {
            case(format!("ideal_implication/{name}"), || {
                let l = downset_lattice(p)?.lattice;
                let jf = ideal_frame(&l)?;
                let sets = &jf.ideals.sets;
                let mut pairs = 0;
                for i in 0..sets.len() {
                    for j in 0..sets.len() {
                        pairs += 1;
                        let got = sets[jf.implication(i, j)?];
                        let want = brute_residual(sets, sets[i], sets[j]);
                        if want != Some(got) {
                            return Ok((
                                false,
                                json!({
                                    "poset": poset_json(p), "i": sets[i].to_vec(), "j": sets[j].to_vec(),
                                    "got": got.to_vec(), "want": want.map(|w| w.to_vec()),
                                }),
                            ));
                        }
                    }
                }
                Ok((true, json!({ "ideals": sets.len(), "pairs": pairs })))
            })
        })
        .collect()
}

/// `h` is a Heyting homomorphism iff `h*` preserves implication of ideals.
pub fn heyting_bridge(max: usize) -> Vec<Line> {
    let has: Vec<FinLattice> = (1..=max)
        .flat_map(|n| enumerate_lattices(n, true).unwrap_or_default())
        .collect();
    let frames: Vec<_> = has.iter().map(ideal_frame).collect();
    let pairs: Vec<(usize, usize)> = (0..has.len())
        .flat_map(|a| (0..has.len()).map(move |b| (a, b)))
        .collect();
    pairs
        .par_iter()
        .map(|&(a, b)| {
            case(format!("heyting_bridge/{a}->{b}"), || {
                let (ja, jb) = (frames[a].as_ref().map_err(Clone::clone)?, frames[b].as_ref().map_err(Clone::clone)?);
                let (mut homs, mut heyting) = (0, 0);
                for h in all_homs(&has[a], &has[b], Signature::DistributiveLattice) {
                    homs += 1;
                    let hs = h_star(&h, ja, jb)?;
                    let mut preserves = true;
                    'pairs: for i in 0..ja.size() {
                        for j in 0..ja.size() {
                            if hs[ja.implication(i, j)?] != jb.implication(hs[i], hs[j])? {
                                preserves = false;
                                break 'pairs;
                            }
                        }
                    }
                    heyting += h.is_ha_hom() as usize;
                    if preserves != h.is_ha_hom() {
                        return Ok((false, json!({ "map": h.map, "is_ha_hom": h.is_ha_hom(), "h_star_preserves": preserves })));
                    }
                }
                Ok((true, json!({ "sizes": [has[a].size(), has[b].size()], "homs": homs, "heyting": heyting })))
            })
        })
        .collect()
}

/// `f` is a p-morphism iff `f⁻¹` is a Heyting homomorphism, over all maps.
pub fn p_morphism_bridge(max: usize) -> Vec<Line> {
    let posets: Vec<FinPoset> = enumerate_posets_upto(max).unwrap_or_default();
    let names = labels(&posets);
    posets
        .par_iter()
        .zip(names)
        .map(|(p, name)| {
            case(format!("p_morphism_bridge/{name}"), || {
                let (mut maps, mut pm) = (0, 0);
                for q in &posets {
                    for a in all_functions(p.size(), q.size()) {
                        maps += 1;
                        let f = PosetMap::new(p.clone(), q.clone(), a)?;
                        // The preimage of a non-monotone map does not send
                        // upsets to upsets, so it is no homomorphism at all.
                        let heyting = if f.is_order_preserving() { preimage_hom(&f)?.2.is_ha_hom() } else { false };
                        pm += f.is_p_morphism() as usize;
                        if heyting != f.is_p_morphism() {
                            return Ok((
                                false,
                                json!({ "dom": poset_json(p), "cod": poset_json(q), "map": f.assignment, "p_morphism": f.is_p_morphism() }),
                            ));
                        }
                    }
                }
                Ok((true, json!({ "maps": maps, "p_morphisms": pm })))
            })
        })
        .collect()
}

/// The finite triangle for downset lattices, with naturality for every
/// bounded-lattice hom into the smaller ones.
pub fn triangle(max: usize, naturality: usize) -> Vec<Line> {
    let posets = enumerate_posets_upto(max).unwrap_or_default();
    let names = labels(&posets);
    let targets: Vec<FinLattice> = posets
        .iter()
        .filter(|p| p.size() <= naturality)
        .filter_map(|p| downset_lattice(p).ok().map(|l| l.lattice))
        .collect();
    posets
        .par_iter()
        .zip(names)
        .map(|(p, name)| {
            case(format!("triangle/{name}"), || {
                let a = downset_lattice(p)?.lattice;
                let homs: Vec<_> = if p.size() <= naturality {
                    targets
                        .iter()
                        .flat_map(|b| all_homs(&a, b, Signature::DistributiveLattice))
                        .collect()
                } else {
                    Vec::new()
                };
                let r = check_triangle_dl(&a, &homs);
                let failed: Vec<_> = r.legs.iter().filter(|l| !l.pass).collect();
                Ok((
                    r.passed(),
                    json!({ "legs": r.legs.len(), "homs": homs.len(), "failed": failed }),
                ))
            })
        })
        .collect()
}

/// Classifier flags of one finite map and the brute-force flags beside them.
struct FiniteCase {
    assignment: Vec<usize>,
    verdict: esakia::Result<Verdict>,
    brute: [bool; 5],
    p_morphism: bool,
}

fn down(p: &FinPoset, s: Subset) -> Subset {
    (0..p.size())
        .filter(|&x| s.iter().any(|y| p.leq(x, y)))
        .collect()
}

fn is_down(p: &FinPoset, s: Subset) -> bool {
    down(p, s) == s
}

fn is_up(p: &FinPoset, s: Subset) -> bool {
    (0..p.size()).all(|x| !s.contains(x) || (0..p.size()).all(|y| !p.leq(x, y) || s.contains(y)))
}

/// The five classes decided by their definitions, quantifying over every
/// subset of the codomain. The topology is discrete, so every subset is
/// clopen, closure is the identity and every subset is a finite union of
/// differences `↑y ∖ (↑y ∖ {y})` of open upsets.
fn brute_flags(x: &FinPoset, y: &FinPoset, f: &[usize]) -> [bool; 5] {
    let pre = |s: Subset| -> Subset { (0..x.size()).filter(|&i| s.contains(f[i])).collect() };
    let all: Vec<Subset> = esakia::subset::subsets_of(y.carrier()).collect();
    let minus = all.iter().all(|&u| !is_up(y, u) || is_up(x, pre(u)));
    let commutes = |e: Subset| pre(down(y, e)) == down(x, pre(e));
    let es = minus && (0..y.size()).all(|p| commutes(Subset::singleton(p)));
    let plus = minus && all.iter().all(|&e| commutes(e));
    let star = minus && all.iter().all(|&d| !is_down(y, d) || commutes(d));
    [minus, es, plus, star, plus && star]
}

/// Every map between posets of size `1..=max`, grouped by domain poset.
struct FiniteSweep {
    posets: Vec<FinPoset>,
    names: Vec<String>,
    cases: Vec<Vec<(usize, FiniteCase)>>,
}

fn finite_sweep(max: usize) -> FiniteSweep {
    let posets: Vec<FinPoset> = enumerate_posets_upto(max)
        .unwrap_or_default()
        .into_iter()
        .filter(|p| p.size() > 0)
        .collect();
    let names = labels(&posets);
    let spaces: Vec<Arc<FanSpace>> = posets
        .iter()
        .map(|p| Arc::new(FanSpace::embed_finite_poset(p)))
        .collect();
    let cases = (0..posets.len())
        .into_par_iter()
        .map(|d| {
            let mut out = Vec::new();
            for c in 0..posets.len() {
                for a in all_functions(posets[d].size(), posets[c].size()) {
                    let named = a.iter().map(|&i| Point::Skel(i)).collect();
                    let verdict = FanMap::new(
                        spaces[d].clone(),
                        spaces[c].clone(),
                        named,
                        vec![],
                        Default::default(),
                    )
                    .and_then(|f| classify(&f));
                    let brute = brute_flags(&posets[d], &posets[c], &a);
                    let p_morphism = PosetMap::new(posets[d].clone(), posets[c].clone(), a.clone())
                        .map(|m| m.is_p_morphism())
                        .unwrap_or(false);
                    out.push((
                        c,
                        FiniteCase {
                            assignment: a,
                            verdict,
                            brute,
                            p_morphism,
                        },
                    ));
                }
            }
            out
        })
        .collect();
    FiniteSweep {
        posets,
        names,
        cases,
    }
}

fn seeded(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Random map `i` of the seeded family: each map owns a ChaCha stream, so
/// the family is the same whatever the scheduling.
pub fn random_case(seed: u64, i: u64) -> FanMap {
    let mut rng = seeded(seed, i);
    let dom = Arc::new(random_esakia_space(&mut rng, 3, 2));
    let cod = Arc::new(random_esakia_space(&mut rng, 3, 2));
    random_map(&mut rng, &dom, &cod)
}

const BATCH: usize = 1000;

/// Containments between the classes on seeded random maps and on every
/// finite map of the sweep.
fn containments(seed: u64, count: usize, sweep: &FiniteSweep) -> Vec<Line> {
    let batches = count.div_ceil(BATCH);
    let mut out: Vec<Line> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let range = b * BATCH..((b + 1) * BATCH).min(count);
            let id = format!("containment/random/{:05}-{:05}", range.start, range.end - 1);
            let mut first: Option<Value> = None;
            let mut violations = 0;
            for i in range.clone() {
                let f = random_case(seed, i as u64);
                let bad = match classify(&f) {
                    Ok(v) => v
                        .invariant_violation()
                        .map(|s| json!({ "map": i, "violates": s, "flags": v.flags() })),
                    Err(e) => Some(json!({ "map": i, "error": e.to_string() })),
                };
                if let Some(w) = bad {
                    violations += 1;
                    first.get_or_insert(w);
                }
            }
            let line = Line::new(
                id,
                violations == 0,
                json!({ "maps": range.len(), "violations": violations, "first": first }),
            );
            if let Some(i) = first.as_ref().and_then(|w| w["map"].as_u64()) {
                line.with_recheck(move || {
                    classify(&random_case(seed, i))
                        .map_or(true, |v| v.invariant_violation().is_some())
                })
            } else {
                line
            }
        })
        .collect();
    for (d, cases) in sweep.cases.iter().enumerate() {
        let mut first: Option<Value> = None;
        let mut violations = 0;
        for (c, fc) in cases {
            let bad = match &fc.verdict {
                Ok(v) => v.invariant_violation().map(
                    |s| json!({ "cod": sweep.names[*c], "map": fc.assignment, "violates": s }),
                ),
                Err(e) => Some(
                    json!({ "cod": sweep.names[*c], "map": fc.assignment, "error": e.to_string() }),
                ),
            };
            if let Some(w) = bad {
                violations += 1;
                first.get_or_insert(w);
            }
        }
        out.push(Line::new(
            format!("containment/finite/{}", sweep.names[d]),
            violations == 0,
            json!({ "maps": cases.len(), "violations": violations, "first": first }),
        ));
    }
    out
}

/// Classifier flags against the brute-force definitions on 0-tail spaces,
/// and ES against the poset p-morphism test.
fn finite_collapse(sweep: &FiniteSweep) -> Vec<Line> {
    sweep
        .cases
        .iter()
        .enumerate()
        .map(|(d, cases)| {
            let mut mismatch: Option<Value> = None;
            let mut counts = [0usize; 5];
            for (c, fc) in cases {
                let flags = match &fc.verdict {
                    Ok(v) => v.flags(),
                    Err(e) => {
                        mismatch.get_or_insert(json!({ "cod": sweep.names[*c], "map": fc.assignment, "error": e.to_string() }));
                        continue;
                    }
                };
                for (k, n) in counts.iter_mut().enumerate() {
                    *n += flags[k] as usize;
                }
                if flags != fc.brute || flags[1] != fc.p_morphism {
                    mismatch.get_or_insert(json!({
                        "dom": poset_json(&sweep.posets[d]), "cod": poset_json(&sweep.posets[*c]),
                        "map": fc.assignment, "classifier": flags, "brute_force": fc.brute, "p_morphism": fc.p_morphism,
                    }));
                }
            }
            let counts: BTreeMap<&str, usize> = CELLS.iter().copied().zip(counts).collect();
            Line::new(
                format!("finite_collapse/{}", sweep.names[d]),
                mismatch.is_none(),
                json!({ "maps": cases.len(), "true_flags": counts, "mismatch": mismatch }),
            )
        })
        .collect()
}

fn sorted(mut v: Vec<Subset>) -> Vec<Subset> {
    v.sort();
    v
}

fn distributive_views(max: usize) -> Vec<MeetSemilatticeView> {
    lattices_upto(max)
        .unwrap_or_default()
        .into_iter()
        .map(MeetSemilatticeView::new)
        .filter(|v| v.is_distributive_ms())
        .collect()
}

/// Optimal filters coincide with prime filters on every distributive view.
pub fn optimal_is_prime(max: usize) -> Vec<Line> {
    let all: Vec<FinLattice> = lattices_upto(max).unwrap_or_default();
    (1..=max)
        .into_par_iter()
        .map(|n| {
            case(format!("optimal_is_prime/size{n}"), || {
                let (mut views, mut distributive) = (0, 0);
                for l in all.iter().filter(|l| l.size() == n) {
                    views += 1;
                    let v = MeetSemilatticeView::new(l.clone());
                    if !v.is_distributive_ms() {
                        continue;
                    }
                    distributive += 1;
                    let (opt, pr) = (sorted(optimal_filters(&v)?), sorted(prime_filters_ms(&v)?));
                    if opt != pr {
                        return Ok((false, json!({ "order": poset_json(l.order()), "optimal": opt.len(), "prime": pr.len() })));
                    }
                }
                Ok((true, json!({ "views": views, "distributive": distributive })))
            })
        })
        .collect()
}

/// `K(ℱ(A))^d ≅ A` and `𝒜(𝒳(A)) ≅ A` for every distributive view.
pub fn semilattice_isos(max: usize) -> Vec<Line> {
    let views = distributive_views(max);
    let names: Vec<String> = {
        let ls: Vec<FinPoset> = views.iter().map(|v| v.base().order().clone()).collect();
        labels(&ls)
    };
    views
        .par_iter()
        .zip(names)
        .map(|(v, name)| {
            case(format!("semilattice_isos/{name}"), || {
                let k = filter_frame(v)?.k_dual_iso();
                let phi = pointed_spectrum(v)?.phi_iso();
                Ok((
                    k.is_ok() && phi.is_ok(),
                    json!({ "k_dual": k.err(), "admissibles": phi.err() }),
                ))
            })
        })
        .collect()
}

/// `□_{S∗R} = □_R ∘ □_S` on admissibles, for the dual relations of every
/// composable pair of meet-semilattice homs.
pub fn box_functoriality(max: usize) -> Vec<Line> {
    let views = distributive_views(max);
    let spectra: Vec<_> = views.iter().map(pointed_spectrum).collect();
    (0..views.len())
        .into_par_iter()
        .map(|a| {
            case(format!("box_functoriality/from{a}"), || {
                let sp = |i: usize| spectra[i].as_ref().map_err(Clone::clone);
                let mut composites = 0;
                for b in 0..views.len() {
                    for h in all_homs(views[a].base(), views[b].base(), Signature::MeetSemilattice)
                    {
                        let rh = dual_relation(&h, sp(b)?, sp(a)?)?;
                        for c in 0..views.len() {
                            for g in all_homs(
                                views[b].base(),
                                views[c].base(),
                                Signature::MeetSemilattice,
                            ) {
                                let rg = dual_relation(&g, sp(c)?, sp(b)?)?;
                                let star = compose_star(&rh, &rg)?;
                                composites += 1;
                                for &u in sp(a)?.space.admissibles() {
                                    if star.box_r(u) != rg.box_r(rh.box_r(u)) {
                                        return Ok((
                                            false,
                                            json!({ "h": h.map, "g": g.map, "u": u.to_vec() }),
                                        ));
                                    }
                                }
                            }
                        }
                    }
                }
                Ok((
                    true,
                    json!({ "size": views[a].size(), "composites": composites }),
                ))
            })
        })
        .collect()
}

/// Pseudoprime and prime elements coincide on every finite frame.
pub fn pseudoprimes(max: usize) -> Vec<Line> {
    let all: Vec<FinLattice> = lattices_upto(max).unwrap_or_default();
    (1..=max)
        .into_par_iter()
        .map(|n| {
            case(format!("pseudoprime_is_prime/size{n}"), || {
                let mut frames = 0;
                for l in all.iter().filter(|l| l.size() == n) {
                    let Ok(fv) = FrameView::new(l.clone()) else { continue };
                    frames += 1;
                    let (pp, p) = (pseudoprime_elements(&fv), prime_elements(&fv));
                    if pp != p {
                        return Ok((false, json!({ "order": poset_json(l.order()), "pseudoprime": pp.to_vec(), "prime": p.to_vec() })));
                    }
                }
                Ok((true, json!({ "frames": frames })))
            })
        })
        .collect()
}

/// Criteria 1 through 8.
pub fn run(seed: u64, bounds: Bounds) -> Vec<Criterion> {
    let sweep = finite_sweep(bounds.map_posets);
    let mut c3 = heyting_bridge(bounds.heyting);
    c3.extend(p_morphism_bridge(bounds.map_posets));
    let mut c8 = optimal_is_prime(bounds.optimal_filters);
    c8.extend(semilattice_isos(bounds.semilattice_isos));
    c8.extend(box_functoriality(bounds.boxes));
    c8.extend(pseudoprimes(bounds.frames));
    let groups: [(&'static str, Vec<Line>); 8] = [
        ("reference table of the four fan maps", golden()),
        (
            "ideal implication equals the brute-force residual",
            ideal_implication(bounds.ideal_posets),
        ),
        ("Heyting and p-morphism bridges", c3),
        (
            "triangle commutes with naturality",
            triangle(bounds.triangle_posets, bounds.naturality_posets),
        ),
        (
            "bundled spaces: Esakia, and the Priestley non-Esakia witness",
            bundled_spaces(),
        ),
        (
            "morphism class containments",
            containments(seed, bounds.random_maps, &sweep),
        ),
        (
            "finite collapse against brute force",
            finite_collapse(&sweep),
        ),
        ("pointed spectra, filter frames and box functoriality", c8),
    ];
    groups
        .into_iter()
        .enumerate()
        .map(|(i, (title, lines))| Criterion {
            number: i + 1,
            title,
            lines,
        })
        .collect()
}

/// All lines of the criteria, each id prefixed by its criterion.
pub fn report(criteria: &[Criterion]) -> Report {
    let mut r = Report::new();
    for c in criteria {
        r.extend(c.lines.iter().cloned().map(|mut l| {
            l.id = format!("c{}/{}", c.number, l.id);
            l
        }));
    }
    r
}

pub fn render(criteria: &[Criterion], format: Format) -> String {
    report(criteria).render(format)
}

/// The finite-tier invariants: ideal implication, both bridges, the
/// triangle and the finite collapse, all bounded by `n`.
pub fn roundtrip(n: usize) -> Report {
    let b = Bounds::uniform(n);
    let sweep = finite_sweep(b.map_posets);
    let mut r = Report::new();
    r.extend(ideal_implication(b.ideal_posets));
    r.extend(heyting_bridge(b.heyting));
    r.extend(p_morphism_bridge(b.map_posets));
    r.extend(triangle(b.triangle_posets, b.naturality_posets));
    r.extend(containments(DEFAULT_SEED, 0, &sweep));
    r.extend(finite_collapse(&sweep));
    r
}

/// The pointed-spectrum and filter-frame invariants bounded by `n`.
pub fn roundtrip_brouwerian(n: usize) -> Report {
    let mut r = Report::new();
    r.extend(optimal_is_prime(n));
    r.extend(semilattice_isos(n));
    r.extend(box_functoriality(n));
    r.extend(pseudoprimes(n));
    r
}
