use std::sync::Arc;

use esakia::fan::examples::bundled;
use esakia::fan::oracle::{
    agrees, bound_of, in_closure, in_down, in_interior, in_up, sample_points,
};
use esakia::fan::random::{random_esakia_space, random_map, random_set, random_space};
use esakia::fan::Point;
use esakia::fan::{validate, BasisConfig, DefinableSet, FanSpace, ShapeBasis, MAX_PERIOD};
use esakia::morphism::{classify, classify_with, preimage_hom_check};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn window(sets: &[&DefinableSet]) -> (u64, Vec<Point>) {
    let sp = sets[0].space();
    let b = bound_of(sp, sets);
    (b, sample_points(sp, b + 2 * MAX_PERIOD + 3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn operators_match_the_pointwise_oracle(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = Arc::new(random_space(&mut rng, 4, 3));
        let d = random_set(&mut rng, &x);
        let e = random_set(&mut rng, &x);
        let (b, pts) = window(&[&d, &e]);
        let u = d.union(&e).unwrap();
        prop_assert_eq!(agrees(&u, &pts, |p| d.contains(p) || e.contains(p)), None);
        let i = d.intersect(&e).unwrap();
        prop_assert_eq!(agrees(&i, &pts, |p| d.contains(p) && e.contains(p)), None);
        prop_assert_eq!(agrees(&d.complement(), &pts, |p| !d.contains(p)), None);
        prop_assert_eq!(agrees(&d.down_closure(), &pts, |p| in_down(&d, p)), None);
        prop_assert_eq!(agrees(&d.up_closure(), &pts, |p| in_up(&d, p, b)), None);
        prop_assert_eq!(agrees(&d.closure(), &pts, |p| in_closure(&d, p, b)), None);
        prop_assert_eq!(agrees(&d.interior(), &pts, |p| in_interior(&d, p, b)), None);
    }

    #[test]
    fn down_closure_is_a_closure_operator(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = Arc::new(random_space(&mut rng, 4, 3));
        let d = random_set(&mut rng, &x);
        let e = random_set(&mut rng, &x);
        let dd = d.down_closure();
        prop_assert!(d.is_subset(&dd).unwrap());
        prop_assert_eq!(dd.down_closure(), dd.clone());
        let de = d.union(&e).unwrap();
        prop_assert!(dd.is_subset(&de.down_closure()).unwrap());
        prop_assert_eq!(de.down_closure(), dd.union(&e.down_closure()).unwrap());
    }

    #[test]
    fn closure_and_interior_are_adjoint_to_the_predicates(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = Arc::new(random_space(&mut rng, 4, 3));
        let d = random_set(&mut rng, &x);
        prop_assert!(d.closure().is_closed());
        prop_assert!(d.interior().is_open());
        prop_assert_eq!(d.is_open(), d.complement().is_closed());
        prop_assert_eq!(d.closure().complement(), d.complement().interior());
    }

    #[test]
    fn esakia_routes_agree_on_random_spaces(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_space(&mut rng, 4, 3);
        let v = validate(&x);
        prop_assert!(v.routes_agree(), "{:?}", v);
        prop_assert!(!v.esakia || v.priestley);
    }
}

#[test]
fn spectral_closure_is_idempotent_on_bundled_spaces() {
    for (name, x) in bundled() {
        let x = Arc::new(x);
        for d in ShapeBasis::new(&x, None, BasisConfig { depth: 2 }).all_sets() {
            let s = d.spectral_closure();
            assert_eq!(s.spectral_closure(), s, "{name}: {d:?}");
        }
    }
}

fn residuation_holds(x: &Arc<FanSpace>) {
    let cu = ShapeBasis::new(x, None, BasisConfig::default()).clopen_upsets();
    for u in &cu {
        for v in &cu {
            let imp = DefinableSet::open_upset_implication(u, v).unwrap();
            assert!(imp.is_clopen() && imp.is_upset_def());
            for w in &cu {
                let lhs = w.is_subset(&imp).unwrap();
                let rhs = w.intersect(u).unwrap().is_subset(v).unwrap();
                assert_eq!(lhs, rhs, "w={w:?} u={u:?} v={v:?}");
            }
        }
    }
}

#[test]
fn implication_is_residual_on_esakia_spaces() {
    for (_, x) in bundled() {
        if validate(&x).esakia {
            residuation_holds(&Arc::new(x));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        residuation_holds(&Arc::new(random_esakia_space(&mut rng, 3, 2)));
    }
}

#[test]
fn random_maps_respect_containments_and_routes() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..300 {
        let dom = Arc::new(random_esakia_space(&mut rng, 3, 2));
        let cod = Arc::new(random_esakia_space(&mut rng, 3, 2));
        let f = random_map(&mut rng, &dom, &cod);
        let v = classify(&f).unwrap();
        assert_eq!(v.invariant_violation(), None, "{f:?}");
        for r in preimage_hom_check(&f, BasisConfig::default()).unwrap() {
            assert!(r.agree(), "{f:?} {r:?}");
        }
        let deep = classify_with(&f, BasisConfig { depth: 3 }).unwrap();
        assert_eq!(deep.flags(), v.flags(), "{f:?}");
    }
}

#[test]
fn preimages_match_pointwise_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..300 {
        let dom = Arc::new(random_space(&mut rng, 3, 2));
        let cod = Arc::new(random_space(&mut rng, 3, 2));
        let f = random_map(&mut rng, &dom, &cod);
        let d = random_set(&mut rng, &cod);
        let pre = f.preimage(&d).unwrap();
        let e = random_set(&mut rng, &dom);
        let img = f.image(&e).unwrap();
        let (db, cb) = f.bounds();
        let b = db
            .max(cb)
            .max(d.max_index().unwrap_or(0))
            .max(e.max_index().unwrap_or(0));
        let dom_pts = sample_points(&dom, b + 2 * MAX_PERIOD);
        assert_eq!(agrees(&pre, &dom_pts, |p| d.contains(f.apply(p))), None);
        // Image membership by searching the sampled domain points.
        let big = sample_points(&dom, 4 * b + 8 * MAX_PERIOD);
        let cod_pts = sample_points(&cod, b + 2 * MAX_PERIOD);
        assert_eq!(
            agrees(&img, &cod_pts, |q| big
                .iter()
                .any(|&p| e.contains(p) && f.apply(p) == q)),
            None
        );
    }
}
