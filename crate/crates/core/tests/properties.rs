use orlicz_core::domain::{ball_volume, weight_dominates, Sampling};
use orlicz_core::grid::{default_c_grid, LogGrid};
use orlicz_core::norms::{luxemburg_norm, luxemburg_norm_with, modular, weak_luxemburg_norm};
use orlicz_core::{BoxRegion, Corpus, CorpusSpec, Piece, QuadratureSpec, Region, SimpleFunction, Weight, YoungFunction};
use proptest::prelude::*;

const Q: QuadratureSpec = QuadratureSpec { points_per_axis: 64, depth: 2 };

fn young() -> impl Strategy<Value = YoungFunction> {
    let power = (1.0..6.0f64, 0.1..10.0f64).prop_map(|(p, c)| YoungFunction::power(p, c).unwrap());
    let exp = (1.0..3.0f64).prop_map(|p| YoungFunction::exp_power(p).unwrap());
    let pwl = (prop::collection::vec(0.1..3.0f64, 1..5), 0.0..1.0f64).prop_map(|(gaps, s0)| {
        let mut t = vec![0.0];
        let mut s = Vec::new();
        let mut slope = s0;
        for g in gaps {
            t.push(t.last().unwrap() + g);
            slope += g;
            s.push(slope);
        }
        YoungFunction::piecewise_linear(t, s).unwrap()
    });
    let leaf = prop_oneof![power, exp, pwl];
    leaf.prop_recursive(1, 4, 3, |inner| {
        prop::collection::vec((0.1..3.0f64, inner), 1..3).prop_map(|terms| YoungFunction::sum(terms).unwrap())
    })
}

fn weight() -> impl Strategy<Value = Weight> {
    prop_oneof![
        (0.5..3.0f64).prop_map(|c| Weight::constant(c).unwrap()),
        (0.0..2.0f64).prop_map(|a| Weight::exp_norm(a).unwrap()),
        (0.0..3.0f64).prop_map(|a| Weight::poly_norm(a).unwrap()),
    ]
}

fn positive() -> impl Strategy<Value = f64> {
    (-18.0..18.0f64).prop_map(|e| 10f64.powf(e))
}

// disjoint 1-d slabs starting at `start`
fn box_function() -> impl Strategy<Value = SimpleFunction> {
    (-3.0..3.0f64, prop::collection::vec((0.05..2.0f64, -10.0..10.0f64), 1..5)).prop_map(|(start, parts)| {
        let mut a = start;
        let pieces = parts
            .into_iter()
            .map(|(w, v)| {
                let r = Region::Box(BoxRegion::interval(a, a + w).unwrap());
                a += w;
                Piece { value: if v.abs() < 0.01 { 1.0 } else { v }, region: r }
            })
            .collect();
        SimpleFunction::new(1, pieces).unwrap()
    })
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        ((a - b) / b).abs()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn inverse_is_monotone(phi in young(), a in positive(), b in positive()) {
        let (s1, s2) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(phi.inverse(s1).unwrap() <= phi.inverse(s2).unwrap());
    }

    #[test]
    fn inverse_sandwich(phi in young(), s in positive()) {
        let back = phi.eval(phi.inverse(s).unwrap()).unwrap();
        prop_assert!(back <= s * (1.0 + 1e-9), "{back} > {s}");
        let round = phi.inverse(phi.eval(s).unwrap()).unwrap();
        prop_assert!(s <= round * (1.0 + 1e-9), "{s} > {round}");
    }

    #[test]
    fn power_round_trip(p in 1.0..8.0f64, c in 0.01..100.0f64, t in (-6.0..6.0f64).prop_map(|e| 10f64.powf(e))) {
        let phi = YoungFunction::power(p, c).unwrap();
        prop_assert!(rel(phi.inverse(phi.eval(t).unwrap()).unwrap(), t) < 1e-12);
    }

    #[test]
    fn sum_is_additive(a in 0.1..5.0f64, b in 0.1..5.0f64, p in 1.0..4.0f64, t in (-4.0..1.5f64).prop_map(|e| 10f64.powf(e))) {
        let phi1 = YoungFunction::power(p, 1.0).unwrap();
        let phi2 = YoungFunction::exp_power(1.0).unwrap();
        let sum = YoungFunction::sum(vec![(a, phi1.clone()), (b, phi2.clone())]).unwrap();
        let want = a * phi1.eval(t).unwrap() + b * phi2.eval(t).unwrap();
        prop_assert!(rel(sum.eval(t).unwrap(), want) < 1e-14);
    }

    #[test]
    fn translate_round_trip(f in box_function(), x in -50.0..50.0f64) {
        let g = f.translate(&[x]).unwrap();
        prop_assert!((g.support_measure() - f.support_measure()).abs() < 1e-12);
        let back = g.translate(&[-x]).unwrap();
        for (p, q) in f.pieces().iter().zip(back.pieces()) {
            prop_assert_eq!(p.value, q.value);
            match (&p.region, &q.region) {
                (Region::Box(a), Region::Box(b)) => {
                    prop_assert!((a.lo()[0] - b.lo()[0]).abs() < 1e-12);
                    prop_assert!((a.hi()[0] - b.hi()[0]).abs() < 1e-12);
                }
                _ => prop_assert!(false),
            }
        }
    }

    #[test]
    fn product_commutes(f in box_function(), g in box_function()) {
        let fg = f.pointwise_product(&g).unwrap();
        let gf = g.pointwise_product(&f).unwrap();
        for x in [-4.0, -1.3, 0.0, 0.7, 2.2, 5.1] {
            prop_assert_eq!(fg.eval_at(&[x]), gf.eval_at(&[x]));
        }
        let one = SimpleFunction::indicator(Region::Box(BoxRegion::interval(-20.0, 20.0).unwrap())).unwrap();
        let id = f.pointwise_product(&one).unwrap();
        prop_assert!(rel(id.support_measure(), f.support_measure()) < 1e-12);
    }

    #[test]
    fn ball_volume_scaling(n in 1usize..=3, r in 0.01..100.0f64) {
        prop_assert_eq!(ball_volume(n, 2.0 * r).unwrap(), 2f64.powi(n as i32) * ball_volume(n, r).unwrap());
        prop_assert!(ball_volume(n, r * 1.001).unwrap() > ball_volume(n, r).unwrap());
    }

    #[test]
    fn homogeneity(f in box_function(), phi in young(), alpha in 0.01..100.0f64) {
        let a = luxemburg_norm(&f.scaled(alpha), &phi, &Weight::ONE, Q).unwrap().value;
        let b = luxemburg_norm(&f, &phi, &Weight::ONE, Q).unwrap().value;
        prop_assert!(rel(a, alpha * b) < 1e-9);
    }

    #[test]
    fn triangle(f in box_function(), g in box_function(), phi in young()) {
        let n = |h: &SimpleFunction| luxemburg_norm(h, &phi, &Weight::ONE, Q).unwrap().value;
        let s = n(&f.sum(&g).unwrap());
        prop_assert!(s <= (n(&f) + n(&g)) * (1.0 + 1e-9));
    }

    #[test]
    fn modular_brackets_unit_level(f in box_function(), phi in young(), u in weight()) {
        let v = luxemburg_norm(&f, &phi, &u, Q).unwrap().value;
        prop_assert!(modular(&f, &phi, &u, v * (1.0 + 1e-8), Q).unwrap().value <= 1.0);
        prop_assert!(modular(&f, &phi, &u, v * (1.0 - 1e-6), Q).unwrap().value >= 1.0 - 1e-9);
        let (b1, b2) = (v * 0.5, v * 2.0);
        prop_assert!(modular(&f, &phi, &u, b1, Q).unwrap().value > modular(&f, &phi, &u, b2, Q).unwrap().value);
    }

    #[test]
    fn weak_below_strong(f in box_function(), phi in young()) {
        let w = weak_luxemburg_norm(&f, &phi, &Weight::ONE).unwrap().value;
        let s = luxemburg_norm(&f, &phi, &Weight::ONE, Q).unwrap().value;
        prop_assert!(w <= s * (1.0 + 1e-9));
    }

    #[test]
    fn monotone_in_constant_weight(f in box_function(), phi in young()) {
        let one = luxemburg_norm(&f, &phi, &Weight::ONE, Q).unwrap().value;
        let two = luxemburg_norm(&f, &phi, &Weight::constant(2.0).unwrap(), Q).unwrap().value;
        prop_assert!(one <= two);
    }

    #[test]
    fn cancelled_weight_matches_unweighted(f in box_function(), phi in young(), u in weight()) {
        let g = |x: &[f64]| u.eval(x) / u.eval(x);
        let a = luxemburg_norm_with(&f, &phi, &g, Q).unwrap().value;
        let b = luxemburg_norm(&f, &phi, &Weight::ONE, Q).unwrap().value;
        prop_assert!(rel(a, b) < 1e-7);
    }
}

#[test]
fn precedence_is_reflexive_and_composes() {
    let t = LogGrid::default_t();
    let c = default_c_grid();
    let p1 = YoungFunction::power(2.0, 1.0).unwrap();
    let p2 = YoungFunction::power(2.0, 4.0).unwrap();
    let p3 = YoungFunction::power(2.0, 16.0).unwrap();
    let e = YoungFunction::exp_power(1.0).unwrap();
    let refl = e.precedes(&e, t, &c).unwrap().certificate().unwrap().clone();
    assert_eq!(refl.c, 1.0);
    let a = p1.precedes(&p2, t, &c).unwrap().certificate().unwrap().clone();
    let b = p2.precedes(&p3, t, &c).unwrap().certificate().unwrap().clone();
    let ab = a.compose(&b);
    assert_eq!(ab.c, 0.25);
    assert!(ab.holds_for(&p1, &p3));
}

#[test]
fn domination_composes() {
    let s = Sampling::new(2);
    let c = default_c_grid();
    let one = Weight::ONE;
    let poly = Weight::poly_norm(1.0).unwrap();
    let exp = Weight::exp_norm(1.0).unwrap();
    let a = weight_dominates(&one, &poly, s, &c).unwrap().certificate().unwrap().clone();
    let b = weight_dominates(&poly, &exp, s, &c).unwrap().certificate().unwrap().clone();
    let ab = a.compose(&b);
    assert!(ab.holds_for(&one, &exp));
}

#[test]
fn triangle_on_corpus() {
    let corpus = Corpus::generate(CorpusSpec { box_only: true, size: 20, ..CorpusSpec::default() }).unwrap();
    let phi = YoungFunction::exp_power(1.0).unwrap();
    let n = |h: &SimpleFunction| luxemburg_norm(h, &phi, &Weight::ONE, Q).unwrap().value;
    for w in corpus.functions.windows(2) {
        let s = n(&w[0].sum(&w[1]).unwrap());
        assert!(s <= (n(&w[0]) + n(&w[1])) * (1.0 + 1e-9));
    }
}
