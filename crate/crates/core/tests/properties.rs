use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use puptent::angles::cone_angles;
use puptent::exact::{exact_point, orient_exact, rat};
use puptent::golden::{golden_torus, ModularParameter};
use puptent::report::{build_report, to_json_string, Mode, TorusReport};
use puptent::shape::{hausdorff, modular_distance, modulus_of, torus_triangles};
use puptent::Torus8;

fn point() -> impl Strategy<Value = [f64; 3]> {
    prop::array::uniform3(-2.0f64..2.0)
}

fn interior() -> impl Strategy<Value = (f64, f64)> {
    (0.02f64..0.48, 0.0f64..1.5).prop_map(|(x, h)| {
        let arc = (1.0 - (1.0 - x).powi(2)).sqrt();
        (x, arc + 0.02 + h)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn angle_sum_is_sixteen_pi(upper in prop::array::uniform4(point())) {
        let p = Torus8::from_upper_half(upper);
        if let Ok(c) = cone_angles(&p) {
            prop_assert!((c.total() - 16.0 * PI).abs() < 1e-9);
            prop_assert!((c.upper_sum() - 8.0 * PI).abs() < 1e-9);
        }
    }

    #[test]
    fn orientation_is_alternating(a in point(), b in point(), c in point(), d in point()) {
        let [a, b, c, d] = [a, b, c, d].map(exact_point);
        let o = orient_exact(&a, &b, &c, &d);
        prop_assert_eq!(orient_exact(&b, &a, &c, &d), -o.clone());
        prop_assert_eq!(orient_exact(&a, &c, &b, &d), -o.clone());
        prop_assert_eq!(orient_exact(&a, &b, &d, &c), -o.clone());
        prop_assert_eq!(orient_exact(&b, &c, &d, &a), -o);
    }

    #[test]
    fn orientation_is_translation_invariant(a in point(), b in point(), c in point(), d in point(), s in point()) {
        let s = exact_point(s);
        let shift = |p: [f64; 3]| {
            let e = exact_point(p);
            [&e[0] + &s[0], &e[1] + &s[1], &e[2] + &s[2]]
        };
        let o = orient_exact(&exact_point(a), &exact_point(b), &exact_point(c), &exact_point(d));
        prop_assert_eq!(orient_exact(&shift(a), &shift(b), &shift(c), &shift(d)), o);
    }

    #[test]
    fn floats_round_trip_through_json(v in prop::collection::vec(any::<f64>().prop_filter("finite", |x| x.is_finite()), 1..16)) {
        let s = to_json_string(&v).unwrap();
        let back: Vec<f64> = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(
            back.iter().map(|x| x.to_bits()).collect::<Vec<_>>(),
            v.iter().map(|x| x.to_bits()).collect::<Vec<_>>()
        );
    }

    #[test]
    fn rationals_are_exact(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
        use num_traits::ToPrimitive;
        prop_assert_eq!(rat(x).to_f64().unwrap(), x);
    }

    #[test]
    fn modular_distance_is_invariant(x in -0.5f64..0.5, y in 1.0f64..3.0, u in -0.5f64..0.5, v in 1.0f64..3.0, k in -3i32..3) {
        let (a, b) = (Complex64::new(x, y), Complex64::new(u, v));
        let d = modular_distance(a, b);
        prop_assert!((modular_distance(b, a) - d).abs() < 1e-9);
        prop_assert!((modular_distance(a + k as f64, b) - d).abs() < 1e-9);
        prop_assert!((modular_distance(-1.0 / a, b) - d).abs() < 1e-9);
        prop_assert!((modular_distance(Complex64::new(-a.re, a.im), b) - d).abs() < 1e-9);
        prop_assert!(modular_distance(a, a) < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reports_round_trip_bit_exactly((x, y) in interior(), t in 0.001f64..0.1) {
        let z = ModularParameter::interior(x, y).unwrap();
        let r = build_report(&z, t, Mode::Deformed).unwrap();
        let s = to_json_string(&r).unwrap();
        let back: TorusReport = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(to_json_string(&back).unwrap(), s);
        for (p, q) in r.vertices.iter().zip(&back.vertices) {
            for k in 0..3 {
                prop_assert_eq!(p[k].to_bits(), q[k].to_bits());
            }
        }
    }

    #[test]
    fn golden_modulus_recovers_parameter((x, y) in interior()) {
        let z = ModularParameter::interior(x, y).unwrap();
        let m = modulus_of(&golden_torus(&z).unwrap(), 1e-10).unwrap();
        prop_assert!(modular_distance(m.tau, z.z()) < 1e-8, "tau = {}", m.tau);
    }

    #[test]
    fn hausdorff_is_symmetric_and_vanishes_on_itself((x, y) in interior(), (u, v) in interior(), t in 0.001f64..0.05) {
        let p = golden_torus(&ModularParameter::interior(x, y).unwrap()).unwrap();
        let a = torus_triangles(&p);
        let b = torus_triangles(&puptent::deformation::deform(&ModularParameter::interior(u, v).unwrap(), t).unwrap());
        let ab = hausdorff(&a, &b, 28);
        let ba = hausdorff(&b, &a, 28);
        prop_assert_eq!(ab.distance, ba.distance);
        prop_assert_eq!(ab.a_to_b, ba.b_to_a);
        prop_assert!(hausdorff(&a, &a, 28).distance < 1e-14 * p.scale());
    }

    #[test]
    fn solved_tori_have_six_hull_triangles((x, y) in interior()) {
        let z = ModularParameter::interior(x, y).unwrap();
        let t = 1e-2f64.min(z.boundary_distance().powi(2));
        let r = build_report(&z, t, Mode::Solved).unwrap();
        prop_assert!(r.theta.unwrap() < 1e-12);
        prop_assert_eq!(r.hull_triangles.len(), 6);
    }
}
