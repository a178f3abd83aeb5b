use illusion_core::companions::{
    grating_angle, pb_phase, radial_forward, radial_inverse, Handedness, RadialTransform,
    StripProfile,
};
use proptest::prelude::*;

fn transform_strategy() -> impl Strategy<Value = RadialTransform> {
    (0.01f64..1.0, 1.01f64..4.0, 1.05f64..3.0)
        .prop_map(|(r1, q, stretch)| RadialTransform::new(r1, r1 * q * stretch, q).unwrap())
}

proptest! {
    #[test]
    fn radial_map_round_trips(t in transform_strategy(), u in 0.0f64..=1.0) {
        let x = u * t.r2();
        let there = radial_forward(&t, x).unwrap();
        prop_assert!((radial_inverse(&t, there).unwrap() - x).abs() < 1e-12);
        prop_assert!((radial_forward(&t, radial_inverse(&t, x).unwrap()).unwrap() - x).abs() < 1e-12);
    }

    #[test]
    fn radial_map_is_monotone(t in transform_strategy(), u in 0.0f64..0.999) {
        let x = u * t.r2();
        let h = 1e-3 * t.r2();
        prop_assert!(t.a() > 0.0);
        prop_assert!(radial_forward(&t, x + h).unwrap() > radial_forward(&t, x).unwrap());
    }

    #[test]
    fn pb_phase_stays_in_range(a in 0.01f64..50.0, period in 1e-3f64..0.1, x in -1.0f64..1.0) {
        let left = StripProfile::new(a, period, Handedness::Left).unwrap();
        let right = StripProfile { handedness: Handedness::Right, ..left };
        let phi = pb_phase(&left, x);
        prop_assert!(phi.abs() <= left.max_phase() + 1e-15);
        prop_assert_eq!(pb_phase(&right, x), -phi);
    }

    #[test]
    fn grating_orders_are_antisymmetric(m in -5i32..=5, lambda in 1e-3f64..0.05, period in 0.05f64..0.3) {
        prop_assume!((m as f64 * lambda / period).abs() <= 1.0);
        let plus = grating_angle(m, lambda, period).unwrap();
        let minus = grating_angle(-m, lambda, period).unwrap();
        prop_assert_eq!(plus, -minus);
        if m >= 0 {
            prop_assert!(grating_angle(m + 1, lambda, period).map_or(true, |next| next > plus));
        }
    }
}

#[test]
fn pb_phase_covers_full_range() {
    let p = StripProfile::new(2.3, 0.02, Handedness::Left).unwrap();
    let samples: Vec<f64> = (0..=2000)
        .map(|i| pb_phase(&p, p.period * i as f64 / 2000.0))
        .collect();
    let max = samples.iter().cloned().fold(f64::MIN, f64::max);
    let min = samples.iter().cloned().fold(f64::MAX, f64::min);
    assert!((max - p.max_phase()).abs() < 1e-12);
    assert!((min + p.max_phase()).abs() < 1e-12);
}
