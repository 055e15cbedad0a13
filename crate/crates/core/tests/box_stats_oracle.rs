use micromap::stats::compute_box_stats;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Brute force: selection-sort a copy, interpolate between the two order statistics
/// around `p * (n - 1)`, then scan every sample against the fences.
fn oracle(samples: &[f64]) -> (f64, f64, f64, f64, f64, Vec<f64>) {
    let mut v = samples.to_vec();
    for i in 0..v.len() {
        let mut m = i;
        for j in i + 1..v.len() {
            if v[j] < v[m] {
                m = j;
            }
        }
        v.swap(i, m);
    }
    let q = |p: f64| {
        let h = p * (v.len() as f64 - 1.0);
        let i = h as usize;
        if i + 1 >= v.len() {
            v[i]
        } else {
            v[i] * (1.0 - (h - i as f64)) + v[i + 1] * (h - i as f64)
        }
    };
    let (q1, med, q3) = (q(0.25), q(0.5), q(0.75));
    let iqr = q3 - q1;
    let (lf, hf) = (q1 - 1.5 * iqr, q3 + 1.5 * iqr);
    let mut wlo = q1;
    let mut whi = q3;
    let mut outliers = Vec::new();
    for x in &v {
        if *x < lf || *x > hf {
            outliers.push(*x);
        } else {
            wlo = wlo.min(*x);
            whi = whi.max(*x);
        }
    }
    (q1, med, q3, wlo, whi, outliers)
}

#[test]
fn thousand_random_samples_match_oracle() {
    let mut rng = StdRng::seed_from_u64(20240611);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=500);
        let heavy = rng.gen_bool(0.3);
        let samples: Vec<f64> = (0..n)
            .map(|_| {
                let x: f64 = rng.gen_range(-100.0..100.0);
                if heavy && rng.gen_bool(0.05) {
                    x * 50.0
                } else {
                    x
                }
            })
            .collect();
        let s = compute_box_stats(&samples).unwrap();
        let (q1, med, q3, wlo, whi, outliers) = oracle(&samples);
        for (a, b) in [
            (s.q1, q1),
            (s.median, med),
            (s.q3, q3),
            (s.whisker_lo, wlo),
            (s.whisker_hi, whi),
        ] {
            worst = worst.max((a - b).abs());
        }
        assert_eq!(s.outliers.len(), outliers.len());
        for (a, b) in s.outliers.iter().zip(&outliers) {
            worst = worst.max((a - b).abs());
        }
    }
    assert!(worst <= 1e-9, "max deviation {worst}");
}

proptest! {
    #[test]
    fn ordering_invariant(samples in prop::collection::vec(-1e6f64..1e6, 1..200)) {
        let s = compute_box_stats(&samples).unwrap();
        prop_assert!(s.whisker_lo <= s.q1);
        prop_assert!(s.q1 <= s.median && s.median <= s.q3);
        prop_assert!(s.q3 <= s.whisker_hi);
        for o in &s.outliers {
            prop_assert!(*o < s.whisker_lo || *o > s.whisker_hi);
        }
    }

    #[test]
    fn small_integer_sets(samples in prop::collection::vec(0u8..5, 1..12)) {
        let v: Vec<f64> = samples.iter().map(|x| f64::from(*x) * 25.0).collect();
        let s = compute_box_stats(&v).unwrap();
        prop_assert!(s.whisker_lo <= s.q1 && s.q3 <= s.whisker_hi);
        prop_assert_eq!(s.outliers.len() + v.iter().filter(|x| **x >= s.whisker_lo && **x <= s.whisker_hi).count(), v.len());
    }
}
