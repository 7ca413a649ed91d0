use proptest::prelude::*;

use spiral_core::data::{self, corrupt_keep, kept_count, split_odd_even};
use spiral_core::learners::{ArowState, CovarianceForm, SpiralState};
use spiral_core::spike::sample_gate;
use spiral_core::{Dataset, Example, FeatureVector, Label, RngStream};

fn example(x: Vec<f64>, pos: bool) -> Example {
    Example::new(FeatureVector::new(x).unwrap(), if pos { Label::Pos } else { Label::Neg })
}

fn stream(d: usize, n: usize) -> impl Strategy<Value = Vec<(Vec<f64>, bool)>> {
    prop::collection::vec((prop::collection::vec(-3.0f64..3.0, d), any::<bool>()), 1..n)
}

fn sized_stream() -> impl Strategy<Value = (usize, Vec<(Vec<f64>, bool)>)> {
    (1usize..8).prop_flat_map(|d| (Just(d), stream(d, 60)))
}

proptest! {
    #[test]
    fn arow_alpha_is_non_negative((d, xs) in sized_stream(), r in 0.01f64..10.0) {
        let mut s = ArowState::new(d, r, CovarianceForm::Standard).unwrap();
        for (x, y) in xs {
            let ex = example(x, y);
            prop_assert!(s.alpha(ex.features.as_slice(), ex.label).unwrap() >= 0.0);
            s.learn_one(&ex).unwrap();
        }
    }

    #[test]
    fn standard_covariance_stays_psd((d, xs) in sized_stream(), probe in prop::collection::vec(-1.0f64..1.0, 8)) {
        let mut s = ArowState::new(d, 0.1, CovarianceForm::Standard).unwrap();
        for (x, y) in xs {
            s.learn_one(&example(x, y)).unwrap();
        }
        let z = &probe[..d];
        let norm2: f64 = z.iter().map(|v| v * v).sum();
        prop_assert!(s.sigma().quad_form(z).unwrap() >= -1e-9 * norm2);
        prop_assert!(s.sigma().max_relative_asymmetry() < 1e-9);
    }

    #[test]
    fn confident_examples_leave_state_alone(d in 1usize..6, scale in 2.0f64..50.0) {
        let mut s = ArowState::new(d, 0.1, CovarianceForm::Standard).unwrap();
        let mut x = vec![0.0; d];
        x[0] = 1.0;
        s.learn_one(&example(x.clone(), true)).unwrap();
        // Push the margin past 1, then any same-direction example is a no-op.
        while s.mu()[0] * scale < 1.0 {
            s.learn_one(&example(x.clone(), true)).unwrap();
        }
        let before = s.clone();
        x[0] = scale;
        prop_assert!(!s.learn_one(&example(x, true)).unwrap());
        prop_assert_eq!(s, before);
    }

    #[test]
    fn gate_lies_in_unit_interval(mu in prop::collection::vec(-5.0f64..5.0, 1..20), rho in 0.0f64..=1.0, seed: u64, var: bool) {
        let mut rng = RngStream::new(seed);
        for g in sample_gate(&mu, rho, &mut rng, var) {
            prop_assert!((0.0..=1.0).contains(&g));
        }
    }

    #[test]
    fn spiral_is_deterministic_per_seed((d, xs) in sized_stream(), seed: u64) {
        let run = || {
            let mut s = SpiralState::new(d, 0.1, CovarianceForm::Standard, seed, true, true).unwrap();
            for (x, y) in &xs {
                s.learn_one(&example(x.clone(), *y)).unwrap();
            }
            s.arow
        };
        prop_assert_eq!(run(), run());
    }

    #[test]
    fn corruption_keeps_exactly_k(x in prop::collection::vec(0.5f64..2.0, 1..100), kf in 0.01f64..=1.0, seed: u64) {
        let out = corrupt_keep(&x, kf, &mut RngStream::new(seed));
        let kept = out.iter().zip(&x).filter(|(o, i)| o == i).count();
        prop_assert_eq!(kept, kept_count(kf, x.len()));
        prop_assert!(out.iter().zip(&x).all(|(o, i)| *o == 0.0 || o == i));
    }

    #[test]
    fn idx_round_trip(rows in 1usize..6, cols in 1usize..6, pixels in prop::collection::vec(any::<u8>(), 0..200), digits in prop::collection::vec(0u8..10, 0..40)) {
        let d = rows * cols;
        let images: Vec<Vec<u8>> = pixels.chunks_exact(d).map(<[u8]>::to_vec).collect();
        let bytes = data::write_idx_images(&images, rows, cols).unwrap();
        let parsed = data::parse_idx_images(&bytes).unwrap();
        let back: Vec<Vec<u8>> = parsed.images.iter().map(|im| im.iter().map(|p| (p * 255.0).round() as u8).collect()).collect();
        prop_assert_eq!(back, images);
        prop_assert_eq!(data::parse_idx_labels(&data::write_idx_labels(&digits).unwrap()).unwrap(), digits);
    }

    #[test]
    fn odd_even_split_partitions(n in 2usize..100) {
        let mut ds = Dataset::new("seq", 1).unwrap();
        for i in 0..n {
            ds.push(example(vec![i as f64], i % 3 == 0)).unwrap();
        }
        let (train, test) = split_odd_even(&ds).unwrap();
        prop_assert_eq!(train.len() + test.len(), n);
        prop_assert!(train.iter().all(|e| e.features[0] as usize % 2 == 1));
        prop_assert!(test.iter().all(|e| e.features[0] as usize % 2 == 0));
    }
}
