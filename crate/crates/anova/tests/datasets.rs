use std::f64::consts::PI;

use anova::dataset::{normalize, split, Dataset, SplitMode, SplitPlan};
use anova::{friedman_eval, friedman_sample, FriedmanSpec};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Written out independently of the library's helpers.
fn reference(which: u8, x: &[f64]) -> f64 {
    match which {
        1 => 10.0 * (PI * x[0] * x[1]).sin() + 20.0 * (x[2] - 0.5) * (x[2] - 0.5) + 10.0 * x[3] + 5.0 * x[4],
        2 => {
            let a = 100.0 * x[0];
            let b = (520.0 * x[1] + 40.0) * PI;
            let c = 10.0 * x[3] + 1.0;
            (a * a + (b * x[2] - 1.0 / (b * c)).powi(2)).sqrt()
        }
        _ => {
            let b = (520.0 * x[1] + 40.0) * PI;
            let c = 10.0 * x[3] + 1.0;
            ((b * x[2] - 1.0 / (b * c)) / (100.0 * x[0])).atan()
        }
    }
}

#[test]
fn friedman_matches_hand_coded_formulas() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for which in 1..=3u8 {
        let spec = FriedmanSpec::new(which).unwrap();
        for _ in 0..1000 {
            let x: Vec<f64> = (0..spec.dimension).map(|_| rng.random::<f64>()).collect();
            let (got, want) = (friedman_eval(&spec, &x).unwrap(), reference(which, &x));
            assert!((got - want).abs() <= 1e-12 * want.abs().max(1.0), "f{which}({x:?}) = {got} vs {want}");
        }
    }
}

#[test]
fn repetitions_split_differently() {
    let ds = Dataset::new(1, (0..30).map(f64::from).collect(), vec![0.0; 30], vec!["x".into()]).unwrap();
    let plan = SplitPlan { mode: SplitMode::Fraction(0.5), repetitions: 20, seed: 4 };
    let splits: Vec<Vec<f64>> =
        (0..20).map(|r| split(&ds, &plan, r).unwrap().0.rows().map(|x| x[0]).collect()).collect();
    for i in 0..20 {
        for j in i + 1..20 {
            assert_ne!(splits[i], splits[j], "repetitions {i} and {j}");
        }
    }
}

#[test]
fn generated_train_and_test_sets_are_independent() {
    let spec = FriedmanSpec::new(1).unwrap();
    let train = friedman_sample(&spec, 200, 0, 0, false).unwrap();
    let test = friedman_sample(&spec, 1000, 0, 0, true).unwrap();
    assert_eq!((train.len(), test.len()), (200, 1000));
    assert_ne!(train.row(0), test.row(0));
    assert!(test.rows().flatten().all(|v| (0.0..1.0).contains(v)));
}

fn arb_dataset() -> impl Strategy<Value = Dataset> {
    (1usize..5, 2usize..40).prop_flat_map(|(d, m)| {
        (prop::collection::vec(-1e3f64..1e3, d * m), prop::collection::vec(-10f64..10.0, m)).prop_map(move |(f, t)| {
            Dataset::new(d, f, t, (0..d).map(|i| format!("c{i}")).collect()).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn normalized_coordinates_lie_in_the_unit_cube(ds in arb_dataset(), target in any::<bool>()) {
        let n = normalize(&ds, None, target).unwrap();
        prop_assert!(n.rows().flatten().all(|v| (0.0..=1.0).contains(v)));
        if target {
            prop_assert!(n.targets().iter().all(|v| (0.0..=1.0).contains(v)));
        }
    }

    #[test]
    fn normalization_is_idempotent(train in arb_dataset(), target in any::<bool>()) {
        let n = normalize(&train, None, target).unwrap();
        prop_assert_eq!(&normalize(&n, Some(&n), target).unwrap(), &n);
        let again = normalize(&train, Some(&n), target).unwrap();
        prop_assert_eq!(again, n);
    }

    #[test]
    fn split_is_a_partition(ds in arb_dataset(), p in 0.2f64..0.8, seed in any::<u64>(), rep in 0usize..5) {
        let m = ds.len();
        let n_train = (p * m as f64).round() as usize;
        prop_assume!(n_train > 0 && n_train < m);
        let plan = SplitPlan { mode: SplitMode::Fraction(p), repetitions: 5, seed };
        let (train, test) = split(&ds, &plan, rep).unwrap();
        prop_assert_eq!(train.len(), n_train);
        prop_assert_eq!(train.len() + test.len(), m);
        // rows are distinct with probability one, so a multiset comparison suffices
        let key = |r: &[f64], y: f64| { let mut k: Vec<u64> = r.iter().map(|v| v.to_bits()).collect(); k.push(y.to_bits()); k };
        let mut all: Vec<Vec<u64>> = ds.rows().zip(ds.targets()).map(|(r, &y)| key(r, y)).collect();
        let mut parts: Vec<Vec<u64>> = train.rows().zip(train.targets()).chain(test.rows().zip(test.targets()))
            .map(|(r, &y)| key(r, y)).collect();
        all.sort();
        parts.sort();
        prop_assert_eq!(all, parts);
    }
}
