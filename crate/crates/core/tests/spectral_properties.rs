mod support;

use meetjoin_core::matrix::{det_general, kind_matrix, FloatMatrix, SymMatrix};
use meetjoin_core::numtheory::{build_named_matrix, Family};
use meetjoin_core::poset::{FinitePoset, Kind, Subset};
use meetjoin_core::spectral::{
    bounds, eigen_sym, quadratic_form_check, reindex_monotone, BoundsReport, Direction, Support,
    BOUND_SLACK, DEFAULT_TOLERANCE,
};
use meetjoin_core::Error;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::rngs::StdRng;
use rand::Rng;
use support::*;

fn float_matrix(p: &FinitePoset, order: &[usize], values: &[f64], kind: Kind) -> FloatMatrix {
    FloatMatrix::from_fn(order.len(), |i, j| values[p.bound(order[i], order[j], kind).unwrap()]).unwrap()
}

fn random_vector(rng: &mut StdRng, n: usize, support: Support) -> Vec<Complex64> {
    loop {
        let y: Vec<Complex64> = (0..n)
            .map(|i| {
                let inside = match support {
                    Support::Leading(k) => i < k,
                    Support::Trailing(k) => i + k >= n,
                };
                if inside {
                    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        if y.iter().any(|z| z.norm() > 1e-3) {
            return y;
        }
    }
}

/// Checks the bound rows and, with `vectors > 0`, the supported quadratic forms.
fn check_instance(rng: &mut StdRng, p: &FinitePoset, report: &BoundsReport, values: &[f64], vectors: usize) {
    assert!(report.verified(), "{:?}", report.violation);
    let m = float_matrix(p, &report.order, values, report.kind);
    let spectrum = eigen_sym(&m, DEFAULT_TOLERANCE).unwrap();
    let check = report.check(&spectrum, BOUND_SLACK);
    assert!(check.all_ok(), "{check:?}");
    let n = report.order.len();
    for _ in 0..vectors {
        let k = rng.gen_range(1..=n);
        let (support, fx) = match report.kind {
            Kind::Meet => (Support::Leading(k), values[report.order[k - 1]]),
            Kind::Join => (Support::Trailing(k), values[report.order[n - k]]),
        };
        let y = random_vector(rng, n, support);
        let norm2: f64 = y.iter().map(|z| z.norm_sqr()).sum();
        let form = quadratic_form_check(&m, &y, support).unwrap();
        assert!(form <= k as f64 * norm2 * fx + 1e-9, "form {form} exceeds {}", k as f64 * norm2 * fx);
    }
}

#[test]
fn closed_form_examples() {
    let m = FloatMatrix::new(2, vec![1.0, 1.0, 1.0, 2.0]).unwrap();
    let s = eigen_sym(&m, DEFAULT_TOLERANCE).unwrap();
    let r5 = 5.0f64.sqrt();
    assert!((s.eigenvalues[0] - (3.0 - r5) / 2.0).abs() < 1e-12);
    assert!((s.eigenvalues[1] - (3.0 + r5) / 2.0).abs() < 1e-12);
    let d = FloatMatrix::new(2, vec![4.0, 0.0, 0.0, -1.0]).unwrap();
    assert_eq!(eigen_sym(&d, DEFAULT_TOLERANCE).unwrap().eigenvalues, vec![-1.0, 4.0]);
}

#[test]
fn bounds_hold_on_random_lattices() {
    let mut rng = rng(51);
    let mut verified = 0;
    for _ in 0..400 {
        let p = random_lattice(&mut rng, 8);
        let s = random_subset(&mut rng, &p, 8);
        let up = weakly_increasing_floats(&mut rng, &p);
        let report = bounds(&s, &up, Kind::Meet).unwrap();
        check_instance(&mut rng, &p, &report, &up, 20);
        // order-reversing values from a decreasing transform
        let top = up.iter().cloned().fold(0.0, f64::max);
        let down: Vec<f64> = up.iter().map(|v| top - v).collect();
        let report = bounds(&s, &down, Kind::Join).unwrap();
        check_instance(&mut rng, &p, &report, &down, 20);
        verified += 2;
    }
    assert_eq!(verified, 800);
}

#[test]
fn quadratic_forms_hold_for_many_vectors() {
    let mut rng = rng(52);
    for _ in 0..20 {
        let p = random_lattice(&mut rng, 8);
        let s = random_subset(&mut rng, &p, 8);
        let up = weakly_increasing_floats(&mut rng, &p);
        let report = bounds(&s, &up, Kind::Meet).unwrap();
        check_instance(&mut rng, &p, &report, &up, 1000);
    }
}

#[test]
fn bounds_hold_for_named_families() {
    let mut rng = rng(53);
    for _ in 0..150 {
        for family in [Family::PowerGcd, Family::GcudPower, Family::ReciprocalPowerLcm] {
            let alpha = [0.5, 1.0, 2.0][rng.gen_range(0..3)];
            let n = rng.gen_range(1..=8);
            let x = random_integers(&mut rng, n, 100);
            let named = build_named_matrix(family, &x, alpha).unwrap();
            let values = named.float_function();
            let s = named.subset();
            let report = bounds(&s, &values, family.kind()).unwrap();
            check_instance(&mut rng, named.lattice.poset(), &report, &values, 10);
            // the named matrix itself has the same spectrum as the reindexed one
            let a = eigen_sym(&named.float, DEFAULT_TOLERANCE).unwrap().eigenvalues;
            let m = float_matrix(named.lattice.poset(), &report.order, &values, family.kind());
            let b = eigen_sym(&m, DEFAULT_TOLERANCE).unwrap().eigenvalues;
            let scale = a.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
            for (u, v) in a.iter().zip(&b) {
                assert!((u - v).abs() <= 1e-9 * scale);
            }
        }
    }
}

#[test]
fn trace_and_determinant_agree_with_exact_values() {
    let mut rng = rng(54);
    let mut compared = 0;
    for _ in 0..400 {
        let p = random_lattice(&mut rng, 8);
        let s = random_subset(&mut rng, &p, 7);
        let f = random_function(&mut rng, p.len(), -5, 5);
        let m: SymMatrix = kind_matrix(&s, &f, Kind::Meet).unwrap();
        let spectrum = eigen_sym(&m.to_float(), DEFAULT_TOLERANCE).unwrap();
        let trace = m.trace().to_f64().unwrap();
        let scale = spectrum.eigenvalues.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
        assert!((spectrum.sum() - trace).abs() <= 1e-9 * scale);
        assert!(spectrum.residual <= 1e-8 * scale);
        let smallest = spectrum.eigenvalues.iter().fold(f64::INFINITY, |acc, v| acc.min(v.abs()));
        if smallest > 1e-3 * scale {
            compared += 1;
            let det = det_general(&m).to_f64().unwrap();
            assert!((spectrum.product() - det).abs() <= 1e-6 * det.abs(), "{} vs {det}", spectrum.product());
        }
    }
    assert!(compared > 100);
}

#[test]
fn relisting_preserves_the_spectrum() {
    let mut rng = rng(55);
    for _ in 0..200 {
        let n = rng.gen_range(1..=7);
        let x = random_integers(&mut rng, n, 60);
        let named = build_named_matrix(Family::PowerGcd, &x, 1.0).unwrap();
        let mut shuffled = x.clone();
        rand::seq::SliceRandom::shuffle(shuffled.as_mut_slice(), &mut rng);
        let other = build_named_matrix(Family::PowerGcd, &shuffled, 1.0).unwrap();
        let a = eigen_sym(&named.float, DEFAULT_TOLERANCE).unwrap().eigenvalues;
        let b = eigen_sym(&other.float, DEFAULT_TOLERANCE).unwrap().eigenvalues;
        for (u, v) in a.iter().zip(&b) {
            assert!((u - v).abs() <= 1e-9 * u.abs().max(1.0));
        }
    }
}

#[test]
fn reindexing_sorts_and_rejects() {
    let values = [1u64, 2, 3, 6];
    let p = FinitePoset::from_fn(4, |a, b| values[b] % values[a] == 0, None).unwrap();
    let s = Subset::sorted(&p, vec![1, 2, 3]).unwrap();
    let id: Vec<f64> = values.iter().map(|&v| v as f64).collect();
    let (sorted, perm) = reindex_monotone(&s, &id, Direction::Increasing).unwrap();
    assert_eq!(sorted.members(), &[1, 2, 3]);
    assert_eq!(perm, vec![0, 1, 2]);
    let bad = vec![1.0, 5.0, 3.0, 4.0];
    assert!(matches!(
        reindex_monotone(&s, &bad, Direction::Increasing),
        Err(Error::Monotonicity { .. })
    ));
}

#[test]
fn hypothesis_failures_are_flagged() {
    let values = [1u64, 2, 3, 6];
    let p = FinitePoset::from_fn(4, |a, b| values[b] % values[a] == 0, None).unwrap();
    let s = Subset::sorted(&p, vec![1, 2, 3]).unwrap();
    let negative = vec![-1.0, 2.0, 3.0, 6.0];
    let r = bounds(&s, &negative, Kind::Meet).unwrap();
    assert!(!r.hypotheses.nonnegative);
    assert!(r.require_hypotheses().is_err());
    let reversed = vec![6.0, 3.0, 2.0, 1.0];
    let r = bounds(&s, &reversed, Kind::Meet).unwrap();
    assert!(!r.hypotheses.order_property);
    assert!(!r.verified());
}

#[test]
fn support_is_enforced() {
    let m = FloatMatrix::new(2, vec![1.0, 1.0, 1.0, 2.0]).unwrap();
    let y = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
    assert_eq!(quadratic_form_check(&m, &y, Support::Leading(1)), Err(Error::Support { coordinate: 1 }));
    assert_eq!(quadratic_form_check(&m, &y, Support::Trailing(1)).unwrap(), 2.0);
}
