//! Property tests for the deterministic geometry layer and the
//! seeded sampling plans.

use kplane::geom::{
    chart_to_subspace, gram_det, sphere_split, subspace_to_chart, ChartPoint, Subspace,
};
use kplane::randgeo::{sample_grassmann, sample_sphere, RngStream};
use kplane::transforms::{kplane_transform, QuadSpec};
use kplane::fields::gaussian;
use kplane::geom::AffineKPlane;
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

fn vec_strategy(n: usize) -> impl Strategy<Value = DVector<f64>> {
    prop::collection::vec(-10.0f64..10.0, n).prop_map(DVector::from_vec)
}

fn tuple_strategy(n: usize, k: usize) -> impl Strategy<Value = Vec<DVector<f64>>> {
    prop::collection::vec(vec_strategy(n), k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gram_det_permutation_invariant(vs in tuple_strategy(4, 3), swap in 0usize..3) {
        let g = gram_det(&vs).unwrap();
        let mut ws = vs.clone();
        ws.swap(swap, (swap + 1) % 3);
        let h = gram_det(&ws).unwrap();
        let scale = g.abs().max(1.0);
        prop_assert!((g - h).abs() <= 1e-9 * scale);
    }

    #[test]
    fn gram_det_scales_quadratically(vs in tuple_strategy(4, 2), alpha in 0.1f64..4.0) {
        let g = gram_det(&vs).unwrap();
        let mut ws = vs.clone();
        ws[0] *= alpha;
        let h = gram_det(&ws).unwrap();
        let scale = g.abs().max(1.0) * alpha * alpha;
        prop_assert!((h - alpha * alpha * g).abs() <= 1e-9 * scale);
    }

    #[test]
    fn gram_det_nonnegative(vs in tuple_strategy(5, 3)) {
        let g = gram_det(&vs).unwrap();
        prop_assert!(g >= -1e-9);
    }

    #[test]
    fn chart_round_trip(entries in prop::collection::vec(-10.0f64..10.0, 4)) {
        let a = DMatrix::from_vec(2, 2, entries);
        let c = ChartPoint::new(4, 2, a.clone()).unwrap();
        let theta = chart_to_subspace(&c).unwrap();
        let back = subspace_to_chart(&theta).unwrap();
        let scale = 1.0 + a.amax();
        prop_assert!((back.a - a).amax() <= 1e-8 * scale);
    }

    #[test]
    fn projector_idempotent_and_symmetric(seed in 0u64..1000, n in 2usize..6) {
        let k = 1 + (seed as usize) % (n - 1);
        let mut rng = RngStream::new(seed, 0).rng();
        let theta = sample_grassmann(n, k, &mut rng);
        let p = theta.projector();
        prop_assert!(((&p * &p) - &p).amax() <= 1e-10);
        prop_assert!((&p - p.transpose()).amax() <= 1e-10);
        let tr: f64 = p.diagonal().sum();
        prop_assert!((tr - k as f64).abs() <= 1e-10);
    }

    #[test]
    fn frame_columns_orthonormal(seed in 0u64..1000, n in 2usize..7) {
        let k = 1 + (seed as usize) % (n - 1);
        let mut rng = RngStream::new(seed, 1).rng();
        let theta = sample_grassmann(n, k, &mut rng);
        let f = theta.frame();
        let gram = f.transpose() * f;
        prop_assert!((gram - DMatrix::identity(k, k)).amax() <= 1e-10);
    }

    #[test]
    fn sphere_split_reconstructs(seed in 0u64..2000, n in 2usize..6) {
        let mut rng = RngStream::new(seed, 2).rng();
        let omega = sample_sphere(n, &mut rng);
        let (t, tilde) = sphere_split(&omega).unwrap();
        prop_assert!((0.0..=std::f64::consts::PI).contains(&t));
        prop_assert!((tilde.norm() - 1.0).abs() <= 1e-10);
        let mut rebuilt = DVector::zeros(n);
        rebuilt[0] = t.cos();
        for i in 0..n - 1 {
            rebuilt[i + 1] = t.sin() * tilde[i];
        }
        prop_assert!((rebuilt - omega).amax() <= 1e-10);
    }

    #[test]
    fn transform_reproducible_per_stream(seed in 0u64..200) {
        let f = gaussian(3, 1.0).unwrap();
        let mut frame = DMatrix::zeros(3, 1);
        frame[(0, 0)] = 1.0;
        let theta = Subspace::from_frame(frame).unwrap();
        let plane = AffineKPlane::new(theta, DVector::zeros(3)).unwrap();
        let q = QuadSpec::new(500).unwrap();
        let a = kplane_transform(&f, &plane, &q, RngStream::new(seed, 0)).unwrap();
        let b = kplane_transform(&f, &plane, &q, RngStream::new(seed, 0)).unwrap();
        prop_assert_eq!(a.value.to_bits(), b.value.to_bits());
        prop_assert_eq!(a.stderr.to_bits(), b.stderr.to_bits());
    }
}
