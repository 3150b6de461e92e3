//! Checks of the minimal-angle machinery against brute-force enumeration of
//! sign configurations computed straight from the vectors.

use std::f64::consts::PI;

use frame_equiv::corpus::{frame_pair, tied_planar_pair, PairKind};
use frame_equiv::{
    angle_equivalent, angle_gaps, minimal_angle_form, oracle_equivalent, random_transform,
    random_unit_frame, Frame, OracleConfig, ANGLE_TOL,
};

/// For every choice of starting edge `s` among the `2k` vectors `+-f_i`,
/// signs every other vector so that it lies counterclockwise from `s`
/// within `[0, pi)`. Returns each configuration's sorted offsets.
fn brute_force_configurations(frame: &Frame) -> Vec<Vec<f64>> {
    let base: Vec<f64> = frame.columns().map(|c| c[1].atan2(c[0])).collect();
    let mut configs = Vec::new();
    for &theta in &base {
        for start in [theta, theta + PI] {
            let mut offsets: Vec<f64> = base
                .iter()
                .map(|t| (t - start).rem_euclid(PI))
                .map(|o| if PI - o < 1e-12 { 0.0 } else { o })
                .collect();
            offsets.sort_by(f64::total_cmp);
            configs.push(offsets);
        }
    }
    configs
}

fn cross_angle(offsets: &[f64]) -> f64 {
    offsets[offsets.len() - 1] - offsets[0]
}

#[test]
fn candidate_cross_angles_match_closed_form() {
    for seed in 0..300u64 {
        let k = 3 + (seed % 8) as usize;
        let f = random_unit_frame(2, k, seed).unwrap();
        let gaps = angle_gaps(&f).unwrap();

        let mut brute: Vec<f64> = brute_force_configurations(&f).iter().map(|c| cross_angle(c)).collect();
        brute.sort_by(f64::total_cmp);

        // each configuration is found twice, from s and from -s
        let mut closed: Vec<f64> = gaps.cyclic().iter().map(|a| PI - a).collect();
        closed.extend(closed.clone());
        closed.sort_by(f64::total_cmp);

        assert_eq!(brute.len(), closed.len());
        for (b, c) in brute.iter().zip(&closed) {
            assert!((b - c).abs() <= 1e-9, "seed {seed}: {b} vs {c}");
        }
    }
}

#[test]
fn minimality_criterion() {
    for seed in 0..300u64 {
        let k = 3 + (seed % 8) as usize;
        let f = random_unit_frame(2, k, seed + 10_000).unwrap();
        let form = minimal_angle_form(&f).unwrap();
        let max_gap = form.canonical_gaps.iter().cloned().fold(0.0, f64::max);
        assert!(form.min_cross_angle + max_gap <= PI + 1e-9);
        let total: f64 = form.canonical_gaps.iter().sum();
        assert!((total - form.min_cross_angle).abs() <= 1e-9);

        for config in brute_force_configurations(&f) {
            let a = cross_angle(&config);
            let widest = config.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
            let satisfies = a + widest <= PI + 1e-9;
            let is_minimal = a <= form.min_cross_angle + 1e-9;
            assert_eq!(satisfies, is_minimal, "seed {seed}");
        }
    }
}

#[test]
fn canonical_gaps_are_invariant() {
    for seed in 0..1000u64 {
        let k = 3 + (seed % 8) as usize;
        let f = random_unit_frame(2, k, seed).unwrap();
        let g = random_transform(2, k, seed + 77_777).apply(&f).unwrap();
        let a = minimal_angle_form(&f).unwrap().canonical_gaps;
        let b = minimal_angle_form(&g).unwrap().canonical_gaps;
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() <= 1e-9, "seed {seed}");
        }
    }
}

#[test]
fn canonical_form_is_lexicographically_least() {
    for seed in 0..100u64 {
        let k = 4 + (seed % 4) as usize;
        let pair = tied_planar_pair(k, 0, seed).unwrap();
        let form = minimal_angle_form(&pair.f).unwrap();
        for s in &form.all_minimal_sequences {
            for cand in [s.clone(), s.iter().rev().cloned().collect::<Vec<_>>()] {
                let first_diff = form
                    .canonical_gaps
                    .iter()
                    .zip(&cand)
                    .find(|(a, b)| (*a - *b).abs() > ANGLE_TOL);
                if let Some((a, b)) = first_diff {
                    assert!(a < b);
                }
            }
        }
    }
}

#[test]
fn agrees_with_oracle_on_small_frames() {
    let cfg = OracleConfig::default();
    for seed in 0..400u64 {
        let k = 2 + (seed % 6) as usize;
        let kind = if seed % 2 == 0 {
            PairKind::Constructed
        } else {
            PairKind::Independent
        };
        let pair = frame_pair(2, k, kind, seed).unwrap();
        let angle = angle_equivalent(&pair.f, &pair.g, ANGLE_TOL).unwrap().is_equivalent();
        let oracle = oracle_equivalent(&pair.f, &pair.g, &cfg).unwrap().equivalent;
        assert_eq!(angle, oracle, "seed {seed} k {k}");
    }
}

#[test]
fn tied_pairs_agree_with_oracle() {
    let cfg = OracleConfig::default();
    let mut equivalent = 0;
    for seed in 0..300u64 {
        let k = 4 + (seed % 4) as usize;
        let pair = tied_planar_pair(k, seed, seed).unwrap();
        let angle = angle_equivalent(&pair.f, &pair.g, ANGLE_TOL).unwrap().is_equivalent();
        let oracle = oracle_equivalent(&pair.f, &pair.g, &cfg).unwrap().equivalent;
        assert_eq!(angle, oracle, "seed {seed} k {k}");
        equivalent += usize::from(oracle);
    }
    // constructed third plus the shuffles that happen to be rotations
    assert!(equivalent >= 100);
}

#[test]
fn duplicated_vectors_are_handled() {
    let deg = |d: f64| d.to_radians();
    let f = Frame::from_angles(&[deg(10.0), deg(10.0), deg(80.0), deg(190.0)]).unwrap();
    let g = random_transform(2, 4, 3).apply(&f).unwrap();
    assert!(angle_equivalent(&f, &g, ANGLE_TOL).unwrap().is_equivalent());
    let h = Frame::from_angles(&[deg(10.0), deg(80.0), deg(80.0), deg(190.0)]).unwrap();
    let oracle = oracle_equivalent(&f, &h, &OracleConfig::default()).unwrap().equivalent;
    assert_eq!(angle_equivalent(&f, &h, ANGLE_TOL).unwrap().is_equivalent(), oracle);

    // a doubled vector while the maximal gap occurs three times
    let tied = Frame::from_angles(&[0.0, 0.0, deg(60.0), deg(120.0)]).unwrap();
    assert_eq!(minimal_angle_form(&tied).unwrap().tie_count, 3);
    for other in [
        Frame::from_angles(&[0.0, deg(60.0), deg(60.0), deg(120.0)]).unwrap(),
        Frame::from_angles(&[0.0, 0.0, deg(50.0), deg(120.0)]).unwrap(),
        random_transform(2, 4, 8).apply(&tied).unwrap(),
    ] {
        let oracle = oracle_equivalent(&tied, &other, &OracleConfig::default()).unwrap().equivalent;
        assert_eq!(angle_equivalent(&tied, &other, ANGLE_TOL).unwrap().is_equivalent(), oracle);
    }
}
