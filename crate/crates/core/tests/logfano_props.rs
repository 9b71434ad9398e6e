use kstab_core::logfano::{
    a_vector, beta, beta_halfspace, cone_chain, kss_polytope, s_invariant, PairConfig,
};
use kstab_core::rational::{q, qr, Q};
use kstab_core::QVec;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

/// Degree vectors with `k <= 3`, entries `<= max_d`.
fn degree_vectors(max_d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for a in 1..=max_d {
        out.push(vec![a]);
        for b in 1..=max_d {
            out.push(vec![a, b]);
            for c in 1..=max_d {
                out.push(vec![a, b, c]);
            }
        }
    }
    out
}

/// Sections with `Σd < n + 1`, `k <= n`.
fn fano_grid(max_n: u32) -> Vec<(u32, Vec<u32>)> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for d in degree_vectors(n) {
            if d.len() as u32 <= n && d.iter().sum::<u32>() < n + 1 {
                out.push((n, d));
            }
        }
    }
    out
}

#[test]
fn s_invariant_matches_closed_form_on_grid() {
    let grid: Vec<Q> = [(0, 1), (1, 3), (1, 2), (5, 6)]
        .iter()
        .map(|&(a, b)| qr(a, b))
        .collect();
    let mut checked = 0;
    for n in 1..=6u32 {
        for d in degree_vectors(4) {
            let k = d.len();
            let mut idx = vec![0usize; k];
            loop {
                let x: Vec<Q> = idx.iter().map(|&i| grid[i].clone()).collect();
                let cfg = PairConfig::new(n, d.clone(), x).unwrap();
                let r = cfg.r();
                for (i, &di) in d.iter().enumerate() {
                    match s_invariant(&cfg, i) {
                        Ok(s) => {
                            assert_eq!(s, &r / q((n as i64 + 1) * di as i64));
                            checked += 1;
                        }
                        Err(_) => assert!(!r.is_positive()),
                    }
                }
                let mut j = 0;
                while j < k {
                    idx[j] += 1;
                    if idx[j] < grid.len() {
                        break;
                    }
                    idx[j] = 0;
                    j += 1;
                }
                if j == k {
                    break;
                }
            }
        }
    }
    assert!(checked > 5_000);
}

#[test]
fn beta_vanishes_at_a_vector() {
    for (n, d) in fano_grid(6) {
        let a = a_vector(n, &d).unwrap();
        let cfg = PairConfig::new(n, d.clone(), a.values.0.clone()).unwrap();
        for i in 0..d.len() {
            assert!(beta(&cfg, i).unwrap().is_zero(), "n={n} d={d:?}");
        }
    }
}

#[test]
fn a_vector_is_an_extremal_point() {
    for (n, d) in fano_grid(6) {
        if n < 2 {
            continue;
        }
        let a = a_vector(n, &d).unwrap();
        let p = kss_polytope(n, &d).unwrap();
        assert!(p.polytope.contains(&a.values), "n={n} d={d:?}");
        if d.iter().any(|&x| x != 1) {
            assert!(a.extremal, "n={n} d={d:?}");
            assert!(p.polytope.vertices().unwrap().contains(&a.values));
        }
    }
}

#[test]
fn kss_polytope_lies_in_the_box() {
    for n in 2..=5u32 {
        for d in degree_vectors(3) {
            if d.iter().any(|&x| x > n + 1) {
                continue;
            }
            let p = kss_polytope(n, &d).unwrap();
            assert!(p.polytope.representations_agree());
            for v in p.polytope.vertices().unwrap() {
                assert!(v.iter().all(|x| !x.is_negative() && x <= &q(1)));
                let total: Q = v.iter().zip(&d).map(|(x, &dj)| x * q(dj as i64)).sum();
                assert!(total <= q(n as i64 + 1));
            }
        }
    }
}

#[test]
fn cone_chain_passes_on_grid() {
    for (n, d) in fano_grid(6) {
        let c = cone_chain(n, &d).unwrap();
        assert!(c.all_passed());
        assert!(c.radii().iter().all(Signed::is_positive));
    }
}

/// The integrated β agrees with the linear form used for the polytope.
#[test]
fn beta_linear_form_is_exact() {
    let cfg = PairConfig::new(4, vec![2, 1], vec![qr(1, 3), qr(1, 5)]).unwrap();
    for i in 0..2 {
        let (normal, offset) = beta_halfspace(4, &[2, 1], i);
        let scaled = (normal.dot(&QVec(cfg.coefficients().to_vec())) - offset) / q(5 * [2, 1][i]);
        assert_eq!(beta(&cfg, i).unwrap(), scaled);
    }
}

fn small_config() -> impl Strategy<Value = (u32, Vec<u32>, Vec<(i64, i64)>)> {
    (2u32..=6, prop::collection::vec(1u32..=4, 1..=3)).prop_flat_map(|(n, d)| {
        let k = d.len();
        (
            Just(n),
            Just(d),
            prop::collection::vec((0i64..12, 12i64..13), k),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// β(Sᵢ) falls as xᵢ grows and rises as any other xⱼ grows.
    #[test]
    fn beta_monotonicity((n, d, x) in small_config(), which in 0usize..3, step in 1i64..4) {
        let x: Vec<Q> = x.iter().map(|&(a, b)| qr(a, b)).collect();
        let j = which % d.len();
        let mut bumped = x.clone();
        bumped[j] += qr(step, 24);
        prop_assume!(bumped[j] < q(1));
        let base = PairConfig::new(n, d.clone(), x).unwrap();
        let moved = PairConfig::new(n, d.clone(), bumped).unwrap();
        prop_assume!(moved.r().is_positive());
        for i in 0..d.len() {
            let b0 = beta(&base, i).unwrap();
            let b1 = beta(&moved, i).unwrap();
            if i == j {
                prop_assert!(b1 < b0);
            } else {
                prop_assert!(b1 > b0);
            }
        }
    }

    #[test]
    fn beta_nonnegative_iff_in_polytope((n, d, x) in small_config()) {
        prop_assume!(d.iter().all(|&di| di <= n + 1));
        let x: Vec<Q> = x.iter().map(|&(a, b)| qr(a, b)).collect();
        let cfg = PairConfig::new(n, d.clone(), x.clone()).unwrap();
        prop_assume!(cfg.r().is_positive());
        let p = kss_polytope(n, &d).unwrap();
        let all_nonneg = (0..d.len()).all(|i| !beta(&cfg, i).unwrap().is_negative());
        prop_assert_eq!(p.polytope.contains(&QVec(x)), all_nonneg);
    }
}
