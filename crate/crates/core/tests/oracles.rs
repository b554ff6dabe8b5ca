//! Independent oracles: explicit matrices for rank one, the triangular
//! coefficient matrices for the classical families, and hand-computed
//! constants.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use orbit_curvature::bounds::{sample_nonnegative_unit, table1_constant};
use orbit_curvature::chevalley::build_chevalley;
use orbit_curvature::curvature::{
    c_delta, c_delta_unordered, maximize_sff, MaximizeConfig, PairSums,
};
use orbit_curvature::hwmodule::{FMonomial, HwContext};
use orbit_curvature::rootsys::{build_root_system, CartanType, Family, RootSystem, Vector};
use orbit_curvature::Rational;

fn ct(s: &str) -> CartanType {
    s.parse().unwrap()
}

fn int_coords(v: &Vector) -> Vec<i64> {
    v.coords()
        .iter()
        .map(|c| {
            assert!(c.is_integer());
            *c.numer() as i64
        })
        .collect()
}

/// Norms `||f^j v||^2` in the `(k+1)`-dimensional irreducible module.
fn rank_one_matrix_norms(k: usize, max_j: usize) -> Vec<f64> {
    let mut v = vec![0.0f64; k + 1];
    v[0] = 1.0;
    let mut out = Vec::new();
    for _ in 0..max_j {
        let mut w = vec![0.0; k + 1];
        for j in 0..k {
            w[j + 1] = (((j + 1) * (k - j)) as f64).sqrt() * v[j];
        }
        v = w;
        out.push(v.iter().map(|x| x * x).sum());
    }
    out
}

#[test]
fn rank_one_module_matches_matrix_model() {
    let tbl = build_chevalley(&build_root_system(ct("A1")).unwrap());
    for k in 1..=10u32 {
        let ctx = HwContext::from_fundamental(&tbl, &[k]).unwrap();
        let oracle = rank_one_matrix_norms(k as usize, 4);
        for (j, want) in oracle.iter().enumerate() {
            let m = FMonomial::new(vec![0; j + 1]);
            let got = ctx.shapovalov_inner(&m, &m).unwrap();
            let got = *got.numer() as f64 / *got.denom() as f64;
            assert!(
                (got - want).abs() < 1e-9 * (1.0 + want),
                "k={k} j={}",
                j + 1
            );
        }
    }
}

/// Strictly upper triangular `a_ij = r(theta_i - theta_j)`.
fn type_a_matrix(rs: &RootSystem, r: &[f64]) -> Vec<Vec<f64>> {
    let n = rs.ambient_dim();
    let mut a = vec![vec![0.0; n]; n];
    for (k, &x) in r.iter().enumerate() {
        let c = int_coords(rs.root(k));
        let i = c.iter().position(|&v| v == 1).unwrap();
        let j = c.iter().position(|&v| v == -1).unwrap();
        a[i][j] = x;
    }
    a
}

fn matmul(x: &[Vec<f64>], y: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = x.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| x[i][k] * y[k][j]).sum())
                .collect()
        })
        .collect()
}

fn transpose(x: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = x.len();
    (0..n).map(|i| (0..n).map(|j| x[j][i]).collect()).collect()
}

fn frob_sq(x: &[Vec<f64>]) -> f64 {
    x.iter().flatten().map(|v| v * v).sum()
}

#[test]
fn type_a_sums_match_triangular_matrix() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for n in 2..=7 {
        let rs = build_root_system(CartanType::new(Family::A, n).unwrap()).unwrap();
        let sums = PairSums::new(&rs);
        for _ in 0..300 {
            let r = sample_nonnegative_unit(&mut rng, rs.num_positive());
            let a = type_a_matrix(&rs, &r);
            let (mut phi1, mut phi2) = (0.0, 0.0);
            for blk in sums.blocks().iter().filter(|b| b.in_phi) {
                let s = blk.s_gamma(&r);
                match blk
                    .gamma
                    .coords()
                    .iter()
                    .filter(|c| !c.numer().eq(&0))
                    .count()
                {
                    4 => phi1 += s,
                    2 => phi2 += s,
                    other => panic!("unexpected support {other}"),
                }
            }
            let dim = a.len();
            let mut quad = 0.0;
            for i in 0..dim {
                for j in i + 1..dim {
                    for k in j + 1..dim {
                        for l in k + 1..dim {
                            quad += a[i][k] * a[j][l] * a[i][l] * a[j][k];
                        }
                    }
                }
            }
            assert!((phi1 - 8.0 * quad).abs() < 1e-12);
            let aat = matmul(&a, &transpose(&a));
            assert!(phi1 <= 2.0 * frob_sq(&aat) + 1e-12);
            assert!(2.0 * frob_sq(&aat) <= 2.0 + 1e-12);
            let a2 = frob_sq(&matmul(&a, &a));
            assert!(phi2 <= 8.0 * a2 + 1e-12);
            assert!(a2 <= 1.0 + 1e-12);
        }
    }
}

fn coord_sum(v: &Vector) -> i64 {
    int_coords(v).iter().sum()
}

/// Draws `r` supported on the roots selected by `keep`, optionally sparse.
fn restricted_sample(
    rng: &mut ChaCha8Rng,
    rs: &RootSystem,
    keep: &dyn Fn(&Vector) -> bool,
) -> Vec<f64> {
    let idx: Vec<usize> = (0..rs.num_positive())
        .filter(|&i| keep(rs.root(i)))
        .collect();
    let sparse = rng.random_bool(0.5);
    let support: Vec<usize> = if sparse {
        let m = rng.random_range(2..=6.min(idx.len()).max(2));
        (0..m)
            .map(|_| idx[rng.random_range(0..idx.len())])
            .collect()
    } else {
        idx
    };
    let vals = sample_nonnegative_unit(rng, support.len());
    let mut r = vec![0.0; rs.num_positive()];
    for (&i, v) in support.iter().zip(vals) {
        r[i] += v;
    }
    let norm = r.iter().map(|x| x * x).sum::<f64>().sqrt();
    r.iter().map(|x| x / norm).collect()
}

/// Per-class sums for the types whose positive roots split into
/// `theta_i - theta_j` (coordinate sum 0) and `theta_i + theta_j`
/// (coordinate sum 2).
fn check_two_class_bounds(ty: &str) {
    let rs = build_root_system(ct(ty)).unwrap();
    let sums = PairSums::new(&rs);
    let mut rng = ChaCha8Rng::seed_from_u64(0xd0c1);
    let selectors: [&dyn Fn(&Vector) -> bool; 3] =
        [&|_| true, &|v| coord_sum(v) == 0, &|v| coord_sum(v) == 2];
    for sel in selectors {
        for _ in 0..400 {
            let r = restricted_sample(&mut rng, &rs, sel);
            let (mut a2, mut b2) = (0.0, 0.0);
            for (k, x) in r.iter().enumerate() {
                match coord_sum(rs.root(k)) {
                    0 => a2 += x * x,
                    2 => b2 += x * x,
                    other => panic!("{ty}: root with coordinate sum {other}"),
                }
            }
            let mut class = [0.0f64; 3];
            for blk in sums.blocks() {
                class[(coord_sum(&blk.gamma) / 2) as usize] += blk.s_gamma(&r);
            }
            assert!(
                class[0] <= 10.0 * a2 * a2 + 1e-9,
                "{ty}: {} vs {}",
                class[0],
                10.0 * a2 * a2
            );
            assert!(
                class[1] <= 56.0 * a2 * b2 + 1e-9,
                "{ty}: {} vs {}",
                class[1],
                56.0 * a2 * b2
            );
            assert!(
                class[2] <= 18.0 * b2 * b2 + 1e-9,
                "{ty}: {} vs {}",
                class[2],
                18.0 * b2 * b2
            );
        }
    }
}

#[test]
fn orthogonal_family_class_bounds() {
    for ty in ["D4", "D5", "D6", "D7", "D8"] {
        check_two_class_bounds(ty);
    }
}

#[test]
fn symplectic_family_class_bounds() {
    for ty in ["C3", "C4", "C5", "C6", "C7", "C8"] {
        check_two_class_bounds(ty);
    }
}

#[test]
fn ordered_and_unordered_c_delta_agree() {
    for t in CartanType::all_up_to_rank(8) {
        let rs = build_root_system(t).unwrap();
        assert_eq!(c_delta(&rs), c_delta_unordered(&rs), "{t}");
        assert_eq!(c_delta(&rs), PairSums::new(&rs).c_delta(), "{t}");
    }
}

#[test]
fn type_a_c_delta_closed_form() {
    // the block gamma = theta_1 - theta_{n+1} collects n - 1 obtuse splits
    // twice over, each with m^2 = 2
    for n in 2..=8 {
        let rs = build_root_system(CartanType::new(Family::A, n).unwrap()).unwrap();
        assert_eq!(c_delta(&rs), 4 * (n as u32 - 1));
    }
}

#[test]
fn classical_constant_against_c_delta() {
    // c_delta overtakes the type constant only from rank 5 on (rank 4 for A)
    for t in CartanType::all_up_to_rank(8)
        .into_iter()
        .filter(|t| t.is_classical())
    {
        let cd = c_delta(&build_root_system(t).unwrap());
        let c2 = table1_constant(t).c_squared;
        let from = if t.family() == Family::A { 4 } else { 5 };
        assert_eq!(c2 <= cd, t.rank() >= from, "{t}: c^2 {c2}, c_delta {cd}");
    }
}

#[test]
fn adjoint_a2_maximum_within_constant() {
    let tbl = build_chevalley(&build_root_system(ct("A2")).unwrap());
    let ctx = HwContext::from_fundamental(&tbl, &[1, 1]).unwrap();
    let rep = maximize_sff::<f64>(&ctx, &MaximizeConfig::default()).unwrap();
    assert!(rep.best_value <= 12.0 + 1e-6);
    assert!(rep.best_value > 0.0);
    assert!(rep.feasibility_residual.abs() < 1e-12);

    let ctx = HwContext::from_fundamental(&tbl, &[1, 0]).unwrap();
    let rep = maximize_sff::<f64>(&ctx, &MaximizeConfig::default()).unwrap();
    assert!(rep.best_value.abs() < 1e-9);
}

#[test]
fn a2_pairings_of_first_fundamental_weight() {
    let tbl = build_chevalley(&build_root_system(ct("A2")).unwrap());
    let rs = tbl.root_system();
    let ctx = HwContext::from_fundamental(&tbl, &[1, 0]).unwrap();
    let a1 = rs.simple_index(0);
    let a2 = rs.simple_index(1);
    let top = rs.highest_root();
    assert_eq!(ctx.lowering_norm_sq(a1), Rational::from_integer(1));
    assert_eq!(ctx.lowering_norm_sq(a2), Rational::from_integer(0));
    assert_eq!(ctx.lowering_norm_sq(top), Rational::from_integer(1));
}
