//! Per-type curvature constants and the focal-radius lower bound.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::curvature::PairSums;
use crate::error::{Error, Result};
use crate::rootsys::{build_root_system, CartanType, Family};

/// `C_T`, stored through its exact square.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundConstant {
    pub c_squared: u32,
    pub c_float: f64,
}

impl BoundConstant {
    fn new(c_squared: u32) -> Self {
        BoundConstant {
            c_squared,
            c_float: f64::from(c_squared).sqrt(),
        }
    }
}

pub fn table1_constant(ct: CartanType) -> BoundConstant {
    let c2 = match (ct.family(), ct.rank()) {
        (Family::A, _) => 12,
        (Family::B | Family::C | Family::D, _) => 24,
        (Family::G, _) => 6,
        (Family::F, _) => 28,
        (Family::E, 6) => 40,
        (Family::E, 7) => 64,
        (Family::E, _) => 112,
    };
    BoundConstant::new(c2)
}

/// The constant for a product of simple factors: the largest factor
/// constant, never below 2 (the torus and the empty product).
pub fn combine_constants(types: &[CartanType]) -> u32 {
    types
        .iter()
        .map(|&t| table1_constant(t).c_squared)
        .fold(2, u32::max)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FocalBound {
    pub c_squared: u32,
    pub c: f64,
    pub real_form: bool,
    pub bound_radians: f64,
}

/// `arccot(x)` for `x >= 0`.
pub fn arccot(x: f64) -> f64 {
    if x == 0.0 {
        std::f64::consts::FRAC_PI_2
    } else {
        (1.0 / x).atan()
    }
}

/// Lower bound on the focal radius of principal orbits for a group with the
/// given simple factors. Real representations pay an extra factor `sqrt 2`.
pub fn focal_lower_bound(types: &[CartanType], is_complex: bool) -> FocalBound {
    let c_squared = combine_constants(types);
    let c = f64::from(c_squared).sqrt();
    let eff = if is_complex {
        c
    } else {
        f64::from(2 * c_squared).sqrt()
    };
    FocalBound {
        c_squared,
        c,
        real_form: !is_complex,
        bound_radians: arccot(eff),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalReport {
    pub cartan_type: CartanType,
    pub samples: usize,
    pub seed: u64,
    pub c_squared: u32,
    pub max_observed: f64,
    pub pass: bool,
}

const CHUNK: usize = 256;
pub const CLASSICAL_TOL: f64 = 1e-9;

/// Uniform nonnegative point of the unit sphere in `R^n`.
pub fn sample_nonnegative_unit(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n)
            .map(|_| {
                let x: f64 = StandardNormal.sample(rng);
                x.abs()
            })
            .collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// Samples the root-combinatorial bound functional at random points and
/// compares the largest value against the type constant.
pub fn classical_family_check(
    ct: CartanType,
    samples: usize,
    seed: u64,
) -> Result<ClassicalReport> {
    if !ct.family().is_classical() {
        return Err(Error::NotClassical(ct));
    }
    let rs = build_root_system(ct)?;
    let sums = PairSums::new(&rs);
    let n = rs.num_positive();
    let chunks = samples.div_ceil(CHUNK);
    let maxima: Vec<f64> = (0..chunks)
        .into_par_iter()
        .map(|c| -> Result<f64> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let count = CHUNK.min(samples - c * CHUNK);
            let mut best = f64::NEG_INFINITY;
            for _ in 0..count {
                let r = sample_nonnegative_unit(&mut rng, n);
                best = best.max(sums.estimate_sum(&r)?);
            }
            Ok(best)
        })
        .collect::<Result<_>>()?;
    let max_observed = maxima.into_iter().fold(f64::NEG_INFINITY, f64::max);
    let c_squared = table1_constant(ct).c_squared;
    Ok(ClassicalReport {
        cartan_type: ct,
        samples,
        seed,
        c_squared,
        max_observed,
        pass: max_observed <= f64::from(c_squared) + CLASSICAL_TOL,
    })
}
