//! Multi-start maximization of `||II(fp, fp)||^2` over unit tangent vectors.
//!
//! With `y_a = z_a ||f_a p||` the constraint becomes the round unit sphere
//! and the Gram entries are rescaled accordingly. Each start runs projected
//! gradient ascent with Armijo backtracking; starts run in parallel with
//! independent ChaCha streams, and the winner is chosen by value with ties
//! broken by start index, so the result does not depend on scheduling.

use num_complex::Complex;
use num_traits::Float;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use super::gram::{sff_gram, CoefVector, GramTable};
use crate::error::{Error, Result};
use crate::hwmodule::HwContext;
use crate::scalar::Scalar;

pub const DEFAULT_SEED: u64 = 0x0bc0_ffee_5eed;

#[derive(Clone, Debug, PartialEq)]
pub struct MaximizeConfig {
    pub starts: usize,
    pub seed: u64,
    /// Stop once the tangential gradient norm falls below
    /// `tol * max(1, value)`.
    pub tol: f64,
    pub max_iter: usize,
    pub real_only: bool,
}

impl Default for MaximizeConfig {
    fn default() -> Self {
        MaximizeConfig {
            starts: 64,
            seed: DEFAULT_SEED,
            tol: 1e-7,
            max_iter: 5000,
            real_only: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MaxReport<F> {
    pub best_value: F,
    pub best: CoefVector<F>,
    pub best_start: usize,
    pub starts: usize,
    /// Starts that met the gradient tolerance.
    pub converged: usize,
    pub grad_norm: F,
    pub feasibility_residual: F,
}

struct Block<F> {
    positions: Vec<(usize, usize)>,
    matrix: Vec<Vec<F>>,
}

/// The rescaled quartic `f(y) = sum_blocks u^H G' u`, `u_i = y_a y_b`.
pub struct SphereObjective<F> {
    dim: usize,
    blocks: Vec<Block<F>>,
}

impl<F: Float + Scalar> SphereObjective<F> {
    pub fn new(gram: &GramTable) -> Self {
        let w: Vec<F> = gram.lowering_norms().iter().map(F::from_rational).collect();
        let blocks = gram
            .blocks()
            .iter()
            .filter(|b| !b.is_zero())
            .map(|b| {
                let scale: Vec<F> = b
                    .positions
                    .iter()
                    .map(|&(i, j)| (w[i] * w[j]).sqrt().recip())
                    .collect();
                let matrix = b
                    .matrix
                    .iter()
                    .zip(&scale)
                    .map(|(row, &si)| {
                        row.iter()
                            .zip(&scale)
                            .map(|(g, &sj)| F::from_rational(g) * si * sj)
                            .collect()
                    })
                    .collect();
                Block {
                    positions: b.positions.clone(),
                    matrix,
                }
            })
            .collect();
        SphereObjective {
            dim: gram.active_roots().len(),
            blocks,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn products(blk: &Block<F>, y: &[Complex<F>]) -> (Vec<Complex<F>>, Vec<Complex<F>>) {
        let u: Vec<Complex<F>> = blk.positions.iter().map(|&(a, b)| y[a] * y[b]).collect();
        let gu = blk
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&u)
                    .fold(Complex::new(F::zero(), F::zero()), |acc, (&g, &x)| {
                        acc + x * g
                    })
            })
            .collect();
        (u, gu)
    }

    pub fn value(&self, y: &[Complex<F>]) -> F {
        self.blocks.iter().fold(F::zero(), |acc, blk| {
            let (u, gu) = Self::products(blk, y);
            acc + u
                .iter()
                .zip(&gu)
                .fold(F::zero(), |s, (x, g)| s + (x.conj() * g).re)
        })
    }

    /// Value and Euclidean gradient; component `k` packs the partial
    /// derivatives in `Re y_k` and `Im y_k` as real and imaginary parts.
    pub fn objective_and_gradient(&self, y: &[Complex<F>]) -> (F, Vec<Complex<F>>) {
        let zero = Complex::new(F::zero(), F::zero());
        let mut grad = vec![zero; self.dim];
        let mut val = F::zero();
        for blk in &self.blocks {
            let (u, gu) = Self::products(blk, y);
            for ((&(a, b), x), g) in blk.positions.iter().zip(&u).zip(&gu) {
                val = val + (x.conj() * g).re;
                grad[a] = grad[a] + y[b].conj() * g;
                grad[b] = grad[b] + y[a].conj() * g;
            }
        }
        let two = F::one() + F::one();
        for g in &mut grad {
            *g = *g * two;
        }
        (val, grad)
    }
}

fn norm<F: Float>(v: &[Complex<F>]) -> F {
    v.iter().fold(F::zero(), |acc, x| acc + x.norm_sqr()).sqrt()
}

fn normalize<F: Float>(v: &mut [Complex<F>]) {
    let n = norm(v);
    for x in v.iter_mut() {
        *x = *x / n;
    }
}

fn tangent<F: Float>(y: &[Complex<F>], g: &[Complex<F>]) -> Vec<Complex<F>> {
    let radial = y
        .iter()
        .zip(g)
        .fold(F::zero(), |acc, (a, b)| acc + a.re * b.re + a.im * b.im);
    y.iter().zip(g).map(|(a, b)| *b - *a * radial).collect()
}

struct Run<F> {
    value: F,
    y: Vec<Complex<F>>,
    grad_norm: F,
    converged: bool,
}

fn ascend<F: Float + Scalar>(
    obj: &SphereObjective<F>,
    mut y: Vec<Complex<F>>,
    cfg: &MaximizeConfig,
    real_only: bool,
) -> Run<F> {
    let c1 = F::from(1e-4).unwrap();
    let tol = F::from(cfg.tol).unwrap();
    let tiny = F::epsilon() * F::epsilon();
    let half = F::from(0.5).unwrap();
    let mut step = F::one();
    let (mut val, mut grad) = obj.objective_and_gradient(&y);
    let mut tg = tangent(&y, &grad);
    if real_only {
        tg.iter_mut().for_each(|x| x.im = F::zero());
    }
    let mut gn = norm(&tg);
    let mut converged = false;

    for _ in 0..cfg.max_iter {
        if gn <= tol * val.max(F::one()) {
            converged = true;
            break;
        }
        let gn2 = gn * gn;
        let mut t = step;
        let accepted = loop {
            let mut cand: Vec<Complex<F>> = y.iter().zip(&tg).map(|(a, d)| *a + *d * t).collect();
            normalize(&mut cand);
            let v = obj.value(&cand);
            if v >= val + c1 * t * gn2 {
                break Some((cand, t));
            }
            t = t * half;
            if t < tiny {
                break None;
            }
        };
        let Some((cand, t)) = accepted else { break };
        step = t + t;
        y = cand;
        (val, grad) = obj.objective_and_gradient(&y);
        tg = tangent(&y, &grad);
        if real_only {
            tg.iter_mut().for_each(|x| x.im = F::zero());
        }
        gn = norm(&tg);
    }
    if gn <= tol * val.max(F::one()) {
        converged = true;
    }
    Run {
        value: val,
        y,
        grad_norm: gn,
        converged,
    }
}

fn random_start<F: Float>(dim: usize, seed: u64, index: usize, real_only: bool) -> Vec<Complex<F>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let mut sample = || -> F {
        {
            let x: f64 = StandardNormal.sample(&mut rng);
            F::from(x)
        }
        .unwrap()
    };
    let mut y: Vec<Complex<F>> = (0..dim)
        .map(|_| {
            let re = sample();
            let im = if real_only { F::zero() } else { sample() };
            Complex::new(re, im)
        })
        .collect();
    normalize(&mut y);
    y
}

/// Maximize over a precomputed Gram table.
pub fn maximize_gram<F>(gram: &GramTable, cfg: &MaximizeConfig) -> Result<MaxReport<F>>
where
    F: Float + Scalar,
{
    let dim = gram.active_roots().len();
    if dim == 0 {
        return Err(Error::ZeroWeight);
    }
    let obj = SphereObjective::<F>::new(gram);
    let starts = cfg.starts.max(1);
    let runs: Vec<Run<F>> = (0..starts)
        .into_par_iter()
        .map(|i| {
            let y0 = random_start(dim, cfg.seed, i, cfg.real_only);
            ascend(&obj, y0, cfg, cfg.real_only)
        })
        .collect();

    let converged = runs.iter().filter(|r| r.converged).count();
    let (best_start, best) = runs
        .into_iter()
        .enumerate()
        .reduce(|acc, cur| if cur.1.value > acc.1.value { cur } else { acc })
        .expect("at least one start");

    let z: Vec<Complex<F>> = best
        .y
        .iter()
        .zip(gram.lowering_norms())
        .map(|(y, w)| *y / F::from_rational(w).sqrt())
        .collect();
    let coef = CoefVector {
        roots: gram.active_roots().to_vec(),
        z,
    };
    let feasibility_residual = coef.feasibility_residual(gram);
    Ok(MaxReport {
        best_value: best.value,
        best: coef,
        best_start,
        starts,
        converged,
        grad_norm: best.grad_norm,
        feasibility_residual,
    })
}

/// Approximate `max ||II(fp, fp)||^2` over unit tangent vectors at the
/// highest weight vector.
pub fn maximize_sff<F>(ctx: &HwContext<'_>, cfg: &MaximizeConfig) -> Result<MaxReport<F>>
where
    F: Float + Scalar,
{
    maximize_gram(&sff_gram(ctx)?, cfg)
}
