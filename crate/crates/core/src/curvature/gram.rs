//! Exact Gram matrices of projected second-fundamental-form vectors.
//!
//! With `p = v_lambda`, `II(f_a p, f_b p)` is the normal component of
//! `f_a f_b p`. That vector has weight `lambda - gamma`, `gamma = a + b`,
//! and the only tangent direction of that weight is `f_gamma p` (when
//! `gamma` is a root with nonzero lowering norm), so the projection only
//! ever removes one component.

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex;
use num_traits::{Float, Zero};

use crate::error::{Error, Result};
use crate::hwmodule::{FMonomial, HwContext};
use crate::linalg::{self, Matrix};
use crate::rootsys::Vector;
use crate::scalar::Scalar;
use crate::Rational;

fn tangent_root(ctx: &HwContext<'_>, a: usize, b: usize) -> Option<usize> {
    ctx.root_system()
        .sum_root(a, b)
        .filter(|&g| ctx.lambda_pairing(g) > 0)
}

/// `<(f_a f_b p)^nu, (f_c f_d p)^nu>` for `a + b = c + d`.
fn projected_inner(
    ctx: &HwContext<'_>,
    ab: (usize, usize),
    cd: (usize, usize),
) -> Result<Rational> {
    let x = FMonomial::new(vec![ab.0, ab.1]);
    let y = FMonomial::new(vec![cd.0, cd.1]);
    let full = ctx.shapovalov_inner(&x, &y)?;
    match tangent_root(ctx, ab.0, ab.1) {
        Some(g) => {
            let t = FMonomial::new(vec![g]);
            let px = ctx.shapovalov_inner(&x, &t)?;
            let py = ctx.shapovalov_inner(&y, &t)?;
            Ok(full - px * py / ctx.lowering_norm_sq(g))
        }
        None => Ok(full),
    }
}

/// `||II(f_a p, f_b p)||^2`, exact.
pub fn sff_pair_norm_sq(ctx: &HwContext<'_>, alpha: usize, beta: usize) -> Result<Rational> {
    for r in [alpha, beta] {
        if ctx.lambda_pairing(r) <= 0 {
            return Err(Error::ZeroTangent { root: r });
        }
    }
    projected_inner(ctx, (alpha, beta), (alpha, beta))
}

/// One active pair checked against `m^2 <lambda, a^v> <lambda, b^v>`.
#[derive(Clone, Debug, PartialEq)]
pub struct MabFailure {
    pub alpha: usize,
    pub beta: usize,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct MabReport {
    pub pairs_checked: usize,
    pub failures: Vec<MabFailure>,
}

impl MabReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Exact check of `||II(f_a p, f_b p)||^2 <= m_ab^2 ||f_a p||^2 ||f_b p||^2`
/// over all ordered active pairs.
pub fn mab_certificate(ctx: &HwContext<'_>) -> Result<MabReport> {
    let rs = ctx.root_system();
    let active = ctx.active_roots();
    let mut report = MabReport::default();
    for &a in &active {
        for &b in &active {
            let lhs = sff_pair_norm_sq(ctx, a, b)?;
            let m2 = i128::from(super::m_squared(rs, a, b));
            let rhs = Rational::from_integer(
                m2 * i128::from(ctx.lambda_pairing(a)) * i128::from(ctx.lambda_pairing(b)),
            );
            report.pairs_checked += 1;
            if lhs > rhs {
                report.failures.push(MabFailure {
                    alpha: a,
                    beta: b,
                    lhs,
                    rhs,
                });
            }
        }
    }
    Ok(report)
}

/// Gram matrix of one weight block.
#[derive(Clone, Debug, PartialEq)]
pub struct GramBlock {
    pub gamma: Vector,
    /// Ordered pairs of positive-root indices.
    pub pairs: Vec<(usize, usize)>,
    /// The same pairs as positions in [`GramTable::active_roots`].
    pub positions: Vec<(usize, usize)>,
    pub matrix: Matrix,
}

impl GramBlock {
    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(Zero::is_zero)
    }

    pub fn is_psd(&self) -> bool {
        linalg::is_psd(&self.matrix)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GramTable {
    active: Vec<usize>,
    lowering_norms: Vec<Rational>,
    blocks: Vec<GramBlock>,
}

impl GramTable {
    /// Positive roots spanning the coefficient space.
    pub fn active_roots(&self) -> &[usize] {
        &self.active
    }

    /// `||f_a p||^2` for each active root.
    pub fn lowering_norms(&self) -> &[Rational] {
        &self.lowering_norms
    }

    pub fn blocks(&self) -> &[GramBlock] {
        &self.blocks
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(GramBlock::is_zero)
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if n != self.active.len() {
            Err(Error::IndexMismatch {
                expected: self.active.len(),
                got: n,
            })
        } else {
            Ok(())
        }
    }

    /// `||II(fp, fp)||^2` for real coefficients `z` indexed by the active
    /// roots; quartic in `z`.
    pub fn sff_value_sq<S: Scalar>(&self, z: &[S]) -> Result<S> {
        self.check_len(z.len())?;
        let mut total = S::zero();
        for blk in &self.blocks {
            let v: Vec<S> = blk
                .positions
                .iter()
                .map(|&(i, j)| z[i].clone() * z[j].clone())
                .collect();
            for (row, vi) in blk.matrix.iter().zip(&v) {
                for (g, vj) in row.iter().zip(&v) {
                    if !g.is_zero() {
                        total = total + S::from_rational(g) * vi.clone() * vj.clone();
                    }
                }
            }
        }
        Ok(total)
    }

    /// `||II(fp, fp)||^2` for complex coefficients.
    pub fn sff_value_sq_complex<F: Float + Scalar>(&self, z: &[Complex<F>]) -> Result<F> {
        self.check_len(z.len())?;
        let mut total = F::zero();
        for blk in &self.blocks {
            let v: Vec<Complex<F>> = blk.positions.iter().map(|&(i, j)| z[i] * z[j]).collect();
            for (row, vi) in blk.matrix.iter().zip(&v) {
                for (g, vj) in row.iter().zip(&v) {
                    if !g.is_zero() {
                        total = total + F::from_rational(g) * (vi.conj() * *vj).re;
                    }
                }
            }
        }
        Ok(total)
    }
}

/// Exact Gram table over ordered pairs of active roots.
pub fn sff_gram(ctx: &HwContext<'_>) -> Result<GramTable> {
    let rs = ctx.root_system();
    let active = ctx.active_roots();
    let pos: HashMap<usize, usize> = active.iter().enumerate().map(|(i, &a)| (a, i)).collect();

    let mut by_gamma: BTreeMap<Vector, Vec<(usize, usize)>> = BTreeMap::new();
    for &a in &active {
        for &b in &active {
            by_gamma
                .entry(rs.root(a) + rs.root(b))
                .or_default()
                .push((a, b));
        }
    }

    let mut blocks = Vec::with_capacity(by_gamma.len());
    for (gamma, pairs) in by_gamma {
        let n = pairs.len();
        let mut matrix = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in i..n {
                let g = projected_inner(ctx, pairs[i], pairs[j])?;
                matrix[i][j] = g;
                matrix[j][i] = g;
            }
        }
        let positions = pairs.iter().map(|&(a, b)| (pos[&a], pos[&b])).collect();
        blocks.push(GramBlock {
            gamma,
            pairs,
            positions,
            matrix,
        });
    }

    Ok(GramTable {
        lowering_norms: active.iter().map(|&a| ctx.lowering_norm_sq(a)).collect(),
        active,
        blocks,
    })
}

/// Complex coefficients `z_a` of a tangent vector `fp = sum z_a f_a p`,
/// indexed by the active roots of a [`GramTable`].
#[derive(Clone, Debug, PartialEq)]
pub struct CoefVector<F> {
    pub roots: Vec<usize>,
    pub z: Vec<Complex<F>>,
}

impl<F: Float + Scalar> CoefVector<F> {
    /// `r_a = |z_a| ||f_a p||`.
    pub fn radii(&self, gram: &GramTable) -> Vec<F> {
        self.z
            .iter()
            .zip(gram.lowering_norms())
            .map(|(z, w)| z.norm() * F::from_rational(w).sqrt())
            .collect()
    }

    /// Radii spread over all `num_positive` roots, zero off the active set.
    pub fn full_radii(&self, gram: &GramTable, num_positive: usize) -> Vec<F> {
        let mut out = vec![F::zero(); num_positive];
        for (&a, r) in self.roots.iter().zip(self.radii(gram)) {
            out[a] = r;
        }
        out
    }

    /// `||fp||^2 - 1`.
    pub fn feasibility_residual(&self, gram: &GramTable) -> F {
        let s = self
            .radii(gram)
            .into_iter()
            .fold(F::zero(), |acc, r| acc + r * r);
        s - F::one()
    }
}
