//! Second fundamental form of the orbit through a highest weight vector.
//!
//! Two routes are provided. The root-combinatorial route ([`c_delta`],
//! [`PairSums::estimate_sum`]) bounds `||II(fp, fp)||^2` from the root
//! system alone; the exact route ([`gram`]) evaluates the same quantity
//! from inner products in the module, and [`optimize`] searches for its
//! maximum on the unit sphere of tangent vectors.
//!
//! Sums over decompositions `gamma = alpha + beta` run over ordered pairs
//! of positive roots throughout.

pub mod gram;
pub mod optimize;

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, Vector};
use crate::scalar::Sqrt2Scalar;
use crate::Rational;

pub use gram::{
    mab_certificate, sff_gram, sff_pair_norm_sq, CoefVector, GramBlock, GramTable, MabFailure,
    MabReport,
};
pub use optimize::{maximize_gram, maximize_sff, MaxReport, MaximizeConfig, SphereObjective};

/// `m_{a,b}^2`: 2 if `a == b` or the roots form an obtuse angle, else 1.
pub fn m_squared(rs: &RootSystem, a: usize, b: usize) -> u32 {
    if a == b || rs.inner_idx(a, b) < Rational::zero() {
        2
    } else {
        1
    }
}

/// `C_Delta`: the largest total of `m^2` over the ordered decompositions
/// of a single `gamma`. Mirrors the reference enumeration: one pass over
/// ordered pairs accumulating into a table keyed by the sum.
pub fn c_delta(rs: &RootSystem) -> u32 {
    let roots = rs.positive_roots();
    let mut c = 0;
    let mut sums: HashMap<Vector, u32> = HashMap::new();
    for (i, alpha) in roots.iter().enumerate() {
        for (j, beta) in roots.iter().enumerate() {
            let s = sums.entry(alpha + beta).or_insert(0);
            *s += m_squared(rs, i, j);
            c = c.max(*s);
        }
    }
    c
}

/// `C_Delta` re-derived from unordered pairs, off-diagonal pairs counted
/// twice.
pub fn c_delta_unordered(rs: &RootSystem) -> u32 {
    let n = rs.num_positive();
    let mut sums: HashMap<Vector, u32> = HashMap::new();
    for i in 0..n {
        for j in i..n {
            let w = if i == j { 1 } else { 2 };
            *sums.entry(rs.root(i) + rs.root(j)).or_insert(0) += w * m_squared(rs, i, j);
        }
    }
    sums.into_values().max().unwrap_or(0)
}

/// All ordered decompositions of one `gamma`.
#[derive(Clone, Debug)]
pub struct SumBlock {
    pub gamma: Vector,
    pub pairs: Vec<(usize, usize)>,
    pub m_sq: Vec<u32>,
    /// More than two ordered decompositions, or an obtuse one.
    pub in_phi: bool,
}

impl SumBlock {
    /// `S_gamma = (sum m r_a r_b)^2 - 2 sum r_a^2 r_b^2`.
    pub fn s_gamma<S: Sqrt2Scalar>(&self, r: &[S]) -> S {
        let sqrt2 = S::sqrt2();
        let mut lin = S::zero();
        let mut sq = S::zero();
        for (&(a, b), &m2) in self.pairs.iter().zip(&self.m_sq) {
            let prod = r[a].clone() * r[b].clone();
            sq = sq + prod.clone() * prod.clone();
            lin = lin + if m2 == 2 { sqrt2.clone() * prod } else { prod };
        }
        let two = S::one() + S::one();
        lin.clone() * lin - two * sq
    }
}

/// The decomposition of `2 Delta+` into blocks, sorted by `gamma`.
#[derive(Clone, Debug)]
pub struct PairSums {
    num_positive: usize,
    blocks: Vec<SumBlock>,
}

pub const FEASIBILITY_TOL: f64 = 1e-12;

impl PairSums {
    pub fn new(rs: &RootSystem) -> Self {
        let n = rs.num_positive();
        let mut map: BTreeMap<Vector, Vec<(usize, usize)>> = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                map.entry(rs.root(a) + rs.root(b)).or_default().push((a, b));
            }
        }
        let blocks = map
            .into_iter()
            .map(|(gamma, pairs)| {
                let m_sq: Vec<u32> = pairs.iter().map(|&(a, b)| m_squared(rs, a, b)).collect();
                let obtuse = pairs
                    .iter()
                    .any(|&(a, b)| rs.inner_idx(a, b) < Rational::zero());
                SumBlock {
                    in_phi: pairs.len() > 2 || obtuse,
                    gamma,
                    pairs,
                    m_sq,
                }
            })
            .collect();
        PairSums {
            num_positive: n,
            blocks,
        }
    }

    pub fn blocks(&self) -> &[SumBlock] {
        &self.blocks
    }

    pub fn num_positive(&self) -> usize {
        self.num_positive
    }

    pub fn c_delta(&self) -> u32 {
        self.blocks
            .iter()
            .map(|b| b.m_sq.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    fn check_r<S: Sqrt2Scalar>(&self, r: &[S]) -> Result<()> {
        if r.len() != self.num_positive {
            return Err(Error::IndexMismatch {
                expected: self.num_positive,
                got: r.len(),
            });
        }
        let norm_sq = r
            .iter()
            .fold(S::zero(), |acc, x| acc + x.clone() * x.clone());
        let negative = r.iter().any(|x| *x < S::zero());
        if negative || !norm_sq.near(&S::one(), FEASIBILITY_TOL) {
            return Err(Error::InfeasibleR {
                norm_sq: norm_sq.to_f64(),
            });
        }
        Ok(())
    }

    /// `(gamma, S_gamma)` for every block.
    pub fn s_gamma_values<S: Sqrt2Scalar>(&self, r: &[S]) -> Result<Vec<(&Vector, S)>> {
        self.check_r(r)?;
        Ok(self
            .blocks
            .iter()
            .map(|b| (&b.gamma, b.s_gamma(r)))
            .collect())
    }

    /// `2 + sum_gamma S_gamma`, the bound functional on `||II(fp, fp)||^2`.
    pub fn estimate_sum<S: Sqrt2Scalar>(&self, r: &[S]) -> Result<S> {
        self.check_r(r)?;
        let two = S::one() + S::one();
        Ok(self.blocks.iter().fold(two, |acc, b| acc + b.s_gamma(r)))
    }
}

/// The `gamma` admitting more than two ordered decompositions or an obtuse
/// one, in canonical order.
pub fn phi_set(rs: &RootSystem) -> Vec<Vector> {
    PairSums::new(rs)
        .blocks
        .into_iter()
        .filter(|b| b.in_phi)
        .map(|b| b.gamma)
        .collect()
}

pub fn estimate_sum<S: Sqrt2Scalar>(rs: &RootSystem, r: &[S]) -> Result<S> {
    PairSums::new(rs).estimate_sum(r)
}

/// A rational point of the unit sphere in dimension `t.len() + 1`, by
/// inverse stereographic projection, with every coordinate made
/// nonnegative.
pub fn rational_sphere_point(t: &[Rational]) -> Vec<Rational> {
    let s = t.iter().fold(Rational::zero(), |acc, x| acc + x * x);
    let den = s + Rational::one();
    let mut out: Vec<Rational> = t.iter().map(|x| (x + x) / den).collect();
    out.push((s - Rational::one()) / den);
    out.into_iter().map(|x| x.abs()).collect()
}
