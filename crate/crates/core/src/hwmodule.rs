//! Exact inner products in an irreducible highest-weight module.
//!
//! States are products of lowering operators applied to a unit highest
//! weight vector `v`. Since `e_a` is adjoint to `f_a`, the product
//! `<F v, f_d G v>` equals `<e_d F v, G v>`, and `e_d F v` is expanded by
//! commuting `e_d` to the right until it annihilates `v`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_traits::{One, Zero};

use crate::chevalley::ChevalleyTable;
use crate::error::{Error, Result};
use crate::rootsys::{pairing, weight_from_fundamental, RootSystem, Vector};
use crate::Rational;

pub const DEFAULT_DEGREE_CAP: usize = 4;

/// `f_{b_1} f_{b_2} ... f_{b_k}`; the leftmost factor acts last.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FMonomial(pub Vec<usize>);

impl FMonomial {
    pub fn new(factors: Vec<usize>) -> Self {
        FMonomial(factors)
    }

    pub fn unit() -> Self {
        FMonomial(Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn factors(&self) -> &[usize] {
        &self.0
    }

    fn prepend(&self, b: usize) -> FMonomial {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(b);
        v.extend_from_slice(&self.0);
        FMonomial(v)
    }
}

impl From<&[usize]> for FMonomial {
    fn from(v: &[usize]) -> Self {
        FMonomial(v.to_vec())
    }
}

/// Rational combination of monomials applied to `v`. Zero coefficients
/// are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinComb {
    terms: BTreeMap<FMonomial, Rational>,
}

impl LinComb {
    pub fn zero() -> Self {
        LinComb::default()
    }

    pub fn monomial(m: FMonomial) -> Self {
        let mut c = LinComb::zero();
        c.add_term(m, Rational::one());
        c
    }

    pub fn add_term(&mut self, m: FMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add_scaled(&mut self, other: &LinComb, c: Rational) {
        for (m, &v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &FMonomial) -> Rational {
        self.terms.get(m).copied().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FMonomial, &Rational)> {
        self.terms.iter()
    }
}

/// A highest weight `lambda` together with the algebra acting on it.
///
/// Memo tables sit behind mutexes, so a context may be shared between
/// threads; results are exact and do not depend on evaluation order.
pub struct HwContext<'a> {
    tbl: &'a ChevalleyTable,
    lambda: Vector,
    lambda_pairing: Vec<i64>,
    cap: usize,
    apply_memo: Mutex<HashMap<(usize, FMonomial), LinComb>>,
    inner_memo: Mutex<HashMap<(FMonomial, FMonomial), Rational>>,
}

impl<'a> HwContext<'a> {
    /// Fails with [`Error::NotDominant`] unless every pairing of `lambda`
    /// with a simple coroot is a nonnegative integer.
    pub fn new(tbl: &'a ChevalleyTable, lambda: Vector) -> Result<Self> {
        Self::with_cap(tbl, lambda, DEFAULT_DEGREE_CAP)
    }

    pub fn with_cap(tbl: &'a ChevalleyTable, lambda: Vector, cap: usize) -> Result<Self> {
        let rs = tbl.root_system();
        if lambda.dim() != rs.ambient_dim() {
            return Err(Error::DimensionMismatch {
                left: lambda.dim(),
                right: rs.ambient_dim(),
            });
        }
        for s in rs.simple_roots() {
            let p = pairing(&lambda, s)?;
            if !p.is_integer() || p < Rational::zero() {
                return Err(Error::NotDominant);
            }
        }
        let lambda_pairing = rs
            .positive_roots()
            .iter()
            .map(|a| pairing(&lambda, a).map(|p| p.to_integer() as i64))
            .collect::<Result<Vec<_>>>()?;
        Ok(HwContext {
            tbl,
            lambda,
            lambda_pairing,
            cap,
            apply_memo: Mutex::new(HashMap::new()),
            inner_memo: Mutex::new(HashMap::new()),
        })
    }

    /// Context for `sum_i coeffs[i] * omega_i`.
    pub fn from_fundamental(tbl: &'a ChevalleyTable, coeffs: &[u32]) -> Result<Self> {
        let lambda = weight_from_fundamental(tbl.root_system(), coeffs)?;
        Self::new(tbl, lambda)
    }

    pub fn table(&self) -> &ChevalleyTable {
        self.tbl
    }

    pub fn root_system(&self) -> &RootSystem {
        self.tbl.root_system()
    }

    pub fn lambda(&self) -> &Vector {
        &self.lambda
    }

    pub fn degree_cap(&self) -> usize {
        self.cap
    }

    /// `<lambda, alpha^vee>` for the positive root with index `alpha`.
    pub fn lambda_pairing(&self, alpha: usize) -> i64 {
        self.lambda_pairing[alpha]
    }

    /// Positive roots with nonzero lowering norm, in index order.
    pub fn active_roots(&self) -> Vec<usize> {
        (0..self.lambda_pairing.len())
            .filter(|&a| self.lambda_pairing[a] > 0)
            .collect()
    }

    fn check_degree(&self, m: &FMonomial) -> Result<()> {
        if m.degree() > self.cap {
            Err(Error::DegreeCapExceeded {
                degree: m.degree(),
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }

    /// Weight of `F v` as `lambda - sum of factors`.
    pub fn weight_of(&self, m: &FMonomial) -> Vector {
        let rs = self.root_system();
        m.factors()
            .iter()
            .fold(self.lambda.clone(), |acc, &b| &acc - rs.root(b))
    }

    fn root_sum_key(&self, m: &FMonomial) -> Vec<i64> {
        let rs = self.root_system();
        let mut key = vec![0; rs.rank()];
        for &b in m.factors() {
            for (k, c) in key.iter_mut().zip(rs.simple_coeffs(b)) {
                *k += c;
            }
        }
        key
    }

    /// `<mu, delta^vee>` for `mu` the weight of `f_rest v`.
    fn weight_pairing(&self, rest: &[usize], delta: usize) -> i64 {
        let rs = self.root_system();
        self.lambda_pairing[delta] - rest.iter().map(|&b| rs.pairing_idx(b, delta)).sum::<i64>()
    }

    /// `e_delta F v` as a combination of monomials applied to `v`.
    pub fn apply_e(&self, delta: usize, f: &FMonomial) -> Result<LinComb> {
        self.check_degree(f)?;
        Ok(self.apply_e_unchecked(delta, f))
    }

    fn apply_e_unchecked(&self, delta: usize, f: &FMonomial) -> LinComb {
        if f.degree() == 0 {
            return LinComb::zero();
        }
        let key = (delta, f.clone());
        if let Some(hit) = self.apply_memo.lock().expect("memo poisoned").get(&key) {
            return hit.clone();
        }

        let b = f.factors()[0];
        let rest = FMonomial::from(&f.factors()[1..]);
        let mut out = LinComb::zero();
        // f_b (e_delta rest v)
        for (m, &c) in self.apply_e_unchecked(delta, &rest).iter() {
            out.add_term(m.prepend(b), c);
        }
        // [e_delta, f_b] rest v
        if delta == b {
            let h = self.weight_pairing(rest.factors(), delta);
            out.add_term(rest, Rational::from_integer(h as i128));
        } else if let Some((is_e, g, c)) = self.tbl.ef_bracket(delta, b) {
            if is_e {
                out.add_scaled(&self.apply_e_unchecked(g, &rest), c);
            } else {
                out.add_term(rest.prepend(g), c);
            }
        }

        self.apply_memo
            .lock()
            .expect("memo poisoned")
            .insert(key, out.clone());
        out
    }

    /// `<F v, G v>`.
    pub fn shapovalov_inner(&self, f: &FMonomial, g: &FMonomial) -> Result<Rational> {
        self.check_degree(f)?;
        self.check_degree(g)?;
        Ok(self.inner_unchecked(f, g))
    }

    fn inner_unchecked(&self, f: &FMonomial, g: &FMonomial) -> Rational {
        if self.root_sum_key(f) != self.root_sum_key(g) {
            return Rational::zero();
        }
        if g.degree() == 0 {
            // equal weights force f to be empty too
            return Rational::one();
        }
        let key = (f.clone(), g.clone());
        if let Some(&hit) = self.inner_memo.lock().expect("memo poisoned").get(&key) {
            return hit;
        }
        let delta = g.factors()[0];
        let g_rest = FMonomial::from(&g.factors()[1..]);
        let value = self
            .apply_e_unchecked(delta, f)
            .iter()
            .fold(Rational::zero(), |acc, (m, &c)| {
                acc + c * self.inner_unchecked(m, &g_rest)
            });
        self.inner_memo
            .lock()
            .expect("memo poisoned")
            .insert(key, value);
        value
    }

    /// Bilinear extension of [`Self::shapovalov_inner`]; all coefficients
    /// are real, so no conjugation is needed.
    pub fn inner_comb(&self, x: &LinComb, y: &LinComb) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (mx, &cx) in x.iter() {
            for (my, &cy) in y.iter() {
                acc += cx * cy * self.shapovalov_inner(mx, my)?;
            }
        }
        Ok(acc)
    }

    /// `||f_alpha v||^2 = <lambda, alpha^vee>`.
    pub fn lowering_norm_sq(&self, alpha: usize) -> Rational {
        Rational::from_integer(self.lambda_pairing[alpha] as i128)
    }
}
