//! Chevalley basis structure constants.
//!
//! Constants `N_{a,b}` are stored for ordered pairs of positive roots only.
//! Signs are fixed on extraspecial pairs; every other constant follows from
//! the quadruple relation among four roots summing to zero, processed by
//! increasing height. Brackets involving negative roots are derived on the
//! fly from the stored table through
//!
//! * `N_{-a,-b} = -N_{a,b}`,
//! * `N_{x,y} / |z|^2 = N_{y,z} / |x|^2 = N_{z,x} / |y|^2` for `x + y + z = 0`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rootsys::{RootSystem, Vector};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisElem {
    E(usize),
    F(usize),
    /// A Cartan element, identified with an ambient (co)vector.
    H(Vector),
}

/// A linear combination of basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElement {
    pub e: BTreeMap<usize, Rational>,
    pub f: BTreeMap<usize, Rational>,
    pub h: Vector,
}

fn add_term(map: &mut BTreeMap<usize, Rational>, k: usize, c: Rational) {
    if c.is_zero() {
        return;
    }
    let entry = map.entry(k).or_insert_with(Rational::zero);
    *entry += c;
    if entry.is_zero() {
        map.remove(&k);
    }
}

impl LieElement {
    pub fn zero(dim: usize) -> Self {
        LieElement {
            e: BTreeMap::new(),
            f: BTreeMap::new(),
            h: Vector::zeros(dim),
        }
    }

    pub fn basis(dim: usize, b: &BasisElem) -> Self {
        let mut x = LieElement::zero(dim);
        x.add_basis(b, Rational::one());
        x
    }

    pub fn is_zero(&self) -> bool {
        self.e.is_empty() && self.f.is_empty() && self.h.is_zero()
    }

    pub fn add_basis(&mut self, b: &BasisElem, c: Rational) {
        match b {
            BasisElem::E(i) => add_term(&mut self.e, *i, c),
            BasisElem::F(i) => add_term(&mut self.f, *i, c),
            BasisElem::H(v) => self.h = &self.h + &v.scale(c),
        }
    }

    pub fn add_scaled(&mut self, other: &LieElement, c: Rational) {
        for (&k, &v) in &other.e {
            add_term(&mut self.e, k, v * c);
        }
        for (&k, &v) in &other.f {
            add_term(&mut self.f, k, v * c);
        }
        self.h = &self.h + &other.h.scale(c);
    }

    fn terms(&self) -> Vec<(BasisElem, Rational)> {
        let mut out: Vec<(BasisElem, Rational)> = Vec::new();
        out.extend(self.e.iter().map(|(&k, &v)| (BasisElem::E(k), v)));
        out.extend(self.f.iter().map(|(&k, &v)| (BasisElem::F(k), v)));
        if !self.h.is_zero() {
            out.push((BasisElem::H(self.h.clone()), Rational::one()));
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct ChevalleyTable {
    rs: RootSystem,
    n_const: HashMap<(usize, usize), i64>,
}

impl ChevalleyTable {
    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    /// `N_{a,b}` for positive roots; zero when `a + b` is not a root.
    pub fn n(&self, a: usize, b: usize) -> i64 {
        self.n_const.get(&(a, b)).copied().unwrap_or(0)
    }

    pub fn constants(&self) -> &HashMap<(usize, usize), i64> {
        &self.n_const
    }

    /// Rebuild a table from explicit constants; used for fault injection.
    pub fn from_constants(rs: RootSystem, n_const: HashMap<(usize, usize), i64>) -> Self {
        ChevalleyTable { rs, n_const }
    }

    /// `N_{x,-y}` for positive `x != y`, the constant of `[e_x, f_y]`.
    pub fn n_mixed(&self, x: usize, y: usize) -> Rational {
        n_mixed_from(&self.rs, &self.n_const, x, y)
    }

    /// `[e_a, f_b]` for `a != b`: `Some((true, g, c))` for `c e_g`,
    /// `Some((false, g, c))` for `c f_g`.
    pub fn ef_bracket(&self, a: usize, b: usize) -> Option<(bool, usize, Rational)> {
        if let Some(g) = self.rs.diff_root(a, b) {
            Some((true, g, self.n_mixed(a, b)))
        } else {
            self.rs
                .diff_root(b, a)
                .map(|g| (false, g, self.n_mixed(a, b)))
        }
    }

    pub fn basis(&self) -> Vec<BasisElem> {
        let np = self.rs.num_positive();
        let mut b: Vec<BasisElem> = (0..np).map(BasisElem::E).collect();
        b.extend((0..np).map(BasisElem::F));
        b.extend(
            self.rs
                .simple_roots()
                .iter()
                .map(|s| BasisElem::H(s.coroot())),
        );
        b
    }

    pub fn bracket(&self, x: &BasisElem, y: &BasisElem) -> LieElement {
        use BasisElem::*;
        let rs = &self.rs;
        let dim = rs.ambient_dim();
        let mut out = LieElement::zero(dim);
        match (x, y) {
            (E(a), E(b)) => {
                if let Some(s) = rs.sum_root(*a, *b) {
                    add_term(
                        &mut out.e,
                        s,
                        Rational::from_integer(self.n(*a, *b) as i128),
                    );
                }
            }
            (F(a), F(b)) => {
                if let Some(s) = rs.sum_root(*a, *b) {
                    add_term(
                        &mut out.f,
                        s,
                        -Rational::from_integer(self.n(*a, *b) as i128),
                    );
                }
            }
            (E(a), F(b)) => {
                if a == b {
                    out.h = rs.root(*a).coroot();
                } else if let Some((is_e, g, c)) = self.ef_bracket(*a, *b) {
                    add_term(if is_e { &mut out.e } else { &mut out.f }, g, c);
                }
            }
            (F(_), E(_)) => {
                out.add_scaled(&self.bracket(y, x), -Rational::one());
            }
            (H(h), E(a)) => add_term(&mut out.e, *a, rs.root(*a).dot(h)),
            (H(h), F(a)) => add_term(&mut out.f, *a, -rs.root(*a).dot(h)),
            (E(a), H(h)) => add_term(&mut out.e, *a, -rs.root(*a).dot(h)),
            (F(a), H(h)) => add_term(&mut out.f, *a, rs.root(*a).dot(h)),
            (H(_), H(_)) => {}
        }
        out
    }

    pub fn bracket_elements(&self, x: &LieElement, y: &LieElement) -> LieElement {
        let mut out = LieElement::zero(self.rs.ambient_dim());
        let ty = y.terms();
        for (bx, cx) in x.terms() {
            for (by, cy) in &ty {
                out.add_scaled(&self.bracket(&bx, by), cx * cy);
            }
        }
        out
    }

    /// `[[x,y],z] + [[y,z],x] + [[z,x],y]`.
    pub fn jacobiator(&self, x: &BasisElem, y: &BasisElem, z: &BasisElem) -> LieElement {
        let dim = self.rs.ambient_dim();
        let (lx, ly, lz) = (
            LieElement::basis(dim, x),
            LieElement::basis(dim, y),
            LieElement::basis(dim, z),
        );
        let mut out = self.bracket_elements(&self.bracket(x, y), &lz);
        out.add_scaled(
            &self.bracket_elements(&self.bracket(y, z), &lx),
            Rational::one(),
        );
        out.add_scaled(
            &self.bracket_elements(&self.bracket(z, x), &ly),
            Rational::one(),
        );
        out
    }
}

fn n_lookup(n_const: &HashMap<(usize, usize), i64>, a: usize, b: usize) -> Rational {
    Rational::from_integer(n_const.get(&(a, b)).copied().unwrap_or(0) as i128)
}

fn n_mixed_from(
    rs: &RootSystem,
    n_const: &HashMap<(usize, usize), i64>,
    x: usize,
    y: usize,
) -> Rational {
    if let Some(z) = rs.diff_root(x, y) {
        // x - y = z > 0: N_{x,-y} = -(|z|^2/|x|^2) N_{y,z}
        -(rs.norm_sq(z) / rs.norm_sq(x)) * n_lookup(n_const, y, z)
    } else if let Some(g) = rs.diff_root(y, x) {
        // y - x = g > 0: N_{x,-y} = (|g|^2/|y|^2) N_{g,x}
        (rs.norm_sq(g) / rs.norm_sq(y)) * n_lookup(n_const, g, x)
    } else {
        Rational::zero()
    }
}

/// Structure constants with signs fixed by extraspecial pairs under the
/// canonical (lexicographic) root order.
pub fn build_chevalley(rs: &RootSystem) -> ChevalleyTable {
    let order: Vec<usize> = (0..rs.num_positive()).collect();
    build_chevalley_with_order(rs, &order)
}

/// As [`build_chevalley`], with extraspecial pairs chosen by `priority`
/// (smaller value wins) instead of the canonical index order.
pub fn build_chevalley_with_order(rs: &RootSystem, priority: &[usize]) -> ChevalleyTable {
    let np = rs.num_positive();
    assert_eq!(priority.len(), np, "priority must rank every positive root");

    let mut by_height: Vec<usize> = (0..np).collect();
    by_height.sort_by_key(|&i| (rs.height(i), i));

    let mut decomps: Vec<Vec<(usize, usize)>> = vec![Vec::new(); np];
    for a in 0..np {
        for b in 0..np {
            if let Some(s) = rs.sum_root(a, b) {
                decomps[s].push((a, b));
            }
        }
    }

    let mut n_const: HashMap<(usize, usize), i64> = HashMap::new();
    for &xi in &by_height {
        let pairs = &decomps[xi];
        let Some(&(a0, b0)) = pairs.iter().min_by_key(|(a, _)| priority[*a]) else {
            continue;
        };
        // p = max{k : b0 - k a0 is a root}
        let mut p = 0;
        let mut v = rs.root(b0) - rs.root(a0);
        while rs.is_root(&v) {
            p += 1;
            v = &v - rs.root(a0);
        }
        let n0 = p + 1;
        n_const.insert((a0, b0), n0);
        n_const.insert((b0, a0), -n0);

        let xi_sq = rs.norm_sq(xi);
        for &(a, b) in pairs {
            if a == a0 || a == b0 || n_const.contains_key(&(a, b)) {
                continue;
            }
            // Quadruple (a0, b0, -a, -b) summing to zero.
            let mut acc = Rational::zero();
            let d1 = rs.root(b0) - rs.root(a);
            if rs.is_root(&d1) {
                acc += n_mixed_from(rs, &n_const, b0, a) * n_mixed_from(rs, &n_const, a0, b)
                    / d1.norm_sq();
            }
            let d2 = rs.root(a0) - rs.root(a);
            if rs.is_root(&d2) {
                acc += -n_mixed_from(rs, &n_const, a0, a) * n_mixed_from(rs, &n_const, b0, b)
                    / d2.norm_sq();
            }
            let nab = acc * xi_sq / Rational::from_integer(n0 as i128);
            assert!(
                nab.is_integer() && !nab.is_zero(),
                "structure constant {nab} for ({a},{b})"
            );
            let nab = nab.to_integer() as i64;
            n_const.insert((a, b), nab);
            n_const.insert((b, a), -nab);
        }
    }
    ChevalleyTable {
        rs: rs.clone(),
        n_const,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiReport {
    pub triples_checked: usize,
    pub failures: usize,
    pub exhaustive: bool,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for JacobiReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} triples ({}), {} failures",
            self.triples_checked,
            if self.exhaustive {
                "exhaustive"
            } else {
                "sampled"
            },
            self.failures
        )
    }
}

pub const JACOBI_EXHAUSTIVE_MAX_RANK: usize = 4;
pub const JACOBI_DEFAULT_SAMPLES: usize = 10_000;
pub const JACOBI_DEFAULT_SEED: u64 = 0x5eed_1ac0b1;

/// Exhaustive for rank <= 4, otherwise 10^4 seeded random triples.
pub fn verify_jacobi(tbl: &ChevalleyTable) -> JacobiReport {
    if tbl.rs.rank() <= JACOBI_EXHAUSTIVE_MAX_RANK {
        verify_jacobi_exhaustive(tbl)
    } else {
        verify_jacobi_sampled(tbl, JACOBI_DEFAULT_SAMPLES, JACOBI_DEFAULT_SEED)
    }
}

pub fn verify_jacobi_exhaustive(tbl: &ChevalleyTable) -> JacobiReport {
    let basis = tbl.basis();
    let mut failures = 0;
    let mut checked = 0;
    for x in &basis {
        for y in &basis {
            for z in &basis {
                checked += 1;
                if !tbl.jacobiator(x, y, z).is_zero() {
                    failures += 1;
                }
            }
        }
    }
    JacobiReport {
        triples_checked: checked,
        failures,
        exhaustive: true,
    }
}

pub fn verify_jacobi_sampled(tbl: &ChevalleyTable, samples: usize, seed: u64) -> JacobiReport {
    let basis = tbl.basis();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let failures = (0..samples)
        .filter(|_| {
            let x = &basis[rng.random_range(0..basis.len())];
            let y = &basis[rng.random_range(0..basis.len())];
            let z = &basis[rng.random_range(0..basis.len())];
            !tbl.jacobiator(x, y, z).is_zero()
        })
        .count();
    JacobiReport {
        triples_checked: samples,
        failures,
        exhaustive: false,
    }
}
