//! Root systems of the finite Cartan types in exact ambient coordinates.
//!
//! Types are realized in the usual Euclidean ambient spaces: `A_n` in
//! `n + 1` coordinates, `B_n`, `C_n`, `D_n` in `n`, `G_2` in the
//! sum-zero plane of three coordinates, `F_4` in four and the `E` series in
//! eight (half-integral coordinates are stored exactly). Every quantity
//! computed downstream is invariant under rescaling the form, so the
//! Euclidean product stands in for the Killing form.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn is_classical(self) -> bool {
        matches!(self, Family::A | Family::B | Family::C | Family::D)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    family: Family,
    rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::InvalidCartanType(format!(
                "{}{}",
                family.letter(),
                rank
            )))
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_classical(&self) -> bool {
        self.family.is_classical()
    }

    /// Every valid type with rank at most `max_rank`, in a fixed order.
    pub fn all_up_to_rank(max_rank: usize) -> Vec<CartanType> {
        let families = [
            Family::A,
            Family::B,
            Family::C,
            Family::D,
            Family::E,
            Family::F,
            Family::G,
        ];
        families
            .iter()
            .flat_map(|&f| (1..=max_rank).filter_map(move |n| CartanType::new(f, n).ok()))
            .collect()
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidCartanType(s.to_string());
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(bad)?;
        let family = match letter.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return Err(bad()),
        };
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let rank: usize = digits.parse().map_err(|_| bad())?;
        CartanType::new(family, rank).map_err(|_| bad())
    }
}

/// A root or weight: an exact coordinate vector in the ambient space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector(pub Vec<Rational>);

impl Vector {
    pub fn zeros(dim: usize) -> Self {
        Vector(vec![Rational::zero(); dim])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Vector(
            coords
                .iter()
                .map(|&c| Rational::from_integer(c as i128))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: Rational) -> Vector {
        Vector(self.0.iter().map(|x| x * c).collect())
    }

    /// Exact ambient inner product; panics on mismatched lengths.
    pub fn dot(&self, other: &Vector) -> Rational {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn norm_sq(&self) -> Rational {
        self.dot(self)
    }

    /// The coroot `2v / <v, v>`.
    pub fn coroot(&self) -> Vector {
        let n = self.norm_sq();
        self.scale(Rational::from_integer(2) / n)
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl<'a> Add<&'a Vector> for &'a Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl<'a> Sub<&'a Vector> for &'a Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&Vector> for Rational {
    type Output = Vector;
    fn mul(self, rhs: &Vector) -> Vector {
        rhs.scale(self)
    }
}

pub fn inner(u: &Vector, v: &Vector) -> Result<Rational> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch {
            left: u.dim(),
            right: v.dim(),
        });
    }
    Ok(u.dot(v))
}

/// `<mu, alpha^vee> = 2<mu, alpha> / <alpha, alpha>`.
pub fn pairing(mu: &Vector, alpha: &Vector) -> Result<Rational> {
    let num = inner(mu, alpha)?;
    let den = alpha.norm_sq();
    if den.is_zero() {
        return Err(Error::ZeroRoot);
    }
    Ok(Rational::from_integer(2) * num / den)
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan_type: CartanType,
    simple_roots: Vec<Vector>,
    positive_roots: Vec<Vector>,
    root_index: HashMap<Vector, usize>,
    fundamental_weights: Vec<Vector>,
    /// Coefficients of each positive root in the simple-root basis.
    simple_coeffs: Vec<Vec<i64>>,
    norms: Vec<Rational>,
    /// `cartan_int[i][j] = <root_i, root_j^vee>`.
    cartan_int: Vec<Vec<i64>>,
    sum_index: Vec<Vec<Option<usize>>>,
    /// `diff_index[i][j]` is the index of `root_i - root_j` when positive.
    diff_index: Vec<Vec<Option<usize>>>,
    highest_root: usize,
}

fn unit(dim: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    v[i] = Rational::one();
    v
}

fn diff_unit(dim: usize, i: usize, j: usize) -> Vector {
    let mut v = unit(dim, i);
    v[j] -= Rational::one();
    Vector(v)
}

fn half_vec(signs: &[i64]) -> Vector {
    Vector(signs.iter().map(|&s| Rational::new(s as i128, 2)).collect())
}

fn simple_roots_of(ct: CartanType) -> Vec<Vector> {
    let n = ct.rank();
    match ct.family() {
        Family::A => (0..n).map(|i| diff_unit(n + 1, i, i + 1)).collect(),
        Family::B => {
            let mut s: Vec<Vector> = (0..n - 1).map(|i| diff_unit(n, i, i + 1)).collect();
            s.push(Vector(unit(n, n - 1)));
            s
        }
        Family::C => {
            let mut s: Vec<Vector> = (0..n - 1).map(|i| diff_unit(n, i, i + 1)).collect();
            s.push(Vector(unit(n, n - 1)).scale(Rational::from_integer(2)));
            s
        }
        Family::D => {
            let mut s: Vec<Vector> = (0..n - 1).map(|i| diff_unit(n, i, i + 1)).collect();
            let mut last = unit(n, n - 2);
            last[n - 1] = Rational::one();
            s.push(Vector(last));
            s
        }
        Family::G => vec![
            Vector::from_ints(&[1, -1, 0]),
            Vector::from_ints(&[-2, 1, 1]),
        ],
        Family::F => vec![
            diff_unit(4, 1, 2),
            diff_unit(4, 2, 3),
            Vector(unit(4, 3)),
            half_vec(&[1, -1, -1, -1]),
        ],
        Family::E => {
            // Bourbaki labelling; E6 and E7 use the first six and seven.
            let mut s = vec![half_vec(&[1, -1, -1, -1, -1, -1, -1, 1]), {
                let mut v = unit(8, 0);
                v[1] = Rational::one();
                Vector(v)
            }];
            for i in 0..6 {
                s.push(diff_unit(8, i + 1, i));
            }
            s.truncate(n);
            s
        }
    }
}

/// Positive roots generated from the simple roots by root strings.
fn generate_positive_roots(simple: &[Vector]) -> Vec<(Vector, Vec<i64>)> {
    let rank = simple.len();
    let mut known: HashMap<Vector, Vec<i64>> = HashMap::new();
    let mut layer: Vec<(Vector, Vec<i64>)> = Vec::new();
    for (i, s) in simple.iter().enumerate() {
        let mut c = vec![0; rank];
        c[i] = 1;
        known.insert(s.clone(), c.clone());
        layer.push((s.clone(), c));
    }
    let mut all = layer.clone();
    while !layer.is_empty() {
        let mut next: Vec<(Vector, Vec<i64>)> = Vec::new();
        for (beta, coeffs) in &layer {
            for (i, alpha) in simple.iter().enumerate() {
                if beta == alpha {
                    continue;
                }
                let mut p = 0;
                let mut down = beta - alpha;
                while known.contains_key(&down) {
                    p += 1;
                    down = &down - alpha;
                }
                let pair = pairing(beta, alpha).expect("simple roots are nonzero");
                let q = Rational::from_integer(p) - pair;
                if q > Rational::zero() {
                    let up = beta + alpha;
                    if !known.contains_key(&up) {
                        let mut c = coeffs.clone();
                        c[i] += 1;
                        known.insert(up.clone(), c.clone());
                        next.push((up, c));
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

impl RootSystem {
    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.simple_roots[0].dim()
    }

    pub fn simple_roots(&self) -> &[Vector] {
        &self.simple_roots
    }

    pub fn positive_roots(&self) -> &[Vector] {
        &self.positive_roots
    }

    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn root(&self, i: usize) -> &Vector {
        &self.positive_roots[i]
    }

    pub fn fundamental_weights(&self) -> &[Vector] {
        &self.fundamental_weights
    }

    pub fn index_of(&self, v: &Vector) -> Option<usize> {
        self.root_index.get(v).copied()
    }

    /// Whether `v` is a root (positive or negative).
    pub fn is_root(&self, v: &Vector) -> bool {
        self.root_index.contains_key(v) || self.root_index.contains_key(&-v)
    }

    pub fn simple_coeffs(&self, i: usize) -> &[i64] {
        &self.simple_coeffs[i]
    }

    pub fn height(&self, i: usize) -> i64 {
        self.simple_coeffs[i].iter().sum()
    }

    /// Index of the simple root `alpha_k` among the positive roots.
    pub fn simple_index(&self, k: usize) -> usize {
        self.root_index[&self.simple_roots[k]]
    }

    pub fn norm_sq(&self, i: usize) -> Rational {
        self.norms[i]
    }

    pub fn inner_idx(&self, i: usize, j: usize) -> Rational {
        self.positive_roots[i].dot(&self.positive_roots[j])
    }

    /// `<root_i, root_j^vee>`, always an integer.
    pub fn pairing_idx(&self, i: usize, j: usize) -> i64 {
        self.cartan_int[i][j]
    }

    pub fn sum_root(&self, i: usize, j: usize) -> Option<usize> {
        self.sum_index[i][j]
    }

    pub fn diff_root(&self, i: usize, j: usize) -> Option<usize> {
        self.diff_index[i][j]
    }

    pub fn highest_root(&self) -> usize {
        self.highest_root
    }
}

pub fn build_root_system(ct: CartanType) -> Result<RootSystem> {
    let ct = CartanType::new(ct.family(), ct.rank())?;
    let simple = simple_roots_of(ct);
    let mut generated = generate_positive_roots(&simple);
    generated.sort_by(|a, b| a.0.cmp(&b.0));

    let (positive_roots, simple_coeffs): (Vec<Vector>, Vec<Vec<i64>>) =
        generated.into_iter().unzip();
    let root_index: HashMap<Vector, usize> = positive_roots
        .iter()
        .enumerate()
        .map(|(i, r)| (r.clone(), i))
        .collect();
    let norms: Vec<Rational> = positive_roots.iter().map(Vector::norm_sq).collect();
    let np = positive_roots.len();

    let cartan_int: Vec<Vec<i64>> = (0..np)
        .map(|i| {
            (0..np)
                .map(|j| {
                    let p =
                        pairing(&positive_roots[i], &positive_roots[j]).expect("roots are nonzero");
                    debug_assert!(p.is_integer());
                    p.to_integer() as i64
                })
                .collect()
        })
        .collect();

    let mut sum_index = vec![vec![None; np]; np];
    let mut diff_index = vec![vec![None; np]; np];
    for i in 0..np {
        for j in 0..np {
            sum_index[i][j] = root_index
                .get(&(&positive_roots[i] + &positive_roots[j]))
                .copied();
            if i != j {
                diff_index[i][j] = root_index
                    .get(&(&positive_roots[i] - &positive_roots[j]))
                    .copied();
            }
        }
    }

    // The highest root dominates every positive root in the simple-root order.
    let highest_root = (0..np)
        .find(|&h| {
            (0..np).all(|j| {
                simple_coeffs[h]
                    .iter()
                    .zip(&simple_coeffs[j])
                    .all(|(a, b)| a >= b)
            })
        })
        .expect("irreducible root systems have a highest root");

    // omega_i = sum_k c_ik alpha_k with c = A^{-1}, A_kj = <alpha_k, alpha_j^vee>.
    let rank = simple.len();
    let cartan: linalg::Matrix = (0..rank)
        .map(|k| {
            (0..rank)
                .map(|j| pairing(&simple[k], &simple[j]).expect("nonzero"))
                .collect()
        })
        .collect();
    let cinv = linalg::inverse(&cartan).expect("Cartan matrices are invertible");
    let dim = simple[0].dim();
    let fundamental_weights = (0..rank)
        .map(|i| {
            (0..rank).fold(Vector::zeros(dim), |acc, k| {
                &acc + &simple[k].scale(cinv[i][k])
            })
        })
        .collect();

    Ok(RootSystem {
        cartan_type: ct,
        simple_roots: simple,
        positive_roots,
        root_index,
        fundamental_weights,
        simple_coeffs,
        norms,
        cartan_int,
        sum_index,
        diff_index,
        highest_root,
    })
}

/// The dominant weight `sum_i coeffs[i] * omega_i`.
pub fn weight_from_fundamental(rs: &RootSystem, coeffs: &[u32]) -> Result<Vector> {
    if coeffs.len() != rs.rank() {
        return Err(Error::WrongLength {
            expected: rs.rank(),
            got: coeffs.len(),
        });
    }
    if coeffs.iter().all(|&c| c == 0) {
        return Err(Error::ZeroWeight);
    }
    Ok(coeffs
        .iter()
        .zip(rs.fundamental_weights())
        .fold(Vector::zeros(rs.ambient_dim()), |acc, (&c, w)| {
            &acc + &w.scale(Rational::from_integer(c as i128))
        }))
}

/// Largest `|alpha|^2 |theta|^2 / <alpha, theta>^2` over positive roots not
/// orthogonal to the highest root `theta`; the squared reciprocal cosine.
pub fn isoparametric_check(rs: &RootSystem) -> Rational {
    let h = rs.highest_root();
    let theta_sq = rs.norm_sq(h);
    (0..rs.num_positive())
        .filter_map(|i| {
            let ip = rs.inner_idx(i, h);
            if ip.is_zero() {
                None
            } else {
                Some(rs.norm_sq(i) * theta_sq / (ip * ip))
            }
        })
        .max()
        .unwrap_or_else(Rational::zero)
}

/// Number of positive roots predicted by the closed-form counts.
pub fn expected_positive_count(ct: CartanType) -> usize {
    let n = ct.rank();
    match ct.family() {
        Family::A => n * (n + 1) / 2,
        Family::B | Family::C => n * n,
        Family::D => n * (n - 1),
        Family::G => 6,
        Family::F => 24,
        Family::E => match n {
            6 => 36,
            7 => 63,
            _ => 120,
        },
    }
}
