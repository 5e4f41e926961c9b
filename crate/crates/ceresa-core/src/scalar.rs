//! Sparse multivariate polynomials over arbitrary-precision rationals.
//!
//! A [`Scalar`] is the element type of the coefficient ring used everywhere
//! in this crate: a finite map from monomials (exponent vectors over a
//! declared variable set) to nonzero `BigRational` coefficients. A scalar
//! with no variables is a plain rational. All arithmetic is exact.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::Write as _;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponent vector over the declared variable list.
///
/// Ordered graded-lexicographically: higher total degree first, ties broken
/// by comparing exponent vectors lexicographically (an earlier variable with
/// a higher exponent wins). `Ord` is ascending in that order, so the leading
/// monomial of a polynomial is the maximum key.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => self.0.cmp(&other.0),
            ord => ord,
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of the ring `Q[x_1, ..., x_m]`: a sparse map from monomials to
/// nonzero rational coefficients. Zero coefficients are never stored.
///
/// Scalars with `nvars == 0` are plain rationals and act as constants on
/// scalars of any arity; mixing two nonzero arities panics (it is always a
/// caller bug).
///
/// `Ord` is a structural order (arity, then term map); it exists only so
/// collections of scalars can be sorted deterministically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Scalar {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Scalar {
    pub fn zero(nvars: usize) -> Self {
        Scalar { nvars, terms: BTreeMap::new() }
    }

    pub fn from_rational(r: BigRational, nvars: usize) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(Monomial::one(nvars), r);
        }
        Scalar { nvars, terms }
    }

    pub fn from_int(v: i64, nvars: usize) -> Self {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(v)), nvars)
    }

    pub fn from_bigint(v: BigInt, nvars: usize) -> Self {
        Scalar::from_rational(BigRational::from_integer(v), nvars)
    }

    /// The variable `x_i` as a scalar.
    pub fn var(i: usize, nvars: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(i, nvars), BigRational::one());
        Scalar { nvars, terms }
    }

    pub fn monomial(m: Monomial, coeff: BigRational, nvars: usize) -> Self {
        assert_eq!(m.0.len(), nvars);
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(m, coeff);
        }
        Scalar { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `m`, zero if absent.
    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Leading term in graded-lex order, if any.
    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// True when the scalar is a rational constant (no variable occurs).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value as a rational when [`is_constant`](Self::is_constant).
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            return Some(BigRational::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_one() {
                return Some(c.clone());
            }
        }
        None
    }

    /// Negates the scalar when its leading coefficient is negative, so the
    /// result has a positive leading coefficient. Zero stays zero.
    pub fn sign_normalized(&self) -> Scalar {
        match self.leading() {
            Some((_, c)) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }

    fn insert_add(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Promotes a constant operand (arity 0) to `nvars` variables; panics on
    /// a genuine arity clash.
    fn promote(&self, nvars: usize) -> Scalar {
        if self.nvars == nvars {
            return self.clone();
        }
        assert_eq!(self.nvars, 0, "scalar arity mismatch: {} vs {}", self.nvars, nvars);
        let terms = self
            .terms
            .values()
            .map(|c| (Monomial::one(nvars), c.clone()))
            .collect();
        Scalar { nvars, terms }
    }

    fn paired(&self, other: &Scalar) -> (Scalar, Scalar) {
        if self.nvars == other.nvars {
            (self.clone(), other.clone())
        } else if self.nvars == 0 {
            (self.promote(other.nvars), other.clone())
        } else {
            (self.clone(), other.promote(self.nvars))
        }
    }

    /// Returns the scalar viewed over `nvars` variables. Only constants
    /// (arity 0) may change arity.
    pub fn with_nvars(&self, nvars: usize) -> Scalar {
        self.promote(nvars)
    }

    pub fn scale(&self, c: &BigRational) -> Scalar {
        if c.is_zero() {
            return Scalar::zero(self.nvars);
        }
        Scalar {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Renders the polynomial with the given variable names, leading term
    /// first. Deterministic; used for canonical printing everywhere.
    pub fn render(&self, names: &[String]) -> String {
        assert!(names.len() >= self.nvars, "not enough variable names");
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(render_rational(&abs));
            }
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if e == 1 {
                    factors.push(names[i].clone());
                } else {
                    let mut s = names[i].clone();
                    let _ = write!(s, "^{e}");
                    factors.push(s);
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

fn render_rational(r: &BigRational) -> String {
    let mut s = String::new();
    if r.denom().is_one() {
        let _ = write!(s, "{}", r.numer());
    } else {
        let _ = write!(s, "{}/{}", r.numer(), r.denom());
    }
    s
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let (mut a, b) = self.paired(rhs);
        for (m, c) in b.terms {
            a.insert_add(m, c);
        }
        a
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let (mut a, b) = self.paired(rhs);
        for (m, c) in b.terms {
            a.insert_add(m, -c);
        }
        a
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let (a, b) = self.paired(rhs);
        let mut out = Scalar::zero(a.nvars);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                out.insert_add(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

/// Determinant of a square matrix of scalars by cofactor expansion.
/// Fine at the sizes this crate meets (frames of rank at most 6).
pub fn det_scalar(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    let nvars = m
        .iter()
        .flat_map(|r| r.iter())
        .map(Scalar::nvars)
        .max()
        .unwrap_or(0);
    if n == 0 {
        return Scalar::from_int(1, nvars);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Scalar::zero(nvars);
    for (col, pivot) in m[0].iter().enumerate() {
        if pivot.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Scalar>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != col)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = pivot * &det_scalar(&minor);
        if col % 2 == 0 {
            acc += &term;
        } else {
            acc -= &term;
        }
    }
    acc
}

/// Exact rank of a matrix of scalars over the fraction field, by Gaussian
/// elimination with cross-multiplication (no division).
pub fn rank_scalar(m: &[Vec<Scalar>]) -> usize {
    if m.is_empty() || m[0].is_empty() {
        return 0;
    }
    let rows = m.len();
    let cols = m[0].len();
    let mut w: Vec<Vec<Scalar>> = m.to_vec();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !w[r][col].is_zero()) else {
            continue;
        };
        w.swap(rank, p);
        let pivot = w[rank][col].clone();
        for r in rank + 1..rows {
            if w[r][col].is_zero() {
                continue;
            }
            let factor = w[r][col].clone();
            for c in col..cols {
                w[r][c] = &(&w[r][c] * &pivot) - &(&w[rank][c] * &factor);
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}
