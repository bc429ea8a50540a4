//! Truncated formal power series in `q` with exact rational coefficients.
//!
//! A [`TruncatedSeries`] of order `N` stores the coefficients of
//! `q^0, ..., q^N`. Binary operations truncate to the smaller operand order,
//! so series built at different precisions compose without error.
//!
//! Multiplication and inversion clear denominators first and run the inner
//! loops over big integers; only the final coefficients are normalized.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense truncated power series `sum_{n=0}^{order} c_n q^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    /// Builds a series of the given order, zero-filling missing high terms.
    pub fn new(mut coeffs: Vec<BigRational>, order: usize) -> Result<Self> {
        if coeffs.len() > order + 1 {
            return Err(Error::TooManyCoefficients {
                len: coeffs.len(),
                order,
            });
        }
        coeffs.resize(order + 1, BigRational::zero());
        Ok(Self { coeffs })
    }

    /// Integer coefficients; convenient for literals in tests and generators.
    pub fn from_ints<I>(coeffs: I, order: usize) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<BigInt>,
    {
        let coeffs = coeffs
            .into_iter()
            .map(|c| BigRational::from_integer(c.into()))
            .collect();
        Self::new(coeffs, order)
    }

    /// Builds from `(exponent, coefficient)` pairs, dropping exponents above `order`.
    pub fn from_sparse<I>(terms: I, order: usize) -> Self
    where
        I: IntoIterator<Item = (usize, BigRational)>,
    {
        let mut s = Self::zero(order);
        for (n, c) in terms {
            if n <= order {
                s.coeffs[n] += c;
            }
        }
        s
    }

    pub(crate) fn from_vec_unchecked(coeffs: Vec<BigRational>) -> Self {
        debug_assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    pub(crate) fn from_int_vec(coeffs: Vec<BigInt>) -> Self {
        Self::from_vec_unchecked(coeffs.into_iter().map(BigRational::from_integer).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(BigRational::one(), order)
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The monomial `c q^n` (zero if `n > order`).
    pub fn monomial(c: BigRational, n: usize, order: usize) -> Self {
        Self::from_sparse([(n, c)], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigRational> {
        self.coeffs
    }

    pub fn coefficient(&self, n: usize) -> Result<&BigRational> {
        self.coeffs.get(n).ok_or(Error::IndexOutOfRange {
            index: n,
            order: self.order(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Exponent of the first nonzero coefficient, if any.
    pub fn lowest_exponent(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Drops every coefficient above `order` (no-op when already shorter).
    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        Self::from_vec_unchecked(self.coeffs[..=n].to_vec())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::from_vec_unchecked(
            (0..=n)
                .map(|i| &self.coeffs[i] + &other.coeffs[i])
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::from_vec_unchecked(
            (0..=n)
                .map(|i| &self.coeffs[i] - &other.coeffs[i])
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::from_vec_unchecked(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.order());
        }
        Self::from_vec_unchecked(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&BigRational::from_integer(c.into()))
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let (a, da) = integer_parts(&self.coeffs[..=n]);
        let (b, db) = integer_parts(&other.coeffs[..=n]);
        let c = convolve(&a, &b, n);
        let den = da * db;
        Self::from_vec_unchecked(
            c.into_iter()
                .map(|x| BigRational::new(x, den.clone()))
                .collect(),
        )
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn invert(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::NotInvertible);
        }
        let n = self.order();
        let (a, d) = integer_parts(&self.coeffs);
        // 1/self = d * (1/a)
        let d = BigRational::from_integer(d);
        if a[0].abs().is_one() {
            let a0 = a[0].clone();
            let nz: Vec<usize> = (1..=n).filter(|&k| !a[k].is_zero()).collect();
            let mut b: Vec<BigInt> = Vec::with_capacity(n + 1);
            b.push(a0.clone());
            for m in 1..=n {
                let mut acc = BigInt::zero();
                for &k in nz.iter().take_while(|&&k| k <= m) {
                    acc += &a[k] * &b[m - k];
                }
                // 1/a0 == a0 for a0 = +-1
                b.push(-(acc * &a0));
            }
            return Ok(Self::from_int_vec(b).scale(&d));
        }
        let a: Vec<BigRational> = a.into_iter().map(BigRational::from_integer).collect();
        let inv0 = a[0].recip();
        let mut b = Vec::with_capacity(n + 1);
        b.push(inv0.clone());
        for m in 1..=n {
            let mut acc = BigRational::zero();
            for k in 1..=m {
                if !a[k].is_zero() {
                    acc += &a[k] * &b[m - k];
                }
            }
            b.push(-(acc * &inv0));
        }
        Ok(Self::from_vec_unchecked(b).scale(&d))
    }

    /// The Euler operator `D = q d/dq`: `c_n -> n c_n`.
    pub fn derive(&self) -> Self {
        Self::from_vec_unchecked(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c * BigRational::from_integer(n.into()))
                .collect(),
        )
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// `f(q) -> f(q^k)`, keeping the order.
    pub fn substitute_power(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroSubstitution);
        }
        let n = self.order();
        let mut out = Self::zero(n);
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = i * k;
            if e > n {
                break;
            }
            out.coeffs[e] = c.clone();
        }
        Ok(out)
    }

    /// Multiplies by `q^k`, dropping terms that leave the window.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for i in 0..=n.saturating_sub(k) {
            if i + k <= n {
                out.coeffs[i + k] = self.coeffs[i].clone();
            }
        }
        out
    }

    pub fn reduce_mod(&self, m: u64) -> Result<ModSeries> {
        if m < 2 {
            return Err(Error::BadModulus(m));
        }
        let mb = BigInt::from(m);
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(index, c)| {
                residue(c, &mb).ok_or_else(|| Error::DenominatorNotInvertible {
                    index,
                    denominator: c.denom().to_string(),
                    modulus: m,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ModSeries { modulus: m, coeffs })
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Index and values of the first coefficient where the two series differ,
    /// compared up to the smaller order.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, BigRational, BigRational)> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .enumerate()
            .find(|(_, (a, b))| a != b)
            .map(|(n, (a, b))| (n, a.clone(), b.clone()))
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})q")?,
                _ => write!(f, "({c})q^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&TruncatedSeries> for &TruncatedSeries {
            type Output = TruncatedSeries;
            fn $method(self, rhs: &TruncatedSeries) -> TruncatedSeries {
                TruncatedSeries::$method(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries::neg(self)
    }
}

/// Coefficients reduced modulo `modulus`, each in `[0, modulus)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModSeries {
    modulus: u64,
    coeffs: Vec<u64>,
}

impl ModSeries {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn residues(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus, "moduli differ");
        let m = self.modulus as u128;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| ((a as u128 + b as u128) % m) as u64)
            .collect();
        Self {
            modulus: self.modulus,
            coeffs,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus, "moduli differ");
        let m = self.modulus as u128;
        let n = self.order().min(other.order());
        let mut coeffs = vec![0u128; n + 1];
        for i in 0..=n {
            if self.coeffs[i] == 0 {
                continue;
            }
            for j in 0..=n - i {
                coeffs[i + j] =
                    (coeffs[i + j] + self.coeffs[i] as u128 * other.coeffs[j] as u128) % m;
            }
        }
        Self {
            modulus: self.modulus,
            coeffs: coeffs.into_iter().map(|c| c as u64).collect(),
        }
    }
}

fn residue(c: &BigRational, m: &BigInt) -> Option<u64> {
    let den = c.denom().mod_floor(m);
    let g = den.extended_gcd(m);
    if !g.gcd.is_one() {
        return None;
    }
    let r = (c.numer() * g.x).mod_floor(m);
    r.to_u64()
}

/// Splits rationals into integer numerators over their common denominator.
pub(crate) fn integer_parts(coeffs: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let mut den = BigInt::one();
    for c in coeffs {
        if !c.denom().is_one() {
            den = den.lcm(c.denom());
        }
    }
    let nums = coeffs
        .iter()
        .map(|c| {
            if c.denom() == &den {
                c.numer().clone()
            } else {
                c.numer() * (&den / c.denom())
            }
        })
        .collect();
    (nums, den)
}

/// Integer convolution of `a` and `b` up to index `n`, skipping zero terms.
pub(crate) fn convolve(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    let bnz: Vec<usize> = (0..b.len().min(n + 1))
        .filter(|&j| !b[j].is_zero())
        .collect();
    let mut c = vec![BigInt::zero(); n + 1];
    for (i, ai) in a.iter().enumerate().take(n + 1) {
        if ai.is_zero() {
            continue;
        }
        for &j in bnz.iter().take_while(|&&j| i + j <= n) {
            c[i + j] += ai * &b[j];
        }
    }
    c
}

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Shorthand for `num/den`.
pub fn frac(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}
