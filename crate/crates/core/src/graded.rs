//! Graded polynomial algebra over the generators of quasimodular forms.
//!
//! Four bases are supported. An exponent triple `(a, b, c)` means
//!
//! | basis   | monomial                  | weight          |
//! |---------|---------------------------|-----------------|
//! | `E`     | `E2^a E4^b E6^c`          | `2a + 4b + 6c`  |
//! | `Theta` | `E2^a Theta_{b,c}`, b <= c | `2a + 2b + 2c`  |
//! | `G`     | `E2^a G2^b E4^c`          | `2a + 2b + 4c`  |
//! | `XY`    | `E2^a X^b Y^c`            | `2a + 2b + 2c`  |
//!
//! with `X = theta_2^4` and `Y = theta_3^4`. All Theta-basis algebra goes
//! through the symmetric `XY` form; the Theta basis carries its own
//! [`Diagonal`] convention for `Theta_{r,r}`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::generators::{
    bernoulli, e2, e4, e6, eisenstein, factorial, g2, theta, Diagonal, ThetaVariant,
};
use crate::partitions::partitions_of;
use crate::series::{frac, rat, TruncatedSeries};

pub type Exponents = (u32, u32, u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    E,
    Theta(Diagonal),
    G,
    XY,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::E => "E",
            Basis::Theta(Diagonal::Plain) => "Theta(plain)",
            Basis::Theta(Diagonal::Doubled) => "Theta(doubled)",
            Basis::G => "G",
            Basis::XY => "XY",
        }
    }

    /// Modular weight of a monomial.
    pub fn weight(self, (a, b, c): Exponents) -> u32 {
        match self {
            Basis::E => 2 * a + 4 * b + 6 * c,
            Basis::Theta(_) | Basis::XY => 2 * (a + b + c),
            Basis::G => 2 * a + 2 * b + 4 * c,
        }
    }

    /// Every monomial of weight at most `2t`, ascending lexicographically.
    pub fn monomials(self, t: u32) -> Vec<Exponents> {
        let mut out = Vec::new();
        for a in 0..=t {
            for b in 0..=t {
                for c in 0..=t {
                    let key = (a, b, c);
                    if self.weight(key) > 2 * t {
                        continue;
                    }
                    if matches!(self, Basis::Theta(_)) && b > c {
                        continue;
                    }
                    out.push(key);
                }
            }
        }
        out
    }
}

/// Sparse polynomial in one of the bases; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPoly {
    basis: Basis,
    terms: BTreeMap<Exponents, BigRational>,
}

impl GradedPoly {
    pub fn zero(basis: Basis) -> Self {
        Self {
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(basis: Basis) -> Self {
        Self::monomial(basis, (0, 0, 0), rat(1))
    }

    pub fn monomial(basis: Basis, key: Exponents, c: BigRational) -> Self {
        let mut p = Self::zero(basis);
        p.add_term(key, c);
        p
    }

    pub fn from_terms<I>(basis: Basis, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, BigRational)>,
    {
        let mut p = Self::zero(basis);
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    /// Adds `c` to the coefficient of `key`, canonicalizing Theta keys.
    pub fn add_term(&mut self, key: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let key = match self.basis {
            Basis::Theta(_) if key.1 > key.2 => (key.0, key.2, key.1),
            _ => key,
        };
        let entry = self.terms.entry(key).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, BigRational> {
        &self.terms
    }

    pub fn coefficient(&self, key: Exponents) -> BigRational {
        self.terms
            .get(&key)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_weight(&self) -> u32 {
        self.terms
            .keys()
            .map(|&k| self.basis.weight(k))
            .max()
            .unwrap_or(0)
    }

    /// The part of exact weight `w`.
    pub fn homogeneous_part(&self, w: u32) -> Self {
        Self::from_terms(
            self.basis,
            self.terms
                .iter()
                .filter(|(&k, _)| self.basis.weight(k) == w)
                .map(|(&k, c)| (k, c.clone())),
        )
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_basis(other)?;
        let mut out = self.clone();
        for (&k, c) in &other.terms {
            out.add_term(k, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_terms(self.basis, self.terms.iter().map(|(&k, v)| (k, v * c)))
    }

    /// Product; Theta-basis operands are multiplied through the XY form.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_basis(other)?;
        if let Basis::Theta(diag) = self.basis {
            return self.to_xy()?.mul(&other.to_xy()?)?.from_xy(diag);
        }
        let mut out = Self::zero(self.basis);
        for (&(a, b, c), x) in &self.terms {
            for (&(d, e, f), y) in &other.terms {
                out.add_term((a + d, b + e, c + f), x * y);
            }
        }
        Ok(out)
    }

    fn same_basis(&self, other: &Self) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::WrongBasis {
                expected: self.basis.name(),
                found: other.basis.name(),
            });
        }
        Ok(())
    }

    fn expect_basis(&self, ok: bool, expected: &'static str) -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(Error::WrongBasis {
                expected,
                found: self.basis.name(),
            })
        }
    }

    /// Theta basis to the symmetric XY form (identity on XY input).
    pub fn to_xy(&self) -> Result<Self> {
        let diag = match self.basis {
            Basis::XY => return Ok(self.clone()),
            Basis::Theta(d) => d,
            _ => {
                return Err(Error::WrongBasis {
                    expected: "Theta",
                    found: self.basis.name(),
                })
            }
        };
        let mut out = Self::zero(Basis::XY);
        for (&(a, b, c), v) in &self.terms {
            if b == c {
                out.add_term((a, b, b), v * rat(diag.factor()));
            } else {
                out.add_term((a, b, c), v.clone());
                out.add_term((a, c, b), v.clone());
            }
        }
        Ok(out)
    }

    /// Symmetric XY form back to the Theta basis with the given convention.
    pub fn from_xy(&self, diag: Diagonal) -> Result<Self> {
        self.expect_basis(self.basis == Basis::XY, "XY")?;
        if !self.is_symmetric() {
            return Err(Error::InvalidArgument(
                "XY polynomial is not symmetric in X and Y".into(),
            ));
        }
        let mut out = Self::zero(Basis::Theta(diag));
        for (&(a, b, c), v) in &self.terms {
            if b < c {
                out.add_term((a, b, c), v.clone());
            } else if b == c {
                out.add_term((a, b, c), v / rat(diag.factor()));
            }
        }
        Ok(out)
    }

    /// For XY polynomials: invariance under `X <-> Y`.
    pub fn is_symmetric(&self) -> bool {
        self.terms
            .iter()
            .all(|(&(a, b, c), v)| self.terms.get(&(a, c, b)) == Some(v))
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = match self.basis {
            Basis::E => ["E2", "E4", "E6"],
            Basis::G => ["E2", "G2", "E4"],
            Basis::XY => ["E2", "X", "Y"],
            Basis::Theta(_) => ["E2", "", ""],
        };
        let mut first = true;
        for (&(a, b, c), v) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({v})")?;
            if a > 0 {
                write!(f, "*{}^{a}", names[0])?;
            }
            if let Basis::Theta(_) = self.basis {
                write!(f, "*Theta[{b},{c}]")?;
            } else {
                if b > 0 {
                    write!(f, "*{}^{b}", names[1])?;
                }
                if c > 0 {
                    write!(f, "*{}^{c}", names[2])?;
                }
            }
        }
        Ok(())
    }
}

/// Lazily extended powers of the three generators of a basis.
struct PowerCache {
    gens: [TruncatedSeries; 3],
    powers: [Vec<TruncatedSeries>; 3],
}

impl PowerCache {
    fn new(basis: Basis, order: usize) -> Self {
        let gens = match basis {
            Basis::E => [e2(order), e4(order), e6(order)],
            Basis::G => [e2(order), g2(order), e4(order)],
            Basis::XY | Basis::Theta(_) => [
                e2(order),
                theta(ThetaVariant::TwoPow4, order),
                theta(ThetaVariant::Three, order).pow(4),
            ],
        };
        let powers = [
            vec![TruncatedSeries::one(order)],
            vec![TruncatedSeries::one(order)],
            vec![TruncatedSeries::one(order)],
        ];
        Self { gens, powers }
    }

    fn power(&mut self, i: usize, e: u32) -> &TruncatedSeries {
        while self.powers[i].len() <= e as usize {
            let next = self.powers[i].last().expect("seeded").mul(&self.gens[i]);
            self.powers[i].push(next);
        }
        &self.powers[i][e as usize]
    }

    fn monomial(&mut self, (a, b, c): Exponents) -> TruncatedSeries {
        let x = self.power(0, a).clone();
        let y = self.power(1, b).clone();
        x.mul(&y).mul(self.power(2, c))
    }
}

/// Evaluates the polynomial as a q-series of the given order.
pub fn eval_poly(p: &GradedPoly, order: usize) -> TruncatedSeries {
    let p = match p.basis {
        Basis::Theta(_) => p.to_xy().expect("theta basis"),
        _ => p.clone(),
    };
    let mut cache = PowerCache::new(p.basis, order);
    let mut out = TruncatedSeries::zero(order);
    for (&k, c) in &p.terms {
        out = out.add(&cache.monomial(k).scale(c));
    }
    out
}

/// Extends `D` from the images of the three generators by the Leibniz rule.
fn derive_with(p: &GradedPoly, images: &[GradedPoly; 3]) -> GradedPoly {
    let mut out = GradedPoly::zero(p.basis);
    for (&key, c) in &p.terms {
        let exps = [key.0, key.1, key.2];
        for i in 0..3 {
            if exps[i] == 0 {
                continue;
            }
            let mut rest = exps;
            rest[i] -= 1;
            let factor = c * rat(exps[i] as i64);
            for (&(a, b, d), v) in &images[i].terms {
                out.add_term((a + rest[0], b + rest[1], d + rest[2]), &factor * v);
            }
        }
    }
    out
}

fn poly(basis: Basis, terms: &[(Exponents, BigRational)]) -> GradedPoly {
    GradedPoly::from_terms(basis, terms.iter().cloned())
}

/// `D` on `C[E2, E4, E6]` by Ramanujan's three rules.
pub fn d_e_basis(p: &GradedPoly) -> Result<GradedPoly> {
    p.expect_basis(p.basis == Basis::E, "E")?;
    let b = Basis::E;
    let images = [
        poly(b, &[((2, 0, 0), frac(1, 12)), ((0, 1, 0), frac(-1, 12))]),
        poly(b, &[((1, 1, 0), frac(1, 3)), ((0, 0, 1), frac(-1, 3))]),
        poly(b, &[((1, 0, 1), frac(1, 2)), ((0, 2, 0), frac(-1, 2))]),
    ];
    Ok(derive_with(p, &images))
}

/// `D` on the XY form (and on the Theta basis through it), using
/// `D X = X(E2 - X + 5Y)/6`, `D Y = Y(E2 + 5X - Y)/6` and
/// `D E2 = (E2^2 - E4)/12` with `E4 = X^2 + 14XY + Y^2`.
pub fn d_theta_basis(p: &GradedPoly) -> Result<GradedPoly> {
    let diag = match p.basis {
        Basis::XY => None,
        Basis::Theta(d) => Some(d),
        _ => {
            return Err(Error::WrongBasis {
                expected: "Theta or XY",
                found: p.basis.name(),
            })
        }
    };
    let b = Basis::XY;
    let images = [
        poly(
            b,
            &[
                ((2, 0, 0), frac(1, 12)),
                ((0, 2, 0), frac(-1, 12)),
                ((0, 1, 1), frac(-14, 12)),
                ((0, 0, 2), frac(-1, 12)),
            ],
        ),
        poly(
            b,
            &[
                ((1, 1, 0), frac(1, 6)),
                ((0, 2, 0), frac(-1, 6)),
                ((0, 1, 1), frac(5, 6)),
            ],
        ),
        poly(
            b,
            &[
                ((1, 0, 1), frac(1, 6)),
                ((0, 1, 1), frac(5, 6)),
                ((0, 0, 2), frac(-1, 6)),
            ],
        ),
    ];
    let d = derive_with(&p.to_xy()?, &images);
    match diag {
        None => Ok(d),
        Some(diag) => d.from_xy(diag),
    }
}

/// `D` on `C[E2, G2, E4]`.
pub fn d_g_basis(p: &GradedPoly) -> Result<GradedPoly> {
    p.expect_basis(p.basis == Basis::G, "G")?;
    let b = Basis::G;
    let images = [
        poly(b, &[((2, 0, 0), frac(1, 12)), ((0, 0, 1), frac(-1, 12))]),
        poly(
            b,
            &[
                ((1, 1, 0), frac(1, 6)),
                ((0, 2, 0), frac(-2, 6)),
                ((0, 0, 1), frac(1, 6)),
            ],
        ),
        poly(
            b,
            &[
                ((1, 0, 1), frac(1, 3)),
                ((0, 3, 0), frac(-4, 3)),
                ((0, 1, 1), frac(3, 3)),
            ],
        ),
    ];
    Ok(derive_with(p, &images))
}

/// Formal derivative with respect to `E2` in the E basis.
pub fn partial_e2(p: &GradedPoly) -> Result<GradedPoly> {
    p.expect_basis(p.basis == Basis::E, "E")?;
    Ok(GradedPoly::from_terms(
        Basis::E,
        p.terms
            .iter()
            .filter(|(&(a, _, _), _)| a > 0)
            .map(|(&(a, b, c), v)| ((a - 1, b, c), v * rat(a as i64))),
    ))
}

/// Extra coefficients sampled beyond the number of unknowns.
pub const GUARD_BAND: usize = 16;

/// Writes `f` exactly as a combination of the basis monomials of weight
/// at most `2t`, then checks the combination against every coefficient of `f`.
pub fn express_in_basis(f: &TruncatedSeries, t: u32, basis: Basis) -> Result<GradedPoly> {
    if basis == Basis::XY {
        return Err(Error::WrongBasis {
            expected: "E, Theta or G",
            found: basis.name(),
        });
    }
    let monos = basis.monomials(t);
    let m = monos.len();
    let required = m + GUARD_BAND;
    let order = f.order();
    if order < required {
        return Err(Error::OrderTooSmall { order, required });
    }
    let cols: Vec<TruncatedSeries> = {
        let xy_basis = match basis {
            Basis::Theta(_) => Basis::XY,
            b => b,
        };
        let mut cache = PowerCache::new(xy_basis, order);
        monos
            .iter()
            .map(|&k| match basis {
                Basis::Theta(_) => {
                    let xy = GradedPoly::monomial(basis, k, rat(1))
                        .to_xy()
                        .expect("theta");
                    xy.terms
                        .iter()
                        .fold(TruncatedSeries::zero(order), |acc, (&kk, c)| {
                            acc.add(&cache.monomial(kk).scale(c))
                        })
                }
                _ => cache.monomial(k),
            })
            .collect()
    };
    let rows: Vec<Vec<BigRational>> = (0..required)
        .map(|n| cols.iter().map(|c| c.coeffs()[n].clone()).collect())
        .collect();
    let rhs: Vec<BigRational> = f.coeffs()[..required].to_vec();
    let x = linalg::solve_exact(&rows, &rhs).ok_or(Error::Underdetermined)?;
    let mut fit = TruncatedSeries::zero(order);
    for (c, v) in cols.iter().zip(&x) {
        if !v.is_zero() {
            fit = fit.add(&c.scale(v));
        }
    }
    if let Some((index, _, _)) = fit.first_difference(f) {
        return Err(Error::NotInSpan { index });
    }
    Ok(GradedPoly::from_terms(basis, monos.into_iter().zip(x)))
}

pub mod linalg {
    //! Fraction-free (Bareiss) elimination for overdetermined exact systems.

    use super::*;

    /// Solves `rows * x = rhs` for a system of full column rank, using the
    /// pivot rows only; returns `None` if the columns are dependent.
    /// Consistency of the non-pivot rows is left to the caller.
    pub fn solve_exact(rows: &[Vec<BigRational>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
        let n = rows.first().map_or(0, Vec::len);
        let mut a: Vec<Vec<BigInt>> = rows
            .iter()
            .zip(rhs)
            .map(|(row, r)| {
                let den = row
                    .iter()
                    .chain(std::iter::once(r))
                    .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
                row.iter()
                    .chain(std::iter::once(r))
                    .map(|v| v.numer() * (&den / v.denom()))
                    .collect()
            })
            .collect();
        let m = a.len();
        let mut prev = BigInt::one();
        for k in 0..n {
            let p = (k..m).find(|&i| !a[i][k].is_zero())?;
            a.swap(k, p);
            for i in k + 1..m {
                for j in k + 1..=n {
                    let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        let mut x = vec![BigRational::zero(); n];
        for k in (0..n).rev() {
            let mut acc = BigRational::from_integer(a[k][n].clone());
            for j in k + 1..n {
                acc -= BigRational::from_integer(a[k][j].clone()) * &x[j];
            }
            x[k] = acc / BigRational::from_integer(a[k][k].clone());
        }
        Some(x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PeSign {
    Plus,
    Minus,
}

/// Partition Eisenstein series
/// `sum_{lambda |- t} prod_s (1/m_s!) (+-B_{2s} E_{2s} / ((2s)(2s)!))^{m_s}`.
pub fn partition_eisenstein(t: u32, sign: PeSign, order: usize) -> TruncatedSeries {
    let eis: Vec<TruncatedSeries> = (1..=t as usize)
        .map(|s| eisenstein(s, order).expect("s >= 1"))
        .collect();
    let mut out = TruncatedSeries::zero(order);
    for p in partitions_of(t as u64) {
        let mut term = TruncatedSeries::one(order);
        let mut coeff = BigRational::one();
        for (s, m) in p.iter() {
            let s2 = 2 * s;
            let mut base = bernoulli(s2 as usize)
                / BigRational::from_integer(BigInt::from(s2) * factorial(s2));
            if sign == PeSign::Minus {
                base = -base;
            }
            for _ in 0..m {
                coeff *= &base;
            }
            coeff /= BigRational::from_integer(factorial(m));
            term = term.mul(&eis[s as usize - 1].pow(m as u32));
        }
        out = out.add(&term.scale(&coeff));
    }
    out
}
