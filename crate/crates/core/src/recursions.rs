//! Coefficient tables for `V_{2t}` and `D^t(theta_4)/theta_4`, and the
//! weight sequences used by the MacMahon decompositions.
//!
//! Every table is filled one grading level at a time: each right-hand side
//! only refers to the previous level, so a single sweep is enough.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::generators::{binomial, factorial, Diagonal};
use crate::graded::{Basis, Exponents, GradedPoly};
use crate::series::{frac, rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Recursion {
    /// Integer coefficients of `V_{2t}` in `E2, E4, E6`.
    Cv,
    /// The unscaled rational version of `Cv`.
    CvTilde,
    /// `D^t(theta_4)/theta_4` in `E2^a Theta_{b,c}`.
    Cc,
    /// `D^t(theta_4)/theta_4` in `E2, G2, E4`.
    CcTilde,
    /// `CcTilde` with the `G2`-shift coefficient `(8c - 8b + 7)/24`.
    CcTildePrinted,
}

impl Recursion {
    pub fn id(self) -> &'static str {
        match self {
            Recursion::Cv => "cv",
            Recursion::CvTilde => "cv_tilde",
            Recursion::Cc => "cc",
            Recursion::CcTilde => "cc_tilde",
            Recursion::CcTildePrinted => "cc_tilde_printed",
        }
    }

    pub fn level(self, (a, b, c): Exponents) -> u32 {
        match self {
            Recursion::Cv | Recursion::CvTilde => a + 2 * b + 3 * c,
            Recursion::Cc => a + b + c,
            Recursion::CcTilde | Recursion::CcTildePrinted => a + b + 2 * c,
        }
    }

    pub fn basis(self) -> Basis {
        match self {
            Recursion::Cv | Recursion::CvTilde => Basis::E,
            Recursion::Cc => Basis::Theta(Diagonal::Plain),
            Recursion::CcTilde | Recursion::CcTildePrinted => Basis::G,
        }
    }

    fn keys_at(self, level: u32) -> Vec<Exponents> {
        let mut keys = Vec::new();
        for a in 0..=level {
            for b in 0..=level {
                for c in 0..=level {
                    let k = (a, b, c);
                    if self.level(k) != level || (self == Recursion::Cc && b > c) {
                        continue;
                    }
                    keys.push(k);
                }
            }
        }
        keys
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffTable {
    recursion: Recursion,
    entries: BTreeMap<Exponents, BigRational>,
    max_weight: u32,
}

impl CoeffTable {
    fn build(recursion: Recursion, max_weight: u32) -> Self {
        let mut table = Self {
            recursion,
            entries: BTreeMap::new(),
            max_weight,
        };
        table.entries.insert((0, 0, 0), BigRational::one());
        for level in 1..=max_weight {
            let row: Vec<_> = recursion
                .keys_at(level)
                .into_iter()
                .map(|k| (k, table.step(k)))
                .collect();
            table.entries.extend(row);
        }
        table
    }

    fn step(&self, (a, b, c): Exponents) -> BigRational {
        let (a, b, c) = (a as i64, b as i64, c as i64);
        let g = |x, y, z| self.get(x, y, z);
        match self.recursion {
            Recursion::Cv => {
                rat(2 * a + 8 * b + 12 * c - 1) * g(a - 1, b, c)
                    - rat(2 * (a + 1)) * g(a + 1, b - 1, c)
                    - rat(8 * (b + 1)) * g(a, b + 1, c - 1)
                    - rat(12 * (c + 1)) * g(a, b - 2, c + 1)
            }
            Recursion::CvTilde => {
                frac(2 * a + 8 * b + 12 * c - 1, 24) * g(a - 1, b, c)
                    - frac(a + 1, 12) * g(a + 1, b - 1, c)
                    - frac(b + 1, 3) * g(a, b + 1, c - 1)
                    - frac(c + 1, 2) * g(a, b - 2, c + 1)
            }
            Recursion::Cc => {
                frac(2 * a + 4 * b + 4 * c - 1, 24) * g(a - 1, b, c)
                    + frac(20 * c - 4 * b + 3, 24) * g(a, b - 1, c)
                    + frac(20 * b - 4 * c + 3, 24) * g(a, b, c - 1)
                    - frac(7 * (a + 1), 6) * g(a + 1, b - 1, c - 1)
                    - frac(a + 1, 12) * g(a + 1, b - 2, c)
                    - frac(a + 1, 12) * g(a + 1, b, c - 2)
            }
            Recursion::CcTilde | Recursion::CcTildePrinted => {
                let shift = if self.recursion == Recursion::CcTilde {
                    24 * c
                } else {
                    8 * c
                };
                frac(2 * a + 4 * b + 8 * c - 1, 24) * g(a - 1, b, c)
                    + frac(shift - 8 * b + 7, 24) * g(a, b - 1, c)
                    - frac(a + 1, 12) * g(a + 1, b, c - 1)
                    + frac(b + 1, 6) * g(a, b + 1, c - 1)
                    - frac(4 * (c + 1), 3) * g(a, b - 3, c + 1)
            }
        }
    }

    /// Entry lookup; negative indices and entries beyond the table read as 0.
    /// `Cc` lookups are canonicalized to `b <= c`.
    pub fn get(&self, a: i64, b: i64, c: i64) -> BigRational {
        if a < 0 || b < 0 || c < 0 {
            return BigRational::zero();
        }
        let (b, c) = if self.recursion == Recursion::Cc && b > c {
            (c, b)
        } else {
            (b, c)
        };
        self.entries
            .get(&(a as u32, b as u32, c as u32))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn recursion(&self) -> Recursion {
        self.recursion
    }

    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    pub fn entries(&self) -> &BTreeMap<Exponents, BigRational> {
        &self.entries
    }

    /// The level-`t` entries as a polynomial in the table's basis.
    pub fn slice(&self, t: u32) -> GradedPoly {
        GradedPoly::from_terms(
            self.recursion.basis(),
            self.entries
                .iter()
                .filter(|(&k, _)| self.recursion.level(k) == t)
                .map(|(&k, v)| (k, v.clone())),
        )
    }

    /// `alpha,beta,gamma,num,den` rows in key order.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("alpha,beta,gamma,num,den\n");
        for (&(a, b, c), v) in &self.entries {
            let _ = writeln!(out, "{a},{b},{c},{},{}", v.numer(), v.denom());
        }
        out
    }
}

pub fn cv_table(t_max: u32) -> CoeffTable {
    CoeffTable::build(Recursion::Cv, t_max)
}

pub fn cv_tilde_table(t_max: u32) -> CoeffTable {
    CoeffTable::build(Recursion::CvTilde, t_max)
}

pub fn cc_table(t_max: u32) -> CoeffTable {
    CoeffTable::build(Recursion::Cc, t_max)
}

pub fn cc_tilde_table(t_max: u32) -> CoeffTable {
    CoeffTable::build(Recursion::CcTilde, t_max)
}

pub fn cc_tilde_printed_table(t_max: u32) -> CoeffTable {
    CoeffTable::build(Recursion::CcTildePrinted, t_max)
}

/// `e_k(values)` by the one-pass recurrence.
pub fn elementary_symmetric(values: &[BigRational], k: usize) -> Result<BigRational> {
    if k > values.len() {
        return Err(Error::InvalidArgument(format!(
            "e_{k} needs at least {k} values, got {}",
            values.len()
        )));
    }
    let mut e = vec![BigRational::zero(); k + 1];
    e[0] = BigRational::one();
    for x in values {
        for j in (1..=k).rev() {
            let add = &e[j - 1] * x;
            e[j] += add;
        }
    }
    Ok(e.swap_remove(k))
}

/// `v_t(k) = e_{t-k}(0^2, 1^2, ..., (t-1)^2)` for `k = 1..=t`, cross-checked
/// against `v_t(k) = (t-1)^2 v_{t-1}(k) + v_{t-1}(k-1)`.
pub fn v_weights(t: usize) -> Result<Vec<BigRational>> {
    if t == 0 {
        return Err(Error::InvalidArgument("v_t needs t >= 1".into()));
    }
    let squares: Vec<BigRational> = (0..t as i64).map(|l| rat(l * l)).collect();
    let closed = (1..=t)
        .map(|k| elementary_symmetric(&squares, t - k))
        .collect::<Result<Vec<_>>>()?;
    // rec[k] holds v_s(k) for the current s, index 0 unused
    let mut rec = vec![BigRational::zero(); t + 1];
    rec[1] = BigRational::one();
    for s in 2..=t {
        let sq = rat(((s - 1) * (s - 1)) as i64);
        for k in (1..=s).rev() {
            rec[k] = &sq * &rec[k] + &rec[k - 1];
        }
    }
    if closed[..] != rec[1..] {
        return Err(Error::Mismatch(format!(
            "v_{t}: closed form and recurrence disagree"
        )));
    }
    Ok(closed)
}

/// `w_a(t)` for `a = 0..=t`.
pub fn w_weights(t: usize) -> Vec<BigRational> {
    let pre = BigRational::new(
        binomial(2 * t as u64, t as u64),
        BigInt::from(16).pow(t as u32) * BigInt::from(2 * t + 1),
    );
    let inv_sq: Vec<BigRational> = (0..t as i64)
        .map(|l| frac(1, (2 * l + 1) * (2 * l + 1)))
        .collect();
    (0..=t)
        .map(|a| &pre * elementary_symmetric(&inv_sq, a).expect("a <= t"))
        .collect()
}

/// `(1 + 4b + 6c)_{2a} / (2^a a!)`.
pub fn cv_closed_ratio(a: u32, b: u32, c: u32) -> BigRational {
    let x = 1 + 4 * b as i64 + 6 * c as i64;
    let rising: BigInt = (0..2 * a as i64).map(|i| BigInt::from(x + i)).product();
    BigRational::new(rising, BigInt::from(2).pow(a) * factorial(a as u64))
}
