//! Named q-series: Bernoulli numbers, divisor sums, Eisenstein series,
//! Euler products, theta series and their symmetric combinations, `G_2`,
//! Lambert series and the `H_r` sums.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::series::{rat, TruncatedSeries};

/// How `Theta_{r,r}` is read: `X^r Y^r` (plain) or `2 X^r Y^r` (doubled,
/// the literal value of the symmetric sum).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Diagonal {
    #[default]
    Plain,
    Doubled,
}

impl Diagonal {
    pub fn factor(self) -> i64 {
        match self {
            Diagonal::Plain => 1,
            Diagonal::Doubled => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaVariant {
    /// `theta_3 = sum q^{m^2}`
    Three,
    /// `theta_4 = sum (-1)^m q^{m^2}`
    Four,
    /// `theta_2^4`; `theta_2` alone has exponents in `Z/4`.
    TwoPow4,
}

/// Bernoulli numbers `B_0..=B_n` (with `B_1 = -1/2`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernoulliCache {
    values: Vec<BigRational>,
}

impl BernoulliCache {
    pub fn up_to(n: usize) -> Self {
        let mut values: Vec<BigRational> = Vec::with_capacity(n + 1);
        values.push(BigRational::one());
        for m in 1..=n {
            // sum_{k=0}^{m} C(m+1, k) B_k = 0
            let mut acc = BigRational::zero();
            let mut binom = BigInt::one();
            for (k, b) in values.iter().enumerate() {
                if !b.is_zero() {
                    acc += b * &binom;
                }
                binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
            }
            values.push(-acc / BigRational::from_integer((m + 1).into()));
        }
        Self { values }
    }

    pub fn get(&self, n: usize) -> Option<&BigRational> {
        self.values.get(n)
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }
}

pub fn bernoulli(n: usize) -> BigRational {
    BernoulliCache::up_to(n).values[n].clone()
}

pub fn divisor_power_sum(k: u32, n: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::InvalidArgument("sigma_k(0) is undefined".into()));
    }
    let mut sum = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            sum += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                sum += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    Ok(sum)
}

/// `sigma_k(n)` for `n = 0..=order` (index 0 holds 0), by sieving.
fn sigma_table(k: u32, order: usize) -> Vec<BigInt> {
    let mut table = vec![BigInt::zero(); order + 1];
    for d in 1..=order {
        let dk = BigInt::from(d).pow(k);
        for m in (d..=order).step_by(d) {
            table[m] += &dk;
        }
    }
    table
}

/// `E_{2k} = 1 - (4k / B_{2k}) sum sigma_{2k-1}(n) q^n`.
pub fn eisenstein(k: usize, order: usize) -> Result<TruncatedSeries> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "Eisenstein index must be >= 1".into(),
        ));
    }
    let b = bernoulli(2 * k);
    let factor = -BigRational::from_integer((4 * k).into()) / b;
    let sigma = sigma_table((2 * k - 1) as u32, order);
    let coeffs = sigma
        .into_iter()
        .enumerate()
        .map(|(n, s)| {
            if n == 0 {
                BigRational::one()
            } else {
                &factor * s
            }
        })
        .collect();
    TruncatedSeries::new(coeffs, order)
}

pub fn e2(order: usize) -> TruncatedSeries {
    eisenstein(1, order).expect("k = 1")
}

pub fn e4(order: usize) -> TruncatedSeries {
    eisenstein(2, order).expect("k = 2")
}

pub fn e6(order: usize) -> TruncatedSeries {
    eisenstein(3, order).expect("k = 3")
}

/// `(q^m; q^m)_inf` from the pentagonal number theorem.
pub fn euler_product(m: usize, order: usize) -> Result<TruncatedSeries> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "Euler product step must be >= 1".into(),
        ));
    }
    let mut s = TruncatedSeries::zero(order);
    let mut terms = vec![(0usize, rat(1))];
    for j in 1usize.. {
        let p1 = j * (3 * j - 1) / 2 * m;
        if p1 > order {
            break;
        }
        let sign = if j % 2 == 1 { -1 } else { 1 };
        terms.push((p1, rat(sign)));
        let p2 = j * (3 * j + 1) / 2 * m;
        if p2 <= order {
            terms.push((p2, rat(sign)));
        }
    }
    for (n, c) in terms {
        s = s.add(&TruncatedSeries::monomial(c, n, order));
    }
    Ok(s)
}

pub fn theta(variant: ThetaVariant, order: usize) -> TruncatedSeries {
    match variant {
        ThetaVariant::Three => theta_sum(order, false),
        ThetaVariant::Four => theta_sum(order, true),
        ThetaVariant::TwoPow4 => theta2_pow4(order),
    }
}

fn theta_sum(order: usize, alternating: bool) -> TruncatedSeries {
    let mut c = vec![BigInt::zero(); order + 1];
    c[0] = BigInt::one();
    for m in 1usize.. {
        let e = m * m;
        if e > order {
            break;
        }
        let v = if alternating && m % 2 == 1 { -2 } else { 2 };
        c[e] += v;
    }
    TruncatedSeries::from_int_vec(c)
}

/// `theta_2 = 2 sum_{n>=0} u^{(2n+1)^2}` with `u = q^{1/4}`; the fourth power
/// has only exponents divisible by 4, which are reindexed `u^4 -> q`.
fn theta2_pow4(order: usize) -> TruncatedSeries {
    let u_order = 4 * order + 3;
    let mut c = vec![BigInt::zero(); u_order + 1];
    for n in 0usize.. {
        let e = (2 * n + 1) * (2 * n + 1);
        if e > u_order {
            break;
        }
        c[e] = BigInt::from(2);
    }
    let in_u = TruncatedSeries::from_int_vec(c).pow(4);
    let coeffs = in_u.coeffs();
    debug_assert!(coeffs
        .iter()
        .enumerate()
        .all(|(i, x)| i % 4 == 0 || x.is_zero()));
    TruncatedSeries::from_vec_unchecked((0..=order).map(|n| coeffs[4 * n].clone()).collect())
}

/// `Theta_{r,s} = X^r Y^s + X^s Y^r` with `X = theta_2^4`, `Y = theta_3^4`.
pub fn big_theta(r: u32, s: u32, order: usize, diag: Diagonal) -> TruncatedSeries {
    let x = theta(ThetaVariant::TwoPow4, order);
    let y = theta(ThetaVariant::Three, order).pow(4);
    big_theta_from(&x, &y, r, s, diag)
}

pub(crate) fn big_theta_from(
    x: &TruncatedSeries,
    y: &TruncatedSeries,
    r: u32,
    s: u32,
    diag: Diagonal,
) -> TruncatedSeries {
    let term = |a: u32, b: u32| x.pow(a).mul(&y.pow(b));
    if r == s {
        term(r, r).scale_int(diag.factor())
    } else {
        term(r, s).add(&term(s, r))
    }
}

/// `G_2(q) = 2 E_2(q^2) - E_2(q)`.
pub fn g2(order: usize) -> TruncatedSeries {
    let e = e2(order);
    e.substitute_power(2).expect("k = 2").scale_int(2).sub(&e)
}

/// `S_j = sum_{m>=1} m^j q^m / (1 - q^m) = sum sigma_j(n) q^n`.
pub fn lambert(j: u32, order: usize) -> TruncatedSeries {
    TruncatedSeries::from_int_vec(sigma_table(j, order))
}

/// `H_r = sum_{k>=1} q^{rk} / (1 - q^k)^{2r}`, summed term by term.
pub fn h_series(r: u32, order: usize) -> Result<TruncatedSeries> {
    if r == 0 {
        return Err(Error::InvalidArgument("H_r needs r >= 1".into()));
    }
    let r = r as usize;
    let mut sum = TruncatedSeries::zero(order);
    for k in 1..=order {
        if r * k > order {
            break;
        }
        let base = TruncatedSeries::one(order).sub(&TruncatedSeries::monomial(rat(1), k, order));
        let term = base.pow(2 * r as u32).invert()?.shift(r * k);
        sum = sum.add(&term);
    }
    Ok(sum)
}

/// `sum_{k>=1} q^{tk} / (1 - q^k)^{e}`, expanded with binomial coefficients.
pub fn power_lambert(t: usize, e: usize, order: usize) -> TruncatedSeries {
    let mut c = vec![BigInt::zero(); order + 1];
    if t == 0 || e == 0 {
        // degenerate shapes are not needed by callers
        return TruncatedSeries::from_int_vec(c);
    }
    for k in 1..=order {
        if t * k > order {
            break;
        }
        // (1 - x)^{-e} = sum_m C(m + e - 1, e - 1) x^m
        let mut binom = BigInt::one();
        let mut m = 0usize;
        while t * k + k * m <= order {
            c[t * k + k * m] += &binom;
            m += 1;
            binom = binom * BigInt::from(m + e - 1) / BigInt::from(m);
        }
    }
    TruncatedSeries::from_int_vec(c)
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `C(n, k)` as a big integer (zero when `k > n`).
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut b = BigInt::one();
    for i in 0..k {
        b = b * (n - i) / (i + 1);
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::frac;

    fn ints(v: &[i64], order: usize) -> TruncatedSeries {
        TruncatedSeries::from_ints(v.iter().copied(), order).unwrap()
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), rat(1));
        assert_eq!(bernoulli(1), frac(-1, 2));
        assert_eq!(bernoulli(2), frac(1, 6));
        assert_eq!(bernoulli(4), frac(-1, 30));
        assert_eq!(bernoulli(6), frac(1, 42));
        assert_eq!(bernoulli(12), frac(-691, 2730));
        let cache = BernoulliCache::up_to(20);
        assert!((3..=20).step_by(2).all(|k| cache.get(k).unwrap().is_zero()));
        assert_eq!(cache, BernoulliCache::up_to(20));
    }

    #[test]
    fn divisor_sums() {
        assert_eq!(divisor_power_sum(1, 6).unwrap(), BigInt::from(12));
        assert_eq!(divisor_power_sum(5, 1).unwrap(), BigInt::from(1));
        assert_eq!(divisor_power_sum(3, 2).unwrap(), BigInt::from(9));
        assert_eq!(divisor_power_sum(0, 36).unwrap(), BigInt::from(9));
        assert!(divisor_power_sum(1, 0).is_err());
        let table = sigma_table(3, 50);
        for n in 1..=50u64 {
            assert_eq!(table[n as usize], divisor_power_sum(3, n).unwrap());
        }
    }

    #[test]
    fn eisenstein_prefixes() {
        assert_eq!(eisenstein(1, 3).unwrap(), ints(&[1, -24, -72, -96], 3));
        assert_eq!(eisenstein(2, 2).unwrap(), ints(&[1, 240, 2160], 2));
        assert_eq!(eisenstein(3, 1).unwrap(), ints(&[1, -504], 1));
        assert!(eisenstein(0, 3).is_err());
    }

    #[test]
    fn euler_products() {
        assert_eq!(
            euler_product(1, 7).unwrap(),
            ints(&[1, -1, -1, 0, 0, 1, 0, 1], 7)
        );
        assert_eq!(euler_product(2, 5).unwrap(), ints(&[1, 0, -1, 0, -1], 5));
        assert_eq!(euler_product(1, 0).unwrap(), TruncatedSeries::one(0));
        assert!(euler_product(0, 4).is_err());
    }

    #[test]
    fn euler_product_matches_naive_product() {
        let n = 120;
        for m in [1usize, 2, 3, 5] {
            let mut naive = TruncatedSeries::one(n);
            for k in 1..=n / m {
                let f = TruncatedSeries::one(n).sub(&TruncatedSeries::monomial(rat(1), m * k, n));
                naive = naive.mul(&f);
            }
            assert_eq!(euler_product(m, n).unwrap(), naive, "m = {m}");
        }
    }

    #[test]
    fn theta_prefixes() {
        assert_eq!(theta(ThetaVariant::Three, 4), ints(&[1, 2, 0, 0, 2], 4));
        assert_eq!(theta(ThetaVariant::Four, 4), ints(&[1, -2, 0, 0, 2], 4));
        assert_eq!(
            theta(ThetaVariant::TwoPow4, 5),
            ints(&[0, 16, 0, 64, 0, 96], 5)
        );
    }

    #[test]
    fn big_theta_prefixes() {
        assert_eq!(
            big_theta(0, 1, 3, Diagonal::Plain),
            ints(&[1, 24, 24, 96], 3)
        );
        assert_eq!(big_theta(0, 0, 4, Diagonal::Doubled), ints(&[2], 4));
        assert_eq!(big_theta(0, 0, 4, Diagonal::Plain), ints(&[1], 4));
        assert_eq!(big_theta(1, 1, 2, Diagonal::Plain), ints(&[0, 16, 128], 2));
        assert_eq!(
            big_theta(1, 0, 6, Diagonal::Plain),
            big_theta(0, 1, 6, Diagonal::Doubled)
        );
    }

    #[test]
    fn g2_prefixes() {
        assert_eq!(g2(2), ints(&[1, 24, 24], 2));
        assert_eq!(g2(0), TruncatedSeries::one(0));
        assert_eq!(g2(40), big_theta(0, 1, 40, Diagonal::Plain));
    }

    #[test]
    fn lambert_series() {
        assert_eq!(lambert(1, 3), ints(&[0, 1, 3, 4], 3));
        assert_eq!(lambert(3, 4), ints(&[0, 1, 9, 28, 73], 4));
        let n = 50;
        assert_eq!(
            e2(n),
            TruncatedSeries::one(n).sub(&lambert(1, n).scale_int(24))
        );
    }

    #[test]
    fn h_series_values() {
        assert_eq!(h_series(1, 3).unwrap(), ints(&[0, 1, 3, 4], 3));
        assert_eq!(h_series(2, 4).unwrap(), ints(&[0, 0, 1, 4, 11], 4));
        assert_eq!(
            h_series(2, 30).unwrap(),
            lambert(3, 30).sub(&lambert(1, 30)).scale(&frac(1, 6))
        );
        assert_eq!(h_series(3, 40).unwrap(), power_lambert(3, 6, 40));
        assert!(h_series(0, 3).is_err());
    }

    #[test]
    fn binomials_and_factorials() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(6), BigInt::from(720));
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(binomial(3, 5), BigInt::from(0));
    }
}
