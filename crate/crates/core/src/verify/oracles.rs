//! Independent series oracles.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::generators::{e2, euler_product, factorial, theta, ThetaVariant};
use crate::partitions::macmahon_c;
use crate::recursions::v_weights;
use crate::series::{frac, rat, TruncatedSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// `r_{k+1} = c D(r_k) + E2 r_k` from `r_0 = 1`.
    Conjugated,
    /// Ratio of the two theta-type sums.
    Quotient,
}

/// Runs `r_{k+1} = c D(r_k) + E2 r_k` for `t` steps.
pub fn conjugated(c: i64, t: usize, order: usize) -> TruncatedSeries {
    let e = e2(order);
    let mut r = TruncatedSeries::one(order);
    for _ in 0..t {
        r = r.derive().scale_int(c).add(&r.mul(&e));
    }
    r
}

/// `U_{2t} = 8^t D^t(eta^3) / eta^3`.
pub fn ramanujan_u(t: usize, order: usize, method: Method) -> TruncatedSeries {
    match method {
        Method::Conjugated => conjugated(8, t, order),
        Method::Quotient => {
            let mut num = vec![BigInt::zero(); order + 1];
            let mut den = vec![BigInt::zero(); order + 1];
            for n in 0usize.. {
                let e = n * (n + 1) / 2;
                if e > order {
                    break;
                }
                let odd = BigInt::from(2 * n + 1);
                let sign = if n % 2 == 0 { 1 } else { -1 };
                num[e] = odd.pow(2 * t as u32 + 1) * sign;
                den[e] = odd * sign;
            }
            let den = TruncatedSeries::from_int_vec(den);
            TruncatedSeries::from_int_vec(num).mul(&den.invert().expect("constant term 1"))
        }
    }
}

/// `V_{2t} = 24^t D^t(eta) / eta`.
pub fn ramanujan_v(t: usize, order: usize, method: Method) -> TruncatedSeries {
    match method {
        Method::Conjugated => conjugated(24, t, order),
        Method::Quotient => {
            let mut num = vec![BigInt::zero(); order + 1];
            for n in 0i64.. {
                let lowest = n * (3 * n - 1) / 2;
                if lowest as usize > order {
                    break;
                }
                let ms: &[i64] = if n == 0 { &[0] } else { &[n, -n] };
                for &m in ms {
                    let e = (m * (3 * m - 1) / 2) as usize;
                    if e > order {
                        continue;
                    }
                    let sign = if m % 2 == 0 { 1 } else { -1 };
                    num[e] += BigInt::from(6 * m - 1).pow(2 * t as u32) * sign;
                }
            }
            let euler = euler_product(1, order).expect("m = 1");
            TruncatedSeries::from_int_vec(num).mul(&euler.invert().expect("constant term 1"))
        }
    }
}

/// `D^t(theta_4) / theta_4` via `r_{k+1} = D(r_k) + w r_k`, `w = D(theta_4)/theta_4`.
pub fn dtheta4_ratio(t: usize, order: usize) -> TruncatedSeries {
    let th = theta(ThetaVariant::Four, order);
    let w = th.derive().mul(&th.invert().expect("constant term 1"));
    let mut r = TruncatedSeries::one(order);
    for _ in 0..t {
        r = r.derive().add(&r.mul(&w));
    }
    r
}

/// `sum_{k=1}^t (-1)^k v_t(k) / (2t)! * D^k(theta_4)/theta_4`.
pub fn c_from_dtheta(t: usize, order: usize) -> Result<TruncatedSeries> {
    let v = v_weights(t)?;
    let denom = BigRational::from_integer(factorial(2 * t as u64));
    let th = theta(ThetaVariant::Four, order);
    let w = th.derive().mul(&th.invert().expect("constant term 1"));
    let mut r = TruncatedSeries::one(order);
    let mut out = TruncatedSeries::zero(order);
    for (k, vk) in (1..=t).zip(&v) {
        r = r.derive().add(&r.mul(&w));
        let sign = if k % 2 == 0 { rat(1) } else { rat(-1) };
        out = out.add(&r.scale(&(sign * vk / &denom)));
    }
    Ok(out)
}

/// One step `C_{2t-2} -> C_{2t}` of
/// `2t(2t-1) C_{2t} = (2 C_2 + (t-1)^2) C_{2t-2} - D(C_{2t-2})`.
pub fn c_recurrence_step(prev: &TruncatedSeries, t: usize) -> Result<TruncatedSeries> {
    if t < 2 {
        return Err(Error::InvalidArgument(
            "recurrence step needs t >= 2".into(),
        ));
    }
    let order = prev.order();
    let c2 = macmahon_c(1, order);
    let shift = TruncatedSeries::constant(rat(((t - 1) * (t - 1)) as i64), order);
    let factor = c2.scale_int(2).add(&shift);
    let t = t as i64;
    Ok(factor
        .mul(prev)
        .sub(&prev.derive())
        .scale(&frac(1, 2 * t * (2 * t - 1))))
}

/// `#{(r, s) in Z^2 : r^2 + s^2 = n}`.
pub fn count_two_squares(n: u64) -> u64 {
    let mut count = 0;
    let mut r: u64 = 0;
    while r * r <= n {
        let rest = n - r * r;
        let s = rest.isqrt();
        if s * s == rest {
            let r_ways = if r == 0 { 1 } else { 2 };
            let s_ways = if s == 0 { 1 } else { 2 };
            count += r_ways * s_ways;
        }
        r += 1;
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::e4;
    use crate::partitions::macmahon_c;

    #[test]
    fn ramanujan_small() {
        for method in [Method::Conjugated, Method::Quotient] {
            assert_eq!(ramanujan_u(0, 20, method), TruncatedSeries::one(20));
            assert_eq!(ramanujan_u(1, 20, method), e2(20));
            assert_eq!(ramanujan_v(1, 20, method), e2(20));
            let u4 = e2(20)
                .pow(2)
                .scale_int(5)
                .sub(&e4(20).scale_int(2))
                .scale(&frac(1, 3));
            assert_eq!(ramanujan_u(2, 20, method), u4);
            let v4 = e2(20).pow(2).scale_int(3).sub(&e4(20).scale_int(2));
            assert_eq!(ramanujan_v(2, 20, method), v4);
        }
        for t in 0..=8 {
            assert_eq!(
                ramanujan_v(t, 40, Method::Conjugated),
                ramanujan_v(t, 40, Method::Quotient)
            );
        }
    }

    #[test]
    fn theta_ratio_prefixes() {
        assert_eq!(
            dtheta4_ratio(1, 3),
            TruncatedSeries::from_ints([0, -2, -4, -8], 3).unwrap()
        );
        assert_eq!(
            dtheta4_ratio(2, 4),
            TruncatedSeries::from_ints([0, -2, -4, -8, 16], 4).unwrap()
        );
        assert_eq!(dtheta4_ratio(0, 5), TruncatedSeries::one(5));
    }

    #[test]
    fn c_series() {
        assert_eq!(
            c_from_dtheta(1, 5).unwrap(),
            TruncatedSeries::from_ints([0, 1, 2, 4, 4, 6], 5).unwrap()
        );
        assert_eq!(
            c_from_dtheta(2, 6).unwrap().coefficient(4).unwrap(),
            &rat(1)
        );
        assert!(c_from_dtheta(0, 5).is_err());
        let c4 = c_recurrence_step(&macmahon_c(1, 30), 2).unwrap();
        assert_eq!(c4, macmahon_c(2, 30));
        assert_eq!(c4.lowest_exponent(), Some(4));
        assert!(c_recurrence_step(&macmahon_c(1, 10), 1).is_err());
    }

    #[test]
    fn two_squares() {
        assert_eq!(count_two_squares(0), 1);
        assert_eq!(count_two_squares(1), 4);
        assert_eq!(count_two_squares(2), 4);
        assert_eq!(count_two_squares(3), 0);
        assert_eq!(count_two_squares(25), 12);
    }
}
