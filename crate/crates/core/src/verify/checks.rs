//! The check registry.

use std::fmt::Display;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::oracles::{
    c_from_dtheta, c_recurrence_step, count_two_squares, dtheta4_ratio, ramanujan_u, ramanujan_v,
    Method,
};
use super::{Mismatch, Status};
use crate::error::Error;
use crate::generators::{
    big_theta, binomial, e2, e4, e6, euler_product, g2, h_series, power_lambert, theta, Diagonal,
    ThetaVariant,
};
use crate::graded::{
    eval_poly, express_in_basis, partial_e2, partition_eisenstein, Basis, Exponents, GradedPoly,
    PeSign,
};
use crate::partitions::{
    family_sum, macmahon_c, macmahon_u, macmahon_u_star, multiplicity_oracle, u_star_from_u,
    u_star_single_sum, umbral_eval, Family, PartClass, UmbralPoly,
};
use crate::recursions::{
    cc_table, cc_tilde_printed_table, cc_tilde_table, cv_closed_ratio, cv_table, cv_tilde_table,
    v_weights, w_weights, CoeffTable,
};
use crate::series::{frac, rat, TruncatedSeries};

/// Result of one check before timing is attached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: Status,
    pub mismatch: Option<Mismatch>,
    pub note: Option<String>,
}

pub struct CheckSpec {
    pub id: &'static str,
    /// Default truncation order; 0 for checks on coefficient tables only.
    pub order: usize,
    /// Default bound on `t` (or weight, for table checks).
    pub t: u32,
    /// Smallest order at which the check is meaningful.
    pub min_order: usize,
    pub run: fn(usize, u32) -> Outcome,
}

impl CheckSpec {
    pub fn effective_order(&self, requested: Option<usize>) -> usize {
        if self.order == 0 {
            0
        } else {
            requested.unwrap_or(self.order).max(self.min_order)
        }
    }
}

struct Failure {
    mismatch: Mismatch,
    context: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let n = match e {
            Error::NotInSpan { index } => index,
            _ => 0,
        };
        Failure {
            mismatch: Mismatch {
                n,
                lhs: format!("error: {e}"),
                rhs: String::new(),
            },
            context: String::new(),
        }
    }
}

type Step = std::result::Result<Option<String>, Failure>;

fn same(
    context: impl Display,
    lhs: &TruncatedSeries,
    rhs: &TruncatedSeries,
) -> Result<(), Failure> {
    match lhs.first_difference(rhs) {
        None => Ok(()),
        Some((n, a, b)) => Err(Failure {
            mismatch: Mismatch {
                n,
                lhs: a.to_string(),
                rhs: b.to_string(),
            },
            context: context.to_string(),
        }),
    }
}

fn same_value(context: impl Display, lhs: &BigRational, rhs: &BigRational) -> Result<(), Failure> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(Failure {
            mismatch: Mismatch {
                n: 0,
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            },
            context: context.to_string(),
        })
    }
}

fn with_context(context: impl Display) -> impl FnOnce(Error) -> Failure {
    move |e| {
        let mut f = Failure::from(e);
        f.context = context.to_string();
        f
    }
}

fn finish(step: Step) -> Outcome {
    match step {
        Ok(note) => Outcome {
            status: Status::Pass,
            mismatch: None,
            note,
        },
        Err(f) => Outcome {
            status: Status::Fail,
            mismatch: Some(f.mismatch),
            note: (!f.context.is_empty()).then_some(f.context),
        },
    }
}

/// The literal statement should fail and the corrected reading should hold.
fn discrepancy(literal: Step, resolved: Step, reading: &str) -> Outcome {
    match (literal, resolved) {
        (_, Err(f)) => Outcome {
            status: Status::Fail,
            mismatch: Some(f.mismatch),
            note: Some(format!(
                "corrected reading fails ({}): {reading}",
                f.context
            )),
        },
        (Err(f), Ok(_)) => Outcome {
            status: Status::RecordedDiscrepancy,
            mismatch: Some(f.mismatch),
            note: Some(format!(
                "literal form fails ({}); holds as: {reading}",
                f.context
            )),
        },
        (Ok(_), Ok(_)) => Outcome {
            status: Status::Pass,
            mismatch: None,
            note: Some(format!(
                "literal form also holds at this order; reading: {reading}"
            )),
        },
    }
}

fn poly_e(terms: &[(Exponents, (i64, i64))]) -> GradedPoly {
    GradedPoly::from_terms(Basis::E, terms.iter().map(|&(k, (n, d))| (k, frac(n, d))))
}

/// Ramanujan's printed `U_{2t}` for `t <= 4`.
pub fn printed_u(t: u32) -> Option<GradedPoly> {
    Some(match t {
        0 => GradedPoly::one(Basis::E),
        1 => poly_e(&[((1, 0, 0), (1, 1))]),
        2 => poly_e(&[((2, 0, 0), (5, 3)), ((0, 1, 0), (-2, 3))]),
        3 => poly_e(&[
            ((3, 0, 0), (35, 9)),
            ((1, 1, 0), (-42, 9)),
            ((0, 0, 1), (16, 9)),
        ]),
        4 => poly_e(&[
            ((4, 0, 0), (35, 3)),
            ((2, 1, 0), (-84, 3)),
            ((1, 0, 1), (64, 3)),
            ((0, 2, 0), (-12, 3)),
        ]),
        _ => return None,
    })
}

/// Ramanujan's printed `V_{2t}` for `t <= 4`, with the weight-6 leading
/// monomial read as `E2^3`.
pub fn printed_v(t: u32) -> Option<GradedPoly> {
    Some(match t {
        0 => GradedPoly::one(Basis::E),
        1 => poly_e(&[((1, 0, 0), (1, 1))]),
        2 => poly_e(&[((2, 0, 0), (3, 1)), ((0, 1, 0), (-2, 1))]),
        3 => poly_e(&[
            ((3, 0, 0), (15, 1)),
            ((1, 1, 0), (-30, 1)),
            ((0, 0, 1), (16, 1)),
        ]),
        4 => poly_e(&[
            ((4, 0, 0), (105, 1)),
            ((2, 1, 0), (-420, 1)),
            ((1, 0, 1), (448, 1)),
            ((0, 2, 0), (-132, 1)),
        ]),
        _ => return None,
    })
}

/// The printed weight-4 example for `D^2(theta_4)/theta_4`.
pub fn theta_example(diag: Diagonal) -> GradedPoly {
    GradedPoly::from_terms(
        Basis::Theta(diag),
        [
            ((2, 0, 0), frac(1, 192)),
            ((1, 0, 1), frac(-1, 96)),
            ((0, 0, 2), frac(1, 192)),
            ((0, 1, 1), frac(-11, 96)),
        ],
    )
}

fn expect_poly(
    context: impl Display,
    lhs: &GradedPoly,
    rhs: &GradedPoly,
    order: usize,
) -> Result<(), Failure> {
    if lhs == rhs {
        return Ok(());
    }
    let (a, b) = (eval_poly(lhs, order), eval_poly(rhs, order));
    same(&context, &a, &b)?;
    // equal as series but not as polynomials: report the leading coefficient
    Err(Failure {
        mismatch: Mismatch {
            n: 0,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        },
        context: context.to_string(),
    })
}

fn ramanujan_expansions(order: usize, _t: u32) -> Outcome {
    finish((|| {
        for t in 0..=4u32 {
            for method in [Method::Conjugated, Method::Quotient] {
                let u = ramanujan_u(t as usize, order, method);
                let got = express_in_basis(&u, t, Basis::E)
                    .map_err(with_context(format!("U_{}", 2 * t)))?;
                expect_poly(
                    format!("U_{} {method:?}", 2 * t),
                    &got,
                    &printed_u(t).unwrap(),
                    order,
                )?;
                let v = ramanujan_v(t as usize, order, method);
                let got = express_in_basis(&v, t, Basis::E)
                    .map_err(with_context(format!("V_{}", 2 * t)))?;
                expect_poly(
                    format!("V_{} {method:?}", 2 * t),
                    &got,
                    &printed_v(t).unwrap(),
                    order,
                )?;
            }
        }
        Ok(Some("V_6 leading monomial read as 15 E2^3".into()))
    })())
}

fn ramanujan_methods(order: usize, t_max: u32) -> Outcome {
    finish((|| {
        for t in 0..=t_max as usize {
            same(
                format!("U t = {t}"),
                &ramanujan_u(t, order, Method::Conjugated),
                &ramanujan_u(t, order, Method::Quotient),
            )?;
            same(
                format!("V t = {t}"),
                &ramanujan_v(t, order, Method::Conjugated),
                &ramanujan_v(t, order, Method::Quotient),
            )?;
        }
        Ok(None)
    })())
}

fn v6_printed(order: usize, _t: u32) -> Outcome {
    let v6 = ramanujan_v(3, order, Method::Quotient);
    let literal = poly_e(&[
        ((2, 0, 0), (15, 1)),
        ((1, 1, 0), (-30, 1)),
        ((0, 0, 1), (16, 1)),
    ]);
    discrepancy(
        same("15E2^2 - 30E2E4 + 16E6", &eval_poly(&literal, order), &v6).map(|_| None),
        same(
            "15E2^3 - 30E2E4 + 16E6",
            &eval_poly(&printed_v(3).unwrap(), order),
            &v6,
        )
        .map(|_| None),
        "V_6 = 15E2^3 - 30E2E4 + 16E6",
    )
}

fn v_eta_prefactor(order: usize, t_max: u32) -> Outcome {
    let run = |literal: bool| -> Step {
        for t in 1..=t_max.max(1) as usize {
            let mut lhs = ramanujan_v(t, order, Method::Conjugated);
            if literal {
                lhs = lhs.scale(&BigRational::from_integer(BigInt::from(24).pow(t as u32)));
            }
            same(
                format!("t = {t}"),
                &lhs,
                &ramanujan_v(t, order, Method::Quotient),
            )?;
        }
        Ok(None)
    };
    discrepancy(
        run(true),
        run(false),
        "V_{2t} = 24^t D^t(eta)/eta; the prefactor 24^{2t} would give V_2 = 24 E2",
    )
}

fn table_vs_oracle(
    table: &CoeffTable,
    t_range: std::ops::RangeInclusive<u32>,
    order: usize,
    oracle: impl Fn(usize) -> TruncatedSeries,
) -> Step {
    for t in t_range {
        same(
            format!("t = {t}"),
            &eval_poly(&table.slice(t), order),
            &oracle(t as usize),
        )?;
    }
    Ok(None)
}

fn v_recursion_slices(order: usize, t_max: u32) -> Outcome {
    finish(table_vs_oracle(&cv_table(t_max), 0..=t_max, order, |t| {
        ramanujan_v(t, order, Method::Quotient)
    }))
}

fn cc_recursion_slices(order: usize, t_max: u32) -> Outcome {
    finish(
        table_vs_oracle(&cc_table(t_max), 1..=t_max, order, |t| {
            dtheta4_ratio(t, order)
        })
        .map(|_| Some("Theta_{r,r} = X^r Y^r; lookups sorted in (beta, gamma)".into())),
    )
}

fn weight4_theta_example(order: usize, _t: u32) -> Outcome {
    finish((|| {
        let table = cc_table(2);
        let example = theta_example(Diagonal::Plain);
        expect_poly("table level 2", &table.slice(2), &example, order)?;
        same(
            "example",
            &eval_poly(&example, order),
            &dtheta4_ratio(2, order),
        )?;
        Ok(Some("Theta_{r,r} = X^r Y^r".into()))
    })())
}

fn theta_powers(order: usize, n: u32) -> (Vec<TruncatedSeries>, Vec<TruncatedSeries>) {
    let x = theta(ThetaVariant::TwoPow4, order);
    let y = theta(ThetaVariant::Three, order).pow(4);
    let mut xs = vec![TruncatedSeries::one(order)];
    let mut ys = vec![TruncatedSeries::one(order)];
    for _ in 0..n {
        xs.push(xs.last().unwrap().mul(&x));
        ys.push(ys.last().unwrap().mul(&y));
    }
    (xs, ys)
}

/// `Theta_{r,s}` with the doubled diagonal, from cached powers.
fn theta_rs(xs: &[TruncatedSeries], ys: &[TruncatedSeries], r: usize, s: usize) -> TruncatedSeries {
    xs[r].mul(&ys[s]).add(&xs[s].mul(&ys[r]))
}

fn theta_diagonal_convention(order: usize, _t: u32) -> Outcome {
    let target = dtheta4_ratio(2, order);
    let literal = same(
        "weight-4 example, doubled diagonal",
        &eval_poly(&theta_example(Diagonal::Doubled), order),
        &target,
    )
    .map(|_| None);
    let resolved = (|| {
        same(
            "weight-4 example, plain diagonal",
            &eval_poly(&theta_example(Diagonal::Plain), order),
            &target,
        )?;
        let e4_doubled = big_theta(0, 2, order, Diagonal::Doubled)
            .add(&big_theta(1, 1, order, Diagonal::Doubled).scale_int(7));
        same(
            "E4 = Theta_{0,2} + 7 Theta_{1,1}, doubled",
            &e4_doubled,
            &e4(order),
        )?;
        Ok(None)
    })();
    discrepancy(
        literal,
        resolved,
        "the weight-4 example uses Theta_{1,1} = X Y; the product rule and E4 = Theta_{0,2} + 7 Theta_{1,1} use Theta_{1,1} = 2 X Y",
    )
}

fn e4_e6_in_theta(order: usize, t_max: u32) -> Outcome {
    finish((|| {
        let m = t_max.clamp(1, 3) as usize;
        let (xs, ys) = theta_powers(order, 2 * m as u32);
        for a in 0..=m {
            for b in 0..=m {
                for a2 in 0..=m {
                    for b2 in 0..=m {
                        let lhs = theta_rs(&xs, &ys, a, b).mul(&theta_rs(&xs, &ys, a2, b2));
                        let rhs = theta_rs(&xs, &ys, a + a2, b + b2).add(&theta_rs(
                            &xs,
                            &ys,
                            a + b2,
                            b + a2,
                        ));
                        same(format!("Theta[{a},{b}] Theta[{a2},{b2}]"), &lhs, &rhs)?;
                    }
                }
            }
        }
        let e4_rhs = theta_rs(&xs, &ys, 0, 2).add(&theta_rs(&xs, &ys, 1, 1).scale_int(7));
        same("E4", &e4_rhs, &e4(order))?;
        Ok(Some("doubled diagonal".into()))
    })())
}

fn theta_product_rule(order: usize, t_max: u32) -> Outcome {
    finish((|| {
        let m = t_max.min(3) as usize;
        let (xs, ys) = theta_powers(order, m as u32 + 1);
        let e = e2(order);
        for r in 0..=m {
            for s in 0..=m {
                let th = theta_rs(&xs, &ys, r, s);
                let (ri, si) = (r as i64, s as i64);
                let rhs = e
                    .mul(&th)
                    .scale(&frac(ri + si, 6))
                    .add(&theta_rs(&xs, &ys, r + 1, s).scale(&frac(5 * si - ri, 6)))
                    .add(&theta_rs(&xs, &ys, r, s + 1).scale(&frac(5 * ri - si, 6)));
                same(format!("D Theta[{r},{s}]"), &th.derive(), &rhs)?;
            }
        }
        Ok(Some("doubled diagonal".into()))
    })())
}

fn g_basis_level2() -> GradedPoly {
    GradedPoly::from_terms(
        Basis::G,
        [
            ((2, 0, 0), frac(1, 192)),
            ((1, 1, 0), frac(-2, 192)),
            ((0, 2, 0), frac(3, 192)),
            ((0, 0, 1), frac(-2, 192)),
        ],
    )
}

fn g_basis_slices(order: usize, t_max: u32) -> Outcome {
    finish((|| {
        let table = cc_tilde_table(t_max.max(2));
        expect_poly("level 2", &table.slice(2), &g_basis_level2(), order)?;
        table_vs_oracle(&table, 1..=t_max, order, |t| dtheta4_ratio(t, order))?;
        Ok(None)
    })())
}

fn g_basis_printed_shift(order: usize, t_max: u32) -> Outcome {
    let t_max = t_max.max(3);
    discrepancy(
        table_vs_oracle(&cc_tilde_printed_table(t_max), 1..=t_max, order, |t| {
            dtheta4_ratio(t, order)
        }),
        table_vs_oracle(&cc_tilde_table(t_max), 1..=t_max, order, |t| {
            dtheta4_ratio(t, order)
        }),
        "the coefficient of c~(a, b-1, c) is (24c - 8b + 7)/24",
    )
}

fn c_from_theta_derivatives(order: usize, t_max: u32) -> Outcome {
    finish(
        c_from_theta_step(order, t_max)
            .map(|_| Some("sum_k (-1)^k v_t(k)/(2t)! D^k(theta_4)/theta_4".into())),
    )
}

fn c_from_theta_derivatives_printed(order: usize, t_max: u32) -> Outcome {
    let t_max = t_max.max(2);
    let literal = (|| {
        let table = cc_table(t_max);
        for t in 1..=t_max as usize {
            let v = v_weights(t).map_err(with_context(format!("t = {t}")))?;
            let total = v
                .iter()
                .enumerate()
                .map(|(i, x)| if i % 2 == 0 { -x.clone() } else { x.clone() })
                .fold(BigRational::zero(), |a, b| a + b);
            let scale =
                total / BigRational::from_integer(crate::generators::factorial(2 * t as u64));
            let lhs = eval_poly(&table.slice(t as u32), order).scale(&scale);
            same(format!("t = {t}"), &lhs, &macmahon_c(t, order))?;
        }
        Ok(None)
    })();
    discrepancy(
        literal,
        c_from_theta_step(order, t_max),
        "the k-th summand uses D^k(theta_4)/theta_4 (weight 2k), not the weight-2t sum for every k",
    )
}

fn c_from_theta_step(order: usize, t_max: u32) -> Step {
    for t in 1..=t_max as usize {
        let lhs = c_from_dtheta(t, order).map_err(with_context(format!("t = {t}")))?;
        same(format!("t = {t}"), &lhs, &macmahon_c(t, order))?;
    }
    Ok(None)
}

fn c_recurrence(order: usize, t_max: u32) -> Outcome {
    finish((|| {
        for t in 2..=t_max.max(2) as usize {
            let prev = macmahon_c(t - 1, order);
            let next = c_recurrence_step(&prev, t).map_err(with_context(format!("t = {t}")))?;
            same(format!("t = {t}"), &next, &macmahon_c(t, order))?;
        }
        Ok(Some("C_2 in the C_1 slot".into()))
    })())
}

/// Exact ratio `p / q` when `p` is a scalar multiple of `q`.
fn proportional(p: &GradedPoly, q: &GradedPoly) -> Option<BigRational> {
    let (&key, lead) = q.terms().iter().next()?;
    let lambda = p.coefficient(key) / lead;
    (q.scale(&lambda) == *p).then_some(lambda)
}

fn sign_of(x: &BigRational) -> Option<i8> {
    if x == &BigRational::one() {
        Some(1)
    } else if x == &-BigRational::one() {
        Some(-1)
    } else {
        None
    }
}

fn format_signs(signs: &[i8]) -> String {
    signs
        .iter()
        .map(|&s| if s > 0 { '+' } else { '-' })
        .collect()
}

/// Finds `eps_a` with `U_{2t} = sum_a eps_a w_a(t) U_{2a}` by matching the
/// weight-`2a` parts exactly.
fn weight_signs(order: usize, t: u32, ram: &[GradedPoly]) -> Result<Vec<i8>, Failure> {
    let ctx = format!("t = {t}");
    let p = express_in_basis(&macmahon_u(t as usize, order), t, Basis::E)
        .map_err(with_context(&ctx))?;
    let w = w_weights(t as usize);
    let mut signs = Vec::new();
    for a in 0..=t {
        let part = p.homogeneous_part(2 * a);
        let bad = |what: &str| Failure {
            mismatch: Mismatch {
                n: 0,
                lhs: part.to_string(),
                rhs: ram[a as usize].to_string(),
            },
            context: format!("{ctx}, a = {a}: {what}"),
        };
        let lambda = proportional(&part, &ram[a as usize])
            .ok_or_else(|| bad("not proportional to U_{2a}"))?;
        let eps =
            sign_of(&(lambda / &w[a as usize])).ok_or_else(|| bad("ratio to w_a(t) is not +-1"))?;
        signs.push(eps);
    }
    Ok(signs)
}

fn decomposition_series(order: usize, t: u32, signs: &[i8]) -> Result<(), Failure> {
    let w = w_weights(t as usize);
    let mut rhs = TruncatedSeries::zero(order);
    for a in 0..=t as usize {
        let c = &w[a] * rat(signs[a] as i64);
        rhs = rhs.add(&ramanujan_u(a, order, Method::Quotient).scale(&c));
    }
    same(format!("t = {t}"), &macmahon_u(t as usize, order), &rhs)
}

fn weight_decomposition(order: usize, t_max: u32) -> Outcome {
    finish((|| {
        let ram: Vec<GradedPoly> = (0..=t_max)
            .map(|a| {
                express_in_basis(
                    &ramanujan_u(a as usize, order, Method::Quotient),
                    a,
                    Basis::E,
                )
            })
            .collect::<Result<_, _>>()
            .map_err(with_context("U_{2a}"))?;
        let mut patterns = Vec::new();
        for t in 0..=t_max {
            let signs = weight_signs(order, t, &ram)?;
            decomposition_series(order, t, &signs)?;
            patterns.push(format_signs(&signs));
        }
        let alternating = patterns.iter().all(|p| {
            p.chars()
                .enumerate()
                .all(|(a, c)| (c == '+') == (a % 2 == 0))
        });
        let summary = if alternating {
            "eps_a = (-1)^a".to_string()
        } else {
            format!("eps patterns {}", patterns.join(" "))
        };
        Ok(Some(format!("resolved signs: {summary} for t <= {t_max}")))
    })())
}

fn weight_decomposition_printed(order: usize, t_max: u32) -> Outcome {
    let t_max = t_max.max(1);
    let run = |alternate: bool| -> Step {
        for t in 0..=t_max {
            let signs: Vec<i8> = (0..=t)
                .map(|a| if alternate && a % 2 == 1 { -1 } else { 1 })
                .collect();
            decomposition_series(order, t, &signs)?;
        }
        Ok(None)
    };
    discrepancy(run(false), run(true), "U_{2t} = sum_a (-1)^a w_a(t) U_{2a}")
}

fn u_family_product(order: usize, _t: u32) -> Outcome {
    finish((|| {
        let p = |m| euler_product(m, order).expect("m >= 1");
        let den = p(1).mul(&p(2)).mul(&p(3));
        let rhs = p(6).mul(&den.invert().expect("unit"));
        same("sum_t U_{2t}", &family_sum(Family::U, order), &rhs)?;
        Ok(None)
    })())
}

fn c_family_product(order: usize, _t: u32) -> Outcome {
    finish((|| {
        let p = |m| euler_product(m, order).expect("m >= 1");
        let den = p(1).mul(&p(3)).mul(&p(12));
        let rhs = p(4).mul(&p(6).pow(2)).mul(&den.invert().expect("unit"));
        same("sum_t C_{2t}", &family_sum(Family::C, order), &rhs)?;
        Ok(None)
    })())
}

/// `sum_{n>=1} (-1)^{n-1} (1-q^n)(1-q^{2n}) q^{C(n,2)} / (1 - 3q^n + q^{2n})`.
fn u_star_alternating_sum(order: usize) -> TruncatedSeries {
    let mut out = TruncatedSeries::zero(order);
    for n in 1usize.. {
        let base = n * (n - 1) / 2;
        if base > order {
            break;
        }
        let mono = |k: usize, c: i64| TruncatedSeries::monomial(rat(c), k, order);
        let one = TruncatedSeries::one(order);
        let num = one.sub(&mono(n, 1)).mul(&one.sub(&mono(2 * n, 1)));
        let den = one.sub(&mono(n, 3)).add(&mono(2 * n, 1));
        let term = num.mul(&den.invert().expect("unit")).shift(base);
        out = if n % 2 == 1 {
            out.add(&term)
        } else {
            out.sub(&term)
        };
    }
    out
}

fn u_star_family_sum(order: usize, _t: u32) -> Outcome {
    finish(
        same(
            "sum_t U*_{2t}",
            &family_sum(Family::UStar, order),
            &u_star_alternating_sum(order),
        )
        .map(|_| None),
    )
}

fn lowest_exponents(order: usize, t_max: u32) -> Outcome {
    finish((|| {
        for t in 1..=t_max as usize {
            let cases = [
                ("U", macmahon_u(t, order), t * (t + 1) / 2),
                ("C", macmahon_c(t, order), t * t),
                ("U*", macmahon_u_star(t, order), t),
            ];
            for (name, s, expected) in cases {
                if expected > order {
                    continue;
                }
                let got = s.lowest_exponent();
                if got != Some(expected) {
                    return Err(Failure {
                        mismatch: Mismatch {
                            n: expected,
                            lhs: got.map_or("none".into(), |g| g.to_string()),
                            rhs: expected.to_string(),
                        },
                        context: format!("{name}_{} lowest exponent", 2 * t),
                    });
                }
            }
        }
        Ok(None)
    })())
}

fn residue_zero(context: &str, residues: &[u64], step: usize, offset: usize) -> Step {
    for n in (offset..residues.len()).step_by(step) {
        if residues[n] != 0 {
            return Err(Failure {
                mismatch: Mismatch {
                    n,
                    lhs: residues[n].to_string(),
                    rhs: "0".into(),
                },
                context: context.into(),
            });
        }
    }
    Ok(None)
}

fn u_congruence_mod3(order: usize, _t: u32) -> Outcome {
    let u = family_sum(Family::U, order)
        .reduce_mod(3)
        .expect("integral");
    finish(residue_zero("u(3n+2) mod 3", u.residues(), 3, 2))
}

fn c_congruence_mod3(order: usize, _t: u32) -> Outcome {
    let k = family_sum(Family::C, order)
        .reduce_mod(3)
        .expect("integral");
    finish(residue_zero("kappa(9n+6) mod 3", k.residues(), 9, 6))
}

/// `sum_n (-1)^n r_2(n) q^n`.
fn signed_two_squares(order: usize) -> TruncatedSeries {
    TruncatedSeries::from_int_vec(
        (0..=order as u64)
            .map(|n| {
                let c = BigInt::from(count_two_squares(n));
                if n % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .collect(),
    )
}

fn two_squares_mod5(order: usize, _t: u32) -> Outcome {
    finish((|| {
        let target = signed_two_squares(order);
        same(
            "theta_4^2",
            &theta(ThetaVariant::Four, order).pow(2),
            &target,
        )?;
        let y = family_sum(Family::UTwo, order)
            .reduce_mod(5)
            .expect("integral");
        let r = target.reduce_mod(5).expect("integral");
        for (n, (a, b)) in y.residues().iter().zip(r.residues()).enumerate() {
            if a != b {
                return Err(Failure {
                    mismatch: Mismatch {
                        n,
                        lhs: a.to_string(),
                        rhs: b.to_string(),
                    },
                    context: "y(n) mod 5".into(),
                });
            }
        }
        Ok(None)
    })())
}

fn partition_eisenstein_derivative(order: usize, t_max: u32) -> Outcome {
    finish((|| {
        let pe: Vec<TruncatedSeries> = (0..=t_max.max(1))
            .map(|t| partition_eisenstein(t, PeSign::Plus, order))
            .collect();
        for t in 2..=t_max as usize {
            let ti = t as i64;
            let rhs = pe[t]
                .scale_int(ti * (2 * ti + 1))
                .sub(&pe[1].mul(&pe[t - 1]).scale_int(3));
            same(format!("t = {t}"), &pe[t - 1].derive(), &rhs)?;
        }
        Ok(None)
    })())
}

fn etilde_recurrence(order: usize, t_max: u32) -> Outcome {
    finish((|| {
        let e = e2(order);
        let mut prev = TruncatedSeries::one(order);
        for t in 1..=t_max as usize {
            let next = e.mul(&prev).add(&prev.derive().scale_int(8));
            same(
                format!("t = {t}"),
                &next,
                &ramanujan_u(t, order, Method::Quotient),
            )?;
            prev = next;
        }
        Ok(None)
    })())
}

/// `1 / (12 j^2 C(2j, j))`.
fn partial_weight(j: u32) -> BigRational {
    BigRational::new(
        BigInt::one(),
        BigInt::from(12 * j * j) * binomial(2 * j as u64, j as u64),
    )
}

/// Peels `d P_t / d E2` into multiples of `P_{t-1}, ..., P_0` from the top
/// weight down and returns the signs relative to `partial_weight`.
fn partial_signs(ps: &[GradedPoly], t: u32, order: usize) -> Result<Vec<i8>, Failure> {
    let ctx = format!("t = {t}");
    let mut residual = partial_e2(&ps[t as usize]).map_err(with_context(&ctx))?;
    let mut signs = Vec::new();
    for j in 1..=t {
        let lower = &ps[(t - j) as usize];
        let w = 2 * (t - j);
        let top = lower.homogeneous_part(w);
        let part = residual.homogeneous_part(w);
        let bad = |what: String| Failure {
            mismatch: Mismatch {
                n: 0,
                lhs: part.to_string(),
                rhs: top.to_string(),
            },
            context: format!("{ctx}, j = {j}: {what}"),
        };
        let lambda = if part.is_zero() {
            BigRational::zero()
        } else {
            proportional(&part, &top).ok_or_else(|| bad("weight part not proportional".into()))?
        };
        let s = sign_of(&(&lambda / partial_weight(j)))
            .ok_or_else(|| bad(format!("coefficient {lambda} is not +-1/(12 j^2 C(2j,j))")))?;
        signs.push(s);
        residual = residual.sub(&lower.scale(&lambda)).expect("same basis");
    }
    if !residual.is_zero() {
        same(
            &ctx,
            &eval_poly(&residual, order),
            &TruncatedSeries::zero(order),
        )?;
    }
    Ok(signs)
}

fn family_polys(family: Family, t_max: u32, order: usize) -> Result<Vec<GradedPoly>, Failure> {
    (0..=t_max)
        .map(|t| {
            let s = match family {
                Family::UStar => macmahon_u_star(t as usize, order),
                _ => macmahon_u(t as usize, order),
            };
            express_in_basis(&s, t, Basis::E).map_err(with_context(format!("t = {t}")))
        })
        .collect()
}

fn describe_pattern(patterns: &[Vec<i8>]) -> String {
    let all = |f: fn(usize) -> i8| {
        patterns
            .iter()
            .all(|p| p.iter().enumerate().all(|(i, &s)| s == f(i + 1)))
    };
    if all(|_| -1) {
        "s_j = -1".into()
    } else if all(|_| 1) {
        "s_j = +1".into()
    } else if all(|j| if j % 2 == 0 { 1 } else { -1 }) {
        "s_j = (-1)^j".into()
    } else {
        patterns
            .iter()
            .map(|p| format_signs(p))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn partial_e2_signs(order: usize, t_max: u32) -> Outcome {
    finish((|| {
        let mut notes = Vec::new();
        for (name, family) in [("U", Family::U), ("U*", Family::UStar)] {
            let ps = family_polys(family, t_max, order)?;
            let patterns = (1..=t_max)
                .map(|t| partial_signs(&ps, t, order))
                .collect::<Result<Vec<_>, _>>()?;
            notes.push(format!("{name}: {}", describe_pattern(&patterns)));
        }
        Ok(Some(format!(
            "d/dE2 P_t = (1/12) sum_j s_j P_(t-j) / (j^2 C(2j,j)) with {}",
            notes.join("; ")
        )))
    })())
}

fn partial_e2_printed(order: usize, t_max: u32) -> Outcome {
    let t_max = t_max.max(1);
    let run = |u_sign: fn(u32) -> i64, star_sign: fn(u32) -> i64| -> Step {
        for (family, sign) in [(Family::U, u_sign), (Family::UStar, star_sign)] {
            let ps = family_polys(family, t_max, order)?;
            for t in 1..=t_max {
                let lhs = partial_e2(&ps[t as usize]).map_err(with_context(format!("t = {t}")))?;
                let mut rhs = GradedPoly::zero(Basis::E);
                for j in 1..=t {
                    let c = partial_weight(j) * rat(sign(j));
                    rhs = rhs
                        .add(&ps[(t - j) as usize].scale(&c))
                        .expect("same basis");
                }
                expect_poly(format!("{family:?} t = {t}"), &lhs, &rhs, order)?;
            }
        }
        Ok(None)
    };
    discrepancy(
        run(|_| -1, |_| 1),
        run(|_| -1, |j| if j % 2 == 0 { 1 } else { -1 }),
        "the U* sum carries (-1)^j; the U sum carries -1",
    )
}

fn umbral_h_series(order: usize, t_max: u32) -> Outcome {
    finish((|| {
        for r in 1..=t_max {
            let h = h_series(r, order).map_err(with_context(format!("r = {r}")))?;
            let lhs = h.scale(&BigRational::from_integer(crate::generators::factorial(
                2 * r as u64 - 1,
            )));
            same(
                format!("r = {r}"),
                &lhs,
                &umbral_eval(&UmbralPoly::h_product(r), order),
            )?;
        }
        Ok(None)
    })())
}

fn umbral_shifted(order: usize, _t: u32) -> Outcome {
    finish((|| {
        for (beta, t) in [(3u32, 1u32), (2, 2)] {
            let e = (beta * t) as usize;
            let lhs = power_lambert(t as usize, e, order).scale(&BigRational::from_integer(
                crate::generators::factorial(e as u64 - 1),
            ));
            let rhs = umbral_eval(&UmbralPoly::shifted_product(beta, t), order);
            same(format!("(beta, t) = ({beta}, {t})"), &lhs, &rhs)?;
        }
        Ok(None)
    })())
}

fn cv_alpha_ratio(_order: usize, weight: u32) -> Outcome {
    finish((|| {
        let cv = cv_table(weight);
        for (&(a, b, c), v) in cv.entries() {
            let base = cv.get(0, b as i64, c as i64);
            if base.is_zero() {
                continue;
            }
            same_value(
                format!("({a},{b},{c})"),
                &(v / base),
                &cv_closed_ratio(a, b, c),
            )?;
        }
        Ok(None)
    })())
}

fn cv_scaling(_order: usize, weight: u32) -> Outcome {
    finish((|| {
        let cv = cv_table(weight);
        let tilde = cv_tilde_table(weight);
        for (&(a, b, c), v) in cv.entries() {
            let scale = BigRational::from_integer(BigInt::from(24).pow(a + 2 * b + 3 * c));
            same_value(
                format!("({a},{b},{c})"),
                v,
                &(tilde.get(a as i64, b as i64, c as i64) * scale),
            )?;
        }
        Ok(None)
    })())
}

fn cv_integrality(_order: usize, weight: u32) -> Outcome {
    finish((|| {
        for (&(a, b, c), v) in cv_table(weight).entries() {
            if !v.is_integer() {
                return Err(Failure {
                    mismatch: Mismatch {
                        n: 0,
                        lhs: v.to_string(),
                        rhs: "integer".into(),
                    },
                    context: format!("({a},{b},{c})"),
                });
            }
        }
        Ok(None)
    })())
}

fn v_weights_recurrence(_order: usize, t_max: u32) -> Outcome {
    finish((|| {
        for t in 1..=t_max as usize {
            v_weights(t).map_err(with_context(format!("t = {t}")))?;
        }
        Ok(None)
    })())
}

fn eisenstein_derivatives(order: usize, _t: u32) -> Outcome {
    finish((|| {
        let (a, b, c) = (e2(order), e4(order), e6(order));
        same("D E2", &a.derive(), &a.mul(&a).sub(&b).scale(&frac(1, 12)))?;
        same("D E4", &b.derive(), &a.mul(&b).sub(&c).scale(&frac(1, 3)))?;
        same(
            "D E6",
            &c.derive(),
            &a.mul(&c).sub(&b.mul(&b)).scale(&frac(1, 2)),
        )?;
        Ok(None)
    })())
}

fn theta_log_derivatives(order: usize, _t: u32) -> Outcome {
    finish((|| {
        let e = e2(order);
        let x = theta(ThetaVariant::TwoPow4, order);
        let t3 = theta(ThetaVariant::Three, order);
        let t4 = theta(ThetaVariant::Four, order);
        let y = t3.pow(4);
        let log_d = |s: &TruncatedSeries| s.derive().mul(&s.invert().expect("unit"));
        same(
            "D theta_2^4 / theta_2^4",
            &x.derive(),
            &x.mul(&e.sub(&x).add(&y.scale_int(5))).scale(&frac(1, 6)),
        )?;
        same(
            "D theta_3 / theta_3",
            &log_d(&t3),
            &e.add(&x.scale_int(5)).sub(&y).scale(&frac(1, 24)),
        )?;
        same(
            "D theta_4 / theta_4",
            &log_d(&t4),
            &e.sub(&x).sub(&y).scale(&frac(1, 24)),
        )?;
        Ok(None)
    })())
}

fn g_basis_derivatives(order: usize, _t: u32) -> Outcome {
    finish((|| {
        let (e, g, f) = (e2(order), g2(order), e4(order));
        let t4 = theta(ThetaVariant::Four, order);
        same(
            "D theta_4 / theta_4",
            &t4.derive().mul(&t4.invert().expect("unit")),
            &e.sub(&g).scale(&frac(1, 24)),
        )?;
        same("D E2", &e.derive(), &e.mul(&e).sub(&f).scale(&frac(1, 12)))?;
        same(
            "D G2",
            &g.derive(),
            &e.mul(&g)
                .sub(&g.mul(&g).scale_int(2))
                .add(&f)
                .scale(&frac(1, 6)),
        )?;
        same(
            "D E4",
            &f.derive(),
            &e.mul(&f)
                .sub(&g.pow(3).scale_int(4))
                .add(&g.mul(&f).scale_int(3))
                .scale(&frac(1, 3)),
        )?;
        Ok(None)
    })())
}

fn theta_identity(order: usize, _t: u32) -> Outcome {
    finish(
        same(
            "theta_3^4 = theta_2^4 + theta_4^4",
            &theta(ThetaVariant::Three, order).pow(4),
            &theta(ThetaVariant::TwoPow4, order).add(&theta(ThetaVariant::Four, order).pow(4)),
        )
        .map(|_| None),
    )
}

fn g2_theta(order: usize, _t: u32) -> Outcome {
    finish((|| {
        let g = g2(order);
        same(
            "G2 = Theta_{0,1}",
            &g,
            &big_theta(0, 1, order, Diagonal::Plain),
        )?;
        let t01 = big_theta(0, 1, order, Diagonal::Plain);
        let e4_rhs = t01
            .pow(2)
            .add(&big_theta(1, 1, order, Diagonal::Doubled).scale_int(6));
        same("E4 = Theta_{0,1}^2 + 6 Theta_{1,1}", &e4_rhs, &e4(order))?;
        Ok(Some(
            "G2 = 2 E2(q^2) - E2(q); Theta_{1,1} doubled in the E4 relation".into(),
        ))
    })())
}

fn multiplicity_check(order: usize, t_max: u32) -> Outcome {
    finish((|| {
        let n_max = order.min(80);
        for t in 0..=t_max as usize {
            for (name, s, class) in [
                ("U", macmahon_u(t, n_max), PartClass::All),
                ("C", macmahon_c(t, n_max), PartClass::Odd),
            ] {
                let oracle: Vec<BigInt> = (0..=n_max as u64)
                    .map(|n| multiplicity_oracle(t, n, class))
                    .collect::<Result<_, _>>()
                    .map_err(with_context(format!("{name} t = {t}")))?;
                same(
                    format!("{name} t = {t}"),
                    &s,
                    &TruncatedSeries::from_int_vec(oracle),
                )?;
            }
        }
        Ok(None)
    })())
}

fn u_star_checks(order: usize, t_max: u32) -> Outcome {
    finish((|| {
        for t in 0..=t_max as usize {
            let direct = macmahon_u_star(t, order);
            if t >= 1 {
                let single =
                    u_star_single_sum(t, order).map_err(with_context(format!("t = {t}")))?;
                same(format!("single sum t = {t}"), &single, &direct)?;
            }
            same(format!("from U t = {t}"), &u_star_from_u(t, order), &direct)?;
        }
        Ok(None)
    })())
}

fn solver_round_trip(order: usize, t_max: u32) -> Outcome {
    finish((|| {
        for basis in [
            Basis::E,
            Basis::G,
            Basis::Theta(Diagonal::Plain),
            Basis::Theta(Diagonal::Doubled),
        ] {
            let monos = basis.monomials(t_max);
            let p = GradedPoly::from_terms(
                basis,
                monos
                    .iter()
                    .enumerate()
                    .map(|(i, &k)| (k, frac(i as i64 - 3, 1 + (i as i64 % 5)))),
            );
            let got = express_in_basis(&eval_poly(&p, order), t_max, basis)
                .map_err(with_context(basis.name()))?;
            expect_poly(basis.name(), &got, &p, order)?;
        }
        Ok(None)
    })())
}

fn integrality_of_families(order: usize, t_max: u32) -> Outcome {
    finish((|| {
        for t in 0..=t_max as usize {
            for (name, s) in [
                ("U", macmahon_u(t, order)),
                ("C", macmahon_c(t, order)),
                ("U*", macmahon_u_star(t, order)),
            ] {
                if let Some(n) = s
                    .coeffs()
                    .iter()
                    .position(|c| !c.is_integer() || c.is_negative())
                {
                    return Err(Failure {
                        mismatch: Mismatch {
                            n,
                            lhs: s.coeffs()[n].to_string(),
                            rhs: "non-negative integer".into(),
                        },
                        context: format!("{name} t = {t}"),
                    });
                }
            }
        }
        Ok(None)
    })())
}

const SOLVER_MIN: usize = 40;

static REGISTRY: &[CheckSpec] = &[
    CheckSpec {
        id: "ramanujan_expansions",
        order: 60,
        t: 4,
        min_order: SOLVER_MIN,
        run: ramanujan_expansions,
    },
    CheckSpec {
        id: "ramanujan_methods",
        order: 60,
        t: 8,
        min_order: 1,
        run: ramanujan_methods,
    },
    CheckSpec {
        id: "v6_printed",
        order: 60,
        t: 3,
        min_order: 2,
        run: v6_printed,
    },
    CheckSpec {
        id: "v_eta_prefactor",
        order: 60,
        t: 4,
        min_order: 1,
        run: v_eta_prefactor,
    },
    CheckSpec {
        id: "theorem2",
        order: 60,
        t: 8,
        min_order: 1,
        run: v_recursion_slices,
    },
    CheckSpec {
        id: "theorem3",
        order: 60,
        t: 6,
        min_order: 1,
        run: cc_recursion_slices,
    },
    CheckSpec {
        id: "theorem3_example",
        order: 60,
        t: 2,
        min_order: 1,
        run: weight4_theta_example,
    },
    CheckSpec {
        id: "theta_diagonal_convention",
        order: 60,
        t: 2,
        min_order: 2,
        run: theta_diagonal_convention,
    },
    CheckSpec {
        id: "prelim1",
        order: 100,
        t: 2,
        min_order: 1,
        run: e4_e6_in_theta,
    },
    CheckSpec {
        id: "prelim2",
        order: 100,
        t: 3,
        min_order: 1,
        run: theta_product_rule,
    },
    CheckSpec {
        id: "sec5_g_basis_theorem",
        order: 60,
        t: 6,
        min_order: 1,
        run: g_basis_slices,
    },
    CheckSpec {
        id: "sec5_g_basis_recursion_printed",
        order: 60,
        t: 6,
        min_order: 4,
        run: g_basis_printed_shift,
    },
    CheckSpec {
        id: "theorem5_1",
        order: 60,
        t: 4,
        min_order: 1,
        run: c_from_theta_derivatives,
    },
    CheckSpec {
        id: "theorem5_1_printed",
        order: 60,
        t: 4,
        min_order: 4,
        run: c_from_theta_derivatives_printed,
    },
    CheckSpec {
        id: "andrews_rose",
        order: 40,
        t: 4,
        min_order: 1,
        run: c_recurrence,
    },
    CheckSpec {
        id: "weight_decomposition",
        order: 60,
        t: 4,
        min_order: SOLVER_MIN,
        run: weight_decomposition,
    },
    CheckSpec {
        id: "weight_decomposition_printed",
        order: 60,
        t: 4,
        min_order: 1,
        run: weight_decomposition_printed,
    },
    CheckSpec {
        id: "prop5_3_u",
        order: 200,
        t: 0,
        min_order: 1,
        run: u_family_product,
    },
    CheckSpec {
        id: "prop5_3_c",
        order: 200,
        t: 0,
        min_order: 1,
        run: c_family_product,
    },
    CheckSpec {
        id: "prop5_3_ustar",
        order: 200,
        t: 0,
        min_order: 1,
        run: u_star_family_sum,
    },
    CheckSpec {
        id: "lowest_exponents",
        order: 80,
        t: 8,
        min_order: 1,
        run: lowest_exponents,
    },
    CheckSpec {
        id: "cong_u_mod3",
        order: 500,
        t: 0,
        min_order: 2,
        run: u_congruence_mod3,
    },
    CheckSpec {
        id: "cong_kappa_mod3",
        order: 999,
        t: 0,
        min_order: 6,
        run: c_congruence_mod3,
    },
    CheckSpec {
        id: "fibo_mod5",
        order: 2000,
        t: 0,
        min_order: 1,
        run: two_squares_mod5,
    },
    CheckSpec {
        id: "sec4_derivative_theorem",
        order: 60,
        t: 6,
        min_order: 1,
        run: partition_eisenstein_derivative,
    },
    CheckSpec {
        id: "lemma4_1",
        order: 60,
        t: 8,
        min_order: 1,
        run: etilde_recurrence,
    },
    CheckSpec {
        id: "sec4_partial_e2",
        order: 60,
        t: 5,
        min_order: SOLVER_MIN,
        run: partial_e2_signs,
    },
    CheckSpec {
        id: "sec4_partial_e2_printed",
        order: 60,
        t: 5,
        min_order: SOLVER_MIN,
        run: partial_e2_printed,
    },
    CheckSpec {
        id: "umbral_hr",
        order: 80,
        t: 6,
        min_order: 1,
        run: umbral_h_series,
    },
    CheckSpec {
        id: "umbral_remark",
        order: 40,
        t: 0,
        min_order: 1,
        run: umbral_shifted,
    },
    CheckSpec {
        id: "vary_alpha",
        order: 0,
        t: 10,
        min_order: 0,
        run: cv_alpha_ratio,
    },
    CheckSpec {
        id: "cv_scaling",
        order: 0,
        t: 8,
        min_order: 0,
        run: cv_scaling,
    },
    CheckSpec {
        id: "cv_integrality",
        order: 0,
        t: 10,
        min_order: 0,
        run: cv_integrality,
    },
    CheckSpec {
        id: "v_weights_recurrence",
        order: 0,
        t: 10,
        min_order: 0,
        run: v_weights_recurrence,
    },
    CheckSpec {
        id: "diffeq",
        order: 200,
        t: 0,
        min_order: 1,
        run: eisenstein_derivatives,
    },
    CheckSpec {
        id: "ram_like",
        order: 200,
        t: 0,
        min_order: 1,
        run: theta_log_derivatives,
    },
    CheckSpec {
        id: "useful_1",
        order: 200,
        t: 0,
        min_order: 1,
        run: g_basis_derivatives,
    },
    CheckSpec {
        id: "theta_identity",
        order: 200,
        t: 0,
        min_order: 1,
        run: theta_identity,
    },
    CheckSpec {
        id: "g2_theta",
        order: 200,
        t: 0,
        min_order: 1,
        run: g2_theta,
    },
    CheckSpec {
        id: "multiplicity_oracle",
        order: 60,
        t: 4,
        min_order: 1,
        run: multiplicity_check,
    },
    CheckSpec {
        id: "u_star_checks",
        order: 60,
        t: 5,
        min_order: 1,
        run: u_star_checks,
    },
    CheckSpec {
        id: "family_integrality",
        order: 60,
        t: 6,
        min_order: 1,
        run: integrality_of_families,
    },
    CheckSpec {
        id: "solver_round_trip",
        order: 60,
        t: 4,
        min_order: SOLVER_MIN,
        run: solver_round_trip,
    },
];

/// Every registered check, in suite order.
pub fn registry() -> &'static [CheckSpec] {
    REGISTRY
}
