//! Acceptance criteria 1-12. Each criterion prints one PASS/FAIL line; the
//! test fails if any criterion does.
//!
//! Run with `cargo test -p quasimod --test acceptance -- --nocapture`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use quasimod::generators::{e2, e4, euler_product, g2, theta, Diagonal, ThetaVariant};
use quasimod::graded::{eval_poly, express_in_basis, Basis, Exponents, GradedPoly};
use quasimod::partitions::{
    family_sum, macmahon_c, macmahon_u, multiplicity_oracle, Family, PartClass,
};
use quasimod::recursions::{cc_table, cc_tilde_table, cv_closed_ratio, cv_table};
use quasimod::verify::{
    c_from_dtheta, count_two_squares, dtheta4_ratio, ramanujan_u, ramanujan_v, run_suite, Method,
    RunOptions, Status, VerificationReport,
};
use quasimod::TruncatedSeries;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn poly(basis: Basis, terms: &[(Exponents, (i64, i64))]) -> GradedPoly {
    GradedPoly::from_terms(basis, terms.iter().map(|&(k, (n, d))| (k, q(n, d))))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn suite() -> &'static BTreeMap<String, VerificationReport> {
    static SUITE: OnceLock<BTreeMap<String, VerificationReport>> = OnceLock::new();
    SUITE.get_or_init(|| {
        run_suite(RunOptions::default())
            .into_iter()
            .map(|r| (r.identity_id.clone(), r))
            .collect()
    })
}

fn report(id: &str) -> Result<&'static VerificationReport, String> {
    suite()
        .get(id)
        .ok_or_else(|| format!("no check named {id}"))
}

fn passes(id: &str) -> Outcome {
    let r = report(id)?;
    ensure(r.status == Status::Pass, || format!("{id}: {r:?}"))
}

fn series_eq(what: &str, a: &TruncatedSeries, b: &TruncatedSeries) -> Outcome {
    match a.first_difference(b) {
        None => Ok(()),
        Some((n, x, y)) => Err(format!("{what}: q^{n}: {x} != {y}")),
    }
}

fn ramanujan_expansions() -> Outcome {
    let e = Basis::E;
    let u = [
        poly(e, &[((2, 0, 0), (5, 3)), ((0, 1, 0), (-2, 3))]),
        poly(
            e,
            &[
                ((3, 0, 0), (35, 9)),
                ((1, 1, 0), (-42, 9)),
                ((0, 0, 1), (16, 9)),
            ],
        ),
        poly(
            e,
            &[
                ((4, 0, 0), (35, 3)),
                ((2, 1, 0), (-84, 3)),
                ((1, 0, 1), (64, 3)),
                ((0, 2, 0), (-12, 3)),
            ],
        ),
    ];
    let v = [
        poly(e, &[((2, 0, 0), (3, 1)), ((0, 1, 0), (-2, 1))]),
        poly(
            e,
            &[
                ((3, 0, 0), (15, 1)),
                ((1, 1, 0), (-30, 1)),
                ((0, 0, 1), (16, 1)),
            ],
        ),
        poly(
            e,
            &[
                ((4, 0, 0), (105, 1)),
                ((2, 1, 0), (-420, 1)),
                ((1, 0, 1), (448, 1)),
                ((0, 2, 0), (-132, 1)),
            ],
        ),
    ];
    for method in [Method::Conjugated, Method::Quotient] {
        for (i, (pu, pv)) in u.iter().zip(&v).enumerate() {
            let t = i as u32 + 2;
            let got_u = express_in_basis(&ramanujan_u(t as usize, 60, method), t, e)
                .map_err(|x| x.to_string())?;
            let got_v = express_in_basis(&ramanujan_v(t as usize, 60, method), t, e)
                .map_err(|x| x.to_string())?;
            ensure(&got_u == pu, || {
                format!("U_{} via {method:?}: {got_u}", 2 * t)
            })?;
            ensure(&got_v == pv, || {
                format!("V_{} via {method:?}: {got_v}", 2 * t)
            })?;
        }
    }
    passes("ramanujan_expansions")
}

fn cv_values_and_theorem() -> Outcome {
    let t = cv_table(4);
    for ((a, b, c), want) in [
        ((1, 0, 0), 1),
        ((0, 1, 0), -2),
        ((0, 0, 1), 16),
        ((1, 1, 0), -30),
        ((1, 0, 1), 448),
    ] {
        let got = t.get(a, b, c);
        ensure(got == q(want, 1), || format!("c_v({a},{b},{c}) = {got}"))?;
    }
    let r = report("theorem2")?;
    ensure(r.order >= 60, || "theorem2 ran below order 60".into())?;
    passes("theorem2")
}

fn cc_theorem_and_example() -> Outcome {
    let t = cc_table(2);
    for ((a, b, c), (n, d)) in [
        ((2, 0, 0), (1, 192)),
        ((1, 0, 1), (-1, 96)),
        ((0, 0, 2), (1, 192)),
        ((0, 1, 1), (-11, 96)),
    ] {
        let got = t.get(a, b, c);
        ensure(got == q(n, d), || format!("c_c({a},{b},{c}) = {got}"))?;
    }
    // the weight-4 example against D^2(theta_4)/theta_4 under the plain convention
    let example = poly(
        Basis::Theta(Diagonal::Plain),
        &[
            ((2, 0, 0), (1, 192)),
            ((1, 0, 1), (-1, 96)),
            ((0, 0, 2), (1, 192)),
            ((0, 1, 1), (-11, 96)),
        ],
    );
    series_eq(
        "weight-4 example",
        &eval_poly(&example, 60),
        &dtheta4_ratio(2, 60),
    )?;
    passes("theorem3")?;
    passes("theorem3_example")
}

fn g_basis() -> Outcome {
    let t = cc_tilde_table(2);
    for ((a, b, c), (n, d)) in [
        ((2, 0, 0), (1, 192)),
        ((1, 1, 0), (-1, 96)),
        ((0, 2, 0), (3, 192)),
        ((0, 0, 1), (-1, 96)),
    ] {
        let got = t.get(a, b, c);
        ensure(got == q(n, d), || format!("c~_c({a},{b},{c}) = {got}"))?;
    }
    // (E2^2 - 2 E2 G2 + 3 G2^2 - 2 E4) / 192, assembled from raw series
    let n = 60;
    let (e2, g2, e4) = (e2(n), g2(n), e4(n));
    let direct = e2
        .mul(&e2)
        .sub(&e2.mul(&g2).scale_int(2))
        .add(&g2.mul(&g2).scale_int(3))
        .sub(&e4.scale_int(2))
        .scale(&q(1, 192));
    series_eq("level-2 G-basis slice", &eval_poly(&t.slice(2), n), &direct)?;
    passes("sec5_g_basis_theorem")
}

fn multiplicity_theorem() -> Outcome {
    for t in 1..=4 {
        series_eq(
            &format!("C_{}", 2 * t),
            &c_from_dtheta(t, 60).map_err(|e| e.to_string())?,
            &macmahon_c(t, 60),
        )?;
    }
    // brute force on the small end; the registered check covers n <= 60
    for t in 1..=4 {
        let (u, c) = (macmahon_u(t, 24), macmahon_c(t, 24));
        for n in 0..=24u64 {
            let all = BigRational::from_integer(
                multiplicity_oracle(t, n, PartClass::All).map_err(|e| e.to_string())?,
            );
            let odd = BigRational::from_integer(
                multiplicity_oracle(t, n, PartClass::Odd).map_err(|e| e.to_string())?,
            );
            ensure(u.coefficient(n as usize).unwrap() == &all, || {
                format!("U_{} at q^{n}", 2 * t)
            })?;
            ensure(c.coefficient(n as usize).unwrap() == &odd, || {
                format!("C_{} at q^{n}", 2 * t)
            })?;
        }
    }
    passes("theorem5_1")?;
    passes("multiplicity_oracle")
}

fn product_identities() -> Outcome {
    let n = 200;
    let p = |m| euler_product(m, n).unwrap();
    let inv = |s: TruncatedSeries| s.invert().unwrap();
    let u = p(6).mul(&inv(p(1).mul(&p(2)).mul(&p(3))));
    series_eq("sum of U_{2t}", &family_sum(Family::U, n), &u)?;
    let c = p(4)
        .mul(&p(6).pow(2))
        .mul(&inv(p(1).mul(&p(3)).mul(&p(12))));
    series_eq("sum of C_{2t}", &family_sum(Family::C, n), &c)?;
    for id in [
        "prop5_3_u",
        "prop5_3_c",
        "prop5_3_ustar",
        "lowest_exponents",
    ] {
        passes(id)?;
    }
    ensure(report("lowest_exponents")?.order >= 8, || {
        "lowest_exponents order".into()
    })
}

fn congruences() -> Outcome {
    let u = family_sum(Family::U, 500)
        .reduce_mod(3)
        .map_err(|e| e.to_string())?;
    for n in 0..=166 {
        ensure(u.residues()[3 * n + 2] == 0, || {
            format!("u({}) mod 3", 3 * n + 2)
        })?;
    }
    passes("cong_u_mod3")?;
    passes("cong_kappa_mod3")?;
    ensure(report("cong_kappa_mod3")?.order >= 999, || {
        "kappa order".into()
    })
}

fn fibonacci() -> Outcome {
    let th2 = theta(ThetaVariant::Four, 2000).pow(2);
    for n in 0..=2000usize {
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let want = BigRational::from_integer(BigInt::from(count_two_squares(n as u64)) * sign);
        ensure(th2.coefficient(n).unwrap() == &want, || {
            format!("theta_4^2 at q^{n}")
        })?;
    }
    passes("fibo_mod5")?;
    ensure(report("fibo_mod5")?.order >= 2000, || "fibo order".into())
}

fn section4() -> Outcome {
    for id in ["sec4_derivative_theorem", "umbral_hr", "umbral_remark"] {
        passes(id)?;
    }
    Ok(())
}

fn partial_e2() -> Outcome {
    passes("sec4_partial_e2")?;
    let note = report("sec4_partial_e2")?.note.clone().unwrap_or_default();
    ensure(
        note.contains("U: s_j = -1") && note.contains("U*: s_j = (-1)^j"),
        || format!("sign pattern not recorded: {note:?}"),
    )?;
    // the literal printed statement cannot hold for both families
    let printed = report("sec4_partial_e2_printed")?;
    ensure(printed.status == Status::RecordedDiscrepancy, || {
        format!("{printed:?}")
    })
}

fn closed_ratio() -> Outcome {
    let t = cv_table(10);
    let mut compared = 0;
    for (&(a, b, c), v) in t.entries() {
        let base = t.get(0, b as i64, c as i64);
        if base.is_zero() {
            continue;
        }
        let ratio = v / &base;
        let closed = cv_closed_ratio(a, b, c);
        ensure(ratio == closed, || {
            format!("({a},{b},{c}): {ratio} != {closed}")
        })?;
        compared += 1;
    }
    ensure(compared > 20, || {
        format!("only {compared} entries compared")
    })?;
    passes("vary_alpha")
}

const DOCUMENTED_CORRECTIONS: &[&str] = &[
    "v6_printed",
    "v_eta_prefactor",
    "theta_diagonal_convention",
    "sec5_g_basis_recursion_printed",
    "theorem5_1_printed",
    "weight_decomposition_printed",
    "sec4_partial_e2_printed",
];

fn properties_and_suite() -> Outcome {
    let n = 200;
    series_eq(
        "theta_3^4 = theta_2^4 + theta_4^4",
        &theta(ThetaVariant::Three, n).pow(4),
        &theta(ThetaVariant::TwoPow4, n).add(&theta(ThetaVariant::Four, n).pow(4)),
    )?;
    // a fixed sample of the ring, derivation and solver laws; the random
    // versions live in the `properties` test target
    let (a, b) = (e2(40), theta(ThetaVariant::Four, 40));
    series_eq("commutativity", &a.mul(&b), &b.mul(&a))?;
    series_eq(
        "Leibniz",
        &a.mul(&b).derive(),
        &a.derive().mul(&b).add(&a.mul(&b.derive())),
    )?;
    let p = poly(
        Basis::G,
        &[
            ((1, 1, 0), (3, 7)),
            ((0, 0, 2), (-5, 2)),
            ((0, 3, 0), (1, 1)),
        ],
    );
    let back = express_in_basis(&eval_poly(&p, 60), 4, Basis::G).map_err(|e| e.to_string())?;
    ensure(back == p, || format!("solver round trip gave {back}"))?;
    passes("solver_round_trip")?;
    passes("theta_identity")?;

    for r in suite().values() {
        match r.status {
            Status::Pass => {}
            Status::Fail => {
                return Err(format!("{} failed: {:?}", r.identity_id, r.first_mismatch))
            }
            Status::RecordedDiscrepancy => {
                ensure(
                    DOCUMENTED_CORRECTIONS.contains(&r.identity_id.as_str()),
                    || format!("undocumented discrepancy {}", r.identity_id),
                )?;
                ensure(r.note.as_deref().is_some_and(|s| !s.is_empty()), || {
                    format!("{} has no resolved reading", r.identity_id)
                })?;
            }
        }
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 12] = [
        (
            "Ramanujan U/V expansions, both oracles, order 60",
            ramanujan_expansions,
        ),
        (
            "c_v printed values; V recursion slices for t <= 8",
            cv_values_and_theorem,
        ),
        (
            "c_c recursion for t <= 6; weight-4 theta example",
            cc_theorem_and_example,
        ),
        ("G-basis recursion for t <= 6; level-2 values", g_basis),
        (
            "multiplicity sums C_2t; partition oracle",
            multiplicity_theorem,
        ),
        (
            "infinite product identities; lowest exponents",
            product_identities,
        ),
        ("congruences mod 3", congruences),
        ("sums of two squares mod 5", fibonacci),
        (
            "partition Eisenstein derivative; umbral identities",
            section4,
        ),
        ("E2-partial derivative with resolved signs", partial_e2),
        ("closed-form c_v ratio up to weight 10", closed_ratio),
        (
            "property laws; full suite has no failures",
            properties_and_suite,
        ),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("criterion {:>2}: PASS  {name}", i + 1),
            Err(why) => {
                println!("criterion {:>2}: FAIL  {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
