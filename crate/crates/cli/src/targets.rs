//! Named series and tables reachable from the command line.

use num_rational::BigRational;

use quasimod::generators::{
    e2, e4, e6, eisenstein, euler_product, g2, h_series, lambert, theta, ThetaVariant,
};
use quasimod::graded::{partition_eisenstein, PeSign};
use quasimod::partitions::{macmahon_c, macmahon_u, macmahon_u_star, macmahon_u_two};
use quasimod::recursions::{
    cc_table, cc_tilde_printed_table, cc_tilde_table, cv_table, v_weights, w_weights, CoeffTable,
};
use quasimod::verify::{dtheta4_ratio, ramanujan_u, ramanujan_v, Method};
use quasimod::TruncatedSeries;

pub const SERIES: &[&str] = &[
    "E2",
    "E4",
    "E6",
    "E:k",
    "theta3",
    "theta4",
    "theta2_4",
    "eta_product",
    "G2",
    "U:t",
    "V:t",
    "Etilde:t",
    "MacU:t",
    "MacUstar:t",
    "MacC:t",
    "U2:t",
    "PE:t",
    "S:j",
    "H:r",
    "Dtheta4:t",
];

pub const TABLES: &[&str] = &["cv", "cc", "cc_tilde", "cc_tilde_printed", "v", "w"];

pub enum Table {
    Triple(CoeffTable),
    /// `(index, value)` rows.
    Indexed(Vec<(usize, BigRational)>),
}

/// Splits `NAME:N`; a bare `NAME` takes the index from `--t`.
fn split(target: &str, default: u32) -> Result<(&str, u32), String> {
    match target.split_once(':') {
        None => Ok((target, default)),
        Some((name, idx)) => idx
            .parse::<u32>()
            .map(|i| (name, i))
            .map_err(|_| format!("malformed index in '{target}'")),
    }
}

pub fn expand(target: &str, order: usize, default_t: u32) -> Result<TruncatedSeries, String> {
    let (name, t) = split(target, default_t)?;
    let tu = t as usize;
    let series = match name {
        "E2" => e2(order),
        "E4" => e4(order),
        "E6" => e6(order),
        "E" => eisenstein(tu, order).map_err(|e| e.to_string())?,
        "theta3" => theta(ThetaVariant::Three, order),
        "theta4" => theta(ThetaVariant::Four, order),
        "theta2_4" => theta(ThetaVariant::TwoPow4, order),
        "eta_product" => euler_product(1, order).map_err(|e| e.to_string())?,
        "G2" => g2(order),
        "U" => ramanujan_u(tu, order, Method::Conjugated),
        "V" => ramanujan_v(tu, order, Method::Conjugated),
        "Etilde" => ramanujan_u(tu, order, Method::Quotient),
        "MacU" => macmahon_u(tu, order),
        "MacUstar" => macmahon_u_star(tu, order),
        "MacC" => macmahon_c(tu, order),
        "U2" => macmahon_u_two(tu, order),
        "PE" => partition_eisenstein(t, PeSign::Plus, order),
        "S" => lambert(t, order),
        "H" => h_series(t, order).map_err(|e| e.to_string())?,
        "Dtheta4" => dtheta4_ratio(tu, order),
        _ => {
            return Err(format!(
                "unknown series '{target}' (known: {})",
                SERIES.join(", ")
            ))
        }
    };
    Ok(series)
}

pub fn table(target: &str, t: u32) -> Result<Table, String> {
    let table = match target {
        "cv" => Table::Triple(cv_table(t)),
        "cc" => Table::Triple(cc_table(t)),
        "cc_tilde" => Table::Triple(cc_tilde_table(t)),
        "cc_tilde_printed" => Table::Triple(cc_tilde_printed_table(t)),
        "v" => Table::Indexed(
            v_weights(t as usize)
                .map_err(|e| e.to_string())?
                .into_iter()
                .enumerate()
                .map(|(i, v)| (i + 1, v))
                .collect(),
        ),
        "w" => Table::Indexed(w_weights(t as usize).into_iter().enumerate().collect()),
        _ => {
            return Err(format!(
                "unknown table '{target}' (known: {})",
                TABLES.join(", ")
            ))
        }
    };
    Ok(table)
}
