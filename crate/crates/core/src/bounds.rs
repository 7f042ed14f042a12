//! Closed-form bound and threshold evaluation.
//!
//! The thresholds grow far past any fixed-width representation, so every
//! potentially huge quantity is carried in log space, with an exact
//! big-integer route alongside for cross-checking. Natural log throughout.

use alloc::string::String;
use alloc::vec::Vec;
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

fn ln(x: f64) -> f64 {
    libm::log(x)
}

fn log10(x: f64) -> f64 {
    libm::log10(x)
}

fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

fn exp10(x: f64) -> f64 {
    libm::pow(10.0, x)
}

/// log10 of a big integer, accurate to well below 1e-12 relative.
pub fn log10_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        let v: u64 = x.try_into().unwrap_or(u64::MAX);
        return log10(v as f64);
    }
    let shift = bits - 64;
    let top: BigUint = x >> shift;
    let v: u64 = (&top).try_into().unwrap();
    log10(v as f64) + shift as f64 * log10(2.0)
}

/// One evaluated bound: name, log10 of the value, and the value itself when
/// it fits comfortably in an f64 (below 1e15).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundValue {
    pub name: String,
    pub log10: f64,
    pub value: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: u64,
    pub k: u64,
    pub bounds: Vec<BoundValue>,
}

/// Leading coefficient of the main bound: 16 sqrt(5) sqrt(k ln k).
pub fn main_coefficient(k: u64) -> f64 {
    16.0 * sqrt(5.0) * sqrt(k as f64 * ln(k as f64))
}

/// The sqrt(10) variant of the leading coefficient that appears alongside
/// the sqrt(5) form; neither is declared canonical here.
pub fn main_coefficient_sqrt10(k: u64) -> f64 {
    16.0 * sqrt(10.0) * sqrt(k as f64 * ln(k as f64))
}

/// Bukh--Jiang coefficient 80 sqrt(k) ln k.
pub fn bukh_jiang_coefficient(k: u64) -> f64 {
    80.0 * sqrt(k as f64) * ln(k as f64)
}

fn bound_value(name: &str, coeff: f64, n: u64, exponent: f64) -> BoundValue {
    let lg = log10(coeff) + exponent * log10(n as f64);
    BoundValue {
        name: String::from(name),
        log10: lg,
        value: (lg < 15.0).then(|| exp10(lg)),
    }
}

/// Evaluate this bound family and the historical comparison bounds at (n, k).
pub fn eval_bounds(n: u64, k: u64) -> BoundReport {
    let kf = k as f64;
    let exp_main = 1.0 + 1.0 / kf;
    let exp_second = 1.0 + (2.0 * kf - 1.0) / (2.0 * kf * kf);
    let bounds = alloc::vec![
        bound_value("main", main_coefficient(k), n, exp_main),
        bound_value(
            "main-sqrt10-variant",
            main_coefficient_sqrt10(k),
            n,
            exp_main
        ),
        bound_value(
            "main-second-term",
            8000.0 * kf * kf * kf * kf,
            n,
            exp_second
        ),
        bound_value("bondy-simonovits", 20.0 * kf, n, exp_main),
        bound_value("pikhurko", kf - 1.0, n, exp_main),
        bound_value("bukh-jiang", bukh_jiang_coefficient(k), n, exp_main),
    ];
    BoundReport { n, k, bounds }
}

/// log10 of the degree-window, degree-floor, and vertex-floor thresholds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub k: u64,
    pub log10_delta: f64,
    pub log10_d_floor: f64,
    pub log10_n_floor: f64,
}

/// Delta = sqrt(k) (20k)^{2k}, d_floor = (20k)^{4k^2+2k},
/// n_floor = (20k)^{4k^3+2k^2}, all in log10.
pub fn thresholds(k: u64) -> ThresholdReport {
    let kf = k as f64;
    let lg_20k = log10(20.0 * kf);
    ThresholdReport {
        k,
        log10_delta: 0.5 * log10(kf) + 2.0 * kf * lg_20k,
        log10_d_floor: (4.0 * kf * kf + 2.0 * kf) * lg_20k,
        log10_n_floor: (4.0 * kf * kf * kf + 2.0 * kf * kf) * lg_20k,
    }
}

/// Same thresholds through exact big-integer arithmetic.
/// Delta is irrational, so its square k (20k)^{4k} is used.
pub fn thresholds_exact(k: u64) -> ThresholdReport {
    let base = BigUint::from(20 * k);
    let delta_sq = BigUint::from(k) * base.pow(4 * k as u32);
    let d_floor = base.pow((4 * k * k + 2 * k) as u32);
    let n_floor = base.pow((4 * k * k * k + 2 * k * k) as u32);
    ThresholdReport {
        k,
        log10_delta: log10_biguint(&delta_sq) / 2.0,
        log10_d_floor: log10_biguint(&d_floor),
        log10_n_floor: log10_biguint(&n_floor),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossoverReport {
    /// Smallest k where the main coefficient drops below Pikhurko's k-1.
    pub vs_pikhurko: Option<u64>,
    /// Smallest k where it drops below Bukh--Jiang's 80 sqrt(k) ln k.
    pub vs_bukh_jiang: Option<u64>,
}

/// Scan k = 3..=k_max for the crossover points of the leading coefficients.
pub fn crossover(k_max: u64) -> CrossoverReport {
    let mut vs_pikhurko = None;
    let mut vs_bukh_jiang = None;
    for k in 3..=k_max {
        if vs_pikhurko.is_none() && main_coefficient(k) < (k - 1) as f64 {
            vs_pikhurko = Some(k);
        }
        if vs_bukh_jiang.is_none() && main_coefficient(k) < bukh_jiang_coefficient(k) {
            vs_bukh_jiang = Some(k);
        }
        if vs_pikhurko.is_some() && vs_bukh_jiang.is_some() {
            break;
        }
    }
    CrossoverReport {
        vs_pikhurko,
        vs_bukh_jiang,
    }
}

/// Alternative arithmetic route for the Pikhurko crossover, comparing
/// (k-1)^2 against 1280 k ln k to avoid the square roots.
pub fn crossover_pikhurko_squared(k_max: u64) -> Option<u64> {
    (3..=k_max).find(|&k| {
        let kf = k as f64;
        (kf - 1.0) * (kf - 1.0) > 1280.0 * kf * ln(kf)
    })
}
