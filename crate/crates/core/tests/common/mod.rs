//! Perturbed profiles shared by the property tests and the acceptance run.

#![allow(dead_code)]

use ckn_core::constants::ParamPoint;
use ckn_core::extremizers::{t1_radial, T1Case};
use ckn_core::profile::{PowerExp, PowerExpSum};
use ckn_core::{ScalarProfile, VectorProfileRadialAligned};

/// r^k (1 + Σ c_j r^{jq}) exp(−β r^q) Y_k with q = 2(1 + a).
pub fn perturbed_scalar(a: f64, k: u32, beta: f64, coeffs: &[f64]) -> ScalarProfile {
    let q = 2.0 * (1.0 + a);
    let kf = f64::from(k);
    let mut terms = vec![PowerExp::new(1.0, kf, beta, q)];
    for (j, &c) in coeffs.iter().enumerate() {
        terms.push(PowerExp::new(c, kf + (j as f64 + 1.0) * q, beta, q));
    }
    ScalarProfile::new(PowerExpSum(terms), k)
}

/// Theorem-1 extremizer h multiplied by 1 + Σ c_j r^{j(a−b+1)}.
pub fn perturbed_curlfree(p: ParamPoint, beta: f64, case: T1Case, coeffs: &[f64]) -> VectorProfileRadialAligned {
    let h = t1_radial(p, beta, case).expect("valid extremizer");
    let mut terms = vec![h];
    for (j, &c) in coeffs.iter().enumerate() {
        terms.push(PowerExp::new(c, h.power + (j as f64 + 1.0) * h.exponent, h.rate, h.exponent));
    }
    VectorProfileRadialAligned::new(PowerExpSum(terms))
}

pub fn rel_err(x: f64, y: f64) -> f64 {
    (x / y - 1.0).abs()
}
