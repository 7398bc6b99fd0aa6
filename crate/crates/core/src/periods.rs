//! Brute-force ground truth: reduced periods `eta*_k` and the reduced
//! period polynomial `P*_e(X) = prod_k (X - eta*_k)`.

use num_bigint::BigInt;
use serde::Serialize;

use crate::cyclotomic::{poly_from_roots, to_int_poly, CycElem};
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::poly::IntPoly;
use crate::sweep::{CyclicGroup, Execution};

/// `counts[k][t] = #{h in [0, f) : Tr(gamma^{e h + k}) = t}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceSpectrum {
    pub p: u64,
    pub e: u64,
    pub counts: Vec<Vec<u64>>,
}

impl TraceSpectrum {
    /// `f = (q - 1) / e`
    pub fn f(&self) -> u64 {
        self.counts[0].iter().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodVector {
    pub e: u64,
    pub eta_star: Vec<CycElem>,
}

impl PeriodVector {
    /// `eta*_k` for any integer `k`, read modulo `e`.
    pub fn get(&self, k: i64) -> &CycElem {
        &self.eta_star[k.rem_euclid(self.e as i64) as usize]
    }
}

/// One sweep over `F_q^*` bucketing `gamma^j` by `(j mod e, Tr(gamma^j))`.
pub fn trace_spectrum(ctx: &FieldCtx, e: u64, max_q: u64, exec: Execution) -> Result<TraceSpectrum> {
    if e == 0 || (ctx.q() - 1) % e != 0 {
        return Err(Error::Precondition(format!("e = {e} must divide q - 1 = {}", ctx.q() - 1)));
    }
    let counts = CyclicGroup::full(ctx).residue_trace_counts(e, max_q, exec)?;
    Ok(TraceSpectrum { p: ctx.p(), e, counts })
}

/// `eta_k = sum_t counts[k][t] zeta_p^t` and `eta*_k = 1 + e eta_k`.
pub fn reduced_periods(spectrum: &TraceSpectrum) -> PeriodVector {
    let p = spectrum.p;
    let one = CycElem::from_int(p, 1).unwrap();
    let e_big = BigInt::from(spectrum.e);
    let eta_star = spectrum
        .counts
        .iter()
        .map(|row| {
            let v: Vec<BigInt> = row.iter().map(|&c| BigInt::from(c)).collect();
            let eta = CycElem::from_group_ring(p, &v).unwrap();
            &one + &eta.scale(&e_big)
        })
        .collect();
    PeriodVector { e: spectrum.e, eta_star }
}

/// Expands `prod_k (X - eta*_k)` and checks every coefficient is a rational
/// integer.
pub fn period_polynomial(periods: &PeriodVector) -> Result<IntPoly> {
    let n = periods.eta_star.iter().map(CycElem::n).fold(1u64, num_integer::lcm);
    let coeffs = poly_from_roots(n, &periods.eta_star)?;
    let poly = to_int_poly(&coeffs)
        .ok_or_else(|| Error::Internal("period polynomial has a non-integer coefficient".into()))?;
    if poly.degree() != Some(periods.e as usize) || !poly.is_monic() {
        return Err(Error::Internal("period polynomial is not monic of degree e".into()));
    }
    Ok(poly)
}

/// Spectrum, periods and polynomial in one call.
pub fn brute_force(ctx: &FieldCtx, e: u64, max_q: u64, exec: Execution) -> Result<(PeriodVector, IntPoly)> {
    let periods = reduced_periods(&trace_spectrum(ctx, e, max_q, exec)?);
    let poly = period_polynomial(&periods)?;
    Ok((periods, poly))
}
