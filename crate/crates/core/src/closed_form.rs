//! Explicit factorizations of the reduced period polynomial `P*_{2^m}`
//! over `F_{p^s}`, `p = 3, 5 (mod 8)`, in terms of the normalized
//! partitions of powers of `p`.
//!
//! Notation: `h = q^{1/2}`,
//! `S(a..b) = sum_{r=a}^{b} 2^{r-1} A_r q^{(2^{r-2}-1)/2^{r-1}}` and
//! `SC(a..b) = sum_{r=a}^{b} 2^{r-1} C_r q^{(2^{r-1}-1)/2^r}`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{self, ord2};
use crate::error::{precondition, Error, Result};
use crate::field::FieldCtx;
use crate::partitions::{PartitionRecord, PartitionSet};
use crate::poly::{self, IntPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormulaCase {
    /// `p = 3 (mod 8)`, `m >= 4`, `2^{m-1} | s`
    T1a,
    /// `p = 3 (mod 8)`, `m >= 5`, `2^{m-2} || s`
    T1b,
    /// `p = 3 (mod 8)`, `m = 4`, `4 || s`
    T1c,
    /// `p = 5 (mod 8)`, `m >= 4`, `2^m | s`
    T2a,
    /// `p = 5 (mod 8)`, `m >= 4`, `2^{m-1} || s`
    T2b,
    /// `p = 5 (mod 8)`, `m >= 4`, `2^{m-2} || s`
    T2c,
    SmallM2,
    SmallM3,
    /// `e | p^l + 1`: `P*_e` is a product of two linear powers.
    MinusOnePower,
}

impl FormulaCase {
    pub fn name(self) -> &'static str {
        match self {
            FormulaCase::T1a => "T1a",
            FormulaCase::T1b => "T1b",
            FormulaCase::T1c => "T1c",
            FormulaCase::T2a => "T2a",
            FormulaCase::T2b => "T2b",
            FormulaCase::T2c => "T2c",
            FormulaCase::SmallM2 => "SMALL_M2",
            FormulaCase::SmallM3 => "SMALL_M3",
            FormulaCase::MinusOnePower => "MINUS_ONE_POWER",
        }
    }
}

impl fmt::Display for FormulaCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for FormulaCase {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CaseTag {
    /// `p mod 8`, 3 or 5.
    pub p_class: u64,
    pub case: FormulaCase,
    pub m: u32,
    /// `ord_2(s)`
    pub s2: u32,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (p = {} mod 8, m = {}, ord_2 s = {})", self.case, self.p_class, self.m, self.s2)
    }
}

/// `q^{num/den} = p^{s num / den}` exactly.
pub fn q_power(p: u64, s: u32, num: u64, den: u64) -> Result<BigInt> {
    let top = s as u64 * num;
    if den == 0 || top % den != 0 {
        return Err(precondition(format!("q^({num}/{den}) with s = {s} is not an integral power of p")));
    }
    Ok(BigInt::from(p).pow((top / den) as u32))
}

/// The case whose formula describes `P*_{2^m}` over `F_{p^s}`.
pub fn classify(p: u64, s: u32, m: u32) -> Result<CaseTag> {
    let class = p % 8;
    if class != 3 && class != 5 {
        return Err(Error::UnsupportedResidue(class));
    }
    if !arith::is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if s == 0 {
        return Err(Error::ZeroDegree);
    }
    if m < 2 {
        return Err(precondition(format!("m = {m} must be at least 2")));
    }
    let s2 = ord2(s as u64);
    // ord_2(q - 1) is 1 (p = 3) or 2 (p = 5) for odd s, and s2 + 2 for even s
    let ord_q1 = if s % 2 == 1 { if class == 3 { 1 } else { 2 } } else { s2 + 2 };
    if ord_q1 < m {
        return Err(precondition(format!("2^{{m-2}} ∤ s (m = {m}, s = {s}): 2^{m} does not divide q - 1")));
    }
    let case = match (class, m) {
        (_, 2) => FormulaCase::SmallM2,
        (_, 3) => FormulaCase::SmallM3,
        (3, _) if s2 >= m - 1 => FormulaCase::T1a,
        (3, 4) => FormulaCase::T1c,
        (3, _) => FormulaCase::T1b,
        (_, _) if s2 >= m => FormulaCase::T2a,
        (_, _) if s2 == m - 1 => FormulaCase::T2b,
        _ => FormulaCase::T2c,
    };
    Ok(CaseTag { p_class: class, case, m, s2 })
}

/// An ordered list of factors with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub case: CaseTag,
    pub p: u64,
    pub s: u32,
    pub q: BigInt,
    pub factors: Vec<(IntPoly, u32)>,
    pub partitions: Vec<PartitionRecord>,
    /// Set when the polynomial is irreducible and no product formula is
    /// emitted; `factors` is then empty.
    pub irreducible: bool,
}

impl Factorization {
    pub fn degree(&self) -> usize {
        self.factors.iter().map(|(f, k)| f.degree().unwrap_or(0) * *k as usize).sum()
    }

    /// The product of all factors.
    pub fn expand(&self) -> IntPoly {
        poly::expand(&self.factors)
    }
}

impl Serialize for Factorization {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Factor<'a> {
            coeffs: &'a IntPoly,
            mult: u32,
        }
        #[derive(Serialize)]
        struct Repr<'a> {
            case: FormulaCase,
            q: String,
            factors: Vec<Factor<'a>>,
            partitions: &'a [PartitionRecord],
            #[serde(skip_serializing_if = "std::ops::Not::not")]
            irreducible: bool,
        }
        Repr {
            case: self.case.case,
            q: self.q.to_string(),
            factors: self.factors.iter().map(|(f, k)| Factor { coeffs: f, mult: *k }).collect(),
            partitions: &self.partitions,
            irreducible: self.irreducible,
        }
        .serialize(s)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.irreducible {
            return write!(f, "irreducible");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(g, k)| if *k == 1 { format!("({g})") } else { format!("({g})^{k}") })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Merges equal factors and sorts by degree, then by coefficients.
pub fn canonicalize(factors: Vec<(IntPoly, u32)>) -> Vec<(IntPoly, u32)> {
    let mut merged: BTreeMap<IntPoly, u32> = BTreeMap::new();
    for (f, k) in factors {
        if k > 0 {
            *merged.entry(f).or_insert(0) += k;
        }
    }
    merged.into_iter().collect()
}

fn pow2(k: u32) -> BigInt {
    BigInt::one() << k
}

/// `X + c`
fn lin(c: BigInt) -> IntPoly {
    IntPoly::linear(c)
}

/// `(X + c)^2 + d`
fn sq_plus(c: &BigInt, d: BigInt) -> IntPoly {
    IntPoly::new(vec![c * c + d, c * 2, BigInt::one()])
}

struct Builder<'a> {
    p: u64,
    s: u32,
    h: BigInt,
    parts: &'a PartitionSet,
    out: Vec<(IntPoly, u32)>,
}

impl<'a> Builder<'a> {
    fn new(p: u64, s: u32, parts: &'a PartitionSet) -> Result<Self> {
        Ok(Builder { p, s, h: q_power(p, s, 1, 2)?, parts, out: Vec::new() })
    }

    fn qp(&self, num: u64, den: u64) -> Result<BigInt> {
        q_power(self.p, self.s, num, den)
    }

    fn first(&self, r: u32) -> Result<BigInt> {
        self.parts.first(r)
    }

    fn second(&self, r: u32) -> Result<BigInt> {
        self.parts.second(r)
    }

    fn push(&mut self, f: IntPoly, k: u32) {
        self.out.push((f, k));
    }

    /// `X + c + d` and `X + c - d`, each with multiplicity `k`.
    fn push_pair(&mut self, c: &BigInt, d: &BigInt, k: u32) {
        self.push(lin(c + d), k);
        self.push(lin(c - d), k);
    }

    /// `2^{r-1} A_r q^{(2^{r-2}-1)/2^{r-1}}`
    fn a_term(&self, r: u32) -> Result<BigInt> {
        Ok(pow2(r - 1) * self.first(r)? * self.qp((1 << (r - 2)) - 1, 1 << (r - 1))?)
    }

    /// `S(lo..hi)`
    fn s_a(&self, lo: u32, hi: u32) -> Result<BigInt> {
        (lo..=hi).try_fold(BigInt::zero(), |acc, r| Ok(acc + self.a_term(r)?))
    }

    /// `2^{r-1} C_r q^{(2^{r-1}-1)/2^r}`
    fn c_term(&self, r: u32) -> Result<BigInt> {
        Ok(pow2(r - 1) * self.first(r)? * self.qp((1 << (r - 1)) - 1, 1 << r)?)
    }

    /// `SC(lo..hi)`
    fn s_c(&self, lo: u32, hi: u32) -> Result<BigInt> {
        (lo..=hi).try_fold(BigInt::zero(), |acc, r| Ok(acc + self.c_term(r)?))
    }

    // ----- p = 3 (mod 8)

    /// `(X - h +- 4 B_3 q^{1/4})^k1 (X - h +- 8 B_4 q^{3/8})^k2`
    fn t1_b_lines(&mut self, m: u32) -> Result<()> {
        let c = -self.h.clone();
        let d3 = 4 * self.second(3)? * self.qp(1, 4)?;
        self.push_pair(&c, &d3, 1 << (m - 2));
        let d4 = 8 * self.second(4)? * self.qp(3, 8)?;
        self.push_pair(&c, &d4, 1 << (m - 3));
        Ok(())
    }

    /// `3h - S(3..t) + 2^t A_{t+1} q^{(2^{t-1}-1)/2^t}`
    fn t1_shift(&self, t: u32) -> Result<BigInt> {
        Ok(3 * &self.h - self.s_a(3, t)? + pow2(t) * self.first(t + 1)? * self.qp((1 << (t - 1)) - 1, 1 << t)?)
    }

    /// `Q_t`, the pair `X + shift(t) +- 2^{t+2} B_{t+3} q^{(2^{t+1}-1)/2^{t+2}}`.
    fn q_block(&mut self, t: u32, k: u32) -> Result<()> {
        let c = self.t1_shift(t)?;
        let d = pow2(t + 2) * self.second(t + 3)? * self.qp((1 << (t + 1)) - 1, 1 << (t + 2))?;
        self.push_pair(&c, &d, k);
        Ok(())
    }

    fn t1a(&mut self, m: u32) -> Result<()> {
        self.t1_b_lines(m)?;
        let l3 = self.t1_shift(m - 2)?;
        self.push(lin(l3), 2);
        let l4 = self.t1_shift(m - 1)?;
        self.push(lin(l4), 1);
        let l5 = 3 * &self.h - self.s_a(3, m)?;
        self.push(lin(l5), 1);
        for t in 2..=m - 3 {
            self.q_block(t, 1 << (m - t - 2))?;
        }
        Ok(())
    }

    fn t1b(&mut self, m: u32) -> Result<()> {
        self.t1_b_lines(m)?;
        let l3 = self.t1_shift(m - 2)?;
        self.push(lin(l3), 2);
        let tail = self.qp((1 << (m - 2)) - 1, 1 << (m - 2))?;
        let c = 3 * &self.h - self.s_a(3, m - 1)?;
        let am = self.first(m)?;
        self.push(sq_plus(&c, pow2(2 * (m - 1)) * &am * &am * &tail), 1);
        let c = self.t1_shift(m - 3)?;
        let bm = self.second(m)?;
        self.push(sq_plus(&c, pow2(2 * (m - 1)) * &bm * &bm * &tail), 2);
        for t in 2..=m.saturating_sub(4) {
            self.q_block(t, 1 << (m - t - 2))?;
        }
        Ok(())
    }

    fn t1c(&mut self) -> Result<()> {
        let h = self.h.clone();
        let q14 = self.qp(1, 4)?;
        let q34 = self.qp(3, 4)?;
        let (a3, b3, a4, b4) = (self.first(3)?, self.second(3)?, self.first(4)?, self.second(4)?);
        self.push(lin(3 * &h + 4 * &a3 * &q14), 2);
        self.push_pair(&-h.clone(), &(4 * &b3 * &q14), 4);
        self.push(sq_plus(&(3 * &h - 4 * &a3 * &q14), 64 * &a4 * &a4 * &q34), 1);
        self.push(sq_plus(&-h, 64 * &b4 * &b4 * &q34), 2);
        Ok(())
    }

    // ----- p = 5 (mod 8)

    /// `(X - h +- 2 D_2 q^{1/4})^{2^{m-2}}`
    fn t2_l_lines(&mut self, m: u32) -> Result<()> {
        let d = 2 * self.second(2)? * self.qp(1, 4)?;
        self.push_pair(&-self.h.clone(), &d, 1 << (m - 2));
        Ok(())
    }

    /// `h + SC(2..t) - 2^t C_{t+1} q^{(2^t-1)/2^{t+1}}`
    fn t2_shift(&self, t: u32) -> Result<BigInt> {
        Ok(&self.h + self.s_c(2, t)? - pow2(t) * self.first(t + 1)? * self.qp((1 << t) - 1, 1 << (t + 1))?)
    }

    /// `R_t`, the pair `X + shift(t) +- 2^{t+1} D_{t+2} q^{(2^{t+1}-1)/2^{t+2}}`.
    fn r_block(&mut self, t: u32, k: u32) -> Result<()> {
        let c = self.t2_shift(t)?;
        let d = pow2(t + 1) * self.second(t + 2)? * self.qp((1 << (t + 1)) - 1, 1 << (t + 2))?;
        self.push_pair(&c, &d, k);
        Ok(())
    }

    fn t2a(&mut self, m: u32) -> Result<()> {
        self.t2_l_lines(m)?;
        let c = self.t2_shift(m - 1)?;
        self.push(lin(c), 1);
        let c = &self.h + self.s_c(2, m)?;
        self.push(lin(c), 1);
        for t in 1..=m - 2 {
            self.r_block(t, 1 << (m - t - 2))?;
        }
        Ok(())
    }

    fn t2b(&mut self, m: u32) -> Result<()> {
        self.t2_l_lines(m)?;
        let tail = self.qp((1 << (m - 1)) - 1, 1 << (m - 1))?;
        let c = &self.h + self.s_c(2, m - 1)?;
        let cm = self.first(m)?;
        self.push(sq_plus(&c, -(pow2(2 * (m - 1)) * &cm * &cm * &tail)), 1);
        let c = &self.h + self.s_c(2, m - 2)? - pow2(m - 2) * self.first(m - 1)? * self.qp((1 << (m - 2)) - 1, 1 << (m - 1))?;
        let dm = self.second(m)?;
        self.push(sq_plus(&c, -(pow2(2 * (m - 1)) * &dm * &dm * &tail)), 1);
        for t in 1..=m - 3 {
            self.r_block(t, 1 << (m - t - 2))?;
        }
        Ok(())
    }

    fn t2c(&mut self, m: u32) -> Result<()> {
        self.t2_l_lines(m)?;
        let tail = self.qp((1 << (m - 2)) - 1, 1 << (m - 2))?;
        let c = self.t2_shift(m - 3)?;
        let dm1 = self.second(m - 1)?;
        self.push(sq_plus(&c, -(pow2(2 * (m - 2)) * &dm1 * &dm1 * &tail)), 2);
        let cm1 = self.first(m - 1)?;
        let q = self.qp(1, 1)?;
        let sc = self.s_c(2, m - 2)?;
        let inner = sq_plus(&(&self.h + &sc), pow2(2 * (m - 2)) * &cm1 * &cm1 * &tail + pow2(2 * m - 3) * q);
        let lin_part = lin((pow2(m - 2) + 1) * &self.h + &sc);
        let quartic = &inner.pow(2) - &(&lin_part.pow(2) * &IntPoly::constant(pow2(2 * (m - 1)) * &cm1 * &cm1 * &tail));
        self.push(quartic, 1);
        for t in 1..=m.saturating_sub(4) {
            self.r_block(t, 1 << (m - t - 2))?;
        }
        Ok(())
    }

    // ----- m = 2, 3

    fn small_m3_p3(&mut self) -> Result<()> {
        let h = self.h.clone();
        if self.s % 4 == 0 {
            let q14 = self.qp(1, 4)?;
            let (a3, b3) = (self.first(3)?, self.second(3)?);
            self.push(lin(-h.clone()), 2);
            self.push_pair(&-h.clone(), &(4 * b3 * &q14), 2);
            self.push_pair(&(3 * &h), &(4 * a3 * &q14), 1);
        } else {
            let (a3, b3) = (self.first(3)?, self.second(3)?);
            self.push(lin(-3 * &h), 2);
            self.push(sq_plus(&h, 16 * &a3 * &a3 * &h), 1);
            self.push(sq_plus(&h, 16 * &b3 * &b3 * &h), 2);
        }
        Ok(())
    }

    fn small_m2_p5(&mut self) -> Result<()> {
        let h = self.h.clone();
        let (c2, d2) = (self.first(2)?, self.second(2)?);
        if self.s % 4 == 0 {
            let q14 = self.qp(1, 4)?;
            self.push_pair(&h, &(2 * &c2 * &q14), 1);
            self.push_pair(&-h.clone(), &(2 * &d2 * &q14), 1);
        } else {
            self.push(sq_plus(&h, -(BigInt::from(4) * &c2 * &c2 * &h)), 1);
            self.push(sq_plus(&-h.clone(), -(BigInt::from(4) * &d2 * &d2 * &h)), 1);
        }
        Ok(())
    }

    fn small_m3_p5(&mut self) -> Result<()> {
        let h = self.h.clone();
        let (c2, d2) = (self.first(2)?, self.second(2)?);
        if self.s % 4 == 0 {
            let q14 = self.qp(1, 4)?;
            let (c3, d3) = (self.first(3)?, self.second(3)?);
            self.push_pair(&-h.clone(), &(2 * &d2 * &q14), 2);
            let plus = &h + 2 * &c2 * &q14;
            let minus = &h - 2 * &c2 * &q14;
            if self.s % 8 == 0 {
                let q38 = self.qp(3, 8)?;
                self.push_pair(&plus, &(4 * c3 * &q38), 1);
                self.push_pair(&minus, &(4 * d3 * &q38), 1);
            } else {
                let q34 = self.qp(3, 4)?;
                self.push(sq_plus(&plus, -(BigInt::from(16) * &c3 * &c3 * &q34)), 1);
                self.push(sq_plus(&minus, -(BigInt::from(16) * &d3 * &d3 * &q34)), 1);
            }
        } else {
            let q = self.qp(1, 1)?;
            self.push(sq_plus(&-h.clone(), -(BigInt::from(4) * &d2 * &d2 * &h)), 2);
            let inner = sq_plus(&h, 4 * &c2 * &c2 * &h + 8 * q);
            let l = lin(3 * &h);
            let quartic = &inner.pow(2) - &(&l.pow(2) * &IntPoly::constant(16 * &c2 * &c2 * &h));
            self.push(quartic, 1);
        }
        Ok(())
    }
}

/// The factorization of `P*_{2^m}` from a given set of partitions. The
/// partitions only enter through `A_r`, `C_r` and through `B_r`, `D_r` in
/// `+-` pairs or squares, so flipping the sign of any second coordinate
/// leaves the result unchanged.
pub fn factor_with(p: u64, s: u32, m: u32, parts: &PartitionSet) -> Result<Factorization> {
    let case = classify(p, s, m)?;
    let q = BigInt::from(p).pow(s);
    let mut irreducible = false;
    let factors = if case.case == FormulaCase::SmallM2 && p % 8 == 3 {
        // e = 4 divides p + 1
        minus_one_power_factors(p, s, 4, 1)?
    } else if case.case == FormulaCase::SmallM2 && s % 2 == 1 {
        irreducible = true;
        Vec::new()
    } else {
        let mut b = Builder::new(p, s, parts)?;
        match case.case {
            FormulaCase::T1a => b.t1a(m)?,
            FormulaCase::T1b => b.t1b(m)?,
            FormulaCase::T1c => b.t1c()?,
            FormulaCase::T2a => b.t2a(m)?,
            FormulaCase::T2b => b.t2b(m)?,
            FormulaCase::T2c => b.t2c(m)?,
            FormulaCase::SmallM2 => b.small_m2_p5()?,
            FormulaCase::SmallM3 if p % 8 == 3 => b.small_m3_p3()?,
            FormulaCase::SmallM3 => b.small_m3_p5()?,
            FormulaCase::MinusOnePower => unreachable!("classify never yields MINUS_ONE_POWER"),
        }
        b.out
    };
    let factorization = Factorization {
        case,
        p,
        s,
        q,
        factors: canonicalize(factors),
        partitions: parts.records(),
        irreducible,
    };
    if !irreducible && factorization.degree() != 1 << m {
        return Err(Error::Internal(format!(
            "{} factorization has degree {} instead of {}",
            case.case,
            factorization.degree(),
            1u64 << m
        )));
    }
    Ok(factorization)
}

/// The factorization of `P*_{2^m}` over the given field.
pub fn factor(ctx: &FieldCtx, m: u32) -> Result<Factorization> {
    classify(ctx.p(), ctx.s(), m)?;
    let parts = PartitionSet::compute(ctx, m)?;
    factor_with(ctx.p(), ctx.s(), m, &parts)
}

fn minus_one_power_factors(p: u64, s: u32, e: u64, l: u32) -> Result<Vec<(IntPoly, u32)>> {
    let h = q_power(p, s, 1, 2)?;
    let sign = if (s / (2 * l)) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    let e_big = BigInt::from(e);
    Ok(canonicalize(vec![
        (lin(&sign * (&e_big - 1) * &h), 1),
        (lin(-&sign * &h), (e - 1) as u32),
    ]))
}

/// Smallest `l` with `e | p^l + 1`, if any.
pub fn minimal_l(p: u64, e: u64) -> Option<u32> {
    let mut x = p % e;
    for l in 1..=e as u32 * 2 {
        if (x + 1) % e == 0 {
            return Some(l);
        }
        x = x * (p % e) % e;
    }
    None
}

/// `P*_e = (X + (-1)^{s/2l} (e-1) h)(X - (-1)^{s/2l} h)^{e-1}` when
/// `e > 2` divides `p^l + 1` for a minimal `l` with `2l | s`.
pub fn minus_one_power(p: u64, s: u32, e: u64) -> Result<Factorization> {
    if !arith::is_prime(p) || p < 3 {
        return Err(Error::NotOddPrime(p));
    }
    if e <= 2 {
        return Err(precondition(format!("e = {e} must exceed 2")));
    }
    let l = minimal_l(p, e).ok_or_else(|| precondition(format!("{e} divides no p^l + 1")))?;
    if s % (2 * l) != 0 {
        return Err(precondition(format!("2l = {} does not divide s = {s}", 2 * l)));
    }
    let factors = minus_one_power_factors(p, s, e, l)?;
    Ok(Factorization {
        case: CaseTag { p_class: p % 8, case: FormulaCase::MinusOnePower, m: 0, s2: ord2(s as u64) },
        p,
        s,
        q: BigInt::from(p).pow(s),
        factors,
        partitions: Vec::new(),
        irreducible: false,
    })
}

/// `delta = gcd(e, (q-1)/(p-1))`: `P*_e` splits over the rationals into
/// `delta` factors of degree `e / delta`.
pub fn splitting_count(p: u64, s: u32, e: u64) -> u64 {
    let big = (BigInt::from(p).pow(s) - 1u32) / BigInt::from(p - 1);
    let g = big.gcd(&BigInt::from(e));
    u64::try_from(g).expect("divides e")
}

/// Each emitted factor has degree dividing `e / delta`, and the copies of a
/// factor of degree `d` group into blocks of `(e/delta)/d`.
pub fn check_splitting(f: &Factorization, e: u64) -> bool {
    let piece = e / splitting_count(f.p, f.s, e);
    f.factors.iter().all(|(g, k)| {
        let d = g.degree().unwrap_or(0) as u64;
        d > 0 && piece % d == 0 && (*k as u64) % (piece / d) == 0
    })
}

/// Whether every quadratic factor has a non-square discriminant.
pub fn quadratics_irreducible(f: &Factorization) -> bool {
    f.factors
        .iter()
        .filter(|(g, _)| g.degree() == Some(2))
        .all(|(g, _)| g.quadratic_is_irreducible() == Some(true))
}
