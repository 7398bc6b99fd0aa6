//! Normalized quadratic partitions of powers of `p`.
//!
//! For `p = 3 (mod 8)` and `3 <= r <= m`:
//! `p^{s/2^{r-2}} = A_r^2 + 2 B_r^2`, `A_r = -1 (mod 4)`, `p` not dividing
//! `A_r`, and `2 B_r = A_r (g^{(q-1)/8} + g^{3(q-1)/8}) (mod p)`.
//!
//! For `p = 5 (mod 8)` and `2 <= r <= m`:
//! `p^{s/2^{r-1}} = C_r^2 + D_r^2`, `C_r = 1 (mod 4)`, `p` not dividing
//! `C_r`, and `D_r g^{(q-1)/4} = C_r (mod p)`.
//!
//! The sign of the second coordinate depends on the generator `g`; each
//! record carries a fingerprint of the one used.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{self, sqrt_mod};
use crate::error::{precondition, Error, Result};
use crate::field::FieldCtx;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PartitionKind {
    /// `A^2 + 2B^2`
    A,
    /// `C^2 + D^2`
    C,
}

impl fmt::Display for PartitionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PartitionKind::A => "A",
            PartitionKind::C => "C",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionRecord {
    pub kind: PartitionKind,
    pub r: u32,
    /// `k` with `first^2 + d second^2 = p^k`.
    pub exponent: u32,
    pub p: u64,
    pub first: BigInt,
    pub second: BigInt,
    pub gamma_fingerprint: String,
}

impl PartitionRecord {
    pub fn d(&self) -> u64 {
        match self.kind {
            PartitionKind::A => 2,
            PartitionKind::C => 1,
        }
    }

    pub fn pk(&self) -> BigInt {
        BigInt::from(self.p).pow(self.exponent)
    }

    /// Whether the record satisfies the defining identity, the congruence
    /// on the first coordinate and `p` not dividing it.
    pub fn is_normalized(&self) -> bool {
        let lhs = &self.first * &self.first + BigInt::from(self.d()) * &self.second * &self.second;
        let target = match self.kind {
            PartitionKind::A => 3,
            PartitionKind::C => 1,
        };
        lhs == self.pk()
            && self.first.mod_floor(&BigInt::from(4)) == BigInt::from(target)
            && !self.first.is_multiple_of(&BigInt::from(self.p))
    }
}

impl Serialize for PartitionRecord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            kind: String,
            r: u32,
            k: u32,
            first: String,
            second: String,
            pk: String,
            gamma: &'a str,
        }
        Repr {
            kind: self.kind.to_string(),
            r: self.r,
            k: self.exponent,
            first: self.first.to_string(),
            second: self.second.to_string(),
            pk: self.pk().to_string(),
            gamma: &self.gamma_fingerprint,
        }
        .serialize(s)
    }
}

/// Positive `(a, b)` with `a^2 + d b^2 = p`, for `d` in `{1, 2}`.
///
/// Seeded by the smaller square root of `-d` modulo `p`. For `d = 1` the
/// odd coordinate is returned first.
pub fn cornacchia(p: u64, d: u64) -> Result<(u64, u64)> {
    let ok = match d {
        1 => p % 4 == 1,
        2 => p % 8 == 1 || p % 8 == 3,
        _ => false,
    };
    if !arith::is_prime(p) || p < 3 || !ok {
        return Err(precondition(format!("{p} has no representation as a^2 + {d} b^2")));
    }
    let x0 = sqrt_mod(p - d, p).ok_or_else(|| Error::Internal(format!("-{d} is not a square mod {p}")))?;
    let (mut r0, mut r1) = (p, x0);
    while (r1 as u128) * (r1 as u128) >= p as u128 {
        (r0, r1) = (r1, r0 % r1);
    }
    let rest = p - r1 * r1;
    if rest % d != 0 {
        return Err(Error::Internal(format!("Cornacchia failed for p = {p}, d = {d}")));
    }
    let b2 = rest / d;
    let b = b2.sqrt();
    if b * b != b2 || b == 0 {
        return Err(Error::Internal(format!("Cornacchia failed for p = {p}, d = {d}")));
    }
    let (mut a, mut b) = (r1, b);
    if d == 1 && a % 2 == 0 {
        std::mem::swap(&mut a, &mut b);
    }
    Ok((a, b))
}

/// `(a + b sqrt(-d))^k` coordinatewise, from [`cornacchia`]; signs are not
/// normalized.
pub fn power_representation(p: u64, d: u64, k: u32) -> Result<(BigInt, BigInt)> {
    let (a, b) = cornacchia(p, d)?;
    let (a, b) = (BigInt::from(a), BigInt::from(b));
    let d = BigInt::from(d);
    let (mut x, mut y) = (BigInt::one(), BigInt::zero());
    for _ in 0..k {
        (x, y) = (&x * &a - &d * &y * &b, &x * &b + &y * &a);
    }
    Ok((x, y))
}

fn mod_p(x: &BigInt, p: u64) -> u64 {
    use num_traits::ToPrimitive;
    x.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

/// Picks the unique sign pair satisfying the congruence conditions, after
/// checking that exactly one of the four candidates does.
fn normalize(
    kind: PartitionKind,
    p: u64,
    (a, b): (BigInt, BigInt),
    second_ok: impl Fn(&BigInt, &BigInt) -> bool,
) -> Result<(BigInt, BigInt)> {
    let target = if kind == PartitionKind::A { 3 } else { 1 };
    let mut hits = Vec::new();
    for sa in [1, -1] {
        for sb in [1, -1] {
            let (x, y): (BigInt, BigInt) = (&a * BigInt::from(sa), &b * BigInt::from(sb));
            let first_ok = x.mod_floor(&BigInt::from(4)) == BigInt::from(target) && mod_p(&x, p) != 0;
            if first_ok && second_ok(&x, &y) {
                hits.push((x, y));
            }
        }
    }
    hits.dedup();
    match hits.len() {
        1 => Ok(hits.pop().unwrap()),
        n => Err(Error::Internal(format!("{n} sign choices satisfy the {kind}-type conditions"))),
    }
}

/// `(A_r, B_r)` for `p = 3 (mod 8)`.
pub fn partition_a(ctx: &FieldCtx, m: u32, r: u32) -> Result<PartitionRecord> {
    let (p, s, q) = (ctx.p(), ctx.s(), ctx.q());
    if p % 8 != 3 {
        return Err(Error::UnsupportedResidue(p % 8));
    }
    if r < 3 || r > m {
        return Err(precondition(format!("A-type index r = {r} outside 3..={m}")));
    }
    if s % (1 << (r - 2)) != 0 || (q - 1) % 8 != 0 {
        return Err(precondition(format!("2^{} does not divide s = {s}", r - 2)));
    }
    let k = s >> (r - 2);
    let e8 = (q - 1) / 8;
    let g = ctx.gamma();
    let u = ctx.add(&ctx.pow(g, e8), &ctx.pow(g, 3 * e8));
    if !ctx.in_prime_field(&u) {
        return Err(Error::Internal("gamma^{(q-1)/8} + gamma^{3(q-1)/8} is not in F_p".into()));
    }
    let u = u.coords[0];
    let (first, second) = normalize(PartitionKind::A, p, power_representation(p, 2, k)?, |x, y| {
        // 2B = A u (mod p)
        (2 * mod_p(y, p) + p * p - (mod_p(x, p) * u) % p) % p == 0
    })?;
    Ok(PartitionRecord {
        kind: PartitionKind::A,
        r,
        exponent: k,
        p,
        first,
        second,
        gamma_fingerprint: ctx.gamma_fingerprint(),
    })
}

/// `(C_r, D_r)` for `p = 5 (mod 8)`.
pub fn partition_c(ctx: &FieldCtx, m: u32, r: u32) -> Result<PartitionRecord> {
    let (p, s, q) = (ctx.p(), ctx.s(), ctx.q());
    if p % 8 != 5 {
        return Err(Error::UnsupportedResidue(p % 8));
    }
    if r < 2 || r > m {
        return Err(precondition(format!("C-type index r = {r} outside 2..={m}")));
    }
    if s % (1 << (r - 1)) != 0 {
        return Err(precondition(format!("2^{} does not divide s = {s}", r - 1)));
    }
    let k = s >> (r - 1);
    let w = ctx.pow(ctx.gamma(), (q - 1) / 4);
    if !ctx.in_prime_field(&w) {
        return Err(Error::Internal("gamma^{(q-1)/4} is not in F_p".into()));
    }
    let w = w.coords[0];
    let (first, second) = normalize(PartitionKind::C, p, power_representation(p, 1, k)?, |x, y| {
        // D w = C (mod p)
        (mod_p(y, p) * w) % p == mod_p(x, p)
    })?;
    Ok(PartitionRecord {
        kind: PartitionKind::C,
        r,
        exponent: k,
        p,
        first,
        second,
        gamma_fingerprint: ctx.gamma_fingerprint(),
    })
}

/// Every partition defined for `(ctx, m)`, keyed by `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionSet {
    pub kind: PartitionKind,
    pub records: BTreeMap<u32, PartitionRecord>,
}

impl Serialize for PartitionKind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl PartitionSet {
    /// A-type records for `r = 3..=m` with `2^{r-2} | s`, or C-type records
    /// for `r = 2..=m` with `2^{r-1} | s`.
    pub fn compute(ctx: &FieldCtx, m: u32) -> Result<Self> {
        let s = ctx.s();
        let mut records = BTreeMap::new();
        let kind = match ctx.p() % 8 {
            3 => {
                for r in (3..=m).filter(|&r| s % (1 << (r - 2)) == 0) {
                    records.insert(r, partition_a(ctx, m, r)?);
                }
                PartitionKind::A
            }
            5 => {
                for r in (2..=m).filter(|&r| s % (1 << (r - 1)) == 0) {
                    records.insert(r, partition_c(ctx, m, r)?);
                }
                PartitionKind::C
            }
            other => return Err(Error::UnsupportedResidue(other)),
        };
        Ok(PartitionSet { kind, records })
    }

    fn get(&self, r: u32) -> Result<&PartitionRecord> {
        self.records
            .get(&r)
            .ok_or_else(|| precondition(format!("partition with r = {r} is not defined for this field")))
    }

    /// `A_r` or `C_r`.
    pub fn first(&self, r: u32) -> Result<BigInt> {
        Ok(self.get(r)?.first.clone())
    }

    /// `B_r` or `D_r`.
    pub fn second(&self, r: u32) -> Result<BigInt> {
        Ok(self.get(r)?.second.clone())
    }

    /// Copy with the second coordinate negated for every `r` in `which`.
    pub fn with_flipped_signs(&self, which: &[u32]) -> Self {
        let mut out = self.clone();
        for r in which {
            if let Some(rec) = out.records.get_mut(r) {
                rec.second = -&rec.second;
            }
        }
        out
    }

    pub fn records(&self) -> Vec<PartitionRecord> {
        self.records.values().cloned().collect()
    }
}

/// Absolute values as a convenience for generator-independent comparisons.
pub fn abs_pair(rec: &PartitionRecord) -> (BigInt, BigInt) {
    (rec.first.clone(), rec.second.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Every integer pair with `a^2 + d b^2 = n`, by exhaustive search.
    fn all_representations(n: i64, d: i64) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        let bound = (n as f64).sqrt() as i64 + 1;
        for a in -bound..=bound {
            for b in -bound..=bound {
                if a * a + d * b * b == n {
                    out.push((a, b));
                }
            }
        }
        out
    }

    #[test]
    fn cornacchia_examples() {
        assert_eq!(cornacchia(3, 2).unwrap(), (1, 1));
        assert_eq!(cornacchia(5, 1).unwrap(), (1, 2));
        assert_eq!(cornacchia(11, 2).unwrap(), (3, 1));
        assert!(cornacchia(7, 2).is_err());
        assert!(cornacchia(3, 1).is_err());
        for p in [3u64, 11, 17, 19, 41, 43, 59, 67, 73, 83, 89, 97] {
            let (a, b) = cornacchia(p, 2).unwrap();
            assert_eq!(a * a + 2 * b * b, p);
        }
        for p in [5u64, 13, 17, 29, 37, 41, 53, 61] {
            let (a, b) = cornacchia(p, 1).unwrap();
            assert_eq!(a * a + b * b, p);
            assert_eq!(a % 2, 1);
        }
    }

    #[test]
    fn power_representations_against_enumeration() {
        // 81 = 49 + 2*16, 9 = 1 + 2*4, 25 = 9 + 16
        for (p, d, k, want) in [(3u64, 2u64, 4u32, (7i64, 4i64)), (3, 2, 2, (1, 2)), (5, 1, 2, (3, 4))] {
            let (a, b) = power_representation(p, d, k).unwrap();
            let (a, b) = (a.abs(), b.abs());
            assert_eq!((a.clone(), b.clone()), (BigInt::from(want.0), BigInt::from(want.1)));
            let n = (p as i64).pow(k);
            let prim: Vec<_> = all_representations(n, d as i64)
                .into_iter()
                .filter(|(x, _)| x % p as i64 != 0 && x % 2 != 0)
                .collect();
            assert!(prim.iter().all(|&(x, y)| x.abs() == want.0 && y.abs() == want.1), "{prim:?}");
        }
    }

    #[test]
    fn a_type_examples() {
        let ctx = FieldCtx::new(3, 8).unwrap();
        let a3 = partition_a(&ctx, 4, 3).unwrap();
        assert_eq!(a3.first, BigInt::from(7));
        assert_eq!(a3.second.abs(), BigInt::from(4));
        let a4 = partition_a(&ctx, 4, 4).unwrap();
        assert_eq!(a4.first, BigInt::from(-1));
        assert_eq!(a4.second.abs(), BigInt::from(2));
        let ctx = FieldCtx::new(3, 4).unwrap();
        // 3^2 = 1 + 2 * 2^2 and 3 = 1 + 2 * 1^2
        let a3 = partition_a(&ctx, 4, 3).unwrap();
        assert_eq!((a3.first.clone(), a3.second.abs()), (BigInt::from(-1), BigInt::from(2)));
        assert!(a3.is_normalized());
        let a4 = partition_a(&ctx, 4, 4).unwrap();
        assert_eq!((a4.first.clone(), a4.second.abs()), (BigInt::from(-1), BigInt::from(1)));
    }

    #[test]
    fn c_type_examples() {
        let ctx = FieldCtx::new(5, 4).unwrap();
        let c2 = partition_c(&ctx, 4, 2).unwrap();
        assert_eq!((c2.first.clone(), c2.second.abs()), (BigInt::from(-3), BigInt::from(4)));
        let c3 = partition_c(&ctx, 4, 3).unwrap();
        assert_eq!((c3.first.clone(), c3.second.abs()), (BigInt::from(1), BigInt::from(2)));
        let ctx = FieldCtx::new(13, 2).unwrap();
        let c2 = partition_c(&ctx, 2, 2).unwrap();
        assert_eq!((c2.first.clone(), c2.second.abs()), (BigInt::from(-3), BigInt::from(2)));
        let ctx = FieldCtx::new(5, 8).unwrap();
        let set = PartitionSet::compute(&ctx, 4).unwrap();
        let got: Vec<_> = set.records.values().map(abs_pair).collect();
        let want: Vec<_> = [(-7, 24), (-3, 4), (1, 2)].iter().map(|&(c, d)| (BigInt::from(c), BigInt::from(d))).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn sign_condition_holds_in_field() {
        let ctx = FieldCtx::new(5, 4).unwrap();
        let rec = partition_c(&ctx, 4, 2).unwrap();
        let w = ctx.pow(ctx.gamma(), (ctx.q() - 1) / 4).coords[0];
        assert_eq!((mod_p(&rec.second, 5) * w) % 5, mod_p(&rec.first, 5));
    }

    #[test]
    fn preconditions() {
        let f3 = FieldCtx::new(3, 4).unwrap();
        assert!(partition_a(&f3, 4, 5).is_err());
        assert!(partition_a(&f3, 5, 5).is_err());
        assert!(partition_c(&f3, 4, 2).is_err());
        let f5 = FieldCtx::new(5, 2).unwrap();
        assert!(partition_c(&f5, 3, 3).is_err());
        assert!(partition_c(&f5, 3, 2).is_ok());
        let f7 = FieldCtx::new(7, 2).unwrap();
        assert_eq!(PartitionSet::compute(&f7, 3).unwrap_err(), Error::UnsupportedResidue(7));
    }

    #[test]
    fn json_fields() {
        let ctx = FieldCtx::new(3, 8).unwrap();
        let rec = partition_a(&ctx, 4, 3).unwrap();
        let v: serde_json::Value = serde_json::to_value(&rec).unwrap();
        assert_eq!(v["kind"], "A");
        assert_eq!(v["r"], 3);
        assert_eq!(v["first"], "7");
        assert_eq!(v["pk"], "81");
        assert!(v["second"] == "4" || v["second"] == "-4");
    }
}
