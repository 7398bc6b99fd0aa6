//! The finite field `F_q`, `q = p^s`, in a polynomial basis.
//!
//! Elements are dense coordinate vectors over `F_p`. A [`FieldCtx`] is
//! immutable once built and carries the modulus, a fixed generator of the
//! multiplicative group and the traces of the basis vectors.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::arith::{self, factorize, is_prime, mul_mod};
use crate::error::{Error, Result};

/// `p`, `s` and the monic modulus (little-endian, constant term first).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldParams {
    pub p: u64,
    pub s: u32,
    pub modulus: Vec<u64>,
}

impl FieldParams {
    pub fn q(&self) -> u64 {
        arith::checked_pow(self.p, self.s).expect("validated at construction")
    }
}

/// Coordinates in the basis `1, x, ..., x^{s-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldElem {
    pub coords: Vec<u64>,
}

impl FieldElem {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

#[derive(Clone, Debug)]
pub struct FieldCtx {
    params: FieldParams,
    q: u64,
    gamma: FieldElem,
    q_minus_1_factorization: Vec<(u64, u32)>,
    basis_traces: Vec<u64>,
}

// ---------------------------------------------------------------------------
// dense polynomials over F_p, used for modulus search and element arithmetic

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(&mut out);
    out
}

/// Remainder modulo a monic polynomial.
fn poly_rem(mut a: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
    let dm = m.len() - 1;
    trim(&mut a);
    while a.len() > dm {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                a[shift + i] = (a[shift + i] + p - mul_mod(lead, c, p)) % p;
            }
        }
        a.pop();
        trim(&mut a);
    }
    a
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    poly_rem(poly_mul(a, b, p), m, p)
}

fn poly_powmod(base: &[u64], mut exp: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem(base.to_vec(), m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_mulmod(&acc, &b, m, p);
        }
        b = poly_mulmod(&b, &b, m, p);
        exp >>= 1;
    }
    acc
}

fn poly_gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let inv = arith::inv_mod(*b.last().unwrap(), p).unwrap();
        let monic: Vec<u64> = b.iter().map(|&c| mul_mod(c, inv, p)).collect();
        let r = poly_rem(a, &monic, p);
        a = monic;
        b = r;
    }
    a
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

/// Rabin's test: `x^{p^s} = x (mod f)` and `gcd(x^{p^{s/l}} - x, f) = 1`
/// for every prime `l | s`.
pub fn is_irreducible(modulus: &[u64], p: u64) -> bool {
    let s = modulus.len().saturating_sub(1) as u32;
    if s == 0 || modulus[s as usize] != 1 {
        return false;
    }
    if s == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    // frob[k] = x^{p^k} mod f
    let mut frob = vec![x.clone()];
    for k in 1..=s as usize {
        let next = poly_powmod(&frob[k - 1], p, modulus, p);
        frob.push(next);
    }
    if poly_sub(&frob[s as usize], &x, p).len() > 0 {
        return false;
    }
    for (l, _) in factorize(s as u64) {
        let h = poly_sub(&frob[(s as u64 / l) as usize], &x, p);
        if poly_gcd(modulus.to_vec(), h, p).len() != 1 {
            return false;
        }
    }
    true
}

/// The monic irreducible modulus chosen for `(p, s)`.
///
/// Search order: for `s = 1` the modulus is `x`. Otherwise binomials
/// `x^s + c` by increasing `c`, then trinomials `x^s + a x^k + c` by
/// increasing `k`, `a`, `c`, then every monic polynomial by increasing
/// base-`p` index of its lower coefficients (constant term least
/// significant).
pub fn find_modulus(p: u64, s: u32) -> Vec<u64> {
    let su = s as usize;
    if s == 1 {
        return vec![0, 1];
    }
    let make = |lower: &[(usize, u64)]| {
        let mut m = vec![0u64; su + 1];
        m[su] = 1;
        for &(i, c) in lower {
            m[i] = c;
        }
        m
    };
    for c in 1..p {
        let m = make(&[(0, c)]);
        if is_irreducible(&m, p) {
            return m;
        }
    }
    for k in 1..su {
        for a in 1..p {
            for c in 1..p {
                let m = make(&[(k, a), (0, c)]);
                if is_irreducible(&m, p) {
                    return m;
                }
            }
        }
    }
    let mut lower = vec![0u64; su];
    loop {
        // increment base-p counter
        let mut i = 0;
        loop {
            lower[i] += 1;
            if lower[i] < p {
                break;
            }
            lower[i] = 0;
            i += 1;
        }
        let mut m = lower.clone();
        m.push(1);
        if is_irreducible(&m, p) {
            return m;
        }
    }
}

impl FieldCtx {
    /// Builds `F_{p^s}` with the modulus from [`find_modulus`] and the
    /// generator from [`FieldCtx::find_generator`].
    pub fn new(p: u64, s: u32) -> Result<Self> {
        check_ps(p, s)?;
        Self::with_modulus(p, s, find_modulus(p, s))
    }

    pub fn with_modulus(p: u64, s: u32, modulus: Vec<u64>) -> Result<Self> {
        let mut ctx = Self::skeleton(p, s, modulus)?;
        ctx.gamma = ctx.find_generator();
        Ok(ctx)
    }

    /// Same field with a caller-chosen generator, validated.
    pub fn with_generator(&self, gamma: FieldElem) -> Result<Self> {
        let mut ctx = self.clone();
        ctx.check_elem(&gamma)?;
        if !ctx.is_generator(&gamma) {
            return Err(Error::InvalidGenerator("element does not have order q - 1".into()));
        }
        ctx.gamma = gamma;
        Ok(ctx)
    }

    fn skeleton(p: u64, s: u32, modulus: Vec<u64>) -> Result<Self> {
        check_ps(p, s)?;
        let q = arith::checked_pow(p, s)
            .filter(|&q| q < (1u64 << 62))
            .ok_or(Error::FieldTooLarge { p, s })?;
        if modulus.len() != s as usize + 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidModulus(format!("expected {} coefficients in [0, {p})", s + 1)));
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::InvalidModulus(format!("{modulus:?} is not monic irreducible over F_{p}")));
        }
        let mut ctx = FieldCtx {
            params: FieldParams { p, s, modulus },
            q,
            gamma: FieldElem { coords: vec![0; s as usize] },
            q_minus_1_factorization: factorize(q - 1),
            basis_traces: Vec::new(),
        };
        ctx.basis_traces = (0..s as usize)
            .map(|i| {
                let mut b = ctx.zero();
                b.coords[i] = 1;
                ctx.trace_by_frobenius(&b)
            })
            .collect();
        Ok(ctx)
    }

    pub fn params(&self) -> &FieldParams {
        &self.params
    }
    pub fn p(&self) -> u64 {
        self.params.p
    }
    pub fn s(&self) -> u32 {
        self.params.s
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn gamma(&self) -> &FieldElem {
        &self.gamma
    }
    pub fn q_minus_1_factorization(&self) -> &[(u64, u32)] {
        &self.q_minus_1_factorization
    }

    /// Short stable digest of the modulus and generator.
    pub fn gamma_fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update(serde_json::to_vec(&(&self.params, &self.gamma.coords)).unwrap());
        hex::encode(&h.finalize()[..8])
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem { coords: vec![0; self.s() as usize] }
    }

    pub fn one(&self) -> FieldElem {
        self.from_int(1)
    }

    /// The image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> FieldElem {
        let mut e = self.zero();
        e.coords[0] = n.rem_euclid(self.p() as i64) as u64;
        e
    }

    /// Element whose coordinates are the base-`p` digits of `index`
    /// (constant term least significant).
    pub fn elem_from_index(&self, mut index: u64) -> FieldElem {
        let mut e = self.zero();
        for c in e.coords.iter_mut() {
            *c = index % self.p();
            index /= self.p();
        }
        e
    }

    pub fn index_of(&self, x: &FieldElem) -> u64 {
        x.coords.iter().rev().fold(0, |acc, &c| acc * self.p() + c)
    }

    fn check_elem(&self, x: &FieldElem) -> Result<()> {
        if x.coords.len() != self.s() as usize || x.coords.iter().any(|&c| c >= self.p()) {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn add(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        let p = self.p();
        FieldElem { coords: x.coords.iter().zip(&y.coords).map(|(a, b)| (a + b) % p).collect() }
    }

    pub fn sub(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        let p = self.p();
        FieldElem { coords: x.coords.iter().zip(&y.coords).map(|(a, b)| (a + p - b) % p).collect() }
    }

    pub fn neg(&self, x: &FieldElem) -> FieldElem {
        self.sub(&self.zero(), x)
    }

    pub fn mul(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        let mut c = poly_mulmod(&x.coords, &y.coords, &self.params.modulus, self.p());
        c.resize(self.s() as usize, 0);
        FieldElem { coords: c }
    }

    pub fn pow(&self, x: &FieldElem, mut exp: u64) -> FieldElem {
        let mut acc = self.one();
        let mut b = x.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            exp >>= 1;
        }
        acc
    }

    /// Checked variants for callers holding elements of unknown origin.
    pub fn try_mul(&self, x: &FieldElem, y: &FieldElem) -> Result<FieldElem> {
        self.check_elem(x)?;
        self.check_elem(y)?;
        Ok(self.mul(x, y))
    }

    pub fn try_add(&self, x: &FieldElem, y: &FieldElem) -> Result<FieldElem> {
        self.check_elem(x)?;
        self.check_elem(y)?;
        Ok(self.add(x, y))
    }

    pub fn try_pow(&self, x: &FieldElem, exp: u64) -> Result<FieldElem> {
        self.check_elem(x)?;
        Ok(self.pow(x, exp))
    }

    fn trace_by_frobenius(&self, x: &FieldElem) -> u64 {
        let mut acc = self.zero();
        let mut y = x.clone();
        for _ in 0..self.s() {
            acc = self.add(&acc, &y);
            y = self.pow(&y, self.p());
        }
        debug_assert!(acc.coords[1..].iter().all(|&c| c == 0));
        acc.coords[0]
    }

    /// Absolute trace to `F_p`, as a dot product with the basis traces.
    pub fn trace(&self, x: &FieldElem) -> u64 {
        let p = self.p();
        x.coords.iter().zip(&self.basis_traces).fold(0, |acc, (&c, &t)| (acc + mul_mod(c, t, p)) % p)
    }

    pub fn basis_traces(&self) -> &[u64] {
        &self.basis_traces
    }

    pub fn is_generator(&self, x: &FieldElem) -> bool {
        if x.is_zero() {
            return false;
        }
        let n = self.q - 1;
        let one = self.one();
        self.pow(x, n) == one && self.q_minus_1_factorization.iter().all(|&(l, _)| self.pow(x, n / l) != one)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, x: &FieldElem) -> u64 {
        let one = self.one();
        let mut n = self.q - 1;
        for &(l, e) in &self.q_minus_1_factorization {
            for _ in 0..e {
                if self.pow(x, n / l) == one {
                    n /= l;
                } else {
                    break;
                }
            }
        }
        n
    }

    /// First element in index order (see [`FieldCtx::elem_from_index`])
    /// whose multiplicative order is `q - 1`.
    pub fn find_generator(&self) -> FieldElem {
        (1..self.q)
            .map(|i| self.elem_from_index(i))
            .find(|x| self.is_generator(x))
            .expect("F_q^* is cyclic")
    }

    /// Norm to the subfield of size `p^{s_sub}`: `x^{(q-1)/(p^{s_sub}-1)}`.
    pub fn subfield_norm(&self, x: &FieldElem, s_sub: u32) -> Result<FieldElem> {
        self.check_elem(x)?;
        let exp = self.norm_exponent(s_sub)?;
        Ok(self.pow(x, exp))
    }

    pub(crate) fn norm_exponent(&self, s_sub: u32) -> Result<u64> {
        if s_sub == 0 || self.s() % s_sub != 0 {
            return Err(Error::NotADivisor { sub: s_sub, s: self.s() });
        }
        Ok((self.q - 1) / (pow_mod_u64(self.p(), s_sub) - 1))
    }

    /// Whether `x` lies in `F_p`.
    pub fn in_prime_field(&self, x: &FieldElem) -> bool {
        x.coords[1..].iter().all(|&c| c == 0)
    }
}

fn pow_mod_u64(p: u64, k: u32) -> u64 {
    arith::checked_pow(p, k).expect("subfield of a representable field")
}

fn check_ps(p: u64, s: u32) -> Result<()> {
    if p < 3 || !is_prime(p) || p >= (1 << 31) {
        return Err(Error::NotOddPrime(p));
    }
    if s == 0 {
        return Err(Error::ZeroDegree);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_f3() {
        let f = FieldCtx::new(3, 1).unwrap();
        assert_eq!(f.params().modulus, vec![0, 1]);
        assert_eq!(f.gamma().coords, vec![2]);
    }

    #[test]
    fn f9_modulus_and_generator() {
        let f = FieldCtx::new(3, 2).unwrap();
        assert_eq!(f.params().modulus, vec![1, 0, 1]);
        // x * x = -1 = 2
        let x = f.elem_from_index(3);
        assert_eq!(f.mul(&x, &x).coords, vec![2, 0]);
        assert_eq!(f.order(&x), 4);
        // x + 1 is the first element of order 8
        assert_eq!(f.gamma().coords, vec![1, 1]);
        assert_eq!(f.order(f.gamma()), 8);
        // norm to F_3 of x is x^4 = 1
        assert_eq!(f.subfield_norm(&x, 1).unwrap(), f.one());
    }

    #[test]
    fn f5_generator() {
        let f = FieldCtx::new(5, 1).unwrap();
        assert_eq!(f.gamma().coords, vec![2]);
    }

    #[test]
    fn f625_modulus_passes_rabin() {
        let f = FieldCtx::new(5, 4).unwrap();
        let m = &f.params().modulus;
        assert_eq!(m.len(), 5);
        // independent check: x^{625} = x in F_5[x]/(m), and no root in F_5 or F_25
        let x = f.elem_from_index(5);
        assert_eq!(f.pow(&x, 625), x);
        assert_ne!(f.pow(&x, 25), x);
    }

    #[test]
    fn gamma_powers() {
        for (p, s) in [(3, 2), (3, 4), (5, 2), (11, 2), (13, 1)] {
            let f = FieldCtx::new(p, s).unwrap();
            let g = f.gamma();
            assert_eq!(f.pow(g, f.q() - 1), f.one());
            assert_eq!(f.pow(g, (f.q() - 1) / 2), f.from_int(-1));
            for &(l, _) in f.q_minus_1_factorization() {
                assert_ne!(f.pow(g, (f.q() - 1) / l), f.one());
            }
        }
    }

    #[test]
    fn trace_basics() {
        let f = FieldCtx::new(3, 2).unwrap();
        assert_eq!(f.trace(&f.one()), 2);
        let mut counts = [0; 3];
        for i in 0..9 {
            let x = f.elem_from_index(i);
            assert_eq!(f.trace(&x), f.trace_by_frobenius(&x));
            assert_eq!(f.trace(&f.pow(&x, 3)), f.trace(&x));
            counts[f.trace(&x) as usize] += 1;
        }
        assert_eq!(counts, [3, 3, 3]);
    }

    #[test]
    fn errors() {
        assert_eq!(FieldCtx::new(9, 2).unwrap_err(), Error::NotOddPrime(9));
        assert_eq!(FieldCtx::new(2, 2).unwrap_err(), Error::NotOddPrime(2));
        assert_eq!(FieldCtx::new(3, 0).unwrap_err(), Error::ZeroDegree);
        assert!(matches!(FieldCtx::with_modulus(3, 2, vec![2, 0, 1]), Err(Error::InvalidModulus(_))));
        let f = FieldCtx::new(3, 4).unwrap();
        assert!(matches!(f.subfield_norm(f.gamma(), 3), Err(Error::NotADivisor { .. })));
        let wrong = FieldElem { coords: vec![1, 2] };
        assert_eq!(f.try_mul(&wrong, f.gamma()).unwrap_err(), Error::ContextMismatch);
        assert!(f.with_generator(f.one()).is_err());
    }

    #[test]
    fn index_roundtrip() {
        let f = FieldCtx::new(5, 3).unwrap();
        for i in [0u64, 1, 7, 124] {
            assert_eq!(f.index_of(&f.elem_from_index(i)), i);
        }
    }
}
