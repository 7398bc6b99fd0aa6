//! Exact arithmetic in `Z[zeta_n]` for conductors `n = 2^a` and `n = 2^a * p`.
//!
//! An element is stored in canonical form: its residue modulo the monic
//! cyclotomic polynomial `Phi_n`, a coefficient vector of length `phi(n)`.
//! Equality and integrality are decided on that form only.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{is_prime, legendre, pow_mod};
use crate::error::{precondition, Error, Result};
use crate::poly::IntPoly;

/// `(a, odd part)` for a supported conductor `2^a * p^b`, `b <= 1`.
fn conductor_shape(n: u64) -> Result<(u32, u64)> {
    if n == 0 {
        return Err(Error::UnsupportedConductor(n));
    }
    let a = n.trailing_zeros();
    let odd = n >> a;
    if odd != 1 && !(is_prime(odd)) {
        return Err(Error::UnsupportedConductor(n));
    }
    Ok((a, odd))
}

/// Nonzero coefficients of `Phi_n` as `(degree, coefficient)`, plus its
/// degree.
fn phi_terms(n: u64) -> (usize, Vec<(usize, i64)>) {
    let (a, odd) = conductor_shape(n).expect("conductor validated on construction");
    match (a, odd) {
        (0, 1) => (1, vec![(0, -1), (1, 1)]),
        (_, 1) => {
            let h = 1usize << (a - 1);
            (h, vec![(0, 1), (h, 1)])
        }
        (0, p) => {
            let d = p as usize - 1;
            (d, (0..=d).map(|i| (i, 1)).collect())
        }
        (_, p) => {
            // Phi_{2^a p}(x) = Phi_p(-x^{2^{a-1}})
            let h = 1usize << (a - 1);
            let d = (p as usize - 1) * h;
            (d, (0..p as usize).map(|i| (i * h, if i % 2 == 0 { 1 } else { -1 })).collect())
        }
    }
}

pub fn euler_phi(n: u64) -> Result<usize> {
    conductor_shape(n)?;
    Ok(phi_terms(n).0)
}

/// `Phi_n` for a supported conductor.
pub fn cyclotomic_polynomial(n: u64) -> Result<IntPoly> {
    conductor_shape(n)?;
    let (d, terms) = phi_terms(n);
    let mut c = vec![BigInt::zero(); d + 1];
    for (i, v) in terms {
        c[i] = BigInt::from(v);
    }
    Ok(IntPoly::new(c))
}

/// Reduces a group-ring vector (index taken mod `n`) to canonical form.
fn canonicalize(n: u64, v: &[BigInt]) -> Vec<BigInt> {
    let nu = n as usize;
    let mut folded = vec![BigInt::zero(); nu];
    for (i, c) in v.iter().enumerate() {
        if !c.is_zero() {
            folded[i % nu] += c;
        }
    }
    let (d, terms) = phi_terms(n);
    for top in (d..nu).rev() {
        if folded[top].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut folded[top]);
        let shift = top - d;
        for &(i, t) in &terms {
            if i < d {
                folded[shift + i] -= &c * t;
            }
        }
    }
    folded.truncate(d);
    folded
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycElem {
    n: u64,
    canonical: Vec<BigInt>,
}

impl fmt::Debug for CycElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycElem(n={}, {self})", self.n)
    }
}

impl CycElem {
    /// From a vector in `Z[x]/(x^n - 1)`; any length, indices read mod `n`.
    pub fn from_group_ring(n: u64, coeffs: &[BigInt]) -> Result<Self> {
        conductor_shape(n)?;
        Ok(CycElem { n, canonical: canonicalize(n, coeffs) })
    }

    pub fn from_i64s(n: u64, coeffs: &[i64]) -> Result<Self> {
        let v: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        Self::from_group_ring(n, &v)
    }

    pub fn zero(n: u64) -> Result<Self> {
        Self::from_group_ring(n, &[])
    }

    pub fn from_int(n: u64, c: impl Into<BigInt>) -> Result<Self> {
        Self::from_group_ring(n, &[c.into()])
    }

    /// `zeta_n^k`, any integer `k`.
    pub fn zeta(n: u64, k: i64) -> Result<Self> {
        conductor_shape(n)?;
        let idx = k.rem_euclid(n as i64) as usize;
        let mut v = vec![BigInt::zero(); idx + 1];
        v[idx] = BigInt::one();
        Self::from_group_ring(n, &v)
    }

    /// `i = zeta_4`, embedded in conductor `n` (`4 | n`).
    pub fn i(n: u64) -> Result<Self> {
        Self::zeta(4, 1)?.embed(n)
    }

    /// `i * sqrt 2 = zeta_8 + zeta_8^3`, embedded in conductor `n` (`8 | n`).
    pub fn i_sqrt2(n: u64) -> Result<Self> {
        (&Self::zeta(8, 1)? + &Self::zeta(8, 3)?).embed(n)
    }

    /// Positive square root of an odd prime `p`: the quadratic Gauss sum
    /// over `F_p` when `p = 1 (mod 4)`, and `-i` times it otherwise.
    pub fn sqrt_prime(p: u64) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        let v: Vec<BigInt> = (0..p).map(|x| BigInt::from(legendre(x, p))).collect();
        let g = Self::from_group_ring(p, &v)?;
        if p % 4 == 1 {
            Ok(g)
        } else {
            Ok(-&(&Self::i(4 * p)? * &g))
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn canonical(&self) -> &[BigInt] {
        &self.canonical
    }

    pub fn is_zero(&self) -> bool {
        self.canonical.iter().all(Zero::is_zero)
    }

    /// The rational integer this element equals, if any.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.canonical.iter().skip(1).all(Zero::is_zero) {
            Some(self.canonical.first().cloned().unwrap_or_default())
        } else {
            None
        }
    }

    /// Image under `zeta_n -> zeta_m^{m/n}` for a multiple `m` of `n`.
    pub fn embed(&self, m: u64) -> Result<Self> {
        if m == self.n {
            return Ok(self.clone());
        }
        if m % self.n != 0 {
            return Err(precondition(format!("cannot embed conductor {} into {m}", self.n)));
        }
        conductor_shape(m)?;
        let step = (m / self.n) as usize;
        let mut v = vec![BigInt::zero(); self.canonical.len().saturating_sub(1) * step + 1];
        for (i, c) in self.canonical.iter().enumerate() {
            v[i * step] = c.clone();
        }
        Self::from_group_ring(m, &v)
    }

    /// Complex conjugation, `zeta_n -> zeta_n^{-1}`.
    pub fn conjugate(&self) -> Self {
        let nu = self.n as usize;
        let mut v = vec![BigInt::zero(); nu];
        for (i, c) in self.canonical.iter().enumerate() {
            v[(nu - i) % nu] = c.clone();
        }
        CycElem { n: self.n, canonical: canonicalize(self.n, &v) }
    }

    /// The Galois automorphism `zeta_n -> zeta_n^k`, `gcd(k, n) = 1`.
    pub fn galois(&self, k: u64) -> Result<Self> {
        if k.gcd(&self.n) != 1 {
            return Err(precondition(format!("{k} is not a unit mod {}", self.n)));
        }
        let nu = self.n as usize;
        let mut v = vec![BigInt::zero(); nu];
        for (i, c) in self.canonical.iter().enumerate() {
            v[(i * k as usize) % nu] += c;
        }
        Ok(CycElem { n: self.n, canonical: canonicalize(self.n, &v) })
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        CycElem { n: self.n, canonical: self.canonical.iter().map(|c| c * k).collect() }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut acc = CycElem::from_int(self.n, 1).unwrap();
        let mut b = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            k >>= 1;
            if k > 0 {
                b = &b * &b;
            }
        }
        acc
    }

    /// Floating-point image under `zeta_n -> exp(2 pi i / n)`. Diagnostic
    /// only; never used to decide equality.
    pub fn to_complex(&self) -> Complex64 {
        let w = Complex64::from_polar(1.0, 2.0 * PI / self.n as f64);
        self.canonical
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * w + c.to_f64().unwrap_or(f64::NAN))
    }

    fn common(a: &CycElem, b: &CycElem) -> (CycElem, CycElem) {
        if a.n == b.n {
            return (a.clone(), b.clone());
        }
        let m = a.n.lcm(&b.n);
        let ea = a.embed(m).unwrap_or_else(|_| panic!("conductors {} and {} have no supported lcm", a.n, b.n));
        let eb = b.embed(m).unwrap();
        (ea, eb)
    }
}

impl Add for &CycElem {
    type Output = CycElem;
    fn add(self, rhs: &CycElem) -> CycElem {
        if self.n != rhs.n {
            let (a, b) = CycElem::common(self, rhs);
            return &a + &b;
        }
        CycElem { n: self.n, canonical: self.canonical.iter().zip(&rhs.canonical).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &CycElem {
    type Output = CycElem;
    fn sub(self, rhs: &CycElem) -> CycElem {
        if self.n != rhs.n {
            let (a, b) = CycElem::common(self, rhs);
            return &a - &b;
        }
        CycElem { n: self.n, canonical: self.canonical.iter().zip(&rhs.canonical).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &CycElem {
    type Output = CycElem;
    fn neg(self) -> CycElem {
        CycElem { n: self.n, canonical: self.canonical.iter().map(|c| -c).collect() }
    }
}

impl Mul for &CycElem {
    type Output = CycElem;
    fn mul(self, rhs: &CycElem) -> CycElem {
        if self.n != rhs.n {
            let (a, b) = CycElem::common(self, rhs);
            return &a * &b;
        }
        let la = self.canonical.len();
        let lb = rhs.canonical.len();
        let mut out = vec![BigInt::zero(); la + lb - 1];
        for (i, a) in self.canonical.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.canonical.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        CycElem { n: self.n, canonical: canonicalize(self.n, &out) }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for CycElem {
            type Output = CycElem;
            fn $m(self, rhs: CycElem) -> CycElem { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for CycElem {
    type Output = CycElem;
    fn neg(self) -> CycElem {
        -&self
    }
}

impl fmt::Display for CycElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .canonical
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CycElemRepr {
    n: u64,
    canonical: Vec<String>,
}

impl Serialize for CycElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycElemRepr { n: self.n, canonical: self.canonical.iter().map(|c| c.to_string()).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = CycElemRepr::deserialize(d)?;
        let v = r
            .canonical
            .iter()
            .map(|c| c.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        CycElem::from_group_ring(r.n, &v).map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// polynomials over Z[zeta_n]

/// Product of polynomials with cyclotomic-integer coefficients
/// (little-endian coefficient lists, all of one conductor).
pub fn poly_mul_cyc(a: &[CycElem], b: &[CycElem]) -> Vec<CycElem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = a[0].n;
    let mut out = vec![CycElem::zero(n).unwrap(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// `prod (X - r)` over the given roots.
pub fn poly_from_roots(n: u64, roots: &[CycElem]) -> Result<Vec<CycElem>> {
    let mut acc = vec![CycElem::from_int(n, 1)?];
    for r in roots {
        let r = r.embed(n)?;
        // multiply by (X - r) in place
        let mut next = vec![CycElem::zero(n)?; acc.len() + 1];
        for (i, c) in acc.iter().enumerate() {
            next[i + 1] = &next[i + 1] + c;
            next[i] = &next[i] - &(c * &r);
        }
        acc = next;
    }
    Ok(acc)
}

/// Converts a polynomial over `Z[zeta_n]` whose coefficients are all
/// rational integers; `None` if any is not.
pub fn to_int_poly(coeffs: &[CycElem]) -> Option<IntPoly> {
    coeffs.iter().map(CycElem::as_integer).collect::<Option<Vec<_>>>().map(IntPoly::new)
}

// ---------------------------------------------------------------------------
// root-of-unity power sums

fn power_sum_check(p: u64, n: u32, r: u32) -> Result<()> {
    if !is_prime(p) || !(p % 8 == 3 || p % 8 == 5) {
        return Err(precondition(format!("p = {p} must be a prime = 3 or 5 (mod 8)")));
    }
    if n == 0 || r < 3 || r < n || n > 40 {
        return Err(precondition(format!("need 1 <= n <= r and r >= 3 (n = {n}, r = {r})")));
    }
    Ok(())
}

/// `sum_{v=0}^{2^{r-2}-1} zeta_{2^n}^{p^v}`, computed term by term, in
/// conductor `2^n`.
pub fn power_sum_direct(p: u64, n: u32, r: u32) -> Result<CycElem> {
    power_sum_check(p, n, r)?;
    let modulus = 1u64 << n;
    let mut v = vec![BigInt::zero(); modulus as usize];
    for e in 0..(1u64 << (r - 2)) {
        v[pow_mod(p, e, modulus) as usize] += 1;
    }
    CycElem::from_group_ring(modulus, &v)
}

/// Closed-form value of the same sum: `-2^{r-2}` for `n = 1`,
/// `2^{r-2} i` for `n = 2, p = 5 (mod 8)`, `2^{r-3} i sqrt 2` for
/// `n = 3, p = 3 (mod 8)`, and 0 otherwise.
pub fn power_sum_table(p: u64, n: u32, r: u32) -> Result<CycElem> {
    power_sum_check(p, n, r)?;
    let modulus = 1u64 << n;
    let big = |e: u32| BigInt::one() << e;
    Ok(match (n, p % 8) {
        (1, _) => CycElem::from_int(modulus, -big(r - 2))?,
        (2, 5) => CycElem::i(modulus)?.scale(&big(r - 2)),
        (3, 3) => CycElem::i_sqrt2(modulus)?.scale(&big(r - 3)),
        _ => CycElem::zero(modulus)?,
    })
}
