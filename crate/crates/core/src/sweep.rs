//! Trace sweeps over a cyclic subgroup `<g>` of `F_q^*`.
//!
//! The sequence `Tr(g^j)` satisfies the linear recurrence given by the
//! minimal polynomial of `g`, so a sweep costs `O(deg)` word operations
//! per element. Ranges of `j` are independent once seeded with
//! `g^{j_start}`, which is how the parallel path splits the work: every
//! worker fills a private count matrix and the matrices are summed, so the
//! result does not depend on the number of workers.

use crate::arith::{inv_mod, mul_mod};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};

/// Smallest chunk handed to one worker.
#[cfg(feature = "parallel")]
const MIN_CHUNK: u64 = 1 << 15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// `Parallel` when the crate is built with the `parallel` feature.
    pub fn available() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// `<g>` inside `F_q`, with traces taken from the subfield `F_p(g)` down
/// to `F_p`.
#[derive(Clone, Debug)]
pub struct CyclicGroup<'a> {
    ctx: &'a FieldCtx,
    gen: FieldElem,
    order: u64,
    // g^deg = sum_i rel[i] g^i
    relation: Vec<u64>,
}

impl<'a> CyclicGroup<'a> {
    /// The whole of `F_q^*`, generated by the context's `gamma`.
    pub fn full(ctx: &'a FieldCtx) -> Self {
        Self::new(ctx, ctx.gamma().clone(), ctx.q() - 1, ctx.s())
    }

    /// `F_{p^{s_sub}}^*` inside `F_q`, generated by the norm of `gamma`.
    pub fn subfield(ctx: &'a FieldCtx, s_sub: u32) -> Result<Self> {
        let gen = ctx.subfield_norm(ctx.gamma(), s_sub)?;
        let order = crate::arith::checked_pow(ctx.p(), s_sub).unwrap() - 1;
        Ok(Self::new(ctx, gen, order, s_sub))
    }

    fn new(ctx: &'a FieldCtx, gen: FieldElem, order: u64, degree: u32) -> Self {
        let relation = minimal_relation(ctx, &gen);
        debug_assert_eq!(relation.len(), degree as usize);
        CyclicGroup { ctx, gen, order, relation }
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.ctx
    }
    pub fn generator(&self) -> &FieldElem {
        &self.gen
    }
    pub fn order(&self) -> u64 {
        self.order
    }
    /// Size of the field `F_p(g)`.
    pub fn field_size(&self) -> u64 {
        self.order + 1
    }
    pub fn degree(&self) -> u32 {
        self.relation.len() as u32
    }

    /// Trace from `F_p(g)` to `F_p` of an element of `F_p(g)`. Only used to
    /// seed sweeps, so the subfield case sums Frobenius images directly.
    pub fn trace(&self, y: &FieldElem) -> u64 {
        let d = self.degree();
        if d == self.ctx.s() {
            return self.ctx.trace(y);
        }
        let mut acc = self.ctx.zero();
        let mut z = y.clone();
        for _ in 0..d {
            acc = self.ctx.add(&acc, &z);
            z = self.ctx.pow(&z, self.ctx.p());
        }
        acc.coords[0]
    }

    /// Calls `f(j, Tr(g^j))` for `j` in `start..end`, in order.
    pub fn for_each_trace(&self, start: u64, end: u64, mut f: impl FnMut(u64, u64)) {
        if start >= end {
            return;
        }
        let p = self.ctx.p();
        let d = self.relation.len();
        let mut y = self.ctx.pow(&self.gen, start);
        let mut window: Vec<u64> = Vec::with_capacity(d);
        for _ in 0..d {
            window.push(self.trace(&y));
            y = self.ctx.mul(&y, &self.gen);
        }
        // ring buffer over `window`, head = oldest
        let mut head = 0usize;
        for j in start..end {
            let t = window[head];
            f(j, t);
            let mut acc: u64 = 0;
            for (i, &c) in self.relation.iter().enumerate() {
                let w = window[(head + i) % d];
                acc = (acc + c * w) % p;
            }
            window[head] = acc;
            head = (head + 1) % d;
        }
    }

    /// Calls `f(j, g^j)` for `j` in `0..order`. Direct multiplication; used
    /// for discrete-log tables on small groups.
    pub fn for_each_element(&self, mut f: impl FnMut(u64, &FieldElem)) {
        let mut y = self.ctx.one();
        for j in 0..self.order {
            f(j, &y);
            y = self.ctx.mul(&y, &self.gen);
        }
    }

    /// `counts[k][t] = #{ j in [0, order) : j = k (mod e), Tr(g^j) = t }`.
    pub fn residue_trace_counts(&self, e: u64, max_q: u64, exec: Execution) -> Result<Vec<Vec<u64>>> {
        if e == 0 || self.order % e != 0 {
            return Err(Error::Precondition(format!("{e} does not divide {}", self.order)));
        }
        if self.field_size() > max_q {
            return Err(Error::BudgetExceeded { q: self.field_size(), budget: max_q });
        }
        let p = self.ctx.p() as usize;
        let e_us = e as usize;
        let fill = |start: u64, end: u64| -> Vec<u64> {
            let mut counts = vec![0u64; e_us * p];
            let mut k = (start % e) as usize;
            self.for_each_trace(start, end, |_, t| {
                counts[k * p + t as usize] += 1;
                k += 1;
                if k == e_us {
                    k = 0;
                }
            });
            counts
        };
        let flat = match exec {
            Execution::Parallel if cfg!(feature = "parallel") => self.fill_parallel(&fill),
            _ => fill(0, self.order),
        };
        Ok(flat.chunks(p).map(|row| row.to_vec()).collect())
    }

    #[cfg(feature = "parallel")]
    fn fill_parallel(&self, fill: &(dyn Fn(u64, u64) -> Vec<u64> + Sync)) -> Vec<u64> {
        use rayon::prelude::*;
        let workers = rayon::current_num_threads() as u64;
        let chunk = (self.order / (workers * 4)).max(MIN_CHUNK);
        let starts: Vec<u64> = (0..self.order).step_by(chunk as usize).collect();
        starts
            .into_par_iter()
            .map(|s| fill(s, (s + chunk).min(self.order)))
            .reduce_with(|mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            })
            .unwrap_or_default()
    }

    #[cfg(not(feature = "parallel"))]
    fn fill_parallel(&self, fill: &(dyn Fn(u64, u64) -> Vec<u64> + Sync)) -> Vec<u64> {
        fill(0, self.order)
    }
}

/// Coefficients `a_i` with `g^d = sum_{i<d} a_i g^i`, `d` the degree of
/// `g` over `F_p`, by Gaussian elimination on the coordinate vectors of
/// successive powers.
fn minimal_relation(ctx: &FieldCtx, g: &FieldElem) -> Vec<u64> {
    let p = ctx.p();
    let s = ctx.s() as usize;
    // rows: reduced basis vectors with pivot column and their expression
    // in powers of g
    let mut rows: Vec<(usize, Vec<u64>, Vec<u64>)> = Vec::new();
    let mut power = ctx.one();
    for d in 0..=s {
        let mut v = power.coords.clone();
        let mut expr = vec![0u64; s + 1];
        expr[d] = 1;
        for (pivot, row, rexpr) in &rows {
            let c = v[*pivot];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(row) {
                    *x = (*x + p - mul_mod(c, *y, p)) % p;
                }
                for (x, y) in expr.iter_mut().zip(rexpr) {
                    *x = (*x + p - mul_mod(c, *y, p)) % p;
                }
            }
        }
        match v.iter().position(|&c| c != 0) {
            Some(pivot) => {
                let inv = inv_mod(v[pivot], p).unwrap();
                v.iter_mut().for_each(|x| *x = mul_mod(*x, inv, p));
                expr.iter_mut().for_each(|x| *x = mul_mod(*x, inv, p));
                rows.push((pivot, v, expr));
            }
            None => {
                // expr . (g^0..g^d) = 0 with expr[d] = 1
                return expr[..d].iter().map(|&c| (p - c) % p).collect();
            }
        }
        power = ctx.mul(&power, g);
    }
    unreachable!("powers of g span at most s dimensions")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recurrence_matches_direct_traces() {
        for (p, s) in [(3u64, 4u32), (5, 3), (11, 2), (3, 1)] {
            let ctx = FieldCtx::new(p, s).unwrap();
            let g = CyclicGroup::full(&ctx);
            let mut direct = Vec::new();
            g.for_each_element(|_, y| direct.push(ctx.trace(y)));
            let mut rec = Vec::new();
            g.for_each_trace(0, g.order(), |_, t| rec.push(t));
            assert_eq!(direct, rec);
            let start = 17.min(g.order() - 1);
            let mut tail = Vec::new();
            g.for_each_trace(start, g.order(), |_, t| tail.push(t));
            assert_eq!(&direct[start as usize..], &tail[..]);
        }
    }

    #[test]
    fn subfield_group_has_subfield_traces() {
        let ctx = FieldCtx::new(3, 4).unwrap();
        let sub = CyclicGroup::subfield(&ctx, 2).unwrap();
        assert_eq!(sub.order(), 8);
        assert_eq!(sub.degree(), 2);
        // every element of F_9 appears once and its relative trace is
        // balanced: three elements per value, one of them zero
        let mut counts = [0u64; 3];
        sub.for_each_trace(0, 8, |_, t| counts[t as usize] += 1);
        assert_eq!(counts, [2, 3, 3]);
    }

    #[test]
    fn subfield_traces_when_degree_ratio_is_a_multiple_of_p() {
        // F_9 inside F_{3^6}: the ratio 3 is not invertible mod 3
        let ctx = FieldCtx::new(3, 6).unwrap();
        let sub = CyclicGroup::subfield(&ctx, 2).unwrap();
        let small = FieldCtx::new(3, 2).unwrap();
        let mut a = [0u64; 3];
        sub.for_each_trace(0, 8, |_, t| a[t as usize] += 1);
        let mut b = [0u64; 3];
        CyclicGroup::full(&small).for_each_trace(0, 8, |_, t| b[t as usize] += 1);
        assert_eq!(a, b);
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let ctx = FieldCtx::new(3, 10).unwrap();
        let g = CyclicGroup::full(&ctx);
        let a = g.residue_trace_counts(8, u64::MAX, Execution::Sequential).unwrap();
        let b = g.residue_trace_counts(8, u64::MAX, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn budget_is_enforced() {
        let ctx = FieldCtx::new(5, 4).unwrap();
        let g = CyclicGroup::full(&ctx);
        assert_eq!(
            g.residue_trace_counts(4, 100, Execution::Sequential).unwrap_err(),
            Error::BudgetExceeded { q: 625, budget: 100 }
        );
        assert!(g.residue_trace_counts(7, 1000, Execution::Sequential).is_err());
    }
}
