//! Squarefree, distinct-degree and equal-degree factorization.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{FqContext, FqElem};
use super::poly::{FqPoly, MAX_DEGREE};
use crate::error::{Error, Result};

/// `unit * prod(factor^mult)`, factors monic irreducible in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FqElem,
    pub factors: Vec<(FqPoly, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn product(&self, ctx: &FqContext) -> FqPoly {
        let mut acc = FqPoly::constant(ctx, self.unit);
        for (f, k) in &self.factors {
            acc = &acc * &f.pow(*k as u64);
        }
        acc
    }

    /// Multiset of irreducible factor degrees, repeated by multiplicity.
    pub fn degrees(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (f, k) in &self.factors {
            for _ in 0..*k {
                out.push(f.deg());
            }
        }
        out
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    pub(crate) fn sort_canonical(&mut self) {
        self.factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ctx = self.factors.first().map(|(p, _)| p.ctx().clone());
        let mut parts = Vec::new();
        if self.unit != FqElem::ONE || self.factors.is_empty() {
            parts.push(match &ctx {
                Some(c) => c.fmt_elem(self.unit),
                None => self.unit.index().to_string(),
            });
        }
        for (p, k) in &self.factors {
            let s = if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            };
            parts.push(if *k == 1 { s } else { format!("{s}^{k}") });
        }
        f.write_str(&parts.join("*"))
    }
}

/// Complete factorization into monic irreducibles.
pub fn factor(f: &FqPoly) -> Result<Factorization> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n > MAX_DEGREE {
        return Err(Error::DegreeTooLarge(n, MAX_DEGREE));
    }
    let (unit, monic) = f.to_monic()?;
    let mut rng = ChaCha8Rng::seed_from_u64(fnv1a(&f.to_bytes()));
    let mut factors = Vec::new();
    for (sq, mult) in squarefree(&monic)? {
        for (g, d) in distinct_degree(&sq)? {
            let mut pieces = Vec::new();
            equal_degree(&g, d, &mut rng, &mut pieces)?;
            factors.extend(pieces.into_iter().map(|p| (p, mult)));
        }
    }
    let mut out = Factorization { unit, factors };
    out.sort_canonical();
    Ok(out)
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// `g(T)` with `g(T)^p = f(T)`, assuming `f' = 0`.
fn pth_root(f: &FqPoly) -> FqPoly {
    let ctx = f.ctx();
    let p = ctx.p() as usize;
    FqPoly::new(
        ctx,
        f.coeffs()
            .iter()
            .step_by(p)
            .map(|&c| ctx.pth_root(c))
            .collect(),
    )
}

/// Squarefree decomposition of a monic polynomial: pairwise coprime
/// squarefree parts with their multiplicities.
pub fn squarefree(f: &FqPoly) -> Result<Vec<(FqPoly, u32)>> {
    let mut out = Vec::new();
    if f.deg() == 0 {
        return Ok(out);
    }
    let p = f.ctx().p() as u32;
    let df = f.derivative();
    if df.is_zero() {
        for (g, k) in squarefree(&pth_root(f))? {
            out.push((g, k * p));
        }
        return Ok(out);
    }
    let mut c = f.gcd(&df);
    let mut w = f.div_exact(&c)?;
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y)?;
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w)?;
        i += 1;
    }
    if !c.is_one() {
        for (g, k) in squarefree(&pth_root(&c))? {
            out.push((g, k * p));
        }
    }
    Ok(out)
}

/// Splits a squarefree monic polynomial into products of irreducibles of
/// equal degree.
pub fn distinct_degree(f: &FqPoly) -> Result<Vec<(FqPoly, usize)>> {
    let ctx = f.ctx();
    let t = FqPoly::t(ctx);
    let mut rest = f.clone();
    let mut h = t.rem(f)?;
    let mut out = Vec::new();
    let mut d = 0;
    while rest.deg() >= 2 * (d + 1) {
        d += 1;
        h = h.powmod(ctx.q(), &rest)?;
        let g = rest.gcd(&(&h - &t));
        if !g.is_one() {
            rest = rest.div_exact(&g)?;
            h = h.rem(&rest)?;
            out.push((g, d));
        }
    }
    if rest.deg() > 0 {
        let d = rest.deg();
        out.push((rest, d));
    }
    Ok(out)
}

/// `a^(1 + q + ... + q^(d-1))` mod `f`, by repeated Frobenius.
fn norm_power(a: &FqPoly, d: usize, f: &FqPoly) -> Result<FqPoly> {
    let q = f.ctx().q();
    let mut frob = a.rem(f)?;
    let mut acc = frob.clone();
    for _ in 1..d {
        frob = frob.powmod(q, f)?;
        acc = acc.mulmod(&frob, f)?;
    }
    Ok(acc)
}

/// Absolute trace `a + a^2 + ... + a^(2^(k-1))` mod `f` (characteristic 2).
fn trace_power(a: &FqPoly, k: u64, f: &FqPoly) -> Result<FqPoly> {
    let mut cur = a.rem(f)?;
    let mut acc = cur.clone();
    for _ in 1..k {
        cur = cur.mulmod(&cur, f)?;
        acc = &acc + &cur;
    }
    Ok(acc)
}

fn random_poly(ctx: &FqContext, deg: usize, rng: &mut ChaCha8Rng) -> FqPoly {
    let q = ctx.q() as u32;
    FqPoly::new(ctx, (0..deg).map(|_| FqElem(rng.gen_range(0..q))).collect())
}

/// Cantor-Zassenhaus splitting of a product of degree-`d` irreducibles.
fn equal_degree(f: &FqPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<FqPoly>) -> Result<()> {
    let n = f.deg();
    if n == d {
        out.push(f.clone());
        return Ok(());
    }
    let ctx = f.ctx();
    let one = FqPoly::one(ctx);
    loop {
        let a = random_poly(ctx, n, rng);
        if a.is_constant() {
            continue;
        }
        let b = if ctx.p() == 2 {
            trace_power(&a, ctx.m() as u64 * d as u64, f)?
        } else {
            let nrm = norm_power(&a, d, f)?;
            &nrm.powmod((ctx.q() - 1) / 2, f)? - &one
        };
        let g = f.gcd(&b);
        if g.deg() > 0 && g.deg() < n {
            let h = f.div_exact(&g)?;
            equal_degree(&g, d, rng, out)?;
            equal_degree(&h, d, rng, out)?;
            return Ok(());
        }
    }
}
