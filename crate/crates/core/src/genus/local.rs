//! Completions of `K` at the primes above infinity.
//!
//! With `d = gcd(deg D, n)`, `e∞ = n/d` and `δ' = deg D / d`, each prime
//! above infinity corresponds to a Frobenius orbit of roots `μ` of
//! `X^d - γ`. Its completion is `F_{q^t}((ϖ))` where `1/T = μ^(-x) ϖ^(e∞)`
//! and `x δ' ≡ -1 (mod e∞)`. A monic `A` of degree `a` then expands as
//! `μ^(xa) ϖ^(-e∞ a) (1 + O(ϖ))`, which is all the splitting test needs;
//! the full series is used to certify the root by Hensel lifting.

use crate::arith::{gcd, inv_mod, pow_mod};
use crate::error::{Error, Result};
use crate::ffpoly::{Embedding, FqContext, FqElem, FqPoly, MAX_FIELD_SIZE};
use crate::ramify::RadicalExtension;

/// One prime above infinity: a root `μ` (in the splitting field) and the
/// degree `t` of its residue field over `F_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalPrime {
    pub mu: FqElem,
    pub t: u64,
}

/// The primes above infinity of `K` (or of `k`) inside a common splitting
/// field `F_Q`.
#[derive(Clone, Debug)]
pub struct InfinityModel {
    base: FqContext,
    big: FqContext,
    emb: Embedding,
    e_inf: u64,
    x: u64,
    primes: Vec<LocalPrime>,
    precision: usize,
}

impl InfinityModel {
    /// The infinite prime of `k` itself.
    pub fn base(ctx: &FqContext) -> Result<Self> {
        Ok(InfinityModel {
            base: ctx.clone(),
            big: ctx.clone(),
            emb: ctx.embedding_into(ctx)?,
            e_inf: 1,
            x: 0,
            primes: vec![LocalPrime {
                mu: FqElem::ONE,
                t: 1,
            }],
            precision: 4,
        })
    }

    pub fn for_extension(k: &RadicalExtension) -> Result<Self> {
        let ctx = k.ctx();
        let q = ctx.q();
        let n = k.n();
        let deg = k.deg_d();
        let d = gcd(deg, n);
        let e_inf = n / d;
        let x = if e_inf == 1 {
            0
        } else {
            let inv = inv_mod((deg / d) % e_inf, e_inf).expect("coprime by construction");
            (e_inf - inv) % e_inf
        };
        let s = k.s() as u64;
        let need = d * ctx.order(k.gamma())?;
        let mut l = s;
        loop {
            let size = (q as u128).checked_pow(l as u32);
            match size {
                Some(sz) if sz <= MAX_FIELD_SIZE as u128 => {}
                _ => {
                    return Err(Error::FieldTooLarge(format!(
                        "splitting field of X^{d} - γ over F_{q}: need {need} | q^L - 1 with s | L"
                    )))
                }
            }
            if pow_mod(q, l, need) == 1 % need {
                break;
            }
            l += s;
        }
        let big = FqContext::new(ctx.p(), ctx.m() * l as u32)?;
        let emb = ctx.embedding_into(&big)?;
        let gamma = emb.apply(k.gamma());
        let order = big.q() - 1;
        let lg = big.log(gamma).expect("nonzero");
        let step = order / d;
        let mut roots: Vec<FqElem> = (0..d).map(|i| big.exp(lg / d + i * step)).collect();
        roots.sort_by_key(|&r| big.lex_key(r));
        let qs = q.pow(s as u32);
        let mut seen = vec![false; roots.len()];
        let mut primes = Vec::new();
        for i in 0..roots.len() {
            if seen[i] {
                continue;
            }
            let mut size = 0u64;
            let mut cur = roots[i];
            loop {
                let j = roots
                    .iter()
                    .position(|&r| r == cur)
                    .expect("orbit stays in the root set");
                if seen[j] {
                    break;
                }
                seen[j] = true;
                size += 1;
                cur = big.pow(cur, qs);
            }
            primes.push(LocalPrime {
                mu: roots[i],
                t: s * size,
            });
        }
        Ok(InfinityModel {
            base: ctx.clone(),
            big,
            emb,
            e_inf,
            x,
            primes,
            precision: 2 * (deg + n) as usize,
        })
    }

    pub fn big(&self) -> &FqContext {
        &self.big
    }

    pub fn embedding(&self) -> &Embedding {
        &self.emb
    }

    pub fn e_inf(&self) -> u64 {
        self.e_inf
    }

    pub fn x(&self) -> u64 {
        self.x
    }

    pub fn primes(&self) -> &[LocalPrime] {
        &self.primes
    }

    /// Discrete log of `z` in `F_{q^t}^*` relative to the generator
    /// `G^((Q-1)/(q^t-1))`, modulo `modulus`.
    pub fn residue_log(&self, z: FqElem, t: u64, modulus: u64) -> Result<u64> {
        let big_order = self.big.q() - 1;
        let sub_order = self.base.q().pow(t as u32) - 1;
        let cof = big_order / sub_order;
        let l = self.big.log(z).ok_or(Error::ZeroElement)?;
        if l % cof != 0 {
            return Err(Error::InvalidArgument(
                "element is not in the residue field".into(),
            ));
        }
        Ok((l / cof) % modulus)
    }

    /// `A` as a Laurent series in `ϖ` at `prime`: `(valuation, coefficients)`.
    /// Exact, since `A` is a Laurent polynomial in `ϖ`.
    fn expand(&self, a: &FqPoly, prime: &LocalPrime) -> (i64, Vec<FqElem>) {
        let big = &self.big;
        let deg = a.deg();
        let e = self.e_inf as usize;
        let mu_inv_x = big.pow(big.inv(prime.mu).expect("unit"), self.x);
        // A = T^deg sum_j a_{deg-j} T^(-j); T^(-1) = μ^(-x) ϖ^e.
        let mut unit = vec![FqElem::ZERO; e * deg + 1];
        let mut pw = FqElem::ONE;
        for j in 0..=deg {
            unit[e * j] = big.mul(self.emb.apply(a.coeff(deg - j)), pw);
            pw = big.mul(pw, mu_inv_x);
        }
        // T^deg = μ^(x deg) ϖ^(-e deg).
        let lead = big.pow(prime.mu, self.x * deg as u64);
        let unit = unit.into_iter().map(|c| big.mul(c, lead)).collect();
        (-(e as i64) * deg as i64, unit)
    }
}

/// A Kummer generator `k((γ' A)^(1/e))` with `e | q - 1`.
#[derive(Clone, Debug)]
pub struct KummerGen {
    pub e: u64,
    pub gamma: FqElem,
    pub a: FqPoly,
}

fn series_mul(big: &FqContext, a: &[FqElem], b: &[FqElem], prec: usize) -> Vec<FqElem> {
    let mut out = vec![FqElem::ZERO; prec];
    for (i, &x) in a.iter().enumerate().take(prec) {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(prec - i) {
            out[i + j] = big.add(out[i + j], big.mul(x, y));
        }
    }
    out
}

fn series_pow(big: &FqContext, a: &[FqElem], mut e: u64, prec: usize) -> Vec<FqElem> {
    let mut acc = vec![FqElem::ZERO; prec];
    acc[0] = FqElem::ONE;
    let mut base = a.to_vec();
    base.resize(prec, FqElem::ZERO);
    while e > 0 {
        if e & 1 == 1 {
            acc = series_mul(big, &acc, &base, prec);
        }
        e >>= 1;
        if e > 0 {
            base = series_mul(big, &base, &base, prec);
        }
    }
    acc
}

/// Hensel-lifts an `e`-th root of the unit series `u` starting from `r0`
/// (`r0^e = u[0]`, `p ∤ e`) to `prec` coefficients.
pub fn hensel_root(
    big: &FqContext,
    u: &[FqElem],
    e: u64,
    r0: FqElem,
    prec: usize,
) -> Result<Vec<FqElem>> {
    let mut r = vec![FqElem::ZERO; prec];
    r[0] = r0;
    let denom = big.mul(big.from_int((e % big.p()) as i64), big.pow(r0, e - 1));
    let dinv = big.inv(denom)?;
    for k in 1..prec {
        let cur = series_pow(big, &r[..k], e, k + 1);
        let target = u.get(k).copied().unwrap_or(FqElem::ZERO);
        r[k] = big.mul(big.sub(target, cur[k]), dinv);
    }
    Ok(r)
}

/// Whether every prime above infinity in `model` splits completely in
/// `K(gen)/K`.
pub fn splits_in_model(model: &InfinityModel, gen: &KummerGen) -> Result<bool> {
    let base = &model.base;
    let q = base.q();
    if gen.e == 0 || !(q - 1).is_multiple_of(gen.e) {
        return Err(Error::InvalidArgument(format!(
            "generator exponent {} does not divide q - 1 = {}",
            gen.e,
            q - 1
        )));
    }
    if gen.gamma.is_zero() || gen.a.is_zero() {
        return Err(Error::ZeroElement);
    }
    if gen.e == 1 {
        return Ok(true);
    }
    let big = &model.big;
    let gp = model.emb.apply(gen.gamma);
    if gen.a.deg() == 0 {
        let c = big.mul(gp, model.emb.apply(gen.a.coeff(0)));
        for pr in &model.primes {
            let k = base.m() * pr.t as u32;
            if !big.is_eth_power_in_subfield(c, gen.e, k)? {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    for pr in &model.primes {
        let (val, unit) = model.expand(&gen.a, pr);
        // Ramification: the radicand's valuation must be divisible by e.
        if val.rem_euclid(gen.e as i64) != 0 {
            return Ok(false);
        }
        let u: Vec<FqElem> = unit.iter().map(|&c| big.mul(c, gp)).collect();
        let k = base.m() * pr.t as u32;
        if !big.is_eth_power_in_subfield(u[0], gen.e, k)? {
            return Ok(false);
        }
        certify_root(model, &u, gen.e, pr.t)?;
    }
    Ok(true)
}

/// Builds the `e`-th root of `u` to the model precision and checks that it
/// is one, with coefficients in the residue field `F_{q^t}`.
fn certify_root(model: &InfinityModel, u: &[FqElem], e: u64, t: u64) -> Result<()> {
    let big = &model.big;
    let sub_order = model.base.q().pow(t as u32) - 1;
    let cof = (big.q() - 1) / sub_order;
    let lu = model.residue_log(u[0], t, sub_order)?;
    let r0 = big.exp(cof * (lu / e));
    let prec = model.precision.max(u.len());
    let r = hensel_root(big, u, e, r0, prec)?;
    let check = series_pow(big, &r, e, prec);
    let mut target = u.to_vec();
    target.resize(prec, FqElem::ZERO);
    let in_residue = r
        .iter()
        .all(|&c| c.is_zero() || big.pow(c, sub_order) == FqElem::ONE);
    if check != target || !in_residue {
        return Err(Error::InvalidArgument(
            "Hensel lifting at infinity failed to certify the residue test".into(),
        ));
    }
    Ok(())
}

/// Whether the primes of `K` above infinity split completely in `K(gen)`.
pub fn splits_fully_at_infinity(k: &RadicalExtension, gen: &KummerGen) -> Result<bool> {
    splits_in_model(&InfinityModel::for_extension(k)?, gen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::parse_poly;

    fn ext(p: u64, n: u64, gamma: i64, d: &str, s: u32) -> RadicalExtension {
        let ctx = FqContext::new(p, 1).unwrap();
        let dd = parse_poly(&ctx, d).unwrap();
        RadicalExtension::new(&ctx, n, ctx.from_int(gamma), &dd, s).unwrap()
    }

    fn gen(k: &RadicalExtension, e: u64, gamma: i64, a: &str) -> KummerGen {
        KummerGen {
            e,
            gamma: k.ctx().from_int(gamma),
            a: parse_poly(k.ctx(), a).unwrap(),
        }
    }

    #[test]
    fn first_example_is_inert() {
        let k = ext(3, 2, 1, "T^3+2*T+1", 1);
        assert!(!splits_fully_at_infinity(&k, &gen(&k, 2, -1, "T^3+2*T+1")).unwrap());
        assert!(splits_fully_at_infinity(&k, &gen(&k, 1, 1, "T")).unwrap());
    }

    #[test]
    fn second_example_splits() {
        let k = ext(3, 10, -1, "T^2*(T^2-T-1)", 1);
        let m = InfinityModel::for_extension(&k).unwrap();
        assert_eq!((m.e_inf(), m.x(), m.big().q()), (5, 2, 9));
        assert_eq!(m.primes().len(), 1);
        assert_eq!(m.primes()[0].t, 2);
        assert!(splits_fully_at_infinity(&k, &gen(&k, 2, 1, "T^2-T-1")).unwrap());
    }

    #[test]
    fn base_model() {
        let f3 = FqContext::new(3, 1).unwrap();
        let m = InfinityModel::base(&f3).unwrap();
        let g = |e, gm: i64, a: &str| KummerGen {
            e,
            gamma: f3.from_int(gm),
            a: parse_poly(&f3, a).unwrap(),
        };
        assert!(!splits_in_model(&m, &g(2, -1, "T^3+2*T+1")).unwrap());
        assert!(splits_in_model(&m, &g(2, 1, "T^2-T-1")).unwrap());
        assert!(!splits_in_model(&m, &g(2, -1, "1")).unwrap());
        assert!(splits_in_model(&m, &g(3, 1, "T")).is_err());
    }

    #[test]
    fn hensel_root_of_one_plus_varpi() {
        let f5 = FqContext::new(5, 1).unwrap();
        let u = vec![FqElem::ONE, FqElem::ONE];
        let r = hensel_root(&f5, &u, 2, FqElem::ONE, 6).unwrap();
        let sq = series_pow(&f5, &r, 2, 6);
        assert_eq!(&sq[..2], &u[..]);
        assert!(sq[2..].iter().all(|c| c.is_zero()));
    }
}
