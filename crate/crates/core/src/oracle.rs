//! Brute-force verifiers for the formula-based computations.
//!
//! Everything here works by exhaustive search or first principles and only
//! shares base field arithmetic with the rest of the crate: polynomials are
//! factored by trial division, roots are found by scanning whole fields and
//! residue degrees are Frobenius orbit lengths.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{gcd_all, mult_order};
use crate::carlitz::{carlitz_action, euler_phi, CarlitzPoly};
use crate::error::{Error, Result};
use crate::ffpoly::{factor, Factorization, FqContext, FqElem, FqPoly};
use crate::ramify::{newton_polygon_e, NewtonPolygon};
use crate::ramify::{ram_finite, t0_radical, RadicalExtension};

/// Caps and seed for the oracles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_q: u64,
    pub max_deg: usize,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_q: 49,
            max_deg: 8,
            seed: 0x5eed,
        }
    }
}

impl OracleConfig {
    fn check(&self, ctx: &FqContext, deg: usize) -> Result<()> {
        if ctx.q() > self.max_q {
            return Err(Error::FieldTooLarge(format!(
                "oracle cap is q <= {}, got {}",
                self.max_q,
                ctx.q()
            )));
        }
        if deg > self.max_deg {
            return Err(Error::DegreeTooLarge(deg, self.max_deg));
        }
        Ok(())
    }
}

/// The monic polynomial of degree `k` whose lower coefficients are the
/// base-`q` digits of `idx`.
fn monic_by_index(ctx: &FqContext, k: usize, mut idx: u64) -> FqPoly {
    let q = ctx.q();
    let mut coeffs = Vec::with_capacity(k + 1);
    for _ in 0..k {
        coeffs.push(FqElem((idx % q) as u32));
        idx /= q;
    }
    coeffs.push(FqElem::ONE);
    FqPoly::new(ctx, coeffs)
}

/// Factorization by trial division with every monic polynomial of degree
/// up to half the remaining degree.
pub fn naive_factor(cfg: &OracleConfig, f: &FqPoly) -> Result<Factorization> {
    let ctx = f.ctx();
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    cfg.check(ctx, n)?;
    let (unit, mut rest) = f.to_monic()?;
    let mut factors: Vec<(FqPoly, u32)> = Vec::new();
    let mut k = 1;
    while 2 * k <= rest.deg() {
        for idx in 0..ctx.q().pow(k as u32) {
            let cand = monic_by_index(ctx, k, idx);
            let mut mult = 0;
            while rest.rem(&cand)?.is_zero() {
                rest = rest.div_exact(&cand)?;
                mult += 1;
            }
            if mult > 0 {
                factors.push((cand, mult));
            }
        }
        k += 1;
    }
    if rest.deg() > 0 {
        match factors.iter_mut().find(|(g, _)| *g == rest) {
            Some(entry) => entry.1 += 1,
            None => factors.push((rest, 1)),
        }
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(Factorization { unit, factors })
}

/// `|(F_q[T]/M)^*|` by counting residues coprime to `M`.
pub fn unit_count(m: &FqPoly) -> Result<u64> {
    let ctx = m.ctx();
    let d = m.degree().ok_or(Error::ZeroPolynomial)?;
    if d > 3 || ctx.q() > 9 {
        return Err(Error::InvalidArgument(
            "unit_count is limited to deg M <= 3 and q <= 9".into(),
        ));
    }
    let q = ctx.q();
    let mut count = 0;
    for idx in 0..q.pow(d as u32) {
        let mut coeffs = Vec::with_capacity(d);
        let mut r = idx;
        for _ in 0..d {
            coeffs.push(FqElem((r % q) as u32));
            r /= q;
        }
        if FqPoly::new(ctx, coeffs).gcd(m).is_one() {
            count += 1;
        }
    }
    Ok(count)
}

/// `a ∘ b` for additive polynomials given by their coefficient lists.
fn compose_additive(ctx: &FqContext, a: &[FqPoly], b: &[FqPoly]) -> Vec<FqPoly> {
    let q = ctx.q();
    let len = (a.len() + b.len()).saturating_sub(1);
    let mut out = vec![FqPoly::zero(ctx); len];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            let term = ai * &bj.pow(q.pow(i as u32));
            out[i + j] = &out[i + j] + &term;
        }
    }
    out
}

fn add_additive(ctx: &FqContext, a: &[FqPoly], b: &[FqPoly]) -> Vec<FqPoly> {
    let len = a.len().max(b.len());
    let zero = FqPoly::zero(ctx);
    (0..len)
        .map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero))
        .collect()
}

/// `ρ_M = sum_k m_k ρ_T^k` with `ρ_T = X^q + T X`, by repeated composition.
fn carlitz_by_definition(m: &FqPoly) -> Vec<FqPoly> {
    let ctx = m.ctx();
    let rho_t = vec![FqPoly::t(ctx), FqPoly::one(ctx)];
    let mut power = vec![FqPoly::one(ctx)];
    let mut acc: Vec<FqPoly> = Vec::new();
    for &c in m.coeffs() {
        let scaled: Vec<FqPoly> = power.iter().map(|p| p.scale(c)).collect();
        acc = add_additive(ctx, &acc, &scaled);
        power = compose_additive(ctx, &rho_t, &power);
    }
    acc
}

fn same_map(ctx: &FqContext, lhs: &[FqPoly], rhs: &CarlitzPoly) -> bool {
    CarlitzPoly::new(ctx, lhs.to_vec()) == *rhs
}

/// Checks `ρ_{MN} = ρ_M ∘ ρ_N`, `ρ_{M+N} = ρ_M + ρ_N`, and that the computed
/// `ρ_M` matches its definition.
pub fn carlitz_compose_check(m: &FqPoly, n: &FqPoly) -> bool {
    let ctx = m.ctx();
    let rho = |a: &FqPoly| -> Option<CarlitzPoly> {
        if a.is_zero() {
            Some(CarlitzPoly::new(ctx, Vec::new()))
        } else {
            carlitz_action(a).ok()
        }
    };
    let (Some(rm), Some(rn), Some(rmn), Some(rsum)) =
        (rho(m), rho(n), rho(&(m * n)), rho(&(m + n)))
    else {
        return false;
    };
    same_map(ctx, &carlitz_by_definition(m), &rm)
        && same_map(ctx, &carlitz_by_definition(n), &rn)
        && same_map(ctx, &compose_additive(ctx, rm.coeffs(), rn.coeffs()), &rmn)
        && same_map(ctx, &add_additive(ctx, rm.coeffs(), rn.coeffs()), &rsum)
}

/// Degree of `x` over the prime-power subfield `F_q` of its context.
fn degree_over(big: &FqContext, q: u64, x: FqElem) -> u64 {
    let mut y = big.pow(x, q);
    let mut k = 1;
    while y != x {
        y = big.pow(y, q);
        k += 1;
    }
    k
}

/// Degrees over `F_q` of the roots of `X^d - a`, found by scanning a field
/// large enough to contain all of them, one entry per Frobenius orbit.
fn root_orbit_degrees(ctx: &FqContext, a: FqElem, d: u64) -> Result<Vec<u64>> {
    if d == 0 || d.is_multiple_of(ctx.p()) || a.is_zero() {
        return Err(Error::InvalidArgument(format!(
            "X^{d} - a needs p ∤ d and a ≠ 0"
        )));
    }
    let q = ctx.q();
    let span = d * ctx.order(a)?;
    let l = mult_order(q % span, span).max(1);
    let m = ctx
        .m()
        .checked_mul(u32::try_from(l).map_err(|_| Error::Overflow("splitting degree"))?)
        .ok_or(Error::Overflow("splitting degree"))?;
    let big = FqContext::new(ctx.p(), m)?;
    let target = ctx.embedding_into(&big)?.apply(a);
    let roots: Vec<FqElem> = big
        .elements()
        .filter(|&x| !x.is_zero() && big.pow(x, d) == target)
        .collect();
    if roots.len() as u64 != d {
        return Err(Error::InvalidArgument(format!(
            "found {} roots of a degree-{d} binomial",
            roots.len()
        )));
    }
    // Every root of an orbit of size k contributes k to the sum of degrees.
    let mut degs: Vec<u64> = Vec::new();
    let mut seen = vec![false; roots.len()];
    for i in 0..roots.len() {
        if seen[i] {
            continue;
        }
        let k = degree_over(&big, q, roots[i]);
        let mut y = roots[i];
        for _ in 0..k {
            let j = roots
                .iter()
                .position(|&r| r == y)
                .expect("orbit stays in roots");
            seen[j] = true;
            y = big.pow(y, q);
        }
        degs.push(k);
    }
    degs.sort_unstable();
    Ok(degs)
}

/// `gcd` over all `d`-th roots `r` of `γ` of `[F_q(r) : F_q]`.
pub fn t0_root_degrees(ctx: &FqContext, gamma: FqElem, d: u64) -> Result<u64> {
    Ok(gcd_all(root_orbit_degrees(ctx, gamma, d)?))
}

/// Ramification index and residue degrees above the finite place `P` in
/// `K`. Where `γD` is a `P`-unit the residue degrees come from the roots of
/// `X^n - γD(θ)` over `F_q(θ)`; otherwise `e` is read off the Newton polygon
/// and the list is empty.
pub fn splitting_at_finite(
    cfg: &OracleConfig,
    k: &RadicalExtension,
    place: &FqPoly,
) -> Result<(u64, Vec<u64>)> {
    let ctx = k.ctx();
    let dp = place.degree().ok_or(Error::ZeroPolynomial)?;
    if dp == 0 {
        return Err(Error::ConstantPolynomial);
    }
    cfg.check(ctx, dp)?;
    let n = k.n();
    let mut v = 0i64;
    let mut rest = k.d().clone();
    while rest.rem(place)?.is_zero() {
        rest = rest.div_exact(place)?;
        v += 1;
    }
    if v > 0 {
        let poly = NewtonPolygon::from_points(&[(0, v), (n as i64, 0)]);
        let e = poly.segment_ramification().into_iter().max().unwrap_or(1);
        return Ok((e, Vec::new()));
    }
    let m = ctx
        .m()
        .checked_mul(dp as u32)
        .ok_or(Error::Overflow("residue field"))?;
    let res = FqContext::new(ctx.p(), m)?;
    let emb = ctx.embedding_into(&res)?;
    let lift = |f: &FqPoly| f.map_coeffs(&res, |c| emb.apply(c));
    let p_res = lift(place);
    let theta = res
        .elements()
        .find(|&x| p_res.eval(x).is_zero())
        .ok_or_else(|| {
            Error::InvalidArgument(format!("{place} has no root in its residue field"))
        })?;
    let value = res.mul(emb.apply(k.gamma()), lift(k.d()).eval(theta));
    Ok((1, root_orbit_degrees(&res, value, n)?))
}

/// Outcome of one oracle sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checked: usize,
    pub mismatches: Vec<String>,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        SuiteResult {
            name,
            checked: 0,
            mismatches: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.mismatches.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// All polynomials of degree exactly `d`.
fn all_polys(ctx: &FqContext, d: usize) -> impl Iterator<Item = FqPoly> + '_ {
    let q = ctx.q();
    (1..q).flat_map(move |lead| {
        (0..q.pow(d as u32)).map(move |idx| monic_by_index(ctx, d, idx).scale(FqElem(lead as u32)))
    })
}

fn random_poly(rng: &mut ChaCha8Rng, ctx: &FqContext, d: usize, monic: bool) -> FqPoly {
    let q = ctx.q() as u32;
    let mut coeffs: Vec<FqElem> = (0..d).map(|_| FqElem(rng.gen_range(0..q))).collect();
    coeffs.push(if monic {
        FqElem::ONE
    } else {
        FqElem(rng.gen_range(1..q))
    });
    FqPoly::new(ctx, coeffs)
}

/// `factor` against trial division.
pub fn factor_suite(cfg: &OracleConfig, random_cases: usize) -> Result<SuiteResult> {
    let mut out = SuiteResult::new("factor == naive_factor");
    for q in [2u64, 3, 5] {
        let ctx = FqContext::new(q, 1)?;
        for d in 1..=5 {
            for f in all_polys(&ctx, d) {
                let ok = factor(&f)? == naive_factor(cfg, &f)?;
                out.record(ok, || format!("q = {q}: {f}"));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let fields = [FqContext::new(3, 2)?, FqContext::new(5, 2)?];
    for i in 0..random_cases {
        let ctx = &fields[i % 2];
        let d = rng.gen_range(1..=5);
        let f = random_poly(&mut rng, ctx, d, false);
        let ok = factor(&f)? == naive_factor(cfg, &f)?;
        out.record(ok, || format!("q = {}: {f}", ctx.q()));
    }
    Ok(out)
}

/// `euler_phi` against counting units, all monic `M` of degree at most 3.
pub fn phi_suite() -> Result<SuiteResult> {
    let mut out = SuiteResult::new("euler_phi == unit_count");
    for (p, m) in [(2u64, 1u32), (3, 1), (2, 2), (5, 1)] {
        let ctx = FqContext::new(p, m)?;
        for d in 0..=3 {
            for idx in 0..ctx.q().pow(d as u32) {
                let mm = monic_by_index(&ctx, d, idx);
                let ok = euler_phi(&mm)? == unit_count(&mm)? as u128;
                out.record(ok, || format!("q = {}: {mm}", ctx.q()));
            }
        }
    }
    Ok(out)
}

/// `t0_radical` against the root-orbit computation.
pub fn t0_suite() -> Result<SuiteResult> {
    let mut out = SuiteResult::new("t0_radical == t0_root_degrees");
    for (p, m) in [(3u64, 1u32), (5, 1), (3, 2)] {
        let ctx = FqContext::new(p, m)?;
        for d in (1..=6u64).filter(|d| d % p != 0) {
            for g in ctx.elements().filter(|g| !g.is_zero()) {
                let a = t0_radical(&ctx, g, d, 1)?;
                let b = t0_root_degrees(&ctx, g, d)?;
                out.record(a == b, || {
                    format!(
                        "q = {}, gamma = {}, d = {d}: {a} vs {b}",
                        ctx.q(),
                        ctx.fmt_elem(g)
                    )
                });
            }
        }
    }
    Ok(out)
}

/// Random radical extensions for sweeps: `n <= max_n` prime to `p`,
/// `deg D <= max_deg_d`. Instances rejected by validation are skipped.
pub fn random_radical(
    rng: &mut ChaCha8Rng,
    fields: &[FqContext],
    max_n: u64,
    max_deg_d: usize,
) -> Option<RadicalExtension> {
    let ctx = &fields[rng.gen_range(0..fields.len())];
    let n = rng.gen_range(2..=max_n);
    if n % ctx.p() == 0 {
        return None;
    }
    let mut d = FqPoly::one(ctx);
    let target = rng.gen_range(1..=max_deg_d);
    while d.deg() < target {
        let k = rng.gen_range(1..=(target - d.deg()).min(3));
        let f = random_poly(rng, ctx, k, true);
        let e = rng.gen_range(1..=(target - d.deg()) / k);
        d = &d * &f.pow(e as u64);
    }
    let gamma = FqElem(rng.gen_range(1..ctx.q() as u32));
    RadicalExtension::new(ctx, n, gamma, &d, 1).ok()
}

/// Finite ramification: gcd formula, Newton polygon, and the local oracle.
pub fn ramification_suite(cfg: &OracleConfig, cases: usize) -> Result<SuiteResult> {
    let mut out = SuiteResult::new("ram_finite == newton_polygon_e");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x7a3);
    let fields = [
        FqContext::new(3, 1)?,
        FqContext::new(5, 1)?,
        FqContext::new(7, 1)?,
        FqContext::new(2, 2)?,
    ];
    let mut done = 0;
    while done < cases {
        let Some(k) = random_radical(&mut rng, &fields, 12, 6) else {
            continue;
        };
        done += 1;
        let formula = ram_finite(&k);
        for (pl, a) in &k.factors().factors {
            let e_newton = newton_polygon_e(k.n(), *a as u64);
            let e_formula = formula.iter().find(|(p, _)| p == pl).map_or(1, |x| x.1);
            let (e_local, _) = splitting_at_finite(cfg, &k, pl)?;
            out.record(e_newton == e_formula && e_local == e_formula, || {
                format!(
                    "n = {}, D = {}, P = {pl}: {e_formula} / {e_newton} / {e_local}",
                    k.n(),
                    k.d()
                )
            });
        }
    }
    Ok(out)
}

/// The Carlitz module laws for all nonzero `M, N` of degree at most 2.
pub fn carlitz_suite() -> Result<SuiteResult> {
    let mut out = SuiteResult::new("Carlitz composition law");
    for q in [2u64, 3, 5] {
        let ctx = FqContext::new(q, 1)?;
        let polys: Vec<FqPoly> = (0..=2).flat_map(|d| all_polys(&ctx, d)).collect();
        for m in &polys {
            for n in &polys {
                out.record(carlitz_compose_check(m, n), || {
                    format!("q = {q}: M = {m}, N = {n}")
                });
            }
        }
    }
    Ok(out)
}

/// The full oracle sweep.
pub fn run_all(cfg: &OracleConfig) -> Result<Vec<SuiteResult>> {
    Ok(vec![
        factor_suite(cfg, 1000)?,
        phi_suite()?,
        t0_suite()?,
        ramification_suite(cfg, 200)?,
        carlitz_suite()?,
    ])
}
