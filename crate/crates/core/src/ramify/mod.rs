//! Ramification of radical extensions `K = k((γD)^(1/n))` of `k = F_q(T)`,
//! optionally with the constants `F_{q^s}` adjoined, and abstract
//! ramification profiles.

mod newton;

pub use newton::{newton_polygon_e, NewtonPolygon, Slope};

use crate::arith::{gcd, gcd_all, lcm, prime_divisors, valuation};
use crate::error::{Error, Result};
use crate::ffpoly::{factor, Factorization, FqContext, FqElem, FqPoly};

/// The datum `(q, n, γ, D)` together with the constants degree `s`.
#[derive(Clone, Debug)]
pub struct RadicalExtension {
    ctx: FqContext,
    n: u64,
    gamma: FqElem,
    d: FqPoly,
    factors: Factorization,
    s: u32,
}

impl RadicalExtension {
    /// Validates and factors the datum. Rejects `p | n`, non-monic `D`,
    /// exponents `α_i >= n`, and data for which `X^n - γD` is reducible
    /// over `k` (Capelli's criterion).
    pub fn new(ctx: &FqContext, n: u64, gamma: FqElem, d: &FqPoly, s: u32) -> Result<Self> {
        let p = ctx.p();
        if n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        if n.is_multiple_of(p) {
            return Err(Error::WildDegree { p, n });
        }
        if gamma.is_zero() {
            return Err(Error::ZeroElement);
        }
        if s == 0 {
            return Err(Error::InvalidArgument(
                "base constants degree must be positive".into(),
            ));
        }
        if d.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !d.is_monic() {
            return Err(Error::NotMonic);
        }
        let factors = factor(d)?;
        if let Some((pl, a)) = factors.factors.iter().find(|(_, a)| *a as u64 >= n) {
            return Err(Error::InvalidExtension(format!(
                "D is not {n}-th power free: ({pl})^{a}"
            )));
        }
        let ext = RadicalExtension {
            ctx: ctx.clone(),
            n,
            gamma,
            d: d.clone(),
            factors,
            s,
        };
        ext.check_irreducible()?;
        Ok(ext)
    }

    fn check_irreducible(&self) -> Result<()> {
        let f = &self.ctx;
        let alphas: Vec<u64> = self.alphas();
        for l in prime_divisors(self.n) {
            if alphas.iter().all(|a| a % l == 0) && f.is_eth_power(self.gamma, l)? {
                return Err(Error::InvalidExtension(format!(
                    "γD is an {l}-th power in k, so X^{} - γD is reducible",
                    self.n
                )));
            }
        }
        if self.n.is_multiple_of(4) && alphas.iter().all(|a| a % 4 == 0) {
            // γ = -4 λ^4 makes γD = -4 (λ D^(1/4))^4.
            let four = f.from_int(4);
            let target = f.div(f.neg(self.gamma), four)?;
            if f.is_eth_power(target, 4)? {
                return Err(Error::InvalidExtension(format!(
                    "γD lies in -4k^4, so X^{} - γD is reducible",
                    self.n
                )));
            }
        }
        Ok(())
    }

    pub fn ctx(&self) -> &FqContext {
        &self.ctx
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn gamma(&self) -> FqElem {
        self.gamma
    }

    pub fn d(&self) -> &FqPoly {
        &self.d
    }

    pub fn factors(&self) -> &Factorization {
        &self.factors
    }

    /// Degree over `F_q` of the constants adjoined to `K`.
    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn alphas(&self) -> Vec<u64> {
        self.factors
            .factors
            .iter()
            .map(|(_, a)| *a as u64)
            .collect()
    }

    pub fn deg_d(&self) -> u64 {
        self.d.deg() as u64
    }

    /// `gcd(n, α_1, ..., α_s)`: the constant field of `k((γD)^(1/n))` has
    /// this degree over `F_q`.
    pub fn constant_degree_of_radical(&self) -> u64 {
        self.alphas().into_iter().fold(self.n, gcd)
    }

    /// Same datum with a different constants degree.
    pub fn with_base_constants(&self, s: u32) -> Result<Self> {
        if s == 0 {
            return Err(Error::InvalidArgument(
                "base constants degree must be positive".into(),
            ));
        }
        let mut out = self.clone();
        out.s = s;
        Ok(out)
    }
}

/// Ramification data at one finite place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceRamification {
    pub place: FqPoly,
    pub exponents: Vec<u64>,
    /// `gcd` of the exponents.
    pub e: u64,
    /// `v_p(e)`.
    pub u: u32,
    /// Prime-to-`p` part of `e`.
    pub e0: u64,
}

impl PlaceRamification {
    pub fn new(p: u64, place: FqPoly, exponents: Vec<u64>) -> Result<Self> {
        if exponents.is_empty() || exponents.contains(&0) {
            return Err(Error::InvalidArgument(format!(
                "exponents at {place} must be a nonempty list of positive integers"
            )));
        }
        let e = gcd_all(exponents.iter().copied());
        let u = valuation(p, e);
        Ok(PlaceRamification {
            place,
            exponents,
            e,
            u,
            e0: e / p.pow(u),
        })
    }
}

/// One prime of `K` above infinity: ramification index and inertia degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InfinitePrime {
    pub e: u64,
    pub t: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationProfile {
    ctx: FqContext,
    pub finite: Vec<PlaceRamification>,
    pub infinity: Vec<InfinitePrime>,
    pub e_inf: u64,
    pub t0: u64,
    pub geometric: bool,
}

impl RamificationProfile {
    /// Validates an abstract profile. Places must be distinct monic
    /// irreducibles; places with every exponent 1 are dropped. An empty
    /// infinity list means a single unramified prime of degree 1. When
    /// `geometric` is not supplied it is derived from `t_0 = 1`.
    pub fn new(
        ctx: &FqContext,
        finite: Vec<(FqPoly, Vec<u64>)>,
        infinity: Vec<InfinitePrime>,
        geometric: Option<bool>,
    ) -> Result<Self> {
        let mut places: Vec<PlaceRamification> = Vec::new();
        for (pl, exps) in finite {
            if pl.ctx() != ctx {
                return Err(Error::ContextMismatch);
            }
            if !pl.is_monic() {
                return Err(Error::NotMonic);
            }
            if !pl.is_irreducible()? {
                return Err(Error::InvalidArgument(format!("{pl} is not irreducible")));
            }
            if places.iter().any(|x| x.place == pl) {
                return Err(Error::InvalidArgument(format!("place {pl} listed twice")));
            }
            let r = PlaceRamification::new(ctx.p(), pl, exps)?;
            if r.exponents.iter().any(|&e| e > 1) {
                places.push(r);
            }
        }
        places.sort_by(|a, b| a.place.canonical_cmp(&b.place));
        let infinity = if infinity.is_empty() {
            vec![InfinitePrime { e: 1, t: 1 }]
        } else {
            infinity
        };
        if infinity.iter().any(|x| x.e == 0 || x.t == 0) {
            return Err(Error::InvalidArgument(
                "infinite primes need positive e and t".into(),
            ));
        }
        let e_inf = gcd_all(infinity.iter().map(|x| x.e));
        let t0 = gcd_all(infinity.iter().map(|x| x.t));
        let geometric = match geometric {
            Some(false) if t0 == 1 => {
                return Err(Error::InvalidArgument(
                    "t_0 = 1 forces the extension to be geometric".into(),
                ))
            }
            Some(g) => g,
            None => t0 == 1,
        };
        Ok(RamificationProfile {
            ctx: ctx.clone(),
            finite: places,
            infinity,
            e_inf,
            t0,
            geometric,
        })
    }

    pub fn ctx(&self) -> &FqContext {
        &self.ctx
    }

    pub fn is_tame(&self) -> bool {
        self.finite.iter().all(|r| r.u == 0) && !self.e_inf.is_multiple_of(self.ctx.p())
    }
}

/// `(P_i, n / gcd(α_i, n))` for the places where this exceeds 1.
pub fn ram_finite(k: &RadicalExtension) -> Vec<(FqPoly, u64)> {
    k.factors
        .factors
        .iter()
        .map(|(pl, a)| (pl.clone(), k.n / gcd(*a as u64, k.n)))
        .filter(|(_, e)| *e > 1)
        .collect()
}

/// `n / gcd(deg D, n)`.
pub fn ram_infinity(k: &RadicalExtension) -> u64 {
    k.n / gcd(k.deg_d(), k.n)
}

/// Context for `F_{q^s}` with a fixed embedding of `F_q`.
pub(crate) fn constant_extension(ctx: &FqContext, s: u32) -> Result<FqContext> {
    let m = ctx
        .m()
        .checked_mul(s)
        .ok_or_else(|| Error::FieldTooLarge(format!("{}^({}*{s})", ctx.p(), ctx.m())))?;
    FqContext::new(ctx.p(), m)
}

/// Degrees over `F_q` of the residue fields at the primes above infinity:
/// `s` times the degrees of the irreducible factors of `X^d - γ` over
/// `F_{q^s}`.
pub fn infinite_inertia_degrees(
    ctx: &FqContext,
    gamma: FqElem,
    d: u64,
    s: u32,
) -> Result<Vec<u64>> {
    if d == 0 {
        return Err(Error::InvalidArgument("d must be positive".into()));
    }
    if d.is_multiple_of(ctx.p()) {
        return Err(Error::WildDegree { p: ctx.p(), n: d });
    }
    if gamma.is_zero() {
        return Err(Error::ZeroElement);
    }
    let big = constant_extension(ctx, s)?;
    let g = ctx.embedding_into(&big)?.apply(gamma);
    let mut coeffs = vec![FqElem::ZERO; d as usize + 1];
    coeffs[0] = big.neg(g);
    coeffs[d as usize] = FqElem::ONE;
    let fx = factor(&FqPoly::new(&big, coeffs))?;
    Ok(fx
        .degrees()
        .into_iter()
        .map(|k| s as u64 * k as u64)
        .collect())
}

/// `t_0`: the gcd of the inertia degrees above infinity.
pub fn t0_radical(ctx: &FqContext, gamma: FqElem, d: u64, s: u32) -> Result<u64> {
    Ok(gcd_all(infinite_inertia_degrees(ctx, gamma, d, s)?))
}

pub fn build_profile(k: &RadicalExtension) -> Result<RamificationProfile> {
    let e_inf = ram_infinity(k);
    let d = gcd(k.deg_d(), k.n);
    let ts = infinite_inertia_degrees(&k.ctx, k.gamma, d, k.s)?;
    let infinity: Vec<InfinitePrime> = ts.iter().map(|&t| InfinitePrime { e: e_inf, t }).collect();
    let finite = ram_finite(k)
        .into_iter()
        .map(|(pl, e)| PlaceRamification::new(k.ctx.p(), pl, vec![e]))
        .collect::<Result<Vec<_>>>()?;
    Ok(RamificationProfile {
        ctx: k.ctx.clone(),
        finite,
        e_inf,
        t0: gcd_all(ts),
        geometric: k.s == 1 && k.constant_degree_of_radical() == 1,
        infinity,
    })
}

/// Ramification index in a composite of two extensions, at least one of them
/// tame at the place.
pub fn abhyankar_lcm(p: u64, e1: u64, e2: u64) -> Result<u64> {
    if e1.is_multiple_of(p) && e2.is_multiple_of(p) {
        return Err(Error::InvalidArgument(format!(
            "both ramification indices {e1} and {e2} are divisible by p = {p}"
        )));
    }
    Ok(lcm(e1, e2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::parse_poly;

    fn ext(p: u64, n: u64, gamma: i64, d: &str, s: u32) -> Result<RadicalExtension> {
        let ctx = FqContext::new(p, 1).unwrap();
        let dd = parse_poly(&ctx, d).unwrap();
        RadicalExtension::new(&ctx, n, ctx.from_int(gamma), &dd, s)
    }

    #[test]
    fn first_example_profile() {
        let k = ext(3, 2, 1, "T^3+2*T+1", 1).unwrap();
        let pr = build_profile(&k).unwrap();
        assert_eq!(pr.finite.len(), 1);
        assert_eq!(pr.finite[0].e, 2);
        assert_eq!((pr.e_inf, pr.t0, pr.geometric), (2, 1, true));
    }

    #[test]
    fn second_example_profile() {
        let k = ext(3, 10, -1, "T^2*(T^2-T-1)", 1).unwrap();
        let es: Vec<u64> = ram_finite(&k).into_iter().map(|(_, e)| e).collect();
        assert_eq!(es, vec![5, 10]);
        assert_eq!(ram_infinity(&k), 5);
        let pr = build_profile(&k).unwrap();
        assert_eq!(pr.t0, 2);
        assert_eq!(pr.infinity, vec![InfinitePrime { e: 5, t: 2 }]);
    }

    #[test]
    fn third_example_profiles() {
        let k = ext(5, 3, 1, "T*(T^2+T+1)", 2).unwrap();
        let pr = build_profile(&k).unwrap();
        assert_eq!(pr.e_inf, 1);
        assert_eq!(pr.t0, 2);
        assert!(!pr.geometric);
        let pr1 = build_profile(&k.with_base_constants(1).unwrap()).unwrap();
        assert_eq!(pr1.t0, 1);
        let ts: Vec<u64> = pr1.infinity.iter().map(|x| x.t).collect();
        assert_eq!(ts, vec![1, 2]);
    }

    #[test]
    fn t0_values() {
        let f3 = FqContext::new(3, 1).unwrap();
        let f5 = FqContext::new(5, 1).unwrap();
        assert_eq!(t0_radical(&f3, f3.from_int(-1), 2, 1).unwrap(), 2);
        assert_eq!(t0_radical(&f5, f5.one(), 3, 1).unwrap(), 1);
        assert_eq!(t0_radical(&f5, f5.one(), 3, 2).unwrap(), 2);
        assert_eq!(t0_radical(&f3, f3.one(), 1, 1).unwrap(), 1);
        assert!(t0_radical(&f3, f3.one(), 3, 1).is_err());
    }

    #[test]
    fn rejects_invalid_data() {
        assert!(matches!(
            ext(3, 3, 1, "T", 1),
            Err(Error::WildDegree { .. })
        ));
        assert!(matches!(
            ext(3, 2, 1, "T^2", 1),
            Err(Error::InvalidExtension(_))
        ));
        assert_eq!(ext(3, 2, 1, "2*T", 1).unwrap_err(), Error::NotMonic);
        // T^2 * 1 with n = 4 over F_5: γ = 1 is a square and α = 2 is even.
        assert!(matches!(
            ext(5, 4, 1, "T^2", 1),
            Err(Error::InvalidExtension(_))
        ));
        // γ = -1 is not a square in F_3, so k(sqrt(-T^2)) = k(i) is a field.
        let k = ext(3, 2, -1, "1", 1).unwrap();
        assert_eq!(k.constant_degree_of_radical(), 2);
        assert!(!build_profile(&k).unwrap().geometric);
        assert!(matches!(
            ext(5, 4, 1, "1", 1),
            Err(Error::InvalidExtension(_))
        ));
        // Over F_3, 2 is not a square but X^4 - 2 = X^4 + 1 still splits.
        assert!(matches!(
            ext(3, 4, -1, "1", 1),
            Err(Error::InvalidExtension(_))
        ));
    }

    #[test]
    fn abhyankar() {
        assert_eq!(abhyankar_lcm(5, 2, 3).unwrap(), 6);
        assert_eq!(abhyankar_lcm(5, 4, 1).unwrap(), 4);
        assert!(abhyankar_lcm(3, 3, 6).is_err());
    }

    #[test]
    fn abstract_profile_validation() {
        let f3 = FqContext::new(3, 1).unwrap();
        let p = parse_poly(&f3, "T^3+2*T+1").unwrap();
        let pr =
            RamificationProfile::new(&f3, vec![(p.clone(), vec![2, 4])], vec![], None).unwrap();
        assert_eq!(pr.finite[0].e, 2);
        assert_eq!(pr.infinity, vec![InfinitePrime { e: 1, t: 1 }]);
        assert!(pr.geometric);
        let wild =
            RamificationProfile::new(&f3, vec![(p.clone(), vec![18])], vec![], None).unwrap();
        assert_eq!((wild.finite[0].u, wild.finite[0].e0), (2, 2));
        let red = parse_poly(&f3, "T^2-1").unwrap();
        assert!(RamificationProfile::new(&f3, vec![(red, vec![2])], vec![], None).is_err());
        assert!(RamificationProfile::new(&f3, vec![(p, vec![])], vec![], None).is_err());
    }
}
