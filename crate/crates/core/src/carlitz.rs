//! The Carlitz module over `F_q[T]`, the Euler function `Φ(M)`, and the
//! numerical invariants of cyclotomic function fields and their subfields.

use std::fmt;

use crate::arith::{gcd, geometric_sum_mod, qpow_minus_one_mod};
use crate::error::{Error, Result};
use crate::ffpoly::{factor, Embedding, FqContext, FqElem, FqPoly};

/// Largest total coefficient size (sum of `T`-degrees) of a computed `ρ_M`.
pub const MAX_CARLITZ_SIZE: u128 = 1 << 22;

/// An additive polynomial `sum_j c_j(T) X^(q^j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarlitzPoly {
    ctx: FqContext,
    /// `coeffs[j]` multiplies `X^(q^j)`; no trailing zeros.
    coeffs: Vec<FqPoly>,
}

/// `c(T)^q = c(T^q)` for `c` in `F_q[T]`.
fn frob_q(c: &FqPoly) -> FqPoly {
    let ctx = c.ctx();
    let q = ctx.q() as usize;
    let mut out = vec![FqElem::ZERO; c.deg() * q + 1];
    for (k, &a) in c.coeffs().iter().enumerate() {
        out[k * q] = a;
    }
    FqPoly::new(ctx, out)
}

impl CarlitzPoly {
    pub fn new(ctx: &FqContext, mut coeffs: Vec<FqPoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        CarlitzPoly {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    pub fn ctx(&self) -> &FqContext {
        &self.ctx
    }

    /// `coeffs()[j]` is the coefficient of `X^(q^j)`.
    pub fn coeffs(&self) -> &[FqPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> FqPoly {
        self.coeffs
            .get(j)
            .cloned()
            .unwrap_or_else(|| FqPoly::zero(&self.ctx))
    }

    /// `log_q` of the `X`-degree; `None` for the zero map.
    pub fn q_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// `ρ_T ∘ self = self^q + T·self`.
    fn apply_t(&self) -> Self {
        let t = FqPoly::t(&self.ctx);
        let n = self.coeffs.len() + 1;
        let out = (0..n)
            .map(|j| {
                let lin = &t * &self.coeff(j);
                if j == 0 {
                    lin
                } else {
                    &lin + &frob_q(&self.coeff(j - 1))
                }
            })
            .collect();
        Self::new(&self.ctx, out)
    }

    /// Evaluates at `X = x` after specializing `T = t`, both in the target of
    /// `emb`.
    pub fn eval(&self, emb: &Embedding, t: FqElem, x: FqElem) -> FqElem {
        let big = emb.target();
        let q = self.ctx.q();
        let mut acc = FqElem::ZERO;
        let mut xp = x;
        for c in &self.coeffs {
            let ct = c
                .coeffs()
                .iter()
                .rev()
                .fold(FqElem::ZERO, |a, &k| big.add(big.mul(a, t), emb.apply(k)));
            acc = big.add(acc, big.mul(ct, xp));
            xp = big.pow(xp, q);
        }
        acc
    }
}

impl fmt::Display for CarlitzPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let q = self.ctx.q();
        let mut terms = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = if j == 0 {
                "X".to_string()
            } else {
                format!("X^{}", q.pow(j as u32))
            };
            let cs = c.to_string();
            terms.push(if c.is_one() {
                mono
            } else if c.coeffs().iter().filter(|a| !a.is_zero()).count() > 1 {
                format!("({cs})*{mono}")
            } else {
                format!("{cs}*{mono}")
            });
        }
        f.write_str(&terms.join("+"))
    }
}

/// `ρ_M` by Horner's rule over the coefficients of `M`, using
/// `ρ_{TA + c} = ρ_T ∘ ρ_A + c·X`.
pub fn carlitz_action(m: &FqPoly) -> Result<CarlitzPoly> {
    let ctx = m.ctx();
    let d = m.degree().ok_or(Error::ZeroPolynomial)?;
    let q = ctx.q() as u128;
    let mut size: u128 = 0;
    let mut qj: u128 = 1;
    for j in 0..=d {
        size = size.saturating_add(qj.saturating_mul((d - j) as u128 + 1));
        qj = qj.saturating_mul(q);
    }
    if size > MAX_CARLITZ_SIZE {
        return Err(Error::InvalidArgument(format!(
            "rho_M for deg M = {d} over {ctx} is too large to expand"
        )));
    }
    let mut acc = CarlitzPoly::new(ctx, Vec::new());
    for &c in m.coeffs().iter().rev() {
        acc = acc.apply_t();
        let mut cs = acc.coeffs.clone();
        if cs.is_empty() {
            cs.push(FqPoly::zero(ctx));
        }
        cs[0] = &cs[0] + &FqPoly::constant(ctx, c);
        acc = CarlitzPoly::new(ctx, cs);
    }
    Ok(acc)
}

/// `Φ(M) = |(F_q[T]/M)^*|` for monic `M`.
pub fn euler_phi(m: &FqPoly) -> Result<u128> {
    if m.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !m.is_monic() {
        return Err(Error::NotMonic);
    }
    let q = m.ctx().q() as u128;
    let mut phi: u128 = 1;
    for (p, a) in factor(m)?.factors {
        let qd = q
            .checked_pow(p.deg() as u32)
            .ok_or(Error::Overflow("Phi(M)"))?;
        let tail = qd.checked_pow(a - 1).ok_or(Error::Overflow("Phi(M)"))?;
        phi = phi
            .checked_mul(qd - 1)
            .and_then(|x| x.checked_mul(tail))
            .ok_or(Error::Overflow("Phi(M)"))?;
    }
    Ok(phi)
}

/// Invariants of `k(Λ_M)/k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicDatum {
    pub m: FqPoly,
    pub phi: u128,
    /// Ramification index of the infinite prime, `q - 1`.
    pub inf_ram: u64,
    /// Number of primes above infinity, `Φ(M)/(q - 1)`.
    pub inf_split_count: u128,
    /// `[k(Λ_M) : k(Λ_M)^+] = q - 1`.
    pub real_subfield_index: u64,
}

pub fn cyclo_datum(m: &FqPoly) -> Result<CyclotomicDatum> {
    if m.degree().ok_or(Error::ZeroPolynomial)? == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let phi = euler_phi(m)?;
    let q1 = m.ctx().q() - 1;
    Ok(CyclotomicDatum {
        m: m.clone(),
        phi,
        inf_ram: q1,
        inf_split_count: phi / q1 as u128,
        real_subfield_index: q1,
    })
}

/// The unique subfield `F_P` of degree `c` of `k(Λ_P)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubfieldFP {
    pub p: FqPoly,
    pub c: u64,
    /// Ramification index of the infinite prime in `F_P/k`.
    pub e_inf: u64,
}

/// Ramification index of infinity in the degree-`c` subfield of `k(Λ_P)`,
/// `deg P = d`: the order of the image of `F_q^*` in the cyclic quotient of
/// order `c`, i.e. `c / gcd(c, (q^d - 1)/(q - 1))`.
pub fn e_inf_of_subfield(q: u64, d: u64, c: u64) -> u64 {
    c / gcd(c, geometric_sum_mod(q, d, c))
}

pub fn subfield_fp(p: &FqPoly, c: u64) -> Result<SubfieldFP> {
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    if !p.is_irreducible()? {
        return Err(Error::InvalidArgument(format!("{p} is not irreducible")));
    }
    let q = p.ctx().q();
    let d = p.deg() as u64;
    if c == 0 || qpow_minus_one_mod(q, d, c) != 0 {
        return Err(Error::InvalidArgument(format!(
            "{c} does not divide q^{d} - 1 for q = {q}"
        )));
    }
    Ok(SubfieldFP {
        p: p.clone(),
        c,
        e_inf: e_inf_of_subfield(q, d, c),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::parse_poly;

    #[test]
    fn small_actions() {
        let f3 = FqContext::new(3, 1).unwrap();
        let one = carlitz_action(&FqPoly::one(&f3)).unwrap();
        assert_eq!(one.to_string(), "X");
        let rt = carlitz_action(&FqPoly::t(&f3)).unwrap();
        assert_eq!(rt.to_string(), "X^3+T*X");
        let rt2 = carlitz_action(&parse_poly(&f3, "T^2").unwrap()).unwrap();
        assert_eq!(rt2.to_string(), "X^9+(T^3+T)*X^3+T^2*X");
        assert!(carlitz_action(&FqPoly::zero(&f3)).is_err());
    }

    #[test]
    fn rho_t_is_additive_on_f27() {
        let f3 = FqContext::new(3, 1).unwrap();
        let f27 = FqContext::new(3, 3).unwrap();
        let emb = f3.embedding_into(&f27).unwrap();
        let rho = carlitz_action(&parse_poly(&f3, "T^2+1").unwrap()).unwrap();
        let t = f27.generator();
        for x in f27.elements() {
            for y in f27.elements().step_by(5) {
                let lhs = rho.eval(&emb, t, f27.add(x, y));
                let rhs = f27.add(rho.eval(&emb, t, x), rho.eval(&emb, t, y));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn phi_values() {
        let f3 = FqContext::new(3, 1).unwrap();
        assert_eq!(euler_phi(&FqPoly::t(&f3)).unwrap(), 2);
        assert_eq!(
            euler_phi(&parse_poly(&f3, "T^3+2*T+1").unwrap()).unwrap(),
            26
        );
        assert_eq!(euler_phi(&parse_poly(&f3, "T^2").unwrap()).unwrap(), 6);
        assert_eq!(
            euler_phi(&parse_poly(&f3, "2*T").unwrap()),
            Err(Error::NotMonic)
        );
    }

    #[test]
    fn cyclotomic_data() {
        let f5 = FqContext::new(5, 1).unwrap();
        let d = cyclo_datum(&parse_poly(&f5, "T^2+T+1").unwrap()).unwrap();
        assert_eq!(d.inf_ram, 4);
        let f3 = FqContext::new(3, 1).unwrap();
        let d = cyclo_datum(&parse_poly(&f3, "T^3+2*T+1").unwrap()).unwrap();
        assert_eq!((d.phi, d.inf_split_count), (26, 13));
        let d = cyclo_datum(&FqPoly::t(&f3)).unwrap();
        assert_eq!((d.inf_ram, d.inf_split_count), (2, 1));
    }

    #[test]
    fn subfield_ramification_at_infinity() {
        let f3 = FqContext::new(3, 1).unwrap();
        let p = parse_poly(&f3, "T^3+2*T+1").unwrap();
        assert_eq!(subfield_fp(&p, 2).unwrap().e_inf, 2);
        let p2 = parse_poly(&f3, "T^2-T-1").unwrap();
        assert_eq!(subfield_fp(&p2, 2).unwrap().e_inf, 1);
        let f5 = FqContext::new(5, 1).unwrap();
        let p3 = parse_poly(&f5, "T^2+T+1").unwrap();
        assert_eq!(subfield_fp(&p3, 3).unwrap().e_inf, 1);
        assert!(subfield_fp(&p3, 5).is_err());
    }

    #[test]
    fn both_e_inf_formulas_agree() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25] {
            for d in 1..6u64 {
                let n = q.pow(d as u32) - 1;
                for c in (1..=n).filter(|c| n % c == 0).take(40) {
                    let a = e_inf_of_subfield(q, d, c);
                    let b = (q - 1) / gcd(q - 1, n / c);
                    assert_eq!(a, b, "q={q} d={d} c={c}");
                    assert_eq!(gcd(c, q - 1) % a, 0);
                }
            }
        }
    }
}
