use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{FqContext, FqElem};
use crate::error::{Error, Result};

/// Degree cap for user-facing operations (factorization, irreducibility,
/// parsing). Internal arithmetic is not capped.
pub const MAX_DEGREE: usize = 64;

/// A polynomial in `F_q[T]`, coefficients low degree first, with no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqPoly {
    ctx: FqContext,
    coeffs: Vec<FqElem>,
}

impl FqPoly {
    pub fn new(ctx: &FqContext, mut coeffs: Vec<FqElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FqPoly {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    /// Polynomial with integer coefficients reduced into the prime subfield.
    pub fn from_ints(ctx: &FqContext, coeffs: &[i64]) -> Self {
        Self::new(ctx, coeffs.iter().map(|&c| ctx.from_int(c)).collect())
    }

    pub fn zero(ctx: &FqContext) -> Self {
        Self::new(ctx, Vec::new())
    }

    pub fn one(ctx: &FqContext) -> Self {
        Self::constant(ctx, FqElem::ONE)
    }

    pub fn constant(ctx: &FqContext, c: FqElem) -> Self {
        Self::new(ctx, vec![c])
    }

    /// The indeterminate `T`.
    pub fn t(ctx: &FqContext) -> Self {
        Self::monomial(ctx, FqElem::ONE, 1)
    }

    pub fn monomial(ctx: &FqContext, c: FqElem, k: usize) -> Self {
        let mut v = vec![FqElem::ZERO; k + 1];
        v[k] = c;
        Self::new(ctx, v)
    }

    pub fn ctx(&self) -> &FqContext {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> FqElem {
        self.coeffs.get(k).copied().unwrap_or(FqElem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == FqElem::ONE
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> FqElem {
        self.coeffs.last().copied().unwrap_or(FqElem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == FqElem::ONE
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    fn check(&self, other: &Self) {
        assert!(self.ctx == other.ctx, "{}", Error::ContextMismatch);
    }

    pub fn scale(&self, c: FqElem) -> Self {
        let f = &self.ctx;
        Self::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Splits off the leading coefficient: `self = unit * monic`.
    pub fn to_monic(&self) -> Result<(FqElem, Self)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let lc = self.leading();
        Ok((lc, self.scale(self.ctx.inv(lc)?)))
    }

    pub fn monic(&self) -> Result<Self> {
        Ok(self.to_monic()?.1)
    }

    pub fn divrem(&self, b: &Self) -> Result<(Self, Self)> {
        self.check(b);
        let f = &self.ctx;
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        if self.coeffs.len() <= db {
            return Ok((Self::zero(f), self.clone()));
        }
        let inv = f.inv(b.leading())?;
        let mut r = self.coeffs.clone();
        let mut q = vec![FqElem::ZERO; r.len() - db];
        for k in (0..q.len()).rev() {
            let c = f.mul(r[k + db], inv);
            q[k] = c;
            if c.is_zero() {
                continue;
            }
            for (i, &bc) in b.coeffs.iter().enumerate() {
                r[k + i] = f.sub(r[k + i], f.mul(c, bc));
            }
        }
        r.truncate(db);
        Ok((Self::new(f, q), Self::new(f, r)))
    }

    pub fn rem(&self, b: &Self) -> Result<Self> {
        Ok(self.divrem(b)?.1)
    }

    /// Exact quotient; errors when `b` does not divide `self`.
    pub fn div_exact(&self, b: &Self) -> Result<Self> {
        let (q, r) = self.divrem(b)?;
        if !r.is_zero() {
            return Err(Error::InvalidArgument(format!(
                "{b} does not divide {self}"
            )));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Self) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, b: &Self) -> Self {
        self.check(b);
        let (mut a, mut b) = (self.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic().expect("nonzero")
        }
    }

    pub fn derivative(&self) -> Self {
        let f = &self.ctx;
        Self::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| f.mul(f.from_int((k as u64 % f.p()) as i64), c))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(&self.ctx);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn mulmod(&self, b: &Self, m: &Self) -> Result<Self> {
        (self * b).rem(m)
    }

    pub fn powmod(&self, mut e: u64, m: &Self) -> Result<Self> {
        let mut acc = Self::one(&self.ctx).rem(m)?;
        let mut base = self.rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mulmod(&base, m)?;
            }
        }
        Ok(acc)
    }

    pub fn eval(&self, x: FqElem) -> FqElem {
        let f = &self.ctx;
        self.coeffs
            .iter()
            .rev()
            .fold(FqElem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Substitution `self(g(T))`.
    pub fn compose(&self, g: &Self) -> Self {
        self.check(g);
        let mut acc = Self::zero(&self.ctx);
        for &c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Self::constant(&self.ctx, c);
        }
        acc
    }

    /// Applies a map to every coefficient, landing in another context.
    pub fn map_coeffs(&self, target: &FqContext, f: impl Fn(FqElem) -> FqElem) -> Self {
        Self::new(target, self.coeffs.iter().map(|&c| f(c)).collect())
    }

    /// Canonical order: degree first, then coefficient tuples compared from
    /// the constant term upwards.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| {
            for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
                let o = self.ctx.lex_key(*a).cmp(&other.ctx.lex_key(*b));
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    }

    /// Stable byte encoding (used to seed randomized algorithms).
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(8 + 4 * self.coeffs.len());
        out.extend_from_slice(&(self.ctx.p() as u32).to_le_bytes());
        out.extend_from_slice(&self.ctx.m().to_le_bytes());
        for c in &self.coeffs {
            out.extend_from_slice(&c.index().to_le_bytes());
        }
        out
    }

    /// Irreducibility via the distinct-degree sieve: `f` is irreducible iff
    /// `gcd(f, T^(q^d) - T) = 1` for every `d <= deg f / 2`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let n = self.degree().ok_or(Error::ZeroPolynomial)?;
        if n == 0 {
            return Err(Error::ConstantPolynomial);
        }
        if n > MAX_DEGREE {
            return Err(Error::DegreeTooLarge(n, MAX_DEGREE));
        }
        let t = Self::t(&self.ctx);
        let mut h = t.rem(self)?;
        for _ in 1..=n / 2 {
            h = h.powmod(self.ctx.q(), self)?;
            if !self.gcd(&(&h - &t)).is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Formats with a chosen variable name.
    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let cs = self.ctx.fmt_elem(c);
            terms.push(if mono.is_empty() {
                cs
            } else if c == FqElem::ONE {
                mono
            } else {
                format!("{cs}*{mono}")
            });
        }
        terms.join("+")
    }
}

impl fmt::Display for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("T"))
    }
}

impl fmt::Debug for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self, self.ctx)
    }
}

impl Add for &FqPoly {
    type Output = FqPoly;
    fn add(self, rhs: &FqPoly) -> FqPoly {
        self.check(rhs);
        let f = &self.ctx;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        FqPoly::new(
            f,
            (0..n).map(|k| f.add(self.coeff(k), rhs.coeff(k))).collect(),
        )
    }
}

impl Sub for &FqPoly {
    type Output = FqPoly;
    fn sub(self, rhs: &FqPoly) -> FqPoly {
        self.check(rhs);
        let f = &self.ctx;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        FqPoly::new(
            f,
            (0..n).map(|k| f.sub(self.coeff(k), rhs.coeff(k))).collect(),
        )
    }
}

impl Neg for &FqPoly {
    type Output = FqPoly;
    fn neg(self) -> FqPoly {
        let f = &self.ctx;
        FqPoly::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

impl Mul for &FqPoly {
    type Output = FqPoly;
    fn mul(self, rhs: &FqPoly) -> FqPoly {
        self.check(rhs);
        let f = &self.ctx;
        if self.is_zero() || rhs.is_zero() {
            return FqPoly::zero(f);
        }
        let mut out = vec![FqElem::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        FqPoly::new(f, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FqContext {
        FqContext::new(3, 1).unwrap()
    }

    #[test]
    fn long_division() {
        let f = f3();
        let a = FqPoly::from_ints(&f, &[1, 2, 0, 1]);
        let t = FqPoly::t(&f);
        let (q, r) = a.divrem(&t).unwrap();
        assert_eq!(q, FqPoly::from_ints(&f, &[2, 0, 1]));
        assert_eq!(r, FqPoly::from_ints(&f, &[1]));
        assert_eq!(a.divrem(&FqPoly::zero(&f)), Err(Error::DivisionByZero));
    }

    #[test]
    fn gcd_of_coprime_pair() {
        let f = f3();
        let a = FqPoly::from_ints(&f, &[-1, -1, 1]);
        assert!(a.gcd(&FqPoly::t(&f)).is_one());
        let b = &a * &FqPoly::from_ints(&f, &[1, 1]);
        let c = &a.scale(f.from_int(2)) * &FqPoly::t(&f);
        assert_eq!(b.gcd(&c), a);
    }

    #[test]
    fn cube_roots_of_unity_over_f25() {
        let f = FqContext::new(5, 2).unwrap();
        let z = f.exp(8);
        let l1 = FqPoly::new(&f, vec![f.neg(z), FqElem::ONE]);
        let l2 = FqPoly::new(&f, vec![f.neg(f.mul(z, z)), FqElem::ONE]);
        assert_eq!(&l1 * &l2, FqPoly::from_ints(&f, &[1, 1, 1]));
    }

    #[test]
    fn irreducibility() {
        let f = f3();
        assert!(FqPoly::from_ints(&f, &[1, 2, 0, 1])
            .is_irreducible()
            .unwrap());
        assert!(FqPoly::from_ints(&f, &[-1, -1, 1])
            .is_irreducible()
            .unwrap());
        assert!(!FqPoly::from_ints(&f, &[1, 0, 2, 0, 1])
            .is_irreducible()
            .unwrap());
        let f25 = FqContext::new(5, 2).unwrap();
        assert!(!FqPoly::from_ints(&f25, &[1, 1, 1])
            .is_irreducible()
            .unwrap());
        assert_eq!(
            FqPoly::from_ints(&f, &[2]).is_irreducible(),
            Err(Error::ConstantPolynomial)
        );
    }

    #[test]
    fn display() {
        let f = f3();
        assert_eq!(FqPoly::from_ints(&f, &[-1, -1, 1]).to_string(), "T^2+2*T+2");
        assert_eq!(FqPoly::zero(&f).to_string(), "0");
        let f9 = FqContext::new(3, 2).unwrap();
        let p = FqPoly::new(&f9, vec![f9.generator(), FqElem::ONE]);
        assert_eq!(p.to_string(), "T+g^1");
    }
}
