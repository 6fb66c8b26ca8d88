//! The finite field `F_q`, `q = p^m`, modelled as `F_p[x]/(modulus)`.
//!
//! Elements are packed as the integer `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`
//! of their coefficient vector. Multiplication goes through discrete-log
//! tables and addition through Zech logarithms, so both are table lookups.

use std::fmt;
use std::sync::Arc;

use crate::arith::{gcd, is_prime, prime_divisors};
use crate::error::{Error, Result};

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 16;

/// An element of some [`FqContext`]; meaningless without its context.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElem(pub(crate) u32);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Packed integer representation (coefficients read in base `p`).
    pub fn index(self) -> u32 {
        self.0
    }
}

struct Inner {
    p: u64,
    m: u32,
    q: u64,
    /// Monic, low degree first, length `m + 1`.
    modulus: Vec<u64>,
    generator: FqElem,
    /// `exp[k] = g^k` for `0 <= k < q - 1`.
    exp: Vec<u32>,
    /// `log[a]` for nonzero `a`.
    log: Vec<u32>,
    /// `zech[k] = log(1 + g^k)`, `u32::MAX` when `1 + g^k = 0`.
    zech: Vec<u32>,
}

/// Shared handle to a finite field. Cloning is cheap.
#[derive(Clone)]
pub struct FqContext(Arc<Inner>);

impl PartialEq for FqContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.m == other.0.m)
    }
}

impl Eq for FqContext {}

impl std::hash::Hash for FqContext {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.p().hash(state);
        self.m().hash(state);
    }
}

impl fmt::Debug for FqContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q())
    }
}

impl fmt::Display for FqContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q())
    }
}

/// Coefficient vector multiplication modulo a monic polynomial over `F_p`.
fn naive_mulmod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let m = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * m];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for k in (m..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for (i, &mc) in modulus[..m].iter().enumerate() {
            let idx = k - m + i;
            prod[idx] = (prod[idx] + (p - c) * mc) % p;
        }
    }
    prod.truncate(m);
    prod
}

fn naive_pow(a: &[u64], mut e: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let m = modulus.len() - 1;
    let mut acc = vec![0u64; m];
    acc[0] = 1;
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = naive_mulmod(&acc, &base, modulus, p);
        }
        base = naive_mulmod(&base, &base, modulus, p);
        e >>= 1;
    }
    acc
}

fn pack(c: &[u64], p: u64) -> u32 {
    c.iter().rev().fold(0u64, |acc, &x| acc * p + x) as u32
}

fn unpack(mut v: u64, p: u64, m: u32) -> Vec<u64> {
    (0..m)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

/// Coefficient tuple for the `k`-th candidate in lexicographic order
/// (low degree coefficient most significant).
fn lex_tuple(mut k: u64, p: u64, m: u32) -> Vec<u64> {
    let mut c = vec![0u64; m as usize];
    for i in (0..m as usize).rev() {
        c[i] = k % p;
        k /= p;
    }
    c
}

impl FqContext {
    /// Builds `F_{p^m}` with the lexicographically smallest monic irreducible
    /// modulus and the smallest generator of full multiplicative order.
    pub fn new(p: u64, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m < 1 {
            return Err(Error::ZeroExtensionDegree);
        }
        let q = p
            .checked_pow(m)
            .filter(|&q| q <= MAX_FIELD_SIZE)
            .ok_or_else(|| Error::FieldTooLarge(format!("{p}^{m}")))?;
        let modulus = if m == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible(p, m)?
        };
        Ok(Self::with_modulus(p, m, q, modulus))
    }

    fn with_modulus(p: u64, m: u32, q: u64, modulus: Vec<u64>) -> Self {
        let order = q - 1;
        let primes = prime_divisors(order);
        let one = {
            let mut v = vec![0u64; m as usize];
            v[0] = 1;
            v
        };
        let mut generator = None;
        for k in 0..q {
            let c = lex_tuple(k, p, m);
            if c.iter().all(|&x| x == 0) {
                continue;
            }
            let full = primes
                .iter()
                .all(|&r| naive_pow(&c, order / r, &modulus, p) != one);
            if full {
                generator = Some(c);
                break;
            }
        }
        let g = generator.expect("a finite field has a primitive element");

        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; q as usize];
        let mut cur = one.clone();
        for k in 0..order {
            let packed = pack(&cur, p);
            exp.push(packed);
            log[packed as usize] = k as u32;
            cur = naive_mulmod(&cur, &g, &modulus, p);
        }

        let mut zech = vec![u32::MAX; order as usize];
        for k in 0..order as usize {
            let mut c = unpack(exp[k] as u64, p, m);
            c[0] = (c[0] + 1) % p;
            let s = pack(&c, p);
            if s != 0 {
                zech[k] = log[s as usize];
            }
        }

        FqContext(Arc::new(Inner {
            p,
            m,
            q,
            modulus,
            generator: FqElem(pack(&g, p)),
            exp,
            log,
            zech,
        }))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn m(&self) -> u32 {
        self.0.m
    }

    pub fn q(&self) -> u64 {
        self.0.q
    }

    /// The defining modulus over `F_p`, low degree first.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn generator(&self) -> FqElem {
        self.0.generator
    }

    pub fn zero(&self) -> FqElem {
        FqElem::ZERO
    }

    pub fn one(&self) -> FqElem {
        FqElem::ONE
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> FqElem {
        FqElem(v.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn from_coeffs(&self, c: &[u64]) -> Result<FqElem> {
        if c.len() > self.0.m as usize || c.iter().any(|&x| x >= self.0.p) {
            return Err(Error::InvalidArgument(format!(
                "coefficient vector {c:?} does not describe an element of {self}"
            )));
        }
        Ok(FqElem(pack(c, self.0.p)))
    }

    /// Coefficient vector of length `m` over `F_p`.
    pub fn coeffs(&self, a: FqElem) -> Vec<u64> {
        unpack(a.0 as u64, self.0.p, self.0.m)
    }

    /// Sort key ordering elements lexicographically by coefficient tuple,
    /// low degree first.
    pub fn lex_key(&self, a: FqElem) -> u64 {
        let c = self.coeffs(a);
        c.iter().fold(0u64, |acc, &x| acc * self.0.p + x)
    }

    pub fn is_in_prime_field(&self, a: FqElem) -> bool {
        (a.0 as u64) < self.0.p
    }

    pub fn exp(&self, k: u64) -> FqElem {
        FqElem(self.0.exp[(k % (self.0.q - 1)) as usize])
    }

    /// Discrete log to the context generator; `None` for zero.
    pub fn log(&self, a: FqElem) -> Option<u64> {
        if a.is_zero() {
            None
        } else {
            Some(self.0.log[a.0 as usize] as u64)
        }
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if self.0.m == 1 {
            return FqElem(((a.0 as u64 + b.0 as u64) % self.0.p) as u32);
        }
        let n = self.0.q - 1;
        let la = self.0.log[a.0 as usize] as u64;
        let lb = self.0.log[b.0 as usize] as u64;
        let z = self.0.zech[((lb + n - la) % n) as usize];
        if z == u32::MAX {
            FqElem::ZERO
        } else {
            self.exp(la + z as u64)
        }
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        if a.is_zero() || self.0.p == 2 {
            return a;
        }
        if self.0.m == 1 {
            return FqElem((self.0.p - a.0 as u64) as u32);
        }
        let n = self.0.q - 1;
        self.exp(self.0.log[a.0 as usize] as u64 + n / 2)
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if a.is_zero() || b.is_zero() {
            return FqElem::ZERO;
        }
        if self.0.m == 1 {
            return FqElem(((a.0 as u64 * b.0 as u64) % self.0.p) as u32);
        }
        self.exp(self.0.log[a.0 as usize] as u64 + self.0.log[b.0 as usize] as u64)
    }

    pub fn inv(&self, a: FqElem) -> Result<FqElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.0.q - 1;
        Ok(self.exp(n - self.0.log[a.0 as usize] as u64))
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> Result<FqElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FqElem, e: u64) -> FqElem {
        if e == 0 {
            return FqElem::ONE;
        }
        if a.is_zero() {
            return FqElem::ZERO;
        }
        let n = self.0.q - 1;
        let l = self.0.log[a.0 as usize] as u128;
        self.exp(((l * (e as u128 % n as u128)) % n as u128) as u64)
    }

    /// Signed exponent; negative powers of zero are an error.
    pub fn pow_signed(&self, a: FqElem, e: i64) -> Result<FqElem> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(self.inv(a)?, e.unsigned_abs()))
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: FqElem) -> Result<u64> {
        let l = self.log(a).ok_or(Error::ZeroElement)?;
        let n = self.0.q - 1;
        Ok(n / gcd(n, l))
    }

    /// Whether `a` lies in `(F_q^*)^e`: `a^((q-1)/gcd(e, q-1)) = 1`.
    pub fn is_eth_power(&self, a: FqElem, e: u64) -> Result<bool> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        if e == 0 {
            return Err(Error::InvalidArgument("exponent must be positive".into()));
        }
        let n = self.0.q - 1;
        Ok(self.pow(a, n / gcd(e, n)) == FqElem::ONE)
    }

    /// `e`-th power test relative to the subfield `F_{p^k}` (`k | m`) that
    /// contains `a`.
    pub fn is_eth_power_in_subfield(&self, a: FqElem, e: u64, k: u32) -> Result<bool> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        if k == 0 || !self.0.m.is_multiple_of(k) {
            return Err(Error::InvalidArgument(format!(
                "F_{}^{k} is not a subfield of {self}",
                self.0.p
            )));
        }
        let sub = self.0.p.pow(k) - 1;
        if self.pow(a, sub) != FqElem::ONE {
            return Err(Error::InvalidArgument(
                "element is not in the subfield".into(),
            ));
        }
        Ok(self.pow(a, sub / gcd(e, sub)) == FqElem::ONE)
    }

    /// Frobenius `a -> a^p`.
    pub fn frobenius(&self, a: FqElem) -> FqElem {
        self.pow(a, self.0.p)
    }

    /// The unique `p`-th root.
    pub fn pth_root(&self, a: FqElem) -> FqElem {
        self.pow(a, self.0.q / self.0.p)
    }

    /// Iterator over all elements, in packed order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.0.q as u32).map(FqElem)
    }

    /// Human-readable element: integers for the prime subfield, `g^k` otherwise.
    pub fn fmt_elem(&self, a: FqElem) -> String {
        if self.is_in_prime_field(a) {
            a.0.to_string()
        } else {
            format!("g^{}", self.log(a).expect("nonzero"))
        }
    }

    /// Field embedding `self -> big`, fixed by sending the defining root of
    /// `self` to the lexicographically smallest root of `self.modulus` in `big`.
    pub fn embedding_into(&self, big: &FqContext) -> Result<Embedding> {
        if big.p() != self.p() || !big.m().is_multiple_of(self.m()) {
            return Err(Error::InvalidArgument(format!(
                "{self} does not embed in {big}"
            )));
        }
        let root = if self.m() == 1 {
            FqElem::ZERO
        } else {
            let mut roots: Vec<FqElem> = big
                .elements()
                .filter(|&x| {
                    let mut acc = FqElem::ZERO;
                    for &c in self.modulus().iter().rev() {
                        acc = big.add(big.mul(acc, x), big.from_int(c as i64));
                    }
                    acc.is_zero()
                })
                .collect();
            roots.sort_by_key(|&r| big.lex_key(r));
            *roots.first().ok_or_else(|| {
                Error::InvalidArgument(format!("modulus of {self} has no root in {big}"))
            })?
        };
        let gc = self.coeffs(self.generator());
        let mut image = FqElem::ZERO;
        let mut pw = FqElem::ONE;
        for &c in &gc {
            image = big.add(image, big.mul(big.from_int(c as i64), pw));
            pw = big.mul(pw, root);
        }
        Ok(Embedding {
            source: self.clone(),
            target: big.clone(),
            generator_image: image,
        })
    }
}

/// A field embedding `F_q -> F_{q^k}`.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: FqContext,
    target: FqContext,
    generator_image: FqElem,
}

impl Embedding {
    pub fn source(&self) -> &FqContext {
        &self.source
    }

    pub fn target(&self) -> &FqContext {
        &self.target
    }

    pub fn apply(&self, a: FqElem) -> FqElem {
        match self.source.log(a) {
            None => FqElem::ZERO,
            Some(k) => self.target.pow(self.generator_image, k),
        }
    }
}

fn smallest_irreducible(p: u64, m: u32) -> Result<Vec<u64>> {
    use super::poly::FqPoly;
    let prime = FqContext::new(p, 1)?;
    let count = p.pow(m);
    for k in 0..count {
        let mut c = lex_tuple(k, p, m);
        if c[0] == 0 {
            continue;
        }
        c.push(1);
        let poly = FqPoly::new(
            &prime,
            c.iter().map(|&x| prime.from_int(x as i64)).collect(),
        );
        if poly.is_irreducible()? {
            return Ok(c);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_context() {
        let f3 = FqContext::new(3, 1).unwrap();
        assert_eq!(f3.modulus(), &[0, 1]);
        assert_eq!(f3.generator(), FqElem(2));
        let f7 = FqContext::new(7, 1).unwrap();
        assert_eq!(f7.generator(), FqElem(3));
    }

    #[test]
    fn f9_is_built_from_t2_plus_1() {
        let f9 = FqContext::new(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        // 1 + x: the first element of order 8 in lexicographic order.
        assert_eq!(f9.coeffs(f9.generator()), vec![1, 1]);
        assert_eq!(f9.order(f9.generator()).unwrap(), 8);
    }

    #[test]
    fn f25_contains_primitive_cube_roots() {
        let f25 = FqContext::new(5, 2).unwrap();
        let z = f25.exp(8);
        assert_eq!(f25.order(z).unwrap(), 3);
        let s = f25.add(f25.add(f25.mul(z, z), z), f25.one());
        assert!(s.is_zero());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FqContext::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(
            FqContext::new(3, 0).unwrap_err(),
            Error::ZeroExtensionDegree
        );
        assert!(matches!(
            FqContext::new(2, 17),
            Err(Error::FieldTooLarge(_))
        ));
        assert!(FqContext::new(2, 16).is_ok());
    }

    #[test]
    fn field_axioms_small() {
        for (p, m) in [(2, 1), (2, 3), (3, 2), (5, 1), (5, 2), (2, 4)] {
            let f = FqContext::new(p, m).unwrap();
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), FqElem::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), FqElem::ONE);
                }
                for &b in &els {
                    // digitwise addition is the reference
                    let (ca, cb) = (f.coeffs(a), f.coeffs(b));
                    let sum: Vec<u64> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
                    assert_eq!(f.add(a, b), f.from_coeffs(&sum).unwrap());
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                }
            }
        }
    }

    #[test]
    fn eth_powers() {
        let f3 = FqContext::new(3, 1).unwrap();
        let f5 = FqContext::new(5, 1).unwrap();
        assert!(!f3.is_eth_power(f3.from_int(-1), 2).unwrap());
        assert!(f5.is_eth_power(f5.from_int(-1), 2).unwrap());
        assert!(f5.is_eth_power(f5.one(), 7).unwrap());
        assert_eq!(f5.is_eth_power(f5.zero(), 2), Err(Error::ZeroElement));
    }

    #[test]
    fn embedding_is_a_ring_map() {
        let f9 = FqContext::new(3, 2).unwrap();
        let f81 = FqContext::new(3, 4).unwrap();
        let emb = f9.embedding_into(&f81).unwrap();
        for a in f9.elements() {
            for b in f9.elements() {
                assert_eq!(emb.apply(f9.add(a, b)), f81.add(emb.apply(a), emb.apply(b)));
                assert_eq!(emb.apply(f9.mul(a, b)), f81.mul(emb.apply(a), emb.apply(b)));
            }
        }
        assert!(f9.embedding_into(&FqContext::new(3, 3).unwrap()).is_err());
    }
}
