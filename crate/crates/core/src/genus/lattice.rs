//! Full-rank integer lattices in `Z^t`, kept in row Hermite normal form.
//!
//! Every lattice handled here contains `N Z^t` for a known modulus `N`, so
//! entries stay below `N` after reduction.

/// Extended gcd: `(g, u, w)` with `u a + w b = g >= 0`.
fn xgcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    /// Upper triangular basis, positive pivots, entries above each pivot
    /// reduced into `[0, pivot)`.
    rows: Vec<Vec<i128>>,
    modulus: i128,
}

impl Lattice {
    /// `Z^t`, tagged with a modulus `N` such that all lattices derived from it
    /// contain `N Z^t`.
    pub fn full(t: usize, modulus: u64) -> Self {
        let rows = (0..t)
            .map(|i| (0..t).map(|j| i128::from(i == j)).collect())
            .collect();
        Lattice {
            rows,
            modulus: modulus.max(1) as i128,
        }
    }

    /// Lattice spanned by `gens` together with `N Z^t`.
    pub fn span(t: usize, modulus: u64, gens: &[Vec<i128>]) -> Self {
        let n = modulus.max(1) as i128;
        let mut all: Vec<Vec<i128>> = gens.to_vec();
        for i in 0..t {
            let mut v = vec![0; t];
            v[i] = n;
            all.push(v);
        }
        Lattice {
            rows: hnf(all, t),
            modulus: n,
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i128>] {
        &self.rows
    }

    /// Index in `Z^t`.
    pub fn det(&self) -> u128 {
        self.rows
            .iter()
            .enumerate()
            .map(|(i, r)| r[i] as u128)
            .product()
    }

    /// Sublattice on which `x -> m·x` vanishes modulo `modulus`, where
    /// `modulus` divides the lattice modulus.
    pub fn kernel_mod(&self, m: &[i128], modulus: u64) -> Self {
        let t = self.dim();
        let nm = modulus as i128;
        let mut rows = self.rows.clone();
        let mut vals: Vec<i128> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .zip(m)
                    .map(|(a, b)| a * b)
                    .sum::<i128>()
                    .rem_euclid(nm)
            })
            .collect();
        // Fold the values into the first row by unimodular row operations.
        for k in 1..t {
            if vals[k] == 0 {
                continue;
            }
            let (g, u, w) = xgcd(vals[0], vals[k]);
            let (a, b) = (vals[0] / g, vals[k] / g);
            let r0 = rows[0].clone();
            let rk = rows[k].clone();
            rows[0] = r0.iter().zip(&rk).map(|(x, y)| u * x + w * y).collect();
            rows[k] = r0.iter().zip(&rk).map(|(x, y)| b * x - a * y).collect();
            vals[0] = g;
            vals[k] = 0;
        }
        if t > 0 {
            let g = crate::arith::gcd(vals[0] as u64, modulus) as i128;
            let scale = nm / g;
            rows[0] = rows[0].iter().map(|x| x * scale).collect();
        }
        Lattice::span(t, self.modulus as u64, &rows)
    }

    /// Membership test by reduction against the triangular basis.
    pub fn contains(&self, v: &[i128]) -> bool {
        let mut v = v.to_vec();
        for (i, r) in self.rows.iter().enumerate() {
            if v[i].rem_euclid(r[i]) != 0 {
                return false;
            }
            let q = v[i] / r[i];
            for (x, y) in v.iter_mut().zip(r) {
                *x -= q * y;
            }
        }
        v.iter().all(|&x| x == 0)
    }

    /// Whether `self` is contained in `other`.
    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }
}

/// Row Hermite normal form of the lattice spanned by `gens` (assumed full
/// rank in `Z^t`).
fn hnf(mut gens: Vec<Vec<i128>>, t: usize) -> Vec<Vec<i128>> {
    let mut out: Vec<Vec<i128>> = Vec::with_capacity(t);
    for col in 0..t {
        loop {
            let nonzero: Vec<usize> = (0..gens.len()).filter(|&i| gens[i][col] != 0).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let piv = *nonzero
                .iter()
                .min_by_key(|&&i| gens[i][col].unsigned_abs())
                .expect("nonempty");
            let prow = gens[piv].clone();
            for &i in &nonzero {
                if i == piv {
                    continue;
                }
                let q = gens[i][col].div_euclid(prow[col]);
                for (x, y) in gens[i].iter_mut().zip(&prow) {
                    *x -= q * y;
                }
            }
        }
        let idx = gens
            .iter()
            .position(|g| g[col] != 0)
            .expect("lattice is full rank");
        let mut row = gens.swap_remove(idx);
        if row[col] < 0 {
            row.iter_mut().for_each(|x| *x = -*x);
        }
        out.push(row);
        gens.retain(|g| g.iter().any(|&x| x != 0));
    }
    // Reduce above the pivots.
    for col in 0..t {
        let p = out[col][col];
        let prow = out[col].clone();
        for r in out.iter_mut().take(col) {
            let q = r[col].div_euclid(p);
            if q != 0 {
                for (x, y) in r.iter_mut().zip(&prow) {
                    *x -= q * y;
                }
            }
        }
    }
    out
}
