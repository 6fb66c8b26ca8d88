//! Genus fields: the components `c_P`, `F_0`, `c_∞`, `c'_∞`, `F`, `t_0`,
//! wild bounds, and the resulting report.

mod lattice;
mod local;
mod report;

pub use lattice::Lattice;
pub use local::{
    hensel_root, splits_fully_at_infinity, splits_in_model, InfinityModel, KummerGen, LocalPrime,
};
pub use report::{
    canonical_radicals, render_subfield, Certificate, FieldExpr, GenusReport, InfinityData,
    PlaceComponent, Radical, Subfields, Subject, UStatus, WildBounds, WildPlace,
};

use crate::arith::{gcd, geometric_sum_mod, is_prime, lcm, lcm_all, qpow_minus_one_mod, valuation};
use crate::carlitz::e_inf_of_subfield;
use crate::error::{Error, Result};
use crate::ffpoly::{FqContext, FqElem, FqPoly};
use crate::ramify::{build_profile, RadicalExtension, RamificationProfile};

/// `c_P = gcd(e_P, q^deg - 1)`.
pub fn c_p(q: u64, e: u64, deg: u64) -> u64 {
    gcd(e, qpow_minus_one_mod(q, deg, e))
}

/// Whether a tame abelian extension with index `e_star` at `P` becomes
/// unramified above `P` after composing with an extension whose indices at
/// `P` are `e_list`.
pub fn unramified_in_composite(e_list: &[u64], e_star: u64) -> bool {
    let g = e_list.iter().copied().fold(0, gcd);
    g % e_star == 0
}

/// `(gcd(e, (q^deg - 1)/(q - 1)), e)`: the divisor interval for the
/// ramification index of `P` in `k*`.
pub fn prop33_interval(q: u64, e: u64, deg: u64) -> (u64, u64) {
    (gcd(e, geometric_sum_mod(q, deg, e)), e)
}

/// `(-1)^deg`, which is `+1` in characteristic 2.
fn place_sign(ctx: &FqContext, deg: u64) -> i8 {
    if ctx.p() == 2 || deg.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Per-place data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceData {
    pub place: FqPoly,
    pub deg: u64,
    pub e: u64,
    pub u: u32,
    pub c: u64,
    pub e_inf: u64,
}

impl PlaceData {
    fn radical(&self, e: u64) -> Radical {
        Radical {
            e,
            sign: place_sign(self.place.ctx(), self.deg),
            poly: self.place.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusComponents {
    pub q: u64,
    pub places: Vec<PlaceData>,
    pub c_inf: u64,
    pub e_inf: u64,
    pub cprime_bound: u64,
    pub cprime_exact: Option<u64>,
    pub f0: Vec<Radical>,
    /// A subfield of `F_0 ∩ R^+` (the product of the real parts of the
    /// `F_P`), equal to it when `real_exact`.
    pub real_lower: Vec<Radical>,
    pub real_exact: bool,
    /// `F` when `f_exact`, otherwise a subfield of it.
    pub f: Vec<Radical>,
    pub f_exact: bool,
    pub t0: u64,
}

impl GenusComponents {
    /// Whether every `F_P` is a Kummer extension of `k`.
    pub fn is_kummer(&self) -> bool {
        self.places
            .iter()
            .all(|pd| (self.q - 1).is_multiple_of(pd.c))
    }

    pub fn place_components(&self) -> Vec<PlaceComponent> {
        self.places
            .iter()
            .map(|pd| {
                let (lo, hi) = prop33_interval(self.q, pd.e, pd.deg);
                PlaceComponent {
                    place: pd.place.to_string(),
                    deg: pd.deg,
                    e: pd.e,
                    u: pd.u,
                    c: pd.c,
                    e_inf: pd.e_inf,
                    prop33: [lo, hi],
                    field: (pd.c > 1).then(|| pd.radical(pd.c)),
                }
            })
            .collect()
    }
}

/// Assembles `c_P`, `F_P`, `F_0`, `c_∞` and the `c'_∞` bound. `c_P` is
/// computed from the prime-to-`p` part of `e_P`, which gives the same value.
/// `F` is filled in where the index bound already forces it: `c_∞ = 1`
/// gives `F = F_0`, and `gcd(c_∞, e_∞) = 1` gives `F = F_0 ∩ R^+`.
pub fn build_f0(profile: &RamificationProfile) -> GenusComponents {
    let ctx = profile.ctx();
    let q = ctx.q();
    let places: Vec<PlaceData> = profile
        .finite
        .iter()
        .map(|r| {
            let deg = r.place.deg() as u64;
            let c = c_p(q, r.e0, deg);
            PlaceData {
                place: r.place.clone(),
                deg,
                e: r.e,
                u: r.u,
                c,
                e_inf: e_inf_of_subfield(q, deg, c),
            }
        })
        .collect();
    let c_inf = lcm_all(places.iter().map(|pd| pd.e_inf));
    let f0 = canonical_radicals(
        places
            .iter()
            .filter(|pd| pd.c > 1)
            .map(|pd| pd.radical(pd.c))
            .collect(),
    );
    let real_lower = canonical_radicals(
        places
            .iter()
            .filter(|pd| pd.c / pd.e_inf > 1)
            .map(|pd| pd.radical(pd.c / pd.e_inf))
            .collect(),
    );
    let prod: u128 = places
        .iter()
        .map(|pd| pd.e_inf as u128)
        .try_fold(1u128, |a, b| a.checked_mul(b))
        .unwrap_or(u128::MAX);
    let real_exact = prod == c_inf as u128;
    let cprime_bound = gcd(c_inf, profile.e_inf);
    let (f, f_exact) = if c_inf == 1 {
        (f0.clone(), true)
    } else if cprime_bound == 1 && real_exact {
        (real_lower.clone(), true)
    } else {
        (real_lower.clone(), false)
    };
    GenusComponents {
        q,
        places,
        c_inf,
        e_inf: profile.e_inf,
        cprime_bound,
        cprime_exact: None,
        f0,
        real_lower,
        real_exact,
        f,
        f_exact,
        t0: profile.t0,
    }
}

/// Wild places and the bound on the wild part.
pub fn wild_bounds(profile: &RamificationProfile) -> Result<WildBounds> {
    let p = profile.ctx().p();
    let wild: Vec<WildPlace> = profile
        .finite
        .iter()
        .filter(|r| r.u > 0)
        .map(|r| WildPlace {
            place: r.place.to_string(),
            u: r.u,
        })
        .collect();
    let total: u32 = wild.iter().map(|w| w.u).sum();
    let bound = p
        .checked_pow(total)
        .ok_or(Error::Overflow("finite wild degree bound"))?;
    let inf_wild = profile.e_inf.is_multiple_of(p);
    Ok(WildBounds {
        tame_case_constants_only: wild.is_empty() && !inf_wild,
        wild_places: wild,
        finite_wild_degree_bound: bound,
        has_infinite_component: inf_wild,
    })
}

/// The Kummer description of `F_0` and of its subfields `F` and
/// `F_0 ∩ R^+` as lattices: `x ∈ Z^t` stands for the radical
/// `prod_j ((-1)^deg P_j P_j)^(x_j N / c_j)` of exponent `N = lcm c_j`.
#[derive(Clone, Debug)]
pub struct KummerData {
    /// Indices into `GenusComponents::places` of the places with `c > 1`.
    pub index: Vec<usize>,
    pub modulus: u64,
    /// Elements whose radical keeps every infinite prime of `K` split.
    pub good: Lattice,
    /// Elements whose radical keeps the infinite prime of `k` split.
    pub real: Lattice,
}

fn add_model_constraints(
    lat: Lattice,
    model: &InfinityModel,
    places: &[&PlaceData],
    n: u64,
) -> Result<Lattice> {
    let big = model.big();
    let minus_one = big.neg(FqElem::ONE);
    let mut lat = lat;
    for pr in model.primes() {
        let lmu = model.residue_log(pr.mu, pr.t, n)?;
        let lminus = model.residue_log(minus_one, pr.t, n)?;
        let mut val = Vec::with_capacity(places.len());
        let mut res = Vec::with_capacity(places.len());
        for pd in places {
            let w = (n / pd.c) as i128;
            let nn = n as i128;
            val.push(((model.e_inf() as i128 * pd.deg as i128) % nn) * w % nn);
            let ls = if place_sign(pd.place.ctx(), pd.deg) < 0 {
                lminus
            } else {
                0
            };
            let r = (ls as i128 + (model.x() as i128 * pd.deg as i128 % nn) * lmu as i128) % nn;
            res.push(r * w % nn);
        }
        lat = lat.kernel_mod(&val, n).kernel_mod(&res, n);
    }
    Ok(lat)
}

/// Lattices of good elements over `K` and over `k`; requires every `c_P`
/// to divide `q - 1`.
pub fn kummer_subgroups(k: &RadicalExtension, comps: &GenusComponents) -> Result<KummerData> {
    if !comps.is_kummer() {
        return Err(Error::InvalidArgument(
            "some F_P is not a Kummer extension of k".into(),
        ));
    }
    let index: Vec<usize> = (0..comps.places.len())
        .filter(|&i| comps.places[i].c > 1)
        .collect();
    let places: Vec<&PlaceData> = index.iter().map(|&i| &comps.places[i]).collect();
    let n = lcm_all(places.iter().map(|pd| pd.c));
    let t = places.len();
    let model = InfinityModel::for_extension(k)?;
    let good = add_model_constraints(Lattice::full(t, n), &model, &places, n)?;
    let base = InfinityModel::base(k.ctx())?;
    let real = add_model_constraints(Lattice::full(t, n), &base, &places, n)?;
    Ok(KummerData {
        index,
        modulus: n,
        good,
        real,
    })
}

/// Radical generators read off the rows of a lattice of Kummer elements.
fn lattice_radicals(
    comps: &GenusComponents,
    data: &KummerData,
    lat: &Lattice,
) -> Vec<(Radical, KummerGen)> {
    let mut out = Vec::new();
    for row in lat.rows() {
        let ks: Vec<u64> = data
            .index
            .iter()
            .zip(row)
            .map(|(&i, &x)| x.rem_euclid(comps.places[i].c as i128) as u64)
            .collect();
        if ks.iter().all(|&x| x == 0) {
            continue;
        }
        let e = lcm_all(
            data.index
                .iter()
                .zip(&ks)
                .map(|(&i, &x)| comps.places[i].c / gcd(x, comps.places[i].c)),
        );
        let first = &comps.places[data.index[0]].place;
        let ctx = first.ctx();
        let mut poly = FqPoly::one(ctx);
        let mut sign = 1i8;
        for (&i, &x) in data.index.iter().zip(&ks) {
            let pd = &comps.places[i];
            let m = x * e / pd.c;
            poly = &poly * &pd.place.pow(m);
            if m % 2 == 1 {
                sign *= place_sign(ctx, pd.deg);
            }
        }
        let gen = KummerGen {
            e,
            gamma: ctx.from_int(sign as i64),
            a: poly.clone(),
        };
        out.push((
            Radical {
                e,
                sign,
                poly: poly.to_string(),
            },
            gen,
        ));
    }
    out
}

/// Determines `F` and `c'_∞` for a radical extension. In the Kummer case
/// the subgroup of good elements is computed exactly; otherwise the bounds
/// from [`build_f0`] stand.
pub fn find_f(k: &RadicalExtension, comps: GenusComponents) -> Result<GenusComponents> {
    let mut comps = comps;
    if !comps.is_kummer() {
        if comps.f_exact {
            comps.cprime_exact = Some(1);
        }
        return Ok(comps);
    }
    if comps.places.iter().all(|pd| pd.c == 1) {
        comps.f = Vec::new();
        comps.f_exact = true;
        comps.cprime_exact = Some(1);
        return Ok(comps);
    }
    let data = match kummer_subgroups(k, &comps) {
        Ok(d) => d,
        Err(Error::FieldTooLarge(_)) => return Ok(comps),
        Err(e) => return Err(e),
    };
    let model = InfinityModel::for_extension(k)?;
    let gens = lattice_radicals(&comps, &data, &data.good);
    for (r, g) in &gens {
        if !splits_in_model(&model, g)? {
            return Err(Error::InvalidArgument(format!(
                "generator {} of F does not split at infinity",
                r.render(comps.q)
            )));
        }
    }
    comps.f = canonical_radicals(gens.into_iter().map(|(r, _)| r).collect());
    comps.f_exact = true;
    comps.cprime_exact = Some((data.real.det() / data.good.det()) as u64);
    Ok(comps)
}

/// Whether `F_0 F̄_q ⊆ K F F̄_q`, decided in `(Z/N')^s` over all places of
/// `D` with `N' = lcm(n, c_P)`: geometric Kummer theory ignores constants.
fn constant_closure(k: &RadicalExtension, comps: &GenusComponents, data: &KummerData) -> bool {
    let places: Vec<&FqPoly> = k.factors().factors.iter().map(|(p, _)| p).collect();
    let s = places.len();
    let n2 = comps.places.iter().map(|pd| pd.c).fold(k.n(), lcm);
    let pos = |poly: &FqPoly| places.iter().position(|p| *p == poly).expect("place of D");
    let mut gens: Vec<Vec<i128>> = Vec::new();
    let scale_k = (n2 / k.n()) as i128;
    gens.push(k.alphas().iter().map(|&a| a as i128 * scale_k).collect());
    for row in data.good.rows() {
        let mut v = vec![0i128; s];
        for (&i, &x) in data.index.iter().zip(row) {
            let pd = &comps.places[i];
            v[pos(&pd.place)] = x * (n2 / pd.c) as i128;
        }
        gens.push(v);
    }
    let lat = Lattice::span(s, n2, &gens);
    comps.places.iter().filter(|pd| pd.c > 1).all(|pd| {
        let mut v = vec![0i128; s];
        v[pos(&pd.place)] = (n2 / pd.c) as i128;
        lat.contains(&v)
    })
}

fn describe(k: &RadicalExtension) -> String {
    format!(
        "q = {}, n = {}, gamma = {}, D = {}, s = {}",
        k.ctx().q(),
        k.n(),
        k.ctx().fmt_elem(k.gamma()),
        k.d(),
        k.s()
    )
}

/// The full pipeline for `K = k((γD)^(1/n)) F_{q^s}`.
pub fn genus_report(k: &RadicalExtension) -> Result<GenusReport> {
    let profile = build_profile(k)?;
    let comps = find_f(k, build_f0(&profile))?;
    let wild = wild_bounds(&profile)?;
    let q = comps.q;
    let certificate = if !comps.f_exact {
        None
    } else if FieldExpr::new(comps.f.clone(), None) == FieldExpr::new(comps.f0.clone(), None) {
        Some(Certificate::FEqualsF0)
    } else if comps.is_kummer() && constant_closure(k, &comps, &kummer_subgroups(k, &comps)?) {
        Some(Certificate::ConstantClosure)
    } else if (q - 1) % k.n() == 0 {
        Some(Certificate::Abelian)
    } else {
        None
    };
    Ok(assemble(
        &comps,
        wild,
        certificate,
        Subject::GenusField,
        comps.f.clone(),
        comps.t0,
        describe(k),
    ))
}

fn assemble(
    comps: &GenusComponents,
    wild: WildBounds,
    certificate: Option<Certificate>,
    subject: Subject,
    lower_rads: Vec<Radical>,
    t: u64,
    input: String,
) -> GenusReport {
    let exact = certificate.is_some();
    let lower = FieldExpr::new(lower_rads, Some(t));
    let upper = FieldExpr::new(comps.f0.clone(), exact.then_some(t));
    GenusReport {
        exact_field: exact.then(|| lower.clone()),
        conjectural: lower.clone(),
        lower,
        upper,
        exact,
        t0: t,
        components: comps.place_components(),
        wild,
        subject,
        input,
        q: comps.q,
        u_status: if exact {
            UStatus::EqualsT0
        } else {
            UStatus::BoundedUnknown
        },
        certificate,
        infinity: InfinityData {
            e_inf: comps.e_inf,
            c_inf: comps.c_inf,
            cprime_bound: comps.cprime_bound,
            cprime_exact: comps.cprime_exact,
        },
        subfields: Subfields {
            f0: comps.f0.clone(),
            f: comps.f.clone(),
            f_exact: comps.f_exact,
        },
    }
}

/// Report for an abstract ramification profile. With only tame
/// ramification the subject is `K_ge`; otherwise it is the tame part
/// `K k_1^*`, computed from the prime-to-`p` parts, with `t_0'` the
/// prime-to-`p` part of `t_0`.
pub fn genus_report_abstract(profile: &RamificationProfile) -> Result<GenusReport> {
    let comps = build_f0(profile);
    let wild = wild_bounds(profile)?;
    let p = profile.ctx().p();
    let input = format!(
        "q = {}, abstract profile with {} ramified place(s), {} infinite prime(s)",
        comps.q,
        comps.places.len(),
        profile.infinity.len()
    );
    if wild.tame_case_constants_only {
        let cert = (comps.c_inf == 1).then_some(Certificate::FEqualsF0);
        let lower = comps.f.clone();
        Ok(assemble(
            &comps,
            wild,
            cert,
            Subject::GenusField,
            lower,
            comps.t0,
            input,
        ))
    } else {
        let t = comps.t0 / p.pow(valuation(p, comps.t0));
        let lower = comps.real_lower.clone();
        Ok(assemble(
            &comps,
            wild,
            None,
            Subject::TamePart,
            lower,
            t,
            input,
        ))
    }
}

/// Cyclic extensions of prime degree `l ∤ q(q-1)` with `t` ramified
/// places: `([K_ge : K], t_0)`.
pub fn prime_degree_case(q: u64, l: u64, t: u32, k_in_rplus: bool) -> Result<(u64, u64)> {
    if !is_prime(l) {
        return Err(Error::NotPrime(l));
    }
    if q.is_multiple_of(l) || (q - 1).is_multiple_of(l) {
        return Err(Error::InvalidArgument(format!(
            "{l} divides q(q - 1) for q = {q}"
        )));
    }
    if t == 0 {
        return Err(Error::InvalidArgument(
            "a cyclic extension of prime degree has a ramified place".into(),
        ));
    }
    let deg = l
        .checked_pow(if k_in_rplus { t - 1 } else { t })
        .ok_or(Error::Overflow("l^t"))?;
    Ok((deg, if k_in_rplus { 1 } else { l }))
}

/// Radical extensions of degree `l^N` with `l^N | q - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimePowerProfile {
    pub l: u64,
    pub n_exp: u32,
    /// `v_l(α_i)` per place of `D`.
    pub a: Vec<u32>,
    /// `v_l(deg P_i)` per place of `D`.
    pub d_prime: Vec<u32>,
    pub d: u32,
    pub delta: u32,
    pub m: u32,
    pub c_inf: u64,
    pub e_inf: u64,
    pub cprime_bound: u64,
    pub t0: u64,
    pub e: Vec<u64>,
    pub generators: Vec<Radical>,
    pub geometric: bool,
}

pub fn prime_power_case(k: &RadicalExtension) -> Result<PrimePowerProfile> {
    let ctx = k.ctx();
    let q = ctx.q();
    let n = k.n();
    let ls = crate::arith::prime_divisors(n);
    if ls.len() != 1 {
        return Err(Error::InvalidArgument(format!("{n} is not a prime power")));
    }
    let l = ls[0];
    let nn = valuation(l, n);
    if !(q - 1).is_multiple_of(n) {
        return Err(Error::InvalidArgument(format!(
            "{n} does not divide q - 1 = {}",
            q - 1
        )));
    }
    let v = |x: u64| if x == 0 { nn } else { valuation(l, x).min(nn) };
    let places = &k.factors().factors;
    let a: Vec<u32> = places
        .iter()
        .map(|(_, al)| valuation(l, *al as u64))
        .collect();
    let d_prime: Vec<u32> = places
        .iter()
        .map(|(p, _)| valuation(l, p.deg() as u64))
        .collect();
    let d = v(k.deg_d());
    let delta = places
        .iter()
        .map(|(p, al)| v(*al as u64 * p.deg() as u64))
        .min()
        .unwrap_or(nn);
    // t_0 = l^m with m minimal such that γ is an l^d-th power in F_{q^(l^m)}.
    let ord = ctx.order(k.gamma())?;
    let ld = l.pow(d);
    let mut m = 0u32;
    loop {
        let ext = l.checked_pow(m).ok_or(Error::Overflow("l^m"))?;
        let g = gcd(ld, qpow_minus_one_mod(q, ext, ld));
        let g = if g == 0 { ld } else { g };
        let big = qpow_minus_one_mod(q, ext, ord * g);
        if big.is_multiple_of(g) && (big / g).is_multiple_of(ord) {
            break;
        }
        m += 1;
        if m > 64 {
            return Err(Error::Overflow("t_0"));
        }
    }
    let c_inf = l.pow(nn - delta);
    let e_inf = l.pow(nn - d);
    let e: Vec<u64> = a.iter().map(|&ai| l.pow(nn - ai)).collect();
    let generators = canonical_radicals(
        places
            .iter()
            .zip(&e)
            .map(|((p, _), &ei)| Radical {
                e: ei,
                sign: place_sign(ctx, p.deg() as u64),
                poly: p.to_string(),
            })
            .collect(),
    );
    Ok(PrimePowerProfile {
        l,
        n_exp: nn,
        geometric: a.contains(&0),
        a,
        d_prime,
        d,
        delta,
        m,
        c_inf,
        e_inf,
        cprime_bound: gcd(c_inf, e_inf),
        t0: l.pow(m),
        e,
        generators,
    })
}
