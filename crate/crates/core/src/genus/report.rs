//! Symbolic field expressions and the genus report with its JSON and text
//! renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A radical generator `(sign·poly)^(1/e)` when `e | q - 1`. When `e` does
/// not divide `q - 1`, `poly` is irreducible and the entry stands for the
/// degree-`e` subfield of `k(Λ_poly)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Radical {
    pub e: u64,
    pub sign: i8,
    pub poly: String,
}

impl Radical {
    fn key(&self) -> (u64, &str, i8) {
        (self.e, self.poly.as_str(), self.sign)
    }

    /// Text form: `√(...)`, `√[e](...)`, or `F_{P,e}`.
    pub fn render(&self, q: u64) -> String {
        if !(q - 1).is_multiple_of(self.e) {
            return format!("F_{{{},{}}}", self.poly, self.e);
        }
        let inner = if self.sign < 0 {
            if self.poly.contains('+') {
                format!("-({})", self.poly)
            } else {
                format!("-{}", self.poly)
            }
        } else {
            self.poly.clone()
        };
        if self.e == 2 {
            format!("√({inner})")
        } else {
            format!("√[{}]({inner})", self.e)
        }
    }
}

/// Sorts and deduplicates radicals into canonical order.
pub fn canonical_radicals(mut v: Vec<Radical>) -> Vec<Radical> {
    v.sort_by(|a, b| a.key().cmp(&b.key()));
    v.dedup();
    v
}

/// `K · k(radicals) · F_{q^constants_deg}`; `constants_deg = None` stands
/// for an undetermined `F_{q^u}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldExpr {
    pub radicals: Vec<Radical>,
    pub constants_deg: Option<u64>,
}

impl FieldExpr {
    pub fn new(radicals: Vec<Radical>, constants_deg: Option<u64>) -> Self {
        FieldExpr {
            radicals: canonical_radicals(radicals),
            constants_deg,
        }
    }

    /// Canonical string; two expressions are equal iff their keys are.
    pub fn canonical_key(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    /// Text form over `K`, e.g. `K·√(T^2+2*T+2)·F_9`.
    pub fn render(&self, q: u64) -> String {
        let mut s = String::from("K");
        for r in &self.radicals {
            s.push('·');
            s.push_str(&r.render(q));
        }
        match self.constants_deg {
            Some(1) => {}
            Some(t) => {
                let _ = match q.checked_pow(t as u32) {
                    Some(qt) if t <= u32::MAX as u64 => write!(s, "·F_{qt}"),
                    _ => write!(s, "·F_{{{q}^{t}}}"),
                };
            }
            None => s.push_str("·F_{q^u}"),
        }
        s
    }
}

/// Text form of a subfield of `F_0` over `k`.
pub fn render_subfield(rads: &[Radical], q: u64) -> String {
    if rads.is_empty() {
        return "k".into();
    }
    let (kummer, other): (Vec<&Radical>, Vec<&Radical>) =
        rads.iter().partition(|r| (q - 1).is_multiple_of(r.e));
    let mut parts = Vec::new();
    if !kummer.is_empty() {
        let gens: Vec<String> = kummer.iter().map(|r| r.render(q)).collect();
        parts.push(format!("k({})", gens.join(", ")));
    }
    parts.extend(other.iter().map(|r| r.render(q)));
    parts.join("·")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subject {
    #[serde(rename = "K_ge")]
    GenusField,
    /// The tame part `K·k_1^*`, used when wild ramification is present.
    #[serde(rename = "K·k_1^*")]
    TamePart,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UStatus {
    EqualsT0,
    BoundedUnknown,
}

/// Why an exact report is exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    /// `F = F_0`: the sandwich closes up to constants.
    FEqualsF0,
    /// `n | q - 1`: `K/k` is abelian and `K_ge = KF`.
    Abelian,
    /// `F_0 ⊆ K F F̄_q`: the remaining gap consists of constants only.
    ConstantClosure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceComponent {
    pub place: String,
    pub deg: u64,
    pub e: u64,
    pub u: u32,
    pub c: u64,
    pub e_inf: u64,
    /// Divisor interval `(gcd(e, (q^d-1)/(q-1)), e)` for `e*_P`.
    pub prop33: [u64; 2],
    /// `F_P`, absent when `c = 1`.
    pub field: Option<Radical>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WildPlace {
    pub place: String,
    pub u: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WildBounds {
    pub wild_places: Vec<WildPlace>,
    pub finite_wild_degree_bound: u64,
    pub has_infinite_component: bool,
    pub tame_case_constants_only: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfinityData {
    pub e_inf: u64,
    pub c_inf: u64,
    pub cprime_bound: u64,
    pub cprime_exact: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subfields {
    pub f0: Vec<Radical>,
    /// `F` when `f_exact`, otherwise a subfield of `F` (at least
    /// `F_0 ∩ R^+` when expressible).
    pub f: Vec<Radical>,
    pub f_exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusReport {
    pub lower: FieldExpr,
    pub upper: FieldExpr,
    pub exact: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact_field: Option<FieldExpr>,
    pub conjectural: FieldExpr,
    pub t0: u64,
    pub components: Vec<PlaceComponent>,
    pub wild: WildBounds,
    pub subject: Subject,
    pub input: String,
    pub q: u64,
    pub u_status: UStatus,
    pub certificate: Option<Certificate>,
    pub infinity: InfinityData,
    pub subfields: Subfields,
}

impl GenusReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    fn subject_name(&self) -> &'static str {
        match self.subject {
            Subject::GenusField => "K_ge",
            Subject::TamePart => "K·k_1^*",
        }
    }

    pub fn render_text(&self) -> String {
        let q = self.q;
        let name = self.subject_name();
        let mut s = String::new();
        let _ = writeln!(s, "input: {}", self.input);
        let _ = writeln!(s, "subject: {name}");
        match self.subject {
            Subject::GenusField => {
                let _ = writeln!(s, "K·F·F_{{q^{{t_0}}}} ⊆ K_ge ⊆ K·F_0·F_{{q^u}}");
            }
            Subject::TamePart => {
                let _ = writeln!(
                    s,
                    "K·(F_0∩R^+)·F_{{q^{{t_0'}}}} ⊆ K·k_1^* ⊆ K·F_0·F_{{q^{{u_1}}}}"
                );
            }
        }
        if self.components.is_empty() {
            let _ = writeln!(s, "places: none ramified");
        } else {
            let _ = writeln!(s, "places:");
            for c in &self.components {
                let fp = c
                    .field
                    .as_ref()
                    .map(|r| render_subfield(std::slice::from_ref(r), q))
                    .unwrap_or_else(|| "k".into());
                let _ = writeln!(
                    s,
                    "  {}: deg {}, e {}, u {}, c {}, e_inf {}, F_P = {}",
                    c.place, c.deg, c.e, c.u, c.c, c.e_inf, fp
                );
            }
        }
        let inf = &self.infinity;
        let _ = write!(
            s,
            "infinity: e_inf {}, c_inf {}, c'_inf | {}",
            inf.e_inf, inf.c_inf, inf.cprime_bound
        );
        match inf.cprime_exact {
            Some(c) => {
                let _ = writeln!(s, ", c'_inf = {c}");
            }
            None => s.push('\n'),
        }
        let tname = match self.subject {
            Subject::GenusField => "t_0",
            Subject::TamePart => "t_0'",
        };
        let _ = writeln!(s, "{tname} = {}", self.t0);
        let _ = writeln!(s, "F_0 = {}", render_subfield(&self.subfields.f0, q));
        let _ = writeln!(
            s,
            "F {} {}",
            if self.subfields.f_exact { "=" } else { "⊇" },
            render_subfield(&self.subfields.f, q)
        );
        let _ = writeln!(s, "lower: {}", self.lower.render(q));
        let _ = writeln!(s, "upper: {}", self.upper.render(q));
        let symbolic = if self.subfields.f.is_empty() && self.subfields.f_exact {
            format!(
                "K·F_{{q^{{{}}}}}",
                if self.subject == Subject::TamePart {
                    "t_0'"
                } else {
                    "t_0"
                }
            )
        } else {
            format!(
                "K·F·F_{{q^{{{}}}}}",
                if self.subject == Subject::TamePart {
                    "t_0'"
                } else {
                    "t_0"
                }
            )
        };
        match (&self.exact_field, self.exact) {
            (Some(f), true) => {
                let cert = self
                    .certificate
                    .map(|c| match c {
                        Certificate::FEqualsF0 => " [F = F_0]",
                        Certificate::Abelian => " [abelian]",
                        Certificate::ConstantClosure => " [constant closure]",
                    })
                    .unwrap_or("");
                let _ = writeln!(s, "EXACT{cert}: {name} = {symbolic} = {}", f.render(q));
            }
            _ => {
                let _ = writeln!(
                    s,
                    "BOUNDS: {} ⊆ {name} ⊆ {}",
                    self.lower.render(q),
                    self.upper.render(q)
                );
            }
        }
        let _ = writeln!(
            s,
            "CONJECTURE: {name} = {symbolic} = {}",
            self.conjectural.render(q)
        );
        let w = &self.wild;
        if w.tame_case_constants_only {
            let _ = writeln!(s, "wild: none; k_2^* is an extension of constants");
        } else {
            let places: Vec<String> = w
                .wild_places
                .iter()
                .map(|x| format!("{} (u = {})", x.place, x.u))
                .collect();
            let _ = writeln!(
                s,
                "wild: places [{}], finite wild degree divides {}, infinite component possible: {}",
                places.join(", "),
                w.finite_wild_degree_bound,
                w.has_infinite_component
            );
        }
        s
    }
}
