//! Weierstrass and superelliptic curves over [`KummerField`]s: twists,
//! isomorphisms, Weil cocycles and the induced Galois action on points.

mod scenario;
mod superelliptic;

pub use scenario::{elliptic_d6_scenario, D6Report, D6Row};
pub use superelliptic::{
    build_conj_descent, conj_descent_check, ConjDescent, ConjDescentRow, ConjDescentTable,
    Monomial, MonomialMap, SuperCurve,
};

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::cyclo::{AutGroupReport, CycloError, Field, FieldAut, KummerElem, KummerField};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error(transparent)]
    Field(#[from] CycloError),
    #[error("singular curve: 4A³ + 27B² = 0")]
    Singular,
    #[error("isomorphism scalar must be nonzero")]
    ZeroScalar,
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("descent datum incomplete: {0}")]
    Incomplete(String),
    #[error("not a monomial automorphism: {0}")]
    NotInvertible(String),
    #[error("undecidable in the monomial model: {0}")]
    Undecidable(String),
    #[error("Weil cocycle condition fails at ({sigma}, {tau})")]
    CocycleFails { sigma: String, tau: String },
}

/// `y² = x³ + Ax + B`.
#[derive(Clone, PartialEq, Eq)]
pub struct WCurve {
    a: KummerElem,
    b: KummerElem,
}

impl fmt::Debug for WCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WCurve({self})")
    }
}

impl fmt::Display for WCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3 + ({})*x + ({})", self.a, self.b)
    }
}

impl WCurve {
    pub fn new(a: KummerElem, b: KummerElem) -> Result<WCurve, CurveError> {
        if a.field() != b.field() {
            return Err(CycloError::FieldMismatch("A and B lie in different fields".into()).into());
        }
        let c = WCurve { a, b };
        if Field::is_zero(&c.discriminant()) {
            return Err(CurveError::Singular);
        }
        Ok(c)
    }

    pub fn a(&self) -> &KummerElem {
        &self.a
    }

    pub fn b(&self) -> &KummerElem {
        &self.b
    }

    pub fn field(&self) -> &Arc<KummerField> {
        self.a.field()
    }

    /// `4A³ + 27B²`
    pub fn discriminant(&self) -> KummerElem {
        let k = |n| KummerElem::from_int(self.a.field(), n);
        let a3 = self.a.times(&self.a).times(&self.a);
        k(4).times(&a3).plus(&k(27).times(&self.b.times(&self.b)))
    }

    /// `1728/16 · (4A)³ / (4A³ + 27B²)`
    pub fn j_invariant(&self) -> KummerElem {
        let k = |n| KummerElem::from_int(self.a.field(), n);
        let four_a = k(4).times(&self.a);
        let num = k(1728).times(&four_a.times(&four_a).times(&four_a));
        let den = k(16).times(&self.discriminant());
        num.divided(&den).expect("nonsingular")
    }

    /// Apply `σ` to the coefficients.
    pub fn twist(&self, sigma: &FieldAut) -> WCurve {
        WCurve {
            a: sigma.apply(&self.a),
            b: sigma.apply(&self.b),
        }
    }
}

/// Which powers of `u` scale the coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Convention {
    /// `(x, y) ↦ (u²x, u³y)`
    U2U3,
    /// `(x, y) ↦ (u³x, u²y)`
    U3U2,
}

impl Convention {
    pub const BOTH: [Convention; 2] = [Convention::U2U3, Convention::U3U2];

    pub fn exponents(self) -> (i64, i64) {
        match self {
            Convention::U2U3 => (2, 3),
            Convention::U3U2 => (3, 2),
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::U2U3 => "u2u3",
            Convention::U3U2 => "u3u2",
        })
    }
}

impl std::str::FromStr for Convention {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "u2u3" => Ok(Convention::U2U3),
            "u3u2" => Ok(Convention::U3U2),
            _ => Err(format!("unknown convention {s:?} (expected u2u3 or u3u2)")),
        }
    }
}

/// Does `(x, y) ↦ (αx, βy)` carry `e` onto `e2`?
fn scaling_maps(e: &WCurve, e2: &WCurve, alpha: &KummerElem, beta: &KummerElem) -> bool {
    let b2 = beta.times(beta);
    b2 == alpha.times(alpha).times(alpha)
        && b2.times(&e.a) == alpha.times(&e2.a)
        && b2.times(&e.b) == e2.b
}

/// Is `u` an isomorphism `E → E′` under `conv`?
///
/// Under `U2U3` this is exactly `u⁴A = A′` and `u⁶B = B′`. Under `U3U2`
/// the map `(u³x, u²y)` is tested literally.
pub fn iso_verify(
    e: &WCurve,
    e2: &WCurve,
    u: &KummerElem,
    conv: Convention,
) -> Result<bool, CurveError> {
    if Field::is_zero(u) {
        return Err(CurveError::ZeroScalar);
    }
    let (p, q) = conv.exponents();
    Ok(scaling_maps(e, e2, &u.pow(p)?, &u.pow(q)?))
}

/// All roots of unity of the cyclotomic base of `field`.
pub fn roots_of_unity(field: &Arc<KummerField>) -> Vec<KummerElem> {
    let n = field.conductor();
    let w = if n.is_multiple_of(2) { n } else { 2 * n };
    (0..w as i64)
        .map(|k| KummerElem::root_of_unity(field, w, k).expect("w is a multiple of n or 2n"))
        .collect()
}

/// Candidates passing [`iso_verify`].
pub fn iso_search(
    e: &WCurve,
    e2: &WCurve,
    candidates: Option<&[KummerElem]>,
    conv: Convention,
) -> Result<Vec<KummerElem>, CurveError> {
    let default;
    let cands = match candidates {
        Some(c) => c,
        None => {
            default = roots_of_unity(e.field());
            &default
        }
    };
    let mut out = Vec::new();
    for u in cands {
        if iso_verify(e, e2, u, conv)? {
            out.push(u.clone());
        }
    }
    Ok(out)
}

/// Curve-side data of a descent datum.
#[derive(Clone, Debug)]
pub enum DatumMaps {
    /// `f_σ` given by the scalar `u_σ`.
    Elliptic { curve: WCurve, u: Vec<KummerElem> },
    /// `f_σ : X → ^σX` as monomial maps.
    Superelliptic {
        curve: SuperCurve,
        maps: Vec<MonomialMap>,
    },
}

/// A family `{f_σ}` indexed by the elements of a finite group of field
/// automorphisms.
#[derive(Clone, Debug)]
pub struct DescentDatum {
    group: AutGroupReport,
    maps: DatumMaps,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CocycleVerdict {
    Pass,
    /// First pair `(σ, τ)` by group index with `f_{στ} ≠ ^σf_τ ∘ f_σ`.
    Fail {
        sigma: usize,
        tau: usize,
    },
}

impl CocycleVerdict {
    pub fn passes(&self) -> bool {
        *self == CocycleVerdict::Pass
    }
}

impl DescentDatum {
    /// `maps` is aligned with `group.elements`; the identity entry must be
    /// trivial.
    pub fn new(group: AutGroupReport, maps: DatumMaps) -> Result<DescentDatum, CurveError> {
        let n = group.order();
        match &maps {
            DatumMaps::Elliptic { curve, u } => {
                if u.len() != n {
                    return Err(CurveError::Incomplete(format!(
                        "{} scalars for {n} automorphisms",
                        u.len()
                    )));
                }
                if !u[0].is_one() {
                    return Err(CurveError::Incomplete("u at the identity must be 1".into()));
                }
                if u.iter().any(|x| x.field() != curve.field()) {
                    return Err(CycloError::FieldMismatch(
                        "scalar outside the curve's field".into(),
                    )
                    .into());
                }
                if u.iter().any(Field::is_zero) {
                    return Err(CurveError::ZeroScalar);
                }
            }
            DatumMaps::Superelliptic { maps, .. } => {
                if maps.len() != n {
                    return Err(CurveError::Incomplete(format!(
                        "{} maps for {n} automorphisms",
                        maps.len()
                    )));
                }
                if !maps[0].is_identity() {
                    return Err(CurveError::Incomplete(
                        "the map at the identity must be the identity".into(),
                    ));
                }
            }
        }
        Ok(DescentDatum { group, maps })
    }

    pub fn group(&self) -> &AutGroupReport {
        &self.group
    }

    pub fn maps(&self) -> &DatumMaps {
        &self.maps
    }

    /// Elements `σ` whose `f_σ` does not carry the curve onto `^σ` of it.
    pub fn iso_failures(&self, conv: Convention) -> Result<Vec<usize>, CurveError> {
        let mut bad = Vec::new();
        for (i, s) in self.group.elements.iter().enumerate() {
            let ok = match &self.maps {
                DatumMaps::Elliptic { curve, u } => {
                    iso_verify(curve, &curve.twist(s), &u[i], conv)?
                }
                DatumMaps::Superelliptic { curve, maps } => {
                    maps[i].maps_between(curve, &curve.twist(s))?
                }
            };
            if !ok {
                bad.push(i);
            }
        }
        Ok(bad)
    }

    fn product(&self, s: usize, t: usize) -> usize {
        self.group.table.mul(s, t)
    }

    /// `f_{στ} = ^σf_τ ∘ f_σ` for all `σ, τ`.
    ///
    /// For elliptic data this is the scalar identity `σ(u_τ)·u_σ = u_{στ}`,
    /// which is the same under both conventions.
    pub fn weil_cocycle_check(&self) -> Result<CocycleVerdict, CurveError> {
        let els = &self.group.elements;
        for s in 0..els.len() {
            for t in 0..els.len() {
                let st = self.product(s, t);
                let ok = match &self.maps {
                    DatumMaps::Elliptic { u, .. } => els[s].apply(&u[t]).times(&u[s]) == u[st],
                    DatumMaps::Superelliptic { curve, maps } => {
                        let lhs = maps[t].conjugate(&els[s]).compose(&maps[s]);
                        lhs.equal_on(&maps[st], curve)
                    }
                };
                if !ok {
                    return Ok(CocycleVerdict::Fail { sigma: s, tau: t });
                }
            }
        }
        Ok(CocycleVerdict::Pass)
    }

    /// The maps `ρ_σ = σ̃ ∘ f_σ : E → E`, where `σ̃ : ^σE → E` applies `σ⁻¹`
    /// to coordinates, and the right-action law `ρ_{στ} = ρ_τ ∘ ρ_σ`.
    pub fn induced_action_check(&self, conv: Convention) -> Result<ActionReport, CurveError> {
        let (curve, u) = match &self.maps {
            DatumMaps::Elliptic { curve, u } => (curve, u),
            DatumMaps::Superelliptic { .. } => {
                return Err(CurveError::Undecidable(
                    "induced action is implemented for elliptic data".into(),
                ))
            }
        };
        if let CocycleVerdict::Fail { sigma, tau } = self.weil_cocycle_check()? {
            let els = &self.group.elements;
            return Err(CurveError::CocycleFails {
                sigma: els[sigma].to_string(),
                tau: els[tau].to_string(),
            });
        }
        let (p, q) = conv.exponents();
        let els = &self.group.elements;
        let mut maps = Vec::with_capacity(els.len());
        for (s, sigma) in els.iter().enumerate() {
            let inv = sigma.inverse();
            let w = inv.apply(&u[s]);
            maps.push(SemilinearMap {
                aut: inv,
                ax: w.pow(p)?,
                ay: w.pow(q)?,
            });
        }
        let automorphisms: Vec<bool> = maps.iter().map(|r| r.preserves(curve)).collect();
        let mut failure = None;
        'outer: for s in 0..els.len() {
            for t in 0..els.len() {
                if maps[self.product(s, t)] != maps[t].compose(&maps[s]) {
                    failure = Some((s, t));
                    break 'outer;
                }
            }
        }
        let orders = maps.iter().map(|r| r.order(4 * els.len() * 24)).collect();
        Ok(ActionReport {
            maps,
            automorphisms,
            failure,
            orders,
        })
    }
}

/// `(x, y) ↦ (α·a(x), β·a(y))` for a field automorphism `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemilinearMap {
    pub aut: FieldAut,
    pub ax: KummerElem,
    pub ay: KummerElem,
}

impl SemilinearMap {
    pub fn identity(field: &Arc<KummerField>) -> SemilinearMap {
        let one = KummerElem::from_int(field, 1);
        SemilinearMap {
            aut: FieldAut::identity(field),
            ax: one.clone(),
            ay: one,
        }
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &SemilinearMap) -> SemilinearMap {
        SemilinearMap {
            aut: self.aut.compose(&other.aut),
            ax: self.ax.times(&self.aut.apply(&other.ax)),
            ay: self.ay.times(&self.aut.apply(&other.ay)),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.aut.is_identity() && self.ax.is_one() && self.ay.is_one()
    }

    /// Invertible and carries `e` onto itself.
    pub fn preserves(&self, e: &WCurve) -> bool {
        !Field::is_zero(&self.ax)
            && !Field::is_zero(&self.ay)
            && scaling_maps(&e.twist(&self.aut), e, &self.ax, &self.ay)
    }

    pub fn order(&self, bound: usize) -> Option<usize> {
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_identity() {
                return Some(k);
            }
            acc = self.compose(&acc);
        }
        None
    }
}

impl fmt::Display for SemilinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] (x, y) -> (({})*x, ({})*y)",
            self.aut, self.ax, self.ay
        )
    }
}

#[derive(Clone, Debug)]
pub struct ActionReport {
    /// `ρ_σ` aligned with the group elements.
    pub maps: Vec<SemilinearMap>,
    /// `ρ_σ` is an automorphism of the curve.
    pub automorphisms: Vec<bool>,
    /// First `(σ, τ)` violating `ρ_{στ} = ρ_τ ∘ ρ_σ`.
    pub failure: Option<(usize, usize)>,
    pub orders: Vec<Option<usize>>,
}

impl ActionReport {
    pub fn is_right_action(&self) -> bool {
        self.failure.is_none() && self.automorphisms.iter().all(|&b| b)
    }
}
