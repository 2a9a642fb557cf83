//! The six conjugate models of `y² = x³ + ∛2·x + i`.

use std::fmt;
use std::sync::Arc;

use super::{
    iso_search, iso_verify, ActionReport, CocycleVerdict, Convention, CurveError, DatumMaps,
    DescentDatum, WCurve,
};
use crate::cyclo::{
    parse_element, verify_aut_group, AutGroupReport, CycloElem, Field, FieldAut, KummerElem,
    KummerField,
};
use crate::permgroup::{library, FinGroup};

#[derive(Clone, Debug)]
pub struct D6Row {
    pub name: &'static str,
    pub aut: FieldAut,
    pub model: WCurve,
    /// The twist agrees with the listed equation.
    pub matches_listed: bool,
    pub u: KummerElem,
    pub u2u3: bool,
    pub u3u2: bool,
    /// Roots of unity that do verify, per convention.
    pub u2u3_solutions: Vec<KummerElem>,
    pub u3u2_solutions: Vec<KummerElem>,
}

#[derive(Clone, Debug)]
pub struct D6Report {
    pub field: Arc<KummerField>,
    pub curve: WCurve,
    pub j: KummerElem,
    /// `Gal(ℚ(ζ₁₂, ∛2)/ℚ)`, generated by `σ`, `τ` and `ζ₁₂ ↦ ζ₁₂⁵`.
    pub galois: AutGroupReport,
    /// `⟨σ, τ⟩`, isomorphic to `S₃`.
    pub subgroup: AutGroupReport,
    pub subgroup_is_s3: bool,
    pub rows: Vec<D6Row>,
    /// Weil condition for the listed `u_g` on `⟨σ, τ⟩`.
    pub cocycle: CocycleVerdict,
    /// Same, on the full group with `u_{gh} = u_g` for `h` fixing `ℚ(∛2, i)`.
    pub cocycle_full: CocycleVerdict,
    /// Induced action on points, when the cocycle holds.
    pub action: Option<ActionReport>,
    /// A choice among the `u2u3` solutions satisfying the cocycle on
    /// `⟨σ, τ⟩`, aligned with the named rows.
    pub adjusted: Option<Vec<KummerElem>>,
    pub adjusted_action: Option<ActionReport>,
}

impl D6Report {
    pub fn all_models_match(&self) -> bool {
        self.rows.iter().all(|r| r.matches_listed)
    }

    pub fn verifies_under(&self, conv: Convention) -> bool {
        self.rows.iter().all(|r| match conv {
            Convention::U2U3 => r.u2u3,
            Convention::U3U2 => r.u3u2,
        })
    }

    fn name_of(&self, g: &FieldAut) -> String {
        self.rows
            .iter()
            .find(|r| r.aut == *g)
            .map_or_else(|| g.to_string(), |r| r.name.to_string())
    }
}

const NAMES: [&str; 6] = ["e", "σ", "σ²", "τ", "τσ", "τσ²"];
const LISTED: [(&str, &str); 6] = [
    ("t", "z4"),
    ("z3*t", "z4"),
    ("z3^2*t", "z4"),
    ("t", "-z4"),
    ("z3^2*t", "-z4"),
    ("z3*t", "-z4"),
];
const U_TABLE: [&str; 6] = ["1", "z6^5", "z6", "z12^3", "z12^5", "z12"];

fn el(s: &str, f: &Arc<KummerField>) -> KummerElem {
    parse_element(s, f).expect("fixed literal")
}

fn verdict_line(v: &CocycleVerdict, r: &D6Report, els: &[FieldAut]) -> String {
    match v {
        CocycleVerdict::Pass => "holds".into(),
        CocycleVerdict::Fail { sigma, tau } => {
            format!(
                "fails at (σ, τ) = ({}, {})",
                r.name_of(&els[*sigma]),
                r.name_of(&els[*tau])
            )
        }
    }
}

/// Build the field `ℚ(ζ₁₂)[t]/(t³ − 2)`, the six models, the listed
/// scalars `u_g`, and check everything under both conventions.
pub fn elliptic_d6_scenario() -> Result<D6Report, CurveError> {
    let field = KummerField::new(12, 3, CycloElem::from_int(12, 2))?;
    let t = KummerElem::t(&field);
    let sigma = FieldAut::new(&field, 1, el("z3", &field).times(&t))?;
    let tau = FieldAut::new(&field, -1, t.clone())?;
    let rho = FieldAut::new(&field, 5, t)?;
    let s2 = sigma.compose(&sigma);
    let auts = [
        FieldAut::identity(&field),
        sigma.clone(),
        s2.clone(),
        tau.clone(),
        tau.compose(&sigma),
        tau.compose(&s2),
    ];

    let curve = WCurve::new(el("t", &field), el("z4", &field))?;
    let j = curve.j_invariant();
    let mut rows = Vec::with_capacity(6);
    for (k, g) in auts.iter().enumerate() {
        let model = curve.twist(g);
        let listed = WCurve::new(el(LISTED[k].0, &field), el(LISTED[k].1, &field))?;
        let u = el(U_TABLE[k], &field);
        rows.push(D6Row {
            name: NAMES[k],
            aut: g.clone(),
            matches_listed: model == listed,
            u2u3: iso_verify(&curve, &model, &u, Convention::U2U3)?,
            u3u2: iso_verify(&curve, &model, &u, Convention::U3U2)?,
            u2u3_solutions: iso_search(&curve, &model, None, Convention::U2U3)?,
            u3u2_solutions: iso_search(&curve, &model, None, Convention::U3U2)?,
            u,
            model,
        });
    }

    let s3 = FinGroup::from_perm_group(&library::symmetric(3));
    let subgroup = verify_aut_group(&[sigma.clone(), tau.clone()], Some(&s3))?;
    let galois = verify_aut_group(&[sigma, tau, rho.clone()], None)?;

    let u_of = |g: &FieldAut| -> KummerElem {
        // g = a ∘ ρ^e with a among the six named elements
        let mut h = g.clone();
        for _ in 0..2 {
            if let Some(r) = rows.iter().find(|r| r.aut == h) {
                return r.u.clone();
            }
            h = h.compose(&rho);
        }
        unreachable!("the six elements and ρ generate the group")
    };
    let u_sub = subgroup.elements.iter().map(&u_of).collect();
    let u_full = galois.elements.iter().map(&u_of).collect();
    let datum = DescentDatum::new(
        subgroup.clone(),
        DatumMaps::Elliptic {
            curve: curve.clone(),
            u: u_sub,
        },
    )?;
    let full = DescentDatum::new(
        galois.clone(),
        DatumMaps::Elliptic {
            curve: curve.clone(),
            u: u_full,
        },
    )?;
    let cocycle = datum.weil_cocycle_check()?;
    let cocycle_full = full.weil_cocycle_check()?;
    let action = if cocycle.passes() {
        Some(datum.induced_action_check(Convention::U2U3)?)
    } else {
        None
    };

    // odometer over the u2u3 solutions, identity pinned to 1
    let cands: Vec<Vec<KummerElem>> = subgroup
        .elements
        .iter()
        .map(|g| {
            let r = rows.iter().find(|r| r.aut == *g).expect("named");
            if g.is_identity() {
                vec![KummerElem::from_int(&field, 1)]
            } else {
                r.u2u3_solutions.clone()
            }
        })
        .collect();
    let mut adjusted = None;
    let mut adjusted_action = None;
    let mut choice = vec![0usize; cands.len()];
    'search: loop {
        let u: Vec<KummerElem> = choice
            .iter()
            .zip(&cands)
            .map(|(&c, v)| v[c].clone())
            .collect();
        let d = DescentDatum::new(
            subgroup.clone(),
            DatumMaps::Elliptic {
                curve: curve.clone(),
                u: u.clone(),
            },
        )?;
        if d.weil_cocycle_check()?.passes() {
            adjusted_action = Some(d.induced_action_check(Convention::U2U3)?);
            let by_row = rows
                .iter()
                .map(|r| u[subgroup.index_of(&r.aut).expect("in subgroup")].clone())
                .collect();
            adjusted = Some(by_row);
            break;
        }
        for (i, c) in choice.iter_mut().enumerate() {
            *c += 1;
            if *c < cands[i].len() {
                continue 'search;
            }
            *c = 0;
        }
        break;
    }

    Ok(D6Report {
        field,
        curve,
        j,
        subgroup_is_s3: subgroup.isomorphic == Some(true),
        galois,
        subgroup,
        rows,
        cocycle,
        cocycle_full,
        action,
        adjusted,
        adjusted_action,
    })
}

impl fmt::Display for D6Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { "yes" } else { "no" };
        writeln!(f, "field: {}", self.field)?;
        writeln!(f, "curve: {}", self.curve)?;
        writeln!(f, "j-invariant: {}", self.j)?;
        writeln!(
            f,
            "galois group: order {} ({}); <sigma, tau> has order {} (S3: {})",
            self.galois.order(),
            self.galois.table.describe(),
            self.subgroup.order(),
            yn(self.subgroup_is_s3)
        )?;
        writeln!(f, "models:")?;
        for r in &self.rows {
            writeln!(
                f,
                "  {:<4} {}   listed: {}",
                r.name,
                r.model,
                yn(r.matches_listed)
            )?;
        }
        writeln!(f, "isomorphisms E -> gE with the listed u_g:")?;
        for r in &self.rows {
            let sols = |v: &[KummerElem]| {
                v.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            writeln!(
                f,
                "  {:<4} u = {:<8} u2u3: {:<3} u3u2: {:<3} u2u3 solutions: [{}]  u3u2 solutions: [{}]",
                r.name,
                r.u.to_string(),
                yn(r.u2u3),
                yn(r.u3u2),
                sols(&r.u2u3_solutions),
                sols(&r.u3u2_solutions)
            )?;
        }
        writeln!(
            f,
            "weil cocycle on <sigma, tau>: {}",
            verdict_line(&self.cocycle, self, &self.subgroup.elements)
        )?;
        writeln!(
            f,
            "weil cocycle on the full group: {}",
            verdict_line(&self.cocycle_full, self, &self.galois.elements)
        )?;
        match &self.action {
            Some(a) => writeln!(
                f,
                "induced action (u2u3): right action: {}",
                yn(a.is_right_action())
            )?,
            None => writeln!(f, "induced action: not defined (cocycle fails)")?,
        }
        match (&self.adjusted, &self.adjusted_action) {
            (Some(u), Some(a)) => {
                let list: Vec<String> = self
                    .rows
                    .iter()
                    .zip(u)
                    .map(|(r, x)| format!("u_{} = {x}", r.name))
                    .collect();
                writeln!(f, "cocycle-consistent u2u3 choice: {}", list.join(", "))?;
                writeln!(
                    f,
                    "  induced action: right action: {}",
                    yn(a.is_right_action())
                )?;
            }
            _ => writeln!(f, "cocycle-consistent u2u3 choice: none")?,
        }
        let verdict = match (
            self.verifies_under(Convention::U2U3),
            self.verifies_under(Convention::U3U2),
        ) {
            (true, true) => "the table verifies under both conventions",
            (true, false) => "the table verifies under u2u3 only",
            (false, true) => "the table verifies under u3u2 only",
            (false, false) => "the table verifies under neither convention",
        };
        writeln!(f, "reconciliation: {verdict}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scenario() {
        let r = elliptic_d6_scenario().unwrap();
        assert!(r.all_models_match());
        assert_eq!(r.j, el("-13824/19", &r.field));
        assert!(r.rows.iter().all(|row| row.model.j_invariant() == r.j));
        assert_eq!(r.galois.order(), 12);
        assert_eq!(r.subgroup.order(), 6);
        assert!(r.subgroup_is_s3);
        assert!(r.rows[0].u2u3 && r.rows[0].u3u2);
        assert!(r.verifies_under(Convention::U2U3));
        assert!(!r.verifies_under(Convention::U3U2));
        assert!(r.rows[1..].iter().all(|row| row.u3u2_solutions.is_empty()));
        assert_eq!(r.cocycle, CocycleVerdict::Fail { sigma: 1, tau: 1 });
        let adjusted = r.adjusted.as_ref().expect("signs can be fixed");
        assert!(adjusted
            .iter()
            .zip(&r.rows)
            .all(|(u, row)| *u == row.u || *u == row.u.negated()));
        assert!(r.adjusted_action.as_ref().unwrap().is_right_action());
        let text = r.to_string();
        assert!(text.contains("reconciliation: the table verifies under u2u3 only"));
    }
}
