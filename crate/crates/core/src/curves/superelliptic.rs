use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use super::{CocycleVerdict, CurveError, DatumMaps, DescentDatum};
use crate::cyclo::{verify_aut_group, Field, FieldAut, KummerElem, KummerField, Poly};

/// Sparse Laurent polynomial in `x`.
type Laurent = BTreeMap<i64, KummerElem>;

fn laurent(p: &Poly<KummerElem>) -> Laurent {
    p.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !Field::is_zero(*c))
        .map(|(k, c)| (k as i64, c.clone()))
        .collect()
}

fn laurent_mul(a: &Laurent, b: &Laurent) -> Laurent {
    let mut out = Laurent::new();
    for (i, x) in a {
        for (j, y) in b {
            let t = x.times(y);
            let slot = out.entry(i + j).or_insert_with(|| t.zero_like());
            *slot = slot.plus(&t);
        }
    }
    out.retain(|_, c| !Field::is_zero(c));
    out
}

fn laurent_monomial(c: KummerElem, k: i64) -> Laurent {
    if Field::is_zero(&c) {
        Laurent::new()
    } else {
        Laurent::from([(k, c)])
    }
}

/// `p(c·x^a)`
fn substitute(p: &Poly<KummerElem>, c: &KummerElem, a: i64) -> Result<Laurent, CurveError> {
    if a == 0 {
        return Ok(laurent_monomial(p.eval(c), 0));
    }
    let mut out = Laurent::new();
    for (k, g) in p.coeffs().iter().enumerate() {
        if !Field::is_zero(g) {
            out.insert(a * k as i64, g.times(&c.pow(k as i64)?));
        }
    }
    Ok(out)
}

/// `c · x^a · y^b`
#[derive(Clone, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: KummerElem,
    pub x: i64,
    pub y: i64,
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let c = self.coeff.to_string();
        let bare = self.x == 0 && self.y == 0;
        let minus = !bare && self.coeff.negated().is_one();
        if !self.coeff.is_one() && !minus || bare {
            parts.push(if c.contains(' ') { format!("({c})") } else { c });
        }
        for (v, e) in [("x", self.x), ("y", self.y)] {
            match e {
                0 => {}
                1 => parts.push(v.to_string()),
                _ => parts.push(format!("{v}^{e}")),
            }
        }
        if minus {
            f.write_str("-")?;
        }
        f.write_str(&parts.join("*"))
    }
}

impl Monomial {
    pub fn new(coeff: KummerElem, x: i64, y: i64) -> Monomial {
        Monomial { coeff, x, y }
    }

    /// Substitute `(x, y) ↦ (f.x, f.y)`.
    fn substitute(&self, f: &MonomialMap) -> Monomial {
        let coeff = self
            .coeff
            .times(&f.x.coeff.pow(self.x).expect("nonzero"))
            .times(&f.y.coeff.pow(self.y).expect("nonzero"));
        Monomial {
            coeff,
            x: self.x * f.x.x + self.y * f.y.x,
            y: self.x * f.x.y + self.y * f.y.y,
        }
    }

    /// `(coeff, x-exponent, power of f, y-exponent in [0, q))`
    fn normal_form(&self, q: i64) -> (KummerElem, i64, i64, i64) {
        let (k, r) = (self.y.div_euclid(q), self.y.rem_euclid(q));
        (self.coeff.clone(), self.x, k, r)
    }
}

/// `(x, y) ↦ (c₁x^{a}y^{b}, c₂x^{c}y^{d})` with Laurent exponents.
#[derive(Clone, PartialEq, Eq)]
pub struct MonomialMap {
    pub x: Monomial,
    pub y: Monomial,
}

impl fmt::Debug for MonomialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonomialMap({self})")
    }
}

impl fmt::Display for MonomialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(x, y) -> ({}, {})", self.x, self.y)
    }
}

impl MonomialMap {
    pub fn new(x: Monomial, y: Monomial) -> Result<MonomialMap, CurveError> {
        if x.coeff.field() != y.coeff.field() {
            return Err(crate::cyclo::CycloError::FieldMismatch(
                "components over different fields".into(),
            )
            .into());
        }
        if Field::is_zero(&x.coeff) || Field::is_zero(&y.coeff) {
            return Err(CurveError::NotInvertible("zero coefficient".into()));
        }
        let det = x.x * y.y - x.y * y.x;
        if det.abs() != 1 {
            return Err(CurveError::NotInvertible(format!(
                "exponent determinant {det}"
            )));
        }
        Ok(MonomialMap { x, y })
    }

    pub fn identity(field: &Arc<KummerField>) -> MonomialMap {
        let one = KummerElem::from_int(field, 1);
        MonomialMap {
            x: Monomial::new(one.clone(), 1, 0),
            y: Monomial::new(one, 0, 1),
        }
    }

    pub fn field(&self) -> &Arc<KummerField> {
        self.x.coeff.field()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &MonomialMap) -> MonomialMap {
        MonomialMap {
            x: self.x.substitute(other),
            y: self.y.substitute(other),
        }
    }

    pub fn pow(&self, k: usize) -> MonomialMap {
        (0..k).fold(MonomialMap::identity(self.field()), |acc, _| {
            acc.compose(self)
        })
    }

    /// `^σ` of the map: `σ` applied to the coefficients.
    pub fn conjugate(&self, sigma: &FieldAut) -> MonomialMap {
        let c = |m: &Monomial| Monomial {
            coeff: sigma.apply(&m.coeff),
            ..m.clone()
        };
        MonomialMap {
            x: c(&self.x),
            y: c(&self.y),
        }
    }

    /// Syntactic identity.
    pub fn is_identity(&self) -> bool {
        *self == MonomialMap::identity(self.field())
    }

    /// Equality as maps on `curve`, reducing `y^q = f(x)`.
    ///
    /// `f` has a nonzero constant term and positive degree, so it is not a
    /// monomial and `c·x^a·f^k·y^r` with `0 ≤ r < q` is a normal form.
    pub fn equal_on(&self, other: &MonomialMap, curve: &SuperCurve) -> bool {
        let q = curve.q as i64;
        self.x.normal_form(q) == other.x.normal_form(q)
            && self.y.normal_form(q) == other.y.normal_form(q)
    }

    pub fn is_identity_on(&self, curve: &SuperCurve) -> bool {
        self.equal_on(&MonomialMap::identity(self.field()), curve)
    }

    /// Does the map send `from` into `to`? Decided when the x-component
    /// does not involve `y`.
    pub fn maps_between(&self, from: &SuperCurve, to: &SuperCurve) -> Result<bool, CurveError> {
        if from.q != to.q {
            return Ok(false);
        }
        if self.x.y != 0 {
            return Err(CurveError::Undecidable("x-component involves y".into()));
        }
        let q = from.q as i64;
        // Y^q = c₂^q x^{cq} f(x)^d on `from`; compare with g(c₁ x^a).
        let lhs_mono = laurent_monomial(self.y.coeff.pow(q)?, self.y.x * q);
        let rhs = substitute(&to.f, &self.x.coeff, self.x.x)?;
        let fpow = |k: i64| {
            let base = laurent(&from.f);
            (0..k).fold(
                laurent_monomial(KummerElem::from_int(from.field(), 1), 0),
                |acc, _| laurent_mul(&acc, &base),
            )
        };
        let d = self.y.y;
        Ok(if d >= 0 {
            laurent_mul(&lhs_mono, &fpow(d)) == rhs
        } else {
            lhs_mono == laurent_mul(&rhs, &fpow(-d))
        })
    }
}

/// `y^q = f(x)` with `f` a polynomial in `x^n`.
#[derive(Clone, PartialEq)]
pub struct SuperCurve {
    n: usize,
    m: usize,
    q: usize,
    a: Vec<KummerElem>,
    f: Poly<KummerElem>,
}

impl fmt::Debug for SuperCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SuperCurve({self})")
    }
}

impl fmt::Display for SuperCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^{} = {}", self.q, self.f)
    }
}

impl SuperCurve {
    /// `f = ∏ (x^n − a_i)(x^n + 1/c(a_i))`, `c` complex conjugation.
    pub fn from_roots(
        n: usize,
        q: usize,
        a: Vec<KummerElem>,
        conj: &FieldAut,
    ) -> Result<SuperCurve, CurveError> {
        let field = conj.field().clone();
        let one = KummerElem::from_int(&field, 1);
        let xn = Poly::monomial(one.clone(), n);
        let mut f = Poly::constant(one);
        for ai in &a {
            let inv = conj.apply(ai).inverse()?;
            f = f
                .mul(&xn.sub(&Poly::constant(ai.clone())))
                .mul(&xn.add(&Poly::constant(inv)));
        }
        Ok(SuperCurve {
            n,
            m: a.len(),
            q,
            a,
            f,
        })
    }

    pub fn f(&self) -> &Poly<KummerElem> {
        &self.f
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn params(&self) -> (usize, usize, usize) {
        (self.m, self.n, self.q)
    }

    pub fn roots(&self) -> &[KummerElem] {
        &self.a
    }

    pub fn field(&self) -> &Arc<KummerField> {
        self.f.field_zero().field()
    }

    /// `σ` applied to the coefficients.
    pub fn twist(&self, sigma: &FieldAut) -> SuperCurve {
        SuperCurve {
            a: self.a.iter().map(|x| sigma.apply(x)).collect(),
            f: self.f.map(|c| sigma.apply(c)),
            ..self.clone()
        }
    }
}

/// The superelliptic family `y^q = ∏(x^n − a_i)(x^n + 1/c(a_i))` with
/// `a_i = (1+i)ζ_m^i`, and the isomorphism `μ` to its conjugate.
#[derive(Clone, Debug)]
pub struct ConjDescent {
    pub m: usize,
    pub n: usize,
    pub q: usize,
    /// Conductor of the coefficient field `ℚ(ζ_N)`.
    pub conductor: usize,
    pub conj: FieldAut,
    pub x: SuperCurve,
    pub cx: SuperCurve,
    pub omega: KummerElem,
    pub omega_prime: KummerElem,
    /// `x^{2mn}·^cf(1/(ωx)) = κ·f(x)`
    pub kappa: KummerElem,
    pub mu: MonomialMap,
    pub gamma: MonomialMap,
    pub nu: MonomialMap,
    pub mu_maps: bool,
    /// `μ` built with `ω′ = ζ_{2q}` instead.
    pub literal_mu: MonomialMap,
    pub literal_mu_maps: bool,
    pub gamma_nu_automorphisms: bool,
}

/// Build the family for `(m, n, q)`: `m` odd, `q ≥ 2`, `q | 2m`, `2q < 2mn`.
///
/// `ω = ζ_{2n}` and `ω′` is the first `ζ_N^k` with `ω′^q = κ`, where `κ`
/// is computed from the pullback of `^cf`. The field has conductor
/// `N = lcm(4, m, 2n, 4q)` so that such an `ω′` exists.
pub fn build_conj_descent(m: usize, n: usize, q: usize) -> Result<ConjDescent, CurveError> {
    if m == 0 || n == 0 {
        return Err(CurveError::Parameters("m and n must be positive".into()));
    }
    if m.is_multiple_of(2) {
        return Err(CurveError::Parameters(format!("m = {m} is even")));
    }
    if q < 2 {
        return Err(CurveError::Parameters(format!("q = {q} < 2")));
    }
    if !(2 * m).is_multiple_of(q) {
        return Err(CurveError::Parameters(format!(
            "{q} does not divide {}",
            2 * m
        )));
    }
    if 2 * q >= 2 * m * n {
        return Err(CurveError::Parameters(format!(
            "2q = {} is not below 2mn = {}",
            2 * q,
            2 * m * n
        )));
    }
    let big = [4, m, 2 * n, 4 * q]
        .into_iter()
        .fold(1, |a: usize, b| a.lcm(&b));
    let field = KummerField::cyclotomic(big)?;
    let z = |d: usize, k: i64| KummerElem::root_of_unity(&field, d, k);
    let one = KummerElem::from_int(&field, 1);
    let conj = FieldAut::cyclotomic(&field, -1)?;

    let i_unit = z(4, 1)?;
    let a = (1..=m as i64)
        .map(|k| Ok(one.plus(&i_unit).times(&z(m, k)?)))
        .collect::<Result<Vec<_>, CurveError>>()?;
    let x = SuperCurve::from_roots(n, q, a, &conj)?;
    let cx = x.twist(&conj);

    let omega = z(2 * n, 1)?;
    let deg = (2 * m * n) as i64;
    let mut pulled = substitute(&cx.f, &omega.inverse()?, -1)?;
    pulled = laurent_mul(&pulled, &laurent_monomial(one.clone(), deg));
    let fl = laurent(&x.f);
    let kappa = pulled[&deg].divided(&fl[&deg])?;
    if pulled != laurent_mul(&fl, &laurent_monomial(kappa.clone(), 0)) {
        return Err(CurveError::Parameters(
            "pullback of the conjugate is not proportional to f".into(),
        ));
    }
    let omega_prime = (0..big as i64)
        .map(|k| z(big, k).expect("divides"))
        .find(|w| w.pow(q as i64).expect("nonneg") == kappa)
        .ok_or_else(|| CurveError::Parameters(format!("no root of unity with ω′^{q} = {kappa}")))?;

    let k = deg / q as i64;
    let mu_with = |w: &KummerElem| {
        MonomialMap::new(
            Monomial::new(omega.inverse().expect("unit"), -1, 0),
            Monomial::new(w.clone(), -k, 1),
        )
    };
    let mu = mu_with(&omega_prime)?;
    let literal_mu = mu_with(&z(2 * q, 1)?)?;
    let gamma = MonomialMap::new(
        Monomial::new(one.clone(), 1, 0),
        Monomial::new(z(q, 1)?, 0, 1),
    )?;
    let nu = MonomialMap::new(Monomial::new(z(n, 1)?, 1, 0), Monomial::new(one, 0, 1))?;

    let mu_maps = mu.maps_between(&x, &cx)?;
    let literal_mu_maps = literal_mu.maps_between(&x, &cx)?;
    let gamma_nu_automorphisms = gamma.maps_between(&x, &x)? && nu.maps_between(&x, &x)?;
    Ok(ConjDescent {
        m,
        n,
        q,
        conductor: big,
        conj,
        x,
        cx,
        omega,
        omega_prime,
        kappa,
        mu,
        gamma,
        nu,
        mu_maps,
        literal_mu,
        literal_mu_maps,
        gamma_nu_automorphisms,
    })
}

#[derive(Clone, Debug)]
pub struct ConjDescentRow {
    pub i: usize,
    pub j: usize,
    /// `μ ∘ γ^i ∘ ν^j`
    pub f_c: MonomialMap,
    pub maps_to_conjugate: bool,
    /// `^cf_c ∘ f_c`
    pub composite: MonomialMap,
    pub composite_is_identity: bool,
    /// Weil condition for the datum `{1 ↦ id, c ↦ f_c}`.
    pub cocycle: CocycleVerdict,
}

#[derive(Clone, Debug)]
pub struct ConjDescentTable {
    pub instance: ConjDescent,
    pub rows: Vec<ConjDescentRow>,
    /// The identity map is recognised as the identity on `X`.
    pub sanity_identity: bool,
}

impl ConjDescentTable {
    pub fn no_identity_composite(&self) -> bool {
        self.rows.iter().all(|r| !r.composite_is_identity)
    }

    pub fn cocycle_fails_everywhere(&self) -> bool {
        self.rows.iter().all(|r| !r.cocycle.passes())
    }
}

/// Every candidate `f_c = μγ^iν^j`, its composite with its conjugate, and
/// the resulting Weil verdict.
pub fn conj_descent_check(m: usize, n: usize, q: usize) -> Result<ConjDescentTable, CurveError> {
    let k = build_conj_descent(m, n, q)?;
    let group = verify_aut_group(std::slice::from_ref(&k.conj), None)?;
    let id = MonomialMap::identity(k.x.field());
    let mut rows = Vec::with_capacity(q * n);
    for i in 0..q {
        for j in 0..n {
            let f_c = k.mu.compose(&k.gamma.pow(i)).compose(&k.nu.pow(j));
            let maps_to_conjugate = f_c.maps_between(&k.x, &k.cx)?;
            let composite = f_c.conjugate(&k.conj).compose(&f_c);
            let composite_is_identity = composite.is_identity_on(&k.x);
            let datum = DescentDatum::new(
                group.clone(),
                DatumMaps::Superelliptic {
                    curve: k.x.clone(),
                    maps: vec![id.clone(), f_c.clone()],
                },
            )?;
            let cocycle = datum.weil_cocycle_check()?;
            rows.push(ConjDescentRow {
                i,
                j,
                f_c,
                maps_to_conjugate,
                composite,
                composite_is_identity,
                cocycle,
            });
        }
    }
    let sanity_identity = id.compose(&id).is_identity_on(&k.x);
    Ok(ConjDescentTable {
        instance: k,
        rows,
        sanity_identity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn instance_322() {
        let k = build_conj_descent(3, 2, 2).unwrap();
        assert_eq!(k.conductor, 24);
        assert_eq!(k.x.f().degree(), Some(12));
        assert!(!Field::is_zero(&k.x.f().coeff(0)));
        let field = k.x.field().clone();
        assert_eq!(k.kappa, KummerElem::root_of_unity(&field, 4, 3).unwrap()); // i³ = −i
        assert!(k.mu_maps);
        assert!(!k.literal_mu_maps);
        assert!(k.gamma_nu_automorphisms);
        assert_eq!(k.omega.pow(2).unwrap(), KummerElem::from_int(&field, -1));
        assert_eq!(k.mu.to_string().matches("x^-6*y").count(), 1);
    }

    #[test]
    fn parameter_errors() {
        for (m, n, q) in [(3, 2, 7), (2, 2, 2), (3, 2, 1), (3, 1, 3), (0, 2, 2)] {
            assert!(
                matches!(build_conj_descent(m, n, q), Err(CurveError::Parameters(_))),
                "{m} {n} {q}"
            );
        }
    }

    #[test]
    fn table_322() {
        let t = conj_descent_check(3, 2, 2).unwrap();
        assert_eq!(t.rows.len(), 4);
        assert!(t.sanity_identity);
        assert!(t.rows.iter().all(|r| r.maps_to_conjugate));
        assert!(t.no_identity_composite());
        assert!(t.cocycle_fails_everywhere());
        let r00 = &t.rows[0];
        assert_eq!((r00.i, r00.j), (0, 0));
        // ^cμ∘μ scales x by ω² = −1
        assert_eq!(
            r00.composite.x.coeff,
            KummerElem::from_int(t.instance.x.field(), -1)
        );
        assert_eq!((r00.composite.x.x, r00.composite.x.y), (1, 0));
    }

    #[test]
    fn relation_reduction() {
        let k = build_conj_descent(3, 2, 2).unwrap();
        let field = k.x.field().clone();
        let one = KummerElem::from_int(&field, 1);
        // y ↦ y³ equals y ↦ f(x)·y on X, never the identity
        let cube = MonomialMap {
            x: Monomial::new(one.clone(), 1, 0),
            y: Monomial::new(one.clone(), 0, 3),
        };
        assert!(!cube.is_identity_on(&k.x));
        assert!(k.gamma.pow(2).is_identity_on(&k.x));
        assert!(k.nu.pow(2).is_identity());
        assert!(!k.gamma.is_identity_on(&k.x));
        assert!(
            MonomialMap::new(Monomial::new(one.clone(), 2, 0), Monomial::new(one, 0, 1)).is_err()
        );
    }

    fn unimodular() -> impl Strategy<Value = [i64; 4]> {
        prop::sample::select(vec![
            [1, 0, 0, 1],
            [-1, 0, 0, 1],
            [1, 0, -6, 1],
            [-1, 0, 3, 1],
            [0, 1, 1, 0],
            [1, 1, 0, 1],
        ])
    }

    fn map() -> impl Strategy<Value = MonomialMap> {
        (unimodular(), 0i64..24, 0i64..24, 1i64..3).prop_map(|(e, a, b, s)| {
            let f = KummerField::cyclotomic(24).unwrap();
            let c1 = KummerElem::root_of_unity(&f, 24, a)
                .unwrap()
                .times(&KummerElem::from_int(&f, s));
            let c2 = KummerElem::root_of_unity(&f, 24, b).unwrap();
            MonomialMap::new(Monomial::new(c1, e[0], e[1]), Monomial::new(c2, e[2], e[3])).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn composition_is_associative(f in map(), g in map(), h in map()) {
            prop_assert_eq!(f.compose(&g).compose(&h), f.compose(&g.compose(&h)));
        }

        #[test]
        fn conjugation_distributes(f in map(), g in map(), k in prop::sample::select(vec![5i64, 7, 11, 13, 23])) {
            let field = KummerField::cyclotomic(24).unwrap();
            let s = FieldAut::cyclotomic(&field, k).unwrap();
            prop_assert_eq!(f.compose(&g).conjugate(&s), f.conjugate(&s).compose(&g.conjugate(&s)));
        }

        #[test]
        fn defining_polynomial_shape(m in prop::sample::select(vec![1usize, 3, 5]), n in 1usize..4, q in 2usize..11) {
            prop_assume!((2 * m) % q == 0 && 2 * q < 2 * m * n);
            let k = build_conj_descent(m, n, q).unwrap();
            prop_assert_eq!(k.x.f().degree(), Some(2 * m * n));
            prop_assert!(!Field::is_zero(&k.x.f().coeff(0)));
            prop_assert!(k.mu_maps);
        }
    }
}
