use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use super::{root_of_unity, CycloElem, CycloError, Field, Poly};
use crate::permgroup::FinGroup;

/// `ℚ(ζ_n)[t]/(t^m − c)`. With `m = 1` this is `ℚ(ζ_n)` itself.
#[derive(Debug, PartialEq, Eq)]
pub struct KummerField {
    n: usize,
    m: usize,
    c: CycloElem,
}

impl KummerField {
    pub fn new(n: usize, m: usize, c: CycloElem) -> Result<Arc<KummerField>, CycloError> {
        if n == 0 {
            return Err(CycloError::ZeroConductor);
        }
        if m == 0 {
            return Err(CycloError::NotAField("t^0 = c".into()));
        }
        if c.conductor() != n {
            return Err(CycloError::FieldMismatch(format!(
                "c lives in ℚ(ζ_{}), base is ℚ(ζ_{n})",
                c.conductor()
            )));
        }
        if Field::is_zero(&c) {
            return Err(CycloError::NotAField("t^m = 0".into()));
        }
        Ok(Arc::new(KummerField { n, m, c }))
    }

    pub fn cyclotomic(n: usize) -> Result<Arc<KummerField>, CycloError> {
        if n == 0 {
            return Err(CycloError::ZeroConductor);
        }
        KummerField::new(n, 1, CycloElem::from_int(n, 1))
    }

    pub fn conductor(&self) -> usize {
        self.n
    }

    pub fn exponent(&self) -> usize {
        self.m
    }

    pub fn radicand(&self) -> &CycloElem {
        &self.c
    }

    /// Degree over `ℚ` assuming `t^m − c` is irreducible.
    pub fn degree(&self) -> usize {
        self.m * self.c.degree()
    }

    fn modulus(&self) -> Poly<CycloElem> {
        Poly::monomial(self.c.one_like(), self.m).sub(&Poly::constant(self.c.clone()))
    }
}

impl fmt::Display for KummerField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            write!(f, "cyclo {}", self.n)
        } else {
            write!(f, "cyclo {} kummer t^{}={}", self.n, self.m, self.c)
        }
    }
}

/// Element `Σ a_j t^j` of a [`KummerField`], `0 ≤ j < m`.
#[derive(Clone)]
pub struct KummerElem {
    field: Arc<KummerField>,
    coeffs: Vec<CycloElem>,
}

impl PartialEq for KummerElem {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}

impl Eq for KummerElem {}

impl fmt::Debug for KummerElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KummerElem[{}]({self})", self.field)
    }
}

impl KummerElem {
    pub fn zero(field: &Arc<KummerField>) -> KummerElem {
        let z = CycloElem::zero(field.n);
        KummerElem {
            coeffs: vec![z; field.m],
            field: field.clone(),
        }
    }

    pub fn from_base(field: &Arc<KummerField>, a: CycloElem) -> KummerElem {
        assert_eq!(a.conductor(), field.n, "base element from another field");
        let mut x = KummerElem::zero(field);
        x.coeffs[0] = a;
        x
    }

    pub fn from_int(field: &Arc<KummerField>, k: i64) -> KummerElem {
        KummerElem::from_base(field, CycloElem::from_int(field.n, k))
    }

    /// `ζ_d^k`, requiring `d | n`.
    pub fn root_of_unity(
        field: &Arc<KummerField>,
        d: usize,
        k: i64,
    ) -> Result<KummerElem, CycloError> {
        if d == 0 {
            return Err(CycloError::ZeroConductor);
        }
        Ok(KummerElem::from_base(
            field,
            root_of_unity(d, k).embed(field.n)?,
        ))
    }

    /// The generator `t`.
    pub fn t(field: &Arc<KummerField>) -> KummerElem {
        if field.m == 1 {
            return KummerElem::from_base(field, field.c.clone());
        }
        let mut x = KummerElem::zero(field);
        x.coeffs[1] = field.c.one_like();
        x
    }

    /// `Σ a_j t^j` for any number of coefficients.
    pub fn from_coeffs(field: &Arc<KummerField>, coeffs: &[CycloElem]) -> KummerElem {
        let mut x = KummerElem::zero(field);
        for (j, a) in coeffs.iter().enumerate() {
            x.add_shifted(j, a);
        }
        x
    }

    fn add_shifted(&mut self, j: usize, a: &CycloElem) {
        if Field::is_zero(a) {
            return;
        }
        let m = self.field.m;
        let wrapped = self.field.c.pow((j / m) as i64).expect("nonnegative");
        let slot = &mut self.coeffs[j % m];
        *slot = slot.plus(&a.times(&wrapped));
    }

    pub fn field(&self) -> &Arc<KummerField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[CycloElem] {
        &self.coeffs
    }

    pub fn as_base(&self) -> Option<&CycloElem> {
        self.coeffs[1..]
            .iter()
            .all(Field::is_zero)
            .then(|| &self.coeffs[0])
    }

    /// Multiplicative order if `self` is a root of unity.
    pub fn root_order(&self) -> Option<usize> {
        self.as_base().and_then(CycloElem::root_order)
    }

    /// Apply `f` to every coefficient, keeping powers of `t`.
    pub fn map_coeffs(&self, f: impl Fn(&CycloElem) -> CycloElem) -> KummerElem {
        KummerElem {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    fn same_field(&self, other: &KummerElem) {
        assert!(
            self.field == other.field,
            "mixing {} and {}",
            self.field,
            other.field
        );
    }

    fn as_poly(&self) -> Poly<CycloElem> {
        Poly::new(self.coeffs.clone(), self.field.c.zero_like())
    }
}

impl Field for KummerElem {
    fn zero_like(&self) -> Self {
        KummerElem::zero(&self.field)
    }

    fn one_like(&self) -> Self {
        KummerElem::from_int(&self.field, 1)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Field::is_zero)
    }

    fn plus(&self, other: &Self) -> Self {
        self.same_field(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.plus(b))
            .collect();
        KummerElem {
            field: self.field.clone(),
            coeffs,
        }
    }

    fn minus(&self, other: &Self) -> Self {
        self.same_field(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.minus(b))
            .collect();
        KummerElem {
            field: self.field.clone(),
            coeffs,
        }
    }

    fn times(&self, other: &Self) -> Self {
        self.same_field(other);
        let mut out = self.zero_like();
        for (i, a) in self.coeffs.iter().enumerate() {
            if Field::is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !Field::is_zero(b) {
                    out.add_shifted(i + j, &a.times(b));
                }
            }
        }
        out
    }

    fn negated(&self) -> Self {
        self.map_coeffs(Field::negated)
    }

    fn inverse(&self) -> Result<Self, CycloError> {
        if Field::is_zero(self) {
            return Err(CycloError::ZeroInverse);
        }
        let (g, s, _) = Poly::ext_gcd(&self.as_poly(), &self.field.modulus())?;
        if g.degree() != Some(0) {
            return Err(CycloError::NotAField(format!(
                "t^{} - ({}) has the factor {g}",
                self.field.m, self.field.c
            )));
        }
        Ok(KummerElem::from_coeffs(&self.field, s.coeffs()))
    }
}

fn is_single_term(s: &str) -> bool {
    !s[1..].contains(" + ") && !s[1..].contains(" - ")
}

impl fmt::Display for KummerElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (j, a) in self.coeffs.iter().enumerate() {
            if Field::is_zero(a) {
                continue;
            }
            let mono = match j {
                0 => None,
                1 => Some("t".to_string()),
                _ => Some(format!("t^{j}")),
            };
            let s = a.to_string();
            parts.push(match mono {
                None => s,
                Some(t) if a.is_one() => t,
                Some(t) if a.negated().is_one() => format!("-{t}"),
                Some(t) if is_single_term(&s) => format!("{s}*{t}"),
                Some(t) => format!("({s})*{t}"),
            });
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('-') {
                Some(rest) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                None => {
                    out.push_str(" + ");
                    out.push_str(p);
                }
            }
        }
        f.write_str(&out)
    }
}

/// Automorphism `ζ_n ↦ ζ_n^k`, `t ↦ t_image` of a [`KummerField`].
#[derive(Clone, PartialEq, Eq)]
pub struct FieldAut {
    k: usize,
    t_image: KummerElem,
}

impl fmt::Debug for FieldAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldAut({self})")
    }
}

impl fmt::Display for FieldAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.field().n;
        write!(f, "z{n} -> z{n}^{}", self.k)?;
        if self.field().m > 1 {
            write!(f, ", t -> {}", self.t_image)?;
        }
        Ok(())
    }
}

impl FieldAut {
    pub fn new(
        field: &Arc<KummerField>,
        k: i64,
        t_image: KummerElem,
    ) -> Result<FieldAut, CycloError> {
        let n = field.n;
        let k = k.rem_euclid(n as i64) as usize;
        if k.gcd(&n) != 1 {
            return Err(CycloError::BadAut(format!("{k} is not a unit mod {n}")));
        }
        if t_image.field != *field {
            return Err(CycloError::FieldMismatch(
                "image of t lies in another field".into(),
            ));
        }
        let sc = KummerElem::from_base(field, field.c.galois(k as i64)?);
        if t_image.pow(field.m as i64)? != sc {
            return Err(CycloError::BadAut(format!(
                "({t_image})^{} is not the conjugate {sc} of the radicand",
                field.m
            )));
        }
        Ok(FieldAut { k, t_image })
    }

    /// `ζ ↦ ζ^k` on a field with `m = 1`.
    pub fn cyclotomic(field: &Arc<KummerField>, k: i64) -> Result<FieldAut, CycloError> {
        if field.m != 1 {
            return Err(CycloError::BadAut("the image of t must be given".into()));
        }
        let img = KummerElem::from_base(field, field.c.galois(k)?);
        FieldAut::new(field, k, img)
    }

    pub fn identity(field: &Arc<KummerField>) -> FieldAut {
        FieldAut {
            k: 1,
            t_image: KummerElem::t(field),
        }
    }

    pub fn field(&self) -> &Arc<KummerField> {
        &self.t_image.field
    }

    pub fn exponent(&self) -> usize {
        self.k
    }

    pub fn t_image(&self) -> &KummerElem {
        &self.t_image
    }

    pub fn apply_base(&self, a: &CycloElem) -> CycloElem {
        a.galois(self.k as i64).expect("unit")
    }

    pub fn apply(&self, x: &KummerElem) -> KummerElem {
        assert!(
            x.field == *self.field(),
            "automorphism applied outside its field"
        );
        let mut acc = x.zero_like();
        let mut tp = x.one_like();
        for a in &x.coeffs {
            if !Field::is_zero(a) {
                acc = acc.plus(&KummerElem::from_base(&x.field, self.apply_base(a)).times(&tp));
            }
            tp = tp.times(&self.t_image);
        }
        acc
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &FieldAut) -> FieldAut {
        let n = self.field().n;
        FieldAut {
            k: (self.k * other.k) % n,
            t_image: self.apply(&other.t_image),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == FieldAut::identity(self.field())
    }

    pub fn order(&self) -> usize {
        let mut acc = self.clone();
        let mut k = 1;
        while !acc.is_identity() {
            acc = self.compose(&acc);
            k += 1;
        }
        k
    }

    pub fn inverse(&self) -> FieldAut {
        let mut prev = FieldAut::identity(self.field());
        let mut acc = self.clone();
        while !acc.is_identity() {
            prev = acc.clone();
            acc = self.compose(&acc);
        }
        prev
    }
}

#[derive(Clone, Debug)]
pub struct AutGroupReport {
    /// Elements in closure order, identity first.
    pub elements: Vec<FieldAut>,
    pub table: FinGroup,
    /// `Some(b)` when an expected group was supplied.
    pub isomorphic: Option<bool>,
}

impl AutGroupReport {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, a: &FieldAut) -> Option<usize> {
        self.elements.iter().position(|x| x == a)
    }
}

/// Close `gens` under composition, tabulate, and compare with `expected`.
pub fn verify_aut_group(
    gens: &[FieldAut],
    expected: Option<&FinGroup>,
) -> Result<AutGroupReport, CycloError> {
    let field = match gens.first() {
        Some(g) => g.field().clone(),
        None => return Err(CycloError::BadAut("no generators".into())),
    };
    if gens.iter().any(|g| *g.field() != field) {
        return Err(CycloError::FieldMismatch(
            "generators act on different fields".into(),
        ));
    }
    let mut elements = vec![FieldAut::identity(&field)];
    let mut seen: HashMap<String, usize> = HashMap::from([(elements[0].to_string(), 0)]);
    let mut i = 0;
    while i < elements.len() {
        for g in gens {
            let x = g.compose(&elements[i]);
            let key = x.to_string();
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(key) {
                e.insert(elements.len());
                elements.push(x);
            }
        }
        i += 1;
    }
    let n = elements.len();
    let table: Vec<Vec<usize>> = elements
        .iter()
        .map(|a| {
            elements
                .iter()
                .map(|b| seen[&a.compose(b).to_string()])
                .collect()
        })
        .collect();
    let labels = elements.iter().map(ToString::to_string).collect();
    let gen_idx = gens.iter().map(|g| seen[&g.to_string()]).collect();
    let table = FinGroup::from_table(table, labels, gen_idx)
        .map_err(|e| CycloError::BadAut(format!("composition table: {e}")))?;
    debug_assert_eq!(table.order(), n);
    let isomorphic = expected.map(|g| table.isomorphism_to(g).is_some());
    Ok(AutGroupReport {
        elements,
        table,
        isomorphic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::rational;
    use proptest::prelude::*;

    fn cube_root_two() -> Arc<KummerField> {
        KummerField::new(12, 3, CycloElem::from_int(12, 2)).unwrap()
    }

    #[test]
    fn kummer_arithmetic() {
        let f = cube_root_two();
        let t = KummerElem::t(&f);
        assert_eq!(t.pow(3).unwrap(), KummerElem::from_int(&f, 2));
        let x = t.plus(&KummerElem::from_int(&f, 1));
        assert!(x.times(&x.inverse().unwrap()).is_one());
        assert_eq!(
            t.inverse().unwrap().times(&KummerElem::from_int(&f, 2)),
            t.pow(2).unwrap()
        );
        let z = KummerElem::root_of_unity(&f, 4, 1).unwrap();
        assert_eq!(
            z.plus(&KummerElem::from_int(&f, 1))
                .times(&t.pow(2).unwrap())
                .to_string(),
            "(1 + z12^3)*t^2"
        );
        assert_eq!(t.negated().to_string(), "-t");
    }

    #[test]
    fn reducible_radicand_is_not_a_field() {
        // t² − 4 = (t − 2)(t + 2)
        let f = KummerField::new(4, 2, CycloElem::from_int(4, 4)).unwrap();
        let t = KummerElem::t(&f);
        let err = t.minus(&KummerElem::from_int(&f, 2)).inverse().unwrap_err();
        assert!(matches!(err, CycloError::NotAField(_)));
    }

    #[test]
    fn sigma_cubed_is_identity() {
        let f = cube_root_two();
        let t = KummerElem::t(&f);
        let z3 = KummerElem::root_of_unity(&f, 12, 4).unwrap();
        let sigma = FieldAut::new(&f, 1, z3.times(&t)).unwrap();
        assert_eq!(sigma.order(), 3);
        assert!(sigma.compose(&sigma).compose(&sigma).is_identity());
        assert!(FieldAut::new(&f, 1, t.plus(&t)).is_err());
        assert!(FieldAut::new(&f, 2, t.clone()).is_err());
        let tau = FieldAut::new(&f, 11, t).unwrap();
        let report = verify_aut_group(
            &[sigma.clone(), tau.clone()],
            Some(&FinGroup::from_perm_group(
                &crate::permgroup::library::symmetric(3),
            )),
        )
        .unwrap();
        assert_eq!(report.order(), 6);
        assert_eq!(report.isomorphic, Some(true));
        assert_eq!(sigma.inverse().compose(&sigma), FieldAut::identity(&f));
        let five = FieldAut::new(&f, 5, KummerElem::t(&f)).unwrap();
        let full = verify_aut_group(&[sigma, tau, five], None).unwrap();
        assert_eq!(full.order(), 12);
        assert_eq!(full.table.describe(), "D6");
    }

    fn kummer_elem(f: Arc<KummerField>) -> impl Strategy<Value = KummerElem> {
        let deg = f.c.degree();
        prop::collection::vec(prop::collection::vec((-3i64..=3, 1i64..=2), deg), f.m).prop_map(
            move |rows| {
                let cs: Vec<CycloElem> = rows
                    .iter()
                    .map(|r| {
                        CycloElem::from_coeffs(
                            f.n,
                            &r.iter().map(|&(a, b)| rational(a, b)).collect::<Vec<_>>(),
                        )
                    })
                    .collect();
                KummerElem::from_coeffs(&f, &cs)
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn automorphisms_are_ring_homs(a in kummer_elem(cube_root_two()), b in kummer_elem(cube_root_two()),
                                       k in prop::sample::select(vec![1i64, 5, 7, 11]), j in 0i64..3) {
            let f = cube_root_two();
            let t = KummerElem::t(&f);
            let img = KummerElem::root_of_unity(&f, 3, j).unwrap().times(&t);
            let s = FieldAut::new(&f, k, img).unwrap();
            prop_assert_eq!(s.apply(&a.times(&b)), s.apply(&a).times(&s.apply(&b)));
            prop_assert_eq!(s.apply(&a.plus(&b)), s.apply(&a).plus(&s.apply(&b)));
            if !Field::is_zero(&a) {
                prop_assert!(a.times(&a.inverse().unwrap()).is_one());
            }
        }
    }
}
