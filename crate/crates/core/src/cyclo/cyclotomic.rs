use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{integer, join_terms, term, CycloError, Field, Poly, Rational};

pub fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

fn cyclotomic_rational(n: usize) -> Poly<Rational> {
    let zero = integer(0);
    let mut p = Poly::monomial(integer(1), n).sub(&Poly::constant(integer(1)));
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let (q, r) = p.divrem(&cyclotomic_rational(d)).expect("monic divisor");
        debug_assert!(r.is_zero());
        p = q;
    }
    Poly::new(p.coeffs().to_vec(), zero)
}

/// `Φ_n` with integer coefficients, lowest degree first.
pub fn cyclotomic_polynomial(n: usize) -> Vec<BigInt> {
    assert!(n > 0, "conductor must be positive");
    cyclotomic_rational(n)
        .coeffs()
        .iter()
        .map(|c| c.to_integer())
        .collect()
}

/// Data shared by all elements of `ℚ(ζ_n)`.
#[derive(Debug)]
pub(crate) struct CycloField {
    n: usize,
    deg: usize,
    modulus: Poly<Rational>,
    /// `ζ^k` reduced to the power basis, `k < n`.
    powers: Vec<Vec<Rational>>,
}

impl CycloField {
    fn build(n: usize) -> CycloField {
        let modulus = cyclotomic_rational(n);
        let deg = modulus.degree().expect("nonzero");
        let mut powers = Vec::with_capacity(n);
        for k in 0..n {
            let r = Poly::monomial(integer(1), k).rem(&modulus).expect("monic");
            powers.push((0..deg).map(|i| r.coeff(i)).collect());
        }
        CycloField {
            n,
            deg,
            modulus,
            powers,
        }
    }

    pub(crate) fn get(n: usize) -> Arc<CycloField> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<CycloField>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("cache poisoned");
        guard
            .entry(n)
            .or_insert_with(|| Arc::new(CycloField::build(n)))
            .clone()
    }
}

/// Element of `ℚ(ζ_n)` in the power basis `1, ζ, …, ζ^{φ(n)−1}`.
#[derive(Clone)]
pub struct CycloElem {
    field: Arc<CycloField>,
    coeffs: Vec<Rational>,
}

impl PartialEq for CycloElem {
    fn eq(&self, other: &Self) -> bool {
        self.field.n == other.field.n && self.coeffs == other.coeffs
    }
}

impl Eq for CycloElem {}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloElem[{}]({self})", self.field.n)
    }
}

/// `ζ_n^k`
pub fn root_of_unity(n: usize, k: i64) -> CycloElem {
    let f = CycloField::get(n);
    let k = k.rem_euclid(n as i64) as usize;
    CycloElem {
        coeffs: f.powers[k].clone(),
        field: f,
    }
}

impl CycloElem {
    pub fn zero(n: usize) -> CycloElem {
        let field = CycloField::get(n);
        CycloElem {
            coeffs: vec![Rational::zero(); field.deg],
            field,
        }
    }

    pub fn from_rational(n: usize, r: Rational) -> CycloElem {
        let mut x = CycloElem::zero(n);
        x.coeffs[0] = r;
        x
    }

    pub fn from_int(n: usize, k: i64) -> CycloElem {
        CycloElem::from_rational(n, integer(k))
    }

    /// `Σ c_k ζ^k`, any length.
    pub fn from_coeffs(n: usize, coeffs: &[Rational]) -> CycloElem {
        let mut x = CycloElem::zero(n);
        for (k, c) in coeffs.iter().enumerate() {
            if !Zero::is_zero(c) {
                x.add_scaled_power(k, c);
            }
        }
        x
    }

    fn add_scaled_power(&mut self, k: usize, c: &Rational) {
        let row = &self.field.powers[k % self.field.n];
        for (a, b) in self.coeffs.iter_mut().zip(row) {
            if !Zero::is_zero(b) {
                *a += c * b;
            }
        }
    }

    pub fn conductor(&self) -> usize {
        self.field.n
    }

    pub fn degree(&self) -> usize {
        self.field.deg
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn modulus(&self) -> &Poly<Rational> {
        &self.field.modulus
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coeffs[0])
    }

    fn same_field(&self, other: &CycloElem) {
        assert_eq!(
            self.field.n, other.field.n,
            "mixing ℚ(ζ_{}) and ℚ(ζ_{})",
            self.field.n, other.field.n
        );
    }

    /// Image under `ℚ(ζ_n) ⊂ ℚ(ζ_m)`, `ζ_n ↦ ζ_m^{m/n}`.
    pub fn embed(&self, m: usize) -> Result<CycloElem, CycloError> {
        let n = self.field.n;
        if m == 0 || !m.is_multiple_of(n) {
            return Err(CycloError::NotMultiple { from: n, to: m });
        }
        let step = m / n;
        let mut out = CycloElem::zero(m);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !Zero::is_zero(c) {
                out.add_scaled_power(k * step, c);
            }
        }
        Ok(out)
    }

    /// Galois automorphism `ζ ↦ ζ^k`.
    pub fn galois(&self, k: i64) -> Result<CycloElem, CycloError> {
        let n = self.field.n;
        let k = k.rem_euclid(n as i64) as usize;
        if k.gcd(&n) != 1 {
            return Err(CycloError::BadAut(format!("{k} is not a unit mod {n}")));
        }
        let mut out = CycloElem {
            field: self.field.clone(),
            coeffs: vec![Rational::zero(); self.field.deg],
        };
        for (j, c) in self.coeffs.iter().enumerate() {
            if !Zero::is_zero(c) {
                out.add_scaled_power(j * k, c);
            }
        }
        Ok(out)
    }

    /// Complex conjugation.
    pub fn conjugate(&self) -> CycloElem {
        self.galois(-1).expect("-1 is a unit")
    }

    /// Multiplicative order if `self` is a root of unity.
    pub fn root_order(&self) -> Option<usize> {
        let bound = self.field.n.lcm(&2);
        let one = self.one_like();
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc == one {
                return Some(k);
            }
            acc = acc.times(self);
        }
        None
    }

    fn as_poly(&self) -> Poly<Rational> {
        Poly::new(self.coeffs.clone(), integer(0))
    }
}

impl Field for CycloElem {
    fn zero_like(&self) -> Self {
        CycloElem {
            field: self.field.clone(),
            coeffs: vec![Rational::zero(); self.field.deg],
        }
    }

    fn one_like(&self) -> Self {
        let mut x = self.zero_like();
        x.coeffs[0] = Rational::one();
        x
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn plus(&self, other: &Self) -> Self {
        self.same_field(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycloElem {
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
            .map(|(a, b)| a - b)
            .collect();
        CycloElem {
            field: self.field.clone(),
            coeffs,
        }
    }

    fn times(&self, other: &Self) -> Self {
        self.same_field(other);
        let mut out = self.zero_like();
        for (i, a) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !Zero::is_zero(b) {
                    out.add_scaled_power(i + j, &(a * b));
                }
            }
        }
        out
    }

    fn negated(&self) -> Self {
        CycloElem {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    fn inverse(&self) -> Result<Self, CycloError> {
        if Field::is_zero(self) {
            return Err(CycloError::ZeroInverse);
        }
        let (g, s, _) = Poly::ext_gcd(&self.as_poly(), &self.field.modulus)?;
        debug_assert_eq!(g.degree(), Some(0), "Φ_n is irreducible");
        Ok(CycloElem::from_coeffs(self.field.n, s.coeffs()))
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.field.n;
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !Zero::is_zero(*c))
            .map(|(k, c)| {
                let mono = match k {
                    0 => None,
                    1 => Some(format!("z{n}")),
                    _ => Some(format!("z{n}^{k}")),
                };
                term(c, mono)
            })
            .collect();
        f.write_str(&join_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::rational;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(8), ints(&[1, 0, 0, 0, 1]));
        for n in 1..40 {
            assert_eq!(cyclotomic_polynomial(n).len() - 1, euler_phi(n));
        }
    }

    #[test]
    fn known_values() {
        let z3 = root_of_unity(3, 1);
        let one = z3.one_like();
        assert_eq!(z3.plus(&one).inverse().unwrap(), z3.negated());
        assert_eq!(root_of_unity(4, 1).embed(12).unwrap(), root_of_unity(12, 3));
        assert!(root_of_unity(4, 1).embed(6).is_err());
        assert_eq!(root_of_unity(12, 1).to_string(), "z12");
        assert_eq!(root_of_unity(12, 4).to_string(), "-1 + z12^2");
        let x = CycloElem::from_rational(4, rational(1, 3)).times(&root_of_unity(4, 1));
        assert_eq!(x.to_string(), "1/3*z4");
        assert_eq!(root_of_unity(8, 1).conjugate(), root_of_unity(8, 7));
        assert_eq!(root_of_unity(12, 5).root_order(), Some(12));
        assert_eq!(root_of_unity(3, 1).negated().root_order(), Some(6));
        assert_eq!(CycloElem::from_int(5, 2).root_order(), None);
    }

    fn elem(n: usize) -> impl Strategy<Value = CycloElem> {
        prop::collection::vec((-5i64..=5, 1i64..=3), euler_phi(n)).prop_map(move |cs| {
            let cs: Vec<Rational> = cs.into_iter().map(|(a, b)| rational(a, b)).collect();
            CycloElem::from_coeffs(n, &cs)
        })
    }

    fn conductor() -> impl Strategy<Value = usize> {
        prop::sample::select(vec![3usize, 4, 6, 8, 12, 24])
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms((a, b, c) in conductor().prop_flat_map(|n| (elem(n), elem(n), elem(n)))) {
            prop_assert_eq!(a.times(&b), b.times(&a));
            prop_assert_eq!(a.times(&b).times(&c), a.times(&b.times(&c)));
            prop_assert_eq!(a.times(&b.plus(&c)), a.times(&b).plus(&a.times(&c)));
            prop_assert_eq!(a.plus(&b).minus(&b), a.clone());
            if !Field::is_zero(&a) {
                prop_assert!(a.times(&a.inverse().unwrap()).is_one());
            }
        }

        #[test]
        fn galois_is_ring_hom((a, b, k) in conductor().prop_flat_map(|n| {
            let units: Vec<i64> = (1..n as i64).filter(|k| k.gcd(&(n as i64)) == 1).collect();
            (elem(n), elem(n), prop::sample::select(units))
        })) {
            let s = |x: &CycloElem| x.galois(k).unwrap();
            prop_assert_eq!(s(&a.times(&b)), s(&a).times(&s(&b)));
            prop_assert_eq!(s(&a.plus(&b)), s(&a).plus(&s(&b)));
        }

        #[test]
        fn embedding_is_multiplicative((a, b) in prop::sample::select(vec![3usize, 4, 6, 12])
            .prop_flat_map(|n| (elem(n), elem(n)))) {
            let e = |x: &CycloElem| x.embed(24).unwrap();
            prop_assert_eq!(e(&a.times(&b)), e(&a).times(&e(&b)));
            prop_assert_eq!(e(&a.plus(&b)), e(&a).plus(&e(&b)));
        }

        #[test]
        fn zeta_has_exact_order(n in 1usize..=30, k in 0i64..60) {
            let z = root_of_unity(n, k);
            let expected = n / (k.rem_euclid(n as i64) as usize).gcd(&n);
            prop_assert_eq!(z.pow(expected as i64).unwrap(), z.one_like());
            for d in 1..expected {
                prop_assert_ne!(z.pow(d as i64).unwrap(), z.one_like());
            }
        }
    }
}
