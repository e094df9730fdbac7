//! Exact arithmetic in `Q(ζ_m)`.
//!
//! Elements are kept in a redundant form: one rational coefficient per residue
//! `0..m`, the coefficient at `e` multiplying `ζ_m^e`. Multiplication is then a
//! cyclic convolution and the absolute trace has a closed form per exponent.
//! Reduction modulo `Φ_m` (the canonical power-basis form) is only needed for
//! equality and integrality questions.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{self, euler_phi, gcd, mobius, residue};
use crate::error::{Error, Result};
use crate::fieldkit::FieldSpec;
use crate::scalar::{ratio_to_int, IntScalar};

#[derive(Clone)]
pub struct CycElem<T: IntScalar> {
    m: u64,
    coeffs: Vec<Ratio<T>>,
}

fn rzero<T: IntScalar>() -> Ratio<T> {
    Ratio::from_integer(T::zero())
}

impl<T: IntScalar> CycElem<T> {
    pub fn zero(m: u64) -> Self {
        assert!(m >= 1, "modulus must be positive");
        CycElem {
            m,
            coeffs: vec![rzero(); m as usize],
        }
    }

    pub fn constant(m: u64, c: Ratio<T>) -> Self {
        let mut x = Self::zero(m);
        x.coeffs[0] = c;
        x
    }

    pub fn from_int(m: u64, c: T) -> Self {
        Self::constant(m, Ratio::from_integer(c))
    }

    pub fn one(m: u64) -> Self {
        Self::from_int(m, T::one())
    }

    /// `ζ_m^e`; negative exponents allowed.
    pub fn zeta_pow(m: u64, e: i64) -> Self {
        let mut x = Self::zero(m);
        x.coeffs[residue(e, m) as usize] = Ratio::from_integer(T::one());
        x
    }

    /// `Σ c·ζ^e` over the given (exponent, coefficient) pairs.
    pub fn from_terms(m: u64, terms: &[(i64, i64)]) -> Self {
        let mut x = Self::zero(m);
        for &(e, c) in terms {
            let slot = &mut x.coeffs[residue(e, m) as usize];
            *slot = slot.clone() + Ratio::from_integer(T::from_i64_exact(c));
        }
        x
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn coeff(&self, e: i64) -> &Ratio<T> {
        &self.coeffs[residue(e, self.m) as usize]
    }

    /// Nonzero (exponent, coefficient) pairs of the stored representation.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &Ratio<T>)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e as u64, c))
    }

    fn same_modulus(&self, other: &Self) -> Result<()> {
        if self.m == other.m {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.m, other.m))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_modulus(other)?;
        Ok(CycElem {
            m: self.m,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    /// Product by convolution of exponents modulo `m`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_modulus(other)?;
        let m = self.m as usize;
        let mut out = vec![rzero::<T>(); m];
        let rhs: Vec<(usize, &Ratio<T>)> = other
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for &(j, b) in &rhs {
                let k = (i + j) % m;
                out[k] = out[k].clone() + a.clone() * b.clone();
            }
        }
        Ok(CycElem {
            m: self.m,
            coeffs: out,
        })
    }

    pub fn scale(&self, c: &Ratio<T>) -> Self {
        CycElem {
            m: self.m,
            coeffs: self.coeffs.iter().map(|v| v.clone() * c.clone()).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.m);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `σ_a : ζ ↦ ζ^a`. `σ_{-1}` is complex conjugation.
    pub fn galois_apply(&self, a: i64) -> Result<Self> {
        let ar = residue(a, self.m);
        if gcd(ar, self.m) != 1 {
            return Err(Error::NotCoprime { a, m: self.m });
        }
        let m = self.m as usize;
        let mut out = vec![rzero::<T>(); m];
        for (e, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out[(e * ar as usize) % m] = c.clone();
            }
        }
        Ok(CycElem {
            m: self.m,
            coeffs: out,
        })
    }

    pub fn conj(&self) -> Self {
        self.galois_apply(-1).expect("-1 is a unit")
    }

    /// Absolute trace `Tr_{Q(ζ_m)/Q}`.
    pub fn trace_q(&self) -> Ratio<T> {
        self.terms().fold(rzero(), |acc, (e, c)| {
            acc + c.clone() * Ratio::from_integer(T::from_i64_exact(trace_zeta_power(self.m, e as i64)))
        })
    }

    /// Coordinates on the power basis `ζ^0 .. ζ^{φ(m)-1}`.
    pub fn canonical(&self) -> Vec<Ratio<T>> {
        let phi_poly = cyclotomic_polynomial(self.m);
        let deg = phi_poly.len() - 1;
        let mut a = self.coeffs.clone();
        for top in (deg..a.len()).rev() {
            if a[top].is_zero() {
                continue;
            }
            let c = a[top].clone();
            for (i, p) in phi_poly.iter().enumerate() {
                if *p != 0 {
                    let idx = top - deg + i;
                    a[idx] = a[idx].clone() - c.clone() * Ratio::from_integer(T::from_i64_exact(*p));
                }
            }
        }
        a.truncate(deg);
        a
    }

    /// Integer power-basis coordinates, if the element lies in `Z[ζ_m]`.
    pub fn integral_coordinates(&self) -> Option<Vec<T>> {
        self.canonical().iter().map(ratio_to_int).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.integral_coordinates().is_some()
    }

    pub fn is_zero(&self) -> bool {
        self.canonical().iter().all(Zero::is_zero)
    }

    pub fn is_totally_real(&self) -> bool {
        self.conj() == *self
    }

    pub fn is_fixed_by(&self, a: i64) -> Result<bool> {
        Ok(self.galois_apply(a)? == *self)
    }

    /// The rational number this element equals, if any.
    pub fn as_rational(&self) -> Option<Ratio<T>> {
        let c = self.canonical();
        if c.iter().skip(1).all(Zero::is_zero) {
            Some(c.into_iter().next().unwrap_or_else(rzero))
        } else {
            None
        }
    }

    /// Product of the conjugates `σ_a(x)` over all units `a ≠ 1`.
    fn conjugate_cofactor(&self) -> Self {
        arith::units(self.m)
            .into_iter()
            .filter(|&a| a != 1)
            .fold(Self::one(self.m), |acc, a| {
                &acc * &self.galois_apply(a as i64).expect("unit")
            })
    }

    /// Absolute norm: product of all `φ(m)` conjugates.
    pub fn norm(&self) -> Ratio<T> {
        (self * &self.conjugate_cofactor())
            .as_rational()
            .expect("norm is rational")
    }

    /// `x⁻¹ = (Π_{a≠1} σ_a x) / N(x)`.
    pub fn inverse(&self) -> Result<Self> {
        let cof = self.conjugate_cofactor();
        let n = (self * &cof).as_rational().expect("norm is rational");
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(cof.scale(&(Ratio::one() / n)))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.same_modulus(other)?;
        self.checked_mul(&other.inverse()?)
    }

    /// Rebuild from power-basis coordinates.
    pub fn from_canonical(m: u64, coords: &[Ratio<T>]) -> Self {
        let mut x = Self::zero(m);
        for (i, c) in coords.iter().enumerate() {
            x.coeffs[i] = c.clone();
        }
        x
    }
}

impl<T: IntScalar> PartialEq for CycElem<T> {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.canonical() == other.canonical()
    }
}

impl<T: IntScalar> Eq for CycElem<T> {}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a, T: IntScalar> $tr<&'a CycElem<T>> for &'a CycElem<T> {
            type Output = CycElem<T>;
            fn $method(self, rhs: &'a CycElem<T>) -> CycElem<T> {
                self.$checked(rhs).expect("cyclotomic moduli must agree")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl<T: IntScalar> Neg for &CycElem<T> {
    type Output = CycElem<T>;
    fn neg(self) -> CycElem<T> {
        CycElem {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<T: IntScalar> fmt::Display for CycElem<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                _ if c.is_one() => write!(f, "z{}^{e}", self.m)?,
                _ => write!(f, "({c})*z{}^{e}", self.m)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<T: IntScalar> fmt::Debug for CycElem<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycElem({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct CycElemRepr {
    #[serde(with = "crate::serde_dec")]
    m: u64,
    coeffs: BTreeMap<u64, String>,
}

impl<T: IntScalar> Serialize for CycElem<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CycElemRepr {
            m: self.m,
            coeffs: self.terms().map(|(e, c)| (e, c.to_string())).collect(),
        }
        .serialize(s)
    }
}

impl<'de, T> Deserialize<'de> for CycElem<T>
where
    T: IntScalar,
    <T as FromStr>::Err: fmt::Display,
{
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = CycElemRepr::deserialize(d)?;
        if raw.m == 0 {
            return Err(D::Error::custom("modulus must be positive"));
        }
        let mut x = CycElem::zero(raw.m);
        for (e, c) in raw.coeffs {
            if e >= raw.m {
                return Err(D::Error::custom(format!("residue {e} out of range")));
            }
            let q = parse_ratio::<T>(&c).map_err(D::Error::custom)?;
            x.coeffs[e as usize] = q;
        }
        Ok(x)
    }
}

fn parse_ratio<T: IntScalar>(s: &str) -> Result<Ratio<T>, String>
where
    <T as FromStr>::Err: fmt::Display,
{
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: T = crate::serde_dec::parse(num)?;
    let den: T = crate::serde_dec::parse(den)?;
    if den.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(Ratio::new(num, den))
}

/// `Tr_{Q(ζ_m)/Q}(ζ_m^c) = μ(t)·φ(m)/φ(t)` with `t = m / gcd(c, m)`.
pub fn trace_zeta_power(m: u64, c: i64) -> i64 {
    let t = m / gcd(residue(c, m), m);
    mobius(t) * (euler_phi(m) / euler_phi(t)) as i64
}

static PHI_CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();

/// Coefficients (constant term first) of the `m`-th cyclotomic polynomial,
/// from `Φ_m = (x^m − 1) / Π_{d|m, d<m} Φ_d`.
pub fn cyclotomic_polynomial(m: u64) -> Arc<Vec<i64>> {
    let cache = PHI_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("cache poisoned").get(&m) {
        return Arc::clone(p);
    }
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in arith::divisors(m) {
        if d < m {
            num = divide_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    let poly = Arc::new(num);
    cache
        .lock()
        .expect("cache poisoned")
        .insert(m, Arc::clone(&poly));
    poly
}

/// Exact quotient of integer polynomials by a monic divisor.
fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut q = vec![0i64; num.len() - dd];
    for top in (dd..num.len()).rev() {
        let c = rem[top];
        if c == 0 {
            continue;
        }
        q[top - dd] = c;
        for (i, &p) in den.iter().enumerate() {
            let idx = top - dd + i;
            rem[idx] = rem[idx]
                .checked_sub(c.checked_mul(p).expect("cyclotomic coefficient overflow"))
                .expect("cyclotomic coefficient overflow");
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    q
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormInfo<T: IntScalar> {
    pub norm: Ratio<T>,
    pub is_unit: bool,
}

/// Norm of an element of `Z[ζ_ℓ]` and whether it is a unit.
pub fn norm_and_unit<T: IntScalar>(x: &CycElem<T>) -> Result<NormInfo<T>> {
    if !x.is_integral() {
        return Err(Error::NotIntegral(format!("{x} is not in Z[zeta]")));
    }
    let norm = x.norm();
    let is_unit = norm.is_integer() && num_traits::Signed::abs(&norm).is_one();
    Ok(NormInfo { norm, is_unit })
}

/// `Tr(x·ζ^i) ∈ Z` for every power-basis element `ζ^i`.
pub fn in_inverse_different<T: IntScalar>(x: &CycElem<T>) -> bool {
    let m = x.modulus();
    (0..euler_phi(m) as i64).all(|i| {
        (x * &CycElem::zeta_pow(m, i)).trace_q().is_integer()
    })
}

/// Checks that `h` is a subgroup of `(Z/f)*` of prime index and returns the
/// index.
pub fn subgroup_index(f: u64, h: &[u64]) -> Result<u64> {
    let bad = |msg: String| Err(Error::BadSubgroup(msg));
    if h.is_empty() || !h.contains(&(1 % f)) {
        return bad("subgroup must contain 1".into());
    }
    if h.iter().any(|&x| x >= f.max(2) || gcd(x, f) != 1) {
        return bad("elements must be units modulo the conductor".into());
    }
    let set: std::collections::HashSet<u64> = h.iter().copied().collect();
    if set.len() != h.len() {
        return bad("repeated residues".into());
    }
    for &a in h {
        for &b in h {
            if !set.contains(&arith::mod_mul(a, b, f)) {
                return bad(format!("not closed: {a}*{b}"));
            }
        }
    }
    let phi = euler_phi(f);
    if phi % h.len() as u64 != 0 {
        return bad("order does not divide phi(f)".into());
    }
    let index = phi / h.len() as u64;
    if !arith::is_prime(index) {
        return bad(format!("index {index} is not prime"));
    }
    Ok(index)
}

/// `Σ_{h∈H} ζ_f^{h·rep}`.
pub fn gaussian_period<T: IntScalar>(f: u64, h: &[u64], rep: u64) -> Result<CycElem<T>> {
    subgroup_index(f, h)?;
    if gcd(rep % f, f) != 1 {
        return Err(Error::NotCoprime { a: rep as i64, m: f });
    }
    Ok(gaussian_period_unchecked(f, h, rep))
}

pub(crate) fn gaussian_period_unchecked<T: IntScalar>(f: u64, h: &[u64], rep: u64) -> CycElem<T> {
    let mut x = CycElem::zero(f);
    for &e in h {
        x.coeffs[arith::mod_mul(e, rep, f) as usize] = Ratio::from_integer(T::one());
    }
    x
}

/// A small generating set of the subgroup `h`.
pub(crate) fn subgroup_generators(f: u64, h: &[u64]) -> Vec<u64> {
    let mut gens = Vec::new();
    let mut span: std::collections::BTreeSet<u64> = [1 % f].into_iter().collect();
    for &x in h {
        if span.contains(&x) {
            continue;
        }
        gens.push(x);
        // close under multiplication
        let mut frontier: Vec<u64> = span.iter().copied().collect();
        while let Some(a) = frontier.pop() {
            for &g in &gens {
                let b = arith::mod_mul(a, g, f);
                if span.insert(b) {
                    frontier.push(b);
                }
            }
        }
    }
    gens
}

/// `Tr_{L/Q}(x) = (ℓ/φ(f))·Tr_{Q(ζ_f)/Q}(x)` for `x` in the field `L`.
pub fn subfield_trace<T: IntScalar>(x: &CycElem<T>, spec: &FieldSpec) -> Result<Ratio<T>> {
    if x.modulus() != spec.conductor() {
        return Err(Error::ModulusMismatch(x.modulus(), spec.conductor()));
    }
    for g in subgroup_generators(spec.conductor(), spec.subgroup()) {
        if !x.is_fixed_by(g as i64)? {
            return Err(Error::NotInSubfield);
        }
    }
    Ok(subfield_trace_unchecked(x, spec))
}

pub(crate) fn subfield_trace_unchecked<T: IntScalar>(x: &CycElem<T>, spec: &FieldSpec) -> Ratio<T> {
    let f = spec.conductor();
    x.trace_q()
        * Ratio::new(
            T::from_u64_exact(spec.ell()),
            T::from_u64_exact(euler_phi(f)),
        )
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type E = CycElem<BigInt>;

    fn q(n: i64, d: i64) -> Ratio<BigInt> {
        Ratio::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn products() {
        let z7 = E::zeta_pow(7, 1);
        assert_eq!(&z7 * &E::zeta_pow(7, 6), E::one(7));
        let a = E::from_terms(3, &[(0, 1), (1, -1)]);
        let b = E::from_terms(3, &[(0, 1), (2, -1)]);
        assert_eq!(&a * &b, E::from_int(3, BigInt::from(3)));
        let d = E::from_terms(5, &[(1, 1), (4, -1)]);
        assert_eq!(&d * &d, E::from_terms(5, &[(2, 1), (0, -2), (3, 1)]));
        assert_eq!(
            E::zero(5).checked_mul(&E::zero(7)),
            Err(Error::ModulusMismatch(5, 7))
        );
    }

    #[test]
    fn galois_action() {
        let x = E::from_terms(5, &[(1, 3), (2, -1)]);
        assert_eq!(x.galois_apply(1).unwrap(), x);
        assert_eq!(E::zeta_pow(5, 1).conj(), E::zeta_pow(5, 4));
        assert!(matches!(x.galois_apply(5), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn trace_of_zeta_powers() {
        assert_eq!(trace_zeta_power(7, 0), 6);
        assert_eq!(trace_zeta_power(7, 3), -1);
        assert_eq!(trace_zeta_power(9, 3), -3);
        assert_eq!(trace_zeta_power(12, 4), -2);
    }

    #[test]
    fn absolute_traces() {
        assert_eq!(E::from_int(7, BigInt::from(5)).trace_q(), q(30, 1));
        assert_eq!(E::from_terms(7, &[(1, 1), (2, 1)]).trace_q(), q(-2, 1));
        let a = E::from_terms(3, &[(0, 1), (1, -1)]);
        let b = E::from_terms(3, &[(0, 1), (2, -1)]);
        assert_eq!((&a * &b).trace_q(), q(6, 1));
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(9), vec![1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        // first cyclotomic polynomial with a coefficient of absolute value 2
        assert!(cyclotomic_polynomial(105).iter().any(|&c| c == -2));
        assert_eq!(cyclotomic_polynomial(341).len() as u64 - 1, euler_phi(341));
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let x = E::from_terms(9, &[(8, 2), (7, -1), (3, 5)]);
        let c = x.canonical();
        assert_eq!(E::from_canonical(9, &c).canonical(), c);
        // 1 + ζ_3 + ζ_3² = 0
        assert!(E::from_terms(3, &[(0, 1), (1, 1), (2, 1)]).is_zero());
    }

    #[test]
    fn norms_and_units() {
        let n = norm_and_unit(&E::from_terms(5, &[(0, 1), (1, -1)])).unwrap();
        assert_eq!(n.norm, q(5, 1));
        assert!(!n.is_unit);
        assert!(norm_and_unit(&E::zeta_pow(5, 1)).unwrap().is_unit);
        let u = norm_and_unit(&E::from_terms(5, &[(0, 1), (1, 1), (2, 1)])).unwrap();
        assert!(u.is_unit);
        assert_eq!(u.norm, q(1, 1));
        let half = E::constant(5, q(1, 2));
        assert!(matches!(norm_and_unit(&half), Err(Error::NotIntegral(_))));
    }

    #[test]
    fn inverse_different_membership() {
        let beta = E::from_terms(5, &[(0, 2), (2, -1), (3, -1)]).scale(&q(1, 5));
        assert!(in_inverse_different(&beta));
        assert!(!in_inverse_different(&E::constant(5, q(1, 5))));
        assert!(in_inverse_different(&E::from_terms(5, &[(0, 4), (1, -7), (3, 2)])));
    }

    #[test]
    fn division_is_exact() {
        let a = E::from_terms(7, &[(0, 1), (1, -1)]);
        let b = E::from_terms(7, &[(0, 1), (3, -1)]);
        let u = b.checked_div(&a).unwrap();
        assert!(u.is_integral());
        assert_eq!(&u * &a, b);
        assert_eq!(E::zero(7).inverse(), Err(Error::DivisionByZero));
    }

    fn power_sums(min_poly_roots_sum: &[i64]) -> Vec<i64> {
        min_poly_roots_sum.to_vec()
    }

    #[test]
    fn periods_and_minimal_polynomials() {
        // Newton: for x³+x²−2x−1, e1=−1, e2=−2, e3=1: p1=−1, p2=e1²−2e2=5, p3=e1p2−e2p1+3e3=−5+(−2)+3=−4
        let eta = gaussian_period::<BigInt>(7, &[1, 6], 1).unwrap();
        let sums: Vec<i64> = (1..=3)
            .map(|k| {
                let t = eta.pow(k).trace_q() * q(1, 2);
                t.to_integer().try_into().unwrap()
            })
            .collect();
        assert_eq!(sums, power_sums(&[-1, 5, -4]));
        // x³−3x+1: p1=0, p2=6, p3=−3
        let eta9 = gaussian_period::<BigInt>(9, &[1, 8], 1).unwrap();
        let sums: Vec<i64> = (1..=3)
            .map(|k| (eta9.pow(k).trace_q() * q(1, 2)).to_integer().try_into().unwrap())
            .collect();
        assert_eq!(sums, vec![0, 6, -3]);
        let all = [1u64, 3, 2]
            .iter()
            .fold(E::zero(7), |acc, &r| &acc + &gaussian_period(7, &[1, 6], r).unwrap());
        assert_eq!(all, E::from_int(7, BigInt::from(-1)));
        assert!(matches!(
            gaussian_period::<BigInt>(7, &[1, 2], 1),
            Err(Error::BadSubgroup(_))
        ));
    }

    #[test]
    fn json_shape() {
        let x = E::from_terms(5, &[(0, 2), (2, -1)]).scale(&q(1, 5));
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"m":"5","coeffs":{"0":"2/5","2":"-1/5"}}"#);
        let back: E = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }

    fn elem(m: u64) -> impl Strategy<Value = E> {
        proptest::collection::vec(-5i64..6, m as usize).prop_map(move |cs| {
            let terms: Vec<(i64, i64)> = cs.iter().enumerate().map(|(e, &c)| (e as i64, c)).collect();
            E::from_terms(m, &terms)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn ring_laws(x in elem(15), y in elem(15), z in elem(15)) {
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
            prop_assert_eq!(x.galois_apply(4).unwrap().galois_apply(2).unwrap(), x.galois_apply(8).unwrap());
        }

        #[test]
        fn trace_is_galois_invariant(x in elem(12), a in prop::sample::select(vec![1i64, 5, 7, 11])) {
            prop_assert_eq!(x.galois_apply(a).unwrap().trace_q(), x.trace_q());
        }

        #[test]
        fn norm_is_multiplicative(x in elem(5), y in elem(5)) {
            prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        }
    }
}
