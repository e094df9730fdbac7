//! Cyclic fields of odd prime degree `ℓ`, identified by their conductor `f`
//! and the index-`ℓ` subgroup `H ⊂ (Z/f)*` that cuts them out of `Q(ζ_f)`.
//!
//! Integral bases are built from Gaussian periods and certified by comparing
//! the determinant of the full trace Gram matrix with the discriminant.

use std::collections::HashMap;
use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{self, factorize, gcd, is_prime, mod_mul, mod_pow, primitive_root, units};
use crate::cyclotomic::{self, subfield_trace_unchecked, CycElem};
use crate::error::{Error, Result};
use crate::exactlat::{inverse_rational, GramMatrix, Matrix};
use crate::scalar::{ratio_to_int, IntScalar};

/// A cyclic degree-`ℓ` field: conductor plus defining subgroup. Always valid
/// once constructed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "FieldSpecRepr", into = "FieldSpecRepr")]
pub struct FieldSpec {
    ell: u64,
    conductor: u64,
    subgroup: Vec<u64>,
}

#[derive(Clone, Serialize, Deserialize)]
struct FieldSpecRepr {
    #[serde(with = "crate::serde_dec")]
    ell: u64,
    #[serde(with = "crate::serde_dec")]
    conductor: u64,
    #[serde(with = "crate::serde_dec::vec")]
    subgroup: Vec<u64>,
}

impl TryFrom<FieldSpecRepr> for FieldSpec {
    type Error = Error;
    fn try_from(r: FieldSpecRepr) -> Result<Self> {
        FieldSpec::new(r.ell, r.conductor, r.subgroup)
    }
}

impl From<FieldSpec> for FieldSpecRepr {
    fn from(s: FieldSpec) -> Self {
        FieldSpecRepr {
            ell: s.ell,
            conductor: s.conductor,
            subgroup: s.subgroup,
        }
    }
}

/// Splits a candidate conductor into (wild, tame primes), checking its shape.
fn conductor_shape(ell: u64, f: u64) -> Result<(bool, Vec<u64>)> {
    if !(ell > 2 && is_prime(ell)) {
        return Err(Error::NotOddPrime(ell));
    }
    if f < 2 {
        return Err(Error::InvalidConductor(f, "conductor must exceed 1".into()));
    }
    let mut wild = false;
    let mut tame = Vec::new();
    for (p, e) in factorize(f) {
        if p == ell {
            if e != 2 {
                return Err(Error::InvalidConductor(
                    f,
                    format!("{ell} must divide the conductor exactly twice or not at all"),
                ));
            }
            wild = true;
        } else {
            if e != 1 {
                return Err(Error::InvalidConductor(f, format!("{p}^{e} is not squarefree")));
            }
            if p % ell != 1 {
                return Err(Error::BadPrime(p));
            }
            tame.push(p);
        }
    }
    Ok((wild, tame))
}

impl FieldSpec {
    pub fn new(ell: u64, conductor: u64, mut subgroup: Vec<u64>) -> Result<Self> {
        conductor_shape(ell, conductor)?;
        subgroup.sort_unstable();
        let index = cyclotomic::subgroup_index(conductor, &subgroup)?;
        if index != ell {
            return Err(Error::BadSubgroup(format!("index {index}, expected {ell}")));
        }
        let in_h: std::collections::HashSet<u64> = subgroup.iter().copied().collect();
        for (p, _) in factorize(conductor) {
            let d = conductor / p;
            let kernel_in_h = units(conductor)
                .into_iter()
                .filter(|x| x % d == 1 % d)
                .all(|x| in_h.contains(&x));
            if kernel_in_h {
                return Err(Error::InvalidConductor(
                    conductor,
                    format!("the field already has conductor dividing {d}"),
                ));
            }
        }
        Ok(FieldSpec {
            ell,
            conductor,
            subgroup,
        })
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn subgroup(&self) -> &[u64] {
        &self.subgroup
    }

    pub fn wild(&self) -> bool {
        self.conductor % (self.ell * self.ell) == 0
    }

    pub fn tame_primes(&self) -> Vec<u64> {
        factorize(self.conductor)
            .into_iter()
            .map(|(p, _)| p)
            .filter(|&p| p != self.ell)
            .collect()
    }

    /// Product of the ramified primes other than `ℓ`.
    pub fn n_l(&self) -> u64 {
        self.tame_primes().iter().product()
    }

    pub fn m_l(&self) -> u64 {
        self.n_l()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.subgroup.binary_search(&(x % self.conductor)).is_ok()
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h: Vec<String> = self.subgroup.iter().map(u64::to_string).collect();
        write!(f, "(ell={}, f={}, H={{{}}})", self.ell, self.conductor, h.join(","))
    }
}

/// Discrete logarithm table for a cyclic unit group modulo `m`.
struct Dlog {
    m: u64,
    table: HashMap<u64, u64>,
}

impl Dlog {
    fn new(m: u64) -> Self {
        let g = primitive_root(m).expect("cyclic unit group");
        let n = arith::euler_phi(m);
        let mut table = HashMap::with_capacity(n as usize);
        let mut x = 1 % m;
        for k in 0..n {
            table.insert(x, k);
            x = mod_mul(x, g, m);
        }
        Dlog { m, table }
    }

    fn log(&self, x: u64) -> u64 {
        self.table[&(x % self.m)]
    }
}

/// All fields of degree `ℓ` ramified exactly at the given tame primes (and
/// at `ℓ` when `wild`), ordered lexicographically by their subgroup.
pub fn enumerate_fields(ell: u64, ramified_tame: &[u64], wild: bool) -> Result<Vec<FieldSpec>> {
    if !(ell > 2 && is_prime(ell)) {
        return Err(Error::NotOddPrime(ell));
    }
    let mut primes = ramified_tame.to_vec();
    primes.sort_unstable();
    for w in primes.windows(2) {
        if w[0] == w[1] {
            return Err(Error::InvalidConductor(w[0], "repeated prime".into()));
        }
    }
    for &p in &primes {
        if p == ell || !is_prime(p) || p % ell != 1 {
            return Err(Error::BadPrime(p));
        }
    }
    let mut moduli: Vec<u64> = Vec::new();
    if wild {
        moduli.push(ell * ell);
    }
    moduli.extend(&primes);
    if moduli.is_empty() {
        return Ok(Vec::new());
    }
    let f: u64 = moduli.iter().product();
    let logs: Vec<Dlog> = moduli.iter().map(|&m| Dlog::new(m)).collect();
    let us = units(f);
    let unit_logs: Vec<Vec<u64>> = us
        .iter()
        .map(|&x| logs.iter().map(|d| d.log(x) % ell).collect())
        .collect();

    // characters χ_c(x) = Σ c_i·log_i(x) mod ℓ with every c_i ≠ 0 and c_1 = 1
    let k = moduli.len();
    let mut specs = Vec::new();
    let mut c = vec![1u64; k];
    loop {
        let h: Vec<u64> = us
            .iter()
            .zip(&unit_logs)
            .filter(|(_, l)| l.iter().zip(&c).map(|(a, b)| a * b).sum::<u64>() % ell == 0)
            .map(|(&x, _)| x)
            .collect();
        specs.push(FieldSpec::new(ell, f, h)?);
        let mut i = 1;
        loop {
            if i == k {
                specs.sort_by(|a, b| a.subgroup.cmp(&b.subgroup));
                return Ok(specs);
            }
            c[i] += 1;
            if c[i] < ell {
                break;
            }
            c[i] = 1;
            i += 1;
        }
    }
}

/// All fields of exact conductor `f`.
pub fn fields_with_conductor(ell: u64, f: u64) -> Result<Vec<FieldSpec>> {
    let (wild, tame) = conductor_shape(ell, f)?;
    enumerate_fields(ell, &tame, wild)
}

/// Conductors `≤ bound` of cyclic degree-`ℓ` fields, increasing.
pub fn conductors_up_to(ell: u64, bound: u64) -> Result<Vec<u64>> {
    if !(ell > 2 && is_prime(ell)) {
        return Err(Error::NotOddPrime(ell));
    }
    Ok((2..=bound)
        .filter(|&f| conductor_shape(ell, f).is_ok())
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "T: IntScalar",
    deserialize = "T: IntScalar, <T as std::str::FromStr>::Err: std::fmt::Display"
))]
pub struct DiscRad<T: IntScalar> {
    #[serde(with = "crate::serde_dec")]
    pub disc: T,
    #[serde(with = "crate::serde_dec")]
    pub rad: T,
}

/// `rad = ℓ^δ·n_L` and `disc = n_L^{ℓ−1}·ℓ^{2δ(ℓ−1)}`, `δ` the wild indicator.
pub fn disc_rad<T: IntScalar>(spec: &FieldSpec) -> DiscRad<T> {
    let ell = T::from_u64_exact(spec.ell);
    let n = T::from_u64_exact(spec.n_l());
    let wild_part = if spec.wild() { ell.clone() } else { T::one() };
    let e = spec.ell as usize - 1;
    let disc = num_traits::pow(n.clone(), e) * num_traits::pow(wild_part.clone(), 2 * e);
    DiscRad {
        disc,
        rad: wild_part * n,
    }
}

/// The `ℓ` Gaussian periods `e_i = Σ_{h∈H} ζ_f^{h·g^{i−1}}`, so that
/// `e_{i+1} = σ_g(e_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "T: IntScalar",
    deserialize = "T: IntScalar, <T as std::str::FromStr>::Err: std::fmt::Display"
))]
pub struct PeriodBasis<T: IntScalar> {
    pub spec: FieldSpec,
    #[serde(with = "crate::serde_dec")]
    pub generator: u64,
    #[serde(with = "crate::serde_dec::vec")]
    pub representatives: Vec<u64>,
    pub elements: Vec<CycElem<T>>,
}

impl<T: IntScalar> PeriodBasis<T> {
    /// Periods ordered by the smallest unit outside `H`.
    pub fn new(spec: &FieldSpec) -> Self {
        let g = units(spec.conductor)
            .into_iter()
            .find(|&x| !spec.contains(x))
            .expect("H has index ell > 1");
        Self::with_generator(spec, g, 1).expect("valid generator")
    }

    /// Periods `Σ_{h∈H} ζ^{h·r·g^{i−1}}` for a chosen generator `g` of
    /// `(Z/f)*/H` and a unit `r` shifting every coset representative.
    pub fn with_generator(spec: &FieldSpec, g: u64, r: u64) -> Result<Self> {
        let f = spec.conductor;
        if gcd(g % f, f) != 1 || spec.contains(g) {
            return Err(Error::BadSubgroup(format!("{g} does not generate (Z/{f})*/H")));
        }
        if gcd(r % f, f) != 1 {
            return Err(Error::NotCoprime { a: r as i64, m: f });
        }
        let representatives: Vec<u64> = (0..spec.ell)
            .map(|i| mod_mul(r, mod_pow(g, i, f), f))
            .collect();
        let elements = representatives
            .iter()
            .map(|&rep| cyclotomic::gaussian_period_unchecked(f, &spec.subgroup, rep))
            .collect();
        Ok(PeriodBasis {
            spec: spec.clone(),
            generator: g,
            representatives,
            elements,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisKind {
    /// The `ℓ` conjugate periods (tame).
    NormalPeriod,
    /// `1, e_1, …, e_{ℓ−1}` (wild, `f = ℓ²`).
    WildPeriod,
    /// `e_i − e_{i+1}`, `i < ℓ` (tame trace-zero).
    PeriodDifference,
    /// `e_1, …, e_{ℓ−1}`, the integer kernel of the trace (wild trace-zero).
    Kernel,
}

/// Certified integral basis with its full trace Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "T: IntScalar",
    deserialize = "T: IntScalar, <T as std::str::FromStr>::Err: std::fmt::Display"
))]
pub struct IntegralBasis<T: IntScalar> {
    pub kind: BasisKind,
    pub periods: PeriodBasis<T>,
    pub elements: Vec<CycElem<T>>,
    pub gram: GramMatrix<T>,
}

impl<T: IntScalar> IntegralBasis<T> {
    /// Coordinates of `x` in this basis, if `x ∈ O_L`; solved by trace
    /// duality `G·c = (tr(x·b_i))_i`.
    pub fn coordinates(&self, x: &CycElem<T>) -> Option<Vec<T>> {
        let spec = &self.periods.spec;
        if x.modulus() != spec.conductor {
            return None;
        }
        let rhs: Vec<Ratio<T>> = self
            .elements
            .iter()
            .map(|b| subfield_trace_unchecked(&(x * b), spec))
            .collect();
        let inv = inverse_rational(self.gram.matrix()).ok()?;
        let coords: Option<Vec<T>> = inv
            .iter()
            .map(|row| {
                let v = row
                    .iter()
                    .zip(&rhs)
                    .fold(Ratio::from_integer(T::zero()), |acc, (a, b)| acc + a.clone() * b.clone());
                ratio_to_int(&v)
            })
            .collect();
        let coords = coords?;
        let rebuilt = self
            .elements
            .iter()
            .zip(&coords)
            .fold(CycElem::zero(spec.conductor), |acc, (b, c)| {
                &acc + &b.scale(&Ratio::from_integer(c.clone()))
            });
        (rebuilt == *x).then_some(coords)
    }
}

fn trace_gram<T: IntScalar>(spec: &FieldSpec, elems: &[CycElem<T>]) -> Result<GramMatrix<T>> {
    let n = elems.len();
    let mut g = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let t = subfield_trace_unchecked(&(&elems[i] * &elems[j]), spec);
            let t = ratio_to_int(&t).ok_or_else(|| {
                Error::CertificationFailed(format!("non-integral trace pairing for {spec}"))
            })?;
            g[(i, j)] = t.clone();
            g[(j, i)] = t;
        }
    }
    GramMatrix::new(g)
}

/// A certified integral basis of `O_L`.
pub fn integral_basis<T: IntScalar>(spec: &FieldSpec) -> Result<IntegralBasis<T>> {
    let periods = PeriodBasis::new(spec);
    integral_basis_from(periods)
}

/// Certifies an integral basis built on a given period ordering.
pub fn integral_basis_from<T: IntScalar>(periods: PeriodBasis<T>) -> Result<IntegralBasis<T>> {
    let spec = periods.spec.clone();
    let l = spec.ell as usize;
    let (kind, elements) = if !spec.wild() {
        (BasisKind::NormalPeriod, periods.elements.clone())
    } else if spec.n_l() == 1 {
        let mut v = vec![CycElem::one(spec.conductor)];
        v.extend(periods.elements[..l - 1].iter().cloned());
        (BasisKind::WildPeriod, v)
    } else {
        return Err(Error::WildCompositeUnsupported);
    };
    let gram = trace_gram(&spec, &elements)?;
    let disc = disc_rad::<T>(&spec).disc;
    let det = gram.det();
    if det != disc {
        return Err(Error::CertificationFailed(format!(
            "trace Gram determinant {det} differs from discriminant {disc} for {spec}"
        )));
    }
    log::debug!("certified integral basis for {spec}: det {det}");
    Ok(IntegralBasis {
        kind,
        periods,
        elements,
        gram,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "T: IntScalar",
    deserialize = "T: IntScalar, <T as std::str::FromStr>::Err: std::fmt::Display"
))]
pub struct Lagrangian<T: IntScalar> {
    pub holds: bool,
    /// `tr(e_1²)`.
    #[serde(with = "crate::serde_dec")]
    pub a: T,
    /// `tr(e_1 e_2)`, shared by all `tr(e_1 e_j)` when `holds`.
    #[serde(with = "crate::serde_dec")]
    pub b: T,
}

/// Whether `tr(e_1 e_j)` is independent of `j ≥ 2` on the period basis.
pub fn lagrangian_check<T: IntScalar>(spec: &FieldSpec) -> Result<Lagrangian<T>> {
    if spec.wild() {
        return Err(Error::InvalidConductor(
            spec.conductor,
            "needs a tame conductor".into(),
        ));
    }
    let basis = integral_basis::<T>(spec)?;
    Ok(lagrangian_of(&basis.gram))
}

fn lagrangian_of<T: IntScalar>(g: &GramMatrix<T>) -> Lagrangian<T> {
    let b = g[(0, 1)].clone();
    Lagrangian {
        holds: (2..g.rank()).all(|j| g[(0, j)] == b),
        a: g[(0, 0)].clone(),
        b,
    }
}

/// `(O⁰_L, tr(xy))` on an explicit basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "T: IntScalar",
    deserialize = "T: IntScalar, <T as std::str::FromStr>::Err: std::fmt::Display"
))]
pub struct TraceLattice<T: IntScalar> {
    pub spec: FieldSpec,
    pub basis: BasisKind,
    /// Columns: coordinates of the trace-zero basis in the integral basis.
    pub embedding: Matrix<T>,
    pub gram: GramMatrix<T>,
    pub rank: usize,
}

pub fn trace_zero_gram<T: IntScalar>(spec: &FieldSpec) -> Result<TraceLattice<T>> {
    trace_zero_from(&integral_basis(spec)?)
}

pub fn trace_zero_from<T: IntScalar>(ib: &IntegralBasis<T>) -> Result<TraceLattice<T>> {
    let spec = &ib.periods.spec;
    let l = spec.ell as usize;
    let (basis, c) = match ib.kind {
        BasisKind::NormalPeriod => {
            let lag = lagrangian_of(&ib.gram);
            if lag.a <= lag.b {
                return Err(Error::CertificationFailed(format!(
                    "tr(e1^2) = {} does not exceed tr(e1 e2) = {} for {spec}",
                    lag.a, lag.b
                )));
            }
            let c = Matrix::from_fn(l, l - 1, |i, j| {
                if i == j {
                    T::one()
                } else if i == j + 1 {
                    -T::one()
                } else {
                    T::zero()
                }
            });
            (BasisKind::PeriodDifference, c)
        }
        _ => {
            let traces: Vec<T> = ib
                .elements
                .iter()
                .map(|x| ratio_to_int(&subfield_trace_unchecked(x, spec)).expect("integral"))
                .collect();
            if !traces[1..].iter().all(Zero::is_zero) {
                return Err(Error::CertificationFailed(format!(
                    "wild periods are not trace zero for {spec}"
                )));
            }
            let c = Matrix::from_fn(l, l - 1, |i, j| if i == j + 1 { T::one() } else { T::zero() });
            (BasisKind::Kernel, c)
        }
    };
    let gram = ib.gram.transform(&c)?;
    gram.ensure_positive_definite()?;
    Ok(TraceLattice {
        spec: spec.clone(),
        basis,
        embedding: c,
        rank: l - 1,
        gram,
    })
}

/// Trace-zero Gram for an arbitrary certified basis, via the integer kernel
/// of the trace functional.
pub fn trace_zero_by_kernel<T: IntScalar>(ib: &IntegralBasis<T>) -> Result<TraceLattice<T>> {
    let spec = &ib.periods.spec;
    let traces: Vec<T> = ib
        .elements
        .iter()
        .map(|x| ratio_to_int(&subfield_trace_unchecked(x, spec)).expect("integral"))
        .collect();
    let row = Matrix::new(1, traces.len(), traces)?;
    let k = crate::exactlat::int_kernel(&row);
    let gram = ib.gram.transform(&k)?;
    Ok(TraceLattice {
        spec: spec.clone(),
        basis: BasisKind::Kernel,
        rank: k.cols(),
        embedding: k,
        gram,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlat::is_isometric;
    use num_bigint::BigInt;

    fn gram(rows: &[&[i64]]) -> GramMatrix<BigInt> {
        GramMatrix::from_i64_rows(rows).unwrap()
    }

    /// Subgroups of index `ℓ` by brute force over all subsets generated by
    /// pairs of units, with exact conductor checked via the kernel criterion.
    fn brute_force_count(ell: u64, f: u64) -> usize {
        let us = units(f);
        let mut found: Vec<Vec<u64>> = Vec::new();
        for &a in &us {
            for &b in &us {
                let mut h = std::collections::BTreeSet::from([1u64]);
                loop {
                    let before = h.len();
                    let cur: Vec<u64> = h.iter().copied().collect();
                    for x in cur {
                        h.insert(mod_mul(x, a, f));
                        h.insert(mod_mul(x, b, f));
                    }
                    if h.len() == before {
                        break;
                    }
                }
                // only ℓ-th powers and their subgroups can be index ℓ; filter
                let h: Vec<u64> = h.into_iter().collect();
                if h.len() as u64 * ell == arith::euler_phi(f) && !found.contains(&h) {
                    found.push(h);
                }
            }
        }
        found
            .into_iter()
            .filter(|h| FieldSpec::new(ell, f, h.clone()).is_ok())
            .count()
    }

    #[test]
    fn enumeration_counts() {
        let one = enumerate_fields(3, &[7], false).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].subgroup(), &[1, 6]);
        assert_eq!(enumerate_fields(3, &[7, 13], false).unwrap().len(), 2);
        assert_eq!(brute_force_count(3, 91), 2);
        assert_eq!(brute_force_count(3, 63), enumerate_fields(3, &[7], true).unwrap().len());
        assert_eq!(enumerate_fields(5, &[11, 31], false).unwrap().len(), 4);
        assert_eq!(enumerate_fields(5, &[7], false), Err(Error::BadPrime(7)));
        assert_eq!(enumerate_fields(4, &[5], false), Err(Error::NotOddPrime(4)));
        assert_eq!(enumerate_fields(3, &[], true).unwrap().len(), 1);
        assert!(enumerate_fields(3, &[], false).unwrap().is_empty());
    }

    #[test]
    fn spec_validation() {
        assert!(FieldSpec::new(3, 7, vec![6, 1]).is_ok());
        assert!(matches!(FieldSpec::new(3, 7, vec![1, 2, 4]), Err(Error::BadSubgroup(_))));
        assert_eq!(FieldSpec::new(5, 7, vec![1]), Err(Error::BadPrime(7)));
        // the cubic field of conductor 7 viewed inside Q(ζ_91)
        let h: Vec<u64> = units(91).into_iter().filter(|x| matches!(x % 7, 1 | 6)).collect();
        assert!(matches!(FieldSpec::new(3, 91, h), Err(Error::InvalidConductor(91, _))));
        let s = FieldSpec::new(5, 341, enumerate_fields(5, &[11, 31], false).unwrap()[0].subgroup().to_vec()).unwrap();
        assert_eq!(s.tame_primes(), vec![11, 31]);
        assert_eq!(s.n_l(), 341);
        assert!(!s.wild());
    }

    #[test]
    fn spec_json() {
        let s = fields_with_conductor(3, 9).unwrap().remove(0);
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"ell":"3","conductor":"9","subgroup":["1","8"]}"#);
        let back: FieldSpec = serde_json::from_str(r#"{"ell":3,"conductor":9,"subgroup":[8,1]}"#).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<FieldSpec>(r#"{"ell":5,"conductor":7,"subgroup":[1]}"#).is_err());
    }

    #[test]
    fn discriminants() {
        let d = |ell, f| disc_rad::<BigInt>(&fields_with_conductor(ell, f).unwrap()[0]);
        assert_eq!(d(3, 7), DiscRad { disc: 49.into(), rad: 7.into() });
        assert_eq!(d(5, 25), DiscRad { disc: BigInt::from(5).pow(8), rad: 5.into() });
        assert_eq!(d(5, 341), DiscRad { disc: BigInt::from(341).pow(4), rad: 341.into() });
    }

    /// Power sums of the roots of a monic cubic give the trace Gram of
    /// `1, η, η²` directly.
    fn power_basis_gram(p: &[i64]) -> GramMatrix<BigInt> {
        GramMatrix::new(Matrix::from_fn(3, 3, |i, j| BigInt::from(p[i + j]))).unwrap()
    }

    #[test]
    fn certified_bases() {
        let b7 = integral_basis::<BigInt>(&fields_with_conductor(3, 7).unwrap()[0]).unwrap();
        assert_eq!(b7.gram.det(), BigInt::from(49));
        // x³+x²−2x−1: p0..p4 = 3, −1, 5, −4, 13
        let oracle = power_basis_gram(&[3, -1, 5, -4, 13]);
        assert!(is_isometric(&b7.gram, &oracle).unwrap().is_some());

        let b9 = integral_basis::<BigInt>(&fields_with_conductor(3, 9).unwrap()[0]).unwrap();
        assert_eq!(b9.kind, BasisKind::WildPeriod);
        assert_eq!(b9.gram.det(), BigInt::from(81));
        // x³−3x+1: p0..p4 = 3, 0, 6, −3, 18
        assert!(is_isometric(&b9.gram, &power_basis_gram(&[3, 0, 6, -3, 18])).unwrap().is_some());

        let s = fields_with_conductor(5, 275).unwrap().remove(0);
        assert_eq!(integral_basis::<BigInt>(&s).unwrap_err(), Error::WildCompositeUnsupported);
    }

    #[test]
    fn wild_power_basis_is_not_maximal_beyond_three() {
        let s = fields_with_conductor(5, 25).unwrap().remove(0);
        let eta = PeriodBasis::<BigInt>::new(&s).elements[0].clone();
        let powers: Vec<CycElem<BigInt>> = (0..5).map(|k| eta.pow(k)).collect();
        let g = trace_gram(&s, &powers).unwrap();
        let disc = disc_rad::<BigInt>(&s).disc;
        assert_ne!(g.det(), disc);
        assert!((g.det() % &disc).is_zero());
    }

    #[test]
    fn coordinates_in_basis() {
        for (ell, f) in [(3, 7), (3, 9), (5, 25)] {
            let s = fields_with_conductor(ell, f).unwrap().remove(0);
            let ib = integral_basis::<BigInt>(&s).unwrap();
            let x = &(&ib.elements[1] * &ib.elements[2]) + &ib.elements[0];
            let c = ib.coordinates(&x).unwrap();
            let back = ib.elements.iter().zip(&c).fold(CycElem::zero(f), |acc, (b, k)| {
                &acc + &b.scale(&num_rational::Ratio::from_integer(k.clone()))
            });
            assert_eq!(back, x);
            assert!(ib.coordinates(&CycElem::zeta_pow(f, 1)).is_none());
        }
    }

    #[test]
    fn lagrangian_values() {
        for (ell, f, b) in [(3, 7, -2), (5, 11, -2), (7, 29, -4)] {
            let s = fields_with_conductor(ell, f).unwrap().remove(0);
            let lag = lagrangian_check::<BigInt>(&s).unwrap();
            assert!(lag.holds);
            assert_eq!(lag.b, BigInt::from(b));
            assert_eq!(lag.a, BigInt::from((1 + (ell as i64 - 1) * f as i64) / ell as i64));
        }
    }

    #[test]
    fn trace_zero_examples() {
        let tz = |ell, f| trace_zero_gram::<BigInt>(&fields_with_conductor(ell, f).unwrap()[0]).unwrap();
        assert_eq!(tz(3, 7).gram, gram(&[&[14, -7], &[-7, 14]]));
        assert_eq!(tz(3, 9).gram, gram(&[&[6, -3], &[-3, 6]]));
        let g11 = tz(5, 11).gram;
        let a4 = crate::ideallat::root_gram_an::<BigInt>(4).scale(&BigInt::from(11));
        assert_eq!(g11, a4);
    }

    #[test]
    fn trace_zero_determinants_and_divisibility() {
        for (ell, f) in [(3, 7), (3, 9), (3, 13), (3, 63), (5, 11), (5, 25), (7, 29), (7, 49)] {
            for s in fields_with_conductor(ell, f).unwrap() {
                if s.wild() && s.n_l() > 1 {
                    continue;
                }
                let dr = disc_rad::<BigInt>(&s);
                let tl = trace_zero_gram::<BigInt>(&s).unwrap();
                let l = BigInt::from(ell);
                let want = if s.wild() { &dr.disc / &l } else { &dr.disc * &l };
                assert_eq!(tl.gram.det(), want, "{s}");
                assert!(tl.gram.div_exact(&dr.rad).is_some());
                assert_eq!(tl.rank, ell as usize - 1);
            }
        }
    }

    #[test]
    fn kernel_path_agrees() {
        for (ell, f) in [(3, 7), (5, 25), (5, 11)] {
            let s = fields_with_conductor(ell, f).unwrap().remove(0);
            let ib = integral_basis::<BigInt>(&s).unwrap();
            let a = trace_zero_from(&ib).unwrap();
            let b = trace_zero_by_kernel(&ib).unwrap();
            assert!(is_isometric(&a.gram, &b.gram).unwrap().is_some());
        }
    }

    #[test]
    fn relabeling_and_generator_choice() {
        for (ell, f) in [(3, 13), (5, 31), (5, 25)] {
            let s = fields_with_conductor(ell, f).unwrap().remove(0);
            let base = trace_zero_gram::<BigInt>(&s).unwrap().gram;
            let g0 = PeriodBasis::<BigInt>::new(&s).generator;
            // cyclic relabeling: start the chain at the second period
            let shifted = PeriodBasis::<BigInt>::with_generator(&s, g0, g0).unwrap();
            // another generator of the quotient: g0², with a different coset shift
            let other = PeriodBasis::<BigInt>::with_generator(&s, mod_mul(g0, g0, f), mod_pow(g0, 3, f)).unwrap();
            for pb in [shifted, other] {
                let g = trace_zero_from(&integral_basis_from(pb).unwrap()).unwrap().gram;
                assert!(is_isometric(&base, &g).unwrap().is_some());
            }
        }
    }

    #[test]
    fn periods_form_a_galois_chain() {
        let s = fields_with_conductor(5, 11).unwrap().remove(0);
        let pb = PeriodBasis::<BigInt>::new(&s);
        for i in 0..4 {
            assert_eq!(pb.elements[i].galois_apply(pb.generator as i64).unwrap(), pb.elements[i + 1]);
        }
        for &h in s.subgroup() {
            assert!(pb.elements[0].is_fixed_by(h as i64).unwrap());
        }
        assert_eq!(
            cyclotomic::subfield_trace(&pb.elements[0], &s).unwrap(),
            num_rational::Ratio::from_integer(BigInt::from(-1))
        );
        let z = CycElem::<BigInt>::zeta_pow(11, 1);
        assert_eq!(cyclotomic::subfield_trace(&z, &s), Err(Error::NotInSubfield));
    }
}
