//! Ideal lattices over `Z[ζ_ℓ]`: the module `⟨1−ζ⟩^k` with pairing
//! `tr(β x ȳ)`, the special elements used to compare them, and explicit
//! embeddings `x ↦ γx` with index certificates.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, is_prime};
use crate::cyclotomic::{in_inverse_different, norm_and_unit, CycElem};
use crate::error::{Error, Result};
use crate::exactlat::{det_exact, elementary_divisors, GramMatrix, Matrix};
use crate::scalar::{ratio_to_int, IntScalar};

fn ensure_odd_prime(ell: u64) -> Result<()> {
    if ell > 2 && is_prime(ell) {
        Ok(())
    } else {
        Err(Error::NotOddPrime(ell))
    }
}

/// `⟨1−ζ_ℓ⟩^k` with pairing `tr(β x ȳ)`, on the basis `(1−ζ)^k ζ^i`,
/// `0 ≤ i ≤ ℓ−2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "T: IntScalar",
    deserialize = "T: IntScalar, <T as std::str::FromStr>::Err: std::fmt::Display"
))]
pub struct IdealLatticeSpec<T: IntScalar> {
    #[serde(with = "crate::serde_dec")]
    pub ell: u64,
    pub k: u32,
    pub beta: CycElem<T>,
}

impl<T: IntScalar> IdealLatticeSpec<T> {
    pub fn new(ell: u64, k: u32, beta: CycElem<T>) -> Result<Self> {
        ensure_odd_prime(ell)?;
        if beta.modulus() != ell {
            return Err(Error::ModulusMismatch(beta.modulus(), ell));
        }
        if !beta.is_totally_real() {
            return Err(Error::NotTotallyReal);
        }
        Ok(IdealLatticeSpec { ell, k, beta })
    }

    pub fn rank(&self) -> usize {
        self.ell as usize - 1
    }

    /// `(1−ζ)^k`.
    pub fn generator(&self) -> CycElem<T> {
        CycElem::from_terms(self.ell, &[(0, 1), (1, -1)]).pow(self.k)
    }

    pub fn basis(&self) -> Vec<CycElem<T>> {
        let g = self.generator();
        (0..self.rank() as i64)
            .map(|i| &g * &CycElem::zeta_pow(self.ell, i))
            .collect()
    }

    /// `β·(1−ζ)^k·(1−ζ̄)^k`; the Gram is integral iff this lies in the
    /// inverse different.
    pub fn effective_beta(&self) -> CycElem<T> {
        let g = self.generator();
        &(&self.beta * &g) * &g.conj()
    }
}

/// Gram matrix of `tr(β x ȳ)` on the spec's basis.
pub fn ideal_lattice_gram<T: IntScalar>(spec: &IdealLatticeSpec<T>) -> Result<GramMatrix<T>> {
    if !spec.beta.is_totally_real() {
        return Err(Error::NotTotallyReal);
    }
    let basis = spec.basis();
    let conj: Vec<CycElem<T>> = basis.iter().map(CycElem::conj).collect();
    let n = spec.rank();
    let mut g = Matrix::zeros(n, n);
    for i in 0..n {
        let bx = &spec.beta * &basis[i];
        for j in i..n {
            let t = (&bx * &conj[j]).trace_q();
            let t = ratio_to_int(&t).ok_or_else(|| {
                Error::NotIntegral(format!("tr(beta x conj(y)) = {t} is not an integer"))
            })?;
            g[(i, j)] = t.clone();
            g[(j, i)] = t;
        }
    }
    GramMatrix::new(g)
}

pub fn root_gram_an<T: IntScalar>(n: usize) -> GramMatrix<T> {
    let m = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            T::from_i64_exact(2)
        } else if i.abs_diff(j) == 1 {
            T::from_i64_exact(-1)
        } else {
            T::zero()
        }
    });
    GramMatrix::new(m).expect("symmetric")
}

/// `ℓI − J` in dimension `ℓ−1`.
pub fn wild_shape_gram<T: IntScalar>(ell: u64) -> GramMatrix<T> {
    let n = ell as usize - 1;
    let l = T::from_u64_exact(ell);
    GramMatrix::new(Matrix::from_fn(n, n, |i, j| {
        if i == j {
            l.clone() - T::one()
        } else {
            -T::one()
        }
    }))
    .expect("symmetric")
}

/// Craig's lattice: `⟨1−ζ⟩^k` with pairing `tr(x ȳ / ℓ)`.
pub fn craig_gram<T: IntScalar>(ell: u64, k: u32) -> Result<GramMatrix<T>> {
    ensure_odd_prime(ell)?;
    if k == 0 || k as u64 >= ell {
        return Err(Error::Dimension(format!("k must lie in 1..={}", ell - 1)));
    }
    let beta = CycElem::constant(ell, Ratio::new(T::one(), T::from_u64_exact(ell)));
    ideal_lattice_gram(&IdealLatticeSpec::new(ell, k, beta)?)
}

/// `(ζ − ζ⁻¹)`.
fn zeta_difference<T: IntScalar>(ell: u64) -> CycElem<T> {
    CycElem::from_terms(ell, &[(1, 1), (-1, -1)])
}

/// The model form `μ = (m/ℓ)(ζ−ζ⁻¹)^{2(ℓ−1)}` on `Z[ζ_ℓ]`.
pub fn conner_perlis_gram<T: IntScalar>(ell: u64, m: u64) -> Result<GramMatrix<T>> {
    ensure_odd_prime(ell)?;
    if m == 0 {
        return Err(Error::BadPrime(0));
    }
    for (p, e) in factorize(m) {
        if e > 1 || p % ell != 1 {
            return Err(Error::BadPrime(p));
        }
    }
    let mu = zeta_difference::<T>(ell)
        .pow(2 * (ell as u32 - 1))
        .scale(&Ratio::new(T::from_u64_exact(m), T::from_u64_exact(ell)));
    ideal_lattice_gram(&IdealLatticeSpec::new(ell, 0, mu)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "T: IntScalar",
    deserialize = "T: IntScalar, <T as std::str::FromStr>::Err: std::fmt::Display"
))]
pub struct SpecialElements<T: IntScalar> {
    pub alpha: CycElem<T>,
    pub beta: CycElem<T>,
    pub delta: CycElem<T>,
    pub gamma: CycElem<T>,
    pub eta0: CycElem<T>,
    pub eta: CycElem<T>,
}

impl<T: IntScalar> SpecialElements<T> {
    /// `η/γ`, which carries `I_α` into `I_δ` since `α/δ = (η/γ)·conj(η/γ)`.
    pub fn alpha_to_delta(&self) -> CycElem<T> {
        self.eta.checked_div(&self.gamma).expect("gamma is a unit")
    }
}

/// Builds `α, β, δ, γ, η₀, η` for `ℓ` and checks every identity they are
/// used for.
pub fn special_elements<T: IntScalar>(ell: u64) -> Result<SpecialElements<T>> {
    ensure_odd_prime(ell)?;
    let l = T::from_u64_exact(ell);
    let inv_l = Ratio::new(T::one(), l.clone());
    let d = zeta_difference::<T>(ell);
    let half = (ell as i64 + 1) / 2;

    let alpha = d.pow(2 * (ell as u32 - 1)).scale(&(inv_l.clone() * inv_l.clone()));
    let beta = CycElem::from_terms(ell, &[(0, 2), (2, -1), (-2, -1)]).scale(&inv_l);
    let delta = CycElem::from_terms(ell, &[(0, 2), (1, -1), (-1, -1)]).scale(&inv_l);
    let gamma = CycElem::from_terms(ell, &[(half, 1), (-half, -1)]).checked_div(&d)?;
    let eta0 = (1..=(ell as i64 - 1) / 2).fold(CycElem::one(ell), |acc, a| {
        &acc * &CycElem::from_terms(ell, &[(0, 1), (a, -1)])
    });
    let eta = d.pow(ell as u32 - 2).checked_div(&eta0)?;

    let fail = |what: &str| Err(Error::CertificationFailed(format!("{what} (ell = {ell})")));
    for (name, x) in [("gamma", &gamma), ("eta0", &eta0), ("eta", &eta)] {
        if !x.is_integral() {
            return fail(&format!("{name} is not integral"));
        }
    }
    for (name, x) in [("alpha", &alpha), ("beta", &beta), ("delta", &delta)] {
        if !x.is_totally_real() || !in_inverse_different(x) {
            return fail(&format!("{name} is not a totally real element of the inverse different"));
        }
    }
    if !alpha.is_integral() {
        return fail("alpha is not integral");
    }
    if !norm_and_unit(&gamma)?.is_unit {
        return fail("gamma is not a unit");
    }
    if &eta0 * &eta0.conj() != CycElem::from_int(ell, l) {
        return fail("eta0 * conj(eta0) != ell");
    }
    if delta.checked_div(&beta)? != &gamma * &gamma.conj() {
        return fail("delta / beta != gamma * conj(gamma)");
    }
    if alpha.checked_div(&beta)? != &eta * &eta.conj() {
        return fail("alpha / beta != eta * conj(eta)");
    }
    Ok(SpecialElements {
        alpha,
        beta,
        delta,
        gamma,
        eta0,
        eta,
    })
}

/// `x ↦ γx` from a source ideal lattice into a target one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "T: IntScalar",
    deserialize = "T: IntScalar, <T as std::str::FromStr>::Err: std::fmt::Display"
))]
pub struct EmbeddingCertificate<T: IntScalar> {
    pub multiplier: CycElem<T>,
    /// Column `j`: target coordinates of `γ·(source basis vector j)`.
    pub matrix: Matrix<T>,
    #[serde(with = "crate::serde_dec")]
    pub index: T,
    pub isometric_onto: bool,
}

impl<T: IntScalar> EmbeddingCertificate<T> {
    /// `MᵀG_tM = G_s` and `index²·det G_t = det G_s`.
    pub fn verify(&self, source: &GramMatrix<T>, target: &GramMatrix<T>) -> bool {
        target.transform(&self.matrix).map_or(false, |g| &g == source)
            && self.index.clone() * self.index.clone() * target.det() == source.det()
            && self.isometric_onto == self.index.is_one()
    }
}

pub fn build_embedding<T: IntScalar>(
    source: &IdealLatticeSpec<T>,
    target: &IdealLatticeSpec<T>,
    multiplier: &CycElem<T>,
) -> Result<EmbeddingCertificate<T>> {
    if source.ell != target.ell {
        return Err(Error::ModulusMismatch(source.ell, target.ell));
    }
    let ell = source.ell;
    if multiplier.modulus() != ell {
        return Err(Error::ModulusMismatch(multiplier.modulus(), ell));
    }
    if multiplier.is_zero() {
        return Err(Error::DivisionByZero);
    }
    // source pairing must equal the target pairing pulled back along γ
    let pulled = &(&target.beta * multiplier) * &multiplier.conj();
    if pulled != source.beta {
        return Err(Error::NotAMorphism);
    }
    let tgen = target.generator();
    let n = source.rank();
    let mut columns = Vec::with_capacity(n);
    for b in source.basis() {
        let z = (multiplier * &b).checked_div(&tgen)?;
        let coords = z.integral_coordinates().ok_or(Error::NotInTarget)?;
        columns.push(coords);
    }
    let matrix = Matrix::from_columns(n, &columns)?;
    let gs = ideal_lattice_gram(source)?;
    let gt = ideal_lattice_gram(target)?;
    if gt.transform(&matrix)? != gs {
        return Err(Error::NotAMorphism);
    }
    let index: T = elementary_divisors(&matrix)
        .into_iter()
        .fold(T::one(), |acc, d| acc * d);
    if index.is_zero() || det_exact(&matrix)?.abs() != index {
        return Err(Error::CertificationFailed("embedding index disagrees with |det|".into()));
    }
    if index.clone() * index.clone() * gt.det() != gs.det() {
        return Err(Error::CertificationFailed(
            "embedding index does not match the determinant ratio".into(),
        ));
    }
    Ok(EmbeddingCertificate {
        multiplier: multiplier.clone(),
        isometric_onto: index.is_one(),
        matrix,
        index,
    })
}

/// The certified embedding `I_α → I_δ` via `η/γ`.
pub fn alpha_delta_embedding<T: IntScalar>(ell: u64) -> Result<EmbeddingCertificate<T>> {
    let se = special_elements::<T>(ell)?;
    let src = IdealLatticeSpec::new(ell, 0, se.alpha.clone())?;
    let tgt = IdealLatticeSpec::new(ell, 0, se.delta.clone())?;
    build_embedding(&src, &tgt, &se.alpha_to_delta())
}
