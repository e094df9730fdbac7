//! Shapes of cyclic degree-`ℓ` fields.
//!
//! The trace-zero form `q_L` is divided by the radical discriminant; the
//! result is read as the doubled Gram matrix of the shape `Q_L`, so every
//! comparison happens between integer matrices and is backed by a witness.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlat::{
    column_basis, det_exact, hnf, int_kernel, is_isometric, same_column_lattice, GramMatrix,
    IsometryWitness, Matrix, QuadForm,
};
use crate::fieldkit::{
    conductors_up_to, disc_rad, fields_with_conductor, integral_basis, trace_zero_from, FieldSpec,
};
use crate::ideallat::{
    alpha_delta_embedding, conner_perlis_gram, ideal_lattice_gram, root_gram_an,
    special_elements, wild_shape_gram, EmbeddingCertificate, IdealLatticeSpec,
};
use crate::cyclotomic::{subfield_trace_unchecked, CycElem};
use crate::scalar::{ratio_to_int, IntScalar};

macro_rules! serde_bound {
    ($item:item) => {
        #[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
        #[serde(bound(
            serialize = "T: IntScalar",
            deserialize = "T: IntScalar, <T as std::str::FromStr>::Err: std::fmt::Display"
        ))]
        $item
    };
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SourcePath {
    /// Trace form computed on a certified integral basis.
    Direct,
    /// Trace form taken from the ideal-lattice model `(m_L/ℓ)(ζ−ζ⁻¹)^{2(ℓ−1)}`.
    ConnerPerlis,
}

/// `shape_matches_expected` and `embedding_ok` stay false until
/// [`verify_main_theorem`] has produced witnesses for them.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub integral_after_rad: bool,
    pub even: bool,
    pub primitive: bool,
    pub det_ok: bool,
    pub shape_matches_expected: bool,
    pub embedding_ok: bool,
    /// Direct and model trace forms agree (true when only one is available).
    pub model_consistent: bool,
}

impl Verdicts {
    pub fn all(&self) -> bool {
        self.integral_after_rad
            && self.even
            && self.primitive
            && self.det_ok
            && self.shape_matches_expected
            && self.embedding_ok
            && self.model_consistent
    }
}

serde_bound! {
/// `Mᵀ·A_{ℓ−1}·M = gram_scaled`.
pub struct ShapeEmbedding<T: IntScalar> {
    pub matrix: Matrix<T>,
    #[serde(with = "crate::serde_dec")]
    pub index: T,
    /// The ideal-lattice step `I_α → I_δ` (wild fields only).
    pub ideal_step: Option<EmbeddingCertificate<T>>,
}
}

serde_bound! {
pub struct Witnesses<T: IntScalar> {
    /// `Uᵀ·expected·U = gram_scaled`.
    pub shape: Option<IsometryWitness<T>>,
    pub embedding: Option<ShapeEmbedding<T>>,
    /// `Uᵀ·model·U = gram_qL`, direct trace form against the model.
    pub model: Option<IsometryWitness<T>>,
}
}

impl<T: IntScalar> Default for Witnesses<T> {
    fn default() -> Self {
        Witnesses {
            shape: None,
            embedding: None,
            model: None,
        }
    }
}

serde_bound! {
pub struct ShapeReport<T: IntScalar> {
    pub spec: FieldSpec,
    #[serde(with = "crate::serde_dec")]
    pub disc: T,
    #[serde(with = "crate::serde_dec")]
    pub rad: T,
    pub gram_ql: GramMatrix<T>,
    pub gram_scaled: GramMatrix<T>,
    #[serde(with = "crate::serde_dec")]
    pub det_scaled: T,
    pub shape: QuadForm<T>,
    pub verdicts: Verdicts,
    pub witnesses: Witnesses<T>,
    pub source_path: SourcePath,
    pub notes: Vec<String>,
}
}

impl<T: IntScalar> ShapeReport<T> {
    pub fn embedding_index(&self) -> Option<&T> {
        self.witnesses.embedding.as_ref().map(|e| &e.index)
    }
}

/// `ℓ` for tame fields, `ℓ^{ℓ−2}` for wild ones.
pub fn expected_det<T: IntScalar>(ell: u64, wild: bool) -> T {
    let l = T::from_u64_exact(ell);
    if wild {
        num_traits::pow(l, ell as usize - 2)
    } else {
        l
    }
}

/// `ℓ^{(ℓ−3)/2}` for wild fields, 1 for tame ones.
pub fn expected_index<T: IntScalar>(ell: u64, wild: bool) -> T {
    if wild {
        num_traits::pow(T::from_u64_exact(ell), (ell as usize - 3) / 2)
    } else {
        T::one()
    }
}

/// The expected shape and its doubled Gram: `A_{ℓ−1}` (tame) or `ℓI−J` (wild).
pub fn expected_shape<T: IntScalar>(ell: u64, wild: bool) -> Result<(QuadForm<T>, GramMatrix<T>)> {
    if !(ell > 2 && crate::arith::is_prime(ell)) {
        return Err(Error::NotOddPrime(ell));
    }
    let g = if wild {
        wild_shape_gram(ell)
    } else {
        root_gram_an(ell as usize - 1)
    };
    Ok((QuadForm::from_doubled_gram(&g)?, g))
}

fn verified_isometry<T: IntScalar>(
    a: &GramMatrix<T>,
    b: &GramMatrix<T>,
) -> Result<Option<IsometryWitness<T>>> {
    Ok(is_isometric(a, b)?.filter(|w| w.verify(a, b)))
}

/// `q_L`, `q_L / rad` and the structural checks on them.
pub fn shape_of<T: IntScalar>(spec: &FieldSpec) -> Result<ShapeReport<T>> {
    let ell = spec.ell();
    let wild = spec.wild();
    let dr = disc_rad::<T>(spec);
    let mut notes = Vec::new();
    let mut witnesses = Witnesses::default();
    let mut model_consistent = true;

    let (gram_ql, source_path) = if wild && spec.n_l() > 1 {
        notes.push(format!(
            "wild composite conductor: trace form taken from the ideal-lattice model with m_L = {}",
            spec.m_l()
        ));
        (conner_perlis_gram(ell, spec.m_l())?, SourcePath::ConnerPerlis)
    } else {
        let ib = integral_basis::<T>(spec)?;
        let g = trace_zero_from(&ib)?.gram;
        if wild {
            let model = conner_perlis_gram::<T>(ell, 1)?;
            witnesses.model = verified_isometry(&model, &g)?;
            model_consistent = witnesses.model.is_some();
            if !model_consistent {
                notes.push("direct trace form is not isometric to the model form".into());
            }
        }
        (g, SourcePath::Direct)
    };

    let l = T::from_u64_exact(ell);
    let det_ql = gram_ql.det();
    let want_det_ql = if wild {
        dr.disc.clone() / l.clone()
    } else {
        dr.disc.clone() * l.clone()
    };

    let (gram_scaled, integral_after_rad) = match gram_ql.div_exact(&dr.rad) {
        Some(g) => (g, true),
        None => {
            notes.push("rad does not divide every entry of q_L; shape left unscaled".into());
            (gram_ql.clone(), false)
        }
    };
    let even = gram_scaled.is_even();
    let shape = if even {
        QuadForm::from_doubled_gram(&gram_scaled)?
    } else {
        notes.push("scaled Gram has an odd diagonal; shape is the primitive form of q_L".into());
        QuadForm::primitive_of_gram(&gram_ql).0
    };
    let det_scaled = gram_scaled.det();
    let det_ok = det_scaled == expected_det(ell, wild) && det_ql == want_det_ql;
    if det_ql != want_det_ql {
        notes.push(format!("det q_L = {det_ql}, expected {want_det_ql}"));
    }

    Ok(ShapeReport {
        spec: spec.clone(),
        disc: dr.disc,
        rad: dr.rad,
        verdicts: Verdicts {
            integral_after_rad,
            even,
            primitive: shape.is_primitive(),
            det_ok,
            shape_matches_expected: false,
            embedding_ok: false,
            model_consistent,
        },
        gram_ql,
        gram_scaled,
        det_scaled,
        shape,
        witnesses,
        source_path,
        notes,
    })
}

/// Shape report with the expected-shape isometry and the embedding into
/// `A_{ℓ−1}` witnessed.
pub fn verify_main_theorem<T: IntScalar>(spec: &FieldSpec) -> Result<ShapeReport<T>> {
    let mut report = shape_of::<T>(spec)?;
    let ell = spec.ell();
    let wild = spec.wild();
    let s = report.gram_scaled.clone();
    let (_, expected) = expected_shape::<T>(ell, wild)?;

    let shape_w = verified_isometry(&expected, &s)?;
    report.verdicts.shape_matches_expected = shape_w.is_some();
    report.witnesses.shape = shape_w.clone();

    let a = root_gram_an::<T>(ell as usize - 1);
    let embedding = if !wild {
        // expected is A_{ℓ−1} itself
        shape_w.map(|w| ShapeEmbedding {
            index: det_exact(&w.matrix).expect("square").abs(),
            matrix: w.matrix,
            ideal_step: None,
        })
    } else {
        wild_embedding_chain(ell, &s)?
    };
    report.verdicts.embedding_ok = match &embedding {
        Some(e) => {
            a.transform(&e.matrix)? == s && e.index == expected_index(ell, wild)
        }
        None => false,
    };
    if let Some(e) = &embedding {
        log::info!("{spec}: embedding index {}", e.index);
    }
    report.witnesses.embedding = embedding;
    Ok(report)
}

/// `M = U₂·E·U₁` with `U₁ : I_α ≅ S`, `E : I_α ↪ I_δ`, `U₂ : A_{ℓ−1} ≅ I_δ`.
fn wild_embedding_chain<T: IntScalar>(
    ell: u64,
    s: &GramMatrix<T>,
) -> Result<Option<ShapeEmbedding<T>>> {
    let se = special_elements::<T>(ell)?;
    let g_alpha = ideal_lattice_gram(&IdealLatticeSpec::new(ell, 0, se.alpha)?)?;
    let g_delta = ideal_lattice_gram(&IdealLatticeSpec::new(ell, 0, se.delta)?)?;
    let a = root_gram_an::<T>(ell as usize - 1);
    let Some(u1) = verified_isometry(&g_alpha, s)? else {
        return Ok(None);
    };
    let Some(u2) = verified_isometry(&a, &g_delta)? else {
        return Ok(None);
    };
    let cert = alpha_delta_embedding::<T>(ell)?;
    let m = u2.matrix.mul(&cert.matrix)?.mul(&u1.matrix)?;
    let index = det_exact(&m)?.abs();
    Ok(Some(ShapeEmbedding {
        matrix: m,
        index,
        ideal_step: Some(cert),
    }))
}

serde_bound! {
pub struct BsComparison<T: IntScalar> {
    /// Trace form on `{x ∈ Z + ℓO_L : tr x = 0}`.
    pub bs_gram: GramMatrix<T>,
    pub equals_ell_times_o0: bool,
    pub bs_shape: QuadForm<T>,
    pub shapes_equivalent: bool,
    pub witness: Option<IsometryWitness<T>>,
}
}

/// Compares the trace-zero part of `Z + ℓO_L` with `ℓO⁰_L` and its shape
/// with `Q_L`.
pub fn bs_compare<T: IntScalar>(spec: &FieldSpec) -> Result<BsComparison<T>> {
    let ib = integral_basis::<T>(spec)?;
    let tz = trace_zero_from(&ib)?;
    let l = spec.ell() as usize;
    let ell = T::from_u64_exact(spec.ell());
    let one = ib
        .coordinates(&CycElem::one(spec.conductor()))
        .ok_or_else(|| Error::CertificationFailed("1 is not in the integral basis span".into()))?;

    let mut gens = Matrix::from_columns(l, &[one])?;
    gens = gens.hstack(&Matrix::identity(l).scale(&ell))?;
    let sub = column_basis(&hnf(&gens).0);

    let traces: Vec<T> = ib
        .elements
        .iter()
        .map(|x| ratio_to_int(&subfield_trace_unchecked(x, spec)).expect("integral trace"))
        .collect();
    let tr_row = Matrix::new(1, l, traces)?.mul(&sub)?;
    let b = sub.mul(&int_kernel(&tr_row))?;
    let bs_gram = ib.gram.transform(&b)?;
    let equals_ell_times_o0 = same_column_lattice(&b, &tz.embedding.scale(&ell));

    let (bs_shape, _) = QuadForm::primitive_of_gram(&bs_gram);
    let ql = shape_of::<T>(spec)?.shape;
    let witness = verified_isometry(&ql.doubled_gram(), &bs_shape.doubled_gram())?;
    Ok(BsComparison {
        bs_gram,
        equals_ell_times_o0,
        bs_shape,
        shapes_equivalent: witness.is_some(),
        witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    #[serde(with = "crate::serde_dec")]
    pub ell: u64,
    #[serde(with = "crate::serde_dec")]
    pub max_conductor: u64,
    #[serde(with = "crate::serde_dec")]
    pub fields: u64,
    pub all_verified: bool,
    /// Every tame `gram_scaled` is isometric to the first tame one
    /// (hence pairwise); `None` when there is no tame field.
    pub tame_isometric: Option<bool>,
    pub wild_isometric: Option<bool>,
}

serde_bound! {
pub struct ScanOutcome<T: IntScalar> {
    pub reports: Vec<ShapeReport<T>>,
    pub summary: ScanSummary,
}
}

/// All fields with conductor `≤ max_conductor`, ordered by conductor then
/// subgroup.
pub fn scan_specs(ell: u64, max_conductor: u64) -> Result<Vec<FieldSpec>> {
    let mut specs = Vec::new();
    for f in conductors_up_to(ell, max_conductor)? {
        specs.extend(fields_with_conductor(ell, f)?);
    }
    Ok(specs)
}

pub fn scan<T: IntScalar>(ell: u64, max_conductor: u64, jobs: usize) -> Result<ScanOutcome<T>> {
    let specs = scan_specs(ell, max_conductor)?;
    log::info!("scanning {} fields of degree {ell} up to conductor {max_conductor}", specs.len());
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Dimension(format!("thread pool: {e}")))?;
    let reports: Vec<ShapeReport<T>> = pool.install(|| {
        specs
            .par_iter()
            .map(verify_main_theorem::<T>)
            .collect::<Result<Vec<_>>>()
    })?;

    let class_check = |wild: bool| -> Result<Option<bool>> {
        let mut group = reports.iter().filter(|r| r.spec.wild() == wild);
        let Some(first) = group.next() else {
            return Ok(None);
        };
        for r in group {
            if verified_isometry(&first.gram_scaled, &r.gram_scaled)?.is_none() {
                return Ok(Some(false));
            }
        }
        Ok(Some(true))
    };
    let summary = ScanSummary {
        ell,
        max_conductor,
        fields: reports.len() as u64,
        all_verified: reports.iter().all(|r| r.verdicts.all()),
        tame_isometric: class_check(false)?,
        wild_isometric: class_check(true)?,
    };
    Ok(ScanOutcome { reports, summary })
}

/// One flat CSV record; summary rows leave the per-field columns empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsvRow {
    pub kind: String,
    pub ell: String,
    pub conductor: String,
    pub subgroup: String,
    pub wild: String,
    pub disc: String,
    pub rad: String,
    pub det_scaled: String,
    pub integral_after_rad: String,
    pub even: String,
    pub primitive: String,
    pub det_ok: String,
    pub shape_matches_expected: String,
    pub embedding_ok: String,
    pub model_consistent: String,
    pub embedding_index: String,
    pub all_verified: String,
}

impl CsvRow {
    pub fn from_report<T: IntScalar>(r: &ShapeReport<T>) -> Self {
        let v = &r.verdicts;
        CsvRow {
            kind: "field".into(),
            ell: r.spec.ell().to_string(),
            conductor: r.spec.conductor().to_string(),
            subgroup: r
                .spec
                .subgroup()
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(" "),
            wild: r.spec.wild().to_string(),
            disc: r.disc.to_string(),
            rad: r.rad.to_string(),
            det_scaled: r.det_scaled.to_string(),
            integral_after_rad: v.integral_after_rad.to_string(),
            even: v.even.to_string(),
            primitive: v.primitive.to_string(),
            det_ok: v.det_ok.to_string(),
            shape_matches_expected: v.shape_matches_expected.to_string(),
            embedding_ok: v.embedding_ok.to_string(),
            model_consistent: v.model_consistent.to_string(),
            embedding_index: r.embedding_index().map(ToString::to_string).unwrap_or_default(),
            all_verified: v.all().to_string(),
        }
    }

    pub fn from_summary(s: &ScanSummary) -> Self {
        let opt = |b: Option<bool>| b.map(|b| b.to_string()).unwrap_or_default();
        CsvRow {
            kind: "summary".into(),
            ell: s.ell.to_string(),
            conductor: s.max_conductor.to_string(),
            subgroup: format!("fields={}", s.fields),
            shape_matches_expected: format!(
                "tame_isometric={} wild_isometric={}",
                opt(s.tame_isometric),
                opt(s.wild_isometric)
            ),
            all_verified: s.all_verified.to_string(),
            ..Default::default()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::One;

    fn spec(ell: u64, f: u64) -> FieldSpec {
        fields_with_conductor(ell, f).unwrap().remove(0)
    }

    #[test]
    fn cubic_shape() {
        let r = verify_main_theorem::<BigInt>(&spec(3, 7)).unwrap();
        assert_eq!(r.shape.to_string(), "x^2 - x*y + y^2");
        assert_eq!(r.det_scaled, BigInt::from(3));
        assert!(r.verdicts.all(), "{:?}", r.verdicts);
    }

    #[test]
    fn quintic_shapes() {
        let wild = verify_main_theorem::<BigInt>(&spec(5, 25)).unwrap();
        assert!(wild.verdicts.all(), "{:?} {:?}", wild.verdicts, wild.notes);
        assert_eq!(wild.embedding_index(), Some(&BigInt::from(5)));
        assert_eq!(wild.det_scaled, BigInt::from(125));
        let tame = verify_main_theorem::<BigInt>(&spec(5, 11)).unwrap();
        assert_eq!(tame.gram_scaled, root_gram_an(4));
        assert!(tame.verdicts.all());
        assert_eq!(tame.embedding_index(), Some(&BigInt::one()));
    }

    #[test]
    fn expected_shapes() {
        let (q3, _) = expected_shape::<BigInt>(3, false).unwrap();
        assert_eq!(q3.to_string(), "x^2 - x*y + y^2");
        assert_eq!(expected_shape::<BigInt>(3, true).unwrap().0, q3);
        let (q5, g5) = expected_shape::<BigInt>(5, true).unwrap();
        assert_eq!(g5.det(), BigInt::from(125));
        assert_eq!(q5.coefficient(0, 0), &BigInt::from(2));
        assert_eq!(q5.coefficient(0, 3), &BigInt::from(-1));
    }

    #[test]
    fn model_path_for_composite_wild() {
        let r = verify_main_theorem::<BigInt>(&spec(5, 275)).unwrap();
        assert_eq!(r.source_path, SourcePath::ConnerPerlis);
        assert!(r.verdicts.all());
    }

    #[test]
    fn bs_examples() {
        let c9 = bs_compare::<BigInt>(&spec(3, 9)).unwrap();
        assert!(c9.equals_ell_times_o0 && c9.shapes_equivalent);
        assert!(bs_compare::<BigInt>(&spec(3, 7)).unwrap().shapes_equivalent);
        assert!(!bs_compare::<BigInt>(&spec(5, 11)).unwrap().shapes_equivalent);
        assert_eq!(
            bs_compare::<BigInt>(&spec(5, 275)).unwrap_err(),
            Error::WildCompositeUnsupported
        );
    }

    #[test]
    fn scans() {
        let s = scan::<BigInt>(3, 20, 2).unwrap();
        let fs: Vec<u64> = s.reports.iter().map(|r| r.spec.conductor()).collect();
        assert_eq!(fs, vec![7, 9, 13, 19]);
        assert!(s.summary.all_verified);
        assert_eq!(s.summary.tame_isometric, Some(true));
        let fs: Vec<u64> = scan_specs(5, 40).unwrap().iter().map(FieldSpec::conductor).collect();
        assert_eq!(fs, vec![11, 25, 31]);
        assert!(scan::<BigInt>(3, 6, 1).unwrap().reports.is_empty());
    }

    #[test]
    fn report_json_round_trip() {
        let r = verify_main_theorem::<BigInt>(&spec(3, 9)).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        let back: ShapeReport<BigInt> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
