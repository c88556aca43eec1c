//! Classification of objects by their derived endomorphism algebra, the
//! asphericality triangle `F → ω(F) → Q_F`, twist functors with their left
//! adjoints, and the spherical-subcategory membership oracle `⊥Q_F`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::complex::{cone, ChainMap, PerfectComplex, PolyMatrix};
use crate::exact::{
    split_two_dimensional_algebra, Matrix, MultTable2, Scalar, SplitOutcome,
};
use crate::hom::{
    functional_making_blocks_nonsingular, hom, pairing_blocks, serre, GradedHomSpace,
};
use crate::{Error, Result};

/// Flavor of the two-dimensional degree-zero endomorphism algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Flavor {
    /// Only meaningful for d = 0; for d ≠ 0 the grading already separates
    /// the two dimensions.
    NotApplicable,
    Nilpotent,
    Disconnected,
    /// The quadratic splits over an extension field only; diagnostic, not
    /// an error at classification time.
    IrreducibleQuadratic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Zero,
    Exceptional,
    Spherelike { d: i32, flavor: Flavor },
    Other,
}

impl Classification {
    pub fn describe(&self) -> String {
        match self {
            Classification::Zero => "zero".into(),
            Classification::Exceptional => "exceptional".into(),
            Classification::Spherelike { d, flavor } => {
                let fl = match flavor {
                    Flavor::NotApplicable => String::new(),
                    Flavor::Nilpotent => ", nilpotent".into(),
                    Flavor::Disconnected => ", disconnected".into(),
                    Flavor::IrreducibleQuadratic => ", irreducible-quadratic".into(),
                };
                format!("{}-spherelike{}", d, fl)
            }
            Classification::Other => "other".into(),
        }
    }
}

/// Classification verdict plus the endomorphism dimension table.
#[derive(Debug, Clone)]
pub struct SphereReport {
    pub classification: Classification,
    pub hom_dims: BTreeMap<i32, usize>,
}

/// Classify an object by the dimension table of `Hom•(F,F)`.
pub fn classify(f: &PerfectComplex) -> Result<SphereReport> {
    let m = f.minimize();
    if m.is_zero() {
        return Ok(SphereReport {
            classification: Classification::Zero,
            hom_dims: BTreeMap::new(),
        });
    }
    let h = hom(&m, &m)?;
    let dims = h.dims();
    let total = h.total_dim();
    let classification = if total == 1 {
        if h.dim(0) != 1 {
            return Err(Error::Internal(
                "one-dimensional endomorphisms missing the identity".into(),
            ));
        }
        Classification::Exceptional
    } else if total == 2 {
        if h.dim(0) == 2 {
            let (_, _, alpha, beta, _) = degree_zero_algebra_data(&m, &h)?;
            let outcome =
                split_two_dimensional_algebra(&MultTable2::from_square(alpha, beta))?;
            let flavor = match outcome {
                SplitOutcome::Nilpotent { .. } => Flavor::Nilpotent,
                SplitOutcome::Disconnected { .. } => Flavor::Disconnected,
                SplitOutcome::IrreducibleQuadratic { .. } => Flavor::IrreducibleQuadratic,
            };
            Classification::Spherelike { d: 0, flavor }
        } else if h.dim(0) == 1 {
            let d = dims
                .keys()
                .find(|&&n| n != 0)
                .cloned()
                .ok_or_else(|| Error::Internal("two-dimensional table without a twin degree".into()))?;
            Classification::Spherelike {
                d,
                flavor: Flavor::NotApplicable,
            }
        } else {
            Classification::Other
        }
    } else {
        Classification::Other
    };
    Ok(SphereReport {
        classification,
        hom_dims: dims,
    })
}

/// For a two-dimensional degree-zero endomorphism algebra: a basis
/// `(id, b)` with `b² = alpha·id + beta·b`, returned as
/// `(id, b, alpha, beta, coordinates of b on the Hom⁰ representatives)`.
fn degree_zero_algebra_data(
    m: &PerfectComplex,
    h: &GradedHomSpace,
) -> Result<(ChainMap, ChainMap, Scalar, Scalar, Vec<Scalar>)> {
    let id = ChainMap::identity(m);
    let id_coords = h.coords_mod_boundaries(0, &id)?;
    // pick a representative independent from the identity
    let mut chosen: Option<(ChainMap, Vec<Scalar>)> = None;
    for k in 0..h.dim(0) {
        let mut coeffs = vec![Scalar::zero(); h.dim(0)];
        coeffs[k] = Scalar::one();
        let cand = h.combination(0, &coeffs)?;
        let cc = h.coords_mod_boundaries(0, &cand)?;
        let mat = Matrix::from_columns(2, &[id_coords.clone(), cc.clone()])?;
        if mat.rank() == 2 {
            chosen = Some((cand, cc));
            break;
        }
    }
    let (b, b_coords) =
        chosen.ok_or_else(|| Error::Internal("could not complete the identity to a basis".into()))?;
    let bb = b.compose(&b)?;
    let bb_coords = h.coords_mod_boundaries(0, &bb)?;
    let basis = Matrix::from_columns(2, &[id_coords, b_coords.clone()])?;
    let sol = crate::exact::solve(&basis, &bb_coords)?
        .ok_or_else(|| Error::Internal("square of basis element escapes the algebra".into()))?;
    Ok((id, b, sol[0].clone(), sol[1].clone(), b_coords))
}

/// How to choose the canonical map `w: F → ω(F)`.
#[derive(Debug, Clone)]
pub enum WChoice {
    Canonical,
    /// d ≠ 0: any nonzero scalar on the canonical basis vector.
    Scalar(Scalar),
    /// d = 0 nilpotent: `w = a·ι + b·φ`, admissible whenever `b ≠ 0`.
    Nilpotent { a: Scalar, b: Scalar },
    /// d = 0 disconnected: `w = a1·s1 + a2·s2`, admissible whenever both
    /// coefficients are nonzero.
    Disconnected { a1: Scalar, a2: Scalar },
}

/// The data behind the chosen `w`, kept for the uniqueness and splitting
/// diagnostics.
#[derive(Debug, Clone)]
pub enum WChoiceRecord {
    Scalar {
        scalar: Scalar,
    },
    Nilpotent {
        a: Scalar,
        b: Scalar,
        iota: ChainMap,
        phi: ChainMap,
        eps: ChainMap,
    },
    Disconnected {
        a1: Scalar,
        a2: Scalar,
        s1: ChainMap,
        s2: ChainMap,
        p1: ChainMap,
        p2: ChainMap,
    },
}

/// The canonical map `w: F → ω(F)` together with its context; the
/// asphericality itself is built by [`asphericality`].
#[derive(Debug, Clone)]
pub struct WData {
    /// Minimal model of the classified object.
    pub f: PerfectComplex,
    pub d: i32,
    pub omega: PerfectComplex,
    pub w: ChainMap,
    pub record: WChoiceRecord,
}

#[derive(Debug, Clone)]
pub struct AsphericalityData {
    pub wdata: WData,
    /// Minimal model of the cone of `w`; zero exactly when `F` is spherical.
    pub q: PerfectComplex,
}

pub fn construct_w(f: &PerfectComplex) -> Result<WData> {
    construct_w_with(f, &WChoice::Canonical)
}

pub fn construct_w_with(f: &PerfectComplex, choice: &WChoice) -> Result<WData> {
    let report = classify(f)?;
    let m = f.minimize();
    let (d, flavor) = match report.classification {
        Classification::Spherelike { d, ref flavor } => (d, flavor.clone()),
        other => return Err(Error::NotSpherelike(other.describe())),
    };
    let omega = serre(&m)?.shift(-d);
    let h_f_omega = hom(&m, &omega)?;

    let (w, record) = if d != 0 {
        let scalar = match choice {
            WChoice::Canonical => Scalar::one(),
            WChoice::Scalar(s) if !s.is_zero() => s.clone(),
            WChoice::Scalar(_) => {
                return Err(Error::ShapeMismatch("the scalar for w must be nonzero".into()))
            }
            _ => {
                return Err(Error::ShapeMismatch(
                    "choice does not match the d ≠ 0 case".into(),
                ))
            }
        };
        if h_f_omega.dim(0) != 1 {
            return Err(Error::Internal(format!(
                "Hom⁰(F, ω F) has dimension {}, expected 1",
                h_f_omega.dim(0)
            )));
        }
        let w = h_f_omega.basis(0)[0].scale(&scalar);
        (w, WChoiceRecord::Scalar { scalar })
    } else {
        if h_f_omega.dim(0) != 2 {
            return Err(Error::Internal(format!(
                "Hom⁰(F, S F) has dimension {}, expected 2",
                h_f_omega.dim(0)
            )));
        }
        let h_end = hom(&m, &m)?;
        let (id, b, alpha, beta, _) = degree_zero_algebra_data(&m, &h_end)?;
        let outcome = split_two_dimensional_algebra(&MultTable2::from_square(alpha, beta))?;
        match (outcome, flavor) {
            (SplitOutcome::Nilpotent { eps }, Flavor::Nilpotent) => {
                let (a, bcoef) = match choice {
                    WChoice::Canonical => (Scalar::zero(), Scalar::one()),
                    WChoice::Nilpotent { a, b } if !b.is_zero() => (a.clone(), b.clone()),
                    WChoice::Nilpotent { .. } => {
                        return Err(Error::ShapeMismatch(
                            "nilpotent choice needs b ≠ 0".into(),
                        ))
                    }
                    _ => {
                        return Err(Error::ShapeMismatch(
                            "choice does not match the nilpotent case".into(),
                        ))
                    }
                };
                let eps_map = id.scale(&eps[0]).add(&b.scale(&eps[1]))?;
                // right multiplication by ε on Hom(F, S F): find φ outside
                // its kernel, then ι = φ∘ε
                let mut phi: Option<ChainMap> = None;
                for t in h_f_omega.basis(0) {
                    let te = t.compose(&eps_map)?;
                    if !h_f_omega.is_coboundary(0, &te)? {
                        phi = Some(t.clone());
                        break;
                    }
                }
                let phi = phi.ok_or_else(|| {
                    Error::Internal("ε acts by zero on Hom(F, S F)".into())
                })?;
                let iota = phi.compose(&eps_map)?;
                let w = iota.scale(&a).add(&phi.scale(&bcoef))?;
                (
                    w,
                    WChoiceRecord::Nilpotent {
                        a,
                        b: bcoef,
                        iota,
                        phi,
                        eps: eps_map,
                    },
                )
            }
            (SplitOutcome::Disconnected { p1, p2 }, Flavor::Disconnected) => {
                let (a1, a2) = match choice {
                    WChoice::Canonical => (Scalar::one(), Scalar::one()),
                    WChoice::Disconnected { a1, a2 } if !a1.is_zero() && !a2.is_zero() => {
                        (a1.clone(), a2.clone())
                    }
                    WChoice::Disconnected { .. } => {
                        return Err(Error::ShapeMismatch(
                            "disconnected choice needs both coefficients nonzero".into(),
                        ))
                    }
                    _ => {
                        return Err(Error::ShapeMismatch(
                            "choice does not match the disconnected case".into(),
                        ))
                    }
                };
                let p1_map = id.scale(&p1[0]).add(&b.scale(&p1[1]))?;
                let p2_map = id.scale(&p2[0]).add(&b.scale(&p2[1]))?;
                let s1 = idempotent_component(&h_f_omega, &p1_map)?;
                let s2 = idempotent_component(&h_f_omega, &p2_map)?;
                let w = s1.scale(&a1).add(&s2.scale(&a2))?;
                (
                    w,
                    WChoiceRecord::Disconnected {
                        a1,
                        a2,
                        s1,
                        s2,
                        p1: p1_map,
                        p2: p2_map,
                    },
                )
            }
            (SplitOutcome::IrreducibleQuadratic { min_poly }, _) => {
                return Err(Error::IrreducibleQuadratic { min_poly })
            }
            _ => {
                return Err(Error::Internal(
                    "flavor disagrees with the endomorphism splitting".into(),
                ))
            }
        }
    };

    verify_w_pushforward_iso(&m, &omega, &w)?;
    Ok(WData {
        f: m,
        d,
        omega,
        w,
        record,
    })
}

/// Span of the right action of an idempotent on `Hom⁰(F, S F)`; the image
/// is one-dimensional and spanned by the Serre dual of the corresponding
/// summand identity.
fn idempotent_component(h: &GradedHomSpace, p: &ChainMap) -> Result<ChainMap> {
    let mut image_coords: Vec<Vec<Scalar>> = Vec::new();
    let mut images: Vec<ChainMap> = Vec::new();
    for t in h.basis(0) {
        let tp = t.compose(p)?;
        let coords = h.coords_mod_boundaries(0, &tp)?;
        if coords.iter().all(Scalar::is_zero) {
            continue;
        }
        image_coords.push(coords);
        images.push(tp);
    }
    let dim = h.dim(0);
    let mat = Matrix::from_columns(dim, &image_coords)?;
    if mat.rank() != 1 {
        return Err(Error::Internal(format!(
            "idempotent component has rank {}, expected 1",
            mat.rank()
        )));
    }
    Ok(images.swap_remove(0))
}

/// `w_*: Hom•(F,F) → Hom•(F, ω F)` must be a degree-wise isomorphism.
fn verify_w_pushforward_iso(
    m: &PerfectComplex,
    omega: &PerfectComplex,
    w: &ChainMap,
) -> Result<()> {
    let h_end = hom(m, m)?;
    let h_om = hom(m, omega)?;
    let mut degrees: Vec<i32> = h_end.dims().keys().cloned().collect();
    degrees.extend(h_om.dims().keys());
    degrees.sort_unstable();
    degrees.dedup();
    for &n in &degrees {
        if h_end.dim(n) != h_om.dim(n) {
            return Err(Error::WNotIsomorphism(format!(
                "dimension mismatch in degree {}",
                n
            )));
        }
        let dim = h_end.dim(n);
        if dim == 0 {
            continue;
        }
        let mut cols = Vec::new();
        for fb in h_end.basis(n) {
            let wf = w.compose(fb)?;
            cols.push(h_om.coords_mod_boundaries(n, &wf)?);
        }
        let mat = Matrix::from_columns(dim, &cols)?;
        if mat.rank() != dim {
            return Err(Error::WNotIsomorphism(format!(
                "w_* drops rank in degree {}",
                n
            )));
        }
    }
    Ok(())
}

/// Complete the asphericality triangle: `Q = minimize(cone(w))`, with the
/// orthogonality `Hom•(F,Q) = 0` always asserted, and — when `Q ≠ 0` —
/// the non-vanishing of `Hom¹(Q,F)`.
pub fn asphericality(f: &PerfectComplex) -> Result<AsphericalityData> {
    asphericality_with(f, &WChoice::Canonical)
}

pub fn asphericality_with(f: &PerfectComplex, choice: &WChoice) -> Result<AsphericalityData> {
    let wdata = construct_w_with(f, choice)?;
    let q = cone(&wdata.w)?.minimize();
    let h_fq = hom(&wdata.f, &q)?;
    if h_fq.total_dim() != 0 {
        return Err(Error::Internal(
            "asphericality failed: Hom•(F, Q) does not vanish".into(),
        ));
    }
    if !q.is_zero() {
        let h_qf = hom(&q, &wdata.f)?;
        if h_qf.dim(1) == 0 {
            return Err(Error::Internal(
                "asphericality failed: Hom¹(Q, F) vanishes although Q ≠ 0".into(),
            ));
        }
    }
    Ok(AsphericalityData { wdata, q })
}

/// Cone of an arbitrary degree-zero map `F → ω(F)` without the canonical-w
/// assertions; used to inspect inadmissible choices, e.g. dropping one
/// idempotent coefficient.
pub fn aspherical_cone_from_map(w: &ChainMap) -> Result<PerfectComplex> {
    Ok(cone(w)?.minimize())
}

/// Spherical means the asphericality vanishes.
pub fn is_spherical(f: &PerfectComplex) -> Result<bool> {
    Ok(asphericality(f)?.q.is_zero())
}

/// Membership in the spherical subcategory `⊥Q_F`.
pub fn in_spherical_subcategory(u: &PerfectComplex, data: &AsphericalityData) -> Result<bool> {
    if *u.algebra() != *data.wdata.f.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    Ok(hom(u, &data.q)?.total_dim() == 0)
}

/// The witness table `Hom•(U, Q_F)` behind a membership verdict.
pub fn membership_witness(
    u: &PerfectComplex,
    data: &AsphericalityData,
) -> Result<BTreeMap<i32, usize>> {
    if *u.algebra() != *data.wdata.f.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    Ok(hom(u, &data.q)?.dims())
}

/// The evaluation map `⊕ₙ Homⁿ(F,A) ⊗ F[−n] → A` summing the basis chain
/// maps; `None` when `Hom•(F,A) = 0`.
pub fn evaluation_map(f: &PerfectComplex, a: &PerfectComplex) -> Result<Option<ChainMap>> {
    if *f.algebra() != *a.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    let h = hom(f, a)?;
    if h.total_dim() == 0 {
        return Ok(None);
    }
    let mut parts: Vec<ChainMap> = Vec::new();
    for (&n, _) in h.dims().iter() {
        for basis_map in h.basis(n) {
            parts.push(basis_map.to_degree_zero_from_shifted_source()?);
        }
    }
    let sources: Vec<PerfectComplex> = parts.iter().map(|p| p.source().clone()).collect();
    let source_refs: Vec<&PerfectComplex> = sources.iter().collect();
    let (x, offsets) = PerfectComplex::direct_sum(&source_refs)?;
    let alg = f.algebra().clone();
    let mut blocks = BTreeMap::new();
    for j in x.min_degree()..=x.max_degree() {
        if x.term(j).is_empty() || a.term(j).is_empty() {
            continue;
        }
        let mut block = PolyMatrix::zero(alg.clone(), a.term(j).to_vec(), x.term(j).to_vec());
        for (pi, part) in parts.iter().enumerate() {
            let pb = part.block(j);
            let off = offsets[pi].get(&j).cloned().unwrap_or(0);
            for r in 0..pb.rows() {
                for c in 0..pb.cols() {
                    block.set_entry(r, off + c, pb.entry(r, c).clone());
                }
            }
        }
        if !block.is_zero() {
            blocks.insert(j, block);
        }
    }
    Ok(Some(ChainMap::new(x, a.clone(), 0, blocks)?))
}

/// The coevaluation map `A → ⊕ₙ Homⁿ(A,F)* ⊗ F[n]` stacking the basis
/// chain maps; `None` when `Hom•(A,F) = 0`.
pub fn coevaluation_map(a: &PerfectComplex, f: &PerfectComplex) -> Result<Option<ChainMap>> {
    if *f.algebra() != *a.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    let h = hom(a, f)?;
    if h.total_dim() == 0 {
        return Ok(None);
    }
    let mut parts: Vec<ChainMap> = Vec::new();
    for (&n, _) in h.dims().iter() {
        for basis_map in h.basis(n) {
            parts.push(basis_map.to_degree_zero_into_shifted_target()?);
        }
    }
    let targets: Vec<PerfectComplex> = parts.iter().map(|p| p.target().clone()).collect();
    let target_refs: Vec<&PerfectComplex> = targets.iter().collect();
    let (y, offsets) = PerfectComplex::direct_sum(&target_refs)?;
    let alg = f.algebra().clone();
    let mut blocks = BTreeMap::new();
    for j in a.min_degree()..=a.max_degree() {
        if a.term(j).is_empty() || y.term(j).is_empty() {
            continue;
        }
        let mut block = PolyMatrix::zero(alg.clone(), y.term(j).to_vec(), a.term(j).to_vec());
        for (pi, part) in parts.iter().enumerate() {
            let pb = part.block(j);
            let off = offsets[pi].get(&j).cloned().unwrap_or(0);
            for r in 0..pb.rows() {
                for c in 0..pb.cols() {
                    block.set_entry(off + r, c, pb.entry(r, c).clone());
                }
            }
        }
        if !block.is_zero() {
            blocks.insert(j, block);
        }
    }
    Ok(Some(ChainMap::new(a.clone(), y, 0, blocks)?))
}

/// Twist functor: `T_F(A) = minimize(cone(ev))`.
pub fn twist(f: &PerfectComplex, a: &PerfectComplex) -> Result<PerfectComplex> {
    match evaluation_map(f, a)? {
        None => Ok(a.minimize()),
        Some(ev) => Ok(cone(&ev)?.minimize()),
    }
}

/// Left-adjoint twist: `T^l_F(A) = minimize(shift(cone(coev), −1))`.
pub fn twist_left(f: &PerfectComplex, a: &PerfectComplex) -> Result<PerfectComplex> {
    match coevaluation_map(a, f)? {
        None => Ok(a.minimize()),
        Some(coev) => Ok(cone(&coev)?.shift(-1).minimize()),
    }
}

/// Per-object verdict of the Calabi-Yau pairing check against `F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyVerdict {
    pub member: bool,
    pub dims_ok: bool,
    pub pairing_ok: bool,
}

impl CyVerdict {
    pub fn passes(&self) -> bool {
        self.dims_ok && self.pairing_ok
    }
}

/// Check the d-Calabi-Yau pairing of `F` against each test object: the
/// dimension symmetry `dim Homⁿ(A,F) = dim Hom^{d−n}(F,A)` and the full
/// rank of the composition pairing into `Hom^d(F,F)` under a common
/// scalar functional anchored at `F` itself.
pub fn check_calabi_yau(
    data: &AsphericalityData,
    testset: &[PerfectComplex],
) -> Result<Vec<CyVerdict>> {
    let f = &data.wdata.f;
    let d = data.wdata.d;
    let h_ff = hom(f, f)?;
    let anchor = pairing_blocks(&h_ff, &h_ff, &h_ff, d)?;
    let target_dim = h_ff.dim(d);
    let mut out = Vec::new();
    for a in testset {
        if *a.algebra() != *f.algebra() {
            return Err(Error::AlgebraMismatch);
        }
        let member = in_spherical_subcategory(a, data)?;
        let h_fa = hom(f, a)?;
        let h_af = hom(a, f)?;
        let mut degrees: Vec<i32> = h_af.dims().keys().cloned().collect();
        degrees.extend(h_fa.dims().keys().map(|n| d - n));
        degrees.sort_unstable();
        degrees.dedup();
        let dims_ok = degrees.iter().all(|&n| h_af.dim(n) == h_fa.dim(d - n));
        let pairing_ok = if dims_ok {
            let mut blocks = anchor.clone();
            blocks.extend(pairing_blocks(&h_fa, &h_af, &h_ff, d)?);
            functional_making_blocks_nonsingular(&blocks, target_dim).is_some()
        } else {
            false
        };
        out.push(CyVerdict {
            member,
            dims_ok,
            pairing_ok,
        });
    }
    Ok(out)
}
