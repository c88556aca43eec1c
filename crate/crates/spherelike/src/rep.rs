//! Quiver representations: projectives, injectives, radicals, covers,
//! minimal projective resolutions and the Nakayama correspondence.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::BoundQuiverAlgebra;
use crate::complex::{PerfectComplex, PolyMatrix};
use crate::exact::{kernel_basis, solve, Matrix, Scalar};
use crate::{Error, Result};

/// A finite-dimensional right module presented as a quiver representation:
/// a vector space per vertex, a matrix per arrow.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    algebra: Arc<BoundQuiverAlgebra>,
    dims: Vec<usize>,
    /// `arrows[i]`: matrix of shape dims[target] × dims[source].
    arrows: Vec<Matrix>,
}

impl Representation {
    pub fn new(
        algebra: Arc<BoundQuiverAlgebra>,
        dims: Vec<usize>,
        arrows: Vec<Matrix>,
    ) -> Result<Self> {
        let q = algebra.quiver();
        if dims.len() != q.vertex_count() || arrows.len() != q.arrows().len() {
            return Err(Error::ShapeMismatch(
                "representation data does not match the quiver".into(),
            ));
        }
        for (i, a) in q.arrows().iter().enumerate() {
            if arrows[i].rows() != dims[a.target] || arrows[i].cols() != dims[a.source] {
                return Err(Error::ShapeMismatch(format!(
                    "matrix for arrow {} has shape {}x{}, expected {}x{}",
                    a.name,
                    arrows[i].rows(),
                    arrows[i].cols(),
                    dims[a.target],
                    dims[a.source]
                )));
            }
        }
        let rep = Representation { algebra, dims, arrows };
        rep.check_relations()?;
        Ok(rep)
    }

    pub fn zero(algebra: Arc<BoundQuiverAlgebra>) -> Self {
        let nv = algebra.vertex_count();
        let arrows = algebra
            .quiver()
            .arrows()
            .iter()
            .map(|_| Matrix::zero(0, 0))
            .collect();
        Representation {
            algebra,
            dims: vec![0; nv],
            arrows,
        }
    }

    pub fn algebra(&self) -> &Arc<BoundQuiverAlgebra> {
        &self.algebra
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn arrow_matrix(&self, i: usize) -> &Matrix {
        &self.arrows[i]
    }

    /// Matrix of the action along a path given by arrows in application
    /// order; the empty path at `v` acts as the identity on the fibre.
    pub fn path_action(&self, arrows: &[usize], source_if_trivial: usize) -> Matrix {
        if arrows.is_empty() {
            return Matrix::identity(self.dims[source_if_trivial]);
        }
        let q = self.algebra.quiver();
        let mut m = self.arrows[arrows[0]].clone();
        for &a in &arrows[1..] {
            m = self.arrows[a].mul(&m).expect("composable path action");
        }
        debug_assert_eq!(m.rows(), self.dims[q.arrows()[*arrows.last().unwrap()].target]);
        m
    }

    fn check_relations(&self) -> Result<()> {
        for r in self.algebra.relations() {
            let rows = self.dims[r.target];
            let cols = self.dims[r.source];
            let mut acc = Matrix::zero(rows, cols);
            for (c, arrows) in &r.terms {
                let m = self.path_action(arrows, r.source);
                acc = acc.add(&m.scale(c))?;
            }
            if !acc.is_zero() {
                return Err(Error::ShapeMismatch(
                    "representation does not satisfy the relations".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        if !Arc::ptr_eq(&self.algebra, &other.algebra) && self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        let dims: Vec<usize> = self
            .dims
            .iter()
            .zip(&other.dims)
            .map(|(a, b)| a + b)
            .collect();
        let q = self.algebra.quiver();
        let mut arrows = Vec::new();
        for (i, a) in q.arrows().iter().enumerate() {
            let mut m = Matrix::zero(dims[a.target], dims[a.source]);
            for r in 0..self.dims[a.target] {
                for c in 0..self.dims[a.source] {
                    *m.at_mut(r, c) = self.arrows[i].at(r, c).clone();
                }
            }
            for r in 0..other.dims[a.target] {
                for c in 0..other.dims[a.source] {
                    *m.at_mut(self.dims[a.target] + r, self.dims[a.source] + c) =
                        other.arrows[i].at(r, c).clone();
                }
            }
            arrows.push(m);
        }
        Ok(Representation {
            algebra: self.algebra.clone(),
            dims,
            arrows,
        })
    }
}

/// Map of representations: one matrix per vertex, commuting with arrows.
#[derive(Debug, Clone)]
pub struct RepMap {
    pub from: Representation,
    pub to: Representation,
    /// `mats[v]`: to.dims[v] × from.dims[v]
    pub mats: Vec<Matrix>,
}

impl RepMap {
    pub fn new(from: Representation, to: Representation, mats: Vec<Matrix>) -> Result<Self> {
        let q = from.algebra.quiver();
        if mats.len() != q.vertex_count() {
            return Err(Error::ShapeMismatch("rep map needs one matrix per vertex".into()));
        }
        for v in 0..q.vertex_count() {
            if mats[v].rows() != to.dims[v] || mats[v].cols() != from.dims[v] {
                return Err(Error::ShapeMismatch(format!(
                    "rep map at vertex {} has shape {}x{}, expected {}x{}",
                    v + 1,
                    mats[v].rows(),
                    mats[v].cols(),
                    to.dims[v],
                    from.dims[v]
                )));
            }
        }
        for (i, a) in q.arrows().iter().enumerate() {
            let lhs = to.arrows[i].mul(&mats[a.source])?;
            let rhs = mats[a.target].mul(&from.arrows[i])?;
            if lhs != rhs {
                return Err(Error::ShapeMismatch(format!(
                    "rep map does not commute with arrow {}",
                    a.name
                )));
            }
        }
        Ok(RepMap { from, to, mats })
    }

    pub fn zero(from: Representation, to: Representation) -> Self {
        let mats = (0..from.algebra.vertex_count())
            .map(|v| Matrix::zero(to.dims[v], from.dims[v]))
            .collect();
        RepMap { from, to, mats }
    }

    pub fn compose(&self, earlier: &RepMap) -> Result<RepMap> {
        let mats: Result<Vec<Matrix>> = self
            .mats
            .iter()
            .zip(&earlier.mats)
            .map(|(g, f)| g.mul(f))
            .collect();
        RepMap::new(earlier.from.clone(), self.to.clone(), mats?)
    }

    pub fn is_zero(&self) -> bool {
        self.mats.iter().all(Matrix::is_zero)
    }
}

/// The indecomposable projective `P(v)`: at vertex `w` the span of basis
/// paths `v → w`, arrows acting by path multiplication.
pub fn projective(algebra: &Arc<BoundQuiverAlgebra>, v: usize) -> Representation {
    rep_of_projectives(algebra, &[v])
}

/// The simple module concentrated at `v`.
pub fn simple(algebra: &Arc<BoundQuiverAlgebra>, v: usize) -> Representation {
    let nv = algebra.vertex_count();
    let mut dims = vec![0; nv];
    dims[v] = 1;
    let arrows = algebra
        .quiver()
        .arrows()
        .iter()
        .map(|a| Matrix::zero(dims[a.target], dims[a.source]))
        .collect();
    Representation {
        algebra: algebra.clone(),
        dims,
        arrows,
    }
}

/// The indecomposable injective `I(v)` with socle at `v`: at vertex `w`
/// the dual of the span of paths `w → v`.
pub fn injective(algebra: &Arc<BoundQuiverAlgebra>, v: usize) -> Representation {
    rep_of_injectives(algebra, &[v])
}

/// Nakayama correspondent of an indecomposable projective, recognized in
/// canonical form; errors on any other input.
pub fn nakayama(rep: &Representation) -> Result<Representation> {
    for v in 0..rep.algebra.vertex_count() {
        if rep == &projective(&rep.algebra, v) {
            return Ok(injective(&rep.algebra, v));
        }
    }
    Err(Error::NotProjective)
}

/// Direct sum of projectives `⊕ P(labels[k])` with the canonical vertex
/// bases indexed by (summand, basis path).
pub fn rep_of_projectives(
    algebra: &Arc<BoundQuiverAlgebra>,
    labels: &[usize],
) -> Representation {
    let nv = algebra.vertex_count();
    let basis_at = |u: usize| -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (k, &lab) in labels.iter().enumerate() {
            for &p in algebra.paths_from_to(lab, u) {
                out.push((k, p));
            }
        }
        out
    };
    let dims: Vec<usize> = (0..nv).map(|u| basis_at(u).len()).collect();
    let q = algebra.quiver();
    let mut arrows = Vec::new();
    for (ai, a) in q.arrows().iter().enumerate() {
        let src_basis = basis_at(a.source);
        let dst_basis = basis_at(a.target);
        let mut m = Matrix::zero(dst_basis.len(), src_basis.len());
        for (c, &(k, p)) in src_basis.iter().enumerate() {
            // arrow acts by post-composition: p ↦ a·p
            let arrow_poly = algebra
                .reduce_raw_path(&[ai], a.source)
                .expect("arrow reduces");
            let image = algebra
                .poly_mul(&arrow_poly, &algebra.poly_of_basis(p))
                .expect("composable");
            for (ip, coeff) in &image.terms {
                let r = dst_basis
                    .iter()
                    .position(|&(kk, pp)| kk == k && pp == *ip)
                    .expect("image path in basis");
                *m.at_mut(r, c) = coeff.clone();
            }
        }
        arrows.push(m);
    }
    Representation {
        algebra: algebra.clone(),
        dims,
        arrows,
    }
}

/// Basis bookkeeping for [`rep_of_projectives`].
pub fn projective_basis_at(
    algebra: &BoundQuiverAlgebra,
    labels: &[usize],
    u: usize,
) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (k, &lab) in labels.iter().enumerate() {
        for &p in algebra.paths_from_to(lab, u) {
            out.push((k, p));
        }
    }
    out
}

/// Direct sum of injectives `⊕ I(labels[k])`; the basis at vertex `u` is
/// indexed by (summand, basis path `u → label`).
pub fn rep_of_injectives(
    algebra: &Arc<BoundQuiverAlgebra>,
    labels: &[usize],
) -> Representation {
    let nv = algebra.vertex_count();
    let basis_at = |u: usize| -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (k, &lab) in labels.iter().enumerate() {
            for &p in algebra.paths_from_to(u, lab) {
                out.push((k, p));
            }
        }
        out
    };
    let dims: Vec<usize> = (0..nv).map(|u| basis_at(u).len()).collect();
    let q = algebra.quiver();
    let mut arrows = Vec::new();
    for (ai, a) in q.arrows().iter().enumerate() {
        let src_basis = basis_at(a.source);
        let dst_basis = basis_at(a.target);
        // dual of pre-composition with the arrow: for p: target→label,
        // p·a: source→label; transpose to act on dual coordinates.
        let mut m = Matrix::zero(dst_basis.len(), src_basis.len());
        for (r, &(k, p)) in dst_basis.iter().enumerate() {
            let arrow_poly = algebra
                .reduce_raw_path(&[ai], a.source)
                .expect("arrow reduces");
            let pulled = algebra
                .poly_mul(&algebra.poly_of_basis(p), &arrow_poly)
                .expect("composable");
            for (ip, coeff) in &pulled.terms {
                let c = src_basis
                    .iter()
                    .position(|&(kk, pp)| kk == k && pp == *ip)
                    .expect("pulled path in basis");
                *m.at_mut(r, c) = coeff.clone();
            }
        }
        arrows.push(m);
    }
    Representation {
        algebra: algebra.clone(),
        dims,
        arrows,
    }
}

pub fn injective_basis_at(
    algebra: &BoundQuiverAlgebra,
    labels: &[usize],
    u: usize,
) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (k, &lab) in labels.iter().enumerate() {
        for &p in algebra.paths_from_to(u, lab) {
            out.push((k, p));
        }
    }
    out
}

/// Per-vertex basis of the radical: the sum of all incoming arrow images.
fn radical_dims_and_span(m: &Representation) -> Vec<Matrix> {
    let q = m.algebra.quiver();
    let nv = m.algebra.vertex_count();
    (0..nv)
        .map(|v| {
            let mut cols: Vec<Vec<Scalar>> = Vec::new();
            for (i, a) in q.arrows().iter().enumerate() {
                if a.target != v {
                    continue;
                }
                for c in 0..m.dims[a.source] {
                    cols.push(m.arrows[i].column(c));
                }
            }
            Matrix::from_columns(m.dims[v], &cols).expect("span columns")
        })
        .collect()
}

/// Lift a basis of top(M) = M/rad M: per vertex, standard basis vectors of
/// `M_v` extending a basis of the radical.
fn top_generators(m: &Representation) -> Vec<(usize, Vec<Scalar>)> {
    let rad = radical_dims_and_span(m);
    let mut gens = Vec::new();
    for v in 0..m.algebra.vertex_count() {
        let mut span = rad[v].clone();
        for i in 0..m.dims[v] {
            let mut e = vec![Scalar::zero(); m.dims[v]];
            e[i] = Scalar::one();
            let already = if span.cols() == 0 {
                e.iter().all(Scalar::is_zero)
            } else {
                solve(&span, &e).expect("span solve").is_some()
            };
            if !already {
                span = span
                    .hcat(&Matrix::from_columns(m.dims[v], &[e.clone()]).unwrap())
                    .unwrap();
                gens.push((v, e));
            }
        }
    }
    gens
}

/// Projective cover `⊕ P(v_i) ↠ M` together with its summand labels.
pub fn projective_cover(m: &Representation) -> Result<(Vec<usize>, RepMap)> {
    let gens = top_generators(m);
    let labels: Vec<usize> = gens.iter().map(|(v, _)| *v).collect();
    let p = rep_of_projectives(&m.algebra, &labels);
    let alg = m.algebra.clone();
    let nv = alg.vertex_count();
    let mut mats = Vec::new();
    for u in 0..nv {
        let basis = projective_basis_at(&alg, &labels, u);
        let mut mat = Matrix::zero(m.dims[u], basis.len());
        for (c, &(k, path_idx)) in basis.iter().enumerate() {
            let path = alg.basis_path(path_idx).clone();
            let action = m.path_action(path.arrow_indices(), gens[k].0);
            let img = action.mul_vec(&gens[k].1)?;
            for (r, val) in img.iter().enumerate() {
                *mat.at_mut(r, c) = val.clone();
            }
        }
        mats.push(mat);
    }
    let cover = RepMap::new(p, m.clone(), mats)?;
    Ok((labels, cover))
}

/// Kernel of a rep map as a sub-representation with its inclusion.
pub fn kernel_subrep(f: &RepMap) -> Result<(Representation, RepMap)> {
    let alg = f.from.algebra.clone();
    let nv = alg.vertex_count();
    let mut kbases: Vec<Vec<Vec<Scalar>>> = Vec::new();
    for v in 0..nv {
        kbases.push(kernel_basis(&f.mats[v]));
    }
    let dims: Vec<usize> = kbases.iter().map(|b| b.len()).collect();
    let incl_mats: Vec<Matrix> = (0..nv)
        .map(|v| Matrix::from_columns(f.from.dims[v], &kbases[v]).unwrap())
        .collect();
    let q = alg.quiver();
    let mut arrows = Vec::new();
    for (i, a) in q.arrows().iter().enumerate() {
        let mut m = Matrix::zero(dims[a.target], dims[a.source]);
        for c in 0..dims[a.source] {
            let x = &kbases[a.source][c];
            let y = f.from.arrows[i].mul_vec(x)?;
            // coordinates of y in the kernel basis at the target
            let coords = if dims[a.target] == 0 {
                if y.iter().all(Scalar::is_zero) {
                    vec![]
                } else {
                    return Err(Error::Internal("kernel not arrow-stable".into()));
                }
            } else {
                solve(&incl_mats[a.target], &y)?
                    .ok_or_else(|| Error::Internal("kernel not arrow-stable".into()))?
            };
            for (r, val) in coords.iter().enumerate() {
                *m.at_mut(r, c) = val.clone();
            }
        }
        arrows.push(m);
    }
    let k = Representation {
        algebra: alg,
        dims,
        arrows,
    };
    let incl = RepMap::new(k.clone(), f.from.clone(), incl_mats)?;
    Ok((k, incl))
}

/// Minimal projective resolution of `m`, placed in degrees `..., −1, 0`,
/// together with the augmentation `P⁰ → m`.
pub fn projective_resolution_with_augmentation(
    m: &Representation,
) -> Result<(PerfectComplex, Option<RepMap>)> {
    let bound = m.algebra.global_dimension();
    resolve_with_cap(m, bound, |len| {
        Error::Internal(format!(
            "resolution length {} exceeds the global dimension {}",
            len, bound
        ))
    })
}

/// Minimal projective resolution of `m` as a perfect complex with `m` in
/// degree 0.
pub fn projective_resolution(m: &Representation) -> Result<PerfectComplex> {
    Ok(projective_resolution_with_augmentation(m)?.0)
}

fn resolve_with_cap(
    m: &Representation,
    cap: usize,
    err: impl Fn(usize) -> Error,
) -> Result<(PerfectComplex, Option<RepMap>)> {
    if m.is_zero() {
        return Ok((PerfectComplex::zero(m.algebra.clone()), None));
    }
    let mut term_labels: Vec<Vec<usize>> = Vec::new();
    let mut diffs: Vec<PolyMatrix> = Vec::new(); // diffs[k]: P_{k+1} → P_k

    let (labels0, cover0) = projective_cover(m)?;
    let mut prev_labels = labels0.clone();
    term_labels.push(labels0);
    let mut current = cover0.clone();
    let mut steps = 0usize;
    loop {
        let (k, incl) = kernel_subrep(&current)?;
        if k.is_zero() {
            break;
        }
        steps += 1;
        if steps > cap {
            return Err(err(steps));
        }
        let (labels, cover) = projective_cover(&k)?;
        let composite = incl.compose(&cover)?;
        let poly = rep_map_to_poly_matrix(&composite, &labels, &prev_labels)?;
        diffs.push(poly);
        term_labels.push(labels.clone());
        prev_labels = labels;
        current = cover;
    }

    // Assemble the complex in degrees −len .. 0.
    let len = term_labels.len();
    let min_degree = -((len as i32) - 1);
    let terms: Vec<Vec<usize>> = term_labels.iter().rev().cloned().collect();
    let diffs_ordered: Vec<PolyMatrix> = diffs.iter().rev().cloned().collect();
    let complex = PerfectComplex::new(m.algebra.clone(), min_degree, terms, diffs_ordered)?;
    Ok((complex, Some(cover0)))
}

/// Convert a map `rep_of(src_labels) → rep_of(dst_labels)` into the matrix
/// of path polynomials describing it as a map of projectives: entry
/// `(i, j)` is the polynomial from `dst_labels[i]` to `src_labels[j]`
/// reading off the image of the `j`-th generator.
pub fn rep_map_to_poly_matrix(
    f: &RepMap,
    src_labels: &[usize],
    dst_labels: &[usize],
) -> Result<PolyMatrix> {
    let alg = f.from.algebra.clone();
    let mut entries = Vec::new();
    for i in 0..dst_labels.len() {
        for (j, &sl) in src_labels.iter().enumerate() {
            // column of the generator e_{sl} of summand j at vertex sl
            let basis = projective_basis_at(&alg, src_labels, sl);
            let gen_col = basis
                .iter()
                .position(|&(k, p)| k == j && p == alg.trivial_basis_index(sl))
                .ok_or_else(|| Error::Internal("generator missing from basis".into()))?;
            let img = f.mats[sl].column(gen_col);
            let dst_basis = projective_basis_at(&alg, dst_labels, sl);
            let mut poly = alg.poly_zero(dst_labels[i], sl);
            for (r, val) in img.iter().enumerate() {
                if val.is_zero() {
                    continue;
                }
                let (k, p) = dst_basis[r];
                if k != i {
                    continue;
                }
                poly = alg.poly_add(
                    &poly,
                    &alg.poly_scale(&alg.poly_of_basis(p), val),
                )?;
            }
            entries.push(poly);
        }
    }
    PolyMatrix::new(
        alg,
        dst_labels.to_vec(),
        src_labels.to_vec(),
        entries,
    )
}

/// Realize a matrix of path polynomials as a map of representations.
pub fn poly_matrix_to_rep_map(mat: &PolyMatrix) -> Result<RepMap> {
    let alg = mat.algebra().clone();
    let from = rep_of_projectives(&alg, mat.col_labels());
    let to = rep_of_projectives(&alg, mat.row_labels());
    let nv = alg.vertex_count();
    let mut mats = Vec::new();
    for u in 0..nv {
        let src_basis = projective_basis_at(&alg, mat.col_labels(), u);
        let dst_basis = projective_basis_at(&alg, mat.row_labels(), u);
        let mut m = Matrix::zero(dst_basis.len(), src_basis.len());
        for (c, &(j, p)) in src_basis.iter().enumerate() {
            for i in 0..mat.row_labels().len() {
                let entry = mat.entry(i, j);
                if entry.is_zero() {
                    continue;
                }
                // p: src_label_j → u composed with entry: row_i → src_label_j
                let img = alg.poly_mul(&alg.poly_of_basis(p), entry)?;
                for (ip, coeff) in &img.terms {
                    let r = dst_basis
                        .iter()
                        .position(|&(k, pp)| k == i && pp == *ip)
                        .ok_or_else(|| Error::Internal("image path missing".into()))?;
                    let updated = m.at(r, c).clone() + coeff;
                    *m.at_mut(r, c) = updated;
                }
            }
        }
        mats.push(m);
    }
    RepMap::new(from, to, mats)
}

/// Apply the Nakayama functor to a matrix of path polynomials, producing
/// the corresponding map `⊕ I(src) → ⊕ I(dst)` of injectives.
pub fn nakayama_poly_matrix(mat: &PolyMatrix) -> Result<RepMap> {
    let alg = mat.algebra().clone();
    let from = rep_of_injectives(&alg, mat.col_labels());
    let to = rep_of_injectives(&alg, mat.row_labels());
    let nv = alg.vertex_count();
    let mut mats = Vec::new();
    for u in 0..nv {
        let src_basis = injective_basis_at(&alg, mat.col_labels(), u);
        let dst_basis = injective_basis_at(&alg, mat.row_labels(), u);
        // dual of left multiplication: for q: u → dst_i, entry·q : u → src_j
        let mut m = Matrix::zero(dst_basis.len(), src_basis.len());
        for (r, &(i, qp)) in dst_basis.iter().enumerate() {
            for (j, _) in mat.col_labels().iter().enumerate() {
                let entry = mat.entry(i, j);
                if entry.is_zero() {
                    continue;
                }
                let img = alg.poly_mul(entry, &alg.poly_of_basis(qp))?;
                for (ip, coeff) in &img.terms {
                    let c = src_basis
                        .iter()
                        .position(|&(k, pp)| k == j && pp == *ip)
                        .ok_or_else(|| Error::Internal("dual path missing".into()))?;
                    let updated = m.at(r, c).clone() + coeff;
                    *m.at_mut(r, c) = updated;
                }
            }
        }
        mats.push(m);
    }
    RepMap::new(from, to, mats)
}

/// Bounded cochain complex of representations.
#[derive(Debug, Clone)]
pub struct RepComplex {
    pub terms: BTreeMap<i32, Representation>,
    /// `diffs[k]`: terms[k] → terms[k+1]
    pub diffs: BTreeMap<i32, RepMap>,
}

impl RepComplex {
    pub fn validate(&self) -> Result<()> {
        for (&k, d) in &self.diffs {
            if let Some(next) = self.diffs.get(&(k + 1)) {
                let dd = next.compose(d)?;
                if !dd.is_zero() {
                    return Err(Error::Internal(format!(
                        "representation complex has d∘d ≠ 0 between degrees {} and {}",
                        k,
                        k + 2
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn support(&self) -> Vec<i32> {
        self.terms
            .iter()
            .filter(|(_, t)| !t.is_zero())
            .map(|(&k, _)| k)
            .collect()
    }

    /// Per-degree dimension vectors of the cohomology.
    pub fn homology_dims(&self) -> BTreeMap<i32, Vec<usize>> {
        let mut out = BTreeMap::new();
        let degrees: Vec<i32> = self.terms.keys().cloned().collect();
        for &k in &degrees {
            let term = &self.terms[&k];
            let nv = term.algebra.vertex_count();
            let mut dims = Vec::new();
            for v in 0..nv {
                let out_rank = self
                    .diffs
                    .get(&k)
                    .map(|d| d.mats[v].rank())
                    .unwrap_or(0);
                let in_rank = self
                    .diffs
                    .get(&(k - 1))
                    .map(|d| d.mats[v].rank())
                    .unwrap_or(0);
                let kernel = term.dims[v] - out_rank;
                dims.push(kernel - in_rank);
            }
            if dims.iter().any(|&d| d > 0) {
                out.insert(k, dims);
            }
        }
        out
    }
}

/// Global dimension = max projective dimension over the simples, computed
/// before the algebra is fully sealed; the cap is derived from the algebra
/// dimension.
pub fn compute_global_dimension(algebra: &Arc<BoundQuiverAlgebra>) -> Result<usize> {
    let cap = 2 * algebra.dim() + algebra.vertex_count() + 4;
    let mut max_len = 0usize;
    for v in 0..algebra.vertex_count() {
        let s = simple(algebra, v);
        let (_, mut current) = projective_cover(&s)?;
        let mut len = 0usize;
        loop {
            let (k, _incl) = kernel_subrep(&current)?;
            if k.is_zero() {
                break;
            }
            len += 1;
            if len > cap {
                return Err(Error::InfiniteGlobalDimension { vertex: v + 1, bound: cap });
            }
            let (_, cover) = projective_cover(&k)?;
            current = cover;
        }
        max_len = max_len.max(len);
    }
    Ok(max_len)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::presets::*;
    use crate::exact::scalar_int;

    #[test]
    fn kronecker_projectives() {
        let alg = kronecker();
        let p1 = projective(&alg, 0);
        assert_eq!(p1.dims(), &[1, 2]);
        let p2 = projective(&alg, 1);
        assert_eq!(p2.dims(), &[0, 1]);
        let total: usize = (0..2).map(|v| projective(&alg, v).total_dim()).sum();
        assert_eq!(total, alg.dim());
    }

    #[test]
    fn bound_a3_projectives_and_injectives() {
        let alg = bound_a3();
        assert_eq!(projective(&alg, 0).dims(), &[1, 1, 0]);
        assert_eq!(projective(&alg, 1).dims(), &[0, 1, 1]);
        assert_eq!(projective(&alg, 2).dims(), &[0, 0, 1]);
        assert_eq!(injective(&alg, 0).dims(), &[1, 0, 0]);
        assert_eq!(injective(&alg, 2).dims(), &[0, 1, 1]);
        let nu_p1 = nakayama(&projective(&alg, 0)).unwrap();
        assert_eq!(nu_p1.dims(), &[1, 0, 0]);
        let nu_p3 = nakayama(&projective(&alg, 2)).unwrap();
        assert_eq!(nu_p3.dims(), &[0, 1, 1]);
    }

    #[test]
    fn nakayama_rejects_non_projectives() {
        let alg = bound_a3();
        assert!(nakayama(&simple(&alg, 0)).is_err());
    }

    #[test]
    fn semisimple_nakayama_is_identity_on_simples() {
        let alg = semisimple_two();
        let p1 = projective(&alg, 0);
        assert_eq!(p1, simple(&alg, 0));
        assert_eq!(nakayama(&p1).unwrap(), simple(&alg, 0));
    }

    #[test]
    fn resolution_of_projective_is_a_stalk() {
        let alg = kronecker();
        let p1 = projective(&alg, 0);
        let res = projective_resolution(&p1).unwrap();
        assert_eq!(res.min_degree(), 0);
        assert_eq!(res.term(0), &[0]);
        assert_eq!(res.support_len(), 1);
    }

    #[test]
    fn resolution_of_kronecker_module() {
        // R_λ with λ = 2: matrices a ↦ 2, b ↦ 1, resolved by a − 2b.
        let alg = kronecker();
        let r = Representation::new(
            alg.clone(),
            vec![1, 1],
            vec![
                Matrix::from_i64(1, 1, &[2]),
                Matrix::from_i64(1, 1, &[1]),
            ],
        )
        .unwrap();
        let res = projective_resolution(&r).unwrap();
        assert_eq!(res.min_degree(), -1);
        assert_eq!(res.term(-1), &[1]); // P(2)
        assert_eq!(res.term(0), &[0]); // P(1)
        let d = res.diff(-1).unwrap();
        let entry = d.entry(0, 0);
        // entry = a − 2b as polynomial from vertex 1 to vertex 2
        let a = alg.reduce_raw_path(&[0], 0).unwrap();
        let b = alg.reduce_raw_path(&[1], 0).unwrap();
        let expected = alg
            .poly_sub(&a, &alg.poly_scale(&b, &scalar_int(2)))
            .unwrap();
        assert_eq!(entry, &expected);
    }

    #[test]
    fn resolution_of_simple_over_bound_a3() {
        let alg = bound_a3();
        let res = projective_resolution(&simple(&alg, 0)).unwrap();
        assert_eq!(res.min_degree(), -2);
        assert_eq!(res.term(-2), &[2]); // P(3)
        assert_eq!(res.term(-1), &[1]); // P(2)
        assert_eq!(res.term(0), &[0]); // P(1)
    }

    #[test]
    fn resolution_has_correct_homology() {
        let alg = bound_a3();
        let s1 = simple(&alg, 0);
        let res = projective_resolution(&s1).unwrap();
        let rc = res.realize().unwrap();
        let h = rc.homology_dims();
        assert_eq!(h.len(), 1);
        assert_eq!(h[&0], vec![1, 0, 0]);
    }

    #[test]
    fn resolution_is_minimal() {
        let alg = bound_a3();
        let res = projective_resolution(&simple(&alg, 0)).unwrap();
        assert!(res.is_minimal());
    }

    #[test]
    fn auslander_projective_is_injective() {
        let alg = auslander_dual_numbers();
        let p1 = projective(&alg, 0);
        assert_eq!(p1.dims(), &[2, 1]);
        let i1 = injective(&alg, 0);
        assert_eq!(i1.dims(), &[2, 1]);
        // P(1) ≅ I(1): the resolution of I(1) is a single stalk P(1)
        let res = projective_resolution(&i1).unwrap();
        assert_eq!(res.support_len(), 1);
        assert_eq!(res.term(0), &[0]);
    }
}
