//! Perfect complexes: bounded complexes of indecomposable projectives with
//! path-polynomial differentials, their shifts, cones, direct sums and
//! minimal models.
//!
//! Sign conventions, fixed for the whole crate: `shift(A, n)` translates
//! degrees by `−n` and multiplies differentials by `(−1)ⁿ`; the cone of a
//! degree-zero chain map `f: A → B` has terms `A^{n+1} ⊕ B^n` and
//! differential `[[−d_A, 0], [f, d_B]]`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{BoundQuiverAlgebra, PathPoly};
use crate::exact::Scalar;
use crate::rep::{poly_matrix_to_rep_map, rep_of_projectives, RepComplex, RepMap, Representation};
use crate::{Error, Result};

const NO_SUMMANDS: &[usize] = &[];

/// Matrix of path polynomials describing a map `⊕ P(col_labels) → ⊕ P(row_labels)`;
/// the entry `(i, j)` is a polynomial from `row_labels[i]` to `col_labels[j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMatrix {
    algebra: Arc<BoundQuiverAlgebra>,
    row_labels: Vec<usize>,
    col_labels: Vec<usize>,
    entries: Vec<PathPoly>, // row-major
}

impl PolyMatrix {
    pub fn new(
        algebra: Arc<BoundQuiverAlgebra>,
        row_labels: Vec<usize>,
        col_labels: Vec<usize>,
        entries: Vec<PathPoly>,
    ) -> Result<Self> {
        if entries.len() != row_labels.len() * col_labels.len() {
            return Err(Error::ShapeMismatch(format!(
                "poly matrix {}x{} expects {} entries, got {}",
                row_labels.len(),
                col_labels.len(),
                row_labels.len() * col_labels.len(),
                entries.len()
            )));
        }
        for i in 0..row_labels.len() {
            for j in 0..col_labels.len() {
                let e = &entries[i * col_labels.len() + j];
                if e.source != row_labels[i] || e.target != col_labels[j] {
                    return Err(Error::ShapeMismatch(format!(
                        "entry ({}, {}) runs {}→{}, expected {}→{}",
                        i,
                        j,
                        e.source + 1,
                        e.target + 1,
                        row_labels[i] + 1,
                        col_labels[j] + 1
                    )));
                }
            }
        }
        Ok(PolyMatrix {
            algebra,
            row_labels,
            col_labels,
            entries,
        })
    }

    pub fn zero(
        algebra: Arc<BoundQuiverAlgebra>,
        row_labels: Vec<usize>,
        col_labels: Vec<usize>,
    ) -> Self {
        let entries = row_labels
            .iter()
            .flat_map(|&r| col_labels.iter().map(move |&c| (r, c)))
            .map(|(r, c)| algebra.poly_zero(r, c))
            .collect();
        PolyMatrix {
            algebra,
            row_labels,
            col_labels,
            entries,
        }
    }

    pub fn identity(algebra: Arc<BoundQuiverAlgebra>, labels: Vec<usize>) -> Self {
        let mut m = PolyMatrix::zero(algebra.clone(), labels.clone(), labels);
        for i in 0..m.row_labels.len() {
            let v = m.row_labels[i];
            m.entries[i * m.col_labels.len() + i] = algebra.poly_trivial(v);
        }
        m
    }

    pub fn algebra(&self) -> &Arc<BoundQuiverAlgebra> {
        &self.algebra
    }

    pub fn rows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn cols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn row_labels(&self) -> &[usize] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[usize] {
        &self.col_labels
    }

    pub fn entry(&self, i: usize, j: usize) -> &PathPoly {
        &self.entries[i * self.col_labels.len() + j]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, p: PathPoly) {
        debug_assert_eq!(p.source, self.row_labels[i]);
        debug_assert_eq!(p.target, self.col_labels[j]);
        self.entries[i * self.col_labels.len() + j] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(PathPoly::is_zero)
    }

    /// Morphism composition `self ∘ earlier` (apply `earlier` first).
    pub fn compose(&self, earlier: &PolyMatrix) -> Result<PolyMatrix> {
        if self.col_labels != earlier.row_labels {
            return Err(Error::ShapeMismatch(
                "poly matrix composition: inner labels differ".into(),
            ));
        }
        let alg = &self.algebra;
        let mut out = PolyMatrix::zero(
            alg.clone(),
            self.row_labels.clone(),
            earlier.col_labels.clone(),
        );
        for i in 0..self.rows() {
            for j in 0..earlier.cols() {
                let mut acc = alg.poly_zero(self.row_labels[i], earlier.col_labels[j]);
                for k in 0..self.cols() {
                    let g = self.entry(i, k);
                    let f = earlier.entry(k, j);
                    if g.is_zero() || f.is_zero() {
                        continue;
                    }
                    // composite of morphisms is the algebra product f·g
                    acc = alg.poly_add(&acc, &alg.poly_mul(f, g)?)?;
                }
                out.set_entry(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.row_labels != other.row_labels || self.col_labels != other.col_labels {
            return Err(Error::ShapeMismatch("poly matrix addition shape".into()));
        }
        let entries: Result<Vec<PathPoly>> = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.algebra.poly_add(a, b))
            .collect();
        PolyMatrix::new(
            self.algebra.clone(),
            self.row_labels.clone(),
            self.col_labels.clone(),
            entries?,
        )
    }

    pub fn scale(&self, s: &Scalar) -> PolyMatrix {
        PolyMatrix {
            algebra: self.algebra.clone(),
            row_labels: self.row_labels.clone(),
            col_labels: self.col_labels.clone(),
            entries: self
                .entries
                .iter()
                .map(|e| self.algebra.poly_scale(e, s))
                .collect(),
        }
    }

    pub fn neg(&self) -> PolyMatrix {
        self.scale(&-Scalar::from_integer(1.into()))
    }

    /// Block matrix `[[a, b], [c, d]]`; any block may be `None` for zero.
    pub fn block2x2(
        algebra: Arc<BoundQuiverAlgebra>,
        top_rows: &[usize],
        bottom_rows: &[usize],
        left_cols: &[usize],
        right_cols: &[usize],
        a: Option<&PolyMatrix>,
        b: Option<&PolyMatrix>,
        c: Option<&PolyMatrix>,
        d: Option<&PolyMatrix>,
    ) -> Result<PolyMatrix> {
        let rows: Vec<usize> = top_rows.iter().chain(bottom_rows).cloned().collect();
        let cols: Vec<usize> = left_cols.iter().chain(right_cols).cloned().collect();
        let mut m = PolyMatrix::zero(algebra, rows, cols);
        let mut put = |blk: Option<&PolyMatrix>, ro: usize, co: usize| -> Result<()> {
            if let Some(bm) = blk {
                for i in 0..bm.rows() {
                    for j in 0..bm.cols() {
                        m.set_entry(ro + i, co + j, bm.entry(i, j).clone());
                    }
                }
            }
            Ok(())
        };
        put(a, 0, 0)?;
        put(b, 0, left_cols.len())?;
        put(c, top_rows.len(), 0)?;
        put(d, top_rows.len(), left_cols.len())?;
        Ok(m)
    }

    /// Keep only the selected rows and columns.
    pub fn submatrix(&self, keep_rows: &[usize], keep_cols: &[usize]) -> PolyMatrix {
        let row_labels: Vec<usize> = keep_rows.iter().map(|&i| self.row_labels[i]).collect();
        let col_labels: Vec<usize> = keep_cols.iter().map(|&j| self.col_labels[j]).collect();
        let mut entries = Vec::new();
        for &i in keep_rows {
            for &j in keep_cols {
                entries.push(self.entry(i, j).clone());
            }
        }
        PolyMatrix {
            algebra: self.algebra.clone(),
            row_labels,
            col_labels,
            entries,
        }
    }
}

/// Bounded complex of projectives. `terms[k]` lists the vertex labels of
/// the indecomposable projective summands in degree `min_degree + k`;
/// `diffs[k]` maps degree `min_degree + k` to the next degree.
#[derive(Debug, Clone)]
pub struct PerfectComplex {
    algebra: Arc<BoundQuiverAlgebra>,
    min_degree: i32,
    terms: Vec<Vec<usize>>,
    diffs: Vec<PolyMatrix>,
}

impl PartialEq for PerfectComplex {
    fn eq(&self, other: &Self) -> bool {
        *self.algebra == *other.algebra
            && self.min_degree == other.min_degree
            && self.terms == other.terms
            && self.diffs == other.diffs
    }
}

impl PerfectComplex {
    pub fn new(
        algebra: Arc<BoundQuiverAlgebra>,
        min_degree: i32,
        terms: Vec<Vec<usize>>,
        diffs: Vec<PolyMatrix>,
    ) -> Result<Self> {
        if !terms.is_empty() && diffs.len() + 1 != terms.len() {
            return Err(Error::ShapeMismatch(format!(
                "complex with {} terms needs {} differentials, got {}",
                terms.len(),
                terms.len() - 1,
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.col_labels() != terms[k].as_slice() || d.row_labels() != terms[k + 1].as_slice() {
                return Err(Error::ShapeMismatch(format!(
                    "differential {} does not match the adjacent terms",
                    k
                )));
            }
        }
        for k in 0..diffs.len().saturating_sub(1) {
            let dd = diffs[k + 1].compose(&diffs[k])?;
            if !dd.is_zero() {
                return Err(Error::ShapeMismatch(format!(
                    "d∘d ≠ 0 between degrees {} and {}",
                    min_degree + k as i32,
                    min_degree + k as i32 + 2
                )));
            }
        }
        let mut c = PerfectComplex {
            algebra,
            min_degree,
            terms,
            diffs,
        };
        c.normalize();
        Ok(c)
    }

    pub fn zero(algebra: Arc<BoundQuiverAlgebra>) -> Self {
        PerfectComplex {
            algebra,
            min_degree: 0,
            terms: Vec::new(),
            diffs: Vec::new(),
        }
    }

    /// Stalk complex with the given projective summands in one degree.
    pub fn stalk(
        algebra: Arc<BoundQuiverAlgebra>,
        degree: i32,
        labels: Vec<usize>,
    ) -> Self {
        if labels.is_empty() {
            return Self::zero(algebra);
        }
        PerfectComplex {
            algebra,
            min_degree: degree,
            terms: vec![labels],
            diffs: Vec::new(),
        }
    }

    fn normalize(&mut self) {
        while self.terms.first().map_or(false, Vec::is_empty) {
            self.terms.remove(0);
            if !self.diffs.is_empty() {
                self.diffs.remove(0);
            }
            self.min_degree += 1;
        }
        while self.terms.last().map_or(false, Vec::is_empty) {
            self.terms.pop();
            self.diffs.pop();
        }
        if self.terms.is_empty() {
            self.min_degree = 0;
            self.diffs.clear();
        }
    }

    pub fn algebra(&self) -> &Arc<BoundQuiverAlgebra> {
        &self.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(Vec::is_empty)
    }

    pub fn min_degree(&self) -> i32 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i32 {
        self.min_degree + self.terms.len() as i32 - 1
    }

    pub fn support_len(&self) -> usize {
        self.terms.iter().filter(|t| !t.is_empty()).count()
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        (self.min_degree..=self.max_degree()).filter(|d| !self.term(*d).is_empty())
    }

    pub fn term(&self, degree: i32) -> &[usize] {
        let idx = degree - self.min_degree;
        if idx < 0 || idx as usize >= self.terms.len() {
            return NO_SUMMANDS;
        }
        &self.terms[idx as usize]
    }

    /// Differential from `degree` to `degree + 1`, materialized as a zero
    /// matrix outside the stored range.
    pub fn diff(&self, degree: i32) -> Option<PolyMatrix> {
        let idx = degree - self.min_degree;
        if idx >= 0 && (idx as usize) < self.diffs.len() {
            return Some(self.diffs[idx as usize].clone());
        }
        let src = self.term(degree);
        let dst = self.term(degree + 1);
        if src.is_empty() && dst.is_empty() {
            return None;
        }
        Some(PolyMatrix::zero(
            self.algebra.clone(),
            dst.to_vec(),
            src.to_vec(),
        ))
    }

    /// Per-degree summand labels, for structural comparisons.
    pub fn graded_terms(&self) -> BTreeMap<i32, Vec<usize>> {
        let mut out = BTreeMap::new();
        for d in self.min_degree..=self.max_degree() {
            let t = self.term(d);
            if !t.is_empty() {
                out.insert(d, t.to_vec());
            }
        }
        out
    }

    /// Degrees translated by `−n`, differentials multiplied by `(−1)ⁿ`.
    pub fn shift(&self, n: i32) -> PerfectComplex {
        if self.is_zero() {
            return self.clone();
        }
        let sign = if n.rem_euclid(2) == 0 { 1i64 } else { -1 };
        let diffs = self
            .diffs
            .iter()
            .map(|d| {
                if sign == 1 {
                    d.clone()
                } else {
                    d.neg()
                }
            })
            .collect();
        PerfectComplex {
            algebra: self.algebra.clone(),
            min_degree: self.min_degree - n,
            terms: self.terms.clone(),
            diffs,
        }
    }

    /// Direct sum; the second return value gives, per input complex and
    /// degree, the offset of its summands inside the sum's term.
    pub fn direct_sum(parts: &[&PerfectComplex]) -> Result<(PerfectComplex, Vec<BTreeMap<i32, usize>>)> {
        let nonzero: Vec<&&PerfectComplex> = parts.iter().filter(|p| !p.is_zero()).collect();
        let Some(first) = nonzero.first() else {
            let alg = parts
                .first()
                .map(|p| p.algebra.clone())
                .ok_or_else(|| Error::ShapeMismatch("empty direct sum".into()))?;
            return Ok((PerfectComplex::zero(alg), vec![BTreeMap::new(); parts.len()]));
        };
        let alg = first.algebra.clone();
        for p in parts {
            if *p.algebra != *alg {
                return Err(Error::AlgebraMismatch);
            }
        }
        let min = nonzero.iter().map(|p| p.min_degree).min().unwrap();
        let max = nonzero.iter().map(|p| p.max_degree()).max().unwrap();
        let mut offsets = vec![BTreeMap::new(); parts.len()];
        let mut terms = Vec::new();
        for d in min..=max {
            let mut t = Vec::new();
            for (pi, p) in parts.iter().enumerate() {
                offsets[pi].insert(d, t.len());
                t.extend_from_slice(p.term(d));
            }
            terms.push(t);
        }
        let mut diffs = Vec::new();
        for d in min..max {
            let rows: Vec<usize> = terms[(d - min) as usize + 1].clone();
            let cols: Vec<usize> = terms[(d - min) as usize].clone();
            let mut m = PolyMatrix::zero(alg.clone(), rows, cols);
            let mut row_off = 0;
            let mut col_off = 0;
            for p in parts {
                let src = p.term(d);
                let dst = p.term(d + 1);
                if let Some(pd) = p.diff(d) {
                    for i in 0..dst.len() {
                        for j in 0..src.len() {
                            m.set_entry(row_off + i, col_off + j, pd.entry(i, j).clone());
                        }
                    }
                }
                row_off += dst.len();
                col_off += src.len();
            }
            diffs.push(m);
        }
        let sum = PerfectComplex::new(alg, min, terms, diffs)?;
        Ok((sum, offsets))
    }

    /// A complex is minimal when every differential entry lies in the
    /// arrow ideal.
    pub fn is_minimal(&self) -> bool {
        self.diffs.iter().all(|d| {
            (0..d.rows()).all(|i| {
                (0..d.cols()).all(|j| self.algebra.trivial_coefficient(d.entry(i, j)).is_zero())
            })
        })
    }

    /// Gaussian cancellation of contractible summand pairs until the
    /// differential lies in the arrow ideal. Homotopy-equivalent to the
    /// input; the zero complex comes back exactly when the input is
    /// contractible.
    pub fn minimize(&self) -> PerfectComplex {
        let mut terms: Vec<Vec<usize>> = self.terms.clone();
        let mut diffs: Vec<PolyMatrix> = self.diffs.clone();
        let alg = self.algebra.clone();
        'outer: loop {
            for k in 0..diffs.len() {
                let d = &diffs[k];
                for r in 0..d.rows() {
                    for c in 0..d.cols() {
                        let u = d.entry(r, c);
                        if alg.trivial_coefficient(u).is_zero() {
                            continue;
                        }
                        let u_inv = alg.poly_invert(u).expect("unit entry inverts");
                        let keep_rows: Vec<usize> =
                            (0..d.rows()).filter(|&i| i != r).collect();
                        let keep_cols: Vec<usize> =
                            (0..d.cols()).filter(|&j| j != c).collect();
                        // corrected differential δ − γ u⁻¹ β
                        let mut new_d = d.submatrix(&keep_rows, &keep_cols);
                        for (ni, &i) in keep_rows.iter().enumerate() {
                            for (nj, &j) in keep_cols.iter().enumerate() {
                                let gamma = d.entry(i, c);
                                let beta = d.entry(r, j);
                                if gamma.is_zero() || beta.is_zero() {
                                    continue;
                                }
                                let mid = alg.poly_mul(beta, &u_inv).expect("typed");
                                let corr = alg.poly_mul(&mid, gamma).expect("typed");
                                let cur = new_d.entry(ni, nj).clone();
                                let upd = alg
                                    .poly_sub(&cur, &corr)
                                    .expect("typed");
                                new_d.set_entry(ni, nj, upd);
                            }
                        }
                        diffs[k] = new_d;
                        // restrict the neighbours
                        if k > 0 {
                            let all_cols: Vec<usize> = (0..diffs[k - 1].cols()).collect();
                            diffs[k - 1] = diffs[k - 1].submatrix(&keep_cols, &all_cols);
                        }
                        if k + 1 < diffs.len() {
                            let all_rows: Vec<usize> = (0..diffs[k + 1].rows()).collect();
                            diffs[k + 1] = diffs[k + 1].submatrix(&all_rows, &keep_rows);
                        }
                        terms[k].remove(c);
                        terms[k + 1].remove(r);
                        continue 'outer;
                    }
                }
            }
            break;
        }
        PerfectComplex::new(alg, self.min_degree, terms, diffs)
            .expect("cancellation preserves d∘d = 0")
    }

    /// Realize the complex as a complex of representations.
    pub fn realize(&self) -> Result<RepComplex> {
        let mut terms = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        if self.is_zero() {
            return Ok(RepComplex { terms, diffs });
        }
        for d in self.min_degree..=self.max_degree() {
            terms.insert(d, rep_of_projectives(&self.algebra, self.term(d)));
        }
        for d in self.min_degree..self.max_degree() {
            let pd = self
                .diff(d)
                .unwrap_or_else(|| PolyMatrix::zero(self.algebra.clone(), vec![], vec![]));
            diffs.insert(d, poly_matrix_to_rep_map(&pd)?);
        }
        let rc = RepComplex { terms, diffs };
        rc.validate()?;
        Ok(rc)
    }

    /// Per-degree cohomology dimension vectors of the realized complex.
    pub fn homology_dims(&self) -> Result<BTreeMap<i32, Vec<usize>>> {
        Ok(self.realize()?.homology_dims())
    }
}

/// Degree-`n` chain map between perfect complexes: blocks
/// `source^i → target^{i+n}` with `d∘f = (−1)ⁿ f∘d`.
#[derive(Debug, Clone)]
pub struct ChainMap {
    degree: i32,
    source: PerfectComplex,
    target: PerfectComplex,
    blocks: BTreeMap<i32, PolyMatrix>,
}

impl ChainMap {
    pub fn new(
        source: PerfectComplex,
        target: PerfectComplex,
        degree: i32,
        blocks: BTreeMap<i32, PolyMatrix>,
    ) -> Result<Self> {
        if *source.algebra() != *target.algebra() {
            return Err(Error::AlgebraMismatch);
        }
        let f = ChainMap {
            degree,
            source,
            target,
            blocks,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn zero(source: PerfectComplex, target: PerfectComplex, degree: i32) -> Self {
        ChainMap {
            degree,
            source,
            target,
            blocks: BTreeMap::new(),
        }
    }

    pub fn identity(c: &PerfectComplex) -> Self {
        let mut blocks = BTreeMap::new();
        for d in c.min_degree()..=c.max_degree() {
            if !c.term(d).is_empty() {
                blocks.insert(
                    d,
                    PolyMatrix::identity(c.algebra().clone(), c.term(d).to_vec()),
                );
            }
        }
        ChainMap {
            degree: 0,
            source: c.clone(),
            target: c.clone(),
            blocks,
        }
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn source(&self) -> &PerfectComplex {
        &self.source
    }

    pub fn target(&self) -> &PerfectComplex {
        &self.target
    }

    pub fn block(&self, i: i32) -> PolyMatrix {
        if let Some(b) = self.blocks.get(&i) {
            return b.clone();
        }
        PolyMatrix::zero(
            self.source.algebra().clone(),
            self.target.term(i + self.degree).to_vec(),
            self.source.term(i).to_vec(),
        )
    }

    pub fn blocks(&self) -> &BTreeMap<i32, PolyMatrix> {
        &self.blocks
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(PolyMatrix::is_zero)
    }

    fn validate(&self) -> Result<()> {
        for (&i, b) in &self.blocks {
            if b.col_labels() != self.source.term(i)
                || b.row_labels() != self.target.term(i + self.degree)
            {
                return Err(Error::ShapeMismatch(format!(
                    "chain map block at degree {} has wrong shape",
                    i
                )));
            }
        }
        // d_B ∘ f = (−1)ⁿ f ∘ d_A in every degree touching the supports
        let lo = self.source.min_degree().min(self.target.min_degree() - self.degree) - 1;
        let hi = self.source.max_degree().max(self.target.max_degree() - self.degree) + 1;
        let sign = if self.degree.rem_euclid(2) == 0 { 1i64 } else { -1 };
        for i in lo..=hi {
            let left = match self.target.diff(i + self.degree) {
                Some(db) => db.compose(&self.block(i))?,
                None => continue,
            };
            let right = match self.source.diff(i) {
                Some(da) => {
                    let fd = self.block(i + 1).compose(&da)?;
                    if sign == 1 {
                        fd
                    } else {
                        fd.neg()
                    }
                }
                None => continue,
            };
            let delta = left.add(&right.neg())?;
            if !delta.is_zero() {
                return Err(Error::ShapeMismatch(format!(
                    "chain map fails to commute with differentials at degree {}",
                    i
                )));
            }
        }
        Ok(())
    }

    /// Composition `self ∘ earlier`; degrees add.
    pub fn compose(&self, earlier: &ChainMap) -> Result<ChainMap> {
        if earlier.target != self.source {
            return Err(Error::ShapeMismatch(
                "chain map composition: middle complexes differ".into(),
            ));
        }
        let mut blocks = BTreeMap::new();
        for i in earlier.source.min_degree()..=earlier.source.max_degree() {
            if earlier.source.term(i).is_empty() {
                continue;
            }
            let mid = i + earlier.degree;
            if self.source.term(mid).is_empty() {
                continue;
            }
            let b = self.block(mid).compose(&earlier.block(i))?;
            if !b.is_zero() {
                blocks.insert(i, b);
            }
        }
        ChainMap::new(
            earlier.source.clone(),
            self.target.clone(),
            self.degree + earlier.degree,
            blocks,
        )
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        if self.degree != other.degree {
            return Err(Error::ShapeMismatch("adding chain maps of different degrees".into()));
        }
        let mut blocks = BTreeMap::new();
        let keys: Vec<i32> = self
            .blocks
            .keys()
            .chain(other.blocks.keys())
            .cloned()
            .collect();
        for i in keys {
            if blocks.contains_key(&i) {
                continue;
            }
            let b = self.block(i).add(&other.block(i))?;
            if !b.is_zero() {
                blocks.insert(i, b);
            }
        }
        ChainMap::new(
            self.source.clone(),
            self.target.clone(),
            self.degree,
            blocks,
        )
    }

    pub fn scale(&self, s: &Scalar) -> ChainMap {
        let blocks = self
            .blocks
            .iter()
            .map(|(&i, b)| (i, b.scale(s)))
            .collect();
        ChainMap {
            degree: self.degree,
            source: self.source.clone(),
            target: self.target.clone(),
            blocks,
        }
    }

    /// Reinterpret a degree-`n` map `F → A` as a degree-zero chain map
    /// `shift(F, −n) → A`; the blocks are reindexed, no signs change.
    pub fn to_degree_zero_from_shifted_source(&self) -> Result<ChainMap> {
        let n = self.degree;
        let new_source = self.source.shift(-n);
        let blocks = self
            .blocks
            .iter()
            .map(|(&i, b)| (i + n, b.clone()))
            .collect();
        ChainMap::new(new_source, self.target.clone(), 0, blocks)
    }

    /// Reinterpret a degree-`n` map `A → F` as a degree-zero chain map
    /// `A → shift(F, n)`; block indices are unchanged.
    pub fn to_degree_zero_into_shifted_target(&self) -> Result<ChainMap> {
        let n = self.degree;
        let new_target = self.target.shift(n);
        ChainMap::new(self.source.clone(), new_target, 0, self.blocks.clone())
    }
}

/// Standard mapping cone of a degree-zero chain map: term
/// `A^{n+1} ⊕ B^n`, differential `[[−d_A, 0], [f, d_B]]`.
pub fn cone(f: &ChainMap) -> Result<PerfectComplex> {
    if f.degree() != 0 {
        return Err(Error::ShapeMismatch("cone needs a degree-zero chain map".into()));
    }
    let a = f.source();
    let b = f.target();
    let alg = a.algebra().clone();
    if a.is_zero() && b.is_zero() {
        return Ok(PerfectComplex::zero(alg));
    }
    let lo = (a.min_degree() - 1).min(b.min_degree());
    let hi = (a.max_degree() - 1).max(b.max_degree());
    let mut terms = Vec::new();
    for n in lo..=hi {
        let mut t = a.term(n + 1).to_vec();
        t.extend_from_slice(b.term(n));
        terms.push(t);
    }
    let mut diffs = Vec::new();
    for n in lo..hi {
        let da = a
            .diff(n + 1)
            .map(|d| d.neg());
        let db = b.diff(n);
        let fb = f.block(n + 1);
        let m = PolyMatrix::block2x2(
            alg.clone(),
            a.term(n + 2),
            b.term(n + 1),
            a.term(n + 1),
            b.term(n),
            da.as_ref(),
            None,
            Some(&fb),
            db.as_ref(),
        )?;
        diffs.push(m);
    }
    PerfectComplex::new(alg, lo, terms, diffs)
}

/// Euler pairing computed by pure path counting on the graded terms:
/// `Σ_{i,j} (−1)^{j−i} dim Hom(Aⁱ, Bʲ)` with `dim Hom(P(v), P(w))` the
/// number of basis paths `w → v`. Deliberately independent of the graded
/// Hom machinery, which cross-checks it.
pub fn euler_pairing_complexes(a: &PerfectComplex, b: &PerfectComplex) -> Result<i64> {
    if *a.algebra() != *b.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    let alg = a.algebra();
    let mut total: i64 = 0;
    for i in a.min_degree()..=a.max_degree() {
        for j in b.min_degree()..=b.max_degree() {
            let mut dim = 0i64;
            for &v in a.term(i) {
                for &w in b.term(j) {
                    dim += alg.paths_from_to(w, v).len() as i64;
                }
            }
            if dim != 0 {
                let sign = if (j - i).rem_euclid(2) == 0 { 1 } else { -1 };
                total += sign * dim;
            }
        }
    }
    Ok(total)
}

/// Realize a chain map as per-degree maps of representations; used by
/// tests to cross-check the morphism conventions.
pub fn chain_map_realize(f: &ChainMap) -> Result<BTreeMap<i32, RepMap>> {
    let mut out = BTreeMap::new();
    for (&i, b) in f.blocks() {
        out.insert(i, poly_matrix_to_rep_map(b)?);
    }
    Ok(out)
}

/// Zero representation map placeholder used when either side is empty.
pub fn empty_rep(algebra: &Arc<BoundQuiverAlgebra>) -> Representation {
    Representation::zero(algebra.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::presets::*;
    use crate::exact::scalar_int;
    use crate::rep::{projective_resolution, Representation};
    use crate::exact::Matrix;

    fn kronecker_r_lambda(lambda: i64) -> PerfectComplex {
        let alg = kronecker();
        let r = Representation::new(
            alg.clone(),
            vec![1, 1],
            vec![
                Matrix::from_i64(1, 1, &[lambda]),
                Matrix::from_i64(1, 1, &[1]),
            ],
        )
        .unwrap();
        projective_resolution(&r).unwrap()
    }

    #[test]
    fn shift_round_trip() {
        let alg = kronecker();
        let a = kronecker_r_lambda(1);
        assert_eq!(a.shift(0), a);
        assert_eq!(a.shift(1).shift(-1), a);
        let stalk = PerfectComplex::stalk(alg, 0, vec![0]);
        let shifted = stalk.shift(2);
        assert_eq!(shifted.min_degree(), -2);
        assert_eq!(shifted.term(-2), &[0]);
    }

    #[test]
    fn cone_of_identity_is_contractible() {
        let a = kronecker_r_lambda(2);
        let id = ChainMap::identity(&a);
        let c = cone(&id).unwrap();
        assert!(!c.is_zero());
        assert!(c.minimize().is_zero());
    }

    #[test]
    fn cone_of_zero_map_is_shift_plus_target() {
        let alg = kronecker();
        let a = PerfectComplex::stalk(alg.clone(), 0, vec![0]);
        let b = PerfectComplex::stalk(alg.clone(), 0, vec![1]);
        let z = ChainMap::zero(a.clone(), b.clone(), 0);
        let c = cone(&z).unwrap().minimize();
        // a[1] ⊕ b: term at −1 is P(1), at 0 is P(2)
        assert_eq!(c.term(-1), &[0]);
        assert_eq!(c.term(0), &[1]);
    }

    #[test]
    fn cone_of_pencil_map_is_kronecker_module_resolution() {
        let alg = kronecker();
        let p2 = PerfectComplex::stalk(alg.clone(), 0, vec![1]);
        let p1 = PerfectComplex::stalk(alg.clone(), 0, vec![0]);
        let a = alg.reduce_raw_path(&[0], 0).unwrap();
        let b = alg.reduce_raw_path(&[1], 0).unwrap();
        let pencil = alg
            .poly_sub(&a, &alg.poly_scale(&b, &scalar_int(2)))
            .unwrap();
        let m = PolyMatrix::new(alg.clone(), vec![0], vec![1], vec![pencil]).unwrap();
        let mut blocks = BTreeMap::new();
        blocks.insert(0, m);
        let f = ChainMap::new(p2, p1, 0, blocks).unwrap();
        let c = cone(&f).unwrap().minimize();
        let res = kronecker_r_lambda(2).shift(0);
        // the cone lives one degree lower: P(2) in −1 ... matches res R_2
        assert_eq!(c.graded_terms(), res.graded_terms());
        assert_eq!(c, res);
    }

    #[test]
    fn minimize_is_idempotent_and_preserves_minimal() {
        let a = kronecker_r_lambda(0);
        let m = a.minimize();
        assert_eq!(m, a); // already minimal
        let id = ChainMap::identity(&a);
        let c = cone(&id).unwrap();
        let (sum, _) = PerfectComplex::direct_sum(&[&a, &c]).unwrap();
        let min = sum.minimize();
        assert_eq!(min.minimize(), min);
        assert_eq!(min.graded_terms(), a.graded_terms());
    }

    #[test]
    fn homology_of_resolution_is_concentrated() {
        let a = kronecker_r_lambda(3);
        let h = a.homology_dims().unwrap();
        assert_eq!(h.len(), 1);
        assert_eq!(h[&0], vec![1, 1]);
    }

    #[test]
    fn euler_pairing_examples() {
        let alg = kronecker();
        let p1 = PerfectComplex::stalk(alg.clone(), 0, vec![0]);
        assert_eq!(euler_pairing_complexes(&p1, &p1).unwrap(), 1);
        let r = kronecker_r_lambda(1);
        assert_eq!(euler_pairing_complexes(&r, &r).unwrap(), 0);
        let z = PerfectComplex::zero(alg);
        assert_eq!(euler_pairing_complexes(&r, &z).unwrap(), 0);
    }

    #[test]
    fn cone_euler_additivity() {
        let alg = kronecker();
        let p2 = PerfectComplex::stalk(alg.clone(), 0, vec![1]);
        let p1 = PerfectComplex::stalk(alg.clone(), 0, vec![0]);
        let a = alg.reduce_raw_path(&[0], 0).unwrap();
        let m = PolyMatrix::new(alg.clone(), vec![0], vec![1], vec![a]).unwrap();
        let mut blocks = BTreeMap::new();
        blocks.insert(0, m);
        let f = ChainMap::new(p2.clone(), p1.clone(), 0, blocks).unwrap();
        let c = cone(&f).unwrap();
        for x in [&p1, &p2, &kronecker_r_lambda(1)] {
            let lhs = euler_pairing_complexes(&c, x).unwrap();
            let rhs = euler_pairing_complexes(&p1, x).unwrap()
                - euler_pairing_complexes(&p2, x).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    mod prop {
        use super::super::*;
        use crate::algebra::presets::kronecker;
        use crate::exact::scalar_int;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]

            /// Two-term complexes with radical entries are minimal; padding
            /// them with contractible pairs must minimize back to the same
            /// graded shape, idempotently.
            #[test]
            fn minimize_strips_padding(
                entries in proptest::collection::vec((-3i64..=3, -3i64..=3), 1..5),
                pad in 1usize..3,
            ) {
                let alg = kronecker();
                let rows = vec![0usize; entries.len()];
                let a = alg.reduce_raw_path(&[0], 0).unwrap();
                let b = alg.reduce_raw_path(&[1], 0).unwrap();
                let polys: Vec<_> = entries
                    .iter()
                    .map(|(ca, cb)| {
                        alg.poly_add(
                            &alg.poly_scale(&a, &scalar_int(*ca)),
                            &alg.poly_scale(&b, &scalar_int(*cb)),
                        )
                        .unwrap()
                    })
                    .collect();
                let d = PolyMatrix::new(alg.clone(), rows.clone(), vec![1], polys).unwrap();
                let two_term =
                    PerfectComplex::new(alg.clone(), -1, vec![vec![1], rows], vec![d]).unwrap();
                prop_assert!(two_term.is_minimal());

                let padding = PerfectComplex::stalk(alg.clone(), 0, vec![0; pad]);
                let id = ChainMap::identity(&padding);
                let contractible = cone(&id).unwrap();
                let (sum, _) = PerfectComplex::direct_sum(&[&two_term, &contractible]).unwrap();
                let min = sum.minimize();
                prop_assert_eq!(min.graded_terms(), two_term.graded_terms());
                prop_assert_eq!(min.minimize(), min.clone());
            }
        }
    }

    #[test]
    fn composition_matches_representation_composition() {
        // Lock the morphism-order convention against representation maps
        // over a noncommutative example.
        let alg = auslander_dual_numbers();
        let p1 = PerfectComplex::stalk(alg.clone(), 0, vec![0]);
        let p2 = PerfectComplex::stalk(alg.clone(), 0, vec![1]);
        let a = alg.reduce_raw_path(&[0], 0).unwrap(); // a: 1→2, morphism P(2) → P(1)
        let b = alg.reduce_raw_path(&[1], 1).unwrap(); // b: 2→1, morphism P(1) → P(2)
        let f = {
            let m = PolyMatrix::new(alg.clone(), vec![0], vec![1], vec![a]).unwrap();
            let mut blocks = BTreeMap::new();
            blocks.insert(0, m);
            ChainMap::new(p2.clone(), p1.clone(), 0, blocks).unwrap()
        };
        let g = {
            let m = PolyMatrix::new(alg.clone(), vec![1], vec![0], vec![b]).unwrap();
            let mut blocks = BTreeMap::new();
            blocks.insert(0, m);
            ChainMap::new(p1.clone(), p2.clone(), 0, blocks).unwrap()
        };
        // g∘f: P(2) → P(2) is multiplication by a·b = 0
        let gf = g.compose(&f).unwrap();
        assert!(gf.is_zero());
        // f∘g: P(1) → P(1) is multiplication by b·a ≠ 0
        let fg = f.compose(&g).unwrap();
        assert!(!fg.is_zero());

        // cross-check against the representation-level composites
        let rf = chain_map_realize(&f).unwrap();
        let rg = chain_map_realize(&g).unwrap();
        let comp = rf[&0].compose(&rg[&0]).unwrap(); // f after g
        let direct = chain_map_realize(&fg).unwrap();
        for v in 0..2 {
            assert_eq!(comp.mats[v], direct[&0].mats[v]);
        }
    }
}
