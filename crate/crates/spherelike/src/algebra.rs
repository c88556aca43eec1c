//! Bound quiver algebras.
//!
//! An algebra is presented by a finite quiver and an admissible relation
//! ideal. Building it computes a monomial path basis (the standard
//! monomials of the relation row space), a closed multiplication table on
//! that basis, and the global dimension; presentations that fail to
//! terminate within the admissibility bound or have a simple with an
//! unbounded resolution are rejected.
//!
//! Conventions, fixed once for the whole crate:
//! * paths compose like functions: `mul(x, y)` is "first `y`, then `x`";
//! * modules are right modules; the indecomposable projective `P(v)` has
//!   basis the paths with source `v`;
//! * a morphism `P(v) → P(w)` is a [`PathPoly`] from `w` to `v`, acting by
//!   multiplication on path bases.

use std::sync::{Arc, OnceLock};

use num_traits::Zero;

use crate::exact::{Matrix, Scalar};
use crate::rep;
use crate::{Error, Result};

/// Hard caps for the closure computation; exceeding either one is reported
/// as a failure to terminate within the admissibility bound.
const LENGTH_CAP: usize = 48;
const PATH_COUNT_CAP: usize = 60_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// Finite quiver with 0-based vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<Arrow>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidQuiver("quiver needs at least one vertex".into()));
        }
        for a in &arrows {
            if a.source >= vertex_count || a.target >= vertex_count {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {} has endpoint out of range",
                    a.name
                )));
            }
        }
        for i in 0..arrows.len() {
            for j in i + 1..arrows.len() {
                if arrows[i].name == arrows[j].name {
                    return Err(Error::InvalidQuiver(format!(
                        "duplicate arrow name {}",
                        arrows[i].name
                    )));
                }
            }
        }
        Ok(Quiver { vertex_count, arrows })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }
}

/// A path in the quiver; `arrows` are listed in application order, so the
/// path `[a, b]` means "first `a`, then `b`" and is displayed `b*a`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Path {
    len_key: usize, // ensures the derived order is length-first
    arrows: Vec<usize>,
    source: usize,
    target: usize,
}

impl Path {
    fn trivial(v: usize) -> Self {
        Path {
            len_key: 0,
            arrows: Vec::new(),
            source: v,
            target: v,
        }
    }

    fn append(&self, quiver: &Quiver, arrow: usize) -> Option<Self> {
        let a = &quiver.arrows[arrow];
        if a.source != self.target {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.push(arrow);
        Some(Path {
            len_key: arrows.len(),
            arrows,
            source: self.source,
            target: a.target,
        })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn arrow_indices(&self) -> &[usize] {
        &self.arrows
    }

    /// Composition-order display, e.g. `b*a` for "first a then b";
    /// trivial paths display as `e<vertex+1>`.
    pub fn display(&self, quiver: &Quiver) -> String {
        if self.arrows.is_empty() {
            return format!("e{}", self.source + 1);
        }
        self.arrows
            .iter()
            .rev()
            .map(|&i| quiver.arrows[i].name.clone())
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Raw (unreduced) rational combination of parallel paths, used for
/// relation input and parsing; reduced forms live in [`PathPoly`].
#[derive(Debug, Clone)]
pub struct RawPoly {
    pub terms: Vec<(Scalar, Vec<usize>)>, // (coefficient, arrows in application order)
    pub source: usize,
    pub target: usize,
}

/// Element of the algebra in reduced form: coordinates on the path basis.
/// `source`/`target` type the element as a combination of parallel paths,
/// which is what morphism matrices between projectives require.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathPoly {
    pub source: usize,
    pub target: usize,
    /// Sorted by basis index, zero coefficients removed.
    pub terms: Vec<(usize, Scalar)>,
}

impl PathPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, basis_idx: usize) -> Scalar {
        self.terms
            .iter()
            .find(|(i, _)| *i == basis_idx)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Scalar::zero)
    }
}

/// Bound quiver algebra with computed path basis and multiplication table.
#[derive(Debug)]
pub struct BoundQuiverAlgebra {
    quiver: Quiver,
    relations: Vec<RawPoly>,
    /// Standard monomials, ascending in (length, arrow sequence) order.
    basis: Vec<Path>,
    /// Basis index of each trivial path.
    trivial_idx: Vec<usize>,
    /// `table[i][j]` = reduced product basis_i · basis_j ("first j then i"),
    /// `None` when the paths do not compose.
    table: Vec<Vec<Option<PathPoly>>>,
    /// Basis indices of paths from `v` to `w`, indexed `[v][w]`.
    from_to: Vec<Vec<Vec<usize>>>,
    gl_dim: OnceLock<usize>,
}

impl PartialEq for BoundQuiverAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.quiver == other.quiver && self.basis == other.basis
    }
}

impl BoundQuiverAlgebra {
    /// Build the algebra from a quiver and admissible relations.
    ///
    /// Admissibility demands every relation summand to be a path of length
    /// at least two and the arrow ideal to be nilpotent modulo the
    /// relations; the basis computation enlarges its length bound until the
    /// standard monomials stabilize, and gives up at the cap.
    pub fn build(quiver: Quiver, relations: Vec<RawPoly>) -> Result<Arc<Self>> {
        validate_relations(&quiver, &relations)?;

        let mut prev: Option<Vec<Path>> = None;
        let mut bound = 2usize;
        let (basis, reducer) = loop {
            if bound > LENGTH_CAP {
                return Err(Error::InfiniteDimension(format!(
                    "standard monomials still changing at length bound {}",
                    LENGTH_CAP
                )));
            }
            let (basis, reducer) = standard_basis(&quiver, &relations, bound)?;
            let max_len = basis.iter().map(Path::len).max().unwrap_or(0);
            if let Some(p) = &prev {
                if *p == basis && max_len + 2 <= bound {
                    let final_bound = (2 * max_len + 2).max(bound);
                    if final_bound == bound {
                        break (basis, reducer);
                    }
                    let (basis2, reducer2) = standard_basis(&quiver, &relations, final_bound)?;
                    if basis2 == basis {
                        break (basis2, reducer2);
                    }
                    prev = Some(basis2);
                    bound = final_bound + 1;
                    continue;
                }
            }
            prev = Some(basis);
            bound += 1;
        };

        let mut trivial_idx = vec![usize::MAX; quiver.vertex_count()];
        for (i, p) in basis.iter().enumerate() {
            if p.is_empty() {
                trivial_idx[p.source] = i;
            }
        }
        debug_assert!(trivial_idx.iter().all(|&i| i != usize::MAX));

        // Multiplication table; concatenations stay within the reducer's
        // bound because of the 2·max_len margin above.
        let n = basis.len();
        let mut table = vec![vec![None; n]; n];
        for i in 0..n {
            for j in 0..n {
                if basis[j].target == basis[i].source {
                    let mut arrows = basis[j].arrows.clone();
                    arrows.extend_from_slice(&basis[i].arrows);
                    let poly = reducer.reduce_concat(&arrows, basis[j].source, basis[i].target)?;
                    table[i][j] = Some(poly);
                }
            }
        }

        let mut from_to = vec![vec![Vec::new(); quiver.vertex_count()]; quiver.vertex_count()];
        for (i, p) in basis.iter().enumerate() {
            from_to[p.source][p.target].push(i);
        }

        let alg = Arc::new(BoundQuiverAlgebra {
            quiver,
            relations,
            basis,
            trivial_idx,
            table,
            from_to,
            gl_dim: OnceLock::new(),
        });

        alg.check_arrow_ideal_nilpotent()?;
        let gd = rep::compute_global_dimension(&alg)?;
        alg.gl_dim.set(gd).expect("global dimension set once");
        Ok(alg)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[RawPoly] {
        &self.relations
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn basis_path(&self, i: usize) -> &Path {
        &self.basis[i]
    }

    pub fn global_dimension(&self) -> usize {
        *self.gl_dim.get().expect("algebra fully built")
    }

    /// Basis indices of paths with source `v` and target `w`.
    pub fn paths_from_to(&self, v: usize, w: usize) -> &[usize] {
        &self.from_to[v][w]
    }

    pub fn trivial_basis_index(&self, v: usize) -> usize {
        self.trivial_idx[v]
    }

    pub fn poly_zero(&self, source: usize, target: usize) -> PathPoly {
        PathPoly {
            source,
            target,
            terms: Vec::new(),
        }
    }

    pub fn poly_of_basis(&self, i: usize) -> PathPoly {
        let p = &self.basis[i];
        PathPoly {
            source: p.source,
            target: p.target,
            terms: vec![(i, num_traits::One::one())],
        }
    }

    pub fn poly_trivial(&self, v: usize) -> PathPoly {
        self.poly_of_basis(self.trivial_idx[v])
    }

    pub fn poly_add(&self, a: &PathPoly, b: &PathPoly) -> Result<PathPoly> {
        if a.source != b.source || a.target != b.target {
            return Err(Error::ShapeMismatch(
                "adding path polynomials with different endpoints".into(),
            ));
        }
        let mut terms = a.terms.clone();
        for (i, c) in &b.terms {
            match terms.binary_search_by_key(i, |(k, _)| *k) {
                Ok(pos) => {
                    terms[pos].1 += c;
                }
                Err(pos) => terms.insert(pos, (*i, c.clone())),
            }
        }
        terms.retain(|(_, c)| !c.is_zero());
        Ok(PathPoly {
            source: a.source,
            target: a.target,
            terms,
        })
    }

    pub fn poly_scale(&self, a: &PathPoly, s: &Scalar) -> PathPoly {
        if s.is_zero() {
            return self.poly_zero(a.source, a.target);
        }
        PathPoly {
            source: a.source,
            target: a.target,
            terms: a.terms.iter().map(|(i, c)| (*i, c * s)).collect(),
        }
    }

    pub fn poly_neg(&self, a: &PathPoly) -> PathPoly {
        self.poly_scale(a, &-Scalar::from_integer(1.into()))
    }

    pub fn poly_sub(&self, a: &PathPoly, b: &PathPoly) -> Result<PathPoly> {
        self.poly_add(a, &self.poly_neg(b))
    }

    /// Algebra product `x·y` = "first `y`, then `x`"; requires
    /// `source(x) == target(y)`.
    pub fn poly_mul(&self, x: &PathPoly, y: &PathPoly) -> Result<PathPoly> {
        if x.source != y.target {
            return Err(Error::ShapeMismatch(format!(
                "path product undefined: left factor starts at {}, right factor ends at {}",
                x.source + 1,
                y.target + 1
            )));
        }
        let mut acc = self.poly_zero(y.source, x.target);
        for (i, ci) in &x.terms {
            for (j, cj) in &y.terms {
                let prod = self.table[*i][*j]
                    .as_ref()
                    .expect("typed polynomials compose");
                acc = self.poly_add(&acc, &self.poly_scale(prod, &(ci * cj)))?;
            }
        }
        Ok(acc)
    }

    /// Reduce a raw path given by arrows in application order.
    pub fn reduce_raw_path(&self, arrows: &[usize], source_if_trivial: usize) -> Result<PathPoly> {
        if arrows.is_empty() {
            return Ok(self.poly_trivial(source_if_trivial));
        }
        let first = &self.quiver.arrows[arrows[0]];
        let mut acc = self.poly_trivial(first.source);
        for &a in arrows {
            let arrow_path_idx = self
                .basis
                .iter()
                .position(|p| p.arrows.as_slice() == [a])
                .ok_or_else(|| Error::Internal("arrow missing from basis".into()))?;
            acc = self.poly_mul(&self.poly_of_basis(arrow_path_idx), &acc)?;
        }
        Ok(acc)
    }

    pub fn reduce_raw_poly(&self, raw: &RawPoly) -> Result<PathPoly> {
        let mut acc = self.poly_zero(raw.source, raw.target);
        for (c, arrows) in &raw.terms {
            let reduced = self.reduce_raw_path(arrows, raw.source)?;
            acc = self.poly_add(&acc, &self.poly_scale(&reduced, c))?;
        }
        Ok(acc)
    }

    /// The coefficient of the trivial path in an endomorphism-typed
    /// polynomial; zero for polynomials between distinct vertices.
    pub fn trivial_coefficient(&self, p: &PathPoly) -> Scalar {
        if p.source != p.target {
            return Scalar::zero();
        }
        p.coeff(self.trivial_idx[p.source])
    }

    /// Invert `u = λ·e_v + ρ` with `λ ≠ 0` and `ρ` in the arrow ideal,
    /// via the terminating geometric series.
    pub fn poly_invert(&self, u: &PathPoly) -> Result<PathPoly> {
        if u.source != u.target {
            return Err(Error::ShapeMismatch("only endomorphisms can be inverted".into()));
        }
        let lambda = self.trivial_coefficient(u);
        if lambda.is_zero() {
            return Err(Error::Internal(
                "attempted to invert a radical path polynomial".into(),
            ));
        }
        let lambda_inv = lambda.recip();
        let rho = self.poly_sub(u, &self.poly_scale(&self.poly_trivial(u.source), &lambda))?;
        let mut inv = self.poly_scale(&self.poly_trivial(u.source), &lambda_inv);
        let mut power = self.poly_trivial(u.source);
        let neg_li = -&lambda_inv;
        for _ in 0..=self.basis.len() {
            power = self.poly_mul(&power, &self.poly_scale(&rho, &neg_li))?;
            if power.is_zero() {
                let check = self.poly_mul(u, &inv)?;
                if check != self.poly_trivial(u.source) {
                    return Err(Error::Internal("inverse verification failed".into()));
                }
                return Ok(inv);
            }
            inv = self.poly_add(&inv, &self.poly_scale(&power, &lambda_inv))?;
        }
        Err(Error::Internal(
            "radical part failed to nilpotate within the dimension bound".into(),
        ))
    }

    pub fn poly_display(&self, p: &PathPoly) -> String {
        if p.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (i, c)) in p.terms.iter().enumerate() {
            let path = self.basis[*i].display(&self.quiver);
            let one = num_traits::One::one();
            let neg_one = -&Scalar::from_integer(1.into());
            if k == 0 {
                if *c == one {
                    out.push_str(&path);
                } else if *c == neg_one {
                    out.push_str(&format!("-{}", path));
                } else {
                    out.push_str(&format!("{}*{}", c, path));
                }
            } else if *c == one {
                out.push_str(&format!(" + {}", path));
            } else if *c == neg_one {
                out.push_str(&format!(" - {}", path));
            } else if num_traits::Signed::is_negative(c) {
                out.push_str(&format!(" - {}*{}", -c, path));
            } else {
                out.push_str(&format!(" + {}*{}", c, path));
            }
        }
        out
    }

    /// The arrow ideal of the built algebra must be nilpotent; a stabilized
    /// basis with a non-nilpotent arrow ideal means the presentation was
    /// not admissible.
    fn check_arrow_ideal_nilpotent(&self) -> Result<()> {
        let n = self.basis.len();
        // Successive powers of the arrow ideal, each spanned by left
        // arrow-multiples of the previous one; the chain must reach zero,
        // and it strictly decreases while it can.
        let mut power: Vec<PathPoly> = self
            .basis
            .iter()
            .enumerate()
            .filter(|(_, p)| p.len() >= 1)
            .map(|(i, _)| self.poly_of_basis(i))
            .collect();
        for _ in 0..=n + 1 {
            if power.is_empty() {
                return Ok(());
            }
            let mut next: Vec<PathPoly> = Vec::new();
            let mut next_rows: Vec<Vec<Scalar>> = Vec::new();
            for x in &power {
                for (ai, arrow) in self.quiver.arrows.iter().enumerate() {
                    if arrow.source != x.target {
                        continue;
                    }
                    let arrow_idx = self
                        .basis
                        .iter()
                        .position(|p| p.arrows.as_slice() == [ai])
                        .expect("arrows are standard monomials");
                    let prod = self.poly_mul(&self.poly_of_basis(arrow_idx), x)?;
                    if !prod.is_zero()
                        && !in_span(&span_rows_matrix(&next_rows, n), &coords(&prod, n))?
                    {
                        next_rows.push(coords(&prod, n));
                        next.push(prod);
                    }
                }
            }
            if next.len() >= power.len() && !next.is_empty() {
                break; // stuck at a nonzero power
            }
            power = next;
        }
        if power.is_empty() {
            return Ok(());
        }
        Err(Error::NonAdmissible(
            "arrow ideal is not nilpotent modulo the relations".into(),
        ))
    }
}

fn coords(p: &PathPoly, n: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    for (i, c) in &p.terms {
        v[*i] = c.clone();
    }
    v
}

fn span_rows_matrix(rows: &[Vec<Scalar>], n: usize) -> Matrix {
    if rows.is_empty() {
        return Matrix::zero(n, 0);
    }
    Matrix::from_columns(n, rows).expect("span rows length")
}

fn in_span(m: &Matrix, v: &[Scalar]) -> Result<bool> {
    if m.cols() == 0 {
        return Ok(v.iter().all(|e| e.is_zero()));
    }
    crate::exact::in_column_span(m, v)
}

fn validate_relations(quiver: &Quiver, relations: &[RawPoly]) -> Result<()> {
    for (k, r) in relations.iter().enumerate() {
        if r.terms.is_empty() {
            return Err(Error::NonAdmissible(format!("relation {} is empty", k + 1)));
        }
        for (c, arrows) in &r.terms {
            if c.is_zero() {
                return Err(Error::NonAdmissible(format!(
                    "relation {} has a zero coefficient",
                    k + 1
                )));
            }
            if arrows.len() < 2 {
                return Err(Error::NonAdmissible(format!(
                    "relation {} contains a path of length {} (admissible generators need length >= 2)",
                    k + 1,
                    arrows.len()
                )));
            }
            let (s, t) = path_endpoints(quiver, arrows)?;
            if s != r.source || t != r.target {
                return Err(Error::NonAdmissible(format!(
                    "relation {} mixes paths with different endpoints",
                    k + 1
                )));
            }
        }
    }
    Ok(())
}

fn path_endpoints(quiver: &Quiver, arrows: &[usize]) -> Result<(usize, usize)> {
    let mut iter = arrows.iter();
    let first = *iter.next().ok_or_else(|| {
        Error::NonAdmissible("empty path in relation".into())
    })?;
    let mut s = quiver.arrows[first].source;
    let mut t = quiver.arrows[first].target;
    let source = s;
    for &a in iter {
        let arr = &quiver.arrows[a];
        if arr.source != t {
            return Err(Error::NonAdmissible(
                "relation contains a non-composable arrow sequence".into(),
            ));
        }
        s = arr.source;
        t = arr.target;
        let _ = s;
    }
    Ok((source, t))
}

/// All paths of length at most `bound`, sorted ascending by
/// (length, arrow sequence).
fn enumerate_paths(quiver: &Quiver, bound: usize) -> Result<Vec<Path>> {
    let mut all: Vec<Path> = (0..quiver.vertex_count()).map(Path::trivial).collect();
    let mut frontier = all.clone();
    for _ in 0..bound {
        let mut next = Vec::new();
        for p in &frontier {
            for ai in 0..quiver.arrows().len() {
                if let Some(q) = p.append(quiver, ai) {
                    next.push(q);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        all.extend(next.iter().cloned());
        if all.len() > PATH_COUNT_CAP {
            return Err(Error::InfiniteDimension(format!(
                "more than {} raw paths below length {}",
                PATH_COUNT_CAP, bound
            )));
        }
        frontier = next;
    }
    all.sort();
    Ok(all)
}

/// Row-reduced model of the relation ideal truncated at `bound`; reduces
/// raw paths to standard-monomial coordinates.
struct TruncatedReducer {
    /// Paths sorted ascending; the coordinate space.
    paths: Vec<Path>,
    /// Reduced rows of the ideal span; each has a leading (largest) path
    /// index with coefficient one.
    rows: Vec<Vec<(usize, Scalar)>>,
    /// leading path index -> row number
    lead_of_row: Vec<usize>,
    standard: Vec<bool>,
}

impl TruncatedReducer {
    fn path_index(&self, p: &Path) -> Option<usize> {
        self.paths.binary_search(p).ok()
    }

    /// Reduce a concatenated arrow sequence (application order) to
    /// standard-monomial coordinates, returned as a typed polynomial over
    /// the final basis indexing supplied by the caller.
    fn reduce_concat(
        &self,
        arrows: &[usize],
        source: usize,
        target: usize,
    ) -> Result<PathPoly> {
        let candidate = Path {
            len_key: arrows.len(),
            arrows: arrows.to_vec(),
            source,
            target,
        };
        let idx = self.path_index(&candidate).ok_or_else(|| {
            Error::Internal("product path exceeds the reduction bound".into())
        })?;
        let mut vec: Vec<(usize, Scalar)> = vec![(idx, num_traits::One::one())];
        self.reduce_vec(&mut vec);
        // Map raw path indices to basis indices (positions among standard paths).
        let mut terms = Vec::new();
        for (pi, c) in vec {
            let basis_idx = self.standard[..pi].iter().filter(|&&s| s).count();
            debug_assert!(self.standard[pi]);
            terms.push((basis_idx, c));
        }
        terms.sort_by_key(|(i, _)| *i);
        Ok(PathPoly {
            source,
            target,
            terms,
        })
    }

    /// Eliminate leading terms until only standard monomials remain.
    fn reduce_vec(&self, vec: &mut Vec<(usize, Scalar)>) {
        loop {
            // find the largest non-standard index present
            let Some(pos) = vec
                .iter()
                .enumerate()
                .filter(|(_, (i, c))| !self.standard[*i] && !c.is_zero())
                .max_by_key(|(_, (i, _))| *i)
                .map(|(p, _)| p)
            else {
                break;
            };
            let (lead_idx, coeff) = vec[pos].clone();
            let row_no = self
                .lead_of_row
                .iter()
                .position(|&l| l == lead_idx)
                .expect("non-standard monomial has a reducing row");
            let row = &self.rows[row_no];
            // vec -= coeff * row  (row has coefficient 1 at lead_idx)
            for (i, c) in row {
                let delta = -&coeff * c;
                match vec.binary_search_by_key(i, |(k, _)| *k) {
                    Ok(p) => vec[p].1 += delta,
                    Err(p) => vec.insert(p, (*i, delta)),
                }
            }
            vec.retain(|(_, c)| !c.is_zero());
        }
    }
}

/// Compute the standard monomials of the relation ideal truncated at the
/// given length bound.
fn standard_basis(
    quiver: &Quiver,
    relations: &[RawPoly],
    bound: usize,
) -> Result<(Vec<Path>, TruncatedReducer)> {
    let paths = enumerate_paths(quiver, bound)?;
    let find = |arrows: &[usize], source: usize| -> Option<usize> {
        let (s, t) = if arrows.is_empty() {
            (source, source)
        } else {
            let s = quiver.arrows()[arrows[0]].source;
            let t = quiver.arrows()[*arrows.last().unwrap()].target;
            (s, t)
        };
        let p = Path {
            len_key: arrows.len(),
            arrows: arrows.to_vec(),
            source: s,
            target: t,
        };
        paths.binary_search(&p).ok()
    };

    // Ideal generators q·r·p truncated at the bound, as sparse rows.
    let mut raw_rows: Vec<Vec<(usize, Scalar)>> = Vec::new();
    for r in relations {
        let min_len = r.terms.iter().map(|(_, a)| a.len()).min().unwrap_or(0);
        for p in &paths {
            if p.target != r.source || p.len() + min_len > bound {
                continue;
            }
            for q in &paths {
                if q.source != r.target || p.len() + min_len + q.len() > bound {
                    continue;
                }
                let mut row: Vec<(usize, Scalar)> = Vec::new();
                for (c, mid) in &r.terms {
                    if p.len() + mid.len() + q.len() > bound {
                        continue; // truncated away
                    }
                    let mut arrows = p.arrows.clone();
                    arrows.extend_from_slice(mid);
                    arrows.extend_from_slice(&q.arrows);
                    let idx = find(&arrows, p.source).ok_or_else(|| {
                        Error::Internal("composite path missing from enumeration".into())
                    })?;
                    match row.binary_search_by_key(&idx, |(k, _)| *k) {
                        Ok(pos) => row[pos].1 += c,
                        Err(pos) => row.insert(pos, (idx, c.clone())),
                    }
                }
                row.retain(|(_, c)| !c.is_zero());
                if !row.is_empty() {
                    raw_rows.push(row);
                }
            }
        }
    }

    // Gaussian elimination with pivots on the largest path index.
    let mut rows: Vec<Vec<(usize, Scalar)>> = Vec::new();
    let mut lead_of_row: Vec<usize> = Vec::new();
    for mut row in raw_rows {
        loop {
            let Some(&(lead, ref c)) = row.last() else { break };
            let coeff = c.clone();
            if let Some(rn) = lead_of_row.iter().position(|&l| l == lead) {
                let other = rows[rn].clone();
                for (i, oc) in &other {
                    let delta = -&coeff * oc;
                    match row.binary_search_by_key(i, |(k, _)| *k) {
                        Ok(p) => row[p].1 += delta,
                        Err(p) => row.insert(p, (*i, delta)),
                    }
                }
                row.retain(|(_, c)| !c.is_zero());
            } else {
                let inv = coeff.recip();
                for (_, c) in row.iter_mut() {
                    *c *= &inv;
                }
                rows.push(row);
                lead_of_row.push(lead);
                break;
            }
        }
    }
    // Back-substitution so every row is fully reduced against the others.
    let order: Vec<usize> = {
        let mut idx: Vec<usize> = (0..rows.len()).collect();
        idx.sort_by_key(|&i| std::cmp::Reverse(lead_of_row[i]));
        idx
    };
    for &i in &order {
        let mut row = rows[i].clone();
        let lead = lead_of_row[i];
        loop {
            let reducible = row
                .iter()
                .filter(|(k, _)| *k != lead)
                .filter_map(|(k, _)| {
                    lead_of_row
                        .iter()
                        .position(|&l| l == *k)
                        .map(|rn| (*k, rn))
                })
                .max_by_key(|(k, _)| *k);
            let Some((k, rn)) = reducible else { break };
            let coeff = row
                .iter()
                .find(|(idx, _)| *idx == k)
                .map(|(_, c)| c.clone())
                .unwrap();
            let other = rows[rn].clone();
            for (j, oc) in &other {
                let delta = -&coeff * oc;
                match row.binary_search_by_key(j, |(kk, _)| *kk) {
                    Ok(p) => row[p].1 += delta,
                    Err(p) => row.insert(p, (*j, delta)),
                }
            }
            row.retain(|(_, c)| !c.is_zero());
        }
        rows[i] = row;
    }

    let mut standard = vec![true; paths.len()];
    for &l in &lead_of_row {
        standard[l] = false;
    }
    let basis: Vec<Path> = paths
        .iter()
        .zip(&standard)
        .filter(|(_, &s)| s)
        .map(|(p, _)| p.clone())
        .collect();
    Ok((
        basis,
        TruncatedReducer {
            paths,
            rows,
            lead_of_row,
            standard,
        },
    ))
}

/// Convenience constructors for the worked algebras used across the test
/// suites.
pub mod presets {
    use super::*;
    use crate::exact::scalar_int;

    /// Two vertices, arrows `a, b: 1 → 2`, no relations.
    pub fn kronecker() -> Arc<BoundQuiverAlgebra> {
        let q = Quiver::new(
            2,
            vec![
                Arrow { name: "a".into(), source: 0, target: 1 },
                Arrow { name: "b".into(), source: 0, target: 1 },
            ],
        )
        .unwrap();
        BoundQuiverAlgebra::build(q, vec![]).unwrap()
    }

    /// `1 →a 2 →b 3` bound by `b·a = 0`.
    pub fn bound_a3() -> Arc<BoundQuiverAlgebra> {
        let q = Quiver::new(
            3,
            vec![
                Arrow { name: "a".into(), source: 0, target: 1 },
                Arrow { name: "b".into(), source: 1, target: 2 },
            ],
        )
        .unwrap();
        let rel = RawPoly {
            terms: vec![(scalar_int(1), vec![0, 1])], // first a, then b
            source: 0,
            target: 2,
        };
        BoundQuiverAlgebra::build(q, vec![rel]).unwrap()
    }

    /// Two isolated vertices; the semisimple algebra k × k.
    pub fn semisimple_two() -> Arc<BoundQuiverAlgebra> {
        let q = Quiver::new(2, vec![]).unwrap();
        BoundQuiverAlgebra::build(q, vec![]).unwrap()
    }

    /// Auslander algebra of the dual numbers: `1 ⇄ 2` with the cycle
    /// through vertex 2 killed. Its projective `P(1)` is
    /// projective-injective with endomorphism ring k[ε]/ε².
    pub fn auslander_dual_numbers() -> Arc<BoundQuiverAlgebra> {
        let q = Quiver::new(
            2,
            vec![
                Arrow { name: "a".into(), source: 0, target: 1 },
                Arrow { name: "b".into(), source: 1, target: 0 },
            ],
        )
        .unwrap();
        // a·b = 0 (first b, then a: the cycle at vertex 2)
        let rel = RawPoly {
            terms: vec![(scalar_int(1), vec![1, 0])],
            source: 1,
            target: 1,
        };
        BoundQuiverAlgebra::build(q, vec![rel]).unwrap()
    }

    /// Commutative square: vertices 1..4, `d·b = c·a` as paths 1 → 4.
    pub fn commutative_square() -> Arc<BoundQuiverAlgebra> {
        let q = Quiver::new(
            4,
            vec![
                Arrow { name: "a".into(), source: 0, target: 1 },
                Arrow { name: "b".into(), source: 0, target: 2 },
                Arrow { name: "c".into(), source: 1, target: 3 },
                Arrow { name: "d".into(), source: 2, target: 3 },
            ],
        )
        .unwrap();
        let rel = RawPoly {
            terms: vec![
                (scalar_int(1), vec![0, 2]),  // c·a
                (scalar_int(-1), vec![1, 3]), // −d·b
            ],
            source: 0,
            target: 3,
        };
        BoundQuiverAlgebra::build(q, vec![rel]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::presets::*;
    use super::*;
    use crate::exact::scalar_int;

    #[test]
    fn kronecker_basis_and_dimension() {
        let a = kronecker();
        assert_eq!(a.dim(), 4); // e1, e2, a, b
        assert_eq!(a.global_dimension(), 1);
        assert_eq!(a.paths_from_to(0, 1).len(), 2);
        assert_eq!(a.paths_from_to(0, 0).len(), 1);
        assert_eq!(a.paths_from_to(1, 0).len(), 0);
    }

    #[test]
    fn bound_a3_kills_the_long_path() {
        let a = bound_a3();
        assert_eq!(a.dim(), 5); // e1, e2, e3, a, b
        assert_eq!(a.global_dimension(), 2);
        // b·a reduces to zero
        let ba = a.reduce_raw_path(&[0, 1], 0).unwrap();
        assert!(ba.is_zero());
        assert_eq!(a.paths_from_to(0, 2).len(), 0);
    }

    #[test]
    fn semisimple_two_vertices() {
        let a = semisimple_two();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.global_dimension(), 0);
    }

    #[test]
    fn auslander_dual_numbers_shape() {
        let a = auslander_dual_numbers();
        // e1, e2, a, b, b·a survive; a·b dies
        assert_eq!(a.dim(), 5);
        assert_eq!(a.global_dimension(), 2);
        let ab = a.reduce_raw_path(&[1, 0], 1).unwrap();
        assert!(ab.is_zero());
        let ba = a.reduce_raw_path(&[0, 1], 0).unwrap();
        assert!(!ba.is_zero());
        // (b·a)² = b(ab)a = 0
        let sq = a.poly_mul(&ba, &ba).unwrap();
        assert!(sq.is_zero());
    }

    #[test]
    fn commutative_square_identifies_diagonals() {
        let a = commutative_square();
        // e1..e4, four arrows, one diagonal path
        assert_eq!(a.dim(), 9);
        let ca = a.reduce_raw_path(&[0, 2], 0).unwrap();
        let db = a.reduce_raw_path(&[1, 3], 0).unwrap();
        assert_eq!(ca, db);
        assert!(!ca.is_zero());
    }

    #[test]
    fn loop_without_relations_is_rejected() {
        let q = Quiver::new(
            1,
            vec![Arrow { name: "x".into(), source: 0, target: 0 }],
        )
        .unwrap();
        assert!(matches!(
            BoundQuiverAlgebra::build(q, vec![]),
            Err(Error::InfiniteDimension(_))
        ));
    }

    #[test]
    fn loop_with_square_relation_builds() {
        let q = Quiver::new(
            1,
            vec![Arrow { name: "x".into(), source: 0, target: 0 }],
        )
        .unwrap();
        let rel = RawPoly {
            terms: vec![(scalar_int(1), vec![0, 0])],
            source: 0,
            target: 0,
        };
        // k[x]/x² has infinite global dimension: rejected at build time.
        assert!(matches!(
            BoundQuiverAlgebra::build(q, vec![rel]),
            Err(Error::InfiniteGlobalDimension { .. })
        ));
    }

    #[test]
    fn short_relation_is_not_admissible() {
        let q = Quiver::new(
            2,
            vec![Arrow { name: "a".into(), source: 0, target: 1 }],
        )
        .unwrap();
        let rel = RawPoly {
            terms: vec![(scalar_int(1), vec![0])],
            source: 0,
            target: 1,
        };
        assert!(matches!(
            BoundQuiverAlgebra::build(q, vec![rel]),
            Err(Error::NonAdmissible(_))
        ));
    }

    #[test]
    fn multiplication_matches_path_concatenation() {
        let a = auslander_dual_numbers();
        let pa = a.reduce_raw_path(&[0], 0).unwrap(); // a: 1→2
        let pb = a.reduce_raw_path(&[1], 1).unwrap(); // b: 2→1
        // b·a: first a then b
        let ba = a.poly_mul(&pb, &pa).unwrap();
        assert_eq!(ba, a.reduce_raw_path(&[0, 1], 0).unwrap());
        // a·b = 0
        let ab = a.poly_mul(&pa, &pb).unwrap();
        assert!(ab.is_zero());
    }

    #[test]
    fn invert_unit_plus_radical() {
        let a = auslander_dual_numbers();
        let e1 = a.poly_trivial(0);
        let ba = a.reduce_raw_path(&[0, 1], 0).unwrap();
        let u = a
            .poly_add(&a.poly_scale(&e1, &scalar_int(3)), &ba)
            .unwrap();
        let inv = a.poly_invert(&u).unwrap();
        assert_eq!(a.poly_mul(&u, &inv).unwrap(), e1);
        assert_eq!(a.poly_mul(&inv, &u).unwrap(), e1);
    }
}
