//! Text formats for algebras, complexes, surface models and Euler
//! lattices. Blank lines and `#` comments are allowed everywhere; parse
//! errors carry one-based line numbers.

use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::{Arrow, BoundQuiverAlgebra, PathPoly, Quiver, RawPoly};
use crate::complex::{PerfectComplex, PolyMatrix};
use crate::exact::Scalar;
use crate::kgroup::{KClass, KLattice, SurfaceModel};
use crate::{Error, Result};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_rational(token: &str, line: usize) -> Result<Scalar> {
    let (num, den) = match token.split_once('/') {
        Some((n, d)) => (n, d),
        None => (token, "1"),
    };
    let n = BigInt::from_str(num).map_err(|_| perr(line, format!("bad rational `{}`", token)))?;
    let d = BigInt::from_str(den).map_err(|_| perr(line, format!("bad rational `{}`", token)))?;
    if d == BigInt::from(0) {
        return Err(perr(line, "zero denominator"));
    }
    Ok(Scalar::new(n, d))
}

fn parse_i64(token: &str, line: usize) -> Result<i64> {
    token
        .parse::<i64>()
        .map_err(|_| perr(line, format!("bad integer `{}`", token)))
}

/// Parse an algebra description:
///
/// ```text
/// vertices 3
/// arrow a 1 2
/// arrow b 2 3
/// relation b*a
/// ```
pub fn parse_algebra(text: &str) -> Result<Arc<BoundQuiverAlgebra>> {
    let mut vertices: Option<usize> = None;
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut relation_lines: Vec<(usize, String)> = Vec::new();
    for (ln, line) in content_lines(text) {
        let mut it = line.split_whitespace();
        match it.next() {
            Some("vertices") => {
                let n = it
                    .next()
                    .ok_or_else(|| perr(ln, "vertices needs a count"))?;
                vertices = Some(
                    n.parse::<usize>()
                        .map_err(|_| perr(ln, format!("bad vertex count `{}`", n)))?,
                );
            }
            Some("arrow") => {
                let name = it.next().ok_or_else(|| perr(ln, "arrow needs a name"))?;
                let s = it.next().ok_or_else(|| perr(ln, "arrow needs a source"))?;
                let t = it.next().ok_or_else(|| perr(ln, "arrow needs a target"))?;
                let s = s
                    .parse::<usize>()
                    .map_err(|_| perr(ln, format!("bad source `{}`", s)))?;
                let t = t
                    .parse::<usize>()
                    .map_err(|_| perr(ln, format!("bad target `{}`", t)))?;
                if s == 0 || t == 0 {
                    return Err(perr(ln, "vertices are numbered from 1"));
                }
                arrows.push(Arrow {
                    name: name.to_string(),
                    source: s - 1,
                    target: t - 1,
                });
            }
            Some("relation") => {
                let rest: Vec<&str> = it.collect();
                relation_lines.push((ln, rest.join(" ")));
            }
            Some(other) => return Err(perr(ln, format!("unknown directive `{}`", other))),
            None => {}
        }
    }
    let nv = vertices.ok_or_else(|| perr(0, "missing `vertices` line"))?;
    let quiver = Quiver::new(nv, arrows)?;
    let mut relations = Vec::new();
    for (ln, expr) in relation_lines {
        let terms = parse_poly_terms(&expr, ln)?;
        let mut raw_terms = Vec::new();
        let mut endpoints: Option<(usize, usize)> = None;
        for (c, spec) in terms {
            let arrows_app = match spec {
                PathSpec::Trivial(_) => {
                    return Err(perr(ln, "relations may not contain trivial paths"))
                }
                PathSpec::Arrows(a) => a,
            };
            let resolved = resolve_arrows(&quiver, &arrows_app, ln)?;
            let (s, t) = endpoints_of(&quiver, &resolved, ln)?;
            match endpoints {
                None => endpoints = Some((s, t)),
                Some(e) if e != (s, t) => {
                    return Err(perr(ln, "relation mixes paths with different endpoints"))
                }
                _ => {}
            }
            raw_terms.push((c, resolved));
        }
        let (source, target) =
            endpoints.ok_or_else(|| perr(ln, "empty relation"))?;
        relations.push(RawPoly {
            terms: raw_terms,
            source,
            target,
        });
    }
    BoundQuiverAlgebra::build(quiver, relations)
}

#[derive(Debug, Clone)]
enum PathSpec {
    Trivial(usize), // 0-based vertex
    Arrows(Vec<String>), // composition order as written: first name acts last
}

/// Split a polynomial expression like `a - 1/2*b*a + e1` into signed
/// terms of (coefficient, path spec).
fn parse_poly_terms(expr: &str, line: usize) -> Result<Vec<(Scalar, PathSpec)>> {
    let compact: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(perr(line, "empty expression"));
    }
    let mut terms = Vec::new();
    let mut current = String::new();
    let mut sign = Scalar::one();
    for c in compact.chars() {
        match c {
            '+' | '-' => {
                if current.is_empty() && terms.is_empty() && sign.is_one() {
                    // leading sign
                    sign = if c == '-' { -Scalar::one() } else { Scalar::one() };
                    continue;
                }
                if current.is_empty() {
                    return Err(perr(line, "misplaced sign"));
                }
                terms.push((sign.clone(), std::mem::take(&mut current)));
                sign = if c == '-' { -Scalar::one() } else { Scalar::one() };
            }
            _ => current.push(c),
        }
    }
    if current.is_empty() {
        return Err(perr(line, "trailing sign"));
    }
    terms.push((sign, current));

    let mut out = Vec::new();
    for (sgn, term) in terms {
        let mut coeff = sgn;
        let mut names: Vec<String> = Vec::new();
        for factor in term.split('*') {
            if factor.is_empty() {
                return Err(perr(line, "empty factor"));
            }
            let first = factor.chars().next().unwrap();
            if first.is_ascii_digit() {
                coeff *= parse_rational(factor, line)?;
            } else {
                names.push(factor.to_string());
            }
        }
        let spec = if names.is_empty() {
            return Err(perr(line, "term without a path"));
        } else if names.len() == 1 && names[0].starts_with('e') && names[0][1..].parse::<usize>().is_ok()
        {
            let v: usize = names[0][1..].parse().unwrap();
            if v == 0 {
                return Err(perr(line, "vertices are numbered from 1"));
            }
            PathSpec::Trivial(v - 1)
        } else {
            PathSpec::Arrows(names)
        };
        out.push((coeff, spec));
    }
    Ok(out)
}

/// Composition-order arrow names to application-order indices.
fn resolve_arrows(quiver: &Quiver, names: &[String], line: usize) -> Result<Vec<usize>> {
    let mut idx = Vec::new();
    for name in names.iter().rev() {
        let i = quiver
            .arrow_by_name(name)
            .ok_or_else(|| perr(line, format!("unknown arrow `{}`", name)))?;
        idx.push(i);
    }
    Ok(idx)
}

fn endpoints_of(quiver: &Quiver, arrows_app: &[usize], line: usize) -> Result<(usize, usize)> {
    let mut source = None;
    let mut at = None;
    for &a in arrows_app {
        let arr = &quiver.arrows()[a];
        if let Some(prev) = at {
            if arr.source != prev {
                return Err(perr(line, "arrows do not compose"));
            }
        } else {
            source = Some(arr.source);
        }
        at = Some(arr.target);
    }
    match (source, at) {
        (Some(s), Some(t)) => Ok((s, t)),
        _ => Err(perr(line, "empty path")),
    }
}

/// Reduce a parsed entry into a typed path polynomial.
fn reduce_entry(
    alg: &Arc<BoundQuiverAlgebra>,
    terms: &[(Scalar, PathSpec)],
    row_label: usize,
    col_label: usize,
    line: usize,
) -> Result<PathPoly> {
    let mut acc = alg.poly_zero(row_label, col_label);
    for (c, spec) in terms {
        let reduced = match spec {
            PathSpec::Trivial(v) => {
                if *v >= alg.vertex_count() {
                    return Err(perr(line, "vertex out of range"));
                }
                alg.poly_trivial(*v)
            }
            PathSpec::Arrows(names) => {
                let arrows = resolve_arrows(alg.quiver(), names, line)?;
                endpoints_of(alg.quiver(), &arrows, line)?;
                alg.reduce_raw_path(&arrows, 0)?
            }
        };
        if reduced.is_zero() {
            continue;
        }
        if reduced.source != row_label || reduced.target != col_label {
            return Err(perr(
                line,
                format!(
                    "entry runs {}→{}, expected {}→{}",
                    reduced.source + 1,
                    reduced.target + 1,
                    row_label + 1,
                    col_label + 1
                ),
            ));
        }
        acc = alg.poly_add(&acc, &alg.poly_scale(&reduced, c))?;
    }
    Ok(acc)
}

/// Parse a complex description over a given algebra:
///
/// ```text
/// complex
/// term 0 P1 P3
/// term 1 P2
/// diff 0 [ a ; 0 ]
/// ```
pub fn parse_complex(text: &str, alg: &Arc<BoundQuiverAlgebra>) -> Result<PerfectComplex> {
    let mut saw_header = false;
    let mut terms: Vec<(i32, Vec<usize>, usize)> = Vec::new();
    let mut diff_lines: Vec<(i32, String, usize)> = Vec::new();
    for (ln, line) in content_lines(text) {
        let mut it = line.split_whitespace();
        match it.next() {
            Some("complex") => saw_header = true,
            Some("term") => {
                let d = parse_i64(
                    it.next().ok_or_else(|| perr(ln, "term needs a degree"))?,
                    ln,
                )? as i32;
                let mut labels = Vec::new();
                for tok in it {
                    let l = tok
                        .strip_prefix('P')
                        .and_then(|s| s.parse::<usize>().ok())
                        .ok_or_else(|| perr(ln, format!("bad summand `{}`", tok)))?;
                    if l == 0 || l > alg.vertex_count() {
                        return Err(perr(ln, format!("vertex {} out of range", l)));
                    }
                    labels.push(l - 1);
                }
                if terms.iter().any(|(dd, _, _)| *dd == d) {
                    return Err(perr(ln, format!("duplicate term line for degree {}", d)));
                }
                terms.push((d, labels, ln));
            }
            Some("diff") => {
                let d = parse_i64(
                    it.next().ok_or_else(|| perr(ln, "diff needs a degree"))?,
                    ln,
                )? as i32;
                let rest: Vec<&str> = it.collect();
                diff_lines.push((d, rest.join(" "), ln));
            }
            Some(other) => return Err(perr(ln, format!("unknown directive `{}`", other))),
            None => {}
        }
    }
    if !saw_header {
        return Err(perr(0, "missing `complex` header"));
    }
    if terms.is_empty() {
        return Ok(PerfectComplex::zero(alg.clone()));
    }
    let min = terms.iter().map(|(d, _, _)| *d).min().unwrap();
    let max = terms.iter().map(|(d, _, _)| *d).max().unwrap();
    let mut term_vec: Vec<Vec<usize>> = vec![Vec::new(); (max - min + 1) as usize];
    for (d, labels, _) in &terms {
        term_vec[(d - min) as usize] = labels.clone();
    }
    let mut diffs: Vec<PolyMatrix> = Vec::new();
    for d in min..max {
        let rows = term_vec[(d - min) as usize + 1].clone();
        let cols = term_vec[(d - min) as usize].clone();
        let found = diff_lines.iter().find(|(dd, _, _)| *dd == d);
        let m = match found {
            None => PolyMatrix::zero(alg.clone(), rows, cols),
            Some((_, body, ln)) => parse_poly_matrix(alg, body, &rows, &cols, *ln)?,
        };
        diffs.push(m);
    }
    for (d, _, ln) in &diff_lines {
        if *d < min || *d >= max {
            return Err(perr(*ln, format!("diff {} outside the term range", d)));
        }
    }
    PerfectComplex::new(alg.clone(), min, term_vec, diffs)
}

fn parse_poly_matrix(
    alg: &Arc<BoundQuiverAlgebra>,
    body: &str,
    rows: &[usize],
    cols: &[usize],
    line: usize,
) -> Result<PolyMatrix> {
    let inner = body
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| perr(line, "matrix must be enclosed in [ ]"))?;
    let row_strs: Vec<&str> = if inner.trim().is_empty() {
        Vec::new()
    } else {
        inner.split(';').collect()
    };
    if row_strs.len() != rows.len() {
        return Err(perr(
            line,
            format!("matrix has {} rows, expected {}", row_strs.len(), rows.len()),
        ));
    }
    let mut entries = Vec::new();
    for (i, rs) in row_strs.iter().enumerate() {
        let col_strs: Vec<&str> = rs.split(',').map(str::trim).collect();
        if col_strs.len() != cols.len() {
            return Err(perr(
                line,
                format!(
                    "row {} has {} columns, expected {}",
                    i + 1,
                    col_strs.len(),
                    cols.len()
                ),
            ));
        }
        for (j, cs) in col_strs.iter().enumerate() {
            if *cs == "0" {
                entries.push(alg.poly_zero(rows[i], cols[j]));
                continue;
            }
            let terms = parse_poly_terms(cs, line)?;
            entries.push(reduce_entry(alg, &terms, rows[i], cols[j], line)?);
        }
    }
    PolyMatrix::new(alg.clone(), rows.to_vec(), cols.to_vec(), entries)
}

/// Serialize a complex in the same text format that [`parse_complex`]
/// accepts; round-trips exactly.
pub fn serialize_complex(c: &PerfectComplex) -> String {
    let alg = c.algebra();
    let mut out = String::from("complex\n");
    if c.is_zero() {
        return out;
    }
    for d in c.min_degree()..=c.max_degree() {
        let labels: Vec<String> = c.term(d).iter().map(|v| format!("P{}", v + 1)).collect();
        if labels.is_empty() {
            continue;
        }
        out.push_str(&format!("term {} {}\n", d, labels.join(" ")));
    }
    for d in c.min_degree()..c.max_degree() {
        let Some(m) = c.diff(d) else { continue };
        if m.rows() == 0 || m.cols() == 0 || m.is_zero() {
            continue;
        }
        let rows: Vec<String> = (0..m.rows())
            .map(|i| {
                (0..m.cols())
                    .map(|j| {
                        let e = m.entry(i, j);
                        if e.is_zero() {
                            "0".to_string()
                        } else {
                            alg.poly_display(e).replace(' ', " ")
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" , ")
            })
            .collect();
        out.push_str(&format!("diff {} [ {} ]\n", d, rows.join(" ; ")));
    }
    out
}

/// Surface model plus any class literals found in the file.
#[derive(Debug, Clone)]
pub struct SurfaceFile {
    pub model: SurfaceModel,
    pub classes: Vec<KClass>,
}

/// Parse a surface model:
///
/// ```text
/// surface
/// ns_rank 2
/// gram [ -2 , 1 ; 1 , -1 ]
/// canonical 0 0
/// chi_o 2
/// class r=0 c1=(1,1) ch2=1/1
/// ```
pub fn parse_surface(text: &str) -> Result<SurfaceFile> {
    let mut saw_header = false;
    let mut rank: Option<usize> = None;
    let mut gram: Option<Vec<Vec<i64>>> = None;
    let mut canonical: Option<Vec<i64>> = None;
    let mut chi_o: Option<i64> = None;
    let mut classes = Vec::new();
    for (ln, line) in content_lines(text) {
        let mut it = line.split_whitespace();
        match it.next() {
            Some("surface") => saw_header = true,
            Some("ns_rank") => {
                rank = Some(
                    it.next()
                        .ok_or_else(|| perr(ln, "ns_rank needs a value"))?
                        .parse()
                        .map_err(|_| perr(ln, "bad rank"))?,
                );
            }
            Some("gram") => {
                let body: Vec<&str> = it.collect();
                gram = Some(parse_int_matrix(&body.join(" "), ln)?);
            }
            Some("canonical") => {
                let v: Result<Vec<i64>> = it.map(|t| parse_i64(t, ln)).collect();
                canonical = Some(v?);
            }
            Some("chi_o") => {
                chi_o = Some(parse_i64(
                    it.next().ok_or_else(|| perr(ln, "chi_o needs a value"))?,
                    ln,
                )?);
            }
            Some("class") => {
                let rest: Vec<&str> = it.collect();
                classes.push(parse_class(&rest.join(" "), ln)?);
            }
            Some(other) => return Err(perr(ln, format!("unknown directive `{}`", other))),
            None => {}
        }
    }
    if !saw_header {
        return Err(perr(0, "missing `surface` header"));
    }
    let gram = gram.ok_or_else(|| perr(0, "missing `gram` line"))?;
    if let Some(r) = rank {
        if gram.len() != r {
            return Err(perr(0, format!("gram is {}x{} but ns_rank is {}", gram.len(), gram.len(), r)));
        }
    }
    let canonical = canonical.ok_or_else(|| perr(0, "missing `canonical` line"))?;
    let chi_o = chi_o.ok_or_else(|| perr(0, "missing `chi_o` line"))?;
    let model = SurfaceModel::new(gram, canonical, chi_o)?;
    for c in &classes {
        if c.c1.len() != model.rank() {
            return Err(perr(0, "class divisor length differs from ns_rank"));
        }
    }
    Ok(SurfaceFile { model, classes })
}

/// Parse a class literal `class r=0 c1=(1,1) ch2=1/1` (without the
/// leading keyword).
pub fn parse_class(body: &str, line: usize) -> Result<KClass> {
    let mut rank: Option<i64> = None;
    let mut c1: Option<Vec<i64>> = None;
    let mut ch2: Option<Scalar> = None;
    for tok in body.split_whitespace() {
        if let Some(v) = tok.strip_prefix("r=") {
            rank = Some(parse_i64(v, line)?);
        } else if let Some(v) = tok.strip_prefix("c1=") {
            let inner = v
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| perr(line, "c1 must look like (1,2)"))?;
            let parts: Result<Vec<i64>> = inner
                .split(',')
                .map(|p| parse_i64(p.trim(), line))
                .collect();
            c1 = Some(parts?);
        } else if let Some(v) = tok.strip_prefix("ch2=") {
            ch2 = Some(parse_rational(v, line)?);
        } else {
            return Err(perr(line, format!("unknown class field `{}`", tok)));
        }
    }
    Ok(KClass::new(
        rank.ok_or_else(|| perr(line, "class needs r="))?,
        c1.ok_or_else(|| perr(line, "class needs c1="))?,
        ch2.ok_or_else(|| perr(line, "class needs ch2="))?,
    ))
}

fn parse_int_matrix(body: &str, line: usize) -> Result<Vec<Vec<i64>>> {
    let inner = body
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| perr(line, "matrix must be enclosed in [ ]"))?;
    let mut rows = Vec::new();
    for rs in inner.split(';') {
        let row: Result<Vec<i64>> = rs
            .split(',')
            .map(|t| parse_i64(t.trim(), line))
            .collect();
        rows.push(row?);
    }
    Ok(rows)
}

/// Euler lattice plus optional designated classes.
#[derive(Debug, Clone)]
pub struct LatticeFile {
    pub lattice: KLattice,
    pub f: Option<Vec<i64>>,
    pub e: Option<Vec<i64>>,
}

/// Parse an Euler lattice:
///
/// ```text
/// lattice
/// rank 2
/// euler [ 2 , 1 ; 1 , 2 ]
/// f 1 0
/// e 0 1
/// ```
pub fn parse_lattice(text: &str) -> Result<LatticeFile> {
    let mut saw_header = false;
    let mut rank: Option<usize> = None;
    let mut euler: Option<Vec<Vec<i64>>> = None;
    let mut fvec: Option<Vec<i64>> = None;
    let mut evec: Option<Vec<i64>> = None;
    for (ln, line) in content_lines(text) {
        let mut it = line.split_whitespace();
        match it.next() {
            Some("lattice") => saw_header = true,
            Some("rank") => {
                rank = Some(
                    it.next()
                        .ok_or_else(|| perr(ln, "rank needs a value"))?
                        .parse()
                        .map_err(|_| perr(ln, "bad rank"))?,
                );
            }
            Some("euler") => {
                let body: Vec<&str> = it.collect();
                euler = Some(parse_int_matrix(&body.join(" "), ln)?);
            }
            Some("f") => {
                let v: Result<Vec<i64>> = it.map(|t| parse_i64(t, ln)).collect();
                fvec = Some(v?);
            }
            Some("e") => {
                let v: Result<Vec<i64>> = it.map(|t| parse_i64(t, ln)).collect();
                evec = Some(v?);
            }
            Some(other) => return Err(perr(ln, format!("unknown directive `{}`", other))),
            None => {}
        }
    }
    if !saw_header {
        return Err(perr(0, "missing `lattice` header"));
    }
    let euler = euler.ok_or_else(|| perr(0, "missing `euler` line"))?;
    if let Some(r) = rank {
        if euler.len() != r {
            return Err(perr(0, "euler matrix size differs from rank"));
        }
    }
    let lattice = KLattice::new(euler)?;
    Ok(LatticeFile {
        lattice,
        f: fvec,
        e: evec,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar_int;
    use crate::rep::{projective_resolution, simple};

    const A3: &str = "vertices 3\narrow a 1 2\narrow b 2 3\nrelation b*a\n";

    #[test]
    fn parse_bound_a3() {
        let alg = parse_algebra(A3).unwrap();
        assert_eq!(alg.dim(), 5);
        assert_eq!(alg.global_dimension(), 2);
    }

    #[test]
    fn parse_kronecker_and_complex() {
        let alg = parse_algebra("vertices 2\narrow a 1 2\narrow b 1 2\n").unwrap();
        let text = "complex\nterm -1 P2\nterm 0 P1\ndiff -1 [ a - 2*b ]\n";
        let c = parse_complex(text, &alg).unwrap();
        assert_eq!(c.min_degree(), -1);
        assert_eq!(c.term(-1), &[1]);
        assert_eq!(c.term(0), &[0]);
        let d = c.diff(-1).unwrap();
        let a = alg.reduce_raw_path(&[0], 0).unwrap();
        let b = alg.reduce_raw_path(&[1], 0).unwrap();
        let expected = alg
            .poly_sub(&a, &alg.poly_scale(&b, &scalar_int(2)))
            .unwrap();
        assert_eq!(d.entry(0, 0), &expected);
    }

    #[test]
    fn complex_round_trip() {
        let alg = parse_algebra(A3).unwrap();
        let res = projective_resolution(&simple(&alg, 0)).unwrap();
        let text = serialize_complex(&res);
        let back = parse_complex(&text, &alg).unwrap();
        assert_eq!(back, res);
    }

    #[test]
    fn zero_complex_round_trip() {
        let alg = parse_algebra(A3).unwrap();
        let z = PerfectComplex::zero(alg.clone());
        let text = serialize_complex(&z);
        let back = parse_complex(&text, &alg).unwrap();
        assert!(back.is_zero());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "vertices 2\narrow a 1 5\n";
        match parse_algebra(bad) {
            Err(Error::InvalidQuiver(_)) => {}
            other => panic!("expected quiver error, got {:?}", other),
        }
        let bad2 = "vertices 2\narrow a 1 2\nrelation c\n";
        match parse_algebra(bad2) {
            Err(Error::Parse { line: 3, .. }) => {}
            other => panic!("expected parse error at line 3, got {:?}", other),
        }
    }

    #[test]
    fn parse_surface_with_classes() {
        let text = "surface\nns_rank 2\ngram [ 0 , 1 ; 1 , 0 ]\ncanonical -2 0\nchi_o 0\nclass r=0 c1=(0,1) ch2=-1/1\n";
        let sf = parse_surface(text).unwrap();
        assert_eq!(sf.model.rank(), 2);
        assert_eq!(sf.classes.len(), 1);
        assert_eq!(sf.classes[0].ch2, scalar_int(-1));
    }

    #[test]
    fn parse_lattice_with_classes() {
        let text = "lattice\nrank 2\neuler [ 2 , 1 ; 1 , 2 ]\nf 1 0\ne 0 1\n";
        let lf = parse_lattice(text).unwrap();
        assert_eq!(lf.lattice.rank(), 2);
        assert_eq!(lf.f, Some(vec![1, 0]));
        assert_eq!(lf.e, Some(vec![0, 1]));
    }
}
