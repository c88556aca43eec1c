//! K-group reflection calculus and surface Riemann–Roch lattice models.
//!
//! A [`KLattice`] carries an integer Euler form (not assumed symmetric);
//! classes with `χ(f,f) = 2` act by the reflection `x ↦ x − χ(f,x)·f`,
//! which is an involution, and pairs of such classes commute or braid
//! according to `χ(e,f) = χ(f,e) ∈ {0, ±1}`. A [`SurfaceModel`] packages a
//! Néron–Severi intersection lattice, canonical class and `χ(O_X)`; Euler
//! pairings of `(rank, c₁, ch₂)` classes follow Riemann–Roch.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{scalar_int, Scalar};
use crate::{Error, Result};

/// Free abelian group of finite rank with an integer Euler form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KLattice {
    rank: usize,
    /// χ(x, y) = xᵀ · euler · y
    euler: Vec<Vec<i64>>,
}

impl KLattice {
    pub fn new(euler: Vec<Vec<i64>>) -> Result<Self> {
        let rank = euler.len();
        if euler.iter().any(|row| row.len() != rank) {
            return Err(Error::ShapeMismatch("Euler matrix must be square".into()));
        }
        Ok(KLattice { rank, euler })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn pairing(&self, x: &[i64], y: &[i64]) -> Result<i64> {
        if x.len() != self.rank || y.len() != self.rank {
            return Err(Error::ShapeMismatch("vector length differs from lattice rank".into()));
        }
        let mut acc = 0i64;
        for i in 0..self.rank {
            for j in 0..self.rank {
                acc += x[i] * self.euler[i][j] * y[j];
            }
        }
        Ok(acc)
    }

    /// Matrix of the reflection `t_f` on the standard basis.
    pub fn reflection_matrix(&self, f: &[i64]) -> Result<Vec<Vec<i64>>> {
        self.require_square_two(f)?;
        let mut m = vec![vec![0i64; self.rank]; self.rank];
        for j in 0..self.rank {
            let mut e = vec![0i64; self.rank];
            e[j] = 1;
            let image = self.reflect_unchecked(f, &e)?;
            for i in 0..self.rank {
                m[i][j] = image[i];
            }
        }
        Ok(m)
    }

    fn require_square_two(&self, f: &[i64]) -> Result<()> {
        let chi = self.pairing(f, f)?;
        if chi != 2 {
            return Err(Error::NotReflectionClass(chi.to_string()));
        }
        Ok(())
    }

    fn reflect_unchecked(&self, f: &[i64], x: &[i64]) -> Result<Vec<i64>> {
        let c = self.pairing(f, x)?;
        Ok(x.iter().zip(f).map(|(xi, fi)| xi - c * fi).collect())
    }
}

/// `t_f(x) = x − χ(f,x)·f`, defined when `χ(f,f) = 2`.
pub fn reflect(lattice: &KLattice, f: &[i64], x: &[i64]) -> Result<Vec<i64>> {
    lattice.require_square_two(f)?;
    lattice.reflect_unchecked(f, x)
}

/// Involution check: exact on a lattice basis (which suffices by
/// linearity), plus seeded random sample vectors.
pub fn check_involution(
    lattice: &KLattice,
    f: &[i64],
    samples: u32,
    seed: u64,
) -> Result<bool> {
    lattice.require_square_two(f)?;
    for j in 0..lattice.rank() {
        let mut e = vec![0i64; lattice.rank()];
        e[j] = 1;
        let twice = lattice.reflect_unchecked(f, &lattice.reflect_unchecked(f, &e)?)?;
        if twice != e {
            return Ok(false);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let x: Vec<i64> = (0..lattice.rank()).map(|_| rng.gen_range(-50..=50)).collect();
        let twice = lattice.reflect_unchecked(f, &lattice.reflect_unchecked(f, &x)?)?;
        if twice != x {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BraidVerdict {
    Commute,
    Braid,
    Neither,
}

/// Classify the pair of reflections by exact operator identities on a
/// basis: `commute` when `s = 0` verifies, `braid` when `s = ±1` verifies,
/// `neither` otherwise (including all `|s| ≥ 2`).
pub fn check_braid(lattice: &KLattice, e: &[i64], f: &[i64]) -> Result<BraidVerdict> {
    lattice.require_square_two(e)?;
    lattice.require_square_two(f)?;
    let s = lattice.pairing(e, f)?;
    let s_rev = lattice.pairing(f, e)?;
    if s != s_rev {
        return Err(Error::ShapeMismatch(format!(
            "pairing is not symmetric on the pair: χ(e,f) = {}, χ(f,e) = {}",
            s, s_rev
        )));
    }
    let te = lattice.reflection_matrix(e)?;
    let tf = lattice.reflection_matrix(f)?;
    let ef = mat_mul(&te, &tf);
    let fe = mat_mul(&tf, &te);
    if s == 0 {
        return Ok(if ef == fe { BraidVerdict::Commute } else { BraidVerdict::Neither });
    }
    if s == 1 || s == -1 {
        let efe = mat_mul(&ef, &te);
        let fef = mat_mul(&fe, &tf);
        return Ok(if efe == fef { BraidVerdict::Braid } else { BraidVerdict::Neither });
    }
    Ok(BraidVerdict::Neither)
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

/// Intersection-theoretic surface model: Néron–Severi Gram matrix,
/// canonical class and `χ(O_X)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceModel {
    gram: Vec<Vec<i64>>,
    canonical: Vec<i64>,
    chi_o: i64,
}

impl SurfaceModel {
    pub fn new(gram: Vec<Vec<i64>>, canonical: Vec<i64>, chi_o: i64) -> Result<Self> {
        let rank = gram.len();
        if gram.iter().any(|row| row.len() != rank) {
            return Err(Error::ShapeMismatch("Gram matrix must be square".into()));
        }
        for i in 0..rank {
            for j in 0..rank {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::ShapeMismatch("Gram matrix must be symmetric".into()));
                }
            }
        }
        if canonical.len() != rank {
            return Err(Error::ShapeMismatch(
                "canonical class length differs from the lattice rank".into(),
            ));
        }
        Ok(SurfaceModel { gram, canonical, chi_o })
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn canonical(&self) -> &[i64] {
        &self.canonical
    }

    pub fn chi_o(&self) -> i64 {
        self.chi_o
    }

    pub fn intersect(&self, a: &[i64], b: &[i64]) -> Result<i64> {
        if a.len() != self.rank() || b.len() != self.rank() {
            return Err(Error::ShapeMismatch("divisor length differs from rank".into()));
        }
        let mut acc = 0;
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                acc += a[i] * self.gram[i][j] * b[j];
            }
        }
        Ok(acc)
    }

    /// Blow up a point: the lattice gains an orthogonal class `R` with
    /// `R² = −1`, the canonical class gains `+R`, and `χ(O)` is unchanged.
    pub fn blow_up(&self) -> SurfaceModel {
        let rank = self.rank();
        let mut gram = vec![vec![0i64; rank + 1]; rank + 1];
        for i in 0..rank {
            for j in 0..rank {
                gram[i][j] = self.gram[i][j];
            }
        }
        gram[rank][rank] = -1;
        let mut canonical = self.canonical.clone();
        canonical.push(1);
        SurfaceModel {
            gram,
            canonical,
            chi_o: self.chi_o,
        }
    }

    /// Extend a divisor class of the base by a zero coefficient on the
    /// exceptional class.
    pub fn pullback_divisor(&self, d: &[i64]) -> Vec<i64> {
        let mut v = d.to_vec();
        v.push(0);
        v
    }
}

/// K-theory class of a sheaf on a surface model: rank, first Chern class,
/// and ch₂ (denominator dividing two).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KClass {
    pub rank: i64,
    pub c1: Vec<i64>,
    pub ch2: Scalar,
}

impl KClass {
    pub fn new(rank: i64, c1: Vec<i64>, ch2: Scalar) -> Self {
        KClass { rank, c1, ch2 }
    }

    pub fn structure_sheaf(model: &SurfaceModel) -> KClass {
        KClass {
            rank: 1,
            c1: vec![0; model.rank()],
            ch2: Scalar::zero(),
        }
    }

    pub fn neg(&self) -> KClass {
        KClass {
            rank: -self.rank,
            c1: self.c1.iter().map(|x| -x).collect(),
            ch2: -self.ch2.clone(),
        }
    }

    pub fn add(&self, other: &KClass) -> KClass {
        KClass {
            rank: self.rank + other.rank,
            c1: self.c1.iter().zip(&other.c1).map(|(a, b)| a + b).collect(),
            ch2: &self.ch2 + &other.ch2,
        }
    }

    pub fn sub(&self, other: &KClass) -> KClass {
        self.add(&other.neg())
    }

    pub fn scale(&self, n: i64) -> KClass {
        KClass {
            rank: n * self.rank,
            c1: self.c1.iter().map(|x| n * x).collect(),
            ch2: &self.ch2 * scalar_int(n),
        }
    }

    /// Pull back along a blow-up: the triple is unchanged, with the
    /// divisor extended by zero on the exceptional class.
    pub fn pullback(&self, blown_up: &SurfaceModel) -> Result<KClass> {
        if self.c1.len() + 1 != blown_up.rank() {
            return Err(Error::ShapeMismatch(
                "pullback target must be the one-step blow-up".into(),
            ));
        }
        let mut c1 = self.c1.clone();
        c1.push(0);
        Ok(KClass {
            rank: self.rank,
            c1,
            ch2: self.ch2.clone(),
        })
    }

    /// Tensor with the canonical bundle:
    /// `(r, D, s) ↦ (r, D + rK, s + D·K + r·K²/2)`.
    pub fn tensor_canonical(&self, model: &SurfaceModel) -> Result<KClass> {
        let k = model.canonical();
        let c1: Vec<i64> = self
            .c1
            .iter()
            .zip(k)
            .map(|(d, kk)| d + self.rank * kk)
            .collect();
        let dk = model.intersect(&self.c1, k)?;
        let k2 = model.intersect(k, k)?;
        let ch2 = &self.ch2
            + scalar_int(dk)
            + scalar_int(self.rank) * scalar_int(k2) / scalar_int(2);
        Ok(KClass {
            rank: self.rank,
            c1,
            ch2,
        })
    }
}

/// Riemann–Roch Euler pairing on a surface:
/// `χ(E,F) = r_E r_F χ(O) + r_E s_F + r_F s_E − c₁ᴱ·c₁ᶠ − ½K·(r_E c₁ᶠ − r_F c₁ᴱ)`.
pub fn euler_pairing_surface(model: &SurfaceModel, e: &KClass, f: &KClass) -> Result<Scalar> {
    if e.c1.len() != model.rank() || f.c1.len() != model.rank() {
        return Err(Error::ShapeMismatch(
            "class divisor length differs from the lattice rank".into(),
        ));
    }
    let re = scalar_int(e.rank);
    let rf = scalar_int(f.rank);
    let chio = scalar_int(model.chi_o());
    let c1c1 = scalar_int(model.intersect(&e.c1, &f.c1)?);
    let mixed: Vec<i64> = e
        .c1
        .iter()
        .zip(&f.c1)
        .map(|(ce, cf)| e.rank * cf - f.rank * ce)
        .collect();
    let k_mixed = scalar_int(model.intersect(model.canonical(), &mixed)?);
    let half = Scalar::new(1.into(), 2.into());
    Ok(&re * &rf * chio + re * &f.ch2 + rf * &e.ch2 - c1c1 - half * k_mixed)
}

/// Class of the twisted structure sheaf `O_C(k)` of a curve in class `C`:
/// `(0, C, k − C²/2)`.
pub fn curve_sheaf_class(model: &SurfaceModel, c: &[i64], k: i64) -> Result<KClass> {
    let c2 = model.intersect(c, c)?;
    let ch2 = scalar_int(k) - scalar_int(c2) / scalar_int(2);
    Ok(KClass {
        rank: 0,
        c1: c.to_vec(),
        ch2,
    })
}

/// Assert that a rational is integral and return it; Euler pairings of
/// honest sheaf classes must be integers.
pub fn expect_integer(x: &Scalar) -> Result<i64> {
    if !x.denom().is_one() {
        return Err(Error::Internal(format!("expected an integer, got {}", x)));
    }
    let n = x.numer();
    let small: i64 = n
        .try_into()
        .map_err(|_| Error::Internal("integer out of range".into()))?;
    Ok(small)
}

/// Standard models for the bundled examples.
pub mod presets {
    use super::*;

    /// Rank-2 lattice containing a (−2)-curve meeting a (−1)-style class;
    /// minimal K3: trivial canonical class, χ(O) = 2. The single generator
    /// is the (−2)-curve.
    pub fn k3_with_minus_two_curve() -> SurfaceModel {
        SurfaceModel::new(vec![vec![-2]], vec![0], 2).unwrap()
    }

    /// Ruled surface of genus one with invariant zero: basis (section C₀,
    /// fibre P), K = −2C₀, χ(O) = 0.
    pub fn ruled_genus_one() -> SurfaceModel {
        SurfaceModel::new(
            vec![vec![0, 1], vec![1, 0]],
            vec![-2, 0],
            0,
        )
        .unwrap()
    }
}
