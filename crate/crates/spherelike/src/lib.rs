//! Exact homological algebra over bound quiver algebras.
//!
//! Everything is computed over the rationals with arbitrary-precision
//! arithmetic; there are no tolerance parameters anywhere. The building
//! blocks are:
//!
//! * [`exact`] — rational matrices, kernels, solving, and the splitting of
//!   two-dimensional commutative algebras into nilpotent/disconnected type.
//! * [`algebra`] — bound quiver algebras presented by a quiver and an
//!   admissible relation ideal, with a path basis and multiplication table.
//! * [`rep`] — quiver representations, projective covers, minimal projective
//!   resolutions, and the Nakayama correspondence.
//! * [`complex`] — perfect complexes: shift, cone, direct sums, minimal
//!   models, and a seeded randomized isomorphism test.
//! * [`hom`] — graded Hom-spaces with explicit basis chain maps, the Serre
//!   functor, and Serre-duality verification.
//! * [`sphere`] — classification of objects (exceptional / spherelike),
//!   the asphericality triangle, twist functors and their left adjoints,
//!   and the spherical-subcategory membership oracle.
//! * [`kgroup`] — Euler-form lattices with reflection/braid calculus and
//!   surface Riemann–Roch models.
//! * [`textio`] — the text formats for algebras, complexes and surface
//!   models consumed by the command-line front end.
//!
//! ```
//! use spherelike::algebra::presets;
//! use spherelike::complex::PerfectComplex;
//! use spherelike::sphere::{asphericality, classify, Classification, Flavor};
//!
//! // P(1) ⊕ P(3) over the bound A3 algebra is 0-spherelike but not
//! // spherical: its asphericality is a nonzero complex.
//! let alg = presets::bound_a3();
//! let f = PerfectComplex::stalk(alg, 0, vec![0, 2]);
//! let report = classify(&f)?;
//! assert_eq!(
//!     report.classification,
//!     Classification::Spherelike { d: 0, flavor: Flavor::Disconnected }
//! );
//! let data = asphericality(&f)?;
//! assert!(!data.q.is_zero());
//! # Ok::<(), spherelike::Error>(())
//! ```

pub mod algebra;
pub mod complex;
pub mod exact;
pub mod hom;
pub mod kgroup;
pub mod rep;
pub mod sphere;
pub mod textio;

mod error;

pub use error::{Error, Result};

pub use complex::{cone, euler_pairing_complexes, ChainMap, PerfectComplex};
pub use hom::{hom, is_isomorphic, serre, serre_pairing_check, GradedHomSpace};
pub use sphere::{asphericality, classify, in_spherical_subcategory, twist, twist_left};

#[cfg(test)]
mod thread_safety {
    // every value is immutable after construction; callers may freely
    // move computations across threads
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn core_types_are_send_and_sync() {
        assert_send_sync::<std::sync::Arc<crate::algebra::BoundQuiverAlgebra>>();
        assert_send_sync::<crate::rep::Representation>();
        assert_send_sync::<crate::complex::PerfectComplex>();
        assert_send_sync::<crate::complex::ChainMap>();
        assert_send_sync::<crate::hom::GradedHomSpace>();
        assert_send_sync::<crate::sphere::AsphericalityData>();
        assert_send_sync::<crate::kgroup::SurfaceModel>();
    }
}
