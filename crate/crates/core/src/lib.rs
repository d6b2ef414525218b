//! Exact discriminant arithmetic for integer polynomials with constrained
//! coefficients, constructions that force the discriminant to be a perfect
//! square while approximating a chosen root, and rendering of the root
//! clouds those families produce.

pub mod arith;
pub mod atlas;
pub mod certificate;
pub mod coeffset;
pub mod constructions;
pub mod disc;
mod error;
pub mod f2;
pub mod poly;
pub mod roots;

pub use atlas::{
    build_root_cloud, csv_bytes, enumerate_polynomials, pixel_of, rasterize, rasterize_records,
    render_ppm, write_artifacts, Raster, RenderConfig, RootRecord,
};
pub use certificate::{ApproxCertificate, GaloisFlags, RoucheData};
pub use coeffset::{CoeffSet, ConstructionCase};
pub use constructions::{
    approximate_square_disc, choose_truncation_order, construct_case_i, construct_case_ii,
    construct_case_iii, find_truncation_order, periodic_truncation, TruncationChoice,
};
pub use disc::{discriminant, reciprocal_square_criterion, resultant, DiscriminantValue};
pub use error::{Error, Result};
pub use poly::IntPolynomial;
pub use roots::{find_all_roots, isolation_radius, min_modulus_on_circle, nearest_root, RootSet};

pub use num_bigint::BigInt;
pub use num_complex::Complex64;
pub use num_rational::BigRational;
