//! Exact computations for acyclic cluster algebras and their cluster categories.
//!
//! The crate enumerates seeds by mutation, computes Hom and Ext¹ in the cluster
//! category of an acyclic quiver, evaluates cluster characters through
//! quiver-Grassmannian point counts, and checks denominator vectors of cluster
//! variables against Hom-dimension vectors.

pub mod character;
pub mod clustercat;
pub mod combinatorics;
pub mod fdalg;
pub mod field;
pub mod laurent;
pub mod linalg;
pub mod repkit;
pub mod verify;

pub use character::{CharError, CharacterEngine, CharacterOptions, CharacterResult, ObjectCharacter};
pub use clustercat::{CObj, CatError, CategoryConfig, ClusterCategory, ClusterTracker, Exchange, TiltingContext};
pub use combinatorics::{enumerate, CombError, EnumerateOptions, ObjLabel, Quiver, Registry, Seed, SeedKey};
pub use fdalg::{AlgError, FdAlgebra, FdModule};
pub use field::{Field, FieldTag, PrimeField, Rationals};
pub use laurent::{weak_positivity_certificate, IntVector, LaurentError, LaurentPoly, Positivity};
pub use linalg::Matrix;
pub use repkit::{PathAlgebra, Rep, RepError};
pub use verify::{CampaignOptions, Outcome, VerificationReport, VerifyError};
