//! Cluster combinatorics of triangulated bordered surfaces with marked points.

pub mod blocks;
pub mod cluster;
pub mod error;
pub mod finite_models;
pub mod graph;
pub mod matrix;
pub mod mutation;
pub mod surface;
pub mod tagged;
pub mod trimap;

pub use error::{Error, Result};
pub use graph::FlipGraph;
pub use matrix::ExchangeMatrix;
pub use surface::{classify, recover_genus_punctures, validate_surface, MarkedSurface, SurfaceClassification, SurfaceDescriptor};
pub use trimap::{initial_triangulation, IdealTriangulation, Side, Triangle};
pub use tagged::{tag_plain, tag_with, untag, Tag, TaggedTriangulation};
pub use finite_models::{ClusterComplex, Model, ModelArc};
pub use mutation::{canonical_form, is_acyclic, make_quiver, mutation_class, recognize_type, MutationClass, Quiver, QuiverSpec, TypeGuess};
pub use blocks::{decompose, surface_from_decomposition, BlockDecomposition, BlockKind, PlacedBlock};
pub use cluster::{all_cluster_variables, denominator_vector, mutate_seed, tropical_mutate, LaurentPoly, Seed};
