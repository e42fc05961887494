//! Numerical workbench for extremal problems on spheres in the Fejes Tóth
//! tradition: densest-packing and thinnest-covering bounds, the Tammes
//! problem and its antipodal and one-sided variants, contact-graph analysis,
//! and the isoperimetric theory of polyhedra circumscribed about a sphere.
//!
//! The crate is organised around five subsystems:
//!
//! * [`geom`] — spherical geometry primitives: unit vectors, angular
//!   distances, regular triangles, polygon areas, Voronoi/Delaunay
//!   tessellation via the convex hull, and central projection to tangent
//!   planes.
//! * [`bounds`] — closed-form and quadrature bounds: the Fejes Tóth
//!   packing/covering/code bounds, the Coxeter–Böröczky recursion,
//!   the Goldberg–Fejes Tóth inequality, kissing-number bookkeeping,
//!   and evaluators for the two open Fejes Tóth conjectures.
//! * [`optimize`] — seeded stochastic max–min search on the 2-sphere:
//!   Tammes configurations, antipodal codes, hemisphere codes, and
//!   contact-count maximization.
//! * [`contacts`] — contact graphs, their planar face structure, maximal
//!   packing tests, and sufficient irreducibility conditions.
//! * [`isoperimetric`] — circumscribed polyhedra, isoperimetric quotients,
//!   the central-projection area identities, the lifted-triangle area
//!   function, and their higher-dimensional Monte Carlo counterparts.
//!
//! All randomized computations are seeded and deterministic, independent of
//! thread count.

pub mod bounds;
pub mod contacts;
pub mod geom;
pub mod io;
pub mod isoperimetric;
pub mod optimize;
pub mod solids;

pub mod quad;
pub mod rngutil;

mod guide;
