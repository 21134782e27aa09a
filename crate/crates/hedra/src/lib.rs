//! Compact hyperbolic Coxeter polyhedra: combinatorial construction and
//! mutation, high-precision realization in E^{3,1}, exact recognition of
//! the resulting algebraic data, and commensurability invariants of the
//! associated reflection groups.

pub mod algnum;
pub mod cplx;
pub mod invariants;
pub mod linalg;
pub mod prec;

pub mod combinat;
pub mod realize;
