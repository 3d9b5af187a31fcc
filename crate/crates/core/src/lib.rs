//! Exact computation in the quantized enveloping algebras `U_h(sl_{n+1})`:
//! scalars in `q = e^{h/2}`, PBW straightening, Hopf structure, universal
//! R-matrices, ribbon elements and fundamental representations.

pub mod expr;
pub mod hopf;
pub mod hseries;
pub mod pbw;
pub mod qcalc;
pub mod repn;
pub mod ribbon;
pub mod rmatrix;
pub mod scalars;
pub mod suites;
