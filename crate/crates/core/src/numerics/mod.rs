//! Small numerical kernels shared by the engines.

pub mod grid;
pub mod ode;
pub mod optimize;
pub mod quad;
pub mod roots;
pub mod tridiag;
