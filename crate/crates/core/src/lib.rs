//! Numerical toolkit for flat circle bundles over surfaces and the group
//! theory behind controlled holonomy.
//!
//! * [`psl2`]: PSL(2,R), its Lie algebra and its action on RP^1.
//! * [`ucover`]: the universal cover, translation numbers and Euler classes.
//! * [`mwbuild`]: builders for representations with generators close to
//!   rotations and a prescribed Euler class.
//! * [`circledyn`]: piecewise-linear homeomorphisms of the circle and interval.
//! * [`su2lab`]: the binary icosahedral group and SU(2) solvers.

pub mod psl2;
pub mod ucover;
pub mod mwbuild;
pub mod circledyn;
pub mod su2lab;
