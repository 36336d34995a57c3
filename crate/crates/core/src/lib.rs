//! Exact verification toolkit for a one-parameter family of plane cubic curves
//! over Q that are everywhere locally solvable but have no rational point.

pub mod exactnum;
pub mod galoisfield;
pub mod polyring;
pub mod padic;
pub mod cubicgeom;
pub mod jacinv;
pub mod family;
