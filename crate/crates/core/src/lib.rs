// SPDX-License-Identifier: Apache-2.0

//! Locally repairable codes built from genus-2 hyperelliptic curves over
//! odd-characteristic finite fields, using subgroups of the curve's
//! automorphism group to partition rational places into repair groups.

pub mod error;
pub mod aut;
pub mod construct;
pub mod curve;
pub mod field;
pub mod func;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod riemann_roch;
pub mod tables;
pub mod verify;

pub use error::{Error, Result};
pub use curve::{Curve, HasseWeil, Infinity, Place};
pub use field::{Fe, Field, FieldSpec};
pub use func::{Divisor, Func, Lead};
pub use linalg::Matrix;
pub use poly::Poly;
