//! Rotational (micropolar) elasticity in the connection gauge.

// `!(x > 0)` is how NaN gets rejected alongside the ordinary bad values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod equations;
pub mod error;
pub mod field;
pub mod fields;
pub mod grid;
pub mod kinematics;
pub mod linalg;
pub mod radial;
pub mod scalar;
pub mod so3;
pub mod textio;
pub mod topology;

pub use error::{Error, Result};
pub use field::{ConstantField, MatrixField, MatrixJet, RotorField, RotorJet, Translated, TIME};
pub use grid::RotorGrid;
pub use kinematics::Moduli;
pub use linalg::{Mat3, Vec3};
pub use scalar::Scalar;
pub use so3::{AlphaSign, Rotor};
pub use topology::{total_charge, ChargeReport, ProductField};

pub type Rotor64 = Rotor<f64>;
pub type Rotor32 = Rotor<f32>;
pub type Vec3d = Vec3<f64>;
pub type Mat3d = Mat3<f64>;
pub type Moduli64 = Moduli<f64>;
pub type RotorGrid64 = RotorGrid<f64>;
pub type RadialProfile64 = radial::RadialProfile<f64>;
pub type ChargeReport64 = ChargeReport<f64>;
