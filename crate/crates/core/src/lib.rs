//! Quaternion tensor T-products through octonion-unitary block diagonalization.
//!
//! A circulant quaternion matrix cannot be diagonalized by the DFT matrix (or by
//! `F_p j`, `(F_p + F_p j)/√2`) inside the quaternions, but the octonion matrices
//! `F_p·l`, `F_p·(jl)` and `F_p·(l + jl)/√2` do diagonalize it, and the resulting
//! diagonal is `√p·F_p·q̄`, an FFT of the conjugated generators. The same holds
//! blockwise, which yields an `O(mnsp)` T-product of `m×n×p` and `n×s×p`
//! quaternion tensors (versus `O(mnsp²)` by definition).
//!
//! Layout of the crate:
//!
//! * [`algebra`]: complex, quaternion and octonion scalars, two independent
//!   octonion products, conjugates and Cayley–Dickson splitting.
//! * [`linalg`]: dense complex / CD-form quaternion / octonion matrices, DFT and
//!   permutation matrices, circulant builders.
//! * [`tensor`]: third-order quaternion tensors in CD form.
//! * [`transform`]: FFTs (mixed radix + Bluestein) and the conjugating
//!   quaternion transforms along the third axis.
//! * [`diag`]: diagonalization, block diagonalization, reconstruction, and the
//!   quaternion-domain negative results.
//! * [`tproduct`]: the definitional T-product and the FFT-based one.
//!
//! Everything is `no_std` with `alloc`; all operations are pure.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod diag;
mod error;
pub mod identities;
mod kernel;
pub mod linalg;
pub mod random;
pub mod tensor;
pub mod tproduct;
pub mod transform;

pub use algebra::{Complex, Octonion, Quaternion};
pub use error::{Error, Result};
pub use linalg::{CMatrix, CdMatrix, CirculantGen, OctMatrix};
pub use tensor::CdTensor3;
