//! Numerical laboratory for temporal-ordering measurements in quantum
//! mechanics: which of two particles reaches the origin first, and whether
//! two arrivals are coincident.
//!
//! The two-particle 1D problem maps canonically onto one particle in 2D.
//! An order-of-arrival detector becomes plane-wave diffraction off a hard
//! half-line screen ([`halfplane`]); a coincidence detector becomes hard-disk
//! partial-wave scattering ([`disk`]).  Both carry diffraction-limited
//! accuracy floors of the form δt ≳ 1/Ē, which the wavepacket solver in
//! [`dynamics`] and the sweeps in [`experiments`] measure directly.
//!
//! Start with the runnable programs under `examples/` — one per capability —
//! or the `tempord` binary (`tempord --help`).

pub mod cli;
pub mod disk;
pub mod dynamics;
pub mod experiments;
pub mod halfplane;
pub mod specfun;

pub(crate) mod quad;
