//! Shared fixtures for the criterion benches.

use g2calc::torus_spectral::Mode;

/// A generic mode with no zero or repeated entries.
pub const GENERIC_MODE: Mode = [1, -2, 3, 1, 2, -1, 3];

/// A mode lying on a coordinate axis.
pub const AXIS_MODE: Mode = [0, 0, 0, 2, 0, 0, 0];
