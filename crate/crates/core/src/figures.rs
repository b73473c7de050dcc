//! Expected component constants of d, ι_B, ι_K, 𝓛_B and 𝓛_K between types.
//!
//! For `d`, `𝓛_B` and `𝓛_K` the constant multiplies the reference operator
//! `D^l_m` (parameter-coordinate matrix of `π_m d` on the lowest degree where
//! `Ω_l` is followed by `Ω_m`). For `ι_B` and `ι_K` it multiplies the
//! identification of the common parameter. Slots not listed are zero.

use crate::g2_decomp::TypeLabel;
use crate::scalar::{q, Q};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub from: TypeLabel,
    pub to: TypeLabel,
    pub num: i64,
    pub den: i64,
}

impl Arrow {
    pub fn value(&self) -> Q {
        q(self.num, self.den)
    }
}

const fn a(k: usize, l: usize, k2: usize, m: usize, num: i64, den: i64) -> Arrow {
    Arrow { from: TypeLabel::of(k, l), to: TypeLabel::of(k2, m), num, den }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FigureOp {
    D,
    IotaB,
    IotaK,
    LieB,
    LieK,
}

impl FigureOp {
    pub fn shift(self) -> usize {
        match self {
            FigureOp::D | FigureOp::IotaB => 1,
            FigureOp::IotaK | FigureOp::LieB => 2,
            FigureOp::LieK => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FigureOp::D => "d",
            FigureOp::IotaB => "iota_B",
            FigureOp::IotaK => "iota_K",
            FigureOp::LieB => "L_B",
            FigureOp::LieK => "L_K",
        }
    }

    pub fn all() -> [FigureOp; 5] {
        [FigureOp::D, FigureOp::IotaB, FigureOp::IotaK, FigureOp::LieB, FigureOp::LieK]
    }

    pub fn arrows(self) -> &'static [Arrow] {
        match self {
            FigureOp::D => &D_ARROWS,
            FigureOp::IotaB => &IOTA_B_ARROWS,
            FigureOp::IotaK => &IOTA_K_ARROWS,
            FigureOp::LieB => &LIE_B_ARROWS,
            FigureOp::LieK => &LIE_K_ARROWS,
        }
    }

    /// Every slot `(from, to)` between valid types with the right degree jump.
    pub fn slots(self) -> Vec<(TypeLabel, TypeLabel)> {
        let s = self.shift();
        let mut out = Vec::new();
        for from in TypeLabel::all() {
            for to in TypeLabel::in_degree(from.k + s) {
                out.push((from, to));
            }
        }
        out
    }

    /// Expected constant for a slot; `None` means the component must vanish.
    pub fn expected(self, from: TypeLabel, to: TypeLabel) -> Option<Q> {
        self.arrows().iter().find(|x| x.from == from && x.to == to).map(Arrow::value)
    }
}

/// The exterior derivative: constant times `D^l_m`.
pub const D_ARROWS: [Arrow; 22] = [
    a(0, 1, 1, 7, 1, 1),
    a(1, 7, 2, 7, 1, 1),
    a(1, 7, 2, 14, 1, 1),
    a(2, 7, 3, 1, 1, 1),
    a(2, 7, 3, 7, -3, 2),
    a(2, 7, 3, 27, 1, 1),
    a(2, 14, 3, 7, 1, 1),
    a(2, 14, 3, 27, 1, 1),
    a(3, 1, 4, 7, -1, 1),
    a(3, 7, 4, 1, 4, 3),
    a(3, 7, 4, 7, -3, 2),
    a(3, 7, 4, 27, -1, 1),
    a(3, 27, 4, 7, 1, 1),
    a(3, 27, 4, 27, 1, 1),
    a(4, 1, 5, 7, 1, 1),
    a(4, 7, 5, 7, 2, 1),
    a(4, 7, 5, 14, -1, 1),
    a(4, 27, 5, 7, 4, 3),
    a(4, 27, 5, 14, 1, 1),
    a(5, 7, 6, 7, 3, 1),
    a(5, 14, 6, 7, 4, 1),
    a(6, 7, 7, 1, 7, 3),
];

pub const IOTA_B_ARROWS: [Arrow; 7] = [
    a(1, 7, 2, 7, 1, 1),
    a(2, 7, 3, 7, 3, 1),
    a(3, 7, 4, 7, -3, 1),
    a(4, 7, 5, 7, -4, 1),
    a(5, 7, 6, 7, 3, 1),
    a(3, 1, 4, 1, -6, 1),
    a(3, 27, 4, 27, 1, 1),
];

pub const IOTA_K_ARROWS: [Arrow; 4] = [
    a(1, 7, 3, 7, -1, 1),
    a(2, 7, 4, 7, 3, 1),
    a(3, 7, 5, 7, -4, 1),
    a(4, 7, 6, 7, 4, 1),
];

pub const LIE_B_ARROWS: [Arrow; 16] = [
    a(0, 1, 2, 7, 1, 1),
    a(2, 7, 4, 1, -2, 1),
    a(2, 7, 4, 27, -2, 1),
    a(2, 14, 4, 7, -3, 1),
    a(2, 14, 4, 27, 1, 1),
    a(4, 1, 6, 7, 3, 1),
    a(4, 7, 6, 7, -6, 1),
    a(4, 27, 6, 7, 4, 1),
    a(1, 7, 3, 1, 1, 1),
    a(1, 7, 3, 7, 3, 2),
    a(1, 7, 3, 27, 1, 1),
    a(3, 1, 5, 7, -2, 1),
    a(3, 7, 5, 14, 3, 1),
    a(3, 27, 5, 7, -8, 3),
    a(3, 27, 5, 14, 1, 1),
    a(5, 7, 7, 1, 7, 1),
];

pub const LIE_K_ARROWS: [Arrow; 10] = [
    a(0, 1, 3, 7, -1, 1),
    a(3, 1, 6, 7, -4, 1),
    a(3, 7, 6, 7, 6, 1),
    a(3, 27, 6, 7, 4, 1),
    a(1, 7, 4, 1, 4, 3),
    a(1, 7, 4, 7, 3, 2),
    a(1, 7, 4, 27, -1, 1),
    a(4, 7, 7, 1, -28, 3),
    a(2, 7, 5, 14, 3, 1),
    a(2, 14, 5, 7, -4, 1),
];

/// The pairs `(l, m)` for which a reference operator `D^l_m` exists, with its degree.
pub const REFERENCE_D: [(usize, usize, usize); 10] = [
    (1, 7, 0),
    (7, 7, 1),
    (7, 14, 1),
    (7, 1, 2),
    (7, 27, 2),
    (14, 7, 2),
    (14, 27, 2),
    (27, 7, 3),
    (27, 27, 3),
    (27, 14, 4),
];

/// The vanishing pairs `D^1_1, D^1_14, D^14_1, D^1_27, D^27_1, D^14_14`.
pub const VANISHING_D: [(usize, usize); 6] = [(1, 1), (1, 14), (14, 1), (1, 27), (27, 1), (14, 14)];

pub fn reference_degree(l: usize, m: usize) -> Option<usize> {
    REFERENCE_D.iter().find(|r| r.0 == l && r.1 == m).map(|r| r.2)
}
