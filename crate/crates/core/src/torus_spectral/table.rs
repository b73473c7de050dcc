//! Per-mode operator matrices on the flat torus.
//!
//! On the mode `e^{i k·x}` the Levi-Civita derivative `∇_q` is multiplication by
//! `i k_q`, so `d = i k∧`, `d* = −i k⌟`, `𝓛_B = i Σ k_p (e_p⌟φ)∧` and
//! `𝓛_K = −i Σ k_p (e_p⌟ψ)∧`. The real parts of these (dropping the phase)
//! are kept separately for rank computations.

use crate::derivations::{iota_b_op, iota_k_op};
use crate::figures::REFERENCE_D;
use crate::g2_decomp::{projectors, TypeLabel};
use crate::g2_linear::{standard_g2, Form};
use crate::graded::GradedOp;
use crate::linalg::Matrix;
use crate::scalar::{qi, Field, Q, Qi};
use std::collections::BTreeMap;
use std::sync::OnceLock;

pub type Mode = [i64; 7];

pub fn norm_sqr(k: &Mode) -> i64 {
    k.iter().map(|x| x * x).sum()
}

pub fn max_norm(k: &Mode) -> i64 {
    k.iter().map(|x| x.abs()).max().unwrap_or(0)
}

pub struct ConstOps {
    pub wedge: Vec<GradedOp<Q>>,
    pub interior: Vec<GradedOp<Q>>,
    /// `(e_p⌟φ)∧`
    pub w_phi: Vec<GradedOp<Q>>,
    /// `(e_p⌟ψ)∧`
    pub v_psi: Vec<GradedOp<Q>>,
    pub phi_wedge: GradedOp<Q>,
    pub psi_wedge: GradedOp<Q>,
}

pub fn const_ops() -> &'static ConstOps {
    static C: OnceLock<ConstOps> = OnceLock::new();
    C.get_or_init(|| {
        let g = standard_g2();
        let e = |p: usize| Form::<Q>::basis_form(1 << p);
        ConstOps {
            wedge: (0..7).map(|p| GradedOp::from_form_map(1, |a: &Form<Q>| e(p).wedge(a))).collect(),
            interior: (0..7).map(|p| GradedOp::from_form_map(-1, |a: &Form<Q>| a.interior_basis(p))).collect(),
            w_phi: (0..7)
                .map(|p| {
                    let b = g.phi.interior_basis(p);
                    GradedOp::from_form_map(2, move |a: &Form<Q>| b.wedge(a))
                })
                .collect(),
            v_psi: (0..7)
                .map(|p| {
                    let b = g.psi.interior_basis(p);
                    GradedOp::from_form_map(3, move |a: &Form<Q>| b.wedge(a))
                })
                .collect(),
            phi_wedge: GradedOp::from_form_map(3, |a: &Form<Q>| g.phi.wedge(a)),
            psi_wedge: GradedOp::from_form_map(4, |a: &Form<Q>| g.psi.wedge(a)),
        }
    })
}

fn combine(ops: &[GradedOp<Q>], k: &Mode) -> GradedOp<Q> {
    let mut out = GradedOp::zero(ops[0].shift);
    for (p, op) in ops.iter().enumerate() {
        if k[p] != 0 {
            out = out.add(&op.scale(&qi(k[p])));
        }
    }
    out
}

/// Phase-free real parts: `d = i·a`, `d* = −i·ai`, `𝓛_B = i·lb`, `𝓛_K = −i·lk`.
pub struct RealModeOps {
    pub mode: Mode,
    pub a: GradedOp<Q>,
    pub ai: GradedOp<Q>,
    pub lb: GradedOp<Q>,
    pub lk: GradedOp<Q>,
}

impl RealModeOps {
    pub fn new(k: Mode) -> Self {
        let c = const_ops();
        RealModeOps { mode: k, a: combine(&c.wedge, &k), ai: combine(&c.interior, &k), lb: combine(&c.w_phi, &k), lk: combine(&c.v_psi, &k) }
    }
}

/// Exact complex matrices of every operator at one Fourier mode.
pub struct ModeOperatorTable {
    pub mode: Mode,
    pub d: GradedOp<Qi>,
    pub ds: GradedOp<Qi>,
    pub lap: GradedOp<Qi>,
    pub iota_b: GradedOp<Qi>,
    pub iota_k: GradedOp<Qi>,
    pub lie_b: GradedOp<Qi>,
    pub lie_k: GradedOp<Qi>,
    pub lie_b_star: GradedOp<Qi>,
    /// `D^l_m` in parameter coordinates, keyed by `(l, m)`.
    pub d_ref: BTreeMap<(usize, usize), Matrix<Qi>>,
}

pub fn i_unit() -> Qi {
    Qi::i()
}

pub fn build_mode_table(k: Mode) -> ModeOperatorTable {
    let r = RealModeOps::new(k);
    let i = i_unit();
    let d = r.a.to_complex().scale(&i);
    let ds = r.ai.to_complex().scale(&-i.clone());
    let lap = d.compose(&ds).add(&ds.compose(&d));
    let iota_b = iota_b_op().to_complex();
    let iota_k = iota_k_op().to_complex();
    let lie_b = iota_b.compose(&d).add(&d.compose(&iota_b));
    let lie_k = iota_k.compose(&d).sub(&d.compose(&iota_k));
    let lie_b_star = lie_b.adjoint();
    let p = projectors();
    let d_ref = REFERENCE_D
        .iter()
        .map(|&(l, m, deg)| ((l, m), p.component(d.block(deg), TypeLabel::of(deg, l), TypeLabel::of(deg + 1, m))))
        .collect();
    ModeOperatorTable { mode: k, d, ds, lap, iota_b, iota_k, lie_b, lie_k, lie_b_star, d_ref }
}

impl ModeOperatorTable {
    pub fn d_ref(&self, l: usize, m: usize) -> Option<&Matrix<Qi>> {
        self.d_ref.get(&(l, m))
    }

    /// `L_to · op · B_from` for an operator whose degree matches the slot.
    pub fn component(&self, op: &GradedOp<Qi>, from: TypeLabel, to: TypeLabel) -> Matrix<Qi> {
        assert_eq!(to.k as isize - from.k as isize, op.shift, "slot does not match operator degree");
        projectors().component(op.block(from.k), from, to)
    }
}

/// `|k|²` as a Gaussian rational.
pub fn norm_sqr_qi(k: &Mode) -> Qi {
    Qi::from_q(qi(norm_sqr(k)))
}
