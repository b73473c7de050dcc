//! Per-mode dimensions of the 𝓛_B-, 𝓛_K- and de Rham cohomologies and of the
//! complexes built from `ker 𝓛_B`.
//!
//! Everything here works with the phase-free real parts `a, ai, lb, lk`; the
//! complex operators are those times a unit, so kernels and images agree.

use super::table::{Mode, RealModeOps};
use crate::g2_linear::dim;
use crate::graded::star_block;
use crate::linalg::{contains_space, intersection, orthogonal_complement, subspace_eq, Matrix};
use crate::report::Check;
use crate::scalar::Q;
use serde::Serialize;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DegreeDims {
    pub degree: usize,
    pub dim: usize,
    pub ker_d: usize,
    pub im_d: usize,
    pub ker_lb: usize,
    pub im_lb_cap_ker_lb: usize,
    pub h_phi: usize,
    pub ker_lk: usize,
    pub im_lk: usize,
    pub h_psi: usize,
    pub de_rham: usize,
    pub harmonic: usize,
    /// Cohomology of `(ker 𝓛_B, d)`.
    pub ker_lb_complex: usize,
    /// Cohomology of `(ker 𝓛_B ∩ im 𝓛_B, d)`.
    pub image_complex: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexSnapshot {
    pub mode: Mode,
    pub degrees: Vec<DegreeDims>,
}

impl ComplexSnapshot {
    pub fn h_phi(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.h_phi).collect()
    }

    pub fn h_psi(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.h_psi).collect()
    }

    pub fn de_rham(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.de_rham).collect()
    }

    pub fn harmonic(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.harmonic).collect()
    }

    /// `ker + im = dim` for `d` on every degree.
    pub fn rank_nullity_ok(&self) -> bool {
        self.degrees.iter().all(|d| {
            let next_im = self.degrees.get(d.degree + 1).map_or(0, |n| n.im_d);
            d.ker_d + next_im == d.dim && d.im_d <= d.ker_d && d.im_lb_cap_ker_lb <= d.ker_lb && d.im_lk <= d.ker_lk
        })
    }

    /// Add `weight` copies of another snapshot's dimensions.
    pub fn accumulate(&mut self, o: &ComplexSnapshot, weight: usize) {
        for (a, b) in self.degrees.iter_mut().zip(&o.degrees) {
            a.dim += weight * b.dim;
            a.ker_d += weight * b.ker_d;
            a.im_d += weight * b.im_d;
            a.ker_lb += weight * b.ker_lb;
            a.im_lb_cap_ker_lb += weight * b.im_lb_cap_ker_lb;
            a.h_phi += weight * b.h_phi;
            a.ker_lk += weight * b.ker_lk;
            a.im_lk += weight * b.im_lk;
            a.h_psi += weight * b.h_psi;
            a.de_rham += weight * b.de_rham;
            a.harmonic += weight * b.harmonic;
            a.ker_lb_complex += weight * b.ker_lb_complex;
            a.image_complex += weight * b.image_complex;
        }
    }

    pub fn empty(mode: Mode) -> Self {
        ComplexSnapshot { mode, degrees: (0..=7).map(|j| DegreeDims { degree: j, ..Default::default() }).collect() }
    }
}

/// Kernels, images and restricted ranks for one mode, computed once.
pub struct ModeSpaces {
    pub ops: RealModeOps,
    /// `ker lb_j` as column basis.
    pub ker_lb: Vec<Matrix<Q>>,
    /// `im lb_{j−2}` inside degree `j`.
    pub im_lb: Vec<Matrix<Q>>,
    /// `im a_{j−1}` inside degree `j`.
    pub im_d: Vec<Matrix<Q>>,
    /// `im ai_{j+1}` inside degree `j`.
    pub im_ds: Vec<Matrix<Q>>,
}

fn image_into(op: &crate::graded::GradedOp<Q>, j: usize) -> Matrix<Q> {
    let src = j as isize - op.shift;
    if (0..=7).contains(&src) {
        op.block(src as usize).column_basis()
    } else {
        Matrix::zeros(dim(j), 0)
    }
}

impl ModeSpaces {
    pub fn new(k: Mode) -> Self {
        let ops = RealModeOps::new(k);
        let ker_lb = (0..=7).map(|j| ops.lb.block(j).nullspace()).collect();
        let im_lb = (0..=7).map(|j| image_into(&ops.lb, j)).collect();
        let im_d = (0..=7).map(|j| image_into(&ops.a, j)).collect();
        let im_ds = (0..=7).map(|j| image_into(&ops.ai, j)).collect();
        ModeSpaces { ops, ker_lb, im_lb, im_d, im_ds }
    }

    fn d_rank_on(&self, j: usize, sub: &Matrix<Q>) -> usize {
        if j == 7 || sub.cols() == 0 {
            0
        } else {
            self.ops.a.block(j).mul(sub).rank()
        }
    }

    /// Cohomology dims of `d` restricted to the subcomplex spanned by `sub[j]`.
    fn sub_cohomology(&self, sub: &[Matrix<Q>]) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=7).map(|j| self.d_rank_on(j, &sub[j])).collect();
        (0..=7).map(|j| sub[j].cols() - ranks[j] - if j > 0 { ranks[j - 1] } else { 0 }).collect()
    }

    pub fn snapshot(&self) -> ComplexSnapshot {
        let o = &self.ops;
        let rank = |op: &crate::graded::GradedOp<Q>, j: isize| if (0..=7).contains(&j) { op.block(j as usize).rank() } else { 0 };
        let s: Vec<Matrix<Q>> = (0..=7).map(|j| intersection(&self.ker_lb[j], &self.im_lb[j])).collect();
        let lap = o.a.compose(&o.ai).add(&o.ai.compose(&o.a));
        let kc = self.sub_cohomology(&self.ker_lb);
        let sc = self.sub_cohomology(&s);
        let degrees = (0..=7usize)
            .map(|j| {
                let n = dim(j);
                let ji = j as isize;
                let ker_d = n - rank(&o.a, ji);
                let im_d = rank(&o.a, ji - 1);
                let ker_lk = n - rank(&o.lk, ji);
                let im_lk = rank(&o.lk, ji - 3);
                DegreeDims {
                    degree: j,
                    dim: n,
                    ker_d,
                    im_d,
                    ker_lb: self.ker_lb[j].cols(),
                    im_lb_cap_ker_lb: s[j].cols(),
                    h_phi: self.ker_lb[j].cols() - s[j].cols(),
                    ker_lk,
                    im_lk,
                    h_psi: ker_lk - im_lk,
                    de_rham: ker_d - im_d,
                    harmonic: n - lap.block(j).rank(),
                    ker_lb_complex: kc[j],
                    image_complex: sc[j],
                }
            })
            .collect();
        ComplexSnapshot { mode: o.mode, degrees }
    }
}

pub fn mode_cohomology(k: Mode) -> ComplexSnapshot {
    ModeSpaces::new(k).snapshot()
}

/// Subspace statements about `ker 𝓛_B`, `im d`, `im d*` at one mode, plus the
/// snapshot-level comparisons with de Rham cohomology.
pub fn verify_complexes(k: Mode) -> (ComplexSnapshot, Vec<Check>) {
    let sp = ModeSpaces::new(k);
    let snap = sp.snapshot();
    let o = &sp.ops;
    let mut out = Vec::new();

    let same_as_de_rham = snap.degrees.iter().all(|d| d.ker_lb_complex == d.de_rham);
    out.push(Check::new(
        "(ker L_B, d) cohomology = de Rham",
        "ker-lb-quasi-isomorphism",
        same_as_de_rham,
        format!("{:?} vs {:?}", snap.degrees.iter().map(|d| d.ker_lb_complex).collect::<Vec<_>>(), snap.de_rham()),
    ));
    let trivial = snap.degrees.iter().all(|d| d.image_complex == 0);
    out.push(Check::new(
        "(ker L_B ∩ im L_B, d) cohomology = 0",
        "image-subcomplex-acyclic",
        trivial,
        format!("{:?}", snap.degrees.iter().map(|d| d.image_complex).collect::<Vec<_>>()),
    ));

    let mut cor_ok = true;
    for j in 1..=7 {
        let lhs = intersection(&sp.im_d[j], &sp.ker_lb[j]);
        let rhs = if sp.ker_lb[j - 1].cols() == 0 { Matrix::zeros(dim(j), 0) } else { o.a.block(j - 1).mul(&sp.ker_lb[j - 1]) };
        cor_ok &= subspace_eq(&lhs, &rhs);
    }
    out.push(Check::new("(im d) ∩ ker L_B = d(ker L_B) in every degree", "exact-kernel-forms", cor_ok, ""));

    let h = snap.h_phi();
    let dual = (0..=7).all(|j| h[j] == h[7 - j]);
    out.push(Check::new("dim H^j_phi = dim H^(7-j)_phi", "hphi-star-duality", dual, format!("{h:?}")));

    out.push(Check::new(
        "(ker L_B)^3 ⊆ ker d*",
        "ker-lb-coclosed-three",
        contains_space(&o.ai.block(3).nullspace(), &sp.ker_lb[3]),
        format!("dim ker L_B^3 = {}", sp.ker_lb[3].cols()),
    ));

    // 𝓛*_B on Ω³ lands in Ω¹; its real part is lb_1ᵀ.
    let ker_lstar3 = o.lb.block(1).transpose().nullspace();
    let l3 = intersection(&sp.im_ds[3], &sp.ker_lb[3]);
    let r3 = intersection(&sp.im_ds[3], &ker_lstar3);
    out.push(Check::new("(im d*)^3 ∩ ker L_B = (im d*)^3 ∩ ker L_B*", "coexact-three-forms", subspace_eq(&l3, &r3), format!("dim {}", l3.cols())));

    let both = sp.im_ds[4].hstack(&sp.im_d[4]).column_basis();
    let k4 = &sp.ker_lb[4];
    let whole = intersection(k4, &both).cols();
    let split = intersection(k4, &sp.im_ds[4]).cols() + intersection(k4, &sp.im_d[4]).cols();
    out.push(Check::new("ker L_B^4 ∩ (im d* + im d) splits", "four-form-splitting", whole == split, format!("{whole} vs {split}")));

    let triple = intersection(&intersection(&sp.im_d[4], k4), &sp.im_lb[4]).cols();
    out.push(Check::new("(im d)^4 ∩ ker L_B ∩ im L_B = 0", "four-form-triviality", triple == 0, format!("dim {triple}")));

    let mut reg = true;
    for j in 0..=7 {
        let dual_ker = star_block::<Q>(7 - j).mul(&sp.ker_lb[7 - j]);
        reg &= subspace_eq(&sp.im_lb[j], &orthogonal_complement(&dual_ker));
    }
    out.push(Check::new("(im L_B)^j = *((ker L_B)^(7-j))^perp", "lb-image-regularity", reg, ""));

    out.push(Check::new("rank-nullity per degree", "snapshot-consistency", snap.rank_nullity_ok(), ""));

    if k.iter().any(|&x| x != 0) {
        let (w, ok) = d_star_psi_witness(&sp);
        out.push(Check::new("d*(f psi) represents a nonzero class in H^3_phi", "hphi-three-witness", ok, w));
    }
    (snap, out)
}

/// `d*(e^{ik·x} ψ)` is `𝓛_B`-closed and not in `im 𝓛_B`.
fn d_star_psi_witness(sp: &ModeSpaces) -> (String, bool) {
    let psi = crate::g2_linear::standard_g2().psi.coeffs.clone();
    let w = sp.ops.ai.block(4).apply(&psi);
    let wm = Matrix::from_columns(dim(3), &[w]);
    let closed = sp.ops.lb.block(3).mul(&wm).is_zero();
    let nonzero = !wm.is_zero();
    let exact = contains_space(&sp.im_lb[3], &wm);
    (format!("nonzero {nonzero}, L_B-closed {closed}, in im L_B {exact}"), nonzero && closed && !exact)
}
