//! The flat torus T⁷ with its standard G2-structure, one Fourier mode at a time.
//!
//! Since φ is parallel, every operator commutes with translations and acts on
//! `α e^{i k·x}` through a finite matrix depending on `k` alone.

pub mod cohomology;
pub mod table;
pub mod truncation;
pub mod verify;

pub use cohomology::{mode_cohomology, verify_complexes, ComplexSnapshot, DegreeDims};
pub use table::{build_mode_table, Mode, ModeOperatorTable};
pub use truncation::{truncated_cohomology, truncation_series, TruncatedCohomology};
pub use verify::{
    probe_d_constant, symbol_ranks, verify_commutation, verify_figure, verify_kernel_theorem, verify_relations,
    verify_symbol_regularity, verify_vanishing_d,
};

use crate::g2_decomp::{projectors, TypeLabel};
use crate::g2_linear::Form;
use crate::graded::GradedOp;
use crate::scalar::Qi;
use std::collections::BTreeMap;

/// `Σ_k α_k e^{i k·x}` with every `α_k` of the same degree.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralForm {
    pub degree: usize,
    pub modes: BTreeMap<Mode, Form<Qi>>,
}

impl SpectralForm {
    pub fn zero(degree: usize) -> Self {
        SpectralForm { degree, modes: BTreeMap::new() }
    }

    pub fn single(k: Mode, a: Form<Qi>) -> Self {
        let mut s = Self::zero(a.degree);
        s.insert(k, a);
        s
    }

    pub fn insert(&mut self, k: Mode, a: Form<Qi>) {
        assert_eq!(a.degree, self.degree, "mixed degrees in a spectral form");
        if !a.is_zero() {
            self.modes.insert(k, a);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.modes.values().all(Form::is_zero)
    }

    pub fn add(&self, o: &SpectralForm) -> SpectralForm {
        assert_eq!(self.degree, o.degree);
        let mut out = self.clone();
        for (k, a) in &o.modes {
            let v = match out.modes.get(k) {
                Some(b) => b.add(a),
                None => a.clone(),
            };
            out.modes.remove(k);
            out.insert(*k, v);
        }
        out
    }

    pub fn neg(&self) -> SpectralForm {
        SpectralForm { degree: self.degree, modes: self.modes.iter().map(|(k, a)| (*k, a.neg())).collect() }
    }

    pub fn sub(&self, o: &SpectralForm) -> SpectralForm {
        self.add(&o.neg())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectralOp {
    D,
    DStar,
    Laplacian,
    IotaB,
    IotaK,
    LieB,
    LieK,
    LieBStar,
    /// `D^l_m` moved to whichever degree holds both types.
    DRef(usize, usize),
    Project(TypeLabel),
}

fn graded<'a>(t: &'a ModeOperatorTable, op: SpectralOp) -> Option<&'a GradedOp<Qi>> {
    Some(match op {
        SpectralOp::D => &t.d,
        SpectralOp::DStar => &t.ds,
        SpectralOp::Laplacian => &t.lap,
        SpectralOp::IotaB => &t.iota_b,
        SpectralOp::IotaK => &t.iota_k,
        SpectralOp::LieB => &t.lie_b,
        SpectralOp::LieK => &t.lie_k,
        SpectralOp::LieBStar => &t.lie_b_star,
        _ => return None,
    })
}

/// Degree of `op(a)` for `a` of degree `deg`, if it is in range.
pub fn target_degree(op: SpectralOp, deg: usize) -> Option<usize> {
    let shift: isize = match op {
        SpectralOp::D | SpectralOp::IotaB | SpectralOp::DRef(..) => 1,
        SpectralOp::DStar => -1,
        SpectralOp::Laplacian | SpectralOp::Project(_) => 0,
        SpectralOp::IotaK | SpectralOp::LieB => 2,
        SpectralOp::LieK => 3,
        SpectralOp::LieBStar => -2,
    };
    let t = deg as isize + shift;
    (0..=7).contains(&t).then_some(t as usize)
}

fn apply_at(t: &ModeOperatorTable, op: SpectralOp, a: &Form<Qi>) -> Form<Qi> {
    let deg = a.degree;
    let to = target_degree(op, deg).expect("target degree out of range");
    if let Some(g) = graded(t, op) {
        return g.apply(a);
    }
    let p = projectors();
    match op {
        SpectralOp::Project(lab) => {
            if lab.k != deg {
                return Form::zero(deg);
            }
            let m = p.get(lab).projector.map(|x| Qi::real(x.clone()));
            Form::from_coeffs(deg, m.apply(&a.coeffs))
        }
        SpectralOp::DRef(l, m) => {
            let (Some(from), Some(into)) = (TypeLabel::new(deg, l).ok(), TypeLabel::new(to, m).ok()) else {
                return Form::zero(to);
            };
            let Some(r) = t.d_ref(l, m) else { return Form::zero(to) };
            let left = p.get(from).left_inverse.map(|x| Qi::real(x.clone()));
            let basis = p.get(into).basis.map(|x| Qi::real(x.clone()));
            Form::from_coeffs(to, basis.mul(r).mul(&left).apply(&a.coeffs))
        }
        _ => unreachable!("graded operators handled above"),
    }
}

/// Applies `op` mode by mode.
pub fn apply(op: SpectralOp, a: &SpectralForm) -> SpectralForm {
    let to = target_degree(op, a.degree).expect("target degree out of range");
    let mut out = SpectralForm::zero(to);
    for (k, f) in &a.modes {
        let t = build_mode_table(*k);
        out.insert(*k, apply_at(&t, op, f));
    }
    out
}

/// Multiplication by a constant form, mode by mode.
pub fn wedge_const(c: &Form<Qi>, a: &SpectralForm) -> SpectralForm {
    let mut out = SpectralForm::zero(c.degree + a.degree);
    for (k, f) in &a.modes {
        out.insert(*k, c.wedge(f));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::g2_linear::{random_form, standard_g2};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_spectral(rng: &mut ChaCha8Rng, deg: usize) -> SpectralForm {
        let mut s = SpectralForm::zero(deg);
        for _ in 0..2 {
            let k: Mode = std::array::from_fn(|_| rng.gen_range(-2..=2));
            let re = random_form(rng, deg);
            let im = random_form(rng, deg);
            let f = Form::from_coeffs(deg, re.coeffs.iter().zip(&im.coeffs).map(|(x, y)| Qi::new(x.clone(), y.clone())).collect());
            s = s.add(&SpectralForm::single(k, f));
        }
        s
    }

    #[test]
    fn mode_wise_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = standard_g2();
        let phi = g.phi.map(|x| Qi::real(x.clone()));
        for deg in 1..=4 {
            let a = random_spectral(&mut rng, deg);
            if deg + 2 <= 7 {
                assert!(apply(SpectralOp::D, &apply(SpectralOp::D, &a)).is_zero());
            }
            let lb = apply(SpectralOp::LieB, &a);
            let rhs = apply(SpectralOp::DStar, &wedge_const(&phi, &a)).add(&wedge_const(&phi, &apply(SpectralOp::DStar, &a))).neg();
            assert_eq!(lb, rhs, "deg {deg}");
            if deg + 6 <= 7 {
                assert!(apply(SpectralOp::LieK, &apply(SpectralOp::LieK, &a)).is_zero());
            }
            if deg + 5 <= 7 {
                assert!(apply(SpectralOp::LieB, &apply(SpectralOp::LieK, &a)).is_zero());
            }
        }
    }

    #[test]
    fn projections_sum_to_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = random_spectral(&mut rng, 3);
        let mut s = SpectralForm::zero(3);
        for lab in TypeLabel::in_degree(3) {
            s = s.add(&apply(SpectralOp::Project(lab), &a));
        }
        assert_eq!(s, a);
    }

    #[test]
    fn reference_operator_matches_component() {
        // d restricted to Ω³₇ → Ω⁴₁ is 4/3 D^7_1.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = apply(SpectralOp::Project(TypeLabel::of(3, 7)), &random_spectral(&mut rng, 3));
        let lhs = apply(SpectralOp::Project(TypeLabel::of(4, 1)), &apply(SpectralOp::D, &a));
        let r = apply(SpectralOp::DRef(7, 1), &a);
        let scaled = SpectralForm { degree: 4, modes: r.modes.iter().map(|(k, f)| (*k, f.scale(&Qi::real(crate::scalar::q(4, 3))))).collect() };
        assert_eq!(lhs, scaled);
    }
}
