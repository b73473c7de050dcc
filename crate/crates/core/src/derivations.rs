//! Algebraic derivations ι_B, ι_K built from φ and ψ by raising the last index.

use crate::figures::FigureOp;
use crate::g2_decomp::{projectors, DecompError, TypeLabel};
use crate::g2_linear::{standard_g2, Form};
use crate::graded::{ratio, GradedOp, Probe};
use crate::linalg::Matrix;
use crate::scalar::{qi, Q};
use serde::Serialize;
use std::sync::OnceLock;
use thiserror::Error;

/// `K = K^j ⊗ e_j` with each `K^j` an `r`-form.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorValuedForm {
    pub rank: usize,
    pub comps: Vec<Form<Q>>,
}

impl VectorValuedForm {
    pub fn new(comps: Vec<Form<Q>>) -> Self {
        assert_eq!(comps.len(), 7);
        let rank = comps[0].degree;
        assert!(comps.iter().all(|c| c.degree == rank), "components must share a degree");
        VectorValuedForm { rank, comps }
    }

    /// Raise the last index of an `(r+1)`-form: `K^q = (−1)^r e_q ⌟ η`.
    pub fn raised(eta: &Form<Q>) -> Self {
        let r = eta.degree - 1;
        let s = if r % 2 == 0 { qi(1) } else { qi(-1) };
        Self::new((0..7).map(|q| eta.interior_basis(q).scale(&s)).collect())
    }

    pub fn b() -> Self {
        Self::raised(&standard_g2().phi)
    }

    pub fn k() -> Self {
        Self::raised(&standard_g2().psi)
    }
}

/// `ι_K α = K^j ∧ (e_j ⌟ α)`.
pub fn iota(k: &VectorValuedForm, a: &Form<Q>) -> Form<Q> {
    let mut out = Form::zero((k.rank + a.degree).saturating_sub(1));
    if a.degree == 0 {
        return out;
    }
    for (j, kj) in k.comps.iter().enumerate() {
        out = out.add(&kj.wedge(&a.interior_basis(j)));
    }
    out
}

/// `ι α = (−1)^r (e_p ⌟ η) ∧ (e_p ⌟ α)` for `K` obtained from the `(r+1)`-form `η`.
pub fn iota_frame(eta: &Form<Q>, a: &Form<Q>) -> Form<Q> {
    let r = eta.degree - 1;
    let deg = r + a.degree;
    let mut out = Form::zero(deg.saturating_sub(1));
    if a.degree == 0 {
        return out;
    }
    for p in 0..7 {
        out = out.add(&eta.interior_basis(p).wedge(&a.interior_basis(p)));
    }
    if r % 2 == 1 {
        out.neg()
    } else {
        out
    }
}

/// `ι*_K β = (−1)^{nk+rk+nr+n+1} ∗ ι_K ∗ β` for `β ∈ Ω^k`, `n = 7`.
pub fn iota_adjoint(k: &VectorValuedForm, b: &Form<Q>) -> Form<Q> {
    let (n, r, kk) = (7usize, k.rank, b.degree);
    let e = n * kk + r * kk + n * r + n + 1;
    let v = iota(k, &b.star()).star();
    if e % 2 == 0 {
        v
    } else {
        v.neg()
    }
}

pub fn iota_b_op() -> &'static GradedOp<Q> {
    static OP: OnceLock<GradedOp<Q>> = OnceLock::new();
    OP.get_or_init(|| {
        let phi = &standard_g2().phi;
        GradedOp::from_form_map(1, |a: &Form<Q>| iota_frame(phi, a))
    })
}

pub fn iota_k_op() -> &'static GradedOp<Q> {
    static OP: OnceLock<GradedOp<Q>> = OnceLock::new();
    OP.get_or_init(|| {
        let psi = &standard_g2().psi;
        GradedOp::from_form_map(2, |a: &Form<Q>| iota_frame(psi, a))
    })
}

#[derive(Debug, Error, PartialEq)]
pub enum ProbeError {
    #[error(transparent)]
    Label(#[from] DecompError),
    #[error("{op} has no slot from {from} to {to}")]
    InvalidSlot { op: &'static str, from: TypeLabel, to: TypeLabel },
}

/// Component of `ι_B` or `ι_K` from `from` to `to` relative to the identification
/// of parameters (zero when the irreducible types differ).
pub fn probe_constant(op: FigureOp, from: TypeLabel, to: TypeLabel) -> Result<Probe<Q>, ProbeError> {
    let from = TypeLabel::new(from.k, from.l)?;
    let to = TypeLabel::new(to.k, to.l)?;
    let graded = match op {
        FigureOp::IotaB => iota_b_op(),
        FigureOp::IotaK => iota_k_op(),
        _ => return Err(ProbeError::InvalidSlot { op: op.name(), from, to }),
    };
    if to.k != from.k + op.shift() {
        return Err(ProbeError::InvalidSlot { op: op.name(), from, to });
    }
    let c = projectors().component(graded.block(from.k), from, to);
    let id = (from.l == to.l).then(|| Matrix::identity(from.l));
    Ok(ratio(&c, id.as_ref()))
}

#[derive(Clone, Debug, Serialize)]
pub struct SlotCheck {
    pub op: &'static str,
    pub from: String,
    pub to: String,
    pub expected: String,
    pub found: String,
    pub pass: bool,
}

/// Probe every slot of `ι_B` and `ι_K` and compare with the expected tables.
pub fn verify_iota_figures() -> Vec<SlotCheck> {
    let mut out = Vec::new();
    for op in [FigureOp::IotaB, FigureOp::IotaK] {
        for (from, to) in op.slots() {
            let found = probe_constant(op, from, to).expect("slot is valid");
            let expected = match op.expected(from, to) {
                Some(c) => Probe::Scalar(c),
                None => Probe::Zero,
            };
            out.push(SlotCheck {
                op: op.name(),
                from: from.to_string(),
                to: to.to_string(),
                expected: expected.render(),
                found: found.render(),
                pass: found == expected,
            });
        }
    }
    out
}

/// Residuals of the identities for `ι` on `X`, `φ`, `ψ`, `X⌟φ`, `X⌟ψ`.
pub fn iota_value_residuals(x: &crate::g2_linear::Vector<Q>) -> Vec<(&'static str, Q)> {
    let g = standard_g2();
    let (b, k) = (iota_b_op(), iota_k_op());
    let xf = x.flat();
    let xphi = g.phi.interior(x);
    let xpsi = g.psi.interior(x);
    let r = |a: Form<Q>, e: Form<Q>| a.sub(&e).max_abs();
    vec![
        ("iota_B X = X-|phi", r(b.apply(&xf), xphi.clone())),
        ("iota_K X = -X-|psi", r(k.apply(&xf), xpsi.neg())),
        ("iota_B phi = -6 psi", r(b.apply(&g.phi), g.psi.scale(&qi(-6)))),
        ("iota_B psi = 0", b.apply(&g.psi).max_abs()),
        ("iota_K phi = 0", k.apply(&g.phi).max_abs()),
        ("iota_K psi = 0", k.apply(&g.psi).max_abs()),
        ("iota_B(X-|phi) = 3 X-|psi", r(b.apply(&xphi), xpsi.scale(&qi(3)))),
        ("iota_K(X-|phi) = 3*(X-|psi)", r(k.apply(&xphi), xpsi.star().scale(&qi(3)))),
        ("iota_B(X-|psi) = -3*(X-|psi)", r(b.apply(&xpsi), xpsi.star().scale(&qi(-3)))),
        ("iota_K(X-|psi) = -4*(X-|phi)", r(k.apply(&xpsi), xphi.star().scale(&qi(-4)))),
    ]
}

/// Degrees on which an operator vanishes identically.
pub fn vanishing_degrees(op: &GradedOp<Q>) -> Vec<usize> {
    (0..=7).filter(|&k| op.block(k).is_zero()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::g2_linear::{random_form, random_vector};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn frame_formula_matches_derivation_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = standard_g2();
        for k in 0..=7 {
            let a = random_form(&mut rng, k);
            assert_eq!(iota(&VectorValuedForm::b(), &a), iota_frame(&g.phi, &a), "k={k}");
            assert_eq!(iota(&VectorValuedForm::k(), &a), iota_frame(&g.psi, &a), "k={k}");
        }
    }

    #[test]
    fn values_on_frame_and_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..3 {
            for (n, r) in iota_value_residuals(&random_vector(&mut rng)) {
                assert_eq!(r, qi(0), "{n}");
            }
        }
    }

    #[test]
    fn vanishing_ranges() {
        assert_eq!(vanishing_degrees(iota_b_op()), vec![0, 6, 7]);
        assert_eq!(vanishing_degrees(iota_k_op()), vec![0, 5, 6, 7]);
    }

    #[test]
    fn adjoint_formula() {
        let b = VectorValuedForm::b();
        let k = VectorValuedForm::k();
        let (ob, ok) = (iota_b_op().adjoint(), iota_k_op().adjoint());
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for deg in 0..=7 {
            let x = random_form(&mut rng, deg);
            if deg >= 1 {
                assert_eq!(iota_adjoint(&b, &x), ob.apply(&x), "B deg {deg}");
            }
            if deg >= 2 {
                assert_eq!(iota_adjoint(&k, &x), ok.apply(&x), "K deg {deg}");
            }
        }
    }

    #[test]
    fn figure_constants() {
        assert_eq!(probe_constant(FigureOp::IotaB, TypeLabel::of(3, 1), TypeLabel::of(4, 1)), Ok(Probe::Scalar(qi(-6))));
        assert_eq!(probe_constant(FigureOp::IotaK, TypeLabel::of(3, 7), TypeLabel::of(5, 7)), Ok(Probe::Scalar(qi(-4))));
        for c in verify_iota_figures() {
            assert!(c.pass, "{c:?}");
        }
    }
}
