//! Homogeneous linear operators on the graded exterior algebra Λ•R⁷.

use crate::g2_linear::{dim, linear_map_matrix, Form};
use crate::linalg::Matrix;
use crate::scalar::{Field, Q, Qi};
use serde::Serialize;

/// An operator of fixed degree `shift`; `blocks[k]` maps Λ^k → Λ^{k+shift}
/// (an empty matrix when the target degree is out of range).
#[derive(Clone, PartialEq, Debug)]
pub struct GradedOp<F> {
    pub shift: isize,
    pub blocks: Vec<Matrix<F>>,
}

fn target(k: usize, shift: isize) -> Option<usize> {
    let t = k as isize + shift;
    (0..=7).contains(&t).then_some(t as usize)
}

impl<F: Field> GradedOp<F> {
    pub fn zero(shift: isize) -> Self {
        let blocks = (0..=7).map(|k| Matrix::zeros(target(k, shift).map_or(0, dim), dim(k))).collect();
        GradedOp { shift, blocks }
    }

    pub fn identity() -> Self {
        GradedOp { shift: 0, blocks: (0..=7).map(|k| Matrix::identity(dim(k))).collect() }
    }

    pub fn from_form_map(shift: isize, f: impl Fn(&Form<F>) -> Form<F>) -> Self {
        let blocks = (0..=7)
            .map(|k| match target(k, shift) {
                Some(t) => linear_map_matrix(k, t, &f),
                None => Matrix::zeros(0, dim(k)),
            })
            .collect();
        GradedOp { shift, blocks }
    }

    pub fn block(&self, k: usize) -> &Matrix<F> {
        &self.blocks[k]
    }

    pub fn target(&self, k: usize) -> Option<usize> {
        target(k, self.shift)
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &GradedOp<F>) -> GradedOp<F> {
        let shift = self.shift + o.shift;
        let blocks = (0..=7)
            .map(|k| match (o.target(k), target(k, shift)) {
                (Some(m), Some(_)) => self.blocks[m].mul(&o.blocks[k]),
                (_, t) => Matrix::zeros(t.map_or(0, dim), dim(k)),
            })
            .collect();
        GradedOp { shift, blocks }
    }

    pub fn add(&self, o: &GradedOp<F>) -> GradedOp<F> {
        assert_eq!(self.shift, o.shift, "adding operators of different degree");
        GradedOp { shift: self.shift, blocks: self.blocks.iter().zip(&o.blocks).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &GradedOp<F>) -> GradedOp<F> {
        assert_eq!(self.shift, o.shift, "subtracting operators of different degree");
        GradedOp { shift: self.shift, blocks: self.blocks.iter().zip(&o.blocks).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, s: &F) -> GradedOp<F> {
        GradedOp { shift: self.shift, blocks: self.blocks.iter().map(|b| b.scale(s)).collect() }
    }

    /// Multiply block `k` by `f(k)`.
    pub fn scale_by_degree(&self, f: impl Fn(usize) -> F) -> GradedOp<F> {
        GradedOp { shift: self.shift, blocks: self.blocks.iter().enumerate().map(|(k, b)| b.scale(&f(k))).collect() }
    }

    pub fn neg(&self) -> GradedOp<F> {
        GradedOp { shift: self.shift, blocks: self.blocks.iter().map(|b| b.neg()).collect() }
    }

    /// Hermitian adjoint for the standard inner product on forms.
    pub fn adjoint(&self) -> GradedOp<F> {
        let shift = -self.shift;
        let blocks = (0..=7)
            .map(|m| match target(m, shift) {
                Some(k) => self.blocks[k].adjoint(),
                None => Matrix::zeros(0, dim(m)),
            })
            .collect();
        GradedOp { shift, blocks }
    }

    /// `∗ ∘ self ∘ ∗`, an operator of degree `-shift`.
    pub fn star_conjugate(&self) -> GradedOp<F> {
        let star = star_op::<F>();
        let shift = -self.shift;
        let blocks = (0..=7)
            .map(|k| match target(k, shift) {
                Some(t) => {
                    let a = &self.blocks[7 - k];
                    star.blocks[7 - t].mul(a).mul(&star.blocks[k])
                }
                None => Matrix::zeros(0, dim(k)),
            })
            .collect();
        GradedOp { shift, blocks }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    pub fn max_abs(&self) -> Q {
        self.blocks.iter().map(|b| b.max_abs()).fold(Q::from_integer(0.into()), |a, b| if b > a { b } else { a })
    }

    pub fn apply(&self, a: &Form<F>) -> Form<F> {
        match self.target(a.degree) {
            Some(t) => Form::from_coeffs(t, self.blocks[a.degree].apply(&a.coeffs)),
            None => panic!("operator maps degree {} outside 0..=7", a.degree),
        }
    }

    pub fn commutator(&self, o: &GradedOp<F>) -> GradedOp<F> {
        self.compose(o).sub(&o.compose(self))
    }

    pub fn anticommutator(&self, o: &GradedOp<F>) -> GradedOp<F> {
        self.compose(o).add(&o.compose(self))
    }
}

impl GradedOp<Q> {
    pub fn to_complex(&self) -> GradedOp<Qi> {
        GradedOp { shift: self.shift, blocks: self.blocks.iter().map(|b| b.map(|x| Qi::real(x.clone()))).collect() }
    }
}

/// The Hodge star as a family of matrices Λ^k → Λ^{7−k}, stored in a `GradedOp` with
/// an unused shift; use only through [`GradedOp::star_conjugate`] or [`star_block`].
fn star_op<F: Field>() -> GradedOp<F> {
    GradedOp { shift: 0, blocks: (0..=7).map(star_block::<F>).collect() }
}

pub fn star_block<F: Field>(k: usize) -> Matrix<F> {
    linear_map_matrix(k, 7 - k, |f: &Form<F>| f.star())
}

/// Outcome of comparing a component against a reference map.
#[derive(Clone, PartialEq, Debug)]
pub enum Probe<F> {
    Zero,
    Scalar(F),
    NotScalar,
}

impl<F: Field> Probe<F> {
    pub fn render(&self) -> String {
        match self {
            Probe::Zero => "zero".into(),
            Probe::Scalar(c) => c.render(),
            Probe::NotScalar => "not-scalar".into(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Probe::Zero)
    }
}

impl<F: Field> Serialize for Probe<F> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

/// Finds `c` with `component = c · reference` exactly.
pub fn ratio<F: Field>(component: &Matrix<F>, reference: Option<&Matrix<F>>) -> Probe<F> {
    if component.is_zero() {
        return Probe::Zero;
    }
    let Some(r) = reference else { return Probe::NotScalar };
    if (r.rows(), r.cols()) != (component.rows(), component.cols()) {
        return Probe::NotScalar;
    }
    let mut c = None;
    for i in 0..r.rows() {
        for j in 0..r.cols() {
            if !r.get(i, j).is_zero() {
                c = Some(component.get(i, j).div_ref(r.get(i, j)));
                break;
            }
        }
        if c.is_some() {
            break;
        }
    }
    match c {
        Some(c) if component == &r.scale(&c) => Probe::Scalar(c),
        _ => Probe::NotScalar,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qi;

    #[test]
    fn adjoint_and_star_conjugation() {
        let e1 = Form::<Q>::basis_form(1);
        let w = GradedOp::from_form_map(1, |a: &Form<Q>| e1.wedge(a));
        let i = GradedOp::from_form_map(-1, |a: &Form<Q>| a.interior_basis(0));
        assert_eq!(w.adjoint(), i);
        assert!(w.compose(&w).is_zero());
        assert_eq!(w.compose(&i).add(&i.compose(&w)), GradedOp::identity());
        assert_eq!(GradedOp::<Q>::identity().star_conjugate(), GradedOp::identity());
        // ∗(e1∧)∗ = (−1)^{k+1} e1⌟ on k-forms
        let c = w.star_conjugate();
        assert_eq!(c.shift, -1);
        for k in 1..=7 {
            let s = if k % 2 == 1 { qi(1) } else { qi(-1) };
            assert_eq!(c.block(k), &i.block(k).scale(&s), "k={k}");
        }
    }

    #[test]
    fn ratios() {
        let a = Matrix::<Q>::identity(2);
        assert_eq!(ratio(&a.scale(&qi(3)), Some(&a)), Probe::Scalar(qi(3)));
        assert_eq!(ratio(&Matrix::<Q>::zeros(2, 2), None), Probe::Zero);
        let mut b = a.clone();
        b.set(0, 1, qi(1));
        assert_eq!(ratio(&b, Some(&a)), Probe::NotScalar);
    }
}
