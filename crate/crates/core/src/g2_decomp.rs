//! Type decomposition Λ^k = ⊕ Λ^k_l with explicit parameterizations.
//!
//! Each type `(k,l)` carries a parameter space (function, vector, Ω²₁₄
//! coordinate, or trace-free symmetric tensor) and a basis matrix `B` whose
//! columns are the images of the parameter basis. The identifications are
//! deliberately non-isometric; nothing is rescaled.

use crate::g2_linear::{self as gl, dim, ell_phi, form_to_column, linear_map_matrix, standard_g2, Form, Vector};
use crate::linalg::Matrix;
use crate::scalar::{qi, Field, Q};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct TypeLabel {
    pub k: usize,
    pub l: usize,
}

const TABLE: [&[usize]; 8] = [&[1], &[7], &[7, 14], &[1, 7, 27], &[1, 7, 27], &[7, 14], &[7], &[1]];

impl TypeLabel {
    pub fn new(k: usize, l: usize) -> Result<Self, DecompError> {
        if k <= 7 && TABLE[k].contains(&l) {
            Ok(TypeLabel { k, l })
        } else {
            Err(DecompError::InvalidLabel(k, l))
        }
    }

    /// Shorthand for labels known to be valid.
    pub const fn of(k: usize, l: usize) -> Self {
        TypeLabel { k, l }
    }

    pub fn in_degree(k: usize) -> Vec<TypeLabel> {
        if k > 7 {
            return Vec::new();
        }
        TABLE[k].iter().map(|&l| TypeLabel { k, l }).collect()
    }

    pub fn all() -> Vec<TypeLabel> {
        (0..=7).flat_map(Self::in_degree).collect()
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Omega^{}_{}", self.k, self.l)
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum DecompError {
    #[error("({0},{1}) is not a type in the decomposition")]
    InvalidLabel(usize, usize),
    #[error("form of degree {got} given for type {label}")]
    Degree { label: TypeLabel, got: usize },
    #[error("form does not lie in {0}")]
    NotInType(TypeLabel),
    #[error("cannot identify {0} with {1}: different irreducible type")]
    Mismatch(TypeLabel, TypeLabel),
    #[error("expected {expected} parameters, got {got}")]
    ParamCount { expected: usize, got: usize },
}

/// Symmetric 2-tensor in the orthonormal frame.
#[derive(Clone, PartialEq, Debug)]
pub struct SymTensor2(Matrix<Q>);

impl SymTensor2 {
    pub fn new(m: Matrix<Q>) -> Option<Self> {
        if m.rows() == 7 && m.cols() == 7 && m == m.transpose() {
            Some(SymTensor2(m))
        } else {
            None
        }
    }

    pub fn matrix(&self) -> &Matrix<Q> {
        &self.0
    }

    pub fn trace(&self) -> Q {
        (0..7).fold(qi(0), |a, i| a + self.0.get(i, i))
    }

    pub fn trace_free(&self) -> SymTensor2 {
        let t = self.trace() / qi(7);
        SymTensor2(self.0.sub(&Matrix::identity(7).scale(&t)))
    }
}

/// Basis of trace-free symmetric tensors: `E_ii − E_77` (i < 7) then `E_ij + E_ji` (i < j).
pub fn s0_basis() -> Vec<Matrix<Q>> {
    let mut out = Vec::with_capacity(27);
    for i in 0..6 {
        let mut m = Matrix::zeros(7, 7);
        m.set(i, i, qi(1));
        m.set(6, 6, qi(-1));
        out.push(m);
    }
    for i in 0..7 {
        for j in i + 1..7 {
            let mut m = Matrix::zeros(7, 7);
            m.set(i, j, qi(1));
            m.set(j, i, qi(1));
            out.push(m);
        }
    }
    out
}

/// Coordinates of a trace-free symmetric tensor in [`s0_basis`].
pub fn s0_coords(h: &Matrix<Q>) -> Vec<Q> {
    let mut c: Vec<Q> = (0..6).map(|i| h.get(i, i).clone()).collect();
    for i in 0..7 {
        for j in i + 1..7 {
            c.push(h.get(i, j).clone());
        }
    }
    c
}

pub fn s0_from_coords(c: &[Q]) -> Matrix<Q> {
    s0_basis().iter().zip(c).fold(Matrix::zeros(7, 7), |acc, (b, x)| acc.add(&b.scale(x)))
}

/// Skew matrix `β_ij` of a 2-form.
pub fn two_form_matrix(b: &Form<Q>) -> Matrix<Q> {
    assert_eq!(b.degree, 2);
    let mut m = Matrix::zeros(7, 7);
    for (mi, c) in b.terms() {
        let ix = mi.indices();
        m.set(ix[0] - 1, ix[1] - 1, c.clone());
        m.set(ix[1] - 1, ix[0] - 1, -c.clone());
    }
    m
}

#[derive(Clone, Debug)]
pub struct TypeData {
    /// Columns are the images of the parameter basis.
    pub basis: Matrix<Q>,
    /// `(BᵀB)⁻¹Bᵀ`: form coefficients to parameters.
    pub left_inverse: Matrix<Q>,
    pub projector: Matrix<Q>,
}

pub struct ProjectorSet {
    data: BTreeMap<TypeLabel, TypeData>,
}

fn star_matrix(k: usize) -> Matrix<Q> {
    linear_map_matrix(k, 7 - k, |f: &Form<Q>| f.star())
}

fn build() -> ProjectorSet {
    let g = standard_g2();
    let mut bases: BTreeMap<TypeLabel, Matrix<Q>> = BTreeMap::new();
    bases.insert(TypeLabel::of(0, 1), Matrix::identity(1));
    bases.insert(TypeLabel::of(1, 7), Matrix::identity(7));
    let cols = |f: &dyn Fn(usize) -> Form<Q>, k: usize| {
        let c: Vec<Vec<Q>> = (0..7).map(|i| f(i).coeffs).collect();
        Matrix::from_columns(dim(k), &c)
    };
    bases.insert(TypeLabel::of(2, 7), cols(&|i| g.phi.interior_basis(i), 2));
    let wedge_psi = linear_map_matrix(2, 6, |b: &Form<Q>| b.wedge(&g.psi));
    bases.insert(TypeLabel::of(2, 14), wedge_psi.nullspace());
    bases.insert(TypeLabel::of(3, 1), form_to_column(&g.phi));
    bases.insert(TypeLabel::of(3, 7), cols(&|i| g.psi.interior_basis(i), 3));
    let s0: Vec<Vec<Q>> = s0_basis().iter().map(|h| ell_phi(g, h).coeffs).collect();
    bases.insert(TypeLabel::of(3, 27), Matrix::from_columns(dim(3), &s0));
    for k in 0..=3 {
        let star = star_matrix(k);
        for l in TABLE[k] {
            let b = star.mul(&bases[&TypeLabel::of(k, *l)]);
            bases.insert(TypeLabel::of(7 - k, *l), b);
        }
    }
    let data = bases
        .into_iter()
        .map(|(lab, b)| {
            let bt = b.transpose();
            let gram_inv = bt.mul(&b).inverse().expect("parameterization is injective");
            let left_inverse = gram_inv.mul(&bt);
            let projector = b.mul(&left_inverse);
            (lab, TypeData { basis: b, left_inverse, projector })
        })
        .collect();
    ProjectorSet { data }
}

pub fn projectors() -> &'static ProjectorSet {
    static P: OnceLock<ProjectorSet> = OnceLock::new();
    P.get_or_init(build)
}

impl ProjectorSet {
    pub fn get(&self, label: TypeLabel) -> &TypeData {
        &self.data[&label]
    }

    pub fn labels(&self) -> impl Iterator<Item = &TypeLabel> {
        self.data.keys()
    }

    fn check(&self, label: TypeLabel, a: &Form<Q>) -> Result<&TypeData, DecompError> {
        let label = TypeLabel::new(label.k, label.l)?;
        if a.degree != label.k {
            return Err(DecompError::Degree { label, got: a.degree });
        }
        Ok(self.get(label))
    }

    pub fn project(&self, label: TypeLabel, a: &Form<Q>) -> Result<Form<Q>, DecompError> {
        let t = self.check(label, a)?;
        Ok(Form::from_coeffs(label.k, t.projector.apply(&a.coeffs)))
    }

    pub fn contains(&self, label: TypeLabel, a: &Form<Q>) -> Result<bool, DecompError> {
        Ok(&self.project(label, a)? == a)
    }

    /// Parameters of `a`, failing if `a` is not of the given type.
    pub fn parameters(&self, label: TypeLabel, a: &Form<Q>) -> Result<Vec<Q>, DecompError> {
        if !self.contains(label, a)? {
            return Err(DecompError::NotInType(label));
        }
        Ok(self.get(label).left_inverse.apply(&a.coeffs))
    }

    pub fn parameterize(&self, label: TypeLabel, params: &[Q]) -> Result<Form<Q>, DecompError> {
        let label = TypeLabel::new(label.k, label.l)?;
        let t = self.get(label);
        if params.len() != t.basis.cols() {
            return Err(DecompError::ParamCount { expected: t.basis.cols(), got: params.len() });
        }
        Ok(Form::from_coeffs(label.k, t.basis.apply(params)))
    }

    /// Transport `a ∈ Λ^from` to `Λ^to` through the common parameter.
    pub fn identify(&self, from: TypeLabel, to: TypeLabel, a: &Form<Q>) -> Result<Form<Q>, DecompError> {
        let to = TypeLabel::new(to.k, to.l)?;
        if from.l != to.l {
            return Err(DecompError::Mismatch(from, to));
        }
        let p = self.parameters(from, a)?;
        self.parameterize(to, &p)
    }

    /// Matrix of a map between types in parameter coordinates: `L_to · op · B_from`.
    pub fn component<F: Field>(&self, op: &Matrix<F>, from: TypeLabel, to: TypeLabel) -> Matrix<F> {
        let l = self.get(to).left_inverse.map(|x| F::from_q(x.clone()));
        let b = self.get(from).basis.map(|x| F::from_q(x.clone()));
        l.mul(&op.mul(&b))
    }
}

/// Form of a vector parameter in type `(k,7)`.
pub fn vector_form(k: usize, x: &Vector<Q>) -> Form<Q> {
    projectors().parameterize(TypeLabel::of(k, 7), &x.0).expect("valid seven-type")
}

/// `ℓ_φ` restricted to the 2-form part: kernel check helper for Ω²₁₄.
pub fn ell_phi_two_form(b: &Form<Q>) -> Form<Q> {
    gl::ell_phi(standard_g2(), &two_form_matrix(b))
}

pub fn ell_psi_two_form(b: &Form<Q>) -> Form<Q> {
    gl::ell_psi(standard_g2(), &two_form_matrix(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::g2_linear::{random_form, random_symmetric, random_vector};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn ranks_and_completeness() {
        let p = projectors();
        for k in 0..=7 {
            let mut sum = Matrix::<Q>::zeros(dim(k), dim(k));
            for lab in TypeLabel::in_degree(k) {
                let t = p.get(lab);
                assert_eq!(t.projector.rank(), lab.l, "{lab}");
                assert_eq!(t.projector.mul(&t.projector), t.projector);
                assert_eq!(t.projector.transpose(), t.projector);
                sum = sum.add(&t.projector);
                for other in TypeLabel::in_degree(k) {
                    if other != lab {
                        assert!(t.projector.mul(&p.get(other).projector).is_zero());
                    }
                }
            }
            assert_eq!(sum, Matrix::identity(dim(k)));
        }
    }

    #[test]
    fn phi_is_pure_type_one() {
        let g = standard_g2();
        let p = projectors();
        assert_eq!(p.project(TypeLabel::of(3, 1), &g.phi).unwrap(), g.phi);
        assert!(p.project(TypeLabel::of(3, 7), &g.phi).unwrap().is_zero());
        assert!(p.project(TypeLabel::of(3, 27), &g.phi).unwrap().is_zero());
    }

    #[test]
    fn ell_maps() {
        let g = standard_g2();
        let id = Matrix::identity(7);
        assert_eq!(ell_phi(g, &id), g.phi.scale(&qi(3)));
        assert_eq!(gl::ell_psi(g, &id), g.psi.scale(&qi(4)));
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let p = projectors();
        for _ in 0..4 {
            let b = p.project(TypeLabel::of(2, 14), &random_form(&mut rng, 2)).unwrap();
            assert!(ell_phi_two_form(&b).is_zero());
            assert!(ell_psi_two_form(&b).is_zero());
            let h = SymTensor2::new(random_symmetric(&mut rng)).unwrap().trace_free();
            assert_eq!(ell_phi(g, h.matrix()).star(), gl::ell_psi(g, h.matrix()).neg());
        }
    }

    #[test]
    fn identifications() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = standard_g2();
        let p = projectors();
        let x = random_vector(&mut rng);
        let two = p.identify(TypeLabel::of(1, 7), TypeLabel::of(2, 7), &x.flat()).unwrap();
        assert_eq!(two, g.phi.interior(&x));
        let xpsi = g.psi.interior(&x);
        assert_eq!(p.identify(TypeLabel::of(3, 7), TypeLabel::of(4, 7), &xpsi).unwrap(), xpsi.star());
        assert_eq!(
            p.identify(TypeLabel::of(2, 7), TypeLabel::of(1, 7), &two).unwrap(),
            x.flat()
        );
        assert_eq!(
            p.identify(TypeLabel::of(3, 7), TypeLabel::of(3, 27), &xpsi),
            Err(DecompError::Mismatch(TypeLabel::of(3, 7), TypeLabel::of(3, 27)))
        );
        assert_eq!(p.parameters(TypeLabel::of(3, 1), &xpsi), Err(DecompError::NotInType(TypeLabel::of(3, 1))));
        assert!(TypeLabel::new(2, 1).is_err());
    }
}
