//! Tensor products and algebra maps between exterior dgas.

use super::{Dga, DgaError, Element, MasseyResult};
use crate::linalg::Matrix;
use crate::scalar::Q;

/// `A ⊗ B` as the exterior algebra on the union of the generators; names
/// that collide get a `'` appended on the `B` side.
pub fn tensor_product(a: &Dga, b: &Dga) -> Dga {
    let shift = a.generators();
    let mut names = a.names.clone();
    for n in &b.names {
        let mut m = n.clone();
        while names.contains(&m) {
            m.push('\'');
        }
        names.push(m);
    }
    let collect = |dga: &Dga, offset: usize| -> Vec<Vec<(Q, Vec<usize>)>> {
        dga.gen_d.iter().map(|e| terms_of(dga, e).into_iter().map(|(c, idx)| (c, idx.into_iter().map(|i| i + offset).collect())).collect()).collect()
    };
    let mut gen_d = collect(a, 0);
    gen_d.extend(collect(b, shift));
    Dga::new(names, gen_d).expect("tensor product of dgas is a dga")
}

/// `(coefficient, sorted generator indices)` for every monomial of `e`.
pub fn terms_of(dga: &Dga, e: &Element) -> Vec<(Q, Vec<usize>)> {
    e.coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !crate::scalar::Field::is_zero(*c))
        .map(|(i, c)| {
            let m = dga.basis[e.degree][i];
            (c.clone(), (0..dga.top()).filter(|j| m >> j & 1 == 1).collect())
        })
        .collect()
}

/// Algebra map determined by the images of the generators.
pub struct DgaMap<'a> {
    pub source: &'a Dga,
    pub target: &'a Dga,
    pub images: Vec<Element>,
}

impl<'a> DgaMap<'a> {
    /// Checks that `f ∘ d = d ∘ f` on every degree.
    pub fn new(source: &'a Dga, target: &'a Dga, images: Vec<Element>) -> Result<Self, DgaError> {
        assert_eq!(images.len(), source.generators());
        for im in &images {
            if im.degree != 1 {
                return Err(DgaError::Degree { expected: 1, found: im.degree });
            }
        }
        let f = DgaMap { source, target, images };
        for p in 0..source.top() {
            for i in 0..source.dim(p) {
                let x = source.basis_element(p, i);
                if f.apply(&source.differential(&x)) != target.differential(&f.apply(&x)) {
                    return Err(DgaError::NotChainMap(p));
                }
            }
        }
        Ok(f)
    }

    /// `a ↦ a ⊗ 1` into `A ⊗ B`.
    pub fn inclusion_left(a: &'a Dga, prod: &'a Dga) -> Result<Self, DgaError> {
        let images = (0..a.generators()).map(|i| prod.monomial_signed(&[i])).collect();
        Self::new(a, prod, images)
    }

    /// `A ⊗ B → A` killing the generators of `B`.
    pub fn collapse_right(prod: &'a Dga, a: &'a Dga) -> Result<Self, DgaError> {
        let images = (0..prod.generators())
            .map(|i| if i < a.generators() { a.monomial_signed(&[i]) } else { a.zero(1) })
            .collect();
        Self::new(prod, a, images)
    }

    pub fn apply(&self, x: &Element) -> Element {
        let mut out = self.target.zero(x.degree);
        if x.degree > self.target.top() {
            return out;
        }
        for (c, idx) in terms_of(self.source, x) {
            let mut m = self.target.unit();
            for i in idx {
                m = self.target.mul(&m, &self.images[i]);
            }
            out = out.add(&m.scale(&c));
        }
        out
    }

    pub fn matrix(&self, p: usize) -> Matrix<Q> {
        let cols: Vec<Vec<Q>> = (0..self.source.dim(p)).map(|i| self.apply(&self.source.basis_element(p, i)).coeffs).collect();
        Matrix::from_columns(self.target.dim(p), &cols)
    }
}

/// Naturality: `⟨f a, f b, f c⟩ − f⟨a, b, c⟩` lies in the target indeterminacy.
pub fn naturality_holds(f: &DgaMap, m: &MasseyResult, pulled: &MasseyResult) -> bool {
    let [p, q, r] = m.degrees;
    let diff = pulled.rep.sub(&f.apply(&m.rep));
    let h = f.target.cohomology();
    super::in_indeterminacy(f.target, &h, p, q, r, &diff).1
}
