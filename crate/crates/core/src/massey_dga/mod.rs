//! Finite-dimensional dgas, their cohomology and Massey triple products.
//!
//! A [`Dga`] here is the exterior algebra on finitely many degree-one
//! generators with a differential fixed by its values on the generators and
//! extended by the graded Leibniz rule. Chevalley–Eilenberg complexes of Lie
//! algebras and their tensor products are all of this shape.

pub mod examples;
pub mod maps;
pub mod obstruction;
pub mod parse;

pub use maps::{tensor_product, DgaMap};
pub use obstruction::{almost_formal_vanishing_filter, kunneth_betti, obstruction_check, ObstructionInput, ObstructionReport, VanishingRule};

use crate::linalg::{contains_space, Matrix};
use crate::scalar::{fmt_q, Field, Q};
use rand::Rng;
use serde::Serialize;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DgaError {
    #[error("Jacobi identity fails on ({0}, {1}, {2})")]
    Jacobi(String, String, String),
    #[error("d^2 != 0 on generator {0}")]
    DSquared(String),
    #[error("too many generators ({0}); at most 20 are supported")]
    TooManyGenerators(usize),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("expected an element of degree {expected}, found degree {found}")]
    Degree { expected: usize, found: usize },
    #[error("mixed degrees in `{0}`")]
    MixedDegrees(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("class {0} is not closed")]
    NotClosed(usize),
    #[error("Massey product undefined: the product {which} = {product} is not exact")]
    NotExact { which: &'static str, product: String },
    #[error("map does not commute with d in degree {0}")]
    NotChainMap(usize),
}

/// A homogeneous element, dense over the monomials of its degree.
#[derive(Clone, Debug, PartialEq)]
pub struct Element {
    pub degree: usize,
    pub coeffs: Vec<Q>,
}

impl Element {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Field::is_zero)
    }

    pub fn add(&self, o: &Element) -> Element {
        assert_eq!(self.degree, o.degree, "adding elements of different degree");
        Element { degree: self.degree, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, s: &Q) -> Element {
        Element { degree: self.degree, coeffs: self.coeffs.iter().map(|a| a * s).collect() }
    }

    pub fn neg(&self) -> Element {
        Element { degree: self.degree, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn sub(&self, o: &Element) -> Element {
        self.add(&o.neg())
    }
}

fn combinations(n: usize, p: usize) -> Vec<u32> {
    let mut out: Vec<u32> = (0u32..1 << n).filter(|m| m.count_ones() as usize == p).collect();
    // lexicographic order on the sorted index lists
    out.sort_by_key(|m| (0..n).filter(|i| m >> i & 1 == 1).collect::<Vec<_>>());
    out
}

/// Sign of reordering `e_A ∧ e_B` into increasing order.
fn wedge_sign(a: u32, b: u32) -> bool {
    let mut neg = false;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        if (a >> (j + 1)).count_ones() % 2 == 1 {
            neg = !neg;
        }
        rest &= rest - 1;
    }
    neg
}

#[derive(Clone, Debug)]
pub struct Dga {
    pub names: Vec<String>,
    /// `d` of each generator.
    pub gen_d: Vec<Element>,
    basis: Vec<Vec<u32>>,
    index: Vec<HashMap<u32, usize>>,
    /// `d_p : A^p → A^{p+1}`.
    d: Vec<Matrix<Q>>,
}

impl Dga {
    /// Builds the dga and checks `d² = 0`.
    pub fn new(names: Vec<String>, gen_d: Vec<Vec<(Q, Vec<usize>)>>) -> Result<Dga, DgaError> {
        let n = names.len();
        if n > 20 {
            return Err(DgaError::TooManyGenerators(n));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(DgaError::DuplicateGenerator(a.clone()));
            }
        }
        let basis: Vec<Vec<u32>> = (0..=n).map(|p| combinations(n, p)).collect();
        let index = basis.iter().map(|b| b.iter().enumerate().map(|(i, m)| (*m, i)).collect()).collect();
        let mut dga = Dga { names, gen_d: Vec::new(), basis, index, d: Vec::new() };
        let mut gd = Vec::with_capacity(n);
        for terms in gen_d {
            let mut e = dga.zero(2);
            for (c, idx) in terms {
                if idx.len() != 2 || idx.iter().any(|&i| i >= n) {
                    return Err(DgaError::Degree { expected: 2, found: idx.len() });
                }
                e = e.add(&dga.monomial_signed(&idx).scale(&c));
            }
            gd.push(e);
        }
        dga.gen_d = gd;
        dga.d = (0..=n).map(|p| dga.build_d(p)).collect();
        for (i, g) in dga.names.iter().enumerate() {
            if !dga.differential(&dga.gen_d[i]).is_zero() {
                return Err(DgaError::DSquared(g.clone()));
            }
        }
        Ok(dga)
    }

    /// Chevalley–Eilenberg complex from `[X_i, X_j] = Σ c^k X_k` given for `i < j`,
    /// using `dξ(X, Y) = −ξ([X, Y])`, so `dξ^k = −Σ_{i<j} c_{ij}^k ξ^i ∧ ξ^j`.
    pub fn chevalley_eilenberg(names: Vec<String>, brackets: &[(usize, usize, Vec<(Q, usize)>)]) -> Result<Dga, DgaError> {
        let n = names.len();
        let mut c = vec![vec![vec![Q::zero(); n]; n]; n];
        for (i, j, rhs) in brackets {
            for (v, k) in rhs {
                c[*i][*j][*k] = &c[*i][*j][*k] + v;
                c[*j][*i][*k] = &c[*j][*i][*k] - v;
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                for e in b + 1..n {
                    // [[a,b],e] + [[b,e],a] + [[e,a],b]
                    for t in 0..n {
                        let mut s = Q::zero();
                        for m in 0..n {
                            s = s + &c[a][b][m] * &c[m][e][t] + &c[b][e][m] * &c[m][a][t] + &c[e][a][m] * &c[m][b][t];
                        }
                        if !s.is_zero() {
                            return Err(DgaError::Jacobi(names[a].clone(), names[b].clone(), names[e].clone()));
                        }
                    }
                }
            }
        }
        let gen_d = (0..n)
            .map(|k| {
                let mut terms = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        if !c[i][j][k].is_zero() {
                            terms.push((-c[i][j][k].clone(), vec![i, j]));
                        }
                    }
                }
                terms
            })
            .collect();
        Dga::new(names, gen_d)
    }

    pub fn generators(&self) -> usize {
        self.names.len()
    }

    pub fn top(&self) -> usize {
        self.names.len()
    }

    pub fn dim(&self, p: usize) -> usize {
        self.basis.get(p).map_or(0, Vec::len)
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..=self.top()).map(|p| self.dim(p)).collect()
    }

    pub fn zero(&self, p: usize) -> Element {
        Element { degree: p, coeffs: vec![Q::zero(); self.dim(p)] }
    }

    pub fn unit(&self) -> Element {
        let mut e = self.zero(0);
        e.coeffs[0] = Q::one();
        e
    }

    pub fn basis_element(&self, p: usize, i: usize) -> Element {
        let mut e = self.zero(p);
        e.coeffs[i] = Q::one();
        e
    }

    fn basis_mask(&self, mask: u32) -> Element {
        let p = mask.count_ones() as usize;
        let mut e = self.zero(p);
        e.coeffs[self.index[p][&mask]] = Q::one();
        e
    }

    /// `e_{i1} ∧ … ∧ e_{ip}` in the given order (repeats give zero).
    pub fn monomial_signed(&self, idx: &[usize]) -> Element {
        let mut e = self.unit();
        for &i in idx {
            e = self.mul(&e, &self.basis_mask(1 << i));
        }
        e
    }

    pub fn generator(&self, name: &str) -> Option<Element> {
        self.names.iter().position(|n| n == name).map(|i| self.basis_mask(1 << i))
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let p = a.degree + b.degree;
        if p > self.top() {
            return Element { degree: p, coeffs: Vec::new() };
        }
        let mut out = self.zero(p);
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let ma = self.basis[a.degree][i];
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let mb = self.basis[b.degree][j];
                if ma & mb != 0 {
                    continue;
                }
                let k = self.index[p][&(ma | mb)];
                let v = x * y;
                out.coeffs[k] = if wedge_sign(ma, mb) { &out.coeffs[k] - &v } else { &out.coeffs[k] + &v };
            }
        }
        out
    }

    fn build_d(&self, p: usize) -> Matrix<Q> {
        let n = self.top();
        if p >= n {
            return Matrix::zeros(0, self.dim(p));
        }
        let cols: Vec<Vec<Q>> = self.basis[p]
            .iter()
            .map(|&m| {
                // d(e_i ∧ rest) = de_i ∧ rest − e_i ∧ d(rest), expanded over the sorted indices
                let idx: Vec<usize> = (0..n).filter(|i| m >> i & 1 == 1).collect();
                let mut out = self.zero(p + 1);
                for (s, &i) in idx.iter().enumerate() {
                    let before = self.monomial_signed(&idx[..s]);
                    let after = self.monomial_signed(&idx[s + 1..]);
                    let term = self.mul(&self.mul(&before, &self.gen_d[i]), &after);
                    out = if s % 2 == 0 { out.add(&term) } else { out.sub(&term) };
                }
                out.coeffs
            })
            .collect();
        Matrix::from_columns(self.dim(p + 1), &cols)
    }

    pub fn d_matrix(&self, p: usize) -> &Matrix<Q> {
        &self.d[p]
    }

    pub fn differential(&self, a: &Element) -> Element {
        if a.degree >= self.top() {
            return Element { degree: a.degree + 1, coeffs: vec![Q::zero(); self.dim(a.degree + 1)] };
        }
        Element { degree: a.degree + 1, coeffs: self.d[a.degree].apply(&a.coeffs) }
    }

    /// Renders in the input syntax, e.g. `e2^e3 - 1/2 e1^e3`, so that it parses back.
    pub fn render(&self, a: &Element) -> String {
        let mut out = String::new();
        for (i, c) in a.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = self.basis[a.degree][i];
            let mono: Vec<&str> = (0..self.top()).filter(|j| m >> j & 1 == 1).map(|j| self.names[j].as_str()).collect();
            let neg = *c < Q::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            let sign = match (out.is_empty(), neg) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => " + ",
                (false, true) => " - ",
            };
            out.push_str(sign);
            let unit = mag == Q::one();
            match (mono.is_empty(), unit) {
                (true, _) => out.push_str(&fmt_q(&mag)),
                (false, true) => out.push_str(&mono.join("^")),
                (false, false) => out.push_str(&format!("{} {}", fmt_q(&mag), mono.join("^"))),
            }
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }

    /// Residuals of `d² = 0`, graded Leibniz and graded commutativity on all basis pairs.
    pub fn axiom_failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        let n = self.top();
        for p in 0..n.saturating_sub(1) {
            if !self.d[p + 1].mul(&self.d[p]).is_zero() {
                out.push(format!("d^2 != 0 on degree {p}"));
            }
        }
        for p in 0..=n {
            for q in 0..=n - p {
                for i in 0..self.dim(p) {
                    for j in 0..self.dim(q) {
                        let a = self.basis_element(p, i);
                        let b = self.basis_element(q, j);
                        let ab = self.mul(&a, &b);
                        let ba = self.mul(&b, &a);
                        let swapped = if p * q % 2 == 1 { ba.neg() } else { ba };
                        if ab != swapped {
                            out.push(format!("commutativity fails in degrees ({p},{q})"));
                        }
                        let lhs = self.differential(&ab);
                        let r1 = self.mul(&self.differential(&a), &b);
                        let r2 = self.mul(&a, &self.differential(&b));
                        let rhs = if p % 2 == 1 { r1.sub(&r2) } else { r1.add(&r2) };
                        if p + q < n && lhs != rhs {
                            out.push(format!("Leibniz fails in degrees ({p},{q})"));
                        }
                    }
                }
            }
        }
        out.dedup();
        out
    }

    pub fn cohomology(&self) -> CohomologyBasis {
        let n = self.top();
        let mut degrees = Vec::new();
        for p in 0..=n {
            let cocycles = if p == n { Matrix::identity(self.dim(p)) } else { self.d[p].nullspace() };
            let coboundaries = if p == 0 { Matrix::zeros(1, 0) } else { self.d[p - 1].column_basis() };
            let mut span = coboundaries.clone();
            let mut reps = Vec::new();
            for c in cocycles.columns() {
                let col = Matrix::from_columns(self.dim(p), &[c.clone()]);
                if !contains_space(&span, &col) {
                    span = span.hstack(&col);
                    reps.push(Element { degree: p, coeffs: c });
                }
            }
            degrees.push(DegreeCohomology { reps, cocycles, coboundaries });
        }
        CohomologyBasis { degrees }
    }

    pub fn betti(&self) -> Vec<usize> {
        self.cohomology().betti()
    }

    pub fn is_closed(&self, a: &Element) -> bool {
        self.differential(a).is_zero()
    }

    /// Some `f` with `d f = b`, if `b` is exact.
    pub fn primitive(&self, b: &Element) -> Option<Element> {
        if b.degree == 0 {
            return b.is_zero().then(|| self.zero(0));
        }
        if b.degree > self.top() {
            return Some(Element { degree: b.degree - 1, coeffs: vec![Q::zero(); self.dim(b.degree - 1)] });
        }
        self.d[b.degree - 1].solve(&b.coeffs).map(|c| Element { degree: b.degree - 1, coeffs: c })
    }

    pub fn is_exact(&self, b: &Element) -> bool {
        self.primitive(b).is_some()
    }
}

#[derive(Clone, Debug)]
pub struct DegreeCohomology {
    /// Closed elements whose classes form a basis of `H^p`.
    pub reps: Vec<Element>,
    pub cocycles: Matrix<Q>,
    pub coboundaries: Matrix<Q>,
}

#[derive(Clone, Debug)]
pub struct CohomologyBasis {
    pub degrees: Vec<DegreeCohomology>,
}

impl CohomologyBasis {
    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.reps.len()).collect()
    }

    pub fn reps(&self, p: usize) -> &[Element] {
        self.degrees.get(p).map_or(&[], |d| d.reps.as_slice())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MasseyResult {
    pub degrees: [usize; 3],
    pub classes: [String; 3],
    pub f: String,
    pub g: String,
    pub representative: String,
    /// Products spanning `H^{p+q−1}·H^r + H^p·H^{q+r−1}` (coboundaries are added for the test).
    pub indeterminacy: Vec<String>,
    pub indeterminacy_dim: usize,
    pub vanishes: bool,
    #[serde(skip)]
    pub rep: Element,
}

fn cols_of(dga: &Dga, p: usize, elems: &[Element]) -> Matrix<Q> {
    let cols: Vec<Vec<Q>> = elems.iter().map(|e| e.coeffs.clone()).collect();
    Matrix::from_columns(dga.dim(p), &cols)
}

/// `d(A^{p−1})` inside `A^p`.
fn coboundary_span(dga: &Dga, p: usize) -> Matrix<Q> {
    if p == 0 {
        Matrix::zeros(dga.dim(0), 0)
    } else {
        dga.d_matrix(p - 1).column_basis()
    }
}

/// Basis of the indeterminacy products and whether `x` is in their span plus coboundaries.
pub fn in_indeterminacy(dga: &Dga, h: &CohomologyBasis, p: usize, q: usize, r: usize, x: &Element) -> (Vec<Element>, bool) {
    let t = p + q + r - 1;
    if t > dga.top() {
        return (Vec::new(), true);
    }
    let mut prods = Vec::new();
    if p + q >= 1 {
        for z in h.reps(p + q - 1) {
            for c in h.reps(r) {
                prods.push(dga.mul(z, c));
            }
        }
    }
    if q + r >= 1 {
        for a in h.reps(p) {
            for w in h.reps(q + r - 1) {
                prods.push(dga.mul(a, w));
            }
        }
    }
    let span = cols_of(dga, t, &prods).hstack(&coboundary_span(dga, t));
    let col = cols_of(dga, t, std::slice::from_ref(x));
    let inside = contains_space(&span, &col);
    (prods, inside)
}

fn random_closed<R: Rng>(dga: &Dga, p: usize, rng: &mut R) -> Element {
    let h = if p >= dga.top() { Matrix::identity(dga.dim(p)) } else { dga.d_matrix(p).nullspace() };
    let mut e = dga.zero(p);
    for c in h.columns() {
        let s = crate::scalar::q(rng.gen_range(-5..=5), rng.gen_range(1..=4));
        e = e.add(&Element { degree: p, coeffs: c }.scale(&s));
    }
    e
}

pub fn massey_triple(dga: &Dga, a: &Element, b: &Element, c: &Element) -> Result<MasseyResult, DgaError> {
    massey_triple_impl::<rand_chacha::ChaCha8Rng>(dga, a, b, c, None)
}

/// As [`massey_triple`], with the primitives shifted by random closed elements.
pub fn massey_triple_perturbed<R: Rng>(dga: &Dga, a: &Element, b: &Element, c: &Element, rng: &mut R) -> Result<MasseyResult, DgaError> {
    massey_triple_impl(dga, a, b, c, Some(rng))
}

fn massey_triple_impl<R: Rng>(dga: &Dga, a: &Element, b: &Element, c: &Element, rng: Option<&mut R>) -> Result<MasseyResult, DgaError> {
    for (i, x) in [a, b, c].into_iter().enumerate() {
        if !dga.is_closed(x) {
            return Err(DgaError::NotClosed(i + 1));
        }
    }
    let (p, q, r) = (a.degree, b.degree, c.degree);
    let ab = dga.mul(a, b);
    let bc = dga.mul(b, c);
    let mut f = dga.primitive(&ab).ok_or_else(|| DgaError::NotExact { which: "ab", product: dga.render(&ab) })?;
    let mut g = dga.primitive(&bc).ok_or_else(|| DgaError::NotExact { which: "bc", product: dga.render(&bc) })?;
    if let Some(rng) = rng {
        if f.degree <= dga.top() {
            f = f.add(&random_closed(dga, f.degree, rng));
        }
        if g.degree <= dga.top() {
            g = g.add(&random_closed(dga, g.degree, rng));
        }
    }
    let fc = dga.mul(&f, c);
    let ag = dga.mul(a, &g);
    let rep = if p % 2 == 1 { fc.add(&ag) } else { fc.sub(&ag) };
    let h = dga.cohomology();
    let (prods, inside) = in_indeterminacy(dga, &h, p, q, r, &rep);
    let t = p + q + r - 1;
    let dim = if t > dga.top() { 0 } else { crate::linalg::span_dim(&[&cols_of(dga, t, &prods)]) };
    Ok(MasseyResult {
        degrees: [p, q, r],
        classes: [dga.render(a), dga.render(b), dga.render(c)],
        f: dga.render(&f),
        g: dga.render(&g),
        representative: dga.render(&rep),
        indeterminacy: prods.iter().filter(|e| !e.is_zero()).map(|e| dga.render(e)).collect(),
        indeterminacy_dim: dim,
        vanishes: inside,
        rep,
    })
}

/// Every triple of basis classes of degrees `(p, q, r)` whose product is defined.
pub fn defined_triples(dga: &Dga, p: usize, q: usize, r: usize) -> Vec<MasseyResult> {
    let h = dga.cohomology();
    let mut out = Vec::new();
    for a in h.reps(p) {
        for b in h.reps(q) {
            for c in h.reps(r) {
                if let Ok(m) = massey_triple(dga, a, b, c) {
                    out.push(m);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qi;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn heisenberg() -> Dga {
        Dga::chevalley_eilenberg(names(&["e1", "e2", "e3"]), &[(0, 1, vec![(qi(1), 2)])]).unwrap()
    }

    #[test]
    fn abelian_and_heisenberg_betti() {
        let ab = Dga::chevalley_eilenberg(names(&["e1", "e2", "e3"]), &[]).unwrap();
        assert_eq!(ab.betti(), vec![1, 3, 3, 1]);
        let h = heisenberg();
        assert_eq!(h.betti(), vec![1, 2, 2, 1]);
        let de3 = h.differential(&h.generator("e3").unwrap());
        assert_eq!(de3, h.monomial_signed(&[0, 1]).neg());
        assert!(h.axiom_failures().is_empty());
        assert!(ab.axiom_failures().is_empty());
    }

    #[test]
    fn jacobi_is_checked() {
        // [e1,e2]=e1, [e1,e3]=e1, [e2,e3]=e2 fails Jacobi
        let bad = Dga::chevalley_eilenberg(
            names(&["e1", "e2", "e3"]),
            &[(0, 1, vec![(qi(1), 0)]), (0, 2, vec![(qi(1), 0)]), (1, 2, vec![(qi(1), 1)])],
        );
        assert!(matches!(bad, Err(DgaError::Jacobi(..))));
        // so(3) satisfies it
        let so3 = Dga::chevalley_eilenberg(
            names(&["e1", "e2", "e3"]),
            &[(0, 1, vec![(qi(1), 2)]), (1, 2, vec![(qi(1), 0)]), (0, 2, vec![(qi(-1), 1)])],
        )
        .unwrap();
        assert_eq!(so3.betti(), vec![1, 0, 0, 1]);
    }

    #[test]
    fn heisenberg_massey_nonvanishing() {
        let h = heisenberg();
        let e1 = h.generator("e1").unwrap();
        let e2 = h.generator("e2").unwrap();
        let m = massey_triple(&h, &e1, &e2, &e2).unwrap();
        assert!(!m.vanishes);
        assert_eq!(m.rep, h.monomial_signed(&[1, 2]));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let mp = massey_triple_perturbed(&h, &e1, &e2, &e2, &mut rng).unwrap();
            assert!(!mp.vanishes);
        }
        let twice = massey_triple(&h, &e1.scale(&qi(2)), &e2, &e2).unwrap();
        let hc = h.cohomology();
        let (_, same) = in_indeterminacy(&h, &hc, 1, 1, 1, &twice.rep.sub(&m.rep.scale(&qi(2))));
        assert!(same);
    }

    #[test]
    fn undefined_products_are_reported() {
        let ab = Dga::chevalley_eilenberg(names(&["e1", "e2", "e3"]), &[]).unwrap();
        let e1 = ab.generator("e1").unwrap();
        let e2 = ab.generator("e2").unwrap();
        assert!(matches!(massey_triple(&ab, &e1, &e2, &e2), Err(DgaError::NotExact { which: "ab", .. })));
        let triples = defined_triples(&ab, 1, 1, 1);
        assert_eq!(triples.len(), 3);
        assert!(triples.iter().all(|m| m.vanishes));
    }
}
