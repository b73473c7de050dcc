//! Exterior algebra on R⁷ with the standard G2 forms φ, ψ = ∗φ.
//!
//! Multi-indices are stored as bitmasks (bit `i-1` set for index `i`); the basis
//! of each degree is ordered lexicographically on increasing index tuples.

use crate::linalg::Matrix;
use crate::scalar::{qi, Field, Q};
use rand::Rng;
use serde::Serialize;
use std::sync::OnceLock;
use thiserror::Error;

pub const DIM: usize = 7;

pub fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

struct BasisTables {
    by_degree: Vec<Vec<u8>>,
    index: [usize; 128],
}

fn tables() -> &'static BasisTables {
    static T: OnceLock<BasisTables> = OnceLock::new();
    T.get_or_init(|| {
        let mut by_degree = vec![Vec::new(); DIM + 1];
        fn rec(start: usize, k: usize, mask: u8, out: &mut Vec<u8>) {
            if k == 0 {
                out.push(mask);
                return;
            }
            for i in start..DIM {
                rec(i + 1, k - 1, mask | (1 << i), out);
            }
        }
        for (k, v) in by_degree.iter_mut().enumerate() {
            rec(0, k, 0, v);
        }
        let mut index = [0usize; 128];
        for v in &by_degree {
            for (i, &m) in v.iter().enumerate() {
                index[m as usize] = i;
            }
        }
        BasisTables { by_degree, index }
    })
}

/// Basis masks of degree `k` in lexicographic order.
pub fn basis(k: usize) -> &'static [u8] {
    &tables().by_degree[k]
}

pub fn dim(k: usize) -> usize {
    if k > DIM {
        0
    } else {
        binom(DIM, k)
    }
}

/// Position of a mask within its degree.
pub fn position(mask: u8) -> usize {
    tables().index[mask as usize]
}

/// Sign of `e^a ∧ e^b` relative to `e^{a|b}`; 0 if they share an index.
pub fn wedge_sign(a: u8, b: u8) -> i32 {
    if a & b != 0 {
        return 0;
    }
    let mut inv = 0;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        inv += (a >> (j + 1)).count_ones();
        bb &= bb - 1;
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign of `e_i ⌟ e^I` (i zero-based), 0 if i ∉ I.
pub fn interior_sign(i: usize, mask: u8) -> i32 {
    if mask & (1 << i) == 0 {
        return 0;
    }
    if (mask & ((1u8 << i) - 1)).count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign with `∗e^I = s·e^{I^c}`.
pub fn star_sign(mask: u8) -> i32 {
    wedge_sign(mask, !mask & 0x7f)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MultiIndex(pub u8);

impl MultiIndex {
    /// From 1-based indices; `None` if not strictly increasing in 1..=7.
    pub fn new(idx: &[usize]) -> Option<Self> {
        let mut mask = 0u8;
        let mut last = 0;
        for &i in idx {
            if i <= last || i > DIM {
                return None;
            }
            mask |= 1 << (i - 1);
            last = i;
        }
        Some(MultiIndex(mask))
    }

    pub fn degree(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..DIM).filter(|i| self.0 & (1 << i) != 0).map(|i| i + 1).collect()
    }

    pub fn label(&self) -> String {
        let s: String = self.indices().iter().map(|i| i.to_string()).collect();
        if s.is_empty() {
            "1".into()
        } else {
            format!("e{s}")
        }
    }
}

/// A homogeneous form of degree `degree`, stored densely in the basis of [`basis`].
#[derive(Clone, PartialEq, Debug)]
pub struct Form<F> {
    pub degree: usize,
    pub coeffs: Vec<F>,
}

impl<F: Field> Form<F> {
    pub fn zero(degree: usize) -> Self {
        Form { degree, coeffs: vec![F::zero(); dim(degree)] }
    }

    pub fn from_coeffs(degree: usize, coeffs: Vec<F>) -> Self {
        assert_eq!(coeffs.len(), dim(degree));
        Form { degree, coeffs }
    }

    pub fn basis_form(mask: u8) -> Self {
        let k = mask.count_ones() as usize;
        let mut f = Self::zero(k);
        f.coeffs[position(mask)] = F::one();
        f
    }

    /// Sum of signed terms given by 1-based index tuples (any order).
    pub fn from_terms(degree: usize, terms: &[(i64, &[usize])]) -> Self {
        let mut f = Self::zero(degree);
        for (c, idx) in terms {
            assert_eq!(idx.len(), degree);
            let mut mask = 0u8;
            let mut sign = 1;
            for &i in idx.iter() {
                let bit = 1u8 << (i - 1);
                let s = wedge_sign(mask, bit);
                assert!(s != 0, "repeated index");
                sign *= s;
                mask |= bit;
            }
            let p = position(mask);
            f.coeffs[p] = f.coeffs[p].add_ref(&F::from_q(qi(c * sign as i64)));
        }
        f
    }

    pub fn one() -> Self {
        Form { degree: 0, coeffs: vec![F::one()] }
    }

    pub fn get(&self, m: MultiIndex) -> F {
        if m.degree() != self.degree {
            return F::zero();
        }
        self.coeffs[position(m.0)].clone()
    }

    pub fn terms(&self) -> impl Iterator<Item = (MultiIndex, &F)> {
        basis(self.degree).iter().zip(&self.coeffs).filter(|(_, c)| !c.is_zero()).map(|(&m, c)| (MultiIndex(m), c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.degree, o.degree, "adding forms of different degree");
        Form { degree: self.degree, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add_ref(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.degree, o.degree, "subtracting forms of different degree");
        Form { degree: self.degree, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.sub_ref(b)).collect() }
    }

    pub fn scale(&self, s: &F) -> Self {
        Form { degree: self.degree, coeffs: self.coeffs.iter().map(|c| c.mul_ref(s)).collect() }
    }

    pub fn neg(&self) -> Self {
        Form { degree: self.degree, coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn conj(&self) -> Self {
        Form { degree: self.degree, coeffs: self.coeffs.iter().map(|c| c.conj()).collect() }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Form<G> {
        Form { degree: self.degree, coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn wedge(&self, o: &Self) -> Self {
        let deg = self.degree + o.degree;
        let mut out = Self::zero(deg);
        if deg > DIM {
            return out;
        }
        for (&a, ca) in basis(self.degree).iter().zip(&self.coeffs) {
            if ca.is_zero() {
                continue;
            }
            for (&b, cb) in basis(o.degree).iter().zip(&o.coeffs) {
                if cb.is_zero() {
                    continue;
                }
                let s = wedge_sign(a, b);
                if s == 0 {
                    continue;
                }
                let p = position(a | b);
                let t = ca.mul_ref(cb);
                out.coeffs[p] = if s > 0 { out.coeffs[p].add_ref(&t) } else { out.coeffs[p].sub_ref(&t) };
            }
        }
        out
    }

    pub fn interior(&self, x: &Vector<F>) -> Self {
        if self.degree == 0 {
            return Self::zero(0);
        }
        let mut out = Self::zero(self.degree - 1);
        for (&m, c) in basis(self.degree).iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            for (i, xi) in x.0.iter().enumerate() {
                let s = interior_sign(i, m);
                if s == 0 || xi.is_zero() {
                    continue;
                }
                let p = position(m & !(1 << i));
                let t = c.mul_ref(xi);
                out.coeffs[p] = if s > 0 { out.coeffs[p].add_ref(&t) } else { out.coeffs[p].sub_ref(&t) };
            }
        }
        out
    }

    /// `e_i ⌟ self` with `i` zero-based.
    pub fn interior_basis(&self, i: usize) -> Self {
        self.interior(&Vector::basis(i))
    }

    pub fn star(&self) -> Self {
        let mut out = Self::zero(DIM - self.degree);
        for (&m, c) in basis(self.degree).iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let comp = !m & 0x7f;
            let p = position(comp);
            out.coeffs[p] = if star_sign(m) > 0 { c.clone() } else { -c.clone() };
        }
        out
    }

    /// Hermitian inner product `Σ a_I conj(b_I)`; forms of different degree are orthogonal.
    pub fn inner(&self, o: &Self) -> F {
        if self.degree != o.degree {
            return F::zero();
        }
        let mut acc = F::zero();
        for (a, b) in self.coeffs.iter().zip(&o.coeffs) {
            if !a.is_zero() && !b.is_zero() {
                acc = acc.add_ref(&a.mul_ref(&b.conj()));
            }
        }
        acc
    }

    pub fn max_abs(&self) -> Q {
        self.coeffs.iter().map(|c| c.magnitude()).fold(qi(0), |a, b| if b > a { b } else { a })
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> =
            self.terms().map(|(m, c)| format!("({})*{}", c.render(), m.label())).collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// A vector in the standard orthonormal frame; identified with its dual 1-form.
#[derive(Clone, PartialEq, Debug)]
pub struct Vector<F>(pub [F; 7]);

impl<F: Field> Vector<F> {
    pub fn zero() -> Self {
        Vector(std::array::from_fn(|_| F::zero()))
    }

    pub fn basis(i: usize) -> Self {
        let mut v = Self::zero();
        v.0[i] = F::one();
        v
    }

    pub fn from_slice(s: &[F]) -> Self {
        assert_eq!(s.len(), DIM);
        Vector(std::array::from_fn(|i| s[i].clone()))
    }

    pub fn flat(&self) -> Form<F> {
        Form::from_coeffs(1, self.0.to_vec())
    }

    pub fn sharp(a: &Form<F>) -> Self {
        assert_eq!(a.degree, 1);
        Self::from_slice(&a.coeffs)
    }

    pub fn dot(&self, o: &Self) -> F {
        self.0.iter().zip(&o.0).fold(F::zero(), |acc, (a, b)| acc.add_ref(&a.mul_ref(b)))
    }

    pub fn scale(&self, s: &F) -> Self {
        Vector(std::array::from_fn(|i| self.0[i].mul_ref(s)))
    }

    pub fn add(&self, o: &Self) -> Self {
        Vector(std::array::from_fn(|i| self.0[i].add_ref(&o.0[i])))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Vector(std::array::from_fn(|i| self.0[i].sub_ref(&o.0[i])))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }
}

/// Matrix of a linear map `Λ^from → Λ^to` obtained by applying `f` to basis forms.
pub fn linear_map_matrix<F: Field>(from: usize, to: usize, f: impl Fn(&Form<F>) -> Form<F>) -> Matrix<F> {
    let mut m = Matrix::zeros(dim(to), dim(from));
    for (j, &b) in basis(from).iter().enumerate() {
        let img = f(&Form::basis_form(b));
        assert_eq!(img.degree, to);
        for (i, c) in img.coeffs.into_iter().enumerate() {
            if !c.is_zero() {
                m.set(i, j, c);
            }
        }
    }
    m
}

pub fn form_to_column<F: Field>(a: &Form<F>) -> Matrix<F> {
    Matrix::from_columns(a.coeffs.len(), &[a.coeffs.clone()])
}

#[derive(Debug, Error, PartialEq)]
pub enum G2Error {
    #[error("3-form fails the metric relation (X⌟φ)∧(Y⌟φ)∧φ = -6 g(X,Y) vol at frame pair ({0},{1})")]
    MetricRelation(usize, usize),
    #[error("3-form fails contraction identity '{0}' (max residual {1})")]
    Contraction(String, String),
    #[error("expected a 3-form, got degree {0}")]
    Degree(usize),
}

#[derive(Clone, Debug)]
pub struct G2Structure {
    pub phi: Form<Q>,
    pub psi: Form<Q>,
    pub metric: Matrix<Q>,
    pub vol: Form<Q>,
}

/// Signed coefficients of the built-in 3-form. The opposite overall sign fails
/// the metric relation with this orientation and is rejected by [`G2Structure::from_phi`].
pub const PHI_TERMS: [(i64, [usize; 3]); 7] = [
    (-1, [1, 2, 3]),
    (-1, [1, 4, 5]),
    (-1, [1, 6, 7]),
    (-1, [2, 4, 6]),
    (1, [2, 5, 7]),
    (1, [3, 4, 7]),
    (1, [3, 5, 6]),
];

pub fn builtin_phi() -> Form<Q> {
    let terms: Vec<(i64, &[usize])> = PHI_TERMS.iter().map(|(c, i)| (*c, &i[..])).collect();
    Form::from_terms(3, &terms)
}

impl G2Structure {
    /// Validates the metric relation and all contraction identities.
    pub fn from_phi(phi: Form<Q>) -> Result<Self, G2Error> {
        if phi.degree != 3 {
            return Err(G2Error::Degree(phi.degree));
        }
        let psi = phi.star();
        let vol = Form::<Q>::basis_form(0x7f);
        let g = G2Structure { phi, psi, metric: Matrix::identity(DIM), vol };
        for i in 0..DIM {
            for j in 0..DIM {
                let lhs = g.metric_form(&Vector::basis(i), &Vector::basis(j));
                let expect = if i == j { qi(-6) } else { qi(0) };
                if lhs.coeffs[0] != expect {
                    return Err(G2Error::MetricRelation(i + 1, j + 1));
                }
            }
        }
        for r in g.verify_contractions() {
            if r.max_residual != 0 {
                return Err(G2Error::Contraction(r.name.into(), r.max_residual.to_string()));
            }
        }
        Ok(g)
    }

    /// `(X⌟φ)∧(Y⌟φ)∧φ` as a top form.
    pub fn metric_form(&self, x: &Vector<Q>, y: &Vector<Q>) -> Form<Q> {
        self.phi.interior(x).wedge(&self.phi.interior(y)).wedge(&self.phi)
    }

    /// `X × Y = Y⌟X⌟φ`.
    pub fn cross(&self, x: &Vector<Q>, y: &Vector<Q>) -> Vector<Q> {
        Vector::sharp(&self.phi.interior(x).interior(y))
    }

    /// `∗(X∧Y∧ψ)` read as a vector.
    pub fn cross_via_star(&self, x: &Vector<Q>, y: &Vector<Q>) -> Vector<Q> {
        Vector::sharp(&x.flat().wedge(&y.flat()).wedge(&self.psi).star())
    }

    fn phi_tensor(&self) -> [[[i64; 7]; 7]; 7] {
        let mut t = [[[0i64; 7]; 7]; 7];
        for i in 0..7 {
            for j in 0..7 {
                for k in 0..7 {
                    let m = (1u8 << i) | (1u8 << j) | (1u8 << k);
                    if m.count_ones() != 3 {
                        continue;
                    }
                    let c = self.phi.coeffs[position(m)].clone();
                    let s = perm_sign(&[i, j, k]);
                    t[i][j][k] = s * as_int(&c);
                }
            }
        }
        t
    }

    fn psi_tensor(&self) -> Vec<i64> {
        let mut t = vec![0i64; 7 * 7 * 7 * 7];
        for i in 0..7 {
            for j in 0..7 {
                for k in 0..7 {
                    for l in 0..7 {
                        let m = (1u8 << i) | (1u8 << j) | (1u8 << k) | (1u8 << l);
                        if m.count_ones() != 4 {
                            continue;
                        }
                        let c = self.psi.coeffs[position(m)].clone();
                        t[((i * 7 + j) * 7 + k) * 7 + l] = perm_sign(&[i, j, k, l]) * as_int(&c);
                    }
                }
            }
        }
        t
    }

    /// Evaluates the ten φ/ψ contraction identities over every free-index tuple.
    pub fn verify_contractions(&self) -> Vec<IdentityResidual> {
        let p = self.phi_tensor();
        let s4 = self.psi_tensor();
        let s = |i: usize, j: usize, k: usize, l: usize| s4[((i * 7 + j) * 7 + k) * 7 + l];
        let g = |i: usize, j: usize| i64::from(i == j);
        let r = 0..7usize;
        let mut out = Vec::new();
        let mut push = |name: &'static str, tuples: u64, worst: i64| {
            out.push(IdentityResidual { name, tuples, max_residual: worst });
        };

        // 1: φ_ijk φ_abk
        let mut w = 0;
        let mut n = 0;
        for i in r.clone() {
            for j in r.clone() {
                for a in r.clone() {
                    for b in r.clone() {
                        let lhs: i64 = (0..7).map(|k| p[i][j][k] * p[a][b][k]).sum();
                        let rhs = g(i, a) * g(j, b) - g(i, b) * g(j, a) - s(i, j, a, b);
                        w = w.max((lhs - rhs).abs());
                        n += 1;
                    }
                }
            }
        }
        push("phi.phi one contraction", n, w);

        let (mut w, mut n) = (0, 0);
        for i in r.clone() {
            for a in r.clone() {
                let lhs: i64 = (0..7).flat_map(|j| (0..7).map(move |k| (j, k))).map(|(j, k)| p[i][j][k] * p[a][j][k]).sum();
                w = w.max((lhs - 6 * g(i, a)).abs());
                n += 1;
            }
        }
        push("phi.phi two contractions", n, w);

        let full: i64 = (0..343).map(|x| {
            let (i, j, k) = (x / 49, (x / 7) % 7, x % 7);
            p[i][j][k] * p[i][j][k]
        }).sum();
        push("phi.phi full contraction = 42", 1, (full - 42).abs());

        // 4: φ_ijk ψ_abck
        let (mut w, mut n) = (0, 0);
        for i in r.clone() {
            for j in r.clone() {
                for a in r.clone() {
                    for b in r.clone() {
                        for c in r.clone() {
                            let lhs: i64 = (0..7).map(|k| p[i][j][k] * s(a, b, c, k)).sum();
                            let rhs = g(i, a) * p[j][b][c] + g(i, b) * p[a][j][c] + g(i, c) * p[a][b][j]
                                - g(a, j) * p[i][b][c]
                                - g(b, j) * p[a][i][c]
                                - g(c, j) * p[a][b][i];
                            w = w.max((lhs - rhs).abs());
                            n += 1;
                        }
                    }
                }
            }
        }
        push("phi.psi one contraction", n, w);

        let (mut w, mut n) = (0, 0);
        for i in r.clone() {
            for a in r.clone() {
                for b in r.clone() {
                    let mut lhs = 0;
                    for j in 0..7 {
                        for k in 0..7 {
                            lhs += p[i][j][k] * s(a, b, j, k);
                        }
                    }
                    w = w.max((lhs + 4 * p[i][a][b]).abs());
                    n += 1;
                }
            }
        }
        push("phi.psi two contractions", n, w);

        let (mut w, mut n) = (0, 0);
        for a in r.clone() {
            let mut lhs = 0;
            for i in 0..7 {
                for j in 0..7 {
                    for k in 0..7 {
                        lhs += p[i][j][k] * s(a, i, j, k);
                    }
                }
            }
            w = w.max(lhs.abs());
            n += 1;
        }
        push("phi.psi three contractions = 0", n, w);

        // 7: ψ_ijkl ψ_abcl
        let (mut w, mut n) = (0, 0);
        for i in r.clone() {
            for j in r.clone() {
                for k in r.clone() {
                    for a in r.clone() {
                        for b in r.clone() {
                            for c in r.clone() {
                                let lhs: i64 = (0..7).map(|l| s(i, j, k, l) * s(a, b, c, l)).sum();
                                let rhs = -p[a][j][k] * p[i][b][c] - p[i][a][k] * p[j][b][c] - p[i][j][a] * p[k][b][c]
                                    + g(i, a) * g(j, b) * g(k, c)
                                    + g(i, b) * g(j, c) * g(k, a)
                                    + g(i, c) * g(j, a) * g(k, b)
                                    - g(i, a) * g(j, c) * g(k, b)
                                    - g(i, b) * g(j, a) * g(k, c)
                                    - g(i, c) * g(j, b) * g(k, a)
                                    - g(i, a) * s(j, k, b, c)
                                    - g(j, a) * s(k, i, b, c)
                                    - g(k, a) * s(i, j, b, c)
                                    + g(a, b) * s(i, j, k, c)
                                    - g(a, c) * s(i, j, k, b);
                                w = w.max((lhs - rhs).abs());
                                n += 1;
                            }
                        }
                    }
                }
            }
        }
        push("psi.psi one contraction", n, w);

        let (mut w, mut n) = (0, 0);
        for i in r.clone() {
            for j in r.clone() {
                for a in r.clone() {
                    for b in r.clone() {
                        let mut lhs = 0;
                        for k in 0..7 {
                            for l in 0..7 {
                                lhs += s(i, j, k, l) * s(a, b, k, l);
                            }
                        }
                        let rhs = 4 * g(i, a) * g(j, b) - 4 * g(i, b) * g(j, a) - 2 * s(i, j, a, b);
                        w = w.max((lhs - rhs).abs());
                        n += 1;
                    }
                }
            }
        }
        push("psi.psi two contractions", n, w);

        let (mut w, mut n) = (0, 0);
        for i in r.clone() {
            for a in r.clone() {
                let mut lhs = 0;
                for j in 0..7 {
                    for k in 0..7 {
                        for l in 0..7 {
                            lhs += s(i, j, k, l) * s(a, j, k, l);
                        }
                    }
                }
                w = w.max((lhs - 24 * g(i, a)).abs());
                n += 1;
            }
        }
        push("psi.psi three contractions", n, w);

        let full: i64 = s4.iter().map(|x| x * x).sum();
        push("psi.psi full contraction = 168", 1, (full - 168).abs());
        out
    }

    /// The eight wedge/star identities for a vector X.
    pub fn wedge_star_residuals(&self, x: &Vector<Q>) -> Vec<(&'static str, Q)> {
        let xf = x.flat();
        let xphi = self.phi.interior(x);
        let xpsi = self.psi.interior(x);
        let three = qi(3);
        let res = |a: Form<Q>, b: Form<Q>| a.sub(&b).max_abs();
        vec![
            ("*(phi^X) = X-|psi", res(self.phi.wedge(&xf).star(), xpsi.clone())),
            ("*(psi^X) = X-|phi", res(self.psi.wedge(&xf).star(), xphi.clone())),
            ("psi^*(phi^X) = 0", self.psi.wedge(&self.phi.wedge(&xf).star()).max_abs()),
            ("phi^*(psi^X) = -2 psi^X", res(self.phi.wedge(&self.psi.wedge(&xf).star()), self.psi.wedge(&xf).scale(&qi(-2)))),
            ("phi^(X-|phi) = -2*(X-|phi)", res(self.phi.wedge(&xphi), xphi.star().scale(&qi(-2)))),
            ("psi^(X-|phi) = 3*X", res(self.psi.wedge(&xphi), xf.star().scale(&three))),
            ("phi^(X-|psi) = -4*X", res(self.phi.wedge(&xpsi), xf.star().scale(&qi(-4)))),
            ("psi^(X-|psi) = 0", self.psi.wedge(&xpsi).max_abs()),
        ]
    }

    /// `X×(X×Y) + |X|²Y − g(X,Y)X` plus the difference of the two cross-product formulas.
    pub fn cross_residual(&self, x: &Vector<Q>, y: &Vector<Q>) -> Q {
        let xy = self.cross(x, y);
        let lhs = self.cross(x, &xy);
        let rhs = y.scale(&-x.dot(x)).add(&x.scale(&x.dot(y)));
        let a = lhs.sub(&rhs).flat().max_abs();
        let b = xy.sub(&self.cross_via_star(x, y)).flat().max_abs();
        if a > b {
            a
        } else {
            b
        }
    }

    /// Residuals of the three symmetric-tensor wedge identities for symmetric `h`.
    pub fn symmetric_residuals(&self, h: &Matrix<Q>) -> Vec<(&'static str, Q)> {
        let mut pp = Form::zero(4);
        let mut pq = Form::zero(5);
        let mut qq = Form::zero(6);
        let ephi: Vec<Form<Q>> = (0..7).map(|i| self.phi.interior_basis(i)).collect();
        let epsi: Vec<Form<Q>> = (0..7).map(|i| self.psi.interior_basis(i)).collect();
        let mut tr = qi(0);
        for p in 0..7 {
            tr += h.get(p, p);
            for q in 0..7 {
                let c = h.get(p, q);
                if c == &qi(0) {
                    continue;
                }
                pp = pp.add(&ephi[p].wedge(&ephi[q]).scale(c));
                pq = pq.add(&ephi[p].wedge(&epsi[q]).scale(c));
                qq = qq.add(&epsi[p].wedge(&epsi[q]).scale(c));
            }
        }
        let rhs = self.psi.scale(&(qi(-2) * &tr)).add(&ell_psi(self, h).scale(&qi(2)));
        vec![
            ("h(phi,phi) = -2 tr(h) psi + 2 l_psi h", pp.sub(&rhs).max_abs()),
            ("h(phi,psi) = 0", pq.max_abs()),
            ("h(psi,psi) = 0", qq.max_abs()),
        ]
    }

    /// Residuals of the four contracted identities for the index `m` (zero-based).
    pub fn index_residuals(&self, m: usize) -> Vec<(&'static str, Q)> {
        let mphi = self.phi.interior_basis(m);
        let mpsi = self.psi.interior_basis(m);
        let mut a = Form::zero(3);
        let mut b = Form::zero(4);
        let mut c = Form::zero(4);
        let mut d = Form::zero(5);
        for p in 0..7 {
            let pphi = self.phi.interior_basis(p);
            let ppsi = self.psi.interior_basis(p);
            a = a.add(&pphi.wedge(&mphi.interior_basis(p)));
            b = b.add(&pphi.wedge(&mpsi.interior_basis(p)));
            c = c.add(&ppsi.wedge(&mphi.interior_basis(p)));
            d = d.add(&ppsi.wedge(&mpsi.interior_basis(p)));
        }
        let s = mpsi.star();
        vec![
            ("(ep-|phi)^(ep-|em-|phi) = 3 em-|psi", a.sub(&mpsi.scale(&qi(3))).max_abs()),
            ("(ep-|phi)^(ep-|em-|psi) = -3*(em-|psi)", b.sub(&s.scale(&qi(-3))).max_abs()),
            ("(ep-|psi)^(ep-|em-|phi) = -3*(em-|psi)", c.sub(&s.scale(&qi(-3))).max_abs()),
            ("(ep-|psi)^(ep-|em-|psi) = 4*(em-|phi)", d.sub(&mphi.star().scale(&qi(4))).max_abs()),
        ]
    }
}

/// `ℓ_φ A = A_{ip} e^i ∧ (e_p ⌟ φ)`.
pub fn ell_phi(g2: &G2Structure, a: &Matrix<Q>) -> Form<Q> {
    ell(&g2.phi, a)
}

/// `ℓ_ψ A = A_{ip} e^i ∧ (e_p ⌟ ψ)`.
pub fn ell_psi(g2: &G2Structure, a: &Matrix<Q>) -> Form<Q> {
    ell(&g2.psi, a)
}

fn ell(eta: &Form<Q>, a: &Matrix<Q>) -> Form<Q> {
    let mut out = Form::zero(eta.degree);
    for p in 0..7 {
        let ep = eta.interior_basis(p);
        for i in 0..7 {
            let c = a.get(i, p);
            if Field::is_zero(c) {
                continue;
            }
            out = out.add(&Form::<Q>::basis_form(1 << i).wedge(&ep).scale(c));
        }
    }
    out
}

fn as_int(c: &Q) -> i64 {
    assert!(c.is_integer(), "non-integer structure coefficient");
    i64::try_from(c.numer()).expect("coefficient overflow")
}

fn perm_sign(idx: &[usize]) -> i64 {
    let mut inv = 0;
    for a in 0..idx.len() {
        for b in a + 1..idx.len() {
            if idx[a] > idx[b] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityResidual {
    pub name: &'static str,
    pub tuples: u64,
    pub max_residual: i64,
}

/// The validated standard G2-structure. Panics if the built-in 3-form is wrong.
pub fn standard_g2() -> &'static G2Structure {
    static G: OnceLock<G2Structure> = OnceLock::new();
    G.get_or_init(|| match G2Structure::from_phi(builtin_phi()) {
        Ok(g) => g,
        Err(e) => panic!("built-in G2 3-form is invalid: {e}"),
    })
}

/// Random rational with numerator in `-n..=n` and denominator in `1..=d`.
pub fn random_q(rng: &mut impl Rng, n: i64, d: i64) -> Q {
    Q::new(rng.gen_range(-n..=n).into(), rng.gen_range(1..=d).into())
}

pub fn random_vector(rng: &mut impl Rng) -> Vector<Q> {
    Vector(std::array::from_fn(|_| random_q(rng, 5, 4)))
}

pub fn random_form(rng: &mut impl Rng, k: usize) -> Form<Q> {
    Form::from_coeffs(k, (0..dim(k)).map(|_| random_q(rng, 5, 4)).collect())
}

pub fn random_symmetric(rng: &mut impl Rng) -> Matrix<Q> {
    let mut m = Matrix::zeros(7, 7);
    for i in 0..7 {
        for j in i..7 {
            let v = random_q(rng, 5, 4);
            m.set(i, j, v.clone());
            m.set(j, i, v);
        }
    }
    m
}
