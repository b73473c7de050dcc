//! Per-mode verification of the component tables, relations, adjoints,
//! Laplacian formulas, kernels, commutation identities and symbol ranks.

use super::table::{build_mode_table, const_ops, norm_sqr_qi, Mode, ModeOperatorTable};
use crate::derivations::SlotCheck;
use crate::figures::{FigureOp, VANISHING_D};
use crate::g2_decomp::{DecompError, TypeLabel};
use crate::g2_linear::{dim, linear_map_matrix, standard_g2, Form, Vector};
use crate::graded::{ratio, GradedOp, Probe};
use crate::linalg::{intersection, subspace_eq, Matrix};
use crate::report::Check;
use crate::scalar::{fmt_q, q, qi, Field, Q, Qi};
use serde::Serialize;

fn qc(n: i64, d: i64) -> Qi {
    Qi::real(q(n, d))
}

/// Component of `d` between two types as a multiple of `D^l_m`.
pub fn probe_d_constant(from: TypeLabel, to: TypeLabel, k: Mode) -> Result<Probe<Qi>, DecompError> {
    let t = build_mode_table(k);
    probe_in_table(&t, FigureOp::D, from, to)
}

/// Probe `d`, `𝓛_B` or `𝓛_K` on a prepared table, relative to `D^{from.l}_{to.l}`.
pub fn probe_in_table(t: &ModeOperatorTable, op: FigureOp, from: TypeLabel, to: TypeLabel) -> Result<Probe<Qi>, DecompError> {
    let from = TypeLabel::new(from.k, from.l)?;
    let to = TypeLabel::new(to.k, to.l)?;
    let g = match op {
        FigureOp::D => &t.d,
        FigureOp::LieB => &t.lie_b,
        FigureOp::LieK => &t.lie_k,
        FigureOp::IotaB => &t.iota_b,
        FigureOp::IotaK => &t.iota_k,
    };
    if to.k != from.k + op.shift() {
        return Err(DecompError::Mismatch(from, to));
    }
    let c = t.component(g, from, to);
    Ok(ratio(&c, t.d_ref(from.l, to.l)))
}

fn expected_probe(op: FigureOp, from: TypeLabel, to: TypeLabel, mode: &Mode) -> Probe<Qi> {
    if mode.iter().all(|&x| x == 0) {
        return Probe::Zero;
    }
    match op.expected(from, to) {
        Some(c) => Probe::Scalar(Qi::real(c)),
        None => Probe::Zero,
    }
}

/// Probe every slot of `op` at one mode and compare with the expected table.
pub fn verify_figure(t: &ModeOperatorTable, op: FigureOp) -> Vec<SlotCheck> {
    op.slots()
        .into_iter()
        .map(|(from, to)| {
            let found = probe_in_table(t, op, from, to).expect("valid slot");
            let expected = expected_probe(op, from, to, &t.mode);
            SlotCheck {
                op: op.name(),
                from: from.to_string(),
                to: to.to_string(),
                expected: expected.render(),
                found: found.render(),
                pass: found == expected,
            }
        })
        .collect()
}

/// The vanishing `D^l_m`: every slot with that `(l, m)` pair must have zero component.
/// A pair with no slot at all (`D^14_14`) is reported as vacuously zero.
pub fn verify_vanishing_d(t: &ModeOperatorTable) -> Vec<Check> {
    VANISHING_D
        .iter()
        .map(|&(l, m)| {
            let slots: Vec<_> = FigureOp::D.slots().into_iter().filter(|(f, to)| f.l == l && to.l == m).collect();
            let nonzero: Vec<String> = slots
                .iter()
                .filter(|(f, to)| !t.component(&t.d, *f, *to).is_zero())
                .map(|(f, to)| format!("{f}->{to}"))
                .collect();
            let detail = if slots.is_empty() {
                "no slot between these types exists; zero by the decomposition".to_string()
            } else if nonzero.is_empty() {
                format!("{} slot(s) probed, all zero", slots.len())
            } else {
                format!("nonzero on {}", nonzero.join(", "))
            };
            Check::new(format!("D^{l}_{m} = 0"), "vanishing-d-components", nonzero.is_empty(), detail)
        })
        .collect()
}

type Term = (i64, i64, (usize, usize), (usize, usize));

/// `Σ c · D[a] · D[b]`, with `D[b]` applied first.
pub const RELATIONS: [(&str, &[Term]); 14] = [
    ("D77 D17 = 0", &[(1, 1, (7, 7), (1, 7))]),
    ("D714 D17 = 0", &[(1, 1, (7, 14), (1, 7))]),
    ("D71 D77 = 0", &[(1, 1, (7, 1), (7, 7))]),
    ("3/2 D77 D77 - D147 D714 = 0", &[(3, 2, (7, 7), (7, 7)), (-1, 1, (14, 7), (7, 14))]),
    (
        "-D17 D71 + 9/4 D77 D77 + D277 D727 = 0",
        &[(-1, 1, (1, 7), (7, 1)), (9, 4, (7, 7), (7, 7)), (1, 1, (27, 7), (7, 27))],
    ),
    ("3/2 D714 D77 - D2714 D727 = 0", &[(3, 2, (7, 14), (7, 7)), (-1, 1, (27, 14), (7, 27))]),
    ("3/2 D727 D77 + D2727 D727 = 0", &[(3, 2, (7, 27), (7, 7)), (1, 1, (27, 27), (7, 27))]),
    ("D727 D77 + D1427 D714 = 0", &[(1, 1, (7, 27), (7, 7)), (1, 1, (14, 27), (7, 14))]),
    ("D71 D147 = 0", &[(1, 1, (7, 1), (14, 7))]),
    ("3/2 D77 D147 - D277 D1427 = 0", &[(3, 2, (7, 7), (14, 7)), (-1, 1, (27, 7), (14, 27))]),
    ("D727 D147 - D2727 D1427 = 0", &[(1, 1, (7, 27), (14, 7)), (-1, 1, (27, 27), (14, 27))]),
    ("D77 D277 + D147 D2714 = 0", &[(1, 1, (7, 7), (27, 7)), (1, 1, (14, 7), (27, 14))]),
    ("3/2 D77 D277 + D277 D2727 = 0", &[(3, 2, (7, 7), (27, 7)), (1, 1, (27, 7), (27, 27))]),
    ("D714 D277 - D2714 D2727 = 0", &[(1, 1, (7, 14), (27, 7)), (-1, 1, (27, 14), (27, 27))]),
];

/// `(D^l_m)* = c · D^m_l`, keyed by `(l, m)`.
pub const ADJOINTS: [((usize, usize), i64, i64); 10] = [
    ((1, 7), -7, 3),
    ((7, 7), 3, 1),
    ((7, 14), 4, 1),
    ((7, 1), -1, 1),
    ((7, 27), -4, 3),
    ((14, 7), 1, 1),
    ((14, 27), -1, 1),
    ((27, 7), -1, 1),
    ((27, 27), 1, 1),
    ((27, 14), -1, 1),
];

/// Laplacian on `Ω^k_l` as `Σ c · D[a] · D[b]`, with the degrees where it applies.
pub const LAPLACIANS: [(usize, &[usize], &[Term]); 4] = [
    (1, &[0, 3, 4, 7], &[(-7, 3, (7, 1), (1, 7))]),
    (7, &[1, 2, 3, 4, 5, 6], &[(9, 1, (7, 7), (7, 7)), (-7, 3, (1, 7), (7, 1))]),
    (14, &[2, 5], &[(5, 1, (7, 14), (14, 7)), (-1, 1, (27, 14), (14, 27))]),
    (27, &[3, 4], &[(-7, 3, (7, 27), (27, 7)), (-1, 1, (14, 27), (27, 14)), (1, 1, (27, 27), (27, 27))]),
];

fn eval_terms(t: &ModeOperatorTable, terms: &[Term]) -> Matrix<Qi> {
    let mut acc: Option<Matrix<Qi>> = None;
    for &(n, d, a, b) in terms {
        let m = t.d_ref(a.0, a.1).expect("reference").mul(t.d_ref(b.0, b.1).expect("reference")).scale(&qc(n, d));
        acc = Some(match acc {
            Some(x) => x.add(&m),
            None => m,
        });
    }
    acc.expect("non-empty relation")
}

fn reference_degree(l: usize, m: usize) -> usize {
    crate::figures::reference_degree(l, m).expect("reference operator")
}

/// Relations, adjoint identifications, Laplacian formulas and `Δ = |k|²` at one mode.
pub fn verify_relations(k: Mode) -> Vec<Check> {
    let t = build_mode_table(k);
    verify_relations_in(&t)
}

pub fn verify_relations_in(t: &ModeOperatorTable) -> Vec<Check> {
    let mut out = Vec::new();
    for (name, terms) in RELATIONS {
        out.push(Check::residual(name, "d-squared-relations", &eval_terms(t, terms).max_abs()));
    }
    let p = crate::g2_decomp::projectors();
    for ((l, m), n, d) in ADJOINTS {
        let deg = reference_degree(l, m);
        let adj = p.component(t.ds.block(deg + 1), TypeLabel::of(deg + 1, m), TypeLabel::of(deg, l));
        let rhs = t.d_ref(m, l).expect("reference").scale(&qc(n, d));
        let name = format!("(D^{l}_{m})* = {} D^{m}_{l}", fmt_q(&q(n, d)));
        out.push(Check::residual(name, "d-adjoints", &adj.sub(&rhs).max_abs()));
    }
    for (l, degrees, terms) in LAPLACIANS {
        let rhs = eval_terms(t, terms);
        for &deg in degrees {
            let lab = TypeLabel::of(deg, l);
            let lhs = t.component(&t.lap, lab, lab);
            out.push(Check::residual(format!("Laplacian on {lab}"), "laplacian-formulas", &lhs.sub(&rhs).max_abs()));
        }
    }
    let n2 = norm_sqr_qi(&t.mode);
    let flat = t.lap.sub(&GradedOp::identity().scale(&n2)).max_abs();
    out.push(Check::residual("Laplacian = |k|^2 Id", "flat-laplacian", &flat));
    let mut split = qi(0);
    for deg in 0..=7 {
        for lab in TypeLabel::in_degree(deg) {
            let pr = p.get(lab).projector.map(|x| Qi::real(x.clone()));
            let c = pr.mul(t.lap.block(deg)).sub(&t.lap.block(deg).mul(&pr)).max_abs();
            if c > split {
                split = c;
            }
        }
    }
    out.push(Check::residual("Laplacian preserves the type splitting", "flat-laplacian", &split));
    out
}

fn kernel(m: &Matrix<Qi>) -> Matrix<Qi> {
    m.fast_nullspace()
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelReport {
    pub mode: Mode,
    pub dims: KernelDims,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelDims {
    pub ker_d71: usize,
    pub ker_d77: usize,
    pub ker_d714: usize,
    pub ker_d727: usize,
    pub harmonic: usize,
}

/// Kernels of the first-order operators on 1-forms.
pub fn verify_kernel_theorem(k: Mode) -> KernelReport {
    let t = build_mode_table(k);
    let get = |l, m| t.d_ref(l, m).expect("reference");
    let k1 = kernel(get(7, 1));
    let k7 = kernel(get(7, 7));
    let k14 = kernel(get(7, 14));
    let k27 = kernel(get(7, 27));
    let h = kernel(t.lap.block(1));
    let a = "harmonic-one-forms";
    let mut checks = vec![Check::new("ker D77 = ker D714", a, subspace_eq(&k7, &k14), format!("dims {} and {}", k7.cols(), k14.cols()))];
    let pairs = [("ker D71 ∩ ker D77", &k1, &k7), ("ker D71 ∩ ker D727", &k1, &k27), ("ker D77 ∩ ker D727", &k7, &k27)];
    for (name, x, y) in pairs {
        let i = intersection(x, y);
        checks.push(Check::new(format!("{name} = harmonic"), a, subspace_eq(&i, &h), format!("dim {} vs harmonic {}", i.cols(), h.cols())));
    }
    let all = intersection(&intersection(&k1, &k7), &k14);
    checks.push(Check::new("ker D71 ∩ ker D77 ∩ ker D714 = harmonic", a, subspace_eq(&all, &h), format!("dim {}", all.cols())));
    KernelReport {
        mode: k,
        dims: KernelDims { ker_d71: k1.cols(), ker_d77: k7.cols(), ker_d714: k14.cols(), ker_d727: k27.cols(), harmonic: h.cols() },
        checks,
    }
}

/// Commutation and annihilation identities of `𝓛_B`, `𝓛_K` with `d`, `d*`, `Δ`.
pub fn verify_commutation(k: Mode) -> Vec<Check> {
    let t = build_mode_table(k);
    let a = "lie-derivation-identities";
    let (d, ds, lap, lb, lk) = (&t.d, &t.ds, &t.lap, &t.lie_b, &t.lie_k);
    let z = |g: GradedOp<Qi>| g.max_abs();
    let c = const_ops();
    let i = Qi::i();
    let phiw = c.phi_wedge.to_complex();
    let psiw = c.psi_wedge.to_complex();
    let mut frame_b = GradedOp::zero(2);
    let mut frame_k = GradedOp::zero(3);
    for p in 0..7 {
        if k[p] != 0 {
            let ik = i.mul_ref(&Qi::real(qi(k[p])));
            frame_b = frame_b.add(&c.w_phi[p].to_complex().scale(&ik));
            frame_k = frame_k.sub(&c.v_psi[p].to_complex().scale(&ik));
        }
    }
    let sign = |deg: usize| if deg % 2 == 0 { Qi::one() } else { -Qi::one() };
    let mut out = vec![
        Check::residual("d d = 0", a, &z(d.compose(d))),
        Check::residual("d* d* = 0", a, &z(ds.compose(ds))),
        Check::residual("d* is the adjoint of d", a, &z(ds.sub(&d.adjoint()))),
        Check::residual("L_B d* = d* L_B", a, &z(lb.compose(ds).sub(&ds.compose(lb)))),
        Check::residual("L_K d* = -d* L_K", a, &z(lk.compose(ds).add(&ds.compose(lk)))),
        Check::residual("[Laplacian, L_B] = 0", a, &z(lap.commutator(lb))),
        Check::residual("[Laplacian, L_K] = 0", a, &z(lap.commutator(lk))),
        Check::residual("L_B L_K = 0", a, &z(lb.compose(lk))),
        Check::residual("L_K L_B = 0", a, &z(lk.compose(lb))),
        Check::residual("L_K L_K = 0", a, &z(lk.compose(lk))),
        Check::residual("d L_B = L_B d", a, &z(d.commutator(lb))),
        Check::residual("d L_K = -L_K d", a, &z(d.anticommutator(lk))),
        Check::residual("L_B = (ep-|phi)^(i k_p .)", a, &z(lb.sub(&frame_b))),
        Check::residual("L_K = -(ep-|psi)^(i k_p .)", a, &z(lk.sub(&frame_k))),
        Check::residual("L_B = -d*(phi^.) - phi^d*", a, &z(lb.add(&ds.compose(&phiw)).add(&phiw.compose(ds)))),
        Check::residual("L_K = d*(psi^.) - psi^d*", a, &z(lk.sub(&ds.compose(&psiw)).add(&psiw.compose(ds)))),
        Check::residual("L_B* = -*L_B*", a, &z(t.lie_b_star.add(&lb.star_conjugate()))),
        Check::residual("L_K* = (-1)^k *L_K*", a, &z(lk.adjoint().sub(&lk.star_conjugate().scale_by_degree(sign)))),
        Check::residual("iota_B* = (-1)^k *iota_B*", a, &z(t.iota_b.adjoint().sub(&t.iota_b.star_conjugate().scale_by_degree(sign)))),
        Check::residual("iota_K* = -*iota_K*", a, &z(t.iota_k.adjoint().add(&t.iota_k.star_conjugate()))),
        Check::residual("d* = (-1)^k *d*", a, &z(ds.sub(&d.star_conjugate().scale_by_degree(sign)))),
    ];
    if k.iter().all(|&x| x == 0) {
        out.push(Check::residual("L_B = L_K = 0 on harmonic forms", a, &z(lb.clone()).max(z(lk.clone()))));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct SymbolRank {
    pub k: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub injective: bool,
    pub surjective: bool,
}

/// Ranks of `ω ↦ (ξ⌟φ)∧ω : Ω^{k−2} → Ω^k` for `k = 0..9`.
pub fn symbol_ranks(xi: &Vector<Q>) -> Vec<SymbolRank> {
    assert!(!xi.is_zero(), "symbol needs a nonzero covector");
    let s = standard_g2().phi.interior(xi);
    (0..=9usize)
        .map(|k| {
            let src = k.checked_sub(2).filter(|&x| x <= 7);
            let source_dim = src.map_or(0, dim);
            let target_dim = dim(k);
            let rank = match src {
                Some(sd) if k <= 7 => linear_map_matrix(sd, k, |w: &Form<Q>| s.wedge(w)).rank(),
                _ => 0,
            };
            SymbolRank { k, source_dim, target_dim, rank, injective: rank == source_dim, surjective: rank == target_dim }
        })
        .collect()
}

pub fn verify_symbol_regularity(xi: &Vector<Q>) -> Vec<Check> {
    symbol_ranks(xi)
        .into_iter()
        .map(|r| {
            let (what, ok) = if r.k <= 4 { ("injective", r.injective) } else { ("surjective", r.surjective) };
            Check::new(
                format!("symbol k={} {what}", r.k),
                "symbol-regularity",
                ok,
                format!("rank {} from dim {} to dim {}", r.rank, r.source_dim, r.target_dim),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const M: Mode = [1, -2, 0, 3, 1, 0, 2];

    #[test]
    fn d_figure_at_one_mode() {
        let t = build_mode_table(M);
        for c in verify_figure(&t, FigureOp::D) {
            assert!(c.pass, "{c:?}");
        }
        for c in verify_vanishing_d(&t) {
            assert!(c.pass, "{c:?}");
        }
    }

    #[test]
    fn relations_at_one_mode() {
        for c in verify_relations(M) {
            assert!(c.pass, "{c:?}");
        }
    }

    #[test]
    fn lie_figures_at_one_mode() {
        let t = build_mode_table(M);
        for op in [FigureOp::LieB, FigureOp::LieK] {
            for c in verify_figure(&t, op) {
                assert!(c.pass, "{c:?}");
            }
        }
    }

    #[test]
    fn commutation_at_one_mode() {
        for c in verify_commutation(M).into_iter().chain(verify_commutation([0; 7])) {
            assert!(c.pass, "{c:?}");
        }
    }

    #[test]
    fn kernels() {
        let r = verify_kernel_theorem(M);
        assert!(r.checks.iter().all(|c| c.pass), "{:?}", r.checks);
        assert_eq!(r.dims.harmonic, 0);
        let z = verify_kernel_theorem([0; 7]);
        assert_eq!(z.dims.ker_d77, 7);
        assert_eq!(z.dims.harmonic, 7);
    }

    #[test]
    fn symbol() {
        let xi = Vector::basis(2);
        let r = symbol_ranks(&xi);
        assert_eq!(r[2].rank, 1);
        assert_eq!(r[3].rank, 7);
        assert_eq!(r[7].rank, 1);
        assert_eq!(r[9].rank, 0);
        assert!(verify_symbol_regularity(&xi).iter().all(|c| c.pass));
    }
}
