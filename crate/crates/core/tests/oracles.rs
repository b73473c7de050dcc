//! Frozen reference values computed once by exact arithmetic. A change in any
//! of these is a behaviour change, not noise.

use g2calc::figures::FigureOp;
use g2calc::graded::Probe;
use g2calc::massey_dga::examples::builtin_model;
use g2calc::massey_dga::massey_triple;
use g2calc::scalar::{q, Qi};
use g2calc::torus_spectral::verify::probe_in_table;
use g2calc::torus_spectral::{build_mode_table, mode_cohomology, symbol_ranks, truncation_series, verify_kernel_theorem};
use g2calc::{TypeLabel, Vector};

#[test]
fn truncation_one_totals() {
    let s = truncation_series(1);
    let t = &s[0];
    assert_eq!((t.mode_pairs, t.orbits), (1094, 10));
    assert_eq!(t.h_phi(), vec![1, 7, 21, 15337, 15337, 21, 7, 1]);
    assert_eq!(t.h_psi(), vec![1, 7, 9858, 29546, 29546, 9858, 7, 1]);
    assert_eq!(t.de_rham(), vec![1, 7, 21, 35, 35, 21, 7, 1]);
}

#[test]
fn per_mode_subspace_dimensions() {
    let dims = [(0, 0, 0, 0), (0, 0, 0, 0), (0, 0, 9, 0), (14, 0, 28, 1), (28, 14, 34, 7), (20, 20, 21, 12), (7, 7, 7, 7), (1, 1, 1, 1)];
    for k in [[1, 0, 0, 0, 0, 0, 0], [1, -2, 0, 3, 1, 0, 2]] {
        let s = mode_cohomology(k);
        let got: Vec<_> = s.degrees.iter().map(|d| (d.ker_lb, d.im_lb_cap_ker_lb, d.ker_lk, d.im_lk)).collect();
        assert_eq!(got, dims, "{k:?}");
        assert_eq!(s.h_psi(), vec![0, 0, 9, 27, 27, 9, 0, 0]);
    }
}

#[test]
fn one_form_kernel_dimensions() {
    let d = verify_kernel_theorem([1, -2, 0, 3, 1, 0, 2]).dims;
    assert_eq!((d.ker_d71, d.ker_d77, d.ker_d714, d.ker_d727, d.harmonic), (6, 1, 1, 0, 0));
    let z = verify_kernel_theorem([0; 7]).dims;
    assert_eq!((z.ker_d71, z.ker_d77, z.harmonic), (7, 7, 7));
}

#[test]
fn symbol_rank_table() {
    let r: Vec<usize> = symbol_ranks(&Vector::basis(0)).iter().map(|s| s.rank).collect();
    assert_eq!(r, vec![0, 0, 1, 7, 21, 21, 7, 1, 0, 0]);
}

#[test]
fn selected_component_constants() {
    let t = build_mode_table([2, 1, 0, -1, 0, 3, 1]);
    let probe = |op, a: (usize, usize), b: (usize, usize)| probe_in_table(&t, op, TypeLabel::of(a.0, a.1), TypeLabel::of(b.0, b.1)).unwrap();
    let s = |n, d| Probe::Scalar(Qi::real(q(n, d)));
    assert_eq!(probe(FigureOp::D, (3, 7), (4, 1)), s(4, 3));
    assert_eq!(probe(FigureOp::D, (2, 7), (3, 7)), s(-3, 2));
    assert_eq!(probe(FigureOp::D, (6, 7), (7, 1)), s(7, 3));
    assert_eq!(probe(FigureOp::LieK, (4, 7), (7, 1)), s(-28, 3));
    assert_eq!(probe(FigureOp::D, (2, 14), (3, 1)), Probe::Zero);
}

#[test]
fn massey_models() {
    let w = builtin_model("iwasawa").unwrap();
    let m = massey_triple(&w, &w.generator("e1").unwrap(), &w.generator("e2").unwrap(), &w.generator("e2").unwrap()).unwrap();
    assert_eq!(m.representative, "e2^e3");
    // H^1.H^1 is spanned by e1^e2, itself exact
    assert_eq!(m.indeterminacy_dim, 1);
    assert!(!m.vanishes);
    assert_eq!(builtin_model("iwasawa-product").unwrap().betti(), vec![1, 6, 16, 25, 25, 16, 6, 1]);
    assert_eq!(builtin_model("torus3").unwrap().betti(), vec![1, 3, 3, 1]);
}
