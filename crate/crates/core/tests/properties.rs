use g2calc::g2_decomp::projectors;
use g2calc::g2_linear::{binom, standard_g2, Form, Vector};
use g2calc::massey_dga::examples::builtin_model;
use g2calc::massey_dga::parse::parse_element;
use g2calc::massey_dga::{kunneth_betti, massey_triple, massey_triple_perturbed, tensor_product, Dga};
use g2calc::scalar::{q, qi, Q};
use g2calc::torus_spectral::truncation::symmetry_group;
use g2calc::torus_spectral::{mode_cohomology, verify_relations, Mode};
use g2calc::TypeLabel;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rational() -> impl Strategy<Value = Q> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| q(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Q> {
    rational().prop_filter("nonzero", |x| *x != qi(0))
}

fn form(k: usize) -> impl Strategy<Value = Form<Q>> {
    proptest::collection::vec(rational(), binom(7, k)).prop_map(move |c| Form::from_coeffs(k, c))
}

fn vector() -> impl Strategy<Value = Vector<Q>> {
    proptest::collection::vec(rational(), 7).prop_map(|v| Vector::from_slice(&v))
}

fn small_mode() -> impl Strategy<Value = Mode> {
    proptest::array::uniform7(-2i64..=2).prop_filter("nonzero", |k| k.iter().any(|&x| x != 0))
}

/// Two-step nilpotent algebra: `[x_i, x_j] = Σ c z_k`, with `z` central.
fn two_step(a: usize, b: usize, coefs: &[Q]) -> Dga {
    let mut names: Vec<String> = (1..=a).map(|i| format!("x{i}")).collect();
    names.extend((1..=b).map(|i| format!("z{i}")));
    let mut brackets = Vec::new();
    let mut it = coefs.iter().cycle();
    for i in 0..a {
        for j in i + 1..a {
            let rhs: Vec<(Q, usize)> = (0..b).map(|k| (it.next().unwrap().clone(), a + k)).filter(|(c, _)| *c != qi(0)).collect();
            brackets.push((i, j, rhs));
        }
    }
    Dga::chevalley_eilenberg(names, &brackets).expect("two-step nilpotent algebras satisfy Jacobi")
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn star_is_an_involution(k in 0usize..=7, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = g2calc::g2_linear::random_form(&mut rng, k);
        prop_assert_eq!(a.star().star(), a);
    }

    #[test]
    fn wedge_with_star_is_inner_product(a in form(3), b in form(3)) {
        let vol = Form::<Q>::basis_form(0b111_1111);
        prop_assert_eq!(a.wedge(&b.star()), vol.scale(&a.inner(&b)));
    }

    #[test]
    fn wedge_is_graded_commutative(a in form(2), b in form(3)) {
        prop_assert_eq!(a.wedge(&b), b.wedge(&a));
        prop_assert!(b.wedge(&b).is_zero());
    }

    #[test]
    fn interior_is_an_antiderivation(x in vector(), a in form(2), b in form(3)) {
        let lhs = a.wedge(&b).interior(&x);
        let rhs = a.interior(&x).wedge(&b).add(&a.wedge(&b.interior(&x)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn wedge_star_identities_for_any_vector(x in vector()) {
        for (name, r) in standard_g2().wedge_star_residuals(&x) {
            prop_assert_eq!(r, qi(0), "{}", name);
        }
    }

    #[test]
    fn type_projections_split_every_form(k in 0usize..=7, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = g2calc::g2_linear::random_form(&mut rng, k);
        let p = projectors();
        let mut sum = Form::zero(k);
        for lab in TypeLabel::in_degree(k) {
            let c = p.project(lab, &a).unwrap();
            prop_assert_eq!(p.project(lab, &c).unwrap(), c.clone());
            sum = sum.add(&c);
        }
        prop_assert_eq!(sum, a);
    }

    #[test]
    fn two_step_nilpotent_models_are_poincare_dual(a in 2usize..=4, b in 1usize..=3, coefs in proptest::collection::vec(rational(), 1..12)) {
        let dga = two_step(a, b, &coefs);
        prop_assert!(dga.axiom_failures().is_empty());
        let bt = dga.betti();
        let n = a + b;
        for p in 0..=n {
            prop_assert_eq!(bt[p], bt[n - p]);
        }
        let euler: i64 = bt.iter().enumerate().map(|(p, &x)| if p % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
        prop_assert_eq!(euler, 0);
        prop_assert_eq!(bt[0], 1);
    }

    #[test]
    fn triangular_differentials_square_to_zero_or_are_rejected(coefs in proptest::collection::vec(rational(), 10)) {
        // d e_k lies in the span of e_i e_j with i < j < k
        let names: Vec<String> = (1..=5).map(|i| format!("e{i}")).collect();
        let mut it = coefs.iter();
        let gen_d = (0..5)
            .map(|k| {
                let mut t = Vec::new();
                for i in 0..k {
                    for j in i + 1..k {
                        if let Some(c) = it.next() {
                            t.push((c.clone(), vec![i, j]));
                        }
                    }
                }
                t
            })
            .collect();
        if let Ok(dga) = Dga::new(names, gen_d) {
            prop_assert!(dga.axiom_failures().is_empty());
        }
    }

    #[test]
    fn tensor_product_betti_is_kunneth(a in 2usize..=3, coefs in proptest::collection::vec(rational(), 1..4)) {
        let x = two_step(a, 1, &coefs);
        let t = builtin_model("torus3").unwrap();
        prop_assert_eq!(tensor_product(&x, &t).betti(), kunneth_betti(&x.betti(), &t.betti()));
    }

    #[test]
    fn rendered_elements_parse_back(coefs in proptest::collection::vec(rational(), 3)) {
        let w = builtin_model("iwasawa").unwrap();
        let e = g2calc::massey_dga::Element { degree: 2, coeffs: coefs };
        prop_assert_eq!(parse_element(&w, &w.render(&e), 2).unwrap(), e);
    }

    #[test]
    fn massey_verdict_survives_rescaling_and_primitive_shifts(s1 in nonzero_rational(), s2 in nonzero_rational(), s3 in nonzero_rational(), seed in any::<u64>()) {
        let w = builtin_model("iwasawa").unwrap();
        let (e1, e2) = (w.generator("e1").unwrap(), w.generator("e2").unwrap());
        let (a, b, c) = (e1.scale(&s1), e2.scale(&s2), e2.scale(&s3));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert!(!massey_triple(&w, &a, &b, &c).unwrap().vanishes);
        prop_assert!(!massey_triple_perturbed(&w, &a, &b, &c, &mut rng).unwrap().vanishes);
        let t = builtin_model("torus3").unwrap();
        let x = t.generator("e1").unwrap().scale(&s1);
        prop_assert!(massey_triple_perturbed(&t, &x, &x, &x, &mut rng).unwrap().vanishes);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 6, ..ProptestConfig::default() })]

    #[test]
    fn per_mode_relations_hold(k in small_mode()) {
        for c in verify_relations(k) {
            prop_assert!(c.pass, "{} at {:?}: {}", c.name, k, c.detail);
        }
    }

    #[test]
    fn mode_cohomology_is_scale_and_symmetry_invariant(k in small_mode(), g in 0usize..1344) {
        let base = mode_cohomology(k);
        let doubled: Mode = k.map(|x| 2 * x);
        let moved = symmetry_group()[g].act(&k);
        let neg: Mode = k.map(|x| -x);
        for other in [doubled, moved, neg] {
            let s = mode_cohomology(other);
            prop_assert_eq!(s.h_phi(), base.h_phi());
            prop_assert_eq!(s.h_psi(), base.h_psi());
        }
        prop_assert_eq!(base.h_phi(), vec![0, 0, 0, 14, 14, 0, 0, 0]);
    }
}
