use std::collections::BTreeMap;

use proptest::prelude::*;
use ribbonforge::hopf::actions::{act_left, act_right, pairing};
use ribbonforge::hopf::integrals::{dual_right_integral, left_integrals, right_integrals};
use ribbonforge::hopf::{
    coopposite, distinguished_grouplike, distinguished_grouplike_dual, dual_hopf, grouplike_set,
    verify_hopf_axioms, Depth, Element, HopfAlgebra, HopfError,
};
use ribbonforge::qcalc::q_binomial;
use ribbonforge::radford::{
    build_dual, build_radford, build_taft, verify_dual_structure, Family, WordBasis,
};
use ribbonforge::Cyc;

/// Independent normal-form oracle: `x^j g^k = q^{jk} g^k x^j`, then `x^n = g^n − 1` applied
/// until every exponent of `x` is below `n`.
fn oracle_monomial(fam: &Family, i: i64, j: u32, k: i64, l: u32) -> BTreeMap<(usize, u32), Cyc> {
    let ctx = fam.ctx;
    let order = fam.group_order() as i64;
    let mut out: BTreeMap<(usize, u32), Cyc> = BTreeMap::new();
    // pending words c · g^a x^b
    let mut pending = vec![(ctx.root_power(fam.m as i64 * j as i64 * k), i + k, j + l)];
    while let Some((c, a, b)) = pending.pop() {
        if b < fam.n {
            let e = out.entry((a.rem_euclid(order) as usize, b)).or_insert_with(|| ctx.zero());
            *e += &c;
        } else {
            pending.push((c.clone(), a + fam.n as i64, b - fam.n));
            pending.push((-&c, a, b - fam.n));
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn to_element(fam: &Family, m: &BTreeMap<(usize, u32), Cyc>) -> Element {
    fam.h.element_from_terms(m.iter().map(|(&(i, j), c)| (fam.index(i, j as usize), c.clone())))
}

fn gx(fam: &Family, i: i64, j: usize) -> Element {
    fam.h.basis(fam.index(i.rem_euclid(fam.group_order() as i64) as usize, j))
}

#[test]
fn dimensions_match_mn_squared() {
    for (m, n) in [(2, 1), (3, 1), (2, 2), (3, 2), (2, 3), (4, 2)] {
        let fam = build_radford(m, n).unwrap();
        assert_eq!(fam.h.dim(), (m * n * n) as usize);
        assert!(fam.axioms.passed());
    }
    for n in 2..=4 {
        assert_eq!(build_taft(n).unwrap().h.dim(), (n * n) as usize);
    }
}

#[test]
fn parameters_are_rejected() {
    assert!(matches!(build_radford(1, 3), Err(HopfError::Invalid(_))));
    assert!(matches!(build_radford(2, 0), Err(HopfError::Invalid(_))));
    assert!(matches!(build_taft(1), Err(HopfError::Invalid(_))));
}

#[test]
fn x_g_commutation() {
    let fam = build_radford(2, 3).unwrap();
    let h = &fam.h;
    let xg = h.multiply(&fam.x(), &fam.g_pow(1)).unwrap();
    assert_eq!(xg, gx(&fam, 1, 1).scale(&fam.q));
}

#[test]
fn product_matches_rewriting_oracle() {
    let fam = build_radford(2, 3).unwrap();
    let h = &fam.h;
    let got = h.multiply(&gx(&fam, 2, 2), &gx(&fam, 3, 2)).unwrap();
    let expected = to_element(&fam, &oracle_monomial(&fam, 2, 2, 3, 2));
    assert_eq!(got, expected);
    // x^4 = (g^3 − 1) x and q^6 = 1
    assert_eq!(got, &gx(&fam, 2, 1) - &gx(&fam, 5, 1));
    for (m, n) in [(2, 2), (3, 2), (2, 3), (3, 1)] {
        let fam = build_radford(m, n).unwrap();
        let order = fam.group_order() as i64;
        for i in 0..order {
            for j in 0..n {
                for k in 0..order {
                    for l in 0..n {
                        let got = fam.h.multiply(&gx(&fam, i, j as usize), &gx(&fam, k, l as usize)).unwrap();
                        assert_eq!(got, to_element(&fam, &oracle_monomial(&fam, i, j, k, l)));
                    }
                }
            }
        }
    }
}

#[test]
fn coproduct_of_x_powers_is_q_binomial() {
    let fam = build_radford(2, 3).unwrap();
    let h = &fam.h;
    let x2 = gx(&fam, 0, 2);
    let expected = &(&h.tensor(&x2, &fam.g_pow(2)).unwrap()
        + &h.tensor(&fam.x(), &gx(&fam, 1, 1)).unwrap().scale(&(&fam.ctx.one() + &fam.q)))
        + &h.tensor(&h.one(), &x2).unwrap();
    assert_eq!(h.comultiply(&x2).unwrap(), expected);
    // Δ(x^j) = Σ_s binom(j,s)_q x^s ⊗ g^s x^{j−s}
    for (m, n) in [(2, 3), (3, 3), (2, 4)] {
        let fam = build_radford(m, n).unwrap();
        let h = &fam.h;
        for j in 0..n as usize {
            let mut expected = h.tensor(&h.zero(), &h.zero()).unwrap();
            for s in 0..=j {
                let c = q_binomial(&fam.q, j as i64, s as i64).unwrap();
                expected = &expected + &h.tensor(&gx(&fam, 0, s), &gx(&fam, s as i64, j - s)).unwrap().scale(&c);
            }
            assert_eq!(h.comultiply(&gx(&fam, 0, j)).unwrap(), expected);
        }
    }
}

#[test]
fn antipode_squared_scales_x() {
    let fam = build_radford(2, 3).unwrap();
    let h = &fam.h;
    let s2 = h.antipode(&h.antipode(&fam.x()).unwrap()).unwrap();
    assert_eq!(s2, fam.x().scale(&fam.q.inv().unwrap()));
    let e = gx(&fam, 4, 2);
    assert_eq!(h.antipode_inv(&h.antipode(&e).unwrap()).unwrap(), e);
    assert_eq!(h.multiply(&h.one(), &e).unwrap(), e);
}

#[test]
fn g_n_and_x_n_are_central() {
    for (m, n) in [(2, 2), (2, 3), (3, 2)] {
        let fam = build_radford(m, n).unwrap();
        let h = &fam.h;
        let gn = fam.g_pow(n as i64);
        let xn = h.power(&fam.x(), n).unwrap();
        assert_eq!(xn, &gn - &h.one());
        for b in 0..h.dim() {
            assert!(h.commutator(&gn, &h.basis(b)).unwrap().is_zero());
            assert!(h.commutator(&xn, &h.basis(b)).unwrap().is_zero());
        }
    }
}

#[test]
fn n_equal_one_is_group_algebra() {
    let fam = build_radford(3, 1).unwrap();
    let h = &fam.h;
    let x = fam.x();
    assert_eq!(x, &fam.g_pow(1) - &h.one());
    let expected = &h.tensor(&x, &fam.g_pow(1)).unwrap() + &h.tensor(&h.one(), &x).unwrap();
    assert_eq!(h.comultiply(&x).unwrap(), expected);
    for a in 0..3 {
        for b in 0..3 {
            assert_eq!(h.multiply(&h.basis(a), &h.basis(b)).unwrap(), h.basis((a + b) % 3));
        }
    }
}

#[test]
fn duals_and_coopposites_pass_full_axioms() {
    let fam = build_radford(2, 3).unwrap();
    let fd = build_dual(&fam).unwrap();
    assert!(verify_hopf_axioms(&fd.dual, Depth::Full).unwrap().passed());
    assert!(verify_hopf_axioms(&fd.cop, Depth::Full).unwrap().passed());
    assert!(verify_hopf_axioms(&fd.dual, Depth::Generators).unwrap().passed());
    assert!(verify_hopf_axioms(&fam.h, Depth::Generators).unwrap().passed());
}

fn same_structure(a: &HopfAlgebra, b: &HopfAlgebra) -> bool {
    let (sa, sb) = (a.structure(), b.structure());
    let d = a.dim();
    d == b.dim()
        && (0..d).all(|i| (0..d).all(|j| sa.product(i, j) == sb.product(i, j)))
        && (0..d).all(|k| {
            sa.coproduct(k) == sb.coproduct(k)
                && sa.antipode(k) == sb.antipode(k)
                && sa.antipode_inverse(k) == sb.antipode_inverse(k)
        })
        && a.counit_vector() == b.counit_vector()
        && a.unit_terms() == b.unit_terms()
}

#[test]
fn dual_and_cop_are_involutions() {
    let fam = build_radford(2, 2).unwrap();
    assert!(same_structure(&dual_hopf(&dual_hopf(&fam.h)), &fam.h));
    assert!(same_structure(&coopposite(&coopposite(&fam.h)), &fam.h));
    assert!(!same_structure(&coopposite(&fam.h), &fam.h));
}

#[test]
fn dual_counit_is_evaluation_at_one() {
    let fam = build_radford(2, 3).unwrap();
    let dual = dual_hopf(&fam.h);
    for p in 0..dual.dim() {
        let e = dual.basis(p);
        assert_eq!(dual.counit(&e).unwrap(), pairing(&fam.h, &dual, &e, &fam.h.one()).unwrap());
    }
}

#[test]
fn dual_products_examples() {
    let fam = build_radford(2, 3).unwrap();
    let dual = dual_hopf(&fam.h);
    let b = |i: usize, j: usize| dual.basis(fam.index(i, j));
    let got = dual.multiply(&b(1, 1), &b(2, 1)).unwrap();
    assert_eq!(got, b(1, 2).scale(&(&fam.ctx.one() + &fam.q)));
    assert!(dual.multiply(&b(0, 1), &b(0, 1)).unwrap().is_zero());
}

/// Convolution computed from the definition `(p ∗ p')(y) = Σ p(y_1) p'(y_2)`.
#[test]
fn dual_product_is_convolution() {
    let fam = build_radford(3, 2).unwrap();
    let dual = dual_hopf(&fam.h);
    let h = &fam.h;
    for a in 0..dual.dim() {
        for b in 0..dual.dim() {
            let prod = dual.multiply(&dual.basis(a), &dual.basis(b)).unwrap();
            for y in 0..h.dim() {
                let d = h.comultiply(&h.basis(y)).unwrap();
                let value = d.coeff([a, b, 0]);
                assert_eq!(prod.coeff(y), value);
            }
        }
    }
}

#[test]
fn corrupted_structure_fails_associativity() {
    let fam = build_radford(2, 2).unwrap();
    let ctx = fam.ctx;
    let bad = fam.h.with_perturbed_product(1, 2, 3, ctx.integer(5));
    let report = verify_hopf_axioms(&bad, Depth::Full).unwrap();
    assert!(!report.passed());
    assert!(!report.check("associativity").unwrap().passed);
    assert!(report.check("associativity").unwrap().counterexample.is_some());
}

#[test]
fn full_depth_refused_above_bound() {
    let fam = build_radford(2, 2).unwrap();
    let err = ribbonforge::hopf::verify::verify_hopf_axioms_bounded(&fam.h, Depth::Full, 4).unwrap_err();
    assert_eq!(err, HopfError::Budget { dim: 8, budget: 4 });
}

#[test]
fn mixed_algebra_operands_rejected() {
    let a = build_radford(2, 2).unwrap();
    let b = build_radford(2, 2).unwrap();
    let err = a.h.multiply(&a.h.one(), &b.h.one()).unwrap_err();
    assert!(matches!(err, HopfError::ForeignElement { .. }));
    let fd = build_dual(&a).unwrap();
    assert!(act_left(&b.h, &fd.dual, &fd.alpha, &b.h.one()).is_err());
}

#[test]
fn harpoon_actions() {
    let fam = build_radford(2, 3).unwrap();
    let fd = build_dual(&fam).unwrap();
    let h = &fam.h;
    let eps = fd.dual.one();
    for b in 0..h.dim() {
        let e = h.basis(b);
        assert_eq!(act_left(h, &fd.dual, &eps, &e).unwrap(), e);
        assert_eq!(act_right(h, &fd.dual, &e, &eps).unwrap(), e);
    }
    let am = fd.alpha_pow(2, &fam);
    assert_eq!(act_left(h, &fd.dual, &am, &fam.x()).unwrap(), fam.x().scale(&fam.q));
    for chi in fd.grouplike_candidates(&fam).iter().chain([&fd.alpha]) {
        let g = fam.g_pow(1);
        let value = pairing(h, &fd.dual, chi, &g).unwrap();
        assert_eq!(act_left(h, &fd.dual, chi, &g).unwrap(), g.scale(&value));
    }
    assert_eq!(pairing(h, &fd.dual, &fd.alpha, &fam.g_pow(1)).unwrap(), fam.xi);
    assert!(pairing(h, &fd.dual, &fd.alpha, &fam.x()).unwrap().is_zero());
}

#[test]
fn alpha_beta_relations() {
    let fam = build_radford(2, 3).unwrap();
    let fd = build_dual(&fam).unwrap();
    let d = &fd.dual;
    let beta = fd.beta.as_ref().unwrap();
    assert!(d.power(beta, 3).unwrap().is_zero());
    assert_eq!(d.multiply(beta, &fd.alpha).unwrap(), d.multiply(&fd.alpha, beta).unwrap().scale(&fam.xi));
    assert_eq!(d.power(&fd.alpha, 6).unwrap(), d.one());
    // β^1 = (1)!_q Σ ḡ^i x
    let expected = d.element_from_terms((0..6).map(|i| (fam.index(i, 1), fam.ctx.one())));
    assert_eq!(*beta, expected);
}

#[test]
fn dual_structure_closed_forms() {
    for (m, n) in [(2, 3), (2, 2), (3, 1), (2, 1)] {
        let fam = build_radford(m, n).unwrap();
        let fd = build_dual(&fam).unwrap();
        let report = verify_dual_structure(&fam, &fd, 400).unwrap();
        assert!(report.passed(), "{:?}", report);
    }
    let fam = build_taft(3).unwrap();
    let fd = build_dual(&fam).unwrap();
    assert!(verify_dual_structure(&fam, &fd, 400).unwrap().passed());
}

#[test]
fn delta_alpha_cross_term_coefficient() {
    let fam = build_radford(2, 3).unwrap();
    let fd = build_dual(&fam).unwrap();
    let words = WordBasis::new(&fam, &fd).unwrap();
    let alpha = fd.cop.adopt(&fd.alpha);
    let coords = words.tensor_coordinates(&fd.cop.comultiply(&alpha).unwrap());
    let ctx = fam.ctx;
    let qt = fam.qtable();
    let expected = &(&ctx.root_power(3) - &ctx.one()) * &(&qt.factorial(1) * &qt.factorial(2)).inv().unwrap();
    assert_eq!(coords[&((3, 2), (1, 1))], expected);
    assert!(coords[&((1, 0), (1, 0))].is_one());
    assert_eq!(coords.len(), 3);
}

#[test]
fn integrals_of_radford_2_3() {
    let fam = build_radford(2, 3).unwrap();
    let fd = build_dual(&fam).unwrap();
    let h = &fam.h;
    let t = left_integrals(h).unwrap();
    let expected = h.element_from_terms((0..6).map(|i| (fam.index(i, 2), fam.ctx.one())));
    assert!(t.ratio_to(&expected).is_some());
    let big_t = right_integrals(&fd.dual).unwrap();
    let mut expected = fd.dual.zero();
    for i in 0..6 {
        expected = &expected + &fd.word(i, 2, &fam).scale(&fam.ctx.root_power(2 * i));
    }
    assert!(big_t.ratio_to(&expected).is_some());
    assert_eq!(dual_right_integral(h, &fd.dual).unwrap(), big_t);
    // S maps left integrals onto right integrals
    let st = h.antipode(&t).unwrap();
    assert!(st.ratio_to(&right_integrals(h).unwrap()).is_some());
}

#[test]
fn distinguished_grouplikes() {
    for (m, n) in [(2, 3), (3, 2), (2, 2)] {
        let fam = build_radford(m, n).unwrap();
        let fd = build_dual(&fam).unwrap();
        let t = left_integrals(&fam.h).unwrap();
        let alpha_tilde = distinguished_grouplike_dual(&fam.h, &fd.dual, &t).unwrap();
        assert_eq!(alpha_tilde, fd.alpha_pow(-(m as i64), &fam));
        let big_t = right_integrals(&fd.dual).unwrap();
        let g_tilde = distinguished_grouplike(&fam.h, &fd.dual, &big_t).unwrap();
        assert_eq!(g_tilde, fam.g_pow(1 - n as i64));
    }
    let fam = build_radford(3, 1).unwrap();
    let fd = build_dual(&fam).unwrap();
    let big_t = right_integrals(&fd.dual).unwrap();
    assert_eq!(distinguished_grouplike(&fam.h, &fd.dual, &big_t).unwrap(), fam.h.one());
    let t = left_integrals(&fam.h).unwrap();
    assert_eq!(distinguished_grouplike_dual(&fam.h, &fd.dual, &t).unwrap(), fd.dual.one());
}

#[test]
fn grouplike_groups() {
    let fam = build_radford(2, 3).unwrap();
    let fd = build_dual(&fam).unwrap();
    let g = grouplike_set(&fam.h, &fam.grouplike_candidates()).unwrap();
    assert_eq!(g.order(), 6);
    assert_eq!(g.elements[g.identity], fam.h.one());
    let gd = grouplike_set(&fd.dual, &fd.grouplike_candidates(&fam)).unwrap();
    assert_eq!(gd.order(), 3);
    // closure from a single generator
    let closed = grouplike_set(&fam.h, &[fam.g_pow(1)]).unwrap();
    assert_eq!(closed.order(), 6);
    assert_eq!(closed.element_order(closed.index_of(&fam.g_pow(2)).unwrap()), 3);
    let err = grouplike_set(&fam.h, &[fam.x()]).unwrap_err();
    assert!(matches!(err, HopfError::NotGrouplike(_)));
}

#[test]
fn text_form_is_stable() {
    let fam = build_radford(2, 2).unwrap();
    let e = &fam.g_pow(1).scale(&fam.ctx.rational(1, 2)) + &fam.x();
    assert_eq!(fam.h.render(&e), "1 * g^0x^1 + 1/2 * g^1x^0");
    assert_eq!(fam.h.render(&fam.h.zero()), "0");
    let c = &fam.ctx.integer(1) + &fam.ctx.root_power(1);
    assert_eq!(fam.h.render(&fam.g_pow(1).scale(&c)), "(1 + 1*z) * g^1x^0");
}

fn element_strategy(dim: usize) -> impl Strategy<Value = Vec<(usize, i64, i64)>> {
    prop::collection::vec((0..dim, -3i64..=3, 0i64..4), 1..4)
}

fn make(fam: &Family, terms: &[(usize, i64, i64)]) -> Element {
    let ctx = fam.ctx;
    fam.h.element_from_terms(terms.iter().map(|&(k, c, e)| (k, &ctx.integer(c) * &ctx.root_power(e))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_elements_respect_hopf_identities(
        a in element_strategy(18), b in element_strategy(18), c in element_strategy(18)
    ) {
        let fam = build_radford(2, 3).unwrap();
        let h = &fam.h;
        let (a, b, c) = (make(&fam, &a), make(&fam, &b), make(&fam, &c));
        let ab = h.multiply(&a, &b).unwrap();
        prop_assert_eq!(h.multiply(&ab, &c).unwrap(), h.multiply(&a, &h.multiply(&b, &c).unwrap()).unwrap());
        let lhs = h.comultiply(&ab).unwrap();
        let rhs = h.tensor_multiply(&h.comultiply(&a).unwrap(), &h.comultiply(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let s_ab = h.antipode(&ab).unwrap();
        let sb_sa = h.multiply(&h.antipode(&b).unwrap(), &h.antipode(&a).unwrap()).unwrap();
        prop_assert_eq!(s_ab, sb_sa);
        let eps = h.counit(&ab).unwrap();
        prop_assert_eq!(eps, &h.counit(&a).unwrap() * &h.counit(&b).unwrap());
        let d = h.comultiply(&a).unwrap();
        let left = h.multiply_legs(&h.antipode_leg(&d, 0).unwrap()).unwrap();
        prop_assert_eq!(left, h.scalar(h.counit(&a).unwrap()));
    }
}
