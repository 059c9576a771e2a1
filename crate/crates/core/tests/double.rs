use ribbonforge::double::{
    build_double, drinfeld_u, r13_r12, r13_r23, r_inverse, r_matrix, r_matrix_closed_form, u_closed_form,
    verify_dual_basis_formula, verify_quasitriangular, Double, DEFAULT_BUDGET,
};
use ribbonforge::hopf::actions::{act_right, hit_dual_right, pairing};
use ribbonforge::hopf::{verify_hopf_axioms, Depth, HopfError};
use ribbonforge::radford::{build_dual, build_radford, build_taft};

fn double(m: u32, n: u32) -> Double {
    let fam = build_radford(m, n).unwrap();
    let fd = build_dual(&fam).unwrap();
    build_double(&fam, &fd, DEFAULT_BUDGET).unwrap()
}

#[test]
fn double_passes_full_axioms_small() {
    for (m, n) in [(2, 1), (3, 1), (2, 2)] {
        let dd = double(m, n);
        assert_eq!(dd.d.dim(), (m * n * n * m * n * n) as usize);
        let report = verify_hopf_axioms(&dd.d, Depth::Full).unwrap();
        assert!(report.passed(), "{report:?}");
    }
    let fam = build_taft(2).unwrap();
    let fd = build_dual(&fam).unwrap();
    let dd = build_double(&fam, &fd, DEFAULT_BUDGET).unwrap();
    assert!(verify_hopf_axioms(&dd.d, Depth::Full).unwrap().passed());
}

#[test]
fn double_passes_generator_axioms() {
    let dd = double(2, 3);
    let report = verify_hopf_axioms(&dd.d, Depth::Generators).unwrap();
    assert!(report.passed(), "{report:?}");
}

#[test]
fn budget_is_enforced() {
    let fam = build_radford(2, 3).unwrap();
    let fd = build_dual(&fam).unwrap();
    let err = build_double(&fam, &fd, 100).unwrap_err();
    assert_eq!(err, HopfError::Budget { dim: 324, budget: 100 });
}

#[test]
fn unit_counit_and_straightening() {
    let dd = double(2, 3);
    let fam = &dd.family;
    let dbl = &dd.d;
    assert_eq!(dbl.one(), dd.bowtie(&dd.dual.dual.one(), &fam.h.one()).unwrap());
    // ε(f⋈a) = ε(a) f(1)
    for p in 0..fam.h.dim() {
        for a in 0..fam.h.dim() {
            let f = dd.dual.dual.basis(p);
            let b = fam.h.basis(a);
            let expected = &fam.h.counit(&b).unwrap() * &pairing(&fam.h, &dd.dual.dual, &f, &fam.h.one()).unwrap();
            assert_eq!(dbl.counit(&dbl.basis(dd.index(p, a))).unwrap(), expected);
        }
    }
    let eg = dd.embed_base(&fam.g_pow(1)).unwrap();
    let a1 = dd.embed_dual(&dd.dual.alpha).unwrap();
    assert_eq!(dbl.multiply(&eg, &a1).unwrap(), dd.alpha_g(1, 1));
}

#[test]
fn factor_embeddings_are_algebra_maps() {
    let dd = double(2, 2);
    let fam = &dd.family;
    let h = &fam.h;
    let dual = &dd.dual.dual;
    for a in 0..h.dim() {
        for b in 0..h.dim() {
            let lhs = dd.d.multiply(&dd.embed_base(&h.basis(a)).unwrap(), &dd.embed_base(&h.basis(b)).unwrap()).unwrap();
            assert_eq!(lhs, dd.embed_base(&h.multiply(&h.basis(a), &h.basis(b)).unwrap()).unwrap());
            let lhs = dd.d.multiply(&dd.embed_dual(&dual.basis(a)).unwrap(), &dd.embed_dual(&dual.basis(b)).unwrap()).unwrap();
            assert_eq!(lhs, dd.embed_dual(&dual.multiply(&dual.basis(a), &dual.basis(b)).unwrap()).unwrap());
            // f⋈a = (f⋈1)(ε⋈a)
            let lhs = dd.d.multiply(&dd.embed_dual(&dual.basis(a)).unwrap(), &dd.embed_base(&h.basis(b)).unwrap()).unwrap();
            assert_eq!(lhs, dd.d.basis(dd.index(a, b)));
        }
    }
}

/// Closed form `S(f⋈a) = Σ (S(f_2) ↼ a_1) ⋈ (S(a_2) ↼ S(f_1))`, with `Δ` of `H*` on `f`
/// and the antipode of `(H*)^cop`.
#[test]
fn antipode_closed_form_agrees() {
    for (m, n) in [(2, 2), (2, 3)] {
        let dd = double(m, n);
        let h = &dd.family.h;
        let cop = &dd.dual.cop;
        let dual = &dd.dual.dual;
        let s_cop = |k: usize| dual.adopt(&cop.antipode(&cop.basis(k)).unwrap());
        for p in 0..h.dim() {
            for a in 0..h.dim() {
                let df = dual.comultiply(&dual.basis(p)).unwrap();
                let da = h.comultiply(&h.basis(a)).unwrap();
                let mut total = dd.d.zero();
                for (kf, cf) in df.iter() {
                    for (ka, ca) in da.iter() {
                        let a1 = h.basis(ka[0]);
                        let s_a2 = h.antipode(&h.basis(ka[1])).unwrap();
                        let left = hit_dual_right(h, dual, &s_cop(kf[1]), &a1).unwrap();
                        let right = act_right(h, dual, &s_a2, &s_cop(kf[0])).unwrap();
                        total = &total + &dd.bowtie(&left, &right).unwrap().scale(&(cf * ca));
                    }
                }
                let e = dd.d.basis(dd.index(p, a));
                assert_eq!(dd.d.antipode(&e).unwrap(), total, "basis {p},{a}");
            }
        }
    }
}

#[test]
fn r_matrix_shape_and_closed_form() {
    let dd = double(2, 3);
    let r = r_matrix(&dd);
    // 18 rank-one summands; ε = Σ ḡ^i has 6 coordinates
    assert_eq!(r.len(), 18 * 6);
    let one = dd.d.one();
    assert_eq!(dd.d.counit_leg(&r, 0).unwrap(), one);
    assert_eq!(dd.d.counit_leg(&r, 1).unwrap(), one);
    assert_eq!(r, r_matrix_closed_form(&dd).unwrap());
    let inv = r_inverse(&dd, &r).unwrap();
    assert_eq!(dd.d.tensor_multiply(&r, &inv).unwrap(), dd.d.tensor(&one, &one).unwrap());
}

/// The shortcut products agree with the literal `R_13 R_23` and `R_13 R_12`.
#[test]
fn leg_embeddings_agree_with_shortcuts() {
    let dd = double(2, 1);
    let dbl = &dd.d;
    let r = r_matrix(&dd);
    let one = dbl.one();
    let r12 = r.embed((0, 1), &one);
    let r13 = r.embed((0, 2), &one);
    let r23 = r.embed((1, 2), &one);
    assert_eq!(dbl.tensor_multiply(&r13, &r23).unwrap(), r13_r23(dbl, &r));
    assert_eq!(dbl.tensor_multiply(&r13, &r12).unwrap(), r13_r12(dbl, &r));
}

#[test]
fn quasitriangular_small_and_medium() {
    for (m, n) in [(2, 1), (2, 2)] {
        let dd = double(m, n);
        let r = r_matrix(&dd);
        let report = verify_quasitriangular(&dd, &r, Depth::Full).unwrap();
        assert!(report.passed(), "{report:?}");
    }
    let dd = double(2, 3);
    let r = r_matrix(&dd);
    let report = verify_quasitriangular(&dd, &r, Depth::Generators).unwrap();
    assert!(report.passed(), "{report:?}");
}

#[test]
fn quasitriangular_fails_for_flipped_r() {
    let dd = double(2, 2);
    let r = r_matrix(&dd);
    let report = verify_quasitriangular(&dd, &r.flip(), Depth::Generators).unwrap();
    assert!(!report.passed());
}

#[test]
fn dual_basis_formula() {
    for (m, n) in [(2, 3), (3, 2), (2, 1)] {
        let fam = build_radford(m, n).unwrap();
        let fd = build_dual(&fam).unwrap();
        assert!(verify_dual_basis_formula(&fam, &fd).unwrap().passed());
    }
    let fam = build_radford(2, 3).unwrap();
    let fd = build_dual(&fam).unwrap();
    let ctx = fam.ctx;
    let y00 = (0..6).fold(fd.dual.zero(), |acc, k| &acc + &fd.alpha_pow(k, &fam)).scale(&ctx.rational(1, 6));
    assert_eq!(y00, fd.dual.basis(0));
    let total = (0..6)
        .map(|i| {
            (0..6).fold(fd.dual.zero(), |acc, k| &acc + &fd.alpha_pow(k, &fam).scale(&ctx.root_power(-i * k)))
        })
        .fold(fd.dual.zero(), |acc, y| &acc + &y)
        .scale(&ctx.rational(1, 6));
    assert_eq!(total, fd.dual.one());
}

#[test]
fn drinfeld_element() {
    let dd = double(2, 3);
    let r = r_matrix(&dd);
    let du = drinfeld_u(&dd, &r).unwrap();
    assert!(du.report.passed());
    assert_eq!(du.u, u_closed_form(&dd).unwrap());
    let dbl = &dd.d;
    let su = dbl.antipode(&du.u).unwrap();
    assert_eq!(dbl.multiply(&du.u, &su).unwrap(), dbl.multiply(&su, &du.u).unwrap());
    assert!(dbl.counit(&du.u).unwrap().is_one());
    for (m, n) in [(2, 1), (2, 2), (3, 2)] {
        let dd = double(m, n);
        let r = r_matrix(&dd);
        let du = drinfeld_u(&dd, &r).unwrap();
        assert_eq!(du.u, u_closed_form(&dd).unwrap());
    }
}
