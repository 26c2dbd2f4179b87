//! Worked values for characters, quadratic forms, the weight <= 2 model and the suites.

use olab_core::characters::{
    case_iii_scan, det_one_minus_vs_discriminant, eigenspace_dim, eigenspace_dims, graded_dims_vl,
    graded_trace, theta_series, twisted_weight_data,
};
use olab_core::code::BinaryCode;
use olab_core::constructions::{
    block_rotation, catalog, construction_b, coset_root_frame, transport, CatalogName,
};
use olab_core::enumerate::{shell_counts, EnumConfig};
use olab_core::isometry::{verify_isometry, Isometry};
use olab_core::lattice::{build_lattice, Coset, Lattice};
use olab_core::matrix::{int, rat, Int, IntMatrix, Rat};
use olab_core::qform::{discriminant_qform, irr_group_model, orthogonal_group_order, QFormGroup};
use olab_core::qseries::QSeries;
use olab_core::report::Status;
use olab_core::shape::shape_order_check;
use olab_core::suite::{run_suite, SuiteConfig, SuiteName};
use olab_core::voa::{
    build_cocycle, build_lift, frame_extension, untwisted_witness, witness_all_lines,
    FrameTriality, LowWeightVector, Symbol,
};

fn cfg() -> EnumConfig {
    EnumConfig::default()
}

fn ints(q: &QSeries, upto: u64) -> Vec<Int> {
    (0..=upto).map(|m| q.int_coeff(m).unwrap()).collect()
}

fn ivec(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| int(x)).collect()
}

fn entry(name: CatalogName) -> (Lattice, Isometry) {
    let e = catalog(name).unwrap();
    (e.lattice, e.fourvolution.unwrap())
}

fn toy() -> Isometry {
    let l = build_lattice(IntMatrix::from_i64(&[&[2, 0], &[0, 2]])).unwrap();
    verify_isometry(&l, &IntMatrix::from_i64(&[&[0, -1], &[1, 0]])).unwrap()
}

#[test]
fn theta_series_examples() {
    let (s, _) = entry(CatalogName::Sqrt2E8);
    let (b, _) = entry(CatalogName::Bw16);
    assert_eq!(
        ints(&theta_series(&s, 2, cfg()).unwrap(), 2),
        ivec(&[1, 0, 240])
    );
    assert_eq!(
        ints(&theta_series(&b, 2, cfg()).unwrap(), 2),
        ivec(&[1, 0, 4320])
    );
    let empty = build_lattice(IntMatrix::zeros(0, 0)).unwrap();
    assert_eq!(
        ints(&theta_series(&empty, 2, cfg()).unwrap(), 2),
        ivec(&[1, 0, 0])
    );
    // two independent code paths
    for l in [&s, &b] {
        let shells = shell_counts(l, 6, cfg()).unwrap();
        let t = theta_series(l, 3, cfg()).unwrap();
        for m in 1..=3u64 {
            assert_eq!(t.int_coeff(m).unwrap(), int(shells[&(2 * m)] as i64));
        }
    }
}

#[test]
fn graded_dimensions() {
    let (s, _) = entry(CatalogName::Sqrt2E8);
    // boson part at q^2 for rank 8: 8 * 9 / 2 ways from two first modes plus 8 second modes
    let boson = 8 * 9 / 2 + 8;
    assert_eq!(boson, 44);
    assert_eq!(
        ints(&graded_dims_vl(&s, 2, cfg()).unwrap(), 2),
        ivec(&[1, 8, 240 + boson])
    );
    let (b, _) = entry(CatalogName::Bw16);
    assert_eq!(
        graded_dims_vl(&b, 2, cfg()).unwrap().int_coeff(1).unwrap(),
        int(16)
    );
    let empty = build_lattice(IntMatrix::zeros(0, 0)).unwrap();
    assert_eq!(
        ints(&graded_dims_vl(&empty, 2, cfg()).unwrap(), 2),
        ivec(&[1, 0, 0])
    );
}

#[test]
fn trace_examples() {
    let (_, g) = entry(CatalogName::Sqrt2E8);
    // (1+q)^-8 (1+q^2)^-8 = 1 - 8q + (36 - 8)q^2 + ...
    assert_eq!(
        ints(&graded_trace(&g, 2, 2, cfg()).unwrap(), 2),
        ivec(&[1, -8, 28])
    );
    // (1+q^2)^-4 = 1 - 4q^2 + ...
    assert_eq!(
        ints(&graded_trace(&g, 1, 2, cfg()).unwrap(), 2),
        ivec(&[1, 0, -4])
    );
    assert_eq!(
        graded_trace(&g, 1, 4, cfg()).unwrap(),
        graded_trace(&g, 3, 4, cfg()).unwrap()
    );
    let (_, bg) = entry(CatalogName::Bw16);
    assert_eq!(
        graded_trace(&bg, 0, 2, cfg())
            .unwrap()
            .int_coeff(0)
            .unwrap(),
        int(1)
    );
}

#[test]
fn eigenspace_examples() {
    let (_, g) = entry(CatalogName::Sqrt2E8);
    assert_eq!(eigenspace_dim(&g, 1, 1, cfg()).unwrap(), int(4));
    assert_eq!(eigenspace_dim(&g, 3, 1, cfg()).unwrap(), int(4));
    let t = eigenspace_dims(&g, 2, cfg()).unwrap();
    assert_eq!(t.dims[2].to_vec(), ivec(&[76, 64, 80, 64]));
    assert_eq!(&t.dims[2][0] + &t.dims[2][2], int(156));
    // Fourier inversion by hand from the traces 284, -4, 28, -4
    assert_eq!((284 - 4 + 28 - 4) / 4, 76);
    assert_eq!((284 + 28) / 2 - 76, 80);
}

#[test]
fn twisted_examples() {
    let (_, b) = entry(CatalogName::Bw16);
    let (_, s) = entry(CatalogName::Sqrt2E8);
    let t = twisted_weight_data(&b, 1).unwrap();
    assert_eq!((t.epsilon.clone(), t.dim_t.clone()), (rat(3, 4), int(1)));
    let t = twisted_weight_data(&s, 2).unwrap();
    assert_eq!(
        (
            t.top_weight.clone(),
            t.weight_one_dim.clone(),
            t.dim_t.clone()
        ),
        (rat(1, 2), int(8), int(1))
    );
    let t = twisted_weight_data(&b, 2).unwrap();
    assert_eq!(
        (
            t.top_weight.clone(),
            t.weight_one_dim.clone(),
            t.dim_t.clone()
        ),
        (rat(1, 1), int(16), int(16))
    );
    // sqrt2 E8 has (1-g)L* outside L, so only s = 2 applies there
    for (g, k) in [(&b, 1), (&b, 2), (&b, 3), (&s, 2)] {
        {
            let t = twisted_weight_data(g, k).unwrap();
            assert_eq!(&t.dim_t * &t.dim_t, t.index);
        }
    }
}

#[test]
fn scans_and_det_reports() {
    assert_eq!(case_iii_scan(64).unwrap(), vec![16]);
    assert!(case_iii_scan(8).unwrap().is_empty());
    assert_eq!(case_iii_scan(16).unwrap(), vec![16]);
    let cases = [
        (entry(CatalogName::Bw16).1, [256, 256, 256]),
        (entry(CatalogName::Sqrt2E8).1, [256, 16, 16]),
        (toy(), [4, 2, 2]),
    ];
    for (g, want) in cases {
        let d = det_one_minus_vs_discriminant(&g).unwrap();
        assert_eq!(
            [
                d.discriminant_order.clone(),
                d.index.clone(),
                d.det_one_minus.clone()
            ],
            [int(want[0]), int(want[1]), int(want[2])]
        );
        assert_eq!(d.all_equal(), want[0] == want[1]);
    }
}

#[test]
fn discriminant_forms() {
    let (s, _) = entry(CatalogName::Sqrt2E8);
    let (b, bg) = entry(CatalogName::Bw16);
    let half = |q: &QFormGroup| {
        q.q_table()
            .iter()
            .all(|v| *v == rat(0, 1) || *v == rat(1, 2))
    };
    let ds = discriminant_qform(&s).unwrap();
    assert_eq!(ds.order(), 256);
    assert!(half(&ds));
    assert_eq!(
        discriminant_qform(&catalog(CatalogName::E8).unwrap().lattice)
            .unwrap()
            .order(),
        1
    );
    let db = discriminant_qform(&b).unwrap();
    assert!(half(&db));
    assert_eq!(db.isotropic_count(), (1 << 7) + (1 << 3));
    let m = irr_group_model(&b, &bg).unwrap();
    assert_eq!(m.product.order(), 1 << 12);
    assert_eq!(m.twisted_residues[0], rat(3, 4));
    assert_eq!(m.f.q(m.f.generator(0)), rat(0, 1));
    assert_eq!(m.f.q(m.f.generator(1)), rat(3, 4));
}

#[test]
fn orthogonal_groups() {
    let (b, bg) = entry(CatalogName::Bw16);
    assert_eq!(
        orthogonal_group_order(&irr_group_model(&b, &bg).unwrap().f).unwrap(),
        4
    );
    assert_eq!(orthogonal_group_order(&QFormGroup::trivial()).unwrap(), 1);
    let zero = QFormGroup::from_table(vec![2, 2], vec![rat(0, 1); 4]).unwrap();
    assert_eq!(orthogonal_group_order(&zero).unwrap(), 6);
}

#[test]
fn shape_examples() {
    let sp6 = int(1451520);
    assert_eq!(sp6, int(1 << 9) * int(3 * 15 * 63));
    for (expr, claimed, value) in [
        ("[2^14]·Sym6", "2^18·3^2·5", int(1 << 14) * int(720)),
        ("2^8·(2^7·Sp6(2))", "2^24·3^4·5·7", int(1 << 15) * &sp6),
        ("[2^15]·(Sp6(2)×2)", "2^25·3^4·5·7", int(1 << 16) * &sp6),
    ] {
        let r = shape_order_check(expr, claimed).unwrap();
        assert!(r.equal, "{}", expr);
        assert_eq!(r.value, value);
    }
    assert!(
        !shape_order_check("[2^14]·Sym6", "2^19·3^2·5")
            .unwrap()
            .equal
    );
}

#[test]
fn cocycle_examples() {
    let fl = construction_b(&BinaryCode::extended_hamming()).unwrap();
    let g = transport(&fl.lattice, &block_rotation(8)).unwrap();
    let t = frame_extension(&fl.lattice, &g, &fl.frame).unwrap().table;
    for a in [
        [1i64, 0, 0, 0, 0, 0, 0, 0],
        [0, 1, 1, 0, 0, 0, 0, 0],
        [1, -1, 0, 2, 0, 0, 1, 0],
    ] {
        for b in [
            [0i64, 0, 1, 0, 0, 0, 0, 0],
            [1, 1, 0, 0, 0, 1, 0, 0],
            [2, 0, 0, 0, -1, 0, 0, 1],
        ] {
            if t.inner(&a, &b) % 2 == 0 {
                assert_eq!(t.eps(&a, &b), t.eps(&b, &a));
            }
        }
    }
    let one = build_cocycle(&IntMatrix::from_i64(&[&[2]])).unwrap();
    assert_eq!(one.eps(&[1], &[1]) * one.eps(&[1], &[1]), 1);
}

#[test]
fn products() {
    // four orthogonal roots of norm 2
    let t = build_cocycle(&IntMatrix::identity(2).scale(&int(2))).unwrap();
    let (a1, a2) = ([1i64, 0], [0i64, 1]);
    let plus = |a: [i64; 2]| t.e(&a).unwrap().add(&t.e(&[-a[0], -a[1]]).unwrap());
    let p = t.neg_one_product(&plus(a1), &plus(a2)).unwrap();
    let mut want = LowWeightVector::zero();
    for s1 in [1, -1] {
        for s2 in [1, -1] {
            let (u, v) = ([s1, 0], [0, s2]);
            want.add_term(Symbol::E(vec![s1, s2]), rat(t.eps(&u, &v), 1));
        }
    }
    assert_eq!(p, want);
    assert_eq!(p.terms().len(), 4);
    assert_eq!(p.weights(&t), vec![2]);
    let (x, y) = ([rat(1, 1), rat(2, 1)], [rat(0, 1), rat(-1, 1)]);
    assert_eq!(
        t.neg_one_product(&t.h1(&x), &t.h1(&y)).unwrap(),
        t.hh(&x, &y)
    );
    // e^a_{-1} e^{-a}: the z^2 coefficient of exp(sum a(-n) z^n / n) is a(-2)/2 + a(-1)^2/2
    let a = [rat(1, 1), rat(0, 1)];
    let half = rat(1, 2);
    let c = rat(t.eps(&a1, &[-1, 0]), 1);
    let want = t
        .h2(&a)
        .scale(&half)
        .add(&t.hh(&a, &a).scale(&half))
        .scale(&c);
    assert_eq!(
        t.neg_one_product(&t.e(&a1).unwrap(), &t.e(&[-1, 0]).unwrap())
            .unwrap(),
        want
    );
    // (a|a) = 4 > 0 kills the product; (a|-a) = -4 would need weight 4
    let far = t.e(&[1, 1]).unwrap();
    assert!(t.neg_one_product(&far, &far).unwrap().is_zero());
    let back = t.e(&[-1, -1]).unwrap();
    assert!(t.neg_one_product(&far, &back).is_err());
}

#[test]
fn lift_examples() {
    let fl = construction_b(&BinaryCode::extended_hamming()).unwrap();
    let g = transport(&fl.lattice, &block_rotation(8)).unwrap();
    let ext = frame_extension(&fl.lattice, &g, &fl.frame).unwrap();
    let t = &ext.table;
    let lift = build_lift(&ext.g, t, 0).unwrap();
    assert_eq!(lift.basis_residual(), 0);
    for a in &ext.lines {
        let alpha: Vec<Rat> = a.iter().map(|&x| rat(x, 1)).collect();
        let ga: Vec<Rat> = lift.apply_vec(a).iter().map(|&x| rat(x, 1)).collect();
        assert_eq!(lift.act(&t.h1(&alpha)).unwrap(), t.h1(&ga));
        let neg: Vec<i64> = a.iter().map(|x| -x).collect();
        let twice = lift.act(&lift.act(&t.e(a).unwrap()).unwrap()).unwrap();
        let e = t.e(&neg).unwrap();
        assert!(twice == e || twice == e.neg());
    }
}

#[test]
fn sigma_examples() {
    let t = build_cocycle(&IntMatrix::identity(2).scale(&int(2))).unwrap();
    let s = FrameTriality::new(&t, vec![vec![1, 0], vec![0, 1]]).unwrap();
    for k in 0..2 {
        let a: Vec<i64> = s.lines()[k].clone();
        let neg: Vec<i64> = a.iter().map(|x| -x).collect();
        assert_eq!(s.signs()[k], t.eps(&a, &neg));
        let pm = t
            .e(&a)
            .unwrap()
            .add(&t.e(&neg).unwrap().scale(&rat(s.signs()[k], 1)));
        assert_eq!(s.sigma(&s.h(k)).unwrap(), pm);
        assert_eq!(s.sigma(&pm).unwrap(), s.h(k));
    }
    for g in s.generators() {
        assert_eq!(s.sigma(&s.sigma(&g).unwrap()).unwrap(), g);
    }
}

#[test]
fn witness_examples() {
    let fl = construction_b(&BinaryCode::extended_hamming()).unwrap();
    let g = transport(&fl.lattice, &block_rotation(8)).unwrap();
    let r = untwisted_witness(&fl.lattice, &g, &fl.frame).unwrap();
    assert!(r.x_fixed && r.untwisted_impossible);
    assert_eq!(r.sigma_x_eigenvalue, "-1");
    // g h[a1] h[a2] = h[a2] h[-a1]
    let ext = frame_extension(&fl.lattice, &g, &fl.frame).unwrap();
    let t = &ext.table;
    let lift = build_lift(&ext.g, t, 0).unwrap();
    let a1 = ext.lines[0].clone();
    let a2 = lift.apply_vec(&a1);
    let rv = |v: &[i64]| v.iter().map(|&x| rat(x, 1)).collect::<Vec<Rat>>();
    let hh = t.hh(&rv(&a1), &rv(&a2));
    assert_eq!(lift.act(&hh).unwrap(), hh.neg());
    // every orbit pair on BW16 gives the same conclusion
    let e = catalog(CatalogName::Bw16).unwrap();
    let bg = e.fourvolution.clone().unwrap();
    let rep = e.frame.as_ref().unwrap().vectors[0].clone();
    let rf = coset_root_frame(&Coset::new(e.lattice.clone(), rep).unwrap(), &bg, cfg()).unwrap();
    let all = witness_all_lines(&e.lattice, &bg, &rf.frame).unwrap();
    assert_eq!(all.len(), 16);
    assert!(all
        .iter()
        .all(|w| w.untwisted_impossible && w.conclusion == r.conclusion));
}

fn suite_cfg() -> SuiteConfig {
    SuiteConfig {
        enumeration: cfg(),
        prec: 4,
    }
}

#[test]
fn suite_examples() {
    let r = run_suite(SuiteName::Sqrt2E8, &suite_cfg());
    for want in ["156", "76"] {
        assert!(
            r.checks
                .iter()
                .any(|c| c.expected == want && c.status == Status::Pass),
            "{}",
            want
        );
    }
    let r = run_suite(SuiteName::Case3, &suite_cfg());
    assert!(r
        .checks
        .iter()
        .any(|c| c.id == "case3/only-n-16" && c.status == Status::Pass));
    let r = run_suite(SuiteName::Lemma24, &suite_cfg());
    assert!(r
        .checks
        .iter()
        .any(|c| c.status == Status::Skip && c.computed.starts_with("skipped: ")));
}
