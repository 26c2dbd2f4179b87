//! Worked values for lattices, isometries and constructions.

use std::collections::BTreeMap;

use olab_core::code::{code_profile, BinaryCode};
use olab_core::constructions::{
    block_rotation, catalog, construction_a, construction_b, construction_index, coset_root_frame,
    fourvolution_block, fourvolution_tmtn, group_closure, involution_tm, transport, CatalogName,
};
use olab_core::enumerate::{coset_shell_counts, shell_counts, EnumConfig};
use olab_core::isometry::{verify_isometry, Containment, Isometry};
use olab_core::lattice::{
    build_lattice, discriminant_group, sublattice_index, Coset, Lattice, RatLattice,
};
use olab_core::matrix::{int, rat, Int, IntMatrix, Rat};
use olab_core::Error;

fn cfg() -> EnumConfig {
    EnumConfig::default()
}

fn two_i2() -> Lattice {
    build_lattice(IntMatrix::from_i64(&[&[2, 0], &[0, 2]])).unwrap()
}

fn rotation2() -> Isometry {
    verify_isometry(&two_i2(), &IntMatrix::from_i64(&[&[0, -1], &[1, 0]])).unwrap()
}

fn e8_cartan() -> Vec<Vec<i64>> {
    // Dynkin diagram: chain 1-2-3-4-5-6-7 with node 8 attached to node 5
    let mut g = vec![vec![0i64; 8]; 8];
    let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];
    for i in 0..8 {
        g[i][i] = 2;
    }
    for (a, b) in edges {
        g[a][b] = -1;
        g[b][a] = -1;
    }
    g
}

/// Fraction-free Bareiss determinant, independent of the library's elimination.
fn bareiss(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    let mut prev = 1i128;
    let mut sign = 1;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn gram_rows(l: &Lattice) -> Vec<Vec<i128>> {
    l.gram()
        .to_i64_rows()
        .unwrap()
        .into_iter()
        .map(|r| r.into_iter().map(i128::from).collect())
        .collect()
}

#[test]
fn lattice_from_gram() {
    let l = two_i2();
    assert_eq!((l.rank(), l.det().clone()), (2, int(4)));
    let e8 = build_lattice(IntMatrix::from_rows(&e8_cartan()).unwrap()).unwrap();
    assert_eq!(e8.det(), &int(1));
    assert_eq!(bareiss(gram_rows(&e8)), 1);
    let bad = build_lattice(IntMatrix::from_i64(&[&[-1, 0], &[0, 2]]));
    assert!(matches!(bad, Err(Error::NotPositiveDefinite { .. })));
}

#[test]
fn discriminant_groups() {
    let s = catalog(CatalogName::Sqrt2E8).unwrap().lattice;
    let d = discriminant_group(&s);
    assert_eq!(d.factors, vec![int(2); 8]);
    assert_eq!(d.order(), int(256));
    assert!(discriminant_group(&catalog(CatalogName::E8).unwrap().lattice).is_trivial());
    let b = catalog(CatalogName::Bw16).unwrap().lattice;
    assert_eq!(discriminant_group(&b).factors, vec![int(2); 8]);
    for l in [&s, &b] {
        assert_eq!(
            Int::from(bareiss(gram_rows(l))),
            discriminant_group(l).order()
        );
    }
}

/// Roots of E8 in the even coordinate system: D8 roots plus the half-integral vectors
/// with an even number of minus signs.
fn e8_root_count() -> u64 {
    let d8 = (0..8).map(|i| 4 * (7 - i)).sum::<u64>();
    let half = (0..256u32).filter(|m| m.count_ones() % 2 == 0).count() as u64;
    d8 + half
}

#[test]
fn shell_examples() {
    let s = catalog(CatalogName::Sqrt2E8).unwrap().lattice;
    let counts = shell_counts(&s, 4, cfg()).unwrap();
    assert_eq!(counts, BTreeMap::from([(2, 0), (4, 240)]));
    assert_eq!(counts[&4], e8_root_count());
    assert_eq!(
        shell_counts(&two_i2(), 2, cfg()).unwrap(),
        BTreeMap::from([(2, 4)])
    );
    let b = catalog(CatalogName::Bw16).unwrap().lattice;
    assert_eq!(
        shell_counts(&b, 4, cfg()).unwrap(),
        BTreeMap::from([(2, 0), (4, 4320)])
    );
}

#[test]
fn coset_shell_examples() {
    let fl = construction_b(&BinaryCode::extended_hamming()).unwrap();
    let zero = coset_shell_counts(&Coset::zero(fl.lattice.clone()), 4, cfg()).unwrap();
    let plain = shell_counts(&fl.lattice, 4, cfg()).unwrap();
    assert_eq!(
        zero.into_iter()
            .map(|(k, v)| (k.to_integer().try_into().unwrap(), v))
            .collect::<BTreeMap<u64, u64>>(),
        plain
    );
    let toy = Coset::new(two_i2(), vec![rat(1, 2), rat(1, 2)]).unwrap();
    assert_eq!(
        coset_shell_counts(&toy, 2, cfg()).unwrap().get(&rat(1, 1)),
        Some(&4)
    );
}

#[test]
fn sublattice_indices() {
    for n in 1..=5 {
        let l = build_lattice(IntMatrix::identity(n).scale(&int(2))).unwrap();
        let gens: Vec<Vec<Int>> = (0..n)
            .map(|i| (0..n).map(|j| int(if i == j { 2 } else { 0 })).collect())
            .collect();
        assert_eq!(sublattice_index(&l, &gens).unwrap(), int(1) << n);
    }
    for (name, want) in [(CatalogName::Sqrt2E8, 16), (CatalogName::Bw16, 256)] {
        let e = catalog(name).unwrap();
        let g = e.fourvolution.unwrap();
        let n = e.lattice.rank();
        let one_minus = IntMatrix::identity(n).sub(g.matrix()).unwrap();
        assert_eq!(
            sublattice_index(&e.lattice, &one_minus.transpose().to_rows()).unwrap(),
            int(want)
        );
    }
}

#[test]
fn isometry_basics() {
    let s = catalog(CatalogName::Sqrt2E8).unwrap().lattice;
    let id = verify_isometry(&s, &IntMatrix::identity(8)).unwrap();
    let neg = verify_isometry(&s, &IntMatrix::identity(8).neg()).unwrap();
    let g = fourvolution_block(&s).unwrap();
    assert_eq!(
        (
            id.order_of(16).unwrap(),
            neg.order_of(16).unwrap(),
            g.order_of(16).unwrap()
        ),
        (1, 2, 4)
    );
    assert!(g.is_fourvolution() && !neg.is_fourvolution() && !id.is_fourvolution());
    // the block rotation squares to -1 as a matrix
    assert!(g.matrix().pow(2).unwrap().neg().is_identity());
    assert_eq!(
        (
            g.fixed_sublattice_rank(),
            id.fixed_sublattice_rank(),
            neg.fixed_sublattice_rank()
        ),
        (0, 8, 0)
    );
    assert!(matches!(
        neg.scaled_isometry_defect(1),
        Err(Error::NotFourvolution)
    ));
    assert!(
        g.scaled_isometry_defect(1).unwrap().is_zero()
            && g.scaled_isometry_defect(-1).unwrap().is_zero()
    );
    let mut bad = IntMatrix::identity(8);
    bad.set(0, 1, int(1));
    assert!(matches!(
        verify_isometry(&s, &bad),
        Err(Error::NotIsometry { .. })
    ));
}

#[test]
fn chain_examples() {
    let cases: [(Isometry, i64, usize); 3] = [
        (
            catalog(CatalogName::Sqrt2E8).unwrap().fourvolution.unwrap(),
            16,
            8,
        ),
        (
            catalog(CatalogName::Bw16).unwrap().fourvolution.unwrap(),
            256,
            16,
        ),
        (rotation2(), 2, 2),
    ];
    for (g, k, n) in cases {
        let c = g.one_minus_g_chain().unwrap();
        assert!(c.holds(), "{:?}", c.discrepancies);
        assert_eq!(
            (
                c.index_l_over_image,
                c.index_image_over_2l,
                c.det_one_minus.clone(),
                c.rank
            ),
            (int(k), int(k), int(k), n)
        );
        assert_eq!(int(k) * int(k), int(1) << n);
    }
}

#[test]
fn coinvariant_examples() {
    assert!(
        catalog(CatalogName::Bw16)
            .unwrap()
            .fourvolution
            .unwrap()
            .coinvariant_equality()
            .unwrap()
            .equal
    );
    // on sqrt2 Z^2 with the rotation, (1-g)L* has index 2 over L: (1-g)(1/2, 0) = (1/2, -1/2) is not in L
    let toy = rotation2().coinvariant_equality().unwrap();
    assert!(!toy.equal);
    assert_eq!(toy.quotient.unwrap().order(), int(2));
    let c = catalog(CatalogName::Sqrt2E8)
        .unwrap()
        .fourvolution
        .unwrap()
        .coinvariant_equality()
        .unwrap();
    assert!(!c.equal);
    assert_ne!(c.containment, Containment::Equal);
    assert_eq!(c.quotient.unwrap().order(), int(16));
}

#[test]
fn fourvolution_eigen_data() {
    // (alpha | g alpha) = 0 on enumerated shells
    let e = catalog(CatalogName::Sqrt2E8).unwrap();
    let g = e.fourvolution.unwrap();
    for v in olab_core::enumerate::lattice_shell(&e.lattice, 4, cfg()).unwrap() {
        assert_eq!(e.lattice.inner_int(&v, &g.apply(&v)), int(0));
    }
    assert!(g.char_poly_is_fourvolution_type());
}

#[test]
fn code_profiles() {
    let h = code_profile(&BinaryCode::extended_hamming()).unwrap();
    assert_eq!(h.weights, BTreeMap::from([(0, 1), (4, 14), (8, 1)]));
    assert!(h.doubly_even);
    let z = code_profile(&BinaryCode::zero(4)).unwrap();
    assert_eq!(z.weights, BTreeMap::from([(0, 1)]));
    assert!(z.doubly_even);
    let f = code_profile(&BinaryCode::full(2)).unwrap();
    assert_eq!(f.weights, BTreeMap::from([(0, 1), (1, 2), (2, 1)]));
    assert!(!f.doubly_even);
    // oracle: brute force over all 2^4 messages
    let words = BinaryCode::extended_hamming().codewords().unwrap();
    assert_eq!(words.len(), 16);
}

#[test]
fn construction_b_examples() {
    // Construction B of the repetition code is sqrt2 E8
    let r = construction_b(&BinaryCode::repetition(8)).unwrap().lattice;
    assert_eq!(r.det(), &int(256));
    assert_eq!(
        shell_counts(&r, 4, cfg()).unwrap(),
        BTreeMap::from([(2, 0), (4, 240)])
    );
    // for the Hamming code it is D8: x/sqrt2 with x = (+-1)^4 on a weight-4 word and 4 | sum x
    // gives 14 * 8 = 112 roots, and det = (2 * 2^8 / 16)^2 / 2^8 = 4
    let h = construction_b(&BinaryCode::extended_hamming())
        .unwrap()
        .lattice;
    assert_eq!(h.det(), &int(4));
    assert_eq!(shell_counts(&h, 2, cfg()).unwrap()[&2], 14 * 8);
    let d4 = construction_b(&BinaryCode::zero(4)).unwrap().lattice;
    assert_eq!(
        shell_counts(&d4, 4, cfg()).unwrap(),
        BTreeMap::from([(2, 0), (4, 24)])
    );
    // sqrt2 D4: 2^4 * det D4
    assert_eq!(d4.det(), &int(64));
    for c in [
        BinaryCode::extended_hamming(),
        BinaryCode::repetition(8),
        BinaryCode::zero(4),
    ] {
        assert_eq!(construction_index(&c).unwrap(), int(2));
        let a = construction_a(&c).unwrap().lattice;
        let b = construction_b(&c).unwrap().lattice;
        assert_eq!(a.det() * int(4), b.det().clone());
    }
}

#[test]
fn catalog_entries() {
    let e8 = catalog(CatalogName::E8).unwrap().lattice;
    let s = catalog(CatalogName::Sqrt2E8).unwrap().lattice;
    assert_eq!(s.gram(), &e8.gram().scale(&int(2)));
    let d4 = catalog("SQRT2_D4".parse().unwrap()).unwrap().lattice;
    assert_eq!(
        shell_counts(&d4, 4, cfg()).unwrap(),
        BTreeMap::from([(2, 0), (4, 24)])
    );
    let b = catalog(CatalogName::Bw16).unwrap().lattice;
    let two_dual: Vec<Vec<Rat>> = b
        .dual_basis()
        .iter()
        .map(|v| v.iter().map(|x| x * rat(2, 1)).collect())
        .collect();
    assert_eq!(
        RatLattice::standard(16)
            .index_of(&RatLattice::from_generators(16, &two_dual))
            .unwrap(),
        int(256)
    );
}

#[test]
fn tm_tn_fourvolution() {
    let fx = olab_core::bw16::load().unwrap();
    let tm = involution_tm(&fx.lattice, &fx.m).unwrap();
    assert!(tm.pow(2).matrix().is_identity());
    let (g, tm, tn) = fourvolution_tmtn(&fx.lattice, &fx.m, &fx.n).unwrap();
    assert!(g.is_fourvolution());
    let h = tn.compose(&tm);
    assert!(h.is_fourvolution());
    assert!(g.compose(&h).matrix().is_identity());
    assert_eq!(group_closure(&[tm, tn], 64).unwrap().len(), 8);
}

#[test]
fn root_frames() {
    let fl = construction_b(&BinaryCode::extended_hamming()).unwrap();
    let g = transport(&fl.lattice, &block_rotation(8)).unwrap();
    let err = coset_root_frame(&fl.frame_coset(0).unwrap(), &g, cfg());
    // the alpha_1 coset of L_B(Hamming) holds 128 norm-2 vectors, not 16
    assert!(matches!(err, Err(Error::Precondition(_))));
    let rep = construction_b(&BinaryCode::repetition(8)).unwrap();
    let gr = transport(&rep.lattice, &block_rotation(8)).unwrap();
    let f = coset_root_frame(&rep.frame_coset(0).unwrap(), &gr, cfg()).unwrap();
    assert_eq!(f.frame.len(), 8);
    assert!(f.frame.check(&rep.lattice) && f.coset_preserved);
    let rootless = catalog(CatalogName::Sqrt2E8).unwrap();
    let zero = Coset::zero(rootless.lattice.clone());
    assert!(coset_root_frame(&zero, rootless.fourvolution.as_ref().unwrap(), cfg()).is_err());
    let toy = Coset::new(two_i2(), vec![rat(1, 2), rat(1, 2)]).unwrap();
    assert!(coset_root_frame(&toy, &rotation2(), cfg()).is_err());
}
