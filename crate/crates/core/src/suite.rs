//! Named verification suites over the catalog.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::characters::{
    case_iii_scan, det_one_minus_vs_discriminant, eigenspace_dims, fourvolution_epsilon,
    twisted_weight_data,
};
use crate::code::BinaryCode;
use crate::constructions::{
    block_rotation, catalog, construction_b, construction_index, coset_root_frame, transport,
    CatalogEntry, CatalogName,
};
use crate::enumerate::{coset_shell_counts, shell_counts, EnumConfig};
use crate::error::{Error, Result};
use crate::isometry::Isometry;
use crate::lattice::{Lattice, RatLattice};
use crate::matrix::{rat, Rat};
use crate::qform::{irr_group_model, orthogonal_group_order};
use crate::report::{Check, Provenance, VerificationReport};
use crate::shape::{centralizer_order_check, shape_order_check};
use crate::voa::witness::{untwisted_witness, IMPOSSIBLE};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteName {
    Lemma24,
    Case1,
    Case2,
    Case3,
    Thm44,
    Sqrt2E8,
    Bw16,
    Shapes,
    All,
}

const ORDER: [SuiteName; 8] = [
    SuiteName::Lemma24,
    SuiteName::Case1,
    SuiteName::Case2,
    SuiteName::Case3,
    SuiteName::Thm44,
    SuiteName::Sqrt2E8,
    SuiteName::Bw16,
    SuiteName::Shapes,
];

impl FromStr for SuiteName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "lemma24" => SuiteName::Lemma24,
            "case1" => SuiteName::Case1,
            "case2" => SuiteName::Case2,
            "case3" => SuiteName::Case3,
            "thm44" => SuiteName::Thm44,
            "sqrt2e8" => SuiteName::Sqrt2E8,
            "bw16" => SuiteName::Bw16,
            "shapes" => SuiteName::Shapes,
            "all" => SuiteName::All,
            other => return Err(Error::UnknownName(other.into())),
        })
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SuiteName::Lemma24 => "lemma24",
            SuiteName::Case1 => "case1",
            SuiteName::Case2 => "case2",
            SuiteName::Case3 => "case3",
            SuiteName::Thm44 => "thm44",
            SuiteName::Sqrt2E8 => "sqrt2e8",
            SuiteName::Bw16 => "bw16",
            SuiteName::Shapes => "shapes",
            SuiteName::All => "all",
        };
        write!(f, "{}", s)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub enumeration: EnumConfig,
    /// q-series precision for character checks.
    pub prec: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            enumeration: EnumConfig::from_env(),
            prec: 4,
        }
    }
}

use Provenance::{Computed, Immediate, Published};

fn fourvolution_of(e: &CatalogEntry) -> Result<Isometry> {
    e.fourvolution
        .clone()
        .ok_or_else(|| Error::Precondition(format!("{} has no fourvolution", e.name)))
}

fn lemma24_checks(label: &str, g: &Isometry, out: &mut Vec<Check>) {
    let half = g.rank() / 2;
    let expected_index = format!("2^{}", half);
    let ids = [
        "minus-isometry",
        "plus-isometry",
        "index-l-image",
        "index-image-2l",
        "char-poly",
    ];
    if !g.is_fourvolution() {
        for id in ids {
            out.push(Check::skip(
                &format!("lemma24/{}/{}", label, id),
                "(1-g) calculus",
                Immediate,
                "holds",
                "not a fourvolution",
            ));
        }
        return;
    }
    for (id, sign) in [(ids[0], -1), (ids[1], 1)] {
        let r = g.scaled_isometry_defect(sign).map(|d| {
            if d.is_zero() {
                "0".to_string()
            } else {
                "nonzero".into()
            }
        });
        out.push(Check::equal(
            &format!("lemma24/{}/{}", label, id),
            "(1 +- g)^T G (1 +- g) - 2G",
            Immediate,
            0,
            r,
        ));
    }
    let chain = g.one_minus_g_chain();
    let pow2 = |x: &crate::matrix::Int| format!("2^{}", x.bits() - 1);
    let a = chain
        .as_ref()
        .map(|c| pow2(&c.index_l_over_image))
        .map_err(Clone::clone);
    out.push(Check::equal(
        &format!("lemma24/{}/{}", label, ids[2]),
        "[L : (1-g)L]",
        Published,
        &expected_index,
        a,
    ));
    let b = chain
        .as_ref()
        .map(|c| pow2(&c.index_image_over_2l))
        .map_err(Clone::clone);
    out.push(Check::equal(
        &format!("lemma24/{}/{}", label, ids[3]),
        "[(1-g)L : 2L]",
        Published,
        &expected_index,
        b,
    ));
    let cp = if g.char_poly_is_fourvolution_type() {
        format!("(x^2+1)^{}", half)
    } else {
        "other".into()
    };
    out.push(Check::equal(
        &format!("lemma24/{}/{}", label, ids[4]),
        "characteristic polynomial",
        Published,
        format!("(x^2+1)^{}", half),
        Ok(cp),
    ));
}

fn lemma24(_cfg: &SuiteConfig) -> Vec<Check> {
    let mut out = Vec::new();
    for name in [CatalogName::Sqrt2E8, CatalogName::Bw16] {
        match catalog(name).and_then(|e| fourvolution_of(&e)) {
            Ok(g) => lemma24_checks(&name.to_string(), &g, &mut out),
            Err(e) => out.push(Check::equal(
                &format!("lemma24/{}", name),
                "catalog entry",
                Immediate,
                "loaded",
                Err(e),
            )),
        }
    }
    match catalog(CatalogName::E8) {
        Ok(e) => lemma24_checks("E8-negation", &Isometry::negation(&e.lattice), &mut out),
        Err(e) => out.push(Check::equal(
            "lemma24/E8",
            "catalog entry",
            Immediate,
            "loaded",
            Err(e),
        )),
    }
    out
}

fn case1_code(label: &str, code: &BinaryCode, cfg: &SuiteConfig, out: &mut Vec<Check>) {
    let fl = match construction_b(code) {
        Ok(fl) => fl,
        Err(e) => {
            out.push(Check::equal(
                &format!("case1/{}", label),
                "construction B",
                Immediate,
                "built",
                Err(e),
            ));
            return;
        }
    };
    let roots = fl
        .frame_coset(0)
        .and_then(|c| coset_shell_counts(&c, 2, cfg.enumeration))
        .map(|m| m.get(&rat(2, 1)).copied().unwrap_or(0).to_string());
    out.push(Check::equal(
        &format!("case1/{}/coset-roots", label),
        "|(alpha_1 + L)(2)| = 2 rank",
        Published,
        16,
        roots,
    ));
    let frame = (|| {
        let g = transport(&fl.lattice, &block_rotation(code.length()))?;
        let rf = coset_root_frame(&fl.frame_coset(0)?, &g, cfg.enumeration)?;
        Ok(format!("A1^{}", rf.frame.len()))
    })();
    out.push(Check::equal(
        &format!("case1/{}/frame", label),
        "norm-2 vectors of the coset form A1^n",
        Published,
        "A1^8",
        frame,
    ));
    let idx = construction_index(code).map(|i| i.to_string());
    out.push(Check::equal(
        &format!("case1/{}/index", label),
        "[L_A : L_B]",
        Published,
        2,
        idx,
    ));
}

fn case1(cfg: &SuiteConfig) -> Vec<Check> {
    let mut out = Vec::new();
    case1_code("hamming", &BinaryCode::extended_hamming(), cfg, &mut out);
    case1_code("rep8", &BinaryCode::repetition(8), cfg, &mut out);
    out
}

fn case2(cfg: &SuiteConfig) -> Vec<Check> {
    let mut out = Vec::new();
    for (name, half, theta) in [
        (CatalogName::Sqrt2E8, 4, "(1/2, 8)"),
        (CatalogName::Bw16, 8, "(1, 16)"),
    ] {
        let g = catalog(name).and_then(|e| fourvolution_of(&e));
        let table = g
            .as_ref()
            .map_err(Clone::clone)
            .and_then(|g| eigenspace_dims(g, 2, cfg.enumeration));
        for j in [1usize, 3] {
            let d = table
                .as_ref()
                .map(|t| t.dims[1][j].to_string())
                .map_err(Clone::clone);
            out.push(Check::equal(
                &format!("case2/{}/weight-one-j{}", name, j),
                "dim V_L(j)_1 = n/2",
                Published,
                half,
                d,
            ));
        }
        let tw = g
            .as_ref()
            .map_err(Clone::clone)
            .and_then(|g| twisted_weight_data(g, 2));
        let tw = tw.map(|t| format!("({}, {})", t.top_weight, t.weight_one_dim));
        out.push(Check::equal(
            &format!("case2/{}/theta-twisted", name),
            "top weight and weight-one dim of V_L^T[theta]",
            Published,
            theta,
            tw,
        ));
    }
    out
}

fn case3(_cfg: &SuiteConfig) -> Vec<Check> {
    let mut out = Vec::new();
    let formula = (2..=64usize)
        .step_by(2)
        .all(|n| fourvolution_epsilon(n) == rat(3 * n as i64, 64));
    out.push(Check::equal(
        "case3/epsilon-formula",
        "epsilon = 3n/64 for even n <= 64",
        Published,
        "holds",
        Ok(if formula {
            "holds".into()
        } else {
            "violated".into()
        }),
    ));
    let scan = case_iii_scan(64).map(|v| format!("{:?}", v));
    out.push(Check::equal(
        "case3/only-n-16",
        "only n = 16 has epsilon in (1/4)Z below 1",
        Published,
        "[16]",
        scan,
    ));
    out.push(Check::equal(
        "case3/epsilon-16",
        "epsilon at n = 16",
        Published,
        "3/4",
        Ok(fourvolution_epsilon(16).to_string()),
    ));
    let g = catalog(CatalogName::Bw16).and_then(|e| fourvolution_of(&e));
    let coinv = g
        .as_ref()
        .map_err(Clone::clone)
        .and_then(|g| g.coinvariant_equality());
    out.push(Check::equal(
        "case3/bw16/coinvariant",
        "(1-g)L* = L",
        Published,
        "equal",
        coinv.map(|c| format!("{:?}", c.containment).to_lowercase()),
    ));
    let tw = g
        .as_ref()
        .map_err(Clone::clone)
        .and_then(|g| twisted_weight_data(g, 1));
    out.push(Check::equal(
        "case3/bw16/dim-t",
        "dim T for the g-twisted module",
        Published,
        1,
        tw.map(|t| t.dim_t.to_string()),
    ));
    let det = g
        .as_ref()
        .map_err(Clone::clone)
        .and_then(det_one_minus_vs_discriminant);
    let fields: [(&str, &str, fn(&crate::characters::DetReport) -> String); 3] = [
        ("discriminant", "|L*/L|", |d| {
            d.discriminant_order.to_string()
        }),
        ("index", "|L/(1-g)L|", |d| d.index.to_string()),
        ("det", "|det(1-g)|", |d| d.det_one_minus.to_string()),
    ];
    for (id, reference, f) in fields {
        out.push(Check::equal(
            &format!("case3/bw16/{}", id),
            reference,
            Published,
            256,
            det.as_ref().map(f).map_err(Clone::clone),
        ));
    }
    out
}

fn thm44_one(
    label: &str,
    l: Result<(Lattice, Isometry, crate::constructions::Frame)>,
    out: &mut Vec<Check>,
) {
    let r = l.and_then(|(l, g, f)| untwisted_witness(&l, &g, &f));
    let get = |f: fn(&crate::voa::WitnessReport) -> String| r.as_ref().map(f).map_err(Clone::clone);
    out.push(Check::equal(
        &format!("thm44/{}/x-fixed", label),
        "g^ fixes x",
        Published,
        true,
        get(|w| w.x_fixed.to_string()),
    ));
    out.push(Check::equal(
        &format!("thm44/{}/sigma-x", label),
        "g^ negates sigma(x)",
        Published,
        -1,
        get(|w| w.sigma_x_eigenvalue.clone()),
    ));
    out.push(Check::equal(
        &format!("thm44/{}/conclusion", label),
        "no extra automorphism of untwisted type",
        Published,
        IMPOSSIBLE,
        get(|w| w.conclusion.clone()),
    ));
}

fn thm44(cfg: &SuiteConfig) -> Vec<Check> {
    let mut out = Vec::new();
    let hamming = construction_b(&BinaryCode::extended_hamming()).and_then(|fl| {
        let g = transport(&fl.lattice, &block_rotation(8))?;
        Ok((fl.lattice, g, fl.frame))
    });
    thm44_one("hamming", hamming, &mut out);
    let bw16 = catalog(CatalogName::Bw16).and_then(|e| {
        let g = fourvolution_of(&e)?;
        let frame = e
            .frame
            .clone()
            .ok_or_else(|| Error::Precondition("BW16 has no frame".into()))?;
        let coset = crate::lattice::Coset::new(e.lattice.clone(), frame.vectors[0].clone())?;
        let rf = coset_root_frame(&coset, &g, cfg.enumeration)?;
        Ok((e.lattice, g, rf.frame))
    });
    thm44_one("bw16", bw16, &mut out);
    out
}

fn shell_check(id: &str, l: &Lattice, norm: u64, expected: u64, cfg: &SuiteConfig) -> Check {
    let r = shell_counts(l, norm, cfg.enumeration)
        .map(|m| m.get(&norm).copied().unwrap_or(0).to_string());
    Check::equal(
        id,
        &format!("number of norm-{} vectors", norm),
        if norm == 2 { Immediate } else { Computed },
        expected,
        r,
    )
}

fn sqrt2e8(cfg: &SuiteConfig) -> Vec<Check> {
    let e = match catalog(CatalogName::Sqrt2E8) {
        Ok(e) => e,
        Err(err) => {
            return vec![Check::equal(
                "sqrt2e8/load",
                "catalog entry",
                Immediate,
                "loaded",
                Err(err),
            )]
        }
    };
    let mut out = vec![
        shell_check("sqrt2e8/rootless", &e.lattice, 2, 0, cfg),
        shell_check("sqrt2e8/norm4", &e.lattice, 4, 240, cfg),
    ];
    let table =
        fourvolution_of(&e).and_then(|g| eigenspace_dims(&g, cfg.prec.max(2), cfg.enumeration));
    let get = |f: fn(&crate::characters::EigenspaceTable) -> String| {
        table.as_ref().map(f).map_err(Clone::clone)
    };
    out.push(Check::equal(
        "sqrt2e8/vl-weight2",
        "dim (V_L)_2",
        Computed,
        284,
        get(|t| t.total(2).expect("m = 2").to_string()),
    ));
    out.push(Check::equal(
        "sqrt2e8/vplus-weight2",
        "dim (V^+)_2 = (tr 1 + tr theta)/2",
        Published,
        156,
        get(|t| (&t.dims[2][0] + &t.dims[2][2]).to_string()),
    ));
    out.push(Check::equal(
        "sqrt2e8/vg-weight2",
        "dim (V^g)_2",
        Published,
        76,
        get(|t| t.dims[2][0].to_string()),
    ));
    out
}

fn bw16(cfg: &SuiteConfig) -> Vec<Check> {
    let e = match catalog(CatalogName::Bw16) {
        Ok(e) => e,
        Err(err) => {
            return vec![Check::equal(
                "bw16/load",
                "catalog entry",
                Immediate,
                "loaded",
                Err(err),
            )]
        }
    };
    let l = &e.lattice;
    let mut out = vec![
        shell_check("bw16/rootless", l, 2, 0, cfg),
        shell_check("bw16/norm4", l, 4, 4320, cfg),
    ];
    out.push(Check::equal(
        "bw16/det",
        "det G",
        Published,
        256,
        Ok(l.det().to_string()),
    ));
    let two_dual: Vec<Vec<Rat>> = l
        .dual_basis()
        .iter()
        .map(|v| v.iter().map(|x| x * rat(2, 1)).collect())
        .collect();
    let idx = RatLattice::standard(l.rank())
        .index_of(&RatLattice::from_generators(l.rank(), &two_dual))
        .map(|i| i.to_string());
    out.push(Check::equal(
        "bw16/index-2dual",
        "|L / 2L*|",
        Published,
        256,
        idx,
    ));
    let model = fourvolution_of(&e).and_then(|g| irr_group_model(l, &g));
    let og = model
        .as_ref()
        .map_err(Clone::clone)
        .and_then(|m| orthogonal_group_order(&m.f))
        .map(|o| o.to_string());
    out.push(Check::equal(
        "bw16/fusion-ogroup",
        "|O(F, q)|",
        Published,
        4,
        og,
    ));
    let ef = model
        .as_ref()
        .map(|m| m.product.order().to_string())
        .map_err(Clone::clone);
    out.push(Check::equal(
        "bw16/fusion-order",
        "|E x F|",
        Published,
        4096,
        ef,
    ));
    out
}

fn shapes(_cfg: &SuiteConfig) -> Vec<Check> {
    let mut out = Vec::new();
    let cases = [
        (
            "shapes/sqrt2e8-fixed",
            "[2^14].Sym6",
            "2^18.3^2.5",
            "automorphism group of V^g",
        ),
        (
            "shapes/centralizer",
            "[2^15].Sym6",
            "2^19.3^2.5",
            "centralizer of g^ in Aut(V)",
        ),
        (
            "shapes/bw16-normalizer",
            "2^8.(2^7.Sp6(2))",
            "2^24.3^4.5.7",
            "stabiliser order for BW16",
        ),
        (
            "shapes/bw16-fixed",
            "[2^15].(Sp6(2)x2)",
            "2^25.3^4.5.7",
            "automorphism group for BW16",
        ),
    ];
    for (id, expr, claimed, reference) in cases {
        let r = shape_order_check(expr, claimed).map(|r| {
            if r.equal {
                claimed.to_string()
            } else {
                crate::shape::Factored(&r.value_factors).to_string()
            }
        });
        out.push(Check::equal(
            id,
            &format!("|{}| = {}", expr, reference),
            Published,
            claimed,
            r,
        ));
    }
    let c = centralizer_order_check().map(|c| {
        if c.consistent() {
            "consistent".to_string()
        } else {
            format!("ratio {}", c.ratio)
        }
    });
    out.push(Check::equal(
        "shapes/centralizer-quotient",
        "|C| = 2 |[2^14].Sym6|",
        Computed,
        "consistent",
        c,
    ));
    out
}

fn checks_for(name: SuiteName, cfg: &SuiteConfig) -> Vec<Check> {
    match name {
        SuiteName::Lemma24 => lemma24(cfg),
        SuiteName::Case1 => case1(cfg),
        SuiteName::Case2 => case2(cfg),
        SuiteName::Case3 => case3(cfg),
        SuiteName::Thm44 => thm44(cfg),
        SuiteName::Sqrt2E8 => sqrt2e8(cfg),
        SuiteName::Bw16 => bw16(cfg),
        SuiteName::Shapes => shapes(cfg),
        SuiteName::All => ORDER.iter().flat_map(|&s| checks_for(s, cfg)).collect(),
    }
}

pub fn run_suite(name: SuiteName, cfg: &SuiteConfig) -> VerificationReport {
    let start = Instant::now();
    let checks = checks_for(name, cfg);
    VerificationReport {
        suite: name.to_string(),
        checks,
        wall_time_ms: start.elapsed().as_millis() as u64,
        version: env!("CARGO_PKG_VERSION").to_string(),
    }
}
