use std::path::Path;

use serde_json::{json, Value};

use olab_core::characters::{
    case_iii_scan, eigenspace_dim, graded_dims_vl, graded_trace, twisted_weight_data,
};
use olab_core::code::parse_code;
use olab_core::constructions::{
    catalog, construction_b, coset_root_frame, CatalogName, Frame, FrameFile,
};
use olab_core::enumerate::{coset_shell_counts, shell_counts, EnumConfig};
use olab_core::isometry::{verify_isometry, Isometry};
use olab_core::lattice::{
    discriminant_group, read_lattice, read_matrix, write_lattice, Coset, Lattice, LatticeFile,
};
use olab_core::matrix::Rat;
use olab_core::qform::{discriminant_qform, irr_group_model, orthogonal_group_order, QFormFile};
use olab_core::qseries::QSeries;
use olab_core::report::{emit, Format};
use olab_core::shape::{shape_order_check, Factored};
use olab_core::suite::{run_suite, SuiteConfig, SuiteName};
use olab_core::voa::untwisted_witness;
use olab_core::{Error, Result};

pub struct Output {
    pub text: String,
    /// Whether the command's own check passed; drives exit code 1.
    pub ok: bool,
}

fn json_out(v: Value) -> Result<Output> {
    Ok(Output {
        text: serde_json::to_string_pretty(&v)? + "\n",
        ok: true,
    })
}

fn series_json(q: &QSeries) -> Value {
    json!({
        "offset": q.offset().to_string(),
        "step": q.step().to_string(),
        "coeffs": q.coeffs().iter().map(Rat::to_string).collect::<Vec<_>>(),
    })
}

fn parse_rat(s: &str) -> Result<Rat> {
    s.trim()
        .parse::<Rat>()
        .map_err(|_| Error::Parse(format!("not a rational number: {:?}", s)))
}

fn write_or_print(v: &Value, emit: Option<&Path>) -> Result<Output> {
    let text = serde_json::to_string_pretty(v)? + "\n";
    match emit {
        Some(p) => {
            std::fs::write(p, &text)?;
            Ok(Output {
                text: format!("wrote {}\n", p.display()),
                ok: true,
            })
        }
        None => Ok(Output { text, ok: true }),
    }
}

pub struct Context {
    cfg: EnumConfig,
    prec: u64,
}

impl Context {
    pub fn new(prec: u64, workers: usize) -> Self {
        Context {
            cfg: EnumConfig::from_env().with_workers(workers),
            prec,
        }
    }

    fn isometry(&self, lattice: &Path, matrix: &Path) -> Result<Isometry> {
        verify_isometry(&read_lattice(lattice)?, &read_matrix(matrix)?)
    }

    pub fn lattice_info(&self, file: &Path) -> Result<Output> {
        let l = read_lattice(file)?;
        let disc = discriminant_group(&l);
        json_out(json!({
            "name": l.name(),
            "rank": l.rank(),
            "det": l.det().to_string(),
            "even": true,
            "discriminant_invariants": disc.factors.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            "has_embedding": l.embedding().is_some(),
        }))
    }

    pub fn lattice_shells(&self, file: &Path, max_norm: u64) -> Result<Output> {
        let counts = shell_counts(&read_lattice(file)?, max_norm, self.cfg)?;
        let m: serde_json::Map<String, Value> = counts
            .iter()
            .map(|(k, v)| (k.to_string(), json!(v)))
            .collect();
        json_out(Value::Object(m))
    }

    pub fn coset_shells(&self, file: &Path, rep: &str, max_norm: u64) -> Result<Output> {
        let l = read_lattice(file)?;
        let rep = rep.split(',').map(parse_rat).collect::<Result<Vec<_>>>()?;
        let counts = coset_shell_counts(&Coset::new(l, rep)?, max_norm, self.cfg)?;
        let m: serde_json::Map<String, Value> = counts
            .iter()
            .map(|(k, v)| (k.to_string(), json!(v)))
            .collect();
        json_out(Value::Object(m))
    }

    pub fn isom_verify(&self, lattice: &Path, matrix: &Path) -> Result<Output> {
        let g = self.isometry(lattice, matrix)?;
        let order = g.order_of(1 << 12).ok();
        json_out(json!({ "isometry": true, "order": order, "fourvolution": g.is_fourvolution() }))
    }

    pub fn isom_chain(&self, lattice: &Path, matrix: &Path) -> Result<Output> {
        let c = self.isometry(lattice, matrix)?.one_minus_g_chain()?;
        let mut out = json_out(json!({
            "index_l_over_image": c.index_l_over_image.to_string(),
            "index_image_over_2l": c.index_image_over_2l.to_string(),
            "det_one_minus": c.det_one_minus.to_string(),
            "rank": c.rank,
            "holds": c.holds(),
            "discrepancies": c.discrepancies,
        }))?;
        out.ok = c.holds();
        Ok(out)
    }

    pub fn isom_coinvariant(&self, lattice: &Path, matrix: &Path) -> Result<Output> {
        let c = self.isometry(lattice, matrix)?.coinvariant_equality()?;
        json_out(json!({
            "equal": c.equal,
            "containment": format!("{:?}", c.containment),
            "quotient_invariants": c.quotient.map(|q| q.factors.iter().map(|d| d.to_string()).collect::<Vec<_>>()),
        }))
    }

    pub fn construct_b(&self, code: &Path, emit: Option<&Path>) -> Result<Output> {
        let c = parse_code(&std::fs::read_to_string(code)?)?;
        let fl = construction_b(&c)?;
        lattice_out(&fl.lattice, emit)
    }

    pub fn construct_catalog(&self, name: &str, emit: Option<&Path>) -> Result<Output> {
        let e = catalog(name.parse::<CatalogName>()?)?;
        lattice_out(&e.lattice, emit)
    }

    pub fn construct_fourvolution(&self, name: &str, emit: Option<&Path>) -> Result<Output> {
        let e = catalog(name.parse()?)?;
        let g = e.fourvolution.ok_or_else(|| {
            Error::Precondition(format!("{} has no catalog fourvolution", e.name))
        })?;
        let rows = g
            .matrix()
            .to_i64_rows()
            .ok_or_else(|| Error::Shape("entries exceed i64".into()))?;
        write_or_print(&json!(rows), emit)
    }

    /// Catalog entries with a fourvolution get the certified frame of the coset of `a_1`.
    pub fn construct_frame(
        &self,
        name: Option<&str>,
        code: Option<&Path>,
        emit: Option<&Path>,
    ) -> Result<Output> {
        let frame: Frame = match (name, code) {
            (Some(n), _) => {
                let e = catalog(n.parse()?)?;
                let f = e
                    .frame
                    .ok_or_else(|| Error::Precondition(format!("{} has no frame", e.name)))?;
                match e.fourvolution {
                    Some(g) => {
                        coset_root_frame(
                            &Coset::new(e.lattice.clone(), f.vectors[0].clone())?,
                            &g,
                            self.cfg,
                        )?
                        .frame
                    }
                    None => f,
                }
            }
            (None, Some(p)) => construction_b(&parse_code(&std::fs::read_to_string(p)?)?)?.frame,
            (None, None) => return Err(Error::Precondition("give --name or --code".into())),
        };
        write_or_print(&serde_json::to_value(FrameFile::from_frame(&frame)?)?, emit)
    }

    pub fn char_dims(&self, lattice: &Path) -> Result<Output> {
        json_out(series_json(&graded_dims_vl(
            &read_lattice(lattice)?,
            self.prec,
            self.cfg,
        )?))
    }

    pub fn char_trace(&self, lattice: &Path, isom: &Path, power: u32) -> Result<Output> {
        let g = self.isometry(lattice, isom)?;
        json_out(series_json(&graded_trace(&g, power, self.prec, self.cfg)?))
    }

    pub fn char_eigdim(&self, lattice: &Path, isom: &Path, j: usize, m: u64) -> Result<Output> {
        let g = self.isometry(lattice, isom)?;
        let d = eigenspace_dim(&g, j, m, self.cfg)?;
        json_out(json!({ "j": j, "m": m, "dim": d.to_string() }))
    }

    pub fn char_twisted(&self, lattice: &Path, isom: &Path, s: u32) -> Result<Output> {
        let t = twisted_weight_data(&self.isometry(lattice, isom)?, s)?;
        json_out(json!({
            "s": t.s,
            "epsilon": t.epsilon.to_string(),
            "index": t.index.to_string(),
            "dim_t": t.dim_t.to_string(),
            "top_weight": t.top_weight.to_string(),
            "weight_one_dim": t.weight_one_dim.to_string(),
            "character": series_json(&t.character),
        }))
    }

    pub fn case3_scan(&self, max: usize) -> Result<Output> {
        json_out(json!({ "solutions": case_iii_scan(max)? }))
    }

    pub fn qform_disc(&self, lattice: &Path) -> Result<Output> {
        let q = discriminant_qform(&read_lattice(lattice)?)?;
        json_out(serde_json::to_value(QFormFile::from_group(&q))?)
    }

    pub fn qform_irr(&self, lattice: &Path, isom: &Path) -> Result<Output> {
        let l = read_lattice(lattice)?;
        let g = verify_isometry(&l, &read_matrix(isom)?)?;
        let m = irr_group_model(&l, &g)?;
        json_out(json!({
            "e_order": m.e.order(),
            "f": QFormFile::from_group(&m.f),
            "product_order": m.product.order(),
            "f_orthogonal_group_order": orthogonal_group_order(&m.f)?,
            "twisted_residues": m.twisted_residues.iter().map(Rat::to_string).collect::<Vec<_>>(),
            "assumes_orthogonal_sum": m.assumes_orthogonal_sum,
        }))
    }

    pub fn qform_ogroup(&self, qform: &Path) -> Result<Output> {
        let f: QFormFile = serde_json::from_str(&std::fs::read_to_string(qform)?)?;
        let g = f.into_group()?;
        json_out(
            json!({ "group_order": g.order(), "orthogonal_group_order": orthogonal_group_order(&g)? }),
        )
    }

    pub fn qform_shape(&self, expr: &str, claimed: &str) -> Result<Output> {
        let r = shape_order_check(expr, claimed)?;
        let mut out = json_out(json!({
            "expr": r.expr,
            "claimed": r.claimed,
            "value": r.value.to_string(),
            "value_factored": Factored(&r.value_factors).to_string(),
            "claimed_value": r.claimed_value.to_string(),
            "claimed_factored": Factored(&r.claimed_factors).to_string(),
            "equal": r.equal,
        }))?;
        out.ok = r.equal;
        Ok(out)
    }

    pub fn voa_witness(&self, lattice: &Path, isom: &Path, frame: &Path) -> Result<Output> {
        let l = read_lattice(lattice)?;
        let g = verify_isometry(&l, &read_matrix(isom)?)?;
        let f: FrameFile = serde_json::from_str(&std::fs::read_to_string(frame)?)?;
        let r = untwisted_witness(&l, &g, &f.into_frame()?)?;
        let mut out = json_out(serde_json::to_value(&r)?)?;
        out.ok = r.untwisted_impossible;
        Ok(out)
    }

    pub fn suite(&self, name: &str, format: &str) -> Result<Output> {
        let name: SuiteName = name.parse()?;
        let format: Format = format.parse()?;
        let r = run_suite(
            name,
            &SuiteConfig {
                enumeration: self.cfg,
                prec: self.prec,
            },
        );
        Ok(Output {
            text: emit(&r, format),
            ok: r.all_pass(),
        })
    }
}

fn lattice_out(l: &Lattice, emit: Option<&Path>) -> Result<Output> {
    match emit {
        Some(p) => {
            write_lattice(l, p)?;
            Ok(Output {
                text: format!("wrote {}\n", p.display()),
                ok: true,
            })
        }
        None => json_out(serde_json::to_value(LatticeFile::from_lattice(l)?)?),
    }
}
