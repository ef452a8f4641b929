//! Command-line front end. `run` returns the process exit code:
//! 0 on success, 2 when the input fails a validity check, 1 on usage errors.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::adhm::{AdhmData, Domain, Point};
use crate::bweb::{compute_b, realize_b_real, verify_identities};
use crate::error::Error;
use crate::fields::Fields;
use crate::observables::{rational_map, spectral_curve};
use crate::quat::{CMatrix, RMatrix, C64};
use crate::suirrep::{complex_irrep, decompose, real_irrep, ReprTriple};
use crate::symmetry::{
    axial_data, axial_generator, check_structure_group, family_axial, family_irrep, family_mzero, family_n2n,
    family_nn, family_sp2_explicit, family_sp4_explicit, induced_structure_rep, spherical_residual,
    structure_ansatz, structure_group_bounds, AnsatzSpec, ExclusionOptions, FamilyInstance, Generating, Sign,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "monopole", version, about = "ADHM data for hyperbolic monopoles with rotational symmetry")]
pub struct Cli {
    /// Seed for randomized searches.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Emit the generators of an irreducible representation.
    Repgen(RepgenArgs),
    /// Emit the intertwiner triple between dimensions n+2 and n with its identity residuals.
    Bmat(BmatArgs),
    /// Build M from the general symmetric ansatz for a list of summands.
    Ansatz(AnsatzArgs),
    /// Construct a named family instance.
    Family(FamilyArgs),
    /// Check data against the defining constraints.
    Verify(VerifyArgs),
    /// Sample the Higgs field and energy density along a ray.
    Fields(FieldsArgs),
    /// Spectral curve coefficients.
    Spectral(DataArgs),
    /// Rational map, optionally evaluated at points.
    Rational(RationalArgs),
    /// Decompose a representation into irreducibles.
    Decompose(DecomposeArgs),
}

#[derive(Args, Debug)]
pub struct RepgenArgs {
    #[arg(long)]
    pub n: usize,
    /// Real skew-symmetric generators (n odd or divisible by 4).
    #[arg(long)]
    pub real: bool,
    #[arg(long, default_value = "-")]
    pub emit: String,
}

#[derive(Args, Debug)]
pub struct BmatArgs {
    #[arg(long)]
    pub n: usize,
    /// Real triple for the real irreps (n odd).
    #[arg(long)]
    pub real: bool,
    #[arg(long, default_value_t = 0.0)]
    pub theta: f64,
    #[arg(long, default_value = "-")]
    pub emit: String,
}

#[derive(Args, Debug)]
pub struct AnsatzArgs {
    /// Comma-separated summand dimensions, e.g. 3,1.
    #[arg(long, value_delimiter = ',', required = true)]
    pub summands: Vec<usize>,
    /// Named coefficients, e.g. a=0.577 or kappa_1_1=0.2,kappa_1_2=0.1.
    #[arg(long, value_delimiter = ',')]
    pub params: Vec<String>,
    /// Also test whether Sp(n) is ruled out as structure group.
    #[arg(long)]
    pub check_n: Option<usize>,
    #[arg(long, default_value = "-")]
    pub emit: String,
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    /// One of axial, irrep4, irrep, n2n, nn, sp2, sp4, mzero.
    #[arg(long)]
    pub name: String,
    #[arg(long, value_delimiter = ',')]
    pub params: Vec<String>,
    #[arg(long, default_value = "-")]
    pub emit: String,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long, default_value = "ball")]
    pub domain: Domain,
    /// Grid resolution; 0 uses the domain default.
    #[arg(long, default_value_t = 0)]
    pub samples: usize,
    #[arg(long, default_value = "-")]
    pub emit: String,
}

#[derive(Args, Debug)]
pub struct FieldsArgs {
    #[arg(long)]
    pub data: PathBuf,
    /// start:end:count along the ray.
    #[arg(long, default_value = "0:0.99:100")]
    pub ray: String,
    /// Direction of the ray.
    #[arg(long, value_delimiter = ',', default_values_t = [0.0, 0.0, 1.0])]
    pub direction: Vec<f64>,
    /// Finite-difference step.
    #[arg(long, default_value_t = 1e-3)]
    pub h: f64,
    /// csv or json.
    #[arg(long, default_value = "csv")]
    pub emit: String,
    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Args, Debug)]
pub struct DataArgs {
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long, default_value = "-")]
    pub emit: String,
}

#[derive(Args, Debug)]
pub struct RationalArgs {
    #[arg(long)]
    pub data: PathBuf,
    /// Points such as 0.5, 1+2i, -0.3i.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub eval: Vec<String>,
    #[arg(long, default_value = "-")]
    pub emit: String,
}

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    /// Representation JSON as written by `repgen`.
    #[arg(long, required_unless_present = "data")]
    pub rep: Option<PathBuf>,
    /// Data JSON with a spherical symmetry; also reports the induced structure-group representation.
    #[arg(long)]
    pub data: Option<PathBuf>,
    #[arg(long, default_value = "-")]
    pub emit: String,
}

/// Parse arguments and run; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            if let Some(err) = e.downcast_ref::<Error>() {
                eprintln!("error: {err}");
                let _ = writeln!(std::io::stdout(), "{}", json!({ "error": err.to_string() }));
                EXIT_INVALID
            } else {
                eprintln!("error: {e:#}");
                EXIT_USAGE
            }
        }
    }
}

pub fn run(cli: &Cli) -> anyhow::Result<i32> {
    match &cli.command {
        Command::Repgen(a) => repgen(a),
        Command::Bmat(a) => bmat(a),
        Command::Ansatz(a) => ansatz(a, cli.seed),
        Command::Family(a) => family(a),
        Command::Verify(a) => verify(a),
        Command::Fields(a) => fields(a),
        Command::Spectral(a) => spectral(a),
        Command::Rational(a) => rational(a),
        Command::Decompose(a) => decompose_cmd(a),
    }
}

fn emit(target: &str, text: &str) -> anyhow::Result<()> {
    if target == "-" {
        let mut out = std::io::stdout().lock();
        out.write_all(text.as_bytes())?;
        if !text.ends_with('\n') {
            out.write_all(b"\n")?;
        }
        Ok(())
    } else {
        std::fs::write(target, text).with_context(|| format!("writing {target}"))
    }
}

fn emit_json(target: &str, v: &Value) -> anyhow::Result<()> {
    emit(target, &serde_json::to_string_pretty(v)?)
}

fn read_json(path: &PathBuf) -> anyhow::Result<Value> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_data(path: &PathBuf) -> anyhow::Result<(AdhmData, Value)> {
    let v = read_json(path)?;
    let d: AdhmData = serde_json::from_value(v.clone()).with_context(|| format!("{} is not ADHM data", path.display()))?;
    Ok((d, v))
}

fn cmatrix_json(m: &CMatrix) -> Value {
    let rows: Vec<Vec<[f64; 2]>> = (0..m.nrows()).map(|r| (0..m.ncols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect()).collect();
    json!({ "rows": m.nrows(), "cols": m.ncols(), "entries": rows })
}

fn rmatrix_json(m: &RMatrix) -> Value {
    let rows: Vec<Vec<f64>> = (0..m.nrows()).map(|r| (0..m.ncols()).map(|c| m[(r, c)]).collect()).collect();
    json!(rows)
}

fn rmatrix_from_json(v: &Value) -> anyhow::Result<RMatrix> {
    let rows: Vec<Vec<f64>> = serde_json::from_value(v.clone())?;
    let n = rows.len();
    let c = rows.first().map_or(0, |r| r.len());
    if rows.iter().any(|r| r.len() != c) {
        bail!("ragged matrix");
    }
    Ok(RMatrix::from_fn(n, c, |i, j| rows[i][j]))
}

/// `key=value` pairs; repeated keys are rejected.
fn parse_params(items: &[String]) -> anyhow::Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for it in items.iter().filter(|s| !s.is_empty()) {
        let (k, v) = it.split_once('=').ok_or_else(|| anyhow!("parameter {it:?} is not key=value"))?;
        if out.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            bail!("parameter {k:?} given twice");
        }
    }
    Ok(out)
}

struct Params {
    map: BTreeMap<String, String>,
    used: Vec<String>,
}

impl Params {
    fn new(items: &[String]) -> anyhow::Result<Self> {
        Ok(Self { map: parse_params(items)?, used: Vec::new() })
    }

    fn f64(&mut self, key: &str, default: Option<f64>) -> anyhow::Result<f64> {
        self.used.push(key.into());
        match self.map.get(key) {
            Some(s) => s.parse().with_context(|| format!("parameter {key}={s} is not a number")),
            None => default.ok_or_else(|| anyhow!("missing parameter {key}")),
        }
    }

    fn usize(&mut self, key: &str, default: Option<usize>) -> anyhow::Result<usize> {
        self.used.push(key.into());
        match self.map.get(key) {
            Some(s) => s.parse().with_context(|| format!("parameter {key}={s} is not a non-negative integer")),
            None => default.ok_or_else(|| anyhow!("missing parameter {key}")),
        }
    }

    fn sign(&mut self, key: &str, default: Sign) -> anyhow::Result<Sign> {
        self.used.push(key.into());
        match self.map.get(key) {
            Some(s) => s.parse().map_err(|e: String| anyhow!("parameter {key}: {e}")),
            None => Ok(default),
        }
    }

    fn finish(&self) -> anyhow::Result<()> {
        let extra: Vec<&String> = self.map.keys().filter(|k| !self.used.contains(k)).collect();
        if !extra.is_empty() {
            bail!("unknown parameters {extra:?}");
        }
        Ok(())
    }
}

fn repgen(a: &RepgenArgs) -> anyhow::Result<i32> {
    let rep = if a.real { real_irrep(a.n)? } else { complex_irrep(a.n)? };
    let v = json!({
        "relation_residual": rep.relation_residual(),
        "representation": serde_json::to_value(&rep)?,
    });
    emit_json(&a.emit, &v)?;
    Ok(EXIT_OK)
}

fn bmat(a: &BmatArgs) -> anyhow::Result<i32> {
    let t = if a.real { realize_b_real(a.n)? } else { compute_b(a.n, a.theta)? };
    let report = verify_identities(&t);
    let v = json!({
        "n": t.n,
        "theta": t.theta,
        "real": a.real,
        "B": t.b.iter().map(cmatrix_json).collect::<Vec<_>>(),
        "residuals": report.residuals,
        "max_residual": report.max(),
    });
    emit_json(&a.emit, &v)?;
    Ok(if report.max() <= crate::tol::structural() { EXIT_OK } else { EXIT_INVALID })
}

fn ansatz(a: &AnsatzArgs, seed: u64) -> anyhow::Result<i32> {
    let mut params = BTreeMap::new();
    for (k, v) in parse_params(&a.params)? {
        params.insert(k.clone(), v.parse::<f64>().with_context(|| format!("parameter {k}={v} is not a number"))?);
    }
    let spec = AnsatzSpec { summands: a.summands.clone(), params };
    let (m, ans) = structure_ansatz(&spec)?;
    let d = AdhmData::new(crate::quat::QMatrix::zeros(0, m.rows()), m.clone())?;
    let residual = spherical_residual(&d, ans.generators())?;
    let bounds = structure_group_bounds(ans.summands())?;
    let mut v = json!({
        "summands": ans.summands(),
        "k": ans.k(),
        "directions": ans.labels(),
        "params": spec.params,
        "M": serde_json::to_value(&m)?,
        "generators": serde_json::to_value(ans.generators())?,
        "spherical_residual": residual,
        "equivariant_triple_count": crate::symmetry::equivariant_triple_count(ans.summands()),
        "symmetric_parameter_count": ans.dimension(),
        "structure_group_bounds": serde_json::to_value(&bounds)?,
    });
    if let Some(n) = a.check_n {
        let opts = ExclusionOptions { seed, ..Default::default() };
        v["structure_group_check"] = serde_json::to_value(check_structure_group(ans.summands(), n, &opts)?)?;
    }
    emit_json(&a.emit, &v)?;
    Ok(EXIT_OK)
}

fn generating_json(g: &Generating) -> anyhow::Result<Value> {
    Ok(match g {
        Generating::Axial(y) => json!({ "type": "axial", "generator": rmatrix_json(y) }),
        Generating::Spherical(rep) => json!({ "type": "spherical", "generators": serde_json::to_value(rep)? }),
    })
}

fn generating_from_json(v: &Value) -> anyhow::Result<Option<Generating>> {
    let Some(sym) = v.get("symmetry") else { return Ok(None) };
    match sym.get("type").and_then(Value::as_str) {
        Some("axial") => Ok(Some(Generating::Axial(rmatrix_from_json(&sym["generator"])?))),
        Some("spherical") => Ok(Some(Generating::Spherical(serde_json::from_value(sym["generators"].clone())?))),
        other => bail!("unknown symmetry type {other:?}"),
    }
}

fn instance_json(f: &FamilyInstance) -> anyhow::Result<Value> {
    let mut v = serde_json::to_value(&f.data)?;
    v["family"] = json!(f.family);
    v["params"] = json!(f.params);
    v["symmetry"] = generating_json(&f.generating)?;
    v["validity"] = serde_json::to_value(&f.validity)?;
    Ok(v)
}

fn family(a: &FamilyArgs) -> anyhow::Result<i32> {
    let mut p = Params::new(&a.params)?;
    let built = match a.name.as_str() {
        "axial" => {
            let (big_a, sy, s3) = (p.f64("A", None)?, p.sign("sign_y", Sign::Plus)?, p.sign("sign_3", Sign::Plus)?);
            p.finish()?;
            match family_axial(big_a, sy, s3) {
                Err(Error::OutOfRange { .. }) if big_a.abs() <= 0.5 => {
                    // report why the excluded parameter fails instead of only rejecting it
                    let data = axial_data(big_a, sy, s3)?;
                    let report = data.validate(Domain::AxialHalfDisc, 0);
                    let mut v = serde_json::to_value(&data)?;
                    v["family"] = json!("axial");
                    v["params"] = json!({ "A": big_a, "sign_y": sy.value(), "sign_3": s3.value() });
                    v["symmetry"] = generating_json(&Generating::Axial(axial_generator(sy)))?;
                    v["validity"] = serde_json::to_value(&report)?;
                    emit_json(&a.emit, &v)?;
                    return Ok(if report.valid { EXIT_OK } else { EXIT_INVALID });
                }
                other => other,
            }
        }
        "irrep4" | "irrep" => {
            let k = p.usize("k", Some(4))?;
            let (kappa, br) = (p.f64("kappa", None)?, p.sign("branch", Sign::Plus)?);
            p.finish()?;
            family_irrep(k, kappa, br)
        }
        "n2n" => {
            let (n, x) = (p.usize("n", Some(1))?, p.f64("a", None)?);
            let both = p.sign("branch", Sign::Plus)?;
            let (up, low) = (p.sign("branch_upper", both)?, p.sign("branch_lower", both)?);
            p.finish()?;
            family_n2n(n, x, up, low)
        }
        "nn" => {
            let (n, x, br) = (p.usize("n", Some(3))?, p.f64("a", None)?, p.sign("branch", Sign::Plus)?);
            p.finish()?;
            family_nn(n, x, br)
        }
        "sp2" => {
            p.finish()?;
            family_sp2_explicit()
        }
        "sp4" => {
            p.finish()?;
            family_sp4_explicit()
        }
        "mzero" => {
            let k = p.usize("k", Some(1))?;
            p.finish()?;
            family_mzero(k)
        }
        other => bail!("unknown family {other:?} (expected axial, irrep4, n2n, nn, sp2, sp4 or mzero)"),
    };
    let inst = built?;
    emit_json(&a.emit, &instance_json(&inst)?)?;
    Ok(EXIT_OK)
}

fn verify(a: &VerifyArgs) -> anyhow::Result<i32> {
    let (d, _) = read_data(&a.data)?;
    let report = d.validate(a.domain, a.samples);
    emit_json(&a.emit, &serde_json::to_value(&report)?)?;
    Ok(if report.valid { EXIT_OK } else { EXIT_INVALID })
}

fn parse_ray(s: &str) -> anyhow::Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        bail!("ray {s:?} is not start:end:count");
    }
    let (a, b): (f64, f64) = (parts[0].parse()?, parts[1].parse()?);
    let n: usize = parts[2].parse()?;
    if n == 0 || !(0.0..1.0).contains(&a) || !(0.0..1.0).contains(&b) {
        bail!("ray {s:?} needs count ≥ 1 and radii in [0, 1)");
    }
    Ok(if n == 1 { vec![a] } else { (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect() })
}

/// Float with 17 significant digits.
fn f17(x: f64) -> String {
    format!("{x:.16e}")
}

fn fields(a: &FieldsArgs) -> anyhow::Result<i32> {
    let (d, raw) = read_data(&a.data)?;
    if a.direction.len() != 3 {
        bail!("direction needs three components");
    }
    let nd = a.direction.iter().map(|v| v * v).sum::<f64>().sqrt();
    if nd == 0.0 {
        bail!("direction must be nonzero");
    }
    let u: Point = [a.direction[0] / nd, a.direction[1] / nd, a.direction[2] / nd];
    let radii = parse_ray(&a.ray)?;
    let f = Fields::new(&d)?;
    let points: Vec<Point> = radii.iter().map(|&r| u.map(|c| c * r)).collect();
    let samples = f.profile(&points, a.h)?;
    let eigs: Vec<Vec<f64>> = points.iter().map(|&x| f.higgs_eigenvalues(x)).collect::<Result<_, _>>()?;
    match a.emit.as_str() {
        "csv" => {
            let mut s = String::from("r,higgs_norm_sq,energy_density");
            for i in 0..2 * d.n() {
                s.push_str(&format!(",eig_{i}"));
            }
            s.push('\n');
            for (smp, ev) in samples.iter().zip(&eigs) {
                s.push_str(&format!("{},{},{}", f17(smp.r), f17(smp.higgs_norm_sq), f17(smp.energy_density)));
                for e in ev {
                    s.push(',');
                    s.push_str(&f17(*e));
                }
                s.push('\n');
            }
            emit(&a.out, &s)?;
        }
        "json" => {
            let boundary = f.boundary_spectrum(u, 0.02, 4)?;
            let mut v = json!({
                "direction": u,
                "samples": serde_json::to_value(&samples)?,
                "eigenvalues": eigs,
                "boundary": serde_json::to_value(&boundary)?,
            });
            if let Some(g) = generating_from_json(&raw)? {
                if u == [0.0, 0.0, 1.0] {
                    v["graded_boundary"] = serde_json::to_value(f.graded_boundary(&g.axis_generator(), 0.999)?)?;
                }
            }
            emit_json(&a.out, &v)?;
        }
        other => bail!("unknown output format {other:?} (expected csv or json)"),
    }
    Ok(EXIT_OK)
}

fn spectral(a: &DataArgs) -> anyhow::Result<i32> {
    let (d, _) = read_data(&a.data)?;
    let c = spectral_curve(&d)?;
    let coeffs: Vec<Vec<[f64; 2]>> = c.coefficients.iter().map(|r| r.iter().map(|z| [z.re, z.im]).collect()).collect();
    emit_json(&a.emit, &json!({ "k": c.k, "coefficients": coeffs, "scale": [c.scale.re, c.scale.im] }))?;
    Ok(EXIT_OK)
}

/// Parse `a`, `bi`, `a+bi`, `a-bi`.
pub fn parse_complex(s: &str) -> anyhow::Result<C64> {
    let t = s.trim().replace(' ', "");
    if let Some(body) = t.strip_suffix('i') {
        let split = body.char_indices().skip(1).filter(|&(i, c)| (c == '+' || c == '-') && !body[..i].ends_with(['e', 'E'])).last();
        let (re, im) = match split {
            Some((i, _)) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => "1",
            "-" => "-1",
            x => x,
        };
        Ok(C64::new(re.parse()?, im.parse()?))
    } else {
        Ok(C64::new(t.parse().with_context(|| format!("{s:?} is not a complex number"))?, 0.0))
    }
}

fn rational(a: &RationalArgs) -> anyhow::Result<i32> {
    let (d, _) = read_data(&a.data)?;
    let zs: Vec<C64> = a.eval.iter().map(|s| parse_complex(s)).collect::<anyhow::Result<_>>()?;
    let r = rational_map(&d)?;
    let values: Vec<Value> = zs
        .iter()
        .map(|z| r.evaluate(*z).map(|w| json!({ "z": [z.re, z.im], "R": [w.re, w.im] })))
        .collect::<Result<_, _>>()?;
    let v = json!({
        "lambda": r.lambda,
        "v": r.v.iter().map(|c| [c.re, c.im]).collect::<Vec<_>>(),
        "rank": r.rank,
        "spectrum": r.spectrum,
        "values": values,
    });
    emit_json(&a.emit, &v)?;
    Ok(EXIT_OK)
}

fn decompose_cmd(a: &DecomposeArgs) -> anyhow::Result<i32> {
    let mut v = json!({});
    if let Some(path) = &a.rep {
        let raw = read_json(path)?;
        let rep_value = raw.get("representation").cloned().unwrap_or(raw);
        let rep: ReprTriple = serde_json::from_value(rep_value).context("not a representation")?;
        v["summands"] = json!(decompose(&rep)?);
    }
    if let Some(path) = &a.data {
        let (d, raw) = read_data(path)?;
        let Some(Generating::Spherical(rep)) = generating_from_json(&raw)? else {
            bail!("{} has no spherical symmetry field", path.display());
        };
        let ind = induced_structure_rep(&d, &rep)?;
        v["generator_summands"] = json!(decompose(&rep)?);
        v["structure_summands"] = json!(ind.summands);
        v["intertwining_residual"] = json!(ind.residual);
    }
    emit_json(&a.emit, &v)?;
    Ok(EXIT_OK)
}
