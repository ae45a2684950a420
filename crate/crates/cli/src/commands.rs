use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::thread;

use leonard_core::field::{FieldElement, FieldSpec, Polynomial};
use leonard_core::generators::{
    example_section2, lattice_pair, sl2_pair, uq_pair, GenError, Sl2Element,
};
use leonard_core::json::{
    to_pretty, AskeyWilsonJson, ComponentJson, FingerprintJson, GeneratedPair, MatrixJson, ParameterArrayJson,
    VerificationReport,
};
use leonard_core::leonard::{
    check_converse_preconditions, extract_parameter_array, fit_askey_wilson, is_leonard_pair, LeonardError,
    LeonardSystem, QStatus,
};
use leonard_core::matrix::ExactMatrix;
use leonard_core::parray::random::{random_array, Recurrence};
use leonard_core::parray::{
    check_poly_characterization, construct_bidiagonal, construct_tridiagonal, find_g, fingerprint, poly_u,
    poly_u_dual, validate, GSearch, ParameterArray, ParrayError, Split,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::input::{self, usage, CliError};
use crate::{Cli, Command, SplitArg, Source};

pub struct Output {
    pub json: String,
    /// A domain-level negative result, turned into exit status 1 by --strict.
    pub negative: bool,
}

fn positive(v: impl serde::Serialize) -> Output {
    Output {
        json: to_pretty(&v),
        negative: false,
    }
}

fn verdict(v: impl serde::Serialize, ok: bool) -> Output {
    Output {
        json: to_pretty(&v),
        negative: !ok,
    }
}

fn domain(e: impl ToString) -> CliError {
    usage(e.to_string())
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let field = input::parse_field(&cli.field)?;
    match &cli.command {
        Command::Verify { pair, batch: Some(dir) } => {
            if pair.a.is_some() || pair.astar.is_some() || pair.pair.is_some() {
                return Err(usage("--batch cannot be combined with other inputs"));
            }
            verify_batch(dir, field)
        }
        Command::Verify { pair, batch: None } => {
            let (a, s) = input::pair(pair, field)?;
            let report = VerificationReport::for_pair(&a, &s).map_err(domain)?;
            let ok = report.is_leonard_pair;
            Ok(verdict(report, ok))
        }
        Command::Extract { pair } => {
            let (a, s) = input::pair(pair, field)?;
            extract(&a, &s)
        }
        Command::Construct { input } => {
            let pa = valid_array(input, field)?;
            let (a, s) = construct_bidiagonal(&pa).map_err(domain)?;
            Ok(positive(pair_json(&a, &s)))
        }
        Command::Tdconstruct { input } => {
            let pa = valid_array(input, field)?;
            let split = match cli.split {
                SplitArg::Unit => Split::Unit,
                SplitArg::Symmetric => Split::Symmetric,
            };
            let (a, s) = construct_tridiagonal(&pa, split).map_err(domain)?;
            Ok(positive(pair_json(&a, &s)))
        }
        Command::Gmatrix { input } => gmatrix(&input::array(input, field)?),
        Command::Polys { input } => polys(&input::array(input, field)?),
        Command::Awfit { pair } => {
            let (a, s) = input::pair(pair, field)?;
            awfit(&a, &s)
        }
        Command::Classify { input } => {
            let pa = valid_array(input, field)?;
            let fp = fingerprint(&pa).map_err(domain)?;
            Ok(positive(FingerprintJson::from_fingerprint(&fp)))
        }
        Command::ValidateArray { input } => {
            let pa = input::array(input, field)?;
            let report = validate(&pa);
            let axioms: Vec<Value> = report
                .checks
                .iter()
                .map(|c| json!({"axiom": c.axiom.to_string(), "passed": c.passed, "first_failure": c.first_failure}))
                .collect();
            let ok = report.is_valid();
            Ok(verdict(json!({"valid": ok, "axioms": axioms}), ok))
        }
        Command::Gen {
            source,
            d,
            q,
            epsilon,
            alpha,
            beta,
            n,
            a_coeffs,
            astar_coeffs,
        } => {
            let g = match source {
                Source::Example2 => gen_example2(field.unwrap_or(FieldSpec::Rationals)),
                Source::Sl2 => gen_sl2(field.unwrap_or(FieldSpec::Rationals), *d, a_coeffs, astar_coeffs)?,
                Source::Uq => gen_uq(field.unwrap_or(FieldSpec::Rationals), q, *epsilon, *d, alpha, beta)?,
                Source::Lattice => gen_lattice(field, *n, q, alpha, beta)?,
            };
            Ok(positive(g))
        }
        Command::Roundtrip { input: Some(path), .. } => {
            let pa = valid_array(path, field)?;
            roundtrip_one(&pa)
        }
        Command::Roundtrip { input: None, count, d } => {
            roundtrip_random(field.unwrap_or(FieldSpec::Rationals), cli.seed.unwrap_or(0), *count, *d)
        }
    }
}

fn valid_array(path: &Path, field: Option<FieldSpec>) -> Result<ParameterArray, CliError> {
    let pa = input::array(path, field)?;
    let report = validate(&pa);
    if !report.is_valid() {
        return Err(usage(format!("{}: not a parameter array: {report}", path.display())));
    }
    Ok(pa)
}

fn pair_json(a: &ExactMatrix, s: &ExactMatrix) -> Value {
    json!({"a": MatrixJson::from_matrix(a), "a_star": MatrixJson::from_matrix(s)})
}

fn extract(a: &ExactMatrix, s: &ExactMatrix) -> Result<Output, CliError> {
    let rec = is_leonard_pair(a, s).map_err(domain)?;
    match &rec.system {
        Some(sys) => {
            let pa = extract_parameter_array(sys).map_err(domain)?;
            Ok(positive(ParameterArrayJson::from_array(&pa)))
        }
        None => Ok(verdict(
            json!({"is_leonard_pair": false, "failure_reason": rec.failure_message()}),
            false,
        )),
    }
}

fn gmatrix(pa: &ParameterArray) -> Result<Output, CliError> {
    match find_g(pa) {
        Ok(GSearch::Found(g)) => Ok(positive(json!({
            "found": true,
            "g": MatrixJson::from_matrix(&g),
            "solution_dim": null,
            "pencil_exhausted": false,
        }))),
        Ok(GSearch::NotFound {
            solution_dim,
            pencil_exhausted,
        }) => Ok(verdict(
            json!({"found": false, "g": null, "solution_dim": solution_dim, "pencil_exhausted": pencil_exhausted}),
            false,
        )),
        Err(e @ ParrayError::Setup(_)) => Err(domain(e)),
        Err(e) => Err(domain(e)),
    }
}

fn coeffs(p: &Polynomial) -> Vec<String> {
    p.coeffs().iter().map(ToString::to_string).collect()
}

fn polys(pa: &ParameterArray) -> Result<Output, CliError> {
    let d = pa.d();
    let u = (0..=d).map(|i| poly_u(pa, i).map(|p| coeffs(&p))).collect::<Result<Vec<_>, _>>().map_err(domain)?;
    let v = (0..=d).map(|i| poly_u_dual(pa, i).map(|p| coeffs(&p))).collect::<Result<Vec<_>, _>>().map_err(domain)?;
    let ok = check_poly_characterization(pa).map_err(domain)?;
    Ok(verdict(json!({"u": u, "u_dual": v, "scalar_multiples": ok}), ok))
}

fn awfit(a: &ExactMatrix, s: &ExactMatrix) -> Result<Output, CliError> {
    let aw = match fit_askey_wilson(a, s) {
        Ok(aw) => aw,
        Err(LeonardError::NoAskeyWilsonSolution) => {
            return Ok(verdict(json!({"askey_wilson": null, "converse": null}), false));
        }
        Err(e) => return Err(domain(e)),
    };
    let c = check_converse_preconditions(a, s, &aw).map_err(domain)?;
    let q_status = match c.q_status {
        QStatus::NotRootOfUnity => "not-root-of-unity",
        QStatus::RootOfUnity => "root-of-unity",
        QStatus::UnsatisfiableInFiniteField => "unsatisfiable-in-finite-field",
    };
    Ok(positive(json!({
        "askey_wilson": AskeyWilsonJson::from_fit(&aw),
        "converse": {
            "beta": c.beta.to_string(),
            "q_status": q_status,
            "a_multiplicity_free": c.a_multiplicity_free,
            "a_star_multiplicity_free": c.a_star_multiplicity_free,
            "irreducible": c.irreducible,
            "applies": c.applies(),
        },
    })))
}

fn params(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn generated(source: &str, params: BTreeMap<String, String>, a: &ExactMatrix, s: &ExactMatrix) -> GeneratedPair {
    GeneratedPair {
        source: source.into(),
        params,
        a: MatrixJson::from_matrix(a),
        a_star: MatrixJson::from_matrix(s),
        p: None,
        components: None,
    }
}

fn gen_example2(spec: FieldSpec) -> GeneratedPair {
    let (a, s, p) = example_section2(spec);
    let mut g = generated("example2", params(&[("field", spec.to_string())]), &a, &s);
    g.p = Some(MatrixJson::from_matrix(&p));
    g
}

fn gen_err(e: GenError) -> CliError {
    usage(e.to_string())
}

fn element(spec: FieldSpec, name: &str, s: &str) -> Result<FieldElement, CliError> {
    FieldElement::parse(spec, s).map_err(|e| usage(format!("--{name}: {e}")))
}

fn sl2_element(spec: FieldSpec, name: &str, s: &str) -> Result<Sl2Element, CliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [x, y, z] = parts[..] else {
        return Err(usage(format!("--{name}: expected three comma-separated coordinates")));
    };
    Ok(Sl2Element {
        x: element(spec, name, x)?,
        y: element(spec, name, y)?,
        z: element(spec, name, z)?,
    })
}

fn gen_sl2(spec: FieldSpec, d: Option<usize>, a: &str, s: &str) -> Result<GeneratedPair, CliError> {
    let d = d.ok_or_else(|| usage("gen --source sl2 needs --d"))?;
    let ea = sl2_element(spec, "a-coeffs", a)?;
    let es = sl2_element(spec, "astar-coeffs", s)?;
    let (ma, ms) = sl2_pair(spec, d, &ea, &es).map_err(gen_err)?;
    let p = params(&[
        ("field", spec.to_string()),
        ("d", d.to_string()),
        ("a_coeffs", a.to_string()),
        ("astar_coeffs", s.to_string()),
    ]);
    Ok(generated("sl2", p, &ma, &ms))
}

fn gen_uq(
    spec: FieldSpec,
    q: &Option<String>,
    epsilon: i64,
    d: Option<usize>,
    alpha: &str,
    beta: &str,
) -> Result<GeneratedPair, CliError> {
    let d = d.ok_or_else(|| usage("gen --source uq needs --d"))?;
    let q = q.as_deref().ok_or_else(|| usage("gen --source uq needs --q"))?;
    let qv = element(spec, "q", q)?;
    let pair = uq_pair(&qv, epsilon, d, &element(spec, "alpha", alpha)?, &element(spec, "beta", beta)?)
        .map_err(gen_err)?;
    let p = params(&[
        ("field", spec.to_string()),
        ("q", qv.to_string()),
        ("epsilon", epsilon.to_string()),
        ("d", d.to_string()),
        ("alpha", alpha.to_string()),
        ("beta", beta.to_string()),
        ("forbidden", pair.forbidden.to_string()),
    ]);
    Ok(generated("uq", p, &pair.a, &pair.a_star))
}

fn gen_lattice(
    field: Option<FieldSpec>,
    n: Option<usize>,
    q: &Option<String>,
    alpha: &str,
    beta: &str,
) -> Result<GeneratedPair, CliError> {
    let n = n.ok_or_else(|| usage("gen --source lattice needs --n"))?;
    let q: u64 = q
        .as_deref()
        .ok_or_else(|| usage("gen --source lattice needs --q"))?
        .parse()
        .map_err(|_| usage("--q: expected a prime power"))?;
    // scalars live in Q(sqrt q); build once to learn that field
    let spec = leonard_core::generators::build_lattice(n, q).map_err(gen_err)?.spec;
    if field.is_some_and(|f| f != spec) {
        return Err(usage(format!("lattice scalars live in {spec}, not {}", field.unwrap())));
    }
    let pair = lattice_pair(n, q, &element(spec, "alpha", alpha)?, &element(spec, "beta", beta)?).map_err(gen_err)?;
    let p = params(&[
        ("field", spec.to_string()),
        ("n", n.to_string()),
        ("q", q.to_string()),
        ("alpha", alpha.to_string()),
        ("beta", beta.to_string()),
    ]);
    let mut g = generated("lattice", p, &pair.a_matrix(), &pair.a_star_matrix());
    g.components = Some(
        pair.components
            .iter()
            .map(|c| ComponentJson {
                weight: c.weight,
                d: c.d,
                a: MatrixJson::from_matrix(&c.a),
                a_star: MatrixJson::from_matrix(&c.a_star),
                theta: c.theta.iter().map(ToString::to_string).collect(),
                theta_star: c.theta_star.iter().map(ToString::to_string).collect(),
                certified: c.certified,
            })
            .collect(),
    );
    Ok(g)
}

fn differences(x: &ParameterArray, y: &ParameterArray) -> Vec<Value> {
    let names = ["theta", "theta_star", "varphi", "phi"];
    let (xs, ys) = (x.to_strings(), y.to_strings());
    let mut out = Vec::new();
    for ((name, a), b) in names.iter().zip(&xs).zip(&ys) {
        for (i, (u, v)) in a.iter().zip(b).enumerate() {
            if u != v {
                out.push(json!({"entry": name, "index": i, "input": u, "extracted": v}));
            }
        }
    }
    out
}

/// Construct the bidiagonal pair, recover the system with the array's own
/// eigenvalue orderings and extract its array again.
fn round_trip(pa: &ParameterArray) -> Result<ParameterArray, String> {
    let (a, s) = construct_bidiagonal(pa).map_err(|e| e.to_string())?;
    let sys = LeonardSystem::with_orderings(&a, &s, &pa.theta, &pa.theta_star).map_err(|e| e.to_string())?;
    extract_parameter_array(&sys).map_err(|e| e.to_string())
}

fn roundtrip_one(pa: &ParameterArray) -> Result<Output, CliError> {
    let back = round_trip(pa).map_err(usage)?;
    let diffs = differences(pa, &back);
    let ok = diffs.is_empty() && &back == pa;
    Ok(verdict(
        json!({
            "identical": ok,
            "input": ParameterArrayJson::from_array(pa),
            "extracted": ParameterArrayJson::from_array(&back),
            "differences": diffs,
        }),
        ok,
    ))
}

fn roundtrip_random(spec: FieldSpec, seed: u64, count: usize, d: usize) -> Result<Output, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kinds = [
        Recurrence::Classical,
        Recurrence::QType(FieldElement::from_i64(spec, 2)),
        Recurrence::BannaiIto,
    ];
    let (mut checked, mut skipped) = (0, 0);
    let mut failures = Vec::new();
    for k in 0..count {
        let Some(pa) = random_array(&mut rng, spec, d, &kinds[k % kinds.len()]) else {
            skipped += 1;
            continue;
        };
        checked += 1;
        match round_trip(&pa) {
            Ok(back) if back == pa => {}
            Ok(back) => failures.push(json!({"input": ParameterArrayJson::from_array(&pa), "differences": differences(&pa, &back)})),
            Err(e) => failures.push(json!({"input": ParameterArrayJson::from_array(&pa), "error": e})),
        }
    }
    let ok = failures.is_empty();
    Ok(verdict(
        json!({
            "seed": seed,
            "field": spec.to_string(),
            "d": d,
            "checked": checked,
            "skipped": skipped,
            "identical": ok,
            "failures": failures,
        }),
        ok,
    ))
}

fn report_path(path: &Path) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}.report.json"))
}

/// Write through a temporary file and rename, so readers never see a
/// partial report.
fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)
}

fn verify_file(path: &Path, field: Option<FieldSpec>) -> Value {
    let name = path.file_name().unwrap().to_string_lossy().into_owned();
    let result = input::pair_file(path, field).and_then(|(a, s)| VerificationReport::for_pair(&a, &s).map_err(domain));
    match result {
        Ok(report) => {
            let out = report_path(path);
            match write_atomic(&out, &report.to_json()) {
                Ok(()) => json!({
                    "file": name,
                    "is_leonard_pair": report.is_leonard_pair,
                    "report": out.file_name().unwrap().to_string_lossy(),
                }),
                Err(e) => json!({"file": name, "error": e.to_string()}),
            }
        }
        Err(e) => json!({"file": name, "error": e.to_string()}),
    }
}

fn verify_batch(dir: &Path, field: Option<FieldSpec>) -> Result<Output, CliError> {
    let entries = fs::read_dir(dir).map_err(|source| CliError::Read {
        path: dir.display().to_string(),
        source,
    })?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            let name = p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            name.ends_with(".json") && !name.ends_with(".report.json")
        })
        .collect();
    files.sort();
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(files.len().max(1));
    let chunk = files.len().div_ceil(workers).max(1);
    let results: Vec<Value> = thread::scope(|scope| {
        let handles: Vec<_> = files
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().map(|p| verify_file(p, field)).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("verification thread panicked")).collect()
    });
    let errors = results.iter().filter(|r| r.get("error").is_some()).count();
    if errors > 0 {
        print!("{}", to_pretty(&json!({"results": results})));
        return Err(CliError::Batch(errors));
    }
    let all = results.iter().all(|r| r["is_leonard_pair"] == json!(true));
    Ok(verdict(json!({"results": results}), all))
}
