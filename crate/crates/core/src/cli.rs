//! The `relcoh` command line.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cochain::{
    absolute_cohomology, inc_star, les_segment, peripheral_cohomology, relative_cohomology,
    relative_cohomology_via_delta, relative_h2, PeripheralCochain,
};
use crate::error::Error;
use crate::extension::{cocycle_to_extension, default_systems, extension_to_cocycle, SetSection};
use crate::group::TransversalKind;
use crate::input::{parse_instance, InputError, InstanceFile};
use crate::lifting::verify_obstruction_criterion;
use crate::oracle::{brute_relative_cohomology, describe, enumerate_relative_extensions, verify_bijection, DEFAULT_CAP};

#[derive(Parser, Debug)]
#[command(name = "relcoh", version, about = "Relative cohomology of finite group pairs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Invariant factors of H^n(G), ∏H^n(S_i) and H^n(G,𝒮)
    Cohomology(CohomologyArgs),
    /// Certify the correspondence between H²(G,𝒮;A) and relative extensions
    Verify(VerifyArgs),
    /// List one relative extension per equivalence class
    Enumerate(CommonArgs),
    /// Solve a lifting problem and compare with its obstruction class
    Lifting(CommonArgs),
    /// The exact segment H¹(G) → ∏H¹(S_i) → H²(G,𝒮) → H²(G) → ∏H²(S_i)
    Les(CommonArgs),
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum Transversal {
    Min,
    Max,
}

impl From<Transversal> for TransversalKind {
    fn from(t: Transversal) -> Self {
        match t {
            Transversal::Min => TransversalKind::Min,
            Transversal::Max => TransversalKind::Max,
        }
    }
}

#[derive(Args, Debug)]
pub struct CommonArgs {
    /// Instance file
    pub file: PathBuf,
    /// Machine-readable output
    #[arg(long)]
    pub json: bool,
    /// Bound on brute-force search spaces
    #[arg(long, default_value_t = DEFAULT_CAP as u64)]
    pub cap: u64,
    /// Coset representatives used by the chain-transfer maps
    #[arg(long, value_enum, default_value_t = Transversal::Min)]
    pub transversal: Transversal,
}

#[derive(Args, Debug)]
pub struct CohomologyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub degree: u8,
    /// Print a representative cochain for each generator
    #[arg(long)]
    pub representatives: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Include wall-clock timings (output is then not reproducible)
    #[arg(long)]
    pub timings: bool,
}

/// Outcome of a command: text to print and an exit code.
enum Failure {
    Input(String),
    Verification(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::VerificationFailed(_) => Failure::Verification(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Outcome = std::result::Result<(String, bool), Failure>;

fn load(path: &PathBuf) -> std::result::Result<InstanceFile, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_instance(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable report") + "\n"
}

fn fmt_inv(v: &[i64]) -> String {
    format!("{v:?}")
}

#[derive(Serialize)]
struct CohomologyReport {
    instance: String,
    degree: u8,
    absolute: Vec<i64>,
    members: Vec<i64>,
    relative: Vec<i64>,
    routes: Routes,
    #[serde(skip_serializing_if = "Option::is_none")]
    representatives: Option<Vec<Vec<i64>>>,
    /// Class of the `[cochain]` section, when present.
    #[serde(skip_serializing_if = "Option::is_none")]
    cochain_class: Option<Vec<i64>>,
}

#[derive(Serialize)]
struct Routes {
    quotient: Vec<i64>,
    definitional: Vec<i64>,
    /// `None` when the brute-force space exceeds the cap.
    oracle: Option<Vec<i64>>,
}

fn cmd_cohomology(args: &CohomologyArgs) -> Outcome {
    let parsed = load(&args.common.file)?;
    let module = parsed.module()?;
    let pair = &parsed.pair;
    let n = args.degree as usize;
    let absolute = absolute_cohomology(module, n)?;
    let members = peripheral_cohomology(pair, module, n)?;
    let relative = relative_cohomology(pair, module, n)?;
    let definitional = relative_cohomology_via_delta(pair, module, n)?;
    let oracle = match brute_relative_cohomology(pair, module, n, args.common.cap as u128) {
        Ok(v) => Some(v),
        Err(Error::SearchSpaceTooLarge { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let representatives = args.representatives.then(|| {
        (0..relative.invariants().len())
            .map(|t| {
                let mut e = vec![0; relative.invariants().len()];
                e[t] = 1;
                relative.decode(&e)
            })
            .collect::<Vec<_>>()
    });
    let cochain_class = match &parsed.cochain {
        Some(v) => {
            let rep = inc_star(PeripheralCochain::from_values(pair, module, n - 1, v.clone())?);
            rep.connecting_cochain(pair, module)?;
            Some(relative.classify(rep.eta().values())?)
        }
        None => None,
    };
    let report = CohomologyReport {
        instance: describe(pair, module),
        degree: args.degree,
        absolute: absolute.invariants().to_vec(),
        members: members.invariants().to_vec(),
        relative: relative.invariants().to_vec(),
        routes: Routes {
            quotient: relative.invariants().to_vec(),
            definitional: definitional.invariants().to_vec(),
            oracle,
        },
        representatives,
        cochain_class,
    };
    let agree = report.routes.definitional == report.relative
        && report.routes.oracle.as_ref().is_none_or(|o| *o == report.relative);
    if args.common.json {
        return Ok((json(&report), agree));
    }
    let mut s = String::new();
    writeln!(s, "instance: {}", report.instance).unwrap();
    writeln!(s, "H{n}(G): {}", fmt_inv(&report.absolute)).unwrap();
    writeln!(s, "prod H{n}(S_i): {}", fmt_inv(&report.members)).unwrap();
    writeln!(s, "H{n}_rel: {}", fmt_inv(&report.relative)).unwrap();
    let oracle = report.routes.oracle.as_ref().map_or("skipped (over cap)".to_string(), |o| fmt_inv(o));
    writeln!(
        s,
        "routes: quotient {}, definitional {}, oracle {}",
        fmt_inv(&report.routes.quotient),
        fmt_inv(&report.routes.definitional),
        oracle
    )
    .unwrap();
    if let Some(reps) = &report.representatives {
        for (t, r) in reps.iter().enumerate() {
            writeln!(s, "representative {t} (order {}): {r:?}", report.relative[t]).unwrap();
        }
    }
    if let Some(c) = &report.cochain_class {
        writeln!(s, "cochain class: {c:?}").unwrap();
    }
    if !agree {
        writeln!(s, "routes disagree").unwrap();
    }
    Ok((s, agree))
}

#[derive(Serialize)]
struct CochainCheck {
    class: Vec<i64>,
    roundtrip: bool,
}

fn check_cochain(parsed: &InstanceFile, values: &[i64], kind: TransversalKind) -> std::result::Result<CochainCheck, Failure> {
    let pair = &parsed.pair;
    let module = parsed.module()?;
    let eta = PeripheralCochain::from_values(pair, module, 1, values.to_vec())?;
    let rep = inc_star(eta);
    rep.connecting_cochain(pair, module)?;
    let h2 = relative_h2(pair, module)?;
    let class = h2.classify(rep.eta().values())?;
    let re = cocycle_to_extension(pair, module, &rep)?;
    let back = extension_to_cocycle(&re, &SetSection::canonical(re.extension()), &default_systems(pair, kind)?)?;
    let roundtrip = h2.classify(back.eta().values())? == class;
    Ok(CochainCheck { class, roundtrip })
}

#[derive(Serialize)]
struct VerifyOutput {
    #[serde(flatten)]
    report: crate::oracle::VerificationReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    cochain: Option<CochainCheck>,
    passed: bool,
}

fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let parsed = load(&args.common.file)?;
    let module = parsed.module()?;
    let kind: TransversalKind = args.common.transversal.into();
    let mut report = verify_bijection(&parsed.pair, module, kind, args.common.cap as u128)?;
    if !args.timings {
        report.elapsed = None;
    }
    let cochain = parsed.cochain.as_deref().map(|v| check_cochain(&parsed, v, kind)).transpose()?;
    let passed = report.passed() && cochain.as_ref().is_none_or(|c| c.roundtrip);
    let out = VerifyOutput { report, cochain, passed };
    if args.common.json {
        return Ok((json(&out), passed));
    }
    let r = &out.report;
    let mut s = String::new();
    writeln!(s, "instance: {}", r.instance).unwrap();
    writeln!(s, "H2_rel: {} (order {})", fmt_inv(&r.invariants), r.cohomology_order).unwrap();
    writeln!(
        s,
        "extension classes: {} (from {} normalized cocycles, {} relative extensions)",
        r.class_count, r.cocycles_enumerated, r.extensions_enumerated
    )
    .unwrap();
    for c in &r.classes {
        writeln!(
            s,
            "class {:?}: enumerated class {}, class round trip {}, extension round trip {}, choice independent {}",
            c.coords,
            c.matched_class,
            ok(c.class_roundtrip),
            ok(c.extension_roundtrip),
            ok(c.choice_independent)
        )
        .unwrap();
    }
    writeln!(s, "les exact: {}", r.les_exact.iter().map(|&b| ok(b)).collect::<Vec<_>>().join(" ")).unwrap();
    if let Some(c) = &out.cochain {
        writeln!(s, "cochain: class {:?}, round trip {}", c.class, ok(c.roundtrip)).unwrap();
    }
    if let Some(t) = &r.elapsed {
        writeln!(
            s,
            "elapsed: cohomology {:.1} ms, enumeration {:.1} ms, checks {:.1} ms",
            t.cohomology_ms, t.enumeration_ms, t.checks_ms
        )
        .unwrap();
    }
    writeln!(s, "result: {}", if passed { "PASS" } else { "FAIL" }).unwrap();
    Ok((s, passed))
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

#[derive(Serialize)]
struct EnumeratedClass {
    members: usize,
    class: Vec<i64>,
    zeta: Vec<i64>,
    sections: Vec<Vec<Vec<i64>>>,
}

#[derive(Serialize)]
struct EnumerateOutput {
    instance: String,
    cocycles: usize,
    extensions: usize,
    classes: Vec<EnumeratedClass>,
}

fn cmd_enumerate(args: &CommonArgs) -> Outcome {
    let parsed = load(&args.file)?;
    let module = parsed.module()?;
    let pair = &parsed.pair;
    let e = enumerate_relative_extensions(pair, module, args.cap as u128)?;
    let h2 = relative_h2(pair, module)?;
    let systems = default_systems(pair, args.transversal.into())?;
    let classes = e
        .classes
        .iter()
        .map(|c| {
            let re = &c.representative;
            let eta = extension_to_cocycle(re, &SetSection::canonical(re.extension()), &systems)?;
            Ok(EnumeratedClass {
                members: c.members,
                class: h2.classify(eta.eta().values())?,
                zeta: re.extension().zeta().values().to_vec(),
                sections: re.sections().to_vec(),
            })
        })
        .collect::<crate::error::Result<Vec<_>>>()?;
    let out = EnumerateOutput { instance: describe(pair, module), cocycles: e.cocycles, extensions: e.extensions, classes };
    if args.json {
        return Ok((json(&out), true));
    }
    let mut s = String::new();
    writeln!(s, "instance: {}", out.instance).unwrap();
    writeln!(s, "normalized cocycles: {}", out.cocycles).unwrap();
    writeln!(s, "relative extensions: {}", out.extensions).unwrap();
    writeln!(s, "classes: {}", out.classes.len()).unwrap();
    for (k, c) in out.classes.iter().enumerate() {
        writeln!(s, "class {k}: members {}, cohomology class {:?}", c.members, c.class).unwrap();
        writeln!(s, "  zeta {:?}", c.zeta).unwrap();
        writeln!(s, "  sections {:?}", c.sections).unwrap();
    }
    Ok((s, true))
}

fn cmd_lifting(args: &CommonArgs) -> Outcome {
    let parsed = load(&args.file)?;
    let prob = parsed.lifting()?;
    let v = verify_obstruction_criterion(prob, args.cap as u128)?;
    let holds = v.holds != Some(false);
    if args.json {
        return Ok((json(&v), holds));
    }
    let mut s = String::new();
    let yes = |b: bool| if b { "yes" } else { "no" };
    let class = match (&v.class, v.is_zero_class()) {
        (None, _) => "n/a (kernel nonabelian)".to_string(),
        (Some(_), Some(true)) => "0".to_string(),
        (Some(c), _) => format!("{c:?}"),
    };
    if let Some(k) = &v.kernel_invariants {
        writeln!(s, "kernel: {} (abelian)", fmt_inv(k)).unwrap();
        writeln!(s, "H2_rel: {}", fmt_inv(v.h2_invariants.as_deref().unwrap_or(&[]))).unwrap();
    } else {
        writeln!(s, "kernel: nonabelian").unwrap();
    }
    writeln!(s, "solvable: {}, class: {class}", yes(v.solvable)).unwrap();
    if let Some(sol) = &v.solution {
        writeln!(s, "witness: phibar {:?}, conjugators {:?}", sol.phibar, sol.conjugators).unwrap();
        if v.class.is_some() {
            writeln!(s, "trivialization checked: {}", yes(v.witness_checked)).unwrap();
        }
    }
    if let Some(h) = v.holds {
        writeln!(s, "criterion: {}", if h { "holds" } else { "FAILS" }).unwrap();
    }
    Ok((s, holds))
}

#[derive(Serialize)]
struct LesGroup {
    name: &'static str,
    invariants: Vec<i64>,
}

#[derive(Serialize)]
struct LesMapOut {
    name: &'static str,
    columns: Vec<Vec<i64>>,
}

#[derive(Serialize)]
struct LesOutput {
    instance: String,
    groups: Vec<LesGroup>,
    maps: Vec<LesMapOut>,
    exact: [bool; 3],
    composites_zero: [bool; 3],
}

fn cmd_les(args: &CommonArgs) -> Outcome {
    let parsed = load(&args.file)?;
    let module = parsed.module()?;
    let les = les_segment(&parsed.pair, module)?;
    let names = ["H1(G)", "prod H1(S_i)", "H2(G,S)", "H2(G)", "prod H2(S_i)"];
    let out = LesOutput {
        instance: describe(&parsed.pair, module),
        groups: names
            .iter()
            .zip(les.groups())
            .map(|(&name, h)| LesGroup { name, invariants: h.invariants().to_vec() })
            .collect(),
        maps: les.maps.iter().map(|m| LesMapOut { name: m.name, columns: m.columns.clone() }).collect(),
        exact: les.exact,
        composites_zero: les.composites_zero,
    };
    let good = les.is_exact() && les.composites_zero.iter().all(|&b| b);
    if args.json {
        return Ok((json(&out), good));
    }
    let mut s = String::new();
    writeln!(s, "instance: {}", out.instance).unwrap();
    for g in &out.groups {
        writeln!(s, "{}: {}", g.name, fmt_inv(&g.invariants)).unwrap();
    }
    for m in &out.maps {
        writeln!(s, "map {}: {:?}", m.name, m.columns).unwrap();
    }
    for (k, at) in names[1..4].iter().enumerate() {
        writeln!(s, "exact at {at}: {}, composite zero: {}", ok(out.exact[k]), ok(out.composites_zero[k])).unwrap();
    }
    Ok((s, good))
}

/// Runs the command line; returns the exit code (0 success, 1 a check failed, 2 bad input).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let result = match &cli.command {
        Command::Cohomology(a) => cmd_cohomology(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Lifting(a) => cmd_lifting(a),
        Command::Les(a) => cmd_les(a),
    };
    match result {
        Ok((text, good)) => {
            let _ = write!(out, "{text}");
            if good {
                0
            } else {
                1
            }
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Verification(msg)) => {
            let _ = writeln!(err, "FAIL: {msg}");
            1
        }
    }
}
